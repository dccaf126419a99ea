//! Linear encoders `f: F_q^k -> F_q^n` and the entropy distance of their graphs.
//!
//! The entropy weight on `F_q^k x F_q^n` is `ew(x1) + ew(x2)`, so the
//! distance of an encoder depends only on which (input weight, output weight)
//! pairs occur among nonzero inputs. Those pairs are collected in one pass
//! over the graph `{(x, xG)}` and the minimum is taken over exact surface
//! products.

use std::cmp::Reverse;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::codes::{find_vector, joint_histogram, span_size, LinearCode, DEFAULT_BUDGET};
use crate::entropy::{LogQValue, SurfaceTable};
use crate::error::{Error, Result};
use crate::gf::{Elem, Field, Matrix, Vector};

/// A full-rank `k x n` transformation matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearEncoder {
    matrix: Matrix,
}

impl LinearEncoder {
    /// Fails unless `rank(m) = min(k, n)`.
    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        let expected = m.rows().min(m.cols());
        if m.rows() == 0 {
            return Err(Error::InvalidParameters("encoder needs k >= 1".into()));
        }
        let rank = m.rank();
        if rank != expected {
            return Err(Error::RankDeficient { rank, expected });
        }
        Ok(LinearEncoder { matrix: m.clone() })
    }

    pub fn field(&self) -> &Field {
        self.matrix.field()
    }

    pub fn k(&self) -> usize {
        self.matrix.rows()
    }

    pub fn n(&self) -> usize {
        self.matrix.cols()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn encode(&self, x: &Vector) -> Result<Vector> {
        x.mul_matrix(&self.matrix)
    }

    /// `(I_k | G)`, whose rows span the graph.
    pub fn graph_generator(&self) -> Matrix {
        Matrix::identity(self.field(), self.k())
            .hconcat(&self.matrix)
            .expect("same field and row count")
    }

    /// The graph as a `[k + n, k]` code.
    pub fn graph_code(&self) -> LinearCode {
        LinearCode::from_generator(&self.graph_generator()).expect("identity block has full rank")
    }
}

pub fn encoder_from_matrix(m: &Matrix) -> Result<LinearEncoder> {
    LinearEncoder::from_matrix(m)
}

pub fn encoder_graph_code(f: &LinearEncoder) -> LinearCode {
    f.graph_code()
}

/// Entropy distance of an encoder with a minimising input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EncoderDistance {
    pub value: LogQValue,
    pub input_weight: usize,
    pub output_weight: usize,
    pub witness_input: Vec<Elem>,
    pub witness_output: Vec<Elem>,
}

pub fn encoder_entropy_distance(f: &LinearEncoder) -> Result<EncoderDistance> {
    encoder_entropy_distance_with_budget(f, DEFAULT_BUDGET)
}

/// Minimum of `ew(x) + ew(xG)` over nonzero `x`; `budget` caps `q^k`.
pub fn encoder_entropy_distance_with_budget(
    f: &LinearEncoder,
    budget: u128,
) -> Result<EncoderDistance> {
    let k = f.k();
    let graph = f.graph_generator();
    let (value, w1, w2) = product_minimum(&graph, k, budget)?.ok_or(Error::TrivialCode)?;
    let v = find_vector(&graph, k, budget, |a, b| a == w1 && b == w2)?.expect("pair was observed");
    Ok(EncoderDistance {
        value,
        input_weight: w1,
        output_weight: w2,
        witness_input: v[..k].to_vec(),
        witness_output: v[k..].to_vec(),
    })
}

/// Minimum product-space entropy weight over nonzero vectors of the span of
/// `rows` in `F_q^split x F_q^(n - split)`, with the weights attaining it.
fn product_minimum(
    rows: &Matrix,
    split: usize,
    budget: u128,
) -> Result<Option<(LogQValue, usize, usize)>> {
    let q = rows.field().order();
    let n2 = rows.cols() - split;
    let hist = joint_histogram(rows, split, budget)?;
    let (t1, t2) = (SurfaceTable::new(q, split)?, SurfaceTable::new(q, n2)?);
    let mut best: Option<(BigUint, usize, usize)> = None;
    for w1 in 0..=split {
        for w2 in 0..=n2 {
            if (w1, w2) == (0, 0) || hist.get(w1, w2) == 0 {
                continue;
            }
            let s = t1.surface(w1) * t2.surface(w2);
            if best.as_ref().is_none_or(|(b, _, _)| s < *b) {
                best = Some((s, w1, w2));
            }
        }
    }
    best.map(|(s, w1, w2)| Ok((LogQValue::new(q, s)?, w1, w2)))
        .transpose()
}

/// Product-space entropy distance of a subspace `V` of `F_q^k x F_q^(n-k)`.
pub fn subspace_entropy_distance(v: &LinearCode, k: usize) -> Result<LogQValue> {
    if k > v.n() {
        return Err(Error::OutOfRange(format!(
            "split {k} exceeds length {}",
            v.n()
        )));
    }
    product_minimum(v.generator(), k, DEFAULT_BUDGET)?
        .map(|(h, _, _)| h)
        .ok_or(Error::TrivialCode)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum SearchMode {
    /// Every `k x n` matrix; exact `E_q(k, n)`.
    Exhaustive,
    /// Uniform full-rank samples.
    Random { samples: u64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    #[serde(skip)]
    pub encoder: LinearEncoder,
    pub matrix: Vec<Vec<Elem>>,
    pub distance: EncoderDistance,
    /// Full-rank matrices evaluated.
    pub examined: u64,
    /// Rank-deficient matrices skipped.
    pub rejected: u64,
}

/// Default cap on matrices examined by an exhaustive search.
pub const SEARCH_BUDGET: u128 = 1 << 24;

const BATCH: u64 = 1024;

/// Ranks of all `(input weight, output weight)` products, so that candidate
/// encoders compare by small integers.
struct PairRanks {
    n: usize,
    rank: Vec<u32>,
}

impl PairRanks {
    fn new(q: u32, k: usize, n: usize) -> Result<Self> {
        let (tk, tn) = (SurfaceTable::new(q, k)?, SurfaceTable::new(q, n)?);
        let prods: Vec<BigUint> = (0..=k)
            .flat_map(|i| (0..=n).map(move |j| (i, j)))
            .map(|(i, j)| tk.surface(i) * tn.surface(j))
            .collect();
        let mut sorted = prods.clone();
        sorted.sort();
        sorted.dedup();
        let rank = prods
            .iter()
            .map(|p| sorted.binary_search(p).unwrap() as u32)
            .collect();
        Ok(PairRanks { n, rank })
    }

    fn get(&self, w1: usize, w2: usize) -> u32 {
        self.rank[w1 * (self.n + 1) + w2]
    }
}

/// Score of a full-rank matrix: rank of its minimum pair (higher is better).
fn score(m: &Matrix, ranks: &PairRanks) -> u32 {
    let (k, n) = (m.rows(), m.cols());
    if m.field().order() == 2 && n <= 64 && k < 64 {
        let rows: Vec<u64> = m
            .row_iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .fold(0u64, |a, (i, &x)| a | ((x as u64) << i))
            })
            .collect();
        let mut out = 0u64;
        let mut best = u32::MAX;
        for s in 1u64..1 << k {
            out ^= rows[s.trailing_zeros() as usize];
            let input = s ^ (s >> 1);
            best = best.min(ranks.get(input.count_ones() as usize, out.count_ones() as usize));
        }
        return best;
    }
    let graph = Matrix::identity(m.field(), k)
        .hconcat(m)
        .expect("same shape");
    let hist = joint_histogram(&graph, k, u128::MAX).expect("no budget");
    let mut best = u32::MAX;
    for w1 in 1..=k {
        for w2 in 0..=n {
            if hist.get(w1, w2) > 0 {
                best = best.min(ranks.get(w1, w2));
            }
        }
    }
    best
}

fn matrix_from_index(f: &Field, k: usize, n: usize, mut idx: u128) -> Matrix {
    let q = f.order() as u128;
    let data = (0..k * n)
        .map(|_| {
            let d = (idx % q) as Elem;
            idx /= q;
            d
        })
        .collect();
    Matrix::new(f, k, n, data).expect("digits are field elements")
}

fn random_matrix(f: &Field, k: usize, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let q = f.order();
    let data = (0..k * n).map(|_| rng.random_range(0..q) as Elem).collect();
    Matrix::new(f, k, n, data).expect("sampled below q")
}

/// Best encoder found; ties keep the first in enumeration (or batch) order.
pub fn encoder_search_best(
    q: u32,
    k: usize,
    n: usize,
    mode: SearchMode,
    budget: u128,
    seed: u64,
) -> Result<SearchResult> {
    if k == 0 || n == 0 {
        return Err(Error::InvalidParameters("encoder needs k, n >= 1".into()));
    }
    let f = Field::with_order(q)?;
    crate::codes::check_budget(q, k, DEFAULT_BUDGET)?;
    let ranks = PairRanks::new(q, k, n)?;
    let full = k.min(n);

    let (best, examined, rejected) = match mode {
        SearchMode::Exhaustive => {
            let total = span_size(q, k * n);
            if total > budget {
                return Err(Error::BudgetExceeded {
                    needed: total,
                    budget,
                });
            }
            let chunks = total.div_ceil(BATCH as u128);
            (0..chunks as u64)
                .into_par_iter()
                .map(|c| {
                    let mut best: Option<(u32, Reverse<u128>)> = None;
                    let (mut ok, mut bad) = (0u64, 0u64);
                    let lo = c as u128 * BATCH as u128;
                    for idx in lo..(lo + BATCH as u128).min(total) {
                        let m = matrix_from_index(&f, k, n, idx);
                        if m.rank() != full {
                            bad += 1;
                            continue;
                        }
                        ok += 1;
                        let cand = (score(&m, &ranks), Reverse(idx));
                        if best.is_none_or(|b| cand > b) {
                            best = Some(cand);
                        }
                    }
                    (best, ok, bad)
                })
                .reduce(|| (None, 0, 0), merge)
        }
        SearchMode::Random { samples } => {
            let batches = samples.div_ceil(BATCH);
            let out = (0..batches)
                .into_par_iter()
                .map(|b| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(b);
                    let mut best: Option<(u32, Reverse<u128>)> = None;
                    let (mut ok, mut bad) = (0u64, 0u64);
                    let count = BATCH.min(samples - b * BATCH);
                    for i in 0..count {
                        let m = random_matrix(&f, k, n, &mut rng);
                        if m.rank() != full {
                            bad += 1;
                            continue;
                        }
                        ok += 1;
                        let cand = (score(&m, &ranks), Reverse(((b as u128) << 64) | i as u128));
                        if best.is_none_or(|x| cand > x) {
                            best = Some(cand);
                        }
                    }
                    (best, ok, bad)
                })
                .reduce(|| (None, 0, 0), merge);
            log::debug!(
                "random encoder search: {} accepted, {} rank-deficient rejected",
                out.1,
                out.2
            );
            out
        }
    };
    let (_, Reverse(tag)) =
        best.ok_or_else(|| Error::Infeasible("no full-rank matrix was sampled".into()))?;
    let m = match mode {
        SearchMode::Exhaustive => matrix_from_index(&f, k, n, tag),
        SearchMode::Random { .. } => {
            // replay the batch up to the winning sample
            let (b, i) = ((tag >> 64) as u64, tag as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let mut m = random_matrix(&f, k, n, &mut rng);
            for _ in 0..i {
                m = random_matrix(&f, k, n, &mut rng);
            }
            m
        }
    };
    let encoder = LinearEncoder::from_matrix(&m)?;
    let distance = encoder_entropy_distance(&encoder)?;
    Ok(SearchResult {
        matrix: m.row_iter().map(|r| r.to_vec()).collect(),
        encoder,
        distance,
        examined,
        rejected,
    })
}

type Partial = (Option<(u32, Reverse<u128>)>, u64, u64);

fn merge(a: Partial, b: Partial) -> Partial {
    let best = match (a.0, b.0) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, y) => x.or(y),
    };
    (best, a.1 + b.1, a.2 + b.2)
}
