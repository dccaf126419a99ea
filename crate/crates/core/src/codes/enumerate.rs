//! Exhaustive enumeration of a row space.
//!
//! Every vector of the span of `k` independent rows over GF(p^r) is visited
//! once by walking a p-ary Gray code over the F_p-basis `{x^t g_j}`: step `s`
//! adds basis vector number `v_p(s)`, so each step is one vector addition.
//! The walk is split into independent chunks over the high basis digits and
//! run in parallel; histograms are summed, so the result does not depend on
//! scheduling.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field, Matrix};

/// Default cap on the number of enumerated vectors.
pub const DEFAULT_BUDGET: u128 = 1 << 26;

const CHUNK_TARGET: u128 = 1 << 12;

/// Number of vectors in the span of `k` independent rows over GF(q).
pub fn span_size(q: u32, k: usize) -> u128 {
    u32::try_from(k)
        .ok()
        .and_then(|k| (q as u128).checked_pow(k))
        .unwrap_or(u128::MAX)
}

pub(crate) fn check_budget(q: u32, k: usize, budget: u128) -> Result<()> {
    let needed = span_size(q, k);
    if needed > budget {
        Err(Error::BudgetExceeded { needed, budget })
    } else {
        Ok(())
    }
}

/// Joint weight histogram over the row space of `rows` (assumed independent).
///
/// `hist[w1 * (n - split + 1) + w2]` counts vectors with weight `w1` on the
/// first `split` coordinates and `w2` on the rest.
pub(crate) struct JointHistogram {
    pub split: usize,
    pub n: usize,
    pub counts: Vec<u64>,
}

impl JointHistogram {
    fn empty(split: usize, n: usize) -> Self {
        JointHistogram {
            split,
            n,
            counts: vec![0; (split + 1) * (n - split + 1)],
        }
    }

    pub fn get(&self, w1: usize, w2: usize) -> u64 {
        self.counts[w1 * (self.n - self.split + 1) + w2]
    }

    /// Histogram of the total weight.
    pub fn totals(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.n + 1];
        for w1 in 0..=self.split {
            for w2 in 0..=self.n - self.split {
                out[w1 + w2] += self.get(w1, w2);
            }
        }
        out
    }

    fn merge(mut self, other: Self) -> Self {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        self
    }
}

fn fp_basis(rows: &Matrix) -> Vec<Vec<Elem>> {
    let f = rows.field();
    let p = f.characteristic() as Elem;
    let mut basis = Vec::with_capacity(rows.rows() * f.degree() as usize);
    for row in rows.row_iter() {
        let mut x_t: Elem = 1;
        for _ in 0..f.degree() {
            basis.push(row.iter().map(|&a| f.mul(x_t, a)).collect());
            x_t = x_t.wrapping_mul(p);
        }
    }
    basis
}

fn valuation(mut s: u64, p: u64) -> usize {
    let mut v = 0;
    while s.is_multiple_of(p) {
        s /= p;
        v += 1;
    }
    v
}

fn split_point(p: u64, m: usize) -> usize {
    let mut low = 0;
    let mut size: u128 = 1;
    while low < m && size < CHUNK_TARGET {
        size *= p as u128;
        low += 1;
    }
    low
}

pub(crate) fn joint_histogram(rows: &Matrix, split: usize, budget: u128) -> Result<JointHistogram> {
    let f = rows.field();
    let n = rows.cols();
    check_budget(f.order(), rows.rows(), budget)?;
    let basis = fp_basis(rows);
    let p = f.characteristic() as u64;
    let m = basis.len();
    let low = split_point(p, m);
    let chunks = p.pow((m - low) as u32);
    let walk = |h: u64| -> JointHistogram {
        if f.order() == 2 && n <= 128 {
            walk_binary(&basis, low, h, split, n)
        } else {
            walk_generic(f, &basis, low, h, split, n)
        }
    };
    Ok((0..chunks)
        .into_par_iter()
        .map(walk)
        .reduce(|| JointHistogram::empty(split, n), JointHistogram::merge))
}

fn chunk_start(f: &Field, basis: &[Vec<Elem>], low: usize, mut h: u64, n: usize) -> Vec<Elem> {
    let p = f.characteristic() as u64;
    let mut cur = vec![0 as Elem; n];
    let mut i = low;
    while h > 0 {
        let d = (h % p) as Elem;
        if d != 0 {
            for (c, &b) in cur.iter_mut().zip(&basis[i]) {
                *c = f.add(*c, f.mul(d, b));
            }
        }
        h /= p;
        i += 1;
    }
    cur
}

fn walk_generic(
    f: &Field,
    basis: &[Vec<Elem>],
    low: usize,
    h: u64,
    split: usize,
    n: usize,
) -> JointHistogram {
    let p = f.characteristic() as u64;
    let support: Vec<Vec<(usize, Elem)>> = basis[..low]
        .iter()
        .map(|b| {
            b.iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| (i, x))
                .collect()
        })
        .collect();
    let mut cur = chunk_start(f, basis, low, h, n);
    let mut w1 = cur[..split].iter().filter(|&&x| x != 0).count();
    let mut w2 = cur[split..].iter().filter(|&&x| x != 0).count();
    let mut hist = JointHistogram::empty(split, n);
    let stride = n - split + 1;
    hist.counts[w1 * stride + w2] += 1;
    for s in 1..p.pow(low as u32) {
        for &(i, b) in &support[valuation(s, p)] {
            let old = cur[i];
            let new = f.add(old, b);
            cur[i] = new;
            let w = if i < split { &mut w1 } else { &mut w2 };
            if old == 0 {
                *w += 1;
            } else if new == 0 {
                *w -= 1;
            }
        }
        hist.counts[w1 * stride + w2] += 1;
    }
    hist
}

fn to_bits(v: &[Elem]) -> u128 {
    v.iter()
        .enumerate()
        .fold(0u128, |acc, (i, &x)| acc | ((x as u128 & 1) << i))
}

fn walk_binary(basis: &[Vec<Elem>], low: usize, h: u64, split: usize, n: usize) -> JointHistogram {
    let masks: Vec<u128> = basis.iter().map(|b| to_bits(b)).collect();
    let lo_mask: u128 = if split == 128 {
        u128::MAX
    } else {
        (1u128 << split) - 1
    };
    let mut cur: u128 = (0..basis.len() - low)
        .filter(|i| (h >> i) & 1 == 1)
        .fold(0, |acc, i| acc ^ masks[low + i]);
    let mut hist = JointHistogram::empty(split, n);
    let stride = n - split + 1;
    let mut bump = |c: u128| {
        let w1 = (c & lo_mask).count_ones() as usize;
        let w2 = (c & !lo_mask).count_ones() as usize;
        hist.counts[w1 * stride + w2] += 1;
    };
    bump(cur);
    for s in 1u64..1 << low {
        cur ^= masks[s.trailing_zeros() as usize];
        bump(cur);
    }
    hist
}

/// First vector in Gray order whose split weights satisfy `pred`.
pub(crate) fn find_vector(
    rows: &Matrix,
    split: usize,
    budget: u128,
    pred: impl Fn(usize, usize) -> bool,
) -> Result<Option<Vec<Elem>>> {
    let f = rows.field();
    let n = rows.cols();
    check_budget(f.order(), rows.rows(), budget)?;
    let basis = fp_basis(rows);
    let p = f.characteristic() as u64;
    let mut cur = vec![0 as Elem; n];
    let weight = |v: &[Elem]| {
        (
            v[..split].iter().filter(|&&x| x != 0).count(),
            v[split..].iter().filter(|&&x| x != 0).count(),
        )
    };
    let (w1, w2) = weight(&cur);
    if pred(w1, w2) {
        return Ok(Some(cur));
    }
    for s in 1..p.pow(basis.len() as u32) {
        for (c, &b) in cur.iter_mut().zip(&basis[valuation(s, p)]) {
            *c = f.add(*c, b);
        }
        let (w1, w2) = weight(&cur);
        if pred(w1, w2) {
            return Ok(Some(cur));
        }
    }
    Ok(None)
}
