//! Random linear codes inside GF(q^n), monomial maps, rough-sphere packing
//! statistics, and greedy separable subspaces.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::codes::{weight_distribution_bruteforce, LinearCode, WeightDistribution};
use crate::entropy::{asymptotic_params, binomial, SurfaceTable};
use crate::error::{Error, Result};
use crate::gf::{Elem, Field, Matrix};

/// Largest ambient space `q^n` for packing experiments.
pub const MAX_SPACE: u64 = 1 << 20;

fn space_size(q: u32, n: usize) -> Result<u64> {
    (q as u64)
        .checked_pow(n as u32)
        .filter(|&s| s <= MAX_SPACE)
        .ok_or_else(|| Error::InvalidParameters(format!("q^n = {q}^{n} exceeds {MAX_SPACE}")))
}

/// `x -> (v_1 x_{sigma^-1(1)}, ..., v_n x_{sigma^-1(n)})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialMap {
    #[serde(skip)]
    field: Field,
    /// `sigma[j]` is the image of coordinate `j` (0-based).
    sigma: Vec<usize>,
    v: Vec<Elem>,
}

impl MonomialMap {
    pub fn new(field: &Field, sigma: Vec<usize>, v: Vec<Elem>) -> Result<Self> {
        let n = sigma.len();
        if v.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "permutation of {n} with {} scalars",
                v.len()
            )));
        }
        let mut seen = vec![false; n];
        for &s in &sigma {
            if s >= n || std::mem::replace(&mut seen[s], true) {
                return Err(Error::InvalidParameters(format!(
                    "{sigma:?} is not a permutation"
                )));
            }
        }
        for &a in &v {
            field.element(a as u32)?;
            if a == 0 {
                return Err(Error::InvalidParameters(
                    "monomial scalars must be nonzero".into(),
                ));
            }
        }
        Ok(MonomialMap {
            field: field.clone(),
            sigma,
            v,
        })
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        MonomialMap {
            field: field.clone(),
            sigma: (0..n).collect(),
            v: vec![1; n],
        }
    }

    /// Uniform over permutations times nonzero scalings.
    pub fn random(field: &Field, n: usize, rng: &mut impl Rng) -> Self {
        let mut sigma: Vec<usize> = (0..n).collect();
        sigma.shuffle(rng);
        let v = (0..n)
            .map(|_| rng.random_range(1..field.order()) as Elem)
            .collect();
        MonomialMap {
            field: field.clone(),
            sigma,
            v,
        }
    }

    pub fn random_seeded(field: &Field, n: usize, seed: u64) -> Self {
        MonomialMap::random(field, n, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn scalars(&self) -> &[Elem] {
        &self.v
    }

    pub fn apply(&self, x: &[Elem]) -> Vec<Elem> {
        assert_eq!(x.len(), self.len(), "monomial map length mismatch");
        let mut out = vec![0; x.len()];
        for (j, &xj) in x.iter().enumerate() {
            let i = self.sigma[j];
            out[i] = self.field.mul(self.v[i], xj);
        }
        out
    }

    pub fn inverse(&self) -> MonomialMap {
        let n = self.len();
        let mut inv = vec![0; n];
        for (j, &i) in self.sigma.iter().enumerate() {
            inv[i] = j;
        }
        let v = (0..n)
            .map(|i| self.field.inv(self.v[self.sigma[i]]).expect("nonzero"))
            .collect();
        MonomialMap {
            field: self.field.clone(),
            sigma: inv,
            v,
        }
    }
}

pub fn monomial_apply(m: &MonomialMap, x: &[Elem]) -> Vec<Elem> {
    m.apply(x)
}

pub fn monomial_random(field: &Field, n: usize, seed: u64) -> MonomialMap {
    MonomialMap::random_seeded(field, n, seed)
}

fn extension(q: u32, n: usize) -> Result<Field> {
    let f = Field::with_order(q)?;
    if !f.is_prime_field() {
        return Err(Error::InvalidParameters(format!(
            "random codes need a prime q, got {q}"
        )));
    }
    Field::new(q, n as u32, None)
}

/// `C_v = { v g(x) : x in F_q^k }` with `g` the embedding into the first `k`
/// coordinates of `GF(q^n)`, coordinates read in the polynomial basis.
pub fn random_code_cv(q: u32, n: usize, k: usize, v: u32) -> Result<LinearCode> {
    if k > n || n == 0 {
        return Err(Error::InvalidParameters(format!(
            "need 0 <= k <= n, n >= 1; got k = {k}, n = {n}"
        )));
    }
    let big = extension(q, n)?;
    let v = big.element(v)?;
    if v == 0 {
        return Err(Error::InvalidParameters("v must be nonzero".into()));
    }
    cv_code(&big, &Field::prime(q)?, n, k, v)
}

fn cv_code(big: &Field, small: &Field, n: usize, k: usize, v: Elem) -> Result<LinearCode> {
    let q = small.order();
    let mut data = Vec::with_capacity(k * n);
    let mut xj: Elem = 1;
    for _ in 0..k {
        let mut e = big.mul(v, xj) as u32;
        for _ in 0..n {
            data.push((e % q) as Elem);
            e /= q;
        }
        xj = big.mul(xj, q as Elem);
    }
    Ok(LinearCode::span(&Matrix::new(small, k, n, data)?))
}

/// Exact sum of `A_i(C_v)` over every nonzero `v`, next to `(q^k - 1) C(n,i) (q-1)^i`.
#[derive(Clone, Debug, Serialize)]
pub struct EnsembleReport {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    #[serde(serialize_with = "ser_big_vec")]
    pub sums: Vec<BigUint>,
    #[serde(serialize_with = "ser_big_vec")]
    pub expected: Vec<BigUint>,
    pub matches: bool,
}

fn ser_big_vec<S: serde::Serializer>(v: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_str_radix(10)))
}

pub fn ensemble_average(q: u32, n: usize, k: usize) -> Result<EnsembleReport> {
    if k > n || n == 0 {
        return Err(Error::InvalidParameters(format!(
            "need 0 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    let big = extension(q, n)?;
    let small = Field::prime(q)?;
    let qn = big.order();
    let sums = (1..qn)
        .into_par_iter()
        .map(|v| -> Result<Vec<u64>> {
            let c = cv_code(&big, &small, n, k, v as Elem)?;
            let wd = weight_distribution_bruteforce(&c)?;
            Ok(wd
                .counts()
                .iter()
                .map(|x| x.to_u64().expect("fits"))
                .collect())
        })
        .try_reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                Ok(a)
            },
        )?;
    let mut sums: Vec<BigUint> = sums.into_iter().map(BigUint::from).collect();
    sums[0] = BigUint::zero();
    let qk1 = BigUint::from(q).pow(k as u32) - 1u32;
    let mut expected: Vec<BigUint> = (0..=n)
        .map(|i| &qk1 * binomial(n as u64, i as u64) * BigUint::from(q - 1).pow(i as u32))
        .collect();
    expected[0] = BigUint::zero();
    let matches = sums == expected;
    Ok(EnsembleReport {
        q,
        n,
        k,
        sums,
        expected,
        matches,
    })
}

/// Whether `A_i q^(n-k) < n C(n,i)(q-1)^i` for every `i >= 1`.
pub fn is_white(wd: &WeightDistribution, k: usize) -> bool {
    white_margin(wd, k) < BigInt::zero()
}

/// `max_i (A_i q^(n-k) - n C(n,i)(q-1)^i)` over `i >= 1`; negative means white.
fn white_margin(wd: &WeightDistribution, k: usize) -> BigInt {
    let (q, n) = (wd.q(), wd.n());
    let t = SurfaceTable::new(q, n).expect("q >= 2");
    let scale = BigUint::from(q).pow((n - k) as u32);
    (1..=n)
        .map(|i| BigInt::from(wd.get(i) * &scale) - BigInt::from(t.surface(i) * n))
        .max()
        .unwrap_or_else(|| BigInt::from(-1))
}

#[derive(Clone, Debug, Serialize)]
pub struct WhiteCode {
    pub v: u32,
    #[serde(skip)]
    pub code: LinearCode,
    pub generator: Vec<Vec<Elem>>,
    pub distribution: WeightDistribution,
    pub trials: u64,
}

/// First sampled `C_v` satisfying the white condition.
pub fn find_white_code(
    q: u32,
    n: usize,
    k: usize,
    seed: u64,
    max_trials: u64,
) -> Result<WhiteCode> {
    if k > n || n == 0 {
        return Err(Error::InvalidParameters(format!(
            "need 0 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    let big = extension(q, n)?;
    let small = Field::prime(q)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<BigInt> = None;
    for trial in 1..=max_trials {
        let v = rng.random_range(1..big.order());
        let code = cv_code(&big, &small, n, k, v as Elem)?;
        let wd = weight_distribution_bruteforce(&code)?;
        let margin = white_margin(&wd, k);
        if margin < BigInt::zero() {
            return Ok(WhiteCode {
                v,
                generator: code.generator().row_iter().map(|r| r.to_vec()).collect(),
                code,
                distribution: wd,
                trials: trial,
            });
        }
        if best.as_ref().is_none_or(|b| margin < *b) {
            best = Some(margin);
        }
    }
    Err(Error::Infeasible(format!(
        "no white code in {max_trials} trials; smallest violation margin {}",
        best.map(|b| b.to_string()).unwrap_or_else(|| "n/a".into())
    )))
}

/// All vectors of weight at most `r`, by weight then lexicographically.
pub fn ball(field: &Field, n: usize, r: usize) -> Result<Vec<Vec<Elem>>> {
    space_size(field.order(), n)?;
    let q = field.order() as u64;
    let mut out = Vec::new();
    for w in 0..=r.min(n) {
        let mut layer = Vec::new();
        for support in combinations(n, w) {
            for idx in 0..(q - 1).pow(w as u32) {
                let mut x = vec![0 as Elem; n];
                let mut t = idx;
                for &c in &support {
                    x[c] = (t % (q - 1) + 1) as Elem;
                    t /= q - 1;
                }
                layer.push(x);
            }
        }
        layer.sort();
        out.extend(layer);
    }
    Ok(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) else {
            return out;
        };
        c[i] += 1;
        for j in i + 1..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

/// Shape of the filler set `S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Filler {
    Ball { radius: usize },
    Explicit { size: usize },
}

/// A collision certifying `Phi(s) = 1`: `f(s) = c + f(s')`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Collision {
    pub s: Vec<Elem>,
    pub codeword: Vec<Elem>,
    pub partner: Vec<Elem>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PackingResult {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub filler: Filler,
    /// The monomial map used; identity for the invariant experiment.
    pub map: MonomialMap,
    pub s_size: usize,
    pub b_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s0_size: Option<usize>,
    /// `Phi(s)` for each element of `S`, in enumeration order.
    pub phi: Vec<u8>,
    pub retained: Vec<Vec<Elem>>,
    pub collisions: Vec<Collision>,
    /// The size hypothesis on `|S|`.
    pub hypothesis: bool,
    pub condition1: bool,
    pub condition2: bool,
    pub condition3: bool,
    /// Right-hand side of the `|B|` inequality, as an exact fraction.
    pub size_bound: String,
}

impl PackingResult {
    pub fn all_conditions(&self) -> bool {
        self.condition1 && self.condition2 && self.condition3
    }
}

struct Space {
    field: Field,
    parity: Matrix,
}

impl Space {
    fn new(c: &LinearCode) -> Self {
        Space {
            field: c.field().clone(),
            parity: c.parity_check(),
        }
    }

    fn sub(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| self.field.sub(x, y))
            .collect()
    }

    fn in_code(&self, x: &[Elem]) -> bool {
        let f = &self.field;
        self.parity.row_iter().all(|h| {
            h.iter()
                .zip(x)
                .fold(0 as Elem, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
                == 0
        })
    }
}

/// `Phi_f` over `S`, with a collision witness for each `s` where it is 1.
fn phi(space: &Space, map: &MonomialMap, s: &[Vec<Elem>]) -> Vec<Option<Collision>> {
    let images: Vec<Vec<Elem>> = s.iter().map(|x| map.apply(x)).collect();
    (0..s.len())
        .into_par_iter()
        .map(|i| {
            (0..s.len()).filter(|&j| j != i).find_map(|j| {
                let d = space.sub(&images[i], &images[j]);
                space.in_code(&d).then(|| Collision {
                    s: s[i].clone(),
                    codeword: d,
                    partner: s[j].clone(),
                })
            })
        })
        .collect()
}

/// `{c + f(B)}` pairwise disjoint: no two retained images differ by a codeword.
fn disjoint(space: &Space, map: &MonomialMap, b: &[Vec<Elem>]) -> bool {
    let images: Vec<Vec<Elem>> = b.iter().map(|x| map.apply(x)).collect();
    (0..images.len())
        .into_par_iter()
        .all(|i| (i + 1..images.len()).all(|j| !space.in_code(&space.sub(&images[i], &images[j]))))
}

fn ratio(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

fn check_filler(c: &LinearCode, s: &[Vec<Elem>]) -> Result<()> {
    space_size(c.q(), c.n())?;
    if s.iter().any(|x| x.len() != c.n()) {
        return Err(Error::DimensionMismatch(
            "filler vectors must have the code length".into(),
        ));
    }
    if !s.iter().any(|x| x.iter().all(|&e| e == 0)) {
        return Err(Error::InvalidParameters(
            "filler must contain the zero vector".into(),
        ));
    }
    Ok(())
}

/// Packing with `S` the Hamming ball of radius `r` and `f` the identity.
pub fn packing_experiment_invariant(c: &LinearCode, r: usize) -> Result<PackingResult> {
    let (q, n, k) = (c.q(), c.n(), c.k());
    let s = ball(c.field(), n, r)?;
    check_filler(c, &s)?;
    let space = Space::new(c);
    let map = MonomialMap::identity(c.field(), n);
    let hits = phi(&space, &map, &s);
    let s_size = s.len();
    let qnk = BigUint::from(q).pow((n - k) as u32);
    let t = SurfaceTable::new(q, n)?;

    let hypothesis = BigUint::from(s_size * n) < qnk;
    let in_s0 = |x: &Vec<Elem>| {
        let w = x.iter().filter(|&&e| e != 0).count();
        t.surface(w) * (n * s_size) <= qnk
    };
    let s0_size = s.iter().filter(|x| in_s0(x)).count();
    let condition1 = s.iter().zip(&hits).all(|(x, h)| !in_s0(x) || h.is_none());

    let retained: Vec<Vec<Elem>> = s
        .iter()
        .zip(&hits)
        .filter(|(_, h)| h.is_none())
        .map(|(x, _)| x.clone())
        .collect();
    let b_size = retained.len();
    // |S| (1 - n (|S| - |S0|) / q^(n-k))
    let qnk_i = BigInt::from(qnk);
    let rhs = ratio(BigInt::from(s_size), BigInt::from(1))
        * (BigRational::from_integer(BigInt::from(1))
            - ratio(BigInt::from(n * (s_size - s0_size)), qnk_i));
    let condition2 = BigRational::from_integer(BigInt::from(b_size)) > rhs;
    let condition3 = disjoint(&space, &map, &retained);

    Ok(PackingResult {
        q,
        n,
        k,
        filler: Filler::Ball { radius: r },
        map,
        s_size,
        b_size,
        s0_size: Some(s0_size),
        phi: hits.iter().map(|h| h.is_some() as u8).collect(),
        collisions: hits.into_iter().flatten().collect(),
        retained,
        hypothesis,
        condition1,
        condition2,
        condition3,
        size_bound: rhs.to_string(),
    })
}

fn general_result(c: &LinearCode, s: &[Vec<Elem>], map: MonomialMap) -> PackingResult {
    let (q, n, k) = (c.q(), c.n(), c.k());
    let space = Space::new(c);
    let hits = phi(&space, &map, s);
    let s_size = s.len();
    let qnk = BigInt::from(BigUint::from(q).pow((n - k) as u32));
    let zero_ok = s
        .iter()
        .zip(&hits)
        .any(|(x, h)| x.iter().all(|&e| e == 0) && h.is_none());
    let retained: Vec<Vec<Elem>> = s
        .iter()
        .zip(&hits)
        .filter(|(_, h)| h.is_none())
        .map(|(x, _)| x.clone())
        .collect();
    let b_size = retained.len();
    // |S| (1 - 2n|S| / q^(n-k))
    let rhs = BigRational::from_integer(BigInt::from(s_size))
        * (BigRational::from_integer(BigInt::from(1))
            - ratio(BigInt::from(2 * n * s_size), qnk.clone()));
    let condition2 = BigRational::from_integer(BigInt::from(b_size)) > rhs;
    let condition3 = disjoint(&space, &map, &retained);
    PackingResult {
        q,
        n,
        k,
        filler: Filler::Explicit { size: s_size },
        map,
        s_size,
        b_size,
        s0_size: None,
        phi: hits.iter().map(|h| h.is_some() as u8).collect(),
        collisions: hits.into_iter().flatten().collect(),
        retained,
        hypothesis: BigInt::from(2 * n * s_size) < qnk,
        condition1: zero_ok,
        condition2,
        condition3,
        size_bound: rhs.to_string(),
    }
}

/// Report of a randomized search over monomial maps.
#[derive(Clone, Debug, Serialize)]
pub struct GeneralPacking {
    pub best: PackingResult,
    pub trials: u64,
    /// Trials whose map satisfied all three conditions.
    pub successes: u64,
}

/// Random monomial maps for an explicit filler `S`; keeps the first map with
/// the largest `|B|` among those with `Phi_f(0) = 0`.
pub fn packing_experiment_general(
    c: &LinearCode,
    s: &[Vec<Elem>],
    seed: u64,
    trials: u64,
) -> Result<GeneralPacking> {
    check_filler(c, s)?;
    if trials == 0 {
        return Err(Error::InvalidParameters("need at least one trial".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<PackingResult> = None;
    let mut successes = 0;
    for _ in 0..trials {
        let map = MonomialMap::random(c.field(), c.n(), &mut rng);
        let r = general_result(c, s, map);
        if r.all_conditions() {
            successes += 1;
        }
        let better = match &best {
            None => true,
            Some(b) => (r.condition1, r.b_size) > (b.condition1, b.b_size),
        };
        if better {
            best = Some(r);
        }
    }
    Ok(GeneralPacking {
        best: best.expect("trials > 0"),
        trials,
        successes,
    })
}

/// A subspace meeting the forbidden set only at 0.
#[derive(Clone, Debug, Serialize)]
pub struct SeparableSubspace {
    pub q: u32,
    pub n: usize,
    pub basis: Vec<Vec<Elem>>,
    pub dimension: usize,
    pub forbidden_size: u64,
    /// `V ∩ B = {0}`, checked exhaustively.
    pub separable: bool,
    /// The translates `v + B` cover the space, checked exhaustively.
    pub covering: bool,
    /// `|V| |B| >= q^n`.
    pub counting_bound: bool,
}

impl SeparableSubspace {
    pub fn code(&self, field: &Field) -> Result<LinearCode> {
        if self.basis.is_empty() {
            return Ok(LinearCode::zero(field, self.n));
        }
        let rows: Vec<Vec<u32>> = self
            .basis
            .iter()
            .map(|r| r.iter().map(|&x| x as u32).collect())
            .collect();
        LinearCode::from_generator(&Matrix::from_rows(field, &rows)?)
    }
}

/// Indexes `F_q^n` so that increasing index is lexicographic order.
struct Indexer {
    field: Field,
    n: usize,
    size: usize,
}

impl Indexer {
    fn vector(&self, mut idx: usize) -> Vec<Elem> {
        let q = self.field.order() as usize;
        let mut x = vec![0 as Elem; self.n];
        for t in (0..self.n).rev() {
            x[t] = (idx % q) as Elem;
            idx /= q;
        }
        x
    }

    fn index(&self, x: &[Elem]) -> usize {
        let q = self.field.order() as usize;
        x.iter().fold(0, |acc, &e| acc * q + e as usize)
    }

    fn add(&self, a: usize, b: usize) -> usize {
        if self.field.order() == 2 {
            return a ^ b;
        }
        let (x, y) = (self.vector(a), self.vector(b));
        let s: Vec<Elem> = x
            .iter()
            .zip(&y)
            .map(|(&u, &v)| self.field.add(u, v))
            .collect();
        self.index(&s)
    }

    fn scale(&self, a: Elem, x: usize) -> usize {
        let v: Vec<Elem> = self
            .vector(x)
            .iter()
            .map(|&e| self.field.mul(a, e))
            .collect();
        self.index(&v)
    }
}

/// Greedy maximal `B`-separable subspace: repeatedly adjoin the
/// lexicographically smallest vector outside `V + B`. `B` must contain 0
/// and be closed under scalar multiples.
pub fn greedy_separable_subspace(
    field: &Field,
    n: usize,
    in_b: impl Fn(&[Elem]) -> bool + Sync,
) -> Result<SeparableSubspace> {
    let size = space_size(field.order(), n)? as usize;
    let ix = Indexer {
        field: field.clone(),
        n,
        size,
    };
    let b: Vec<bool> = (0..size)
        .into_par_iter()
        .map(|i| in_b(&ix.vector(i)))
        .collect();
    if !b[0] {
        return Err(Error::InvalidParameters(
            "forbidden set must contain 0".into(),
        ));
    }
    let b_list: Vec<usize> = (0..size).filter(|&i| b[i]).collect();
    for &x in &b_list {
        for a in field.nonzero_elements() {
            if !b[ix.scale(a, x)] {
                return Err(Error::InvalidParameters(
                    "forbidden set is not closed under scalar multiples".into(),
                ));
            }
        }
    }

    let mut covered = b.clone();
    let mut v_elems = vec![0usize];
    let mut basis = Vec::new();
    while let Some(x) = covered.iter().position(|&c| !c) {
        basis.push(ix.vector(x));
        let multiples: Vec<usize> = field.nonzero_elements().map(|a| ix.scale(a, x)).collect();
        let mut next = covered.clone();
        for y in 0..ix.size {
            if covered[y] {
                for &m in &multiples {
                    next[ix.add(y, m)] = true;
                }
            }
        }
        covered = next;
        let mut grown = v_elems.clone();
        for &v in &v_elems {
            grown.extend(multiples.iter().map(|&m| ix.add(v, m)));
        }
        v_elems = grown;
    }

    // independent re-verification
    let separable = v_elems.iter().all(|&v| v == 0 || !b[v]);
    let mut cover = vec![false; size];
    for &v in &v_elems {
        for &x in &b_list {
            cover[ix.add(v, x)] = true;
        }
    }
    let covering = cover.iter().all(|&c| c);
    let counting_bound = (v_elems.len() as u128) * (b_list.len() as u128) >= size as u128;
    Ok(SeparableSubspace {
        q: field.order(),
        n,
        dimension: basis.len(),
        basis,
        forbidden_size: b_list.len() as u64,
        separable,
        covering,
        counting_bound,
    })
}

/// Finite-length run of the ball-packing pipeline at radius `floor(delta n - epsilon)`.
#[derive(Clone, Debug, Serialize)]
pub struct Corollary1Report {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub epsilon: f64,
    pub delta: f64,
    pub gamma: f64,
    pub radius: usize,
    pub white_v: u32,
    pub s_size: usize,
    pub b_size: usize,
    /// `|B| / |S|` as an exact fraction.
    pub ratio: String,
    pub ratio_approx: f64,
    /// `1 - gamma^epsilon`.
    pub threshold: f64,
    pub holds: bool,
    pub hypothesis: bool,
    pub conditions: bool,
}

/// Slack on the floating threshold `1 - gamma^epsilon`.
pub const COROLLARY_TOLERANCE: f64 = 1e-9;

pub fn corollary1_demo(
    q: u32,
    n: usize,
    k: usize,
    epsilon: f64,
    seed: u64,
    max_trials: u64,
) -> Result<Corollary1Report> {
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::InvalidParameters("epsilon must be positive".into()));
    }
    let p = asymptotic_params(q, n, k)?;
    let r = (p.delta * n as f64 - epsilon).floor();
    if r < 0.0 {
        return Err(Error::Infeasible(format!(
            "radius floor(delta n - epsilon) = floor({:.6} - {epsilon:.6}) is negative",
            p.delta * n as f64
        )));
    }
    let radius = r as usize;
    let white = find_white_code(q, n, k, seed, max_trials)?;
    let pack = packing_experiment_invariant(&white.code, radius)?;
    let frac = BigRational::new(BigInt::from(pack.b_size), BigInt::from(pack.s_size));
    let ratio_approx = pack.b_size as f64 / pack.s_size as f64;
    let threshold = 1.0 - p.gamma.powf(epsilon);
    Ok(Corollary1Report {
        q,
        n,
        k,
        epsilon,
        delta: p.delta,
        gamma: p.gamma,
        radius,
        white_v: white.v,
        s_size: pack.s_size,
        b_size: pack.b_size,
        ratio: frac.to_string(),
        ratio_approx,
        threshold,
        holds: ratio_approx > threshold - COROLLARY_TOLERANCE,
        hypothesis: pack.hypothesis,
        conditions: pack.all_conditions(),
    })
}

/// Histogram of Hamming weights in a set of vectors.
pub fn weight_profile(s: &[Vec<Elem>], n: usize) -> HashMap<usize, usize> {
    let mut h = HashMap::new();
    for x in s {
        *h.entry(x.iter().filter(|&&e| e != 0).count()).or_insert(0) += 1;
    }
    debug_assert!(h.keys().all(|&w| w <= n));
    h
}
