//! Bounds on `D_q(n, h)`, the largest linear code of length `n` with entropy
//! distance at least `h`, and on `E_q(k, n)`, the largest entropy distance of
//! a full-rank linear encoder `F_q^k -> F_q^n`.
//!
//! Thresholds are [`LogQValue`]s and every "ef(i) < h" decision is an integer
//! comparison of surfaces, so step-function boundaries are exact.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::codes::{entropy_distance_of_code, LinearCode};
use crate::entropy::{ef, LogQValue, SurfaceTable};
use crate::error::{Error, Result};
use crate::gf::{Elem, Field, Matrix};

fn pow(q: u32, e: usize) -> BigUint {
    BigUint::from(q).pow(e as u32)
}

fn table_for(q: u32, n: usize, h: &LogQValue) -> Result<SurfaceTable> {
    if h.q() != q {
        return Err(Error::FieldMismatch);
    }
    if n == 0 {
        return Err(Error::InvalidParameters("length must be positive".into()));
    }
    SurfaceTable::new(q, n)
}

fn require_positive(h: &LogQValue) -> Result<()> {
    if h.is_zero() {
        Err(Error::OutOfRange("threshold must be positive".into()))
    } else {
        Ok(())
    }
}

/// Gilbert-type lower bound `ceil(q^n / sum_{ef(i) < h} C(n,i)(q-1)^i)`, for `0 < h <= max ef`.
pub fn gilbert_lower(q: u32, n: usize, h: &LogQValue) -> Result<BigUint> {
    let t = table_for(q, n, h)?;
    require_positive(h)?;
    if t.preimage_interval(h).is_err() {
        return Err(Error::OutOfRange(
            "threshold exceeds the largest entropy weight".into(),
        ));
    }
    let ball: BigUint = t.surfaces().iter().filter(|s| *s < h.surface()).sum();
    Ok(pow(q, n).div_ceil(&ball))
}

/// Hamming-type upper bound with the binary doubling factor, for `0 < h <= max ef`.
pub fn hamming_upper(q: u32, n: usize, h: &LogQValue) -> Result<BigUint> {
    let t = table_for(q, n, h)?;
    require_positive(h)?;
    let (d, _) = t.preimage_interval(h)?;
    let radius = d.div_ceil(2) - 1;
    let ball: BigUint = t.surfaces()[..=radius].iter().sum();
    let factor = if q == 2 { 2u32 } else { 1 };
    Ok(pow(q, n) / (ball * factor))
}

/// Singleton-type upper bound `q^min(n - d1 + 1, d2)`.
pub fn singleton_upper(q: u32, n: usize, h: &LogQValue) -> Result<BigUint> {
    let t = table_for(q, n, h)?;
    let (d1, d2) = t.preimage_interval(h)?;
    Ok(pow(q, (n + 1 - d1).min(d2)))
}

/// Exact `D_2(n, ef_{2,n}(2))`: `2^(n-3)` for odd `n`, `2^(n-2)` for even `n >= 4`.
pub fn d2_special(n: usize) -> Result<BigUint> {
    if n < 4 {
        return Err(Error::InvalidParameters("needs n >= 4".into()));
    }
    Ok(pow(2, if n % 2 == 1 { n - 3 } else { n - 2 }))
}

/// `D_q(n, ef_{q,n}(1))` as stated: `2^(n-1)` for `q = 2`, `q^n` otherwise.
pub fn dq_ef1(q: u32, n: usize) -> Result<BigUint> {
    if q < 2 || n == 0 {
        return Err(Error::InvalidParameters(format!("q = {q}, n = {n}")));
    }
    Ok(if q == 2 { pow(2, n - 1) } else { pow(q, n) })
}

/// Right-hand side of a length-reduction bound: `D_q(n, h) <= factor * D_q(n, threshold)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecursionBound {
    pub n: usize,
    pub threshold: LogQValue,
    pub factor: u32,
}

/// Puncturing: requires `d1 >= 2`.
pub fn puncture_recursion_bound(q: u32, n: usize, h: &LogQValue) -> Result<RecursionBound> {
    let t = table_for(q, n, h)?;
    let (d1, d2) = t.preimage_interval(h)?;
    if d1 < 2 {
        return Err(Error::InvalidParameters(format!(
            "puncturing needs d1 >= 2, got {d1}"
        )));
    }
    let s = SurfaceTable::new(q, n - 1)?;
    let threshold = s.ef(d1 - 1).min_exact(s.ef(d2.min(n - 1)));
    Ok(RecursionBound {
        n: n - 1,
        threshold,
        factor: 1,
    })
}

/// Shortening. When `d1 = n` the index `d1` is clamped to `n - 1`, which only
/// lowers the threshold and keeps the bound valid.
pub fn shorten_recursion_bound(q: u32, n: usize, h: &LogQValue) -> Result<RecursionBound> {
    let t = table_for(q, n, h)?;
    if n < 2 {
        return Err(Error::InvalidParameters("shortening needs n >= 2".into()));
    }
    let (d1, d2) = t.preimage_interval(h)?;
    let s = SurfaceTable::new(q, n - 1)?;
    let threshold = s.ef(d1.min(n - 1)).min_exact(s.ef(d2.min(n - 1)));
    Ok(RecursionBound {
        n: n - 1,
        threshold,
        factor: q,
    })
}

trait MinExact {
    fn min_exact(self, other: Self) -> Self;
}

impl MinExact for LogQValue {
    fn min_exact(self, other: Self) -> Self {
        if other.surface() < self.surface() {
            other
        } else {
            self
        }
    }
}

/// Distinct positive values of `ef_{q,n}`, largest first.
fn positive_candidates(t: &SurfaceTable) -> Vec<LogQValue> {
    let mut s: Vec<&BigUint> = t.surfaces().iter().filter(|s| !s.is_one()).collect();
    s.sort_unstable_by(|a, b| b.cmp(a));
    s.dedup();
    s.into_iter()
        .map(|w| LogQValue::new(t.q(), w.clone()).expect("positive"))
        .collect()
}

fn check_nk(q: u32, n: usize, k: usize) -> Result<SurfaceTable> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameters(format!(
            "need 1 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    SurfaceTable::new(q, n)
}

/// Largest `h` in `{ef(q, n, i)}` whose Gilbert-type bound guarantees `q^k` codewords (0 if none).
pub fn max_ed_lower(q: u32, n: usize, k: usize) -> Result<LogQValue> {
    let t = check_nk(q, n, k)?;
    let need = pow(q, k);
    for h in positive_candidates(&t) {
        if gilbert_lower(q, n, &h)? >= need {
            return Ok(h);
        }
    }
    Ok(LogQValue::zero(q))
}

/// Smallest of the upper bounds on `D_q(n, h)` (`h > 0`).
pub fn code_upper(q: u32, n: usize, h: &LogQValue) -> Result<BigUint> {
    let mut best = hamming_upper(q, n, h)?.min(singleton_upper(q, n, h)?);
    if q == 2 && n >= 4 && h == &ef(2, n, 2)? {
        best = best.min(d2_special(n)?);
    }
    Ok(best)
}

/// Largest `h` in `{ef(q, n, i)}` not excluded for `q^k` codewords by the upper bounds (0 if none).
pub fn max_ed_upper(q: u32, n: usize, k: usize) -> Result<LogQValue> {
    let t = check_nk(q, n, k)?;
    let need = pow(q, k);
    for h in positive_candidates(&t) {
        if code_upper(q, n, &h)? >= need {
            return Ok(h);
        }
    }
    Ok(LogQValue::zero(q))
}

fn check_kn(q: u32, k: usize, n: usize) -> Result<()> {
    if q < 2 || k == 0 || n == 0 {
        return Err(Error::InvalidParameters(format!(
            "q = {q}, k = {k}, n = {n}"
        )));
    }
    Ok(())
}

/// Upper bound on `E_q(k, n)`.
pub fn encoder_upper(q: u32, k: usize, n: usize) -> Result<LogQValue> {
    check_kn(q, k, n)?;
    if q == 2 {
        ef(2, n, (n - 1).div_ceil(2))
    } else {
        let qu = q as usize;
        Ok(&ef(q, k, 1)? + &ef(q, n, ((qu - 1) * n - 1).div_ceil(qu))?)
    }
}

/// The lower bound `h0` on `E_q(k, n)` with the cumulative weights that certify it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H0Report {
    pub h0: LogQValue,
    /// Total weight of pairs with value strictly below `h0`.
    #[serde(serialize_with = "ser_big")]
    pub below: BigUint,
    /// Total weight of pairs with value at most `h0`.
    #[serde(serialize_with = "ser_big")]
    pub through: BigUint,
    /// `(q-1)(q^n - q^(k'-1))`, `k' = min(k, n)`.
    #[serde(serialize_with = "ser_big")]
    pub threshold: BigUint,
    /// Every pair fits below the threshold; `h0` is then the largest value.
    pub saturated: bool,
}

/// `h0`: the largest pair value `v = ef_{q,k}(i) + ef_{q,n}(j)` such that the
/// pairs strictly below `v` weigh less than the threshold. Pairs have `i >= 1`
/// and `j >= 1` when `k <= n`, `j >= 0` otherwise.
pub fn encoder_lower_h0(q: u32, k: usize, n: usize) -> Result<H0Report> {
    check_kn(q, k, n)?;
    let tk = SurfaceTable::new(q, k)?;
    let tn = SurfaceTable::new(q, n)?;
    let j0 = usize::from(k <= n);
    // a pair's weight equals its surface, so group by surface
    let mut weights: BTreeMap<BigUint, BigUint> = BTreeMap::new();
    for i in 1..=k {
        for j in j0..=n {
            let s = tk.surface(i) * tn.surface(j);
            *weights.entry(s.clone()).or_insert_with(BigUint::zero) += s;
        }
    }
    let kp = k.min(n);
    let threshold = BigUint::from(q - 1) * (pow(q, n) - pow(q, kp - 1));
    let mut below = BigUint::zero();
    let mut best: Option<(BigUint, BigUint, BigUint)> = None;
    for (v, w) in &weights {
        if below >= threshold {
            break;
        }
        let through = &below + w;
        best = Some((v.clone(), below.clone(), through.clone()));
        below = through;
    }
    let (v, below, through) = best.expect("at least one pair");
    let saturated = through < threshold && weights.keys().next_back() == Some(&v);
    Ok(H0Report {
        h0: LogQValue::new(q, v)?,
        below,
        through,
        threshold,
        saturated,
    })
}

/// Number of `k`-dimensional subspaces of `F_q^n`.
pub fn gaussian_binomial(q: u32, n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= pow(q, n - i) - 1u32;
        den *= pow(q, i + 1) - 1u32;
    }
    num / den
}

/// Settings for [`dq_exhaustive_with`].
#[derive(Clone, Copy, Debug)]
pub struct DqOptions {
    /// Cap on the number of subspaces examined.
    pub budget: u128,
    /// Skip dimensions excluded by the Hamming- and Singleton-type bounds.
    pub prune: bool,
}

impl Default for DqOptions {
    fn default() -> Self {
        DqOptions {
            budget: 1 << 26,
            prune: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct DqResult {
    pub size: BigUint,
    pub k: usize,
    pub witness: LinearCode,
    pub subspaces_examined: u128,
}

/// Exact `D_q(n, h)` by enumerating subspaces in RREF, largest dimension first.
pub fn dq_exhaustive(q: u32, n: usize, h: &LogQValue) -> Result<DqResult> {
    dq_exhaustive_with(q, n, h, DqOptions::default())
}

const TASK_SIZE: u64 = 1 << 12;

pub fn dq_exhaustive_with(q: u32, n: usize, h: &LogQValue, opts: DqOptions) -> Result<DqResult> {
    let t = table_for(q, n, h)?;
    let f = Field::with_order(q)?;
    if (q as u64).checked_pow(n as u32).is_none_or(|s| s > 1 << 16) {
        return Err(Error::InvalidParameters(format!(
            "q^n = {q}^{n} exceeds 2^16"
        )));
    }
    let Ok((d1, d2)) = t.preimage_interval(h) else {
        return Ok(DqResult {
            size: BigUint::one(),
            k: 0,
            witness: LinearCode::zero(&f, n),
            subspaces_examined: 0,
        });
    };
    let upper = if opts.prune && !h.is_zero() {
        Some(code_upper(q, n, h)?)
    } else {
        None
    };
    let mut examined: u128 = 0;
    for k in (1..=n).rev() {
        if upper.as_ref().is_some_and(|u| pow(q, k) > *u) {
            continue;
        }
        let count = gaussian_binomial(q, n, k).to_u128().unwrap_or(u128::MAX);
        let needed = examined.saturating_add(count);
        if needed > opts.budget {
            return Err(Error::BudgetExceeded {
                needed,
                budget: opts.budget,
            });
        }
        examined = needed;
        if let Some(g) = search_dimension(&f, n, k, d1, d2) {
            let witness = LinearCode::from_generator(&g)?;
            return Ok(DqResult {
                size: pow(q, k),
                k,
                witness,
                subspaces_examined: examined,
            });
        }
    }
    Ok(DqResult {
        size: BigUint::one(),
        k: 0,
        witness: LinearCode::zero(&f, n),
        subspaces_examined: examined,
    })
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
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

struct Pattern {
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
}

/// First RREF generator (in pattern order) whose nonzero codewords all have weight in `[d1, d2]`.
fn search_dimension(f: &Field, n: usize, k: usize, d1: usize, d2: usize) -> Option<Matrix> {
    let q = f.order() as u64;
    let patterns: Vec<Pattern> = combinations(n, k)
        .into_iter()
        .map(|pivots| {
            let free = (0..k)
                .flat_map(|i| {
                    (pivots[i] + 1..n)
                        .filter(|c| !pivots.contains(c))
                        .map(move |c| (i, c))
                })
                .collect();
            Pattern { pivots, free }
        })
        .collect();
    let tasks: Vec<(usize, u64, u64)> = patterns
        .iter()
        .enumerate()
        .flat_map(|(pi, p)| {
            let total = q.pow(p.free.len() as u32);
            (0..total.div_ceil(TASK_SIZE))
                .map(move |c| (pi, c * TASK_SIZE, ((c + 1) * TASK_SIZE).min(total)))
        })
        .collect();
    tasks.par_iter().find_map_first(|&(pi, lo, hi)| {
        let p = &patterns[pi];
        (lo..hi).find_map(|idx| {
            let mut rows = vec![vec![0 as Elem; n]; k];
            for (i, &c) in p.pivots.iter().enumerate() {
                rows[i][c] = 1;
            }
            let mut x = idx;
            for &(i, c) in &p.free {
                rows[i][c] = (x % q) as Elem;
                x /= q;
            }
            weights_within(f, &rows, d1, d2).then(|| {
                let data = rows.concat();
                Matrix::new(f, k, n, data).expect("entries are field elements")
            })
        })
    })
}

/// Whether every nonzero vector in the span of `rows` has weight in `[d1, d2]`.
fn weights_within(f: &Field, rows: &[Vec<Elem>], d1: usize, d2: usize) -> bool {
    let ok = |w: usize| w >= d1 && w <= d2;
    if f.order() == 2 {
        let masks: Vec<u64> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .fold(0u64, |a, (i, &x)| a | ((x as u64) << i))
            })
            .collect();
        let mut cur = 0u64;
        for s in 1u64..1 << masks.len() {
            cur ^= masks[s.trailing_zeros() as usize];
            if !ok(cur.count_ones() as usize) {
                return false;
            }
        }
        return true;
    }
    // Gray walk over the F_p-basis {x^t r_j}
    let p = f.characteristic() as u64;
    let pe = f.characteristic() as Elem;
    let basis: Vec<Vec<Elem>> = rows
        .iter()
        .flat_map(|r| {
            (0..f.degree()).map(move |t| {
                let xt = pe.pow(t);
                r.iter().map(|&a| f.mul(xt, a)).collect::<Vec<_>>()
            })
        })
        .collect();
    let mut cur = vec![0 as Elem; rows[0].len()];
    let mut w = 0usize;
    for s in 1..p.pow(basis.len() as u32) {
        let mut v = 0;
        let mut t = s;
        while t % p == 0 {
            t /= p;
            v += 1;
        }
        for (c, &b) in cur.iter_mut().zip(&basis[v]) {
            if b != 0 {
                let old = *c;
                *c = f.add(old, b);
                if old == 0 {
                    w += 1;
                } else if *c == 0 {
                    w -= 1;
                }
            }
        }
        if !ok(w) {
            return false;
        }
    }
    true
}

pub(crate) fn ser_big<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_str_radix(10))
}

fn ser_size<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("Size", 2)?;
    st.serialize_field("exact", &v.to_str_radix(10))?;
    st.serialize_field("approx", &v.to_f64().unwrap_or(f64::INFINITY))?;
    st.end()
}

/// A number reported by a bound: a code size or an entropy value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", content = "value", rename_all = "snake_case")]
pub enum BoundValue {
    Size(#[serde(serialize_with = "ser_size")] BigUint),
    Entropy(LogQValue),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Lower,
    Upper,
    Exact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundEntry {
    pub name: &'static str,
    pub kind: BoundKind,
    pub value: BoundValue,
}

/// Collected bounds for one parameter point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub q: u32,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<LogQValue>,
    pub lower: Option<BoundValue>,
    pub upper: Option<BoundValue>,
    pub entries: Vec<BoundEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h0: Option<H0Report>,
}

/// Bounds on `D_q(n, h)`.
pub fn code_size_report(q: u32, n: usize, h: &LogQValue) -> Result<BoundReport> {
    let mut entries = Vec::new();
    let mut push = |name, kind, v: BigUint| {
        entries.push(BoundEntry {
            name,
            kind,
            value: BoundValue::Size(v),
        })
    };
    let gilbert = gilbert_lower(q, n, h)?;
    push("gilbert", BoundKind::Lower, gilbert.clone());
    let ham = hamming_upper(q, n, h)?;
    push("hamming", BoundKind::Upper, ham.clone());
    let sing = singleton_upper(q, n, h)?;
    push("singleton", BoundKind::Upper, sing.clone());
    let mut upper = ham.min(sing);
    let mut lower = gilbert;
    if q == 2 && n >= 4 && h == &ef(2, n, 2)? {
        let d = d2_special(n)?;
        push("weight_two_exact", BoundKind::Exact, d.clone());
        upper = upper.min(d.clone());
        lower = lower.max(d);
    }
    if h == &ef(q, n, 1)? && (q > 2 || n > 1) {
        let d = dq_ef1(q, n)?;
        push("weight_one_exact", BoundKind::Exact, d.clone());
        upper = upper.min(d.clone());
        lower = lower.max(d);
    }
    Ok(BoundReport {
        q,
        n,
        k: None,
        h: Some(h.clone()),
        lower: Some(BoundValue::Size(lower)),
        upper: Some(BoundValue::Size(upper)),
        entries,
        h0: None,
    })
}

/// Bounds on the largest entropy distance of an `[n, k]` code.
pub fn max_ed_report(q: u32, n: usize, k: usize) -> Result<BoundReport> {
    let lo = max_ed_lower(q, n, k)?;
    let up = max_ed_upper(q, n, k)?;
    Ok(BoundReport {
        q,
        n,
        k: Some(k),
        h: None,
        lower: Some(BoundValue::Entropy(lo.clone())),
        upper: Some(BoundValue::Entropy(up.clone())),
        entries: vec![
            BoundEntry {
                name: "gilbert_inverse",
                kind: BoundKind::Lower,
                value: BoundValue::Entropy(lo),
            },
            BoundEntry {
                name: "upper_inverse",
                kind: BoundKind::Upper,
                value: BoundValue::Entropy(up),
            },
        ],
        h0: None,
    })
}

/// Bounds on `E_q(k, n)`.
pub fn encoder_report(q: u32, k: usize, n: usize) -> Result<BoundReport> {
    let up = encoder_upper(q, k, n)?;
    let h0 = encoder_lower_h0(q, k, n)?;
    Ok(BoundReport {
        q,
        n,
        k: Some(k),
        h: None,
        lower: Some(BoundValue::Entropy(h0.h0.clone())),
        upper: Some(BoundValue::Entropy(up.clone())),
        entries: vec![
            BoundEntry {
                name: "covering_h0",
                kind: BoundKind::Lower,
                value: BoundValue::Entropy(h0.h0.clone()),
            },
            BoundEntry {
                name: "encoder_upper",
                kind: BoundKind::Upper,
                value: BoundValue::Entropy(up),
            },
        ],
        h0: Some(h0),
    })
}

/// One row of the `[7, k]` binary table.
#[derive(Clone, Debug, Serialize)]
pub struct Table1Row {
    pub k: usize,
    pub lower: LogQValue,
    pub upper: LogQValue,
    pub example: Vec<Vec<u32>>,
    pub example_ed: LogQValue,
}

/// Example generators achieving the lower bound for `[7, k]`, `k = 1..=6`.
pub fn table1_examples() -> Vec<Vec<Vec<u32>>> {
    let eye = |k: usize| -> Vec<Vec<u32>> {
        (0..k)
            .map(|i| (0..7).map(|j| (i == j) as u32).collect())
            .collect()
    };
    vec![
        vec![vec![1, 1, 1, 0, 0, 0, 0]],
        vec![vec![1, 1, 1, 0, 0, 0, 0], vec![1, 0, 0, 1, 1, 0, 0]],
        vec![
            vec![1, 0, 1, 0, 1, 0, 1],
            vec![0, 1, 1, 0, 0, 1, 1],
            vec![0, 0, 0, 1, 1, 1, 1],
        ],
        vec![
            vec![1, 0, 1, 0, 1, 0, 1],
            vec![0, 1, 1, 0, 0, 1, 1],
            vec![0, 0, 0, 1, 1, 1, 0],
            vec![0, 0, 1, 0, 0, 1, 0],
        ],
        eye(5),
        eye(6),
    ]
}

/// Lower and upper bounds on the largest entropy distance of binary `[7, k]` codes.
pub fn table1() -> Result<Vec<Table1Row>> {
    let f = Field::prime(2)?;
    table1_examples()
        .into_iter()
        .enumerate()
        .map(|(i, example)| {
            let k = i + 1;
            let code = LinearCode::from_generator(&Matrix::from_rows(&f, &example)?)?;
            if code.k() != k {
                return Err(Error::RankDeficient {
                    rank: code.k(),
                    expected: k,
                });
            }
            Ok(Table1Row {
                k,
                lower: max_ed_lower(2, 7, k)?,
                upper: max_ed_upper(2, 7, k)?,
                example_ed: entropy_distance_of_code(&code)?,
                example,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(q: u32, w: u64) -> LogQValue {
        LogQValue::from_surface(q, w).unwrap()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn gilbert_examples() {
        assert_eq!(gilbert_lower(2, 7, &s(2, 21)).unwrap(), big(8));
        assert_eq!(gilbert_lower(2, 7, &s(2, 35)).unwrap(), big(3));
        assert_eq!(gilbert_lower(2, 7, &s(2, 2)).unwrap(), big(64));
        assert_eq!(gilbert_lower(3, 4, &s(3, 2)).unwrap(), big(81));
        assert!(gilbert_lower(2, 7, &LogQValue::zero(2)).is_err());
        assert!(gilbert_lower(2, 7, &s(2, 36)).is_err());
    }

    #[test]
    fn hamming_examples() {
        assert_eq!(hamming_upper(2, 7, &s(2, 35)).unwrap(), big(8));
        assert_eq!(hamming_upper(2, 7, &s(2, 21)).unwrap(), big(64));
        assert_eq!(hamming_upper(3, 4, &s(3, 32)).unwrap(), big(9));
        assert_eq!(hamming_upper(2, 7, &s(2, 36)), Err(Error::EmptyPreimage));
    }

    #[test]
    fn singleton_examples() {
        assert_eq!(singleton_upper(2, 7, &s(2, 7)).unwrap(), big(64));
        assert_eq!(singleton_upper(2, 7, &s(2, 35)).unwrap(), big(16));
        assert_eq!(
            singleton_upper(3, 5, &LogQValue::zero(3)).unwrap(),
            big(243)
        );
        assert_eq!(singleton_upper(3, 5, &s(3, 2)).unwrap(), big(243));
    }

    #[test]
    fn exact_values() {
        assert_eq!(d2_special(7).unwrap(), big(16));
        assert_eq!(d2_special(6).unwrap(), big(16));
        assert_eq!(d2_special(4).unwrap(), big(4));
        assert!(d2_special(3).is_err());
        assert_eq!(dq_ef1(2, 5).unwrap(), big(16));
        assert_eq!(dq_ef1(3, 4).unwrap(), big(81));
        assert_eq!(dq_ef1(2, 1).unwrap(), big(1));
    }

    #[test]
    fn recursion_examples() {
        let p = puncture_recursion_bound(2, 7, &s(2, 35)).unwrap();
        assert_eq!((p.n, p.threshold.surface(), p.factor), (6, &big(15), 1));
        let sh = shorten_recursion_bound(2, 7, &s(2, 35)).unwrap();
        assert_eq!((sh.n, sh.threshold.surface(), sh.factor), (6, &big(15), 2));
        assert!(puncture_recursion_bound(2, 7, &s(2, 7)).is_err());
    }

    #[test]
    fn table1_rows() {
        let rows = table1().unwrap();
        let lower = [35u64, 21, 21, 7, 7, 7];
        let upper = [35u64, 35, 35, 21, 7, 7];
        let ed = [35u64, 35, 35, 21, 7, 7];
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.lower, s(2, lower[i]), "k={}", r.k);
            assert_eq!(r.upper, s(2, upper[i]), "k={}", r.k);
            assert_eq!(r.example_ed, s(2, ed[i]), "k={}", r.k);
        }
        assert_eq!(max_ed_lower(2, 7, 7).unwrap(), LogQValue::zero(2));
    }

    #[test]
    fn encoder_upper_examples() {
        assert_eq!(encoder_upper(2, 3, 7).unwrap(), s(2, 35));
        assert_eq!(encoder_upper(3, 2, 4).unwrap(), s(3, 4 * 32));
        assert_eq!(encoder_upper(2, 1, 2).unwrap(), s(2, 2));
    }

    #[test]
    fn h0_examples() {
        let r = encoder_lower_h0(2, 3, 7).unwrap();
        assert_eq!(r.h0, s(2, 21));
        assert_eq!(
            (r.below, r.through, r.threshold),
            (big(21), big(147), big(124))
        );
        assert!(!r.saturated);

        let r = encoder_lower_h0(2, 1, 1).unwrap();
        assert!(r.h0.is_zero());
        assert_eq!((r.below, r.through, r.threshold), (big(0), big(1), big(1)));
        assert!(!r.saturated);
    }

    #[test]
    fn h0_against_pair_scan() {
        // direct oracle over all pairs without grouping
        for q in [2u32, 3] {
            for k in 1..=4usize {
                for n in 1..=4usize {
                    let r = encoder_lower_h0(q, k, n).unwrap();
                    let j0 = usize::from(k <= n);
                    let pairs: Vec<(BigUint, BigUint)> = (1..=k)
                        .flat_map(|i| (j0..=n).map(move |j| (i, j)))
                        .map(|(i, j)| {
                            let w = crate::entropy::surface_count(q, k, i).unwrap()
                                * crate::entropy::surface_count(q, n, j).unwrap();
                            (w.clone(), w)
                        })
                        .collect();
                    let below: BigUint = pairs
                        .iter()
                        .filter(|(v, _)| v < r.h0.surface())
                        .map(|(_, w)| w)
                        .sum();
                    assert_eq!(below, r.below);
                    assert!(below < r.threshold);
                    if !r.saturated {
                        let next = pairs
                            .iter()
                            .map(|(v, _)| v)
                            .filter(|v| *v > r.h0.surface())
                            .min();
                        if let Some(next) = next {
                            let through: BigUint =
                                pairs.iter().filter(|(v, _)| v < next).map(|(_, w)| w).sum();
                            assert!(through >= r.threshold, "q={q} k={k} n={n}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(2, 4, 2), big(35));
        assert_eq!(gaussian_binomial(3, 3, 1), big(13));
        assert_eq!(gaussian_binomial(2, 8, 4), big(200787));
        assert_eq!(gaussian_binomial(5, 2, 3), big(0));
    }

    #[test]
    fn dq_examples() {
        let r = dq_exhaustive(2, 5, &s(2, 10)).unwrap();
        assert_eq!(r.size, big(4));
        assert!(entropy_distance_of_code(&r.witness).unwrap() >= s(2, 10));
        assert_eq!(dq_exhaustive(2, 7, &s(2, 21)).unwrap().size, big(16));
        assert_eq!(dq_exhaustive(2, 4, &s(2, 4)).unwrap().size, big(8));
        let none = dq_exhaustive(2, 4, &s(2, 7)).unwrap();
        assert_eq!((none.size, none.k), (big(1), 0));
        assert_eq!(
            dq_exhaustive(3, 3, &LogQValue::zero(3)).unwrap().size,
            big(27)
        );
    }

    #[test]
    fn dq_pruning_does_not_change_results() {
        for n in 2..=6 {
            let t = SurfaceTable::new(2, n).unwrap();
            for i in 0..=n {
                let h = t.ef(i);
                let a = dq_exhaustive_with(
                    2,
                    n,
                    &h,
                    DqOptions {
                        prune: true,
                        ..Default::default()
                    },
                )
                .unwrap();
                let b = dq_exhaustive_with(
                    2,
                    n,
                    &h,
                    DqOptions {
                        prune: false,
                        ..Default::default()
                    },
                )
                .unwrap();
                assert_eq!(a.size, b.size, "n={n} i={i}");
            }
        }
    }

    #[test]
    fn dq_budget() {
        let r = dq_exhaustive_with(
            2,
            8,
            &s(2, 28),
            DqOptions {
                budget: 1000,
                prune: false,
            },
        );
        assert!(matches!(r, Err(Error::BudgetExceeded { .. })));
        assert!(dq_exhaustive(2, 17, &s(2, 17)).is_err());
    }

    #[test]
    fn reports_serialize() {
        let r = code_size_report(2, 7, &s(2, 21)).unwrap();
        assert_eq!(r.lower, Some(BoundValue::Size(big(16))));
        assert_eq!(r.upper, Some(BoundValue::Size(big(16))));
        let j = serde_json::to_value(&r).unwrap();
        assert_eq!(j["entries"][0]["value"]["value"]["exact"], "8");
        assert_eq!(j["entries"][0]["value"]["value"]["approx"], 8.0);
        let e = encoder_report(2, 3, 7).unwrap();
        let j = serde_json::to_value(&e).unwrap();
        assert_eq!(j["h0"]["through"], "147");
    }
}
