//! Entropy weight and entropy distance.
//!
//! The entropy weight of a vector of Hamming weight `i` in `F_q^n` is
//! `log_q(C(n, i) (q-1)^i)`, the log of the size of the Hamming sphere of
//! radius `i`. Values are kept exactly as the integer inside the logarithm
//! (the *surface*); sums of entropy values are products of surfaces, and all
//! comparisons are integer comparisons. Floats only appear in [`LogQValue::approx`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf::Vector;

/// `log_q(surface)`, stored exactly.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LogQValue {
    q: u32,
    surface: BigUint,
}

impl LogQValue {
    pub fn new(q: u32, surface: BigUint) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidParameters(format!("field order {q} < 2")));
        }
        if surface.is_zero() {
            return Err(Error::OutOfRange("surface must be at least 1".into()));
        }
        Ok(LogQValue { q, surface })
    }

    pub fn from_surface(q: u32, surface: u64) -> Result<Self> {
        LogQValue::new(q, BigUint::from(surface))
    }

    /// The value 0 (surface 1).
    pub fn zero(q: u32) -> Self {
        LogQValue {
            q,
            surface: BigUint::one(),
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn surface(&self) -> &BigUint {
        &self.surface
    }

    pub fn is_zero(&self) -> bool {
        self.surface.is_one()
    }

    /// Floating rendering `ln(surface) / ln(q)`.
    pub fn approx(&self) -> f64 {
        big_ln(&self.surface) / (self.q as f64).ln()
    }

    /// Exact sum; fails if the fields differ.
    pub fn checked_add(&self, other: &LogQValue) -> Result<LogQValue> {
        if self.q != other.q {
            return Err(Error::FieldMismatch);
        }
        Ok(LogQValue {
            q: self.q,
            surface: &self.surface * &other.surface,
        })
    }

    /// Exact comparison; fails if the fields differ.
    pub fn try_cmp(&self, other: &LogQValue) -> Result<Ordering> {
        self.partial_cmp(other).ok_or(Error::FieldMismatch)
    }
}

impl Add for &LogQValue {
    type Output = LogQValue;

    /// Panics if the two values belong to different fields.
    fn add(self, rhs: &LogQValue) -> LogQValue {
        self.checked_add(rhs)
            .expect("adding entropy values over different fields")
    }
}

impl Add for LogQValue {
    type Output = LogQValue;

    fn add(self, rhs: LogQValue) -> LogQValue {
        &self + &rhs
    }
}

impl PartialOrd for LogQValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        (self.q == other.q).then(|| self.surface.cmp(&other.surface))
    }
}

impl fmt::Debug for LogQValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "log_{}({})", self.q, self.surface)
    }
}

impl fmt::Display for LogQValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "log_{}({}) ~ {:.6}", self.q, self.surface, self.approx())
    }
}

#[derive(Serialize, Deserialize)]
struct LogQRepr {
    q: u32,
    surface: String,
    approx: f64,
}

impl Serialize for LogQValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LogQRepr {
            q: self.q,
            surface: self.surface.to_str_radix(10),
            approx: self.approx(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LogQValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = LogQRepr::deserialize(d)?;
        let surface = BigUint::parse_bytes(r.surface.as_bytes(), 10)
            .ok_or_else(|| D::Error::custom("surface is not a decimal integer"))?;
        LogQValue::new(r.q, surface).map_err(D::Error::custom)
    }
}

/// Natural log of an arbitrary-precision integer.
pub(crate) fn big_ln(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 960 {
        x.to_f64().unwrap_or(f64::INFINITY).ln()
    } else {
        let shift = bits - 64;
        let top: BigUint = x >> shift;
        top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn check_q(q: u32) -> Result<()> {
    if q < 2 {
        Err(Error::InvalidParameters(format!("field order {q} < 2")))
    } else {
        Ok(())
    }
}

/// `C(n, i) (q-1)^i`: the number of vectors of weight `i` in `F_q^n`.
pub fn surface_count(q: u32, n: usize, i: usize) -> Result<BigUint> {
    check_q(q)?;
    if i > n {
        return Err(Error::OutOfRange(format!("weight {i} exceeds length {n}")));
    }
    Ok(binomial(n as u64, i as u64) * BigUint::from(q - 1).pow(i as u32))
}

/// `ef_{q,n}(i) = log_q(C(n, i) (q-1)^i)`.
pub fn ef(q: u32, n: usize, i: usize) -> Result<LogQValue> {
    Ok(LogQValue {
        q,
        surface: surface_count(q, n, i)?,
    })
}

/// Surfaces `C(n, i)(q-1)^i` for every `i` in `0..=n`, computed once.
#[derive(Clone, Debug)]
pub struct SurfaceTable {
    q: u32,
    n: usize,
    surfaces: Vec<BigUint>,
}

impl SurfaceTable {
    pub fn new(q: u32, n: usize) -> Result<Self> {
        check_q(q)?;
        let mut surfaces = Vec::with_capacity(n + 1);
        let mut c = BigUint::one();
        let qm1 = BigUint::from(q - 1);
        let mut pw = BigUint::one();
        for i in 0..=n {
            surfaces.push(&c * &pw);
            c = c * (n - i) / (i + 1);
            pw *= &qm1;
        }
        Ok(SurfaceTable { q, n, surfaces })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn surface(&self, i: usize) -> &BigUint {
        &self.surfaces[i]
    }

    pub fn surfaces(&self) -> &[BigUint] {
        &self.surfaces
    }

    pub fn ef(&self, i: usize) -> LogQValue {
        LogQValue {
            q: self.q,
            surface: self.surfaces[i].clone(),
        }
    }

    /// The largest surface, `max_i ef(q, n, i)`.
    pub fn max(&self) -> LogQValue {
        let i = ef_argmax(self.q, self.n)[0];
        self.ef(i)
    }

    /// `[d1, d2]` with `ef(i) >= h` exactly for `d1 <= i <= d2`.
    pub fn preimage_interval(&self, h: &LogQValue) -> Result<(usize, usize)> {
        if h.q != self.q {
            return Err(Error::FieldMismatch);
        }
        let mut hits = (0..=self.n).filter(|&i| self.surfaces[i] >= h.surface);
        let d1 = hits.next().ok_or(Error::EmptyPreimage)?;
        let d2 = hits.next_back().unwrap_or(d1);
        Ok((d1, d2))
    }
}

/// Indices maximising `ef_{q,n}`: `{ceil(x0), floor(x0) + 1}` with `x0 = ((q-1)n - 1)/q`.
pub fn ef_argmax(q: u32, n: usize) -> Vec<usize> {
    let q = q as usize;
    let num = (q - 1) * n - 1;
    let a = num.div_ceil(q);
    let b = num / q + 1;
    if a == b {
        vec![a]
    } else {
        vec![a, b]
    }
}

/// `{i : ef(q, n, i) >= h}` as a contiguous interval `[d1, d2]`.
pub fn ef_preimage_interval(q: u32, n: usize, h: &LogQValue) -> Result<(usize, usize)> {
    SurfaceTable::new(q, n)?.preimage_interval(h)
}

/// `ew(x) = ef(q, n, wt(x))`.
pub fn entropy_weight(x: &Vector) -> LogQValue {
    let q = x.field().order();
    ef(q, x.len(), x.weight()).expect("weight never exceeds length")
}

/// `ed(x, y) = ew(x - y)`.
pub fn entropy_distance(x: &Vector, y: &Vector) -> Result<LogQValue> {
    Ok(entropy_weight(&x.sub(y)?))
}

/// Entropy weight on `F_q^k x F_q^n`: `ew(x1) + ew(x2)`.
pub fn product_entropy_weight(x1: &Vector, x2: &Vector) -> Result<LogQValue> {
    if !x1.field().same_as(x2.field()) {
        return Err(Error::FieldMismatch);
    }
    Ok(&entropy_weight(x1) + &entropy_weight(x2))
}

/// `max{w1, n-w1, w2, n-w2} / n`.
pub fn beta(w1: usize, w2: usize, n: usize) -> Result<Ratio<u64>> {
    if n == 0 || w1 > n || w2 > n {
        return Err(Error::OutOfRange(format!(
            "weights ({w1}, {w2}) for length {n}"
        )));
    }
    let m = w1.max(n - w1).max(w2).max(n - w2);
    Ok(Ratio::new(m as u64, n as u64))
}

/// The q-ary entropy function, with `0 log 0 = 0`.
pub fn hilbert_entropy(q: u32, x: f64) -> Result<f64> {
    check_q(q)?;
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::OutOfRange(format!(
            "entropy argument {x} not in [0, 1]"
        )));
    }
    let lq = (q as f64).ln();
    let xlogx = |t: f64| if t == 0.0 { 0.0 } else { t * t.ln() };
    Ok((x * ((q - 1) as f64).ln() - xlogx(x) - xlogx(1.0 - x)) / lq)
}

const INV_TOLERANCE: f64 = 1e-12;
const INV_MAX_ITERATIONS: usize = 200;

/// Inverse of [`hilbert_entropy`] from `[0, 1]` onto `[0, 1 - 1/q]`, by bisection.
pub fn hilbert_entropy_inv(q: u32, y: f64) -> Result<f64> {
    check_q(q)?;
    if !(0.0..=1.0).contains(&y) {
        return Err(Error::OutOfRange(format!(
            "entropy value {y} not in [0, 1]"
        )));
    }
    let top = 1.0 - 1.0 / q as f64;
    if y == 1.0 {
        return Ok(top);
    }
    let (mut lo, mut hi) = (0.0f64, top);
    for _ in 0..INV_MAX_ITERATIONS {
        if hi - lo < INV_TOLERANCE {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if hilbert_entropy(q, mid)? < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `q^{n he_q(k/n)}` as an exact rational: `(q-1)^k n^n / (k^k (n-k)^(n-k))`, `0^0 = 1`.
pub fn entropy_power_exact(q: u32, n: usize, k: usize) -> Result<BigRational> {
    check_q(q)?;
    if k > n {
        return Err(Error::OutOfRange(format!("k = {k} exceeds n = {n}")));
    }
    let pw = |b: u64, e: usize| BigInt::from(b).pow(e as u32);
    let num = pw(q as u64 - 1, k) * pw(n as u64, n);
    let den = pw(k as u64, k) * pw((n - k) as u64, n - k);
    Ok(BigRational::new(num, den))
}

/// Relative GV radius and packing ratio for an `[n, k]` code over GF(q).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticParams {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    /// `he_q^{-1}(1 - k/n - log_q(n)/n)`
    pub delta: f64,
    /// `delta / ((q - 1)(1 - delta))`
    pub gamma: f64,
}

pub fn asymptotic_params(q: u32, n: usize, k: usize) -> Result<AsymptoticParams> {
    check_q(q)?;
    if n == 0 || k > n {
        return Err(Error::InvalidParameters(format!("[n, k] = [{n}, {k}]")));
    }
    let nf = n as f64;
    let arg = 1.0 - k as f64 / nf - (nf.ln() / (q as f64).ln()) / nf;
    if !(arg > 0.0 && arg < 1.0) {
        return Err(Error::Infeasible(format!(
            "1 - k/n - log_q(n)/n = {arg:.6} is outside (0, 1)"
        )));
    }
    let delta = hilbert_entropy_inv(q, arg)?;
    let gamma = delta / ((q - 1) as f64 * (1.0 - delta));
    Ok(AsymptoticParams {
        q,
        n,
        k,
        delta,
        gamma,
    })
}
