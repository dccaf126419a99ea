//! Linear codes, weight distributions and the standard constructions.

mod enumerate;
mod macwilliams;

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub(crate) use enumerate::{check_budget, find_vector, joint_histogram};
pub use enumerate::{span_size, DEFAULT_BUDGET};
pub use macwilliams::macwilliams_transform;

use crate::entropy::{binomial, LogQValue, SurfaceTable};
use crate::error::{Error, Result};
use crate::gf::{Elem, Field, Matrix, Vector};

/// A k-dimensional subspace of GF(q)^n, stored by the RREF of its generator.
///
/// The zero code (`k = 0`) is representable; it arises as the dual of the
/// full space.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearCode {
    generator: Matrix,
}

impl LinearCode {
    /// The code spanned by the rows of `m`. Fails on a zero matrix.
    pub fn from_generator(m: &Matrix) -> Result<Self> {
        let generator = m.row_space_basis();
        if generator.rows() == 0 {
            return Err(Error::TrivialCode);
        }
        Ok(LinearCode { generator })
    }

    /// The zero-dimensional code of length `n`.
    pub fn zero(field: &Field, n: usize) -> Self {
        LinearCode {
            generator: Matrix::zeros(field, 0, n),
        }
    }

    /// Like [`from_generator`](Self::from_generator) but accepts a zero span.
    pub fn span(m: &Matrix) -> Self {
        LinearCode {
            generator: m.row_space_basis(),
        }
    }

    pub fn field(&self) -> &Field {
        self.generator.field()
    }

    pub fn q(&self) -> u32 {
        self.field().order()
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    /// Canonical (RREF) generator.
    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    /// `q^k` as an exact integer.
    pub fn size(&self) -> BigUint {
        BigUint::from(self.q()).pow(self.k() as u32)
    }

    /// A generator of the dual code.
    pub fn parity_check(&self) -> Matrix {
        self.generator.kernel_basis()
    }

    pub fn dual(&self) -> LinearCode {
        LinearCode {
            generator: self.parity_check().row_space_basis(),
        }
    }

    pub fn contains(&self, v: &Vector) -> bool {
        if v.len() != self.n() || !v.field().same_as(self.field()) {
            return false;
        }
        let f = self.field();
        let h = self.parity_check();
        let ok = h.row_iter().all(|row| {
            row.iter()
                .zip(v.elems())
                .fold(0 as Elem, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
                == 0
        });
        ok
    }

    /// `u G` for a message `u` of length `k`.
    pub fn encode(&self, u: &Vector) -> Result<Vector> {
        u.mul_matrix(&self.generator)
    }
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}] code over {:?}: {:?}",
            self.n(),
            self.k(),
            self.field(),
            self.generator
        )
    }
}

/// Code from any generator; fails on the zero matrix.
pub fn code_from_generator(m: &Matrix) -> Result<LinearCode> {
    LinearCode::from_generator(m)
}

pub fn dual(c: &LinearCode) -> LinearCode {
    c.dual()
}

/// Counts `A_0..A_n` of codewords per Hamming weight.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightDistribution {
    q: u32,
    counts: Vec<BigUint>,
}

impl WeightDistribution {
    pub fn new(q: u32, counts: Vec<BigUint>) -> Result<Self> {
        if q < 2 || counts.is_empty() {
            return Err(Error::InvalidParameters(
                "weight distribution needs q >= 2 and n >= 0".into(),
            ));
        }
        Ok(WeightDistribution { q, counts })
    }

    pub fn from_u64(q: u32, counts: &[u64]) -> Result<Self> {
        WeightDistribution::new(q, counts.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn get(&self, i: usize) -> &BigUint {
        &self.counts[i]
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// Weights `i >= 1` with `A_i > 0`.
    pub fn nonzero_weights(&self) -> impl Iterator<Item = usize> + '_ {
        (1..self.counts.len()).filter(|&i| !self.counts[i].is_zero())
    }

    /// Minimum nonzero weight; fails for the zero code.
    pub fn hamming_distance(&self) -> Result<usize> {
        self.nonzero_weights().next().ok_or(Error::TrivialCode)
    }

    /// Minimum `ef(q, n, i)` over occupied weights `i >= 1`.
    pub fn entropy_distance(&self) -> Result<LogQValue> {
        let t = SurfaceTable::new(self.q, self.n())?;
        self.nonzero_weights()
            .map(|i| t.ef(i))
            .min_by(|a, b| a.surface().cmp(b.surface()))
            .ok_or(Error::TrivialCode)
    }

    pub fn enumerator(&self) -> WeightEnumerator {
        WeightEnumerator(self.clone())
    }
}

#[derive(Serialize, Deserialize)]
struct WdRepr {
    q: u32,
    n: usize,
    counts: Vec<String>,
}

impl Serialize for WeightDistribution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WdRepr {
            q: self.q,
            n: self.n(),
            counts: self.counts.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightDistribution {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = WdRepr::deserialize(d)?;
        if r.counts.len() != r.n + 1 {
            return Err(D::Error::custom("counts must have n + 1 entries"));
        }
        let counts = r
            .counts
            .iter()
            .map(|c| {
                BigUint::parse_bytes(c.as_bytes(), 10).ok_or_else(|| D::Error::custom("bad count"))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        WeightDistribution::new(r.q, counts).map_err(D::Error::custom)
    }
}

/// `W(x, y) = sum A_i x^i y^(n-i)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightEnumerator(WeightDistribution);

impl WeightEnumerator {
    pub fn degree(&self) -> usize {
        self.0.n()
    }

    /// Coefficient of `x^i y^(n-i)`.
    pub fn coefficient(&self, i: usize) -> &BigUint {
        self.0.get(i)
    }

    pub fn distribution(&self) -> &WeightDistribution {
        &self.0
    }
}

impl fmt::Display for WeightEnumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let terms: Vec<String> = (0..=n)
            .rev()
            .filter(|&i| !self.coefficient(i).is_zero())
            .map(|i| {
                let c = self.coefficient(i);
                let coef = if c.is_one() {
                    String::new()
                } else {
                    c.to_string()
                };
                let x = match i {
                    0 => String::new(),
                    1 => "x".into(),
                    _ => format!("x^{i}"),
                };
                let y = match n - i {
                    0 => String::new(),
                    1 => "y".into(),
                    e => format!("y^{e}"),
                };
                let t = format!("{coef}{x}{y}");
                if t.is_empty() {
                    "1".into()
                } else {
                    t
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

pub fn weight_distribution_bruteforce(c: &LinearCode) -> Result<WeightDistribution> {
    weight_distribution_bruteforce_with_budget(c, DEFAULT_BUDGET)
}

/// Exact counts by enumerating all `q^k` codewords; `budget` caps `q^k`.
pub fn weight_distribution_bruteforce_with_budget(
    c: &LinearCode,
    budget: u128,
) -> Result<WeightDistribution> {
    let hist = joint_histogram(c.generator(), 0, budget)?;
    WeightDistribution::from_u64(c.q(), &hist.totals())
}

pub fn weight_distribution(c: &LinearCode) -> Result<WeightDistribution> {
    weight_distribution_with_budget(c, DEFAULT_BUDGET)
}

/// Enumerates whichever of `C` and its dual is smaller, transforming if needed.
pub fn weight_distribution_with_budget(c: &LinearCode, budget: u128) -> Result<WeightDistribution> {
    if c.k() <= c.n() - c.k() {
        weight_distribution_bruteforce_with_budget(c, budget)
    } else {
        let d = c.dual();
        let wd = weight_distribution_bruteforce_with_budget(&d, budget)?;
        macwilliams_transform(&wd, &d.size())
    }
}

pub fn hamming_distance_of_code(c: &LinearCode) -> Result<usize> {
    if c.k() == 0 {
        return Err(Error::TrivialCode);
    }
    weight_distribution(c)?.hamming_distance()
}

pub fn entropy_distance_of_code(c: &LinearCode) -> Result<LogQValue> {
    if c.k() == 0 {
        return Err(Error::TrivialCode);
    }
    weight_distribution(c)?.entropy_distance()
}

/// Weight distribution of the whole space, `C(n, i)(q-1)^i`.
pub fn full_space_distribution(q: u32, n: usize) -> WeightDistribution {
    let counts = (0..=n)
        .map(|i| binomial(n as u64, i as u64) * BigUint::from(q - 1).pow(i as u32))
        .collect();
    WeightDistribution { q, counts }
}

fn field(q: u32) -> Result<Field> {
    Field::with_order(q)
}

/// `[n, 1, n]` repetition code.
pub fn repetition(q: u32, n: usize) -> Result<LinearCode> {
    if n == 0 {
        return Err(Error::InvalidParameters("length must be positive".into()));
    }
    let f = field(q)?;
    LinearCode::from_generator(&Matrix::from_rows(&f, &[vec![1u32; n]])?)
}

/// `[n, n-1, 2]` single parity-check code.
pub fn spc(q: u32, n: usize) -> Result<LinearCode> {
    if n < 2 {
        return Err(Error::InvalidParameters(
            "single parity-check code needs n >= 2".into(),
        ));
    }
    Ok(repetition(q, n)?.dual())
}

/// Simplex generator with columns in canonical order: the integers
/// `1..q^k` read as base-q columns (row 0 least significant), keeping those
/// whose first nonzero entry is 1.
pub fn simplex_generator(q: u32, k: usize) -> Result<Matrix> {
    if k == 0 {
        return Err(Error::InvalidParameters("simplex code needs k >= 1".into()));
    }
    let f = field(q)?;
    let total = span_size(q, k);
    if total > 1 << 24 {
        return Err(Error::InvalidParameters(format!(
            "simplex code with q^k = {total} is too long"
        )));
    }
    let mut cols: Vec<Vec<u32>> = Vec::new();
    for c in 1..total as u64 {
        let digits: Vec<u32> = (0..k)
            .map(|i| ((c / (q as u64).pow(i as u32)) % q as u64) as u32)
            .collect();
        if digits.iter().find(|&&d| d != 0) == Some(&1) {
            cols.push(digits);
        }
    }
    let rows: Vec<Vec<u32>> = (0..k)
        .map(|i| cols.iter().map(|col| col[i]).collect())
        .collect();
    Matrix::from_rows(&f, &rows)
}

/// `[(q^k-1)/(q-1), k, q^(k-1)]` simplex code.
pub fn simplex(q: u32, k: usize) -> Result<LinearCode> {
    LinearCode::from_generator(&simplex_generator(q, k)?)
}

/// `[(q^k-1)/(q-1), (q^k-1)/(q-1) - k, 3]` Hamming code, the simplex dual.
pub fn hamming(q: u32, k: usize) -> Result<LinearCode> {
    if k < 2 {
        return Err(Error::InvalidParameters("Hamming code needs k >= 2".into()));
    }
    Ok(simplex(q, k)?.dual())
}

/// Monomials of degree at most `r` in `m` variables, graded then lexicographic.
fn monomials(r: usize, m: usize) -> Vec<Vec<usize>> {
    fn combos(
        start: usize,
        m: usize,
        left: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for v in start..m {
            cur.push(v);
            combos(v + 1, m, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for d in 0..=r {
        combos(0, m, d, &mut Vec::new(), &mut out);
    }
    out
}

/// Binary Reed-Muller code `RM(r, m)` of length `2^m`.
pub fn reed_muller(r: usize, m: usize) -> Result<LinearCode> {
    if r > m || m > 16 {
        return Err(Error::InvalidParameters(format!(
            "RM({r}, {m}) needs 0 <= r <= m <= 16"
        )));
    }
    let f = Field::prime(2)?;
    let n = 1usize << m;
    let rows: Vec<Vec<u32>> = monomials(r, m)
        .iter()
        .map(|mono| {
            (0..n)
                .map(|c| mono.iter().all(|&v| (c >> v) & 1 == 1) as u32)
                .collect()
        })
        .collect();
    LinearCode::from_generator(&Matrix::from_rows(&f, &rows)?)
}

fn check_coord(c: &LinearCode, coord: usize) -> Result<()> {
    if coord >= c.n() {
        Err(Error::OutOfRange(format!(
            "coordinate {coord} for length {}",
            c.n()
        )))
    } else {
        Ok(())
    }
}

/// Subcode of codewords with a zero in `coord`.
pub fn zero_subcode(c: &LinearCode, coord: usize) -> Result<LinearCode> {
    check_coord(c, coord)?;
    let g = c.generator();
    let col: Vec<Elem> = (0..g.rows()).map(|i| g.get(i, coord)).collect();
    if g.rows() == 0 {
        return Ok(c.clone());
    }
    let col = Matrix::new(c.field(), 1, g.rows(), col)?;
    let u = col.kernel_basis();
    if u.rows() == 0 {
        return Ok(LinearCode::zero(c.field(), c.n()));
    }
    Ok(LinearCode::span(&u.mul(g)?))
}

/// Deletes coordinate `coord`. Fails if two codewords would merge.
pub fn puncture(c: &LinearCode, coord: usize) -> Result<LinearCode> {
    check_coord(c, coord)?;
    if c.n() < 2 {
        return Err(Error::InvalidParameters(
            "cannot puncture a length-1 code".into(),
        ));
    }
    let g = c.generator().remove_column(coord)?;
    let rank = g.rank();
    if rank != c.k() {
        return Err(Error::RankDeficient {
            rank,
            expected: c.k(),
        });
    }
    Ok(LinearCode::span(&g))
}

/// Keeps codewords with a zero in `coord`, then deletes that coordinate.
pub fn shorten(c: &LinearCode, coord: usize) -> Result<LinearCode> {
    let sub = zero_subcode(c, coord)?;
    if c.n() < 2 {
        return Err(Error::InvalidParameters(
            "cannot shorten a length-1 code".into(),
        ));
    }
    Ok(LinearCode::span(&sub.generator().remove_column(coord)?))
}

/// `(C', C'')`: the subcode of `RM(r, m)` vanishing at `coord`, and that
/// subcode punctured at `coord`.
pub fn rm_zero_subcode(r: usize, m: usize, coord: usize) -> Result<(LinearCode, LinearCode)> {
    if r == 0 || m == 0 {
        return Err(Error::InvalidParameters(
            "zero subcode needs 1 <= r <= m".into(),
        ));
    }
    let rm = reed_muller(r, m)?;
    let sub = zero_subcode(&rm, coord)?;
    let punct = puncture(&sub, coord)?;
    Ok((sub, punct))
}

/// Binary `[n, n-2]` (even `n`) or `[n, n-3]` (odd `n`) code whose entropy
/// distance is exactly `ef(2, n, 2)`: an identity block, an all-one parity
/// column, and zero columns.
pub fn thm6_witness(n: usize) -> Result<LinearCode> {
    if n < 4 {
        return Err(Error::InvalidParameters("witness needs n >= 4".into()));
    }
    let f = Field::prime(2)?;
    let k = if n.is_multiple_of(2) { n - 2 } else { n - 3 };
    let rows: Vec<Vec<u32>> = (0..k)
        .map(|i| (0..n).map(|j| (j == i || j == k) as u32).collect())
        .collect();
    LinearCode::from_generator(&Matrix::from_rows(&f, &rows)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wd(counts: &[u64]) -> Vec<BigUint> {
        counts.iter().map(|&c| BigUint::from(c)).collect()
    }

    #[test]
    fn from_generator_examples() {
        let f2 = Field::prime(2).unwrap();
        let ones = Matrix::from_rows(&f2, &[[1u32; 5]]).unwrap();
        assert_eq!(
            code_from_generator(&ones).unwrap(),
            repetition(2, 5).unwrap()
        );
        let deficient = Matrix::from_rows(
            &f2,
            &[
                [1u32, 1, 0, 0, 1, 0, 1],
                [0, 1, 1, 0, 0, 1, 1],
                [1, 0, 1, 0, 1, 1, 0],
            ],
        )
        .unwrap();
        assert_eq!(code_from_generator(&deficient).unwrap().k(), 2);
        assert_eq!(
            code_from_generator(&Matrix::identity(&f2, 4)).unwrap().k(),
            4
        );
        assert_eq!(
            code_from_generator(&Matrix::zeros(&f2, 2, 3)),
            Err(Error::TrivialCode)
        );
    }

    #[test]
    fn dual_examples() {
        for n in 2..8 {
            assert_eq!(repetition(2, n).unwrap().dual(), spc(2, n).unwrap());
        }
        let s = simplex(3, 2).unwrap();
        assert_eq!(s.dual().dual(), s);
        assert_eq!(simplex(2, 3).unwrap().dual(), hamming(2, 3).unwrap());
        let full = code_from_generator(&Matrix::identity(&Field::prime(2).unwrap(), 3)).unwrap();
        assert_eq!(full.dual().k(), 0);
        assert_eq!(full.dual().dual(), full);
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(
            weight_distribution_bruteforce(&repetition(3, 4).unwrap())
                .unwrap()
                .counts(),
            wd(&[1, 0, 0, 0, 2])
        );
        assert_eq!(
            weight_distribution_bruteforce(&spc(2, 4).unwrap())
                .unwrap()
                .counts(),
            wd(&[1, 0, 6, 0, 1])
        );
        let full =
            code_from_generator(&Matrix::identity(&Field::with_order(4).unwrap(), 5)).unwrap();
        assert_eq!(
            weight_distribution_bruteforce(&full).unwrap(),
            full_space_distribution(4, 5)
        );
    }

    #[test]
    fn macwilliams_examples() {
        let rep = WeightDistribution::from_u64(2, &[1, 0, 0, 1]).unwrap();
        let out = macwilliams_transform(&rep, &BigUint::from(2u32)).unwrap();
        assert_eq!(out.counts(), wd(&[1, 0, 3, 0]));
        assert_eq!(
            macwilliams_transform(&out, &BigUint::from(4u32)).unwrap(),
            rep
        );

        let s = weight_distribution_bruteforce(&simplex(2, 3).unwrap()).unwrap();
        let h = macwilliams_transform(&s, &BigUint::from(8u32)).unwrap();
        assert!(h.get(1).is_zero() && h.get(2).is_zero() && !h.get(3).is_zero());
        assert_eq!(h.get(7), &BigUint::one());

        let bogus = WeightDistribution::from_u64(2, &[1, 1, 0, 0]).unwrap();
        assert!(matches!(
            macwilliams_transform(&bogus, &BigUint::from(3u32)),
            Err(Error::NonIntegral { .. })
        ));
    }

    #[test]
    fn dispatcher_examples() {
        let f2 = Field::prime(2).unwrap();
        // [20, 15] code: 2^15 words directly, 2^5 through the dual
        let rows: Vec<Vec<u32>> = (0..15)
            .map(|i| {
                (0..20)
                    .map(|j| {
                        if j < 15 {
                            (i == j) as u32
                        } else {
                            ((i + j) % 3 == 0) as u32
                        }
                    })
                    .collect()
            })
            .collect();
        let c = code_from_generator(&Matrix::from_rows(&f2, &rows).unwrap()).unwrap();
        let via_dual = weight_distribution_with_budget(&c, 32).unwrap();
        assert_eq!(via_dual, weight_distribution_bruteforce(&c).unwrap());
        assert!(matches!(
            weight_distribution_bruteforce_with_budget(&c, 32),
            Err(Error::BudgetExceeded { .. })
        ));
        assert_eq!(
            weight_distribution(&simplex(2, 3).unwrap())
                .unwrap()
                .counts(),
            wd(&[1, 0, 0, 0, 7, 0, 0, 0])
        );
    }

    #[test]
    fn distances_of_examples() {
        assert_eq!(
            entropy_distance_of_code(&simplex(2, 3).unwrap())
                .unwrap()
                .surface(),
            &BigUint::from(35u32)
        );
        assert!(entropy_distance_of_code(&hamming(2, 3).unwrap())
            .unwrap()
            .is_zero());
        assert_eq!(
            entropy_distance_of_code(&spc(2, 5).unwrap())
                .unwrap()
                .surface(),
            &BigUint::from(5u32)
        );
        assert_eq!(
            hamming_distance_of_code(&hamming(3, 2).unwrap()).unwrap(),
            3
        );
        assert_eq!(
            entropy_distance_of_code(&LinearCode::zero(&Field::prime(2).unwrap(), 3)),
            Err(Error::TrivialCode)
        );
    }

    #[test]
    fn simplex_matrix_is_canonical() {
        let g = simplex_generator(2, 3).unwrap();
        assert_eq!(g.row(0), &[1, 0, 1, 0, 1, 0, 1]);
        assert_eq!(g.row(1), &[0, 1, 1, 0, 0, 1, 1]);
        assert_eq!(g.row(2), &[0, 0, 0, 1, 1, 1, 1]);
        let g = simplex_generator(3, 2).unwrap();
        assert_eq!(g.row(0), &[1, 0, 1, 1]);
        assert_eq!(g.row(1), &[0, 1, 1, 2]);
    }

    #[test]
    fn reed_muller_examples() {
        for m in 0..5 {
            assert_eq!(reed_muller(0, m).unwrap(), repetition(2, 1 << m).unwrap());
        }
        assert_eq!(reed_muller(1, 3).unwrap().k(), 4);
        assert_eq!(reed_muller(2, 4).unwrap().k(), 11);
        assert_eq!(
            hamming_distance_of_code(&reed_muller(1, 4).unwrap()).unwrap(),
            8
        );
        // RM(m-2, m) is the extended Hamming code
        assert!(entropy_distance_of_code(&reed_muller(2, 4).unwrap())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn rm_zero_subcode_examples() {
        for m in 2..=5 {
            for r in 1..m {
                for coord in [0, (1 << m) - 1, 3] {
                    let (sub, punct) = rm_zero_subcode(r, m, coord).unwrap();
                    let n = 1u64 << m;
                    let d = 1u64 << (m - r);
                    let k: u64 = (1..=r)
                        .map(|i| {
                            binomial(m as u64, i as u64)
                                .iter_u64_digits()
                                .next()
                                .unwrap_or(0)
                        })
                        .sum();
                    assert_eq!(sub.k() as u64, k);
                    assert_eq!(
                        entropy_distance_of_code(&sub).unwrap().surface(),
                        &binomial(n, d)
                    );
                    assert_eq!(
                        entropy_distance_of_code(&punct).unwrap().surface(),
                        &binomial(n - 1, d - 1)
                    );
                }
            }
        }
        // r = 1 gives the simplex code
        let (_, punct) = rm_zero_subcode(1, 3, 0).unwrap();
        assert_eq!(
            weight_distribution(&punct).unwrap(),
            weight_distribution(&simplex(2, 3).unwrap()).unwrap()
        );
    }

    #[test]
    fn puncture_and_shorten() {
        let c = simplex(2, 3).unwrap();
        let p = puncture(&c, 6).unwrap();
        assert_eq!((p.n(), p.k()), (6, 3));
        let s = shorten(&c, 6).unwrap();
        assert_eq!((s.n(), s.k()), (6, 2));
        assert!(puncture(&repetition(2, 2).unwrap().dual(), 0).is_ok());
        let spc3 = spc(2, 3).unwrap();
        assert!(matches!(
            puncture(&puncture(&spc3, 0).unwrap(), 0),
            Err(Error::RankDeficient {
                rank: 1,
                expected: 2
            })
        ));
        assert!(puncture(&c, 7).is_err());
    }

    #[test]
    fn thm6_witness_examples() {
        let c = thm6_witness(6).unwrap();
        assert_eq!((c.n(), c.k()), (6, 4));
        assert_eq!(
            entropy_distance_of_code(&c).unwrap().surface(),
            &BigUint::from(15u32)
        );
        let c = thm6_witness(7).unwrap();
        assert_eq!((c.n(), c.k()), (7, 4));
        assert_eq!(
            entropy_distance_of_code(&c).unwrap().surface(),
            &BigUint::from(21u32)
        );
        let c = thm6_witness(5).unwrap();
        assert_eq!((c.n(), c.k()), (5, 2));
        assert_eq!(
            entropy_distance_of_code(&c).unwrap().surface(),
            &BigUint::from(10u32)
        );
        assert!(thm6_witness(3).is_err());
    }

    #[test]
    fn enumerator_display() {
        let w = weight_distribution(&repetition(3, 4).unwrap()).unwrap();
        assert_eq!(w.enumerator().to_string(), "2x^4 + y^4");
    }

    #[test]
    fn serde_counts_are_strings() {
        let w = weight_distribution(&spc(2, 4).unwrap()).unwrap();
        let j = serde_json::to_value(&w).unwrap();
        assert_eq!(j["counts"], serde_json::json!(["1", "0", "6", "0", "1"]));
        let back: WeightDistribution = serde_json::from_value(j).unwrap();
        assert_eq!(back, w);
    }
}
