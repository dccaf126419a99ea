//! Finite fields GF(p^r) with q = p^r <= 2^16, and dense linear algebra over them.
//!
//! An element is stored as its integer code in `[0, q)`: the polynomial
//! `a_0 + a_1 x + ... + a_{r-1} x^{r-1}` is encoded as `sum a_j p^j`, so the
//! least significant base-p digit is the constant coefficient. For prime
//! fields the code is simply the residue.
//!
//! Multiplication always goes through log/antilog tables; addition is XOR in
//! characteristic two and a table or digit-wise sum otherwise.

mod matrix;
mod text;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use matrix::{Matrix, Rref, Vector};
pub use text::{format_matrix, parse_matrix};

/// Integer code of a field element.
pub type Elem = u16;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

/// Largest odd-characteristic order for which a full addition table is kept.
const ADD_TABLE_MAX: u32 = 256;

/// Built-in reduction polynomials, coefficients `c_0 .. c_r` (monic).
///
/// These are fixed so that element codes are stable across builds and in the
/// matrix file format. Most are the Conway polynomials.
const BUILTIN_POLYS: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 0, 0, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (2, 9, &[1, 0, 0, 0, 1, 0, 0, 0, 0, 1]),
    (2, 10, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1]),
    (2, 11, &[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 12, &[1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1]),
    (2, 13, &[1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 14, &[1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1]),
    (2, 15, &[1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 16, &[1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (3, 6, &[2, 2, 1, 0, 2, 0, 1]),
    (3, 7, &[1, 0, 2, 0, 0, 0, 0, 1]),
    (3, 8, &[2, 2, 2, 0, 1, 2, 0, 0, 1]),
    (3, 9, &[1, 1, 2, 2, 0, 0, 0, 0, 0, 1]),
    (3, 10, &[2, 1, 0, 0, 2, 2, 2, 0, 0, 0, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (5, 4, &[2, 4, 4, 0, 1]),
    (5, 5, &[3, 4, 0, 0, 0, 1]),
    (5, 6, &[2, 0, 1, 4, 1, 0, 1]),
    (7, 2, &[3, 6, 1]),
    (7, 3, &[4, 0, 6, 1]),
    (7, 4, &[3, 4, 5, 0, 1]),
    (7, 5, &[4, 1, 0, 0, 0, 1]),
    (11, 2, &[2, 7, 1]),
    (11, 3, &[9, 2, 0, 1]),
    (11, 4, &[2, 10, 8, 0, 1]),
    (13, 2, &[2, 12, 1]),
    (13, 3, &[11, 2, 0, 1]),
    (13, 4, &[2, 12, 3, 0, 1]),
];

/// Built-in reduction polynomial for GF(p^r), if the table has one.
pub fn builtin_poly(p: u32, r: u32) -> Option<&'static [u32]> {
    BUILTIN_POLYS
        .iter()
        .find(|(bp, br, _)| *bp == p && *br == r)
        .map(|(_, _, c)| *c)
}

/// Trial-division primality test.
pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A finite field GF(p^r). Cheap to clone; all tables are shared.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Tables>,
}

struct Tables {
    p: u32,
    r: u32,
    q: u32,
    poly: Option<Vec<u32>>,
    /// exp[i] = g^i for i in 0..2(q-1), doubled to skip a reduction.
    exp: Vec<Elem>,
    /// log[a] for a != 0; log[0] is unused.
    log: Vec<u32>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
    add: Option<Vec<Elem>>,
}

impl Field {
    /// Builds GF(p^r). For `r > 1` the reduction polynomial is taken from
    /// `poly` (coefficients `c_0..c_r`, monic) or from the built-in table.
    pub fn new(p: u32, r: u32, poly: Option<&[u32]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if r == 0 {
            return Err(Error::InvalidParameters(
                "extension degree must be at least 1".into(),
            ));
        }
        let q = (p as u64).checked_pow(r).filter(|&q| q <= MAX_ORDER);
        let q = match q {
            Some(q) => q as u32,
            None => return Err(Error::FieldTooLarge((p as u64).saturating_pow(r))),
        };

        let poly = if r == 1 {
            if poly.is_some() {
                return Err(Error::InvalidParameters(
                    "prime fields take no reduction polynomial".into(),
                ));
            }
            None
        } else {
            let coeffs = match poly {
                Some(c) => c.to_vec(),
                None => builtin_poly(p, r)
                    .ok_or(Error::UnsupportedField { p, r })?
                    .to_vec(),
            };
            let ok = coeffs.len() == r as usize + 1
                && coeffs.iter().all(|&c| c < p)
                && coeffs[r as usize] == 1
                && poly_is_irreducible(p, &coeffs);
            if !ok {
                return Err(Error::ReduciblePolynomial {
                    p,
                    degree: r,
                    poly: coeffs,
                });
            }
            Some(coeffs)
        };

        Ok(Field {
            inner: Arc::new(Tables::build(p, r, q, poly)),
        })
    }

    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Self> {
        Field::new(p, 1, None)
    }

    /// GF(q) for a prime power q, using the built-in polynomial table.
    pub fn with_order(q: u32) -> Result<Self> {
        let (p, r) = prime_power(q)
            .ok_or_else(|| Error::InvalidParameters(format!("{q} is not a prime power")))?;
        Field::new(p, r, None)
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.inner.r
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.inner.q
    }

    /// Reduction polynomial `c_0..c_r`, absent for prime fields.
    pub fn poly(&self) -> Option<&[u32]> {
        self.inner.poly.as_deref()
    }

    pub fn is_prime_field(&self) -> bool {
        self.inner.r == 1
    }

    /// Checks that `a` is a valid element code.
    pub fn element(&self, a: u32) -> Result<Elem> {
        if a < self.inner.q {
            Ok(a as Elem)
        } else {
            Err(Error::InvalidElement {
                value: a,
                q: self.inner.q,
            })
        }
    }

    /// All elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.inner.q).map(|a| a as Elem)
    }

    /// Nonzero elements in code order.
    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> {
        (1..self.inner.q).map(|a| a as Elem)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let t = &*self.inner;
        if t.p == 2 {
            a ^ b
        } else if let Some(add) = &t.add {
            add[a as usize * t.q as usize + b as usize]
        } else if t.r == 1 {
            ((a as u32 + b as u32) % t.p) as Elem
        } else {
            digitwise(t.p, a, b, |x, y| (x + y) % t.p)
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.inner.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = &*self.inner;
        t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.inner.inv[a as usize])
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let t = &*self.inner;
        let m = (t.q - 1) as u64;
        let l = (t.log[a as usize] as u64 * (e % m)) % m;
        t.exp[l as usize]
    }

    /// A fixed primitive element (generator of the multiplicative group).
    pub fn primitive_element(&self) -> Elem {
        self.inner.exp[1.min(self.inner.exp.len() - 1)]
    }

    /// Whether two handles describe the same field (same p, r and polynomial).
    pub fn same_as(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.r == other.inner.r
                && self.inner.poly == other.inner.poly)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.poly() {
            None => write!(f, "GF({})", self.order()),
            Some(c) => write!(f, "GF({}^{}; poly={:?})", self.inner.p, self.inner.r, c),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.order())
    }
}

/// Splits q into (p, r) with q = p^r, p prime.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let mut r = 0;
    let mut m = q;
    while m.is_multiple_of(p) {
        m /= p;
        r += 1;
    }
    (m == 1).then_some((p, r))
}

impl Tables {
    fn build(p: u32, r: u32, q: u32, poly: Option<Vec<u32>>) -> Tables {
        let slow_mul = |a: u32, b: u32| -> u32 {
            match &poly {
                None => ((a as u64 * b as u64) % p as u64) as u32,
                Some(c) => poly_mul_mod(p, c, a, b),
            }
        };

        // Smallest element whose powers exhaust the multiplicative group.
        let order = q - 1;
        let mut exp = vec![0 as Elem; 2 * order as usize];
        let mut log = vec![0u32; q as usize];
        'search: for g in 1..q {
            let mut x = 1u32;
            for i in 0..order {
                if i > 0 && x == 1 {
                    continue 'search;
                }
                exp[i as usize] = x as Elem;
                x = slow_mul(x, g);
            }
            if x == 1 {
                break;
            }
        }
        for i in 0..order as usize {
            log[exp[i] as usize] = i as u32;
            exp[i + order as usize] = exp[i];
        }

        let mut inv = vec![0 as Elem; q as usize];
        for a in 1..q as usize {
            inv[a] = exp[((order - log[a]) % order) as usize];
        }

        let neg: Vec<Elem> = (0..q)
            .map(|a| {
                if p == 2 {
                    a as Elem
                } else {
                    digitwise(p, 0, a as Elem, |x, y| (p + x - y) % p)
                }
            })
            .collect();

        let add = (p != 2 && q <= ADD_TABLE_MAX).then(|| {
            let mut t = vec![0 as Elem; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] =
                        digitwise(p, a as Elem, b as Elem, |x, y| (x + y) % p);
                }
            }
            t
        });

        Tables {
            p,
            r,
            q,
            poly,
            exp,
            log,
            neg,
            inv,
            add,
        }
    }
}

fn digitwise(p: u32, a: Elem, b: Elem, op: impl Fn(u32, u32) -> u32) -> Elem {
    let (mut a, mut b) = (a as u32, b as u32);
    let mut out = 0u32;
    let mut scale = 1u32;
    while a > 0 || b > 0 {
        out += op(a % p, b % p) * scale;
        a /= p;
        b /= p;
        scale *= p;
    }
    out as Elem
}

fn to_digits(p: u32, mut a: u32, len: usize) -> Vec<u32> {
    let mut d = vec![0; len];
    for slot in d.iter_mut() {
        *slot = a % p;
        a /= p;
    }
    d
}

fn from_digits(p: u32, d: &[u32]) -> u32 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

/// Multiplies two element codes as polynomials modulo the monic `poly`.
fn poly_mul_mod(p: u32, poly: &[u32], a: u32, b: u32) -> u32 {
    let r = poly.len() - 1;
    let da = to_digits(p, a, r);
    let db = to_digits(p, b, r);
    let mut prod = vec![0u32; 2 * r];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem_monic(p, &mut prod, poly);
    from_digits(p, &prod[..r])
}

/// Reduces `a` in place modulo the monic polynomial `m`.
fn poly_rem_monic(p: u32, a: &mut [u32], m: &[u32]) {
    let dm = m.len() - 1;
    for top in (dm..a.len()).rev() {
        let c = a[top];
        if c == 0 {
            continue;
        }
        for (j, &mj) in m.iter().enumerate() {
            let idx = top - dm + j;
            a[idx] = (a[idx] + (p - c) * mj) % p;
        }
    }
}

/// Irreducibility by exhausting monic candidate factors of degree <= r/2.
fn poly_is_irreducible(p: u32, poly: &[u32]) -> bool {
    let r = poly.len() - 1;
    if r == 0 {
        return false;
    }
    if r == 1 {
        return true;
    }
    for d in 1..=r / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut factor = to_digits(p, low as u32, d);
            factor.push(1);
            let mut rem = poly.to_vec();
            poly_rem_monic(p, &mut rem, &factor);
            if rem[..d].iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}
