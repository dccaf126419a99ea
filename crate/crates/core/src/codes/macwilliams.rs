use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::WeightDistribution;
use crate::error::{Error, Result};

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Weight distribution of the dual: `W(x, y) -> W(y - x, y + (q-1)x) / |C|`,
/// expanded exactly with `y = 1`.
pub fn macwilliams_transform(
    wd: &WeightDistribution,
    code_size: &BigUint,
) -> Result<WeightDistribution> {
    let (q, n) = (wd.q(), wd.n());
    if code_size.is_zero() {
        return Err(Error::InvalidParameters(
            "code size must be positive".into(),
        ));
    }
    let one_minus_x = [BigInt::one(), -BigInt::one()];
    let one_plus = [BigInt::one(), BigInt::from(q - 1)];
    // (1 - x)^i and (1 + (q-1)x)^(n-i) for all i
    let mut minus_pows = vec![vec![BigInt::one()]];
    let mut plus_pows = vec![vec![BigInt::one()]];
    for _ in 0..n {
        minus_pows.push(poly_mul(minus_pows.last().unwrap(), &one_minus_x));
        plus_pows.push(poly_mul(plus_pows.last().unwrap(), &one_plus));
    }

    let mut acc = vec![BigInt::zero(); n + 1];
    for (i, a) in wd.counts().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let a = BigInt::from_biguint(Sign::Plus, a.clone());
        let term = poly_mul(&minus_pows[i], &plus_pows[n - i]);
        for (j, t) in term.iter().enumerate() {
            acc[j] += &a * t;
        }
    }
    let size = BigInt::from_biguint(Sign::Plus, code_size.clone());
    let counts = acc
        .into_iter()
        .enumerate()
        .map(|(j, v)| {
            let (quot, rem) = v.div_rem(&size);
            if !rem.is_zero() || quot.sign() == Sign::Minus {
                return Err(Error::NonIntegral { weight: j });
            }
            Ok(quot.to_biguint().expect("non-negative"))
        })
        .collect::<Result<Vec<_>>>()?;
    WeightDistribution::new(q, counts)
}
