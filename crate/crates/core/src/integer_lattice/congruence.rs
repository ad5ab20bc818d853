use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::forms::snf;
use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// Reduces every coordinate into `[0, 1)`.
pub fn reduce_mod_one(v: &[BigRational]) -> Vec<BigRational> {
    v.iter().map(|x| x - x.floor()).collect()
}

/// Finds `x ∈ ℝⁿ/ℤⁿ` with `M·x + t ≡ x`, i.e. `(M - I)·x ≡ -t (mod ℤⁿ)`.
///
/// With `U·(M - I)·V = D`, substitute `y = V⁻¹x`: the system becomes `dᵢ·yᵢ ≡ -(U t)ᵢ`. Rows
/// with `dᵢ ≠ 0` are always solvable over ℝ; rows with `dᵢ = 0` need `(U t)ᵢ ∈ ℤ`.
pub fn solve_torus_congruence(m: &IntMatrix, t: &[BigRational]) -> Result<Option<Vec<BigRational>>> {
    let n = m.require_square()?;
    if t.len() != n {
        return Err(Error::DimensionMismatch(format!("translation of length {} in rank {n}", t.len())));
    }
    let a = m.minus_identity()?;
    let dec = snf(&a);
    let ut = dec.u.apply_rational(t)?;
    let mut y = vec![BigRational::zero(); n];
    for i in 0..n {
        let d = &dec.d[(i, i)];
        if d.is_zero() {
            if !ut[i].is_integer() {
                return Ok(None);
            }
        } else {
            y[i] = -ut[i].clone() / BigRational::from_integer(d.clone());
        }
    }
    let x = dec.v.apply_rational(&y)?;
    Ok(Some(reduce_mod_one(&x)))
}

/// Checks `M·x + t ≡ x (mod ℤⁿ)`.
pub fn is_fixed_point(m: &IntMatrix, t: &[BigRational], x: &[BigRational]) -> Result<bool> {
    let mx = m.apply_rational(x)?;
    Ok(mx.iter().zip(t).zip(x).all(|((a, b), c)| (a + b - c).is_integer()))
}

/// Common denominator of a rational vector.
pub fn common_denominator(v: &[BigRational]) -> BigInt {
    v.iter().fold(BigInt::from(1), |acc, x| num_integer::lcm(acc, x.denom().clone()))
}
