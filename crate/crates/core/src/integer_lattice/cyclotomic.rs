use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};
use crate::roots_of_unity::{euler_phi, RootOfUnity};
use crate::spectra::Spectrum;

/// Polynomial with integer coefficients, lowest degree first.
pub type IntPoly = Vec<BigInt>;

fn trim(p: &mut IntPoly) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// `det(xI - M)` by the Faddeev-LeVerrier recursion (all divisions are exact).
pub fn characteristic_polynomial(m: &IntMatrix) -> Result<IntPoly> {
    let n = m.require_square()?;
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut mk = IntMatrix::zeros(n, n);
    for k in 1..=n {
        // M_k = M·M_{k-1} + c_{n-k+1} I
        let mut next = m.mul(&mk)?;
        for i in 0..n {
            next[(i, i)] += &coeffs[n - k + 1];
        }
        mk = next;
        let amk = m.mul(&mk)?;
        let tr: BigInt = (0..n).map(|i| amk[(i, i)].clone()).sum();
        let (q, r) = (-tr).div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero());
        coeffs[n - k] = q;
    }
    Ok(coeffs)
}

/// Exact division of `a` by the monic polynomial `b`; `None` when the remainder is non-zero.
fn divide_monic(a: &IntPoly, b: &IntPoly) -> Option<IntPoly> {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return None;
    }
    let mut rem = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let c = rem[i + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    if rem.iter().all(Zero::is_zero) {
        trim(&mut q);
        Some(q)
    } else {
        None
    }
}

/// The `d`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(d: u64) -> IntPoly {
    let mut p = vec![BigInt::zero(); d as usize + 1];
    p[0] = -BigInt::one();
    p[d as usize] = BigInt::one();
    for e in 1..d {
        if d.is_multiple_of(e) {
            p = divide_monic(&p, &cyclotomic_polynomial(e)).expect("x^d - 1 is divisible by Φ_e");
        }
    }
    p
}

/// Orders `d` with `φ(d) <= n`: the only possible eigenvalue orders of a finite-order element
/// of `GL_n(ℤ)`.
pub fn crystallographic_orders(n: usize) -> Vec<u64> {
    // φ(d) >= sqrt(d/2), so d <= 2n²
    let bound = 2 * (n as u64).pow(2) + 2;
    (1..=bound).filter(|&d| euler_phi(d) <= n as u64).collect()
}

/// Least common multiple of the crystallographic orders; every finite order divides it.
pub fn crystallographic_bound(n: usize) -> u64 {
    crystallographic_orders(n).into_iter().fold(1, |acc, d| acc.lcm(&d))
}

/// Splits the characteristic polynomial into cyclotomic factors, returning `(d, multiplicity)`.
fn cyclotomic_factors(m: &IntMatrix) -> Result<Option<Vec<(u64, usize)>>> {
    let n = m.require_square()?;
    let mut p = characteristic_polynomial(m)?;
    let mut out = Vec::new();
    for d in crystallographic_orders(n) {
        let phi = cyclotomic_polynomial(d);
        let mut k = 0;
        while let Some(q) = divide_monic(&p, &phi) {
            p = q;
            k += 1;
        }
        if k > 0 {
            out.push((d, k));
        }
    }
    Ok(if p.len() == 1 { Some(out) } else { None })
}

/// The multiplicative order of `m`, or `None` when it is infinite.
///
/// The eigenvalue orders are read off the cyclotomic factorization; a matrix with such a
/// characteristic polynomial has finite order exactly when `M^L = I` for `L` their lcm.
pub fn matrix_order(m: &IntMatrix) -> Result<Option<u64>> {
    let Some(factors) = cyclotomic_factors(m)? else {
        return Ok(None);
    };
    let l = factors.iter().fold(1u64, |acc, (d, _)| acc.lcm(d));
    if !m.pow(l)?.is_identity() {
        return Ok(None);
    }
    // l is the lcm of the eigenvalue orders, hence already minimal
    Ok(Some(l))
}

/// Eigenvalues of a finite-order integer matrix: each factor `Φ_d` contributes every primitive
/// `d`-th root of unity.
pub fn cyclotomic_spectrum(m: &IntMatrix) -> Result<Spectrum> {
    if matrix_order(m)?.is_none() {
        return Err(Error::InfiniteOrder);
    }
    let factors = cyclotomic_factors(m)?.ok_or(Error::NotCyclotomic)?;
    let mut values = Vec::new();
    for (d, k) in factors {
        for a in 0..d {
            if a.gcd(&d) == 1 {
                let z = RootOfUnity::new(a as i64, d)?;
                values.extend(std::iter::repeat_n(z, k));
            }
        }
    }
    Spectrum::new(values)
}

/// Companion matrix of a monic polynomial (column convention: last column holds `-c_i`).
pub fn companion(p: &IntPoly) -> IntMatrix {
    let n = p.len() - 1;
    let mut c = IntMatrix::zeros(n, n);
    for i in 1..n {
        c[(i, i - 1)] = BigInt::one();
    }
    for i in 0..n {
        c[(i, n - 1)] = -p[i].clone();
    }
    c
}
