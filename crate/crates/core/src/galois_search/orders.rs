//! Minimal half-orbit sums, the order scan and the same-order age screen.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ConformanceReport;
use crate::error::{Error, Result};
use crate::published;
use crate::rational::Rational;
use crate::roots_of_unity::{euler_phi, unit_classes, RootOfUnity};

/// The cheapest way to pick one of `e(u/d)`, `e(-u/d)` for every unit `u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfOrbitSum {
    pub modulus: u64,
    pub sum: Rational,
    /// The chosen residues `min(u, d - u)`, ascending.
    pub representatives: Vec<u64>,
}

impl HalfOrbitSum {
    pub fn is_below_one(&self) -> bool {
        *self.sum < BigRational::one()
    }
}

pub fn min_halforbit_sum(d: u64) -> Result<HalfOrbitSum> {
    let classes = unit_classes(d)?;
    let representatives: Vec<u64> = classes.pairs.iter().map(|p| p.lo).collect();
    let total: u64 = representatives.iter().sum();
    Ok(HalfOrbitSum {
        modulus: d,
        sum: Rational(BigRational::new(BigInt::from(total), BigInt::from(d))),
        representatives,
    })
}

/// Numerator of the minimal half-orbit sum over `d`; cheap form used inside searches.
pub(crate) fn halforbit_numerator(d: u64) -> u64 {
    if d < 2 {
        return 0;
    }
    (1..=d / 2).filter(|u| num_integer::gcd(*u, d) == 1).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1Row {
    pub n: u64,
    pub half_phi: u64,
    pub values: Vec<RootOfUnity>,
    pub mean: Rational,
}

pub fn table1_row(n: u64) -> Result<Table1Row> {
    let h = min_halforbit_sum(n)?;
    let values: Vec<RootOfUnity> =
        h.representatives.iter().map(|&u| RootOfUnity::new(u as i64, n)).collect::<Result<_>>()?;
    let half_phi = values.len() as u64;
    let mean = Rational(h.sum.0.clone() / BigRational::from_integer(BigInt::from(half_phi)));
    Ok(Table1Row { n, half_phi, values, mean })
}

/// One row per order in the published table.
pub fn table1() -> Vec<Table1Row> {
    published::TABLE1_ORDERS.iter().map(|&n| table1_row(n).expect("n >= 2")).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrdersScan {
    pub bound: u64,
    pub orders: Vec<u64>,
    pub conformance: ConformanceReport<u64, HalfOrbitSum>,
}

/// All `d <= d_max` whose minimal half-orbit sum is below one.
pub fn feasible_orders(d_max: u64) -> Result<OrdersScan> {
    if d_max < 2 {
        return Err(Error::InvalidArgument(format!("order bound must be >= 2, got {d_max}")));
    }
    let orders: Vec<u64> = (2..=d_max).into_par_iter().filter(|&d| halforbit_numerator(d) < d).collect();
    let expected: Vec<u64> = published::POSSIBLE_ORDERS.iter().copied().filter(|&d| d <= d_max).collect();
    let evidence = |d: &u64| min_halforbit_sum(*d).expect("d >= 2");
    let conformance = ConformanceReport::build(expected, orders.clone(), evidence, evidence);
    Ok(OrdersScan { bound: d_max, orders, conformance })
}

/// Minimal age of `dim` primitive `n`-th roots of unity assembled from Galois blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SameOrderAge {
    pub n: u64,
    pub dim: u64,
    /// `None` when `dim` is not a sum of block sizes.
    pub min_age: Option<Rational>,
    pub half_blocks: u64,
    pub full_blocks: u64,
}

impl SameOrderAge {
    pub fn is_exceptional(&self) -> bool {
        self.min_age.as_ref().is_some_and(|a| **a > BigRational::zero() && **a < BigRational::one())
    }
}

/// A half-orbit block has one eigenvalue per conjugate pair of primitive `n`-th roots and
/// contributes the minimal half-orbit sum; a full-orbit block has all `φ(n)` roots and
/// contributes `φ(n)/2`.
pub fn min_age_same_order(n: u64, dim: u64) -> Result<SameOrderAge> {
    if n < 2 || dim < 1 {
        return Err(Error::InvalidArgument(format!("need n >= 2 and dim >= 1, got ({n}, {dim})")));
    }
    let h = min_halforbit_sum(n)?;
    let half_size = h.representatives.len() as u64;
    let full_size = euler_phi(n);
    let full_age = BigRational::new(BigInt::from(full_size), BigInt::from(2));
    let mut best: Option<(BigRational, u64, u64)> = None;
    let mut full = 0;
    while full * full_size <= dim {
        let rest = dim - full * full_size;
        if rest.is_multiple_of(half_size) {
            let half = rest / half_size;
            let age = h.sum.0.clone() * BigInt::from(half) + full_age.clone() * BigInt::from(full);
            if best.as_ref().is_none_or(|(b, _, _)| age < *b) {
                best = Some((age, half, full));
            }
        }
        full += 1;
    }
    Ok(match best {
        Some((age, half_blocks, full_blocks)) => {
            SameOrderAge { n, dim, min_age: Some(Rational(age)), half_blocks, full_blocks }
        }
        None => SameOrderAge { n, dim, min_age: None, half_blocks: 0, full_blocks: 0 },
    })
}
