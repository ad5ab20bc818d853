//! Exact roots of unity `e(a/d) = exp(2πi·a/d)` stored as reduced fractions in `[0, 1)`,
//! together with the Galois action of `(ℤ/dℤ)^×` on them.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A root of unity `e(a/d)` with `0 <= a < d` and `gcd(a, d) = 1`.
///
/// Equality is structural because the fraction is always reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    num: u64,
    den: u64,
}

impl RootOfUnity {
    pub const ONE: RootOfUnity = RootOfUnity { num: 0, den: 1 };

    /// Reduces `a/d` modulo 1. Rejects `d = 0`.
    pub fn new(a: i64, d: u64) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroDenominator);
        }
        let r = (a as i128).rem_euclid(d as i128) as u64;
        Ok(Self::from_reduced_residue(r, d))
    }

    /// `r/d` with `0 <= r < d` already known; only the gcd reduction is applied.
    pub(crate) fn from_reduced_residue(r: u64, d: u64) -> Self {
        debug_assert!(r < d);
        let g = r.gcd(&d);
        RootOfUnity { num: r / g, den: d / g }
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    /// Multiplicative order of `e(a/d)`; equal to the reduced denominator.
    pub fn order(&self) -> u64 {
        self.den
    }

    pub fn is_one(&self) -> bool {
        self.num == 0
    }

    /// `σ_k(e(a/d)) = e(k·a/d)` for `k` coprime to the order.
    pub fn galois_apply(&self, k: i64) -> Result<Self> {
        let d = self.den;
        let k_mod = (k as i128).rem_euclid(d as i128) as u64;
        if d > 1 && k_mod.gcd(&d) != 1 {
            return Err(Error::NotAUnit { k, modulus: d });
        }
        Ok(self.scale(k_mod))
    }

    /// `e(k·a/d)` for arbitrary `k` (no coprimality requirement); this is the `k`-th power.
    pub fn pow(&self, k: i64) -> Self {
        let k_mod = (k as i128).rem_euclid(self.den as i128) as u64;
        self.scale(k_mod)
    }

    fn scale(&self, k_mod: u64) -> Self {
        let r = ((k_mod as u128 * self.num as u128) % self.den as u128) as u64;
        Self::from_reduced_residue(r, self.den)
    }

    /// Complex conjugate `e(-a/d)`.
    pub fn conjugate(&self) -> Self {
        if self.num == 0 {
            *self
        } else {
            RootOfUnity { num: self.den - self.num, den: self.den }
        }
    }

    /// Product `e(x)·e(y) = e(x + y)`.
    pub fn mul(&self, other: &Self) -> Self {
        let l = self.den.lcm(&other.den);
        let r = (self.num as u128 * (l / self.den) as u128 + other.num as u128 * (l / other.den) as u128) % l as u128;
        Self::from_reduced_residue(r as u64, l)
    }

    /// The fractional part `a/d` as an exact rational.
    pub fn fraction(&self) -> BigRational {
        BigRational::new(BigInt::from(self.num), BigInt::from(self.den))
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// The complex number `exp(2πi·a/d)`.
    pub fn to_complex(&self) -> Complex64 {
        // Reduce to (-1/2, 1/2] so the angle handed to sin/cos stays small.
        let (num, den) = (self.num as f64, self.den as f64);
        let centered = if 2 * self.num > self.den { (num - den) / den } else { num / den };
        let theta = std::f64::consts::TAU * centered;
        Complex64::new(theta.cos(), theta.sin())
    }
}

impl Default for RootOfUnity {
    fn default() -> Self {
        Self::ONE
    }
}

impl Ord for RootOfUnity {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128)
            .cmp(&(other.num as u128 * self.den as u128))
            .then(self.den.cmp(&other.den))
    }
}

impl PartialOrd for RootOfUnity {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for RootOfUnity {
    type Err = Error;

    /// Accepts `"a/d"` or a bare integer; the value is reduced modulo 1.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::BadFraction(s.to_string());
        match t.split_once('/') {
            Some((a, d)) => {
                let a: i64 = a.trim().parse().map_err(|_| bad())?;
                let d: u64 = d.trim().parse().map_err(|_| bad())?;
                RootOfUnity::new(a, d)
            }
            None => {
                let a: i64 = t.parse().map_err(|_| bad())?;
                RootOfUnity::new(a, 1)
            }
        }
    }
}

impl Serialize for RootOfUnity {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RootOfUnity {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Normalizes `a/d` to a reduced root of unity in `[0, 1)`.
pub fn normalize(a: i64, d: u64) -> Result<RootOfUnity> {
    RootOfUnity::new(a, d)
}

/// Euler's totient.
pub fn euler_phi(d: u64) -> u64 {
    let mut n = d;
    let mut result = d;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Residues `0 < u < d` coprime to `d`, ascending.
pub fn units_mod(d: u64) -> Vec<u64> {
    if d == 1 {
        return vec![0];
    }
    (1..d).filter(|u| u.gcd(&d) == 1).collect()
}

/// One conjugation class `{u, d - u}` of units modulo `d`; `lo <= hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UnitPair {
    pub lo: u64,
    pub hi: u64,
}

impl UnitPair {
    pub fn is_self_paired(&self) -> bool {
        self.lo == self.hi
    }
}

/// The units modulo `d` partitioned by complex conjugation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitClasses {
    pub modulus: u64,
    pub units: Vec<u64>,
    pub pairs: Vec<UnitPair>,
}

pub fn unit_classes(d: u64) -> Result<UnitClasses> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("unit classes need modulus >= 2, got {d}")));
    }
    let units = units_mod(d);
    let pairs = units.iter().filter(|&&u| 2 * u <= d).map(|&u| UnitPair { lo: u, hi: d - u }).collect();
    Ok(UnitClasses { modulus: d, units, pairs })
}
