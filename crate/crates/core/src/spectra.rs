//! Eigenvalue multisets of finite-order linear maps.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::roots_of_unity::RootOfUnity;

/// The eigenvalues (with multiplicity) of one finite-order element, kept sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Spectrum {
    values: Vec<RootOfUnity>,
}

impl Spectrum {
    pub fn new(mut values: Vec<RootOfUnity>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyMultiset);
        }
        values.sort();
        Ok(Spectrum { values })
    }

    /// Convenience constructor from `(numerator, denominator)` pairs.
    pub fn from_fractions(fracs: &[(i64, u64)]) -> Result<Self> {
        let values = fracs.iter().map(|&(a, d)| RootOfUnity::new(a, d)).collect::<Result<Vec<_>>>()?;
        Spectrum::new(values)
    }

    /// The identity spectrum of the given dimension.
    pub fn identity(dim: usize) -> Result<Self> {
        Spectrum::new(vec![RootOfUnity::ONE; dim])
    }

    pub fn values(&self) -> &[RootOfUnity] {
        &self.values
    }

    pub fn dimension(&self) -> usize {
        self.values.len()
    }

    /// Entries different from 1.
    pub fn nontrivial(&self) -> impl Iterator<Item = &RootOfUnity> {
        self.values.iter().filter(|z| !z.is_one())
    }

    pub fn distinct_values(&self) -> BTreeSet<RootOfUnity> {
        self.values.iter().copied().collect()
    }

    /// Sum of the fractional parts of all eigenvalues.
    pub fn age(&self) -> BigRational {
        self.values.iter().fold(BigRational::zero(), |acc, z| acc + z.fraction())
    }

    /// `0 < age < 1`.
    pub fn is_exceptional(&self) -> bool {
        let age = self.age();
        age > BigRational::zero() && age < BigRational::one()
    }

    pub fn is_identity(&self) -> bool {
        self.values.iter().all(RootOfUnity::is_one)
    }

    /// Multiset `{k·r mod 1}`.
    pub fn power(&self, k: i64) -> Spectrum {
        let mut values: Vec<_> = self.values.iter().map(|z| z.pow(k)).collect();
        values.sort();
        Spectrum { values }
    }

    pub fn conjugate(&self) -> Spectrum {
        let mut values: Vec<_> = self.values.iter().map(RootOfUnity::conjugate).collect();
        values.sort();
        Spectrum { values }
    }

    /// Least common multiple of the entry orders.
    pub fn order(&self) -> u64 {
        self.values.iter().fold(1u64, |acc, z| num_integer::lcm(acc, z.order()))
    }

    /// Length of the shortest closed arc containing every eigenvalue, as an exact
    /// fraction of a full turn (`1 - largest gap`).
    pub fn arc_width_turns(&self) -> BigRational {
        let distinct: Vec<BigRational> = self.distinct_values().iter().map(RootOfUnity::fraction).collect();
        if distinct.len() <= 1 {
            return BigRational::zero();
        }
        let mut max_gap = BigRational::one() + &distinct[0] - distinct.last().unwrap();
        for w in distinct.windows(2) {
            let gap = &w[1] - &w[0];
            if gap > max_gap {
                max_gap = gap;
            }
        }
        BigRational::one() - max_gap
    }

    /// Arc width in radians.
    pub fn arc_width(&self) -> f64 {
        let t = self.arc_width_turns();
        std::f64::consts::TAU * rational_to_f64(&t)
    }

    /// Non-constant spectrum whose eigenvalues fit in a closed arc of length `π/3`.
    /// The bound is inclusive.
    pub fn violates_blichfeldt(&self) -> bool {
        self.distinct_values().len() >= 2 && self.arc_width_turns() <= BigRational::new(1.into(), 6.into())
    }

    pub fn trace(&self) -> Complex64 {
        self.values.iter().map(RootOfUnity::to_complex).sum()
    }

    pub fn trace_magnitude(&self) -> f64 {
        self.trace().norm()
    }

    /// Pads with eigenvalue 1 up to `dim`; returns `None` if already larger.
    pub fn padded(&self, dim: usize) -> Option<Spectrum> {
        if dim < self.values.len() {
            return None;
        }
        let mut values = self.values.clone();
        values.resize(dim, RootOfUnity::ONE);
        values.sort();
        Some(Spectrum { values })
    }

    /// Removes one eigenvalue equal to 1, if present.
    pub fn without_one_trivial(&self) -> Option<Spectrum> {
        let pos = self.values.iter().position(RootOfUnity::is_one)?;
        let mut values = self.values.clone();
        values.remove(pos);
        if values.is_empty() {
            None
        } else {
            Some(Spectrum { values })
        }
    }
}

/// Reid-Tai condition for a set of non-identity elements: no element is exceptional.
pub fn satisfies_rt<'a>(elements: impl IntoIterator<Item = &'a Spectrum>) -> bool {
    elements.into_iter().all(|s| !s.is_exceptional())
}

/// Spectra of `g^k` for `k = 1..order-1`, skipping identities.
pub fn nontrivial_powers(s: &Spectrum) -> Vec<Spectrum> {
    let n = s.order() as i64;
    (1..n).map(|k| s.power(k)).filter(|p| !p.is_identity()).collect()
}

pub(crate) fn rational_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl FromStr for Spectrum {
    type Err = Error;

    /// Comma- or whitespace-separated fractions, e.g. `"1/6,1/6,1/3"`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('{').trim_end_matches('}');
        let values = t
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<RootOfUnity>>>()?;
        Spectrum::new(values)
    }
}

impl Serialize for Spectrum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.values.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Spectrum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let values = Vec::<RootOfUnity>::deserialize(deserializer)?;
        Spectrum::new(values).map_err(serde::de::Error::custom)
    }
}
