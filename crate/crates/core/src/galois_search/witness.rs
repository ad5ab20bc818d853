//! Self-contained witnesses that can be re-checked without rerunning a search.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::multisets::MultisetEvidence;
use super::orders::HalfOrbitSum;
use super::pairs::{av_orbit_feasibility, OrbitFeasibility, PairEvidence, ValueUnionMin};
use crate::rational::Rational;
use crate::roots_of_unity::{unit_classes, RootOfUnity};
use crate::spectra::Spectrum;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// An order whose half-orbit sum is below one.
    HalfOrbit(HalfOrbitSum),
    /// A value set with a choice function keeping the distinct-value sum below one.
    ValueUnion(ValueUnionMin),
    /// A multiset whose Galois twists have the recorded total.
    OrbitSets(OrbitFeasibility),
    /// A multiset of age below one on a feasible value set.
    Multiset { multiset: Spectrum, value_set: ValueUnionMin },
}

fn frac(n: u64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Witness {
    pub fn from_pair_evidence(e: &PairEvidence) -> Option<Witness> {
        match e {
            PairEvidence::Sigma(w) => Some(Witness::ValueUnion(w.clone())),
            PairEvidence::Orbit(o) => Some(Witness::OrbitSets(o.clone())),
            _ => None,
        }
    }

    pub fn from_multiset_evidence(m: &Spectrum, e: &MultisetEvidence) -> Option<Witness> {
        match e {
            MultisetEvidence::ValueUnion { value_set, .. } => {
                Some(Witness::Multiset { multiset: m.clone(), value_set: value_set.clone() })
            }
            MultisetEvidence::Orbit(o) => Some(Witness::OrbitSets(o.clone())),
            _ => None,
        }
    }

    /// Re-checks the witness from scratch. Returns a short description on success.
    pub fn verify(&self) -> std::result::Result<String, String> {
        match self {
            Witness::HalfOrbit(h) => {
                let d = h.modulus;
                let classes = unit_classes(d).map_err(|e| e.to_string())?;
                if h.representatives.len() != classes.pairs.len() {
                    return Err(format!("expected {} representatives", classes.pairs.len()));
                }
                for p in &classes.pairs {
                    let hits = h.representatives.iter().filter(|&&u| u == p.lo || u == p.hi).count();
                    if hits != 1 {
                        return Err(format!("unit pair {{{}, {}}} chosen {hits} times", p.lo, p.hi));
                    }
                }
                let sum = frac(h.representatives.iter().sum(), d);
                if sum != *h.sum {
                    return Err(format!("recorded sum {} but representatives give {}", h.sum, Rational(sum)));
                }
                if sum >= BigRational::one() {
                    return Err(format!("sum {} is not below one", h.sum));
                }
                Ok(format!("order {d}: half-orbit sum {}", h.sum))
            }
            Witness::ValueUnion(w) => verify_value_union(w),
            Witness::OrbitSets(o) => {
                let fresh = av_orbit_feasibility(&o.multiset).map_err(|e| e.to_string())?;
                for class in &o.classes {
                    let twist = o.multiset.power(class.unit as i64);
                    if twist != class.representative {
                        return Err(format!("σ_{} does not give {}", class.unit, class.representative));
                    }
                    if *class.min_age != class.representative.age() {
                        return Err(format!("age of {} is not {}", class.representative, class.min_age));
                    }
                }
                if fresh.total != o.total || fresh.feasible != o.feasible {
                    return Err(format!("recorded total {} but recomputed {}", o.total, fresh.total));
                }
                let feasible = *o.total > BigRational::zero() && *o.total < BigRational::one();
                if feasible != o.feasible {
                    return Err("feasibility flag inconsistent with total".into());
                }
                Ok(format!(
                    "{}: twist total {} ({})",
                    o.multiset,
                    o.total,
                    if o.feasible { "feasible" } else { "refuted" }
                ))
            }
            Witness::Multiset { multiset, value_set } => {
                verify_value_union(value_set)?;
                let distinct: Vec<RootOfUnity> = multiset.distinct_values().into_iter().collect();
                if distinct != value_set.values {
                    return Err(format!("values of {multiset} differ from the witnessed set"));
                }
                if !multiset.is_exceptional() {
                    return Err(format!("{multiset} has age {}", Rational(multiset.age())));
                }
                Ok(format!("{multiset}: age {}", Rational(multiset.age())))
            }
        }
    }
}

fn verify_value_union(w: &ValueUnionMin) -> std::result::Result<String, String> {
    if !w.witness.covers_units() {
        return Err(format!("Σ does not cover the units mod {}", w.witness.modulus));
    }
    if !w.witness.chosen_residues.contains(&1) {
        return Err("Σ does not contain the identity".into());
    }
    if w.values.iter().any(|v| !w.witness.modulus.is_multiple_of(v.order())) {
        return Err("modulus is not a multiple of every value order".into());
    }
    let image = w.witness.image(&w.values);
    if image != w.value_set {
        return Err("recorded value set differs from the image of Σ".into());
    }
    let sum: BigRational = image.iter().map(RootOfUnity::fraction).sum();
    if sum != *w.sum {
        return Err(format!("recorded sum {} but image sums to {}", w.sum, Rational(sum)));
    }
    if sum >= BigRational::one() {
        return Err(format!("sum {} is not below one", w.sum));
    }
    Ok(format!(
        "{:?}: Σ = {:?} mod {}, sum {}",
        w.values.iter().map(ToString::to_string).collect::<Vec<_>>(),
        w.witness.chosen_residues,
        w.witness.modulus,
        w.sum
    ))
}
