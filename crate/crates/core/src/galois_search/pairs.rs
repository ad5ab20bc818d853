//! Pair classification: which two-element eigenvalue sets survive the Galois constraint.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::orders::{halforbit_numerator, min_halforbit_sum, HalfOrbitSum};
use super::{value_set_from, ConformanceReport, Mode, ValueSet};
use crate::error::{Error, Result};
use crate::published;
use crate::rational::Rational;
use crate::roots_of_unity::{unit_classes, units_mod, RootOfUnity};
use crate::spectra::Spectrum;

/// A choice of Galois automorphisms `σ_u` (residues `u` mod `modulus`) such that every unit
/// `u` has `u` or `-u` chosen.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SigmaWitness {
    pub modulus: u64,
    pub chosen_residues: Vec<u64>,
}

impl SigmaWitness {
    pub fn covers_units(&self) -> bool {
        let f = self.modulus;
        if f < 2 {
            return false;
        }
        let chosen_are_units = self.chosen_residues.iter().all(|&u| u < f && u.gcd(&f) == 1);
        chosen_are_units
            && units_mod(f)
                .iter()
                .all(|&u| self.chosen_residues.contains(&u) || self.chosen_residues.contains(&(f - u)))
    }

    /// The set of distinct images `σ(v)` over the chosen automorphisms.
    pub fn image(&self, values: &[RootOfUnity]) -> ValueSet {
        let mut out: Vec<RootOfUnity> =
            self.chosen_residues.iter().flat_map(|&u| values.iter().map(move |v| v.pow(u as i64))).collect();
        out.sort();
        out.dedup();
        out
    }
}

/// The minimal value-union configuration for a set of values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueUnionMin {
    pub values: ValueSet,
    pub witness: SigmaWitness,
    pub value_set: ValueSet,
    pub sum: Rational,
}

fn lcm_of_orders(values: &[RootOfUnity]) -> u64 {
    values.iter().fold(1, |acc, v| acc.lcm(&v.order()))
}

fn check_nontrivial(values: &[RootOfUnity]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::EmptyMultiset);
    }
    if let Some(v) = values.iter().find(|v| v.is_one()) {
        return Err(Error::DegeneratePair(format!("value {v} is trivial")));
    }
    Ok(())
}

/// Minimises the sum of the distinct values in `Σ(v_1) ∪ … ∪ Σ(v_k)` over all choice
/// functions `Σ`, returning the configuration only when that sum is below one.
///
/// With `require_identity` the identity automorphism must be in `Σ`, which is the case when
/// the values are eigenvalues of the element itself. Values whose own order admits no
/// half-orbit below one are rejected up front: `Σ(v)` always contains such a half-orbit.
pub fn value_union_min(values: &[RootOfUnity], require_identity: bool) -> Result<Option<ValueUnionMin>> {
    check_nontrivial(values)?;
    let mut values: ValueSet = values.to_vec();
    values.sort();
    values.dedup();
    if values.iter().any(|v| halforbit_numerator(v.order()) >= v.order()) {
        return Ok(None);
    }
    let f = lcm_of_orders(&values);
    let nums: Vec<u64> = values.iter().map(|v| v.numerator() * (f / v.order())).collect();
    let pairs = unit_classes(f)?.pairs;
    let options: Vec<Vec<(u64, Vec<usize>)>> = pairs
        .iter()
        .map(|p| {
            let mut opts = vec![p.lo];
            if !p.is_self_paired() && !(require_identity && p.lo == 1) {
                opts.push(p.hi);
            }
            opts.into_iter().map(|u| (u, nums.iter().map(|&a| ((u * a) % f) as usize).collect())).collect()
        })
        .collect();

    struct Search<'a> {
        options: &'a [Vec<(u64, Vec<usize>)>],
        counts: Vec<u32>,
        sum: u64,
        chosen: Vec<u64>,
        best_sum: u64,
        best: Option<Vec<u64>>,
    }

    impl Search<'_> {
        fn go(&mut self, i: usize) {
            if self.sum >= self.best_sum {
                return;
            }
            if i == self.options.len() {
                self.best_sum = self.sum;
                self.best = Some(self.chosen.clone());
                return;
            }
            let options = self.options;
            for (u, images) in &options[i] {
                for &x in images {
                    if self.counts[x] == 0 {
                        self.sum += x as u64;
                    }
                    self.counts[x] += 1;
                }
                self.chosen.push(*u);
                self.go(i + 1);
                self.chosen.pop();
                for &x in images {
                    self.counts[x] -= 1;
                    if self.counts[x] == 0 {
                        self.sum -= x as u64;
                    }
                }
            }
        }
    }

    let mut search = Search {
        options: &options,
        counts: vec![0; f as usize],
        sum: 0,
        chosen: Vec::with_capacity(options.len()),
        best_sum: f,
        best: None,
    };
    search.go(0);
    Ok(search.best.map(|chosen| {
        let witness = SigmaWitness { modulus: f, chosen_residues: chosen };
        let value_set = witness.image(&values);
        ValueUnionMin {
            values,
            witness,
            value_set,
            sum: Rational(BigRational::new(BigInt::from(search.best_sum), BigInt::from(f))),
        }
    }))
}

/// One conjugation class `{M, M̄}` of Galois twists of a multiset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistClass {
    /// The member of least age.
    pub representative: Spectrum,
    /// Smallest unit `u` with `σ_u(m) = representative`.
    pub unit: u64,
    pub min_age: Rational,
    pub members: Vec<Spectrum>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitFeasibility {
    pub multiset: Spectrum,
    pub modulus: u64,
    pub classes: Vec<TwistClass>,
    pub total: Rational,
    pub feasible: bool,
}

/// Galois twists `σ_u(m)` for `u ∈ (ℤ/fℤ)^×`, deduplicated as multisets, grouped by complex
/// conjugation; the total is the sum of the least age in each class. Identical twists are
/// treated as the same subrepresentation.
pub fn av_orbit_feasibility(m: &Spectrum) -> Result<OrbitFeasibility> {
    check_nontrivial(m.values())?;
    let f = m.order();
    let mut twists: BTreeMap<Spectrum, u64> = BTreeMap::new();
    for u in units_mod(f) {
        twists.entry(m.power(u as i64)).or_insert(u);
    }
    let mut grouped: BTreeMap<Spectrum, Vec<(Spectrum, u64)>> = BTreeMap::new();
    for (t, u) in twists {
        let c = t.conjugate();
        let key = if c < t { c } else { t.clone() };
        grouped.entry(key).or_default().push((t, u));
    }
    let classes: Vec<TwistClass> = grouped
        .into_values()
        .map(|members| {
            let (rep, unit) = members
                .iter()
                .min_by(|(a, ua), (b, ub)| a.age().cmp(&b.age()).then(ua.cmp(ub)))
                .cloned()
                .expect("non-empty class");
            TwistClass {
                min_age: Rational(rep.age()),
                representative: rep,
                unit,
                members: members.into_iter().map(|(t, _)| t).collect(),
            }
        })
        .collect();
    let total: BigRational = classes.iter().map(|c| c.min_age.0.clone()).sum();
    let feasible = total > BigRational::zero() && total < BigRational::one();
    Ok(OrbitFeasibility { multiset: m.clone(), modulus: f, classes, total: Rational(total), feasible })
}

/// Why a pair was accepted or rejected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PairEvidence {
    /// Feasible in value-union mode with this Σ.
    Sigma(ValueUnionMin),
    /// Orbit-sets total (feasible or not).
    Orbit(OrbitFeasibility),
    /// The two fractions already sum to at least one.
    OwnAgeAtLeastOne { sum: Rational },
    /// Some value has an order whose minimal half-orbit sum is at least one.
    OrderBound { value: RootOfUnity, halforbit: HalfOrbitSum },
    /// Exhaustive search found no Σ with sum below one.
    NoSigmaBelowOne,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairVerdict {
    pub values: ValueSet,
    pub modulus: u64,
    pub mode: Mode,
    pub feasible: bool,
    pub evidence: PairEvidence,
}

/// Feasibility of the pair `{e(a/f), e(b/f)}` with `0 < a < b < f`.
pub fn pair_feasible(a: u64, b: u64, f: u64, mode: Mode) -> Result<PairVerdict> {
    if !(0 < a && a < b && b < f) {
        return Err(Error::DegeneratePair(format!("need 0 < a < b < f, got ({a}, {b}, {f})")));
    }
    let alpha = RootOfUnity::new(a as i64, f)?;
    let beta = RootOfUnity::new(b as i64, f)?;
    Ok(set_verdict(&[alpha, beta], mode))
}

pub(crate) fn set_verdict(values: &[RootOfUnity], mode: Mode) -> PairVerdict {
    let mut values: ValueSet = values.to_vec();
    values.sort();
    values.dedup();
    let modulus = lcm_of_orders(&values);
    let own: BigRational = values.iter().map(RootOfUnity::fraction).sum();
    let verdict = |feasible, evidence| PairVerdict { values: values.clone(), modulus, mode, feasible, evidence };
    if own >= BigRational::one() {
        return verdict(false, PairEvidence::OwnAgeAtLeastOne { sum: Rational(own) });
    }
    // Both predicates dominate the minimal half-orbit sum of each value's order: the twists
    // of the set run over every conjugate pair of that value.
    if let Some(v) = values.iter().find(|v| halforbit_numerator(v.order()) >= v.order()) {
        let halforbit = min_halforbit_sum(v.order()).expect("order >= 2");
        return verdict(false, PairEvidence::OrderBound { value: *v, halforbit });
    }
    match mode {
        Mode::ValueUnion => match value_union_min(&values, true).expect("validated values") {
            Some(w) => verdict(true, PairEvidence::Sigma(w)),
            None => verdict(false, PairEvidence::NoSigmaBelowOne),
        },
        Mode::OrbitSets => {
            let m = Spectrum::new(values.clone()).expect("non-empty");
            let o = av_orbit_feasibility(&m).expect("non-trivial values");
            verdict(o.feasible, PairEvidence::Orbit(o))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairClass {
    pub values: ValueSet,
    pub modulus: u64,
    pub minimal_sum: Rational,
    pub evidence: PairEvidence,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairClassification {
    pub f_max: u64,
    pub mode: Mode,
    pub classes: Vec<PairClass>,
    pub conformance: ConformanceReport<ValueSet, PairEvidence>,
}

impl PairClassification {
    pub fn get(&self, values: &[RootOfUnity]) -> Option<&PairClass> {
        let mut key = values.to_vec();
        key.sort();
        self.classes.iter().find(|c| c.values == key)
    }
}

/// The nine published pairs.
pub(crate) fn published_pairs() -> Vec<ValueSet> {
    published::NINE_PAIRS.iter().map(|p| value_set_from(p)).collect()
}

/// Every reduced unordered pair of distinct non-trivial roots of unity whose orders have
/// least common multiple at most `f_max`, filtered by the chosen predicate. Pairs are visited
/// by their least common modulus ascending, then lexicographically.
pub fn classify_pairs(f_max: u64, mode: Mode) -> Result<PairClassification> {
    if f_max < 2 {
        return Err(Error::InvalidArgument(format!("f_max must be >= 2, got {f_max}")));
    }
    let per_modulus: Vec<Vec<PairClass>> = (2..=f_max)
        .into_par_iter()
        .map(|f| {
            let mut found = Vec::new();
            for a in 1..f {
                let oa = f / a.gcd(&f);
                for b in (a + 1)..(f - a) {
                    if oa.lcm(&(f / b.gcd(&f))) != f {
                        continue;
                    }
                    let v = pair_feasible(a, b, f, mode).expect("0 < a < b < f");
                    if v.feasible {
                        let minimal_sum = match &v.evidence {
                            PairEvidence::Sigma(w) => w.sum.clone(),
                            PairEvidence::Orbit(o) => o.total.clone(),
                            _ => unreachable!("feasible verdicts carry a witness"),
                        };
                        found.push(PairClass { values: v.values, modulus: f, minimal_sum, evidence: v.evidence });
                    }
                }
            }
            found.sort_by(|x, y| x.values.cmp(&y.values));
            found
        })
        .collect();
    let classes: Vec<PairClass> = per_modulus.into_iter().flatten().collect();
    let computed: Vec<ValueSet> = classes.iter().map(|c| c.values.clone()).collect();
    let lookup: BTreeMap<ValueSet, PairEvidence> =
        classes.iter().map(|c| (c.values.clone(), c.evidence.clone())).collect();
    let conformance =
        ConformanceReport::build(published_pairs(), computed, |p| set_verdict(p, mode).evidence, |p| lookup[p].clone());
    Ok(PairClassification { f_max, mode, classes, conformance })
}
