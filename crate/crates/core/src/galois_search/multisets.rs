//! Eigenvalue multisets of exceptional elements built from the classified value sets.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::pairs::{av_orbit_feasibility, classify_pairs, set_verdict, OrbitFeasibility, PairEvidence, ValueUnionMin};
use super::{Annotated, ConformanceReport, Mode, ValueSet};
use crate::error::Result;
use crate::published;
use crate::rational::Rational;
use crate::roots_of_unity::RootOfUnity;
use crate::spectra::Spectrum;

/// A set of distinct values that may all occur as eigenvalues of one exceptional element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueSetClass {
    pub values: ValueSet,
    pub witness: ValueUnionMin,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MultisetEvidence {
    /// Age below one and the distinct values form a feasible value set.
    ValueUnion {
        age: Rational,
        value_set: ValueUnionMin,
    },
    Orbit(OrbitFeasibility),
    AgeAtLeastOne {
        age: Rational,
    },
    /// The distinct values are not among the candidate value sets.
    NotCandidate {
        values: ValueSet,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalMultiset {
    /// Letter in the published list, when the multiset appears there.
    pub label: Option<char>,
    pub multiset: Spectrum,
    pub age: Rational,
    pub evidence: MultisetEvidence,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultisetEnumeration {
    pub mode: Mode,
    pub f_max: u64,
    pub value_sets: Vec<ValueSetClass>,
    pub multisets: Vec<ExceptionalMultiset>,
    /// Orbit-sets mode: multisets of age below one on a candidate value set whose twist total
    /// is at least one.
    pub refuted: Vec<Annotated<Spectrum, OrbitFeasibility>>,
    pub conformance: ConformanceReport<Spectrum, MultisetEvidence>,
}

/// Feasible value sets: the classified pairs plus every larger set whose 2-subsets are all
/// classified and which passes the value-union predicate itself.
pub fn candidate_value_sets(f_max: u64) -> Result<Vec<ValueSetClass>> {
    let pairs = classify_pairs(f_max, Mode::ValueUnion)?;
    let edges: BTreeSet<(RootOfUnity, RootOfUnity)> =
        pairs.classes.iter().map(|c| (c.values[0], c.values[1])).collect();
    let vertices: Vec<RootOfUnity> =
        pairs.classes.iter().flat_map(|c| c.values.iter().copied()).collect::<BTreeSet<_>>().into_iter().collect();
    let adjacent = |a: RootOfUnity, b: RootOfUnity| edges.contains(&(a.min(b), a.max(b)));

    let mut out: Vec<ValueSetClass> = pairs
        .classes
        .iter()
        .map(|c| match &c.evidence {
            PairEvidence::Sigma(w) => ValueSetClass { values: c.values.clone(), witness: w.clone() },
            _ => unreachable!("value-union classes carry a Σ witness"),
        })
        .collect();

    // extend each clique by vertices larger than its maximum
    let mut frontier: Vec<ValueSet> = pairs.classes.iter().map(|c| c.values.clone()).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for set in &frontier {
            let top = *set.last().expect("non-empty");
            for &v in vertices.iter().filter(|&&v| v > top) {
                if set.iter().all(|&u| adjacent(u, v)) {
                    let mut grown = set.clone();
                    grown.push(v);
                    if let PairEvidence::Sigma(w) = set_verdict(&grown, Mode::ValueUnion).evidence {
                        out.push(ValueSetClass { values: grown.clone(), witness: w });
                        next.push(grown);
                    }
                }
            }
        }
        frontier = next;
    }
    out.sort_by(|a, b| a.values.len().cmp(&b.values.len()).then_with(|| a.values.cmp(&b.values)));
    Ok(out)
}

fn label_of(m: &Spectrum) -> Option<char> {
    published::EXCEPTIONAL_MULTISETS.iter().find(|(_, fr)| published_spectrum(fr) == *m).map(|(l, _)| *l)
}

fn published_spectrum(fracs: &[(u64, u64)]) -> Spectrum {
    let values: Vec<RootOfUnity> =
        fracs.iter().map(|&(a, d)| RootOfUnity::new(a as i64, d).expect("published fraction")).collect();
    Spectrum::new(values).expect("non-empty")
}

/// All multisets with at least one copy of each value of `values` and total below one.
fn multisets_on(values: &[RootOfUnity]) -> Vec<Spectrum> {
    fn go(values: &[RootOfUnity], i: usize, acc: &mut Vec<RootOfUnity>, age: BigRational, out: &mut Vec<Spectrum>) {
        if i == values.len() {
            out.push(Spectrum::new(acc.clone()).expect("non-empty"));
            return;
        }
        let step = values[i].fraction();
        let mut age = age + &step;
        let mut pushed = 0;
        while age < BigRational::one() {
            acc.push(values[i]);
            pushed += 1;
            go(values, i + 1, acc, age.clone(), out);
            age += &step;
        }
        acc.truncate(acc.len() - pushed);
    }
    let mut out = Vec::new();
    go(values, 0, &mut Vec::new(), BigRational::from_integer(0.into()), &mut out);
    out
}

/// Enumerates the multisets of non-trivial eigenvalues, with at least two distinct values, that
/// an exceptional element may carry. Value sets always come from the value-union search up to
/// `f_max`; orbit-sets mode additionally requires the twist total to stay below one.
pub fn enumerate_exceptional_multisets(f_max: u64, mode: Mode) -> Result<MultisetEnumeration> {
    let value_sets = candidate_value_sets(f_max)?;
    let mut multisets = Vec::new();
    let mut refuted = Vec::new();
    for class in &value_sets {
        for m in multisets_on(&class.values) {
            let age = Rational(m.age());
            match mode {
                Mode::ValueUnion => multisets.push(ExceptionalMultiset {
                    label: label_of(&m),
                    multiset: m,
                    age: age.clone(),
                    evidence: MultisetEvidence::ValueUnion { age, value_set: class.witness.clone() },
                }),
                Mode::OrbitSets => {
                    let o = av_orbit_feasibility(&m)?;
                    if o.feasible {
                        multisets.push(ExceptionalMultiset {
                            label: label_of(&m),
                            multiset: m,
                            age,
                            evidence: MultisetEvidence::Orbit(o),
                        });
                    } else {
                        refuted.push(Annotated { item: m, evidence: o });
                    }
                }
            }
        }
    }
    multisets.sort_by(|a, b| a.multiset.cmp(&b.multiset));
    refuted.sort_by(|a, b| a.item.cmp(&b.item));

    let expected: Vec<Spectrum> =
        published::EXCEPTIONAL_MULTISETS.iter().map(|(_, fr)| published_spectrum(fr)).collect();
    let computed: Vec<Spectrum> = multisets.iter().map(|m| m.multiset.clone()).collect();
    let candidate_sets: BTreeSet<ValueSet> = value_sets.iter().map(|c| c.values.clone()).collect();
    let missing_evidence = |m: &Spectrum| {
        let age = m.age();
        if age >= BigRational::one() {
            return MultisetEvidence::AgeAtLeastOne { age: Rational(age) };
        }
        let values: ValueSet = m.distinct_values().into_iter().collect();
        if !candidate_sets.contains(&values) {
            return MultisetEvidence::NotCandidate { values };
        }
        MultisetEvidence::Orbit(av_orbit_feasibility(m).expect("non-trivial values"))
    };
    let extra_evidence = |m: &Spectrum| {
        multisets.iter().find(|e| e.multiset == *m).map(|e| e.evidence.clone()).expect("computed multiset")
    };
    let conformance = ConformanceReport::build(expected, computed, missing_evidence, extra_evidence);
    Ok(MultisetEnumeration { mode, f_max, value_sets, multisets, refuted, conformance })
}

/// The published triple as a value set.
#[cfg(test)]
pub(crate) fn published_triple() -> ValueSet {
    super::value_set_from(&published::TRIPLE)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(text: &str) -> Spectrum {
        text.parse().unwrap()
    }

    #[test]
    fn multisets_on_counts() {
        // {1/6,1/3}: a·1/6 + b·1/3 < 1 with a,b >= 1
        let ms = multisets_on(&[RootOfUnity::new(1, 6).unwrap(), RootOfUnity::new(1, 3).unwrap()]);
        let mut brute = 0;
        for a in 1..6 {
            for b in 1..3 {
                if a + 2 * b < 6 {
                    brute += 1;
                }
            }
        }
        assert_eq!(ms.len(), brute);
        assert!(ms.contains(&sp("1/6,1/6,1/6,1/3")));
        assert!(!ms.contains(&sp("1/6,1/6,1/6,1/6,1/3")));
    }

    #[test]
    fn triple_is_a_candidate() {
        let sets = candidate_value_sets(24).unwrap();
        assert!(sets.iter().any(|s| s.values == published_triple()));
        assert!(sets.iter().all(|s| *s.witness.sum < BigRational::one()));
    }

    #[test]
    fn published_list_in_both_modes() {
        let literal = enumerate_exceptional_multisets(36, Mode::ValueUnion).unwrap();
        assert!(literal.conformance.missing.is_empty(), "{:?}", literal.conformance.missing_items());
        let c = literal.multisets.iter().find(|m| m.label == Some('c')).unwrap();
        assert_eq!(c.age, Rational::new(5, 6));

        let orbit = enumerate_exceptional_multisets(36, Mode::OrbitSets).unwrap();
        let missing: Vec<String> = orbit.conformance.missing_items().iter().map(|m| m.to_string()).collect();
        assert_eq!(missing, ["{1/12, 1/4}", "{1/4, 5/12}"]);
        for a in &orbit.conformance.missing {
            let MultisetEvidence::Orbit(o) = &a.evidence else { panic!() };
            assert_eq!(o.total, Rational::new(1, 1));
        }
        let r = orbit.refuted.iter().find(|r| r.item == sp("1/8,1/8,3/8")).unwrap();
        assert_eq!(r.evidence.total, Rational::new(3, 2));
        for m in &orbit.multisets {
            let MultisetEvidence::Orbit(o) = &m.evidence else { panic!() };
            assert!(*o.total < BigRational::one());
        }
        for r in &orbit.refuted {
            assert!(*r.evidence.total >= BigRational::one());
        }
    }
}
