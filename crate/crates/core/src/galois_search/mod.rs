//! Exhaustive searches over Galois orbits of roots of unity.
//!
//! Every search is a pure function of its bounds. Outer loops may run on the rayon pool;
//! results are sorted canonically before they are returned.

mod multisets;
mod orders;
mod pairs;
mod traces;
mod witness;

use serde::{Deserialize, Serialize};

pub use multisets::{
    candidate_value_sets, enumerate_exceptional_multisets, ExceptionalMultiset, MultisetEnumeration, MultisetEvidence,
    ValueSetClass,
};
pub use orders::{
    feasible_orders, min_age_same_order, min_halforbit_sum, table1, table1_row, HalfOrbitSum, OrdersScan, SameOrderAge,
    Table1Row,
};
pub use pairs::{
    av_orbit_feasibility, classify_pairs, pair_feasible, value_union_min, OrbitFeasibility, PairClass,
    PairClassification, PairEvidence, PairVerdict, SigmaWitness, TwistClass, ValueUnionMin,
};
pub use traces::{padded_trace, table2, Table2Cell, TRACE_TOLERANCE};
pub use witness::Witness;

use crate::roots_of_unity::RootOfUnity;

/// Which feasibility predicate a search applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Sum over the *set* of distinct Galois images of the values is below one.
    #[default]
    ValueUnion,
    /// Galois twists of the whole multiset, paired by conjugation, have total age below one.
    OrbitSets,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::ValueUnion => "value-union",
            Mode::OrbitSets => "orbit-sets",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "value-union" | "paper-literal" | "literal" => Ok(Mode::ValueUnion),
            "orbit-sets" => Ok(Mode::OrbitSets),
            _ => Err(crate::Error::InvalidArgument(format!("unknown mode {s:?}"))),
        }
    }
}

/// A sorted set of distinct roots of unity.
pub type ValueSet = Vec<RootOfUnity>;

/// An item paired with the evidence that explains its presence or absence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Annotated<T, E> {
    pub item: T,
    pub evidence: E,
}

/// Comparison between a published set and a computed one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConformanceReport<T, E> {
    pub expected: Vec<T>,
    pub computed: Vec<T>,
    pub missing: Vec<Annotated<T, E>>,
    pub extra: Vec<Annotated<T, E>>,
}

impl<T: Ord + Clone, E> ConformanceReport<T, E> {
    /// `missing_evidence` explains why an expected item was not computed;
    /// `extra_evidence` is the witness for a computed item nobody expected.
    pub fn build(
        mut expected: Vec<T>,
        mut computed: Vec<T>,
        mut missing_evidence: impl FnMut(&T) -> E,
        mut extra_evidence: impl FnMut(&T) -> E,
    ) -> Self {
        expected.sort();
        expected.dedup();
        computed.sort();
        computed.dedup();
        let missing = expected
            .iter()
            .filter(|t| computed.binary_search(t).is_err())
            .map(|t| Annotated { item: t.clone(), evidence: missing_evidence(t) })
            .collect();
        let extra = computed
            .iter()
            .filter(|t| expected.binary_search(t).is_err())
            .map(|t| Annotated { item: t.clone(), evidence: extra_evidence(t) })
            .collect();
        ConformanceReport { expected, computed, missing, extra }
    }

    pub fn is_conformant(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }

    pub fn missing_items(&self) -> Vec<&T> {
        self.missing.iter().map(|a| &a.item).collect()
    }

    pub fn extra_items(&self) -> Vec<&T> {
        self.extra.iter().map(|a| &a.item).collect()
    }
}

pub(crate) fn value_set_from(fracs: &[(u64, u64)]) -> ValueSet {
    let mut v: Vec<RootOfUnity> =
        fracs.iter().map(|&(a, d)| RootOfUnity::new(a as i64, d).expect("published fraction")).collect();
    v.sort();
    v.dedup();
    v
}
