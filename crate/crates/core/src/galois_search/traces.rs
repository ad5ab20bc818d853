//! Trace magnitudes of the exceptional multisets, padded with trivial eigenvalues.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::published::{self, EXCEPTIONAL_MULTISETS, TABLE2};
use crate::roots_of_unity::RootOfUnity;
use crate::spectra::Spectrum;

pub const TRACE_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table2Cell {
    pub case: char,
    pub dimension: usize,
    pub spectrum: Spectrum,
    pub magnitude: f64,
    pub published_label: String,
    pub published_squared: u64,
    pub matches: bool,
    /// Other list entries whose padded trace has the published magnitude in this dimension.
    pub reproduced_by: Vec<char>,
    /// Values `v` such that deleting one copy of `v` from the padded spectrum (leaving
    /// dimension `dim - 1`) gives the published magnitude.
    pub matches_without_one: Vec<RootOfUnity>,
}

fn labelled(label: char) -> Result<Spectrum> {
    Spectrum::from_fractions(
        &published::exceptional_multiset(label)
            .expect("label from the published list")
            .iter()
            .map(|&(a, d)| (a as i64, d))
            .collect::<Vec<_>>(),
    )
}

/// `|tr|` of the multiset `label` padded to `dim`; `None` if `dim` is too small.
pub fn padded_trace(label: char, dim: usize) -> Result<Option<f64>> {
    Ok(labelled(label)?.padded(dim).map(|s| s.trace_magnitude()))
}

/// Recomputes every printed cell of the trace table.
pub fn table2() -> Result<Vec<Table2Cell>> {
    let mut out = Vec::new();
    for row in &TABLE2 {
        for &(dim, label, sq) in row.cells {
            let spectrum = labelled(row.case)?.padded(dim).expect("published dimension fits");
            let magnitude = spectrum.trace_magnitude();
            let target = (sq as f64).sqrt();
            let mut reproduced_by = Vec::new();
            for &(other, _) in &EXCEPTIONAL_MULTISETS {
                if let Some(m) = padded_trace(other, dim)? {
                    if (m - target).abs() < TRACE_TOLERANCE {
                        reproduced_by.push(other);
                    }
                }
            }
            let mut matches_without_one = Vec::new();
            for v in spectrum.distinct_values().into_iter().filter(|v| !v.is_one()) {
                let mut values = spectrum.values().to_vec();
                let at = values.iter().position(|x| *x == v).expect("distinct value occurs");
                values.remove(at);
                if let Ok(rest) = Spectrum::new(values) {
                    if (rest.trace_magnitude() - target).abs() < TRACE_TOLERANCE {
                        matches_without_one.push(v);
                    }
                }
            }
            out.push(Table2Cell {
                case: row.case,
                dimension: dim,
                spectrum,
                matches: (magnitude - target).abs() < TRACE_TOLERANCE,
                magnitude,
                published_label: label.to_string(),
                published_squared: sq,
                reproduced_by,
                matches_without_one,
            });
        }
    }
    Ok(out)
}
