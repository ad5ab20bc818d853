//! Finite groups of affine automorphisms of a real torus `ℝⁿ/ℤⁿ`, the subgroup generated by
//! exceptional elements and the filtration deciding whether the quotient is rationally
//! connected.
//!
//! A torus of the form `Hom(Λ₀, E)` is modelled through its rational representation: the
//! linear part acts on `Λ₀ ≅ ℤⁿ` and its eigenvalues are those of the differential.
//!
//! **Stabilizers.** If `g = (M, t)` fixes `x`, then `g(x + v) = x + Mv`, so the tangent
//! representation of the stabilizer at `x` sends `g` to `M`. Translations have zero
//! differential, hence the subgroup generated by exceptional stabilizer elements at all points
//! is generated by the exceptional elements of the group, each judged by its linear part.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::galois_search::{feasible_orders, min_age_same_order, SameOrderAge};
use crate::integer_lattice::{
    cyclotomic_spectrum, image_lattice, matrix_order, reduce_mod_one, saturate, solve_torus_congruence, IntMatrix,
    Sublattice,
};
use crate::published;
use crate::rational::Rational;
use crate::spectra::Spectrum;

/// Default bound on the number of group elements produced by a closure.
pub const DEFAULT_CAP: usize = 1_000_000;

/// `x ↦ M·x + t (mod ℤⁿ)` with `M` of finite order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineTorusMap {
    linear: IntMatrix,
    translation: Vec<BigRational>,
}

impl AffineTorusMap {
    pub fn new(linear: IntMatrix, translation: Vec<BigRational>) -> Result<Self> {
        let n = linear.require_square()?;
        if translation.len() != n {
            return Err(Error::DimensionMismatch(format!("translation of length {} in rank {n}", translation.len())));
        }
        if matrix_order(&linear)?.is_none() {
            return Err(Error::InfiniteOrder);
        }
        Ok(AffineTorusMap { linear, translation: reduce_mod_one(&translation) })
    }

    pub fn linear_only(linear: IntMatrix) -> Result<Self> {
        let n = linear.rows();
        AffineTorusMap::new(linear, vec![BigRational::zero(); n])
    }

    pub fn identity(n: usize) -> Self {
        AffineTorusMap { linear: IntMatrix::identity(n), translation: vec![BigRational::zero(); n] }
    }

    /// Convenience: integer rows and `(numerator, denominator)` translation entries.
    pub fn from_parts(rows: &[Vec<i64>], translation: &[(i64, i64)]) -> Result<Self> {
        let t = translation.iter().map(|&(a, b)| BigRational::new(a.into(), b.into())).collect();
        AffineTorusMap::new(IntMatrix::from_rows(rows)?, t)
    }

    pub fn rank(&self) -> usize {
        self.linear.rows()
    }

    pub fn linear(&self) -> &IntMatrix {
        &self.linear
    }

    pub fn translation(&self) -> &[BigRational] {
        &self.translation
    }

    pub fn is_identity(&self) -> bool {
        self.linear.is_identity() && self.translation.iter().all(Zero::is_zero)
    }

    /// `self ∘ other`: `(M₁M₂, M₁t₂ + t₁)`.
    pub fn compose(&self, other: &AffineTorusMap) -> Result<AffineTorusMap> {
        let linear = self.linear.mul(&other.linear)?;
        let mt: Vec<BigRational> = self.linear.apply_rational(&other.translation)?;
        let t: Vec<BigRational> = mt.iter().zip(&self.translation).map(|(a, b)| a + b).collect();
        Ok(AffineTorusMap { linear, translation: reduce_mod_one(&t) })
    }

    pub fn inverse(&self) -> Result<AffineTorusMap> {
        let k = matrix_order(&self.linear)?.ok_or(Error::InfiniteOrder)?;
        let inv = self.linear.pow(k - 1)?;
        let t: Vec<BigRational> = inv.apply_rational(&self.translation)?.into_iter().map(|x| -x).collect();
        Ok(AffineTorusMap { linear: inv, translation: reduce_mod_one(&t) })
    }

    /// Eigenvalues of the differential.
    pub fn spectrum(&self) -> Result<Spectrum> {
        cyclotomic_spectrum(&self.linear)
    }

    pub fn fixed_point(&self) -> Result<Option<Vec<BigRational>>> {
        solve_torus_congruence(&self.linear, &self.translation)
    }
}

#[derive(Serialize, Deserialize)]
struct MapRepr {
    matrix: IntMatrix,
    #[serde(default)]
    translation: Option<Vec<Rational>>,
}

impl Serialize for AffineTorusMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MapRepr {
            matrix: self.linear.clone(),
            translation: Some(self.translation.iter().cloned().map(Rational).collect()),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AffineTorusMap {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let r = MapRepr::deserialize(deserializer)?;
        let n = r.matrix.rows();
        let t = r
            .translation
            .map(|v| v.into_iter().map(Rational::into_inner).collect())
            .unwrap_or_else(|| vec![BigRational::zero(); n]);
        AffineTorusMap::new(r.matrix, t).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for AffineTorusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AffineTorusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.translation.iter().map(ToString::to_string).collect();
        write!(f, "({}, [{}])", self.linear, t.join(","))
    }
}

/// Input description of a group action: generators on a torus of the given rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusInput {
    pub rank: usize,
    pub generators: Vec<AffineTorusMap>,
}

impl TorusInput {
    pub fn validate(&self) -> Result<()> {
        match self.generators.iter().find(|g| g.rank() != self.rank) {
            Some(g) => Err(Error::DimensionMismatch(format!("generator of rank {} in rank {}", g.rank(), self.rank))),
            None => Ok(()),
        }
    }
}

/// A finite group of affine torus maps, elements in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusAction {
    pub rank: usize,
    pub generators: Vec<AffineTorusMap>,
    pub elements: Vec<AffineTorusMap>,
}

impl TorusAction {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &AffineTorusMap) -> bool {
        self.elements.binary_search(g).is_ok()
    }
}

/// Breadth-first product closure of the generators.
pub fn closure(rank: usize, generators: &[AffineTorusMap], cap: usize) -> Result<TorusAction> {
    if let Some(g) = generators.iter().find(|g| g.rank() != rank) {
        return Err(Error::DimensionMismatch(format!("generator of rank {} in rank {rank}", g.rank())));
    }
    let id = AffineTorusMap::identity(rank);
    let mut seen: HashSet<AffineTorusMap> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = x.compose(g)?;
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(Error::CapExceeded { cap });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut elements: Vec<AffineTorusMap> = seen.into_iter().collect();
    elements.sort();
    Ok(TorusAction { rank, generators: generators.to_vec(), elements })
}

pub fn closure_of(input: &TorusInput, cap: usize) -> Result<TorusAction> {
    input.validate()?;
    closure(input.rank, &input.generators, cap)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalElement {
    pub element: AffineTorusMap,
    pub spectrum: Spectrum,
    pub age: Rational,
    pub fixed_point: Vec<Rational>,
}

fn exceptional_in(elements: &[AffineTorusMap]) -> Result<Vec<ExceptionalElement>> {
    let found: Vec<Option<ExceptionalElement>> = elements
        .par_iter()
        .map(|g| -> Result<Option<ExceptionalElement>> {
            if g.linear().is_identity() {
                return Ok(None);
            }
            let spectrum = g.spectrum()?;
            if !spectrum.is_exceptional() {
                return Ok(None);
            }
            Ok(g.fixed_point()?.map(|x| ExceptionalElement {
                element: g.clone(),
                age: Rational(spectrum.age()),
                spectrum,
                fixed_point: x.into_iter().map(Rational).collect(),
            }))
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

/// Non-identity elements with a fixed point whose linear part has age strictly between 0 and 1.
pub fn exceptional_elements(a: &TorusAction) -> Result<Vec<ExceptionalElement>> {
    exceptional_in(&a.elements)
}

/// The subgroup generated by the exceptional elements.
pub fn rt_subgroup(a: &TorusAction, cap: usize) -> Result<TorusAction> {
    let gens: Vec<AffineTorusMap> = exceptional_elements(a)?.into_iter().map(|e| e.element).collect();
    closure(a.rank, &gens, cap)
}

fn tangent_sublattice_of(rank: usize, exceptional: &[ExceptionalElement]) -> Result<Sublattice> {
    let mut acc = Sublattice::zero(rank);
    for e in exceptional {
        acc = acc.sum(&image_lattice(&e.element.linear().minus_identity()?))?;
    }
    Ok(saturate(&acc))
}

/// Saturation of `Σ (M_g - I)·ℤⁿ` over exceptional `g`: the span of the non-fixed directions.
pub fn rt_tangent_sublattice(a: &TorusAction) -> Result<Sublattice> {
    tangent_sublattice_of(a.rank, &exceptional_elements(a)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    /// No exceptional element: the quotient has Kodaira dimension zero.
    KodairaZero,
    /// Some exceptional element, but the filtration stops short of the whole torus.
    UniruledNotRC,
    /// The filtration reaches the whole torus.
    RationallyConnected,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::KodairaZero => "KodairaZero",
            Verdict::UniruledNotRC => "UniruledNotRC",
            Verdict::RationallyConnected => "RationallyConnected",
        })
    }
}

/// One step of the filtration: exceptional elements of the induced action on the quotient
/// torus `ℤⁿ / previous`, and the pulled-back sublattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationStage {
    pub index: usize,
    pub quotient_rank: usize,
    /// Basis of `ℤⁿ` adapted to the previous member; its last `quotient_rank` columns give the
    /// quotient coordinates.
    pub adapted_basis: IntMatrix,
    pub quotient_group_order: usize,
    pub exceptional: Vec<ExceptionalElement>,
    pub sublattice: Sublattice,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationReport {
    pub rank: usize,
    pub group_order: usize,
    pub exceptional_elements: Vec<ExceptionalElement>,
    pub rt_generators: Vec<AffineTorusMap>,
    pub rt_subgroup_order: usize,
    pub stages: Vec<FiltrationStage>,
    pub chain: Vec<Sublattice>,
    pub verdict: Verdict,
}

/// The induced action on `ℤⁿ / L` for a `G`-stable saturated `L`, written in the last
/// `n - r` coordinates of the basis `P` (first `r` columns span `L`).
pub fn quotient_action(a: &TorusAction, l: &Sublattice, cap: usize) -> Result<(IntMatrix, TorusAction)> {
    let n = a.rank;
    let r = l.rank();
    let p = l.adapted_basis();
    let pinv = p.inverse_unimodular()?;
    let mut images: HashSet<AffineTorusMap> = HashSet::new();
    for g in &a.elements {
        let conj = pinv.mul(g.linear())?.mul(&p)?;
        for i in r..n {
            for j in 0..r {
                if !conj[(i, j)].is_zero() {
                    return Err(Error::InvalidArgument("sublattice is not stable under the group".into()));
                }
            }
        }
        let c = conj.submatrix(r..n, r..n);
        let t = pinv.apply_rational(g.translation())?;
        let image = AffineTorusMap::new(c, t[r..].to_vec())?;
        images.insert(image);
        if images.len() > cap {
            return Err(Error::CapExceeded { cap });
        }
    }
    let mut elements: Vec<AffineTorusMap> = images.into_iter().collect();
    elements.sort();
    let q = TorusAction { rank: n - r, generators: elements.clone(), elements };
    Ok((p, q))
}

/// Lifts a sublattice of the quotient coordinates back to `ℤⁿ` and adds `l`.
fn pull_back(l: &Sublattice, p: &IntMatrix, sub: &Sublattice) -> Result<Sublattice> {
    let n = l.ambient_rank();
    let r = l.rank();
    let mut rows = l.basis().row_vecs();
    for v in sub.basis().row_vecs() {
        let mut full = vec![BigInt::zero(); n];
        full[r..].clone_from_slice(&v);
        // column vector P·(0 ⊕ v)
        let lifted: Vec<BigInt> = (0..n).map(|i| (0..n).map(|j| &p[(i, j)] * &full[j]).sum()).collect();
        rows.push(lifted);
    }
    Ok(saturate(&Sublattice::span(&IntMatrix::from_big_rows(rows, n)?)))
}

pub fn filtration(a: &TorusAction, cap: usize) -> Result<FiltrationReport> {
    let n = a.rank;
    let exceptional = exceptional_elements(a)?;
    let rt_generators: Vec<AffineTorusMap> = exceptional.iter().map(|e| e.element.clone()).collect();
    let rt_subgroup_order = closure(n, &rt_generators, cap)?.order();
    let mut chain = Vec::new();
    let mut stages = Vec::new();
    if !exceptional.is_empty() {
        let mut current = tangent_sublattice_of(n, &exceptional)?;
        chain.push(current.clone());
        while !current.is_full() {
            let (p, q) = quotient_action(a, &current, cap)?;
            let found = exceptional_in(&q.elements)?;
            let sub = tangent_sublattice_of(q.rank, &found)?;
            let next = pull_back(&current, &p, &sub)?;
            stages.push(FiltrationStage {
                index: stages.len() + 2,
                quotient_rank: q.rank,
                adapted_basis: p,
                quotient_group_order: q.order(),
                exceptional: found,
                sublattice: next.clone(),
            });
            if next == current {
                break;
            }
            chain.push(next.clone());
            current = next;
        }
    }
    let verdict = match chain.last() {
        None => Verdict::KodairaZero,
        Some(l) if l.is_full() => Verdict::RationallyConnected,
        Some(_) => Verdict::UniruledNotRC,
    };
    Ok(FiltrationReport {
        rank: n,
        group_order: a.order(),
        exceptional_elements: exceptional,
        rt_generators,
        rt_subgroup_order,
        stages,
        chain,
        verdict,
    })
}

pub fn verdict(a: &TorusAction, cap: usize) -> Result<Verdict> {
    Ok(filtration(a, cap)?.verdict)
}

/// Which list of orders the same-order screen scans.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum OrderSource {
    /// The published order set.
    #[default]
    Published,
    /// Every order up to the bound with minimal half-orbit sum below one.
    Computed { bound: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleAvScreen {
    pub dim: u64,
    pub source: OrderSource,
    pub orders: Vec<u64>,
    pub entries: Vec<SameOrderAge>,
    /// `(order, minimal age)` for orders admitting an exceptional same-order spectrum.
    pub survivors: Vec<(u64, Rational)>,
}

/// Same-order minimal ages over every candidate order (or only `only`, when given).
pub fn simple_av_screen(dim: u64, only: Option<u64>, source: OrderSource) -> Result<SimpleAvScreen> {
    if dim < 1 {
        return Err(Error::InvalidArgument("dim must be >= 1".into()));
    }
    let mut orders: Vec<u64> = match source {
        OrderSource::Published => published::POSSIBLE_ORDERS.to_vec(),
        OrderSource::Computed { bound } => feasible_orders(bound)?.orders,
    };
    if let Some(n) = only {
        orders = vec![n];
    }
    let entries: Vec<SameOrderAge> = orders.iter().map(|&n| min_age_same_order(n, dim)).collect::<Result<_>>()?;
    let survivors = entries
        .iter()
        .filter(|e| e.is_exceptional())
        .map(|e| (e.n, e.min_age.clone().expect("exceptional entries have an age")))
        .collect();
    Ok(SimpleAvScreen { dim, source, orders, entries, survivors })
}
