//! Monomial groups: permutations of coordinate lines with root-of-unity phases.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galois_search::{candidate_value_sets, ValueSet};
use crate::rational::Rational;
use crate::roots_of_unity::RootOfUnity;
use crate::spectra::Spectrum;

/// `e_i ↦ phases[i] · e_{perm[i]}` (indices from 0).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawMonomial")]
pub struct MonomialElement {
    perm: Vec<usize>,
    phases: Vec<RootOfUnity>,
}

#[derive(Deserialize)]
struct RawMonomial {
    perm: Vec<usize>,
    phases: Vec<RootOfUnity>,
}

impl TryFrom<RawMonomial> for MonomialElement {
    type Error = Error;

    fn try_from(raw: RawMonomial) -> Result<Self> {
        MonomialElement::new(raw.perm, raw.phases)
    }
}

impl MonomialElement {
    pub fn new(perm: Vec<usize>, phases: Vec<RootOfUnity>) -> Result<Self> {
        let n = perm.len();
        if n == 0 {
            return Err(Error::InvalidArgument("degree must be positive".into()));
        }
        if phases.len() != n {
            return Err(Error::DimensionMismatch(format!("{} phases for degree {n}", phases.len())));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidArgument(format!("{perm:?} is not a permutation")));
            }
        }
        Ok(MonomialElement { perm, phases })
    }

    pub fn identity(n: usize) -> Self {
        MonomialElement { perm: (0..n).collect(), phases: vec![RootOfUnity::ONE; n] }
    }

    pub fn diagonal(phases: Vec<RootOfUnity>) -> Self {
        MonomialElement { perm: (0..phases.len()).collect(), phases }
    }

    /// Swaps lines `i` and `j`, trivial phases.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, j);
        MonomialElement { perm, phases: vec![RootOfUnity::ONE; n] }
    }

    pub fn degree(&self) -> usize {
        self.perm.len()
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn phases(&self) -> &[RootOfUnity] {
        &self.phases
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MonomialElement) -> MonomialElement {
        let perm = other.perm.iter().map(|&j| self.perm[j]).collect();
        let phases = other.perm.iter().zip(&other.phases).map(|(&j, ph)| ph.mul(&self.phases[j])).collect();
        MonomialElement { perm, phases }
    }

    pub fn inverse(&self) -> MonomialElement {
        let n = self.degree();
        let mut perm = vec![0; n];
        let mut phases = vec![RootOfUnity::ONE; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            phases[self.perm[i]] = self.phases[i].conjugate();
        }
        MonomialElement { perm, phases }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.phases.iter().all(RootOfUnity::is_one)
    }

    pub fn is_diagonal(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Cycles of the permutation, each starting at its least index, ordered by that index.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut cycle = vec![s];
            seen[s] = true;
            let mut i = self.perm[s];
            while i != s {
                seen[i] = true;
                cycle.push(i);
                i = self.perm[i];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths, descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn is_transposition(&self) -> bool {
        let t = self.cycle_type();
        t.first() == Some(&2) && t.iter().skip(1).all(|&l| l == 1)
    }

    /// An `ℓ`-cycle whose phases multiply to `e(s)` acts on its lines with `g^ℓ = e(s)`, giving
    /// eigenvalues `e((s + j)/ℓ)` for `j = 0..ℓ`.
    pub fn spectrum(&self) -> Spectrum {
        let mut values = Vec::with_capacity(self.degree());
        for cycle in self.cycles() {
            let l = cycle.len() as u64;
            let s = cycle.iter().fold(RootOfUnity::ONE, |acc, &i| acc.mul(&self.phases[i]));
            let (a, d) = (s.numerator(), s.denominator());
            for j in 0..l {
                values.push(RootOfUnity::new((a + j * d) as i64, l * d).expect("positive denominator"));
            }
        }
        Spectrum::new(values).expect("degree is positive")
    }

    pub fn order(&self) -> u64 {
        self.spectrum().order()
    }

    pub fn to_complex_matrix(&self) -> DMatrix<Complex64> {
        let n = self.degree();
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            m[(self.perm[i], i)] = self.phases[i].to_complex();
        }
        m
    }
}

impl fmt::Debug for MonomialElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MonomialElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ph: Vec<String> = self.phases.iter().map(ToString::to_string).collect();
        write!(f, "perm {:?} phases [{}]", self.perm, ph.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialGroup {
    pub degree: usize,
    pub generators: Vec<MonomialElement>,
    /// Sorted.
    pub elements: Vec<MonomialElement>,
}

impl MonomialGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &MonomialElement) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn trivial(degree: usize) -> Self {
        MonomialGroup { degree, generators: Vec::new(), elements: vec![MonomialElement::identity(degree)] }
    }
}

/// Adds `x` to the closed subgroup `elements` (listed in `set`): the new group is a union of
/// right cosets `H·w`, each discovered by right multiplication with a generator.
fn extend_subgroup(
    elements: &mut Vec<MonomialElement>,
    set: &mut HashSet<MonomialElement>,
    gens: &mut Vec<MonomialElement>,
    x: MonomialElement,
    cap: usize,
) -> Result<()> {
    if set.contains(&x) {
        return Ok(());
    }
    gens.push(x);
    let h: Vec<MonomialElement> = elements.clone();
    let mut reps = vec![MonomialElement::identity(h[0].degree())];
    let mut k = 0;
    while k < reps.len() {
        let r = reps[k].clone();
        k += 1;
        for s in gens.iter() {
            let y = r.compose(s);
            if set.contains(&y) {
                continue;
            }
            if set.len() + h.len() > cap {
                return Err(Error::CapExceeded { cap });
            }
            for e in &h {
                let z = e.compose(&y);
                set.insert(z.clone());
                elements.push(z);
            }
            reps.push(y);
        }
    }
    Ok(())
}

/// The group generated by `generators`.
pub fn closure(degree: usize, generators: &[MonomialElement], cap: usize) -> Result<MonomialGroup> {
    if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
        return Err(Error::DimensionMismatch(format!("generator of degree {} in degree {degree}", g.degree())));
    }
    let id = MonomialElement::identity(degree);
    let mut elements = vec![id.clone()];
    let mut set = HashSet::from([id]);
    let mut gens = Vec::new();
    for g in generators {
        extend_subgroup(&mut elements, &mut set, &mut gens, g.clone(), cap)?;
    }
    elements.sort();
    Ok(MonomialGroup { degree, generators: generators.to_vec(), elements })
}

/// `G(m, p, n)`: monomial matrices with phases in `μ_m` whose phase product lies in `μ_{m/p}`.
pub fn g_group(m: u64, p: u64, n: usize, cap: usize) -> Result<MonomialGroup> {
    if m == 0 || p == 0 || !m.is_multiple_of(p) || n == 0 {
        return Err(Error::InvalidArgument(format!("need p | m and n >= 1, got ({m}, {p}, {n})")));
    }
    let predicted = (m as u128).pow(n as u32) * (1..=n as u128).product::<u128>() / p as u128;
    if predicted > cap as u128 {
        return Err(Error::CapExceeded { cap });
    }
    let mut gens = Vec::new();
    for i in 0..n.saturating_sub(1) {
        gens.push(MonomialElement::transposition(n, i, i + 1));
    }
    if n >= 2 && m > 1 {
        let mut ph = vec![RootOfUnity::ONE; n];
        ph[0] = RootOfUnity::new(1, m)?;
        ph[1] = RootOfUnity::new(-1, m)?;
        gens.push(MonomialElement::diagonal(ph));
    }
    if p < m {
        let mut ph = vec![RootOfUnity::ONE; n];
        ph[0] = RootOfUnity::new(p as i64, m)?;
        gens.push(MonomialElement::diagonal(ph));
    }
    closure(n, &gens, cap)
}

/// Orbit of `g` under conjugation by the generators of `group`.
pub fn conjugacy_class(g: &MonomialElement, group: &MonomialGroup) -> Vec<MonomialElement> {
    let gens: Vec<(MonomialElement, MonomialElement)> =
        group.generators.iter().map(|s| (s.clone(), s.inverse())).collect();
    let mut seen = HashSet::from([g.clone()]);
    let mut queue = vec![g.clone()];
    while let Some(x) = queue.pop() {
        for (s, si) in &gens {
            let y = s.compose(&x).compose(si);
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    let mut out: Vec<MonomialElement> = seen.into_iter().collect();
    out.sort();
    out
}

/// Smallest normal subgroup of `group` containing `g`.
pub fn normal_closure(g: &MonomialElement, group: &MonomialGroup) -> Result<MonomialGroup> {
    if !group.contains(g) {
        return Err(Error::InvalidArgument(format!("{g} is not in the group")));
    }
    let class = conjugacy_class(g, group);
    let id = MonomialElement::identity(group.degree);
    let mut elements = vec![id.clone()];
    let mut set = HashSet::from([id]);
    let mut gens = Vec::new();
    for x in &class {
        extend_subgroup(&mut elements, &mut set, &mut gens, x.clone(), group.order())?;
    }
    elements.sort();
    Ok(MonomialGroup { degree: group.degree, generators: gens, elements })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalMonomial {
    pub element: MonomialElement,
    pub spectrum: Spectrum,
    pub age: Rational,
    pub cycle_type: Vec<usize>,
    /// `[G : normal closure of g]`.
    pub closure_index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProdReport {
    pub degree: usize,
    pub group_order: usize,
    pub reflection_rep: bool,
    /// `false` in degree 1, where there is no pair of lines to permute.
    pub applicable: bool,
    pub exceptional: Vec<ExceptionalMonomial>,
    /// Exceptional elements with full normal closure whose permutation is not a transposition.
    pub violations: Vec<ExceptionalMonomial>,
}

/// Spectrum in the chosen representation; the reflection representation of a permutation
/// group drops the trivial summand spanned by the all-ones vector.
fn rep_spectrum(g: &MonomialElement, reflection_rep: bool) -> Option<Spectrum> {
    let s = g.spectrum();
    if reflection_rep {
        s.without_one_trivial()
    } else {
        Some(s)
    }
}

/// Checks that every exceptional element whose conjugacy class generates the group permutes
/// the lines by a transposition.
pub fn prop_prod_check(group: &MonomialGroup, reflection_rep: bool) -> Result<ProdReport> {
    if reflection_rep && group.elements.iter().any(|g| g.phases.iter().any(|p| !p.is_one())) {
        return Err(Error::InvalidArgument("the reflection representation needs trivial phases".into()));
    }
    let candidates: Vec<(MonomialElement, Spectrum)> = group
        .elements
        .par_iter()
        .filter(|g| !g.is_identity())
        .filter_map(|g| rep_spectrum(g, reflection_rep).map(|s| (g.clone(), s)))
        .filter(|(_, s)| s.is_exceptional())
        .collect();
    // normal closures depend only on the conjugacy class
    let mut class_index: BTreeMap<MonomialElement, usize> = BTreeMap::new();
    let mut exceptional = Vec::with_capacity(candidates.len());
    for (g, spectrum) in candidates {
        let closure_index = match class_index.get(&g) {
            Some(&k) => k,
            None => {
                let n = normal_closure(&g, group)?;
                let k = group.order() / n.order();
                for x in conjugacy_class(&g, group) {
                    class_index.insert(x, k);
                }
                k
            }
        };
        exceptional.push(ExceptionalMonomial {
            age: Rational(spectrum.age()),
            cycle_type: g.cycle_type(),
            element: g,
            spectrum,
            closure_index,
        });
    }
    let applicable = group.degree >= 2;
    let violations = if applicable {
        exceptional.iter().filter(|e| e.closure_index == 1 && !e.element.is_transposition()).cloned().collect()
    } else {
        Vec::new()
    };
    Ok(ProdReport {
        degree: group.degree,
        group_order: group.order(),
        reflection_rep,
        applicable,
        exceptional,
        violations,
    })
}

/// One candidate exceptional element: a transposition block with eigenvalues `e(r)`,
/// `e(r + 1/2)` plus diagonal phases on further lines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImprimitiveCandidate {
    pub r: RootOfUnity,
    pub extras: Vec<RootOfUnity>,
    pub element: MonomialElement,
    pub spectrum: Spectrum,
    pub age: Rational,
    pub square: Spectrum,
    pub square_age: Rational,
    pub square_is_diagonal: bool,
    /// `g²` fixes every line and is itself exceptional.
    pub eliminated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImprimitiveCases {
    pub block_offsets: Vec<RootOfUnity>,
    pub candidates: Vec<ImprimitiveCandidate>,
    pub survivors: Vec<ImprimitiveCandidate>,
}

fn half() -> RootOfUnity {
    RootOfUnity::new(1, 2).expect("valid")
}

/// Extra eigenvalue multisets `E` (non-trivial, non-decreasing) such that the block values
/// together with `E` form a candidate value set and the total age stays below one.
fn extra_options(block: &Spectrum, sets: &[ValueSet]) -> Vec<Vec<RootOfUnity>> {
    let block_values: Vec<RootOfUnity> = block.nontrivial().copied().collect();
    let pool: Vec<RootOfUnity> =
        sets.iter().flatten().copied().collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    let allowed = |vals: &[RootOfUnity]| {
        let mut d: Vec<RootOfUnity> = vals.to_vec();
        d.sort();
        d.dedup();
        d.len() < 2 || sets.contains(&d)
    };
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<(Vec<RootOfUnity>, BigRational)> = vec![(Vec::new(), block.age())];
    while let Some((extras, age)) = frontier.pop() {
        for &v in pool.iter().filter(|v| extras.last().is_none_or(|l| *v >= l)) {
            let a = &age + v.fraction();
            if a >= BigRational::one() {
                continue;
            }
            let mut grown = extras.clone();
            grown.push(v);
            let mut all = block_values.clone();
            all.extend(&grown);
            if allowed(&all) {
                out.push(grown.clone());
                frontier.push((grown, a));
            }
        }
    }
    out.sort();
    out
}

/// Enumerates imprimitive exceptional candidates and applies the square test.
///
/// The offsets `r` are those values for which `{e(r), e(r + 1/2)}` is a classified pair, plus
/// `r = 0` (eigenvalues `1, -1`). Candidates whose square fixes every line and is exceptional
/// are eliminated.
pub fn imprimitive_classification(f_max: u64) -> Result<ImprimitiveCases> {
    let sets: Vec<ValueSet> = candidate_value_sets(f_max)?.into_iter().map(|c| c.values).collect();
    let mut offsets = vec![RootOfUnity::ONE];
    for s in sets.iter().filter(|s| s.len() == 2) {
        if s[1].fraction() - s[0].fraction() == half().fraction() {
            offsets.push(s[0]);
        }
    }
    offsets.sort();
    offsets.dedup();
    let mut candidates = Vec::new();
    for &r in &offsets {
        let block = Spectrum::new(vec![r, r.mul(&half())])?;
        for extras in extra_options(&block, &sets) {
            let n = 2 + extras.len();
            let mut phases = vec![RootOfUnity::ONE; n];
            // 2-cycle with phase product e(2r)
            phases[0] = r.pow(2);
            phases[2..].copy_from_slice(&extras);
            let mut perm: Vec<usize> = (0..n).collect();
            perm.swap(0, 1);
            let element = MonomialElement::new(perm, phases)?;
            let spectrum = element.spectrum();
            let sq = element.compose(&element);
            let square = sq.spectrum();
            let square_is_diagonal = sq.is_diagonal();
            let eliminated = square_is_diagonal && square.is_exceptional();
            candidates.push(ImprimitiveCandidate {
                r,
                extras,
                age: Rational(spectrum.age()),
                element,
                spectrum,
                square_age: Rational(square.age()),
                square,
                square_is_diagonal,
                eliminated,
            });
        }
    }
    let survivors = candidates.iter().filter(|c| !c.eliminated).cloned().collect();
    Ok(ImprimitiveCases { block_offsets: offsets, candidates, survivors })
}

/// Numeric eigenvalues of the matrix realization, as fractions of a turn in `[0, 1)`.
/// Returns `None` if the Schur iteration fails to converge.
pub fn numeric_turns(m: &DMatrix<Complex64>) -> Option<Vec<f64>> {
    let n = m.nrows();
    // the plain QR sweep can stall on non-normal input; retry under fixed unitary conjugations
    let ev = (0..8).find_map(|k| {
        let a = if k == 0 {
            m.clone()
        } else {
            let g = DMatrix::from_fn(n, n, |i, j| {
                let z = Complex64::from_polar(1.0, 0.7 * (k * (i * n + j) * (i + 2 * j + 1)) as f64);
                if i == j {
                    z + 2.0
                } else {
                    z
                }
            });
            let q = g.qr().q();
            q.adjoint() * m * &q
        };
        nalgebra::Schur::try_new(a, 1e-14, 10_000).and_then(|s| s.eigenvalues())
    })?;
    let mut t: Vec<f64> = ev
        .iter()
        .map(|z| {
            let x = z.arg() / std::f64::consts::TAU;
            let x = if x < -1e-12 { x + 1.0 } else { x.max(0.0) };
            if x > 1.0 - 1e-12 {
                0.0
            } else {
                x
            }
        })
        .collect();
    t.sort_by(f64::total_cmp);
    Some(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, d: u64) -> RootOfUnity {
        RootOfUnity::new(a, d).unwrap()
    }

    #[test]
    fn spectra() {
        assert_eq!(MonomialElement::transposition(2, 0, 1).spectrum().to_string(), "{0/1, 1/2}");
        let d = MonomialElement::diagonal(vec![r(1, 2), r(0, 1), r(0, 1)]);
        assert_eq!(d.spectrum().to_string(), "{0/1, 0/1, 1/2}");
        let g = MonomialElement::new(vec![1, 0], vec![r(1, 4), r(0, 1)]).unwrap();
        assert_eq!(g.spectrum().to_string(), "{1/8, 5/8}");
    }

    #[test]
    fn composition_matches_matrices() {
        let g = MonomialElement::new(vec![2, 0, 1], vec![r(1, 3), r(1, 2), r(0, 1)]).unwrap();
        let h = MonomialElement::new(vec![1, 0, 2], vec![r(1, 4), r(0, 1), r(2, 3)]).unwrap();
        let lhs = g.compose(&h).to_complex_matrix();
        let rhs = g.to_complex_matrix() * h.to_complex_matrix();
        assert!((lhs - rhs).norm() < 1e-12);
        assert!(g.compose(&g.inverse()).is_identity());
    }

    #[test]
    fn spectrum_matches_numeric_eigenvalues() {
        let g = MonomialElement::new(vec![2, 0, 1, 3], vec![r(1, 3), r(1, 2), r(0, 1), r(5, 6)]).unwrap();
        let exact: Vec<f64> = g.spectrum().values().iter().map(RootOfUnity::to_f64).collect();
        let numeric = numeric_turns(&g.to_complex_matrix()).unwrap();
        for (a, b) in exact.iter().zip(&numeric) {
            assert!((a - b).abs() < 1e-9, "{exact:?} vs {numeric:?}");
        }
    }

    #[test]
    fn group_orders() {
        assert_eq!(g_group(2, 1, 2, 1000).unwrap().order(), 8);
        assert_eq!(g_group(1, 1, 3, 1000).unwrap().order(), 6);
        assert_eq!(g_group(4, 4, 2, 1000).unwrap().order(), 8);
        assert_eq!(g_group(3, 1, 1, 1000).unwrap().order(), 3);
        assert_eq!(g_group(6, 2, 1, 1000).unwrap().order(), 3);
        assert!(g_group(4, 3, 2, 1000).is_err());
        assert_eq!(g_group(6, 1, 4, 1000), Err(Error::CapExceeded { cap: 1000 }));
    }

    #[test]
    fn normal_closures() {
        let s3 = g_group(1, 1, 3, 100).unwrap();
        let t = MonomialElement::transposition(3, 0, 1);
        assert_eq!(normal_closure(&t, &s3).unwrap().order(), 6);
        let b2 = g_group(2, 1, 2, 100).unwrap();
        let refl = MonomialElement::diagonal(vec![r(1, 2), r(0, 1)]);
        let n = normal_closure(&refl, &b2).unwrap();
        assert_eq!(n.order(), 4);
        assert!(n.elements.iter().all(MonomialElement::is_diagonal));
        assert_eq!(normal_closure(&MonomialElement::identity(2), &b2).unwrap().order(), 1);
    }

    /// Brute force: the conjugates of `g` by every element, then a naive product closure.
    #[test]
    fn normal_closure_brute_force() {
        let g = g_group(3, 1, 2, 1000).unwrap();
        for x in g.elements.iter().step_by(5) {
            let class: HashSet<MonomialElement> =
                g.elements.iter().map(|h| h.compose(x).compose(&h.inverse())).collect();
            let mut set: HashSet<MonomialElement> = HashSet::from([MonomialElement::identity(2)]);
            loop {
                let grown: HashSet<MonomialElement> = set
                    .iter()
                    .flat_map(|a| class.iter().map(move |c| a.compose(c)))
                    .chain(set.iter().cloned())
                    .collect();
                if grown.len() == set.len() {
                    break;
                }
                set = grown;
            }
            assert_eq!(normal_closure(x, &g).unwrap().order(), set.len());
        }
    }

    #[test]
    fn prop_prod_examples() {
        let b3 = g_group(2, 1, 3, 1000).unwrap();
        assert_eq!(b3.order(), 48);
        let rep = prop_prod_check(&b3, false).unwrap();
        assert!(rep.violations.is_empty());
        assert!(rep.exceptional.iter().filter(|e| e.closure_index == 1).all(|e| e.element.is_transposition()));

        let s4 = g_group(1, 1, 4, 1000).unwrap();
        let rep = prop_prod_check(&s4, false).unwrap();
        assert_eq!(rep.exceptional.len(), 6);
        assert!(rep.exceptional.iter().all(|e| e.cycle_type == vec![2, 1, 1] && e.age == Rational::new(1, 2)));
        let rep = prop_prod_check(&MonomialGroup::trivial(3), false).unwrap();
        assert!(rep.exceptional.is_empty());
        let refl = prop_prod_check(&s4, true).unwrap();
        assert_eq!(refl.exceptional.len(), 6);
        assert!(prop_prod_check(&b3, true).is_err());
    }

    #[test]
    fn conjugation_invariance() {
        let g = g_group(4, 2, 3, 10_000).unwrap();
        for x in g.elements.iter().step_by(7) {
            for h in g.elements.iter().step_by(11) {
                assert_eq!(h.compose(x).compose(&h.inverse()).spectrum(), x.spectrum());
            }
        }
    }

    #[test]
    fn imprimitive_cases() {
        let cases = imprimitive_classification(24).unwrap();
        // {1/12, 7/12} passes the pair search too
        assert_eq!(cases.block_offsets, vec![r(0, 1), r(1, 12), r(1, 8), r(1, 6)]);
        let twelfth = cases.candidates.iter().find(|c| c.r == r(1, 12) && c.extras.is_empty()).unwrap();
        assert_eq!(twelfth.square_age, Rational::new(1, 3));
        assert_eq!(cases.survivors.len(), 1);
        let s = &cases.survivors[0];
        assert_eq!(s.spectrum.to_string(), "{0/1, 1/2}");
        assert!(s.extras.is_empty());
        let eighth = cases.candidates.iter().find(|c| c.r == r(1, 8) && c.extras.is_empty()).unwrap();
        assert_eq!(eighth.square.to_string(), "{1/4, 1/4}");
        assert_eq!(eighth.square_age, Rational::new(1, 2));
        assert!(eighth.eliminated);
        let third = cases.candidates.iter().find(|c| c.r == r(0, 1) && c.extras == vec![r(1, 3)]).unwrap();
        assert_eq!(third.square_age, Rational::new(2, 3));
        assert!(third.eliminated);
    }
}
