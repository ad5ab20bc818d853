//! Deviation of unitary operators, `d(T, B) = Σ_{b ∈ B} ‖T(b) − b‖`, and the numeric bounds
//! built on it.
//!
//! The infimum over all bases is never computed; every check here is relative to explicit
//! bases.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial_groups::MonomialGroup;
use crate::roots_of_unity::RootOfUnity;
use crate::spectra::{rational_to_f64, Spectrum};

pub type CMatrix = DMatrix<Complex64>;

/// Tolerance for unitarity, orthonormality and all checked identities.
pub const TOLERANCE: f64 = 1e-9;

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn unitary_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    max_abs(&(m * m.adjoint() - CMatrix::identity(n, n)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryMatrix(CMatrix);

impl UnitaryMatrix {
    pub fn new(m: CMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
        }
        let defect = unitary_defect(&m);
        if defect > TOLERANCE {
            return Err(Error::NotUnitary(defect));
        }
        Ok(UnitaryMatrix(m))
    }

    /// From rows of `[re, im]` pairs.
    pub fn from_pairs(rows: &[Vec<[f64; 2]>]) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::NotSquare { rows: n, cols: r.len() });
        }
        Self::new(CMatrix::from_fn(n, n, |i, j| Complex64::new(rows[i][j][0], rows[i][j][1])))
    }

    pub fn diagonal(s: &Spectrum) -> Self {
        let d: Vec<Complex64> = s.values().iter().map(RootOfUnity::to_complex).collect();
        UnitaryMatrix(CMatrix::from_diagonal(&nalgebra::DVector::from_vec(d)))
    }

    pub fn dimension(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn mul(&self, other: &UnitaryMatrix) -> UnitaryMatrix {
        UnitaryMatrix(&self.0 * &other.0)
    }
}

/// An orthonormal basis, stored as the columns of a unitary matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Basis {
    pub label: String,
    vectors: CMatrix,
}

impl Basis {
    pub fn new(label: impl Into<String>, vectors: CMatrix) -> Result<Self> {
        if !vectors.is_square() {
            return Err(Error::NotSquare { rows: vectors.nrows(), cols: vectors.ncols() });
        }
        let n = vectors.ncols();
        let defect = max_abs(&(vectors.adjoint() * &vectors - CMatrix::identity(n, n)));
        if defect > TOLERANCE {
            return Err(Error::NotOrthonormal(defect));
        }
        Ok(Basis { label: label.into(), vectors })
    }

    pub fn standard(n: usize) -> Self {
        Basis { label: "standard".into(), vectors: CMatrix::identity(n, n) }
    }

    pub fn dimension(&self) -> usize {
        self.vectors.nrows()
    }

    pub fn vectors(&self) -> &CMatrix {
        &self.vectors
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeviationReport {
    pub basis: String,
    /// `‖T(b) − b‖` for each basis vector, in basis order.
    pub distances: Vec<f64>,
    pub total: f64,
}

impl DeviationReport {
    /// `|S(T, B, x)|`: basis vectors moved by at least `x`.
    pub fn threshold_count(&self, x: f64) -> usize {
        self.distances.iter().filter(|&&d| d >= x).count()
    }

    /// Indices of the vectors in `S(T, B, x)`.
    pub fn threshold_set(&self, x: f64) -> Vec<usize> {
        (0..self.distances.len()).filter(|&i| self.distances[i] >= x).collect()
    }
}

pub fn deviation_wrt_basis(t: &UnitaryMatrix, b: &Basis) -> Result<DeviationReport> {
    if t.dimension() != b.dimension() {
        return Err(Error::DimensionMismatch(format!("operator {} vs basis {}", t.dimension(), b.dimension())));
    }
    let moved = t.matrix() * b.vectors() - b.vectors();
    let distances: Vec<f64> = moved.column_iter().map(|c| c.norm()).collect();
    Ok(DeviationReport { basis: b.label.clone(), total: distances.iter().sum(), distances })
}

/// Deviation in an eigenbasis: `|e(r) − 1| = 2 sin(π r)` per eigenvalue.
pub fn eigenbasis_deviation(s: &Spectrum) -> f64 {
    s.values().iter().map(|z| 2.0 * (PI * z.to_f64()).sin()).sum()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdCheck {
    pub x: f64,
    /// `|S(T₁⋯Tₙ, B, n·x)|`.
    pub product_count: usize,
    /// `Σ |S(Tᵢ, Bᵢ, x)|`.
    pub factor_count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductBoundReport {
    pub factors: usize,
    pub dimension: usize,
    pub factor_deviations: Vec<f64>,
    /// Deviation of the product in the adapted basis.
    pub product_deviation: f64,
    pub bound: f64,
    pub thresholds: Vec<ThresholdCheck>,
    pub violations: Vec<ThresholdCheck>,
    pub holds: bool,
}

/// Orthonormal basis adapted to the chain `V_x = span ⋃ S(Tᵢ, Bᵢ, x)`: basis vectors are fed
/// to Gram-Schmidt in order of decreasing distance, so each `V_x` is spanned by an initial
/// segment.
fn adapted_basis(bases: &[Basis], reports: &[DeviationReport]) -> Result<Basis> {
    let n = bases[0].dimension();
    let mut order: Vec<(f64, usize, usize)> = reports
        .iter()
        .enumerate()
        .flat_map(|(i, r)| r.distances.iter().enumerate().map(move |(j, &d)| (d, i, j)))
        .collect();
    order.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut cols: Vec<nalgebra::DVector<Complex64>> = Vec::with_capacity(n);
    for (_, i, j) in order {
        if cols.len() == n {
            break;
        }
        let mut v = bases[i].vectors().column(j).into_owned();
        for _ in 0..2 {
            for c in &cols {
                let p = c.dotc(&v);
                v -= c * p;
            }
        }
        let norm = v.norm();
        if norm > 1e-7 {
            cols.push(v / Complex64::new(norm, 0.0));
        }
    }
    Basis::new("adapted", CMatrix::from_columns(&cols))
}

/// Verifies `|S(T₁⋯Tₙ, B, n·x)| ≤ Σ |S(Tᵢ, Bᵢ, x)|` at every jump and
/// `d(T₁⋯Tₙ, B) ≤ n · Σ d(Tᵢ, Bᵢ)` in the adapted basis `B`.
pub fn product_bound_check(ts: &[UnitaryMatrix], bases: &[Basis]) -> Result<ProductBoundReport> {
    if ts.is_empty() || ts.len() != bases.len() {
        return Err(Error::DimensionMismatch(format!("{} operators with {} bases", ts.len(), bases.len())));
    }
    let dim = ts[0].dimension();
    let reports = ts.iter().zip(bases).map(|(t, b)| deviation_wrt_basis(t, b)).collect::<Result<Vec<_>>>()?;
    if ts.iter().any(|t| t.dimension() != dim) {
        return Err(Error::DimensionMismatch("operators of different dimensions".into()));
    }
    let b = adapted_basis(bases, &reports)?;
    let product = ts[1..].iter().fold(ts[0].clone(), |acc, t| acc.mul(t));
    let pr = deviation_wrt_basis(&product, &b)?;
    let n = ts.len() as f64;

    let mut xs: Vec<f64> = reports.iter().flat_map(|r| r.distances.iter().copied()).collect();
    xs.extend(pr.distances.iter().map(|d| d / n));
    xs.retain(|&x| x > TOLERANCE);
    let above: Vec<f64> = xs.iter().map(|x| x + 1e-7).collect();
    xs.extend(above);
    xs.sort_by(f64::total_cmp);
    xs.dedup_by(|a, b| (*a - *b).abs() < 1e-12);

    // the product side is counted strictly, the factor side leniently, so rounding never
    // manufactures a violation
    let thresholds: Vec<ThresholdCheck> = xs
        .into_iter()
        .map(|x| ThresholdCheck {
            x,
            product_count: pr.distances.iter().filter(|&&d| d > n * x + TOLERANCE).count(),
            factor_count: reports.iter().map(|r| r.distances.iter().filter(|&&d| d >= x - TOLERANCE).count()).sum(),
        })
        .collect();
    let violations: Vec<ThresholdCheck> =
        thresholds.iter().filter(|c| c.product_count > c.factor_count).cloned().collect();
    let factor_deviations: Vec<f64> = reports.iter().map(|r| r.total).collect();
    let bound = n * factor_deviations.iter().sum::<f64>();
    let holds = violations.is_empty() && pr.total <= bound + TOLERANCE;
    Ok(ProductBoundReport {
        factors: ts.len(),
        dimension: dim,
        factor_deviations,
        product_deviation: pr.total,
        bound,
        thresholds,
        violations,
        holds,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub group_order: usize,
    pub average_trace: f64,
    pub dimension: usize,
    /// Index of an element with `Re tr ≤ 0`, reported when there are no invariants.
    pub witness: Option<usize>,
    pub witness_trace: Option<f64>,
}

/// `dim V^G` as the average of `Re tr(g)` over a finite group given by all its elements.
pub fn invariant_dimension(elements: &[CMatrix]) -> Result<InvariantReport> {
    if elements.is_empty() {
        return Err(Error::InvalidArgument("empty group".into()));
    }
    let traces: Vec<f64> = elements.iter().map(|g| g.trace().re).collect();
    let average = traces.iter().sum::<f64>() / traces.len() as f64;
    let rounded = average.round();
    if (average - rounded).abs() > 1e-6 || rounded < 0.0 {
        return Err(Error::InconsistentAverage(average));
    }
    let dimension = rounded as usize;
    let witness = if dimension == 0 { traces.iter().position(|&t| t <= TOLERANCE) } else { None };
    Ok(InvariantReport {
        group_order: elements.len(),
        average_trace: average,
        dimension,
        witness,
        witness_trace: witness.map(|i| traces[i]),
    })
}

pub fn invariant_dimension_of_group(g: &MonomialGroup) -> Result<InvariantReport> {
    let mats: Vec<CMatrix> = g.elements.iter().map(|e| e.to_complex_matrix()).collect();
    invariant_dimension(&mats)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TensorTraceReport {
    pub factors: usize,
    pub dimension: usize,
    /// `[re, im]` of the trace of the cyclic operator.
    pub operator_trace: [f64; 2],
    /// `[re, im]` of `tr(Tₙ ⋯ T₁)`.
    pub product_trace: [f64; 2],
    /// `(dim V)^(n-1)`.
    pub bound: f64,
    pub identity_holds: bool,
    pub bound_holds: bool,
}

/// Largest tensor power built explicitly.
pub const TENSOR_DIM_CAP: usize = 4096;

/// The operator `v₁ ⊗ ⋯ ⊗ vₙ ↦ Tₙ(vₙ) ⊗ T₁(v₁) ⊗ ⋯ ⊗ Tₙ₋₁(vₙ₋₁)` as a dense matrix.
pub fn cyclic_tensor_operator(ts: &[CMatrix]) -> Result<CMatrix> {
    let n = ts.len();
    if n == 0 {
        return Err(Error::InvalidArgument("no factors".into()));
    }
    let d = ts[0].nrows();
    if ts.iter().any(|t| !t.is_square() || t.nrows() != d) {
        return Err(Error::DimensionMismatch("factors must be square of equal size".into()));
    }
    let total =
        d.checked_pow(n as u32).filter(|&t| t <= TENSOR_DIM_CAP).ok_or(Error::CapExceeded { cap: TENSOR_DIM_CAP })?;
    // multi-index (i₁, …, iₙ) ↔ Σ i_k d^(n-1-k)
    let digits = |mut idx: usize| {
        let mut out = vec![0; n];
        for k in (0..n).rev() {
            out[k] = idx % d;
            idx /= d;
        }
        out
    };
    let mut op = CMatrix::zeros(total, total);
    for col in 0..total {
        let i = digits(col);
        for row in 0..total {
            let j = digits(row);
            // output slot 0 carries Tₙ(v_n); slot k carries T_k(v_k)
            let mut c = ts[n - 1][(j[0], i[n - 1])];
            for k in 1..n {
                c *= ts[k - 1][(j[k], i[k - 1])];
            }
            op[(row, col)] = c;
        }
    }
    Ok(op)
}

pub fn tensor_perm_trace_check(ts: &[CMatrix]) -> Result<TensorTraceReport> {
    let op = cyclic_tensor_operator(ts)?;
    let d = ts[0].nrows();
    let n = ts.len();
    let product = ts.iter().fold(CMatrix::identity(d, d), |acc, t| t * acc);
    let a = op.trace();
    let b = product.trace();
    let bound = (d as f64).powi(n as i32 - 1);
    Ok(TensorTraceReport {
        factors: n,
        dimension: d,
        operator_trace: [a.re, a.im],
        product_trace: [b.re, b.im],
        bound,
        identity_holds: (a - b).norm() <= TOLERANCE * (1.0 + b.norm()),
        bound_holds: a.norm() <= bound + TOLERANCE,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtraspecialReport {
    pub p: u64,
    pub n_exp: u32,
    pub m: u64,
    /// `m · pⁿ`.
    pub dimension: u64,
    /// Each `e(j/p)` with multiplicity `m · pⁿ⁻¹`.
    pub spectrum: Spectrum,
    /// Chord deviation in the eigenbasis.
    pub eigenbasis_deviation: f64,
    /// `2π · m pⁿ⁻¹ · p(p−1)/(2p)`: the turn-length sum `2π Σ j/p` over the spectrum.
    pub lower_bound: f64,
    /// `2π m pⁿ / 4`.
    pub final_bound: f64,
    /// `lower_bound ≥ final_bound`.
    pub chain_holds: bool,
    /// `final_bound < 8π`, equivalently `m pⁿ < 16`.
    pub survives: bool,
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

pub fn extraspecial_bound(p: u64, n_exp: u32, m: u64) -> Result<ExtraspecialReport> {
    if !is_prime(p) || n_exp == 0 || m == 0 {
        return Err(Error::InvalidArgument(format!("need p prime, n >= 1, m >= 1; got ({p}, {n_exp}, {m})")));
    }
    let mult = m * p.pow(n_exp - 1);
    let dimension = mult * p;
    if dimension > 1 << 16 {
        return Err(Error::CapExceeded { cap: 1 << 16 });
    }
    let mut values = Vec::with_capacity(dimension as usize);
    for j in 0..p {
        values.extend(std::iter::repeat_n(RootOfUnity::new(j as i64, p)?, mult as usize));
    }
    let spectrum = Spectrum::new(values)?;
    let lower_bound = 2.0 * PI * rational_to_f64(&spectrum.age());
    let final_bound = 2.0 * PI * dimension as f64 / 4.0;
    Ok(ExtraspecialReport {
        p,
        n_exp,
        m,
        dimension,
        eigenbasis_deviation: eigenbasis_deviation(&spectrum),
        spectrum,
        lower_bound,
        final_bound,
        chain_holds: lower_bound + TOLERANCE >= final_bound,
        survives: final_bound < 8.0 * PI,
    })
}

/// Every `(p, n, m)` with `m pⁿ ≤ max_dim`, ordered by dimension.
pub fn extraspecial_scan(max_dim: u64) -> Vec<ExtraspecialReport> {
    let mut out = Vec::new();
    for p in (2..=max_dim).filter(|&p| is_prime(p)) {
        let mut pn = p;
        let mut n = 1;
        while pn <= max_dim {
            for m in 1..=max_dim / pn {
                out.push(extraspecial_bound(p, n, m).expect("valid parameters"));
            }
            n += 1;
            pn *= p;
        }
    }
    out.sort_by_key(|r| (r.dimension, r.p, r.n_exp, r.m));
    out
}

/// A unitary matrix from the QR factorization of a random complex matrix.
pub fn random_unitary<R: Rng>(dim: usize, rng: &mut R) -> CMatrix {
    loop {
        let a =
            CMatrix::from_fn(dim, dim, |_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
        let qr = a.qr();
        if qr.r().diagonal().iter().all(|z| z.norm() > 1e-6) {
            return qr.q();
        }
    }
}

/// `U · diag(e(kᵢ/N)) · U*` with random `N ≤ max_order`, together with its eigenbasis `U`.
pub fn random_finite_order<R: Rng>(dim: usize, max_order: u64, rng: &mut R) -> (UnitaryMatrix, Basis) {
    let u = random_unitary(dim, rng);
    let order = rng.random_range(1..=max_order);
    let d: Vec<Complex64> = (0..dim)
        .map(|_| RootOfUnity::new(rng.random_range(0..order) as i64, order).expect("positive").to_complex())
        .collect();
    let t = &u * CMatrix::from_diagonal(&nalgebra::DVector::from_vec(d)) * u.adjoint();
    (UnitaryMatrix(t), Basis { label: "eigenbasis".into(), vectors: u })
}
