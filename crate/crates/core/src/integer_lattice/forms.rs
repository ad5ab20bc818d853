use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// Row-style Hermite normal form: returns `(H, U)` with `U·m = H`, `U` unimodular, pivots
/// positive and entries above each pivot reduced into `[0, pivot)`. Zero rows come last.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        for i in r + 1..rows {
            if h[(i, c)].is_zero() {
                continue;
            }
            let a = h[(r, c)].clone();
            let b = h[(i, c)].clone();
            let eg = a.extended_gcd(&b);
            let g = eg.gcd;
            let (p, q) = (-(&b / &g), &a / &g);
            let coeffs = [&eg.x, &eg.y, &p, &q];
            h.combine_rows(r, i, coeffs);
            u.combine_rows(r, i, coeffs);
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        let pivot = h[(r, c)].clone();
        for i in 0..r {
            let q = h[(i, c)].div_floor(&pivot);
            if !q.is_zero() {
                let k = -q;
                h.add_row_multiple(i, r, &k);
                u.add_row_multiple(i, r, &k);
            }
        }
        r += 1;
    }
    (h, u)
}

/// `U·M·V = D` with `U`, `V` unimodular and `D` diagonal, `d₁ | d₂ | …`, all `dᵢ ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

pub fn snf(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    'outer: for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = &d[(i, j)];
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break 'outer };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            let pivot = d[(t, t)].clone();
            let mut cleared = true;
            for i in t + 1..rows {
                let q = d[(i, t)].div_floor(&pivot);
                let k = -q;
                d.add_row_multiple(i, t, &k);
                u.add_row_multiple(i, t, &k);
                cleared &= d[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                let q = d[(t, j)].div_floor(&pivot);
                let k = -q;
                d.add_col_multiple(j, t, &k);
                v.add_col_multiple(j, t, &k);
                cleared &= d[(t, j)].is_zero();
            }
            if !cleared {
                continue;
            }
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&d[(i, j)] % &pivot).is_zero()));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithDecomposition { u, d, v }
}

/// A sublattice of `ℤⁿ`, stored by its Hermite basis (non-zero rows only).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Sublattice {
    ambient_rank: usize,
    basis: IntMatrix,
}

impl Sublattice {
    pub fn zero(n: usize) -> Self {
        Sublattice { ambient_rank: n, basis: IntMatrix::zeros(0, n) }
    }

    pub fn full(n: usize) -> Self {
        Sublattice { ambient_rank: n, basis: IntMatrix::identity(n) }
    }

    /// The lattice spanned by the rows of `generators`.
    pub fn span(generators: &IntMatrix) -> Self {
        let n = generators.cols();
        let (h, _) = hnf(generators);
        let keep: Vec<Vec<BigInt>> = h.row_vecs().into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
        Sublattice { ambient_rank: n, basis: IntMatrix::from_big_rows(keep, n).expect("consistent width") }
    }

    pub fn from_vectors(n: usize, vectors: &[Vec<i64>]) -> Result<Self> {
        if vectors.is_empty() {
            return Ok(Sublattice::zero(n));
        }
        let m = IntMatrix::from_rows(vectors)?;
        if m.cols() != n {
            return Err(Error::DimensionMismatch(format!("vectors of length {} in rank {n}", m.cols())));
        }
        Ok(Sublattice::span(&m))
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.ambient_rank
    }

    pub fn sum(&self, other: &Sublattice) -> Result<Sublattice> {
        if self.ambient_rank != other.ambient_rank {
            return Err(Error::DimensionMismatch("sublattices of different ambient rank".into()));
        }
        let mut rows = self.basis.row_vecs();
        rows.extend(other.basis.row_vecs());
        Ok(Sublattice::span(&IntMatrix::from_big_rows(rows, self.ambient_rank)?))
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        if v.len() != self.ambient_rank {
            return false;
        }
        let mut rows = self.basis.row_vecs();
        rows.push(v.to_vec());
        let grown = Sublattice::span(&IntMatrix::from_big_rows(rows, self.ambient_rank).expect("width"));
        grown == *self
    }

    pub fn is_saturated(&self) -> bool {
        saturate(self) == *self
    }

    /// Index of the lattice inside its saturation.
    pub fn saturation_index(&self) -> BigInt {
        snf(&self.basis).diagonal().iter().fold(BigInt::one(), |acc, x| acc * x)
    }

    /// A unimodular `P` whose first `rank` columns span the saturation of this lattice.
    pub fn adapted_basis(&self) -> IntMatrix {
        let n = self.ambient_rank;
        if self.rank() == 0 {
            return IntMatrix::identity(n);
        }
        let s = snf(&self.basis);
        s.v.inverse_unimodular().expect("unimodular").transpose()
    }
}

/// Largest sublattice with the same rational span.
pub fn saturate(s: &Sublattice) -> Sublattice {
    let k = s.rank();
    if k == 0 {
        return s.clone();
    }
    let dec = snf(&s.basis);
    let vinv = dec.v.inverse_unimodular().expect("unimodular");
    Sublattice::span(&vinv.submatrix(0..k, 0..s.ambient_rank))
}

/// Column span `m·ℤᶜ` inside `ℤʳ`.
pub fn image_lattice(m: &IntMatrix) -> Sublattice {
    Sublattice::span(&m.transpose())
}

/// `{x ∈ ℤᶜ : m·x = 0}`.
pub fn kernel_lattice(m: &IntMatrix) -> Sublattice {
    let (h, u) = hnf(&m.transpose());
    let zero_rows: Vec<Vec<BigInt>> =
        (0..h.rows()).filter(|&i| h.row(i).iter().all(Zero::is_zero)).map(|i| u.row(i).to_vec()).collect();
    if zero_rows.is_empty() {
        return Sublattice::zero(m.cols());
    }
    Sublattice::span(&IntMatrix::from_big_rows(zero_rows, m.cols()).expect("width"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn check_hnf(a: &IntMatrix) {
        let (h, u) = hnf(a);
        assert!(u.is_unimodular());
        assert_eq!(u.mul(a).unwrap(), h);
        // echelon shape with positive, reducing pivots and zero rows last
        let mut last: Option<usize> = None;
        let mut seen_zero = false;
        for i in 0..h.rows() {
            match (0..h.cols()).find(|&j| !h[(i, j)].is_zero()) {
                Some(p) => {
                    assert!(!seen_zero);
                    assert!(last.is_none_or(|l| p > l));
                    assert!(h[(i, p)].is_positive());
                    for k in 0..i {
                        assert!(!h[(k, p)].is_negative() && h[(k, p)] < h[(i, p)]);
                    }
                    last = Some(p);
                }
                None => seen_zero = true,
            }
        }
    }

    fn check_snf(a: &IntMatrix) {
        let s = snf(a);
        assert!(s.u.is_unimodular() && s.v.is_unimodular());
        assert_eq!(s.u.mul(a).unwrap().mul(&s.v).unwrap(), s.d);
        let diag = s.diagonal();
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }

    #[test]
    fn hnf_examples() {
        let (h, _) = hnf(&IntMatrix::identity(3));
        assert!(h.is_identity());
        let a = m(&[&[2, 4], &[0, 6]]);
        assert_eq!(hnf(&a).0, a);
        let (h, u) = hnf(&m(&[&[0, 1], &[1, 0]]));
        assert!(h.is_identity());
        assert_eq!(u, m(&[&[0, 1], &[1, 0]]));
        for a in [m(&[&[3, 5, 7], &[2, 4, 6]]), m(&[&[0, 0], &[0, 0]]), m(&[&[-4, 6], &[6, -9], &[2, 2]])] {
            check_hnf(&a);
        }
    }

    #[test]
    fn snf_examples() {
        assert_eq!(snf(&IntMatrix::diagonal(&[6, 4])).diagonal(), vec![BigInt::from(2), BigInt::from(12)]);
        assert!(snf(&IntMatrix::zeros(2, 3)).d.is_zero());
        assert_eq!(snf(&m(&[&[1, 2], &[3, 4]])).diagonal(), vec![BigInt::from(1), BigInt::from(2)]);
        for a in [m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]), m(&[&[0, 3], &[0, 0], &[5, 0]])] {
            check_snf(&a);
        }
        assert_eq!(
            snf(&m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])).diagonal(),
            [2, 6, 12].map(BigInt::from).to_vec()
        );
    }

    #[test]
    fn saturation() {
        let s = Sublattice::from_vectors(2, &[vec![2, 0]]).unwrap();
        assert_eq!(saturate(&s), Sublattice::from_vectors(2, &[vec![1, 0]]).unwrap());
        let s = Sublattice::from_vectors(2, &[vec![1, 2], vec![-2, 1]]).unwrap();
        assert_eq!(m(&[&[1, 2], &[-2, 1]]).det().unwrap(), BigInt::from(5));
        assert_eq!(s.saturation_index(), BigInt::from(5));
        assert_eq!(saturate(&s), Sublattice::full(2));
        let t = Sublattice::from_vectors(3, &[vec![1, -1, 0]]).unwrap();
        assert_eq!(saturate(&t), t);
        assert!(t.is_saturated());
        assert_eq!(saturate(&Sublattice::zero(3)), Sublattice::zero(3));
    }

    #[test]
    fn kernel_and_image() {
        let a = m(&[&[1, 1, 1]]);
        let k = kernel_lattice(&a);
        assert_eq!(k.rank(), 2);
        assert!(k.contains(&[1, -1, 0].map(BigInt::from)));
        assert!(k.is_saturated());
        let swap_minus_id = m(&[&[-1, 1], &[1, -1]]);
        assert_eq!(image_lattice(&swap_minus_id), Sublattice::from_vectors(2, &[vec![1, -1]]).unwrap());
    }

    #[test]
    fn adapted_basis_columns() {
        let s = Sublattice::from_vectors(3, &[vec![1, -1, 0], vec![0, 1, -1]]).unwrap();
        let p = s.adapted_basis();
        assert!(p.is_unimodular());
        let first = Sublattice::span(&p.transpose().submatrix(0..2, 0..3));
        assert_eq!(first, s);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn matrix() -> impl Strategy<Value = IntMatrix> {
            (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
                prop::collection::vec(-20i64..=20, r * c)
                    .prop_map(move |v| IntMatrix::from_vec(r, c, v.into_iter().map(BigInt::from).collect()).unwrap())
            })
        }

        proptest! {
            #[test]
            fn hnf_reconstructs(a in matrix()) {
                check_hnf(&a);
            }

            #[test]
            fn snf_reconstructs(a in matrix()) {
                check_snf(&a);
            }

            #[test]
            fn saturation_idempotent(a in matrix()) {
                let s = Sublattice::span(&a);
                let t = saturate(&s);
                prop_assert_eq!(saturate(&t), t.clone());
                prop_assert_eq!(t.rank(), s.rank());
                prop_assert!(t.sum(&s).unwrap() == t);
            }
        }
    }
}
