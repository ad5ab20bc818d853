//! Brute-force oracles shared by integration and acceptance tests. They use `i64` rationals
//! and floating point only, never the library's lattice code.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use num_rational::Ratio;

pub type Q = Ratio<i64>;
pub type Affine = (Vec<Vec<i64>>, Vec<Q>);

fn frac(x: Q) -> Q {
    x - x.floor()
}

pub fn compose(g: &Affine, h: &Affine) -> Affine {
    let n = g.0.len();
    let m: Vec<Vec<i64>> =
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| g.0[i][k] * h.0[k][j]).sum()).collect()).collect();
    let t: Vec<Q> = (0..n).map(|i| frac((0..n).fold(g.1[i], |acc, k| acc + Q::from(g.0[i][k]) * h.1[k]))).collect();
    (m, t)
}

/// Product closure by repeated multiplication.
pub fn closure(gens: &[Affine]) -> Vec<Affine> {
    let n = gens[0].0.len();
    let id: Affine = ((0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect(), vec![Q::from(0); n]);
    let mut set: BTreeSet<Affine> = BTreeSet::from([id]);
    let mut frontier: Vec<Affine> = set.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for g in gens {
                let y = compose(x, g);
                if set.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    set.into_iter().collect()
}

/// Points of `(1/N)ℤⁿ ∩ [0,1)ⁿ` for every `N ≤ max_den`.
pub fn grid(n: usize, max_den: i64) -> Vec<Vec<Q>> {
    let mut out = BTreeSet::new();
    for den in 1..=max_den {
        let total = (den as usize).pow(n as u32);
        for idx in 0..total {
            let mut k = idx;
            let x: Vec<Q> = (0..n)
                .map(|_| {
                    let c = (k % den as usize) as i64;
                    k /= den as usize;
                    Q::new(c, den)
                })
                .collect();
            out.insert(x);
        }
    }
    out.into_iter().collect()
}

/// `M·x + t − x`.
pub fn displacement(g: &Affine, x: &[Q]) -> Vec<Q> {
    let n = x.len();
    (0..n).map(|i| (0..n).fold(g.1[i] - x[i], |acc, k| acc + Q::from(g.0[i][k]) * x[k])).collect()
}

pub fn fixes(g: &Affine, x: &[Q]) -> bool {
    displacement(g, x).iter().all(|v| v.is_integer())
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &v)| v).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![Vec::new()];
    }
    (0..n)
        .flat_map(|last| {
            subsets(last, r - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

/// Rank over ℚ and the gcd of all non-zero maximal minors.
pub fn rank_and_minor_gcd(m: &[Vec<i64>]) -> (usize, i64) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    for r in (1..=rows.min(cols)).rev() {
        let mut g = 0;
        for rs in subsets(rows, r) {
            for cs in subsets(cols, r) {
                let sub: Vec<Vec<i64>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j]).collect()).collect();
                g = gcd(g, det(&sub));
            }
        }
        if g != 0 {
            return (r, g);
        }
    }
    (0, 1)
}

/// A grid denominator that is guaranteed to contain a fixed point whenever one exists:
/// `den(t)` times the gcd of the maximal non-vanishing minors of `M − I`.
pub fn fixed_point_grid_bound(g: &Affine) -> i64 {
    let n = g.0.len();
    let a: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| g.0[i][j] - i64::from(i == j)).collect()).collect();
    let (_, minors) = rank_and_minor_gcd(&a);
    let den = g.1.iter().fold(1, |acc, t| acc / gcd(acc, *t.denom()) * t.denom());
    den * minors
}

pub fn grid_fixed_points(g: &Affine, den: i64) -> Vec<Vec<Q>> {
    let n = g.0.len();
    let total = (den as usize).pow(n as u32);
    (0..total)
        .filter_map(|idx| {
            let mut k = idx;
            let x: Vec<Q> = (0..n)
                .map(|_| {
                    let c = (k % den as usize) as i64;
                    k /= den as usize;
                    Q::new(c, den)
                })
                .collect();
            fixes(g, &x).then_some(x)
        })
        .collect()
}

fn to_f64(m: &[Vec<i64>]) -> DMatrix<f64> {
    let n = m.len();
    DMatrix::from_fn(n, m[0].len(), |i, j| m[i][j] as f64)
}

fn turns(ev: impl IntoIterator<Item = num_complex::Complex<f64>>) -> Vec<f64> {
    ev.into_iter()
        .map(|z| {
            let t = z.arg() / std::f64::consts::TAU;
            let t = if t < -1e-9 { t + 1.0 } else { t.max(0.0) };
            if t > 1.0 - 1e-9 {
                0.0
            } else {
                t
            }
        })
        .collect()
}

/// Columns spanning a real subspace, reduced to an orthonormal basis.
fn orthonormal(cols: &[Vec<f64>], n: usize) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    for c in cols {
        let mut v = c.clone();
        for _ in 0..2 {
            for b in &out {
                let p: f64 = b.iter().zip(&v).map(|(x, y)| x * y).sum();
                v.iter_mut().zip(b).for_each(|(x, y)| *x -= p * y);
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-8 {
            out.push(v.iter().map(|x| x / norm).collect());
        }
    }
    debug_assert!(out.len() <= n);
    out
}

/// Eigenvalues through a bounded complex Schur iteration. The unshifted QR sweep stalls on
/// some non-normal integer matrices, so on failure the input is conjugated by a fixed unitary
/// and retried.
pub fn eigenvalues(m: &DMatrix<f64>) -> Vec<Complex64> {
    let n = m.nrows();
    let c = m.map(|x| Complex64::new(x, 0.0));
    for k in 0..8 {
        let a = if k == 0 {
            c.clone()
        } else {
            let g = DMatrix::from_fn(n, n, |i, j| {
                let phase = 0.7 * (k * (i * n + j) * (i + 2 * j + 1)) as f64;
                Complex64::from_polar(1.0, phase)
                    + if i == j { Complex64::new(2.0, 0.0) } else { Complex64::new(0.0, 0.0) }
            });
            let q = g.qr().q();
            q.adjoint() * &c * &q
        };
        if let Some(ev) = Schur::try_new(a, 1e-14, 10_000).and_then(|s| s.eigenvalues()) {
            return ev.iter().copied().collect();
        }
    }
    panic!("Schur iteration did not converge")
}

/// Age of `M` acting on `ℂⁿ / L_ℂ`, from numeric eigenvalues.
fn quotient_age(m: &[Vec<i64>], l: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let full = turns(eigenvalues(&to_f64(m)));
    let mut rest = full.clone();
    if !l.is_empty() {
        let b = DMatrix::from_fn(n, l.len(), |i, j| l[j][i]);
        // L is M-invariant and b is orthonormal, so bᵀ·M·b is the restriction
        let r = b.transpose() * to_f64(m) * &b;
        for t in turns(eigenvalues(&r)) {
            let pos = rest
                .iter()
                .position(|&u| (u - t).abs() < 1e-6 || (u - t).abs() > 1.0 - 1e-6)
                .expect("restricted eigenvalue occurs in the full spectrum");
            rest.remove(pos);
        }
    }
    rest.iter().sum()
}

fn key(v: &[f64]) -> Vec<i64> {
    let s = 1e6 * std::f64::consts::SQRT_2;
    v.iter().map(|x| (x * s).round() as i64).collect()
}

fn project(v: &[f64], l: &[Vec<f64>]) -> Vec<f64> {
    let mut w = v.to_vec();
    for b in l {
        let p: f64 = b.iter().zip(&w).map(|(x, y)| x * y).sum();
        w.iter_mut().zip(b).for_each(|(x, y)| *x -= p * y);
    }
    w
}

/// Projections of small integer vectors orthogonal to `L`: `v ∈ L_ℝ + ℤⁿ` iff the projection
/// of `v` is the projection of some integer vector.
fn lattice_shadow(n: usize, l: &[Vec<f64>], bound: i64) -> HashSet<Vec<i64>> {
    let side = (2 * bound + 1) as usize;
    (0..side.pow(n as u32))
        .map(|idx| {
            let mut k = idx;
            let z: Vec<f64> = (0..n)
                .map(|_| {
                    let c = (k % side) as i64 - bound;
                    k /= side;
                    c as f64
                })
                .collect();
            key(&project(&z, l))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleVerdict {
    KodairaZero,
    UniruledNotRc,
    RationallyConnected,
}

#[derive(Debug, Clone)]
pub struct OracleReport {
    pub group_order: usize,
    /// Elements with a grid fixed point and age strictly between 0 and 1.
    pub exceptional: Vec<Affine>,
    pub chain_ranks: Vec<usize>,
    pub verdict: OracleVerdict,
}

/// Fixed points on a grid of denominators at most `max_den`, ages from numeric eigenvalues,
/// applied stage by stage to the quotients by the growing subtorus.
pub fn torus_oracle(gens: &[Affine], max_den: i64) -> OracleReport {
    let n = gens[0].0.len();
    let elements = closure(gens);
    let points = grid(n, max_den);
    let mut l: Vec<Vec<f64>> = Vec::new();
    let mut chain = Vec::new();
    let mut first_exceptional = None;
    loop {
        let shadow = lattice_shadow(n, &l, 4);
        let exceptional: Vec<Affine> = elements
            .iter()
            .filter(|g| {
                let age = quotient_age(&g.0, &l);
                age > 1e-9 && age < 1.0 - 1e-9
            })
            .filter(|g| {
                points.iter().any(|x| {
                    let d: Vec<f64> =
                        displacement(g, x).iter().map(|q| *q.numer() as f64 / *q.denom() as f64).collect();
                    shadow.contains(&key(&project(&d, &l)))
                })
            })
            .cloned()
            .collect();
        if first_exceptional.is_none() {
            first_exceptional = Some(exceptional.clone());
        }
        let mut cols = l.clone();
        for g in &exceptional {
            for j in 0..n {
                cols.push((0..n).map(|i| (g.0[i][j] - i64::from(i == j)) as f64).collect());
            }
        }
        let grown = orthonormal(&cols, n);
        if grown.len() == l.len() {
            break;
        }
        l = grown;
        chain.push(l.len());
    }
    let exceptional = first_exceptional.unwrap_or_default();
    let verdict = if exceptional.is_empty() {
        OracleVerdict::KodairaZero
    } else if chain.last() == Some(&n) {
        OracleVerdict::RationallyConnected
    } else {
        OracleVerdict::UniruledNotRc
    };
    OracleReport { group_order: elements.len(), exceptional, chain_ranks: chain, verdict }
}

pub fn affine(rows: &[&[i64]], t: &[(i64, i64)]) -> Affine {
    (rows.iter().map(|r| r.to_vec()).collect(), t.iter().map(|&(a, b)| Q::new(a, b)).collect())
}

/// The four reference actions: `{±1}` on rank 1, `±I` on rank 2, `S₃ × {±1}` on rank 3 and
/// the coordinate swap on rank 2.
pub fn reference_actions() -> Vec<(&'static str, Vec<Affine>)> {
    let z = (0, 1);
    vec![
        ("rank1-pm1", vec![affine(&[&[-1]], &[z])]),
        ("kummer2", vec![affine(&[&[-1, 0], &[0, -1]], &[z, z])]),
        (
            "s3-pm1",
            vec![
                affine(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]], &[z, z, z]),
                affine(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]], &[z, z, z]),
                affine(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, -1]], &[z, z, z]),
            ],
        ),
        ("swap2", vec![affine(&[&[0, 1], &[1, 0]], &[z, z])]),
    ]
}
