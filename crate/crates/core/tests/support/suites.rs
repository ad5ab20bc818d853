//! Seeded property suites, parameterized by trial count so the acceptance run can use the full
//! sizes while ordinary test runs stay quick.
#![allow(dead_code)]

use std::f64::consts::TAU;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reidtai_core::deviation::{
    eigenbasis_deviation, product_bound_check, random_finite_order, random_unitary, tensor_perm_trace_check, CMatrix,
};
use reidtai_core::integer_lattice::{cyclotomic_spectrum, hnf, snf, solve_torus_congruence};
use reidtai_core::IntMatrix;

use super::oracles::{self, Q};
use super::random;

#[derive(Debug)]
pub struct Outcome {
    pub trials: usize,
    pub failures: Vec<String>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        match self.failures.first() {
            None => format!("{} trials", self.trials),
            Some(f) => format!("{} of {} trials failed; first: {f}", self.failures.len(), self.trials),
        }
    }
}

/// Chord ≤ arc: `eigenbasis_deviation(s) ≤ 2π·age(s)`, strict unless the age is zero, and
/// below `2π` for every exceptional spectrum.
pub fn chord_arc(trials: usize, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for k in 0..trials {
        let s = if k % 2 == 0 { random::spectrum(&mut rng) } else { random::small_age_spectrum(&mut rng) };
        let dev = eigenbasis_deviation(&s);
        let age = s.age();
        let arc = TAU * age.to_f64().unwrap();
        let zero = age.is_zero();
        let ok = if zero { dev.abs() < 1e-12 } else { dev < arc - 1e-12 };
        let exceptional_ok = !s.is_exceptional() || dev < TAU;
        if !(ok && exceptional_ok) {
            failures.push(format!("{s}: deviation {dev} vs arc {arc}"));
        }
    }
    Outcome { trials, failures }
}

pub fn product_bound(trials: usize, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..trials {
        let dim = rng.random_range(1..=6);
        let k = rng.random_range(2..=4);
        let (ts, bs): (Vec<_>, Vec<_>) = (0..k).map(|_| random_finite_order(dim, 24, &mut rng)).unzip();
        match product_bound_check(&ts, &bs) {
            Ok(r) if r.holds => {}
            Ok(r) => failures.push(format!("dim {dim}, {k} factors: {:?}", r.violations.first())),
            Err(e) => failures.push(e.to_string()),
        }
    }
    Outcome { trials, failures }
}

pub fn tensor_trace(trials: usize, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..trials {
        let dim = rng.random_range(1..=6);
        let n = rng.random_range(2..=3);
        let ts: Vec<CMatrix> = (0..n).map(|_| random_unitary(dim, &mut rng)).collect();
        // direct check of the identity against the reversed product
        let expected = ts.iter().rev().fold(CMatrix::identity(dim, dim), |acc, t| acc * t).trace();
        match tensor_perm_trace_check(&ts) {
            Ok(r) => {
                let got = num_complex::Complex64::new(r.operator_trace[0], r.operator_trace[1]);
                if !(r.identity_holds && r.bound_holds) || (got - expected).norm() > 1e-9 {
                    failures.push(format!("dim {dim}, n {n}: {r:?}"));
                }
            }
            Err(e) => failures.push(e.to_string()),
        }
    }
    Outcome { trials, failures }
}

fn big_det(m: &[Vec<BigInt>]) -> BigInt {
    if m.is_empty() {
        return BigInt::from(1);
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<BigInt>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, v)| v.clone()).collect())
                .collect();
            let t = &m[0][j] * big_det(&minor);
            if j % 2 == 0 {
                t
            } else {
                -t
            }
        })
        .sum()
}

fn rows_of(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    m.row_vecs()
}

fn product(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter().map(|r| (0..cols).map(|j| (0..inner).map(|k| &r[k] * &b[k][j]).sum()).collect()).collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// gcd of all `k×k` minors.
fn determinantal_divisor(m: &[Vec<BigInt>], k: usize) -> BigInt {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut g = BigInt::zero();
    for rs in combinations(rows, k) {
        for cs in combinations(cols, k) {
            let sub: Vec<Vec<BigInt>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j].clone()).collect()).collect();
            g = g.gcd(&big_det(&sub));
        }
    }
    g
}

fn is_unit(d: &BigInt) -> bool {
    d.abs() == BigInt::from(1)
}

/// HNF: `U·M = H`, `det U = ±1`, echelon shape with positive reduced pivots.
/// SNF: `U·M·V = D` diagonal, divisibility chain, and `d₁⋯d_k` equal to the gcd of the
/// `k×k` minors.
pub fn hnf_snf(trials: usize, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..trials {
        let a = random::int_matrix(&mut rng, 6, 20);
        let m = rows_of(&a);
        let (h, u) = hnf(&a);
        let (h, u) = (rows_of(&h), rows_of(&u));
        let mut problems = Vec::new();
        if product(&u, &m) != h {
            problems.push("U·M ≠ H");
        }
        if !is_unit(&big_det(&u)) {
            problems.push("HNF transform not unimodular");
        }
        let mut last: Option<usize> = None;
        let mut seen_zero = false;
        for (i, row) in h.iter().enumerate() {
            match row.iter().position(|x| !x.is_zero()) {
                Some(p) => {
                    let reduced = (0..i).all(|k| !h[k][p].is_negative() && h[k][p] < row[p]);
                    if seen_zero || last.is_some_and(|l| p <= l) || !row[p].is_positive() || !reduced {
                        problems.push("HNF shape");
                    }
                    last = Some(p);
                }
                None => seen_zero = true,
            }
        }
        let s = snf(&a);
        let (su, sd, sv) = (rows_of(&s.u), rows_of(&s.d), rows_of(&s.v));
        if product(&product(&su, &m), &sv) != sd {
            problems.push("U·M·V ≠ D");
        }
        if !is_unit(&big_det(&su)) || !is_unit(&big_det(&sv)) {
            problems.push("SNF transforms not unimodular");
        }
        let diag = s.diagonal();
        let off_diagonal =
            sd.iter().enumerate().any(|(i, r)| r.iter().enumerate().any(|(j, x)| i != j && !x.is_zero()));
        if off_diagonal {
            problems.push("D not diagonal");
        }
        for w in diag.windows(2) {
            if w[0].is_negative()
                || (w[0].is_zero() && !w[1].is_zero())
                || (!w[0].is_zero() && !(&w[1] % &w[0]).is_zero())
            {
                problems.push("divisibility chain");
            }
        }
        let mut running = BigInt::from(1);
        for (k, d) in diag.iter().enumerate() {
            running *= d;
            if determinantal_divisor(&m, k + 1) != running.abs() {
                problems.push("determinantal divisors");
                break;
            }
        }
        if !problems.is_empty() {
            failures.push(format!("{a}: {problems:?}"));
        }
    }
    Outcome { trials, failures }
}

fn to_big(x: &Q) -> BigRational {
    BigRational::new((*x.numer()).into(), (*x.denom()).into())
}

/// `solve_torus_congruence` against an exhaustive scan of the grid `(1/L)ℤⁿ`, where `L`
/// provably contains a solution whenever one exists. Instances with `L > 12` are redrawn.
pub fn congruence(trials: usize, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut done = 0;
    while done < trials {
        let n = rng.random_range(1..=3);
        let rows = random::int_rows(&mut rng, n, n, 2);
        let t: Vec<Q> = (0..n)
            .map(|_| {
                let d = rng.random_range(1..=4);
                Q::new(rng.random_range(0..d), d)
            })
            .collect();
        let g = (rows.clone(), t.clone());
        let bound = oracles::fixed_point_grid_bound(&g);
        if bound > 12 {
            continue;
        }
        done += 1;
        let grid = oracles::grid_fixed_points(&g, bound);
        let m = IntMatrix::from_rows(&rows).unwrap();
        let tb: Vec<BigRational> = t.iter().map(to_big).collect();
        match solve_torus_congruence(&m, &tb) {
            Ok(Some(x)) => {
                let xq: Option<Vec<Q>> =
                    x.iter().map(|v| Some(Q::new(v.numer().to_i64()?, v.denom().to_i64()?))).collect();
                let fixed = xq.is_some_and(|x| oracles::fixes(&g, &x));
                if !fixed || grid.is_empty() {
                    failures.push(format!("{rows:?} {t:?}: solver point fixed={fixed}, grid has {}", grid.len()));
                }
            }
            Ok(None) if !grid.is_empty() => {
                failures.push(format!("{rows:?} {t:?}: solver found none, grid {:?}", grid[0]))
            }
            Ok(None) => {}
            Err(e) => failures.push(e.to_string()),
        }
    }
    Outcome { trials, failures }
}

/// Numeric eigenvalues as turns in `[0, 1)`, sorted.
fn numeric_turns(rows: &[Vec<i64>]) -> Vec<f64> {
    let n = rows.len();
    let m = nalgebra::DMatrix::from_fn(n, n, |i, j| rows[i][j] as f64);
    let mut t: Vec<f64> = oracles::eigenvalues(&m)
        .iter()
        .map(|z| {
            let x = z.arg() / TAU;
            let x = if x < -1e-12 { x + 1.0 } else { x.max(0.0) };
            if x > 1.0 - 1e-10 {
                0.0
            } else {
                x
            }
        })
        .collect();
    t.sort_by(f64::total_cmp);
    t
}

/// `cyclotomic_spectrum` against numeric eigenvalues of conjugated companion blocks.
pub fn cyclotomic(trials: usize, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..trials {
        let (rows, blocks) = random::finite_order_matrix(&mut rng, 6);
        let m = IntMatrix::from_rows(&rows).unwrap();
        match cyclotomic_spectrum(&m) {
            Ok(s) => {
                let exact: Vec<f64> = s.values().iter().map(|z| z.to_f64()).collect();
                let numeric = numeric_turns(&rows);
                // compare as points on the circle so 0 and 1⁻ agree
                let close = exact.len() == numeric.len()
                    && exact.iter().zip(&numeric).all(|(a, b)| {
                        let d = (a - b).abs();
                        d.min(1.0 - d) < 1e-9
                    });
                if !close {
                    failures.push(format!("blocks {blocks:?}: exact {exact:?} numeric {numeric:?}"));
                }
            }
            Err(e) => failures.push(format!("blocks {blocks:?}: {e}")),
        }
    }
    Outcome { trials, failures }
}
