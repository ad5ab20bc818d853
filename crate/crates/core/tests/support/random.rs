//! Seeded instance generators.
#![allow(dead_code)]

use rand::Rng;
use reidtai_core::integer_lattice::{companion, cyclotomic_polynomial};
use reidtai_core::roots_of_unity::euler_phi;
use reidtai_core::{IntMatrix, RootOfUnity, Spectrum};

/// Dimension 1..=8, orders up to 60.
pub fn spectrum<R: Rng>(rng: &mut R) -> Spectrum {
    let dim = rng.random_range(1..=8);
    let values = (0..dim)
        .map(|_| {
            let d = rng.random_range(1..=60u64);
            RootOfUnity::new(rng.random_range(0..d) as i64, d).unwrap()
        })
        .collect();
    Spectrum::new(values).unwrap()
}

/// Spectra with small age, to exercise the exceptional range.
pub fn small_age_spectrum<R: Rng>(rng: &mut R) -> Spectrum {
    let dim = rng.random_range(1..=6);
    let values = (0..dim)
        .map(|_| {
            let d = rng.random_range(2..=40u64);
            RootOfUnity::new(rng.random_range(0..=d / 6) as i64, d).unwrap()
        })
        .collect();
    Spectrum::new(values).unwrap()
}

pub fn int_rows<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> Vec<Vec<i64>> {
    (0..rows).map(|_| (0..cols).map(|_| rng.random_range(-bound..=bound)).collect()).collect()
}

/// A random matrix of size at most `max_size`, entries bounded by `bound`; occasionally rank
/// deficient.
pub fn int_matrix<R: Rng>(rng: &mut R, max_size: usize, bound: i64) -> IntMatrix {
    let r = rng.random_range(1..=max_size);
    let c = rng.random_range(1..=max_size);
    let mut rows = int_rows(rng, r, c, bound);
    if r > 1 && rng.random_bool(0.25) {
        let k = rng.random_range(-2..=2);
        rows[r - 1] = rows[0].iter().map(|x| k * x).collect();
    }
    IntMatrix::from_rows(&rows).unwrap()
}

/// Product of random elementary matrices.
pub fn unimodular<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<i64>> {
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    if n < 2 {
        return u;
    }
    for _ in 0..rng.random_range(1..=6) {
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let k = rng.random_range(-2..=2);
        for row in u.iter_mut() {
            row[j] += k * row[i];
        }
        if rng.random_bool(0.3) {
            for row in u.iter_mut() {
                row.swap(i, j);
            }
        }
    }
    u
}

fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..b[0].len()).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

/// Inverse of a unimodular matrix through the adjugate (cofactor expansion).
pub fn inverse_unimodular(u: &[Vec<i64>]) -> Vec<Vec<i64>> {
    fn det(m: &[Vec<i64>]) -> i64 {
        if m.is_empty() {
            return 1;
        }
        (0..m.len())
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &v)| v).collect())
                    .collect();
                (if j % 2 == 0 { 1 } else { -1 }) * m[0][j] * det(&minor)
            })
            .sum()
    }
    let n = u.len();
    let d = det(u);
    assert!(d == 1 || d == -1, "not unimodular");
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    // adj[i][j] = (-1)^(i+j) det(minor with row j, column i removed)
                    let minor: Vec<Vec<i64>> = (0..n)
                        .filter(|&r| r != j)
                        .map(|r| (0..n).filter(|&c| c != i).map(|c| u[r][c]).collect())
                        .collect();
                    (if (i + j) % 2 == 0 { 1 } else { -1 }) * det(&minor) * d
                })
                .collect()
        })
        .collect()
}

/// Block-diagonal companion matrices of cyclotomic polynomials, conjugated by a random
/// unimodular matrix. Returns the matrix and the orders `d` of its blocks.
pub fn finite_order_matrix<R: Rng>(rng: &mut R, max_dim: usize) -> (Vec<Vec<i64>>, Vec<u64>) {
    let mut blocks = Vec::new();
    let mut dim = 0;
    let target = rng.random_range(1..=max_dim);
    while dim < target {
        let options: Vec<u64> = (1..=30).filter(|&d| euler_phi(d) as usize <= target - dim).collect();
        let d = options[rng.random_range(0..options.len())];
        dim += euler_phi(d) as usize;
        blocks.push(d);
    }
    let mut m = vec![vec![0i64; dim]; dim];
    let mut at = 0;
    for &d in &blocks {
        let c = companion(&cyclotomic_polynomial(d)).to_i64_rows().unwrap();
        for (i, row) in c.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m[at + i][at + j] = v;
            }
        }
        at += c.len();
    }
    let u = unimodular(rng, dim);
    let ui = inverse_unimodular(&u);
    (mul(&mul(&u, &m), &ui), blocks)
}
