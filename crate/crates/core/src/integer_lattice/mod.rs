//! Exact integer linear algebra: normal forms, sublattices, finite-order matrices and the
//! fixed-point congruence of an affine torus map.

mod congruence;
mod cyclotomic;
mod forms;
mod matrix;

pub use congruence::{common_denominator, is_fixed_point, reduce_mod_one, solve_torus_congruence};
pub use cyclotomic::{
    characteristic_polynomial, companion, crystallographic_bound, crystallographic_orders, cyclotomic_polynomial,
    cyclotomic_spectrum, matrix_order, IntPoly,
};
pub use forms::{hnf, image_lattice, kernel_lattice, saturate, snf, SmithDecomposition, Sublattice};
pub use matrix::IntMatrix;
