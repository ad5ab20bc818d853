//! Ages of finite-order linear maps, the Reid-Tai criterion, exhaustive Galois-orbit searches
//! over eigenvalue data, exact integer lattices for torus quotients, monomial groups and
//! deviation bounds for unitary operators.

pub mod deviation;
pub mod error;
pub mod galois_search;
pub mod integer_lattice;
pub mod monomial_groups;
pub mod published;
pub mod rational;
pub mod roots_of_unity;
pub mod spectra;
pub mod torus_quotient;

pub use error::{Error, Result};
pub use galois_search::Mode;
pub use integer_lattice::{IntMatrix, Sublattice};
pub use monomial_groups::{MonomialElement, MonomialGroup};
pub use rational::Rational;
pub use roots_of_unity::{RootOfUnity, UnitClasses, UnitPair};
pub use spectra::Spectrum;
pub use torus_quotient::{AffineTorusMap, TorusAction, Verdict};
