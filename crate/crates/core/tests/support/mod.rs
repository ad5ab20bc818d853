pub mod oracles;
pub mod random;
pub mod suites;
