//! Symmetric ±1 matrices with few singular values, the extremal graphs built
//! from them, closed-form bounds on extremal eigenvalues, and brute-force
//! checks of the inequalities that relate them.

pub mod arith;
pub mod bounds;
pub mod constructions;
pub mod graphs;
pub mod hadamard;
pub mod io;
pub mod lab;
pub mod latin;
pub mod linalg;
pub mod report;
pub mod search;
pub mod spectra;
pub mod srg;
