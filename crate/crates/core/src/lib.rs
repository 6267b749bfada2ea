//! Exact computations in the two-parameter quantized walled Brauer algebra
//! `B_{r,s}`: ground fields, tableau combinatorics, Hecke algebras, a
//! presentation-driven algebra engine, cellular structure and
//! representation-theoretic checks.

pub mod cellular;
pub mod combinat;
pub mod engine;
pub mod field;
pub mod hecke;
pub mod linalg;
pub mod repthy;
