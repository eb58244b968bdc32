//! Decide whether a complex square matrix is diagonalizable by building its
//! minimal polynomial directly — as the first linear dependence among the
//! vectorized powers E, M, M^2, ... — and testing it for multiple roots with
//! a polynomial GCD. The characteristic polynomial is never needed.
//!
//! Two scalar modes share every algorithm: complex doubles with documented
//! tolerances, and Gaussian rationals with exact arithmetic for matrices
//! with rational entries. A parameter-sweep engine locates exceptional
//! points of one-parameter matrix families; the discretized PT-symmetric
//! square well is built in as an exactly verifiable family.

pub mod cli;
pub mod config;
pub mod diagnosis;
pub mod error;
pub mod json;
pub mod matrix;
pub mod minpoly;
pub mod poly;
pub mod ptwell;
pub mod randmat;
pub mod roots;
pub mod scalar;
pub mod sweep;

pub use config::ToleranceConfig;
pub use diagnosis::{diagnose, oracle_minimal_polynomial, pt_symmetry_check, DiagnosisReport};
pub use error::Error;
pub use matrix::{frobenius_inner, kernel_basis, mat_power, vectorize, Matrix, Vector};
pub use minpoly::{characteristic_from_minimal, minimal_polynomial, MinPolyResult};
pub use poly::{derivative, discriminant, divmod, gcd, MonicPoly, Poly};
pub use ptwell::{build_ptwell, ptwell_family, Convention, MatrixFamily, PtWellConfig};
pub use roots::{roots, Root};
pub use scalar::{GaussRational, Scalar};
pub use sweep::{sweep, sweep_with_grid, Detector, ExceptionalPoint, SweepConfig};
