//! Weighted Hilbert spaces of Dirichlet series.
//!
//! A space `H_w` consists of Dirichlet series `f(s) = Σ a_n n^(-s)` with
//! `‖f‖² = Σ |a_n|² w_n`. This crate supplies the weight families
//! (logarithmic powers, moments of half-line measures, reciprocals of the
//! ordered-factorization count), norms and reproducing kernels, the
//! time-average mean-square identity for moment weights, multiplier-norm
//! estimators, and the Pick-kernel machinery of the space with weights
//! `1/F(n)`: Pick and Gram matrices, a transfer-function realization of
//! contractive multipliers, and a greedy interpolating-sequence builder.
//!
//! Everything operates on finite Dirichlet polynomials; infinite series
//! appear only through truncations with reported tail bounds.

// Negated float comparisons below are deliberate: they reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dirichlet;
pub mod error;
pub mod io;
pub mod linalg;
pub mod plancherel;
pub mod rkhs;
pub mod specialfn;
mod sum;
pub mod weights;

pub use num_complex::Complex64;

pub use dirichlet::{AbscissaReport, CoefficientRule, DirichletPolynomial};
pub use error::{Error, Result};
pub use plancherel::{AverageSchedule, PlancherelReport};
pub use rkhs::{GramMatrix, PickProblem, RealizationModel, SpaceHandle};
pub use specialfn::{gamma_real, rho, solve_rho, zeta, ComplexPoint, HalfPlane};
pub use weights::{HalfLineMeasure, WeightSequence};
