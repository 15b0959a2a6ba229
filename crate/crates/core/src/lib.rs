//! Laguerre–Angelesco multiple orthogonal polynomials on the r-star.
//!
//! The weight `|x|^β e^{-x^r}` lives on the `r` rays `[0, ω^{j-1}∞)` with
//! `ω = e^{2πi/r}`. This crate builds the type I vectors and type II
//! polynomials on and next to the diagonal from their closed forms, checks every
//! identity they satisfy against exact Gamma-function moments, computes their
//! real zeros and evaluates the limiting zero densities.
//!
//! All arithmetic runs on MPFR floats at a configurable number of decimal
//! digits (see [`numerics::Precision`]).

pub mod asymptotics;
pub mod error;
pub mod jacobi_limit;
pub mod moments;
pub mod numerics;
pub mod polynomials;
pub mod type1;
pub mod type2;
pub mod zeros;

pub use error::{Error, Result};
pub use moments::StarWeight;
pub use numerics::Precision;
pub use polynomials::{ComplexPoly, PolyResidual, WeightedForm};
pub use type1::{DiagonalIndex, Direction, RecurrenceCoeffs, Type1Vector};
pub use type2::Type2Poly;
pub use zeros::ZeroSet;
