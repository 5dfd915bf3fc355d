//! Exact-arithmetic computation of local submodule and ideal zeta functions
//! of nilpotent algebras of endomorphisms: brute-force invariant-sublattice
//! enumeration, structural invariants and weight functions, closed-form zeta
//! formulas, functional-equation and degree checks, and reduced zeta
//! functions as cone Hilbert series.
//!
//! Everything is exact: integers are arbitrary precision, series coefficients
//! are polynomials over `Q`, and functional equations are decided as rational
//! function identities, never numerically.

pub mod algebras;
pub mod intlinalg;
pub mod ratfun;

mod parallel;

pub use algebras::{AlgebraError, CentralData, ConditionCheck, EndoSetup, LieLattice};
pub use intlinalg::{IntMat, Valuation};
pub use ratfun::{Rat, RatFun2, UPoly, URat};
