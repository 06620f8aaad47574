//! Exact certificate engine for Clifford-index constructions on curves lying
//! on K3 surfaces of type (2, 3).
//!
//! For a pair `(g, s)` the engine decides the lattice conditions on the
//! Picard lattice `ℤH ⊕ ℤC` exactly and assembles a [`Certificate`]
//! recording the Clifford index, the rank-two bundle invariant and the gap
//! between them.
//!
//! Modules, bottom-up:
//! - [`bqf`]: binary quadratic forms and representability decisions.
//! - [`lattice`]: the Picard lattice, square-zero and (−2)-class checks.
//! - [`clifford`]: Clifford-index numerics and the certified minimization.
//! - [`certify`]: hypothesis evaluation and certificate assembly.

pub mod bqf;
pub mod certify;
pub mod clifford;
pub mod lattice;
pub mod rational;

pub use bqf::{QuadraticForm, RepDecision, RepMethod, RepStatus};
pub use certify::{build_certificate, Certificate, Conclusion, Regime};
pub use clifford::CliffordReport;
pub use lattice::{DivisorClass, K3Config};
pub use rational::ExactRational;
