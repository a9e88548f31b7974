//! Spectral bounds for the independence ratio and the (measurable,
//! fractional) chromatic number of finite graphs, translation-invariant
//! graphs on ℝⁿ and distance graphs on the unit sphere.
//!
//! Every bound is derived from the two endpoints m, M of the numerical
//! range of a self-adjoint operator that respects the graph:
//! χ ≥ (M − m)/(−m) and α̅ ≤ (−m + 2ε)/(R − m − ε).

pub mod error;
pub mod euclidean;
pub mod graph;
pub mod lp;
pub mod report;
pub mod special;
pub mod spectral;
pub mod sphere;
pub mod torus;

pub use error::{BoundError, Result};
pub use report::{BoundKind, BoundReport, Provenance};
pub use spectral::{Spectrum, SymMatrix};
