//! Exact-arithmetic classification of pairs (plane cubic, line) under the
//! PGL(3) action: Hilbert–Mumford stability with certificates, orbit normal
//! forms and limits, Hesse-pencil combinatorics, and symbolic verification of
//! the blow-up chart atlases relating the associated moduli spaces.
//!
//! All arithmetic is exact over the field tower Q ⊂ Q(w) (w a primitive cube
//! root of unity) with at most one quadratic extension adjoined on demand.
//! There is no floating point anywhere in this crate.

pub mod scalar;
pub mod upoly;
pub mod linalg;
pub mod atlas;
pub mod family;
pub mod forms;
pub mod geometry;
pub mod hesse;
pub mod parse;
pub mod report;
pub mod stability;

pub use scalar::{FieldTower, QuadExt, Rat, Scalar};

/// Errors shared across the crate.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// A quadratic polynomial offered for adjunction splits over the tower.
    #[error("minimal polynomial is reducible over the current tower")]
    Reducible,
    /// The tower already carries its one allowed quadratic layer.
    #[error("field tower already has a quadratic layer")]
    TowerDepthExceeded,
    /// A singular point (or component) needs an extension the tower cannot
    /// hold; carries the offending minimal polynomial.
    #[error("singularity requires an extension beyond the tower: {minpoly}")]
    IrrationalSingularity { minpoly: String },
    /// A one-parameter family degenerates: a form vanishes identically at the
    /// limit even after clearing powers of the parameter.
    #[error("form vanishes identically at t = 0")]
    ZeroFormAtLimit,
    /// A pair handed to a normal-form routine is not in the claimed stratum.
    #[error("pair is not in the expected stratum")]
    StratumMismatch,
    /// Internal consistency failure between classifier and geometry.
    #[error("normal-form construction failed: {0}")]
    NormalFormFailure(String),
    /// A fiber was requested over a base-locus point.
    #[error("pair lies on a base locus; fiber degenerates")]
    DegenerateFiber,
    /// A chart needs a radical parametrization that was not supplied.
    #[error("chart requires a radical parametrization for coordinate {0}")]
    RadicalRequired(usize),
    /// Matrix-group closure exceeded its bound.
    #[error("group closure exceeded bound {0}")]
    ClosureBoundExceeded(usize),
    /// Text input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}
