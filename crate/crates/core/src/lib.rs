//! Twisted quiver representations in finite-dimensional module categories.
//!
//! A quiver diagram assigns a finite-dimensional algebra to each vertex and
//! a bimodule to each arrow; the bimodule induces the adjoint functor pair
//! `-⊗N` / `Hom(N,-)` between the module categories at the endpoints. This
//! crate realizes the category of twisted representations of such diagrams,
//! builds standard resolutions and coresolutions, and computes Hom and Ext
//! groups through the induced long exact sequences. All arithmetic is exact
//! (rationals or prime fields); every exactness claim is verified by rank
//! computations.

pub mod algebra;
pub mod bimodule;
pub mod diagram;
pub mod doc;
pub mod ext;
pub mod field;
pub mod instances;
pub mod les;
pub mod matrix;
pub mod module;
pub mod rep;
pub mod resolution;
pub mod sigma;
pub mod standard;

pub use field::{Field, Scalar};
pub use matrix::Matrix;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("field mismatch between operands")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operands belong to different algebras")]
    AlgebraMismatch,
    #[error("operands belong to different diagrams")]
    DiagramMismatch,
    #[error("quiver has a directed cycle; induction/coinduction need finite path sets")]
    CyclicQuiver,
    #[error("functor is not exact: {0}")]
    FunctorNotExact(String),
    #[error("long exact sequence hypothesis violated at arrow `{arrow}`: {side} functor not exact")]
    HypothesisViolated { arrow: String, side: String },
    #[error("chain lift failed: {0}")]
    LiftFailure(String),
    #[error("induced morphism not unique: {0}")]
    UniquenessFailure(String),
    #[error("diagram is not a Vect diagram: {0}")]
    NotVectDiagram(String),
    #[error("validation failed:\n{}", .0.join("\n"))]
    Validation(Vec<String>),
    #[error("internal invariant breach: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
