//! Hochschild cohomology of triangular string algebras.
//!
//! Given a monomial presentation `kQ/I` satisfying the string conditions,
//! this crate builds Bardzell's minimal bimodule resolution, the Hochschild
//! cochain complex on parallel pairs, and computes `dim HH^n` both by
//! counting pairs in a combinatorial partition and by exact ranks. It also
//! lifts cocycles through the resolution to compute cup products.

pub mod audit;
pub mod bardzell;
pub mod cup;
pub mod generate;
pub mod hochschild;
pub mod linalg;
pub mod presentation;
pub mod quiver;

use thiserror::Error;

pub use bardzell::{ApElement, ApTable, Resolution};
pub use hochschild::{CochainComplex, HhTable, PairClass, ParallelPair};
pub use presentation::{parse, Presentation, StringAlgebra, ValidationReport};
pub use quiver::{ArrowId, Path, Quiver, VertexId};

/// Failures of the construction itself. Each one means an input broke a
/// hypothesis that validation should have caught, or a bug.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComputeError {
    #[error("greedy choice is not unique in degree {degree} along `{path}`")]
    AmbiguousChoice { degree: usize, path: String },
    #[error("support `{support}` arises from two different chains")]
    ConflictingChains { support: String },
    #[error("no element `{support}` in degree {degree}")]
    MissingElement { degree: usize, support: String },
    #[error("cannot split `{support}` as degree {n} + {m}: {reason}")]
    Decompose {
        support: String,
        n: usize,
        m: usize,
        reason: String,
    },
    #[error("`{support}` in odd degree {degree} has {count} divisors, expected 2")]
    OddDivisors {
        degree: usize,
        support: String,
        count: usize,
    },
    #[error("cochain of degree {degree} is not a cocycle")]
    NotCocycle { degree: usize },
    #[error("no arrow extends the pair ({rho}, {gamma}) in degree {degree}")]
    NoExtension {
        degree: usize,
        rho: String,
        gamma: String,
    },
    #[error("degree {degree} is outside the computed range")]
    DegreeOutOfRange { degree: usize },
}
