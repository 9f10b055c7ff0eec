//! Exact arithmetic for (quantum) cluster algebras.
//!
//! The crate is organized around a fixed ambient quantum torus: Laurent
//! polynomials in the initial cluster variables with coefficients in
//! `Z[v, v^-1]`, multiplied through a skew form when one is present.
//! On top of that sit seeds and mutation, bounded exchange-graph
//! exploration, pointed decompositions (g-vectors, F-polynomials,
//! dominance order, tropical transport), distinguished functions and
//! triangularity checks, and the Caldero-Chapoton character of quiver
//! representations computed by finite-field point counts.

pub mod bases;
pub mod ccmap;
pub mod exactlin;
pub mod explore;
pub mod frame;
pub mod grassmann;
pub mod io;
pub mod matrix;
pub mod quiver;
pub mod scalar;
pub mod seed;
pub mod torus;
pub mod tropical;

pub use frame::{Exponent, Frame};
pub use scalar::ScalarPoly;
pub use torus::{DivisionSide, TorusElement};

use thiserror::Error;

/// Crate-wide error type. `Schema` marks input-format problems (CLI exit 2);
/// everything else is a domain error (CLI exit 1).
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("frame mismatch: operands live in different frames")]
    FrameMismatch,

    #[error("division by zero element")]
    ZeroDivisor,

    #[error("divisor leading coefficient {0} is not invertible (must be a single v-power with coefficient +-1)")]
    NonInvertibleLeading(String),

    #[error("exact division failed: remainder is nonzero")]
    DivisionRemainder,

    #[error("exponent {0} is absent from the element's support")]
    LeadingAbsent(String),

    #[error("coefficient at {0} is {1}, not a +v-power")]
    NotUnitLeading(String, String),

    #[error("vertex out of range: {0}")]
    VertexOutOfRange(String),

    #[error("vertex {0} is frozen and cannot be mutated")]
    FrozenVertex(String),

    #[error("entries b[{i}][{j}] and b[{j}][{i}] violate skew-symmetrizability")]
    NotSkewSymmetrizable { i: usize, j: usize },

    #[error("compatibility fails at row {i}, column {k}: pairing is {got}, expected {expected}")]
    Incompatible {
        i: usize,
        k: usize,
        got: i64,
        expected: String,
    },

    #[error("seed carries no skew form; quantum operation unavailable")]
    LambdaMissing,

    #[error("exchange matrix does not have full column rank on unfrozen columns")]
    RankDeficient,

    #[error("no compatible integer skew form found within search bound {0}")]
    NoCompatibleLambda(u32),

    #[error("element is not pointed: {0}")]
    NotPointed(String),

    #[error("exploration budget of {0} seeds exceeded")]
    BudgetExceeded(usize),

    #[error("no injective-reachability witness within depth {0}")]
    NoInjectiveWitness(usize),

    #[error("operation requires {0}")]
    WrongSeedShape(String),

    #[error("two family members share the degree {0}")]
    DuplicateDegree(String),

    #[error("quiver has an oriented cycle; only acyclic quivers are supported")]
    NonAcyclicQuiver,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("point counts do not fit an integer polynomial of the expected degree")]
    InterpolationInconsistent,

    #[error("generic character samples disagree pairwise; no stable value")]
    UnstableSamples,

    #[error("subspace enumeration needs {needed} candidates, over the budget of {budget}")]
    EnumerationBudget { needed: u128, budget: u128 },

    #[error("{0}")]
    Schema(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True for input-format errors that a CLI should report with exit code 2.
    /// A vertex index out of range is a domain error on an otherwise valid
    /// input, so it is not in this class.
    pub fn is_schema(&self) -> bool {
        matches!(self, Error::Schema(_) | Error::NotSkewSymmetrizable { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
