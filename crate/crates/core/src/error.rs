use alloc::string::String;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("edge {edge}: endpoint {vertex} out of range for {n_vertices} vertices")]
    VertexOutOfRange {
        edge: usize,
        vertex: usize,
        n_vertices: usize,
    },

    #[error("graph is not regular: vertex {vertex} has degree {degree}, expected {expected}")]
    NotRegular {
        vertex: usize,
        degree: usize,
        expected: usize,
    },

    #[error("{what} = {value} exceeds the cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("exact integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("matrix is not symmetric (deviation {deviation:e})")]
    NotSymmetric { deviation: f64 },

    #[error("matrix is not Hermitian (deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("color of dart {dart} is not unitary (deviation {deviation:e})")]
    NotUnitary { dart: usize, deviation: f64 },

    #[error("color of dart {dart} is not the adjoint of its twin's color")]
    TwinMismatch { dart: usize },

    #[error("color assignment covers {got} darts, graph has {expected}")]
    MissingColor { expected: usize, got: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("eigenvalue pairing of the real embedding failed (gap {deviation:e})")]
    NumericalDegeneracy { deviation: f64 },

    #[error("eigensolver did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("rejection sampler exhausted its budget after {attempts} attempts")]
    RetryBudgetExceeded { attempts: u64 },

    #[error("malformed permutation word: {0}")]
    MalformedWord(String),

    #[error("measure normalized with q = {measure_q} cannot be compared against {target}")]
    NormalizationMismatch { measure_q: f64, target: String },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
