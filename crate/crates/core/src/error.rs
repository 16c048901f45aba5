use thiserror::Error;

/// Library-wide error type. Variants carrying certificates (cycles, cliques)
/// keep enough data for the caller to audit the negative result.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("malformed element for group {kind}: {detail}")]
    MalformedElement { kind: String, detail: String },

    #[error("invalid group spec: {0}")]
    InvalidSpec(String),

    #[error("morphism incompatible with group kind {0}")]
    IncompatibleMorphism(String),

    #[error("symmetric set rule incompatible with group: {0}")]
    RuleMismatch(String),

    #[error("radius cap {cap} exceeded (requested {requested})")]
    RadiusCapExceeded { requested: u32, cap: u32 },

    #[error("BFS did not reach the element within the radius cap {cap}")]
    WordLengthCapExceeded { cap: u32 },

    #[error("vertex {v} out of range (graph has {n} vertices)")]
    VertexOutOfRange { v: usize, n: usize },

    #[error("more than {cap} maximal cliques; restrict the window")]
    CliqueCapExceeded { cap: usize },

    #[error("pattern graph is not chordal; chordless cycle {cycle:?}")]
    NotChordal { cycle: Vec<usize> },

    #[error("clique {clique:?} has non-PSD specified submatrix (min eigenvalue {min_eig})")]
    CliqueNotPsd { clique: Vec<usize>, min_eig: f64 },

    #[error("no fillable pair found on a chordal pattern (internal invariant breach)")]
    NoFillablePair,

    #[error("matrix is not Hermitian (defect {defect})")]
    NonHermitian { defect: f64 },

    #[error("{context} block is not PSD (min eigenvalue {min_eig})")]
    NotPsd { context: String, min_eig: f64 },

    #[error("matrix dimensions mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix entries must be finite")]
    NonFiniteEntry,

    #[error("no value for element {element} in S")]
    MissingValue { element: String },

    #[error("element {element} is outside S")]
    OutsideSet { element: String },

    #[error("window too small for Folner averaging; missing pairs (y, y*x): {violations:?}")]
    WindowTooSmall { violations: Vec<(String, String)> },

    #[error("window vertex budget {cap} exceeded (needed {needed})")]
    WindowCapExceeded { needed: usize, cap: usize },

    #[error("set does not span Z^2")]
    NotSpanning,

    #[error("no chordless cycle at polygon size N <= {max_n}")]
    LuluCapExceeded { max_n: u32 },

    #[error("product cycle precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("unitary check failed (defect {defect})")]
    NotUnitary { defect: f64 },

    #[error("root off the unit circle (|1-|z|| = {deviation}); numerical failure")]
    RootOffCircle { deviation: f64 },

    #[error("eigensolver did not converge in {sweeps} sweeps")]
    EigenNoConvergence { sweeps: usize },

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
