use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// First condition a candidate POVM fails.
#[derive(Clone, Copy, Debug, PartialEq, Error)]
pub enum PovmViolation {
    #[error("element {index} is not Hermitian (asymmetry {asymmetry:e})")]
    NotHermitian { index: usize, asymmetry: f64 },
    #[error("element {index} is not positive (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { index: usize, min_eigenvalue: f64 },
    #[error("elements do not sum to the identity (max deviation {deviation:e})")]
    Incomplete { deviation: f64 },
    #[error("POVM has no elements")]
    Empty,
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix of dimension {dim} exceeds the supported maximum {max}")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("matrix is not Hermitian (asymmetry {0:e})")]
    NotHermitian(f64),
    #[error("state is not normalized (norm^2 = {0})")]
    NotNormalized(f64),
    #[error("matrix is not a rank-1 projector: {0}")]
    NotProjector(&'static str),
    #[error("POVM weight {0} outside (0, 1]")]
    InvalidWeight(f64),
    #[error("angle out of range: theta = {theta}, phi = {phi}")]
    InvalidAngles { theta: f64, phi: f64 },
    #[error("invalid POVM: {0}")]
    InvalidPovm(PovmViolation),
    #[error("alphabet must be nonempty (player {player})")]
    EmptyAlphabet { player: usize },
    #[error("game needs between 2 and {max} players, got {found}")]
    PlayerCount { found: usize, max: usize },
    #[error("index {value} out of range for player {player} (size {size})")]
    OutOfRange {
        player: usize,
        value: usize,
        size: usize,
    },
    #[error("tuple has {found} entries, expected {expected}")]
    TupleLength { expected: usize, found: usize },
    #[error("winning table would need {required} entries (cap {cap})")]
    TableTooLarge { required: u128, cap: u128 },
    #[error("classical search space has {required} strategies (cap {cap})")]
    SearchSpaceTooLarge { required: u128, cap: u128 },
    #[error("promise is empty")]
    EmptyPromise,
    #[error("support table has no possible outcome for joint input {input}")]
    EmptySupport { input: usize },
    #[error("shared state is a product state (smallest Schmidt coefficient {0:e})")]
    ProductState(f64),
    #[error("no {0} element in a valid rank-1 POVM; hemisphere classification is inconsistent")]
    HemisphereContradiction(&'static str),
    #[error(
        "unsupported local dimensions {dims:?}: extraction needs one side of dimension at most 2"
    )]
    UnsupportedDimension { dims: (usize, usize) },
    #[error("strategy is incompatible with the game: {0}")]
    Incompatible(&'static str),
    #[error("unknown input {input} for player {player}")]
    UnknownInput { player: usize, input: usize },
    #[error("unknown outcome {outcome} for player {player}, input {input}")]
    UnknownOutcome {
        player: usize,
        input: usize,
        outcome: usize,
    },
    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),
}
