use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("label {label} is outside 1..={n}")]
    LabelOutOfRange { label: i64, n: usize },

    #[error("not a labeling: {0}")]
    InvalidLabeling(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("jeu de taquin needs two distinct labels, got {0} twice")]
    RepeatedLabel(usize),

    #[error("interval [{x},{y}] repeats residues modulo {n}")]
    IntervalTooLong { x: i64, y: i64, n: usize },

    #[error("broken promotion needs a proper subset of Z/{n}Z")]
    NotProperSubset { n: usize },

    #[error("invalid independent set: {0}")]
    InvalidIndependentSet(String),

    #[error("invalid orientation: {0}")]
    InvalidOrientation(String),

    #[error("invalid bijection: {0}")]
    InvalidBijection(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("cannot parse {what}: {detail}")]
    Parse { what: &'static str, detail: String },

    #[error("word contains cyclic shifts; only toggles are allowed here")]
    NotToggleWord,

    #[error("census bound exceeded: n = {n} > {bound} (use force to override)")]
    BoundExceeded { n: usize, bound: usize },

    #[error("polynomial division left a nonzero remainder")]
    InexactDivision,

    #[error("evaluation at a root of unity is not an integer (k = {k}, omega = {omega})")]
    NonIntegral { k: u64, omega: u64 },

    #[error("predicted multiplicities are not integers")]
    FractionalMultiplicity,

    #[error("simulation window exhausted after {steps} steps without recurrence")]
    WindowExhausted { steps: usize },

    #[error("no transversal found: {0}")]
    NoTransversal(String),

    #[error("stones and coins are only defined on path graphs")]
    NotAPath,

    #[error("unknown {kind} '{name}'")]
    Unknown { kind: &'static str, name: String },
}

pub type Result<T> = std::result::Result<T, Error>;
