use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed group spec near `{0}`")]
    Parse(String),
    #[error("cyclic component of order {0} is not allowed (must be at least 2)")]
    ComponentTooSmall(u64),
    #[error("group order {got} exceeds the configured cap {cap}")]
    OrderCap { got: u128, cap: u64 },
    #[error("{what} requires group order at most {cap}, got {got}")]
    EnumerationCap {
        what: &'static str,
        got: u64,
        cap: u64,
    },
    #[error("graph has {got} vertices, exact enumeration supports at most {cap}")]
    GraphCap { got: usize, cap: usize },
    #[error("element has {got} coordinates, group has {want} components")]
    ElementMismatch { got: usize, want: usize },
    #[error("coordinate {value} out of range for cyclic component of order {modulus}")]
    ResidueRange { value: i64, modulus: u64 },
    #[error("operands belong to different groups")]
    GroupMismatch,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("invalid graph input: {0}")]
    GraphParse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
