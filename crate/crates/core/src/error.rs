use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate arrow name `{0}`")]
    DuplicateArrow(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("arrow name `{name}` is reserved: {reason}")]
    ReservedName { name: String, reason: String },
    #[error("doubling would create `{0}`, which already names an arrow")]
    NameCollision(String),
    #[error("quiver is already doubled")]
    AlreadyDoubled,
    #[error("quiver is not a double quiver")]
    NotDoubled,
    #[error("operands live over different quivers")]
    QuiverMismatch,
    #[error("arrows do not compose: {0}")]
    NotComposable(String),
    #[error("form is not homogeneous")]
    MixedDegree,
    #[error("expected degree {expected}, found {found}")]
    WrongDegree { expected: usize, found: usize },
    #[error("form degree {0} exceeds the supported maximum of 3")]
    DegreeOverflow(usize),
    #[error("polynomial arities differ ({0} vs {1})")]
    ArityMismatch(usize, usize),
    #[error("dimension vector has {found} entries, quiver has {expected} vertices")]
    DimensionLength { expected: usize, found: usize },
    #[error("dimension vector entries must be positive")]
    ZeroDimension,
    #[error("{line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("double derivation value on `{0}` is not supported on e_h(a) (A⊗A) e_t(a)")]
    BadDoubleDerivation(String),
}
