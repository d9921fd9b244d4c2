use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different cohomology models")]
    ModelMismatch,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("invalid wall: {0}")]
    InvalidWall(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("basis index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("wrong regime: this formula needs l_zeta = {expected}, the wall has l_zeta = {found}")]
    WrongRegime { expected: i64, found: i64 },

    #[error(
        "unsupported regime l_zeta = {0}: exact evaluation for l_zeta >= 2 needs the cohomology \
         of the Hilbert scheme of points, which is not modelled; only leading terms are available"
    )]
    UnsupportedRegime(i64),
}

impl Error {
    /// True for errors caused by asking a formula about a wall it does not cover.
    pub fn is_regime(&self) -> bool {
        matches!(self, Error::WrongRegime { .. } | Error::UnsupportedRegime(_))
    }
}
