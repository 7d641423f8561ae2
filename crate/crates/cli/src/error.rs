use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("{0}")]
    Help(String),
    #[error("unknown Lie type: {0}")]
    UnknownType(String),
    #[error("not a number: {0:?}")]
    BadNumber(String),
    #[error("node {index} is outside 1..={rank}")]
    BadIndex { index: i64, rank: usize },
    #[error("node {0} listed twice")]
    DuplicateIndex(usize),
    #[error("I = Δ does not define a proper parabolic (the flag variety is a point)")]
    FullSetNotParabolic,
    #[error("{flag} expects {expected} entries, got {got}")]
    LengthMismatch { flag: String, expected: usize, got: usize },
    #[error("Kähler coefficient {position} is {value}, must be positive")]
    NotKahler { position: usize, value: String },
    #[error("bad profile {0}")]
    BadProfile(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    /// Index of the offending token, when one can be singled out.
    pub position: Option<usize>,
    pub kind: ParseErrorKind,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.position {
            Some(p) => write!(f, "argument {}: {}", p + 1, self.kind),
            None => write!(f, "{}", self.kind),
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Input(String),
    #[error("fixture {example}: field {field} is {got}, expected {expected}")]
    FixtureMismatch {
        example: String,
        field: String,
        expected: String,
        got: String,
    },
    #[error("{failed} of {total} fixtures deviate")]
    SuiteFailed { failed: usize, total: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(ParseError {
                kind: ParseErrorKind::Help(_),
                ..
            }) => 0,
            CliError::FixtureMismatch { .. } | CliError::SuiteFailed { .. } => 2,
            _ => 1,
        }
    }
}

/// Core errors with node indices shifted to the 1-based CLI convention.
impl From<parabolica_core::Error> for CliError {
    fn from(e: parabolica_core::Error) -> Self {
        use parabolica_core::Error as E;
        let msg = match e {
            E::NotDominantForLevi { index, value } => {
                format!("weight has negative coordinate {value} at Levi node {}", index + 1)
            }
            E::NotKahler { index, value } => format!("Kähler coefficient {value} at node {} is not positive", index + 1),
            E::NotComplementary { index } => format!("node {} is in I", index + 1),
            E::IndexOutOfRange { index, rank } => format!("node {} out of range for rank {rank}", index + 1),
            other => other.to_string(),
        };
        CliError::Input(msg)
    }
}
