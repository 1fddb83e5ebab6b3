use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{what} needs {required} qubits but the cap is {cap}")]
    QubitCap {
        what: String,
        required: usize,
        cap: usize,
    },

    #[error("evaluation budget exceeded: {required} evaluations requested, budget is {budget}")]
    Budget { required: u128, budget: u64 },

    #[error("no literature constant available: {0}")]
    NoConstant(String),

    #[error("unknown {registry} '{name}' (available: {available})")]
    UnknownStrategy {
        registry: &'static str,
        name: String,
        available: String,
    },

    #[error("could not generate a simple graph after {attempts} attempts (n={n}, d={d})")]
    Generation { n: usize, d: usize, attempts: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// Stable machine-readable category, used for CLI error output and exit codes.
    pub fn category(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) | Error::UnknownStrategy { .. } => "invalid_input",
            Error::QubitCap { .. } | Error::Budget { .. } | Error::Generation { .. } => "resource",
            Error::NoConstant(_) => "no_constant",
            Error::Parse { .. } | Error::Json(_) => "parse",
            Error::Io(_) => "io",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.category() {
            "invalid_input" => 2,
            "resource" => 3,
            "no_constant" => 4,
            "parse" => 5,
            _ => 6,
        }
    }
}
