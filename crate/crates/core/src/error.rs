use std::fmt;

/// Pipeline stage a solver failure is attributed to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Lll,
    Nibble,
    Finisher,
    Halving,
    Subsample,
    Coloring,
    Oracle,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Stage::Lll => "lll",
            Stage::Nibble => "nibble",
            Stage::Finisher => "finisher",
            Stage::Halving => "halving",
            Stage::Subsample => "subsample",
            Stage::Coloring => "coloring",
            Stage::Oracle => "oracle",
        };
        f.write_str(name)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed arguments or a violated precondition.
    #[error("invalid input: {0}")]
    Input(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// A randomized stage gave up, or an exact search proved there is nothing to find.
    #[error("{stage} stage failed: {detail}")]
    Solver { stage: Stage, detail: String },

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn solver(stage: Stage, detail: impl Into<String>) -> Self {
        Error::Solver {
            stage,
            detail: detail.into(),
        }
    }

    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Solver { .. } => 1,
            Error::Input(_) | Error::Parse(_) | Error::Io(_) => 2,
            Error::Budget(_) => 3,
        }
    }

    pub fn stage(&self) -> Option<Stage> {
        match self {
            Error::Solver { stage, .. } => Some(*stage),
            _ => None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
