use std::fmt;

use thiserror::Error;

/// Why a construction or search proved that no answer exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Infeasibility {
    /// A chain in `2^[n]` has at most one element per level, so `chains`
    /// chains cannot cover a level holding `level_size` elements.
    LevelCapacity {
        level: usize,
        level_size: u64,
        chains: u64,
    },
    /// The requested chain length exceeds the longest chain of the host.
    ChainTooLong { required: usize, longest: usize },
    /// Exhaustive search finished without finding a witness.
    SearchExhausted { nodes: u64 },
    /// The constructive heuristic failed on every attempt. Not a proof.
    HeuristicFailed { attempts: usize, detail: String },
    /// No side of the host grid satisfies the divisibility requirement.
    NoDivisibleSide { sides: Vec<usize>, divisor: usize },
    /// No chain size makes the pipeline work at this ground-set size.
    NoConfiguration { n: usize, detail: String },
}

impl fmt::Display for Infeasibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Infeasibility::LevelCapacity {
                level,
                level_size,
                chains,
            } => write!(
                f,
                "level {level} has {level_size} elements but only {chains} chains are available"
            ),
            Infeasibility::ChainTooLong { required, longest } => {
                write!(f, "chain of size {required} requested, longest chain has {longest}")
            }
            Infeasibility::SearchExhausted { nodes } => {
                write!(f, "search exhausted after {nodes} nodes")
            }
            Infeasibility::HeuristicFailed { attempts, detail } => {
                write!(f, "construction failed after {attempts} attempts: {detail}")
            }
            Infeasibility::NoDivisibleSide { sides, divisor } => {
                write!(f, "no side of {sides:?} is divisible by {divisor}")
            }
            Infeasibility::NoConfiguration { n, detail } => {
                write!(f, "no feasible configuration at n={n}: {detail}")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("budget exceeded: {what} needs {required}, limit is {limit}")]
    Budget {
        what: &'static str,
        required: u128,
        limit: u128,
    },

    #[error("infeasible: {0}")]
    Infeasible(Infeasibility),

    #[error("unsupported: {0}")]
    Capability(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, Error::Infeasible(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
