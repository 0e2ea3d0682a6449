//! Offline nondeterministic Turing machines: a read-only input tape with
//! endmarkers and one space-bounded worktape over `{0, 1, #}`.

mod config;
mod machine;
mod oracle;
mod savitch;

pub use config::{step, successors, ConfigSpace, Configuration, Run};
pub use machine::{DeltaKey, Input, InputSym, Move, OfflineNtm, TapeSym, TmState, Transition};
pub use oracle::{oracle_accepts, oracle_run, reachable_within, DEFAULT_CONFIG_CAP};
pub use savitch::{savitch_accepts, savitch_reach, SavitchTable, TABLE_LIMIT};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TmError {
    #[error("invalid machine: {0}")]
    Validation(String),
    #[error("configuration graph has {count} configurations, above the cap of {cap}")]
    StateSpaceTooLarge { count: String, cap: u64 },
    #[error("space bound must be at least one cell")]
    InvalidSpace,
    #[error("input must be a string over {{0,1}}, got {0:?}")]
    InvalidInput(String),
    #[error("invalid run: {0}")]
    InvalidRun(String),
}
