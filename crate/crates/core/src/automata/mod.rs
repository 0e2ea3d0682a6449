//! Deterministic finite automata, the Rabin–Scott product, and
//! intersection non-emptiness with shortest-witness extraction.

mod alphabet;
mod dfa;
mod instance;
mod product;
mod solver;

pub use alphabet::{Alphabet, Symbol};
pub use dfa::{bits_for, Dfa, StateId};
pub use instance::{IntersectionInstance, Witness};
pub use product::{product, ProductOptions, DEFAULT_PRODUCT_CAP};
pub use solver::{bounded_search, intersect_nonempty, solve, Solution, SolverConfig, Strategy};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutomataError {
    #[error("unknown symbol '{0}'")]
    UnknownSymbol(String),
    #[error("duplicate token '{0}' in alphabet")]
    DuplicateToken(String),
    #[error("invalid token {0:?}")]
    InvalidToken(String),
    #[error("alphabet must contain at least one token")]
    EmptyAlphabet,
    #[error("alphabet of automaton {index} differs from the first automaton's")]
    AlphabetMismatch { index: usize },
    #[error("an intersection instance needs at least one automaton")]
    EmptyInstance,
    #[error("product would have {states} states, above the cap of {cap}")]
    SizeOverflow { states: String, cap: u64 },
    #[error("invalid automaton: {0}")]
    Validation(String),
}
