//! Intersection non-emptiness for DFAs, and reductions to it from
//! space-bounded offline nondeterministic Turing machines.

pub mod amplify;
pub mod automata;
pub mod bench;
pub mod corpus;
pub mod formats;
pub mod reductions;
pub mod tm;
pub mod verify;
