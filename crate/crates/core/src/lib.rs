//! Deterministic automata for the commutative closure of shuffle expressions
//! over group languages.
//!
//! The central construction labels each point of `ℕ₀^k` with a set of states
//! (see [`label`]) and reads the labels off a bounded box whose size depends
//! only on the number of states and the letter orders of the input
//! permutation automata. Every construction can be cross-checked against the
//! brute-force bounded semantics in [`oracle`].

pub mod automata;
pub mod bitset;
pub mod cli;
pub mod expr;
pub mod label;
pub mod oracle;
pub mod parikh;

pub use automata::{Alphabet, AutomatonError, Dfa, Nfa, Word};
pub use bitset::StateSet;
pub use parikh::ParikhVector;
