//! Complete DFAs, NFAs and the standard constructions on them.

mod alphabet;
pub mod corpus;
pub(crate) mod dfa;
mod dot;
pub mod fixtures;
mod minimize;
mod nfa;
mod text;

pub use alphabet::{Alphabet, Word};
pub use dfa::{union_product, Dfa, PermutationReport, UnaryProfile};
pub use nfa::Nfa;
pub use text::ParseAutomatonError;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutomatonError {
    #[error("alphabet must contain at least one letter")]
    EmptyAlphabet,
    #[error("duplicate letter '{0}' in alphabet")]
    DuplicateLetter(char),
    #[error("alphabet has more than 255 letters")]
    AlphabetTooLarge,
    #[error("letter '{0}' is not in the alphabet")]
    ForeignLetter(char),
    #[error("alphabets differ: {left} vs {right}")]
    AlphabetMismatch { left: String, right: String },
    #[error("automaton needs at least one state")]
    NoStates,
    #[error("state {state} out of range (automaton has {count} states)")]
    StateOutOfRange { state: usize, count: usize },
    #[error("transition table for letter '{letter}' has {got} entries, expected {expected}")]
    IncompleteTable {
        letter: char,
        got: usize,
        expected: usize,
    },
    #[error(
        "letter '{letter}' is not a permutation: states {first} and {second} both map to {target}"
    )]
    NotPermutation {
        letter: char,
        first: usize,
        second: usize,
        target: usize,
    },
    #[error("state {state} has {count} transitions on letter '{letter}', expected exactly one")]
    NotFunctional {
        state: usize,
        letter: char,
        count: usize,
    },
    #[error("union product needs at least one automaton")]
    EmptyProduct,
}
