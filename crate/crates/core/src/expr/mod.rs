//! Shuffle expressions over group-language atoms: parsing, the rewrite to
//! shuffles and iterated shuffles, the normal form, and compilation to a
//! DFA for the commutative closure.

mod ast;
mod compile;
mod file;
mod parse;
mod rewrite;

pub use ast::{Atom, ShuffleExpr};
pub use compile::{compile, compile_with, expression_nfa, CompileOptions, CompileReport, Pipeline};
pub use file::{load_expr_file, ExprFile};
pub use parse::{parse, AtomTable};
pub use rewrite::{normal_form, perm_rewrite, NormalForm, Term, STEP_BUDGET};

use crate::automata::{AutomatonError, ParseAutomatonError};
use crate::label::LabelError;
use crate::oracle::{bounded_words, BoundedLanguage, OracleError};

#[derive(Debug, thiserror::Error)]
pub enum ExprError {
    #[error("syntax error at {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown atom '{name}' at {pos}")]
    UnknownAtom { name: String, pos: usize },
    #[error("atom '{atom}' has alphabet {found}, expected {expected}")]
    AlphabetMismatch {
        atom: String,
        expected: String,
        found: String,
    },
    #[error("atom '{atom}' is not a permutation automaton")]
    NotPermutation { atom: String },
    #[error("expression has no atoms to fix an alphabet")]
    NoAtoms,
    #[error("{node} is not allowed here")]
    Unsupported { node: &'static str },
    #[error("star-of-shuffle not reducible by the shuffle identities: {subterm}")]
    Residual { subterm: String },
    #[error("normal form exceeded the budget of {budget} steps")]
    StepBudget { budget: usize },
    #[error("{path}: {message}")]
    File { path: String, message: String },
    #[error("{path}: {source}")]
    AtomFile {
        path: String,
        source: ParseAutomatonError,
    },
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Label(#[from] LabelError),
}

/// Bounded denotation of a normal form, for comparison with the bounded
/// denotation of the expression it came from.
pub fn nf_semantics_bounded(nf: &NormalForm, n: usize) -> Result<BoundedLanguage, OracleError> {
    bounded_words(&nf.to_expr(), n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::fixtures;

    fn words(nf: &NormalForm, n: usize) -> Vec<String> {
        let alphabet = fixtures::even_a().alphabet().clone();
        nf_semantics_bounded(nf, n)
            .unwrap()
            .words()
            .iter()
            .map(|w| alphabet.render(w))
            .collect()
    }

    #[test]
    fn nf_semantics_examples() {
        let e = ShuffleExpr::atom("E", fixtures::even_a());
        let o = ShuffleExpr::atom("O", fixtures::odd_a());
        let nf = normal_form(&ShuffleExpr::shuffle(vec![e.clone(), o])).unwrap();
        assert_eq!(words(&nf, 2), ["a", "ab", "ba"]);
        let nf = normal_form(&e).unwrap();
        assert_eq!(words(&nf, 2), ["", "b", "aa", "bb"]);
        let nf = normal_form(&ShuffleExpr::Empty).unwrap();
        assert!(words(&nf, 4).is_empty());
    }
}
