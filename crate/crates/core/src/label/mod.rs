//! State-label functions over `ℕ₀^k` and the automata read off them.
//!
//! A [`LabelFunction`] fixes a finite carrier `Q`, a step `f(S, a) ⊆ Q`, the
//! label of the origin and an acceptance test. The label of every other point
//! `p` is the union of `f(σ(q), b)` over all predecessors `p = q + ψ(b)`.
//! When `f` dominates a permutation semi-automaton on `Q`, labels along every
//! axis-parallel ray become periodic after at most `(|Q|-1)·L_j` steps with a
//! period dividing `L_j`, the order of the letter. [`GridBounds::guaranteed`]
//! uses exactly these numbers, so the box it describes determines the whole
//! labelling and [`grid_to_dfa`] turns it into a commutative DFA.

mod build;
mod grid;

pub use build::{
    build_expr_nfa, build_expr_nfa_dfa, build_iterstar, build_iterstar_dfa, build_perm,
    build_perm_dfa, build_shuffle, build_shuffle_dfa, BuildOptions, Construction, DEFAULT_GRID_CAP,
};
pub use grid::{compute_grid, grid_to_dfa, ray_profile, GridBounds, RayProfile, StateLabelGrid};

use thiserror::Error;

use crate::automata::{Alphabet, AutomatonError, Dfa, Nfa, Word};
use crate::bitset::StateSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabelError {
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error("shuffle needs at least one automaton")]
    EmptyShuffle,
    #[error("grid of extents {extents:?} has {points} points, above the cap of {cap}")]
    GridCapExceeded {
        extents: Vec<usize>,
        points: u128,
        cap: u128,
    },
    #[error("point {point:?} is outside the grid of extents {extents:?}")]
    OutsideBox {
        point: Vec<usize>,
        extents: Vec<usize>,
    },
    #[error("ray base {base:?} has non-zero coordinate on axis {axis}")]
    NotOnHyperplane { axis: usize, base: Vec<usize> },
    #[error("no repetition along axis {axis} from {base:?} inside the box")]
    NoRepetition { axis: usize, base: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum StepRule {
    /// `f(S, a) = δ(S, a)`
    Transition,
    /// add `start` whenever the image meets `finals`
    Restart { start: usize, finals: StateSet },
    /// component `i` finishing starts component `i + 1`, left to right
    Cascade {
        starts: Vec<usize>,
        finals: Vec<StateSet>,
    },
    /// ε-closure before and after the letter
    Closure { closure: Vec<StateSet> },
}

/// A step function `f : P(Q) × Σ → P(Q)` together with the origin label and
/// the acceptance test `S ∩ F ≠ ∅`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelFunction {
    transition: Dfa,
    rule: StepRule,
    initial: StateSet,
    accepting: StateSet,
}

impl LabelFunction {
    /// `f(S, a) = δ(S, a)`, origin `{q₀}`: the labels are the states
    /// reachable by all words with a given Parikh vector.
    ///
    /// Any DFA is accepted here; only the builders insist on permutations.
    pub fn perm(dfa: &Dfa) -> Self {
        let n = dfa.state_count();
        LabelFunction {
            transition: dfa.clone(),
            rule: StepRule::Transition,
            initial: StateSet::singleton(n, dfa.start()),
            accepting: StateSet::from_states(n, dfa.finals()),
        }
    }

    /// Like [`LabelFunction::perm`], but the start state re-enters every
    /// label whose image hits a final state.
    pub fn iterated(dfa: &Dfa) -> Self {
        let n = dfa.state_count();
        let finals = StateSet::from_states(n, dfa.finals());
        LabelFunction {
            transition: dfa.clone(),
            rule: StepRule::Restart {
                start: dfa.start(),
                finals: finals.clone(),
            },
            initial: StateSet::singleton(n, dfa.start()),
            accepting: finals,
        }
    }

    /// Labels over the disjoint union of `dfas`, where reaching a final state
    /// of component `i` starts component `i + 1`. Accepts when the last
    /// component is in a final state.
    pub fn shuffle(dfas: &[Dfa]) -> Result<Self, LabelError> {
        let first = dfas.first().ok_or(LabelError::EmptyShuffle)?;
        let mut nfa = Nfa::new(first.alphabet().clone());
        let mut offsets = Vec::with_capacity(dfas.len());
        for d in dfas {
            offsets.push(nfa.embed(d)?);
        }
        let transition = nfa.letter_core()?;
        let n = transition.state_count();
        let starts: Vec<usize> = dfas
            .iter()
            .zip(&offsets)
            .map(|(d, o)| o + d.start())
            .collect();
        let finals: Vec<StateSet> = dfas
            .iter()
            .zip(&offsets)
            .map(|(d, o)| StateSet::from_states(n, d.finals().map(|q| q + o)))
            .collect();
        let mut initial = StateSet::singleton(n, starts[0]);
        for i in 0..dfas.len() - 1 {
            if initial.contains(starts[i]) && finals[i].contains(starts[i]) {
                initial.insert(starts[i + 1]);
            }
        }
        let accepting = finals.last().expect("non-empty").clone();
        Ok(LabelFunction {
            transition,
            rule: StepRule::Cascade { starts, finals },
            initial,
            accepting,
        })
    }

    /// Labels driven by an ε-NFA whose letter edges form a permutation
    /// semi-automaton: `f(S, a) = E(δ(E(S), a))` with `E` the ε-closure.
    pub fn expr_nfa(nfa: &Nfa) -> Result<Self, LabelError> {
        let transition = nfa.letter_core()?;
        transition.ensure_permutation()?;
        let n = nfa.state_count();
        let closure: Vec<StateSet> = (0..n)
            .map(|q| nfa.epsilon_closure(&StateSet::singleton(n, q)))
            .collect();
        let initial = nfa.epsilon_closure(&StateSet::from_states(n, nfa.starts().iter().copied()));
        Ok(LabelFunction {
            transition,
            rule: StepRule::Closure { closure },
            initial,
            accepting: StateSet::from_states(n, nfa.finals().iter().copied()),
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.transition.alphabet()
    }

    pub fn carrier_size(&self) -> usize {
        self.transition.state_count()
    }

    /// The semi-automaton `δ` that every step dominates.
    pub fn compat_transition(&self) -> &Dfa {
        &self.transition
    }

    pub fn initial_label(&self) -> &StateSet {
        &self.initial
    }

    pub fn is_accepting(&self, label: &StateSet) -> bool {
        label.intersects(&self.accepting)
    }

    /// `δ(S, a)` on the carrier.
    pub fn image(&self, set: &StateSet, letter: usize) -> StateSet {
        let mut out = StateSet::empty(set.width());
        for q in set.iter() {
            out.insert(self.transition.next(q, letter));
        }
        out
    }

    pub fn step(&self, set: &StateSet, letter: usize) -> StateSet {
        match &self.rule {
            StepRule::Transition => self.image(set, letter),
            StepRule::Restart { start, finals } => {
                let mut out = self.image(set, letter);
                if out.intersects(finals) {
                    out.insert(*start);
                }
                out
            }
            StepRule::Cascade { starts, finals } => {
                let mut out = self.image(set, letter);
                for i in 0..starts.len() - 1 {
                    if out.intersects(&finals[i]) {
                        out.insert(starts[i + 1]);
                    }
                }
                out
            }
            StepRule::Closure { closure } => {
                let closed = close_with(set, closure);
                close_with(&self.image(&closed, letter), closure)
            }
        }
    }

    /// `f(S, ε) = S`, `f(S, ux) = f(f(S, u), x)`.
    pub fn step_word(&self, set: &StateSet, word: &Word) -> StateSet {
        word.letters().fold(set.clone(), |s, a| self.step(&s, a))
    }
}

fn close_with(set: &StateSet, closure: &[StateSet]) -> StateSet {
    let mut out = StateSet::empty(set.width());
    for q in set.iter() {
        out.union_with(&closure[q]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::fixtures;

    fn set(n: usize, states: &[usize]) -> StateSet {
        StateSet::from_states(n, states.iter().copied())
    }

    #[test]
    fn perm_steps() {
        let lf = LabelFunction::perm(&fixtures::even_a());
        assert_eq!(lf.step(&set(2, &[0]), 0), set(2, &[1]));
        let lf = LabelFunction::perm(&fixtures::ab_star());
        assert_eq!(lf.step(&set(3, &[0, 2]), 0), set(3, &[1, 2]));
        let lf = LabelFunction::perm(&fixtures::s3());
        assert_eq!(lf.step(&set(3, &[0, 1]), 0), set(3, &[0, 1]));
        assert_eq!(lf.initial_label(), &set(3, &[0]));
    }

    #[test]
    fn iterated_steps() {
        let lf = LabelFunction::iterated(&fixtures::even_a());
        assert_eq!(lf.step(&set(2, &[1]), 0), set(2, &[0]));
        let lf = LabelFunction::iterated(&fixtures::odd_a());
        assert_eq!(lf.step(&set(2, &[0]), 0), set(2, &[0, 1]));
        let lf = LabelFunction::iterated(&fixtures::z3());
        assert_eq!(lf.step(&set(3, &[2]), 0), set(3, &[0]));
    }

    #[test]
    fn shuffle_initial_labels() {
        let lf = LabelFunction::shuffle(&[fixtures::even_a(), fixtures::odd_a()]).unwrap();
        assert_eq!(lf.carrier_size(), 4);
        assert_eq!(lf.initial_label(), &set(4, &[0, 2]));
        let lf = LabelFunction::shuffle(&[fixtures::z3(), fixtures::z3()]).unwrap();
        assert_eq!(lf.initial_label(), &set(6, &[0, 3]));
        let lf = LabelFunction::shuffle(&[fixtures::odd_a(), fixtures::even_a()]).unwrap();
        assert_eq!(lf.initial_label(), &set(4, &[0]));
        assert_eq!(
            LabelFunction::shuffle(&[]).unwrap_err(),
            LabelError::EmptyShuffle
        );
        assert!(matches!(
            LabelFunction::shuffle(&[fixtures::even_a(), fixtures::z3()]),
            Err(LabelError::Automaton(
                AutomatonError::AlphabetMismatch { .. }
            ))
        ));
    }

    #[test]
    fn shuffle_cascades_through_nullable_components() {
        // ODD_A · EVEN_A · ODD_A: after one `a` the middle component is
        // entered in its (final) start state, so the last one starts too
        let lf =
            LabelFunction::shuffle(&[fixtures::odd_a(), fixtures::even_a(), fixtures::odd_a()])
                .unwrap();
        let after = lf.step(lf.initial_label(), 0);
        assert_eq!(after, set(6, &[1, 2, 4]));
        assert!(lf.is_accepting(&lf.step(&after, 0)));
    }

    #[test]
    fn single_shuffle_matches_perm() {
        for d in fixtures::permutation() {
            let one = LabelFunction::shuffle(std::slice::from_ref(&d)).unwrap();
            let plain = LabelFunction::perm(&d);
            assert_eq!(one.initial_label(), plain.initial_label());
            let n = d.state_count();
            for mask in 0..1usize << n {
                let s = StateSet::from_states(n, (0..n).filter(|q| mask >> q & 1 == 1));
                for a in 0..d.alphabet().len() {
                    assert_eq!(one.step(&s, a), plain.step(&s, a));
                }
                assert_eq!(one.is_accepting(&s), plain.is_accepting(&s));
            }
        }
    }

    #[test]
    fn star_nfa_matches_iterated_on_even_a() {
        let e = fixtures::even_a();
        let nfa_lf = LabelFunction::expr_nfa(&Nfa::star_of(&e)).unwrap();
        let iter_lf = LabelFunction::iterated(&e);
        assert_eq!(nfa_lf.initial_label(), iter_lf.initial_label());
        for mask in 0..4usize {
            let s = StateSet::from_states(2, (0..2).filter(|q| mask >> q & 1 == 1));
            for a in 0..2 {
                assert_eq!(nfa_lf.step(&s, a), iter_lf.step(&s, a));
            }
            assert_eq!(nfa_lf.is_accepting(&s), iter_lf.is_accepting(&s));
        }
    }

    #[test]
    fn atom_nfa_matches_perm() {
        let s3 = fixtures::s3();
        let nfa_lf = LabelFunction::expr_nfa(&Nfa::from_dfa(&s3)).unwrap();
        let lf = LabelFunction::perm(&s3);
        assert_eq!(nfa_lf.initial_label(), lf.initial_label());
        for mask in 0..8usize {
            let s = StateSet::from_states(3, (0..3).filter(|q| mask >> q & 1 == 1));
            for a in 0..2 {
                assert_eq!(nfa_lf.step(&s, a), lf.step(&s, a));
            }
        }
    }

    #[test]
    fn expr_nfa_rejects_non_permutation_core() {
        let err = LabelFunction::expr_nfa(&Nfa::from_dfa(&fixtures::ab_star())).unwrap_err();
        assert!(matches!(
            err,
            LabelError::Automaton(AutomatonError::NotPermutation { .. })
        ));
    }

    #[test]
    fn steps_dominate_the_transition() {
        let lfs = vec![
            LabelFunction::perm(&fixtures::s3()),
            LabelFunction::iterated(&fixtures::odd_a()),
            LabelFunction::shuffle(&[fixtures::even_a(), fixtures::odd_a(), fixtures::s3()])
                .unwrap(),
            LabelFunction::expr_nfa(
                &Nfa::concat_of(&fixtures::even_a(), &fixtures::odd_a()).unwrap(),
            )
            .unwrap(),
        ];
        for lf in lfs {
            let n = lf.carrier_size();
            for mask in 0..1usize << n {
                let s = StateSet::from_states(n, (0..n).filter(|q| mask >> q & 1 == 1));
                for a in 0..lf.alphabet().len() {
                    assert!(lf.image(&s, a).is_subset(&lf.step(&s, a)));
                }
            }
        }
    }
}
