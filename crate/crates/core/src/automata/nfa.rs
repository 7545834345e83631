use std::collections::{BTreeSet, HashMap, VecDeque};

use super::{Alphabet, AutomatonError, Dfa, Word};
use crate::bitset::StateSet;

/// Nondeterministic automaton with ε-edges and any number of start states.
///
/// `accepts_empty` puts the empty word into the language without needing a
/// state for it; it is how a nullable expression is represented when every
/// state belongs to some atom automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    state_count: usize,
    letter_edges: BTreeSet<(usize, usize, usize)>,
    epsilon_edges: BTreeSet<(usize, usize)>,
    starts: BTreeSet<usize>,
    finals: BTreeSet<usize>,
    accepts_empty: bool,
}

impl Nfa {
    pub fn new(alphabet: Alphabet) -> Self {
        Nfa {
            alphabet,
            state_count: 0,
            letter_edges: BTreeSet::new(),
            epsilon_edges: BTreeSet::new(),
            starts: BTreeSet::new(),
            finals: BTreeSet::new(),
            accepts_empty: false,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn starts(&self) -> &BTreeSet<usize> {
        &self.starts
    }

    pub fn finals(&self) -> &BTreeSet<usize> {
        &self.finals
    }

    pub fn letter_edges(&self) -> &BTreeSet<(usize, usize, usize)> {
        &self.letter_edges
    }

    pub fn epsilon_edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.epsilon_edges
    }

    pub fn accepts_empty(&self) -> bool {
        self.accepts_empty
    }

    /// Adds `count` fresh states and returns the id of the first.
    pub fn add_states(&mut self, count: usize) -> usize {
        let first = self.state_count;
        self.state_count += count;
        first
    }

    fn check(&self, state: usize) -> Result<(), AutomatonError> {
        if state < self.state_count {
            Ok(())
        } else {
            Err(AutomatonError::StateOutOfRange {
                state,
                count: self.state_count,
            })
        }
    }

    pub fn add_letter_edge(
        &mut self,
        from: usize,
        letter: usize,
        to: usize,
    ) -> Result<(), AutomatonError> {
        self.check(from)?;
        self.check(to)?;
        self.letter_edges.insert((from, letter, to));
        Ok(())
    }

    pub fn add_epsilon_edge(&mut self, from: usize, to: usize) -> Result<(), AutomatonError> {
        self.check(from)?;
        self.check(to)?;
        self.epsilon_edges.insert((from, to));
        Ok(())
    }

    pub fn add_start(&mut self, state: usize) -> Result<(), AutomatonError> {
        self.check(state)?;
        self.starts.insert(state);
        Ok(())
    }

    pub fn add_final(&mut self, state: usize) -> Result<(), AutomatonError> {
        self.check(state)?;
        self.finals.insert(state);
        Ok(())
    }

    pub fn set_accepts_empty(&mut self, accepts: bool) {
        self.accepts_empty = accepts;
    }

    /// Copies the transitions of `dfa` into fresh states; returns the offset
    /// of its state 0. Start and final flags are not copied.
    pub fn embed(&mut self, dfa: &Dfa) -> Result<usize, AutomatonError> {
        if dfa.alphabet() != &self.alphabet {
            return Err(AutomatonError::AlphabetMismatch {
                left: self.alphabet.to_string(),
                right: dfa.alphabet().to_string(),
            });
        }
        let offset = self.add_states(dfa.state_count());
        for q in 0..dfa.state_count() {
            for a in 0..self.alphabet.len() {
                self.letter_edges
                    .insert((offset + q, a, offset + dfa.next(q, a)));
            }
        }
        Ok(offset)
    }

    pub fn from_dfa(dfa: &Dfa) -> Nfa {
        let mut n = Nfa::new(dfa.alphabet().clone());
        let off = n.embed(dfa).expect("same alphabet");
        n.starts.insert(off + dfa.start());
        n.finals.extend(dfa.finals().map(|q| q + off));
        n
    }

    /// `L(dfa)*` with restart edges from the finals back to the start.
    pub fn star_of(dfa: &Dfa) -> Nfa {
        let mut n = Nfa::from_dfa(dfa);
        for f in dfa.finals() {
            n.epsilon_edges.insert((f, dfa.start()));
        }
        n.accepts_empty = true;
        n
    }

    /// `L(first) L(second)` with ε-edges from the first finals to the second start.
    pub fn concat_of(first: &Dfa, second: &Dfa) -> Result<Nfa, AutomatonError> {
        first.check_same_alphabet(second)?;
        let mut n = Nfa::new(first.alphabet().clone());
        let a = n.embed(first)?;
        let b = n.embed(second)?;
        n.starts.insert(a + first.start());
        for f in first.finals() {
            n.epsilon_edges.insert((a + f, b + second.start()));
        }
        n.finals.extend(second.finals().map(|q| q + b));
        Ok(n)
    }

    /// Shuffle product: one component per factor, each letter advances
    /// exactly one component.
    pub fn shuffle_product(factors: &[Dfa]) -> Result<Nfa, AutomatonError> {
        let first = factors.first().ok_or(AutomatonError::EmptyProduct)?;
        for d in &factors[1..] {
            first.check_same_alphabet(d)?;
        }
        let k = first.alphabet().len();
        let sizes: Vec<usize> = factors.iter().map(Dfa::state_count).collect();
        let total: usize = sizes.iter().product();
        let mut n = Nfa::new(first.alphabet().clone());
        n.add_states(total);
        let mut strides = vec![1; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * sizes[i + 1];
        }
        for idx in 0..total {
            let tuple: Vec<usize> = (0..factors.len())
                .map(|i| idx / strides[i] % sizes[i])
                .collect();
            if tuple.iter().zip(factors).all(|(&q, d)| d.is_final(q)) {
                n.finals.insert(idx);
            }
            for (i, d) in factors.iter().enumerate() {
                for a in 0..k {
                    let t = d.next(tuple[i], a);
                    let target = idx + t * strides[i] - tuple[i] * strides[i];
                    n.letter_edges.insert((idx, a, target));
                }
            }
        }
        let start = factors
            .iter()
            .zip(&strides)
            .map(|(d, s)| d.start() * s)
            .sum();
        n.starts.insert(start);
        Ok(n)
    }

    pub(crate) fn epsilon_successors(&self) -> Vec<Vec<usize>> {
        let mut succ = vec![Vec::new(); self.state_count];
        for &(p, q) in &self.epsilon_edges {
            succ[p].push(q);
        }
        succ
    }

    pub(crate) fn letter_successors(&self) -> Vec<Vec<Vec<usize>>> {
        let mut succ = vec![vec![Vec::new(); self.alphabet.len()]; self.state_count];
        for &(p, a, q) in &self.letter_edges {
            succ[p][a].push(q);
        }
        succ
    }

    pub fn epsilon_closure(&self, set: &StateSet) -> StateSet {
        close(set, &self.epsilon_successors())
    }

    pub fn accepts(&self, word: &Word) -> bool {
        if word.is_empty() && self.accepts_empty {
            return true;
        }
        let eps = self.epsilon_successors();
        let succ = self.letter_successors();
        let mut current = close(
            &StateSet::from_states(self.state_count, self.starts.iter().copied()),
            &eps,
        );
        for a in word.letters() {
            let mut next = StateSet::empty(self.state_count);
            for q in current.iter() {
                for &t in &succ[q][a] {
                    next.insert(t);
                }
            }
            current = close(&next, &eps);
        }
        let accepted = current.iter().any(|q| self.finals.contains(&q));
        accepted
    }

    /// Subset construction; subsets are numbered in BFS discovery order with
    /// letters taken in alphabet order. The empty subset is the sink.
    pub fn determinize(&self) -> Dfa {
        let k = self.alphabet.len();
        let eps = self.epsilon_successors();
        let succ = self.letter_successors();
        let finals = StateSet::from_states(self.state_count, self.finals.iter().copied());
        let start = close(
            &StateSet::from_states(self.state_count, self.starts.iter().copied()),
            &eps,
        );
        let mut ids: HashMap<StateSet, usize> = HashMap::from([(start.clone(), 0)]);
        let mut subsets = vec![start];
        let mut queue = VecDeque::from([0]);
        let mut delta = Vec::new();
        while let Some(i) = queue.pop_front() {
            debug_assert_eq!(delta.len(), i * k);
            for a in 0..k {
                let mut next = StateSet::empty(self.state_count);
                for q in subsets[i].iter() {
                    for &t in &succ[q][a] {
                        next.insert(t);
                    }
                }
                let next = close(&next, &eps);
                let id = match ids.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = subsets.len();
                        ids.insert(next.clone(), id);
                        subsets.push(next);
                        queue.push_back(id);
                        id
                    }
                };
                delta.push(id);
            }
        }
        let flags: Vec<bool> = subsets.iter().map(|s| s.intersects(&finals)).collect();
        let dfa = Dfa::from_parts(self.alphabet.clone(), delta, 0, flags);
        if self.accepts_empty && !dfa.is_final(0) {
            dfa.with_fresh_accepting_start()
        } else {
            dfa
        }
    }

    /// The letter edges read as a DFA (start 0, no finals), provided every
    /// state has exactly one successor per letter.
    pub fn letter_core(&self) -> Result<Dfa, AutomatonError> {
        if self.state_count == 0 {
            return Err(AutomatonError::NoStates);
        }
        let succ = self.letter_successors();
        let k = self.alphabet.len();
        let mut rows = vec![vec![0; self.state_count]; k];
        for (q, per_letter) in succ.iter().enumerate() {
            for (a, targets) in per_letter.iter().enumerate() {
                if targets.len() != 1 {
                    return Err(AutomatonError::NotFunctional {
                        state: q,
                        letter: self.alphabet.letter(a),
                        count: targets.len(),
                    });
                }
                rows[a][q] = targets[0];
            }
        }
        Dfa::new(self.alphabet.clone(), self.state_count, &rows, 0, &[])
    }
}

pub(crate) fn close(set: &StateSet, eps: &[Vec<usize>]) -> StateSet {
    let mut out = set.clone();
    let mut stack: Vec<usize> = set.iter().collect();
    while let Some(q) = stack.pop() {
        for &t in &eps[q] {
            if out.insert(t) {
                stack.push(t);
            }
        }
    }
    out
}
