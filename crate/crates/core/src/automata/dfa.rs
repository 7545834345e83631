use std::collections::VecDeque;

use super::{Alphabet, AutomatonError, Word};

/// A complete deterministic finite automaton.
///
/// The transition table is stored row-major: `delta[q * k + a]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Dfa {
    alphabet: Alphabet,
    delta: Vec<usize>,
    start: usize,
    finals: Vec<bool>,
}

/// Outcome of checking whether every letter permutes the state set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationReport {
    pub is_permutation: bool,
    /// First collision found: `(letter, first, second, target)`.
    pub offending: Option<(char, usize, usize, usize)>,
    /// Order of each letter, present iff `is_permutation`.
    pub orders: Option<Vec<u64>>,
}

/// Index and period of the state sequence reached by repeating one letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnaryProfile {
    pub index: usize,
    pub period: usize,
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

impl Dfa {
    /// Builds a DFA from per-letter transition rows: `rows[a][q]` is `δ(q, a)`.
    pub fn new(
        alphabet: Alphabet,
        state_count: usize,
        rows: &[Vec<usize>],
        start: usize,
        finals: &[usize],
    ) -> Result<Self, AutomatonError> {
        if state_count == 0 {
            return Err(AutomatonError::NoStates);
        }
        let k = alphabet.len();
        if rows.len() != k {
            let letter = alphabet.letter(rows.len().min(k - 1));
            return Err(AutomatonError::IncompleteTable {
                letter,
                got: 0,
                expected: state_count,
            });
        }
        let mut delta = vec![0; state_count * k];
        for (a, row) in rows.iter().enumerate() {
            if row.len() != state_count {
                return Err(AutomatonError::IncompleteTable {
                    letter: alphabet.letter(a),
                    got: row.len(),
                    expected: state_count,
                });
            }
            for (q, &t) in row.iter().enumerate() {
                check_state(t, state_count)?;
                delta[q * k + a] = t;
            }
        }
        check_state(start, state_count)?;
        let mut final_flags = vec![false; state_count];
        for &f in finals {
            check_state(f, state_count)?;
            final_flags[f] = true;
        }
        Ok(Dfa {
            alphabet,
            delta,
            start,
            finals: final_flags,
        })
    }

    pub(crate) fn from_parts(
        alphabet: Alphabet,
        delta: Vec<usize>,
        start: usize,
        finals: Vec<bool>,
    ) -> Self {
        debug_assert_eq!(delta.len(), finals.len() * alphabet.len());
        debug_assert!(delta.iter().all(|&t| t < finals.len()));
        Dfa {
            alphabet,
            delta,
            start,
            finals,
        }
    }

    /// One-state automaton accepting nothing.
    pub fn empty_language(alphabet: Alphabet) -> Self {
        let k = alphabet.len();
        Dfa::from_parts(alphabet, vec![0; k], 0, vec![false])
    }

    /// One-state automaton accepting every word.
    pub fn universal(alphabet: Alphabet) -> Self {
        let k = alphabet.len();
        Dfa::from_parts(alphabet, vec![0; k], 0, vec![true])
    }

    /// Two-state automaton accepting only the empty word.
    pub fn epsilon_only(alphabet: Alphabet) -> Self {
        let k = alphabet.len();
        Dfa::from_parts(alphabet, vec![1; 2 * k], 0, vec![true, false])
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.finals.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn next(&self, state: usize, letter: usize) -> usize {
        self.delta[state * self.alphabet.len() + letter]
    }

    pub fn is_final(&self, state: usize) -> bool {
        self.finals[state]
    }

    pub fn finals(&self) -> impl Iterator<Item = usize> + '_ {
        self.finals
            .iter()
            .enumerate()
            .filter_map(|(q, &f)| f.then_some(q))
    }

    pub fn run_from(&self, state: usize, word: &Word) -> usize {
        word.letters().fold(state, |q, a| self.next(q, a))
    }

    pub fn accepts(&self, word: &Word) -> bool {
        self.finals[self.run_from(self.start, word)]
    }

    /// Membership for a word given as text.
    pub fn member(&self, word: &str) -> Result<bool, AutomatonError> {
        Ok(self.accepts(&self.alphabet.word(word)?))
    }

    /// All accepted words of length at most `max_len`, length-then-lex.
    pub fn enumerate(&self, max_len: usize) -> Vec<Word> {
        let k = self.alphabet.len();
        let mut out = Vec::new();
        let mut layer = vec![(Word::empty(), self.start)];
        for len in 0..=max_len {
            out.extend(
                layer
                    .iter()
                    .filter(|(_, q)| self.finals[*q])
                    .map(|(w, _)| w.clone()),
            );
            if len == max_len {
                break;
            }
            let mut next = Vec::with_capacity(layer.len() * k);
            for (w, q) in &layer {
                for a in 0..k {
                    let mut v = w.clone();
                    v.push(a);
                    next.push((v, self.next(*q, a)));
                }
            }
            layer = next;
        }
        out
    }

    pub fn validate_permutation(&self) -> PermutationReport {
        let n = self.state_count();
        let k = self.alphabet.len();
        for a in 0..k {
            let mut preimage = vec![usize::MAX; n];
            for q in 0..n {
                let t = self.next(q, a);
                if preimage[t] != usize::MAX {
                    return PermutationReport {
                        is_permutation: false,
                        offending: Some((self.alphabet.letter(a), preimage[t], q, t)),
                        orders: None,
                    };
                }
                preimage[t] = q;
            }
        }
        let orders = (0..k).map(|a| self.permutation_order(a)).collect();
        PermutationReport {
            is_permutation: true,
            offending: None,
            orders: Some(orders),
        }
    }

    pub(crate) fn ensure_permutation(&self) -> Result<Vec<u64>, AutomatonError> {
        let report = self.validate_permutation();
        match (report.orders, report.offending) {
            (Some(orders), _) => Ok(orders),
            (None, Some((letter, first, second, target))) => Err(AutomatonError::NotPermutation {
                letter,
                first,
                second,
                target,
            }),
            (None, None) => unreachable!("failed report always names a collision"),
        }
    }

    // lcm of cycle lengths; only meaningful when the letter is a bijection
    fn permutation_order(&self, letter: usize) -> u64 {
        let n = self.state_count();
        let mut seen = vec![false; n];
        let mut order = 1u64;
        for q in 0..n {
            if seen[q] {
                continue;
            }
            let mut len = 0u64;
            let mut p = q;
            while !seen[p] {
                seen[p] = true;
                p = self.next(p, letter);
                len += 1;
            }
            order = lcm(order, len);
        }
        order
    }

    /// Index and period of `from, δ(from, a), δ(from, aa), …`.
    pub fn unary_profile(&self, letter: usize, from: usize) -> UnaryProfile {
        let mut first_visit = vec![usize::MAX; self.state_count()];
        let mut q = from;
        let mut step = 0;
        loop {
            if first_visit[q] != usize::MAX {
                let index = first_visit[q];
                return UnaryProfile {
                    index,
                    period: step - index,
                };
            }
            first_visit[q] = step;
            q = self.next(q, letter);
            step += 1;
        }
    }

    /// Renumbers reachable states in BFS order from the start (letters in
    /// alphabet order), dropping unreachable ones.
    pub fn canonical(&self) -> Dfa {
        let k = self.alphabet.len();
        let mut id = vec![usize::MAX; self.state_count()];
        let mut order = Vec::new();
        let mut queue = VecDeque::from([self.start]);
        id[self.start] = 0;
        order.push(self.start);
        while let Some(q) = queue.pop_front() {
            for a in 0..k {
                let t = self.next(q, a);
                if id[t] == usize::MAX {
                    id[t] = order.len();
                    order.push(t);
                    queue.push_back(t);
                }
            }
        }
        let mut delta = Vec::with_capacity(order.len() * k);
        for &q in &order {
            for a in 0..k {
                delta.push(id[self.next(q, a)]);
            }
        }
        let finals = order.iter().map(|&q| self.finals[q]).collect();
        Dfa::from_parts(self.alphabet.clone(), delta, 0, finals)
    }

    pub fn minimize(&self) -> Dfa {
        super::minimize::minimize(self)
    }

    pub fn equivalent(&self, other: &Dfa) -> Result<bool, AutomatonError> {
        self.check_same_alphabet(other)?;
        Ok(self.minimize() == other.minimize())
    }

    pub(crate) fn check_same_alphabet(&self, other: &Dfa) -> Result<(), AutomatonError> {
        if self.alphabet != other.alphabet {
            return Err(AutomatonError::AlphabetMismatch {
                left: self.alphabet.to_string(),
                right: other.alphabet.to_string(),
            });
        }
        Ok(())
    }

    /// Product over all state tuples (reachable or not) with acceptance
    /// decided by `accept` on the component flags.
    pub fn product<F>(ds: &[&Dfa], accept: F) -> Result<Dfa, AutomatonError>
    where
        F: Fn(&[bool]) -> bool,
    {
        let first = ds.first().ok_or(AutomatonError::EmptyProduct)?;
        for d in &ds[1..] {
            first.check_same_alphabet(d)?;
        }
        let k = first.alphabet.len();
        let sizes: Vec<usize> = ds.iter().map(|d| d.state_count()).collect();
        let total: usize = sizes.iter().product();
        let encode = |tuple: &[usize]| {
            tuple
                .iter()
                .zip(&sizes)
                .fold(0, |acc, (&q, &n)| acc * n + q)
        };
        let mut delta = vec![0; total * k];
        let mut finals = vec![false; total];
        let mut tuple = vec![0; ds.len()];
        let mut flags = vec![false; ds.len()];
        let mut image = vec![0; ds.len()];
        for idx in 0..total {
            let mut rest = idx;
            for i in (0..ds.len()).rev() {
                tuple[i] = rest % sizes[i];
                rest /= sizes[i];
            }
            for (i, d) in ds.iter().enumerate() {
                flags[i] = d.is_final(tuple[i]);
            }
            finals[idx] = accept(&flags);
            for a in 0..k {
                for (i, d) in ds.iter().enumerate() {
                    image[i] = d.next(tuple[i], a);
                }
                delta[idx * k + a] = encode(&image);
            }
        }
        let start: Vec<usize> = ds.iter().map(|d| d.start).collect();
        Ok(Dfa::from_parts(
            first.alphabet.clone(),
            delta,
            encode(&start),
            finals,
        ))
    }

    /// Union of arbitrary DFAs via the reachable product, minimized.
    pub fn union(ds: &[&Dfa]) -> Result<Dfa, AutomatonError> {
        Ok(Dfa::product(ds, |flags| flags.iter().any(|&f| f))?.minimize())
    }

    /// Copy with a fresh accepting start state whose transitions copy the
    /// old start's. Adds the empty word and nothing else.
    pub fn with_fresh_accepting_start(&self) -> Dfa {
        let k = self.alphabet.len();
        let n = self.state_count();
        let mut delta = self.delta.clone();
        for a in 0..k {
            delta.push(self.next(self.start, a));
        }
        let mut finals = self.finals.clone();
        finals.push(true);
        Dfa::from_parts(self.alphabet.clone(), delta, n, finals)
    }

    /// True iff `δ(q, ab) = δ(q, ba)` for every state and letter pair.
    pub fn is_commutative(&self) -> bool {
        let k = self.alphabet.len();
        (0..self.state_count()).all(|q| {
            (0..k).all(|a| {
                (0..k).all(|b| self.next(self.next(q, a), b) == self.next(self.next(q, b), a))
            })
        })
    }

    /// Disjoint sum: states of `self` followed by a shifted copy of `other`.
    /// The start stays in `self`, so the copy is unreachable.
    pub fn disjoint_sum(&self, other: &Dfa) -> Result<Dfa, AutomatonError> {
        self.check_same_alphabet(other)?;
        let n = self.state_count();
        let mut delta = self.delta.clone();
        delta.extend(other.delta.iter().map(|&t| t + n));
        let mut finals = self.finals.clone();
        finals.extend_from_slice(&other.finals);
        Ok(Dfa::from_parts(
            self.alphabet.clone(),
            delta,
            self.start,
            finals,
        ))
    }
}

fn check_state(state: usize, count: usize) -> Result<(), AutomatonError> {
    if state >= count {
        Err(AutomatonError::StateOutOfRange { state, count })
    } else {
        Ok(())
    }
}

/// Union of permutation automata as their full product.
///
/// The result is again a permutation automaton and the order of each letter
/// is the lcm of the inputs' orders.
pub fn union_product(ds: &[Dfa]) -> Result<Dfa, AutomatonError> {
    for d in ds {
        d.ensure_permutation()?;
    }
    let refs: Vec<&Dfa> = ds.iter().collect();
    Dfa::product(&refs, |flags| flags.iter().any(|&f| f))
}
