//! Brute-force bounded semantics of shuffle expressions. Every derived
//! value in the test suites is checked against this module, which shares no
//! code with the grid constructions.

use std::collections::BTreeSet;
use std::fmt;

use crate::automata::{Alphabet, Dfa, Word};
use crate::bitset::StateSet;
use crate::expr::ShuffleExpr;
use crate::label::LabelFunction;
use crate::parikh::{anagrams, psi, ParikhVector};

/// Most candidate words an atom scan may enumerate; `n = 9` for two letters.
pub const CANDIDATE_CAP: u128 = 1023;
/// Most words any intermediate set may hold.
pub const WORD_CAP: usize = 1_000_000;
/// Largest coordinate sum accepted by [`bruteforce_sigma`].
pub const SIGMA_CAP: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("{k} letters up to length {n} exceed {CANDIDATE_CAP} candidate words")]
    LengthCap { k: usize, n: usize },
    #[error("word set grew beyond {WORD_CAP} words")]
    SetCap,
    #[error("coordinate sum {sum} exceeds {SIGMA_CAP}")]
    SigmaCap { sum: usize },
    #[error("expression alphabet {expr} differs from automaton alphabet {dfa}")]
    AlphabetMismatch { expr: String, dfa: String },
}

/// `L ∩ Σ^{≤n}` for some language `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedLanguage {
    max_len: usize,
    words: BTreeSet<Word>,
}

impl BoundedLanguage {
    pub fn new(max_len: usize, words: impl IntoIterator<Item = Word>) -> Self {
        BoundedLanguage {
            max_len,
            words: words.into_iter().filter(|w| w.len() <= max_len).collect(),
        }
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn words(&self) -> &BTreeSet<Word> {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.contains(w)
    }

    pub fn truncate(&self, m: usize) -> BoundedLanguage {
        BoundedLanguage::new(m.min(self.max_len), self.words.iter().cloned())
    }

    pub fn parikh_image(&self, k: usize) -> BTreeSet<ParikhVector> {
        self.words.iter().map(|w| psi(w, k)).collect()
    }
}

fn check_length(k: usize, n: usize) -> Result<(), OracleError> {
    let mut total: u128 = 0;
    let mut layer: u128 = 1;
    for _ in 0..=n {
        total += layer;
        if total > CANDIDATE_CAP {
            return Err(OracleError::LengthCap { k, n });
        }
        layer = layer.saturating_mul(k as u128);
    }
    Ok(())
}

fn guard(set: &BTreeSet<Word>) -> Result<(), OracleError> {
    if set.len() > WORD_CAP {
        Err(OracleError::SetCap)
    } else {
        Ok(())
    }
}

/// All interleavings of `u` and `v`.
pub fn shuffle_words(u: &Word, v: &Word) -> BTreeSet<Word> {
    fn go(u: &[usize], v: &[usize], prefix: &mut Vec<usize>, out: &mut BTreeSet<Word>) {
        if u.is_empty() && v.is_empty() {
            out.insert(Word::from_indices(prefix.iter().copied()));
            return;
        }
        if let Some((&x, rest)) = u.split_first() {
            prefix.push(x);
            go(rest, v, prefix, out);
            prefix.pop();
        }
        if let Some((&y, rest)) = v.split_first() {
            prefix.push(y);
            go(u, rest, prefix, out);
            prefix.pop();
        }
    }
    let u: Vec<usize> = u.letters().collect();
    let v: Vec<usize> = v.letters().collect();
    let mut out = BTreeSet::new();
    go(&u, &v, &mut Vec::with_capacity(u.len() + v.len()), &mut out);
    out
}

#[derive(Clone, Copy)]
enum Op {
    Concat,
    Shuffle,
}

fn combine(
    op: Op,
    left: &BTreeSet<Word>,
    right: &BTreeSet<Word>,
    n: usize,
) -> Result<BTreeSet<Word>, OracleError> {
    let mut out = BTreeSet::new();
    for u in left {
        for v in right {
            if u.len() + v.len() > n {
                continue;
            }
            match op {
                Op::Concat => {
                    out.insert(u.concat(v));
                }
                Op::Shuffle => out.extend(shuffle_words(u, v)),
            }
        }
        guard(&out)?;
    }
    Ok(out)
}

// Least set containing ε and closed under `· op base`, restricted to Σ^{≤n}.
fn closure(op: Op, base: &BTreeSet<Word>, n: usize) -> Result<BTreeSet<Word>, OracleError> {
    let nonempty: BTreeSet<Word> = base.iter().filter(|w| !w.is_empty()).cloned().collect();
    let mut all = BTreeSet::from([Word::empty()]);
    let mut frontier = all.clone();
    while !frontier.is_empty() {
        let next = combine(op, &frontier, &nonempty, n)?;
        frontier = next.into_iter().filter(|w| !all.contains(w)).collect();
        all.extend(frontier.iter().cloned());
        guard(&all)?;
    }
    Ok(all)
}

fn eval(e: &ShuffleExpr, n: usize) -> Result<BTreeSet<Word>, OracleError> {
    match e {
        ShuffleExpr::Atom(a) => {
            let alphabet = a.dfa.alphabet();
            check_length(alphabet.len(), n)?;
            Ok(alphabet
                .words_up_to(n)
                .into_iter()
                .filter(|w| a.dfa.accepts(w))
                .collect())
        }
        ShuffleExpr::FiniteSet { words, .. } => {
            Ok(words.iter().filter(|w| w.len() <= n).cloned().collect())
        }
        ShuffleExpr::Epsilon => Ok(BTreeSet::from([Word::empty()])),
        ShuffleExpr::Empty => Ok(BTreeSet::new()),
        ShuffleExpr::Union(cs) => {
            let mut out = BTreeSet::new();
            for c in cs {
                out.extend(eval(c, n)?);
                guard(&out)?;
            }
            Ok(out)
        }
        ShuffleExpr::Concat(cs) | ShuffleExpr::Shuffle(cs) => {
            let op = if matches!(e, ShuffleExpr::Concat(_)) {
                Op::Concat
            } else {
                Op::Shuffle
            };
            let mut acc = BTreeSet::from([Word::empty()]);
            for c in cs {
                acc = combine(op, &acc, &eval(c, n)?, n)?;
            }
            Ok(acc)
        }
        ShuffleExpr::Star(c) => closure(Op::Concat, &eval(c, n)?, n),
        ShuffleExpr::IterShuffle(c) => closure(Op::Shuffle, &eval(c, n)?, n),
    }
}

/// `L(e) ∩ Σ^{≤n}` by direct evaluation. Every factor of a word of length
/// at most `n` has length at most `n`, so truncating intermediate results
/// is exact.
pub fn bounded_words(e: &ShuffleExpr, n: usize) -> Result<BoundedLanguage, OracleError> {
    if let Some(a) = e.alphabet() {
        check_length(a.len(), n)?;
    }
    Ok(BoundedLanguage {
        max_len: n,
        words: eval(e, n)?,
    })
}

/// Words of length at most `n` accepted by `d`.
pub fn dfa_words(d: &Dfa, n: usize) -> Result<BoundedLanguage, OracleError> {
    check_length(d.alphabet().len(), n)?;
    Ok(BoundedLanguage::new(n, d.enumerate(n)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Expression,
    Automaton,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub word: Word,
    pub psi: ParikhVector,
    pub accepted_by: Side,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub alphabet: Alphabet,
    pub max_len: usize,
    pub counterexample: Option<Counterexample>,
    /// Distinct Parikh vectors on each side.
    pub expr_vectors: usize,
    pub dfa_vectors: usize,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => f.write_str("PASS"),
            Some(c) => {
                let word = if c.word.is_empty() {
                    "ε".to_string()
                } else {
                    self.alphabet.render(&c.word)
                };
                let side = match c.accepted_by {
                    Side::Expression => "expression",
                    Side::Automaton => "automaton",
                };
                write!(f, "FAIL word={word} psi={} accepted-by={side}", c.psi)
            }
        }
    }
}

/// Compares the Parikh images of `e` and `d` up to length `n`. For an
/// automaton closed under commutation this is exactly agreement with
/// `perm(L(e))` on `Σ^{≤n}`.
pub fn cross_check(e: &ShuffleExpr, d: &Dfa, n: usize) -> Result<CheckReport, OracleError> {
    let alphabet = d.alphabet();
    if let Some(a) = e.alphabet() {
        if a != alphabet {
            return Err(OracleError::AlphabetMismatch {
                expr: a.to_string(),
                dfa: alphabet.to_string(),
            });
        }
    }
    let k = alphabet.len();
    let left = bounded_words(e, n)?.parikh_image(k);
    let right = dfa_words(d, n)?.parikh_image(k);
    let counterexample = alphabet.words_up_to(n).into_iter().find_map(|w| {
        let p = psi(&w, k);
        match (left.contains(&p), right.contains(&p)) {
            (true, false) => Some(Counterexample {
                word: w,
                psi: p,
                accepted_by: Side::Expression,
            }),
            (false, true) => Some(Counterexample {
                word: w,
                psi: p,
                accepted_by: Side::Automaton,
            }),
            _ => None,
        }
    });
    Ok(CheckReport {
        alphabet: alphabet.clone(),
        max_len: n,
        counterexample,
        expr_vectors: left.len(),
        dfa_vectors: right.len(),
    })
}

/// The label at `p` by unrolling the recurrence completely: the union over
/// all words `w` with `ψ(w) = p` of the step function applied along `w`.
pub fn bruteforce_sigma(lf: &LabelFunction, p: &ParikhVector) -> Result<StateSet, OracleError> {
    if p.total() > SIGMA_CAP {
        return Err(OracleError::SigmaCap { sum: p.total() });
    }
    let mut out = StateSet::empty(lf.carrier_size());
    for w in anagrams(p) {
        out.union_with(&lf.step_word(lf.initial_label(), &w));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::fixtures;
    use crate::label::{build_iterstar_dfa, compute_grid, GridBounds};
    use crate::ParikhVector;

    fn render(l: &BoundedLanguage) -> Vec<String> {
        let a = fixtures::even_a().alphabet().clone();
        l.words().iter().map(|w| a.render(w)).collect()
    }

    fn e() -> ShuffleExpr {
        ShuffleExpr::atom("E", fixtures::even_a())
    }
    fn o() -> ShuffleExpr {
        ShuffleExpr::atom("O", fixtures::odd_a())
    }

    #[test]
    fn bounded_words_examples() {
        assert_eq!(
            render(&bounded_words(&e(), 2).unwrap()),
            ["", "b", "aa", "bb"]
        );
        assert_eq!(
            render(&bounded_words(&ShuffleExpr::iter_shuffle(o()), 2).unwrap()),
            ["", "a", "aa", "ab", "ba"]
        );
        assert_eq!(
            render(&bounded_words(&ShuffleExpr::shuffle(vec![e(), e()]), 2).unwrap()),
            ["", "b", "aa", "bb"]
        );
    }

    #[test]
    fn concat_and_star_differ_from_shuffle() {
        let ab = ShuffleExpr::finite_set(fixtures::even_a().alphabet(), &["ab"]).unwrap();
        let star = bounded_words(&ShuffleExpr::star(ab.clone()), 4).unwrap();
        assert_eq!(render(&star), ["", "ab", "abab"]);
        let iter = bounded_words(&ShuffleExpr::iter_shuffle(ab), 4).unwrap();
        assert_eq!(render(&iter), ["", "ab", "aabb", "abab"]);
    }

    #[test]
    fn shuffle_words_counts() {
        let a = fixtures::even_a().alphabet().clone();
        let s = shuffle_words(&a.word("ab").unwrap(), &a.word("ab").unwrap());
        let got: Vec<String> = s.iter().map(|w| a.render(w)).collect();
        assert_eq!(got, ["aabb", "abab"]);
        assert_eq!(
            shuffle_words(&a.word("aa").unwrap(), &a.word("bbb").unwrap()).len(),
            10
        );
        assert_eq!(shuffle_words(&Word::empty(), &Word::empty()).len(), 1);
    }

    #[test]
    fn cross_check_examples() {
        let d = crate::expr::compile(&e()).unwrap();
        assert_eq!(cross_check(&e(), &d, 8).unwrap().render(), "PASS");

        let r = cross_check(&e(), &fixtures::odd_a(), 8).unwrap();
        assert!(!r.passed());
        let c = r.counterexample.as_ref().unwrap();
        assert!(c.word.is_empty());
        assert_eq!(c.accepted_by, Side::Expression);
        assert_eq!(r.render(), "FAIL word=ε psi=(0,0) accepted-by=expression");

        let it = ShuffleExpr::iter_shuffle(o());
        let d = build_iterstar_dfa(&fixtures::odd_a()).unwrap();
        assert!(cross_check(&it, &d, 8).unwrap().passed());
    }

    #[test]
    fn caps() {
        assert!(matches!(
            bounded_words(&e(), 10),
            Err(OracleError::LengthCap { k: 2, n: 10 })
        ));
        assert!(bounded_words(&e(), 9).is_ok());
        assert!(matches!(
            cross_check(&e(), &fixtures::z3(), 3),
            Err(OracleError::AlphabetMismatch { .. })
        ));
        let lf = LabelFunction::perm(&fixtures::even_a());
        assert!(matches!(
            bruteforce_sigma(&lf, &ParikhVector::new(vec![4, 3])),
            Err(OracleError::SigmaCap { sum: 7 })
        ));
    }

    #[test]
    fn bruteforce_sigma_examples() {
        let lf = LabelFunction::perm(&fixtures::ab_star());
        let s = bruteforce_sigma(&lf, &ParikhVector::new(vec![1, 1])).unwrap();
        assert_eq!(s.iter().collect::<Vec<_>>(), [0, 2]);
        for d in fixtures::all() {
            let lf = LabelFunction::perm(&d);
            let origin = ParikhVector::zero(d.alphabet().len());
            assert_eq!(&bruteforce_sigma(&lf, &origin).unwrap(), lf.initial_label());
        }
        let lf = LabelFunction::iterated(&fixtures::even_a());
        let s = bruteforce_sigma(&lf, &ParikhVector::new(vec![2, 0])).unwrap();
        assert_eq!(s.iter().collect::<Vec<_>>(), [0]);
    }

    #[test]
    fn bruteforce_sigma_matches_grid() {
        for d in fixtures::all() {
            let lf = LabelFunction::perm(&d);
            let k = d.alphabet().len();
            let grid =
                compute_grid(&lf, &GridBounds::new(vec![0; k], vec![4; k]), 1 << 20).unwrap();
            for p in grid.points() {
                let pv = ParikhVector::new(p.clone());
                if pv.total() <= 5 {
                    assert_eq!(
                        grid.label(&p).unwrap(),
                        &bruteforce_sigma(&lf, &pv).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn bounded_language_helpers() {
        let l = bounded_words(&e(), 4).unwrap();
        assert_eq!(l.max_len(), 4);
        assert_eq!(l.truncate(2), bounded_words(&e(), 2).unwrap());
        assert_eq!(l.parikh_image(2).len(), 9);
        assert!(l.contains(&Word::empty()));
        assert!(!l.is_empty());
    }
}
