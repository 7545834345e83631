//! Seeded random automata for property tests and the acceptance corpus.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Alphabet, Dfa};

fn letters(k: usize) -> Alphabet {
    Alphabet::new((0..k).map(|i| (b'a' + i as u8) as char)).expect("k between 1 and 26")
}

fn random_finals<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    (0..n).filter(|_| rng.gen_bool(0.5)).collect()
}

/// Arbitrary complete DFA with `1..=max_states` states over `a, b, ..`.
pub fn random_dfa<R: Rng>(rng: &mut R, max_states: usize, k: usize) -> Dfa {
    let n = rng.gen_range(1..=max_states);
    let rows: Vec<Vec<usize>> = (0..k)
        .map(|_| (0..n).map(|_| rng.gen_range(0..n)).collect())
        .collect();
    let start = rng.gen_range(0..n);
    Dfa::new(letters(k), n, &rows, start, &random_finals(rng, n)).expect("in range")
}

fn order(perm: &[usize]) -> u64 {
    let mut seen = vec![false; perm.len()];
    let mut order = 1;
    for q in 0..perm.len() {
        let mut len = 0;
        let mut p = q;
        while !seen[p] {
            seen[p] = true;
            p = perm[p];
            len += 1;
        }
        if len > 0 {
            order = super::dfa::lcm(order, len);
        }
    }
    order
}

/// Random permutation automaton whose letters all have order at most
/// `max_order`.
pub fn random_permutation_dfa<R: Rng>(
    rng: &mut R,
    max_states: usize,
    k: usize,
    max_order: u64,
) -> Dfa {
    let n = rng.gen_range(1..=max_states);
    let rows: Vec<Vec<usize>> = (0..k)
        .map(|_| loop {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(rng);
            if order(&perm) <= max_order {
                break perm;
            }
        })
        .collect();
    let start = rng.gen_range(0..n);
    Dfa::new(letters(k), n, &rows, start, &random_finals(rng, n)).expect("in range")
}

/// Random unary DFA over `{a}`.
pub fn random_unary_dfa<R: Rng>(rng: &mut R, max_states: usize) -> Dfa {
    random_dfa(rng, max_states, 1)
}

/// The acceptance corpus: `count` permutation automata with at most five
/// states, two letters, and letter orders at most four.
pub fn permutation_corpus(seed: u64, count: usize) -> Vec<Dfa> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_permutation_dfa(&mut rng, 5, 2, 4))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_reproducible_and_bounded() {
        let a = permutation_corpus(0, 20);
        assert_eq!(a, permutation_corpus(0, 20));
        for d in &a {
            let orders = d.validate_permutation().orders.unwrap();
            assert!(orders.iter().all(|&o| o <= 4));
            assert!(d.state_count() <= 5);
        }
    }
}
