#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use permshuffle::automata::{corpus, fixtures};
use permshuffle::expr::ShuffleExpr;
use permshuffle::{Dfa, Word};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn e() -> ShuffleExpr {
    ShuffleExpr::atom("E", fixtures::even_a())
}

pub fn o() -> ShuffleExpr {
    ShuffleExpr::atom("O", fixtures::odd_a())
}

pub fn s() -> ShuffleExpr {
    ShuffleExpr::atom("S", fixtures::s3())
}

/// Random permutation DFA over `{a, b}` drawn from a proptest seed.
pub fn perm_dfa(max_states: usize, max_order: u64) -> impl Strategy<Value = Dfa> {
    any::<u64>().prop_map(move |seed| {
        corpus::random_permutation_dfa(&mut rng(seed), max_states, 2, max_order)
    })
}

pub fn any_dfa(max_states: usize, k: usize) -> impl Strategy<Value = Dfa> {
    any::<u64>().prop_map(move |seed| corpus::random_dfa(&mut rng(seed), max_states, k))
}

/// Expressions of depth at most `depth` over the binary-alphabet fixtures.
pub fn expr(depth: u32) -> impl Strategy<Value = ShuffleExpr> {
    let leaf = prop_oneof![
        4 => Just(e()),
        4 => Just(o()),
        2 => Just(s()),
        1 => Just(ShuffleExpr::Epsilon),
    ];
    leaf.prop_recursive(depth, 12, 2, |inner| {
        prop_oneof![
            proptest::collection::vec(inner.clone(), 2..=2).prop_map(ShuffleExpr::Union),
            proptest::collection::vec(inner.clone(), 2..=2).prop_map(ShuffleExpr::Concat),
            proptest::collection::vec(inner.clone(), 2..=2).prop_map(ShuffleExpr::Shuffle),
            inner.clone().prop_map(ShuffleExpr::star),
            inner.prop_map(ShuffleExpr::iter_shuffle),
        ]
    })
}

/// All words of length at most `n` accepted by `d`, as a set.
pub fn accepted(d: &Dfa, n: usize) -> BTreeSet<Word> {
    d.enumerate(n).into_iter().collect()
}

/// Fixture-derived operand languages for the algebraic identities.
pub fn operands() -> Vec<ShuffleExpr> {
    let ab = ShuffleExpr::finite_set(fixtures::even_a().alphabet(), &["ab", "b"]).unwrap();
    vec![e(), o(), s(), ab]
}
