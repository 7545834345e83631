//! Parikh vectors and permutational closure of finite word sets.

use std::collections::BTreeSet;
use std::fmt;

use crate::automata::Word;

/// A point of `ℕ₀^k`: letter counts aligned with the alphabet order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParikhVector(Vec<usize>);

impl ParikhVector {
    pub fn zero(k: usize) -> Self {
        ParikhVector(vec![0; k])
    }

    pub fn unit(k: usize, j: usize) -> Self {
        let mut v = Self::zero(k);
        v.0[j] = 1;
        v
    }

    pub fn new(coords: Vec<usize>) -> Self {
        ParikhVector(coords)
    }

    pub fn coords(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &Self) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise `≤` and not equal.
    pub fn lt(&self, other: &Self) -> bool {
        self.le(other) && self != other
    }

    pub fn add(&self, other: &Self) -> Self {
        ParikhVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other` if `other ≤ self`.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        other
            .le(self)
            .then(|| ParikhVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }
}

impl fmt::Debug for ParikhVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ParikhVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Letter counts of `word` over an alphabet of size `k`.
pub fn psi(word: &Word, k: usize) -> ParikhVector {
    let mut v = vec![0; k];
    for a in word.letters() {
        v[a] += 1;
    }
    ParikhVector(v)
}

/// All words with the given letter counts, in lexicographic order.
pub fn anagrams(p: &ParikhVector) -> Vec<Word> {
    let mut letters: Vec<u8> = p
        .coords()
        .iter()
        .enumerate()
        .flat_map(|(a, &n)| std::iter::repeat_n(a as u8, n))
        .collect();
    let mut out = vec![Word::from_bytes(letters.clone())];
    while next_permutation(&mut letters) {
        out.push(Word::from_bytes(letters.clone()));
    }
    out
}

fn next_permutation(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Union of the anagram classes of every word in `words`.
pub fn perm_set(words: &BTreeSet<Word>, k: usize) -> BTreeSet<Word> {
    parikh_image(words, k).iter().flat_map(anagrams).collect()
}

pub fn parikh_image(words: &BTreeSet<Word>, k: usize) -> BTreeSet<ParikhVector> {
    words.iter().map(|w| psi(w, k)).collect()
}
