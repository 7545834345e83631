//! Fixed-width state sets.

use std::fmt;

/// A subset of `{0, .., width-1}` stored as a bitmask.
///
/// Two sets compare equal only if they have the same width; every set built
/// for one carrier uses the carrier size as its width.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSet {
    width: usize,
    words: Vec<u64>,
}

impl StateSet {
    pub fn empty(width: usize) -> Self {
        StateSet {
            width,
            words: vec![0; width.div_ceil(64)],
        }
    }

    pub fn singleton(width: usize, state: usize) -> Self {
        let mut s = Self::empty(width);
        s.insert(state);
        s
    }

    pub fn full(width: usize) -> Self {
        let mut s = Self::empty(width);
        for q in 0..width {
            s.insert(q);
        }
        s
    }

    pub fn from_states<I: IntoIterator<Item = usize>>(width: usize, states: I) -> Self {
        let mut s = Self::empty(width);
        for q in states {
            s.insert(q);
        }
        s
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn insert(&mut self, state: usize) -> bool {
        assert!(
            state < self.width,
            "state {state} outside set of width {}",
            self.width
        );
        let (w, b) = (state / 64, state % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, state: usize) {
        if state < self.width {
            self.words[state / 64] &= !(1 << (state % 64));
        }
    }

    pub fn contains(&self, state: usize) -> bool {
        state < self.width && self.words[state / 64] & (1 << (state % 64)) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn union_with(&mut self, other: &StateSet) {
        debug_assert_eq!(self.width, other.width);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersects(&self, other: &StateSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
