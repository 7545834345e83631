use std::collections::BTreeSet;

use proptest::prelude::*;

use permshuffle::oracle::shuffle_words;
use permshuffle::parikh::{anagrams, parikh_image, psi};
use permshuffle::{ParikhVector, Word};

fn word(max: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec(0usize..2, 0..=max).prop_map(Word::from_indices)
}

fn words(max: usize) -> impl Strategy<Value = BTreeSet<Word>> {
    proptest::collection::btree_set(word(max), 0..5)
}

proptest! {
    #[test]
    fn shuffle_and_concat_have_the_same_image(u in words(4), v in words(4)) {
        let mut shuffled = BTreeSet::new();
        let mut concatenated = BTreeSet::new();
        for x in &u {
            for y in &v {
                shuffled.extend(shuffle_words(x, y));
                concatenated.insert(x.concat(y));
            }
        }
        prop_assert_eq!(parikh_image(&shuffled, 2), parikh_image(&concatenated, 2));
    }

    #[test]
    fn anagrams_share_the_vector(coords in proptest::collection::vec(0usize..3, 1..4)) {
        let p = ParikhVector::new(coords);
        let all = anagrams(&p);
        let distinct: BTreeSet<_> = all.iter().cloned().collect();
        prop_assert_eq!(distinct.len(), all.len());
        let mut sorted = all.clone();
        sorted.sort_by(|x, y| x.letters().cmp(y.letters()));
        prop_assert_eq!(&sorted, &all);
        for w in &all {
            prop_assert_eq!(psi(w, p.dim()), p.clone());
        }
        // multinomial count
        let fact = |n: usize| (1..=n).product::<usize>();
        let expected = fact(p.total()) / p.coords().iter().map(|&c| fact(c)).product::<usize>();
        prop_assert_eq!(all.len(), expected);
    }
}
