//! Hopcroft partition refinement followed by canonical renumbering.

use super::Dfa;

struct Partition {
    elems: Vec<usize>,
    loc: Vec<usize>,
    block_of: Vec<usize>,
    first: Vec<usize>,
    end: Vec<usize>,
    marked: Vec<usize>,
}

impl Partition {
    fn new(n: usize, finals: impl Fn(usize) -> bool) -> Self {
        let mut elems: Vec<usize> = (0..n).filter(|&q| finals(q)).collect();
        let split = elems.len();
        elems.extend((0..n).filter(|&q| !finals(q)));
        let mut p = Partition {
            loc: vec![0; n],
            block_of: vec![0; n],
            elems,
            first: Vec::new(),
            end: Vec::new(),
            marked: Vec::new(),
        };
        for (i, &q) in p.elems.iter().enumerate() {
            p.loc[q] = i;
        }
        for (lo, hi) in [(0, split), (split, n)] {
            if lo < hi {
                let b = p.first.len();
                p.first.push(lo);
                p.end.push(hi);
                p.marked.push(0);
                for i in lo..hi {
                    p.block_of[p.elems[i]] = b;
                }
            }
        }
        p
    }

    fn blocks(&self) -> usize {
        self.first.len()
    }

    fn members(&self, b: usize) -> &[usize] {
        &self.elems[self.first[b]..self.end[b]]
    }

    fn mark(&mut self, q: usize) -> Option<usize> {
        let b = self.block_of[q];
        let i = self.loc[q];
        let j = self.first[b] + self.marked[b];
        if i < j {
            return None;
        }
        self.elems.swap(i, j);
        self.loc[self.elems[i]] = i;
        self.loc[self.elems[j]] = j;
        self.marked[b] += 1;
        (self.marked[b] == 1).then_some(b)
    }

    /// Splits the marked prefix off `b`; returns the new block if any.
    fn split(&mut self, b: usize) -> Option<usize> {
        let m = self.marked[b];
        self.marked[b] = 0;
        if m == self.end[b] - self.first[b] {
            return None;
        }
        let nb = self.first.len();
        self.first.push(self.first[b]);
        self.end.push(self.first[b] + m);
        self.marked.push(0);
        self.first[b] += m;
        for i in self.first[nb]..self.end[nb] {
            self.block_of[self.elems[i]] = nb;
        }
        Some(nb)
    }
}

pub(super) fn minimize(dfa: &Dfa) -> Dfa {
    let dfa = dfa.canonical();
    let n = dfa.state_count();
    let k = dfa.alphabet().len();

    // inverse transitions in CSR form per letter
    let mut inv_start = vec![vec![0usize; n + 1]; k];
    for q in 0..n {
        for a in 0..k {
            inv_start[a][dfa.next(q, a) + 1] += 1;
        }
    }
    for row in inv_start.iter_mut() {
        for i in 0..n {
            row[i + 1] += row[i];
        }
    }
    let mut inv = vec![vec![0usize; n]; k];
    let mut fill = inv_start.clone();
    for q in 0..n {
        for a in 0..k {
            let t = dfa.next(q, a);
            inv[a][fill[a][t]] = q;
            fill[a][t] += 1;
        }
    }

    let mut part = Partition::new(n, |q| dfa.is_final(q));
    let mut pending: Vec<(usize, usize)> = Vec::new();
    let mut in_pending: Vec<Vec<bool>> = Vec::new();
    for b in 0..part.blocks() {
        in_pending.push(vec![true; k]);
        for a in 0..k {
            pending.push((b, a));
        }
    }

    let mut preds = Vec::new();
    let mut touched = Vec::new();
    while let Some((b, a)) = pending.pop() {
        in_pending[b][a] = false;
        preds.clear();
        for &t in part.members(b) {
            preds.extend_from_slice(&inv[a][inv_start[a][t]..inv_start[a][t + 1]]);
        }
        touched.clear();
        for &p in &preds {
            if let Some(tb) = part.mark(p) {
                touched.push(tb);
            }
        }
        for &tb in &touched {
            if let Some(nb) = part.split(tb) {
                in_pending.push(vec![false; k]);
                let smaller = if part.members(nb).len() <= part.members(tb).len() {
                    nb
                } else {
                    tb
                };
                for c in 0..k {
                    let target = if in_pending[tb][c] { nb } else { smaller };
                    if !in_pending[target][c] {
                        in_pending[target][c] = true;
                        pending.push((target, c));
                    }
                }
            }
        }
    }

    let blocks = part.blocks();
    let mut delta = vec![0; blocks * k];
    let mut finals = vec![false; blocks];
    for b in 0..blocks {
        let rep = part.members(b)[0];
        finals[b] = dfa.is_final(rep);
        for a in 0..k {
            delta[b * k + a] = part.block_of[dfa.next(rep, a)];
        }
    }
    let start = part.block_of[dfa.start()];
    Dfa::from_parts(dfa.alphabet().clone(), delta, start, finals).canonical()
}

#[cfg(test)]
mod tests {
    use crate::automata::{corpus, fixtures, Dfa};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Naive Moore refinement used as an independent check on block counts.
    fn moore_classes(d: &Dfa) -> usize {
        let d = d.canonical();
        let k = d.alphabet().len();
        let mut class: Vec<usize> = (0..d.state_count())
            .map(|q| d.is_final(q) as usize)
            .collect();
        loop {
            let mut sigs: Vec<(usize, Vec<usize>)> = (0..d.state_count())
                .map(|q| (class[q], (0..k).map(|a| class[d.next(q, a)]).collect()))
                .collect();
            let mut uniq = sigs.clone();
            uniq.sort();
            uniq.dedup();
            let next: Vec<usize> = sigs
                .drain(..)
                .map(|s| uniq.binary_search(&s).unwrap())
                .collect();
            let before = class
                .iter()
                .collect::<std::collections::BTreeSet<_>>()
                .len();
            if uniq.len() == before {
                return before;
            }
            class = next;
        }
    }

    #[test]
    fn agrees_with_moore_on_random_dfas() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let d = corpus::random_dfa(&mut rng, 8, 2);
            let m = d.minimize();
            assert_eq!(m.state_count(), moore_classes(&d));
            assert!(d.equivalent(&m).unwrap());
            assert_eq!(m.minimize(), m);
        }
    }

    #[test]
    fn fixtures_minimal_sizes() {
        let sizes: Vec<usize> = fixtures::all()
            .iter()
            .map(|d| d.minimize().state_count())
            .collect();
        assert_eq!(sizes, vec![2, 2, 3, 3, 3]);
    }
}
