use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::automata::{Alphabet, Dfa, Word};

/// A named group-language constant.
#[derive(Clone, Debug)]
pub struct Atom {
    pub name: String,
    pub dfa: Arc<Dfa>,
}

impl Atom {
    pub fn new(name: impl Into<String>, dfa: Dfa) -> Self {
        Atom {
            name: name.into(),
            dfa: Arc::new(dfa),
        }
    }
}

impl PartialEq for Atom {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && (Arc::ptr_eq(&self.dfa, &other.dfa) || self.dfa == other.dfa)
    }
}

impl Eq for Atom {}

impl Hash for Atom {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.name.hash(state);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ShuffleExpr {
    Atom(Atom),
    Union(Vec<ShuffleExpr>),
    Concat(Vec<ShuffleExpr>),
    Star(Box<ShuffleExpr>),
    Shuffle(Vec<ShuffleExpr>),
    IterShuffle(Box<ShuffleExpr>),
    Epsilon,
    Empty,
    /// Explicit word list. Only the bounded oracle understands it.
    FiniteSet {
        alphabet: Alphabet,
        words: BTreeSet<Word>,
    },
}

impl ShuffleExpr {
    pub fn atom(name: &str, dfa: Dfa) -> Self {
        ShuffleExpr::Atom(Atom::new(name, dfa))
    }

    pub fn union(children: Vec<ShuffleExpr>) -> Self {
        ShuffleExpr::Union(children)
    }

    pub fn concat(children: Vec<ShuffleExpr>) -> Self {
        ShuffleExpr::Concat(children)
    }

    pub fn shuffle(children: Vec<ShuffleExpr>) -> Self {
        ShuffleExpr::Shuffle(children)
    }

    pub fn star(child: ShuffleExpr) -> Self {
        ShuffleExpr::Star(Box::new(child))
    }

    pub fn iter_shuffle(child: ShuffleExpr) -> Self {
        ShuffleExpr::IterShuffle(Box::new(child))
    }

    pub fn finite_set(alphabet: &Alphabet, words: &[&str]) -> Result<Self, crate::AutomatonError> {
        let words = words
            .iter()
            .map(|w| alphabet.word(w))
            .collect::<Result<_, _>>()?;
        Ok(ShuffleExpr::FiniteSet {
            alphabet: alphabet.clone(),
            words,
        })
    }

    pub fn children(&self) -> Vec<&ShuffleExpr> {
        match self {
            ShuffleExpr::Union(cs) | ShuffleExpr::Concat(cs) | ShuffleExpr::Shuffle(cs) => {
                cs.iter().collect()
            }
            ShuffleExpr::Star(c) | ShuffleExpr::IterShuffle(c) => vec![c],
            _ => Vec::new(),
        }
    }

    /// Alphabet of the first atom or word list, if any.
    pub fn alphabet(&self) -> Option<&Alphabet> {
        match self {
            ShuffleExpr::Atom(a) => Some(a.dfa.alphabet()),
            ShuffleExpr::FiniteSet { alphabet, .. } => Some(alphabet),
            _ => self.children().into_iter().find_map(ShuffleExpr::alphabet),
        }
    }

    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a Atom>) {
        if let ShuffleExpr::Atom(a) = self {
            out.push(a);
        }
        for c in self.children() {
            c.collect_atoms(out);
        }
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    fn precedence(&self) -> u8 {
        match self {
            ShuffleExpr::Union(_) => 0,
            ShuffleExpr::Shuffle(_) => 1,
            ShuffleExpr::Concat(_) => 2,
            ShuffleExpr::Star(_) | ShuffleExpr::IterShuffle(_) => 3,
            _ => 4,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let paren = self.precedence() < min;
        if paren {
            f.write_str("(")?;
        }
        let mut list = |cs: &[ShuffleExpr], sep: &str, level: u8| -> fmt::Result {
            for (i, c) in cs.iter().enumerate() {
                if i > 0 {
                    f.write_str(sep)?;
                }
                c.fmt_at(f, level)?;
            }
            Ok(())
        };
        match self {
            ShuffleExpr::Atom(a) => f.write_str(&a.name)?,
            ShuffleExpr::Union(cs) => list(cs, " | ", 1)?,
            ShuffleExpr::Shuffle(cs) => list(cs, " @ ", 2)?,
            ShuffleExpr::Concat(cs) => list(cs, " . ", 3)?,
            ShuffleExpr::Star(c) => {
                c.fmt_at(f, 4)?;
                f.write_str("*")?;
            }
            ShuffleExpr::IterShuffle(c) => {
                c.fmt_at(f, 4)?;
                f.write_str("%")?;
            }
            ShuffleExpr::Epsilon => f.write_str("ε")?,
            ShuffleExpr::Empty => f.write_str("∅")?,
            ShuffleExpr::FiniteSet { alphabet, words } => {
                f.write_str("{")?;
                for (i, w) in words.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    if w.is_empty() {
                        f.write_str("ε")?;
                    } else {
                        f.write_str(&alphabet.render(w))?;
                    }
                }
                f.write_str("}")?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for ShuffleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}
