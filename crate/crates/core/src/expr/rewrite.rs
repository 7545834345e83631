use std::collections::{BTreeMap, BTreeSet};

use super::{Atom, ExprError, ShuffleExpr};
use crate::automata::union_product;

/// Budget on term products while building a normal form.
pub const STEP_BUDGET: usize = 10_000;

/// Replaces concatenation by shuffle and Kleene star by iterated shuffle.
/// Both sides have the same commutative closure.
pub fn perm_rewrite(e: &ShuffleExpr) -> ShuffleExpr {
    let all = |cs: &[ShuffleExpr]| cs.iter().map(perm_rewrite).collect();
    match e {
        ShuffleExpr::Union(cs) => ShuffleExpr::Union(all(cs)),
        ShuffleExpr::Concat(cs) | ShuffleExpr::Shuffle(cs) => ShuffleExpr::Shuffle(all(cs)),
        ShuffleExpr::Star(c) | ShuffleExpr::IterShuffle(c) => {
            ShuffleExpr::iter_shuffle(perm_rewrite(c))
        }
        other => other.clone(),
    }
}

/// One product `L₁ ⧢ … ⧢ L_m ⧢ S^{⧢,*}`; an absent starred atom means the
/// factor is omitted, and a term with no factors denotes `{ε}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub atoms: Vec<Atom>,
    pub starred: Option<Atom>,
}

/// A finite union of [`Term`]s. No terms denotes the empty language.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub terms: Vec<Term>,
}

impl NormalForm {
    pub fn to_expr(&self) -> ShuffleExpr {
        let mut terms: Vec<ShuffleExpr> = self
            .terms
            .iter()
            .map(|t| {
                let mut fs: Vec<ShuffleExpr> =
                    t.atoms.iter().cloned().map(ShuffleExpr::Atom).collect();
                if let Some(s) = &t.starred {
                    fs.push(ShuffleExpr::iter_shuffle(ShuffleExpr::Atom(s.clone())));
                }
                match fs.len() {
                    0 => ShuffleExpr::Epsilon,
                    1 => fs.pop().expect("one factor"),
                    _ => ShuffleExpr::Shuffle(fs),
                }
            })
            .collect();
        match terms.len() {
            0 => ShuffleExpr::Empty,
            1 => terms.pop().expect("one term"),
            _ => ShuffleExpr::Union(terms),
        }
    }
}

// Plain atoms form a multiset (kept sorted by name); starred atoms a set,
// since S^{⧢,*} ⧢ S^{⧢,*} = S^{⧢,*}.
#[derive(Clone, Debug)]
struct Raw {
    plain: Vec<Atom>,
    starred: BTreeMap<String, Atom>,
}

impl Raw {
    fn epsilon() -> Self {
        Raw {
            plain: Vec::new(),
            starred: BTreeMap::new(),
        }
    }

    fn key(&self) -> (Vec<String>, Vec<String>) {
        (
            self.plain.iter().map(|a| a.name.clone()).collect(),
            self.starred.keys().cloned().collect(),
        )
    }

    fn product(&self, other: &Raw) -> Raw {
        let mut plain = self.plain.clone();
        plain.extend(other.plain.iter().cloned());
        plain.sort_by(|x, y| x.name.cmp(&y.name));
        let mut starred = self.starred.clone();
        starred.extend(other.starred.iter().map(|(k, v)| (k.clone(), v.clone())));
        Raw { plain, starred }
    }
}

struct Rewriter {
    steps: usize,
}

impl Rewriter {
    fn tick(&mut self, n: usize) -> Result<(), ExprError> {
        self.steps += n;
        if self.steps > STEP_BUDGET {
            Err(ExprError::StepBudget {
                budget: STEP_BUDGET,
            })
        } else {
            Ok(())
        }
    }

    fn dedup(terms: Vec<Raw>) -> Vec<Raw> {
        let mut seen = BTreeSet::new();
        terms.into_iter().filter(|t| seen.insert(t.key())).collect()
    }

    // distributes shuffle over union
    fn shuffle(&mut self, left: Vec<Raw>, right: &[Raw]) -> Result<Vec<Raw>, ExprError> {
        self.tick(left.len() * right.len())?;
        let mut out = Vec::with_capacity(left.len() * right.len());
        for l in &left {
            for r in right {
                out.push(l.product(r));
            }
        }
        Ok(Self::dedup(out))
    }

    fn iterate(&mut self, inner: &ShuffleExpr, terms: Vec<Raw>) -> Result<Vec<Raw>, ExprError> {
        // (U ∪ V)^{⧢,*} = U^{⧢,*} ⧢ V^{⧢,*}
        let mut acc = vec![Raw::epsilon()];
        for t in terms {
            let star = match t.plain.len() {
                0 => vec![t],
                1 if t.starred.is_empty() => {
                    let x = t.plain[0].clone();
                    vec![Raw {
                        plain: Vec::new(),
                        starred: BTreeMap::from([(x.name.clone(), x)]),
                    }]
                }
                // (X ⧢ V^{⧢,*})^{⧢,*} = (X ⧢ (X ∪ V)^{⧢,*}) ∪ {ε}
                1 => {
                    let x = t.plain[0].clone();
                    let mut starred = t.starred.clone();
                    starred.insert(x.name.clone(), x.clone());
                    vec![
                        Raw {
                            plain: vec![x],
                            starred,
                        },
                        Raw::epsilon(),
                    ]
                }
                _ => {
                    return Err(ExprError::Residual {
                        subterm: ShuffleExpr::iter_shuffle(inner.clone()).to_string(),
                    })
                }
            };
            acc = self.shuffle(acc, &star)?;
        }
        Ok(acc)
    }

    fn raw(&mut self, e: &ShuffleExpr) -> Result<Vec<Raw>, ExprError> {
        self.tick(1)?;
        match e {
            ShuffleExpr::Atom(a) => Ok(vec![Raw {
                plain: vec![a.clone()],
                starred: BTreeMap::new(),
            }]),
            ShuffleExpr::Epsilon => Ok(vec![Raw::epsilon()]),
            ShuffleExpr::Empty => Ok(Vec::new()),
            ShuffleExpr::Union(cs) => {
                let mut out = Vec::new();
                for c in cs {
                    out.extend(self.raw(c)?);
                }
                Ok(Self::dedup(out))
            }
            ShuffleExpr::Shuffle(cs) => {
                let mut acc = vec![Raw::epsilon()];
                for c in cs {
                    let r = self.raw(c)?;
                    acc = self.shuffle(acc, &r)?;
                }
                Ok(acc)
            }
            ShuffleExpr::IterShuffle(c) => {
                let inner = self.raw(c)?;
                self.iterate(c, inner)
            }
            ShuffleExpr::Concat(_) => Err(ExprError::Unsupported {
                node: "concatenation",
            }),
            ShuffleExpr::Star(_) => Err(ExprError::Unsupported {
                node: "Kleene star",
            }),
            ShuffleExpr::FiniteSet { .. } => Err(ExprError::Unsupported { node: "finite set" }),
        }
    }
}

/// Merges a set of starred atoms into one atom for their group union.
fn merge_starred(starred: BTreeMap<String, Atom>) -> Result<Option<Atom>, ExprError> {
    if starred.len() <= 1 {
        return Ok(starred.into_values().next());
    }
    let names: Vec<&str> = starred.keys().map(String::as_str).collect();
    let name = format!("({})", names.join("|"));
    let dfas: Vec<_> = starred.values().map(|a| (*a.dfa).clone()).collect();
    Ok(Some(Atom::new(name, union_product(&dfas)?.minimize())))
}

/// Rewrites a concatenation-free and star-free expression into a union of
/// products with at most one iterated factor per product. Fails with
/// [`ExprError::Residual`] on an iterated shuffle of two or more plain
/// atoms, for which no identity applies.
pub fn normal_form(e: &ShuffleExpr) -> Result<NormalForm, ExprError> {
    let raw = Rewriter { steps: 0 }.raw(e)?;
    let terms = raw
        .into_iter()
        .map(|r| {
            Ok(Term {
                atoms: r.plain,
                starred: merge_starred(r.starred)?,
            })
        })
        .collect::<Result<_, ExprError>>()?;
    Ok(NormalForm { terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::fixtures;

    fn x() -> ShuffleExpr {
        ShuffleExpr::atom("X", fixtures::even_a())
    }
    fn y() -> ShuffleExpr {
        ShuffleExpr::atom("Y", fixtures::odd_a())
    }
    fn z() -> ShuffleExpr {
        ShuffleExpr::atom("Z", fixtures::s3())
    }

    #[test]
    fn perm_rewrite_examples() {
        let c = ShuffleExpr::concat(vec![x(), y()]);
        assert_eq!(perm_rewrite(&c), ShuffleExpr::shuffle(vec![x(), y()]));
        assert_eq!(
            perm_rewrite(&ShuffleExpr::star(x())),
            ShuffleExpr::iter_shuffle(x())
        );
        assert_eq!(
            perm_rewrite(&ShuffleExpr::star(c)),
            ShuffleExpr::iter_shuffle(ShuffleExpr::shuffle(vec![x(), y()]))
        );
    }

    #[test]
    fn distributes_over_union() {
        let e = ShuffleExpr::shuffle(vec![ShuffleExpr::union(vec![x(), y()]), z()]);
        assert_eq!(
            normal_form(&e).unwrap().to_expr().to_string(),
            "X @ Z | Y @ Z"
        );
    }

    #[test]
    fn double_iteration_collapses() {
        let e = ShuffleExpr::iter_shuffle(ShuffleExpr::iter_shuffle(x()));
        assert_eq!(normal_form(&e).unwrap().to_expr().to_string(), "X%");
    }

    #[test]
    fn star_of_shuffle_with_starred_factor() {
        let e = ShuffleExpr::iter_shuffle(ShuffleExpr::shuffle(vec![
            x(),
            ShuffleExpr::iter_shuffle(y()),
        ]));
        let nf = normal_form(&e).unwrap();
        assert_eq!(nf.to_expr().to_string(), "X @ (X|Y)% | ε");
        let merged = nf.terms[0].starred.as_ref().unwrap();
        // EVEN_A ∪ ODD_A is everything
        assert_eq!(merged.dfa.state_count(), 1);
    }

    #[test]
    fn starred_factors_merge() {
        let e = ShuffleExpr::shuffle(vec![
            ShuffleExpr::iter_shuffle(ShuffleExpr::union(vec![x(), y()])),
            z(),
        ]);
        let nf = normal_form(&e).unwrap();
        assert_eq!(nf.terms.len(), 1);
        assert_eq!(nf.to_expr().to_string(), "Z @ (X|Y)%");
    }

    #[test]
    fn residual_for_plain_products() {
        let e = ShuffleExpr::iter_shuffle(ShuffleExpr::shuffle(vec![x(), y()]));
        let err = normal_form(&e).unwrap_err();
        assert!(matches!(err, ExprError::Residual { ref subterm } if subterm == "(X @ Y)%"));
    }

    #[test]
    fn constants() {
        assert!(normal_form(&ShuffleExpr::Empty).unwrap().terms.is_empty());
        let e = ShuffleExpr::shuffle(vec![x(), ShuffleExpr::Empty]);
        assert!(normal_form(&e).unwrap().terms.is_empty());
        let e = ShuffleExpr::shuffle(vec![x(), ShuffleExpr::Epsilon]);
        assert_eq!(normal_form(&e).unwrap().to_expr().to_string(), "X");
        assert_eq!(
            normal_form(&ShuffleExpr::iter_shuffle(ShuffleExpr::Empty))
                .unwrap()
                .to_expr(),
            ShuffleExpr::Epsilon
        );
        let e = ShuffleExpr::union(vec![x(), x()]);
        assert_eq!(normal_form(&e).unwrap().terms.len(), 1);
    }

    #[test]
    fn rejects_unrewritten_nodes() {
        assert!(matches!(
            normal_form(&ShuffleExpr::concat(vec![x(), y()])),
            Err(ExprError::Unsupported { .. })
        ));
    }

    #[test]
    fn step_budget() {
        // a union of 8 atoms shuffled with itself 5 times is 8^5 products
        let u = ShuffleExpr::union(
            (0..8)
                .map(|i| ShuffleExpr::atom(&format!("A{i}"), fixtures::even_a()))
                .collect(),
        );
        let e = ShuffleExpr::shuffle(vec![u; 6]);
        assert!(matches!(normal_form(&e), Err(ExprError::StepBudget { .. })));
    }
}
