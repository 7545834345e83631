use std::collections::BTreeSet;

use super::{normal_form, perm_rewrite, ExprError, NormalForm, ShuffleExpr};
use crate::automata::{Alphabet, Dfa, Nfa};
use crate::label::{build_expr_nfa, build_iterstar, build_perm, BuildOptions, Construction};

#[derive(Clone, Debug, Default)]
pub struct CompileOptions {
    pub build: BuildOptions,
    /// Skip the normal form and go straight to the expression-NFA engine.
    pub force_fallback: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pipeline {
    NormalForm,
    Fallback,
}

#[derive(Clone, Debug)]
pub struct CompileReport {
    pub dfa: Dfa,
    pub pipeline: Pipeline,
    /// Every grid construction performed, labelled like `perm(E)`.
    pub constructions: Vec<(String, Construction)>,
    /// Why the normal form was abandoned, if it was.
    pub residual: Option<String>,
}

/// Automaton for the commutative closure of `e`.
pub fn compile(e: &ShuffleExpr) -> Result<Dfa, ExprError> {
    Ok(compile_with(e, &CompileOptions::default())?.dfa)
}

pub fn compile_with(e: &ShuffleExpr, opts: &CompileOptions) -> Result<CompileReport, ExprError> {
    let alphabet = e.alphabet().cloned().ok_or(ExprError::NoAtoms)?;
    if contains_finite_set(e) {
        return Err(ExprError::Unsupported { node: "finite set" });
    }
    for a in e.atoms() {
        a.dfa
            .validate_permutation()
            .is_permutation
            .then_some(())
            .ok_or_else(|| ExprError::NotPermutation {
                atom: a.name.clone(),
            })?;
    }
    let rewritten = perm_rewrite(e);
    if opts.force_fallback {
        return fallback(&rewritten, &alphabet, opts, None);
    }
    match normal_form(&rewritten) {
        Ok(nf) => from_normal_form(&nf, &alphabet, opts),
        Err(err @ (ExprError::Residual { .. } | ExprError::StepBudget { .. })) => {
            fallback(&rewritten, &alphabet, opts, Some(err.to_string()))
        }
        Err(err) => Err(err),
    }
}

fn contains_finite_set(e: &ShuffleExpr) -> bool {
    matches!(e, ShuffleExpr::FiniteSet { .. }) || e.children().into_iter().any(contains_finite_set)
}

fn finish(dfa: Dfa, opts: &CompileOptions) -> Dfa {
    if opts.build.minimize {
        dfa.minimize()
    } else {
        dfa
    }
}

fn from_normal_form(
    nf: &NormalForm,
    alphabet: &Alphabet,
    opts: &CompileOptions,
) -> Result<CompileReport, ExprError> {
    let mut constructions = Vec::new();
    let mut term_dfas = Vec::with_capacity(nf.terms.len());
    for term in &nf.terms {
        let mut factors = Vec::new();
        for a in &term.atoms {
            let c = build_perm(&a.dfa, &opts.build)?;
            factors.push(c.dfa.clone());
            constructions.push((format!("perm({})", a.name), c));
        }
        if let Some(s) = &term.starred {
            let c = build_iterstar(&s.dfa, &opts.build)?;
            factors.push(c.dfa.clone());
            constructions.push((format!("iterstar({})", s.name), c));
        }
        let dfa = match factors.len() {
            0 => Dfa::epsilon_only(alphabet.clone()),
            1 => factors.pop().expect("one factor"),
            _ => finish(Nfa::shuffle_product(&factors)?.determinize(), opts),
        };
        term_dfas.push(dfa);
    }
    let dfa = match term_dfas.len() {
        0 => Dfa::empty_language(alphabet.clone()),
        1 => term_dfas.pop().expect("one term"),
        _ => {
            let refs: Vec<&Dfa> = term_dfas.iter().collect();
            Dfa::union(&refs)?
        }
    };
    Ok(CompileReport {
        dfa,
        pipeline: Pipeline::NormalForm,
        constructions,
        residual: None,
    })
}

fn fallback(
    e: &ShuffleExpr,
    alphabet: &Alphabet,
    opts: &CompileOptions,
    residual: Option<String>,
) -> Result<CompileReport, ExprError> {
    let nfa = expression_nfa(e, alphabet)?;
    let dfa;
    let mut constructions = Vec::new();
    if nfa.state_count() == 0 {
        dfa = if nfa.accepts_empty() {
            Dfa::epsilon_only(alphabet.clone())
        } else {
            Dfa::empty_language(alphabet.clone())
        };
    } else {
        let c = build_expr_nfa(&nfa, &opts.build)?;
        dfa = c.dfa.clone();
        constructions.push((format!("nfa({e})"), c));
    }
    Ok(CompileReport {
        dfa,
        pipeline: Pipeline::Fallback,
        constructions,
        residual,
    })
}

struct Fragment {
    entries: BTreeSet<usize>,
    exits: BTreeSet<usize>,
    nullable: bool,
}

fn link(nfa: &mut Nfa, from: &BTreeSet<usize>, to: &BTreeSet<usize>) -> Result<(), ExprError> {
    for &p in from {
        for &q in to {
            nfa.add_epsilon_edge(p, q)?;
        }
    }
    Ok(())
}

fn fragment(nfa: &mut Nfa, e: &ShuffleExpr) -> Result<Fragment, ExprError> {
    Ok(match e {
        ShuffleExpr::Atom(a) => {
            let offset = nfa.embed(&a.dfa)?;
            Fragment {
                entries: BTreeSet::from([offset + a.dfa.start()]),
                exits: a.dfa.finals().map(|q| q + offset).collect(),
                nullable: false,
            }
        }
        ShuffleExpr::Epsilon => Fragment {
            entries: BTreeSet::new(),
            exits: BTreeSet::new(),
            nullable: true,
        },
        ShuffleExpr::Empty => Fragment {
            entries: BTreeSet::new(),
            exits: BTreeSet::new(),
            nullable: false,
        },
        ShuffleExpr::Union(cs) => {
            let mut out = fragment(nfa, &ShuffleExpr::Empty)?;
            for c in cs {
                let f = fragment(nfa, c)?;
                out.entries.extend(f.entries);
                out.exits.extend(f.exits);
                out.nullable |= f.nullable;
            }
            out
        }
        // sequencing is enough: shuffle and concatenation have the same
        // commutative closure
        ShuffleExpr::Concat(cs) | ShuffleExpr::Shuffle(cs) => {
            let mut out = fragment(nfa, &ShuffleExpr::Epsilon)?;
            for c in cs {
                let f = fragment(nfa, c)?;
                link(nfa, &out.exits, &f.entries)?;
                if out.nullable {
                    out.entries.extend(f.entries.iter().copied());
                }
                if f.nullable {
                    out.exits.extend(f.exits);
                } else {
                    out.exits = f.exits;
                }
                out.nullable &= f.nullable;
            }
            out
        }
        ShuffleExpr::Star(c) | ShuffleExpr::IterShuffle(c) => {
            let mut f = fragment(nfa, c)?;
            link(nfa, &f.exits, &f.entries)?;
            f.nullable = true;
            f
        }
        ShuffleExpr::FiniteSet { .. } => return Err(ExprError::Unsupported { node: "finite set" }),
    })
}

/// ε-NFA with one disjoint copy of an atom automaton per atom occurrence.
/// Its letter edges form a permutation semi-automaton, and its commutative
/// closure equals that of `e`.
pub fn expression_nfa(e: &ShuffleExpr, alphabet: &Alphabet) -> Result<Nfa, ExprError> {
    let mut nfa = Nfa::new(alphabet.clone());
    let f = fragment(&mut nfa, e)?;
    for q in f.entries {
        nfa.add_start(q)?;
    }
    for q in f.exits {
        nfa.add_final(q)?;
    }
    nfa.set_accepts_empty(f.nullable);
    Ok(nfa)
}
