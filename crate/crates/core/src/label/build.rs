use super::grid::box_dfa;
use super::{compute_grid, ray_profile, GridBounds, LabelError, LabelFunction, StateLabelGrid};
use crate::automata::{dfa, Dfa, Nfa};

pub const DEFAULT_GRID_CAP: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    pub minimize: bool,
    /// Try to replace the guaranteed box by the observed ray bounds; the
    /// smaller box is kept only if it yields an equivalent automaton.
    pub shrink_rays: bool,
    pub grid_cap: u128,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            minimize: true,
            shrink_rays: false,
            grid_cap: DEFAULT_GRID_CAP,
        }
    }
}

/// Result of one grid construction with the numbers needed for bound checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Construction {
    pub dfa: Dfa,
    /// Points of the box the automaton was read from.
    pub grid_states: usize,
    /// Whether a fresh accepting start state was prepended for ε.
    pub epsilon_state: bool,
    /// `grid_states` plus the ε-state if present.
    pub unminimized_states: usize,
    /// Upper bound on the constructed automaton's size from the theory.
    pub bound: u128,
}

fn pow(base: usize, exp: usize) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base as u128))
}

fn order_bound(states: usize, orders: &[u64]) -> u128 {
    orders.iter().fold(pow(states, orders.len()), |acc, &l| {
        acc.saturating_mul(l as u128)
    })
}

fn shrunk_dfa(lf: &LabelFunction, grid: &StateLabelGrid, full: &Dfa) -> Option<(Dfa, usize)> {
    let bounds = grid.bounds();
    let k = bounds.dims();
    let mut index = Vec::with_capacity(k);
    let mut period = Vec::with_capacity(k);
    for j in 0..k {
        let mut base_extents = bounds.extents();
        base_extents[j] = 1;
        let mut worst = 0;
        let mut lcm = 1u64;
        let mut ok = true;
        let bases: usize = base_extents.iter().product();
        for idx in 0..bases {
            let mut rest = idx;
            let mut base = vec![0; k];
            for i in (0..k).rev() {
                base[i] = rest % base_extents[i];
                rest /= base_extents[i];
            }
            match ray_profile(grid, j, &base) {
                Ok(r) => {
                    worst = worst.max(r.index);
                    lcm = dfa::lcm(lcm, r.period as u64);
                }
                Err(_) => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && worst + lcm as usize <= bounds.extent(j) {
            index.push(worst);
            period.push(lcm as usize);
        } else {
            index.push(bounds.index(j));
            period.push(bounds.period(j));
        }
    }
    let small = GridBounds::new(index, period);
    if small.point_count() >= bounds.point_count() {
        return None;
    }
    let dfa = box_dfa(lf, &small, |p| {
        lf.is_accepting(grid.label(p).expect("sub-box point"))
    });
    match dfa.equivalent(full) {
        Ok(true) => Some((dfa, small.point_count() as usize)),
        _ => None,
    }
}

/// Shared pipeline: guaranteed bounds, grid, counter automaton, optional
/// ray shrink, optional ε-state, optional minimization.
fn construct(
    lf: &LabelFunction,
    accepts_empty: bool,
    bound: u128,
    opts: &BuildOptions,
) -> Result<Construction, LabelError> {
    let bounds = GridBounds::guaranteed(lf)?;
    let grid = compute_grid(lf, &bounds, opts.grid_cap)?;
    let mut dfa = super::grid_to_dfa(&grid, lf);
    let mut grid_states = grid.point_count();
    if opts.shrink_rays {
        if let Some((small, size)) = shrunk_dfa(lf, &grid, &dfa) {
            dfa = small;
            grid_states = size;
        }
    }
    let epsilon_state = accepts_empty && !lf.is_accepting(lf.initial_label());
    if epsilon_state {
        dfa = dfa.with_fresh_accepting_start();
    }
    let unminimized_states = dfa.state_count();
    if opts.minimize {
        dfa = dfa.minimize();
    }
    Ok(Construction {
        dfa,
        grid_states,
        epsilon_state,
        unminimized_states,
        bound,
    })
}

/// Automaton for `perm(L(A))` with `A` a permutation automaton.
pub fn build_perm(a: &Dfa, opts: &BuildOptions) -> Result<Construction, LabelError> {
    let orders = a.ensure_permutation()?;
    let lf = LabelFunction::perm(a);
    construct(&lf, false, order_bound(a.state_count(), &orders), opts)
}

pub fn build_perm_dfa(a: &Dfa) -> Result<Dfa, LabelError> {
    Ok(build_perm(a, &BuildOptions::default())?.dfa)
}

/// Automaton for `perm(L(A))^{⧢,*}`, the iterated shuffle of the
/// commutative closure.
pub fn build_iterstar(a: &Dfa, opts: &BuildOptions) -> Result<Construction, LabelError> {
    let orders = a.ensure_permutation()?;
    let lf = LabelFunction::iterated(a);
    let bound = order_bound(a.state_count(), &orders).saturating_add(1);
    construct(&lf, true, bound, opts)
}

pub fn build_iterstar_dfa(a: &Dfa) -> Result<Dfa, LabelError> {
    Ok(build_iterstar(a, &BuildOptions::default())?.dfa)
}

/// Automaton for `perm(L(A₁)) ⧢ … ⧢ perm(L(A_n))`.
pub fn build_shuffle(dfas: &[Dfa], opts: &BuildOptions) -> Result<Construction, LabelError> {
    let mut orders: Vec<u64> = Vec::new();
    for d in dfas {
        let o = d.ensure_permutation()?;
        if orders.is_empty() {
            orders = o;
        } else {
            for (acc, l) in orders.iter_mut().zip(o) {
                *acc = dfa::lcm(*acc, l);
            }
        }
    }
    let lf = LabelFunction::shuffle(dfas)?;
    let total_states: usize = dfas.iter().map(Dfa::state_count).sum();
    construct(&lf, false, order_bound(total_states, &orders), opts)
}

pub fn build_shuffle_dfa(dfas: &[Dfa]) -> Result<Dfa, LabelError> {
    Ok(build_shuffle(dfas, &BuildOptions::default())?.dfa)
}

/// Automaton for `perm(L(N))` where the letter edges of `N` form a
/// permutation semi-automaton.
pub fn build_expr_nfa(nfa: &Nfa, opts: &BuildOptions) -> Result<Construction, LabelError> {
    let lf = LabelFunction::expr_nfa(nfa)?;
    let orders = lf.compat_transition().ensure_permutation()?;
    let mut bound = order_bound(nfa.state_count(), &orders);
    if nfa.accepts_empty() {
        bound = bound.saturating_add(1);
    }
    construct(&lf, nfa.accepts_empty(), bound, opts)
}

pub fn build_expr_nfa_dfa(nfa: &Nfa) -> Result<Dfa, LabelError> {
    Ok(build_expr_nfa(nfa, &BuildOptions::default())?.dfa)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{fixtures, AutomatonError, Word};

    fn a_count(w: &Word) -> usize {
        w.letters().filter(|&a| a == 0).count()
    }

    fn check(d: &Dfa, max_len: usize, expected: impl Fn(&Word) -> bool) {
        for w in d.alphabet().words_up_to(max_len) {
            assert_eq!(d.accepts(&w), expected(&w), "{}", d.alphabet().render(&w));
        }
    }

    #[test]
    fn perm_examples() {
        check(&build_perm_dfa(&fixtures::even_a()).unwrap(), 8, |w| {
            a_count(w).is_multiple_of(2)
        });
        check(&build_perm_dfa(&fixtures::z3()).unwrap(), 8, |w| {
            w.len() % 3 == 0
        });
        let c = build_perm(&fixtures::even_a(), &BuildOptions::default()).unwrap();
        assert_eq!((c.grid_states, c.unminimized_states, c.bound), (8, 8, 8));
        assert!(!c.epsilon_state);
    }

    #[test]
    fn iterstar_examples() {
        check(&build_iterstar_dfa(&fixtures::even_a()).unwrap(), 8, |w| {
            a_count(w).is_multiple_of(2)
        });
        check(&build_iterstar_dfa(&fixtures::odd_a()).unwrap(), 8, |w| {
            w.is_empty() || a_count(w) >= 1
        });
        check(&build_iterstar_dfa(&fixtures::z3()).unwrap(), 8, |w| {
            w.len() % 3 == 0
        });

        let c = build_iterstar(&fixtures::odd_a(), &BuildOptions::default()).unwrap();
        assert!(c.epsilon_state);
        assert_eq!((c.grid_states, c.unminimized_states, c.bound), (8, 9, 9));
        let c = build_iterstar(&fixtures::even_a(), &BuildOptions::default()).unwrap();
        assert!(!c.epsilon_state);
        assert_eq!(c.unminimized_states, 8);
    }

    #[test]
    fn shuffle_examples() {
        let d = build_shuffle_dfa(&[fixtures::even_a(), fixtures::odd_a()]).unwrap();
        check(&d, 8, |w| a_count(w) % 2 == 1);
        let single = build_shuffle_dfa(&[fixtures::even_a()]).unwrap();
        assert!(single
            .equivalent(&build_perm_dfa(&fixtures::even_a()).unwrap())
            .unwrap());
        check(
            &build_shuffle_dfa(&[fixtures::z3(), fixtures::z3()]).unwrap(),
            8,
            |w| w.len() % 3 == 0,
        );
        let c = build_shuffle(
            &[fixtures::even_a(), fixtures::odd_a()],
            &BuildOptions::default(),
        )
        .unwrap();
        assert_eq!((c.grid_states, c.bound), (32, 32));
    }

    #[test]
    fn expr_nfa_examples() {
        let o = fixtures::odd_a();
        let star = build_expr_nfa_dfa(&Nfa::star_of(&o)).unwrap();
        assert!(star.equivalent(&build_iterstar_dfa(&o).unwrap()).unwrap());

        let concat = Nfa::concat_of(&fixtures::even_a(), &o).unwrap();
        let d = build_expr_nfa_dfa(&concat).unwrap();
        assert!(d
            .equivalent(&build_shuffle_dfa(&[fixtures::even_a(), o.clone()]).unwrap())
            .unwrap());

        let z = fixtures::z3();
        let d = build_expr_nfa_dfa(&Nfa::from_dfa(&z)).unwrap();
        assert!(d.equivalent(&build_perm_dfa(&z).unwrap()).unwrap());
    }

    #[test]
    fn builders_reject_non_permutations() {
        for err in [
            build_perm_dfa(&fixtures::ab_star()).unwrap_err(),
            build_iterstar_dfa(&fixtures::ab_star()).unwrap_err(),
            build_shuffle_dfa(&[fixtures::even_a(), fixtures::ab_star()]).unwrap_err(),
        ] {
            assert!(matches!(
                err,
                LabelError::Automaton(AutomatonError::NotPermutation { .. })
            ));
        }
        assert!(matches!(
            build_shuffle_dfa(&[fixtures::even_a(), fixtures::z3()]),
            Err(LabelError::Automaton(
                AutomatonError::AlphabetMismatch { .. }
            ))
        ));
    }

    #[test]
    fn shrink_keeps_the_language() {
        let opts = BuildOptions {
            shrink_rays: true,
            ..BuildOptions::default()
        };
        for d in fixtures::permutation() {
            let plain = build_perm(&d, &BuildOptions::default()).unwrap();
            let small = build_perm(&d, &opts).unwrap();
            assert!(small.grid_states <= plain.grid_states);
            assert!(small.dfa.equivalent(&plain.dfa).unwrap());
        }
        // EVEN_A only needs the 2x1 box
        let small = build_perm(&fixtures::even_a(), &opts).unwrap();
        assert_eq!(small.grid_states, 2);
    }

    #[test]
    fn unminimized_output_when_requested() {
        let opts = BuildOptions {
            minimize: false,
            ..BuildOptions::default()
        };
        let c = build_perm(&fixtures::z3(), &opts).unwrap();
        assert_eq!(c.dfa.state_count(), 9);
    }
}
