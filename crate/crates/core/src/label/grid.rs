use std::fmt::Write;

use super::{LabelError, LabelFunction};
use crate::automata::Dfa;
use crate::bitset::StateSet;

/// Per-axis index `I_j` and period `P_j`; the box has extent `I_j + P_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridBounds {
    index: Vec<usize>,
    period: Vec<usize>,
}

impl GridBounds {
    pub fn new(index: Vec<usize>, period: Vec<usize>) -> Self {
        assert_eq!(index.len(), period.len());
        assert!(period.iter().all(|&p| p > 0), "periods are positive");
        GridBounds { index, period }
    }

    /// `I_j = (|Q| - 1)·L_j` and `P_j = L_j`, with `L_j` the order of letter
    /// `a_j` on the carrier. Fails unless every letter permutes the carrier.
    pub fn guaranteed(lf: &LabelFunction) -> Result<Self, LabelError> {
        let orders = lf.compat_transition().ensure_permutation()?;
        let n = lf.carrier_size();
        let period: Vec<usize> = orders.iter().map(|&l| l as usize).collect();
        let index = period.iter().map(|&l| (n - 1) * l).collect();
        Ok(GridBounds { index, period })
    }

    pub fn dims(&self) -> usize {
        self.index.len()
    }

    pub fn index(&self, axis: usize) -> usize {
        self.index[axis]
    }

    pub fn period(&self, axis: usize) -> usize {
        self.period[axis]
    }

    pub fn extent(&self, axis: usize) -> usize {
        self.index[axis] + self.period[axis]
    }

    pub fn extents(&self) -> Vec<usize> {
        (0..self.dims()).map(|j| self.extent(j)).collect()
    }

    pub fn point_count(&self) -> u128 {
        (0..self.dims()).map(|j| self.extent(j) as u128).product()
    }
}

/// Labels of every point in a box, stored row-major (last axis fastest).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateLabelGrid {
    bounds: GridBounds,
    strides: Vec<usize>,
    labels: Vec<StateSet>,
}

fn strides_for(extents: &[usize]) -> Vec<usize> {
    let mut strides = vec![1; extents.len()];
    for j in (0..extents.len().saturating_sub(1)).rev() {
        strides[j] = strides[j + 1] * extents[j + 1];
    }
    strides
}

/// Visits every point of the box in order of nondecreasing coordinate sum,
/// ties broken lexicographically.
fn for_each_by_sum(extents: &[usize], mut visit: impl FnMut(&[usize])) {
    fn fill(
        extents: &[usize],
        coords: &mut Vec<usize>,
        remaining: usize,
        room: &[usize],
        visit: &mut dyn FnMut(&[usize]),
    ) {
        let j = coords.len();
        if j == extents.len() {
            if remaining == 0 {
                visit(coords);
            }
            return;
        }
        // room[j] = largest sum the axes after j can still absorb
        let lo = remaining.saturating_sub(room[j]);
        let hi = remaining.min(extents[j] - 1);
        for c in lo..=hi {
            coords.push(c);
            fill(extents, coords, remaining - c, room, visit);
            coords.pop();
        }
    }
    if extents.contains(&0) {
        return;
    }
    let k = extents.len();
    let mut room = vec![0; k];
    for j in (0..k.saturating_sub(1)).rev() {
        room[j] = room[j + 1] + extents[j + 1] - 1;
    }
    let max_sum: usize = extents.iter().map(|e| e - 1).sum();
    let mut coords = Vec::with_capacity(k);
    for s in 0..=max_sum {
        fill(extents, &mut coords, s, &room, &mut visit);
    }
}

impl StateLabelGrid {
    pub fn bounds(&self) -> &GridBounds {
        &self.bounds
    }

    pub fn point_count(&self) -> usize {
        self.labels.len()
    }

    pub fn contains(&self, point: &[usize]) -> bool {
        point.len() == self.bounds.dims()
            && point
                .iter()
                .enumerate()
                .all(|(j, &c)| c < self.bounds.extent(j))
    }

    fn offset(&self, point: &[usize]) -> usize {
        point.iter().zip(&self.strides).map(|(c, s)| c * s).sum()
    }

    /// `σ(point)`, or `None` outside the box.
    pub fn label(&self, point: &[usize]) -> Option<&StateSet> {
        self.contains(point)
            .then(|| &self.labels[self.offset(point)])
    }

    /// Points in evaluation order.
    pub fn points(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::with_capacity(self.labels.len());
        for_each_by_sum(&self.bounds.extents(), |p| out.push(p.to_vec()));
        out
    }

    /// One line per point, `p1,p2,…,pk : q3 q7 …`, in evaluation order.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for_each_by_sum(&self.bounds.extents(), |p| {
            let coords: Vec<String> = p.iter().map(usize::to_string).collect();
            let states: Vec<String> = self.labels[self.offset(p)]
                .iter()
                .map(|q| q.to_string())
                .collect();
            let sep = if states.is_empty() { "" } else { " " };
            writeln!(out, "{} :{sep}{}", coords.join(","), states.join(" ")).unwrap();
        });
        out
    }
}

/// Evaluates the labelling on the box described by `bounds`.
pub fn compute_grid(
    lf: &LabelFunction,
    bounds: &GridBounds,
    cap: u128,
) -> Result<StateLabelGrid, LabelError> {
    let k = lf.alphabet().len();
    assert_eq!(bounds.dims(), k, "bounds must have one axis per letter");
    let points = bounds.point_count();
    if points > cap {
        return Err(LabelError::GridCapExceeded {
            extents: bounds.extents(),
            points,
            cap,
        });
    }
    let extents = bounds.extents();
    let strides = strides_for(&extents);
    let n = lf.carrier_size();
    let mut labels = vec![StateSet::empty(n); points as usize];
    for_each_by_sum(&extents, |p| {
        let idx: usize = p.iter().zip(&strides).map(|(c, s)| c * s).sum();
        if idx == 0 {
            labels[0] = lf.initial_label().clone();
            return;
        }
        let mut label = StateSet::empty(n);
        for (j, &c) in p.iter().enumerate() {
            if c > 0 {
                label.union_with(&lf.step(&labels[idx - strides[j]], j));
            }
        }
        labels[idx] = label;
    });
    Ok(StateLabelGrid {
        bounds: bounds.clone(),
        strides,
        labels,
    })
}

/// Labels along the ray `base + i·e_axis` and their observed index and period.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayProfile {
    pub axis: usize,
    pub base: Vec<usize>,
    pub index: usize,
    pub period: usize,
    pub labels: Vec<StateSet>,
}

/// Finds the repetition `(index, period)` along a ray with the fewest
/// distinct positions, preferring the smaller index on ties. A candidate
/// must be consistent with every pair of positions inside the box and must
/// be witnessed by at least one such pair unless the ray has length one.
pub fn ray_profile(
    grid: &StateLabelGrid,
    axis: usize,
    base: &[usize],
) -> Result<RayProfile, LabelError> {
    if !grid.contains(base) {
        return Err(LabelError::OutsideBox {
            point: base.to_vec(),
            extents: grid.bounds.extents(),
        });
    }
    if base[axis] != 0 {
        return Err(LabelError::NotOnHyperplane {
            axis,
            base: base.to_vec(),
        });
    }
    let len = grid.bounds.extent(axis);
    let mut point = base.to_vec();
    let labels: Vec<StateSet> = (0..len)
        .map(|i| {
            point[axis] = i;
            grid.labels[grid.offset(&point)].clone()
        })
        .collect();
    for size in 1..=len {
        for index in 0..size {
            let period = size - index;
            let consistent = (index..len - period).all(|t| labels[t] == labels[t + period]);
            if consistent {
                if size == len && len > 1 {
                    return Err(LabelError::NoRepetition {
                        axis,
                        base: base.to_vec(),
                    });
                }
                return Ok(RayProfile {
                    axis,
                    base: base.to_vec(),
                    index,
                    period,
                    labels,
                });
            }
        }
    }
    unreachable!("the full-length candidate is always consistent")
}

/// The counter automaton over the box: letter `a_j` increments coordinate
/// `j` and wraps from `I_j + P_j - 1` back to `I_j`. A point is final iff
/// `accept` holds for its coordinates.
pub(crate) fn box_dfa(
    lf: &LabelFunction,
    bounds: &GridBounds,
    accept: impl Fn(&[usize]) -> bool,
) -> Dfa {
    let k = bounds.dims();
    let extents = bounds.extents();
    let strides = strides_for(&extents);
    let total: usize = extents.iter().product();
    let mut delta = vec![0; total * k];
    let mut finals = vec![false; total];
    let mut coords = vec![0; k];
    for idx in 0..total {
        let mut rest = idx;
        for j in (0..k).rev() {
            coords[j] = rest % extents[j];
            rest /= extents[j];
        }
        finals[idx] = accept(&coords);
        for j in 0..k {
            let c = coords[j];
            let next = if c + 1 < extents[j] {
                c + 1
            } else {
                bounds.index(j)
            };
            delta[idx * k + j] = idx - c * strides[j] + next * strides[j];
        }
    }
    Dfa::from_parts(lf.alphabet().clone(), delta, 0, finals)
}

/// Reads the DFA off a fully computed grid: states are box points, finals
/// are points whose label is accepting.
pub fn grid_to_dfa(grid: &StateLabelGrid, lf: &LabelFunction) -> Dfa {
    box_dfa(lf, &grid.bounds, |p| {
        lf.is_accepting(&grid.labels[grid.offset(p)])
    })
}
