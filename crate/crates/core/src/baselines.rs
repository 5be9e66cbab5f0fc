//! Reachability-with-probability-1 baselines: a direct polytopic fixed point
//! and an NTS-based abstraction-refinement variant of it.

use std::time::Instant;

use serde::Serialize;

use crate::abstraction::build_nts;
use crate::automata::Guard;
use crate::geometry::{Polytope, Region};
use crate::refinement::refine_cell;
use crate::sysdyn::{attr, pre, CellId, LinearStochasticSystem, Partition, PredicateSet};

/// Relative volume change below which a growing region counts as stable.
pub const FIXPOINT_FRACTION: f64 = 1e-9;

#[derive(Clone, Debug, Default, Serialize)]
pub struct NtsSize {
    pub states: usize,
    pub actions: usize,
}

#[derive(Clone, Debug)]
pub struct ReachResult {
    /// States that reach the targets with probability 1.
    pub x_init: Region,
    /// States that reach the targets with positive probability.
    pub x_positive: Region,
    /// States (out region included) that hit the zero-probability set with
    /// positive probability under every input.
    pub x_attr: Region,
    pub phase1_iterations: usize,
    pub phase2_iterations: usize,
    /// NTS sizes per pass, NTS variant only.
    pub nts_sizes: Vec<NtsSize>,
    pub partition: Option<Partition>,
    pub wall_ms: u128,
}

/// Interior cells whose letter satisfies `guard`.
pub fn target_cells(part: &Partition, guard: &Guard) -> Vec<CellId> {
    part.interior_ids()
        .filter(|&i| guard.matches(part.cell(i).letter))
        .collect()
}

fn stable(prev: f64, next: f64, eps: f64) -> bool {
    (next - prev).abs() <= eps
}

fn union_all(dim: usize, pieces: impl IntoIterator<Item = Region>) -> Region {
    let mut r = Region::empty(dim);
    for piece in pieces {
        for p in piece.into_parts() {
            r.add(p);
        }
    }
    r
}

/// Two fixed points directly on the state space: positive-probability
/// reachability, then the attractor of its complement.
pub fn alg1_reach(sys: &LinearStochasticSystem, targets: &Region) -> ReachResult {
    let start = Instant::now();
    let x = sys.state_space();
    let u = Region::from_polytope(sys.control_space().clone());
    let eps = FIXPOINT_FRACTION * x.volume();

    let mut positive = targets.clone();
    let mut phase1 = 0;
    loop {
        phase1 += 1;
        let next = positive.union(&pre(sys, x, &u, &positive));
        log::debug!("pre pass {phase1}: {} -> {}", positive.volume(), next.volume());
        let done = stable(positive.volume(), next.volume(), eps);
        positive = next;
        if done {
            break;
        }
    }

    let whole = Region::from_polytope(x.clone());
    let mut zero = sys.out_region().union(&whole.difference(&positive));
    let mut phase2 = 0;
    loop {
        phase2 += 1;
        let next = zero.union(&attr(sys, x, &u, &zero));
        log::debug!("attr pass {phase2}: {} -> {}", zero.volume(), next.volume());
        let done = stable(zero.volume(), next.volume(), eps);
        zero = next;
        if done {
            break;
        }
    }
    let x_init = whole.difference(&zero);
    log::info!(
        "polytopic reach: {phase1} + {phase2} iterations, vol {:.4}",
        x_init.volume()
    );
    ReachResult {
        x_init,
        x_positive: positive,
        x_attr: zero,
        phase1_iterations: phase1,
        phase2_iterations: phase2,
        nts_sizes: Vec::new(),
        partition: None,
        wall_ms: start.elapsed().as_millis(),
    }
}

fn covered(cell: &Polytope, by: &Region) -> bool {
    let v = cell.volume();
    by.intersect_polytope(cell).volume() >= v * (1.0 - 1e-9)
}

fn touches(cell: &Polytope, by: &Region) -> bool {
    by.parts().iter().any(|p| !cell.intersect(p).is_empty())
}

/// The polytopic fixed points run cell by cell over a partition that is
/// refined along every computed predecessor and attractor; an NTS is built
/// for the partition of every pass.
pub fn alg3_nts_reach(
    sys: &LinearStochasticSystem,
    preds: &PredicateSet,
    part: &Partition,
    targets: &[CellId],
) -> ReachResult {
    let start = Instant::now();
    let dim = sys.state_dim();
    let x = sys.state_space();
    let u = Region::from_polytope(sys.control_space().clone());
    let eps = FIXPOINT_FRACTION * x.volume();
    let mut part = part.clone();
    let mut sizes = Vec::new();

    let record = |part: &Partition, sizes: &mut Vec<NtsSize>| {
        let nts = build_nts(sys, part);
        sizes.push(NtsSize {
            states: nts.n_states(),
            actions: nts.n_actions(),
        });
    };

    let mut positive = Region::empty(dim);
    let mut positive_next = Region::from_disjoint(dim, part.polys(targets));
    let mut phase1 = 0;
    while phase1 == 0 || !stable(positive.volume(), positive_next.volume(), eps) {
        positive = positive_next.clone();
        phase1 += 1;
        record(&part, &mut sizes);
        let (cells, gained) = split_cells(&part, |poly| {
            if covered(poly, &positive) {
                None
            } else {
                Some(pre(sys, poly, &u, &positive))
            }
        });
        positive_next = positive_next.union(&union_all(dim, gained));
        part = Partition::from_interior(sys, preds, cells);
    }

    let whole = Region::from_polytope(x.clone());
    let mut zero = sys.out_region().union(&whole);
    let mut zero_next = sys.out_region().union(&whole.difference(&positive));
    let mut phase2 = 0;
    while !stable(zero.volume(), zero_next.volume(), eps) {
        zero = zero_next.clone();
        phase2 += 1;
        let nts = build_nts(sys, &part);
        sizes.push(NtsSize {
            states: nts.n_states(),
            actions: nts.n_actions(),
        });
        let zero_cells: Vec<bool> = (0..part.len())
            .map(|j| part.is_out(j) || touches(&part.cell(j).poly, &zero))
            .collect();
        let ids: Vec<CellId> = part.interior_ids().collect();
        let trigger: Vec<bool> = ids
            .iter()
            .map(|&i| {
                !covered(&part.cell(i).poly, &zero)
                    && nts.actions[i].iter().all(|a| a.dest.iter().any(|&j| zero_cells[j]))
            })
            .collect();
        let mut k = 0;
        let (cells, gained) = split_cells(&part, |poly| {
            let hit = trigger[k];
            k += 1;
            hit.then(|| attr(sys, poly, &u, &zero))
        });
        zero_next = zero_next.union(&union_all(dim, gained));
        part = Partition::from_interior(sys, preds, cells);
    }
    if phase2 == 0 {
        zero = zero_next;
    }
    let x_init = whole.difference(&zero);
    log::info!("nts reach: {phase1} + {phase2} iterations, vol {:.4}", x_init.volume());
    ReachResult {
        x_init,
        x_positive: positive,
        x_attr: zero,
        phase1_iterations: phase1,
        phase2_iterations: phase2,
        nts_sizes: sizes,
        partition: Some(part),
        wall_ms: start.elapsed().as_millis(),
    }
}

/// Splits every interior cell by the region `f` returns for it (in id
/// order); returns the new interior cells with parents and the regions.
fn split_cells(
    part: &Partition,
    mut f: impl FnMut(&Polytope) -> Option<Region>,
) -> (Vec<(Polytope, Option<CellId>)>, Vec<Region>) {
    let mut cells = Vec::new();
    let mut gained = Vec::new();
    for i in part.interior_ids() {
        let poly = &part.cell(i).poly;
        match f(poly) {
            Some(r) if !r.is_empty() => {
                for p in refine_cell(vec![poly.clone()], &r) {
                    cells.push((p, Some(i)));
                }
                gained.push(r);
            }
            _ => cells.push((poly.clone(), Some(i))),
        }
    }
    (cells, gained)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;

    fn shift_system() -> LinearStochasticSystem {
        LinearStochasticSystem::new(
            DMatrix::identity(2, 2),
            DMatrix::identity(2, 2),
            Polytope::boxed(&[0.0, 0.0], &[4.0, 2.0]),
            Polytope::boxed(&[-1.0, -1.0], &[1.0, 1.0]),
            Polytope::boxed(&[-0.1, -0.1], &[0.1, 0.1]),
        )
        .unwrap()
    }

    #[test]
    fn whole_space_target_is_everything() {
        let sys = shift_system();
        let r = alg1_reach(&sys, &Region::from_polytope(sys.state_space().clone()));
        assert!((r.x_init.volume() - 8.0).abs() < 1e-6);
    }

    #[test]
    fn right_half_reachable_from_everywhere() {
        let sys = shift_system();
        let r = alg1_reach(&sys, &Region::from_polytope(Polytope::boxed(&[2.0, 0.0], &[4.0, 2.0])));
        assert!((r.x_init.volume() - 8.0).abs() < 1e-6, "{}", r.x_init.volume());
    }
}
