//! Partition refinement driven by the undecided product states.
//!
//! Positive refinement splits a cell along the states that can be steered
//! toward winning (or at least undecided) cells regardless of noise; negative
//! refinement splits off the states that cannot avoid losing cells.

use rayon::prelude::*;
use serde::Serialize;

use crate::abstraction::{Abstraction, Verdict};
use crate::automata::{AutState, OmegaAutomaton};
use crate::error::{Error, Result};
use crate::geometry::{Polytope, PolytopeLiteral, Region};
use crate::sysdyn::{attr, attr_robust, pre_robust, CellId, LinearStochasticSystem, Partition, PredicateSet};

/// Cells thinner than this fraction of `vol(X)` are merged or dropped.
pub const THIN_CELL_FRACTION: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Provenance {
    RobustPredecessor,
    RobustAttractor { case: u8 },
    NegativeAttractor,
}

#[derive(Clone, Debug)]
pub struct PlanEntry {
    pub cell: CellId,
    pub q: AutState,
    pub provenance: Provenance,
    pub action: Option<usize>,
    pub support: Option<Vec<CellId>>,
    pub region: Region,
}

#[derive(Serialize)]
struct PlanEntryDump<'a> {
    cell: CellId,
    q: AutState,
    provenance: Provenance,
    action: Option<usize>,
    support: &'a Option<Vec<CellId>>,
    region: Vec<PolytopeLiteral>,
}

/// Splitting regions per cell, in application order.
#[derive(Clone, Debug, Default)]
pub struct RefinementPlan {
    pub entries: Vec<PlanEntry>,
}

impl RefinementPlan {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn extend(&mut self, other: RefinementPlan) {
        self.entries.extend(other.entries);
    }

    pub fn for_cell(&self, cell: CellId) -> impl Iterator<Item = &PlanEntry> {
        self.entries.iter().filter(move |e| e.cell == cell)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let dump: Vec<PlanEntryDump> = self
            .entries
            .iter()
            .map(|e| PlanEntryDump {
                cell: e.cell,
                q: e.q,
                provenance: e.provenance,
                action: e.action,
                support: &e.support,
                region: e.region.parts().iter().map(PolytopeLiteral::from).collect(),
            })
            .collect();
        serde_json::to_value(dump).expect("plan dump is plain data")
    }
}

/// Replaces every part by its intersection with `b` and its difference with
/// `b`, dropping empties.
pub fn refine_cell(parts: Vec<Polytope>, b: &Region) -> Vec<Polytope> {
    if b.is_empty() {
        return parts;
    }
    let mut out = Vec::with_capacity(parts.len() * 2);
    for p in parts {
        if !b.parts().iter().any(|q| q.bbox_overlaps(&p)) {
            out.push(p);
            continue;
        }
        let whole = Region::from_polytope(p);
        out.extend(whole.intersect(b).into_parts());
        out.extend(whole.difference(b).into_parts());
    }
    out
}

/// Splits each part of `region` into the `2^M` equal sub-boxes of its
/// bounding box, clipped to the part.
pub fn grid_split(region: &Region) -> Vec<Polytope> {
    let mut out = Vec::new();
    for p in region.parts() {
        let Some((lo, hi)) = p.bbox() else { continue };
        let m = lo.len();
        let mid: Vec<f64> = lo.iter().zip(hi).map(|(a, b)| 0.5 * (a + b)).collect();
        for mask in 0..(1usize << m) {
            let (blo, bhi): (Vec<f64>, Vec<f64>) = (0..m)
                .map(|d| {
                    if mask >> d & 1 == 0 {
                        (lo[d], mid[d])
                    } else {
                        (mid[d], hi[d])
                    }
                })
                .unzip();
            let piece = p.intersect(&Polytope::boxed(&blo, &bhi));
            if !piece.is_empty() {
                out.push(piece);
            }
        }
    }
    out
}

fn cells_region(part: &Partition, ids: &[CellId]) -> Region {
    let dim = part.cell(0).poly.dim();
    Region::from_disjoint(dim, part.polys(ids))
}

/// Verdict context of one undecided Player-1 state.
struct Context<'a> {
    abs: &'a Abstraction,
    cell: CellId,
    q: AutState,
    yes: Vec<CellId>,
    undecided: Vec<CellId>,
    no: Vec<CellId>,
}

impl<'a> Context<'a> {
    fn new(abs: &'a Abstraction, aut: &OmegaAutomaton, cell: CellId, q: AutState) -> Self {
        let q_next = aut.step(q, abs.part.cell(cell).letter);
        let set = |v| abs.class.index_set(&abs.product, q_next, v);
        Self {
            abs,
            cell,
            q,
            yes: set(Verdict::Yes),
            undecided: set(Verdict::Undecided),
            no: set(Verdict::No),
        }
    }

    /// `(action, support)` pairs in action order, supports sorted.
    fn pairs(&self) -> impl Iterator<Item = (usize, &'a [CellId])> + 'a {
        let abs = self.abs;
        let cell = self.cell;
        (0..abs.nts.actions[cell].len()).flat_map(move |a| {
            abs.game.supports[abs.game.choice_index(cell, a)]
                .iter()
                .map(move |s| (a, s.as_slice()))
        })
    }

    fn entry(
        &self,
        provenance: Provenance,
        action: Option<usize>,
        support: Option<&[CellId]>,
        region: Region,
    ) -> PlanEntry {
        PlanEntry {
            cell: self.cell,
            q: self.q,
            provenance,
            action,
            support: support.map(<[CellId]>::to_vec),
            region,
        }
    }
}

fn positive_state(sys: &LinearStochasticSystem, ctx: &Context) -> Result<Vec<PlanEntry>> {
    let abs = ctx.abs;
    let part = &abs.part;
    let xi = &part.cell(ctx.cell).poly;
    let u_all = Region::from_polytope(sys.control_space().clone());
    let mut out = Vec::new();

    let yes_region = cells_region(part, &ctx.yes);
    let prer = if ctx.yes.is_empty() {
        Region::empty(sys.state_dim())
    } else {
        pre_robust(sys, xi, &u_all, &yes_region)
    };
    out.push(ctx.entry(Provenance::RobustPredecessor, None, None, prer));

    let in_yes = |j: &CellId| ctx.yes.binary_search(j).is_ok();
    let in_und = |j: &CellId| ctx.undecided.binary_search(j).is_ok();

    let mut case1: Vec<(usize, &[CellId])> = Vec::new();
    let mut case2: Option<(usize, usize, usize, &[CellId])> = None;
    let mut case3: Option<(usize, &[CellId])> = None;
    for (a, s) in ctx.pairs() {
        let m = s.iter().filter(|j| in_yes(j)).count();
        let safe = s.iter().all(|j| in_yes(j) || in_und(j));
        if !safe {
            continue;
        }
        if m == s.len() {
            if case1.last().is_none_or(|&(b, _)| b != a) {
                case1.push((a, s));
            }
        } else if m > 0 {
            let n = s.len();
            // p = m/n; strictly larger only, so earlier (lower action, lex smaller) wins ties
            if case2.is_none_or(|(_, bm, bn, _)| m * bn > bm * n) {
                case2 = Some((a, m, n, s));
            }
        } else if case3.is_none() {
            case3 = Some((a, s));
        }
    }

    let attr_splits = |out: &mut Vec<PlanEntry>, case: u8, a: usize, s: &[CellId], targets: &Region| {
        let action_region = &abs.nts.actions[ctx.cell][a].region;
        for uy in grid_split(action_region) {
            let r = attr_robust(sys, xi, &Region::from_polytope(uy), targets);
            out.push(ctx.entry(Provenance::RobustAttractor { case }, Some(a), Some(s), r));
        }
    };

    let largest = case1
        .iter()
        .copied()
        .fold(None::<(usize, &[CellId], f64)>, |best, (a, s)| {
            let v = abs.nts.actions[ctx.cell][a].region.volume();
            match best {
                Some((_, _, bv)) if bv >= v => best,
                _ => Some((a, s, v)),
            }
        });
    if let Some((a, s, _)) = largest {
        attr_splits(&mut out, 1, a, s, &yes_region);
    } else if let Some((a, _, _, s)) = case2 {
        let mut ids = ctx.yes.clone();
        ids.extend(s.iter().copied().filter(|j| !in_yes(j)));
        ids.sort_unstable();
        ids.dedup();
        attr_splits(&mut out, 2, a, s, &cells_region(part, &ids));
    } else if let Some((a, s)) = case3 {
        attr_splits(&mut out, 3, a, s, &cells_region(part, &ctx.undecided));
    } else {
        return Err(Error::NoQualifyingAction {
            cell: ctx.cell,
            q: ctx.q,
        });
    }
    Ok(out)
}

fn negative_state(sys: &LinearStochasticSystem, ctx: &Context) -> Option<PlanEntry> {
    if ctx.no.is_empty() {
        return None;
    }
    let abs = ctx.abs;
    let in_no = |j: &CellId| ctx.no.binary_search(j).is_ok();
    let n_actions = abs.nts.actions[ctx.cell].len();
    let every_action_leaks = (0..n_actions).all(|a| {
        abs.game.supports[abs.game.choice_index(ctx.cell, a)]
            .iter()
            .any(|s| s.iter().any(in_no))
    });
    if !every_action_leaks {
        return None;
    }
    let xi = &abs.part.cell(ctx.cell).poly;
    let u_all = Region::from_polytope(sys.control_space().clone());
    let r = attr(sys, xi, &u_all, &cells_region(&abs.part, &ctx.no));
    Some(ctx.entry(Provenance::NegativeAttractor, None, None, r))
}

fn undecided_contexts<'a>(abs: &'a Abstraction, aut: &OmegaAutomaton) -> Vec<Context<'a>> {
    abs.class
        .undecided_states(&abs.product, &abs.part)
        .into_iter()
        .map(|(cell, q, _)| Context::new(abs, aut, cell, q))
        .collect()
}

/// Robust-predecessor split plus robust-attractor splits for every undecided
/// `(cell, q)`, in `(cell, q)` order.
pub fn positive_refine(
    sys: &LinearStochasticSystem,
    aut: &OmegaAutomaton,
    abs: &Abstraction,
) -> Result<RefinementPlan> {
    let per_state: Vec<Result<Vec<PlanEntry>>> = undecided_contexts(abs, aut)
        .par_iter()
        .map(|ctx| positive_state(sys, ctx))
        .collect();
    let mut entries = Vec::new();
    for r in per_state {
        entries.extend(r?);
    }
    Ok(RefinementPlan { entries })
}

/// Attractor split toward losing cells for every undecided `(cell, q)` where
/// each action can reach a losing cell.
pub fn negative_refine(sys: &LinearStochasticSystem, aut: &OmegaAutomaton, abs: &Abstraction) -> RefinementPlan {
    let entries = undecided_contexts(abs, aut)
        .par_iter()
        .filter_map(|ctx| negative_state(sys, ctx))
        .collect();
    RefinementPlan { entries }
}

/// Both plans, positive entries first.
pub fn refine(sys: &LinearStochasticSystem, aut: &OmegaAutomaton, abs: &Abstraction) -> Result<RefinementPlan> {
    let mut plan = positive_refine(sys, aut, abs)?;
    plan.extend(negative_refine(sys, aut, abs));
    Ok(plan)
}

/// Convex union of `a` and `b` when it exists.
fn convex_merge(a: &Polytope, b: &Polytope) -> Option<Polytope> {
    let pts: Vec<Vec<f64>> = a.vertices().iter().chain(b.vertices()).cloned().collect();
    let h = Polytope::hull(&pts).ok()?;
    let sum = a.volume() + b.volume();
    ((h.volume() - sum).abs() <= 1e-9 * sum.max(1.0)).then_some(h)
}

fn absorb_thin(parts: Vec<Polytope>, eps_vol: f64) -> Vec<Polytope> {
    let (thin, mut keep): (Vec<Polytope>, Vec<Polytope>) = parts.into_iter().partition(|p| p.volume() < eps_vol);
    if keep.is_empty() {
        return thin;
    }
    for t in thin {
        if let Some((k, merged)) = keep
            .iter()
            .enumerate()
            .find_map(|(k, s)| convex_merge(s, &t).map(|m| (k, m)))
        {
            keep[k] = merged;
        } else {
            log::debug!("dropping thin cell piece of volume {:e}", t.volume());
        }
    }
    keep
}

/// Greedily merges pieces with equal signatures whose union is convex.
fn merge_equal_signatures(mut pieces: Vec<(Polytope, Vec<bool>)>) -> Vec<(Polytope, Vec<bool>)> {
    let mut changed = true;
    while changed {
        changed = false;
        'outer: for i in 0..pieces.len() {
            for j in i + 1..pieces.len() {
                if pieces[i].1 != pieces[j].1 || !pieces[i].0.bbox_touches(&pieces[j].0) {
                    continue;
                }
                if let Some(m) = convex_merge(&pieces[i].0, &pieces[j].0) {
                    pieces[i].0 = m;
                    pieces.swap_remove(j);
                    changed = true;
                    break 'outer;
                }
            }
        }
    }
    pieces
}

/// Splits `poly` by every region in turn and merges the pieces that lie on
/// the same side of every region whenever their union is convex.
pub fn split_by_all<'a>(poly: &Polytope, regions: impl IntoIterator<Item = &'a Region>) -> Vec<Polytope> {
    let mut pieces: Vec<(Polytope, Vec<bool>)> = vec![(poly.clone(), Vec::new())];
    for b in regions {
        if b.is_empty() {
            continue;
        }
        let mut next = Vec::with_capacity(pieces.len() * 2);
        for (p, sig) in pieces {
            if !b.parts().iter().any(|q| q.bbox_overlaps(&p)) {
                let mut s = sig;
                s.push(false);
                next.push((p, s));
                continue;
            }
            let whole = Region::from_polytope(p);
            for q in whole.intersect(b).into_parts() {
                let mut s = sig.clone();
                s.push(true);
                next.push((q, s));
            }
            for q in whole.difference(b).into_parts() {
                let mut s = sig.clone();
                s.push(false);
                next.push((q, s));
            }
        }
        pieces = merge_equal_signatures(next);
    }
    pieces.into_iter().map(|(p, _)| p).collect()
}

/// Applies every split of `plan` to its cell, in plan order. Pieces on the
/// same side of every split are merged when convex. New cells keep their old
/// cell as parent; thin pieces are merged into a sibling when the union is
/// convex and dropped otherwise.
pub fn apply_plan(
    sys: &LinearStochasticSystem,
    preds: &PredicateSet,
    part: &Partition,
    plan: &RefinementPlan,
) -> Partition {
    let eps_vol = THIN_CELL_FRACTION * sys.state_space().volume();
    let new_cells: Vec<Vec<Polytope>> = part
        .interior_ids()
        .into_par_iter()
        .map(|i| {
            let poly = &part.cell(i).poly;
            let regions: Vec<&Region> = plan.for_cell(i).map(|e| &e.region).collect();
            if regions.iter().all(|r| r.is_empty()) {
                return vec![poly.clone()];
            }
            absorb_thin(split_by_all(poly, regions), eps_vol)
        })
        .collect();
    let interior = new_cells
        .into_iter()
        .enumerate()
        .flat_map(|(i, ps)| ps.into_iter().map(move |p| (p, Some(i))))
        .collect();
    Partition::from_interior(sys, preds, interior)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(lo: f64, hi: f64) -> Polytope {
        Polytope::boxed(&[lo, lo], &[hi, hi])
    }

    #[test]
    fn refine_cell_box_split() {
        let parts = refine_cell(vec![square(0.0, 2.0)], &Region::from_polytope(square(1.0, 3.0)));
        assert_eq!(parts.len(), 3);
        assert!((parts[0].volume() - 1.0).abs() < 1e-9);
        let total: f64 = parts.iter().map(Polytope::volume).sum();
        assert!((total - 4.0).abs() < 1e-9);
    }

    #[test]
    fn refine_cell_superset_is_noop() {
        let parts = refine_cell(vec![square(0.0, 2.0)], &Region::from_polytope(square(-1.0, 3.0)));
        assert_eq!(parts.len(), 1);
        assert!((parts[0].volume() - 4.0).abs() < 1e-9);
    }

    #[test]
    fn grid_split_square_in_four() {
        let g = grid_split(&Region::from_polytope(Polytope::boxed(&[0.1, 0.1], &[1.0, 1.0])));
        assert_eq!(g.len(), 4);
        for p in &g {
            assert!((p.volume() - 0.2025).abs() < 1e-9);
        }
    }

    #[test]
    fn thin_piece_merges_into_convex_neighbor() {
        let a = Polytope::boxed(&[0.0, 0.0], &[1.0, 1.0]);
        let t = Polytope::boxed(&[1.0, 0.0], &[1.0 + 1e-6, 1.0]);
        let out = absorb_thin(vec![a, t], 1e-3);
        assert_eq!(out.len(), 1);
        assert!((out[0].volume() - (1.0 + 1e-6)).abs() < 1e-12);
    }
}
