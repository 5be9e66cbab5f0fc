use super::operators::{control_to, precise_decomposition};
use super::partition::{CellId, Partition};
use super::system::LinearStochasticSystem;
use crate::geometry::{region_difference, Polytope, Region};

/// Inputs of one cell that lead to exactly the cells in `dest` with positive
/// probability.
#[derive(Clone, Debug)]
pub struct ActionPolytope {
    pub source: CellId,
    /// Sorted destination cell ids.
    pub dest: Vec<CellId>,
    pub region: Region,
}

/// Relative volume below which an action region counts as empty.
const THIN_ACTION: f64 = 1e-9;

/// Splits `U` into classes of inputs with equal destination sets from cell `i`.
/// Results are sorted by destination set.
pub fn action_polytopes(sys: &LinearStochasticSystem, part: &Partition, i: CellId) -> Vec<ActionPolytope> {
    assert!(!part.is_out(i), "out cells have no actions");
    let xi = &part.cell(i).poly;
    let u = sys.control_space();
    let reach = sys.post(xi, u);
    let mut pieces: Vec<(Vec<CellId>, Polytope)> = vec![(Vec::new(), u.clone())];
    for (j, cell) in part.cells().iter().enumerate() {
        if !reach.bbox_overlaps(&cell.poly) {
            continue;
        }
        let to_j = control_to(sys, xi, &cell.poly);
        if to_j.is_empty() {
            continue;
        }
        let mut next = Vec::with_capacity(pieces.len() + 2);
        for (label, p) in pieces {
            let inside = p.intersect(&to_j);
            if inside.is_empty() {
                next.push((label, p));
                continue;
            }
            for rest in region_difference(&Region::from_polytope(p), &Region::from_polytope(to_j.clone())).into_parts()
            {
                next.push((label.clone(), rest));
            }
            let mut with = label;
            with.push(j);
            next.push((with, inside));
        }
        pieces = next;
    }
    let min_volume = THIN_ACTION * u.volume();
    let mut actions: Vec<ActionPolytope> = Vec::new();
    for (dest, p) in pieces {
        if dest.is_empty() || p.volume() < min_volume {
            continue;
        }
        match actions.iter_mut().find(|a| a.dest == dest) {
            Some(a) => {
                let mut parts = std::mem::replace(&mut a.region, Region::empty(u.dim())).into_parts();
                parts.push(p);
                a.region = Region::from_disjoint(u.dim(), parts);
            }
            None => actions.push(ActionPolytope {
                source: i,
                dest,
                region: Region::from_polytope(p),
            }),
        }
    }
    actions.sort_by(|a, b| a.dest.cmp(&b.dest));
    actions
}

/// Nonempty subsets `J'` of the action's destinations for which some state of
/// the cell and some input of the action lead surely into `J'` touching all
/// of it. Sorted.
pub fn supports(sys: &LinearStochasticSystem, part: &Partition, i: CellId, act: &ActionPolytope) -> Vec<Vec<CellId>> {
    let chosen = part.polys(&act.dest);
    let others: Vec<Polytope> = (0..part.len())
        .filter(|j| act.dest.binary_search(j).is_err())
        .map(|j| part.cell(j).poly.clone())
        .collect();
    let mut out: Vec<Vec<CellId>> = precise_decomposition(sys, &part.cell(i).poly, &act.region, &chosen, &others)
        .into_iter()
        .map(|(label, _)| label.into_iter().map(|k| act.dest[k]).collect())
        .collect();
    out.sort();
    out
}
