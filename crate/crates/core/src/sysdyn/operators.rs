//! Predecessor, attractor and control-to operators over polytopes.
//!
//! Sets of control inputs are passed as [`Region`]s. Noise enters through
//! Minkowski sums with `-W`; back-projections `{x in Xp | A x in D}` are
//! obtained from the facets of `D`.

use nalgebra::DMatrix;

use super::system::LinearStochasticSystem;
use crate::geometry::{map_points, vertex_sums, Halfspace, Polytope, Region};

/// `{y in domain | m y in target}`.
pub(crate) fn preimage_within(domain: &Polytope, m: &DMatrix<f64>, target: &Polytope) -> Polytope {
    let dim = domain.dim();
    if domain.is_empty() || target.is_empty() {
        return Polytope::empty(dim);
    }
    let mut rows: Vec<Halfspace> = domain.halfspaces().to_vec();
    for h in target.halfspaces() {
        let normal: Vec<f64> = (0..dim)
            .map(|c| (0..m.nrows()).map(|r| h.normal[r] * m[(r, c)]).sum())
            .collect();
        if normal.iter().all(|v| v.abs() < 1e-12) {
            if h.offset < -crate::geometry::EPS_GEO {
                return Polytope::empty(dim);
            }
            continue;
        }
        rows.push(Halfspace::new(normal, h.offset));
    }
    Polytope::from_rows(dim, rows)
}

/// `hull{v_P - B v_U - v_W}`: the points `z` with `z + B u + w in P` for some
/// `u in U`, `w in W`.
fn shift_back(sys: &LinearStochasticSystem, p: &Polytope, up: &Polytope) -> Polytope {
    let neg_bu: Vec<Vec<f64>> = map_points(sys.b(), up.vertices())
        .into_iter()
        .map(|v| v.into_iter().map(|x| -x).collect())
        .collect();
    Polytope::from_points(
        sys.state_dim(),
        vertex_sums(&[p.vertices(), &neg_bu, sys.neg_noise().vertices()]),
    )
}

/// `{u in U | Post(Xi, u) meets Xp}`.
pub fn control_to(sys: &LinearStochasticSystem, xi: &Polytope, xp: &Polytope) -> Polytope {
    let m = sys.control_dim();
    if xi.is_empty() || xp.is_empty() {
        return Polytope::empty(m);
    }
    let neg_ax: Vec<Vec<f64>> = map_points(sys.a(), xi.vertices())
        .into_iter()
        .map(|v| v.into_iter().map(|x| -x).collect())
        .collect();
    let d = Polytope::from_points(
        sys.state_dim(),
        vertex_sums(&[xp.vertices(), &neg_ax, sys.neg_noise().vertices()]),
    );
    preimage_within(sys.control_space(), sys.b(), &d)
}

/// States of `xp` from which some input in `up` reaches `targets` with
/// positive probability.
pub fn pre(sys: &LinearStochasticSystem, xp: &Polytope, up: &Region, targets: &Region) -> Region {
    let n = sys.state_dim();
    let mut out = Region::empty(n);
    if xp.is_empty() {
        return out;
    }
    let reach: Vec<Polytope> = up.parts().iter().map(|u| sys.post(xp, u)).collect();
    for (u, post) in up.parts().iter().zip(&reach) {
        for t in targets.parts() {
            if !post.bbox_overlaps(t) {
                continue;
            }
            out.add(preimage_within(xp, sys.a(), &shift_back(sys, t, u)));
        }
    }
    out
}

/// `Z = A Xp + B U_l`: the noise-free successors of `xp` under `u`.
fn nominal_image(sys: &LinearStochasticSystem, xp: &Polytope, u: &Polytope) -> Polytope {
    let ax = map_points(sys.a(), xp.vertices());
    let bu = map_points(sys.b(), u.vertices());
    Polytope::from_points(sys.state_dim(), vertex_sums(&[&ax, &bu]))
}

/// `{x in xp | exists u in u_part: A x + B u in z}`.
fn back_project(sys: &LinearStochasticSystem, xp: &Polytope, u: &Polytope, z: &Polytope) -> Polytope {
    let neg_bu: Vec<Vec<f64>> = map_points(sys.b(), u.vertices())
        .into_iter()
        .map(|v| v.into_iter().map(|x| -x).collect())
        .collect();
    let d = Polytope::from_points(sys.state_dim(), vertex_sums(&[z.vertices(), &neg_bu]));
    preimage_within(xp, sys.a(), &d)
}

/// States of `xp` from which some input in `up` keeps the successor out of
/// `avoid` surely.
pub fn pre_robust_avoiding(sys: &LinearStochasticSystem, xp: &Polytope, up: &Region, avoid: &Region) -> Region {
    let n = sys.state_dim();
    let mut out = Region::empty(n);
    if xp.is_empty() {
        return out;
    }
    for u in up.parts() {
        let z = nominal_image(sys, xp, u);
        if z.is_empty() {
            continue;
        }
        let bad: Vec<Polytope> = avoid
            .parts()
            .iter()
            .map(|c| c.minkowski_sum(sys.neg_noise()))
            .filter(|c| c.bbox_overlaps(&z))
            .collect();
        let good = Region::from_polytope(z).difference(&Region::from_disjoint(n, bad));
        for g in good.parts() {
            out.add(back_project(sys, xp, u, g));
        }
    }
    out
}

/// States of `xp` from which some input in `up` keeps the successor inside
/// `targets` surely.
pub fn pre_robust(sys: &LinearStochasticSystem, xp: &Polytope, up: &Region, targets: &Region) -> Region {
    pre_robust_avoiding(sys, xp, up, &sys.complement(targets))
}

/// Decomposes the robust predecessor of `chosen` by the exact set of parts
/// the successor distribution touches.
///
/// Returns `(J', PreP(J'))` for every nonempty label set `J'` (indices into
/// `chosen`), sorted by label. `others` must cover the rest of the universe.
pub fn precise_decomposition(
    sys: &LinearStochasticSystem,
    xp: &Polytope,
    up: &Region,
    chosen: &[Polytope],
    others: &[Polytope],
) -> Vec<(Vec<usize>, Region)> {
    let n = sys.state_dim();
    let mut by_label: Vec<(Vec<usize>, Region)> = Vec::new();
    if xp.is_empty() {
        return by_label;
    }
    let grown: Vec<Polytope> = chosen.iter().map(|c| c.minkowski_sum(sys.neg_noise())).collect();
    for u in up.parts() {
        let z = nominal_image(sys, xp, u);
        if z.is_empty() {
            continue;
        }
        let mut pieces: Vec<(Vec<usize>, Polytope)> = vec![(Vec::new(), z.clone())];
        for (j, g) in grown.iter().enumerate() {
            if !g.bbox_overlaps(&z) {
                continue;
            }
            let mut next = Vec::with_capacity(pieces.len() * 2);
            for (label, p) in pieces {
                let inside = p.intersect(g);
                if inside.is_empty() {
                    next.push((label, p));
                    continue;
                }
                for rest in
                    crate::geometry::region_difference(&Region::from_polytope(p), &Region::from_polytope(g.clone()))
                        .into_parts()
                {
                    next.push((label.clone(), rest));
                }
                let mut with = label;
                with.push(j);
                next.push((with, inside));
            }
            pieces = next;
        }
        let bad: Vec<Polytope> = others
            .iter()
            .map(|c| c.minkowski_sum(sys.neg_noise()))
            .filter(|c| c.bbox_overlaps(&z))
            .collect();
        let bad = Region::from_disjoint(n, bad);
        for (label, p) in pieces {
            if label.is_empty() {
                continue;
            }
            let good = Region::from_polytope(p).difference(&bad);
            for g in good.parts() {
                let x = back_project(sys, xp, u, g);
                if x.is_empty() {
                    continue;
                }
                match by_label.iter_mut().find(|(l, _)| *l == label) {
                    Some((_, r)) => r.add(x),
                    None => by_label.push((label.clone(), Region::from_polytope(x))),
                }
            }
        }
    }
    by_label.sort_by(|a, b| a.0.cmp(&b.0));
    by_label
}

/// States of `xp` from which some input in `up` leads surely into the union
/// of `parts` while touching every one of them.
pub fn pre_precise(sys: &LinearStochasticSystem, xp: &Polytope, up: &Region, parts: &[Polytope]) -> Region {
    let n = sys.state_dim();
    if parts.is_empty() {
        return Region::empty(n);
    }
    let all = (0..parts.len()).collect::<Vec<_>>();
    let others = sys.complement(&Region::from_disjoint(n, parts.to_vec())).into_parts();
    precise_decomposition(sys, xp, up, parts, &others)
        .into_iter()
        .find(|(label, _)| *label == all)
        .map(|(_, r)| r)
        .unwrap_or_else(|| Region::empty(n))
}

/// States of `xp` where every input in `up` hits `targets` with positive
/// probability.
pub fn attr(sys: &LinearStochasticSystem, xp: &Polytope, up: &Region, targets: &Region) -> Region {
    Region::from_polytope(xp.clone()).difference(&pre_robust_avoiding(sys, xp, up, targets))
}

/// States of `xp` where every input in `up` lands inside `targets` surely.
/// `complement` must be the rest of the universe.
pub fn attr_robust_from_complement(
    sys: &LinearStochasticSystem,
    xp: &Polytope,
    up: &Region,
    complement: &Region,
) -> Region {
    Region::from_polytope(xp.clone()).difference(&pre(sys, xp, up, complement))
}

pub fn attr_robust(sys: &LinearStochasticSystem, xp: &Polytope, up: &Region, targets: &Region) -> Region {
    attr_robust_from_complement(sys, xp, up, &sys.complement(targets))
}
