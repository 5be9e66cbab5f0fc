//! Convex hulls and facet extraction.

use super::dd::{enumerate, Enumeration};
use super::linalg::{affine_rank, centroid, complement_basis, dot, max_abs_diff, norm, sub, OrthoBasis};
use super::{Halfspace, EPS_GEO};

/// Removes points within `EPS_GEO` (max-norm) of an earlier point.
pub(crate) fn dedup_points(points: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(points.len());
    for p in points {
        if !out.iter().any(|q| max_abs_diff(q, &p) <= EPS_GEO) {
            out.push(p);
        }
    }
    out
}

fn cross(o: &[f64], a: &[f64], b: &[f64]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// One monotone-chain step. Points that agree in `x` up to rounding can come
/// in the wrong `y` order, so a nearly collinear `p` lying inside the last
/// edge is skipped instead of popping the edge's far end.
fn push_hull_point(chain: &mut Vec<Vec<f64>>, p: &[f64]) {
    while chain.len() >= 2 {
        let (o, a) = (&chain[chain.len() - 2], &chain[chain.len() - 1]);
        let base = norm(&sub(p, o));
        let turn = if base > 0.0 { cross(o, a, p) / base } else { 0.0 };
        if turn > EPS_GEO {
            break;
        }
        if turn.abs() <= EPS_GEO {
            let oa = sub(a, o);
            let t = dot(&sub(p, o), &oa) / dot(&oa, &oa);
            if (0.0..=1.0).contains(&t) {
                return;
            }
        }
        chain.pop();
    }
    chain.push(p.to_vec());
}

/// Counter-clockwise hull of planar points; points within `EPS_GEO` of an
/// edge line are dropped.
pub(crate) fn hull_2d(points: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut pts = dedup_points(points.to_vec());
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Vec<f64>> = Vec::new();
    for p in &pts {
        push_hull_point(&mut lower, p);
    }
    let mut upper: Vec<Vec<f64>> = Vec::new();
    for p in pts.iter().rev() {
        push_hull_point(&mut upper, p);
    }
    lower.extend(upper);
    // chain ends meet twice; drop repeats and any vertex left without a turn
    let mut ring = lower;
    loop {
        let n = ring.len();
        if n < 3 {
            return ring;
        }
        let flat = (0..n).find(|&i| {
            let (o, a, b) = (&ring[(i + n - 1) % n], &ring[i], &ring[(i + 1) % n]);
            let base = norm(&sub(b, o));
            max_abs_diff(o, a) <= EPS_GEO || base <= EPS_GEO || cross(o, a, b) / base <= EPS_GEO
        });
        match flat {
            Some(i) => {
                ring.remove(i);
            }
            None => return ring,
        }
    }
}

/// Outward edge halfspaces of a counter-clockwise polygon.
pub(crate) fn polygon_facets(ccw: &[Vec<f64>]) -> Vec<Halfspace> {
    let n = ccw.len();
    (0..n)
        .map(|i| {
            let p = &ccw[i];
            let q = &ccw[(i + 1) % n];
            let e = sub(q, p);
            let len = norm(&e);
            let normal = vec![e[1] / len, -e[0] / len];
            let offset = dot(&normal, p);
            Halfspace { normal, offset }
        })
        .collect()
}

/// Hull of points in arbitrary dimension: (vertices, facets), or `None` when
/// the points are not full-dimensional.
pub(crate) fn hull(dim: usize, points: Vec<Vec<f64>>) -> Option<(Vec<Vec<f64>>, Vec<Halfspace>)> {
    let pts = dedup_points(points);
    if pts.len() < dim + 1 {
        return None;
    }
    match dim {
        1 => {
            let lo = pts.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
            let hi = pts.iter().map(|p| p[0]).fold(f64::NEG_INFINITY, f64::max);
            if hi - lo <= EPS_GEO {
                return None;
            }
            let facets = vec![
                Halfspace {
                    normal: vec![-1.0],
                    offset: -lo,
                },
                Halfspace {
                    normal: vec![1.0],
                    offset: hi,
                },
            ];
            Some((vec![vec![lo], vec![hi]], facets))
        }
        2 => {
            let ccw = hull_2d(&pts);
            if ccw.len() < 3 {
                return None;
            }
            let facets = polygon_facets(&ccw);
            Some((ccw, facets))
        }
        _ => {
            let refs: Vec<&[f64]> = pts.iter().map(|p| p.as_slice()).collect();
            if affine_rank(&refs, EPS_GEO) < dim {
                return None;
            }
            let c = centroid(&pts);
            let polar: Vec<Halfspace> = pts
                .iter()
                .map(|p| Halfspace {
                    normal: sub(p, &c),
                    offset: 1.0,
                })
                .collect();
            let Enumeration::Bounded(ys) = enumerate(dim, &polar) else {
                return None;
            };
            let mut facets: Vec<Halfspace> = Vec::new();
            for y in ys {
                let n = norm(&y);
                let h = Halfspace {
                    normal: y.iter().map(|v| v / n).collect(),
                    offset: (1.0 + dot(&y, &c)) / n,
                };
                if !facets.iter().any(|f| same_halfspace(f, &h)) {
                    facets.push(h);
                }
            }
            let vertices: Vec<Vec<f64>> = pts
                .into_iter()
                .filter(|p| {
                    let mut basis = OrthoBasis::new(1e-9);
                    for f in &facets {
                        if f.offset - dot(&f.normal, p) <= EPS_GEO {
                            basis.push(&f.normal);
                        }
                    }
                    basis.rank() == dim
                })
                .collect();
            if vertices.len() < dim + 1 {
                return None;
            }
            Some((vertices, facets))
        }
    }
}

pub(crate) fn same_halfspace(a: &Halfspace, b: &Halfspace) -> bool {
    max_abs_diff(&a.normal, &b.normal) <= 1e-9 && (a.offset - b.offset).abs() <= EPS_GEO
}

/// Volume of the hull of `vertices`, which are assumed to be exactly the
/// vertex set of a full-dimensional polytope with the given facets.
pub(crate) fn volume(dim: usize, vertices: &[Vec<f64>], facets: &[Halfspace]) -> f64 {
    match dim {
        1 => (vertices[1][0] - vertices[0][0]).abs(),
        2 => {
            // vertices are stored counter-clockwise
            let n = vertices.len();
            let twice: f64 = (0..n)
                .map(|i| {
                    let p = &vertices[i];
                    let q = &vertices[(i + 1) % n];
                    p[0] * q[1] - p[1] * q[0]
                })
                .sum();
            twice.abs() / 2.0
        }
        _ => {
            let c = centroid(vertices);
            let mut total = 0.0;
            for f in facets {
                let height = f.offset - dot(&f.normal, &c);
                let on_face: Vec<&Vec<f64>> = vertices
                    .iter()
                    .filter(|v| (f.offset - dot(&f.normal, v)).abs() <= EPS_GEO)
                    .collect();
                let basis = complement_basis(&f.normal);
                let projected: Vec<Vec<f64>> = on_face
                    .iter()
                    .map(|v| basis.iter().map(|b| dot(b, v)).collect())
                    .collect();
                if let Some((pv, pf)) = hull(dim - 1, projected) {
                    total += height * volume(dim - 1, &pv, &pf) / dim as f64;
                }
            }
            total
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_in_x_keeps_corner() {
        let r = 1.0 + 2e-16;
        let pts = vec![
            vec![0.0, 0.0],
            vec![r, 0.0],
            vec![r, 0.1],
            vec![1.0, 0.9],
            vec![1.0, 1.0],
            vec![0.0, 1.0],
        ];
        let h = hull_2d(&pts);
        assert_eq!(h.len(), 4, "{h:?}");
        assert!(h.iter().any(|v| max_abs_diff(v, &[1.0, 1.0]) < 1e-12));
    }

    #[test]
    fn square_hull_drops_interior() {
        let pts = vec![
            vec![0.0, 0.0],
            vec![4.0, 0.0],
            vec![0.0, 2.0],
            vec![4.0, 2.0],
            vec![1.0, 1.0],
            vec![2.0, 0.0],
        ];
        let (v, f) = hull(2, pts).unwrap();
        assert_eq!(v.len(), 4);
        assert_eq!(f.len(), 4);
        assert!((volume(2, &v, &f) - 8.0).abs() < 1e-12);
    }

    #[test]
    fn cube_volume_by_facets() {
        let mut pts = Vec::new();
        for i in 0..8 {
            pts.push((0..3).map(|b| if i >> b & 1 == 1 { 2.0 } else { 0.0 }).collect());
        }
        pts.push(vec![1.0, 1.0, 1.0]);
        let (v, f) = hull(3, pts).unwrap();
        assert_eq!(v.len(), 8);
        assert_eq!(f.len(), 6);
        assert!((volume(3, &v, &f) - 8.0).abs() < 1e-9);
    }

    #[test]
    fn flat_points_have_no_hull() {
        let pts = vec![
            vec![0.0, 0.0, 0.0],
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![1.0, 1.0, 0.0],
        ];
        assert!(hull(3, pts).is_none());
        assert!(hull(2, vec![vec![0.0, 0.0], vec![1.0, 1.0], vec![2.0, 2.0]]).is_none());
    }

    #[test]
    fn simplex_volume_in_four_dimensions() {
        let mut pts = vec![vec![0.0; 4]];
        for i in 0..4 {
            let mut e = vec![0.0; 4];
            e[i] = 1.0;
            pts.push(e);
        }
        let (v, f) = hull(4, pts).unwrap();
        assert_eq!(f.len(), 5);
        assert!((volume(4, &v, &f) - 1.0 / 24.0).abs() < 1e-12);
    }
}
