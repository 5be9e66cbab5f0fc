//! Double-description vertex enumeration.
//!
//! The polyhedron `{x | h_i·x <= k_i}` is homogenized into the cone
//! `{(x, t) | h_i·x - k_i t <= 0, t >= 0}` whose extreme rays are built up one
//! constraint at a time. Rays with `t > 0` are the vertices; a ray with `t = 0`
//! means the polyhedron is unbounded.

use nalgebra::DMatrix;

use super::linalg::{dot, norm, OrthoBasis};
use super::Halfspace;

const ZERO_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BitSet(Vec<u64>);

impl BitSet {
    fn new(n: usize) -> Self {
        Self(vec![0; n.div_ceil(64)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_subset(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

#[derive(Debug)]
pub(crate) enum Enumeration {
    /// Vertices of a bounded polyhedron (possibly none, when infeasible).
    Bounded(Vec<Vec<f64>>),
    Unbounded,
}

struct Ray {
    y: Vec<f64>,
    zeros: BitSet,
}

/// Enumerates the vertices of `{x in R^dim | h·x <= k for all rows}`.
///
/// Vertices are returned undeduplicated only up to the rays of the final cone;
/// callers dedup and canonicalize.
pub(crate) fn enumerate(dim: usize, rows: &[Halfspace]) -> Enumeration {
    let d = dim + 1;
    // homogenized rows, index 0 is t >= 0
    let mut hom: Vec<Vec<f64>> = Vec::with_capacity(rows.len() + 1);
    let mut t_row = vec![0.0; d];
    t_row[dim] = -1.0;
    hom.push(t_row);
    for r in rows {
        let mut a = r.normal.clone();
        a.push(-r.offset);
        let n = norm(&a);
        if n > 0.0 {
            a.iter_mut().for_each(|x| *x /= n);
        }
        hom.push(a);
    }
    let m = hom.len();

    let mut basis = OrthoBasis::new(1e-9);
    let mut chosen = Vec::with_capacity(d);
    for (i, row) in hom.iter().enumerate() {
        if basis.push(row) {
            chosen.push(i);
            if chosen.len() == d {
                break;
            }
        }
    }
    if chosen.len() < d {
        return Enumeration::Unbounded;
    }

    let ab = DMatrix::from_fn(d, d, |r, c| hom[chosen[r]][c]);
    let Some(inv) = ab.try_inverse() else {
        return Enumeration::Unbounded;
    };
    // columns of -A_B^{-1} generate the initial simplicial cone A_B y <= 0
    let mut rays: Vec<Ray> = (0..d)
        .map(|j| {
            let mut y: Vec<f64> = (0..d).map(|r| -inv[(r, j)]).collect();
            let n = norm(&y);
            y.iter_mut().for_each(|x| *x /= n);
            let mut zeros = BitSet::new(m);
            for (pos, &row) in chosen.iter().enumerate() {
                if pos != j {
                    zeros.insert(row);
                }
            }
            Ray { y, zeros }
        })
        .collect();

    let mut is_chosen = vec![false; m];
    chosen.iter().for_each(|&i| is_chosen[i] = true);

    for c in 0..m {
        if is_chosen[c] {
            continue;
        }
        let a = &hom[c];
        let vals: Vec<f64> = rays.iter().map(|r| dot(a, &r.y)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] > ZERO_TOL).collect();
        if pos.is_empty() {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.abs() <= ZERO_TOL {
                    r.zeros.insert(c);
                }
            }
            continue;
        }
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] < -ZERO_TOL).collect();

        let mut created = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].zeros.and(&rays[n].zeros);
                if common.count() + 2 < d {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(r, ray)| r == p || r == n || !common.is_subset(&ray.zeros));
                if !adjacent {
                    continue;
                }
                let mut y: Vec<f64> = rays[n]
                    .y
                    .iter()
                    .zip(&rays[p].y)
                    .map(|(yn, yp)| vals[p] * yn - vals[n] * yp)
                    .collect();
                let len = norm(&y);
                if len <= ZERO_TOL {
                    continue;
                }
                y.iter_mut().for_each(|x| *x /= len);
                let mut zeros = common;
                zeros.insert(c);
                created.push(Ray { y, zeros });
            }
        }

        let old = std::mem::take(&mut rays);
        for (mut r, v) in old.into_iter().zip(&vals) {
            if *v < -ZERO_TOL {
                rays.push(r);
            } else if *v <= ZERO_TOL {
                r.zeros.insert(c);
                rays.push(r);
            }
        }
        rays.extend(created);
        if rays.is_empty() {
            return Enumeration::Bounded(Vec::new());
        }
    }

    let mut vertices = Vec::new();
    for r in &rays {
        let t = r.y[dim];
        if t > ZERO_TOL {
            vertices.push(r.y[..dim].iter().map(|x| x / t).collect());
        } else {
            return Enumeration::Unbounded;
        }
    }
    Enumeration::Bounded(vertices)
}
