use nalgebra::DMatrix;

use super::dd::{enumerate, Enumeration};
use super::hull::{self, dedup_points, hull_2d, same_halfspace};
use super::linalg::{affine_rank, dot, norm};
use super::EPS_GEO;
use crate::error::{Error, Result};

/// Closed halfspace `normal·x <= offset`. Normals are kept at unit length.
#[derive(Clone, Debug, PartialEq)]
pub struct Halfspace {
    pub normal: Vec<f64>,
    pub offset: f64,
}

impl Halfspace {
    /// Builds a halfspace, rescaling so that the normal has unit length.
    /// A zero normal is kept as given.
    pub fn new(normal: Vec<f64>, offset: f64) -> Self {
        let n = norm(&normal);
        if n == 0.0 {
            return Self { normal, offset };
        }
        Self {
            normal: normal.iter().map(|x| x / n).collect(),
            offset: offset / n,
        }
    }

    /// `offset - normal·x`; nonnegative inside.
    pub fn slack(&self, x: &[f64]) -> f64 {
        self.offset - dot(&self.normal, x)
    }

    /// The closed complementary halfspace.
    pub fn flipped(&self) -> Self {
        Self {
            normal: self.normal.iter().map(|x| -x).collect(),
            offset: -self.offset,
        }
    }
}

/// Convex polytope holding both its vertex and facet representation.
///
/// Anything that is not full-dimensional is the empty polytope, which has no
/// vertices and no halfspaces.
#[derive(Clone, Debug)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Vec<f64>>,
    halfspaces: Vec<Halfspace>,
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl Polytope {
    pub fn empty(dim: usize) -> Self {
        Self {
            dim,
            vertices: Vec::new(),
            halfspaces: Vec::new(),
            lo: Vec::new(),
            hi: Vec::new(),
        }
    }

    /// Convex hull of a point list.
    pub fn hull(points: &[Vec<f64>]) -> Result<Self> {
        let first = points.first().ok_or(Error::NoPoints)?;
        let dim = first.len();
        check_dims(dim, points.iter().map(|p| p.len()))?;
        Ok(Self::from_points(dim, points.to_vec()))
    }

    /// Polytope `{x | h·x <= k}`; unbounded inputs are rejected.
    pub fn from_halfspaces(dim: usize, halfspaces: Vec<Halfspace>) -> Result<Self> {
        check_dims(dim, halfspaces.iter().map(|h| h.normal.len()))?;
        let rows: Vec<Halfspace> = halfspaces
            .into_iter()
            .map(|h| Halfspace::new(h.normal, h.offset))
            .collect();
        match enumerate(dim, &rows) {
            Enumeration::Unbounded => Err(Error::Unbounded),
            Enumeration::Bounded(v) => Ok(Self::finish(dim, v, &rows)),
        }
    }

    /// Axis-aligned box; halfspaces are ordered `-x_1, x_1, -x_2, x_2, ...`.
    pub fn boxed(lo: &[f64], hi: &[f64]) -> Self {
        let dim = lo.len();
        let mut rows = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            let mut e = vec![0.0; dim];
            e[i] = -1.0;
            rows.push(Halfspace::new(e.clone(), -lo[i]));
            e[i] = 1.0;
            rows.push(Halfspace::new(e, hi[i]));
        }
        Self::from_rows(dim, rows)
    }

    pub(crate) fn from_points(dim: usize, points: Vec<Vec<f64>>) -> Self {
        match hull::hull(dim, points) {
            Some((vertices, halfspaces)) => Self::assemble(dim, vertices, halfspaces),
            None => Self::empty(dim),
        }
    }

    /// Intersection of halfspaces known to describe a bounded set.
    pub(crate) fn from_rows(dim: usize, rows: Vec<Halfspace>) -> Self {
        match enumerate(dim, &rows) {
            Enumeration::Bounded(v) => Self::finish(dim, v, &rows),
            Enumeration::Unbounded => Self::empty(dim),
        }
    }

    /// Keeps the rows that support a facet of the vertex set, in input order.
    fn finish(dim: usize, vertices: Vec<Vec<f64>>, rows: &[Halfspace]) -> Self {
        let mut vertices = dedup_points(vertices);
        if dim == 2 {
            vertices = hull_2d(&vertices);
        } else if dim == 1 {
            vertices.sort_by(|a, b| a[0].total_cmp(&b[0]));
        }
        if vertices.len() < dim + 1 {
            return Self::empty(dim);
        }
        let mut facets: Vec<Halfspace> = Vec::new();
        for row in rows {
            let active: Vec<&[f64]> = vertices
                .iter()
                .filter(|v| row.slack(v).abs() <= EPS_GEO)
                .map(|v| v.as_slice())
                .collect();
            if active.len() < dim || affine_rank(&active, EPS_GEO) + 1 < dim {
                continue;
            }
            if !facets.iter().any(|f| same_halfspace(f, row)) {
                facets.push(row.clone());
            }
        }
        let complete = if dim == 2 {
            facets.len() == vertices.len()
        } else {
            vertices
                .iter()
                .all(|v| facets.iter().filter(|f| f.slack(v).abs() <= EPS_GEO).count() >= dim)
        };
        if !complete {
            // numerically awkward input; rebuild the facets from the vertices
            return Self::from_points(dim, vertices);
        }
        Self::assemble(dim, vertices, facets)
    }

    fn assemble(dim: usize, vertices: Vec<Vec<f64>>, halfspaces: Vec<Halfspace>) -> Self {
        if vertices.len() < dim + 1 || halfspaces.len() < dim + 1 {
            return Self::empty(dim);
        }
        let thin = halfspaces.iter().any(|h| {
            let widest = vertices.iter().map(|v| h.slack(v)).fold(0.0, f64::max);
            widest <= EPS_GEO
        });
        if thin {
            return Self::empty(dim);
        }
        let mut lo = vec![f64::INFINITY; dim];
        let mut hi = vec![f64::NEG_INFINITY; dim];
        for v in &vertices {
            for i in 0..dim {
                lo[i] = lo[i].min(v[i]);
                hi[i] = hi[i].max(v[i]);
            }
        }
        Self {
            dim,
            vertices,
            halfspaces,
            lo,
            hi,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertices; counter-clockwise in the plane.
    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    /// Irredundant facet halfspaces.
    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    /// `None` marks the empty polytope.
    pub fn to_hrep(&self) -> Option<&[Halfspace]> {
        (!self.is_empty()).then_some(self.halfspaces.as_slice())
    }

    /// `None` marks the empty polytope.
    pub fn to_vrep(&self) -> Option<&[Vec<f64>]> {
        (!self.is_empty()).then_some(self.vertices.as_slice())
    }

    /// Bounding box corners; `None` for the empty polytope.
    pub fn bbox(&self) -> Option<(&[f64], &[f64])> {
        (!self.is_empty()).then_some((self.lo.as_slice(), self.hi.as_slice()))
    }

    pub(crate) fn bbox_overlaps(&self, other: &Polytope) -> bool {
        if self.is_empty() || other.is_empty() {
            return false;
        }
        (0..self.dim).all(|i| self.lo[i] < other.hi[i] - EPS_GEO && other.lo[i] < self.hi[i] - EPS_GEO)
    }

    pub fn volume(&self) -> f64 {
        if self.is_empty() {
            return 0.0;
        }
        hull::volume(self.dim, &self.vertices, &self.halfspaces)
    }

    /// Bounding boxes intersect, touching included.
    pub(crate) fn bbox_touches(&self, other: &Polytope) -> bool {
        !self.is_empty()
            && !other.is_empty()
            && (0..self.dim).all(|i| self.lo[i] <= other.hi[i] + EPS_GEO && other.lo[i] <= self.hi[i] + EPS_GEO)
    }

    /// Membership with tolerance `EPS_GEO`.
    pub fn contains(&self, x: &[f64]) -> bool {
        !self.is_empty() && self.halfspaces.iter().all(|h| h.slack(x) >= -EPS_GEO)
    }

    /// Smallest facet slack of `x`: positive inside, negative outside.
    pub fn margin(&self, x: &[f64]) -> f64 {
        self.halfspaces.iter().map(|h| h.slack(x)).fold(f64::INFINITY, f64::min)
    }

    pub fn intersect(&self, other: &Polytope) -> Polytope {
        assert_eq!(self.dim, other.dim, "intersect: dimension mismatch");
        if !self.bbox_overlaps(other) {
            return Self::empty(self.dim);
        }
        if other.vertices.iter().all(|v| self.contains(v)) {
            return other.clone();
        }
        if self.vertices.iter().all(|v| other.contains(v)) {
            return self.clone();
        }
        let rows = self.halfspaces.iter().chain(&other.halfspaces).cloned().collect();
        Self::from_rows(self.dim, rows)
    }

    pub fn intersect_halfspace(&self, h: &Halfspace) -> Polytope {
        if self.is_empty() {
            return self.clone();
        }
        let (mut min, mut max) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in &self.vertices {
            let s = h.slack(v);
            min = min.min(s);
            max = max.max(s);
        }
        if min >= -EPS_GEO {
            return self.clone();
        }
        if max <= EPS_GEO {
            return Self::empty(self.dim);
        }
        let mut rows = self.halfspaces.clone();
        rows.push(h.clone());
        Self::from_rows(self.dim, rows)
    }

    pub fn minkowski_sum(&self, other: &Polytope) -> Polytope {
        assert_eq!(self.dim, other.dim, "minkowski_sum: dimension mismatch");
        if self.is_empty() || other.is_empty() {
            return Self::empty(self.dim);
        }
        Self::from_points(self.dim, vertex_sums(&[&self.vertices, &other.vertices]))
    }

    /// Image under `m`; empty when the image is not full-dimensional.
    pub fn linear_image(&self, m: &DMatrix<f64>) -> Polytope {
        assert_eq!(m.ncols(), self.dim, "linear_image: dimension mismatch");
        if self.is_empty() {
            return Self::empty(m.nrows());
        }
        Self::from_points(m.nrows(), map_points(m, &self.vertices))
    }

    pub fn translate(&self, t: &[f64]) -> Polytope {
        if self.is_empty() {
            return self.clone();
        }
        let vertices = self.vertices.iter().map(|v| super::linalg::add(v, t)).collect();
        let halfspaces = self
            .halfspaces
            .iter()
            .map(|h| Halfspace {
                normal: h.normal.clone(),
                offset: h.offset + dot(&h.normal, t),
            })
            .collect();
        Self::assemble(self.dim, vertices, halfspaces)
    }

    /// `{-x | x in self}`.
    pub fn negate(&self) -> Polytope {
        if self.is_empty() {
            return self.clone();
        }
        let vertices: Vec<Vec<f64>> = self.vertices.iter().map(|v| v.iter().map(|x| -x).collect()).collect();
        let halfspaces = self
            .halfspaces
            .iter()
            .map(|h| Halfspace {
                normal: h.normal.iter().map(|x| -x).collect(),
                offset: h.offset,
            })
            .collect();
        Self::assemble(self.dim, vertices, halfspaces)
    }

    /// Every vertex of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &Polytope) -> bool {
        self.vertices.iter().all(|v| other.contains(v))
    }

    /// Center and radius of the largest inscribed ball. Ties between optimal
    /// centers are resolved by averaging them.
    pub fn chebyshev_center(&self) -> Option<(Vec<f64>, f64)> {
        if self.is_empty() {
            return None;
        }
        let d = self.dim;
        let mut rows: Vec<Halfspace> = self
            .halfspaces
            .iter()
            .map(|h| {
                let mut n = h.normal.clone();
                n.push(1.0);
                Halfspace {
                    normal: n,
                    offset: h.offset,
                }
            })
            .collect();
        let mut down = vec![0.0; d + 1];
        down[d] = -1.0;
        rows.push(Halfspace {
            normal: down,
            offset: 0.0,
        });
        let Enumeration::Bounded(points) = enumerate(d + 1, &rows) else {
            return None;
        };
        let best = points.iter().map(|p| p[d]).fold(f64::NEG_INFINITY, f64::max);
        let tied: Vec<&Vec<f64>> = points.iter().filter(|p| p[d] >= best - 1e-9).collect();
        let mut c = vec![0.0; d];
        for p in &tied {
            for i in 0..d {
                c[i] += p[i] / tied.len() as f64;
            }
        }
        Some((c, best))
    }

    /// A point in the interior (the Chebyshev center).
    pub fn interior_point(&self) -> Option<Vec<f64>> {
        self.chebyshev_center().map(|(c, _)| c)
    }
}

fn check_dims(dim: usize, dims: impl Iterator<Item = usize>) -> Result<()> {
    for found in dims {
        if found != dim {
            return Err(Error::DimensionMismatch { expected: dim, found });
        }
    }
    Ok(())
}

pub(crate) fn map_points(m: &DMatrix<f64>, points: &[Vec<f64>]) -> Vec<Vec<f64>> {
    points
        .iter()
        .map(|p| {
            (0..m.nrows())
                .map(|r| (0..m.ncols()).map(|c| m[(r, c)] * p[c]).sum())
                .collect()
        })
        .collect()
}

/// All sums `v_1 + ... + v_k` choosing one point from each set.
pub(crate) fn vertex_sums(sets: &[&[Vec<f64>]]) -> Vec<Vec<f64>> {
    let mut acc: Vec<Vec<f64>> = vec![vec![0.0; sets[0][0].len()]];
    for set in sets {
        acc = acc
            .iter()
            .flat_map(|a| set.iter().map(move |v| super::linalg::add(a, v)))
            .collect();
        acc = dedup_points(acc);
    }
    acc
}
