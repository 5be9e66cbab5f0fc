use super::polytope::Polytope;
use super::EPS_GEO;

/// Finite union of pairwise interior-disjoint polytopes of one dimension.
#[derive(Clone, Debug)]
pub struct Region {
    dim: usize,
    parts: Vec<Polytope>,
}

impl Region {
    pub fn empty(dim: usize) -> Self {
        Self { dim, parts: Vec::new() }
    }

    pub fn from_polytope(p: Polytope) -> Self {
        let dim = p.dim();
        Self::from_disjoint(dim, vec![p])
    }

    /// Wraps parts already known to be interior-disjoint; empty parts are dropped.
    pub fn from_disjoint(dim: usize, parts: Vec<Polytope>) -> Self {
        let parts = parts.into_iter().filter(|p| !p.is_empty()).collect();
        Self { dim, parts }
    }

    /// Union of possibly overlapping polytopes.
    pub fn union_of(dim: usize, polys: impl IntoIterator<Item = Polytope>) -> Self {
        let mut r = Self::empty(dim);
        for p in polys {
            r.add(p);
        }
        r
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn parts(&self) -> &[Polytope] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<Polytope> {
        self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn volume(&self) -> f64 {
        self.parts.iter().map(Polytope::volume).sum()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.parts.iter().any(|p| p.contains(x))
    }

    /// Adds `p`, keeping only what is not yet covered.
    pub fn add(&mut self, p: Polytope) {
        if p.is_empty() {
            return;
        }
        let mut pieces = vec![p];
        for q in &self.parts {
            pieces = pieces.iter().flat_map(|piece| subtract(piece, q)).collect();
            if pieces.is_empty() {
                return;
            }
        }
        self.parts.extend(pieces);
    }

    pub fn union(&self, other: &Region) -> Region {
        let mut r = self.clone();
        for p in &other.parts {
            r.add(p.clone());
        }
        r
    }

    pub fn difference(&self, other: &Region) -> Region {
        region_difference(self, other)
    }

    pub fn intersect_polytope(&self, p: &Polytope) -> Region {
        let parts = self.parts.iter().map(|q| q.intersect(p)).collect();
        Self::from_disjoint(self.dim, parts)
    }

    pub fn intersect(&self, other: &Region) -> Region {
        let parts = self
            .parts
            .iter()
            .flat_map(|a| other.parts.iter().map(move |b| a.intersect(b)))
            .collect();
        Self::from_disjoint(self.dim, parts)
    }

    /// Part with the largest volume; ties keep the first.
    pub fn largest_part(&self) -> Option<&Polytope> {
        let mut best: Option<(&Polytope, f64)> = None;
        for p in &self.parts {
            let v = p.volume();
            if best.is_none_or(|(_, bv)| v > bv) {
                best = Some((p, v));
            }
        }
        best.map(|(p, _)| p)
    }
}

/// `R1 \ R2` as interior-disjoint parts, splitting each part of `R1` by the
/// halfspaces of each part of `R2` in their stored order.
pub fn region_difference(r1: &Region, r2: &Region) -> Region {
    let mut out = Vec::new();
    for p in &r1.parts {
        let mut pieces = vec![p.clone()];
        for q in &r2.parts {
            pieces = pieces.iter().flat_map(|piece| subtract(piece, q)).collect();
            if pieces.is_empty() {
                break;
            }
        }
        out.extend(pieces);
    }
    Region::from_disjoint(r1.dim, out)
}

/// `p \ q`: for each facet of `q`, the part of the remainder outside it is
/// emitted and the inside part is carried on.
pub(crate) fn subtract(p: &Polytope, q: &Polytope) -> Vec<Polytope> {
    if !p.bbox_overlaps(q) {
        return vec![p.clone()];
    }
    let mut out = Vec::new();
    let mut inside = p.clone();
    for h in q.halfspaces() {
        let (mut min, mut max) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in inside.vertices() {
            let s = h.slack(v);
            min = min.min(s);
            max = max.max(s);
        }
        if min >= -EPS_GEO {
            continue;
        }
        if max <= EPS_GEO {
            out.push(inside);
            return out;
        }
        let outside = inside.intersect_halfspace(&h.flipped());
        if !outside.is_empty() {
            out.push(outside);
        }
        inside = inside.intersect_halfspace(h);
        if inside.is_empty() {
            return out;
        }
    }
    out
}
