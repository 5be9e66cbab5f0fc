use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::automata::Letter;
use crate::error::{Error, Result};
use crate::geometry::{map_points, vertex_sums, Halfspace, Polytope, Region};

/// `x' = A x + B u + w` with `x in X`, `u in U`, `w in W`.
#[derive(Clone, Debug)]
pub struct LinearStochasticSystem {
    a: DMatrix<f64>,
    b: DMatrix<f64>,
    x: Polytope,
    u: Polytope,
    w: Polytope,
    neg_w: Polytope,
    out: Region,
}

impl LinearStochasticSystem {
    pub fn new(a: DMatrix<f64>, b: DMatrix<f64>, x: Polytope, u: Polytope, w: Polytope) -> Result<Self> {
        let n = x.dim();
        if a.nrows() != n || a.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: a.nrows().max(a.ncols()),
            });
        }
        if b.nrows() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: b.nrows(),
            });
        }
        if b.ncols() != u.dim() {
            return Err(Error::DimensionMismatch {
                expected: u.dim(),
                found: b.ncols(),
            });
        }
        if w.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: w.dim(),
            });
        }
        for (p, name) in [(&x, "state space"), (&u, "control space"), (&w, "noise set")] {
            if p.is_empty() {
                return Err(Error::Degenerate(name));
            }
        }
        let neg_w = w.negate();
        let mut sys = Self {
            a,
            b,
            x,
            u,
            w,
            neg_w,
            out: Region::empty(n),
        };
        let reach = sys.post(&sys.x, &sys.u);
        sys.out = Region::from_polytope(reach).difference(&Region::from_polytope(sys.x.clone()));
        Ok(sys)
    }

    pub fn a(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn b(&self) -> &DMatrix<f64> {
        &self.b
    }

    pub fn state_space(&self) -> &Polytope {
        &self.x
    }

    pub fn control_space(&self) -> &Polytope {
        &self.u
    }

    pub fn noise(&self) -> &Polytope {
        &self.w
    }

    pub(crate) fn neg_noise(&self) -> &Polytope {
        &self.neg_w
    }

    pub fn state_dim(&self) -> usize {
        self.x.dim()
    }

    pub fn control_dim(&self) -> usize {
        self.u.dim()
    }

    /// `Post(X, U) \ X`, split canonically by the facets of `X`.
    pub fn out_region(&self) -> &Region {
        &self.out
    }

    /// `X` together with the out parts.
    pub fn universe(&self) -> Region {
        let mut parts = vec![self.x.clone()];
        parts.extend(self.out.parts().iter().cloned());
        Region::from_disjoint(self.state_dim(), parts)
    }

    /// Complement of `targets` inside the universe.
    pub fn complement(&self, targets: &Region) -> Region {
        self.universe().difference(targets)
    }

    /// `A Xp + B Up + W`.
    pub fn post(&self, xp: &Polytope, up: &Polytope) -> Polytope {
        if xp.is_empty() || up.is_empty() {
            return Polytope::empty(self.state_dim());
        }
        self.post_points(xp, &map_points(&self.b, up.vertices()))
    }

    /// `A Xp + B u + W` for a single input.
    pub fn post_input(&self, xp: &Polytope, u: &[f64]) -> Polytope {
        if xp.is_empty() {
            return Polytope::empty(self.state_dim());
        }
        self.post_points(xp, &map_points(&self.b, &[u.to_vec()]))
    }

    fn post_points(&self, xp: &Polytope, bu: &[Vec<f64>]) -> Polytope {
        let ax = map_points(&self.a, xp.vertices());
        Polytope::from_points(self.state_dim(), vertex_sums(&[&ax, bu, self.w.vertices()]))
    }

    pub fn step(&self, x: &[f64], u: &[f64], w: &[f64]) -> Vec<f64> {
        let ax = map_points(&self.a, &[x.to_vec()]).remove(0);
        let bu = map_points(&self.b, &[u.to_vec()]).remove(0);
        (0..self.state_dim()).map(|i| ax[i] + bu[i] + w[i]).collect()
    }
}

/// Linear predicate `c·x <= d`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Predicate {
    pub c: Vec<f64>,
    pub d: f64,
}

impl Predicate {
    pub fn holds(&self, x: &[f64]) -> bool {
        self.c.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() <= self.d
    }

    pub fn halfspace(&self) -> Halfspace {
        Halfspace::new(self.c.clone(), self.d)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PredicateSet {
    pub predicates: Vec<Predicate>,
}

impl PredicateSet {
    pub fn new(predicates: Vec<Predicate>) -> Self {
        Self { predicates }
    }

    pub fn len(&self) -> usize {
        self.predicates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.predicates.is_empty()
    }

    /// Bit `k` is set iff predicate `k` holds at `x`.
    pub fn letter(&self, x: &[f64]) -> Letter {
        self.predicates
            .iter()
            .enumerate()
            .filter(|(_, p)| p.holds(x))
            .fold(0, |acc, (k, _)| acc | 1 << k)
    }
}
