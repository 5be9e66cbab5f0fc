//! Small dense helpers on `&[f64]` vectors.
//!
//! Points and normals are plain `Vec<f64>`; these helpers keep the polytope
//! code free of conversions for the tiny dimensions we work in.

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub(crate) fn centroid(points: &[Vec<f64>]) -> Vec<f64> {
    let dim = points[0].len();
    let mut c = vec![0.0; dim];
    for p in points {
        for (ci, pi) in c.iter_mut().zip(p) {
            *ci += pi;
        }
    }
    let n = points.len() as f64;
    c.iter_mut().for_each(|ci| *ci /= n);
    c
}

/// Incrementally built orthonormal basis, used for rank tests.
pub(crate) struct OrthoBasis {
    basis: Vec<Vec<f64>>,
    tol: f64,
}

impl OrthoBasis {
    pub(crate) fn new(tol: f64) -> Self {
        Self { basis: Vec::new(), tol }
    }

    pub(crate) fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Adds `v` if it is independent of the current span; returns whether it was.
    pub(crate) fn push(&mut self, v: &[f64]) -> bool {
        let scale = norm(v);
        if scale <= self.tol {
            return false;
        }
        let mut r: Vec<f64> = v.iter().map(|x| x / scale).collect();
        // two passes of Gram-Schmidt for stability
        for _ in 0..2 {
            for b in &self.basis {
                let c = dot(&r, b);
                for (ri, bi) in r.iter_mut().zip(b) {
                    *ri -= c * bi;
                }
            }
        }
        let n = norm(&r);
        if n <= self.tol {
            return false;
        }
        r.iter_mut().for_each(|x| *x /= n);
        self.basis.push(r);
        true
    }

    pub(crate) fn vectors(&self) -> &[Vec<f64>] {
        &self.basis
    }
}

/// Affine rank of a point set (0 for a single point).
pub(crate) fn affine_rank(points: &[&[f64]], tol: f64) -> usize {
    let Some(first) = points.first() else {
        return 0;
    };
    let mut basis = OrthoBasis::new(tol);
    let dim = first.len();
    for p in &points[1..] {
        basis.push(&sub(p, first));
        if basis.rank() == dim {
            break;
        }
    }
    basis.rank()
}

/// Orthonormal basis of the hyperplane orthogonal to unit vector `n`.
pub(crate) fn complement_basis(n: &[f64]) -> Vec<Vec<f64>> {
    let dim = n.len();
    let mut basis = OrthoBasis::new(1e-12);
    basis.push(n);
    for i in 0..dim {
        let mut e = vec![0.0; dim];
        e[i] = 1.0;
        basis.push(&e);
        if basis.rank() == dim {
            break;
        }
    }
    basis.vectors()[1..].to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_rank_of_segment_and_triangle() {
        let a = [0.0, 0.0];
        let b = [1.0, 1.0];
        let c = [2.0, 2.0];
        let d = [0.0, 1.0];
        assert_eq!(affine_rank(&[&a, &b, &c], 1e-9), 1);
        assert_eq!(affine_rank(&[&a, &b, &d], 1e-9), 2);
    }

    #[test]
    fn complement_basis_is_orthogonal() {
        let n = [0.6, 0.8, 0.0];
        let basis = complement_basis(&n);
        assert_eq!(basis.len(), 2);
        for b in &basis {
            assert!(dot(b, &n).abs() < 1e-12);
            assert!((norm(b) - 1.0).abs() < 1e-12);
        }
        assert!(dot(&basis[0], &basis[1]).abs() < 1e-12);
    }
}
