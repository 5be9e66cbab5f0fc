use std::ops::Range;

use super::system::{LinearStochasticSystem, PredicateSet};
use crate::automata::Letter;
use crate::geometry::{Polytope, EPS_GEO};

/// Index into [`Partition::cells`]: interior cells first, then out cells.
pub type CellId = usize;

#[derive(Clone, Debug)]
pub struct Cell {
    pub poly: Polytope,
    /// Predicates true on the cell interior.
    pub letter: Letter,
    /// Cell of the previous partition this one was split from.
    pub parent: Option<CellId>,
}

/// Interior-disjoint cover of `X` plus the out parts of the system.
#[derive(Clone, Debug)]
pub struct Partition {
    cells: Vec<Cell>,
    n_interior: usize,
}

impl Partition {
    /// Splits `X` by every predicate hyperplane in order, true side first.
    pub fn initial(sys: &LinearStochasticSystem, preds: &PredicateSet) -> Self {
        let mut polys = vec![sys.state_space().clone()];
        for p in &preds.predicates {
            let h = p.halfspace();
            polys = polys
                .iter()
                .flat_map(|c| [c.intersect_halfspace(&h), c.intersect_halfspace(&h.flipped())])
                .filter(|c| !c.is_empty())
                .collect();
        }
        Self::from_interior(sys, preds, polys.into_iter().map(|p| (p, None)).collect())
    }

    /// Builds a partition from interior cells; out cells are taken from the system.
    pub fn from_interior(
        sys: &LinearStochasticSystem,
        preds: &PredicateSet,
        interior: Vec<(Polytope, Option<CellId>)>,
    ) -> Self {
        let n_interior = interior.len();
        let label = |p: &Polytope| {
            let x = p.interior_point().expect("partition cells are nonempty");
            preds.letter(&x)
        };
        let mut cells: Vec<Cell> = interior
            .into_iter()
            .map(|(poly, parent)| Cell {
                letter: label(&poly),
                poly,
                parent,
            })
            .collect();
        for poly in sys.out_region().parts() {
            cells.push(Cell {
                letter: label(poly),
                poly: poly.clone(),
                parent: None,
            });
        }
        Self { cells, n_interior }
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, id: CellId) -> &Cell {
        &self.cells[id]
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn n_interior(&self) -> usize {
        self.n_interior
    }

    pub fn interior_ids(&self) -> Range<CellId> {
        0..self.n_interior
    }

    pub fn out_ids(&self) -> Range<CellId> {
        self.n_interior..self.cells.len()
    }

    pub fn is_out(&self, id: CellId) -> bool {
        id >= self.n_interior
    }

    pub fn polys(&self, ids: &[CellId]) -> Vec<Polytope> {
        ids.iter().map(|&i| self.cells[i].poly.clone()).collect()
    }

    /// Cell containing `x`. Points on shared boundaries go to the lowest id;
    /// points within a small distance outside every cell go to the nearest.
    pub fn locate(&self, x: &[f64]) -> Option<CellId> {
        if let Some(i) = self.cells.iter().position(|c| c.poly.contains(x)) {
            return Some(i);
        }
        let (best, margin) = self
            .cells
            .iter()
            .enumerate()
            .map(|(i, c)| (i, c.poly.margin(x)))
            .max_by(|a, b| a.1.total_cmp(&b.1))?;
        (margin > -1e3 * EPS_GEO).then_some(best)
    }
}

#[cfg(test)]
mod tests {
    use nalgebra::DMatrix;

    use super::*;
    use crate::sysdyn::Predicate;

    #[test]
    fn grid_of_nine_cells() {
        let sys = LinearStochasticSystem::new(
            DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0]),
            DMatrix::from_row_slice(2, 1, &[0.5, 1.0]),
            Polytope::boxed(&[-5.0, -3.0], &[5.0, 3.0]),
            Polytope::boxed(&[-1.0], &[1.0]),
            Polytope::boxed(&[-0.1, -0.1], &[0.1, 0.1]),
        )
        .unwrap();
        let preds = PredicateSet::new(vec![
            Predicate {
                c: vec![1.0, 0.0],
                d: -1.0,
            },
            Predicate {
                c: vec![1.0, 0.0],
                d: 1.0,
            },
            Predicate {
                c: vec![0.0, 1.0],
                d: -1.0,
            },
            Predicate {
                c: vec![0.0, 1.0],
                d: 1.0,
            },
        ]);
        let part = Partition::initial(&sys, &preds);
        assert_eq!(part.n_interior(), 9);
        let total: f64 = part.interior_ids().map(|i| part.cell(i).poly.volume()).sum();
        assert!((total - 60.0).abs() < 1e-9);
        let center = part.locate(&[0.0, 0.0]).unwrap();
        assert_eq!(part.cell(center).letter, 0b1010);
        assert!(part.is_out(part.locate(&[7.0, 2.0]).unwrap()));
        assert!(part.locate(&[100.0, 0.0]).is_none());
    }
}
