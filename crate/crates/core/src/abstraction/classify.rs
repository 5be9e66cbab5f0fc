use serde::{Deserialize, Serialize};

use super::product::{ProductGame, ProductState};
use crate::automata::AutState;
use crate::games::{almost_streett, almost_streett_coop, StateId, Strategy};
use crate::sysdyn::{CellId, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Undecided,
}

#[derive(Clone, Debug)]
pub struct Classification {
    /// Verdict of `(cell, q0)` for every cell id, out cells included.
    pub cells: Vec<Verdict>,
    /// Verdict of every product state.
    pub product: Vec<Verdict>,
    /// Almost-sure winning Player-1 strategy on the product.
    pub strategy: Strategy,
}

impl Classification {
    pub fn ids(&self, v: Verdict) -> Vec<CellId> {
        (0..self.cells.len()).filter(|&i| self.cells[i] == v).collect()
    }

    /// Verdict of product state `(cell, q)`, if it is part of the product.
    pub fn at(&self, prod: &ProductGame, cell: CellId, q: AutState) -> Option<Verdict> {
        prod.cell_state(cell, q).map(|s| self.product[s])
    }

    /// Cells `j` whose product state `(j, q)` exists and has verdict `v`.
    pub fn index_set(&self, prod: &ProductGame, q: AutState, v: Verdict) -> Vec<CellId> {
        (0..self.cells.len())
            .filter(|&j| self.at(prod, j, q) == Some(v))
            .collect()
    }

    /// Undecided `(cell, q)` product states with interior cells, in `(cell, q)` order.
    pub fn undecided_states(&self, prod: &ProductGame, part: &Partition) -> Vec<(CellId, AutState, StateId)> {
        let mut out: Vec<(CellId, AutState, StateId)> = prod
            .states
            .iter()
            .enumerate()
            .filter_map(|(s, st)| match *st {
                ProductState::Cell { cell, q } if !part.is_out(cell) && self.product[s] == Verdict::Undecided => {
                    Some((cell, q, s))
                }
                _ => None,
            })
            .collect();
        out.sort();
        out
    }
}

pub fn classify(prod: &ProductGame, part: &Partition) -> Classification {
    let (win, strategy) = almost_streett(&prod.game, &prod.e, &prod.f);
    let coop = almost_streett_coop(&prod.game, &prod.e, &prod.f);
    let product: Vec<Verdict> = (0..prod.game.n_states())
        .map(|s| {
            if win[s] {
                Verdict::Yes
            } else if !coop[s] {
                Verdict::No
            } else {
                Verdict::Undecided
            }
        })
        .collect();
    let cells = (0..part.len())
        .map(|i| {
            let s = prod
                .cell_state(i, prod.initial_q)
                .expect("every (cell, q0) is in the product");
            product[s]
        })
        .collect();
    Classification {
        cells,
        product,
        strategy,
    }
}
