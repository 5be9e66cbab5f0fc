use rayon::prelude::*;

use super::nts::Nts;
use crate::games::{Game, Player, StateId};
use crate::sysdyn::{supports, CellId, LinearStochasticSystem, Partition};

/// Game over partition cells. Player-1 state `i` is cell `i`; each of its
/// actions moves to a Player-2 state `(i, a)` whose actions are the supports
/// of the control class `a`, each spreading uniformly over its cells.
#[derive(Clone, Debug)]
pub struct AbstractGame {
    pub game: Game,
    /// `(cell, action)` of each Player-2 state, offset by the cell count.
    pub choices: Vec<(CellId, usize)>,
    /// Supports per Player-2 state, in action order.
    pub supports: Vec<Vec<Vec<CellId>>>,
    n_cells: usize,
}

impl AbstractGame {
    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    pub fn choice_state(&self, k: usize) -> StateId {
        self.n_cells + k
    }

    /// Number of Player-1 states.
    pub fn p1_states(&self) -> usize {
        self.n_cells
    }

    /// Index into `choices`/`supports` of action `a` of `cell`.
    pub fn choice_index(&self, cell: CellId, a: usize) -> usize {
        self.choices.partition_point(|&(c, _)| c < cell) + a
    }

    /// Total number of Player-1 actions.
    pub fn p1_actions(&self) -> usize {
        self.choices.len()
    }
}

pub fn build_game(nts: &Nts, sys: &LinearStochasticSystem, part: &Partition) -> AbstractGame {
    let n = part.len();
    let choices: Vec<(CellId, usize)> = (0..n)
        .flat_map(|i| (0..nts.actions[i].len()).map(move |a| (i, a)))
        .collect();
    let supp: Vec<Vec<Vec<CellId>>> = choices
        .par_iter()
        .map(|&(i, a)| supports(sys, part, i, &nts.actions[i][a]))
        .collect();
    let mut game = Game::new();
    for _ in 0..n {
        game.add_state(Player::One);
    }
    for _ in &choices {
        game.add_state(Player::Two);
    }
    for (k, &(i, _)) in choices.iter().enumerate() {
        game.add_uniform_action(i, &[n + k]);
        for s in &supp[k] {
            game.add_uniform_action(n + k, s);
        }
    }
    AbstractGame {
        game,
        choices,
        supports: supp,
        n_cells: n,
    }
}
