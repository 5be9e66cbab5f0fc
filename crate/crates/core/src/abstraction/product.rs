use std::collections::HashMap;

use super::game::AbstractGame;
use crate::automata::{AutState, OmegaAutomaton};
use crate::games::{Game, Player, StateId, StateSet};
use crate::sysdyn::{CellId, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProductState {
    /// Player 1 in `cell`, automaton in `q` (the letter of `cell` not yet read).
    Cell { cell: CellId, q: AutState },
    /// Player 2 after Player 1 chose control class `action` of `cell`; `q`
    /// has already read the letter of `cell`.
    Choice { cell: CellId, action: usize, q: AutState },
}

/// Synchronous product of the abstract game with the automaton, restricted
/// to states reachable from some `(cell, q0)`.
#[derive(Clone, Debug)]
pub struct ProductGame {
    pub game: Game,
    pub states: Vec<ProductState>,
    pub e: StateSet,
    pub f: StateSet,
    index: HashMap<ProductState, StateId>,
    pub n_aut_states: usize,
    pub initial_q: AutState,
}

impl ProductGame {
    pub fn state_id(&self, s: &ProductState) -> Option<StateId> {
        self.index.get(s).copied()
    }

    pub fn cell_state(&self, cell: CellId, q: AutState) -> Option<StateId> {
        self.state_id(&ProductState::Cell { cell, q })
    }

    pub fn p1_count(&self) -> usize {
        self.states
            .iter()
            .filter(|s| matches!(s, ProductState::Cell { .. }))
            .count()
    }
}

/// Out cells are absorbing: each gets a self-loop that keeps `q`, so a play
/// ending there is accepted iff `q` is outside `E` or inside `F`.
pub fn build_product(ag: &AbstractGame, aut: &OmegaAutomaton, part: &Partition) -> ProductGame {
    let mut game = Game::new();
    let mut states: Vec<ProductState> = Vec::new();
    let mut index: HashMap<ProductState, StateId> = HashMap::new();
    let mut intern = |s: ProductState, game: &mut Game, states: &mut Vec<ProductState>| -> (StateId, bool) {
        if let Some(&id) = index.get(&s) {
            return (id, false);
        }
        let owner = match s {
            ProductState::Cell { .. } => Player::One,
            ProductState::Choice { .. } => Player::Two,
        };
        let id = game.add_state(owner);
        states.push(s);
        index.insert(s, id);
        (id, true)
    };
    let q0 = aut.initial();
    let mut queue: Vec<StateId> = Vec::new();
    for cell in 0..part.len() {
        let (id, _) = intern(ProductState::Cell { cell, q: q0 }, &mut game, &mut states);
        queue.push(id);
    }
    // choice-state lookup: abstract P2 index by (cell, action)
    let mut first_choice = vec![0usize; part.len() + 1];
    for &(cell, _) in &ag.choices {
        first_choice[cell + 1] += 1;
    }
    for i in 0..part.len() {
        first_choice[i + 1] += first_choice[i];
    }
    let mut head = 0;
    while head < queue.len() {
        let s = queue[head];
        head += 1;
        match states[s] {
            ProductState::Cell { cell, q } => {
                if part.is_out(cell) {
                    game.add_uniform_action(s, &[s]);
                    continue;
                }
                let q_next = aut.step(q, part.cell(cell).letter);
                let n_actions = first_choice[cell + 1] - first_choice[cell];
                for action in 0..n_actions {
                    let (t, fresh) = intern(
                        ProductState::Choice {
                            cell,
                            action,
                            q: q_next,
                        },
                        &mut game,
                        &mut states,
                    );
                    if fresh {
                        queue.push(t);
                    }
                    game.add_uniform_action(s, &[t]);
                }
            }
            ProductState::Choice { cell, action, q } => {
                let k = first_choice[cell] + action;
                for support in &ag.supports[k] {
                    let mut succ = Vec::with_capacity(support.len());
                    for &j in support {
                        let (t, fresh) = intern(ProductState::Cell { cell: j, q }, &mut game, &mut states);
                        if fresh {
                            queue.push(t);
                        }
                        succ.push(t);
                    }
                    game.add_uniform_action(s, &succ);
                }
            }
        }
    }
    let q_of = |s: &ProductState| match *s {
        ProductState::Cell { q, .. } | ProductState::Choice { q, .. } => q,
    };
    let e = states.iter().map(|s| aut.in_e(q_of(s))).collect();
    let f = states.iter().map(|s| aut.in_f(q_of(s))).collect();
    ProductGame {
        game,
        states,
        e,
        f,
        index,
        n_aut_states: aut.n_states(),
        initial_q: q0,
    }
}
