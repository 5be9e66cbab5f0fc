use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::classify::{Classification, Verdict};
use super::nts::Nts;
use super::product::{ProductGame, ProductState};
use crate::automata::{AutState, AutomatonTable, Letter, OmegaAutomaton};
use crate::error::{Error, Result};
use crate::games::Player;
use crate::geometry::{Polytope, PolytopeLiteral};
use crate::sysdyn::{CellId, Partition};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolicyEntry {
    pub cell: CellId,
    pub q: AutState,
    /// Destination set of the chosen control class.
    pub dest: Vec<CellId>,
    pub u: Vec<f64>,
}

/// Finite-memory controller: the automaton state is the memory, and each
/// `(cell, q)` in the domain maps to a fixed input.
#[derive(Clone, Debug)]
pub struct Controller {
    automaton: OmegaAutomaton,
    cells: Vec<Polytope>,
    letters: Vec<Letter>,
    n_interior: usize,
    policy: BTreeMap<(CellId, AutState), PolicyEntry>,
}

/// Serialized controller; self-contained so it can be simulated without the
/// problem file's partition.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ControllerFile {
    pub n_props: usize,
    pub automaton: AutomatonTable,
    pub cells: Vec<CellRecord>,
    pub n_interior: usize,
    pub policy: Vec<PolicyEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CellRecord {
    pub id: CellId,
    pub letter: Letter,
    pub poly: PolytopeLiteral,
}

impl Controller {
    pub fn automaton(&self) -> &OmegaAutomaton {
        &self.automaton
    }

    pub fn policy(&self) -> impl Iterator<Item = &PolicyEntry> {
        self.policy.values()
    }

    /// `(cell, q)` pairs where the controller is defined.
    pub fn domain(&self) -> impl Iterator<Item = (CellId, AutState)> + '_ {
        self.policy.keys().copied()
    }

    pub fn input(&self, cell: CellId, q: AutState) -> Result<&[f64]> {
        self.policy
            .get(&(cell, q))
            .map(|e| e.u.as_slice())
            .ok_or(Error::OutsideDomain { cell, q })
    }

    pub fn letter(&self, cell: CellId) -> Letter {
        self.letters[cell]
    }

    pub fn is_out(&self, cell: CellId) -> bool {
        cell >= self.n_interior
    }

    /// Memory update after leaving `cell`.
    pub fn next_memory(&self, cell: CellId, q: AutState) -> AutState {
        self.automaton.step(q, self.letters[cell])
    }

    /// Cell containing `x`, with the same conventions as [`Partition::locate`].
    pub fn locate(&self, x: &[f64]) -> Option<CellId> {
        if let Some(i) = self.cells.iter().position(|c| c.contains(x)) {
            return Some(i);
        }
        let (best, margin) = self
            .cells
            .iter()
            .enumerate()
            .map(|(i, c)| (i, c.margin(x)))
            .max_by(|a, b| a.1.total_cmp(&b.1))?;
        (margin > -1e3 * crate::geometry::EPS_GEO).then_some(best)
    }

    pub fn cell_poly(&self, cell: CellId) -> &Polytope {
        &self.cells[cell]
    }

    pub fn to_file(&self) -> ControllerFile {
        ControllerFile {
            n_props: self.automaton.n_props(),
            automaton: self.automaton.to_table(),
            cells: self
                .cells
                .iter()
                .enumerate()
                .map(|(id, p)| CellRecord {
                    id,
                    letter: self.letters[id],
                    poly: PolytopeLiteral::from(p),
                })
                .collect(),
            n_interior: self.n_interior,
            policy: self.policy.values().cloned().collect(),
        }
    }

    pub fn from_file(file: &ControllerFile) -> Result<Self> {
        let automaton = OmegaAutomaton::from_table(file.n_props, &file.automaton)?;
        let cells = file
            .cells
            .iter()
            .map(|c| c.poly.to_polytope())
            .collect::<Result<Vec<_>>>()?;
        let letters = file.cells.iter().map(|c| c.letter).collect();
        let policy = file.policy.iter().map(|e| ((e.cell, e.q), e.clone())).collect();
        Ok(Self {
            automaton,
            cells,
            letters,
            n_interior: file.n_interior,
            policy,
        })
    }
}

/// Turns the product strategy into a controller defined on every `(cell, q)`
/// reachable under it from a yes-cell with the initial memory. The input of
/// each entry is the Chebyshev center of the largest part of the chosen
/// control class.
pub fn lift_strategy(
    prod: &ProductGame,
    class: &Classification,
    nts: &Nts,
    part: &Partition,
    aut: &OmegaAutomaton,
) -> Result<Controller> {
    let mut policy = BTreeMap::new();
    let mut seen = vec![false; prod.game.n_states()];
    let mut queue = VecDeque::new();
    for cell in part.interior_ids() {
        if class.cells[cell] == Verdict::Yes {
            let s = prod
                .cell_state(cell, prod.initial_q)
                .expect("initial states are in the product");
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(s) = queue.pop_front() {
        let ProductState::Cell { cell, q } = prod.states[s] else {
            continue;
        };
        if part.is_out(cell) {
            continue;
        }
        debug_assert_eq!(prod.game.owner(s), Player::One);
        let action = class.strategy.get(s).ok_or(Error::OutsideDomain { cell, q })?;
        let act = &nts.actions[cell][action];
        let region = act.region.largest_part().expect("action regions are nonempty");
        let (u, _) = region.chebyshev_center().expect("nonempty part has a center");
        policy.insert(
            (cell, q),
            PolicyEntry {
                cell,
                q,
                dest: act.dest.clone(),
                u,
            },
        );
        let choice: Vec<_> = prod.game.successors(s, action).collect();
        for c in choice {
            for a in 0..prod.game.actions(c).len() {
                for t in prod.game.successors(c, a) {
                    if !seen[t] {
                        seen[t] = true;
                        queue.push_back(t);
                    }
                }
            }
        }
    }
    Ok(Controller {
        automaton: aut.clone(),
        cells: part.cells().iter().map(|c| c.poly.clone()).collect(),
        letters: part.cells().iter().map(|c| c.letter).collect(),
        n_interior: part.n_interior(),
        policy,
    })
}
