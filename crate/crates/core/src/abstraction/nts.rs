use rayon::prelude::*;

use crate::sysdyn::{action_polytopes, ActionPolytope, CellId, LinearStochasticSystem, Partition};

/// Nondeterministic transition system over partition cells. Action `a` of
/// cell `i` leads to every cell in `actions[i][a].dest`.
#[derive(Clone, Debug)]
pub struct Nts {
    pub actions: Vec<Vec<ActionPolytope>>,
}

impl Nts {
    pub fn n_states(&self) -> usize {
        self.actions.len()
    }

    pub fn n_actions(&self) -> usize {
        self.actions.iter().map(Vec::len).sum()
    }

    pub fn successors(&self, i: CellId, a: usize) -> &[CellId] {
        &self.actions[i][a].dest
    }
}

/// Out cells get no actions.
pub fn build_nts(sys: &LinearStochasticSystem, part: &Partition) -> Nts {
    let mut actions: Vec<Vec<ActionPolytope>> = part
        .interior_ids()
        .into_par_iter()
        .map(|i| action_polytopes(sys, part, i))
        .collect();
    actions.resize(part.len(), Vec::new());
    Nts { actions }
}
