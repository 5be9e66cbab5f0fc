//! From a partition to a game, its product with the specification automaton,
//! the yes/no/undecided classification, and executable controllers.

mod classify;
mod controller;
mod game;
mod nts;
mod product;
mod simulate;

pub use classify::{classify, Classification, Verdict};
pub use controller::{lift_strategy, CellRecord, Controller, ControllerFile, PolicyEntry};
pub use game::{build_game, AbstractGame};
pub use nts::{build_nts, Nts};
pub use product::{build_product, ProductGame, ProductState};
pub use simulate::{sample_uniform, simulate, Trace, TraceStep};

use crate::automata::OmegaAutomaton;
use crate::sysdyn::{LinearStochasticSystem, Partition};

/// Every artifact of one abstraction pass over a partition.
#[derive(Clone, Debug)]
pub struct Abstraction {
    pub part: Partition,
    pub nts: Nts,
    pub game: AbstractGame,
    pub product: ProductGame,
    pub class: Classification,
}

impl Abstraction {
    pub fn build(sys: &LinearStochasticSystem, aut: &OmegaAutomaton, part: Partition) -> Self {
        let t = std::time::Instant::now();
        let nts = build_nts(sys, &part);
        log::debug!("nts: {} actions in {:?}", nts.n_actions(), t.elapsed());
        let game = build_game(&nts, sys, &part);
        log::debug!(
            "game: {} supports in {:?}",
            game.supports.iter().map(Vec::len).sum::<usize>(),
            t.elapsed()
        );
        let product = build_product(&game, aut, &part);
        log::debug!("product: {} states in {:?}", product.game.n_states(), t.elapsed());
        let class = classify(&product, &part);
        log::debug!("classified in {:?}", t.elapsed());
        Self {
            part,
            nts,
            game,
            product,
            class,
        }
    }
}
