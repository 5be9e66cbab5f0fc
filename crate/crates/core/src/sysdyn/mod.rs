//! The linear stochastic system, its polytopic operators, state-space
//! partitions and control-input equivalence classes.

mod actions;
mod operators;
mod partition;
mod system;

pub use actions::{action_polytopes, supports, ActionPolytope};
pub use operators::{
    attr, attr_robust, attr_robust_from_complement, control_to, pre, pre_precise, pre_robust, pre_robust_avoiding,
    precise_decomposition,
};
pub use partition::{Cell, CellId, Partition};
pub use system::{LinearStochasticSystem, Predicate, PredicateSet};
