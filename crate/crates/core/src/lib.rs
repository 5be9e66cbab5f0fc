//! Controller synthesis for discrete-time linear stochastic systems against
//! one-pair Streett (GR(1)-class) objectives, by polytopic abstraction into
//! turn-based stochastic games and iterative partition refinement.

pub mod abstraction;
pub mod automata;
pub mod baselines;
pub mod driver;
pub mod error;
pub mod games;
pub mod geometry;
pub mod problem;
pub mod refinement;
pub mod svg;
pub mod sysdyn;

pub use error::{Error, Result};
