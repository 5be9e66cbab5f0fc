use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::controller::Controller;
use crate::automata::AutState;
use crate::error::Result;
use crate::geometry::Polytope;
use crate::sysdyn::{CellId, LinearStochasticSystem};

#[derive(Clone, Debug, PartialEq)]
pub struct TraceStep {
    pub t: usize,
    pub x: Vec<f64>,
    /// `None` on the final recorded step (exit or horizon).
    pub u: Option<Vec<f64>>,
    pub cell: Option<CellId>,
    pub q: AutState,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trace {
    pub steps: Vec<TraceStep>,
    /// The trace left `X`.
    pub exited: bool,
}

/// Uniform sample from a polytope by rejection from its bounding box.
pub fn sample_uniform(p: &Polytope, rng: &mut impl Rng) -> Vec<f64> {
    let (lo, hi) = p.bbox().expect("sampling from an empty polytope");
    loop {
        let x: Vec<f64> = lo.iter().zip(hi).map(|(&l, &h)| rng.gen_range(l..=h)).collect();
        if p.contains(&x) {
            return x;
        }
    }
}

/// Runs the closed loop from `x0` for up to `horizon` steps. Noise is uniform
/// on `W`, drawn from stream `stream` of the generator seeded with `seed`.
pub fn simulate(
    sys: &LinearStochasticSystem,
    ctrl: &Controller,
    x0: &[f64],
    horizon: usize,
    seed: u64,
    stream: u64,
) -> Result<Trace> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut x = x0.to_vec();
    let mut q = ctrl.automaton().initial();
    let mut steps = Vec::with_capacity(horizon + 1);
    for t in 0..=horizon {
        let cell = ctrl.locate(&x);
        let inside = cell.is_some_and(|c| !ctrl.is_out(c));
        if !inside || t == horizon {
            steps.push(TraceStep { t, x, u: None, cell, q });
            return Ok(Trace { steps, exited: !inside });
        }
        let c = cell.expect("checked above");
        let u = ctrl.input(c, q)?.to_vec();
        let w = sample_uniform(sys.noise(), &mut rng);
        let next = sys.step(&x, &u, &w);
        let q_next = ctrl.next_memory(c, q);
        steps.push(TraceStep {
            t,
            x,
            u: Some(u),
            cell,
            q,
        });
        x = next;
        q = q_next;
    }
    unreachable!("loop returns at the horizon")
}
