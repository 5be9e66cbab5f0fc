//! The abstract / solve / refine loop and the batch modes built on it.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use crate::abstraction::{lift_strategy, simulate, Abstraction, Controller, ControllerFile, Trace, Verdict};
use crate::baselines::{alg1_reach, alg3_nts_reach, target_cells, NtsSize, ReachResult};
use crate::error::{Error, Result};
use crate::geometry::{PolytopeLiteral, Region};
use crate::problem::Problem;
use crate::refinement::{apply_plan, refine};
use crate::svg;
use crate::sysdyn::{CellId, Partition};

#[derive(Clone, Debug, Serialize)]
pub struct IterationStats {
    pub iteration: usize,
    pub p1_states: usize,
    pub p2_states: usize,
    pub actions: usize,
    pub product_states: usize,
    pub vol_yes: f64,
    pub vol_no: f64,
    pub vol_undecided: f64,
    pub wall_ms: u128,
}

pub const STATS_HEADER: &str = "iteration,p1_states,p2_states,actions,vol_yes,vol_no,vol_undecided,wall_ms";

impl IterationStats {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{:.6},{:.6},{:.6},{}",
            self.iteration,
            self.p1_states,
            self.p2_states,
            self.actions,
            self.vol_yes,
            self.vol_no,
            self.vol_undecided,
            self.wall_ms
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SynthStatus {
    /// No undecided product state is left.
    Decided,
    /// Every interior cell is losing.
    Unsatisfiable,
    /// Iteration cap reached with undecided states left.
    Undecided,
}

impl SynthStatus {
    pub fn exit_code(self) -> i32 {
        match self {
            SynthStatus::Decided => 0,
            SynthStatus::Undecided => 2,
            SynthStatus::Unsatisfiable => 3,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Outputs {
    pub dir: Option<PathBuf>,
    pub svg: bool,
}

impl Outputs {
    fn write(&self, name: &str, contents: &str) -> Result<()> {
        if let Some(dir) = &self.dir {
            fs::create_dir_all(dir)?;
            fs::write(dir.join(name), contents)?;
        }
        Ok(())
    }
}

pub struct SynthRun {
    pub status: SynthStatus,
    pub stats: Vec<IterationStats>,
    /// Abstraction of the last iteration.
    pub last: Abstraction,
    pub controller: Controller,
    /// Yes-cell union at every iteration.
    pub yes_history: Vec<Region>,
}

#[derive(Serialize)]
struct CellVerdict {
    id: CellId,
    verdict: Verdict,
    out: bool,
    parent: Option<CellId>,
    letter: u32,
    poly: PolytopeLiteral,
}

#[derive(Serialize)]
struct ClassificationFile {
    iteration: usize,
    cells: Vec<CellVerdict>,
}

fn classification_json(iteration: usize, abs: &Abstraction) -> Result<String> {
    let cells = abs
        .part
        .cells()
        .iter()
        .enumerate()
        .map(|(id, c)| CellVerdict {
            id,
            verdict: abs.class.cells[id],
            out: abs.part.is_out(id),
            parent: c.parent,
            letter: c.letter,
            poly: PolytopeLiteral::from(&c.poly),
        })
        .collect();
    Ok(serde_json::to_string_pretty(&ClassificationFile { iteration, cells })?)
}

/// Union of the interior cells with verdict `v`.
pub fn verdict_region(abs: &Abstraction, v: Verdict) -> Region {
    let ids: Vec<CellId> = abs.part.interior_ids().filter(|&i| abs.class.cells[i] == v).collect();
    Region::from_disjoint(abs.part.cell(0).poly.dim(), abs.part.polys(&ids))
}

fn volume_of(abs: &Abstraction, v: Verdict) -> f64 {
    abs.part
        .interior_ids()
        .filter(|&i| abs.class.cells[i] == v)
        .map(|i| abs.part.cell(i).poly.volume())
        .sum::<f64>()
        + 0.0
}

/// Iterates abstraction, classification and refinement until nothing is
/// undecided, everything is losing, or `max_iters` refinements were done.
pub fn run_synth(problem: &Problem, max_iters: usize, out: &Outputs) -> Result<SynthRun> {
    let sys = &problem.system;
    let aut = &problem.automaton;
    let mut part = Partition::initial(sys, &problem.predicates);
    let mut stats = Vec::new();
    let mut yes_history = Vec::new();
    let mut stats_csv = format!("{STATS_HEADER}\n");
    let mut k = 0;
    loop {
        let start = Instant::now();
        let abs = Abstraction::build(sys, aut, part);
        let controller = lift_strategy(&abs.product, &abs.class, &abs.nts, &abs.part, aut)?;
        let row = IterationStats {
            iteration: k,
            p1_states: abs.game.p1_states(),
            p2_states: abs.game.choices.len(),
            actions: abs.game.p1_actions(),
            product_states: abs.product.game.n_states(),
            vol_yes: volume_of(&abs, Verdict::Yes),
            vol_no: volume_of(&abs, Verdict::No),
            vol_undecided: volume_of(&abs, Verdict::Undecided),
            wall_ms: 0,
        };
        yes_history.push(verdict_region(&abs, Verdict::Yes));
        out.write(&format!("classification_{k}.json"), &classification_json(k, &abs)?)?;
        out.write(
            &format!("controller_{k}.json"),
            &serde_json::to_string_pretty(&controller.to_file())?,
        )?;
        if out.svg {
            out.write(
                &format!("partition_{k}.svg"),
                &svg::partition_svg(&abs.part, &abs.class.cells),
            )?;
        }

        let undecided = abs.class.undecided_states(&abs.product, &abs.part);
        let all_no = abs.part.interior_ids().all(|i| abs.class.cells[i] == Verdict::No);
        let status = if undecided.is_empty() {
            Some(SynthStatus::Decided)
        } else if all_no {
            Some(SynthStatus::Unsatisfiable)
        } else if k == max_iters {
            Some(SynthStatus::Undecided)
        } else {
            None
        };
        let next = match status {
            Some(_) => None,
            None => {
                let plan =
                    refine(sys, aut, &abs).map_err(|e| Error::Problem(format!("refinement at iteration {k}: {e}")))?;
                log::debug!("plan: {} entries after {:?}", plan.entries.len(), start.elapsed());
                let next = apply_plan(sys, &problem.predicates, &abs.part, &plan);
                log::debug!("applied after {:?}: {} cells", start.elapsed(), next.len());
                Some(next)
            }
        };
        let mut row = row;
        row.wall_ms = start.elapsed().as_millis();
        log::info!(
            "iteration {k}: {} cells, {} actions, yes {:.4} no {:.4} undecided {:.4}",
            row.p1_states,
            row.actions,
            row.vol_yes,
            row.vol_no,
            row.vol_undecided
        );
        writeln!(stats_csv, "{}", row.csv_row()).unwrap();
        stats.push(row);
        match (status, next) {
            (Some(status), _) => {
                out.write("stats.csv", &stats_csv)?;
                return Ok(SynthRun {
                    status,
                    stats,
                    last: abs,
                    controller,
                    yes_history,
                });
            }
            (None, Some(p)) => part = p,
            (None, None) => unreachable!("refinement runs whenever the loop continues"),
        }
        k += 1;
    }
}

#[derive(Serialize)]
struct ReachFile<'a> {
    phase1_iterations: usize,
    phase2_iterations: usize,
    vol_init: f64,
    nts_sizes: &'a [NtsSize],
    x_init: Vec<PolytopeLiteral>,
    wall_ms: u128,
}

fn reach_targets(problem: &Problem) -> Result<(Partition, Vec<CellId>)> {
    let guard = problem
        .target_guard()
        .ok_or_else(|| Error::Problem("reachability modes need a reach spec or a `targets` guard".into()))?;
    let part = Partition::initial(&problem.system, &problem.predicates);
    let ids = target_cells(&part, guard);
    Ok((part, ids))
}

fn emit_reach(r: &ReachResult, problem: &Problem, out: &Outputs, name: &str) -> Result<()> {
    let file = ReachFile {
        phase1_iterations: r.phase1_iterations,
        phase2_iterations: r.phase2_iterations,
        vol_init: r.x_init.volume(),
        nts_sizes: &r.nts_sizes,
        x_init: r.x_init.parts().iter().map(PolytopeLiteral::from).collect(),
        wall_ms: r.wall_ms,
    };
    out.write(&format!("{name}.json"), &serde_json::to_string_pretty(&file)?)?;
    let mut csv = String::from("phase,iterations\n");
    writeln!(csv, "1,{}\n2,{}", r.phase1_iterations, r.phase2_iterations).unwrap();
    out.write("stats.csv", &csv)?;
    if out.svg {
        let x = Region::from_polytope(problem.system.state_space().clone());
        let drawing = svg::regions_svg(&[
            (problem.system.out_region(), svg::OUT),
            (&x, svg::NO),
            (&r.x_init, svg::YES),
        ]);
        out.write(&format!("{name}.svg"), &drawing)?;
    }
    Ok(())
}

pub fn run_reach(problem: &Problem, out: &Outputs) -> Result<ReachResult> {
    let (part, ids) = reach_targets(problem)?;
    let targets = Region::from_disjoint(problem.system.state_dim(), part.polys(&ids));
    let r = alg1_reach(&problem.system, &targets);
    emit_reach(&r, problem, out, "reach")?;
    Ok(r)
}

pub fn run_ntsreach(problem: &Problem, out: &Outputs) -> Result<ReachResult> {
    let (part, ids) = reach_targets(problem)?;
    let r = alg3_nts_reach(&problem.system, &problem.predicates, &part, &ids);
    emit_reach(&r, problem, out, "ntsreach")?;
    Ok(r)
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceVerdict {
    pub trace: usize,
    pub start_cell: CellId,
    pub steps: usize,
    pub exited: bool,
    /// Steps whose memory update lands in the automaton's `F`.
    pub f_visits: usize,
    pub satisfied: bool,
}

pub fn load_controller(path: impl AsRef<Path>) -> Result<Controller> {
    let text = fs::read_to_string(path)?;
    let file: ControllerFile = serde_json::from_str(&text)?;
    Controller::from_file(&file)
}

/// Simulates `n` traces, starting from uniform samples of the controller's
/// domain cells at the initial memory state taken round-robin.
pub fn run_simulate(
    problem: &Problem,
    ctrl: &Controller,
    n: usize,
    horizon: usize,
    seed: u64,
    out: &Outputs,
) -> Result<(Vec<Trace>, Vec<TraceVerdict>)> {
    use rand::SeedableRng;
    let q0 = ctrl.automaton().initial();
    let starts: Vec<CellId> = ctrl.domain().filter(|&(_, q)| q == q0).map(|(c, _)| c).collect();
    if starts.is_empty() {
        return Err(Error::Problem(
            "controller has no initial cells to simulate from".into(),
        ));
    }
    let mut traces = Vec::with_capacity(n);
    let mut verdicts = Vec::with_capacity(n);
    let mut csv = String::from("trace,t,x,u,cell,q\n");
    for k in 0..n {
        let cell = starts[k % starts.len()];
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0000_0000);
        rng.set_stream(k as u64);
        let x0 = crate::abstraction::sample_uniform(ctrl.cell_poly(cell), &mut rng);
        let trace = simulate(&problem.system, ctrl, &x0, horizon, seed, k as u64)?;
        let aut = ctrl.automaton();
        let f_visits = trace
            .steps
            .iter()
            .filter(|s| s.u.is_some())
            .filter(|s| aut.in_f(ctrl.next_memory(s.cell.expect("stepped from a cell"), s.q)))
            .count();
        for s in &trace.steps {
            let join = |v: &[f64]| v.iter().map(|a| format!("{a:.6}")).collect::<Vec<_>>().join(" ");
            writeln!(
                csv,
                "{k},{},{},{},{},{}",
                s.t,
                join(&s.x),
                s.u.as_deref().map(join).unwrap_or_default(),
                s.cell.map(|c| c.to_string()).unwrap_or_default(),
                s.q
            )
            .unwrap();
        }
        verdicts.push(TraceVerdict {
            trace: k,
            start_cell: cell,
            steps: trace.steps.len(),
            exited: trace.exited,
            f_visits,
            satisfied: if trace.exited {
                // out cells are terminal: the frozen memory state decides
                let q = trace.steps.last().expect("a trace has a first step").q;
                aut.in_f(q) || !aut.in_e(q)
            } else {
                f_visits > 0
            },
        });
        traces.push(trace);
    }
    out.write("traces.csv", &csv)?;
    let mut vcsv = String::from("trace,start_cell,steps,exited,f_visits,satisfied\n");
    for v in &verdicts {
        writeln!(
            vcsv,
            "{},{},{},{},{},{}",
            v.trace, v.start_cell, v.steps, v.exited, v.f_visits, v.satisfied
        )
        .unwrap();
    }
    out.write("verdicts.csv", &vcsv)?;
    Ok((traces, verdicts))
}
