//! Problem files: system, predicates, specification and run parameters.

use std::path::Path;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::automata::{AutomatonTable, Gr1Spec, Guard, OmegaAutomaton};
use crate::error::{Error, Result};
use crate::geometry::PolytopeLiteral;
use crate::sysdyn::{LinearStochasticSystem, Predicate, PredicateSet};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SystemLiteral {
    #[serde(rename = "A")]
    pub a: Vec<Vec<f64>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<f64>>,
    #[serde(rename = "X")]
    pub x: PolytopeLiteral,
    #[serde(rename = "U")]
    pub u: PolytopeLiteral,
    #[serde(rename = "W")]
    pub w: PolytopeLiteral,
}

/// Specification expression: a fragment builder, an implication of
/// conjunctions, or an explicit automaton table.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpecExpr {
    Reach(Guard),
    Safe(Guard),
    Recur(Guard),
    Gr1 {
        #[serde(default)]
        assumptions: Vec<SpecExpr>,
        #[serde(default)]
        guarantees: Vec<SpecExpr>,
    },
    Automaton(AutomatonTable),
}

impl SpecExpr {
    pub fn to_automaton(&self, n_props: usize) -> Result<OmegaAutomaton> {
        match self {
            SpecExpr::Reach(g) => OmegaAutomaton::reach(n_props, g),
            SpecExpr::Safe(g) => OmegaAutomaton::safe(n_props, g),
            SpecExpr::Recur(g) => OmegaAutomaton::recur(n_props, g),
            SpecExpr::Automaton(t) => OmegaAutomaton::from_table(n_props, t),
            SpecExpr::Gr1 {
                assumptions,
                guarantees,
            } => {
                let build = |list: &[SpecExpr]| -> Result<Vec<OmegaAutomaton>> {
                    list.iter().map(|s| s.to_automaton(n_props)).collect()
                };
                OmegaAutomaton::gr1_assemble(&Gr1Spec {
                    n_props,
                    assumptions: build(assumptions)?,
                    guarantees: build(guarantees)?,
                })
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProblemFile {
    pub system: SystemLiteral,
    pub predicates: Vec<Predicate>,
    pub spec: SpecExpr,
    /// Target letter guard for the reachability baselines; defaults to the
    /// guard of a `reach` spec.
    #[serde(default)]
    pub targets: Option<Guard>,
    #[serde(default = "default_max_iters")]
    pub max_iters: usize,
    #[serde(default)]
    pub seed: u64,
}

fn default_max_iters() -> usize {
    10
}

#[derive(Clone, Debug)]
pub struct Problem {
    pub system: LinearStochasticSystem,
    pub predicates: PredicateSet,
    pub automaton: OmegaAutomaton,
    pub file: ProblemFile,
}

fn matrix(rows: &[Vec<f64>], name: &str) -> Result<DMatrix<f64>> {
    let n = rows.len();
    let m = rows.first().map_or(0, Vec::len);
    if n == 0 || m == 0 || rows.iter().any(|r| r.len() != m) {
        return Err(Error::Problem(format!(
            "matrix {name} must be a nonempty rectangular list of rows"
        )));
    }
    Ok(DMatrix::from_fn(n, m, |r, c| rows[r][c]))
}

impl Problem {
    pub fn from_file(file: ProblemFile) -> Result<Self> {
        let s = &file.system;
        let system = LinearStochasticSystem::new(
            matrix(&s.a, "A")?,
            matrix(&s.b, "B")?,
            s.x.to_polytope()?,
            s.u.to_polytope()?,
            s.w.to_polytope()?,
        )?;
        if let Some(p) = file.predicates.iter().find(|p| p.c.len() != system.state_dim()) {
            return Err(Error::DimensionMismatch {
                expected: system.state_dim(),
                found: p.c.len(),
            });
        }
        let predicates = PredicateSet::new(file.predicates.clone());
        let automaton = file.spec.to_automaton(predicates.len())?;
        Ok(Self {
            system,
            predicates,
            automaton,
            file,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Letter guard of the reachability target, if any.
    pub fn target_guard(&self) -> Option<&Guard> {
        self.file.targets.as_ref().or(match &self.file.spec {
            SpecExpr::Reach(g) => Some(g),
            _ => None,
        })
    }
}
