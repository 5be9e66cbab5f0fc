//! Deterministic automata over predicate-truth letters with a one-pair
//! Streett acceptance condition `(E, F)`: a run is accepting iff visiting `E`
//! infinitely often implies visiting `F` infinitely often.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Predicate-truth bit vector: bit `k` set iff predicate `k` holds.
pub type Letter = u32;
pub type AutState = usize;

/// Largest supported number of predicates (the transition table is dense).
pub const MAX_PREDICATES: usize = 16;

/// Conjunction of predicate literals.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Guard {
    #[serde(default)]
    pub pos: Vec<usize>,
    #[serde(default)]
    pub neg: Vec<usize>,
}

impl Guard {
    pub fn matches(&self, letter: Letter) -> bool {
        self.pos.iter().all(|&k| letter >> k & 1 == 1) && self.neg.iter().all(|&k| letter >> k & 1 == 0)
    }

    fn check(&self, n_props: usize) -> Result<()> {
        match self.pos.iter().chain(&self.neg).find(|&&k| k >= n_props) {
            Some(k) => Err(Error::Automaton(format!(
                "guard uses predicate {k} but only {n_props} exist"
            ))),
            None => Ok(()),
        }
    }
}

/// Ultimately periodic word `prefix cycle cycle ...`.
#[derive(Clone, Debug)]
pub struct Lasso {
    pub prefix: Vec<Letter>,
    pub cycle: Vec<Letter>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaAutomaton {
    n_props: usize,
    initial: AutState,
    delta: Vec<Vec<AutState>>,
    e: Vec<bool>,
    f: Vec<bool>,
}

impl OmegaAutomaton {
    /// Builds an automaton from a total transition function.
    pub fn from_fn(
        n_props: usize,
        n_states: usize,
        initial: AutState,
        delta: impl Fn(AutState, Letter) -> AutState,
        e: &[AutState],
        f: &[AutState],
    ) -> Result<Self> {
        if n_props > MAX_PREDICATES {
            return Err(Error::Automaton(format!(
                "at most {MAX_PREDICATES} predicates are supported"
            )));
        }
        if n_states == 0 || initial >= n_states {
            return Err(Error::Automaton("initial state out of range".into()));
        }
        let letters = 1usize << n_props;
        let mut table = Vec::with_capacity(n_states);
        for q in 0..n_states {
            let row: Vec<AutState> = (0..letters).map(|l| delta(q, l as Letter)).collect();
            if let Some(bad) = row.iter().find(|&&t| t >= n_states) {
                return Err(Error::Automaton(format!(
                    "transition from {q} targets missing state {bad}"
                )));
            }
            table.push(row);
        }
        let mark = |set: &[AutState]| -> Result<Vec<bool>> {
            let mut v = vec![false; n_states];
            for &q in set {
                *v.get_mut(q)
                    .ok_or_else(|| Error::Automaton(format!("acceptance state {q} out of range")))? = true;
            }
            Ok(v)
        };
        Ok(Self {
            n_props,
            initial,
            delta: table,
            e: mark(e)?,
            f: mark(f)?,
        })
    }

    pub fn n_states(&self) -> usize {
        self.delta.len()
    }

    pub fn n_props(&self) -> usize {
        self.n_props
    }

    pub fn initial(&self) -> AutState {
        self.initial
    }

    pub fn in_e(&self, q: AutState) -> bool {
        self.e[q]
    }

    pub fn in_f(&self, q: AutState) -> bool {
        self.f[q]
    }

    pub fn step(&self, q: AutState, letter: Letter) -> AutState {
        self.delta[q][letter as usize]
    }

    /// States `q_0 ... q_n` of the run on a finite word of length `n`.
    pub fn run(&self, word: &[Letter]) -> Vec<AutState> {
        let mut states = Vec::with_capacity(word.len() + 1);
        let mut q = self.initial;
        states.push(q);
        for &l in word {
            q = self.step(q, l);
            states.push(q);
        }
        states
    }

    /// Whether a finite run that stays in `inf` forever satisfies the pair.
    pub fn accepting_set(&self, inf: impl IntoIterator<Item = AutState> + Clone) -> bool {
        !inf.clone().into_iter().any(|q| self.e[q]) || inf.into_iter().any(|q| self.f[q])
    }

    pub fn accepts(&self, lasso: &Lasso) -> bool {
        assert!(!lasso.cycle.is_empty(), "lasso cycle must be nonempty");
        let mut q = self.initial;
        for &l in &lasso.prefix {
            q = self.step(q, l);
        }
        let mut starts: Vec<AutState> = Vec::new();
        let mut visits: Vec<Vec<AutState>> = Vec::new();
        let first = loop {
            if let Some(pos) = starts.iter().position(|&s| s == q) {
                break pos;
            }
            starts.push(q);
            let mut seen = Vec::with_capacity(lasso.cycle.len());
            for &l in &lasso.cycle {
                seen.push(q);
                q = self.step(q, l);
            }
            visits.push(seen);
        };
        let inf: Vec<AutState> = visits[first..].concat();
        self.accepting_set(inf)
    }

    /// `F g`: two states, `E = {q0}`, `F = {q1}`.
    pub fn reach(n_props: usize, g: &Guard) -> Result<Self> {
        g.check(n_props)?;
        Self::from_fn(
            n_props,
            2,
            0,
            |q, l| if q == 1 || g.matches(l) { 1 } else { 0 },
            &[0],
            &[1],
        )
    }

    /// `G g`: a good state and a bad sink, `E = Q`, `F = {good}`.
    pub fn safe(n_props: usize, g: &Guard) -> Result<Self> {
        g.check(n_props)?;
        Self::from_fn(
            n_props,
            2,
            0,
            |q, l| if q == 0 && g.matches(l) { 0 } else { 1 },
            &[0, 1],
            &[0],
        )
    }

    /// `GF g`: state 1 iff the last letter satisfied `g`; `E = Q`, `F = {1}`.
    pub fn recur(n_props: usize, g: &Guard) -> Result<Self> {
        g.check(n_props)?;
        Self::from_fn(n_props, 2, 0, |_, l| usize::from(g.matches(l)), &[0, 1], &[1])
    }

    /// Single accepting state.
    pub fn accept_all(n_props: usize) -> Self {
        Self::from_fn(n_props, 1, 0, |_, _| 0, &[0], &[0]).expect("valid trivial automaton")
    }

    /// Intersection of Büchi automata (each read through its `F` set) by the
    /// round-robin counter construction, restricted to reachable states.
    pub fn buchi_product(n_props: usize, parts: &[OmegaAutomaton]) -> Result<Self> {
        if parts.iter().any(|a| a.n_props != n_props) {
            return Err(Error::Automaton("alphabet mismatch in product".into()));
        }
        if parts.is_empty() {
            return Ok(Self::accept_all(n_props));
        }
        let k = parts.len();
        let letters = 1usize << n_props;
        type Key = (Vec<AutState>, usize);
        let start: Key = (parts.iter().map(|a| a.initial).collect(), 0);
        let mut index: HashMap<Key, usize> = HashMap::new();
        let mut keys: Vec<Key> = Vec::new();
        let mut table: Vec<Vec<AutState>> = Vec::new();
        let mut queue = VecDeque::new();
        index.insert(start.clone(), 0);
        keys.push(start);
        queue.push_back(0);
        while let Some(s) = queue.pop_front() {
            let (qs, c) = keys[s].clone();
            let next_c = if parts[c].f[qs[c]] { (c + 1) % k } else { c };
            let mut row = Vec::with_capacity(letters);
            for l in 0..letters {
                let next: Vec<AutState> = parts.iter().zip(&qs).map(|(a, &q)| a.step(q, l as Letter)).collect();
                let key = (next, next_c);
                let id = match index.get(&key) {
                    Some(&id) => id,
                    None => {
                        let id = keys.len();
                        index.insert(key.clone(), id);
                        keys.push(key);
                        queue.push_back(id);
                        id
                    }
                };
                row.push(id);
            }
            table.push(row);
        }
        let f: Vec<AutState> = (0..keys.len())
            .filter(|&s| keys[s].1 == 0 && parts[0].f[keys[s].0[0]])
            .collect();
        let all: Vec<AutState> = (0..keys.len()).collect();
        Self::from_fn(n_props, keys.len(), 0, |q, l| table[q][l as usize], &all, &f)
    }

    /// Pair automaton for `(all assumptions) => (all guarantees)`.
    pub fn gr1_assemble(spec: &Gr1Spec) -> Result<Self> {
        let a = Self::buchi_product(spec.n_props, &spec.assumptions)?;
        let g = Self::buchi_product(spec.n_props, &spec.guarantees)?;
        let ng = g.n_states();
        let code = |qa: AutState, qg: AutState| qa * ng + qg;
        let n = a.n_states() * ng;
        let e: Vec<AutState> = (0..n).filter(|&s| a.f[s / ng]).collect();
        let f: Vec<AutState> = (0..n).filter(|&s| g.f[s % ng]).collect();
        let full = Self::from_fn(
            spec.n_props,
            n,
            code(a.initial, g.initial),
            |s, l| code(a.step(s / ng, l), g.step(s % ng, l)),
            &e,
            &f,
        )?;
        Ok(full.restrict_reachable())
    }

    /// Drops states unreachable from the initial state, renumbering in BFS order.
    pub fn restrict_reachable(&self) -> Self {
        let mut id = vec![usize::MAX; self.n_states()];
        let mut order = vec![self.initial];
        id[self.initial] = 0;
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            for &t in &self.delta[q] {
                if id[t] == usize::MAX {
                    id[t] = order.len();
                    order.push(t);
                }
            }
            i += 1;
        }
        let e: Vec<AutState> = order
            .iter()
            .enumerate()
            .filter(|(_, &q)| self.e[q])
            .map(|(i, _)| i)
            .collect();
        let f: Vec<AutState> = order
            .iter()
            .enumerate()
            .filter(|(_, &q)| self.f[q])
            .map(|(i, _)| i)
            .collect();
        Self::from_fn(self.n_props, order.len(), 0, |q, l| id[self.step(order[q], l)], &e, &f)
            .expect("restriction of a valid automaton")
    }

    pub fn from_table(n_props: usize, table: &AutomatonTable) -> Result<Self> {
        let letters = 1usize << n_props.min(MAX_PREDICATES);
        let mut explicit: Vec<Vec<Option<AutState>>> = vec![vec![None; letters]; table.states];
        let mut default: Vec<Option<AutState>> = vec![None; table.states];
        for t in &table.delta {
            if t.from >= table.states {
                return Err(Error::Automaton(format!("transition from missing state {}", t.from)));
            }
            match &t.letter {
                LetterSpec::Any(_) => default[t.from] = Some(t.to),
                LetterSpec::Bits(l) => {
                    let slot = explicit[t.from]
                        .get_mut(*l as usize)
                        .ok_or_else(|| Error::Automaton(format!("letter {l} exceeds {n_props} predicates")))?;
                    if slot.is_some_and(|prev| prev != t.to) {
                        return Err(Error::Automaton(format!(
                            "nondeterministic transition from {} on {l}",
                            t.from
                        )));
                    }
                    *slot = Some(t.to);
                }
            }
        }
        for q in 0..table.states {
            if default[q].is_none() && explicit[q].iter().any(Option::is_none) {
                return Err(Error::Automaton(format!(
                    "transition function is not total at state {q}"
                )));
            }
        }
        Self::from_fn(
            n_props,
            table.states,
            table.initial,
            |q, l| explicit[q][l as usize].or(default[q]).expect("checked totality"),
            &table.e,
            &table.f,
        )
    }

    /// Table form with one default entry per state for its most common target.
    pub fn to_table(&self) -> AutomatonTable {
        let mut delta = Vec::new();
        for (q, row) in self.delta.iter().enumerate() {
            let mut counts: HashMap<AutState, usize> = HashMap::new();
            row.iter().for_each(|&t| *counts.entry(t).or_default() += 1);
            let common = counts
                .into_iter()
                .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
                .map(|(t, _)| t)
                .expect("nonempty alphabet");
            delta.push(TableEntry {
                from: q,
                letter: LetterSpec::Any(AnyLetter),
                to: common,
            });
            for (l, &t) in row.iter().enumerate() {
                if t != common {
                    delta.push(TableEntry {
                        from: q,
                        letter: LetterSpec::Bits(l as Letter),
                        to: t,
                    });
                }
            }
        }
        AutomatonTable {
            states: self.n_states(),
            initial: self.initial,
            e: (0..self.n_states()).filter(|&q| self.e[q]).collect(),
            f: (0..self.n_states()).filter(|&q| self.f[q]).collect(),
            delta,
        }
    }
}

/// `(all assumptions) => (all guarantees)`, each component a deterministic
/// Büchi automaton given by its `F` set.
#[derive(Clone, Debug)]
pub struct Gr1Spec {
    pub n_props: usize,
    pub assumptions: Vec<OmegaAutomaton>,
    pub guarantees: Vec<OmegaAutomaton>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomatonTable {
    pub states: usize,
    pub initial: AutState,
    #[serde(rename = "E", default)]
    pub e: Vec<AutState>,
    #[serde(rename = "F", default)]
    pub f: Vec<AutState>,
    pub delta: Vec<TableEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub from: AutState,
    pub letter: LetterSpec,
    pub to: AutState,
}

/// A letter as a bit vector, or `"*"` for every letter not listed explicitly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LetterSpec {
    Bits(Letter),
    Any(AnyLetter),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnyLetter;

impl Serialize for AnyLetter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str("*")
    }
}

impl<'de> Deserialize<'de> for AnyLetter {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s == "*" {
            Ok(AnyLetter)
        } else {
            Err(serde::de::Error::custom(format!("expected \"*\", found {s:?}")))
        }
    }
}
