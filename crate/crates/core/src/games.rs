//! Turn-based stochastic games with a one-pair Streett objective, solved for
//! almost-sure winning by a triple-nested fixed point.

use std::fmt::Write;

use serde::Serialize;

pub type StateId = usize;
pub type ActionId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Player {
    One,
    Two,
}

/// Successor distribution of one action: `(state, weight)` pairs.
pub type Distribution = Vec<(StateId, f64)>;

#[derive(Clone, Debug, Default)]
pub struct Game {
    owner: Vec<Player>,
    actions: Vec<Vec<Distribution>>,
}

impl Game {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_state(&mut self, player: Player) -> StateId {
        self.owner.push(player);
        self.actions.push(Vec::new());
        self.owner.len() - 1
    }

    /// Adds an action with the given distribution; weights must be positive
    /// and sum to one.
    pub fn add_action(&mut self, s: StateId, dist: Distribution) -> ActionId {
        assert!(!dist.is_empty(), "an action needs at least one successor");
        assert!(dist.iter().all(|&(t, w)| t < self.owner.len() && w > 0.0));
        let total: f64 = dist.iter().map(|(_, w)| w).sum();
        assert!((total - 1.0).abs() < 1e-9, "weights must sum to one");
        self.actions[s].push(dist);
        self.actions[s].len() - 1
    }

    /// Adds an action spreading probability evenly over `succ`.
    pub fn add_uniform_action(&mut self, s: StateId, succ: &[StateId]) -> ActionId {
        let w = 1.0 / succ.len() as f64;
        self.add_action(s, succ.iter().map(|&t| (t, w)).collect())
    }

    pub fn n_states(&self) -> usize {
        self.owner.len()
    }

    pub fn n_actions(&self) -> usize {
        self.actions.iter().map(Vec::len).sum()
    }

    pub fn owner(&self, s: StateId) -> Player {
        self.owner[s]
    }

    pub fn actions(&self, s: StateId) -> &[Distribution] {
        &self.actions[s]
    }

    pub fn successors(&self, s: StateId, a: ActionId) -> impl Iterator<Item = StateId> + '_ {
        self.actions[s][a].iter().map(|&(t, _)| t)
    }

    /// Same supports with weights from `weight(s, a, k)`, renormalized.
    pub fn reweighted(&self, mut weight: impl FnMut(StateId, ActionId, usize) -> f64) -> Game {
        let mut g = self.clone();
        for (s, acts) in g.actions.iter_mut().enumerate() {
            for (a, dist) in acts.iter_mut().enumerate() {
                for (k, entry) in dist.iter_mut().enumerate() {
                    entry.1 = weight(s, a, k);
                    assert!(entry.1 > 0.0, "weights must stay positive");
                }
                let total: f64 = dist.iter().map(|(_, w)| w).sum();
                dist.iter_mut().for_each(|e| e.1 /= total);
            }
        }
        g
    }

    /// Debug listing: one line per state with its owner and actions.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for s in 0..self.n_states() {
            let who = match self.owner[s] {
                Player::One => "P1",
                Player::Two => "P2",
            };
            let _ = write!(out, "{s} {who}");
            for (a, dist) in self.actions[s].iter().enumerate() {
                let succ: Vec<String> = dist.iter().map(|(t, w)| format!("{t}:{w:.3}")).collect();
                let _ = write!(out, " | a{a} -> {}", succ.join(" "));
            }
            out.push('\n');
        }
        out
    }
}

/// Membership vector over game states.
pub type StateSet = Vec<bool>;

/// Pure memoryless choice of action per Player-1 state.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Strategy {
    pub choice: Vec<Option<ActionId>>,
}

impl Strategy {
    pub fn get(&self, s: StateId) -> Option<ActionId> {
        self.choice.get(s).copied().flatten()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Adversarial,
    Cooperative,
}

fn all_in(g: &Game, s: StateId, a: ActionId, x: &[bool]) -> bool {
    g.successors(s, a).all(|t| x[t])
}

fn c1(g: &Game, s: StateId, a: ActionId, x: &[bool]) -> bool {
    all_in(g, s, a, x)
}

fn c2(g: &Game, s: StateId, a: ActionId, x: &[bool], y: &[bool]) -> bool {
    all_in(g, s, a, x) && g.successors(s, a).any(|t| y[t])
}

fn c3(g: &Game, s: StateId, a: ActionId, z: &[bool], x: &[bool], y: &[bool]) -> bool {
    all_in(g, s, a, z) || c2(g, s, a, x, y)
}

/// Player-1 states need some action satisfying `cond`; Player-2 states need
/// every action to satisfy it (some action, when cooperating). States
/// without actions never qualify.
fn quantify(g: &Game, s: StateId, mode: Mode, cond: impl Fn(ActionId) -> bool) -> bool {
    let n = g.actions(s).len();
    if n == 0 {
        return false;
    }
    match (g.owner(s), mode) {
        (Player::Two, Mode::Adversarial) => (0..n).all(cond),
        _ => (0..n).any(cond),
    }
}

pub fn pre1(g: &Game, x: &[bool]) -> StateSet {
    (0..g.n_states())
        .map(|s| quantify(g, s, Mode::Adversarial, |a| c1(g, s, a, x)))
        .collect()
}

pub fn pre2(g: &Game, x: &[bool], y: &[bool]) -> StateSet {
    (0..g.n_states())
        .map(|s| quantify(g, s, Mode::Adversarial, |a| c2(g, s, a, x, y)))
        .collect()
}

pub fn pre3(g: &Game, z: &[bool], x: &[bool], y: &[bool]) -> StateSet {
    (0..g.n_states())
        .map(|s| quantify(g, s, Mode::Adversarial, |a| c3(g, s, a, z, x, y)))
        .collect()
}

fn subset(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).all(|(&p, &q)| !p || q)
}

/// One application of the inner operator.
fn inner_step(g: &Game, mode: Mode, e: &[bool], f: &[bool], z: &[bool], x: &[bool], y: &[bool]) -> StateSet {
    (0..g.n_states())
        .map(|s| {
            if f[s] {
                quantify(g, s, mode, |a| c1(g, s, a, x))
            } else if e[s] {
                quantify(g, s, mode, |a| c2(g, s, a, x, y))
            } else {
                quantify(g, s, mode, |a| c3(g, s, a, z, x, y))
            }
        })
        .collect()
}

/// Greatest fixed point of the inner operator for fixed `x`, `y`.
fn inner_fixpoint(g: &Game, mode: Mode, e: &[bool], f: &[bool], x: &[bool], y: &[bool]) -> StateSet {
    let mut z = vec![true; g.n_states()];
    loop {
        let next = inner_step(g, mode, e, f, &z, x, y);
        debug_assert!(subset(&next, &z), "inner iteration must shrink");
        if next == z {
            return z;
        }
        z = next;
    }
}

/// Least fixed point over `y` for fixed `x`; returns the layers `Y_1 ⊆ Y_2 ⊆ ...`.
fn middle_layers(g: &Game, mode: Mode, e: &[bool], f: &[bool], x: &[bool]) -> Vec<StateSet> {
    let mut y = vec![false; g.n_states()];
    let mut layers = Vec::new();
    loop {
        let next = inner_fixpoint(g, mode, e, f, x, &y);
        debug_assert!(subset(&y, &next), "middle iteration must grow");
        if next == y {
            return layers;
        }
        layers.push(next.clone());
        y = next;
    }
}

fn solve(g: &Game, mode: Mode, e: &[bool], f: &[bool]) -> StateSet {
    let n = g.n_states();
    assert!(e.len() == n && f.len() == n, "acceptance sets must cover the game");
    let mut x = vec![true; n];
    loop {
        let next = middle_layers(g, mode, e, f, &x).pop().unwrap_or_else(|| vec![false; n]);
        debug_assert!(subset(&next, &x), "outer iteration must shrink");
        if next == x {
            return x;
        }
        x = next;
    }
}

/// Almost-sure winning set of Player 1 for the pair `(E, F)`, with a pure
/// memoryless winning strategy (lowest witnessing action per state).
pub fn almost_streett(g: &Game, e: &[bool], f: &[bool]) -> (StateSet, Strategy) {
    let x = solve(g, Mode::Adversarial, e, f);
    let layers = middle_layers(g, Mode::Adversarial, e, f, &x);
    let n = g.n_states();
    let mut choice = vec![None; n];
    let empty = vec![false; n];
    let mut below = &empty;
    for z in &layers {
        for s in 0..n {
            if !z[s] || below[s] || g.owner(s) != Player::One {
                continue;
            }
            let witness = |a: &ActionId| {
                let a = *a;
                if f[s] {
                    c1(g, s, a, &x)
                } else if e[s] {
                    c2(g, s, a, &x, below)
                } else {
                    c3(g, s, a, z, &x, below)
                }
            };
            choice[s] = (0..g.actions(s).len()).find(witness);
            debug_assert!(choice[s].is_some());
        }
        below = z;
    }
    (x, Strategy { choice })
}

/// Almost-sure winning set when both players cooperate.
pub fn almost_streett_coop(g: &Game, e: &[bool], f: &[bool]) -> StateSet {
    solve(g, Mode::Cooperative, e, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn self_loop() -> Game {
        let mut g = Game::new();
        let s = g.add_state(Player::One);
        g.add_uniform_action(s, &[s]);
        g
    }

    #[test]
    fn pre_on_single_loop() {
        let g = self_loop();
        assert_eq!(pre1(&g, &[true]), vec![true]);
        assert_eq!(pre2(&g, &[true], &[true]), vec![true]);
        assert_eq!(pre2(&g, &[true], &[false]), vec![false]);
    }

    #[test]
    fn buchi_with_all_accepting() {
        let g = self_loop();
        let (win, strat) = almost_streett(&g, &[true], &[true]);
        assert_eq!(win, vec![true]);
        assert_eq!(strat.get(0), Some(0));
    }

    #[test]
    fn e_everywhere_f_nowhere_loses() {
        let g = self_loop();
        assert_eq!(almost_streett(&g, &[true], &[false]).0, vec![false]);
    }

    /// Player 2 picks between an F-loop and an E-loop.
    fn choice_game() -> Game {
        let mut g = Game::new();
        let p2 = g.add_state(Player::Two);
        let good = g.add_state(Player::One);
        let bad = g.add_state(Player::One);
        g.add_uniform_action(p2, &[good]);
        g.add_uniform_action(p2, &[bad]);
        g.add_uniform_action(good, &[good]);
        g.add_uniform_action(bad, &[bad]);
        g
    }

    #[test]
    fn cooperation_helps() {
        let g = choice_game();
        let e = [false, false, true];
        let f = [false, true, false];
        assert_eq!(almost_streett(&g, &e, &f).0, vec![false, true, false]);
        assert_eq!(almost_streett_coop(&g, &e, &f), vec![true, true, false]);
    }

    #[test]
    fn probabilistic_escape_is_almost_sure() {
        // state 0 stays with prob 1/2 or moves to the F-loop 1
        let mut g = Game::new();
        let s0 = g.add_state(Player::One);
        let s1 = g.add_state(Player::One);
        g.add_uniform_action(s0, &[s0, s1]);
        g.add_uniform_action(s1, &[s1]);
        let (win, _) = almost_streett(&g, &[true, false], &[false, true]);
        assert_eq!(win, vec![true, true]);
    }

    #[test]
    fn reweighting_keeps_supports() {
        let g = choice_game();
        let h = g.reweighted(|_, _, k| 1.0 + k as f64);
        assert_eq!(h.n_actions(), g.n_actions());
        assert!(h.dump().contains("P2"));
    }
}
