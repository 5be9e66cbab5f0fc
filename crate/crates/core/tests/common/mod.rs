//! Independent oracles shared by the integration tests and the acceptance
//! harness: a brute-force game solver, exact planar polygon arithmetic for
//! operator membership, and random instance generators.
#![allow(dead_code)]

use nalgebra::DMatrix;
use polysynth::games::{Game, Player};
use polysynth::geometry::{Polytope, Region};
use polysynth::problem::Problem;
use polysynth::sysdyn::LinearStochasticSystem;
use rand::Rng;

pub fn load(name: &str) -> Problem {
    Problem::load(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

// ---------------------------------------------------------------- games

/// Random game with at most `max_states` states and two actions per state;
/// roughly one state in ten has no action at all.
pub fn random_game(rng: &mut impl Rng, max_states: usize) -> (Game, Vec<bool>, Vec<bool>) {
    let n = rng.gen_range(1..=max_states);
    let mut g = Game::new();
    for _ in 0..n {
        g.add_state(if rng.gen_bool(0.5) { Player::One } else { Player::Two });
    }
    for s in 0..n {
        let k = if rng.gen_bool(0.1) { 0 } else { rng.gen_range(1..=2) };
        for _ in 0..k {
            let mut succ: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
            if succ.is_empty() {
                succ.push(rng.gen_range(0..n));
            }
            let w: Vec<f64> = succ.iter().map(|_| rng.gen_range(0.1..1.0)).collect();
            let total: f64 = w.iter().sum();
            g.add_action(s, succ.iter().zip(&w).map(|(&t, &x)| (t, x / total)).collect());
        }
    }
    let e = (0..n).map(|_| rng.gen_bool(0.4)).collect();
    let f = (0..n).map(|_| rng.gen_bool(0.3)).collect();
    (g, e, f)
}

fn assignments(g: &Game, player: Player) -> Vec<Vec<usize>> {
    let mut all = vec![vec![0; g.n_states()]];
    for s in 0..g.n_states() {
        if g.owner(s) != player || g.actions(s).len() < 2 {
            continue;
        }
        all = all
            .into_iter()
            .flat_map(|c| {
                (0..g.actions(s).len()).map(move |a| {
                    let mut c = c.clone();
                    c[s] = a;
                    c
                })
            })
            .collect();
    }
    all
}

/// States from which the Markov chain induced by fixed choices satisfies the
/// pair almost surely: no dead end is reachable and every reachable bottom
/// component visits `f` or avoids `e`.
fn chain_winning(g: &Game, s1: &[usize], s2: &[usize], e: &[bool], f: &[bool]) -> Vec<bool> {
    let n = g.n_states();
    let succ: Vec<Vec<usize>> = (0..n)
        .map(|s| {
            if g.actions(s).is_empty() {
                return Vec::new();
            }
            let a = if g.owner(s) == Player::One { s1[s] } else { s2[s] };
            g.successors(s, a).collect()
        })
        .collect();
    let mut reach = vec![vec![false; n]; n];
    for (s, row) in reach.iter_mut().enumerate() {
        let mut stack = vec![s];
        row[s] = true;
        while let Some(t) = stack.pop() {
            for &v in &succ[t] {
                if !row[v] {
                    row[v] = true;
                    stack.push(v);
                }
            }
        }
    }
    // t is in a bottom component iff everything it reaches reaches it back
    let bottom = |t: usize| (0..n).all(|v| !reach[t][v] || reach[v][t]);
    let good_bottom = |t: usize| {
        let comp: Vec<usize> = (0..n).filter(|&v| reach[t][v]).collect();
        comp.iter().any(|&v| f[v]) || !comp.iter().any(|&v| e[v])
    };
    (0..n)
        .map(|s| {
            (0..n)
                .filter(|&t| reach[s][t])
                .all(|t| !succ[t].is_empty() && (!bottom(t) || good_bottom(t)))
        })
        .collect()
}

/// Brute-force almost-sure winning sets over pure memoryless strategy pairs:
/// exists/forall when adversarial, exists/exists when cooperative.
pub fn brute_force_streett(g: &Game, e: &[bool], f: &[bool], coop: bool) -> Vec<bool> {
    let n = g.n_states();
    let p1 = assignments(g, Player::One);
    let p2 = assignments(g, Player::Two);
    let mut win = vec![false; n];
    for s1 in &p1 {
        let per: Vec<Vec<bool>> = p2.iter().map(|s2| chain_winning(g, s1, s2, e, f)).collect();
        for s in 0..n {
            let ok = if coop {
                per.iter().any(|w| w[s])
            } else {
                per.iter().all(|w| w[s])
            };
            win[s] |= ok;
        }
    }
    win
}

/// Checks that `choice` keeps every play from `win` almost surely winning.
pub fn strategy_is_winning(g: &Game, e: &[bool], f: &[bool], win: &[bool], choice: &[Option<usize>]) -> bool {
    let s1: Vec<usize> = choice.iter().map(|c| c.unwrap_or(0)).collect();
    assignments(g, Player::Two).iter().all(|s2| {
        let w = chain_winning(g, &s1, s2, e, f);
        (0..g.n_states()).all(|s| !win[s] || w[s])
    })
}

// ---------------------------------------------------------------- polygons

pub type Pt = [f64; 2];
pub type Poly = Vec<Pt>;

const TOL: f64 = 1e-9;

fn cross(o: Pt, a: Pt, b: Pt) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Counter-clockwise convex hull (monotone chain with exact-sign pops), then
/// vertices without a visible turn removed.
pub fn hull(points: &[Pt]) -> Poly {
    let mut p = points.to_vec();
    p.sort_by(|a, b| a.partial_cmp(b).unwrap());
    p.dedup();
    if p.len() < 3 {
        return p;
    }
    let mut h: Vec<Pt> = Vec::with_capacity(2 * p.len());
    for pass in 0..2 {
        let start = h.len();
        let iter: Box<dyn Iterator<Item = &Pt>> = if pass == 0 {
            Box::new(p.iter())
        } else {
            Box::new(p.iter().rev())
        };
        for &q in iter {
            while h.len() >= start + 2 && cross(h[h.len() - 2], h[h.len() - 1], q) <= 0.0 {
                h.pop();
            }
            h.push(q);
        }
        h.pop();
    }
    loop {
        let n = h.len();
        if n < 3 {
            return h;
        }
        let flat = (0..n).find(|&i| {
            let (o, a, b) = (h[(i + n - 1) % n], h[i], h[(i + 1) % n]);
            let base = ((b[0] - o[0]).powi(2) + (b[1] - o[1]).powi(2)).sqrt();
            base == 0.0 || cross(o, a, b) / base <= 1e-12
        });
        match flat {
            Some(i) => {
                h.remove(i);
            }
            None => return h,
        }
    }
}

pub fn area(p: &[Pt]) -> f64 {
    if p.len() < 3 {
        return 0.0;
    }
    let mut s = 0.0;
    for i in 0..p.len() {
        let (a, b) = (p[i], p[(i + 1) % p.len()]);
        s += a[0] * b[1] - a[1] * b[0];
    }
    0.5 * s.abs()
}

/// Outward edge normals with offsets: `n . z <= c` for a CCW polygon.
pub fn halfplanes(p: &[Pt]) -> Vec<(Pt, f64)> {
    (0..p.len())
        .map(|i| {
            let (a, b) = (p[i], p[(i + 1) % p.len()]);
            let n = [b[1] - a[1], a[0] - b[0]];
            let len = (n[0] * n[0] + n[1] * n[1]).sqrt();
            let n = [n[0] / len, n[1] / len];
            (n, n[0] * a[0] + n[1] * a[1])
        })
        .collect()
}

/// `p ∩ {n . z <= c}` (Sutherland-Hodgman).
pub fn clip(p: &[Pt], n: Pt, c: f64) -> Poly {
    let val = |z: Pt| n[0] * z[0] + n[1] * z[1] - c;
    let mut out = Vec::new();
    for i in 0..p.len() {
        let (a, b) = (p[i], p[(i + 1) % p.len()]);
        let (va, vb) = (val(a), val(b));
        if va <= 0.0 {
            out.push(a);
        }
        if (va < 0.0 && vb > 0.0) || (va > 0.0 && vb < 0.0) {
            let t = va / (va - vb);
            out.push([a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]);
        }
    }
    out
}

pub fn intersect(p: &[Pt], q: &[Pt]) -> Poly {
    let mut r = p.to_vec();
    for (n, c) in halfplanes(q) {
        r = clip(&r, n, c);
        if r.is_empty() {
            break;
        }
    }
    r
}

/// Closed intersection test with a small outward slack.
pub fn meets(p: &[Pt], q: &[Pt]) -> bool {
    let mut r = p.to_vec();
    for (n, c) in halfplanes(q) {
        r = clip(&r, n, c + TOL);
        if r.is_empty() {
            return false;
        }
    }
    true
}

/// `p \ q` as convex pieces.
pub fn difference(p: &[Pt], q: &[Pt]) -> Vec<Poly> {
    let mut rest = p.to_vec();
    let mut pieces = Vec::new();
    for (n, c) in halfplanes(q) {
        let outside = clip(&rest, [-n[0], -n[1]], -c);
        if area(&outside) > 1e-15 {
            pieces.push(outside);
        }
        rest = clip(&rest, n, c);
        if area(&rest) <= 1e-15 {
            break;
        }
    }
    pieces
}

/// Area of `p` not covered by any of `qs`.
pub fn uncovered_area(p: &[Pt], qs: &[Poly]) -> f64 {
    let mut pieces = vec![p.to_vec()];
    for q in qs {
        if q.len() < 3 {
            continue;
        }
        pieces = pieces.iter().flat_map(|r| difference(r, q)).collect();
        if pieces.is_empty() {
            return 0.0;
        }
    }
    pieces.iter().map(|r| area(r)).sum()
}

pub fn contains(p: &[Pt], z: Pt) -> bool {
    halfplanes(p).iter().all(|(n, c)| n[0] * z[0] + n[1] * z[1] <= c + TOL)
}

pub fn rect(lo: Pt, hi: Pt) -> Poly {
    vec![lo, [hi[0], lo[1]], hi, [lo[0], hi[1]]]
}

// ---------------------------------------------------------------- operator oracle

/// A planar system given by plain numbers, with convex boxes as sets.
#[derive(Clone, Debug)]
pub struct PlanarInstance {
    pub a: [[f64; 2]; 2],
    /// Columns of `B`; one or two.
    pub b: Vec<Pt>,
    pub x: (Pt, Pt),
    pub u: (Vec<f64>, Vec<f64>),
    pub w: f64,
    /// Cells of a 3x3 grid over `x`.
    pub cells: Vec<(Pt, Pt)>,
    pub xp: usize,
    pub targets: Vec<usize>,
}

impl PlanarInstance {
    pub fn random(rng: &mut impl Rng) -> Self {
        let ext = [rng.gen_range(0.8..1.6), rng.gen_range(0.8..1.6)];
        let mut a = [[1.0, 0.0], [0.0, 1.0]];
        for row in a.iter_mut() {
            for v in row.iter_mut() {
                *v += rng.gen_range(-0.3..0.3);
            }
        }
        let m = rng.gen_range(1..=2);
        let b: Vec<Pt> = if m == 2 {
            let e = 0.25;
            vec![
                [1.0 + rng.gen_range(-e..e), rng.gen_range(-e..e)],
                [rng.gen_range(-e..e), 1.0 + rng.gen_range(-e..e)],
            ]
        } else {
            let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            vec![[t.cos(), t.sin()]]
        };
        let r: f64 = rng.gen_range(0.1..0.5);
        let cells: Vec<(Pt, Pt)> = (0..9)
            .map(|k| {
                let (i, j) = ((k % 3) as f64, (k / 3) as f64);
                (
                    [ext[0] * i / 3.0, ext[1] * j / 3.0],
                    [ext[0] * (i + 1.0) / 3.0, ext[1] * (j + 1.0) / 3.0],
                )
            })
            .collect();
        let n_t = rng.gen_range(1..=3);
        let mut targets: Vec<usize> = Vec::new();
        while targets.len() < n_t {
            let c = rng.gen_range(0..9);
            if !targets.contains(&c) {
                targets.push(c);
            }
        }
        targets.sort_unstable();
        Self {
            a,
            b,
            x: ([0.0, 0.0], ext),
            u: (vec![-r; m], vec![r; m]),
            w: rng.gen_range(0.01..0.08),
            cells,
            xp: rng.gen_range(0..9),
            targets,
        }
    }

    pub fn m(&self) -> usize {
        self.b.len()
    }

    pub fn system(&self) -> LinearStochasticSystem {
        let a = DMatrix::from_row_slice(2, 2, &[self.a[0][0], self.a[0][1], self.a[1][0], self.a[1][1]]);
        let m = self.m();
        let b = DMatrix::from_fn(2, m, |r, c| self.b[c][r]);
        LinearStochasticSystem::new(
            a,
            b,
            Polytope::boxed(&self.x.0, &self.x.1),
            Polytope::boxed(&self.u.0, &self.u.1),
            Polytope::boxed(&[-self.w, -self.w], &[self.w, self.w]),
        )
        .unwrap()
    }

    pub fn cell_poly(&self, i: usize) -> Polytope {
        Polytope::boxed(&self.cells[i].0, &self.cells[i].1)
    }

    pub fn xp_poly(&self) -> Polytope {
        self.cell_poly(self.xp)
    }

    pub fn target_region(&self, ids: &[usize]) -> Region {
        Region::from_disjoint(2, ids.iter().map(|&i| self.cell_poly(i)).collect())
    }

    pub fn up_region(&self) -> Region {
        Region::from_polytope(Polytope::boxed(&self.u.0, &self.u.1))
    }

    fn ax(&self, x: Pt) -> Pt {
        [
            self.a[0][0] * x[0] + self.a[0][1] * x[1],
            self.a[1][0] * x[0] + self.a[1][1] * x[1],
        ]
    }

    fn bu(&self, u: &[f64]) -> Pt {
        let mut z = [0.0, 0.0];
        for (k, col) in self.b.iter().enumerate() {
            z[0] += col[0] * u[k];
            z[1] += col[1] * u[k];
        }
        z
    }

    fn w_vertices(&self) -> [Pt; 4] {
        let w = self.w;
        [[-w, -w], [w, -w], [w, w], [-w, w]]
    }

    fn u_vertices(&self) -> Vec<Vec<f64>> {
        let (lo, hi) = &self.u;
        if self.m() == 1 {
            vec![vec![lo[0]], vec![hi[0]]]
        } else {
            vec![
                vec![lo[0], lo[1]],
                vec![hi[0], lo[1]],
                vec![hi[0], hi[1]],
                vec![lo[0], hi[1]],
            ]
        }
    }

    /// The control set as a planar polygon; one input is padded to a unit strip.
    pub fn u_poly(&self) -> Poly {
        let (lo, hi) = &self.u;
        if self.m() == 1 {
            rect([lo[0], 0.0], [hi[0], 1.0])
        } else {
            rect([lo[0], lo[1]], [hi[0], hi[1]])
        }
    }

    /// `hull(A X_xp + B U + W)`.
    pub fn post_poly(&self, xp: (Pt, Pt)) -> Poly {
        let mut pts = Vec::new();
        for xv in rect(xp.0, xp.1) {
            let ax = self.ax(xv);
            for uv in self.u_vertices() {
                let bu = self.bu(&uv);
                for wv in self.w_vertices() {
                    pts.push([ax[0] + bu[0] + wv[0], ax[1] + bu[1] + wv[1]]);
                }
            }
        }
        hull(&pts)
    }

    /// Inputs `u` (as a planar polygon) with `(A x + B u + W) ∩ K` nonempty.
    pub fn inputs_meeting(&self, x: Pt, k: &[Pt]) -> Poly {
        let ax = self.ax(x);
        let mut pts = Vec::new();
        for kv in k {
            for wv in self.w_vertices() {
                pts.push([kv[0] - ax[0] - wv[0], kv[1] - ax[1] - wv[1]]);
            }
        }
        let d = hull(&pts);
        if self.m() == 2 {
            let [c0, c1] = [self.b[0], self.b[1]];
            let det = c0[0] * c1[1] - c1[0] * c0[1];
            let inv = |z: Pt| {
                [
                    (c1[1] * z[0] - c1[0] * z[1]) / det,
                    (-c0[1] * z[0] + c0[0] * z[1]) / det,
                ]
            };
            hull(&d.iter().map(|&z| inv(z)).collect::<Vec<_>>())
        } else {
            let b = self.b[0];
            let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
            for (n, c) in halfplanes(&d) {
                let nb = n[0] * b[0] + n[1] * b[1];
                if nb.abs() < 1e-14 {
                    if c < 0.0 {
                        return Vec::new();
                    }
                } else if nb > 0.0 {
                    hi = hi.min(c / nb);
                } else {
                    lo = lo.max(c / nb);
                }
            }
            if lo > hi {
                return Vec::new();
            }
            // a hair of width keeps single-point intervals well formed
            rect([lo - 1e-12, 0.0], [hi + 1e-12, 1.0])
        }
    }

    /// Convex pieces of a box far larger than every successor set, minus `ids`.
    pub fn complement_polys(&self, ids: &[usize]) -> Vec<Poly> {
        let post = self.post_poly(self.x);
        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for v in &post {
            for k in 0..2 {
                lo[k] = lo[k].min(v[k] - 1.0);
                hi[k] = hi[k].max(v[k] + 1.0);
            }
        }
        let mut pieces = vec![rect(lo, hi)];
        for &i in ids {
            let c = rect(self.cells[i].0, self.cells[i].1);
            pieces = pieces.iter().flat_map(|p| difference(p, &c)).collect();
        }
        pieces
    }

    pub fn cell_polys(&self, ids: &[usize]) -> Vec<Poly> {
        ids.iter().map(|&i| rect(self.cells[i].0, self.cells[i].1)).collect()
    }
}

/// Pointwise membership answers for one state `x`.
pub struct OracleOps<'a> {
    pub inst: &'a PlanarInstance,
    pub targets: Vec<Poly>,
    pub complement: Vec<Poly>,
    pub u: Poly,
}

impl<'a> OracleOps<'a> {
    pub fn new(inst: &'a PlanarInstance, ids: &[usize]) -> Self {
        Self {
            inst,
            targets: inst.cell_polys(ids),
            complement: inst.complement_polys(ids),
            u: inst.u_poly(),
        }
    }

    /// Some input reaches the targets with positive probability.
    pub fn pre(&self, x: Pt) -> bool {
        self.targets.iter().any(|t| {
            let s = self.inst.inputs_meeting(x, t);
            !s.is_empty() && meets(&self.u, &s)
        })
    }

    /// Every input reaches the targets with positive probability.
    pub fn attr(&self, x: Pt) -> bool {
        let s: Vec<Poly> = self.targets.iter().map(|t| self.inst.inputs_meeting(x, t)).collect();
        uncovered_area(&self.u, &s) <= TOL
    }

    /// Some input lands inside the targets surely.
    pub fn pre_robust(&self, x: Pt) -> bool {
        let s: Vec<Poly> = self.complement.iter().map(|c| self.inst.inputs_meeting(x, c)).collect();
        uncovered_area(&self.u, &s) > TOL
    }

    /// Every input lands inside the targets surely.
    pub fn attr_robust(&self, x: Pt) -> bool {
        self.complement.iter().all(|c| {
            let s = self.inst.inputs_meeting(x, c);
            s.len() < 3 || area(&intersect(&self.u, &s)) <= TOL
        })
    }

    /// Some input lands inside the targets surely while meeting each of them.
    pub fn pre_precise(&self, x: Pt) -> bool {
        let mut q = self.u.clone();
        for t in &self.targets {
            let s = self.inst.inputs_meeting(x, t);
            if s.len() < 3 {
                return false;
            }
            q = intersect(&q, &s);
            if area(&q) <= TOL {
                return false;
            }
        }
        let s: Vec<Poly> = self.complement.iter().map(|c| self.inst.inputs_meeting(x, c)).collect();
        uncovered_area(&q, &s) > TOL
    }
}

/// Grid points at pitch `h` (offset by half a pitch) inside the box.
pub fn grid(lo: Pt, hi: Pt, h: f64) -> Vec<Pt> {
    let nx = ((hi[0] - lo[0]) / h).floor() as usize;
    let ny = ((hi[1] - lo[1]) / h).floor() as usize;
    let mut pts = Vec::with_capacity(nx * ny);
    for i in 0..nx {
        for j in 0..ny {
            pts.push([lo[0] + (i as f64 + 0.5) * h, lo[1] + (j as f64 + 0.5) * h]);
        }
    }
    pts
}

/// Agreement counts `(agree, total)` of each operator on one instance.
#[derive(Clone, Copy, Debug, Default)]
pub struct Agreement {
    pub agree: usize,
    pub total: usize,
}

impl Agreement {
    pub fn add(&mut self, other: Agreement) {
        self.agree += other.agree;
        self.total += other.total;
    }

    pub fn fraction(&self) -> f64 {
        if self.total == 0 {
            1.0
        } else {
            self.agree as f64 / self.total as f64
        }
    }
}

pub const OPERATORS: [&str; 6] = ["post", "pre", "pre_robust", "pre_precise", "attr", "attr_robust"];

/// Per-operator agreement of the library with the oracle at pitch `h`, plus
/// the relative volume gap between the robust predecessor and the union of
/// its precise parts over all nonempty target subsets.
pub fn check_operators(inst: &PlanarInstance, h: f64) -> ([Agreement; 6], f64) {
    use polysynth::sysdyn::{attr, attr_robust, pre, pre_precise, pre_robust};
    let sys = inst.system();
    let xp = inst.xp_poly();
    let up = inst.up_region();
    let tr = inst.target_region(&inst.targets);
    let ops = OracleOps::new(inst, &inst.targets);
    let mut out = [Agreement::default(); 6];

    let post = sys.post(&xp, sys.control_space());
    let post_oracle = inst.post_poly(inst.cells[inst.xp]);
    let (plo, phi) = post
        .bbox()
        .map(|(l, h)| ([l[0] - 0.1, l[1] - 0.1], [h[0] + 0.1, h[1] + 0.1]))
        .unwrap();
    for y in grid(plo, phi, h) {
        out[0].total += 1;
        out[0].agree += usize::from(post.contains(&y) == contains(&post_oracle, y));
    }

    let computed = [
        pre(&sys, &xp, &up, &tr),
        pre_robust(&sys, &xp, &up, &tr),
        pre_precise(&sys, &xp, &up, &inst.cell_polys_as_polytopes()),
        attr(&sys, &xp, &up, &tr),
        attr_robust(&sys, &xp, &up, &tr),
    ];
    let (lo, hi) = inst.cells[inst.xp];
    for x in grid(lo, hi, h) {
        let want = [
            ops.pre(x),
            ops.pre_robust(x),
            ops.pre_precise(x),
            ops.attr(x),
            ops.attr_robust(x),
        ];
        for k in 0..5 {
            out[k + 1].total += 1;
            out[k + 1].agree += usize::from(computed[k].contains(&x) == want[k]);
        }
    }

    let n_t = inst.targets.len();
    let mut union = Region::empty(2);
    for mask in 1..(1usize << n_t) {
        let sub: Vec<Polytope> = (0..n_t)
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| inst.cell_poly(inst.targets[b]))
            .collect();
        union = union.union(&pre_precise(&sys, &xp, &up, &sub));
    }
    let robust = &computed[1];
    let gap = (robust.volume() - union.volume()).abs() + union.difference(robust).volume();
    let rel = gap / robust.volume().max(xp.volume());
    (out, rel)
}

impl PlanarInstance {
    fn cell_polys_as_polytopes(&self) -> Vec<Polytope> {
        self.targets.iter().map(|&i| self.cell_poly(i)).collect()
    }
}

// ---------------------------------------------------------------- reachability instances

/// Random planar system with identity dynamics, a diagonal input matrix and
/// box sets, a 3x3 predicate grid and the middle cell as target. Generic
/// dynamics are avoided: their fixed points only converge in the limit.
pub fn random_reach_problem(rng: &mut impl Rng) -> Problem {
    let (ex, ey) = (rng.gen_range(2.0..4.0), rng.gen_range(2.0..4.0));
    let (b0, b1) = (rng.gen_range(0.5..1.0), rng.gen_range(0.5..1.0));
    let r = rng.gen_range(0.4..1.0);
    let w = rng.gen_range(0.02..0.3);
    let json = format!(
        r#"{{
  "system": {{
    "A": [[1, 0], [0, 1]],
    "B": [[{b0}, 0], [0, {b1}]],
    "X": {{"vertices": [[-{ex}, -{ey}], [{ex}, -{ey}], [{ex}, {ey}], [-{ex}, {ey}]]}},
    "U": {{"vertices": [[-{r}, -{r}], [{r}, -{r}], [{r}, {r}], [-{r}, {r}]]}},
    "W": {{"vertices": [[-{w}, -{w}], [{w}, -{w}], [{w}, {w}], [-{w}, {w}]]}}
  }},
  "predicates": [
    {{"c": [1, 0], "d": -1}}, {{"c": [1, 0], "d": 1}},
    {{"c": [0, 1], "d": -1}}, {{"c": [0, 1], "d": 1}}
  ],
  "spec": {{"reach": {{"pos": [1, 3], "neg": [0, 2]}}}}
}}"#
    );
    Problem::from_json(&json).unwrap()
}
