//! Sliding stones and colliding coins on `Path_n`.
//!
//! A timeline is the sequence `σ_t = ν_t(σ_{t-1})` where `ν_t` applies the
//! toggles `τ_{t+d-1}, τ_{t+d-2}, ..., τ_t`. Stones sit on cycle vertices,
//! replicas of path vertices sit where `σ` sends them, and a coin marks the
//! path vertex whose replica rides each stone.

pub mod collide;
pub mod fence;
pub mod omega;
pub mod render;
pub mod trace;

use serde::{Deserialize, Serialize};

use crate::cyclic::residue;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::labeling::Labeling;

pub use collide::{Collision, CollisionKind, StepEvents};
pub use fence::{HasseFence, Transversal};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "L")]
    Left,
    #[serde(rename = "R")]
    Right,
}

/// The toggle index of the `i`-th small step between times `t-1` and `t`.
pub fn small_step_toggle(n: usize, d: usize, t: i64, i: usize) -> usize {
    residue(t + d as i64 - i as i64, n)
}

/// A labeling together with explicit stone positions, so that the
/// intermediate diagrams inside a transition can be described too.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snapshot {
    pub sigma: Labeling,
    /// `stones[i]` is the cycle vertex (a label in `1..=n`) under stone `s_{i+1}`.
    pub stones: Vec<usize>,
}

impl Snapshot {
    /// The stones diagram of the state `(σ, t)`: `s_i` sits on `t+d+1-i`.
    pub fn at_time(sigma: Labeling, t: i64, d: usize) -> Self {
        let n = sigma.n();
        let stones = (1..=d).map(|i| residue(t + d as i64 + 1 - i as i64, n)).collect();
        Self { sigma, stones }
    }

    pub fn n(&self) -> usize {
        self.sigma.n()
    }

    pub fn d(&self) -> usize {
        self.stones.len()
    }

    /// Index `ℓ` of the replica on cycle vertex `c`.
    pub fn replica_at(&self, c: usize) -> usize {
        self.sigma.vertex_of(c) + 1
    }

    /// Stone (0-based color) on cycle vertex `c`, if any.
    pub fn stone_at(&self, c: usize) -> Option<usize> {
        self.stones.iter().position(|&s| s == c)
    }

    /// Path vertex (1-based) of the coin of color `color`.
    pub fn coin_vertex(&self, color: usize) -> usize {
        self.replica_at(self.stones[color])
    }

    /// Colors listed by the position of their coins, left to right.
    pub fn coin_order(&self) -> Vec<usize> {
        let mut colors: Vec<usize> = (0..self.d()).collect();
        colors.sort_by_key(|&c| self.coin_vertex(c));
        colors
    }

    /// Coin positions indexed by coin name `c_1..c_d` (0-based).
    pub fn coin_positions(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.d()).map(|c| self.coin_vertex(c)).collect();
        v.sort_unstable();
        v
    }

    /// `occ[v]` for path vertices `v` in `1..=n`; index 0 and `n+1` are walls.
    pub fn occupied(&self) -> Vec<bool> {
        let mut occ = vec![false; self.n() + 2];
        for c in 0..self.d() {
            occ[self.coin_vertex(c)] = true;
        }
        occ
    }

    /// Traffic jam `[r, s]` around an occupied path vertex.
    pub fn jam(&self, v: usize) -> (usize, usize) {
        let occ = self.occupied();
        debug_assert!(occ[v]);
        let (mut r, mut s) = (v, v);
        while r > 1 && occ[r - 1] {
            r -= 1;
        }
        while s < self.n() && occ[s + 1] {
            s += 1;
        }
        (r, s)
    }

    pub fn touches_wall(&self, jam: (usize, usize)) -> bool {
        jam.0 == 1 || jam.1 == self.n()
    }

    /// Clockwise distance from cycle vertex `from` to `to`.
    fn cw(&self, from: usize, to: usize) -> usize {
        let n = self.n();
        (to + n - from) % n
    }

    /// The direction the coin of `color` expects to move.
    pub fn expected_direction(&self, color: usize) -> Direction {
        let (r, s) = self.jam(self.coin_vertex(color));
        if r == 1 {
            return Direction::Right;
        }
        if s == self.n() {
            return Direction::Left;
        }
        let here = self.stones[color];
        let left = self.cw(here, self.sigma.label(r - 2));
        let right = self.cw(here, self.sigma.label(s));
        if left < right {
            Direction::Left
        } else {
            Direction::Right
        }
    }

    /// Expected directions indexed by coin name.
    pub fn directions(&self) -> Vec<Direction> {
        self.coin_order().into_iter().map(|c| self.expected_direction(c)).collect()
    }
}

/// One small step: stone `s_i` moves one vertex clockwise.
#[derive(Debug, Clone)]
pub struct SmallStep {
    pub t: i64,
    /// 1-based stone index.
    pub i: usize,
    pub before: Snapshot,
    pub after: Snapshot,
    /// Whether the stone carried its replica (the toggle swapped labels).
    pub carried: bool,
    /// Replica the stone rode before the step.
    pub replica: usize,
    /// Replica on the vertex the stone moved onto.
    pub passed: usize,
}

impl SmallStep {
    /// `(coin name, from, to)` if a coin moved.
    pub fn coin_move(&self) -> Option<(usize, usize, usize)> {
        if self.carried {
            return None;
        }
        let order = self.after.coin_order();
        let name = order.iter().position(|&c| c == self.i - 1).expect("color present");
        Some((name, self.replica, self.passed))
    }
}

/// Perform the `i`-th small step on `snap` (which must be the intermediate
/// diagram right before it).
pub fn small_step(snap: &Snapshot, t: i64, i: usize) -> SmallStep {
    let n = snap.n();
    let from = snap.stones[i - 1];
    let to = from % n + 1;
    let replica = snap.replica_at(from);
    let passed = snap.replica_at(to);
    let carried = replica.abs_diff(passed) != 1;
    let mut after = snap.clone();
    if carried {
        after.sigma.swap_labels(from, to);
    }
    after.stones[i - 1] = to;
    SmallStep { t, i, before: snap.clone(), after, carried, replica, passed }
}

/// All `d` small steps taking `(σ_{t-1}, t-1)` to `(σ_t, t)`.
pub fn transition(prev: &Labeling, t: i64, d: usize) -> Vec<SmallStep> {
    let mut snap = Snapshot::at_time(prev.clone(), t - 1, d);
    let mut out = Vec::with_capacity(d);
    for i in 1..=d {
        let step = small_step(&snap, t, i);
        snap = step.after.clone();
        out.push(step);
    }
    out
}

/// `ν_t` in place.
pub fn nu_in_place(sigma: &mut Labeling, t: i64, d: usize) {
    let n = sigma.n();
    for i in 1..=d {
        let a = small_step_toggle(n, d, t, i);
        let b = a % n + 1;
        if sigma.vertex_of(a).abs_diff(sigma.vertex_of(b)) != 1 {
            sigma.swap_labels(a, b);
        }
    }
}

/// `ν_t^{-1}` in place.
pub fn nu_inv_in_place(sigma: &mut Labeling, t: i64, d: usize) {
    let n = sigma.n();
    for i in (1..=d).rev() {
        let a = small_step_toggle(n, d, t, i);
        let b = a % n + 1;
        if sigma.vertex_of(a).abs_diff(sigma.vertex_of(b)) != 1 {
            sigma.swap_labels(a, b);
        }
    }
}

/// A memoized timeline through `(σ_0, 0)`.
///
/// Not internally synchronized; use one per thread.
#[derive(Debug, Clone)]
pub struct Timeline {
    d: usize,
    /// `σ_0, σ_1, ...`
    fwd: Vec<Labeling>,
    /// `σ_{-1}, σ_{-2}, ...`
    bwd: Vec<Labeling>,
}

impl Timeline {
    pub fn new(seed: Labeling, d: usize) -> Result<Self> {
        let n = seed.n();
        if n < 2 || d == 0 || d >= n {
            return Err(Error::OutOfRange(format!("timelines need 1 <= d <= n-1, got d = {d}, n = {n}")));
        }
        Ok(Self { d, fwd: vec![seed], bwd: Vec::new() })
    }

    /// As [`Timeline::new`], rejecting graphs other than a path.
    pub fn on_graph(g: &Graph, seed: Labeling, d: usize) -> Result<Self> {
        if !g.is_path() {
            return Err(Error::NotAPath);
        }
        if g.n() != seed.n() {
            return Err(Error::SizeMismatch { expected: g.n(), got: seed.n() });
        }
        Self::new(seed, d)
    }

    pub fn n(&self) -> usize {
        self.fwd[0].n()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn seed(&self) -> &Labeling {
        &self.fwd[0]
    }

    /// `σ_t`, extending the memo as needed.
    pub fn state(&mut self, t: i64) -> &Labeling {
        if t >= 0 {
            let t = t as usize;
            while self.fwd.len() <= t {
                let k = self.fwd.len() as i64;
                let mut next = self.fwd[self.fwd.len() - 1].clone();
                nu_in_place(&mut next, k, self.d);
                self.fwd.push(next);
            }
            &self.fwd[t]
        } else {
            let idx = (-t - 1) as usize;
            while self.bwd.len() <= idx {
                // σ_{-k-1} = ν_{-k}^{-1}(σ_{-k})
                let k = self.bwd.len() as i64;
                let mut prev = if k == 0 { self.fwd[0].clone() } else { self.bwd[self.bwd.len() - 1].clone() };
                nu_inv_in_place(&mut prev, -k, self.d);
                self.bwd.push(prev);
            }
            &self.bwd[idx]
        }
    }

    pub fn snapshot(&mut self, t: i64) -> Snapshot {
        let d = self.d;
        Snapshot::at_time(self.state(t).clone(), t, d)
    }

    /// The small steps from time `t-1` to time `t`.
    pub fn transition(&mut self, t: i64) -> Vec<SmallStep> {
        let d = self.d;
        let prev = self.state(t - 1).clone();
        transition(&prev, t, d)
    }

    /// Smallest `P > 0` with `n | P` and `σ_P = σ_0`; the whole timeline is
    /// then periodic with period `P`.
    pub fn period(&mut self) -> Result<i64> {
        let (n, d) = (self.n(), self.d);
        let cap = window_cap(n, d);
        let seed = self.fwd[0].clone();
        let mut t = n as i64;
        while t <= cap {
            if *self.state(t) == seed {
                return Ok(t);
            }
            t += n as i64;
        }
        Err(Error::WindowExhausted { steps: cap as usize })
    }
}

/// Hard cap on simulated time steps: `4 n^2 d (n-d)`.
pub fn window_cap(n: usize, d: usize) -> i64 {
    (4 * n * n * d * (n - d)) as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::promotion::theta;
    use crate::toggle::toggle_in_place;

    #[test]
    fn small_step_toggles_match_theta() {
        for n in 3..=8 {
            for d in 1..n {
                for t in -10..10i64 {
                    for i in 1..=d {
                        let k = d as i64 * (t - 1) + i as i64;
                        assert_eq!(small_step_toggle(n, d, t, i), theta(n, d, k));
                    }
                }
            }
        }
    }

    #[test]
    fn nu_is_d_toggles() {
        let g = Graph::path(6).unwrap();
        for sigma in Labeling::all(6).step_by(7) {
            for t in 0..6 {
                let mut a = sigma.clone();
                nu_in_place(&mut a, t, 3);
                let mut b = sigma.clone();
                for i in 1..=3 {
                    toggle_in_place(&mut b, &g, small_step_toggle(6, 3, t, i));
                }
                assert_eq!(a, b);
                nu_inv_in_place(&mut a, t, 3);
                assert_eq!(a, sigma);
            }
        }
    }

    #[test]
    fn backward_and_forward_agree() {
        let seed = Labeling::new(vec![3, 1, 5, 2, 6, 4]).unwrap();
        let mut tl = Timeline::new(seed.clone(), 2).unwrap();
        let back = tl.state(-7).clone();
        let mut tl2 = Timeline::new(back, 2).unwrap();
        assert_eq!(tl2.state(7), &seed);
        assert_eq!(tl.state(0), &seed);
    }

    #[test]
    fn transition_ends_at_next_state() {
        let seed = Labeling::new(vec![2, 5, 1, 4, 3]).unwrap();
        let mut tl = Timeline::new(seed, 2).unwrap();
        for t in 1..12 {
            let steps = tl.transition(t);
            let last = steps.last().unwrap().after.clone();
            assert_eq!(last, tl.snapshot(t));
        }
    }

    #[test]
    fn occupied_vertices_are_preimages_of_stone_labels() {
        let seed = Labeling::new(vec![4, 6, 1, 3, 5, 2]).unwrap();
        let mut tl = Timeline::new(seed, 3).unwrap();
        for t in 0..10 {
            let snap = tl.snapshot(t);
            let sigma = tl.state(t).clone();
            let mut expect: Vec<usize> = (1..=3).map(|j| sigma.vertex_of(residue(t + j, 6)) + 1).collect();
            expect.sort_unstable();
            assert_eq!(snap.coin_positions(), expect);
        }
    }

    #[test]
    fn wall_convention() {
        // coins at v1 and v2 form a jam touching the left wall
        let snap = Snapshot::at_time(Labeling::new(vec![2, 1, 3, 4, 5]).unwrap(), 0, 2);
        assert_eq!(snap.coin_positions(), vec![1, 2]);
        assert_eq!(snap.directions(), vec![Direction::Right, Direction::Right]);
    }

    #[test]
    fn rejects_non_paths() {
        let g = Graph::cycle(5).unwrap();
        assert_eq!(Timeline::on_graph(&g, Labeling::identity(5), 2).unwrap_err(), Error::NotAPath);
        assert!(Timeline::new(Labeling::identity(5), 5).is_err());
    }
}
