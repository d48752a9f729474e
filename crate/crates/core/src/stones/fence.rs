//! The Hasse fence of collisions, edge energies, and transversals.

use std::collections::BTreeMap;

use serde::Serialize;

use super::collide::{analyze, Collision, CollisionKind, StepEvents};
use super::{window_cap, Timeline};
use crate::composition::Composition;
use crate::error::{Error, Result};

/// Small-step events over the time range `t_from..=t_to`.
#[derive(Debug, Clone)]
pub struct Run {
    pub n: usize,
    pub d: usize,
    pub t_from: i64,
    pub t_to: i64,
    pub events: Vec<StepEvents>,
}

impl Run {
    pub fn simulate(tl: &mut Timeline, t_from: i64, t_to: i64) -> Self {
        let mut events = Vec::with_capacity(((t_to - t_from + 1).max(0) as usize) * tl.d());
        for t in t_from..=t_to {
            events.extend(tl.transition(t).iter().map(analyze));
        }
        Self { n: tl.n(), d: tl.d(), t_from, t_to, events }
    }

    /// Global index of the small step `(t, i)` within this run.
    pub fn index(&self, t: i64, i: usize) -> usize {
        (t - self.t_from) as usize * self.d + (i - 1)
    }

    /// All collisions in order of occurrence.
    pub fn collisions(&self) -> Vec<Collision> {
        self.events.iter().flat_map(|e| e.collisions.iter().cloned()).collect()
    }

    /// Number of distinct vertices coin `c` (1-based) occupies over the small
    /// steps `g0..=g1`.
    pub fn distinct_vertices(&self, coin: usize, g0: usize, g1: usize) -> usize {
        let (lo, hi) = self.events[g0..=g1]
            .iter()
            .map(|e| e.positions[coin - 1])
            .fold((usize::MAX, 0), |(lo, hi), p| (lo.min(p), hi.max(p)));
        hi - lo + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FenceEdge {
    pub lower: usize,
    pub upper: usize,
    /// Coin shared by the two collisions (1-based).
    pub coin: usize,
    pub energy: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diamond {
    pub bottom: usize,
    pub left: usize,
    pub right: usize,
    pub top: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HalfDiamond {
    pub bottom: usize,
    pub middle: usize,
    pub top: usize,
}

/// A finite window of the Hasse diagram of collisions.
///
/// Cover relations are exact for every pair of nodes in the window, since
/// any chain between two collisions only passes through collisions that
/// happen in between.
#[derive(Debug, Clone, Serialize)]
pub struct HasseFence {
    pub n: usize,
    pub d: usize,
    /// Period of the timeline in time steps.
    pub period: i64,
    pub t_from: i64,
    pub t_to: i64,
    pub nodes: Vec<Collision>,
    pub edges: Vec<FenceEdge>,
    /// Next collision with the same set of coins, if inside the window.
    pub phi: Vec<Option<usize>>,
    #[serde(skip)]
    run: Run,
    #[serde(skip)]
    steps: Vec<usize>,
    #[serde(skip)]
    per_coin: Vec<Vec<usize>>,
    #[serde(skip)]
    up: Vec<Vec<usize>>,
    #[serde(skip)]
    energy: BTreeMap<(usize, usize), usize>,
}

impl HasseFence {
    /// Build the fence over `periods` full periods of the timeline.
    pub fn build(tl: &mut Timeline, periods: usize) -> Result<Self> {
        let p = tl.period()?;
        Self::build_range(tl, p, 1, p * periods as i64)
    }

    /// Build over an explicit time range; `period` is recorded, not checked.
    pub fn build_range(tl: &mut Timeline, period: i64, t_from: i64, t_to: i64) -> Result<Self> {
        if t_to - t_from > window_cap(tl.n(), tl.d()) * 4 {
            return Err(Error::WindowExhausted { steps: (t_to - t_from) as usize });
        }
        let run = Run::simulate(tl, t_from, t_to);
        Ok(Self::from_run(run, period))
    }

    pub fn from_run(run: Run, period: i64) -> Self {
        let (n, d) = (run.n, run.d);
        let mut nodes = Vec::new();
        let mut steps = Vec::new();
        for (g, e) in run.events.iter().enumerate() {
            for c in &e.collisions {
                nodes.push(c.clone());
                steps.push(g);
            }
        }
        let m = nodes.len();
        let mut per_coin = vec![Vec::new(); d + 1];
        for (k, c) in nodes.iter().enumerate() {
            for &coin in &c.coins {
                per_coin[coin].push(k);
            }
        }
        // Candidate covers: consecutive collisions of one coin.
        let mut cand: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (coin, list) in per_coin.iter().enumerate() {
            for w in list.windows(2) {
                cand.entry((w[0], w[1])).or_insert(coin);
            }
        }
        let mut out_adj = vec![Vec::new(); m];
        for &(a, b) in cand.keys() {
            out_adj[a].push(b);
        }
        // Descendant sets, processed latest first.
        let words = m.div_ceil(64).max(1);
        let mut below = vec![vec![0u64; words]; m];
        for a in (0..m).rev() {
            let mut acc = vec![0u64; words];
            for &b in &out_adj[a] {
                acc[b / 64] |= 1 << (b % 64);
                for (x, y) in acc.iter_mut().zip(&below[b]) {
                    *x |= *y;
                }
            }
            below[a] = acc;
        }
        let mut edges = Vec::new();
        let mut up = vec![Vec::new(); m];
        let mut energy = BTreeMap::new();
        for (&(a, b), &coin) in &cand {
            let via_other = out_adj[a].iter().any(|&x| x != b && below[x][b / 64] >> (b % 64) & 1 == 1);
            if via_other {
                continue;
            }
            let e = run.distinct_vertices(coin, steps[a], steps[b]);
            edges.push(FenceEdge { lower: a, upper: b, coin, energy: e });
            up[a].push(b);
            energy.insert((a, b), e);
        }
        let mut phi = vec![None; m];
        for a in 0..m {
            phi[a] = (a + 1..m).find(|&b| nodes[b].coins == nodes[a].coins);
        }
        let _ = n;
        Self { n, d, period, t_from: run.t_from, t_to: run.t_to, nodes, edges, phi, run, steps, per_coin, up, energy }
    }

    pub fn energy(&self, lower: usize, upper: usize) -> Option<usize> {
        self.energy.get(&(lower, upper)).copied()
    }

    pub fn covers(&self, a: usize) -> &[usize] {
        &self.up[a]
    }

    pub fn run(&self) -> &Run {
        &self.run
    }

    /// Next collision of `coin` strictly after node `a`.
    pub fn next_of_coin(&self, coin: usize, a: usize) -> Option<usize> {
        let list = &self.per_coin[coin];
        let k = list.iter().position(|&x| x == a)?;
        list.get(k + 1).copied()
    }

    pub fn diamonds(&self) -> Vec<Diamond> {
        let mut out = Vec::new();
        for a in 0..self.nodes.len() {
            let ups = &self.up[a];
            for (x, &b) in ups.iter().enumerate() {
                for &c in &ups[x + 1..] {
                    for &top in &self.up[b] {
                        if self.up[c].contains(&top) {
                            let (left, right) = if self.nodes[b].coins[0] < self.nodes[c].coins[0] { (b, c) } else { (c, b) };
                            out.push(Diamond { bottom: a, left, right, top });
                        }
                    }
                }
            }
        }
        out
    }

    pub fn half_diamonds(&self) -> Vec<HalfDiamond> {
        let mut out = Vec::new();
        for a in 0..self.nodes.len() {
            let ka = self.nodes[a].kind;
            if !ka.is_wall() {
                continue;
            }
            for &b in &self.up[a] {
                for &top in &self.up[b] {
                    if self.nodes[top].kind == ka {
                        out.push(HalfDiamond { bottom: a, middle: b, top });
                    }
                }
            }
        }
        out
    }

    /// Opposite edges of every diamond carry equal energies.
    pub fn diamond_law(&self) -> bool {
        self.diamonds().iter().all(|q| {
            self.energy(q.bottom, q.left) == self.energy(q.right, q.top)
                && self.energy(q.bottom, q.right) == self.energy(q.left, q.top)
        })
    }

    /// Both edges of every half-diamond carry equal energies.
    pub fn half_diamond_law(&self) -> bool {
        self.half_diamonds().iter().all(|h| self.energy(h.bottom, h.middle) == self.energy(h.middle, h.top))
    }

    /// The time between bottom and top of a half-diamond of energy `m` is `m(n-d)`.
    pub fn half_diamond_timing(&self) -> bool {
        let nd = (self.n - self.d) as i64;
        self.half_diamonds().iter().all(|h| match self.energy(h.bottom, h.middle) {
            Some(m) => self.nodes[h.top].t - self.nodes[h.bottom].t == m as i64 * nd,
            None => false,
        })
    }

    /// Try to read a transversal starting at the left-wall collision `start`.
    pub fn transversal_from(&self, start: usize) -> Option<Transversal> {
        if self.nodes[start].kind != CollisionKind::LeftWall {
            return None;
        }
        let mut chain = vec![start];
        let mut energies = Vec::with_capacity(self.d);
        for j in 1..=self.d {
            let prev = *chain.last().expect("nonempty");
            let next = self.next_of_coin(j, prev)?;
            let want = if j == self.d { CollisionKind::RightWall } else { CollisionKind::TwoCoins(j) };
            if self.nodes[next].kind != want {
                return None;
            }
            energies.push(self.energy(prev, next)?);
            chain.push(next);
        }
        let energy = Composition::new(energies).ok()?;
        Some(Transversal { nodes: chain, energy })
    }

    /// The earliest transversal in the window.
    pub fn transversal(&self) -> Result<Transversal> {
        (0..self.nodes.len())
            .find_map(|a| self.transversal_from(a))
            .ok_or_else(|| Error::NoTransversal(format!("window {}..={}", self.t_from, self.t_to)))
    }

    /// `φ` applied node by node; `None` if it leaves the window or is not a
    /// saturated chain.
    pub fn phi_of(&self, tr: &Transversal) -> Option<Transversal> {
        let nodes: Vec<usize> = tr.nodes.iter().map(|&a| self.phi[a]).collect::<Option<_>>()?;
        let mut energies = Vec::with_capacity(self.d);
        for w in nodes.windows(2) {
            energies.push(self.energy(w[0], w[1])?);
        }
        Some(Transversal { nodes, energy: Composition::new(energies).ok()? })
    }

    /// Collision times in the window, for schedules.
    pub fn schedule(&self) -> Vec<(i64, usize, CollisionKind)> {
        self.nodes.iter().map(|c| (c.t, c.step, c.kind)).collect()
    }

    /// Global small-step index of node `a`.
    pub fn step_index(&self, a: usize) -> usize {
        self.steps[a]
    }
}

/// A saturated chain from a left-wall collision to a right-wall collision
/// passing once through each pair of neighboring coins.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Transversal {
    pub nodes: Vec<usize>,
    pub energy: Composition,
}

/// Build a fence long enough to contain a transversal and its image under
/// `φ`, doubling the window until it does.
pub fn fence_with_transversal(tl: &mut Timeline) -> Result<(HasseFence, Transversal)> {
    let p = tl.period()?;
    let (n, d) = (tl.n() as i64, tl.d() as i64);
    let cap = window_cap(n as usize, d as usize);
    let mut len = p * ((4 * n * (n - d) + 2 * n) / p + 2);
    loop {
        let fence = HasseFence::build_range(tl, p, 1, len)?;
        if let Ok(tr) = fence.transversal() {
            if fence.phi_of(&tr).is_some() {
                return Ok((fence, tr));
            }
        }
        if len > cap {
            return Err(Error::NoTransversal(format!("no transversal within {len} steps")));
        }
        len *= 2;
    }
}
