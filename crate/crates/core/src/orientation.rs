//! Bijections `π: [n] → Z/nZ` and acyclic orientations of `Cycle_n`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclic::residue;
use crate::error::{Error, Result};

/// A bijection `π: [n] → Z/nZ`, stored as `π(1), ..., π(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Bijection {
    pi: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Bijection {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Bijection::new(v)
    }
}

impl From<Bijection> for Vec<usize> {
    fn from(b: Bijection) -> Self {
        b.pi
    }
}

impl Bijection {
    pub fn new(pi: Vec<usize>) -> Result<Self> {
        let n = pi.len();
        let mut seen = vec![false; n + 1];
        for &x in &pi {
            if x == 0 || x > n || seen[x] {
                return Err(Error::InvalidBijection(format!("{pi:?} is not a permutation of 1..={n}")));
            }
            seen[x] = true;
        }
        Ok(Self { pi })
    }

    pub fn identity(n: usize) -> Self {
        Self { pi: (1..=n).collect() }
    }

    pub fn n(&self) -> usize {
        self.pi.len()
    }

    pub fn values(&self) -> &[usize] {
        &self.pi
    }

    /// `π^{-1}` in one-line form.
    pub fn inverse(&self) -> Vec<usize> {
        let mut inv = vec![0; self.n()];
        for (j, &x) in self.pi.iter().enumerate() {
            inv[x - 1] = j + 1;
        }
        inv
    }

    /// Cyclic descents of `π^{-1}`: `i` with `π^{-1}(i) > π^{-1}(i+1)`, indices mod n.
    pub fn cyclic_descents_of_inverse(&self) -> Vec<usize> {
        let inv = self.inverse();
        let n = self.n();
        (1..=n).filter(|&i| inv[i - 1] > inv[residue(i as i64 + 1, n) - 1]).collect()
    }

    /// All bijections of `[n]`, in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Bijection> {
        crate::labeling::Labeling::all(n).map(|l| Bijection { pi: l.image() })
    }
}

impl fmt::Display for Bijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pi.iter().map(|x| x.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// An acyclic orientation of `Cycle_n`, recorded by the set of edges
/// `{i, i+1}` oriented counterclockwise (`i+1 → i`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AcyclicOrientation {
    n: usize,
    ccw: BTreeSet<usize>,
}

impl AcyclicOrientation {
    pub fn new(n: usize, ccw: impl IntoIterator<Item = usize>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidOrientation("cycle needs n >= 2".into()));
        }
        let ccw: BTreeSet<usize> = ccw.into_iter().collect();
        if let Some(&bad) = ccw.iter().find(|&&i| i == 0 || i > n) {
            return Err(Error::InvalidOrientation(format!("edge index {bad} outside 1..={n}")));
        }
        if ccw.is_empty() || ccw.len() == n {
            return Err(Error::InvalidOrientation("all edges point the same way".into()));
        }
        Ok(Self { n, ccw })
    }

    /// `α_π`: edge `{i, i+1}` points from `i` to `i+1` iff `π^{-1}(i) < π^{-1}(i+1)`.
    pub fn from_pi(pi: &Bijection) -> Self {
        Self::new(pi.n(), pi.cyclic_descents_of_inverse()).expect("α_π is acyclic")
    }

    /// The orientation with unique source `d` and unique sink `n`.
    pub fn source_d_sink_n(n: usize, d: usize) -> Result<Self> {
        if d == 0 || d >= n {
            return Err(Error::OutOfRange(format!("d = {d} not in 1..{n}")));
        }
        Self::new(n, (1..d).chain(std::iter::once(n)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of counterclockwise edges.
    pub fn d(&self) -> usize {
        self.ccw.len()
    }

    pub fn ccw(&self) -> &BTreeSet<usize> {
        &self.ccw
    }

    pub fn is_ccw(&self, i: usize) -> bool {
        self.ccw.contains(&residue(i as i64, self.n))
    }

    /// Arrows `(a, b)` meaning `a → b`, one per edge.
    pub fn arrows(&self) -> Vec<(usize, usize)> {
        (1..=self.n)
            .map(|i| {
                let j = residue(i as i64 + 1, self.n);
                if self.is_ccw(i) { (j, i) } else { (i, j) }
            })
            .collect()
    }

    pub fn sources(&self) -> Vec<usize> {
        (1..=self.n).filter(|&i| !self.is_ccw(i) && self.is_ccw(i + self.n - 1)).collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        (1..=self.n).filter(|&i| self.is_ccw(i) && !self.is_ccw(i + self.n - 1)).collect()
    }

    /// Reverse both edges at a source (turning it into a sink) or at a sink.
    pub fn flip(&self, i: usize) -> Result<Self> {
        let i = residue(i as i64, self.n);
        if !self.sources().contains(&i) && !self.sinks().contains(&i) {
            return Err(Error::InvalidOrientation(format!("{i} is neither a source nor a sink")));
        }
        let prev = residue(i as i64 - 1, self.n);
        let mut ccw = self.ccw.clone();
        for e in [i, prev] {
            if !ccw.remove(&e) {
                ccw.insert(e);
            }
        }
        Self::new(self.n, ccw)
    }

    /// A bijection `π` with `α_π = self`: a linear extension of the arrows,
    /// choosing the smallest available vertex at each step.
    pub fn linear_extension(&self) -> Bijection {
        let n = self.n;
        let mut indeg = vec![0usize; n + 1];
        let arrows = self.arrows();
        for &(_, b) in &arrows {
            indeg[b] += 1;
        }
        let mut ready: BTreeSet<usize> = (1..=n).filter(|&i| indeg[i] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(a) = ready.pop_first() {
            order.push(a);
            for &(x, b) in &arrows {
                if x == a {
                    indeg[b] -= 1;
                    if indeg[b] == 0 {
                        ready.insert(b);
                    }
                }
            }
        }
        Bijection::new(order).expect("acyclic orientation has a linear extension")
    }

    /// All acyclic orientations of `Cycle_n` with exactly `d` counterclockwise edges.
    pub fn all_with_d(n: usize, d: usize) -> Vec<Self> {
        (1u64..(1 << n) - 1)
            .filter(|m| m.count_ones() as usize == d)
            .map(|m| Self::new(n, (1..=n).filter(|i| (m >> (i - 1)) & 1 == 1)).expect("acyclic"))
            .collect()
    }
}
