//! Compositions of `n` into `d` parts and their rotation.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dynamics::OrbitCensus;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Composition {
    parts: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Composition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Composition::new(parts)
    }
}

impl From<Composition> for Vec<usize> {
    fn from(c: Composition) -> Self {
        c.parts
    }
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::OutOfRange(format!("{parts:?} is not a composition")));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn d(&self) -> usize {
        self.parts.len()
    }

    /// `(a_1, ..., a_d) ↦ (a_2, ..., a_d, a_1)`.
    pub fn rot(&self) -> Composition {
        let mut parts = self.parts.clone();
        parts.rotate_left(1);
        Composition { parts }
    }

    pub fn reversed(&self) -> Composition {
        let mut parts = self.parts.clone();
        parts.reverse();
        Composition { parts }
    }

    /// The rotation orbit, starting from `self`.
    pub fn rot_orbit(&self) -> Vec<Composition> {
        let mut out = vec![self.clone()];
        let mut cur = self.rot();
        while cur != *self {
            out.push(cur.clone());
            cur = cur.rot();
        }
        out
    }

    /// Lexicographically smallest rotation, identifying the orbit.
    pub fn orbit_key(&self) -> Composition {
        self.rot_orbit().into_iter().min().expect("orbit is nonempty")
    }

    /// All compositions of `n` into `d` parts, lexicographically.
    pub fn all(n: usize, d: usize) -> Vec<Composition> {
        fn rec(left: usize, parts_left: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
            if parts_left == 1 {
                cur.push(left);
                out.push(Composition { parts: cur.clone() });
                cur.pop();
                return;
            }
            for first in 1..=left.saturating_sub(parts_left - 1) {
                cur.push(first);
                rec(left - first, parts_left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if d >= 1 && d <= n {
            rec(n, d, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Orbits of `Rot_{n,d}` on `Comp_d(n)`, represented by their smallest member.
pub fn rot_census(n: usize, d: usize) -> OrbitCensus<Composition> {
    let mut seen = BTreeSet::new();
    let mut orbits = Vec::new();
    for c in Composition::all(n, d) {
        if seen.contains(&c) {
            continue;
        }
        let orbit = c.rot_orbit();
        let size = orbit.len() as u64;
        seen.extend(orbit);
        orbits.push((size, c));
    }
    OrbitCensus::from_orbits(n, Some(format!("rot d={d}")), orbits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> u64 {
        (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
    }

    #[test]
    fn rotation_example() {
        let c = Composition::new(vec![2, 1, 3]).unwrap();
        assert_eq!(c.rot().parts(), &[1, 3, 2]);
        assert_eq!(c.rot().rot().parts(), &[3, 2, 1]);
        assert_eq!(c.rot().rot().rot(), c);
    }

    #[test]
    fn counts() {
        for n in 1..=10 {
            for d in 1..=n {
                let all = Composition::all(n, d);
                assert_eq!(all.len() as u64, binom(n - 1, d - 1));
                assert!(all.iter().all(|c| c.n() == n && c.d() == d));
                assert_eq!(rot_census(n, d).total(), binom(n - 1, d - 1));
            }
        }
    }

    #[test]
    fn rot_has_order_dividing_d() {
        for c in Composition::all(8, 4) {
            let mut x = c.clone();
            for _ in 0..4 {
                x = x.rot();
            }
            assert_eq!(x, c);
        }
    }

    #[test]
    fn rejects_zero_parts() {
        assert!(Composition::new(vec![1, 0]).is_err());
        assert!(Composition::new(vec![]).is_err());
    }
}
