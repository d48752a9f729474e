//! Residues of Z/nZ and the cyclic multisets `[x, y]_n`.
//!
//! Residues are always represented in the window `1..=n`, with `n` standing
//! for the class of zero.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Reduce any integer into the window `1..=n`.
#[inline]
pub fn residue(x: i64, n: usize) -> usize {
    let n = n as i64;
    ((x - 1).rem_euclid(n) + 1) as usize
}

/// The multiset obtained by reducing `{x, x+1, ..., y}` modulo `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclicInterval {
    pub x: i64,
    pub y: i64,
    pub n: usize,
}

impl CyclicInterval {
    pub fn new(x: i64, y: i64, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfRange("modulus must be positive".into()));
        }
        if x > y {
            return Err(Error::OutOfRange(format!("interval [{x},{y}] has x > y")));
        }
        Ok(Self { x, y, n })
    }

    pub fn len(&self) -> usize {
        (self.y - self.x + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of `k` in `x..=y` with `k ≡ r (mod n)`.
    pub fn multiplicity(&self, r: usize) -> usize {
        multiplicity_in(self.x, self.y, self.n, r)
    }

    /// The residues in the order `x, x+1, ..., y`.
    pub fn residues(&self) -> impl Iterator<Item = usize> + '_ {
        (self.x..=self.y).map(move |k| residue(k, self.n))
    }

    /// Size of the intersection with a set of residues, counted with
    /// multiplicity in the multiset.
    pub fn intersect_count(&self, set: &[usize]) -> usize {
        intersect_count(self.x, self.y, self.n, set)
    }
}

fn multiplicity_in(x: i64, y: i64, n: usize, r: usize) -> usize {
    if x > y {
        return 0;
    }
    // count k in [x, y] with k ≡ r (mod n)
    let n_i = n as i64;
    let r = (r as i64).rem_euclid(n_i);
    let first = x + (r - x).rem_euclid(n_i);
    if first > y {
        0
    } else {
        ((y - first) / n_i + 1) as usize
    }
}

/// Like [`CyclicInterval::intersect_count`], but an empty range (`x > y`)
/// is allowed and counts as zero.
pub fn intersect_count(x: i64, y: i64, n: usize, set: &[usize]) -> usize {
    let mut seen = vec![false; n + 1];
    let mut total = 0;
    for &r in set {
        let r = residue(r as i64, n);
        if !seen[r] {
            seen[r] = true;
            total += multiplicity_in(x, y, n, r);
        }
    }
    total
}

/// `[[x]]`: the integer nearest to `x`, with exact halves rounded down.
pub fn rounded_nearest(x: Ratio<i64>) -> i64 {
    // ceil(x - 1/2) = ceil((2p - q) / 2q)
    let p = *x.numer();
    let q = *x.denom();
    let num = 2 * p - q;
    let den = 2 * q;
    num_integer::Integer::div_ceil(&num, &den)
}
