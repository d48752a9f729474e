use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A bijection from the vertices `v_1..v_n` to labels `1..=n`.
///
/// The label-to-vertex inverse is cached alongside the image. Equality and
/// hashing only look at the image.
#[derive(Clone)]
pub struct Labeling {
    image: Vec<u8>,
    pos: Vec<u8>,
}

impl Labeling {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        if n == 0 || n > 64 {
            return Err(Error::InvalidLabeling(format!("length {n} not in 1..=64")));
        }
        let mut pos = vec![u8::MAX; n];
        for (v, &label) in image.iter().enumerate() {
            if label == 0 || label > n {
                return Err(Error::LabelOutOfRange { label: label as i64, n });
            }
            if pos[label - 1] != u8::MAX {
                return Err(Error::InvalidLabeling(format!("label {label} used twice")));
            }
            pos[label - 1] = v as u8;
        }
        Ok(Self { image: image.into_iter().map(|l| l as u8).collect(), pos })
    }

    pub fn identity(n: usize) -> Self {
        Self::new((1..=n).collect()).expect("identity is a labeling")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.image.len()
    }

    /// Label of the 0-based vertex `v`.
    #[inline]
    pub fn label(&self, v: usize) -> usize {
        self.image[v] as usize
    }

    /// 0-based vertex carrying `label` (in `1..=n`).
    #[inline]
    pub fn vertex_of(&self, label: usize) -> usize {
        self.pos[label - 1] as usize
    }

    pub fn image(&self) -> Vec<usize> {
        self.image.iter().map(|&l| l as usize).collect()
    }

    /// `σ^{-1}` in one-line form: entry `i-1` is the 1-based vertex with label `i`.
    pub fn inverse_image(&self) -> Vec<usize> {
        self.pos.iter().map(|&v| v as usize + 1).collect()
    }

    /// Exchange the labels `a` and `b` wherever they sit.
    #[inline]
    pub fn swap_labels(&mut self, a: usize, b: usize) {
        let va = self.pos[a - 1] as usize;
        let vb = self.pos[b - 1] as usize;
        self.image.swap(va, vb);
        self.pos.swap(a - 1, b - 1);
    }

    /// Add `k` to every label modulo `n`.
    pub fn shift_in_place(&mut self, k: i64) {
        let n = self.n() as i64;
        let k = k.rem_euclid(n);
        if k == 0 {
            return;
        }
        for l in self.image.iter_mut() {
            *l = (((*l as i64 - 1 + k) % n) + 1) as u8;
        }
        self.pos.rotate_right(k as usize);
    }

    /// Replace label `l` by `map[l-1]` for every label; `map` must be a permutation.
    pub fn relabel(&self, map: &[usize]) -> Result<Self> {
        Self::new(self.image.iter().map(|&l| map[l as usize - 1]).collect())
    }

    /// Rank in lexicographic order of one-line images, via the Lehmer code.
    pub fn rank(&self) -> usize {
        let n = self.n();
        let mut used: u64 = 0;
        let mut rank = 0usize;
        for (i, &l) in self.image.iter().enumerate() {
            let l = l as u32 - 1;
            let smaller_unused = l - (used & ((1u64 << l) - 1)).count_ones();
            rank = rank * (n - i) + smaller_unused as usize;
            used |= 1 << l;
        }
        rank
    }

    pub fn unrank(n: usize, mut rank: usize) -> Result<Self> {
        let total = factorial(n).ok_or_else(|| Error::OutOfRange(format!("{n}! overflows")))?;
        if rank >= total {
            return Err(Error::OutOfRange(format!("rank {rank} >= {n}!")));
        }
        let mut digits = vec![0usize; n];
        for i in (0..n).rev() {
            let base = n - i;
            digits[i] = rank % base;
            rank /= base;
        }
        let mut avail: Vec<usize> = (1..=n).collect();
        let image = digits.into_iter().map(|d| avail.remove(d)).collect();
        Self::new(image)
    }

    /// All labelings of `n` vertices in lexicographic order.
    pub fn all(n: usize) -> AllLabelings {
        AllLabelings { next: Some((1..=n as u8).collect()) }
    }
}

pub fn factorial(n: usize) -> Option<usize> {
    (1..=n).try_fold(1usize, |acc, k| acc.checked_mul(k))
}

/// Step `a` to the next permutation in lexicographic order; false at the end.
pub fn next_permutation<T: Ord>(a: &mut [T]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

pub struct AllLabelings {
    next: Option<Vec<u8>>,
}

impl Iterator for AllLabelings {
    type Item = Labeling;

    fn next(&mut self) -> Option<Labeling> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        let mut pos = vec![0u8; cur.len()];
        for (v, &l) in cur.iter().enumerate() {
            pos[l as usize - 1] = v as u8;
        }
        Some(Labeling { image: cur, pos })
    }
}

impl PartialEq for Labeling {
    fn eq(&self, other: &Self) -> bool {
        self.image == other.image
    }
}

impl Eq for Labeling {}

impl Hash for Labeling {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.image.hash(state);
    }
}

impl PartialOrd for Labeling {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Labeling {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.image.cmp(&other.image)
    }
}

impl fmt::Debug for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Labeling({self})")
    }
}

impl fmt::Display for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.image.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Labeling {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let image = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse { what: "labeling", detail: t.to_string() })
            })
            .collect::<Result<Vec<_>>>()?;
        Labeling::new(image)
    }
}

impl Serialize for Labeling {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.image().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Labeling {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let image = Vec::<usize>::deserialize(deserializer)?;
        Labeling::new(image).map_err(serde::de::Error::custom)
    }
}

/// The permutation of `[r]` with the same relative order as `seq`.
pub fn standardize(seq: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..seq.len()).collect();
    order.sort_by_key(|&i| seq[i]);
    let mut out = vec![0; seq.len()];
    for (rank, i) in order.into_iter().enumerate() {
        out[i] = rank + 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijections() {
        assert!(Labeling::new(vec![1, 1, 3]).is_err());
        assert!(Labeling::new(vec![0, 1, 2]).is_err());
        assert!(Labeling::new(vec![1, 2, 4]).is_err());
        assert!("1,2,x".parse::<Labeling>().is_err());
    }

    #[test]
    fn text_round_trip() {
        let s: Labeling = "7,1,4,3,5,6,9,2,8".parse().unwrap();
        assert_eq!(s.to_string(), "7,1,4,3,5,6,9,2,8");
        assert_eq!(s.vertex_of(7), 0);
        assert_eq!(s.inverse_image()[0], 2);
    }

    #[test]
    fn rank_matches_enumeration_order() {
        for n in 1..=6 {
            for (r, l) in Labeling::all(n).enumerate() {
                assert_eq!(l.rank(), r);
                assert_eq!(Labeling::unrank(n, r).unwrap(), l);
            }
            assert_eq!(Labeling::all(n).count(), factorial(n).unwrap());
        }
    }

    #[test]
    fn shift_keeps_inverse_in_sync() {
        let mut s: Labeling = "2,4,1,3".parse().unwrap();
        s.shift_in_place(1);
        assert_eq!(s.to_string(), "3,1,2,4");
        for l in 1..=4 {
            assert_eq!(s.label(s.vertex_of(l)), l);
        }
        s.shift_in_place(-5);
        assert_eq!(s.to_string(), "2,4,1,3");
    }

    #[test]
    fn standardization() {
        assert_eq!(standardize(&[3, 5, 1, 6]), vec![2, 3, 1, 4]);
    }
}
