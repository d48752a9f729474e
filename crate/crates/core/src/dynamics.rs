//! Orbits of invertible maps on the space of labelings.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use num_integer::Integer;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::labeling::{factorial, Labeling};
use crate::word::OperatorWord;

pub const DEFAULT_MAX_N: usize = 9;
pub const MAX_N_ENV: &str = "TOGGLEDYN_MAX_N";

/// An in-place map on labelings.
pub type MapFn<'a> = dyn Fn(&mut Labeling) + Sync + 'a;

/// Multiset of orbit sizes with one representative per orbit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitCensus<T = Labeling> {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    #[serde(serialize_with = "sizes_as_strings")]
    pub sizes: BTreeMap<u64, u64>,
    #[serde(serialize_with = "u128_as_number")]
    pub order: u128,
    pub reps: Vec<T>,
}

fn sizes_as_strings<S: serde::Serializer>(sizes: &BTreeMap<u64, u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut m = s.serialize_map(Some(sizes.len()))?;
    for (k, v) in sizes {
        m.serialize_entry(&k.to_string(), v)?;
    }
    m.end()
}

fn u128_as_number<S: serde::Serializer>(x: &u128, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u128(*x)
}

impl<T> OrbitCensus<T> {
    /// Build from `(size, representative)` pairs; `order` is the lcm of sizes.
    pub fn from_orbits(n: usize, word: Option<String>, orbits: Vec<(u64, T)>) -> Self {
        let mut sizes = BTreeMap::new();
        let mut reps = Vec::with_capacity(orbits.len());
        let mut order: u128 = 1;
        for (size, rep) in orbits {
            *sizes.entry(size).or_insert(0) += 1;
            order = order.lcm(&(size as u128));
            reps.push(rep);
        }
        Self { n, word, sizes, order, reps }
    }

    pub fn total(&self) -> u64 {
        self.sizes.iter().map(|(s, m)| s * m).sum()
    }

    pub fn orbit_count(&self) -> u64 {
        self.sizes.values().sum()
    }

    /// Number of fixed points of `f^k`: orbits whose size divides `k`.
    pub fn fixed_points(&self, k: u64) -> u64 {
        self.sizes.iter().filter(|(&s, _)| k.is_multiple_of(s)).map(|(s, m)| s * m).sum()
    }

    pub fn divisible_by(&self, m: u64) -> bool {
        divisibility_check(self, m)
    }
}

pub fn divisibility_check<T>(census: &OrbitCensus<T>, m: u64) -> bool {
    census.sizes.keys().all(|s| s % m == 0)
}

#[derive(Debug, Clone, Copy)]
pub struct CensusOptions {
    pub bound: usize,
    pub force: bool,
    pub parallel: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        let bound = std::env::var(MAX_N_ENV).ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_MAX_N);
        Self { bound, force: false, parallel: false }
    }
}

impl CensusOptions {
    pub fn parallel() -> Self {
        Self { parallel: true, ..Self::default() }
    }

    fn admit(&self, n: usize) -> Result<()> {
        if n > self.bound && !self.force {
            return Err(Error::BoundExceeded { n, bound: self.bound });
        }
        if n > 12 {
            return Err(Error::OutOfRange(format!("n = {n} is too large to enumerate")));
        }
        Ok(())
    }
}

/// Forward orbit of `sigma` up to (excluding) its first return.
pub fn orbit_of(sigma: &Labeling, g: &Graph, w: &OperatorWord) -> Result<Vec<Labeling>> {
    if sigma.n() != w.n() || g.n() != w.n() {
        return Err(Error::SizeMismatch { expected: w.n(), got: sigma.n() });
    }
    Ok(orbit_of_map(sigma, &|s: &mut Labeling| w.apply_in_place(s, g)))
}

pub fn orbit_of_map(sigma: &Labeling, f: &MapFn) -> Vec<Labeling> {
    let mut out = vec![sigma.clone()];
    let mut cur = sigma.clone();
    loop {
        f(&mut cur);
        if cur == *sigma {
            return out;
        }
        out.push(cur.clone());
    }
}

/// Census of a word acting on the labelings of `g`.
pub fn full_census(g: &Graph, w: &OperatorWord, opts: CensusOptions) -> Result<OrbitCensus> {
    if g.n() != w.n() {
        return Err(Error::SizeMismatch { expected: g.n(), got: w.n() });
    }
    let mut census = census_of_map(g.n(), &|s: &mut Labeling| w.apply_in_place(s, g), opts)?;
    census.word = Some(w.to_string());
    Ok(census)
}

pub fn order_of(g: &Graph, w: &OperatorWord, opts: CensusOptions) -> Result<u128> {
    Ok(full_census(g, w, opts)?.order)
}

/// Census of an arbitrary bijection of the labelings of size `n`.
pub fn census_of_map(n: usize, f: &MapFn, opts: CensusOptions) -> Result<OrbitCensus> {
    opts.admit(n)?;
    let total = factorial(n).expect("bounded n");
    let orbits = if opts.parallel { census_parallel(n, total, f) } else { census_sequential(n, total, f) };
    Ok(OrbitCensus::from_orbits(n, None, orbits))
}

fn census_sequential(n: usize, total: usize, f: &MapFn) -> Vec<(u64, Labeling)> {
    let mut visited = vec![0u64; total.div_ceil(64)];
    let mut orbits = Vec::new();
    for (r, start) in Labeling::all(n).enumerate() {
        if (visited[r / 64] >> (r % 64)) & 1 == 1 {
            continue;
        }
        let mut cur = start.clone();
        let mut size = 0u64;
        loop {
            let k = cur.rank();
            visited[k / 64] |= 1 << (k % 64);
            size += 1;
            f(&mut cur);
            if cur == start {
                break;
            }
        }
        orbits.push((size, start));
    }
    orbits
}

fn census_parallel(n: usize, total: usize, f: &MapFn) -> Vec<(u64, Labeling)> {
    let visited: Vec<AtomicU64> = (0..total.div_ceil(64)).map(|_| AtomicU64::new(0)).collect();
    let is_set = |k: usize| (visited[k / 64].load(Ordering::Relaxed) >> (k % 64)) & 1 == 1;
    let mut orbits: Vec<(usize, u64)> = (0..total)
        .into_par_iter()
        .with_min_len(1024)
        .filter_map(|r| {
            if is_set(r) {
                return None;
            }
            let start = Labeling::unrank(n, r).expect("rank in range");
            let mut cur = start.clone();
            let mut ranks = Vec::new();
            loop {
                ranks.push(cur.rank());
                f(&mut cur);
                if cur == start {
                    break;
                }
            }
            let owner = *ranks.iter().min().expect("orbit is nonempty");
            let bit = 1u64 << (owner % 64);
            let prev = visited[owner / 64].fetch_or(bit, Ordering::AcqRel);
            for &k in &ranks {
                visited[k / 64].fetch_or(1 << (k % 64), Ordering::Relaxed);
            }
            (prev & bit == 0).then_some((owner, ranks.len() as u64))
        })
        .collect();
    orbits.sort_unstable();
    orbits
        .into_iter()
        .map(|(owner, size)| (size, Labeling::unrank(n, owner).expect("rank in range")))
        .collect()
}

/// Orbit sizes through randomly chosen labelings, for `n` beyond the census bound.
pub fn sampled_orbit_sizes<R: rand::Rng>(g: &Graph, w: &OperatorWord, samples: usize, rng: &mut R) -> Vec<u64> {
    use rand::seq::SliceRandom;
    let n = g.n();
    (0..samples)
        .map(|_| {
            let mut img: Vec<usize> = (1..=n).collect();
            img.shuffle(rng);
            let start = Labeling::new(img).expect("shuffled identity");
            let mut cur = start.clone();
            let mut size = 0;
            loop {
                w.apply_in_place(&mut cur, g);
                size += 1;
                if cur == start {
                    return size;
                }
            }
        })
        .collect()
}

/// Walk every orbit of `f` on labelings of size `n`, in order of their
/// lexicographically smallest element.
pub fn for_each_orbit<C: FnMut(&[Labeling])>(n: usize, f: &MapFn, mut visit: C) {
    let total = factorial(n).expect("bounded n");
    let mut visited = vec![false; total];
    for (r, start) in Labeling::all(n).enumerate() {
        if visited[r] {
            continue;
        }
        let orbit = orbit_of_map(&start, f);
        for s in &orbit {
            visited[s.rank()] = true;
        }
        visit(&orbit);
    }
}

/// A rational-valued function on labelings.
pub trait Statistic: Sync {
    fn name(&self) -> String;
    fn eval(&self, sigma: &Labeling) -> Ratio<i64>;
}

/// `1_{v,i}`: 1 if vertex `v` (1-based) carries label `i`, else 0.
#[derive(Debug, Clone, Copy)]
pub struct Indicator {
    pub vertex: usize,
    pub label: usize,
}

impl Statistic for Indicator {
    fn name(&self) -> String {
        format!("1_{{v{},{}}}", self.vertex, self.label)
    }

    fn eval(&self, sigma: &Labeling) -> Ratio<i64> {
        Ratio::from_integer((sigma.label(self.vertex - 1) == self.label) as i64)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitAverage {
    pub representative: Labeling,
    pub size: usize,
    pub average: String,
    #[serde(skip)]
    pub value: Ratio<i64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HomomesyReport {
    pub statistic: String,
    pub expected: String,
    pub averages: Vec<OrbitAverage>,
    pub homomesic: bool,
}

/// Orbit averages of `stat` under `w`, compared exactly against `expected`.
pub fn homomesy_check(g: &Graph, w: &OperatorWord, stat: &dyn Statistic, expected: Ratio<i64>) -> HomomesyReport {
    homomesy_check_map(g.n(), &|s: &mut Labeling| w.apply_in_place(s, g), stat, expected)
}

pub fn homomesy_check_map(n: usize, f: &MapFn, stat: &dyn Statistic, expected: Ratio<i64>) -> HomomesyReport {
    let mut averages = Vec::new();
    for_each_orbit(n, f, |orbit| {
        let sum: Ratio<i64> = orbit.iter().map(|s| stat.eval(s)).sum();
        let value = sum / orbit.len() as i64;
        averages.push(OrbitAverage {
            representative: orbit[0].clone(),
            size: orbit.len(),
            average: value.to_string(),
            value,
        });
    });
    let homomesic = averages.iter().all(|a| a.value == expected);
    HomomesyReport { statistic: stat.name(), expected: expected.to_string(), averages, homomesic }
}
