//! Standardizations of a timeline and the map from `Φ_{n,d}`-orbits to
//! rotation orbits of compositions.

use std::collections::BTreeMap;

use serde::Serialize;

use super::fence::fence_with_transversal;
use super::Timeline;
use crate::composition::Composition;
use crate::cyclic::residue;
use crate::dynamics::for_each_orbit;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::labeling::{standardize, Labeling};
use crate::promotion::phi_word;
use crate::toggle::cyc_pow;

/// Standardization of `σ_t^{-1}(t+d), ..., σ_t^{-1}(t+1)`: the stone-to-coin
/// color matching.
pub fn stand_at(tl: &mut Timeline, t: i64) -> Vec<usize> {
    let (n, d) = (tl.n(), tl.d());
    let sigma = tl.state(t);
    let seq: Vec<usize> = (1..=d as i64).rev().map(|j| sigma.vertex_of(residue(t + j, n))).collect();
    standardize(&seq)
}

pub fn stand(tl: &mut Timeline) -> Vec<usize> {
    stand_at(tl, 0)
}

/// Standardization of `σ_t^{-1}(1), ..., σ_t^{-1}(t), σ_t^{-1}(t+d+1), ..., σ_t^{-1}(n)`,
/// read literally; only meaningful for `0 <= t <= n-d`.
pub fn standbar_in_label_order(tl: &mut Timeline, t: i64) -> Vec<usize> {
    let (n, d) = (tl.n() as i64, tl.d() as i64);
    assert!((0..=n - d).contains(&t), "label-order reading needs 0 <= t <= n-d");
    let sigma = tl.state(t);
    let seq: Vec<usize> = (1..=t).chain(t + d + 1..=n).map(|j| sigma.vertex_of(j as usize)).collect();
    standardize(&seq)
}

/// The off-stone standardization at any time `t`. Writing `t = q(n-d) + r`
/// with `0 <= r < n-d`, the state `(σ_t, t)` corresponds to `(cyc^{-q(n-d)} σ_t, r)`
/// in the shifted timeline, where the literal reading applies.
pub fn standbar_at(tl: &mut Timeline, t: i64) -> Vec<usize> {
    let (n, d) = (tl.n(), tl.d() as i64);
    let nd = n as i64 - d;
    let r = t.rem_euclid(nd);
    let shifted = cyc_pow(tl.state(t), -(t - r));
    let seq: Vec<usize> = (1..=r).chain(r + d + 1..=n as i64).map(|j| shifted.vertex_of(j as usize)).collect();
    standardize(&seq)
}

pub fn standbar(tl: &mut Timeline) -> Vec<usize> {
    standbar_at(tl, 0)
}

/// `δ ∘ σ` with `δ(i) = d + 1 - i` modulo `n`.
pub fn delta(sigma: &Labeling, d: usize) -> Labeling {
    let n = sigma.n();
    let map: Vec<usize> = (1..=n as i64).map(|x| residue(d as i64 + 1 - x, n)).collect();
    sigma.relabel(&map).expect("δ is a bijection")
}

/// Energy composition of the earliest transversal of `T_σ`.
pub fn energy_of(sigma: &Labeling, d: usize) -> Result<Composition> {
    let mut tl = Timeline::new(sigma.clone(), d)?;
    let (_, tr) = fence_with_transversal(&mut tl)?;
    Ok(tr.energy)
}

/// `Ω̃(σ)`, named by the least rotation in the orbit.
pub fn omega_tilde(sigma: &Labeling, d: usize) -> Result<Composition> {
    Ok(energy_of(sigma, d)?.orbit_key())
}

#[derive(Debug, Clone, Serialize)]
pub struct PhiOrbitImage {
    pub size: usize,
    pub representative: Labeling,
    pub omega: Composition,
    pub omega_size: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct OmegaReport {
    pub n: usize,
    pub d: usize,
    pub orbits: Vec<PhiOrbitImage>,
    /// Number of `Φ`-orbits over each rotation orbit.
    pub fibers: BTreeMap<String, usize>,
    /// `|Ω(O)| = (d/n)|O|` for every orbit.
    pub scaling: bool,
    /// Every fiber has `d!(n-d)!` orbits.
    pub fibers_uniform: bool,
    /// `Ω̃` is constant on each orbit that was checked member by member.
    pub well_defined: bool,
    /// Every rotation orbit is hit.
    pub surjective: bool,
}

impl OmegaReport {
    pub fn passed(&self) -> bool {
        self.scaling && self.fibers_uniform && self.well_defined && self.surjective
    }
}

/// Compute `Ω` on every `Φ_{n,d}`-orbit of `Λ_{Path_n}`. With
/// `check_members`, `Ω̃` is evaluated on every labeling, not just one per
/// orbit.
pub fn omega_census(n: usize, d: usize, check_members: bool) -> Result<OmegaReport> {
    let g = Graph::path(n)?;
    let phi = phi_word(n, d)?;
    let mut orbits = Vec::new();
    let mut failure: Option<Error> = None;
    let mut well_defined = true;
    for_each_orbit(n, &|s: &mut Labeling| phi.apply_in_place(s, &g), |orbit| {
        if failure.is_some() {
            return;
        }
        match omega_tilde(&orbit[0], d) {
            Ok(w) => {
                if check_members {
                    for sigma in &orbit[1..] {
                        match omega_tilde(sigma, d) {
                            Ok(x) if x == w => {}
                            Ok(_) => well_defined = false,
                            Err(e) => failure = Some(e),
                        }
                    }
                }
                let omega_size = w.rot_orbit().len();
                orbits.push(PhiOrbitImage { size: orbit.len(), representative: orbit[0].clone(), omega: w, omega_size });
            }
            Err(e) => failure = Some(e),
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let mut fibers: BTreeMap<Composition, usize> = BTreeMap::new();
    for o in &orbits {
        *fibers.entry(o.omega.clone()).or_insert(0) += 1;
    }
    let scaling = orbits.iter().all(|o| o.omega_size * n == d * o.size);
    let expect = factorial(d) * factorial(n - d);
    let fibers_uniform = fibers.values().all(|&c| c == expect);
    let keys: std::collections::BTreeSet<Composition> =
        Composition::all(n, d).into_iter().map(|c| c.orbit_key()).collect();
    let surjective = keys.iter().all(|k| fibers.contains_key(k));
    Ok(OmegaReport {
        n,
        d,
        orbits,
        fibers: fibers.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        scaling,
        fibers_uniform,
        well_defined,
        surjective,
    })
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standardization_example() {
        assert_eq!(standardize(&[3, 5, 1, 6]), vec![2, 3, 1, 4]);
    }

    #[test]
    fn delta_is_an_involution() {
        for sigma in Labeling::all(5) {
            assert_eq!(delta(&delta(&sigma, 2), 2), sigma);
        }
    }

    #[test]
    fn readings_agree_on_the_literal_range() {
        for sigma in Labeling::all(6).step_by(11) {
            let mut tl = Timeline::new(sigma, 2).unwrap();
            for t in 0..4 {
                assert_eq!(standbar_at(&mut tl, t), standbar_in_label_order(&mut tl, t));
            }
        }
    }

    #[test]
    fn omega_counts_small() {
        for n in 2..=5 {
            for d in 1..n {
                let r = omega_census(n, d, true).unwrap();
                assert!(r.passed(), "n={n} d={d}: {:?}", r.fibers);
            }
        }
    }
}
