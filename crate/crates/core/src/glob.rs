//! The gliding-glob descriptions of `cyc ∘ Bro_B`.

use std::collections::BTreeSet;

use crate::cyclic::residue;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::labeling::Labeling;
use crate::promotion::{broken_arcs, IndependentSet};
use crate::toggle::jdt_interval_in_place;

/// Three-step procedure for `cyc ∘ Bro_B` on an arbitrary proper subset `B`.
pub fn glob_three_step(sigma: &Labeling, g: &Graph, b: &BTreeSet<usize>) -> Result<Labeling> {
    let n = sigma.n();
    if g.n() != n {
        return Err(Error::SizeMismatch { expected: g.n(), got: n });
    }
    // arc {a..e} = [x, y-1] with x = a, y = e + 1
    let intervals: Vec<(i64, i64)> = broken_arcs(n, b)?.into_iter().map(|(a, e)| (a, e + 1)).collect();

    let mut work = sigma.clone();
    for &(x, y) in &intervals {
        jdt_interval_in_place(&mut work, g, x, y)?;
    }
    let glob_vertices: Vec<(usize, i64)> =
        intervals.iter().map(|&(x, y)| (work.vertex_of(residue(x, n)), y)).collect();

    let mut covered = vec![false; n + 1];
    for &(x, y) in &intervals {
        for k in x..=y {
            covered[residue(k, n)] = true;
        }
    }
    let mut image = work.image();
    for label in image.iter_mut() {
        if !covered[*label] {
            *label = residue(*label as i64 + 1, n);
        }
    }
    for &(v, y) in &glob_vertices {
        image[v] = residue(y + 1, n);
    }
    Labeling::new(image)
}

/// Two-step procedure for `cyc ∘ Bro_ℛ` with `ℛ = (Z/nZ) ∖ (S - 1)`.
pub fn glob_two_step(sigma: &Labeling, g: &Graph, s: &IndependentSet) -> Result<Labeling> {
    let n = sigma.n();
    if g.n() != n || s.n() != n {
        return Err(Error::SizeMismatch { expected: n, got: g.n().min(s.n()) });
    }
    let d = s.d() as i64;
    let mut work = sigma.clone();
    for i in 1..=d {
        jdt_interval_in_place(&mut work, g, s.s(i), s.s(i + 1) - 1)?;
    }
    let globs: Vec<(usize, usize)> =
        (1..=d).map(|i| (work.vertex_of(residue(s.s(i), n)), residue(s.s(i + 1), n))).collect();
    let mut image = work.image();
    for (v, label) in globs {
        image[v] = label;
    }
    Labeling::new(image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::promotion::cyc_broken_word;
    use crate::toggle::cyc;

    #[test]
    fn worked_example() {
        let g = Graph::path(9).unwrap();
        let sigma: Labeling = "7,1,4,3,5,6,9,2,8".parse().unwrap();
        let b: BTreeSet<usize> = [1, 3, 4, 7, 9].into_iter().collect();
        let out = glob_three_step(&sigma, &g, &b).unwrap();
        assert_eq!(out.to_string(), "9,1,6,4,5,7,2,3,8");
        assert_eq!(cyc_broken_word(9, &b).unwrap().apply(&sigma, &g).unwrap(), out);
    }

    #[test]
    fn empty_b_is_cyc() {
        let g = Graph::path(5).unwrap();
        for s in Labeling::all(5) {
            assert_eq!(glob_three_step(&s, &g, &BTreeSet::new()).unwrap(), cyc(&s));
        }
    }

    #[test]
    fn two_step_matches_three_step() {
        let g = Graph::path(9).unwrap();
        let s = IndependentSet::new(9, vec![3, 7, 9]).unwrap();
        let r = s.r_set();
        let sigma: Labeling = "7,1,4,3,5,6,9,2,8".parse().unwrap();
        assert_eq!(glob_two_step(&sigma, &g, &s).unwrap(), glob_three_step(&sigma, &g, &r).unwrap());
    }
}
