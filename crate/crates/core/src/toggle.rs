//! Toggles, cyclic shifts and jeu de taquin moves on labelings.

use crate::cyclic::residue;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::labeling::Labeling;

fn check_size(sigma: &Labeling, g: &Graph) -> Result<()> {
    if sigma.n() != g.n() {
        return Err(Error::SizeMismatch { expected: g.n(), got: sigma.n() });
    }
    Ok(())
}

fn check_label(i: usize, n: usize) -> Result<()> {
    if i == 0 || i > n {
        return Err(Error::LabelOutOfRange { label: i as i64, n });
    }
    Ok(())
}

/// Apply `τ_i` in place; returns whether the labels were swapped.
///
/// No validation: `i` must lie in `1..=n` and `sigma` must match `g`.
#[inline]
pub fn toggle_in_place(sigma: &mut Labeling, g: &Graph, i: usize) -> bool {
    let n = sigma.n();
    let j = if i == n { 1 } else { i + 1 };
    if n < 2 || g.adjacent(sigma.vertex_of(i), sigma.vertex_of(j)) {
        return false;
    }
    sigma.swap_labels(i, j);
    true
}

pub fn toggle(sigma: &Labeling, g: &Graph, i: usize) -> Result<Labeling> {
    check_size(sigma, g)?;
    check_label(i, sigma.n())?;
    let mut out = sigma.clone();
    toggle_in_place(&mut out, g, i);
    Ok(out)
}

pub fn cyc(sigma: &Labeling) -> Labeling {
    cyc_pow(sigma, 1)
}

pub fn cyc_pow(sigma: &Labeling, k: i64) -> Labeling {
    let mut out = sigma.clone();
    out.shift_in_place(k);
    out
}

/// Try to glide `i1` through `i2`: swap them iff their vertices are adjacent.
pub fn jdt_pair(sigma: &Labeling, g: &Graph, i1: usize, i2: usize) -> Result<Labeling> {
    check_size(sigma, g)?;
    check_label(i1, sigma.n())?;
    check_label(i2, sigma.n())?;
    if i1 == i2 {
        return Err(Error::RepeatedLabel(i1));
    }
    let mut out = sigma.clone();
    jdt_pair_in_place(&mut out, g, i1, i2);
    Ok(out)
}

#[inline]
pub(crate) fn jdt_pair_in_place(sigma: &mut Labeling, g: &Graph, i1: usize, i2: usize) -> bool {
    if g.adjacent(sigma.vertex_of(i1), sigma.vertex_of(i2)) {
        sigma.swap_labels(i1, i2);
        true
    } else {
        false
    }
}

/// Glide the label `x` (mod n) through `x+1, ..., y` in turn.
pub fn jdt_interval(sigma: &Labeling, g: &Graph, x: i64, y: i64) -> Result<Labeling> {
    check_size(sigma, g)?;
    let mut out = sigma.clone();
    jdt_interval_in_place(&mut out, g, x, y)?;
    Ok(out)
}

pub(crate) fn jdt_interval_in_place(sigma: &mut Labeling, g: &Graph, x: i64, y: i64) -> Result<()> {
    let n = sigma.n();
    if x > y {
        return Err(Error::OutOfRange(format!("interval [{x},{y}] has x > y")));
    }
    if y - x + 1 > n as i64 {
        return Err(Error::IntervalTooLong { x, y, n });
    }
    let glider = residue(x, n);
    for k in x + 1..=y {
        jdt_pair_in_place(sigma, g, glider, residue(k, n));
    }
    Ok(())
}

/// The label complement `σ ↦ n+1-σ`, which conjugates `τ_i` to `τ_{n-i}`.
pub fn complement(sigma: &Labeling) -> Labeling {
    let n = sigma.n();
    Labeling::new(sigma.image().into_iter().map(|l| n + 1 - l).collect())
        .expect("complement of a labeling is a labeling")
}
