//! The promotion operator family as words, plus the index sets they use.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::cyclic::{intersect_count, residue, rounded_nearest};
use crate::error::{Error, Result};
use crate::orientation::{AcyclicOrientation, Bijection};
use crate::word::OperatorWord;

/// `Pro = τ_{n-1} ⋯ τ_1`: applies `τ_1` first.
pub fn promotion_word(n: usize) -> Result<OperatorWord> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("promotion needs n >= 2, got {n}")));
    }
    Ok(OperatorWord::toggles(n, 1..n as i64))
}

/// `TPro = τ_n Pro`.
pub fn toric_word(n: usize) -> Result<OperatorWord> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("toric promotion needs n >= 2, got {n}")));
    }
    Ok(OperatorWord::toggles(n, 1..=n as i64))
}

/// `TPro_π`: applies `τ_{π(1)}` first and `τ_{π(n)}` last.
pub fn permutoric_word(pi: &Bijection) -> OperatorWord {
    OperatorWord::toggles(pi.n(), pi.values().iter().map(|&x| x as i64))
}

/// `TPro_β` through a linear extension of `β`.
pub fn permutoric_word_from_orientation(beta: &AcyclicOrientation) -> OperatorWord {
    permutoric_word(&beta.linear_extension())
}

fn check_subset(n: usize, b: &BTreeSet<usize>) -> Result<()> {
    if let Some(&x) = b.iter().find(|&&x| x == 0 || x > n) {
        return Err(Error::OutOfRange(format!("residue {x} outside 1..={n}")));
    }
    if b.len() == n {
        return Err(Error::NotProperSubset { n });
    }
    Ok(())
}

/// Maximal arcs `[a, b]` of `B` on `Cycle_n`, sorted by starting residue `a`;
/// `b` may exceed `n` when the arc wraps past `n`.
pub fn broken_arcs(n: usize, b: &BTreeSet<usize>) -> Result<Vec<(i64, i64)>> {
    check_subset(n, b)?;
    let mut arcs = Vec::new();
    for &a in b {
        let before = residue(a as i64 - 1, n);
        if b.contains(&before) {
            continue;
        }
        let mut end = a as i64;
        while b.contains(&residue(end + 1, n)) {
            end += 1;
        }
        arcs.push((a as i64, end));
    }
    Ok(arcs)
}

/// `Bro_B`: each arc `{a, ..., b}` contributes `τ_a, τ_{a+1}, ..., τ_b` in
/// application order.
pub fn broken_word(n: usize, b: &BTreeSet<usize>) -> Result<OperatorWord> {
    let arcs = broken_arcs(n, b)?;
    Ok(OperatorWord::toggles(n, arcs.into_iter().flat_map(|(a, e)| a..=e)))
}

/// `cyc ∘ Bro_B`.
pub fn cyc_broken_word(n: usize, b: &BTreeSet<usize>) -> Result<OperatorWord> {
    Ok(broken_word(n, b)?.then(&OperatorWord::cyc_pow(n, 1)))
}

/// An independent set `s_1 < ... < s_d` of `Cycle_n`, extended periodically by
/// `s_{i+d} = s_i + n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndependentSet {
    n: usize,
    s: Vec<usize>,
}

impl IndependentSet {
    pub fn new(n: usize, mut s: Vec<usize>) -> Result<Self> {
        s.sort_unstable();
        s.dedup();
        let d = s.len();
        if d == 0 || 2 * d > n {
            return Err(Error::InvalidIndependentSet(format!("need 1 <= d <= n/2, got d = {d}, n = {n}")));
        }
        if s.iter().any(|&x| x == 0 || x > n) {
            return Err(Error::InvalidIndependentSet(format!("{s:?} not within 1..={n}")));
        }
        for i in 0..d {
            let next = if i + 1 < d { s[i + 1] } else { s[0] + n };
            if next < s[i] + 2 {
                return Err(Error::InvalidIndependentSet(format!("{s:?} has adjacent elements on Cycle_{n}")));
            }
        }
        Ok(Self { n, s })
    }

    /// `s_i = [[i n / d]]` for `i = 1..d`.
    pub fn canonical(n: usize, d: usize) -> Result<Self> {
        if d == 0 || 2 * d > n {
            return Err(Error::InvalidIndependentSet(format!("need 1 <= d <= n/2, got d = {d}, n = {n}")));
        }
        let s = (1..=d as i64)
            .map(|i| residue(rounded_nearest(Ratio::new(i * n as i64, d as i64)), n))
            .collect();
        Self::new(n, s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.s.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.s
    }

    /// `s_i` for any integer `i`, using `s_{i+d} = s_i + n`.
    pub fn s(&self, i: i64) -> i64 {
        let d = self.d() as i64;
        let (q, r) = (i - 1).div_mod_floor(&d);
        self.s[r as usize] as i64 + q * self.n as i64
    }

    /// `S - 1` as residues.
    pub fn shifted_down(&self) -> BTreeSet<usize> {
        self.s.iter().map(|&x| residue(x as i64 - 1, self.n)).collect()
    }

    /// `ℛ = (Z/nZ) ∖ (S - 1)`.
    pub fn r_set(&self) -> BTreeSet<usize> {
        let sm = self.shifted_down();
        (1..=self.n).filter(|x| !sm.contains(x)).collect()
    }

    /// `ℬ = ℛ ∖ S`.
    pub fn b_set(&self) -> BTreeSet<usize> {
        let s: BTreeSet<usize> = self.s.iter().copied().collect();
        self.r_set().into_iter().filter(|x| !s.contains(x)).collect()
    }

    /// `β_S`: sources `S`, sinks `S - 1`.
    pub fn orientation(&self) -> AcyclicOrientation {
        AcyclicOrientation::new(self.n, self.shifted_down()).expect("independent set gives an acyclic orientation")
    }
}

/// `Φ_{n,d}`: for `i = 1..n-d` apply `τ_{i+d-1}, ..., τ_i`, then `cyc^d`.
pub fn phi_word(n: usize, d: usize) -> Result<OperatorWord> {
    if d == 0 || d >= n {
        return Err(Error::OutOfRange(format!("Φ needs 1 <= d <= n-1, got d = {d}, n = {n}")));
    }
    let toggles = OperatorWord::toggles(n, theta_indices(n, d, 1, d * (n - d)));
    Ok(toggles.then(&OperatorWord::cyc_pow(n, d as i64)))
}

/// Toggle index of `θ_k = τ_{q+d+1-r}` where `k = qd + r`, `1 <= r <= d`.
pub fn theta(n: usize, d: usize, k: i64) -> usize {
    let (q, r0) = (k - 1).div_mod_floor(&(d as i64));
    let r = r0 + 1;
    residue(q + d as i64 + 1 - r, n)
}

fn theta_indices(n: usize, d: usize, from: usize, to: usize) -> impl Iterator<Item = i64> {
    (from..=to).map(move |k| theta(n, d, k as i64) as i64)
}

/// The word for `TPro_β^d` with `β` the unique-source-`d`, unique-sink-`n`
/// orientation: for `i = 1..n` apply `τ_{i+d-1}, ..., τ_i`.
pub fn tpro_beta_d_word(n: usize, d: usize) -> Result<OperatorWord> {
    if d == 0 || d >= n {
        return Err(Error::OutOfRange(format!("need 1 <= d <= n-1, got d = {d}, n = {n}")));
    }
    Ok(OperatorWord::toggles(
        n,
        (1..=n as i64).flat_map(move |i| (i..i + d as i64).rev()),
    ))
}

/// `(cyc^{-1} Bro_{{1..d}}^{-1})^n`.
pub fn remark_word(n: usize, d: usize) -> Result<OperatorWord> {
    if d == 0 || d >= n {
        return Err(Error::OutOfRange(format!("need 1 <= d <= n-1, got d = {d}, n = {n}")));
    }
    let set: BTreeSet<usize> = (1..=d).collect();
    let unit = broken_word(n, &set)?.inverse().then(&OperatorWord::cyc_pow(n, -1));
    Ok(unit.pow(n as i64))
}

/// Data of the power identity for `TPro_{β_S}^γ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerDecomposition {
    pub gamma: usize,
    pub q: usize,
    pub r: usize,
    pub j: BTreeSet<usize>,
}

/// Write `γ n = q(n-d) + r` with `0 <= r < n-d` and compute
/// `J = { j : q - γ + 1 <= |[j-q, j-1]_n ∩ (S-1)| }`.
#[allow(clippy::int_plus_one)] // keeps the threshold in its stated form
pub fn power_decomposition(s: &IndependentSet, gamma: usize) -> PowerDecomposition {
    let n = s.n();
    let d = s.d();
    let (q, r) = (gamma * n).div_rem(&(n - d));
    let sm: Vec<usize> = s.shifted_down().into_iter().collect();
    let j = (1..=n)
        .filter(|&j| {
            let count = intersect_count(j as i64 - q as i64, j as i64 - 1, n, &sm) as i64;
            q as i64 - gamma as i64 + 1 <= count
        })
        .collect();
    PowerDecomposition { gamma, q, r, j }
}

/// `cyc^{-q} Bro_J (cyc Bro_ℛ)^q` as a word.
pub fn power_word(s: &IndependentSet, pd: &PowerDecomposition) -> Result<OperatorWord> {
    let n = s.n();
    let step = cyc_broken_word(n, &s.r_set())?;
    Ok(step
        .pow(pd.q as i64)
        .then(&broken_word(n, &pd.j)?)
        .then(&OperatorWord::cyc_pow(n, -(pd.q as i64))))
}

/// Check the word-rewriting criterion: every letter occurs exactly `k` times,
/// and in every initial segment `X` of the application sequence (a suffix in
/// product notation), `X⟨a⟩ - X⟨b⟩ ∈ {0, 1}` for each arrow `a → b` of `β`.
pub fn verify_suffix_lemma(y: &OperatorWord, beta: &AcyclicOrientation, k: usize) -> Result<bool> {
    let idx = y.toggle_indices()?;
    let n = beta.n();
    let mut counts = vec![0i64; n + 1];
    for &i in &idx {
        counts[i] += 1;
    }
    if (1..=n).any(|i| counts[i] != k as i64) {
        return Ok(false);
    }
    let arrows = beta.arrows();
    let mut counts = vec![0i64; n + 1];
    let ok = |c: &[i64]| arrows.iter().all(|&(a, b)| matches!(c[a] - c[b], 0 | 1));
    if !ok(&counts) {
        return Ok(false);
    }
    for &i in &idx {
        counts[i] += 1;
        if !ok(&counts) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Generator;

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    #[test]
    fn basic_words() {
        assert_eq!(promotion_word(3).unwrap().to_string(), "t1 t2");
        assert_eq!(toric_word(3).unwrap().to_string(), "t1 t2 t3");
        assert!(promotion_word(1).is_err());
        let pi = Bijection::new(vec![1, 3, 2, 4]).unwrap();
        assert_eq!(permutoric_word(&pi).to_string(), "t1 t3 t2 t4");
    }

    #[test]
    fn arcs_of_worked_example() {
        let arcs = broken_arcs(9, &set(&[1, 3, 4, 7, 9])).unwrap();
        assert_eq!(arcs, vec![(3, 4), (7, 7), (9, 10)]);
        assert_eq!(broken_word(9, &set(&[1, 3, 4, 7, 9])).unwrap().to_string(), "t3 t4 t7 t9 t1");
        assert!(broken_word(4, &set(&[])).unwrap().is_empty());
        assert_eq!(broken_word(4, &set(&[1, 2])).unwrap().to_string(), "t1 t2");
        assert_eq!(broken_word(3, &set(&[1, 2, 3])), Err(Error::NotProperSubset { n: 3 }));
    }

    #[test]
    fn canonical_sets() {
        assert_eq!(IndependentSet::canonical(9, 3).unwrap().elements(), &[3, 6, 9]);
        assert_eq!(IndependentSet::canonical(5, 2).unwrap().elements(), &[2, 5]);
        assert_eq!(IndependentSet::canonical(4, 1).unwrap().elements(), &[4]);
        assert!(IndependentSet::canonical(5, 3).is_err());
        for n in 2..=12 {
            for d in 1..=n / 2 {
                let s = IndependentSet::canonical(n, d).unwrap();
                assert_eq!(s.d(), d);
                assert_eq!(s.s(d as i64 + 1), s.s(1) + n as i64);
            }
        }
    }

    #[test]
    fn r_set_of_example() {
        let s = IndependentSet::new(9, vec![3, 7, 9]).unwrap();
        assert_eq!(s.shifted_down(), set(&[2, 6, 8]));
        assert_eq!(s.r_set(), set(&[1, 3, 4, 5, 7, 9]));
        assert!(IndependentSet::new(9, vec![3, 4]).is_err());
        assert!(IndependentSet::new(9, vec![1, 9]).is_err());
        let beta = s.orientation();
        assert_eq!(beta.sources(), vec![3, 7, 9]);
        assert_eq!(beta.sinks(), vec![2, 6, 8]);
    }

    #[test]
    fn theta_sequence() {
        // n = 5, d = 2: θ_1..θ_6 = τ2 τ1 τ3 τ2 τ4 τ3
        let got: Vec<usize> = (1..=6).map(|k| theta(5, 2, k)).collect();
        assert_eq!(got, vec![2, 1, 3, 2, 4, 3]);
        assert_eq!(theta(5, 2, 1 + 10), theta(5, 2, 1));
        let w = phi_word(5, 2).unwrap();
        assert_eq!(w.to_string(), "t2 t1 t3 t2 t4 t3 cyc cyc");
    }

    #[test]
    fn suffix_lemma_trivial_cases() {
        let beta = AcyclicOrientation::from_pi(&Bijection::identity(3));
        let y = OperatorWord::new(3, vec![Generator::Toggle(1), Generator::Toggle(1)]).unwrap();
        assert!(!verify_suffix_lemma(&y, &beta, 2).unwrap());
        for k in 1..=3 {
            assert!(verify_suffix_lemma(&toric_word(3).unwrap().pow(k), &beta, k as usize).unwrap());
        }
        let cy = OperatorWord::parse(3, "t1 cyc").unwrap();
        assert_eq!(verify_suffix_lemma(&cy, &beta, 1), Err(Error::NotToggleWord));
    }

    #[test]
    fn j_has_size_r() {
        for n in 2..=9 {
            for d in 1..=n / 2 {
                let s = IndependentSet::canonical(n, d).unwrap();
                for gamma in 1..=12 {
                    let pd = power_decomposition(&s, gamma);
                    assert_eq!(pd.j.len(), pd.r, "n={n} d={d} γ={gamma}");
                }
            }
        }
    }
}
