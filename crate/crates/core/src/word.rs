//! Operator words: finite sequences of toggles and cyclic shifts, stored in
//! application order (the first generator acts first).

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::labeling::{factorial, Labeling};
use crate::toggle::toggle_in_place;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    Toggle(usize),
    Cyc,
    CycInv,
}

impl Generator {
    pub fn inverse(self) -> Self {
        match self {
            Generator::Toggle(i) => Generator::Toggle(i),
            Generator::Cyc => Generator::CycInv,
            Generator::CycInv => Generator::Cyc,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Toggle(i) => write!(f, "t{i}"),
            Generator::Cyc => f.write_str("cyc"),
            Generator::CycInv => f.write_str("cyc-"),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cyc" => Ok(Generator::Cyc),
            "cyc-" => Ok(Generator::CycInv),
            _ => s
                .strip_prefix('t')
                .and_then(|i| i.parse().ok())
                .map(Generator::Toggle)
                .ok_or_else(|| Error::Parse { what: "generator", detail: s.to_string() }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OperatorWord {
    n: usize,
    gens: Vec<Generator>,
}

impl OperatorWord {
    pub fn new(n: usize, gens: Vec<Generator>) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfRange("word modulus must be positive".into()));
        }
        for g in &gens {
            if let Generator::Toggle(i) = *g {
                if i == 0 || i > n {
                    return Err(Error::LabelOutOfRange { label: i as i64, n });
                }
            }
        }
        Ok(Self { n, gens })
    }

    pub fn identity(n: usize) -> Self {
        Self { n, gens: Vec::new() }
    }

    /// Toggles applied in the given order; indices are reduced into `1..=n`.
    pub fn toggles<I: IntoIterator<Item = i64>>(n: usize, indices: I) -> Self {
        let gens = indices
            .into_iter()
            .map(|i| Generator::Toggle(crate::cyclic::residue(i, n)))
            .collect();
        Self { n, gens }
    }

    /// `cyc^k` as a word of `|k|` letters.
    pub fn cyc_pow(n: usize, k: i64) -> Self {
        let g = if k >= 0 { Generator::Cyc } else { Generator::CycInv };
        Self { n, gens: vec![g; k.unsigned_abs() as usize] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_toggle_only(&self) -> bool {
        self.gens.iter().all(|g| matches!(g, Generator::Toggle(_)))
    }

    /// Toggle indices in application order, or an error if the word shifts.
    pub fn toggle_indices(&self) -> Result<Vec<usize>> {
        self.gens
            .iter()
            .map(|g| match g {
                Generator::Toggle(i) => Ok(*i),
                _ => Err(Error::NotToggleWord),
            })
            .collect()
    }

    /// `other ∘ self`: apply `self`, then `other`.
    pub fn then(&self, other: &OperatorWord) -> OperatorWord {
        debug_assert_eq!(self.n, other.n);
        let mut gens = self.gens.clone();
        gens.extend_from_slice(&other.gens);
        Self { n: self.n, gens }
    }

    pub fn inverse(&self) -> OperatorWord {
        Self { n: self.n, gens: self.gens.iter().rev().map(|g| g.inverse()).collect() }
    }

    /// `self^k`; negative powers use the inverse word.
    pub fn pow(&self, k: i64) -> OperatorWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut gens = Vec::with_capacity(base.gens.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            gens.extend_from_slice(&base.gens);
        }
        Self { n: self.n, gens }
    }

    pub fn apply_in_place(&self, sigma: &mut Labeling, g: &Graph) {
        for gen in &self.gens {
            match *gen {
                Generator::Toggle(i) => {
                    toggle_in_place(sigma, g, i);
                }
                Generator::Cyc => sigma.shift_in_place(1),
                Generator::CycInv => sigma.shift_in_place(-1),
            }
        }
    }

    pub fn apply(&self, sigma: &Labeling, g: &Graph) -> Result<Labeling> {
        if sigma.n() != self.n || g.n() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, got: sigma.n().min(g.n()) });
        }
        let mut out = sigma.clone();
        self.apply_in_place(&mut out, g);
        Ok(out)
    }

    /// The word as a map bound to a graph.
    pub fn on<'a>(&'a self, g: &'a Graph) -> impl Fn(&Labeling) -> Labeling + Sync + 'a {
        move |s| {
            let mut out = s.clone();
            self.apply_in_place(&mut out, g);
            out
        }
    }

    /// A cheaper equivalent word: runs of shifts are merged and moved past the
    /// toggles using `cyc τ_i = τ_{i+1} cyc`, leaving a single shift at the end.
    pub fn normalized(&self) -> OperatorWord {
        let n = self.n as i64;
        let mut shift: i64 = 0;
        let mut gens = Vec::with_capacity(self.gens.len());
        for gen in &self.gens {
            match *gen {
                Generator::Toggle(i) => {
                    // pending shift s: τ_i cyc^s = cyc^s τ_{i-s}
                    gens.push(Generator::Toggle(crate::cyclic::residue(i as i64 - shift, self.n)));
                }
                Generator::Cyc => shift += 1,
                Generator::CycInv => shift -= 1,
            }
        }
        let shift = shift.rem_euclid(n);
        let tail = if shift * 2 <= n { OperatorWord::cyc_pow(self.n, shift) } else { OperatorWord::cyc_pow(self.n, shift - n) };
        gens.extend(tail.gens);
        Self { n: self.n, gens }
    }
}

impl fmt::Display for OperatorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        f.write_str(&toks.join(" "))
    }
}

impl OperatorWord {
    /// Parse the whitespace-separated text form for modulus `n`.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let gens = text.split_whitespace().map(str::parse).collect::<Result<Vec<_>>>()?;
        Self::new(n, gens)
    }

    /// Parse the JSON array form, e.g. `["t1","t2","cyc"]`.
    pub fn from_json(n: usize, json: &str) -> Result<Self> {
        let toks: Vec<String> = serde_json::from_str(json)
            .map_err(|e| Error::Parse { what: "word JSON", detail: e.to_string() })?;
        let gens = toks.iter().map(|t| t.parse()).collect::<Result<Vec<_>>>()?;
        Self::new(n, gens)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.gens.iter().map(|g| g.to_string()).collect::<Vec<_>>())
            .expect("strings serialize")
    }
}

impl Serialize for Generator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Generator {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// First labeling (in lexicographic order) where `f` and `g` disagree, over
/// the full space of labelings of size `n`.
pub fn first_disagreement<F, G>(n: usize, f: F, g: G) -> Option<Labeling>
where
    F: Fn(&Labeling) -> Labeling + Sync,
    G: Fn(&Labeling) -> Labeling + Sync,
{
    let total = factorial(n).expect("n small enough to enumerate");
    (0..total)
        .into_par_iter()
        .with_min_len(256)
        .find_first(|&r| {
            let s = Labeling::unrank(n, r).expect("rank in range");
            f(&s) != g(&s)
        })
        .map(|r| Labeling::unrank(n, r).expect("rank in range"))
}

/// True iff `f` and `g` agree on every labeling of size `n`.
pub fn maps_equal<F, G>(n: usize, f: F, g: G) -> bool
where
    F: Fn(&Labeling) -> Labeling + Sync,
    G: Fn(&Labeling) -> Labeling + Sync,
{
    first_disagreement(n, f, g).is_none()
}

/// Map equality restricted to a sample of labelings.
pub fn maps_equal_on<F, G>(samples: &[Labeling], f: F, g: G) -> bool
where
    F: Fn(&Labeling) -> Labeling,
    G: Fn(&Labeling) -> Labeling,
{
    samples.iter().all(|s| f(s) == g(s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_json_round_trip() {
        let w = OperatorWord::parse(4, "t1 t3 cyc t4 cyc-").unwrap();
        assert_eq!(w.to_string(), "t1 t3 cyc t4 cyc-");
        assert_eq!(w.to_json(), r#"["t1","t3","cyc","t4","cyc-"]"#);
        assert_eq!(OperatorWord::from_json(4, &w.to_json()).unwrap(), w);
        assert!(OperatorWord::parse(4, "t5").is_err());
        assert!(OperatorWord::parse(4, "x1").is_err());
    }

    #[test]
    fn inverse_undoes_word() {
        let g = Graph::path(5).unwrap();
        let w = OperatorWord::parse(5, "t1 cyc t3 t5 cyc t2 cyc-").unwrap();
        let round = w.then(&w.inverse());
        for s in Labeling::all(5) {
            assert_eq!(round.apply(&s, &g).unwrap(), s);
        }
    }

    #[test]
    fn normalized_is_same_map() {
        let g = Graph::path(5).unwrap();
        let w = OperatorWord::parse(5, "t1 cyc t3 cyc t5 cyc- t2 cyc cyc cyc").unwrap();
        let nw = w.normalized();
        assert!(maps_equal(5, w.on(&g), nw.on(&g)));
        // net shift +4 on n = 5 becomes a single cyc-
        assert_eq!(nw.generators().last(), Some(&Generator::CycInv));
        assert_eq!(nw.generators().iter().filter(|x| !matches!(x, Generator::Toggle(_))).count(), 1);
    }

    #[test]
    fn disagreement_found() {
        let g = Graph::path(3).unwrap();
        let a = OperatorWord::parse(3, "t1").unwrap();
        let b = OperatorWord::parse(3, "t2").unwrap();
        assert!(first_disagreement(3, a.on(&g), b.on(&g)).is_some());
        assert!(maps_equal(3, a.pow(2).on(&g), OperatorWord::identity(3).on(&g)));
    }
}
