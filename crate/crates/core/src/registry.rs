//! Named operator families, each producing an [`OperatorWord`].

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orientation::{AcyclicOrientation, Bijection};
use crate::promotion::{
    broken_word, cyc_broken_word, permutoric_word, permutoric_word_from_orientation, phi_word, promotion_word,
    toric_word, IndependentSet,
};
use crate::word::OperatorWord;

/// Parameters shared by all families; each family reads what it needs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorParams {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    /// One-line bijection `π` for `tpro-pi`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi: Option<Vec<usize>>,
    /// Residues for `bro` and `cyc-bro`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub set: Option<Vec<usize>>,
    /// Generator text for `word`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
}

impl OperatorParams {
    pub fn new(n: usize) -> Self {
        Self { n, ..Self::default() }
    }

    pub fn with_d(mut self, d: usize) -> Self {
        self.d = Some(d);
        self
    }

    fn need_d(&self, family: &str) -> Result<usize> {
        self.d.ok_or_else(|| Error::OutOfRange(format!("{family} needs d")))
    }
}

pub trait OperatorFamily: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn build(&self, p: &OperatorParams) -> Result<OperatorWord>;
}

struct Pro;
struct TPro;
struct TProPi;
struct TProBeta;
struct Bro;
struct CycBro;
struct Phi;
struct Word;

impl OperatorFamily for Pro {
    fn name(&self) -> &'static str {
        "pro"
    }
    fn summary(&self) -> &'static str {
        "promotion τ_{n-1}⋯τ_1"
    }
    fn build(&self, p: &OperatorParams) -> Result<OperatorWord> {
        promotion_word(p.n)
    }
}

impl OperatorFamily for TPro {
    fn name(&self) -> &'static str {
        "tpro"
    }
    fn summary(&self) -> &'static str {
        "toric promotion τ_n⋯τ_1"
    }
    fn build(&self, p: &OperatorParams) -> Result<OperatorWord> {
        toric_word(p.n)
    }
}

impl OperatorFamily for TProPi {
    fn name(&self) -> &'static str {
        "tpro-pi"
    }
    fn summary(&self) -> &'static str {
        "permutoric promotion for a bijection π (--pi)"
    }
    fn build(&self, p: &OperatorParams) -> Result<OperatorWord> {
        let pi = p.pi.clone().ok_or_else(|| Error::OutOfRange("tpro-pi needs pi".into()))?;
        let pi = Bijection::new(pi)?;
        if pi.n() != p.n {
            return Err(Error::SizeMismatch { expected: p.n, got: pi.n() });
        }
        Ok(permutoric_word(&pi))
    }
}

impl OperatorFamily for TProBeta {
    fn name(&self) -> &'static str {
        "tpro-beta"
    }
    fn summary(&self) -> &'static str {
        "permutoric promotion for the orientation with unique source d and unique sink n"
    }
    fn build(&self, p: &OperatorParams) -> Result<OperatorWord> {
        let d = p.need_d(self.name())?;
        Ok(permutoric_word_from_orientation(&AcyclicOrientation::source_d_sink_n(p.n, d)?))
    }
}

fn set_or_interval(p: &OperatorParams, family: &str) -> Result<BTreeSet<usize>> {
    match (&p.set, p.d) {
        (Some(s), _) => Ok(s.iter().copied().collect()),
        (None, Some(d)) => Ok((1..=d).collect()),
        (None, None) => Err(Error::OutOfRange(format!("{family} needs a set or d"))),
    }
}

impl OperatorFamily for Bro {
    fn name(&self) -> &'static str {
        "bro"
    }
    fn summary(&self) -> &'static str {
        "broken promotion Bro_B (--set, default {1..d})"
    }
    fn build(&self, p: &OperatorParams) -> Result<OperatorWord> {
        broken_word(p.n, &set_or_interval(p, self.name())?)
    }
}

impl OperatorFamily for CycBro {
    fn name(&self) -> &'static str {
        "cyc-bro"
    }
    fn summary(&self) -> &'static str {
        "cyc ∘ Bro_B (--set, default {1..d}; --set R uses the canonical ℛ for d)"
    }
    fn build(&self, p: &OperatorParams) -> Result<OperatorWord> {
        cyc_broken_word(p.n, &set_or_interval(p, self.name())?)
    }
}

impl OperatorFamily for Phi {
    fn name(&self) -> &'static str {
        "phi"
    }
    fn summary(&self) -> &'static str {
        "Φ_{n,d} = cyc^d θ_{d(n-d)}⋯θ_1"
    }
    fn build(&self, p: &OperatorParams) -> Result<OperatorWord> {
        phi_word(p.n, p.need_d(self.name())?)
    }
}

impl OperatorFamily for Word {
    fn name(&self) -> &'static str {
        "word"
    }
    fn summary(&self) -> &'static str {
        "explicit generators in application order, e.g. \"t1 t3 cyc\""
    }
    fn build(&self, p: &OperatorParams) -> Result<OperatorWord> {
        let text = p.word.as_deref().ok_or_else(|| Error::OutOfRange("word needs generator text".into()))?;
        OperatorWord::parse(p.n, text)
    }
}

static FAMILIES: [&dyn OperatorFamily; 8] = [&Pro, &TPro, &TProPi, &TProBeta, &Bro, &CycBro, &Phi, &Word];

pub fn families() -> &'static [&'static dyn OperatorFamily] {
    &FAMILIES
}

pub fn lookup(name: &str) -> Result<&'static dyn OperatorFamily> {
    FAMILIES
        .iter()
        .copied()
        .find(|f| f.name() == name)
        .ok_or_else(|| Error::Unknown { kind: "operator", name: name.to_string() })
}

/// The canonical `ℛ` for `(n, d)` as a residue list.
pub fn canonical_r(n: usize, d: usize) -> Result<Vec<usize>> {
    Ok(IndependentSet::canonical(n, d)?.r_set().into_iter().collect())
}

pub fn build(name: &str, p: &OperatorParams) -> Result<OperatorWord> {
    lookup(name)?.build(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        let names: BTreeSet<&str> = families().iter().map(|f| f.name()).collect();
        assert_eq!(names.len(), families().len());
    }

    #[test]
    fn unknown_family() {
        assert!(matches!(lookup("nope"), Err(Error::Unknown { .. })));
    }

    #[test]
    fn builds() {
        let p = OperatorParams::new(5).with_d(2);
        assert_eq!(build("pro", &p).unwrap().to_string(), "t1 t2 t3 t4");
        assert_eq!(build("tpro", &p).unwrap().len(), 5);
        assert_eq!(build("bro", &p).unwrap().to_string(), "t1 t2");
        assert_eq!(build("cyc-bro", &p).unwrap().to_string(), "t1 t2 cyc");
        let w = OperatorParams { word: Some("t2 cyc-".into()), ..OperatorParams::new(4) };
        assert_eq!(build("word", &w).unwrap().to_string(), "t2 cyc-");
        let pi = OperatorParams { pi: Some(vec![2, 1, 3]), ..OperatorParams::new(3) };
        assert_eq!(build("tpro-pi", &pi).unwrap().to_string(), "t2 t1 t3");
        assert!(build("phi", &OperatorParams::new(5)).is_err());
    }
}
