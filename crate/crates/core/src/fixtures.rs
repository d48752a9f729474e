//! Figure-transcribed instances, shipped as JSON under `fixtures/`.

use serde::Deserialize;

use crate::stones::collide::{Cause, CollisionKind};

#[derive(Debug, Clone, Deserialize)]
pub struct ScheduledCollision {
    pub t: i64,
    pub step: usize,
    #[serde(flatten)]
    pub kind: CollisionKind,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ChainFixture {
    pub times: Vec<i64>,
    pub energy: Vec<usize>,
}

/// A periodic timeline with its full collision schedule over one period.
#[derive(Debug, Clone, Deserialize)]
pub struct TimelineFixture {
    pub name: String,
    pub n: usize,
    pub d: usize,
    pub seed: Vec<usize>,
    pub period: i64,
    pub schedule: Vec<ScheduledCollision>,
    pub transversal: ChainFixture,
    pub phi_image: ChainFixture,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ExpectedCollision {
    #[serde(flatten)]
    pub kind: CollisionKind,
    pub cause: Cause,
}

/// A single small step with a stated outcome.
#[derive(Debug, Clone, Deserialize)]
pub struct StepFixture {
    pub name: String,
    pub n: usize,
    pub d: usize,
    pub seed: Vec<usize>,
    pub t: i64,
    pub step: usize,
    pub carried: bool,
    pub replica: usize,
    pub passed: usize,
    pub collision: ExpectedCollision,
}

/// An orbit of `cyc Bro_B` on a fixed graph in which the listed labels
/// visit every vertex exactly once.
#[derive(Debug, Clone, Deserialize)]
pub struct HomomesyFixture {
    pub name: String,
    pub n: usize,
    #[serde(rename = "B")]
    pub b: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub labels: Vec<usize>,
    pub orbit_size: usize,
}

const FIG6: &str = include_str!("../fixtures/fig6.json");
const FIGNEWA: &str = include_str!("../fixtures/fignewa.json");
const FIG4: &str = include_str!("../fixtures/fig4.json");

pub fn fig6() -> TimelineFixture {
    serde_json::from_str(FIG6).expect("fixture parses")
}

pub fn fignewa() -> StepFixture {
    serde_json::from_str(FIGNEWA).expect("fixture parses")
}

pub fn fig4() -> HomomesyFixture {
    serde_json::from_str(FIG4).expect("fixture parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_parse() {
        let f = fig6();
        assert_eq!(f.schedule.len(), 12);
        assert_eq!(f.schedule[2].kind, CollisionKind::TwoCoins(1));
        assert_eq!(fignewa().collision.cause, Cause::Flicker);
        assert_eq!(fig4().b, vec![1, 3, 4]);
    }
}
