//! Collisions between coins and walls.

use serde::{Deserialize, Serialize};

use super::{Direction, SmallStep, Snapshot};

/// Ordered as emitted within one small step: left wall, two-coins by
/// increasing index, right wall.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "i", rename_all = "kebab-case")]
pub enum CollisionKind {
    LeftWall,
    /// Coins `c_i` and `c_{i+1}` (1-based `i`).
    TwoCoins(usize),
    RightWall,
}

impl CollisionKind {
    /// Coin names (1-based) involved.
    pub fn coins(&self, d: usize) -> Vec<usize> {
        match *self {
            CollisionKind::LeftWall => vec![1],
            CollisionKind::TwoCoins(i) => vec![i, i + 1],
            CollisionKind::RightWall => vec![d],
        }
    }

    pub fn is_wall(&self) -> bool {
        !matches!(self, CollisionKind::TwoCoins(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Cause {
    /// Two coins start butting heads.
    ButtingHeads,
    /// A coin moved into a traffic jam touching a wall, next to another coin.
    JamArrival,
    /// A coin moved onto `v_1` or `v_n`.
    WallArrival,
    /// A stone carried its replica past the far end of a wall jam.
    Flicker,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Collision {
    pub t: i64,
    /// Small-step index, equal to the moving stone.
    pub step: usize,
    #[serde(flatten)]
    pub kind: CollisionKind,
    /// Coin names (1-based).
    pub coins: Vec<usize>,
    /// Path vertex of the lowest-named coin involved.
    pub vertex: usize,
    pub cause: Cause,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoinMove {
    /// Coin name (1-based).
    pub coin: usize,
    pub from: usize,
    pub to: usize,
}

/// Everything that happens during one small step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepEvents {
    pub t: i64,
    pub i: usize,
    /// Cycle vertex the stone moved onto.
    pub stone: usize,
    pub carried: bool,
    pub coin_moved: Option<CoinMove>,
    /// Expected directions after the step, by coin name.
    pub directions: Vec<Direction>,
    #[serde(skip)]
    pub directions_before: Vec<Direction>,
    /// Coin positions after the step, by coin name.
    #[serde(skip)]
    pub positions: Vec<usize>,
    pub collisions: Vec<Collision>,
}

fn butting(pos: &[usize], dirs: &[Direction], j: usize) -> bool {
    pos[j] + 1 == pos[j + 1] && dirs[j] == Direction::Right && dirs[j + 1] == Direction::Left
}

/// Classify a small step and detect its collisions.
pub fn analyze(step: &SmallStep) -> StepEvents {
    let (before, after) = (&step.before, &step.after);
    let n = after.n();
    let d = after.d();
    let pos_b = before.coin_positions();
    let pos_a = after.coin_positions();
    let dir_b = before.directions();
    let dir_a = after.directions();
    let color = step.i - 1;
    let name = after.coin_order().iter().position(|&c| c == color).expect("color present");

    let mut found: Vec<(CollisionKind, Cause)> = Vec::new();
    let coin_moved = step.coin_move().map(|(coin, from, to)| CoinMove { coin: coin + 1, from, to });

    if let Some(mv) = &coin_moved {
        if mv.to == 1 {
            found.push((CollisionKind::LeftWall, Cause::WallArrival));
        }
        if mv.to == n {
            found.push((CollisionKind::RightWall, Cause::WallArrival));
        }
        let jam = after.jam(mv.to);
        if after.touches_wall(jam) {
            if name > 0 && pos_a[name - 1] + 1 == mv.to {
                found.push((CollisionKind::TwoCoins(name), Cause::JamArrival));
            }
            if name + 1 < d && pos_a[name + 1] == mv.to + 1 {
                found.push((CollisionKind::TwoCoins(name + 1), Cause::JamArrival));
            }
        }
    }

    for j in 0..d.saturating_sub(1) {
        if butting(&pos_a, &dir_a, j) && !butting(&pos_b, &dir_b, j) {
            found.push((CollisionKind::TwoCoins(j + 1), Cause::ButtingHeads));
        }
    }

    if step.carried {
        found.extend(flicker(before, name, step.passed));
    }

    found.sort_by_key(|&(k, _)| k);
    found.dedup_by_key(|&mut (k, _)| k);
    let collisions = found
        .into_iter()
        .map(|(kind, cause)| {
            let coins = kind.coins(d);
            Collision { t: step.t, step: step.i, kind, vertex: pos_a[coins[0] - 1], coins, cause }
        })
        .collect();

    StepEvents {
        t: step.t,
        i: step.i,
        stone: after.stones[color],
        carried: step.carried,
        coin_moved,
        directions: dir_a,
        directions_before: dir_b,
        positions: pos_a,
        collisions,
    }
}

/// Collision caused by the moving stone carrying its coin's replica past
/// the replica just beyond a wall jam.
fn flicker(before: &Snapshot, name: usize, passed: usize) -> Option<(CollisionKind, Cause)> {
    let n = before.n();
    let d = before.d();
    let v = before.coin_positions()[name];
    let (r, s) = before.jam(v);
    if r == 1 && passed == s + 1 {
        let kind = if name == 0 { CollisionKind::LeftWall } else { CollisionKind::TwoCoins(name) };
        return Some((kind, Cause::Flicker));
    }
    if s == n && r > 1 && passed == r - 1 {
        let kind = if name + 1 == d { CollisionKind::RightWall } else { CollisionKind::TwoCoins(name + 1) };
        return Some((kind, Cause::Flicker));
    }
    None
}

/// Whether the mind-change lemma predicts that the coin of the moving stone
/// changes its expected direction during `step`.
pub fn predicts_mind_change(step: &SmallStep) -> bool {
    let before = &step.before;
    let after = &step.after;
    let n = before.n();
    let v = before.coin_vertex(step.i - 1);
    let (r, s) = before.jam(v);
    if step.carried {
        let through_end = (r > 1 && step.passed == r - 1) || (s < n && step.passed == s + 1);
        through_end && !before.touches_wall((r, s))
    } else {
        let to = after.coin_vertex(step.i - 1);
        after.touches_wall(after.jam(to))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeling::Labeling;
    use crate::stones::{small_step, Snapshot};

    #[test]
    fn kinds_sort_left_to_right() {
        let mut v = vec![CollisionKind::RightWall, CollisionKind::TwoCoins(2), CollisionKind::LeftWall, CollisionKind::TwoCoins(1)];
        v.sort();
        assert_eq!(v, vec![CollisionKind::LeftWall, CollisionKind::TwoCoins(1), CollisionKind::TwoCoins(2), CollisionKind::RightWall]);
    }

    #[test]
    fn arrival_at_left_wall() {
        // n = 4, d = 1, t = 0: stone on vertex 1, which is the label of v2;
        // v1 carries label 2, so the stone slides onto v1's replica.
        let snap = Snapshot::at_time(Labeling::new(vec![2, 1, 3, 4]).unwrap(), 0, 1);
        let step = small_step(&snap, 1, 1);
        assert!(!step.carried);
        let ev = analyze(&step);
        assert_eq!(ev.coin_moved, Some(CoinMove { coin: 1, from: 2, to: 1 }));
        assert_eq!(ev.collisions.len(), 1);
        assert_eq!(ev.collisions[0].kind, CollisionKind::LeftWall);
        assert_eq!(ev.collisions[0].cause, Cause::WallArrival);
    }

    #[test]
    fn no_op_toggle_moves_no_coin_when_carried() {
        let snap = Snapshot::at_time(Labeling::new(vec![1, 3, 2, 4, 5]).unwrap(), 0, 1);
        let step = small_step(&snap, 1, 1);
        assert!(step.carried);
        assert!(analyze(&step).coin_moved.is_none());
    }
}
