//! Text and SVG renderings of stones and coins diagrams.
//!
//! Stone `s_i` and its coin share the letter `a`, `b`, `c`, ... in position `i`.

use std::fmt::Write;

use super::{Direction, Snapshot};

fn letter(color: usize) -> char {
    (b'a' + (color % 26) as u8) as char
}

/// The cycle as a bracketed ring: `[vertex:replica]`, with the stone letter
/// appended when a stone sits there.
pub fn cycle_line(snap: &Snapshot) -> String {
    let mut out = String::new();
    for c in 1..=snap.n() {
        let stone = snap.stone_at(c).map(|s| format!("|{}", letter(s))).unwrap_or_default();
        let _ = write!(out, "[{}:v{}{}]", c, snap.replica_at(c), stone);
    }
    out
}

/// The path with coins as letters and their expected directions as arrows.
pub fn path_line(snap: &Snapshot) -> String {
    let order = snap.coin_order();
    let dirs = snap.directions();
    let mut cells = vec![" . ".to_string(); snap.n()];
    for (name, &color) in order.iter().enumerate() {
        let v = snap.coin_vertex(color);
        cells[v - 1] = match dirs[name] {
            Direction::Left => format!("<{} ", letter(color)),
            Direction::Right => format!(" {}>", letter(color)),
        };
    }
    format!("|{}|", cells.concat())
}

pub fn label_line(snap: &Snapshot) -> String {
    let mut out = String::from(" ");
    for v in 0..snap.n() {
        let _ = write!(out, "{:^3}", snap.sigma.label(v));
    }
    out
}

/// A three-line block for the state at time `t`.
pub fn ascii(snap: &Snapshot, t: i64) -> String {
    format!("t={t}\n  stones {}\n  coins  {}\n  labels {}\n", cycle_line(snap), path_line(snap), label_line(snap))
}

const PALETTE: [&str; 8] = ["#d4a017", "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#17becf"];

/// An SVG with the cycle on top and the path underneath.
pub fn svg(snap: &Snapshot, t: i64) -> String {
    let n = snap.n();
    let (cx, cy, radius) = (160.0, 130.0, 90.0);
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="320" height="330" font-family="monospace" font-size="12">"#);
    let _ = writeln!(out, r#"<text x="10" y="18">t={t}</text>"#);
    let _ = writeln!(out, r##"<circle cx="{cx}" cy="{cy}" r="{radius}" fill="none" stroke="#888"/>"##);
    for c in 1..=n {
        // clockwise from the top
        let angle = std::f64::consts::TAU * (c - 1) as f64 / n as f64;
        let (x, y) = (cx + radius * angle.sin(), cy - radius * angle.cos());
        if let Some(s) = snap.stone_at(c) {
            let _ = writeln!(out, r#"<circle cx="{x:.1}" cy="{y:.1}" r="13" fill="{}"/>"#, PALETTE[s % PALETTE.len()]);
        } else {
            let _ = writeln!(out, r##"<circle cx="{x:.1}" cy="{y:.1}" r="3" fill="#444"/>"##);
        }
        let _ = writeln!(out, r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">v{}</text>"#, x, y + 4.0, snap.replica_at(c));
    }
    let step = 280.0 / n as f64;
    let y = 280.0;
    let order = snap.coin_order();
    let dirs = snap.directions();
    for v in 1..=n {
        let x = 20.0 + step * (v as f64 - 0.5);
        let _ = writeln!(out, r##"<circle cx="{x:.1}" cy="{y}" r="3" fill="#444"/>"##);
        let _ = writeln!(out, r##"<text x="{x:.1}" y="{}" text-anchor="middle" fill="#c00">{}</text>"##, y + 30.0, snap.sigma.label(v - 1));
    }
    for (name, &color) in order.iter().enumerate() {
        let x = 20.0 + step * (snap.coin_vertex(color) as f64 - 0.5);
        let arrow = if dirs[name] == Direction::Left { "←" } else { "→" };
        let _ = writeln!(out, r#"<circle cx="{x:.1}" cy="{y}" r="10" fill="{}"/>"#, PALETTE[color % PALETTE.len()]);
        let _ = writeln!(out, r#"<text x="{x:.1}" y="{}" text-anchor="middle">{arrow}</text>"#, y - 16.0);
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeling::Labeling;

    #[test]
    fn ascii_block() {
        let snap = Snapshot::at_time(Labeling::new(vec![2, 1, 3, 4, 5]).unwrap(), 0, 2);
        let text = ascii(&snap, 0);
        assert_eq!(
            text,
            "t=0\n  stones [1:v2|b][2:v1|a][3:v3][4:v4][5:v5]\n  coins  | a> b> .  .  . |\n  labels   2  1  3  4  5 \n"
        );
    }

    #[test]
    fn svg_is_closed() {
        let snap = Snapshot::at_time(Labeling::identity(6), 2, 3);
        let s = svg(&snap, 2);
        assert!(s.starts_with("<svg") && s.ends_with("</svg>\n"));
    }
}
