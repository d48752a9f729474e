use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    Path,
    Cycle,
    General,
}

/// A simple graph on vertices `v_1, ..., v_n` (stored 0-based).
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    kind: GraphKind,
}

impl Graph {
    fn empty(n: usize, kind: GraphKind) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::InvalidGraph(format!("vertex count {n} not in 1..={MAX_VERTICES}")));
        }
        Ok(Self { n, adj: vec![0; n], kind })
    }

    /// Build a graph from 1-based edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n, GraphKind::General)?;
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    fn add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        if a == 0 || b == 0 || a > self.n || b > self.n {
            return Err(Error::InvalidGraph(format!("edge {a}-{b} out of range 1..={}", self.n)));
        }
        if a == b {
            return Err(Error::InvalidGraph(format!("self-loop at {a}")));
        }
        self.adj[a - 1] |= 1 << (b - 1);
        self.adj[b - 1] |= 1 << (a - 1);
        Ok(())
    }

    pub fn path(n: usize) -> Result<Self> {
        let mut g = Self::empty(n, GraphKind::Path)?;
        for j in 1..n {
            g.add_edge(j, j + 1)?;
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGraph("a simple cycle needs at least 3 vertices".into()));
        }
        let mut g = Self::empty(n, GraphKind::Cycle)?;
        for j in 1..n {
            g.add_edge(j, j + 1)?;
        }
        g.add_edge(n, 1)?;
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn is_path(&self) -> bool {
        self.kind == GraphKind::Path || *self == Graph::path(self.n).expect("valid size")
    }

    /// Adjacency of 0-based vertices.
    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        (self.adj[u] >> v) & 1 == 1
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        let mask = self.adj[u];
        (0..self.n).filter(move |&v| (mask >> v) & 1 == 1)
    }

    /// Edges as 1-based pairs `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adjacent(u, v) {
                    out.push((u + 1, v + 1));
                }
            }
        }
        out
    }

    /// 0-based vertex sets of the connected components, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut stack = vec![s];
            let mut comp = Vec::new();
            seen[s] = true;
            while let Some(u) = stack.pop() {
                comp.push(u);
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    pub fn is_forest(&self) -> bool {
        self.edges().len() + self.components().len() == self.n
    }

    /// Size of the component containing the 0-based vertex `u`.
    pub fn component_size(&self, u: usize) -> usize {
        self.components()
            .into_iter()
            .find(|c| c.contains(&u))
            .map(|c| c.len())
            .unwrap_or(0)
    }

    /// Disjoint union; vertices of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        let mut edges = self.edges();
        edges.extend(other.edges().into_iter().map(|(a, b)| (a + self.n, b + self.n)));
        Graph::from_edges(n, &edges)
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl std::hash::Hash for Graph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.adj.hash(state);
    }
}

impl fmt::Display for Graph {
    /// Canonical text form `n; a-b,c-d,...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self.edges().iter().map(|(a, b)| format!("{a}-{b}")).collect();
        write!(f, "{}; {}", self.n, edges.join(","))
    }
}

impl FromStr for Graph {
    type Err = Error;

    /// Accepts `path:N`, `cycle:N`, or the edge-list form `n; a-b,c-d`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |detail: String| Error::Parse { what: "graph", detail };
        if let Some(rest) = s.strip_prefix("path:") {
            let n = rest.trim().parse().map_err(|_| bad(s.to_string()))?;
            return Graph::path(n);
        }
        if let Some(rest) = s.strip_prefix("cycle:") {
            let n = rest.trim().parse().map_err(|_| bad(s.to_string()))?;
            return Graph::cycle(n);
        }
        let (n_part, edge_part) = s.split_once(';').ok_or_else(|| bad(s.to_string()))?;
        let n: usize = n_part.trim().parse().map_err(|_| bad(s.to_string()))?;
        let mut edges = Vec::new();
        for tok in edge_part.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (a, b) = tok.split_once('-').ok_or_else(|| bad(tok.to_string()))?;
            let a = a.trim().parse().map_err(|_| bad(tok.to_string()))?;
            let b = b.trim().parse().map_err(|_| bad(tok.to_string()))?;
            edges.push((a, b));
        }
        let mut g = Graph::from_edges(n, &edges)?;
        if g == Graph::path(n)? {
            g.kind = GraphKind::Path;
        } else if n >= 3 && g == Graph::cycle(n)? {
            g.kind = GraphKind::Cycle;
        }
        Ok(g)
    }
}

/// Canonical string of the tree on `verts` (0-based, inducing a tree in `g`)
/// rooted at `root`, AHU style.
fn rooted_code(g: &Graph, root: usize, parent: Option<usize>) -> String {
    let mut kids: Vec<String> = g
        .neighbors(root)
        .filter(|&v| Some(v) != parent)
        .map(|v| rooted_code(g, v, Some(root)))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

fn tree_code(g: &Graph, comp: &[usize]) -> String {
    // centers of the component by leaf stripping
    let mut degree: Vec<usize> = comp.iter().map(|&u| g.neighbors(u).count()).collect();
    let mut alive: Vec<bool> = vec![true; comp.len()];
    let mut remaining = comp.len();
    let idx = |u: usize| comp.iter().position(|&c| c == u).expect("vertex in component");
    while remaining > 2 {
        let leaves: Vec<usize> = (0..comp.len()).filter(|&i| alive[i] && degree[i] <= 1).collect();
        for &i in &leaves {
            alive[i] = false;
            remaining -= 1;
            for v in g.neighbors(comp[i]) {
                let j = idx(v);
                if alive[j] {
                    degree[j] -= 1;
                }
            }
        }
    }
    (0..comp.len())
        .filter(|&i| alive[i])
        .map(|i| rooted_code(g, comp[i], None))
        .min()
        .unwrap_or_default()
}

/// Isomorphism-invariant code for a forest.
pub fn forest_code(g: &Graph) -> String {
    let mut codes: Vec<String> = g.components().iter().map(|c| tree_code(g, c)).collect();
    codes.sort();
    codes.join("|")
}

fn tree_from_pruefer(n: usize, seq: &[usize]) -> Graph {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf + 1, s + 1));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0] + 1, rest[1] + 1));
    Graph::from_edges(n, &edges).expect("Pruefer decoding yields a valid tree")
}

/// One representative per isomorphism class of trees on `n` vertices.
pub fn nonisomorphic_trees(n: usize) -> Vec<Graph> {
    match n {
        0 => return Vec::new(),
        1 => return vec![Graph::from_edges(1, &[]).expect("single vertex")],
        2 => return vec![Graph::path(2).expect("edge")],
        _ => {}
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut seq = vec![0usize; n - 2];
    loop {
        let tree = tree_from_pruefer(n, &seq);
        if seen.insert(forest_code(&tree)) {
            out.push(tree);
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == seq.len() {
                return out;
            }
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
    }
}

/// Forests with exactly two components on `n` vertices, one per isomorphism
/// class.
pub fn two_component_forests(n: usize) -> Vec<Graph> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for t in 1..n {
        for a in nonisomorphic_trees(t) {
            for b in nonisomorphic_trees(n - t) {
                let f = a.disjoint_union(&b).expect("sizes add up");
                if seen.insert(forest_code(&f)) {
                    out.push(f);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_and_cycle_edges() {
        assert_eq!(Graph::path(4).unwrap().edges(), vec![(1, 2), (2, 3), (3, 4)]);
        assert_eq!(Graph::cycle(4).unwrap().edges(), vec![(1, 2), (1, 4), (2, 3), (3, 4)]);
    }

    #[test]
    fn rejects_loops_and_range() {
        assert!(Graph::from_edges(3, &[(1, 1)]).is_err());
        assert!(Graph::from_edges(3, &[(1, 4)]).is_err());
        assert!(Graph::from_edges(0, &[]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let g: Graph = "5; 1-3,2-3,3-4,4-5".parse().unwrap();
        assert_eq!(g.to_string(), "5; 1-3,2-3,3-4,4-5");
        let again: Graph = g.to_string().parse().unwrap();
        assert_eq!(g, again);
        let p: Graph = "4; 1-2,2-3,3-4".parse().unwrap();
        assert_eq!(p.kind(), GraphKind::Path);
        let p2: Graph = "path:4".parse().unwrap();
        assert_eq!(p, p2);
    }

    #[test]
    fn tree_counts_match_oeis() {
        // A000055
        let expected = [1, 1, 1, 1, 2, 3, 6, 11, 23];
        for (n, &count) in expected.iter().enumerate().skip(1) {
            assert_eq!(nonisomorphic_trees(n).len(), count, "n = {n}");
        }
    }

    #[test]
    fn forest_components() {
        for f in two_component_forests(5) {
            assert!(f.is_forest());
            assert_eq!(f.components().len(), 2);
        }
    }
}
