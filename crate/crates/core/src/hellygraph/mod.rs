//! Graph-level Helly machinery: thickenings, maximal cliques, and the
//! finite clique-Helly / ball-Helly checks with explicit counterexamples.

#[cfg(test)]
mod tests;

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

/// Fixed-capacity bitset over graph vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    blocks: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> VertexSet {
        VertexSet { blocks: vec![0; n.div_ceil(64)] }
    }

    pub fn insert(&mut self, v: u32) {
        self.blocks[v as usize / 64] |= 1 << (v % 64);
    }

    pub fn contains(&self, v: u32) -> bool {
        self.blocks[v as usize / 64] >> (v % 64) & 1 == 1
    }

    pub fn intersect_assign(&mut self, other: &VertexSet) {
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= b;
        }
    }

    pub fn union_assign(&mut self, other: &VertexSet) {
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a |= b;
        }
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.blocks.iter().zip(&other.blocks).any(|(a, b)| a & b != 0)
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.blocks.iter().enumerate().flat_map(|(i, &b)| {
            (0..64).filter(move |k| b >> k & 1 == 1).map(move |k| (i * 64 + k) as u32)
        })
    }
}

#[derive(Debug, Error)]
pub enum GraphParseError {
    #[error("line {0}: expected two vertex names")]
    BadLine(usize),
    #[error("loop edge at {0:?}")]
    Loop(String),
}

/// Undirected simple graph with named vertices.
#[derive(Debug, Clone)]
pub struct SimpleGraph {
    names: Vec<String>,
    adj: Vec<VertexSet>,
}

impl SimpleGraph {
    pub fn new(names: Vec<String>) -> SimpleGraph {
        let n = names.len();
        SimpleGraph { names, adj: vec![VertexSet::empty(n.max(1)); n] }
    }

    pub fn add_edge(&mut self, u: u32, v: u32) {
        assert_ne!(u, v, "simple graphs carry no loops");
        self.adj[u as usize].insert(v);
        self.adj[v as usize].insert(u);
    }

    /// Edge-list text: one `u v` pair per line, `#` starts a comment.
    pub fn from_edge_list(text: &str) -> Result<SimpleGraph, GraphParseError> {
        let mut names: Vec<String> = Vec::new();
        let mut index: HashMap<String, u32> = HashMap::new();
        let mut edges = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(GraphParseError::BadLine(lineno + 1));
            };
            if a == b {
                return Err(GraphParseError::Loop(a.to_string()));
            }
            let mut id = |name: &str| -> u32 {
                *index.entry(name.to_string()).or_insert_with(|| {
                    names.push(name.to_string());
                    names.len() as u32 - 1
                })
            };
            let (u, v) = (id(a), id(b));
            edges.push((u, v));
        }
        let mut g = SimpleGraph::new(names);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph g {\n");
        for (i, name) in self.names.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{name}\"];");
        }
        for u in 0..self.order() as u32 {
            for v in self.adj[u as usize].iter() {
                if u < v {
                    let _ = writeln!(out, "  n{u} -- n{v};");
                }
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn adjacent(&self, u: u32, v: u32) -> bool {
        u != v && self.adj[u as usize].contains(v)
    }

    pub fn neighbors(&self, u: u32) -> &VertexSet {
        &self.adj[u as usize]
    }

    pub fn degree(&self, u: u32) -> usize {
        self.adj[u as usize].len()
    }

    /// Thickening of a cell family: vertices as given, two distinct vertices
    /// adjacent iff they lie in a common cell.
    pub fn thickening(names: Vec<String>, cells: &[Vec<u32>]) -> SimpleGraph {
        let mut g = SimpleGraph::new(names);
        for cell in cells {
            for (k, &u) in cell.iter().enumerate() {
                for &v in &cell[k + 1..] {
                    if u != v {
                        g.add_edge(u, v);
                    }
                }
            }
        }
        g
    }

    /// Ball of radius `r` around `center` (vertex set, BFS metric).
    pub fn ball(&self, center: u32, r: u32) -> VertexSet {
        let mut set = VertexSet::empty(self.order());
        set.insert(center);
        let mut frontier = vec![center];
        for _ in 0..r {
            let mut next = Vec::new();
            for u in frontier {
                for v in self.adj[u as usize].iter() {
                    if !set.contains(v) {
                        set.insert(v);
                        next.push(v);
                    }
                }
            }
            frontier = next;
        }
        set
    }

    /// Inclusion-maximal cliques via Bron–Kerbosch with pivoting;
    /// deterministic output order.
    pub fn maximal_cliques(&self) -> Vec<VertexSet> {
        let n = self.order();
        let mut all = VertexSet::empty(n);
        for v in 0..n as u32 {
            all.insert(v);
        }
        let mut out = Vec::new();
        let r = VertexSet::empty(n);
        self.bron_kerbosch(&r, all.clone(), VertexSet::empty(n), &mut out);
        out.sort_by_key(|c| c.iter().collect::<Vec<u32>>());
        out
    }

    fn bron_kerbosch(
        &self,
        r: &VertexSet,
        mut p: VertexSet,
        mut x: VertexSet,
        out: &mut Vec<VertexSet>,
    ) {
        if p.is_empty() && x.is_empty() {
            out.push(r.clone());
            return;
        }
        // Pivot on a vertex of maximal degree within P ∪ X.
        let pivot = p
            .iter()
            .chain(x.iter())
            .max_by_key(|&u| {
                let mut nb = self.adj[u as usize].clone();
                nb.intersect_assign(&p);
                (nb.len(), std::cmp::Reverse(u))
            })
            .expect("P or X nonempty");
        let candidates: Vec<u32> =
            p.iter().filter(|&u| !self.adj[pivot as usize].contains(u)).collect();
        for u in candidates {
            let mut r2 = r.clone();
            r2.insert(u);
            let mut p2 = p.clone();
            p2.intersect_assign(&self.adj[u as usize]);
            let mut x2 = x.clone();
            x2.intersect_assign(&self.adj[u as usize]);
            self.bron_kerbosch(&r2, p2, x2, out);
            p.blocks[u as usize / 64] &= !(1 << (u % 64));
            x.insert(u);
        }
    }
}

/// A set taking part in a Helly check, with a printable label.
#[derive(Debug, Clone, Serialize)]
pub struct CheckSet {
    pub label: String,
    pub vertices: Vec<String>,
}

/// Result of a clique- or ball-Helly sweep.
#[derive(Debug, Clone, Serialize)]
pub struct HellyCheck {
    pub families_tested: usize,
    /// A pairwise-intersecting family with empty total intersection, if any.
    pub counterexample: Option<Vec<CheckSet>>,
}

impl HellyCheck {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

fn render_set(g: &SimpleGraph, label: String, set: &VertexSet) -> CheckSet {
    CheckSet {
        label,
        vertices: set.iter().map(|v| g.names()[v as usize].clone()).collect(),
    }
}

/// Exhaustive Helly sweep over all pairwise-intersecting subfamilies of
/// `sets` with size between 2 and `max_family`. Returns at the first
/// violation.
fn helly_sweep(
    g: &SimpleGraph,
    sets: &[(String, VertexSet)],
    max_family: usize,
) -> HellyCheck {
    let n = sets.len();
    let mut pairwise = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            pairwise[i * n + j] = sets[i].1.intersects(&sets[j].1);
        }
    }
    let mut families = 0usize;
    // Depth-first over index-increasing families, pruned to pairwise
    // intersecting ones; the running intersection comes along for free.
    let mut stack: Vec<(Vec<usize>, VertexSet)> = (0..n)
        .rev()
        .map(|i| (vec![i], sets[i].1.clone()))
        .collect();
    while let Some((family, inter)) = stack.pop() {
        let last = *family.last().expect("families on the stack are nonempty");
        for k in last + 1..n {
            if !family.iter().all(|&i| pairwise[i * n + k]) {
                continue;
            }
            let mut inter2 = inter.clone();
            inter2.intersect_assign(&sets[k].1);
            let mut family2 = family.clone();
            family2.push(k);
            families += 1;
            if inter2.is_empty() {
                return HellyCheck {
                    families_tested: families,
                    counterexample: Some(
                        family2
                            .iter()
                            .map(|&i| render_set(g, sets[i].0.clone(), &sets[i].1))
                            .collect(),
                    ),
                };
            }
            if family2.len() < max_family {
                stack.push((family2, inter2));
            }
        }
    }
    HellyCheck { families_tested: families, counterexample: None }
}

impl SimpleGraph {
    /// Helly property of the maximal-clique family, exhaustively over
    /// pairwise-intersecting families of size at most `max_family`.
    pub fn clique_helly_check(&self, max_family: usize) -> HellyCheck {
        let cliques = self.maximal_cliques();
        let sets: Vec<(String, VertexSet)> = cliques
            .into_iter()
            .enumerate()
            .map(|(i, c)| (format!("clique#{i}"), c))
            .collect();
        helly_sweep(self, &sets, max_family)
    }

    /// Helly property of balls with radius at most `max_radius` centered in
    /// `interior`, exhaustively over families of size at most `max_family`.
    pub fn ball_helly_check(
        &self,
        max_family: usize,
        max_radius: u32,
        interior: &[u32],
    ) -> HellyCheck {
        let mut sets = Vec::new();
        for &c in interior {
            for r in 0..=max_radius {
                sets.push((
                    format!("ball(center={}, r={})", self.names()[c as usize], r),
                    self.ball(c, r),
                ));
            }
        }
        helly_sweep(self, &sets, max_family)
    }
}
