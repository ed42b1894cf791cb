//! Finite Coxeter groups from labeled defining graphs.
//!
//! A group is enumerated breadth-first in ShortLex order; elements are
//! identified by their permutation action on the (finite) root system, so
//! equality, lengths, descents and the multiplication table are exact.
//! On top of the enumeration sit the right/left weak-order lattice
//! operations, standard parabolic cosets with gates, and the oriented
//! Coxeter cell (the Hasse diagram of the right weak order).

mod roots;

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use roots::{close_roots, RootClosure};

/// Labeled simple graph defining a Coxeter (or Artin) system.
///
/// An edge `{a, b}` labeled `m >= 2` imposes the relation of order `m`;
/// an absent edge means `m = infinity` (no relation).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefiningGraph {
    vertices: Vec<String>,
    /// Keyed by `(i, j)` with `i < j`.
    edges: std::collections::BTreeMap<(usize, usize), u32>,
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertex list is empty")]
    Empty,
    #[error("duplicate vertex name {0:?}")]
    DuplicateVertex(String),
    #[error("invalid vertex name {0:?}")]
    BadName(String),
    #[error("edge endpoint {0:?} is not a declared vertex")]
    UnknownVertex(String),
    #[error("loop edge at {0:?}")]
    Loop(String),
    #[error("duplicate edge {0:?} -- {1:?}")]
    DuplicateEdge(String, String),
    #[error("edge {0:?} -- {1:?} has label {2}, but labels must be >= 2")]
    BadLabel(String, String, u32),
    #[error("malformed graph file: {0}")]
    Parse(String),
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    vertices: Vec<String>,
    edges: Vec<(String, String, u32)>,
}

impl DefiningGraph {
    pub fn new(
        vertices: Vec<String>,
        edges: Vec<(String, String, u32)>,
    ) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if v.is_empty() || !v.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(GraphError::BadName(v.clone()));
            }
            if index.insert(v.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex(v.clone()));
            }
        }
        let mut map = std::collections::BTreeMap::new();
        for (a, b, m) in edges {
            let i = *index.get(&a).ok_or_else(|| GraphError::UnknownVertex(a.clone()))?;
            let j = *index.get(&b).ok_or_else(|| GraphError::UnknownVertex(b.clone()))?;
            if i == j {
                return Err(GraphError::Loop(a));
            }
            if m < 2 {
                return Err(GraphError::BadLabel(a, b, m));
            }
            let key = (i.min(j), i.max(j));
            if map.insert(key, m).is_some() {
                return Err(GraphError::DuplicateEdge(a, b));
            }
        }
        Ok(DefiningGraph { vertices, edges: map })
    }

    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let file: GraphFile =
            serde_json::from_str(text).map_err(|e| GraphError::Parse(e.to_string()))?;
        DefiningGraph::new(file.vertices, file.edges)
    }

    pub fn to_json(&self) -> String {
        let file = GraphFile {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|(&(i, j), &m)| (self.vertices[i].clone(), self.vertices[j].clone(), m))
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("graph serialization cannot fail")
    }

    pub fn rank(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    /// Edge label, `None` meaning `m = infinity`.
    pub fn label(&self, i: usize, j: usize) -> Option<u32> {
        if i == j {
            return Some(1);
        }
        self.edges.get(&(i.min(j), i.max(j))).copied()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.edges.contains_key(&(i.min(j), i.max(j)))
    }

    /// Full subgraph on a vertex subset, with vertex names retained.
    pub fn full_subgraph(&self, subset: &[usize]) -> DefiningGraph {
        let vertices: Vec<String> = subset.iter().map(|&i| self.vertices[i].clone()).collect();
        let mut edges = Vec::new();
        for (a, &i) in subset.iter().enumerate() {
            for (b, &j) in subset.iter().enumerate().skip(a + 1) {
                if let Some(m) = self.label(i, j) {
                    if i != j {
                        edges.push((vertices[a].clone(), vertices[b].clone(), m));
                    }
                }
            }
        }
        DefiningGraph::new(vertices, edges).expect("full subgraph of a valid graph is valid")
    }

    /// All cliques (sets of pairwise adjacent vertices), the empty set
    /// included, each as a sorted index list.
    pub fn cliques(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
        while let Some(cur) = stack.pop() {
            let start = cur.last().map_or(0, |&v| v + 1);
            for v in start..self.rank() {
                if cur.iter().all(|&u| self.adjacent(u, v)) {
                    let mut next = cur.clone();
                    next.push(v);
                    out.push(next.clone());
                    stack.push(next);
                }
            }
        }
        out.sort();
        out
    }

    /// Inclusion-maximal cliques, sorted.
    pub fn maximal_cliques(&self) -> Vec<Vec<usize>> {
        let all = self.cliques();
        let mut out: Vec<Vec<usize>> = all
            .iter()
            .filter(|c| {
                !all.iter()
                    .any(|d| d.len() > c.len() && c.iter().all(|v| d.contains(v)))
            })
            .cloned()
            .collect();
        out.retain(|c| !c.is_empty() || self.rank() == 0);
        out.sort();
        out
    }
}

/// Identifier of a group element; resolve words/lengths through the group.
#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoxElt(pub u32);

#[derive(Debug, Copy, Clone, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Error)]
pub enum CoxeterError {
    #[error("group is not finite within cap = {cap}")]
    NotFiniteWithinCap { cap: usize },
    #[error("group axiom check failed after enumeration: {0}")]
    AxiomViolation(String),
}

/// Fully enumerated finite Coxeter group.
#[derive(Debug)]
pub struct CoxeterGroup {
    graph: DefiningGraph,
    /// Root permutation of each element (`perm[r]` = image root index).
    perms: Vec<Box<[u16]>>,
    words: Vec<Vec<u8>>,
    inv: Vec<u32>,
    /// Flattened multiplication table, present for groups of moderate order.
    mul_table: Option<Vec<u32>>,
    perm_index: HashMap<Box<[u16]>, u32>,
    gens: Vec<u32>,
    left_desc: Vec<u64>,
    right_desc: Vec<u64>,
    longest: u32,
}

const MUL_TABLE_LIMIT: usize = 2048;

impl CoxeterGroup {
    /// BFS enumeration in ShortLex order, capped at `cap` elements.
    pub fn enumerate(graph: &DefiningGraph, cap: usize) -> Result<Self, CoxeterError> {
        assert!(cap >= 1, "cap must be positive");
        let rank = graph.rank();
        assert!(rank <= 64, "more than 64 generators is out of desk scale");
        let roots = match close_roots(graph, cap) {
            RootClosure::Finite(rs) => rs,
            RootClosure::ExceededCap => return Err(CoxeterError::NotFiniteWithinCap { cap }),
        };
        let nroots = roots.roots.len();
        let mut perms: Vec<Box<[u16]>> = Vec::new();
        let mut words: Vec<Vec<u8>> = Vec::new();
        let mut perm_index: HashMap<Box<[u16]>, u32> = HashMap::new();
        let id: Box<[u16]> = (0..nroots as u16).collect();
        perm_index.insert(id.clone(), 0);
        perms.push(id);
        words.push(Vec::new());
        let mut head = 0usize;
        while head < perms.len() {
            let u = head;
            head += 1;
            for s in 0..rank {
                // perm_{us}[r] = perm_u[refl_s[r]]
                let pu = &perms[u];
                let new: Box<[u16]> = (0..nroots)
                    .map(|r| pu[roots.refl[s][r] as usize])
                    .collect();
                if !perm_index.contains_key(&new) {
                    if perms.len() + 1 > cap {
                        return Err(CoxeterError::NotFiniteWithinCap { cap });
                    }
                    perm_index.insert(new.clone(), perms.len() as u32);
                    let mut w = words[u].clone();
                    w.push(s as u8);
                    words.push(w);
                    perms.push(new);
                }
            }
        }
        let n = perms.len();
        let inv: Vec<u32> = (0..n)
            .map(|u| {
                let mut ip = vec![0u16; nroots];
                for (r, &img) in perms[u].iter().enumerate() {
                    ip[img as usize] = r as u16;
                }
                perm_index[ip.as_slice()]
            })
            .collect();
        let mul_table = if n <= MUL_TABLE_LIMIT {
            let mut table = vec![0u32; n * n];
            for u in 0..n {
                for v in 0..n {
                    let pu = &perms[u];
                    let pv = &perms[v];
                    let comp: Box<[u16]> = (0..nroots).map(|r| pu[pv[r] as usize]).collect();
                    table[u * n + v] = perm_index[&comp];
                }
            }
            Some(table)
        } else {
            None
        };
        let mut right_desc = vec![0u64; n];
        let mut left_desc = vec![0u64; n];
        for u in 0..n {
            for s in 0..rank {
                // l(us) < l(u) iff u sends alpha_s to a negative root.
                if !roots.positive[perms[u][roots.simple[s] as usize] as usize] {
                    right_desc[u] |= 1 << s;
                }
                if !roots.positive[perms[inv[u] as usize][roots.simple[s] as usize] as usize] {
                    left_desc[u] |= 1 << s;
                }
            }
        }
        let longest = (0..n as u32)
            .max_by_key(|&u| words[u as usize].len())
            .expect("group is nonempty");
        let gens: Vec<u32> = (0..rank)
            .map(|s| {
                let perm: Box<[u16]> = (0..nroots).map(|r| roots.refl[s][r]).collect();
                perm_index[&perm]
            })
            .collect();
        let group = CoxeterGroup {
            graph: graph.clone(),
            perms,
            words,
            inv,
            mul_table,
            perm_index,
            gens,
            left_desc,
            right_desc,
            longest,
        };
        group.validate()?;
        Ok(group)
    }

    /// Post-hoc group-axiom checks guarding the numerical construction.
    fn validate(&self) -> Result<(), CoxeterError> {
        let n = self.order();
        let e = CoxElt(0);
        for u in self.elements() {
            if self.mul(e, u) != u || self.mul(u, e) != u {
                return Err(CoxeterError::AxiomViolation("identity law".into()));
            }
            let iu = self.inverse(u);
            if self.mul(u, iu) != e || self.mul(iu, u) != e {
                return Err(CoxeterError::AxiomViolation("inverse law".into()));
            }
        }
        for s in 0..self.rank() {
            let g = self.generator(s);
            if self.mul(g, g) != e {
                return Err(CoxeterError::AxiomViolation(format!("s{s}^2 != e")));
            }
        }
        // Associativity spot-check on a deterministic sample of triples.
        let step = (n * n * n / 20_000).max(1);
        let mut k = 0usize;
        while k < n * n * n {
            let (a, b, c) = (
                CoxElt((k % n) as u32),
                CoxElt((k / n % n) as u32),
                CoxElt((k / n / n) as u32),
            );
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(CoxeterError::AxiomViolation("associativity".into()));
            }
            k += step;
        }
        let word_check_stride = (n / 4096).max(1);
        for u in self.elements() {
            let lu = self.length(u);
            for s in 0..self.rank() {
                let us = self.mul(u, self.generator(s));
                let lus = self.length(us);
                if lus != lu + 1 && lus + 1 != lu {
                    return Err(CoxeterError::AxiomViolation(
                        "length(us) != length(u) +- 1".into(),
                    ));
                }
            }
            // ShortLex word must be reduced and spell the element.
            if u.0 as usize % word_check_stride == 0 {
                let mut acc = e;
                for &s in self.word(u) {
                    acc = self.mul(acc, self.generator(s as usize));
                }
                if acc != u || self.word(u).len() != lu as usize {
                    return Err(CoxeterError::AxiomViolation("canonical word broken".into()));
                }
            }
        }
        Ok(())
    }

    pub fn graph(&self) -> &DefiningGraph {
        &self.graph
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn rank(&self) -> usize {
        self.graph.rank()
    }

    pub fn identity(&self) -> CoxElt {
        CoxElt(0)
    }

    pub fn generator(&self, s: usize) -> CoxElt {
        CoxElt(self.gens[s])
    }

    pub fn elements(&self) -> impl Iterator<Item = CoxElt> {
        (0..self.order() as u32).map(CoxElt)
    }

    pub fn word(&self, u: CoxElt) -> &[u8] {
        &self.words[u.0 as usize]
    }

    /// Canonical word rendered with generator names.
    pub fn word_string(&self, u: CoxElt) -> String {
        if self.word(u).is_empty() {
            return "e".into();
        }
        self.word(u)
            .iter()
            .map(|&s| self.graph.vertex_names()[s as usize].as_str())
            .collect::<Vec<_>>()
            .join(".")
    }

    pub fn length(&self, u: CoxElt) -> u32 {
        self.words[u.0 as usize].len() as u32
    }

    pub fn mul(&self, u: CoxElt, v: CoxElt) -> CoxElt {
        let n = self.order();
        if let Some(table) = &self.mul_table {
            return CoxElt(table[u.0 as usize * n + v.0 as usize]);
        }
        let pu = &self.perms[u.0 as usize];
        let pv = &self.perms[v.0 as usize];
        let comp: Box<[u16]> = (0..pu.len()).map(|r| pu[pv[r] as usize]).collect();
        CoxElt(self.perm_index[&comp])
    }

    pub fn inverse(&self, u: CoxElt) -> CoxElt {
        CoxElt(self.inv[u.0 as usize])
    }

    /// Product of a word of generator indices.
    pub fn eval_word(&self, word: &[u8]) -> CoxElt {
        word.iter()
            .fold(self.identity(), |acc, &s| self.mul(acc, self.generator(s as usize)))
    }

    pub fn right_descents(&self, u: CoxElt) -> u64 {
        self.right_desc[u.0 as usize]
    }

    pub fn left_descents(&self, u: CoxElt) -> u64 {
        self.left_desc[u.0 as usize]
    }

    /// Cayley distance in the unoriented Cayley graph.
    pub fn distance(&self, u: CoxElt, v: CoxElt) -> u32 {
        self.length(self.mul(self.inverse(u), v))
    }

    /// Weak-order comparison by length additivity:
    /// right: `u <= v` iff `l(u) + l(u^-1 v) = l(v)`; left is the mirror.
    pub fn weak_leq(&self, u: CoxElt, v: CoxElt, side: Side) -> bool {
        match side {
            Side::Right => {
                self.length(u) + self.length(self.mul(self.inverse(u), v)) == self.length(v)
            }
            Side::Left => {
                self.length(u) + self.length(self.mul(v, self.inverse(u))) == self.length(v)
            }
        }
    }

    /// Greatest lower bound in the chosen weak order, by greedy ascent: any
    /// common lower bound extends one atom step toward the meet, so the
    /// maximal reachable common lower bound is the meet.
    pub fn weak_meet(&self, u: CoxElt, v: CoxElt, side: Side) -> CoxElt {
        match side {
            Side::Right => self.meet_right(u, v),
            Side::Left => {
                let m = self.meet_right(self.inverse(u), self.inverse(v));
                self.inverse(m)
            }
        }
    }

    fn meet_right(&self, u: CoxElt, v: CoxElt) -> CoxElt {
        let mut z = self.identity();
        'grow: loop {
            for s in 0..self.rank() {
                let zs = self.mul(z, self.generator(s));
                if self.length(zs) > self.length(z)
                    && self.weak_leq(zs, u, Side::Right)
                    && self.weak_leq(zs, v, Side::Right)
                {
                    z = zs;
                    continue 'grow;
                }
            }
            return z;
        }
    }

    /// Least upper bound; always `Some` for an enumerated (finite) group.
    /// Computed from the meet through the longest-element antiautomorphism
    /// `x -> x w0` of the right weak order.
    pub fn weak_join(&self, u: CoxElt, v: CoxElt, side: Side) -> Option<CoxElt> {
        match side {
            Side::Right => {
                let w0 = self.longest_element();
                let m = self.meet_right(self.mul(u, w0), self.mul(v, w0));
                Some(self.mul(m, w0))
            }
            Side::Left => {
                let m = self.weak_join(self.inverse(u), self.inverse(v), Side::Right)?;
                Some(self.inverse(m))
            }
        }
    }

    /// The unique maximum of the weak orders.
    pub fn longest_element(&self) -> CoxElt {
        CoxElt(self.longest)
    }

    /// Support of the canonical word (as a generator bitmask).
    pub fn support(&self, u: CoxElt) -> u64 {
        self.word(u).iter().fold(0u64, |acc, &s| acc | (1 << s))
    }

    /// Elements of the standard parabolic subgroup generated by `gens`.
    pub fn parabolic_subgroup(&self, gens: &[usize]) -> Vec<CoxElt> {
        let mask = gens.iter().fold(0u64, |acc, &s| acc | (1 << s));
        self.elements()
            .filter(|&u| self.support(u) & !mask == 0)
            .collect()
    }

    /// Left coset `v * <gens>` as a `ParabolicCoset`.
    pub fn parabolic_coset(&self, v: CoxElt, gens: &[usize]) -> ParabolicCoset {
        let mut members: Vec<CoxElt> = self
            .parabolic_subgroup(gens)
            .into_iter()
            .map(|w| self.mul(v, w))
            .collect();
        members.sort();
        let rep = *members
            .iter()
            .min_by_key(|&&m| self.length(m))
            .expect("coset is nonempty");
        debug_assert_eq!(
            members.iter().filter(|&&m| self.length(m) == self.length(rep)).count(),
            1,
            "minimal-length coset representative must be unique"
        );
        ParabolicCoset {
            gens: gens.to_vec(),
            rep,
            members,
        }
    }

    /// All left cosets of the standard parabolic subgroup `<gens>`.
    pub fn parabolic_cosets(&self, gens: &[usize]) -> Vec<ParabolicCoset> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for v in self.elements() {
            if seen[v.0 as usize] {
                continue;
            }
            let coset = self.parabolic_coset(v, gens);
            for m in &coset.members {
                seen[m.0 as usize] = true;
            }
            out.push(coset);
        }
        out
    }

    /// Gate (nearest-point projection) of `v` onto a parabolic coset:
    /// the unique member realizing the Cayley distance, satisfying
    /// `d(v, v1) = d(v, gate) + d(gate, v1)` for every member `v1`.
    pub fn gate(&self, v: CoxElt, coset: &ParabolicCoset) -> CoxElt {
        // Strip right descents lying in the parabolic from v^-1 * rep.
        let mask = coset.gens.iter().fold(0u64, |acc, &s| acc | (1 << s));
        let mut x = self.mul(self.inverse(v), coset.rep);
        'strip: loop {
            let desc = self.right_descents(x) & mask;
            if desc == 0 {
                break 'strip;
            }
            let s = desc.trailing_zeros() as usize;
            x = self.mul(x, self.generator(s));
        }
        let gate = self.mul(v, x);
        for &m in &coset.members {
            assert_eq!(
                self.distance(v, m),
                self.distance(v, gate) + self.distance(gate, m),
                "gate identity violated"
            );
        }
        gate
    }

    /// Exact intersection of the member sets of a coset family.
    pub fn coset_family_intersection(&self, family: &[ParabolicCoset]) -> Vec<CoxElt> {
        let Some(first) = family.first() else {
            return self.elements().collect();
        };
        let mut acc = first.members.clone();
        for coset in &family[1..] {
            acc.retain(|m| coset.members.binary_search(m).is_ok());
        }
        acc
    }

    /// Hasse diagram of the right weak order, oriented small-to-large.
    pub fn oriented_coxeter_cell(&self) -> OrientedCell {
        let mut edges = Vec::new();
        for u in self.elements() {
            for s in 0..self.rank() {
                let us = self.mul(u, self.generator(s));
                if self.length(us) == self.length(u) + 1 {
                    edges.push((u, us, s as u8));
                }
            }
        }
        OrientedCell {
            order: self.order(),
            edges,
            source: self.identity(),
            sink: self.longest_element(),
        }
    }
}

/// Left coset of a standard parabolic subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolicCoset {
    /// Generator indices of the parabolic type, sorted.
    pub gens: Vec<usize>,
    /// Unique minimal-length member.
    pub rep: CoxElt,
    /// All members, sorted by element index.
    pub members: Vec<CoxElt>,
}

/// The oriented Coxeter cell: one node per group element, one directed edge
/// `u -> us` per length-increasing generator step.
pub struct OrientedCell {
    pub order: usize,
    pub edges: Vec<(CoxElt, CoxElt, u8)>,
    pub source: CoxElt,
    pub sink: CoxElt,
}

impl OrientedCell {
    pub fn to_dot(&self, group: &CoxeterGroup) -> String {
        let mut out = String::from("digraph coxeter_cell {\n  rankdir=BT;\n");
        for u in group.elements() {
            let _ = writeln!(out, "  n{} [label=\"{}\"];", u.0, group.word_string(u));
        }
        for &(u, v, s) in &self.edges {
            let _ = writeln!(
                out,
                "  n{} -> n{} [label=\"{}\"];",
                u.0, v.0, group.graph().vertex_names()[s as usize]
            );
        }
        out.push_str("}\n");
        out
    }

    /// Nodes with no incoming (resp. outgoing) edges.
    pub fn sources_and_sinks(&self) -> (Vec<CoxElt>, Vec<CoxElt>) {
        let mut has_in = vec![false; self.order];
        let mut has_out = vec![false; self.order];
        for &(u, v, _) in &self.edges {
            has_out[u.0 as usize] = true;
            has_in[v.0 as usize] = true;
        }
        let sources = (0..self.order as u32)
            .filter(|&i| !has_in[i as usize])
            .map(CoxElt)
            .collect();
        let sinks = (0..self.order as u32)
            .filter(|&i| !has_out[i as usize])
            .map(CoxElt)
            .collect();
        (sources, sinks)
    }
}

#[cfg(test)]
mod tests;
