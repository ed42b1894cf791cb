//! Cells of the universal cover as intervals `[source, source·Δ_{Γ'}]`,
//! their intersections, and the FC-type triple-cell cover.

use crate::garside::GrpElt;

use super::ball::CayleyBall;
use super::oracle::{Form, Letter, WordOracle};
use super::{FCGraph, SphericalClique};

pub type CellId = u32;

/// A cell fully contained in the ball: its vertex set is
/// `source · (simples of the clique's Artin monoid)`.
#[derive(Debug, Clone)]
pub struct SCell {
    pub source: u32,
    /// Clique index into `FCGraph::cliques`; `None` is the vertex cell.
    pub ctype: Option<u16>,
    /// Sorted ball vertex indices.
    pub members: Vec<u32>,
}

/// All cells of a ball plus a per-vertex incidence index.
pub struct SCells {
    pub cells: Vec<SCell>,
    pub at_vertex: Vec<Vec<CellId>>,
}

impl SCells {
    /// Enumerate every cell whose full vertex set lies in the ball, for
    /// every source vertex and every spherical clique (vertex cells
    /// included).
    pub fn enumerate(ball: &CayleyBall, fc: &FCGraph) -> SCells {
        // Per clique: each Coxeter element reached from its ShortLex parent
        // by one generator step, so cells are walked along ball edges.
        let walks: Vec<Vec<(u32, u8)>> = fc
            .cliques
            .iter()
            .map(|c| {
                c.coxeter
                    .elements()
                    .skip(1)
                    .map(|u| {
                        let word = c.coxeter.word(u);
                        let parent = c.coxeter.eval_word(&word[..word.len() - 1]);
                        (parent.0, c.verts[*word.last().expect("nonidentity") as usize] as u8)
                    })
                    .collect()
            })
            .collect();
        let mut cells = Vec::new();
        for v in 0..ball.order() as u32 {
            cells.push(SCell { source: v, ctype: None, members: vec![v] });
            'clique: for (ci, c) in fc.cliques.iter().enumerate() {
                let mut member = vec![0u32; c.coxeter.order()];
                member[0] = v;
                for (k, &(parent, gen)) in walks[ci].iter().enumerate() {
                    match ball.succ(member[parent as usize], gen) {
                        Some(t) => member[k + 1] = t,
                        None => continue 'clique,
                    }
                }
                let mut members = member;
                members.sort_unstable();
                cells.push(SCell { source: v, ctype: Some(ci as u16), members });
            }
        }
        let mut at_vertex = vec![Vec::new(); ball.order()];
        for (id, cell) in cells.iter().enumerate() {
            for &m in &cell.members {
                at_vertex[m as usize].push(id as CellId);
            }
        }
        SCells { cells, at_vertex }
    }

    /// Cell ids sharing at least one vertex with `id` (including itself).
    pub fn neighbors(&self, id: CellId) -> Vec<CellId> {
        let mut out: Vec<CellId> = self.cells[id as usize]
            .members
            .iter()
            .flat_map(|&m| self.at_vertex[m as usize].iter().copied())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

pub fn intersect_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

pub fn sorted_intersects(a: &[u32], b: &[u32]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

/// Outcome of certifying that a vertex set is the full interval it spans.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntervalOutcome {
    Empty,
    /// Ball vertices of the minimum and maximum.
    Interval { lo: u32, hi: u32 },
    Violation(String),
}

/// Certify that `members` (a subset of `within.members`) is an interval of
/// the prefix order and is full: every vertex of `within` between `lo` and
/// `hi` belongs to it.
pub fn interval_certificate(
    ball: &CayleyBall,
    oracle: &WordOracle,
    within: &SCell,
    members: &[u32],
) -> IntervalOutcome {
    if members.is_empty() {
        return IntervalOutcome::Empty;
    }
    let leq = |u: u32, v: u32| oracle.leq(ball.form(u), ball.form(v));
    let lo = members.iter().copied().find(|&m| members.iter().all(|&z| leq(m, z)));
    let hi = members.iter().copied().find(|&m| members.iter().all(|&z| leq(z, m)));
    let (Some(lo), Some(hi)) = (lo, hi) else {
        return IntervalOutcome::Violation("vertex set has no least or greatest element".into());
    };
    for &z in &within.members {
        let inside = leq(lo, z) && leq(z, hi);
        if inside != members.binary_search(&z).is_ok() {
            return IntervalOutcome::Violation(format!(
                "vertex set is not the full interval: mismatch at ball vertex {z}"
            ));
        }
    }
    IntervalOutcome::Interval { lo, hi }
}

/// Vertices of the standard subcomplex of type `mask` through `base`,
/// restricted to the ball.
pub fn std_subcomplex_members(ball: &CayleyBall, oracle: &WordOracle, base: u32, mask: u64) -> Vec<u32> {
    (0..ball.order() as u32)
        .filter(|&x| oracle.in_parabolic(&oracle.inverse_mul(ball.form(base), ball.form(x)), mask))
        .collect()
}

/// A covering cell, possibly reaching outside the ball: described by a word
/// to its source and its (maximal) clique type.
#[derive(Debug, Clone)]
pub struct CoverCell {
    pub source_word: Vec<Letter>,
    pub clique: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverError {
    NotPairwiseIntersecting,
    Violation(String),
}

impl std::fmt::Display for CoverError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CoverError::NotPairwiseIntersecting => write!(f, "cells do not pairwise intersect"),
            CoverError::Violation(s) => write!(f, "{s}"),
        }
    }
}

fn clique_elt(c: &SphericalClique, word: &[Letter]) -> Option<GrpElt> {
    let mut signed = Vec::with_capacity(word.len());
    for l in word {
        let local = c.verts.iter().position(|&v| v == l.gen as usize)?;
        signed.push((c.garside.atoms()[local], l.positive));
    }
    c.garside.normal_form(&signed).ok()
}

fn clique_word(c: &SphericalClique, x: &GrpElt) -> Vec<Letter> {
    c.garside
        .signed_word(x)
        .into_iter()
        .map(|(atom, positive)| {
            let local = c.garside.atoms().iter().position(|&a| a == atom).expect("atom");
            Letter { gen: c.verts[local] as u8, positive }
        })
        .collect()
}

/// Test whether the ball vertex `m` lies in the cover cell.
pub fn cover_contains(
    fc: &FCGraph,
    oracle: &WordOracle,
    ball: &CayleyBall,
    cover: &CoverCell,
    m: u32,
) -> bool {
    let c = &fc.cliques[cover.clique];
    let source = oracle.canonical(&cover.source_word);
    let rel = oracle.inverse_mul(&source, ball.form(m));
    let Some(word) = oracle.express_in_parabolic(&rel, c.mask) else {
        return false;
    };
    let Some(elt) = clique_elt(c, &word) else { return false };
    c.garside.elt_to_simple(&elt).is_some()
}

/// The smallest member under the prefix order; every cell and every cell
/// cut by a standard subcomplex has one (it is an interval).
fn prefix_minimum(ball: &CayleyBall, oracle: &WordOracle, members: &[u32]) -> Option<u32> {
    members
        .iter()
        .copied()
        .find(|&m| members.iter().all(|&z| oracle.leq(ball.form(m), ball.form(z))))
}

/// Triple-cell cover for maximal cells of an FC complex, replaying the
/// three cases of the proof: common spherical subcomplex, two cells in a
/// common subcomplex, and the genuinely distinct case routed through the
/// spherical subcomplex of the union type.
pub fn triple_max_cell_cover(
    fc: &FCGraph,
    oracle: &WordOracle,
    ball: &CayleyBall,
    cells: [&SCell; 3],
) -> Result<CoverCell, CoverError> {
    let types: Vec<usize> = cells
        .iter()
        .map(|c| c.ctype.expect("maximal cells have a clique type") as usize)
        .collect();
    let maximal = fc.maximal_clique_indices();
    for &t in &types {
        assert!(maximal.contains(&t), "triple cover requires maximal cells");
    }
    let pair_members: [Vec<u32>; 3] = [
        intersect_sorted(&cells[0].members, &cells[1].members),
        intersect_sorted(&cells[1].members, &cells[2].members),
        intersect_sorted(&cells[2].members, &cells[0].members),
    ];
    if pair_members.iter().any(|m| m.is_empty()) {
        return Err(CoverError::NotPairwiseIntersecting);
    }
    let sources: Vec<&Form> = cells.iter().map(|c| ball.form(c.source)).collect();
    let same_subcomplex = |i: usize, j: usize| -> bool {
        types[i] == types[j]
            && oracle.in_parabolic(
                &oracle.inverse_mul(sources[i], sources[j]),
                fc.cliques[types[i]].mask,
            )
    };
    let cover = if same_subcomplex(0, 1) && same_subcomplex(1, 2) {
        spherical_cover(fc, oracle, types[0], sources[0], [sources[0], sources[1], sources[2]])?
    } else if let Some((i, j, k)) = [(0, 1, 2), (1, 2, 0), (2, 0, 1)]
        .into_iter()
        .find(|&(i, j, _)| same_subcomplex(i, j))
    {
        // Cut the third cell with the shared subcomplex X_i; the pairwise
        // intersections with it are unchanged.
        let base = sources[i];
        let mask = fc.cliques[types[i]].mask;
        let cut: Vec<u32> = cells[k]
            .members
            .iter()
            .copied()
            .filter(|&m| oracle.in_parabolic(&oracle.inverse_mul(base, ball.form(m)), mask))
            .collect();
        if cut.is_empty() {
            return Err(CoverError::Violation(
                "third cell misses the shared standard subcomplex".into(),
            ));
        }
        let sigma = prefix_minimum(ball, oracle, &cut)
            .ok_or_else(|| CoverError::Violation("cut cell has no source".into()))?;
        spherical_cover(fc, oracle, types[i], base, [sources[i], sources[j], ball.form(sigma)])?
    } else {
        // All three standard subcomplexes distinct: pick p in the triple
        // intersection, pass to the spherical subcomplex of the union of
        // the pairwise type intersections through p.
        let triple = intersect_sorted(&pair_members[0], &cells[2].members);
        if triple.is_empty() {
            return Err(CoverError::Violation(
                "pairwise intersecting cells with empty triple intersection".into(),
            ));
        }
        let p = triple[0];
        let pform = ball.form(p);
        let m01 = fc.cliques[types[0]].mask & fc.cliques[types[1]].mask;
        let m12 = fc.cliques[types[1]].mask & fc.cliques[types[2]].mask;
        let m20 = fc.cliques[types[2]].mask & fc.cliques[types[0]].mask;
        let union_mask = m01 | m12 | m20;
        let union_verts: Vec<usize> = (0..fc.graph.rank()).filter(|&v| union_mask >> v & 1 == 1).collect();
        let cover_clique = maximal
            .iter()
            .copied()
            .find(|&mc| union_mask & !fc.cliques[mc].mask == 0)
            .ok_or_else(|| {
                CoverError::Violation("no maximal clique contains the union type".into())
            })?;
        if union_verts.is_empty() {
            CoverCell { source_word: ball.word(p).to_vec(), clique: cover_clique }
        } else {
            let g0 = fc
                .clique_index(&union_verts)
                .ok_or_else(|| CoverError::Violation("union type is not a certified clique".into()))?;
            let c0 = &fc.cliques[g0];
            let mut bases = Vec::new();
            for cell in &cells {
                let cut: Vec<u32> = cell
                    .members
                    .iter()
                    .copied()
                    .filter(|&m| {
                        oracle.in_parabolic(&oracle.inverse_mul(pform, ball.form(m)), c0.mask)
                    })
                    .collect();
                let sigma = prefix_minimum(ball, oracle, &cut)
                    .ok_or_else(|| CoverError::Violation("cut cell has no source".into()))?;
                let word = oracle
                    .express_in_parabolic(&oracle.inverse_mul(pform, ball.form(sigma)), c0.mask)
                    .ok_or_else(|| CoverError::Violation("source escapes the subcomplex".into()))?;
                bases.push(clique_elt(c0, &word).ok_or_else(|| {
                    CoverError::Violation("source word leaves the clique group".into())
                })?);
            }
            let gcell = |b: &GrpElt| c0.garside.cell_of(b);
            let cover = c0
                .garside
                .triple_cell_cover(&gcell(&bases[0]), &gcell(&bases[1]), &gcell(&bases[2]))
                .map_err(|e| CoverError::Violation(format!("spherical cover failed: {e}")))?;
            let mut word = ball.word(p).to_vec();
            word.extend(clique_word(c0, &cover.base));
            // Extend the type-Γ0 cover to a maximal cell with the same source.
            CoverCell { source_word: word, clique: cover_clique }
        }
    };
    // The cover must contain D = union of the pairwise intersections.
    for part in &pair_members {
        for &m in part {
            if !cover_contains(fc, oracle, ball, &cover, m) {
                return Err(CoverError::Violation(format!(
                    "cover misses ball vertex {m} of D"
                )));
            }
        }
    }
    Ok(cover)
}

/// Spherical case: all three cells live in the standard subcomplex of type
/// `clique` through `base`; translate to the Garside group, take the
/// lattice-theoretic cover, and translate back.
fn spherical_cover(
    fc: &FCGraph,
    oracle: &WordOracle,
    clique: usize,
    base: &Form,
    cell_sources: [&Form; 3],
) -> Result<CoverCell, CoverError> {
    let c = &fc.cliques[clique];
    let mut bases = Vec::new();
    for s in cell_sources {
        let word = oracle
            .express_in_parabolic(&oracle.inverse_mul(base, s), c.mask)
            .ok_or_else(|| CoverError::Violation("cell source escapes the subcomplex".into()))?;
        bases.push(clique_elt(c, &word).ok_or_else(|| {
            CoverError::Violation("cell source word leaves the clique group".into())
        })?);
    }
    let gcell = |b: &GrpElt| c.garside.cell_of(b);
    let cover = c
        .garside
        .triple_cell_cover(&gcell(&bases[0]), &gcell(&bases[1]), &gcell(&bases[2]))
        .map_err(|e| CoverError::Violation(format!("spherical cover failed: {e}")))?;
    let mut word = oracle.to_word(base);
    word.extend(clique_word(c, &cover.base));
    Ok(CoverCell { source_word: word, clique })
}

/// Number of vertices a cell of this type must have.
pub fn cell_type_order(fc: &FCGraph, cell: &SCell) -> usize {
    match cell.ctype {
        None => 1,
        Some(ci) => fc.cliques[ci as usize].coxeter.order(),
    }
}
