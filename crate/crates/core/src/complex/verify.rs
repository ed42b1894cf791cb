//! Cell-Helly verification: sweeps a margin-guarded interior of a ball for
//! the three defining conditions and emits a deterministic report.
//!
//! * condition 1 — the vertex set of every pairwise cell intersection is
//!   the full subcomplex on an interval (the structural certificate for
//!   connected and simply connected intersections);
//! * condition 2 — pairwise-intersecting families of cells (up to
//!   `max_family`) have nonempty interval intersections;
//! * condition 3 — pairwise-intersecting triples of maximal cells admit a
//!   maximal cell containing the union of their pairwise intersections.

use rayon::prelude::*;
use serde::Serialize;

use super::ball::CayleyBall;
use super::cells::{
    interval_certificate, intersect_sorted, sorted_intersects, triple_max_cell_cover, CellId,
    IntervalOutcome, SCells,
};
use super::oracle::WordOracle;
use super::{ComplexError, FCGraph};

/// Hard cap per condition; enumeration beyond it is reported as truncated.
const FAMILY_BUDGET: u64 = 2_000_000;

#[derive(Debug, Clone, Copy)]
pub struct VerifyParams {
    pub radius: u32,
    pub margin: u32,
    pub seed: u64,
    pub max_family: usize,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams { radius: 4, margin: 2, seed: 0x5eed, max_family: 4 }
    }
}

#[derive(Debug, Serialize)]
pub struct ConditionReport {
    pub id: String,
    pub mode: String,
    pub families_tested: u64,
    pub skipped_boundary: u64,
    pub violations: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub oracle: String,
    pub radius: u32,
    pub margin: u32,
    pub seed: u64,
    pub max_family: usize,
    pub ball_vertices: usize,
    pub ball_edges: usize,
    pub cells_total: usize,
    pub cells_eligible: usize,
    pub conditions: Vec<ConditionReport>,
    pub verdict: String,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

fn cell_label(fc: &FCGraph, ball: &CayleyBall, cells: &SCells, id: CellId) -> String {
    let cell = &cells.cells[id as usize];
    let names = fc.graph.vertex_names();
    let t = match cell.ctype {
        None => "vertex".to_string(),
        Some(ci) => fc.clique_names(ci as usize).join(","),
    };
    format!("cell(source={}, type={{{t}}})", ball.label(cell.source, names))
}

/// Run the full verification at the given parameters.
pub fn cell_helly_verify(
    fc: &FCGraph,
    params: VerifyParams,
) -> Result<VerifyReport, ComplexError> {
    let required = fc.max_delta_len();
    if params.margin < required {
        return Err(ComplexError::MarginTooSmall { required, given: params.margin });
    }
    let oracle = WordOracle::for_fc(fc, 2 * params.radius)?;
    let ball = CayleyBall::build(&oracle, params.radius);
    let cells = SCells::enumerate(&ball, fc);
    let interior = params.radius - params.margin;
    let eligible: Vec<bool> = cells
        .cells
        .iter()
        .map(|c| ball.distance(c.source) <= interior)
        .collect();
    let cells_eligible = eligible.iter().filter(|&&e| e).count();

    let mut conditions = Vec::new();
    conditions.push(condition_pairs(fc, &oracle, &ball, &cells, &eligible));
    conditions.push(condition_families(fc, &oracle, &ball, &cells, &eligible, params.max_family));
    conditions.push(condition_covers(fc, &oracle, &ball, &cells, &eligible));
    let verdict = if conditions.iter().all(|c| c.violations.is_empty()) {
        "pass"
    } else {
        "fail"
    };
    Ok(VerifyReport {
        oracle: oracle.kind().name().to_string(),
        radius: params.radius,
        margin: params.margin,
        seed: params.seed,
        max_family: params.max_family,
        ball_vertices: ball.order(),
        ball_edges: ball.edge_count(),
        cells_total: cells.cells.len(),
        cells_eligible,
        conditions,
        verdict: verdict.to_string(),
    })
}

/// Intersecting pairs with both cells in the interior; pairs reaching an
/// ineligible partner are counted as boundary-skipped.
fn eligible_pairs(cells: &SCells, eligible: &[bool]) -> (Vec<(CellId, CellId)>, u64) {
    let mut pairs = Vec::new();
    let mut skipped = 0u64;
    for id in 0..cells.cells.len() as CellId {
        if !eligible[id as usize] {
            continue;
        }
        for other in cells.neighbors(id) {
            if other <= id {
                continue;
            }
            if eligible[other as usize] {
                pairs.push((id, other));
            } else {
                skipped += 1;
            }
        }
    }
    (pairs, skipped)
}

fn condition_pairs(
    fc: &FCGraph,
    oracle: &WordOracle,
    ball: &CayleyBall,
    cells: &SCells,
    eligible: &[bool],
) -> ConditionReport {
    let (pairs, skipped) = eligible_pairs(cells, eligible);
    let truncated = pairs.len() as u64 > FAMILY_BUDGET;
    let tested: Vec<(CellId, CellId)> =
        pairs.into_iter().take(FAMILY_BUDGET as usize).collect();
    let violations: Vec<String> = tested
        .par_iter()
        .filter_map(|&(a, b)| {
            let ca = &cells.cells[a as usize];
            let cb = &cells.cells[b as usize];
            let common = intersect_sorted(&ca.members, &cb.members);
            match interval_certificate(ball, oracle, ca, &common) {
                IntervalOutcome::Empty | IntervalOutcome::Interval { .. } => None,
                IntervalOutcome::Violation(why) => Some(format!(
                    "{} ∩ {}: {why}",
                    cell_label(fc, ball, cells, a),
                    cell_label(fc, ball, cells, b)
                )),
            }
        })
        .collect();
    ConditionReport {
        id: "C1-pairwise-intersections-full-intervals".into(),
        mode: if truncated { format!("truncated({FAMILY_BUDGET})") } else { "exhaustive".into() },
        families_tested: tested.len() as u64,
        skipped_boundary: skipped,
        violations: sorted(violations),
    }
}

fn condition_families(
    fc: &FCGraph,
    oracle: &WordOracle,
    ball: &CayleyBall,
    cells: &SCells,
    eligible: &[bool],
    max_family: usize,
) -> ConditionReport {
    let (pairs, mut skipped) = eligible_pairs(cells, eligible);
    // Depth-first extension of pairwise-intersecting families.
    let neighbor_cache: Vec<Vec<CellId>> = (0..cells.cells.len() as CellId)
        .map(|id| {
            if eligible[id as usize] {
                cells
                    .neighbors(id)
                    .into_iter()
                    .filter(|&o| o > id)
                    .collect()
            } else {
                Vec::new()
            }
        })
        .collect();
    let mut families = 0u64;
    let mut violations = Vec::new();
    let mut truncated = false;
    let mut stack: Vec<(Vec<CellId>, Vec<u32>)> = pairs
        .iter()
        .rev()
        .map(|&(a, b)| {
            (
                vec![a, b],
                intersect_sorted(&cells.cells[a as usize].members, &cells.cells[b as usize].members),
            )
        })
        .collect();
    'outer: while let Some((family, common)) = stack.pop() {
        if family.len() >= 3 {
            families += 1;
            if families > FAMILY_BUDGET {
                truncated = true;
                break 'outer;
            }
            let first = &cells.cells[family[0] as usize];
            match interval_certificate(ball, oracle, first, &common) {
                IntervalOutcome::Interval { .. } => {}
                IntervalOutcome::Empty => violations.push(format!(
                    "pairwise-intersecting family {{{}}} has empty intersection",
                    family
                        .iter()
                        .map(|&i| cell_label(fc, ball, cells, i))
                        .collect::<Vec<_>>()
                        .join(", ")
                )),
                IntervalOutcome::Violation(why) => violations.push(format!(
                    "family {{{}}}: {why}",
                    family
                        .iter()
                        .map(|&i| cell_label(fc, ball, cells, i))
                        .collect::<Vec<_>>()
                        .join(", ")
                )),
            }
        }
        if family.len() >= max_family {
            continue;
        }
        let last = *family.last().expect("family nonempty");
        for &cand in &neighbor_cache[last as usize] {
            if !eligible[cand as usize] {
                skipped += 1;
                continue;
            }
            let cc = &cells.cells[cand as usize].members;
            if family
                .iter()
                .all(|&i| sorted_intersects(&cells.cells[i as usize].members, cc))
            {
                let mut inter = common.clone();
                inter.retain(|m| cc.binary_search(m).is_ok());
                let mut fam2 = family.clone();
                fam2.push(cand);
                stack.push((fam2, inter));
            }
        }
    }
    ConditionReport {
        id: "C2-finite-helly-family-intersections".into(),
        mode: if truncated { format!("truncated({FAMILY_BUDGET})") } else { "exhaustive".into() },
        families_tested: families,
        skipped_boundary: skipped,
        violations: sorted(violations),
    }
}

fn condition_covers(
    fc: &FCGraph,
    oracle: &WordOracle,
    ball: &CayleyBall,
    cells: &SCells,
    eligible: &[bool],
) -> ConditionReport {
    let maximal = fc.maximal_clique_indices();
    let is_max = |id: CellId| -> bool {
        matches!(cells.cells[id as usize].ctype, Some(ci) if maximal.contains(&(ci as usize)))
    };
    let mut triples = Vec::new();
    let mut skipped = 0u64;
    for a in 0..cells.cells.len() as CellId {
        if !is_max(a) || !eligible[a as usize] {
            continue;
        }
        let nbrs: Vec<CellId> = cells.neighbors(a).into_iter().filter(|&o| o > a && is_max(o)).collect();
        for (i, &b) in nbrs.iter().enumerate() {
            if !eligible[b as usize] {
                skipped += 1;
                continue;
            }
            for &c in &nbrs[i + 1..] {
                if !eligible[c as usize] {
                    skipped += 1;
                    continue;
                }
                if sorted_intersects(
                    &cells.cells[b as usize].members,
                    &cells.cells[c as usize].members,
                ) {
                    triples.push((a, b, c));
                }
            }
        }
    }
    let truncated = triples.len() as u64 > FAMILY_BUDGET;
    triples.truncate(FAMILY_BUDGET as usize);
    let violations: Vec<String> = triples
        .par_iter()
        .filter_map(|&(a, b, c)| {
            match triple_max_cell_cover(
                fc,
                oracle,
                ball,
                [
                    &cells.cells[a as usize],
                    &cells.cells[b as usize],
                    &cells.cells[c as usize],
                ],
            ) {
                Ok(_) => None,
                Err(e) => Some(format!(
                    "triple ({}, {}, {}): {e}",
                    cell_label(fc, ball, cells, a),
                    cell_label(fc, ball, cells, b),
                    cell_label(fc, ball, cells, c)
                )),
            }
        })
        .collect();
    ConditionReport {
        id: "C3-triple-max-cell-covers".into(),
        mode: if truncated { format!("truncated({FAMILY_BUDGET})") } else { "exhaustive".into() },
        families_tested: triples.len() as u64,
        skipped_boundary: skipped,
        violations: sorted(violations),
    }
}

fn sorted(mut v: Vec<String>) -> Vec<String> {
    v.sort();
    v
}
