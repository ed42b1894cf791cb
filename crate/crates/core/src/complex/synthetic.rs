//! Synthetic cell complexes given by explicit vertex sets, used as
//! counterexample fixtures for the cell-Helly conditions.
//!
//! The 1-skeleton is read off the 2-element cells, so interior edges of
//! higher cells must be listed explicitly in the fixture.

use serde::{Deserialize, Serialize};

use super::cells::{intersect_sorted, sorted_intersects};
use super::verify::{ConditionReport, VerifyReport};

#[derive(Serialize, Deserialize)]
struct SyntheticFile {
    vertices: Vec<String>,
    cells: Vec<Vec<String>>,
}

pub struct SyntheticComplex {
    pub names: Vec<String>,
    /// Sorted vertex-index sets.
    pub cells: Vec<Vec<u32>>,
}

impl SyntheticComplex {
    pub fn from_json(text: &str) -> Result<SyntheticComplex, String> {
        let file: SyntheticFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
        let index = |name: &str| -> Result<u32, String> {
            file.vertices
                .iter()
                .position(|v| v == name)
                .map(|i| i as u32)
                .ok_or_else(|| format!("cell uses unknown vertex {name:?}"))
        };
        let mut cells = Vec::new();
        for cell in &file.cells {
            let mut c = cell.iter().map(|n| index(n)).collect::<Result<Vec<u32>, _>>()?;
            c.sort_unstable();
            c.dedup();
            if c.is_empty() {
                return Err("empty cell".into());
            }
            cells.push(c);
        }
        Ok(SyntheticComplex { names: file.vertices, cells })
    }

    /// JSON sniffing: a document with a "cells" key is a synthetic complex.
    pub fn looks_like(text: &str) -> bool {
        serde_json::from_str::<serde_json::Value>(text)
            .map(|v| v.get("cells").is_some())
            .unwrap_or(false)
    }

    fn label(&self, cell: &[u32]) -> String {
        format!(
            "{{{}}}",
            cell.iter().map(|&v| self.names[v as usize].as_str()).collect::<Vec<_>>().join(",")
        )
    }

    /// Connectivity of a vertex subset in the 1-skeleton (2-element cells).
    fn connected(&self, verts: &[u32]) -> bool {
        if verts.len() <= 1 {
            return true;
        }
        let mut seen = vec![false; verts.len()];
        seen[0] = true;
        let mut frontier = vec![verts[0]];
        while let Some(u) = frontier.pop() {
            for cell in &self.cells {
                if cell.len() == 2 && cell.contains(&u) {
                    let other = if cell[0] == u { cell[1] } else { cell[0] };
                    if let Ok(k) = verts.binary_search(&other) {
                        if !seen[k] {
                            seen[k] = true;
                            frontier.push(other);
                        }
                    }
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Check the three cell-Helly conditions combinatorially. Condition 1
    /// here certifies connectivity of pairwise intersections (there is no
    /// ambient order on a synthetic complex).
    pub fn verify(&self, max_family: usize) -> VerifyReport {
        let n = self.cells.len();
        let mut c1_violations = Vec::new();
        let mut c1_tested = 0u64;
        for i in 0..n {
            for j in i + 1..n {
                let common = intersect_sorted(&self.cells[i], &self.cells[j]);
                if common.is_empty() {
                    continue;
                }
                c1_tested += 1;
                if !self.connected(&common) {
                    c1_violations.push(format!(
                        "{} ∩ {} is disconnected",
                        self.label(&self.cells[i]),
                        self.label(&self.cells[j])
                    ));
                }
            }
        }
        // Condition 2: pairwise-intersecting families meet.
        let mut c2_violations = Vec::new();
        let mut c2_tested = 0u64;
        let mut stack: Vec<(Vec<usize>, Vec<u32>)> = Vec::new();
        for i in (0..n).rev() {
            stack.push((vec![i], self.cells[i].clone()));
        }
        while let Some((family, common)) = stack.pop() {
            if family.len() >= 2 {
                c2_tested += 1;
                if common.is_empty() {
                    c2_violations.push(format!(
                        "family {} has empty intersection",
                        family.iter().map(|&i| self.label(&self.cells[i])).collect::<Vec<_>>().join(" , ")
                    ));
                    continue;
                }
            }
            if family.len() >= max_family {
                continue;
            }
            let last = *family.last().expect("nonempty");
            for k in last + 1..n {
                if family.iter().all(|&i| sorted_intersects(&self.cells[i], &self.cells[k])) {
                    let mut fam2 = family.clone();
                    fam2.push(k);
                    stack.push((fam2, intersect_sorted(&common, &self.cells[k])));
                }
            }
        }
        // Condition 3: triples of maximal cells admit a covering cell for D.
        let maximal: Vec<usize> = (0..n)
            .filter(|&i| {
                !(0..n).any(|j| {
                    j != i
                        && self.cells[i].len() < self.cells[j].len()
                        && self.cells[i].iter().all(|v| self.cells[j].contains(v))
                })
            })
            .collect();
        let mut c3_violations = Vec::new();
        let mut c3_tested = 0u64;
        for (a, &i) in maximal.iter().enumerate() {
            for (b, &j) in maximal.iter().enumerate().skip(a + 1) {
                if !sorted_intersects(&self.cells[i], &self.cells[j]) {
                    continue;
                }
                for &k in &maximal[b + 1..] {
                    if !sorted_intersects(&self.cells[i], &self.cells[k])
                        || !sorted_intersects(&self.cells[j], &self.cells[k])
                    {
                        continue;
                    }
                    c3_tested += 1;
                    let mut d = intersect_sorted(&self.cells[i], &self.cells[j]);
                    d.extend(intersect_sorted(&self.cells[j], &self.cells[k]));
                    d.extend(intersect_sorted(&self.cells[k], &self.cells[i]));
                    d.sort_unstable();
                    d.dedup();
                    let covered = self
                        .cells
                        .iter()
                        .any(|cell| d.iter().all(|v| cell.binary_search(v).is_ok()));
                    if !covered {
                        c3_violations.push(format!(
                            "no cell contains D for the triple {} , {} , {}",
                            self.label(&self.cells[i]),
                            self.label(&self.cells[j]),
                            self.label(&self.cells[k])
                        ));
                    }
                }
            }
        }
        c1_violations.sort();
        c2_violations.sort();
        c3_violations.sort();
        let verdict = if c1_violations.is_empty() && c2_violations.is_empty() && c3_violations.is_empty() {
            "pass"
        } else {
            "fail"
        };
        VerifyReport {
            oracle: "synthetic".into(),
            radius: 0,
            margin: 0,
            seed: 0,
            max_family,
            ball_vertices: self.names.len(),
            ball_edges: self.cells.iter().filter(|c| c.len() == 2).count(),
            cells_total: n,
            cells_eligible: n,
            conditions: vec![
                ConditionReport {
                    id: "C1-pairwise-intersections-connected".into(),
                    mode: "exhaustive".into(),
                    families_tested: c1_tested,
                    skipped_boundary: 0,
                    violations: c1_violations,
                },
                ConditionReport {
                    id: "C2-finite-helly-family-intersections".into(),
                    mode: "exhaustive".into(),
                    families_tested: c2_tested,
                    skipped_boundary: 0,
                    violations: c2_violations,
                },
                ConditionReport {
                    id: "C3-triple-max-cell-covers".into(),
                    mode: "exhaustive".into(),
                    families_tested: c3_tested,
                    skipped_boundary: 0,
                    violations: c3_violations,
                },
            ],
            verdict: verdict.to_string(),
        }
    }

    /// The 2-skeleton of the solid cube: 8 vertices, 12 edges, 6 squares and
    /// no 3-cell, the standard condition-3 counterexample.
    pub fn cube_two_skeleton() -> SyntheticComplex {
        let names: Vec<String> = (0..8u32)
            .map(|k| format!("v{}{}{}", k & 1, (k >> 1) & 1, (k >> 2) & 1))
            .collect();
        let mut cells: Vec<Vec<u32>> = (0..8).map(|v| vec![v]).collect();
        for v in 0..8u32 {
            for bit in [1u32, 2, 4] {
                if v & bit == 0 {
                    cells.push(vec![v, v | bit]);
                }
            }
        }
        for (b1, b2) in [(1u32, 2u32), (1, 4), (2, 4)] {
            for base in 0..8u32 {
                if base & b1 == 0 && base & b2 == 0 {
                    cells.push(vec![base, base | b1, base | b2, base | b1 | b2]);
                }
            }
        }
        for c in &mut cells {
            c.sort_unstable();
        }
        SyntheticComplex { names, cells }
    }

    pub fn to_json(&self) -> String {
        let file = SyntheticFile {
            vertices: self.names.clone(),
            cells: self
                .cells
                .iter()
                .map(|c| c.iter().map(|&v| self.names[v as usize].clone()).collect())
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("serialization cannot fail")
    }
}
