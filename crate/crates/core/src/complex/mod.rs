//! Desk-scale balls in the universal cover of the Salvetti complex of an
//! FC-type defining graph, cells as intervals, and the cell-Helly
//! verification pipeline.

mod ball;
mod cells;
pub mod oracle;
mod synthetic;
mod verify;

pub use ball::CayleyBall;
pub use cells::{CellId, SCell, SCells};
pub use oracle::{Form, Letter, OracleKind, WordOracle};
pub use synthetic::SyntheticComplex;
pub use verify::{cell_helly_verify, ConditionReport, VerifyParams, VerifyReport};

use thiserror::Error;

use crate::coxeter::{CoxeterGroup, CoxeterError, DefiningGraph};
use crate::garside::GarsideStructure;

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("not FC: complete subgraph {{{}}} generates an infinite Coxeter group", clique.join(", "))]
    NotFc { clique: Vec<String> },
    #[error("undecided within cap = {cap}: complete subgraph {{{}}} is spherical but did not enumerate", clique.join(", "))]
    CapExceeded { clique: Vec<String>, cap: usize },
    #[error("unsupported oracle shape: {reason}")]
    OracleUnsupported { reason: String },
    #[error("margin {given} is too small: every spherical clique must fit, need at least {required}")]
    MarginTooSmall { required: u32, given: u32 },
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
}

/// A spherical clique of the defining graph with its enumerated Coxeter
/// group and Garside structure.
#[derive(Debug)]
pub struct SphericalClique {
    /// Global generator indices, sorted.
    pub verts: Vec<usize>,
    pub mask: u64,
    pub coxeter: CoxeterGroup,
    pub garside: GarsideStructure,
}

/// FC-certified defining graph: every clique is spherical and carries its
/// enumerated groups.
#[derive(Debug)]
pub struct FCGraph {
    pub graph: DefiningGraph,
    /// All nonempty cliques, sorted by (size, vertex list). The empty
    /// clique (vertex cells) is implicit.
    pub cliques: Vec<SphericalClique>,
}

impl FCGraph {
    pub fn clique_index(&self, verts: &[usize]) -> Option<usize> {
        self.cliques.iter().position(|c| c.verts == verts)
    }

    pub fn clique_names(&self, idx: usize) -> Vec<String> {
        self.cliques[idx]
            .verts
            .iter()
            .map(|&v| self.graph.vertex_names()[v].clone())
            .collect()
    }

    /// Indices of the inclusion-maximal cliques.
    pub fn maximal_clique_indices(&self) -> Vec<usize> {
        self.graph
            .maximal_cliques()
            .iter()
            .map(|m| self.clique_index(m).expect("maximal cliques are certified"))
            .collect()
    }

    /// Largest Garside-element length over the spherical cliques.
    pub fn max_delta_len(&self) -> u32 {
        self.cliques.iter().map(|c| c.garside.delta_len()).max().unwrap_or(0)
    }
}

/// Positive-definiteness of the cosine matrix of a clique, which decides
/// finiteness of its Coxeter group. Cholesky with a small pivot tolerance;
/// affine diagrams show up as a zero pivot.
fn cosine_matrix_positive_definite(graph: &DefiningGraph, verts: &[usize]) -> bool {
    let n = verts.len();
    let mut b = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in 0..n {
            b[i][j] = if i == j {
                1.0
            } else {
                match graph.label(verts[i], verts[j]) {
                    Some(m) => -(std::f64::consts::PI / m as f64).cos(),
                    None => -1.0,
                }
            };
        }
    }
    let mut l = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut sum = b[i][j];
            for k in 0..j {
                sum -= l[i][k] * l[j][k];
            }
            if i == j {
                if sum < 1e-9 {
                    return false;
                }
                l[i][i] = sum.sqrt();
            } else {
                l[i][j] = sum / l[j][j];
            }
        }
    }
    true
}

/// Certify the FC property: enumerate every clique's Coxeter group. A
/// clique whose cosine matrix is not positive definite is definitively
/// non-spherical (`NotFc`); a positive-definite clique that still exceeds
/// the cap is reported as undecided (`CapExceeded`).
pub fn certify_fc(graph: &DefiningGraph, cap: usize) -> Result<FCGraph, ComplexError> {
    let mut cliques = Vec::new();
    let mut all = graph.cliques();
    all.sort_by_key(|c| (c.len(), c.clone()));
    for verts in all {
        if verts.is_empty() {
            continue;
        }
        let names = || verts.iter().map(|&v| graph.vertex_names()[v].clone()).collect();
        if !cosine_matrix_positive_definite(graph, &verts) {
            return Err(ComplexError::NotFc { clique: names() });
        }
        let sub = graph.full_subgraph(&verts);
        let coxeter = match CoxeterGroup::enumerate(&sub, cap) {
            Ok(w) => w,
            Err(CoxeterError::NotFiniteWithinCap { .. }) => {
                return Err(ComplexError::CapExceeded { clique: names(), cap })
            }
            Err(e) => return Err(e.into()),
        };
        let garside = GarsideStructure::from_spherical(&coxeter);
        let mask = verts.iter().fold(0u64, |m, &v| m | 1 << v);
        cliques.push(SphericalClique { verts, mask, coxeter, garside });
    }
    Ok(FCGraph { graph: graph.clone(), cliques })
}
