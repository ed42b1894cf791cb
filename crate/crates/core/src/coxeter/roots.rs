//! Numerical reflection representation of a Coxeter system.
//!
//! Roots are vectors in the basis of simple roots, built by closing the set
//! of simple roots under the generator reflections. For a finite group the
//! closure is finite and every group element acts as a permutation of the
//! root list; all group-level bookkeeping afterwards is exact integer data.
//! Floating point only enters here, guarded by `TOL`.

use super::DefiningGraph;

/// Sign tolerance for root coordinates (root vectors of the groups in scope
/// are well separated; accumulated reflection error stays orders of
/// magnitude below this).
pub const TOL: f64 = 1e-9;

#[derive(Debug)]
pub struct RootSystem {
    /// Root coordinates in the simple-root basis.
    pub roots: Vec<Vec<f64>>,
    /// Whether the root is positive (all coordinates >= 0).
    pub positive: Vec<bool>,
    /// `refl[s][r]` = index of the image of root `r` under generator `s`.
    pub refl: Vec<Vec<u16>>,
    /// Index of the simple root of each generator.
    pub simple: Vec<u16>,
}

pub enum RootClosure {
    Finite(RootSystem),
    ExceededCap,
}

/// Bilinear form value B(alpha_i, alpha_j) = -cos(pi / m_ij), with
/// B(alpha_i, alpha_i) = 1 and absent edges read as m = infinity.
fn form(graph: &DefiningGraph, i: usize, j: usize) -> f64 {
    if i == j {
        return 1.0;
    }
    match graph.label(i, j) {
        Some(m) => -(std::f64::consts::PI / m as f64).cos(),
        None => -1.0,
    }
}

fn reflect(graph: &DefiningGraph, s: usize, v: &[f64]) -> Vec<f64> {
    // sigma_s(v) = v - 2 B(alpha_s, v) alpha_s: only coordinate s changes.
    let rank = v.len();
    let mut b = 0.0;
    for j in 0..rank {
        b += v[j] * form(graph, s, j);
    }
    let mut out = v.to_vec();
    out[s] -= 2.0 * b;
    out
}

fn find_root(roots: &[Vec<f64>], v: &[f64]) -> Option<u16> {
    'outer: for (i, r) in roots.iter().enumerate() {
        for (a, b) in r.iter().zip(v) {
            if (a - b).abs() > 1e-7 {
                continue 'outer;
            }
        }
        return Some(i as u16);
    }
    None
}

fn is_positive(v: &[f64]) -> bool {
    // Every root is positive or negative in simple-root coordinates.
    let pos = v.iter().all(|&x| x > -TOL);
    let neg = v.iter().all(|&x| x < TOL);
    assert!(
        pos || neg,
        "root with mixed signs: numerical breakdown in the reflection representation"
    );
    pos
}

/// Close the simple roots under the generator reflections. Stops and reports
/// `ExceededCap` once more than `2*cap + 2` roots appear, which certifies
/// |W| > cap (a finite group of order n has at most 2(n-1) roots).
pub fn close_roots(graph: &DefiningGraph, cap: usize) -> RootClosure {
    let rank = graph.rank();
    let bound = 2 * cap + 2;
    let mut roots: Vec<Vec<f64>> = Vec::new();
    let mut simple = Vec::with_capacity(rank);
    for s in 0..rank {
        let mut v = vec![0.0; rank];
        v[s] = 1.0;
        simple.push(roots.len() as u16);
        roots.push(v);
    }
    let mut head = 0;
    while head < roots.len() {
        let v = roots[head].clone();
        head += 1;
        for s in 0..rank {
            let w = reflect(graph, s, &v);
            if find_root(&roots, &w).is_none() {
                if roots.len() + 1 > bound {
                    return RootClosure::ExceededCap;
                }
                roots.push(w);
            }
        }
    }
    let n = roots.len();
    assert!(n <= u16::MAX as usize, "root system too large to index");
    let mut refl = vec![vec![0u16; n]; rank];
    for s in 0..rank {
        for r in 0..n {
            let w = reflect(graph, s, &roots[r]);
            let idx = find_root(&roots, &w)
                .expect("reflection image of a root must be a root of the closed system");
            refl[s][r] = idx;
        }
    }
    let positive = roots.iter().map(|v| is_positive(v)).collect();
    RootClosure::Finite(RootSystem {
        roots,
        positive,
        refl,
        simple,
    })
}
