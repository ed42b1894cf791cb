//! Garside monoids and groups over a finite simples lattice.
//!
//! A [`GarsideStructure`] carries the combinatorial data of a Garside monoid
//! with finitely many simple elements: the partial product on simples, both
//! divisibility lattices, the Garside element Δ with complements `a*`
//! (`a · a* = Δ`) and the conjugation automorphism φ. Structures arise either
//! from a finite Coxeter group (the spherical Artin monoid) or from an
//! explicit table file, which is validated on load.
//!
//! Group elements live in [`GrpElt`] as Δ-power left-weighted normal forms;
//! see [`elems`].

mod elems;
#[cfg(test)]
mod tests;

pub use elems::{GCell, GrpElt};

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coxeter::{CoxeterGroup, Side};

/// Index of a simple element within a [`GarsideStructure`].
#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simple(pub u32);

const UNDEF: u32 = u32::MAX;

#[derive(Debug, Error)]
pub enum GarsideError {
    #[error("unknown atom {0:?}")]
    UnknownAtom(String),
    #[error("element is not simple")]
    NotSimple,
    #[error("cells do not pairwise intersect")]
    NotPairwiseIntersecting,
    #[error("malformed structure file: {0}")]
    Parse(String),
    #[error("structure violation [{name}]: {detail}")]
    Violation { name: &'static str, detail: String },
}

fn violation(name: &'static str, detail: String) -> GarsideError {
    GarsideError::Violation { name, detail }
}

#[derive(Serialize, Deserialize)]
struct StructureFile {
    simples: Vec<String>,
    atoms: Vec<String>,
    delta: String,
    /// `[i, j, k]` meaning `simples[i] * simples[j] = simples[k]`;
    /// `k = -1` marks an undefined (non-simple) product.
    product: Vec<(u32, u32, i64)>,
}

/// Finite simples lattice with Δ, complements and φ.
#[derive(Debug)]
pub struct GarsideStructure {
    names: Vec<String>,
    atoms: Vec<Simple>,
    atom_index: HashMap<String, Simple>,
    identity: Simple,
    delta: Simple,
    len: Vec<u32>,
    prod: Vec<u32>,
    ldiv: Vec<u32>,
    rdiv: Vec<u32>,
    meet_p: Vec<u32>,
    join_p: Vec<u32>,
    meet_s: Vec<u32>,
    join_s: Vec<u32>,
    star: Vec<u32>,
    phi: Vec<u32>,
    phi_inv: Vec<u32>,
}

impl GarsideStructure {
    /// Garside structure of the spherical Artin monoid: simples are the
    /// elements of the finite Coxeter group, the partial product is defined
    /// exactly when lengths add, Δ lifts the longest element, and the simple
    /// lattices are the weak-order lattices.
    pub fn from_spherical(w: &CoxeterGroup) -> GarsideStructure {
        let n = w.order();
        let names: Vec<String> = w.elements().map(|u| w.word_string(u)).collect();
        let atoms: Vec<Simple> = (0..w.rank()).map(|s| Simple(w.generator(s).0)).collect();
        let atom_index = (0..w.rank())
            .map(|s| (w.graph().vertex_names()[s].clone(), Simple(w.generator(s).0)))
            .collect();
        let w0 = w.longest_element();
        let mut prod = vec![UNDEF; n * n];
        let mut ldiv = vec![UNDEF; n * n];
        let mut rdiv = vec![UNDEF; n * n];
        for a in w.elements() {
            for b in w.elements() {
                let ab = w.mul(a, b);
                if w.length(ab) == w.length(a) + w.length(b) {
                    prod[a.0 as usize * n + b.0 as usize] = ab.0;
                    // a * b = ab  gives  ldiv[a][ab] = b and rdiv[b][ab] = a.
                    ldiv[a.0 as usize * n + ab.0 as usize] = b.0;
                    rdiv[b.0 as usize * n + ab.0 as usize] = a.0;
                }
            }
        }
        let mut meet_p = vec![UNDEF; n * n];
        let mut join_p = vec![UNDEF; n * n];
        let mut meet_s = vec![UNDEF; n * n];
        let mut join_s = vec![UNDEF; n * n];
        for a in w.elements() {
            for b in w.elements() {
                let i = a.0 as usize * n + b.0 as usize;
                meet_p[i] = w.weak_meet(a, b, Side::Right).0;
                join_p[i] = w.weak_join(a, b, Side::Right).expect("finite lattice").0;
                meet_s[i] = w.weak_meet(a, b, Side::Left).0;
                join_s[i] = w.weak_join(a, b, Side::Left).expect("finite lattice").0;
            }
        }
        let star: Vec<u32> = w
            .elements()
            .map(|a| w.mul(w.inverse(a), w0).0)
            .collect();
        let phi: Vec<u32> = (0..n).map(|a| star[star[a] as usize]).collect();
        let mut phi_inv = vec![0u32; n];
        for (a, &fa) in phi.iter().enumerate() {
            phi_inv[fa as usize] = a as u32;
        }
        GarsideStructure {
            names,
            atoms,
            atom_index,
            identity: Simple(w.identity().0),
            delta: Simple(w0.0),
            len: w.elements().map(|u| w.length(u)).collect(),
            prod,
            ldiv,
            rdiv,
            meet_p,
            join_p,
            meet_s,
            join_s,
            star,
            phi,
            phi_inv,
        }
    }

    /// Load a structure from its JSON table file, deriving complements,
    /// lattice tables and lengths, and rejecting invalid input.
    pub fn from_json(text: &str) -> Result<GarsideStructure, GarsideError> {
        let file: StructureFile =
            serde_json::from_str(text).map_err(|e| GarsideError::Parse(e.to_string()))?;
        Self::from_file(file)
    }

    pub fn to_json(&self) -> String {
        let n = self.count();
        let mut product = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let k = self.prod[i * n + j];
                product.push((i as u32, j as u32, if k == UNDEF { -1 } else { k as i64 }));
            }
        }
        let file = StructureFile {
            simples: self.names.clone(),
            atoms: self.atoms.iter().map(|&a| self.name(a).to_string()).collect(),
            delta: self.name(self.delta).to_string(),
            product,
        };
        serde_json::to_string_pretty(&file).expect("structure serialization cannot fail")
    }

    fn from_file(file: StructureFile) -> Result<GarsideStructure, GarsideError> {
        let n = file.simples.len();
        if n == 0 {
            return Err(violation("empty", "no simples listed".into()));
        }
        let mut name_index = HashMap::new();
        for (i, s) in file.simples.iter().enumerate() {
            if name_index.insert(s.clone(), i).is_some() {
                return Err(violation("duplicate-simple", format!("{s:?} listed twice")));
            }
        }
        let mut prod = vec![UNDEF; n * n];
        let mut defined = vec![false; n * n];
        for &(i, j, k) in &file.product {
            let (i, j) = (i as usize, j as usize);
            if i >= n || j >= n || (k >= 0 && k as usize >= n) || k < -1 {
                return Err(violation("product-index", format!("entry ({i},{j},{k})")));
            }
            if std::mem::replace(&mut defined[i * n + j], true) {
                return Err(violation("product-duplicate", format!("entry ({i},{j})")));
            }
            if k >= 0 {
                prod[i * n + j] = k as u32;
            }
        }
        // Identity: the unique two-sided unit of the product table.
        let is_unit = |e: usize| {
            (0..n).all(|x| prod[e * n + x] == x as u32 && prod[x * n + e] == x as u32)
        };
        let units: Vec<usize> = (0..n).filter(|&e| is_unit(e)).collect();
        let &identity = units
            .first()
            .ok_or_else(|| violation("identity", "no two-sided unit among simples".into()))?;
        if units.len() > 1 {
            return Err(violation("identity", "multiple units".into()));
        }
        let delta = *name_index
            .get(&file.delta)
            .ok_or_else(|| violation("delta", format!("{:?} not a simple", file.delta)))?;
        let atoms: Vec<usize> = file
            .atoms
            .iter()
            .map(|a| {
                name_index
                    .get(a)
                    .copied()
                    .ok_or_else(|| violation("atom", format!("{a:?} not a simple")))
            })
            .collect::<Result<_, _>>()?;
        // Cancellativity on the table.
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let ab = prod[a * n + b];
                    let ac = prod[a * n + c];
                    if b != c && ab != UNDEF && ab == ac {
                        return Err(violation(
                            "left-cancellation",
                            format!("{a}*{b} = {a}*{c}"),
                        ));
                    }
                    let ba = prod[b * n + a];
                    let ca = prod[c * n + a];
                    if b != c && ba != UNDEF && ba == ca {
                        return Err(violation(
                            "right-cancellation",
                            format!("{b}*{a} = {c}*{a}"),
                        ));
                    }
                }
            }
        }
        // Associativity wherever all products stay simple.
        for a in 0..n {
            for b in 0..n {
                let ab = prod[a * n + b];
                if ab == UNDEF {
                    continue;
                }
                for c in 0..n {
                    let ab_c = prod[ab as usize * n + c];
                    let bc = prod[b * n + c];
                    if ab_c != UNDEF {
                        if bc == UNDEF || prod[a * n + bc as usize] != ab_c {
                            return Err(violation(
                                "associativity",
                                format!("({a}*{b})*{c} != {a}*({b}*{c})"),
                            ));
                        }
                    } else if bc != UNDEF && prod[a * n + bc as usize] != UNDEF {
                        return Err(violation(
                            "associativity",
                            format!("{a}*({b}*{c}) defined but ({a}*{b})*{c} undefined"),
                        ));
                    }
                }
            }
        }
        // Atoms: indivisible, and they generate all simples.
        for &a in &atoms {
            if a == identity {
                return Err(violation("atom", "identity listed as an atom".into()));
            }
            for b in 0..n {
                for c in 0..n {
                    if b != identity && c != identity && prod[b * n + c] == a as u32 {
                        return Err(violation(
                            "atom-indivisible",
                            format!("atom {a} = {b}*{c}"),
                        ));
                    }
                }
            }
        }
        {
            let mut reach = vec![false; n];
            reach[identity] = true;
            let mut frontier = vec![identity];
            while let Some(x) = frontier.pop() {
                for &a in &atoms {
                    let xa = prod[x * n + a];
                    if xa != UNDEF && !reach[xa as usize] {
                        reach[xa as usize] = true;
                        frontier.push(xa as usize);
                    }
                }
            }
            if let Some(orphan) = (0..n).find(|&x| !reach[x]) {
                return Err(violation(
                    "atom-generation",
                    format!("simple {orphan} is not a product of atoms"),
                ));
            }
            // Non-atom, non-identity simples must be divisible.
            for x in 0..n {
                if x != identity && !atoms.contains(&x) {
                    let divisible = (0..n).any(|b| {
                        (0..n).any(|c| {
                            b != identity && c != identity && prod[b * n + c] == x as u32
                        })
                    });
                    if !divisible {
                        return Err(violation(
                            "atoms-missing",
                            format!("simple {x} is an undeclared atom"),
                        ));
                    }
                }
            }
        }
        // Additive length: uniform atom length first, then a bounded search
        // over integer atom lengths (covers monoids like <x,y | x^2 = y^3>).
        let len = derive_length(n, identity, &prod, &atoms)?;
        // Divisibility and lattice tables.
        let mut ldiv = vec![UNDEF; n * n];
        let mut rdiv = vec![UNDEF; n * n];
        for a in 0..n {
            for b in 0..n {
                let ab = prod[a * n + b];
                if ab != UNDEF {
                    ldiv[a * n + ab as usize] = b as u32;
                    rdiv[b * n + ab as usize] = a as u32;
                }
            }
        }
        for a in 0..n {
            if ldiv[a * n + delta] == UNDEF || rdiv[a * n + delta] == UNDEF {
                return Err(violation(
                    "delta-maximal",
                    format!("simple {a} does not divide delta on both sides"),
                ));
            }
        }
        let lattice = |div: &Vec<u32>, join: bool| -> Result<Vec<u32>, GarsideError> {
            let leq = |x: usize, y: usize| div[x * n + y] != UNDEF;
            let mut table = vec![UNDEF; n * n];
            for a in 0..n {
                for b in 0..n {
                    let bounds: Vec<usize> = (0..n)
                        .filter(|&c| {
                            if join {
                                leq(a, c) && leq(b, c)
                            } else {
                                leq(c, a) && leq(c, b)
                            }
                        })
                        .collect();
                    let best = bounds.iter().copied().find(|&m| {
                        bounds
                            .iter()
                            .all(|&c| if join { leq(m, c) } else { leq(c, m) })
                    });
                    match best {
                        Some(m) => table[a * n + b] = m as u32,
                        None => {
                            return Err(violation(
                                "lattice",
                                format!(
                                    "simples {a}, {b} have no {}",
                                    if join { "join" } else { "meet" }
                                ),
                            ))
                        }
                    }
                }
            }
            Ok(table)
        };
        let meet_p = lattice(&ldiv, false)?;
        let join_p = lattice(&ldiv, true)?;
        let meet_s = lattice(&rdiv, false)?;
        let join_s = lattice(&rdiv, true)?;
        // Complements: a* with a * a* = delta, a bijection.
        let mut star = vec![UNDEF; n];
        for a in 0..n {
            star[a] = ldiv[a * n + delta];
        }
        {
            let mut seen = vec![false; n];
            for &s in &star {
                if std::mem::replace(&mut seen[s as usize], true) {
                    return Err(violation("star-bijection", "complement map not injective".into()));
                }
            }
        }
        let phi: Vec<u32> = (0..n).map(|a| star[star[a] as usize]).collect();
        let mut phi_inv = vec![UNDEF; n];
        for (a, &fa) in phi.iter().enumerate() {
            phi_inv[fa as usize] = a as u32;
        }
        // phi must be a product- and order-preserving automorphism.
        for a in 0..n {
            for b in 0..n {
                let ab = prod[a * n + b];
                let fab = prod[phi[a] as usize * n + phi[b] as usize];
                let expect = if ab == UNDEF { UNDEF } else { phi[ab as usize] };
                if fab != expect {
                    return Err(violation(
                        "phi-automorphism",
                        format!("phi breaks product of ({a},{b})"),
                    ));
                }
            }
        }
        let gs = GarsideStructure {
            names: file.simples,
            atoms: atoms.iter().map(|&a| Simple(a as u32)).collect(),
            atom_index: atoms
                .iter()
                .map(|&a| (file_name(&name_index, a), Simple(a as u32)))
                .collect(),
            identity: Simple(identity as u32),
            delta: Simple(delta as u32),
            len,
            prod,
            ldiv,
            rdiv,
            meet_p,
            join_p,
            meet_s,
            join_s,
            star,
            phi,
            phi_inv,
        };
        if gs.phi_simple(gs.identity) != gs.identity || gs.phi_simple(gs.delta) != gs.delta {
            return Err(violation("phi-fixed-points", "phi must fix 1 and delta".into()));
        }
        Ok(gs)
    }

    pub fn count(&self) -> usize {
        self.names.len()
    }

    pub fn simples(&self) -> impl Iterator<Item = Simple> {
        (0..self.count() as u32).map(Simple)
    }

    pub fn atoms(&self) -> &[Simple] {
        &self.atoms
    }

    pub fn atom_by_name(&self, name: &str) -> Option<Simple> {
        self.atom_index.get(name).copied()
    }

    pub fn name(&self, a: Simple) -> &str {
        &self.names[a.0 as usize]
    }

    pub fn one(&self) -> Simple {
        self.identity
    }

    pub fn delta(&self) -> Simple {
        self.delta
    }

    pub fn simple_len(&self, a: Simple) -> u32 {
        self.len[a.0 as usize]
    }

    pub fn delta_len(&self) -> u32 {
        self.simple_len(self.delta)
    }

    /// Product of simples when it is simple.
    pub fn prod_simple(&self, a: Simple, b: Simple) -> Option<Simple> {
        let k = self.prod[a.0 as usize * self.count() + b.0 as usize];
        (k != UNDEF).then_some(Simple(k))
    }

    /// `c` with `a * c = b`, when `a` prefix-divides `b`.
    pub fn ldiv_simple(&self, a: Simple, b: Simple) -> Option<Simple> {
        let k = self.ldiv[a.0 as usize * self.count() + b.0 as usize];
        (k != UNDEF).then_some(Simple(k))
    }

    /// `c` with `c * a = b`, when `a` suffix-divides `b`.
    pub fn rdiv_simple(&self, a: Simple, b: Simple) -> Option<Simple> {
        let k = self.rdiv[a.0 as usize * self.count() + b.0 as usize];
        (k != UNDEF).then_some(Simple(k))
    }

    pub fn leq_p_simple(&self, a: Simple, b: Simple) -> bool {
        self.ldiv_simple(a, b).is_some()
    }

    pub fn geq_s_simple(&self, b: Simple, a: Simple) -> bool {
        self.rdiv_simple(a, b).is_some()
    }

    pub fn meet_p_simple(&self, a: Simple, b: Simple) -> Simple {
        Simple(self.meet_p[a.0 as usize * self.count() + b.0 as usize])
    }

    pub fn join_p_simple(&self, a: Simple, b: Simple) -> Simple {
        Simple(self.join_p[a.0 as usize * self.count() + b.0 as usize])
    }

    pub fn meet_s_simple(&self, a: Simple, b: Simple) -> Simple {
        Simple(self.meet_s[a.0 as usize * self.count() + b.0 as usize])
    }

    pub fn join_s_simple(&self, a: Simple, b: Simple) -> Simple {
        Simple(self.join_s[a.0 as usize * self.count() + b.0 as usize])
    }

    /// The complement `a*` with `a * a* = Δ`.
    pub fn star(&self, a: Simple) -> Simple {
        Simple(self.star[a.0 as usize])
    }

    /// φ(a) = Δ⁻¹ a Δ on simples (equals the double complement `a**`).
    pub fn phi_simple(&self, a: Simple) -> Simple {
        Simple(self.phi[a.0 as usize])
    }

    pub fn phi_inv_simple(&self, a: Simple) -> Simple {
        Simple(self.phi_inv[a.0 as usize])
    }

    pub fn phi_pow_simple(&self, a: Simple, k: i64) -> Simple {
        let mut x = a;
        if k >= 0 {
            for _ in 0..k {
                x = self.phi_simple(x);
            }
        } else {
            for _ in 0..-k {
                x = self.phi_inv_simple(x);
            }
        }
        x
    }

    /// Parse a whitespace-separated word of signed atoms; inverse letters are
    /// written `a⁻¹`, `a^-1` or `a-`.
    pub fn parse_word(&self, text: &str) -> Result<Vec<(Simple, bool)>, GarsideError> {
        let mut out = Vec::new();
        for token in text.split_whitespace() {
            let (name, positive) = if let Some(stripped) = token.strip_suffix("⁻¹") {
                (stripped, false)
            } else if let Some(stripped) = token.strip_suffix("^-1") {
                (stripped, false)
            } else if let Some(stripped) = token.strip_suffix('-') {
                (stripped, false)
            } else {
                (token, true)
            };
            let atom = self
                .atom_by_name(name)
                .ok_or_else(|| GarsideError::UnknownAtom(name.to_string()))?;
            out.push((atom, positive));
        }
        Ok(out)
    }
}

fn file_name(index: &HashMap<String, usize>, target: usize) -> String {
    index
        .iter()
        .find(|&(_, &i)| i == target)
        .map(|(name, _)| name.clone())
        .expect("index is total")
}

/// Derive an additive length function on the simples: try uniform atom
/// length 1 first, then search small integer atom lengths.
fn derive_length(
    n: usize,
    identity: usize,
    prod: &[u32],
    atoms: &[usize],
) -> Result<Vec<u32>, GarsideError> {
    let check = |len: &[u32]| -> bool {
        if len.iter().enumerate().any(|(x, &l)| (l == 0) != (x == identity)) {
            return false;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = prod[a * n + b];
                if ab != UNDEF && len[ab as usize] != len[a] + len[b] {
                    return false;
                }
            }
        }
        true
    };
    let propagate = |atom_len: &[u32]| -> Option<Vec<u32>> {
        let mut len = vec![UNDEF; n];
        len[identity] = 0;
        loop {
            let mut changed = false;
            for x in 0..n {
                if len[x] == UNDEF {
                    continue;
                }
                for (&a, &la) in atoms.iter().zip(atom_len) {
                    let xa = prod[x * n + a];
                    if xa != UNDEF {
                        let v = len[x] + la;
                        if len[xa as usize] == UNDEF {
                            len[xa as usize] = v;
                            changed = true;
                        } else if len[xa as usize] != v {
                            return None;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        len.iter().all(|&l| l != UNDEF).then_some(len)
    };
    if let Some(len) = propagate(&vec![1; atoms.len()]) {
        if check(&len) {
            return Ok(len);
        }
    }
    if atoms.len() <= 4 {
        let cap = 12u32;
        let total = (cap as usize).pow(atoms.len() as u32);
        for code in 0..total {
            let mut c = code;
            let atom_len: Vec<u32> = (0..atoms.len())
                .map(|_| {
                    let l = (c % cap as usize) as u32 + 1;
                    c /= cap as usize;
                    l
                })
                .collect();
            if let Some(len) = propagate(&atom_len) {
                if check(&len) {
                    return Ok(len);
                }
            }
        }
    }
    Err(violation(
        "length",
        "no additive length function found (atom lengths searched up to 12)".into(),
    ))
}
