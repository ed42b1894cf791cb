//! Group elements in Δ-power left-weighted canonical form, with the
//! prefix/suffix lattice operations and interval cells.

use super::{GarsideError, GarsideStructure, Simple};

/// Canonical form `Δ^power · x₁ ⋯ x_l` with the factor sequence
/// left-weighted, every factor distinct from 1 and the first from Δ.
/// Equality of group elements is structural equality of forms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GrpElt {
    pub power: i64,
    pub tail: Vec<Simple>,
}

impl GrpElt {
    pub fn identity() -> GrpElt {
        GrpElt { power: 0, tail: Vec::new() }
    }

    pub fn delta_pow(p: i64) -> GrpElt {
        GrpElt { power: p, tail: Vec::new() }
    }

    /// Infimum: the maximal `p` with `Δ^p ≼ x`.
    pub fn inf(&self) -> i64 {
        self.power
    }

    /// Supremum: the minimal `p` with `x ≼ Δ^p`.
    pub fn sup(&self) -> i64 {
        self.power + self.tail.len() as i64
    }

    /// The element lies in the monoid iff its infimum is nonnegative.
    pub fn is_positive(&self) -> bool {
        self.power >= 0
    }

    pub fn is_identity(&self) -> bool {
        self.power == 0 && self.tail.is_empty()
    }
}

impl GarsideStructure {
    pub fn elt_identity(&self) -> GrpElt {
        GrpElt::identity()
    }

    pub fn elt_simple(&self, a: Simple) -> GrpElt {
        if a == self.one() {
            GrpElt::identity()
        } else if a == self.delta() {
            GrpElt::delta_pow(1)
        } else {
            GrpElt { power: 0, tail: vec![a] }
        }
    }

    /// Recognize a simple element from its canonical form.
    pub fn elt_to_simple(&self, x: &GrpElt) -> Option<Simple> {
        match (x.power, x.tail.len()) {
            (0, 0) => Some(self.one()),
            (1, 0) => Some(self.delta()),
            (0, 1) => Some(x.tail[0]),
            _ => None,
        }
    }

    /// Local left-weighting: slide the largest possible piece of `b` into
    /// `a`, returning the rewritten pair. The pair `(a, b)` is left-weighted
    /// iff `a* ∧ b = 1`.
    fn left_weight_pair(&self, a: Simple, b: Simple) -> (Simple, Simple) {
        let c = self.meet_p_simple(self.star(a), b);
        if c == self.one() {
            (a, b)
        } else {
            let a2 = self.prod_simple(a, c).expect("c divides a*, so a*c is simple");
            let b2 = self.ldiv_simple(c, b).expect("c divides b");
            (a2, b2)
        }
    }

    /// Rewrite a sequence of simples into left-weighted form; returns the
    /// number of leading Δ factors (extracted into the power) and the tail.
    fn normalize(&self, seq: Vec<Simple>) -> (i64, Vec<Simple>) {
        let one = self.one();
        let delta = self.delta();
        let mut v: Vec<Simple> = seq.into_iter().filter(|&a| a != one).collect();
        let budget = v.len() * v.len() * self.delta_len() as usize + 16;
        let mut passes = 0usize;
        loop {
            let mut changed = false;
            for i in 0..v.len().saturating_sub(1) {
                let (a, b) = self.left_weight_pair(v[i], v[i + 1]);
                if a != v[i] {
                    v[i] = a;
                    v[i + 1] = b;
                    changed = true;
                }
            }
            v.retain(|&a| a != one);
            if !changed {
                break;
            }
            passes += 1;
            assert!(passes <= budget, "left-weighting failed to stabilize");
        }
        let deltas = v.iter().take_while(|&&a| a == delta).count();
        v.drain(..deltas);
        debug_assert!(!v.contains(&delta), "interior Δ in a left-weighted sequence");
        (deltas as i64, v)
    }

    fn phi_pow_tail(&self, tail: &[Simple], k: i64) -> Vec<Simple> {
        tail.iter().map(|&a| self.phi_pow_simple(a, k)).collect()
    }

    pub fn mul(&self, x: &GrpElt, y: &GrpElt) -> GrpElt {
        // Δ^p t · Δ^q u = Δ^{p+q} φ^q(t) u.
        let mut seq = self.phi_pow_tail(&x.tail, y.power);
        seq.extend_from_slice(&y.tail);
        let (k, tail) = self.normalize(seq);
        GrpElt { power: x.power + y.power + k, tail }
    }

    pub fn inverse(&self, x: &GrpElt) -> GrpElt {
        // (Δ^p x₁⋯x_l)⁻¹ = x_l⁻¹ ⋯ x₁⁻¹ Δ^{-p}, with s⁻¹ = Δ⁻¹ φ⁻¹(s*).
        let mut acc = GrpElt::identity();
        for &a in x.tail.iter().rev() {
            let ainv = GrpElt {
                power: -1,
                tail: match self.phi_inv_simple(self.star(a)) {
                    s if s == self.one() => vec![],
                    s => vec![s],
                },
            };
            acc = self.mul(&acc, &ainv);
        }
        self.mul(&acc, &GrpElt::delta_pow(-x.power))
    }

    /// Canonical form of a word of signed atoms.
    pub fn normal_form(&self, word: &[(Simple, bool)]) -> Result<GrpElt, GarsideError> {
        let mut acc = GrpElt::identity();
        for &(a, positive) in word {
            if !self.atoms().contains(&a) {
                return Err(GarsideError::UnknownAtom(self.name(a).to_string()));
            }
            let letter = self.elt_simple(a);
            let letter = if positive { letter } else { self.inverse(&letter) };
            acc = self.mul(&acc, &letter);
        }
        Ok(acc)
    }

    /// Canonical form of a positive word of simples (not just atoms).
    pub fn elt_from_simples(&self, factors: &[Simple]) -> GrpElt {
        let (k, tail) = self.normalize(factors.to_vec());
        GrpElt { power: k, tail }
    }

    /// Prefix order: `x ≼ y` iff `x⁻¹ y` is positive.
    pub fn prefix_leq(&self, x: &GrpElt, y: &GrpElt) -> bool {
        self.mul(&self.inverse(x), y).is_positive()
    }

    /// Suffix order: `x ≽ y` iff `x y⁻¹` is positive.
    pub fn suffix_geq(&self, x: &GrpElt, y: &GrpElt) -> bool {
        self.mul(x, &self.inverse(y)).is_positive()
    }

    /// Maximal simple prefix of a positive element.
    fn head(&self, x: &GrpElt) -> Simple {
        debug_assert!(x.is_positive());
        if x.power > 0 {
            self.delta()
        } else {
            x.tail.first().copied().unwrap_or(self.one())
        }
    }

    /// Maximal simple suffix of a positive element (`x ∧_s Δ`), computed by
    /// folding the simple suffix divisors.
    fn max_simple_suffix(&self, x: &GrpElt) -> Simple {
        debug_assert!(x.is_positive());
        if x.power > 0 {
            return self.delta();
        }
        let mut best = self.one();
        for s in self.simples() {
            if s == self.one() || s == best {
                continue;
            }
            if self.mul(x, &self.inverse(&self.elt_simple(s))).is_positive() {
                best = self.join_s_simple(best, s);
            }
        }
        best
    }

    /// Greatest common prefix, by iterated head-gcd after translating into
    /// the monoid (valid by left-invariance of the prefix lattice).
    pub fn meet_p(&self, x: &GrpElt, y: &GrpElt) -> GrpElt {
        let m = x.inf().min(y.inf()).min(0);
        let shift = GrpElt::delta_pow(-m);
        let mut u = self.mul(&shift, x);
        let mut v = self.mul(&shift, y);
        let mut common = Vec::new();
        loop {
            let a = self.meet_p_simple(self.head(&u), self.head(&v));
            if a == self.one() {
                break;
            }
            common.push(a);
            let ainv = self.inverse(&self.elt_simple(a));
            u = self.mul(&ainv, &u);
            v = self.mul(&ainv, &v);
            debug_assert!(u.is_positive() && v.is_positive());
        }
        self.mul(&GrpElt::delta_pow(m), &self.elt_from_simples(&common))
    }

    /// Greatest common suffix, by peeling maximal simple suffixes after
    /// right-translation (the suffix lattice is right-invariant).
    pub fn meet_s(&self, x: &GrpElt, y: &GrpElt) -> GrpElt {
        let k = 0i64.max(-x.inf()).max(-y.inf());
        let shift = GrpElt::delta_pow(k);
        let mut u = self.mul(x, &shift);
        let mut v = self.mul(y, &shift);
        let mut common_rev = Vec::new();
        loop {
            let e = self.meet_s_simple(self.max_simple_suffix(&u), self.max_simple_suffix(&v));
            if e == self.one() {
                break;
            }
            common_rev.push(e);
            let einv = self.inverse(&self.elt_simple(e));
            u = self.mul(&u, &einv);
            v = self.mul(&v, &einv);
            debug_assert!(u.is_positive() && v.is_positive());
        }
        common_rev.reverse();
        self.mul(&self.elt_from_simples(&common_rev), &GrpElt::delta_pow(-k))
    }

    /// Least common multiple in the prefix order, via the inverse duality
    /// `x ∨_p y = (x⁻¹ ∧_s y⁻¹)⁻¹`.
    pub fn join_p(&self, x: &GrpElt, y: &GrpElt) -> GrpElt {
        self.inverse(&self.meet_s(&self.inverse(x), &self.inverse(y)))
    }

    /// Least upper bound in the suffix order, via `x ∨_s y = (x⁻¹ ∧_p y⁻¹)⁻¹`.
    pub fn join_s(&self, x: &GrpElt, y: &GrpElt) -> GrpElt {
        self.inverse(&self.meet_p(&self.inverse(x), &self.inverse(y)))
    }

    /// φ extended to the group: φ(x) = Δ⁻¹ x Δ, acting factorwise.
    pub fn phi_apply(&self, x: &GrpElt) -> GrpElt {
        let seq = self.phi_pow_tail(&x.tail, 1);
        let (k, tail) = self.normalize(seq);
        GrpElt { power: x.power + k, tail }
    }

    pub fn render(&self, x: &GrpElt) -> String {
        let factors = if x.tail.is_empty() {
            "()".to_string()
        } else {
            x.tail
                .iter()
                .map(|&a| self.name(a).to_string())
                .collect::<Vec<_>>()
                .join(" · ")
        };
        format!("Δ^{} · {}", x.power, factors)
    }

    /// A positive word of atoms spelling `x` when `x` is positive.
    pub fn positive_word(&self, x: &GrpElt) -> Option<Vec<Simple>> {
        if !x.is_positive() {
            return None;
        }
        let mut out = Vec::new();
        for _ in 0..x.power {
            out.extend(self.simple_atom_word(self.delta()));
        }
        for &f in &x.tail {
            out.extend(self.simple_atom_word(f));
        }
        Some(out)
    }

    /// Decompose a simple into atoms by greedy division.
    pub fn simple_atom_word(&self, a: Simple) -> Vec<Simple> {
        let mut out = Vec::new();
        let mut rest = a;
        'outer: while rest != self.one() {
            for &atom in self.atoms() {
                if let Some(r) = self.ldiv_simple(atom, rest) {
                    out.push(atom);
                    rest = r;
                    continue 'outer;
                }
            }
            panic!("simple not generated by atoms");
        }
        out
    }

    /// A signed word of atoms spelling an arbitrary element.
    pub fn signed_word(&self, x: &GrpElt) -> Vec<(Simple, bool)> {
        let mut out = Vec::new();
        if x.power >= 0 {
            for _ in 0..x.power {
                out.extend(self.simple_atom_word(self.delta()).into_iter().map(|a| (a, true)));
            }
        } else {
            let delta_word = self.simple_atom_word(self.delta());
            for _ in 0..-x.power {
                out.extend(delta_word.iter().rev().map(|&a| (a, false)));
            }
        }
        for &f in &x.tail {
            out.extend(self.simple_atom_word(f).into_iter().map(|a| (a, true)));
        }
        out
    }
}

/// Interval cell `[base, base·Δ]` in the prefix order; its vertex set is
/// exactly `{ base·s : s simple }`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GCell {
    pub base: GrpElt,
}

/// Nonempty interval `[lo, hi]` in the prefix order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: GrpElt,
    pub hi: GrpElt,
}

impl GarsideStructure {
    pub fn cell_of(&self, base: &GrpElt) -> GCell {
        GCell { base: base.clone() }
    }

    pub fn cell_top(&self, c: &GCell) -> GrpElt {
        self.mul(&c.base, &GrpElt::delta_pow(1))
    }

    pub fn cell_member(&self, c: &GCell, x: &GrpElt) -> bool {
        let rel = self.mul(&self.inverse(&c.base), x);
        self.elt_to_simple(&rel).is_some()
    }

    pub fn cell_vertices(&self, c: &GCell) -> Vec<GrpElt> {
        self.simples()
            .map(|s| self.mul(&c.base, &self.elt_simple(s)))
            .collect()
    }

    /// Interval intersection `[f₁∨f₂, g₁∧g₂]`, or `None` when disjoint.
    pub fn cell_intersection(&self, c1: &GCell, c2: &GCell) -> Option<Interval> {
        let lo = self.join_p(&c1.base, &c2.base);
        let hi = self.meet_p(&self.cell_top(c1), &self.cell_top(c2));
        self.prefix_leq(&lo, &hi).then_some(Interval { lo, hi })
    }

    pub fn interval_contains(&self, i: &Interval, x: &GrpElt) -> bool {
        self.prefix_leq(&i.lo, x) && self.prefix_leq(x, &i.hi)
    }

    /// Members of both cells, by scanning one cell's vertex set.
    pub fn cell_common_vertices(&self, c1: &GCell, c2: &GCell) -> Vec<GrpElt> {
        let mut out: Vec<GrpElt> = self
            .cell_vertices(c1)
            .into_iter()
            .filter(|x| self.cell_member(c2, x))
            .collect();
        out.sort();
        out
    }

    /// Constructive triple-cell cover: given pairwise intersecting cells,
    /// produce a cell containing `(C₁∩C₂) ∪ (C₂∩C₃) ∪ (C₃∩C₁)`, replaying
    /// the lattice computation step by step and asserting the intermediate
    /// identities `f_ij (w_i ∧_s w_j) = h`, `h (w_i* ∧_p w_j*) = g_ij`,
    /// `f a = h`, `h b = g` and `a b ≼ Δ`.
    pub fn triple_cell_cover(
        &self,
        c1: &GCell,
        c2: &GCell,
        c3: &GCell,
    ) -> Result<GCell, GarsideError> {
        let cells = [c1, c2, c3];
        let f: Vec<GrpElt> = cells.iter().map(|c| c.base.clone()).collect();
        let g: Vec<GrpElt> = cells.iter().map(|c| self.cell_top(c)).collect();
        let pair = |i: usize, j: usize| -> Result<(GrpElt, GrpElt), GarsideError> {
            let lo = self.join_p(&f[i], &f[j]);
            let hi = self.meet_p(&g[i], &g[j]);
            if !self.prefix_leq(&lo, &hi) {
                return Err(GarsideError::NotPairwiseIntersecting);
            }
            Ok((lo, hi))
        };
        let (f12, g12) = pair(0, 1)?;
        let (f23, g23) = pair(1, 2)?;
        let (f31, g31) = pair(2, 0)?;
        // h is a point of the triple intersection [∨ f_i, ∧ g_i].
        let h = self.join_p(&self.join_p(&f[0], &f[1]), &f[2]);
        let top = self.meet_p(&self.meet_p(&g[0], &g[1]), &g[2]);
        assert!(
            self.prefix_leq(&h, &top),
            "pairwise intersecting interval cells have a common point"
        );
        let w: Vec<Simple> = (0..3)
            .map(|i| {
                let rel = self.mul(&self.inverse(&f[i]), &h);
                self.elt_to_simple(&rel).expect("f_i ≼ h ≼ f_i Δ forces a simple")
            })
            .collect();
        let wstar: Vec<Simple> = (0..3)
            .map(|i| {
                let rel = self.mul(&self.inverse(&h), &g[i]);
                self.elt_to_simple(&rel).expect("h ≼ g_i = h w_i* forces a simple")
            })
            .collect();
        for i in 0..3 {
            assert_eq!(self.star(w[i]), wstar[i], "w_i w_i* = Δ");
        }
        // Equation set (1) of the construction.
        let eq1 = |fij: &GrpElt, gij: &GrpElt, i: usize, j: usize| {
            let ws = self.meet_s_simple(w[i], w[j]);
            assert_eq!(&self.mul(fij, &self.elt_simple(ws)), &h, "f_ij (w_i ∧_s w_j) = h");
            let wps = self.meet_p_simple(wstar[i], wstar[j]);
            assert_eq!(&self.mul(&h, &self.elt_simple(wps)), gij, "h (w_i* ∧_p w_j*) = g_ij");
        };
        eq1(&f12, &g12, 0, 1);
        eq1(&f23, &g23, 1, 2);
        eq1(&f31, &g31, 2, 0);
        let fcov = self.meet_p(&self.meet_p(&f12, &f23), &f31);
        let gcov = self.join_p(&self.join_p(&g12, &g23), &g31);
        let a = self.join_s_simple(
            self.join_s_simple(self.meet_s_simple(w[0], w[1]), self.meet_s_simple(w[1], w[2])),
            self.meet_s_simple(w[2], w[0]),
        );
        let b = self.join_p_simple(
            self.join_p_simple(
                self.meet_p_simple(wstar[0], wstar[1]),
                self.meet_p_simple(wstar[1], wstar[2]),
            ),
            self.meet_p_simple(wstar[2], wstar[0]),
        );
        assert_eq!(self.mul(&fcov, &self.elt_simple(a)), h, "f a = h");
        assert_eq!(self.mul(&h, &self.elt_simple(b)), gcov, "h b = g");
        let ab = self.mul(&self.elt_simple(a), &self.elt_simple(b));
        assert!(
            self.prefix_leq(&ab, &GrpElt::delta_pow(1)),
            "a b ≼ Δ, so [f, fΔ] contains [f, g]"
        );
        let cover = GCell { base: fcov };
        // The cover must contain D = union of the pairwise intersections.
        for (ci, cj) in [(c1, c2), (c2, c3), (c3, c1)] {
            for v in self.cell_common_vertices(ci, cj) {
                assert!(self.cell_member(&cover, &v), "cover misses a point of D");
            }
        }
        Ok(cover)
    }

    /// Two vertices of the Helly graph are adjacent iff they share a cell,
    /// i.e. `g = f a⁻¹ b` for simples `a`, `b`.
    pub fn helly_adjacent(&self, f: &GrpElt, g: &GrpElt) -> bool {
        let x = self.mul(&self.inverse(f), g);
        self.simples().any(|a| {
            let ax = self.mul(&self.elt_simple(a), &x);
            self.elt_to_simple(&ax).is_some()
        })
    }
}
