//! Exact word-problem backends for Artin groups of the supported shapes:
//! spherical (Garside normal form), right-angled (heap normal form), and
//! FC graphs whose clique nerve is a tree (amalgam normal form over the
//! spherical clique factors, with ShortLex-least coset representatives).

use std::collections::{HashMap, HashSet};
use std::sync::Mutex;

use serde::Serialize;

use crate::coxeter::CoxeterGroup;
use crate::garside::{GarsideStructure, GrpElt, Simple};

use super::{ComplexError, FCGraph};

/// Signed generator letter over the global defining graph.
#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: u8,
    pub positive: bool,
}

impl Letter {
    pub fn pos(gen: u8) -> Letter {
        Letter { gen, positive: true }
    }

    pub fn neg(gen: u8) -> Letter {
        Letter { gen, positive: false }
    }

    pub fn inverse(self) -> Letter {
        Letter { gen: self.gen, positive: !self.positive }
    }
}

pub fn invert_word(word: &[Letter]) -> Vec<Letter> {
    word.iter().rev().map(|l| l.inverse()).collect()
}

fn word_mask(word: &[Letter]) -> u64 {
    word.iter().fold(0, |m, l| m | 1 << l.gen)
}

/// Canonical element representation; structural equality is group equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Form {
    /// Δ-power normal form (spherical backend).
    Garside(GrpElt),
    /// Canonical word (heap and amalgam backends).
    Word(Vec<Letter>),
}

#[derive(Debug, Copy, Clone, PartialEq, Eq, Serialize)]
pub enum OracleKind {
    SphericalGarside,
    RightAngled,
    TreeAmalgam,
}

impl OracleKind {
    pub fn name(&self) -> &'static str {
        match self {
            OracleKind::SphericalGarside => "spherical-garside",
            OracleKind::RightAngled => "right-angled",
            OracleKind::TreeAmalgam => "tree-of-cliques-amalgam",
        }
    }
}

/// A spherical clique factor: the Garside structure of its Artin group,
/// addressed through global generator indices.
pub(crate) struct LeafFactor {
    /// Global generator index per local atom position.
    verts: Vec<u8>,
    mask: u64,
    gs: GarsideStructure,
    /// Global support mask of each simple.
    simple_support: Vec<u64>,
    atom_of_gen: HashMap<u8, Simple>,
    shortlex: Mutex<ShortlexEnum>,
    rep_cache: Mutex<HashMap<(GrpElt, u64), Vec<Letter>>>,
}

/// Lazily extended enumeration of factor elements in ShortLex word order.
struct ShortlexEnum {
    words: Vec<Vec<Letter>>,
    seen: HashSet<GrpElt>,
    frontier: Vec<(Vec<Letter>, GrpElt)>,
    complete_len: usize,
}

impl LeafFactor {
    pub(crate) fn new(verts: Vec<u8>, w: &CoxeterGroup, gs: GarsideStructure) -> LeafFactor {
        let mask = verts.iter().fold(0u64, |m, &v| m | 1 << v);
        let simple_support: Vec<u64> = w
            .elements()
            .map(|u| w.word(u).iter().fold(0u64, |m, &s| m | 1 << verts[s as usize]))
            .collect();
        let atom_of_gen = verts
            .iter()
            .enumerate()
            .map(|(local, &g)| (g, gs.atoms()[local]))
            .collect();
        LeafFactor {
            verts,
            mask,
            gs,
            simple_support,
            atom_of_gen,
            shortlex: Mutex::new(ShortlexEnum {
                words: vec![Vec::new()],
                seen: HashSet::from([GrpElt::identity()]),
                frontier: vec![(Vec::new(), GrpElt::identity())],
                complete_len: 0,
            }),
            rep_cache: Mutex::new(HashMap::new()),
        }
    }

    pub(crate) fn garside(&self) -> &GarsideStructure {
        &self.gs
    }

    pub(crate) fn mask(&self) -> u64 {
        self.mask
    }

    /// Translate a word over global letters into a factor element.
    pub(crate) fn elt(&self, word: &[Letter]) -> GrpElt {
        let mut acc = GrpElt::identity();
        for l in word {
            let atom = self.atom_of_gen[&l.gen];
            let e = self.gs.elt_simple(atom);
            let e = if l.positive { e } else { self.gs.inverse(&e) };
            acc = self.gs.mul(&acc, &e);
        }
        acc
    }

    /// Render an element back as a word over global letters.
    pub(crate) fn word_of(&self, x: &GrpElt) -> Vec<Letter> {
        self.gs
            .signed_word(x)
            .into_iter()
            .map(|(atom, positive)| {
                let local = self.gs.atoms().iter().position(|&a| a == atom).expect("atom");
                Letter { gen: self.verts[local], positive }
            })
            .collect()
    }

    fn positive_support(&self, x: &GrpElt) -> u64 {
        debug_assert!(x.is_positive());
        let mut m = if x.power > 0 { self.mask } else { 0 };
        for &f in &x.tail {
            m |= self.simple_support[f.0 as usize];
        }
        m
    }

    /// Fraction test: x ∈ A_J iff both parts of x = u v⁻¹ (v = 1 ∨ x⁻¹,
    /// u = x v) have support inside J.
    pub(crate) fn elt_in_span(&self, x: &GrpElt, mask: u64) -> bool {
        let v = self.gs.join_p(&GrpElt::identity(), &self.gs.inverse(x));
        let u = self.gs.mul(x, &v);
        self.positive_support(&u) & !mask == 0 && self.positive_support(&v) & !mask == 0
    }

    fn elt_express(&self, x: &GrpElt, mask: u64) -> Option<Vec<Letter>> {
        let v = self.gs.join_p(&GrpElt::identity(), &self.gs.inverse(x));
        let u = self.gs.mul(x, &v);
        if self.positive_support(&u) & !mask != 0 || self.positive_support(&v) & !mask != 0 {
            return None;
        }
        let mut out = self.word_of(&u);
        out.extend(invert_word(&self.word_of(&v)));
        Some(out)
    }

    /// Extend the ShortLex enumeration to cover all elements with a word of
    /// length `target`, and run `scan` over elements in ShortLex order.
    fn shortlex_scan<T>(
        &self,
        target: usize,
        mut scan: impl FnMut(&[Letter], &GrpElt) -> Option<T>,
    ) -> Option<T> {
        let mut sl = self.shortlex.lock().expect("shortlex lock");
        while sl.complete_len < target {
            let mut next = Vec::new();
            for (word, elt) in std::mem::take(&mut sl.frontier) {
                for local in 0..self.verts.len() as u8 {
                    for positive in [true, false] {
                        let letter = Letter { gen: self.verts[local as usize], positive };
                        let atom = self.gs.atoms()[local as usize];
                        let e = self.gs.elt_simple(atom);
                        let e = if positive { e } else { self.gs.inverse(&e) };
                        let elt2 = self.gs.mul(&elt, &e);
                        if sl.seen.insert(elt2.clone()) {
                            let mut w2 = word.clone();
                            w2.push(letter);
                            next.push((w2, elt2));
                        }
                    }
                }
            }
            for (w, e) in &next {
                sl.words.push(w.clone());
                let _ = e;
            }
            sl.frontier = next;
            sl.complete_len += 1;
        }
        // Scan in enumeration order (ShortLex by construction).
        for w in &sl.words {
            let elt = self.elt(w);
            if let Some(t) = scan(w, &elt) {
                return Some(t);
            }
        }
        None
    }

    /// ShortLex-least word representing the left coset `y · A_J`.
    fn coset_rep(&self, y: &GrpElt, y_len: usize, jmask: u64) -> Vec<Letter> {
        if let Some(hit) = self.rep_cache.lock().expect("rep lock").get(&(y.clone(), jmask)) {
            return hit.clone();
        }
        let rep = self
            .shortlex_scan(y_len, |w, welt| {
                let rel = self.gs.mul(&self.gs.inverse(welt), y);
                self.elt_in_span(&rel, jmask).then(|| w.to_vec())
            })
            .expect("y itself witnesses its coset within the length bound");
        self.rep_cache
            .lock()
            .expect("rep lock")
            .insert((y.clone(), jmask), rep.clone());
        rep
    }
}

/// Either a spherical clique factor or a nested amalgam.
pub(crate) enum Node {
    Leaf(LeafFactor),
    Split(SplitNode),
}

pub(crate) struct SplitNode {
    left: Box<Node>,
    right: LeafFactor,
    jmask: u64,
    left_mask: u64,
    right_mask: u64,
    rep_cache: Mutex<HashMap<(Vec<Letter>, u64), Vec<Letter>>>,
    shortlex: Mutex<WordShortlex>,
}

struct WordShortlex {
    words: Vec<Vec<Letter>>,
    seen: HashSet<Vec<Letter>>,
    frontier: Vec<Vec<Letter>>,
    complete_len: usize,
    letters: Vec<u8>,
}

impl Node {
    pub(crate) fn mask(&self) -> u64 {
        match self {
            Node::Leaf(f) => f.mask,
            Node::Split(s) => s.left_mask | s.right_mask,
        }
    }

    pub(crate) fn canonical(&self, word: &[Letter]) -> Vec<Letter> {
        match self {
            Node::Leaf(f) => f.word_of(&f.elt(word)),
            Node::Split(s) => {
                let (sylls, core) = s.normal_syllables(word);
                let mut out = Vec::new();
                for (_, rep) in sylls {
                    out.extend(rep);
                }
                out.extend(s.right.word_of(&s.right.elt(&core)));
                out
            }
        }
    }

    pub(crate) fn in_span(&self, word: &[Letter], mask: u64) -> bool {
        match self {
            Node::Leaf(f) => f.elt_in_span(&f.elt(word), mask),
            Node::Split(s) => s.route_span(word, mask).is_some(),
        }
    }

    pub(crate) fn express(&self, word: &[Letter], mask: u64) -> Option<Vec<Letter>> {
        match self {
            Node::Leaf(f) => f.elt_express(&f.elt(word), mask),
            Node::Split(s) => s.route_span(word, mask),
        }
    }

    /// ShortLex-least word for the left coset `word · A_J`.
    fn coset_rep(&self, word: &[Letter], jmask: u64) -> Vec<Letter> {
        match self {
            Node::Leaf(f) => f.coset_rep(&f.elt(word), word.len(), jmask),
            Node::Split(s) => s.coset_rep(word, jmask),
        }
    }
}

impl SplitNode {
    pub(crate) fn new(left: Node, right: LeafFactor, jmask: u64) -> SplitNode {
        let left_mask = left.mask();
        let right_mask = right.mask;
        let mut letters: Vec<u8> = (0..64u8).filter(|&g| (left_mask | right_mask) >> g & 1 == 1).collect();
        letters.sort();
        SplitNode {
            left: Box::new(left),
            right,
            jmask,
            left_mask,
            right_mask,
            rep_cache: Mutex::new(HashMap::new()),
            shortlex: Mutex::new(WordShortlex {
                words: vec![Vec::new()],
                seen: HashSet::from([Vec::new()]),
                frontier: vec![Vec::new()],
                complete_len: 0,
                letters,
            }),
        }
    }

    /// Amalgam normal form: alternating ShortLex-least coset representatives
    /// followed by a core element of the edge subgroup A_J.
    fn normal_syllables(&self, word: &[Letter]) -> (Vec<(bool, Vec<Letter>)>, Vec<Letter>) {
        let mut sylls: Vec<(bool, Vec<Letter>)> = Vec::new();
        let mut core: Vec<Letter> = Vec::new();
        for &letter in word {
            let bit = 1u64 << letter.gen;
            if self.jmask & bit != 0 {
                core.push(letter);
                continue;
            }
            let is_right = self.right_mask & bit != 0;
            let side: &dyn Fn(&[Letter], u64) -> bool = &|w, m| match is_right {
                true => self.right.elt_in_span(&self.right.elt(w), m),
                false => self.left.in_span(w, m),
            };
            let merged = sylls.last().is_some_and(|(r, _)| *r == is_right);
            let mut y: Vec<Letter> = Vec::new();
            if merged {
                y.extend(&sylls.last().expect("merged").1);
            }
            y.extend(&core);
            y.push(letter);
            if side(&y, self.jmask) {
                if merged {
                    sylls.pop();
                }
                core = self.express_side(is_right, &y).expect("y lies in A_J");
            } else {
                let rep = self.rep_side(is_right, &y);
                let mut rel = invert_word(&rep);
                rel.extend(&y);
                let c = self.express_side(is_right, &rel).expect("rep⁻¹ y lies in A_J");
                if merged {
                    sylls.pop();
                }
                debug_assert!(!rep.is_empty());
                sylls.push((is_right, rep));
                core = c;
            }
        }
        (sylls, core)
    }

    fn express_side(&self, is_right: bool, word: &[Letter]) -> Option<Vec<Letter>> {
        if is_right {
            self.right.elt_express(&self.right.elt(word), self.jmask)
        } else {
            self.left.express(word, self.jmask)
        }
    }

    fn rep_side(&self, is_right: bool, word: &[Letter]) -> Vec<Letter> {
        if is_right {
            self.right.coset_rep(&self.right.elt(word), word.len(), self.jmask)
        } else {
            self.left.coset_rep(word, self.jmask)
        }
    }

    /// Membership and expression in `A_mask` for a clique mask, which by the
    /// tree structure lies inside one side.
    fn route_span(&self, word: &[Letter], mask: u64) -> Option<Vec<Letter>> {
        let (sylls, core) = self.normal_syllables(word);
        let in_right = mask & !self.right_mask == 0;
        let in_left = mask & !self.left_mask == 0;
        assert!(in_right || in_left, "target subgroup must live inside one side");
        if in_right {
            match sylls.as_slice() {
                [] => self.right.elt_express(&self.right.elt(&core), mask),
                [(true, rep)] => {
                    let mut w = rep.clone();
                    w.extend(&core);
                    self.right.elt_express(&self.right.elt(&w), mask)
                }
                _ => None,
            }
        } else {
            match sylls.as_slice() {
                [] => self.left.express(&core, mask),
                [(false, rep)] => {
                    let mut w = rep.clone();
                    w.extend(&core);
                    self.left.express(&w, mask)
                }
                _ => None,
            }
        }
    }

    /// ShortLex-least word of the coset `word · A_J'` over the node's
    /// alphabet, by scanning the canonical element enumeration.
    fn coset_rep(&self, word: &[Letter], jmask: u64) -> Vec<Letter> {
        let key = (self.node_canonical(word), jmask);
        if let Some(hit) = self.rep_cache.lock().expect("rep lock").get(&key) {
            return hit.clone();
        }
        let target = word.len();
        let rep = {
            let mut sl = self.shortlex.lock().expect("shortlex lock");
            let letters = sl.letters.clone();
            while sl.complete_len < target {
                let mut next = Vec::new();
                for w in std::mem::take(&mut sl.frontier) {
                    for &g in &letters {
                        for positive in [true, false] {
                            let mut w2 = w.clone();
                            w2.push(Letter { gen: g, positive });
                            let canon = self.node_canonical(&w2);
                            if sl.seen.insert(canon) {
                                next.push(w2);
                            }
                        }
                    }
                }
                sl.words.extend(next.iter().cloned());
                sl.frontier = next;
                sl.complete_len += 1;
            }
            let mut found = None;
            for w in &sl.words {
                let mut rel = invert_word(w);
                rel.extend(word);
                if self.node_in_span(&rel, jmask) {
                    found = Some(w.clone());
                    break;
                }
            }
            found.expect("word itself witnesses its coset")
        };
        self.rep_cache.lock().expect("rep lock").insert(key, rep.clone());
        rep
    }

    fn node_canonical(&self, word: &[Letter]) -> Vec<Letter> {
        let (sylls, core) = self.normal_syllables(word);
        let mut out = Vec::new();
        for (_, rep) in sylls {
            out.extend(rep);
        }
        out.extend(self.right.word_of(&self.right.elt(&core)));
        out
    }

    fn node_in_span(&self, word: &[Letter], mask: u64) -> bool {
        self.route_span(word, mask).is_some()
    }
}

/// Word-problem oracle for the Artin group of an FC defining graph.
pub struct WordOracle {
    kind: OracleKind,
    rank: usize,
    backend: Backend,
}

enum Backend {
    Spherical(LeafFactor),
    Heap {
        /// commute[i][j]: generators i, j commute (edge labeled 2).
        commute: Vec<Vec<bool>>,
    },
    Amalgam {
        root: Node,
        positive: HashSet<Vec<Letter>>,
        pos_budget: u32,
    },
}

impl WordOracle {
    /// Pick a backend for the graph shape: spherical Garside when the whole
    /// graph is spherical, heap normal form when right-angled, amalgam
    /// normal form when the clique nerve is a forest.
    pub fn for_fc(fc: &FCGraph, positive_budget: u32) -> Result<WordOracle, ComplexError> {
        let rank = fc.graph.rank();
        if let Some(top) = fc.clique_index(&(0..rank).collect::<Vec<_>>()) {
            let c = &fc.cliques[top];
            let factor = LeafFactor::new(
                c.verts.iter().map(|&v| v as u8).collect(),
                &c.coxeter,
                GarsideStructure::from_spherical(&c.coxeter),
            );
            return Ok(WordOracle { kind: OracleKind::SphericalGarside, rank, backend: Backend::Spherical(factor) });
        }
        let right_angled = (0..rank).all(|i| {
            (i + 1..rank).all(|j| fc.graph.label(i, j).map_or(true, |m| m == 2))
        });
        if right_angled {
            let commute = (0..rank)
                .map(|i| (0..rank).map(|j| i != j && fc.graph.label(i, j) == Some(2)).collect())
                .collect();
            return Ok(WordOracle { kind: OracleKind::RightAngled, rank, backend: Backend::Heap { commute } });
        }
        let root = build_tree(fc)?;
        let positive = positive_closure(&root, rank, positive_budget);
        Ok(WordOracle {
            kind: OracleKind::TreeAmalgam,
            rank,
            backend: Backend::Amalgam { root, positive, pos_budget: positive_budget },
        })
    }

    pub fn kind(&self) -> OracleKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn identity(&self) -> Form {
        match &self.backend {
            Backend::Spherical(_) => Form::Garside(GrpElt::identity()),
            _ => Form::Word(Vec::new()),
        }
    }

    pub fn canonical(&self, word: &[Letter]) -> Form {
        match &self.backend {
            Backend::Spherical(f) => Form::Garside(f.elt(word)),
            Backend::Heap { commute } => Form::Word(heap_canonical(word, commute)),
            Backend::Amalgam { root, .. } => Form::Word(root.canonical(word)),
        }
    }

    pub fn to_word(&self, form: &Form) -> Vec<Letter> {
        match (form, &self.backend) {
            (Form::Garside(x), Backend::Spherical(f)) => f.word_of(x),
            (Form::Word(w), _) => w.clone(),
            _ => unreachable!("form kind mismatch"),
        }
    }

    pub fn mul_word(&self, form: &Form, word: &[Letter]) -> Form {
        match (form, &self.backend) {
            (Form::Garside(x), Backend::Spherical(f)) => {
                let mut acc = x.clone();
                let gs = f.garside();
                for l in word {
                    let atom = f.atom_of_gen[&l.gen];
                    let e = gs.elt_simple(atom);
                    let e = if l.positive { e } else { gs.inverse(&e) };
                    acc = gs.mul(&acc, &e);
                }
                Form::Garside(acc)
            }
            (Form::Word(w), _) => {
                let mut joined = w.clone();
                joined.extend_from_slice(word);
                self.canonical(&joined)
            }
            _ => unreachable!("form kind mismatch"),
        }
    }

    pub fn mul_letter(&self, form: &Form, letter: Letter) -> Form {
        self.mul_word(form, &[letter])
    }

    /// Canonical form of `x⁻¹ y`.
    pub fn inverse_mul(&self, x: &Form, y: &Form) -> Form {
        match (x, y, &self.backend) {
            (Form::Garside(a), Form::Garside(b), Backend::Spherical(f)) => {
                Form::Garside(f.garside().mul(&f.garside().inverse(a), b))
            }
            _ => {
                let mut w = invert_word(&self.to_word(x));
                w.extend(self.to_word(y));
                self.canonical(&w)
            }
        }
    }

    /// Exponent sum (the length homomorphism A_Γ → Z).
    pub fn ell(&self, form: &Form) -> i64 {
        match (form, &self.backend) {
            (Form::Garside(x), Backend::Spherical(f)) => {
                let gs = f.garside();
                x.power * gs.delta_len() as i64
                    + x.tail.iter().map(|&a| gs.simple_len(a) as i64).sum::<i64>()
            }
            (Form::Word(w), _) => {
                w.iter().map(|l| if l.positive { 1i64 } else { -1 }).sum()
            }
            _ => unreachable!("form kind mismatch"),
        }
    }

    /// Monoid membership.
    pub fn is_positive(&self, form: &Form) -> bool {
        match (form, &self.backend) {
            (Form::Garside(x), Backend::Spherical(_)) => x.is_positive(),
            (Form::Word(w), Backend::Heap { .. }) => w.iter().all(|l| l.positive),
            (Form::Word(w), Backend::Amalgam { positive, pos_budget, .. }) => {
                let ell: i64 = w.iter().map(|l| if l.positive { 1 } else { -1 }).sum();
                if ell < 0 {
                    return false;
                }
                assert!(
                    ell <= *pos_budget as i64,
                    "positivity query beyond the precomputed budget ({ell} > {pos_budget})"
                );
                positive.contains(w)
            }
            _ => unreachable!("form kind mismatch"),
        }
    }

    /// Prefix order on vertices of the universal cover.
    pub fn leq(&self, x: &Form, y: &Form) -> bool {
        self.is_positive(&self.inverse_mul(x, y))
    }

    /// Membership in the standard parabolic subgroup on the generators of
    /// `mask`.
    pub fn in_parabolic(&self, form: &Form, mask: u64) -> bool {
        match (form, &self.backend) {
            (Form::Garside(x), Backend::Spherical(f)) => f.elt_in_span(x, mask),
            (Form::Word(w), Backend::Heap { .. }) => word_mask(w) & !mask == 0,
            (Form::Word(w), Backend::Amalgam { root, .. }) => root.in_span(w, mask),
            _ => unreachable!("form kind mismatch"),
        }
    }

    /// A word over the parabolic's own letters spelling the element.
    pub fn express_in_parabolic(&self, form: &Form, mask: u64) -> Option<Vec<Letter>> {
        match (form, &self.backend) {
            (Form::Garside(x), Backend::Spherical(f)) => f.elt_express(x, mask),
            (Form::Word(w), Backend::Heap { .. }) => {
                (word_mask(w) & !mask == 0).then(|| w.clone())
            }
            (Form::Word(w), Backend::Amalgam { root, .. }) => root.express(w, mask),
            _ => unreachable!("form kind mismatch"),
        }
    }
}

/// Heap (commutation-class) normal form for right-angled Artin groups:
/// cancel all removable pairs, then linearize greedily by least letter.
fn heap_canonical(word: &[Letter], commute: &[Vec<bool>]) -> Vec<Letter> {
    let mut letters = word.to_vec();
    // Cancellation: remove s, s⁻¹ separated only by letters commuting with s.
    'cancel: loop {
        for i in 0..letters.len() {
            'inner: for j in i + 1..letters.len() {
                if letters[j].gen == letters[i].gen {
                    if letters[j].positive != letters[i].positive {
                        letters.remove(j);
                        letters.remove(i);
                        continue 'cancel;
                    }
                    break 'inner;
                }
                if !commute[letters[i].gen as usize][letters[j].gen as usize] {
                    break 'inner;
                }
            }
        }
        break;
    }
    // Linearization: repeatedly emit the least available letter.
    let mut out = Vec::with_capacity(letters.len());
    while !letters.is_empty() {
        let mut best: Option<usize> = None;
        'scan: for i in 0..letters.len() {
            for k in 0..i {
                if !commute[letters[k].gen as usize][letters[i].gen as usize] {
                    continue 'scan;
                }
            }
            if best.is_none_or(|b| (letters[i].gen, !letters[i].positive) < (letters[b].gen, !letters[b].positive)) {
                best = Some(i);
            }
        }
        let i = best.expect("nonempty word has an available letter");
        out.push(letters.remove(i));
    }
    out
}

/// Build the amalgam tree by peeling nerve leaves; errors out when the
/// clique nerve is not a forest.
fn build_tree(fc: &FCGraph) -> Result<Node, ComplexError> {
    let maximal = fc.graph.maximal_cliques();
    let k = maximal.len();
    let mut adj = vec![Vec::new(); k];
    let mut edge_count = 0;
    for i in 0..k {
        for j in i + 1..k {
            if maximal[i].iter().any(|v| maximal[j].contains(v)) {
                adj[i].push(j);
                adj[j].push(i);
                edge_count += 1;
            }
        }
    }
    // A forest has no cycles: edges <= nodes - components, checked by
    // peeling leaves; any residue means a cycle.
    let mut removed = vec![false; k];
    let mut order = Vec::new();
    loop {
        let next = (0..k).rev().find(|&i| {
            !removed[i] && adj[i].iter().filter(|&&j| !removed[j]).count() <= 1
        });
        match next {
            Some(i) => {
                removed[i] = true;
                order.push(i);
            }
            None => break,
        }
    }
    if order.len() < k {
        return Err(ComplexError::OracleUnsupported {
            reason: format!(
                "clique nerve has a cycle ({} maximal cliques, {} nerve edges)",
                k, edge_count
            ),
        });
    }
    // Rebuild from the last peeled clique outward.
    let factor = |idx: usize| -> LeafFactor {
        let verts: Vec<u8> = maximal[idx].iter().map(|&v| v as u8).collect();
        let ci = fc.clique_index(&maximal[idx]).expect("maximal clique is certified");
        let c = &fc.cliques[ci];
        LeafFactor::new(verts, &c.coxeter, GarsideStructure::from_spherical(&c.coxeter))
    };
    let mut node = Node::Leaf(factor(*order.last().expect("at least one clique")));
    let mut present: HashSet<usize> = HashSet::from([*order.last().unwrap()]);
    for &i in order.iter().rev().skip(1) {
        let shared: u64 = maximal[i]
            .iter()
            .filter(|v| {
                adj[i].iter().any(|&j| present.contains(&j) && maximal[j].contains(v))
            })
            .fold(0u64, |m, &v| m | 1 << v);
        node = Node::Split(SplitNode::new(node, factor(i), shared));
        present.insert(i);
    }
    Ok(node)
}

/// All positive elements of word length at most `budget`, by BFS over
/// positive words with canonical-form deduplication.
fn positive_closure(root: &Node, rank: usize, budget: u32) -> HashSet<Vec<Letter>> {
    let mut set = HashSet::from([Vec::new()]);
    let mut frontier: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..budget {
        let mut next = Vec::new();
        for w in &frontier {
            for g in 0..rank as u8 {
                let mut w2 = w.clone();
                w2.push(Letter::pos(g));
                let canon = root.canonical(&w2);
                if set.insert(canon.clone()) {
                    next.push(canon);
                }
            }
        }
        frontier = next;
    }
    set
}
