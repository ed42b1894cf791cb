use super::*;
use crate::coxeter::{CoxeterGroup, DefiningGraph};
use std::collections::BTreeSet;

fn graph(vertices: &[&str], edges: &[(&str, &str, u32)]) -> DefiningGraph {
    DefiningGraph::new(
        vertices.iter().map(|s| s.to_string()).collect(),
        edges
            .iter()
            .map(|&(a, b, m)| (a.to_string(), b.to_string(), m))
            .collect(),
    )
    .unwrap()
}

/// Braid group on 3 strands: Garside structure over the A2 Coxeter group.
fn braid3() -> GarsideStructure {
    let g = graph(&["a", "b"], &[("a", "b", 3)]);
    GarsideStructure::from_spherical(&CoxeterGroup::enumerate(&g, 100).unwrap())
}

/// Braid group on 4 strands: Garside structure over the A3 Coxeter group.
fn braid4() -> GarsideStructure {
    let g = graph(
        &["a", "b", "c"],
        &[("a", "b", 3), ("b", "c", 3), ("a", "c", 2)],
    );
    GarsideStructure::from_spherical(&CoxeterGroup::enumerate(&g, 100).unwrap())
}

fn nf(gs: &GarsideStructure, text: &str) -> GrpElt {
    gs.normal_form(&gs.parse_word(text).unwrap()).unwrap()
}

/// Relation moves for the braid presentations used in these tests.
fn braid_relations(gs: &GarsideStructure, g: &DefiningGraph) -> Vec<(Vec<u8>, Vec<u8>)> {
    let mut rels = Vec::new();
    for i in 0..g.rank() {
        for j in i + 1..g.rank() {
            if let Some(m) = g.label(i, j) {
                let lhs: Vec<u8> = (0..m).map(|k| if k % 2 == 0 { i as u8 } else { j as u8 }).collect();
                let rhs: Vec<u8> = (0..m).map(|k| if k % 2 == 0 { j as u8 } else { i as u8 }).collect();
                rels.push((lhs, rhs));
            }
        }
    }
    let _ = gs;
    rels
}

/// Exhaustive relation-move closure of a positive word.
fn closure(word: &[u8], rels: &[(Vec<u8>, Vec<u8>)], cap: usize) -> BTreeSet<Vec<u8>> {
    let mut seen = BTreeSet::new();
    let mut frontier = vec![word.to_vec()];
    seen.insert(word.to_vec());
    while let Some(w) = frontier.pop() {
        for (lhs, rhs) in rels {
            for dir in [(lhs, rhs), (rhs, lhs)] {
                let (pat, rep) = dir;
                if w.len() < pat.len() {
                    continue;
                }
                for start in 0..=w.len() - pat.len() {
                    if &w[start..start + pat.len()] == pat.as_slice() {
                        let mut new = w.clone();
                        new.splice(start..start + pat.len(), rep.iter().copied());
                        if seen.insert(new.clone()) {
                            assert!(seen.len() <= cap, "closure cap exceeded");
                            frontier.push(new);
                        }
                    }
                }
            }
        }
    }
    seen
}

fn atom_word(gs: &GarsideStructure, word: &[u8]) -> Vec<(Simple, bool)> {
    word.iter().map(|&i| (gs.atoms()[i as usize], true)).collect()
}

#[test]
fn spherical_structures_have_expected_shape() {
    let gs1 = GarsideStructure::from_spherical(
        &CoxeterGroup::enumerate(&graph(&["a"], &[]), 10).unwrap(),
    );
    assert_eq!(gs1.count(), 2);
    assert_eq!(gs1.atoms().len(), 1);
    assert_eq!(gs1.delta(), gs1.atoms()[0]);

    let gs = braid3();
    assert_eq!(gs.count(), 6);
    assert_eq!(gs.delta_len(), 3);

    let b2 = graph(&["a", "b"], &[("a", "b", 4)]);
    let gs = GarsideStructure::from_spherical(&CoxeterGroup::enumerate(&b2, 100).unwrap());
    assert_eq!(gs.count(), 8);
    assert_eq!(gs.delta_len(), 4);
}

#[test]
fn partial_product_iff_lengths_add() {
    let gs = braid3();
    for a in gs.simples() {
        for b in gs.simples() {
            match gs.prod_simple(a, b) {
                Some(ab) => assert_eq!(gs.simple_len(ab), gs.simple_len(a) + gs.simple_len(b)),
                None => {}
            }
        }
    }
}

#[test]
fn star_and_phi_examples() {
    let gs = braid3();
    assert_eq!(gs.star(gs.one()), gs.delta());
    assert_eq!(gs.star(gs.delta()), gs.one());
    let a = gs.atom_by_name("a").unwrap();
    let b = gs.atom_by_name("b").unwrap();
    // a* = ba since a · ba = aba = Δ.
    let ba = gs.prod_simple(b, a).unwrap();
    assert_eq!(gs.star(a), ba);
    // φ(a) = Δ⁻¹ a Δ = b.
    assert_eq!(gs.phi_simple(a), b);
    let ea = gs.elt_simple(a);
    let conj = gs.mul(&gs.mul(&GrpElt::delta_pow(-1), &ea), &GrpElt::delta_pow(1));
    assert_eq!(gs.phi_apply(&ea), conj);
    assert_eq!(gs.elt_to_simple(&conj), Some(b));
}

#[test]
fn star_is_order_reversing_and_de_morgan() {
    for gs in [braid3(), braid4()] {
        for a in gs.simples() {
            for b in gs.simples() {
                assert_eq!(gs.geq_s_simple(b, a), gs.leq_p_simple(gs.star(b), gs.star(a)));
                assert_eq!(gs.star(gs.meet_s_simple(a, b)), gs.join_p_simple(gs.star(a), gs.star(b)));
                assert_eq!(gs.star(gs.join_s_simple(a, b)), gs.meet_p_simple(gs.star(a), gs.star(b)));
            }
        }
    }
}

#[test]
fn phi_preserves_prefix_order() {
    let gs = braid4();
    for a in gs.simples() {
        for b in gs.simples() {
            assert_eq!(
                gs.leq_p_simple(a, b),
                gs.leq_p_simple(gs.phi_simple(a), gs.phi_simple(b))
            );
        }
    }
}

#[test]
fn simple_element_duality() {
    // f ≼ Δ iff Δ ≽ f, over all simples and a few non-simples.
    let gs = braid3();
    let delta = GrpElt::delta_pow(1);
    for s in gs.simples() {
        let f = gs.elt_simple(s);
        assert!(gs.prefix_leq(&f, &delta));
        assert!(gs.suffix_geq(&delta, &f));
    }
    let f = nf(&gs, "a a");
    assert_eq!(gs.prefix_leq(&f, &delta), gs.suffix_geq(&delta, &f));
    assert!(!gs.prefix_leq(&f, &delta));
}

#[test]
fn normal_form_spec_values() {
    let gs = braid3();
    assert_eq!(nf(&gs, "a a⁻¹"), GrpElt::identity());
    assert_eq!(nf(&gs, "a b a"), GrpElt::delta_pow(1));
    let x = nf(&gs, "a a b a");
    let b = gs.atom_by_name("b").unwrap();
    assert_eq!(x, GrpElt { power: 1, tail: vec![b] });
    assert_eq!(gs.render(&x), "Δ^1 · b");
    assert_eq!(gs.render(&nf(&gs, "a a⁻¹")), "Δ^0 · ()");
}

#[test]
fn normal_form_is_left_weighted_and_idempotent() {
    let gs = braid4();
    let atoms: Vec<Simple> = gs.atoms().to_vec();
    // Deterministic pseudo-random signed words.
    let mut state = 0x9e3779b9u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    for _ in 0..300 {
        let len = (next() % 9) as usize;
        let word: Vec<(Simple, bool)> = (0..len)
            .map(|_| (atoms[(next() % atoms.len() as u64) as usize], next() % 2 == 0))
            .collect();
        let x = gs.normal_form(&word).unwrap();
        // Left-weighted: star(x_i) ∧ x_{i+1} = 1 for each adjacent pair.
        for pair in x.tail.windows(2) {
            assert_eq!(gs.meet_p_simple(gs.star(pair[0]), pair[1]), gs.one());
        }
        assert!(!x.tail.contains(&gs.one()));
        assert!(!x.tail.contains(&gs.delta()));
        // Idempotence: re-normalizing the canonical spelling is a fixpoint.
        let x2 = gs.normal_form(&gs.signed_word(&x)).unwrap();
        assert_eq!(x, x2);
        // Inverse roundtrip.
        assert!(gs.mul(&x, &gs.inverse(&x)).is_identity());
    }
}

#[test]
fn normal_form_equality_matches_rewriting_closure() {
    let g = graph(&["a", "b"], &[("a", "b", 3)]);
    let gs = braid3();
    let rels = braid_relations(&gs, &g);
    // All positive words of length <= 5 in two atoms.
    let mut words: Vec<Vec<u8>> = vec![vec![]];
    for _ in 0..5 {
        let mut next = Vec::new();
        for w in &words {
            if w.len() == words.last().map_or(0, |x| x.len()) {}
            for s in 0..2u8 {
                let mut w2 = w.clone();
                w2.push(s);
                next.push(w2);
            }
        }
        words.extend(next.clone());
        words.dedup();
        words.sort();
        words.dedup();
    }
    for w1 in &words {
        let cls = closure(w1, &rels, 1_000_000);
        for w2 in &words {
            let eq_nf = gs.normal_form(&atom_word(&gs, w1)).unwrap()
                == gs.normal_form(&atom_word(&gs, w2)).unwrap();
            let eq_oracle = w1.len() == w2.len() && cls.contains(w2);
            assert_eq!(eq_nf, eq_oracle, "{w1:?} vs {w2:?}");
        }
    }
}

#[test]
fn prefix_order_examples() {
    let gs = braid3();
    let one = GrpElt::identity();
    let a = nf(&gs, "a");
    let b = nf(&gs, "b");
    assert!(gs.prefix_leq(&one, &a));
    assert!(!gs.prefix_leq(&a, &b));
    let a_delta = gs.mul(&a, &GrpElt::delta_pow(1));
    assert!(gs.prefix_leq(&b, &a_delta));
}

/// Brute-force common-divisor scan on positive elements, using only the
/// rewriting closure (independent of the normal-form machinery).
fn oracle_meet_positive(
    gs: &GarsideStructure,
    g: &DefiningGraph,
    u: &[u8],
    v: &[u8],
) -> GrpElt {
    let rels = braid_relations(gs, g);
    let prefixes = |w: &[u8]| -> BTreeSet<Vec<u8>> {
        let mut out = BTreeSet::new();
        for spelling in closure(w, &rels, 1_000_000) {
            for k in 0..=spelling.len() {
                out.insert(spelling[..k].to_vec());
            }
        }
        out
    };
    let divisor_classes = |w: &[u8]| -> Vec<Vec<u8>> {
        // Deduplicate prefixes up to the relation closure via lexmin words.
        let mut reps: BTreeSet<Vec<u8>> = BTreeSet::new();
        for p in prefixes(w) {
            let cls = closure(&p, &rels, 1_000_000);
            reps.insert(cls.into_iter().next().unwrap());
        }
        reps.into_iter().collect()
    };
    let du = divisor_classes(u);
    let dv = divisor_classes(v);
    let common: Vec<&Vec<u8>> = du.iter().filter(|d| dv.contains(*d)).collect();
    // The meet is the unique common divisor that every common divisor divides.
    let divides = |x: &[u8], y: &[u8]| -> bool {
        closure(y, &rels, 1_000_000)
            .iter()
            .any(|spelling| x.len() <= spelling.len() && {
                let cls = closure(&spelling[..x.len()], &rels, 1_000_000);
                cls.contains(&x.to_vec())
            })
    };
    let best = common
        .iter()
        .find(|&&m| common.iter().all(|&d| divides(d, m)))
        .expect("finite lattice of divisors has a maximum");
    gs.normal_form(&atom_word(gs, best)).unwrap()
}

#[test]
fn meet_join_examples_and_oracle() {
    let g = graph(&["a", "b"], &[("a", "b", 3)]);
    let gs = braid3();
    let a = nf(&gs, "a");
    let b = nf(&gs, "b");
    let ab = nf(&gs, "a b");
    assert_eq!(gs.meet_p(&a, &b), GrpElt::identity());
    assert_eq!(gs.join_p(&a, &b), GrpElt::delta_pow(1));
    assert_eq!(gs.meet_p(&ab, &GrpElt::delta_pow(1)), ab);
    assert_eq!(gs.join_p(&ab, &ab), ab);
    // Oracle cross-check on all positive word pairs of length <= 4.
    let mut words: Vec<Vec<u8>> = vec![vec![]];
    let mut level = vec![vec![]];
    for _ in 0..4 {
        let mut next = Vec::new();
        for w in &level {
            for s in 0..2u8 {
                let mut w2: Vec<u8> = w.clone();
                w2.push(s);
                next.push(w2);
            }
        }
        words.extend(next.iter().cloned());
        level = next;
    }
    for u in &words {
        for v in &words {
            let xu = gs.normal_form(&atom_word(&gs, u)).unwrap();
            let xv = gs.normal_form(&atom_word(&gs, v)).unwrap();
            assert_eq!(
                gs.meet_p(&xu, &xv),
                oracle_meet_positive(&gs, &g, u, v),
                "meet of {u:?}, {v:?}"
            );
        }
    }
}

#[test]
fn group_meets_are_translation_invariant() {
    let gs = braid4();
    let c = nf(&gs, "a b⁻¹ c a");
    let x = nf(&gs, "b c⁻¹");
    let y = nf(&gs, "a a b");
    let lhs = gs.meet_p(&gs.mul(&c, &x), &gs.mul(&c, &y));
    assert_eq!(lhs, gs.mul(&c, &gs.meet_p(&x, &y)));
    let jhs = gs.join_p(&gs.mul(&c, &x), &gs.mul(&c, &y));
    assert_eq!(jhs, gs.mul(&c, &gs.join_p(&x, &y)));
}

#[test]
fn cell_operations() {
    let gs = braid3();
    let one = GrpElt::identity();
    let a = nf(&gs, "a");
    let b = nf(&gs, "b");
    let c_one = gs.cell_of(&one);
    let c_a = gs.cell_of(&a);
    let c_b = gs.cell_of(&b);
    // Each cell has exactly |simples| vertices.
    let verts = gs.cell_vertices(&c_one);
    assert_eq!(verts.len(), gs.count());
    let dedup: BTreeSet<_> = verts.iter().collect();
    assert_eq!(dedup.len(), gs.count());

    let i = gs.cell_intersection(&c_one, &c_one).unwrap();
    assert_eq!(i.lo, one);
    assert_eq!(i.hi, GrpElt::delta_pow(1));

    let i = gs.cell_intersection(&c_one, &c_a).unwrap();
    assert_eq!(i.lo, a);
    assert_eq!(i.hi, GrpElt::delta_pow(1));
    // Certify the interval against an exhaustive membership scan.
    let common = gs.cell_common_vertices(&c_one, &c_a);
    assert_eq!(common.len(), 3);
    for v in &common {
        assert!(gs.interval_contains(&i, v));
    }
    for v in gs.cell_vertices(&c_one) {
        assert_eq!(gs.interval_contains(&i, &v), common.contains(&v));
    }

    let i = gs.cell_intersection(&c_a, &c_b).unwrap();
    assert_eq!(i.lo, GrpElt::delta_pow(1));
    assert_eq!(i.hi, GrpElt::delta_pow(1));

    // Distant translates are disjoint.
    let far = gs.cell_of(&nf(&gs, "a a a a a a a a"));
    assert!(gs.cell_intersection(&c_one, &far).is_none());
}

#[test]
fn triple_cover_examples() {
    let gs = braid3();
    let one = GrpElt::identity();
    let cells = [
        gs.cell_of(&one),
        gs.cell_of(&nf(&gs, "a")),
        gs.cell_of(&nf(&gs, "b")),
    ];
    let cover = gs.triple_cell_cover(&cells[0], &cells[1], &cells[2]).unwrap();
    assert_eq!(cover.base, one, "the base cell covers D here");

    let c = gs.cell_of(&nf(&gs, "a b⁻¹"));
    let same = gs.triple_cell_cover(&c, &c, &c).unwrap();
    assert_eq!(same, c);

    let distant = gs.cell_of(&nf(&gs, "a a a a a a"));
    assert!(matches!(
        gs.triple_cell_cover(&cells[0], &cells[1], &distant),
        Err(GarsideError::NotPairwiseIntersecting)
    ));
}

#[test]
fn helly_adjacency() {
    let gs = braid3();
    let one = GrpElt::identity();
    let a = nf(&gs, "a");
    assert!(gs.helly_adjacent(&one, &one));
    assert!(gs.helly_adjacent(&one, &a));
    assert!(gs.helly_adjacent(&one, &nf(&gs, "a⁻¹ b")));
    assert!(!gs.helly_adjacent(&one, &GrpElt::delta_pow(2)));
    // Degree bound: |simples|^2 candidate neighbors.
    let mut neighbors = BTreeSet::new();
    for s in gs.simples() {
        for t in gs.simples() {
            let g = gs.mul(&gs.inverse(&gs.elt_simple(s)), &gs.elt_simple(t));
            if gs.helly_adjacent(&one, &g) {
                neighbors.insert(g);
            }
        }
    }
    assert!(neighbors.len() <= gs.count() * gs.count());
}

#[test]
fn structure_file_roundtrip() {
    let gs = braid3();
    let loaded = GarsideStructure::from_json(&gs.to_json()).unwrap();
    assert_eq!(loaded.count(), gs.count());
    assert_eq!(loaded.delta_len(), gs.delta_len());
    for a in gs.simples() {
        assert_eq!(loaded.star(a), gs.star(a));
        assert_eq!(loaded.phi_simple(a), gs.phi_simple(a));
        for b in gs.simples() {
            assert_eq!(loaded.meet_p_simple(a, b), gs.meet_p_simple(a, b));
            assert_eq!(loaded.join_s_simple(a, b), gs.join_s_simple(a, b));
        }
    }
}

/// The trefoil-knot monoid <x, y | x^2 = y^3>: a Garside monoid whose atoms
/// carry different lengths (l(x) = 3, l(y) = 2).
fn trefoil_json() -> String {
    let simples = ["1", "x", "y", "yy", "D"];
    let idx = |s: &str| simples.iter().position(|&t| t == s).unwrap() as u32;
    let defined: Vec<(&str, &str, &str)> = vec![
        ("1", "1", "1"),
        ("1", "x", "x"),
        ("1", "y", "y"),
        ("1", "yy", "yy"),
        ("1", "D", "D"),
        ("x", "1", "x"),
        ("y", "1", "y"),
        ("yy", "1", "yy"),
        ("D", "1", "D"),
        ("x", "x", "D"),
        ("y", "y", "yy"),
        ("y", "yy", "D"),
        ("yy", "y", "D"),
    ];
    let product: Vec<(u32, u32, i64)> = defined
        .into_iter()
        .map(|(a, b, c)| (idx(a), idx(b), idx(c) as i64))
        .collect();
    serde_json::to_string(&serde_json::json!({
        "simples": simples,
        "atoms": ["x", "y"],
        "delta": "D",
        "product": product,
    }))
    .unwrap()
}

#[test]
fn trefoil_monoid_loads_with_weighted_lengths() {
    let gs = GarsideStructure::from_json(&trefoil_json()).unwrap();
    let x = gs.atom_by_name("x").unwrap();
    let y = gs.atom_by_name("y").unwrap();
    assert_eq!(gs.simple_len(x), 3);
    assert_eq!(gs.simple_len(y), 2);
    assert_eq!(gs.delta_len(), 6);
    assert_eq!(gs.star(x), x);
    // Normal form in the group of fractions: x y⁻¹ has negative infimum.
    let w = gs.normal_form(&[(x, true), (y, false)]).unwrap();
    assert!(!w.is_positive());
    assert!(gs.mul(&w, &gs.normal_form(&[(y, true), (x, false)]).unwrap()).is_identity());
    // x^2 = y^3 = Δ.
    assert_eq!(gs.normal_form(&[(x, true), (x, true)]).unwrap(), GrpElt::delta_pow(1));
    assert_eq!(
        gs.normal_form(&[(y, true), (y, true), (y, true)]).unwrap(),
        GrpElt::delta_pow(1)
    );
}

#[test]
fn structure_file_rejections() {
    // Missing unit.
    let bad = serde_json::json!({
        "simples": ["x"], "atoms": ["x"], "delta": "x",
        "product": [[0, 0, -1]],
    });
    let err = GarsideStructure::from_json(&bad.to_string()).unwrap_err();
    assert!(matches!(err, GarsideError::Violation { name: "identity", .. }));

    // Break associativity: a*(a*a) defined, (a*a)*a undefined.
    let bad = serde_json::json!({
        "simples": ["1", "a", "aa"], "atoms": ["a"], "delta": "aa",
        "product": [
            [0,0,0],[0,1,1],[0,2,2],[1,0,1],[2,0,2],
            [1,1,2],[1,2,-1],[2,1,0]
        ],
    });
    let err = GarsideStructure::from_json(&bad.to_string()).unwrap_err();
    assert!(matches!(err, GarsideError::Violation { .. }));

    // Atom that is divisible.
    let bad = serde_json::json!({
        "simples": ["1", "a", "aa"], "atoms": ["a", "aa"], "delta": "aa",
        "product": [[0,0,0],[0,1,1],[0,2,2],[1,0,1],[2,0,2],[1,1,2]],
    });
    let err = GarsideStructure::from_json(&bad.to_string()).unwrap_err();
    assert!(matches!(err, GarsideError::Violation { name: "atom-indivisible", .. }));

    // Unknown delta name.
    let bad = serde_json::json!({
        "simples": ["1", "a"], "atoms": ["a"], "delta": "zz",
        "product": [[0,0,0],[0,1,1],[1,0,1]],
    });
    assert!(GarsideStructure::from_json(&bad.to_string()).is_err());
}

#[test]
fn unknown_atom_is_reported() {
    let gs = braid3();
    assert!(matches!(gs.parse_word("a q"), Err(GarsideError::UnknownAtom(_))));
}
