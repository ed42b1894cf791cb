use super::*;

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

fn a2() -> CoxeterGroup {
    CoxeterGroup::enumerate(&graph(&["a", "b"], &[("a", "b", 3)]), 100).unwrap()
}

fn b2() -> CoxeterGroup {
    CoxeterGroup::enumerate(&graph(&["a", "b"], &[("a", "b", 4)]), 100).unwrap()
}

fn a3() -> CoxeterGroup {
    let g = graph(
        &["a", "b", "c"],
        &[("a", "b", 3), ("b", "c", 3), ("a", "c", 2)],
    );
    CoxeterGroup::enumerate(&g, 100).unwrap()
}

/// Independent oracle: symmetric group S_{n+1} with s_i as the adjacent
/// transposition (i, i+1), elements as permutation arrays.
struct SymOracle {
    n: usize,
    elements: Vec<Vec<u8>>,
}

impl SymOracle {
    fn new(n: usize) -> Self {
        let mut elements = vec![(0..=n as u8).collect::<Vec<u8>>()];
        let mut head = 0;
        while head < elements.len() {
            let p = elements[head].clone();
            head += 1;
            for i in 0..n {
                let mut q = p.clone();
                q.swap(i, i + 1);
                if !elements.contains(&q) {
                    elements.push(q);
                }
            }
        }
        SymOracle { n, elements }
    }

    fn apply_word(&self, word: &[u8]) -> Vec<u8> {
        let mut p: Vec<u8> = (0..=self.n as u8).collect();
        // Right multiplication by s_i swaps positions i, i+1.
        for &s in word {
            p.swap(s as usize, s as usize + 1);
        }
        p
    }
}

#[test]
fn enumerate_a2_has_order_six() {
    assert_eq!(a2().order(), 6);
}

#[test]
fn enumerate_single_vertex_is_z2() {
    let g = CoxeterGroup::enumerate(&graph(&["a"], &[]), 10).unwrap();
    assert_eq!(g.order(), 2);
    assert_eq!(g.length(g.longest_element()), 1);
}

#[test]
fn infinite_dihedral_not_finite_within_cap() {
    let err = CoxeterGroup::enumerate(&graph(&["a", "b"], &[]), 1000).unwrap_err();
    assert!(matches!(err, CoxeterError::NotFiniteWithinCap { cap: 1000 }));
}

#[test]
fn dihedral_orders() {
    for m in 2..=8 {
        let g = CoxeterGroup::enumerate(&graph(&["a", "b"], &[("a", "b", m)]), 100).unwrap();
        assert_eq!(g.order(), 2 * m as usize, "I2({m})");
    }
}

#[test]
fn standard_orders() {
    assert_eq!(a3().order(), 24);
    assert_eq!(b2().order(), 8);
    let b3 = graph(
        &["a", "b", "c"],
        &[("a", "b", 4), ("b", "c", 3), ("a", "c", 2)],
    );
    assert_eq!(CoxeterGroup::enumerate(&b3, 100).unwrap().order(), 48);
    let h3 = graph(
        &["a", "b", "c"],
        &[("a", "b", 5), ("b", "c", 3), ("a", "c", 2)],
    );
    assert_eq!(CoxeterGroup::enumerate(&h3, 200).unwrap().order(), 120);
}

#[test]
fn type_a_matches_symmetric_group() {
    for n in 1..=4usize {
        let mut edges = Vec::new();
        let names: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
        for i in 0..n {
            for j in i + 1..n {
                let m = if j == i + 1 { 3 } else { 2 };
                edges.push((names[i].clone(), names[j].clone(), m));
            }
        }
        let g = DefiningGraph::new(names, edges).unwrap();
        let w = CoxeterGroup::enumerate(&g, 200).unwrap();
        let oracle = SymOracle::new(n);
        assert_eq!(w.order(), oracle.elements.len(), "order of A_{n}");
        // The map word -> permutation must factor through group equality:
        // cross-check the multiplication table against permutation products.
        let to_perm: Vec<Vec<u8>> =
            w.elements().map(|u| oracle.apply_word(w.word(u))).collect();
        for u in w.elements() {
            for v in w.elements() {
                let lhs = &to_perm[w.mul(u, v).0 as usize];
                let mut word = w.word(u).to_vec();
                word.extend_from_slice(w.word(v));
                assert_eq!(lhs, &oracle.apply_word(&word));
            }
        }
    }
}

#[test]
fn weak_order_examples() {
    let g = a2();
    let e = g.identity();
    let s1 = g.generator(0);
    let s2 = g.generator(1);
    let w0 = g.longest_element();
    assert_eq!(g.length(w0), 3);
    assert!(g.weak_leq(e, w0, Side::Right));
    assert!(!g.weak_leq(s1, s2, Side::Right));
    let s1s2 = g.mul(s1, s2);
    assert!(g.weak_leq(s1, s1s2, Side::Right));
    assert!(!g.weak_leq(s2, s1s2, Side::Right));
    // Left weak order sees the mirror inclusion.
    assert!(g.weak_leq(s2, s1s2, Side::Left));
}

/// Reachability oracle for the weak order: u <= v iff v is reachable from u
/// by length-increasing generator steps on the chosen side.
fn weak_leq_oracle(g: &CoxeterGroup, u: CoxElt, v: CoxElt, side: Side) -> bool {
    let mut frontier = vec![u];
    let mut seen = vec![false; g.order()];
    seen[u.0 as usize] = true;
    while let Some(x) = frontier.pop() {
        if x == v {
            return true;
        }
        for s in 0..g.rank() {
            let y = match side {
                Side::Right => g.mul(x, g.generator(s)),
                Side::Left => g.mul(g.generator(s), x),
            };
            if g.length(y) == g.length(x) + 1 && !seen[y.0 as usize] {
                seen[y.0 as usize] = true;
                frontier.push(y);
            }
        }
    }
    false
}

#[test]
fn weak_leq_agrees_with_reachability() {
    for g in [a2(), b2(), a3()] {
        for side in [Side::Right, Side::Left] {
            for u in g.elements() {
                for v in g.elements() {
                    assert_eq!(
                        g.weak_leq(u, v, side),
                        weak_leq_oracle(&g, u, v, side),
                        "{} vs {}",
                        g.word_string(u),
                        g.word_string(v)
                    );
                }
            }
        }
    }
}

/// Universal-property check of meet/join against the full enumerated poset.
fn check_lattice_exhaustive(g: &CoxeterGroup, side: Side) {
    let elements: Vec<CoxElt> = g.elements().collect();
    for &u in &elements {
        for &v in &elements {
            let m = g.weak_meet(u, v, side);
            assert!(g.weak_leq(m, u, side) && g.weak_leq(m, v, side));
            for &z in &elements {
                if g.weak_leq(z, u, side) && g.weak_leq(z, v, side) {
                    assert!(g.weak_leq(z, m, side), "meet universal property");
                }
            }
            let j = g.weak_join(u, v, side).unwrap();
            assert!(g.weak_leq(u, j, side) && g.weak_leq(v, j, side));
            for &z in &elements {
                if g.weak_leq(u, z, side) && g.weak_leq(v, z, side) {
                    assert!(g.weak_leq(j, z, side), "join universal property");
                }
            }
        }
    }
}

#[test]
fn lattice_universal_property_a2_b2() {
    for g in [a2(), b2()] {
        check_lattice_exhaustive(&g, Side::Right);
        check_lattice_exhaustive(&g, Side::Left);
    }
}

#[test]
fn meet_join_examples() {
    let g = a2();
    let s1 = g.generator(0);
    let s2 = g.generator(1);
    assert_eq!(g.weak_meet(s1, s2, Side::Right), g.identity());
    assert_eq!(g.weak_join(s1, s2, Side::Right).unwrap(), g.longest_element());
    let b = b2();
    let j = b.weak_join(b.generator(0), b.generator(1), Side::Right).unwrap();
    assert_eq!(j, b.longest_element());
    assert_eq!(b.length(j), 4);
}

#[test]
fn longest_element_examples() {
    let a1 = CoxeterGroup::enumerate(&graph(&["a"], &[]), 10).unwrap();
    assert_eq!(a1.length(a1.longest_element()), 1);
    assert_eq!(a2().length(a2().longest_element()), 3);
    assert_eq!(a3().length(a3().longest_element()), 6);
    // w0 is the unique maximum of the right weak order.
    let g = a3();
    let w0 = g.longest_element();
    for u in g.elements() {
        assert!(g.weak_leq(u, w0, Side::Right));
    }
}

#[test]
fn gate_examples_and_identity() {
    let g = a2();
    let e = g.identity();
    let s1 = g.generator(0);
    let s2 = g.generator(1);
    let coset_s1 = g.parabolic_coset(e, &[0]);
    assert_eq!(g.gate(e, &coset_s1), e);
    let v = g.mul(s1, s2);
    assert_eq!(g.gate(v, &coset_s1), s1);
    // v = s1 s2 s1 against <s2> = {e, s2}: distances 3 and 2.
    let coset_s2 = g.parabolic_coset(e, &[1]);
    let w0 = g.longest_element();
    assert_eq!(g.gate(w0, &coset_s2), s2);
}

#[test]
fn gate_matches_brute_force_scan() {
    for g in [a2(), b2(), a3()] {
        let subsets: Vec<Vec<usize>> = (0..(1usize << g.rank()))
            .map(|mask| (0..g.rank()).filter(|s| mask >> s & 1 == 1).collect())
            .collect();
        for gens in &subsets {
            for rep in g.elements().take(8) {
                let coset = g.parabolic_coset(rep, gens);
                for v in g.elements() {
                    let gate = g.gate(v, &coset);
                    let best = coset
                        .members
                        .iter()
                        .map(|&m| g.distance(v, m))
                        .min()
                        .unwrap();
                    assert_eq!(g.distance(v, gate), best);
                    assert_eq!(
                        coset
                            .members
                            .iter()
                            .filter(|&&m| g.distance(v, m) == best)
                            .count(),
                        1,
                        "gate must be the unique minimizer"
                    );
                }
            }
        }
    }
}

#[test]
fn coset_intersection_examples() {
    let g = a2();
    let e = g.identity();
    let c1 = g.parabolic_coset(e, &[0]);
    let c2 = g.parabolic_coset(e, &[1]);
    let w = g.parabolic_coset(e, &[0, 1]);
    assert_eq!(g.coset_family_intersection(&[c1.clone(), c2.clone()]), vec![e]);
    assert_eq!(g.coset_family_intersection(&[c1, c2, w]), vec![e]);
}

/// Exhaustive coset Helly sweep: every pairwise-intersecting family of
/// parabolic cosets has nonempty intersection.
pub(crate) fn coset_helly_sweep(g: &CoxeterGroup) -> (usize, usize) {
    let mut cosets = Vec::new();
    let subsets: Vec<Vec<usize>> = (0..(1usize << g.rank()))
        .map(|mask| (0..g.rank()).filter(|s| mask >> s & 1 == 1).collect())
        .collect();
    for gens in &subsets {
        cosets.extend(g.parabolic_cosets(gens));
    }
    let n = cosets.len();
    let intersects = |i: usize, j: usize| -> bool {
        cosets[i]
            .members
            .iter()
            .any(|m| cosets[j].members.binary_search(m).is_ok())
    };
    // Depth-first enumeration of all pairwise-intersecting families.
    let mut families = 0usize;
    let mut violations = 0usize;
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
    while let Some((family, start)) = stack.pop() {
        if family.len() >= 2 {
            families += 1;
            let sets: Vec<ParabolicCoset> =
                family.iter().map(|&i| cosets[i].clone()).collect();
            if g.coset_family_intersection(&sets).is_empty() {
                violations += 1;
            }
        }
        for k in start..n {
            if family.iter().all(|&i| intersects(i, k)) {
                let mut next = family.clone();
                next.push(k);
                stack.push((next, k + 1));
            }
        }
    }
    (families, violations)
}

#[test]
fn coset_helly_a2_b2() {
    for g in [a2(), b2()] {
        let (families, violations) = coset_helly_sweep(&g);
        assert!(families > 0);
        assert_eq!(violations, 0);
    }
}

#[test]
fn oriented_cell_shapes() {
    let a1 = CoxeterGroup::enumerate(&graph(&["a"], &[]), 10).unwrap();
    let cell = a1.oriented_coxeter_cell();
    assert_eq!(cell.edges.len(), 1);

    let g = a2();
    let cell = g.oriented_coxeter_cell();
    // Hexagon: 6 vertices, 6 edges, unique source and sink.
    assert_eq!(cell.edges.len(), 6);
    let (sources, sinks) = cell.sources_and_sinks();
    assert_eq!(sources, vec![g.identity()]);
    assert_eq!(sinks, vec![g.longest_element()]);

    let b = b2();
    let cell = b.oriented_coxeter_cell();
    assert_eq!(cell.edges.len(), 8);
    let (sources, sinks) = cell.sources_and_sinks();
    assert_eq!(sources, vec![b.identity()]);
    assert_eq!(sinks, vec![b.longest_element()]);
    assert_eq!(b.length(sinks[0]), 4);

    let dot = cell.to_dot(&b);
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("label=\"a\""));
}

#[test]
fn graph_json_roundtrip_and_errors() {
    let g = graph(&["a", "b"], &[("a", "b", 3)]);
    let parsed = DefiningGraph::from_json(&g.to_json()).unwrap();
    assert_eq!(parsed, g);

    assert!(DefiningGraph::from_json(r#"{"vertices": [], "edges": []}"#).is_err());
    assert!(DefiningGraph::from_json(
        r#"{"vertices": ["a"], "edges": [["a","a",3]]}"#
    )
    .is_err());
    assert!(DefiningGraph::from_json(
        r#"{"vertices": ["a","b"], "edges": [["a","b",1]]}"#
    )
    .is_err());
    assert!(DefiningGraph::from_json(
        r#"{"vertices": ["a","b"], "edges": [["a","c",3]]}"#
    )
    .is_err());
    assert!(DefiningGraph::from_json("not json").is_err());
}

#[test]
fn cliques_enumeration() {
    let g = graph(
        &["a", "b", "c"],
        &[("a", "b", 3), ("b", "c", 2)],
    );
    let cliques = g.cliques();
    assert!(cliques.contains(&vec![]));
    assert!(cliques.contains(&vec![0, 1]));
    assert!(cliques.contains(&vec![1, 2]));
    assert!(!cliques.iter().any(|c| c == &vec![0, 2] || c == &vec![0, 1, 2]));
    assert_eq!(g.maximal_cliques(), vec![vec![0, 1], vec![1, 2]]);
}
