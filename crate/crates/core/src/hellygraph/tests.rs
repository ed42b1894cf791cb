use super::*;

fn cycle(n: u32) -> SimpleGraph {
    let mut g = SimpleGraph::new((0..n).map(|i| format!("v{i}")).collect());
    for i in 0..n {
        g.add_edge(i, (i + 1) % n);
    }
    g
}

fn complete(n: u32) -> SimpleGraph {
    let mut g = SimpleGraph::new((0..n).map(|i| format!("v{i}")).collect());
    for i in 0..n {
        for j in i + 1..n {
            g.add_edge(i, j);
        }
    }
    g
}

/// Brute-force maximal-clique enumeration by subset scan.
fn brute_maximal_cliques(g: &SimpleGraph) -> Vec<Vec<u32>> {
    let n = g.order();
    assert!(n <= 20);
    let is_clique = |mask: u32| -> bool {
        let verts: Vec<u32> = (0..n as u32).filter(|&v| mask >> v & 1 == 1).collect();
        verts
            .iter()
            .enumerate()
            .all(|(i, &u)| verts[i + 1..].iter().all(|&v| g.adjacent(u, v)))
    };
    let cliques: Vec<u32> = (1u32..1 << n).filter(|&m| is_clique(m)).collect();
    let mut out = Vec::new();
    for &m in &cliques {
        if !cliques.iter().any(|&m2| m2 != m && m2 & m == m) {
            out.push((0..n as u32).filter(|&v| m >> v & 1 == 1).collect());
        }
    }
    out.sort();
    out
}

#[test]
fn thickening_shapes() {
    // A single cell yields a complete graph.
    let g = SimpleGraph::thickening(
        (0..5).map(|i| format!("v{i}")).collect(),
        &[vec![0, 1, 2, 3, 4]],
    );
    for u in 0..5 {
        for v in u + 1..5 {
            assert!(g.adjacent(u, v));
        }
    }
    // Cells that are just the edges reproduce the graph.
    let c6 = cycle(6);
    let cells: Vec<Vec<u32>> = (0..6).map(|i| vec![i, (i + 1) % 6]).collect();
    let t = SimpleGraph::thickening(c6.names().to_vec(), &cells);
    for u in 0..6 {
        for v in 0..6 {
            assert_eq!(t.adjacent(u, v), c6.adjacent(u, v));
        }
    }
}

#[test]
fn thickening_of_grid_squares_is_king_move() {
    // 3x3 grid with its four unit squares.
    let idx = |x: u32, y: u32| y * 3 + x;
    let names = (0..9).map(|i| format!("p{}{}", i % 3, i / 3)).collect();
    let mut cells = Vec::new();
    for x in 0..2 {
        for y in 0..2 {
            cells.push(vec![idx(x, y), idx(x + 1, y), idx(x, y + 1), idx(x + 1, y + 1)]);
        }
    }
    let g = SimpleGraph::thickening(names, &cells);
    // King-move adjacency away from the boundary.
    assert!(g.adjacent(idx(0, 0), idx(1, 1)));
    assert!(g.adjacent(idx(1, 0), idx(0, 1)));
    assert!(g.adjacent(idx(1, 1), idx(2, 2)));
    assert!(!g.adjacent(idx(0, 0), idx(2, 0)));
    assert!(!g.adjacent(idx(0, 0), idx(2, 2)));
}

#[test]
fn maximal_cliques_examples() {
    assert_eq!(complete(3).maximal_cliques().len(), 1);
    // K4 minus an edge: two triangles.
    let mut g = complete(4);
    g.adj[0].blocks[0] &= !(1 << 1);
    g.adj[1].blocks[0] &= !1;
    let cliques = g.maximal_cliques();
    assert_eq!(cliques.len(), 2);
    assert!(cliques.iter().all(|c| c.len() == 3));
    // C6 is triangle-free: the cliques are the six edges.
    let cliques = cycle(6).maximal_cliques();
    assert_eq!(cliques.len(), 6);
    assert!(cliques.iter().all(|c| c.len() == 2));
}

#[test]
fn maximal_cliques_match_brute_force() {
    // Deterministic pseudo-random graphs on up to 14 vertices.
    let mut state = 0x243f6a88u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    for trial in 0..40 {
        let n = 4 + (next() % 11) as u32;
        let mut g = SimpleGraph::new((0..n).map(|i| format!("v{i}")).collect());
        for u in 0..n {
            for v in u + 1..n {
                if next() % 100 < 45 {
                    g.add_edge(u, v);
                }
            }
        }
        let fast: Vec<Vec<u32>> = g.maximal_cliques().iter().map(|c| c.iter().collect()).collect();
        assert_eq!(fast, brute_maximal_cliques(&g), "trial {trial}, n = {n}");
    }
}

#[test]
fn clique_helly_examples() {
    assert!(complete(3).clique_helly_check(4).passed());
    // Two triangles glued along an edge (chordal, hence clique-Helly).
    let mut g = complete(4);
    g.adj[0].blocks[0] &= !(1 << 1);
    g.adj[1].blocks[0] &= !1;
    let check = g.clique_helly_check(4);
    assert!(check.passed());
    assert!(check.families_tested > 0);

    // The octahedron K_{2,2,2} is not clique-Helly: triangles such as
    // {0,2,4}, {0,3,5}, {1,2,5} pairwise intersect in single vertices.
    let mut oct = complete(6);
    for pair in [(0u32, 1u32), (2, 3), (4, 5)] {
        oct.adj[pair.0 as usize].blocks[0] &= !(1 << pair.1);
        oct.adj[pair.1 as usize].blocks[0] &= !(1 << pair.0);
    }
    let check = oct.clique_helly_check(4);
    let cex = check.counterexample.expect("octahedron triangles violate Helly");
    assert!(validate_counterexample(&oct, &cex));

    // The Hajos graph (triangle with a triangle on each edge) is the
    // classical non-clique-Helly example.
    let mut hajos = SimpleGraph::new((0..6).map(|i| format!("v{i}")).collect());
    for (u, v) in [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (1, 4), (2, 4), (2, 5), (0, 5)] {
        hajos.add_edge(u, v);
    }
    let check = hajos.clique_helly_check(4);
    let cex = check.counterexample.expect("Hajos graph is not clique-Helly");
    assert!(validate_counterexample(&hajos, &cex));
}

/// A reported family must pairwise intersect and have empty intersection.
fn validate_counterexample(g: &SimpleGraph, family: &[CheckSet]) -> bool {
    let as_set = |cs: &CheckSet| -> std::collections::BTreeSet<String> {
        cs.vertices.iter().cloned().collect()
    };
    let sets: Vec<_> = family.iter().map(as_set).collect();
    if sets.len() < 3 {
        return false;
    }
    let _ = g;
    let pairwise = sets.iter().enumerate().all(|(i, a)| {
        sets[i + 1..].iter().all(|b| a.intersection(b).next().is_some())
    });
    let mut total = sets[0].clone();
    for s in &sets[1..] {
        total = total.intersection(s).cloned().collect();
    }
    pairwise && total.is_empty()
}

#[test]
fn ball_helly_examples() {
    // Trees are Helly.
    let mut p3 = SimpleGraph::new(vec!["a".into(), "b".into(), "c".into()]);
    p3.add_edge(0, 1);
    p3.add_edge(1, 2);
    assert!(p3.ball_helly_check(4, 2, &[0, 1, 2]).passed());

    // C4: four radius-1 balls pairwise intersect with empty intersection.
    let c4 = cycle(4);
    let check = c4.ball_helly_check(4, 1, &[0, 1, 2, 3]);
    let cex = check.counterexample.expect("C4 is not ball-Helly");
    assert!(cex.len() >= 3);

    // C6: radius-1 balls at alternating vertices.
    let c6 = cycle(6);
    let check = c6.ball_helly_check(4, 1, &[0, 2, 4]);
    assert!(!check.passed());
}

#[test]
fn edge_list_io() {
    let g = SimpleGraph::from_edge_list("a b\nb c # comment\n\n# full comment\nc a\n").unwrap();
    assert_eq!(g.order(), 3);
    assert!(g.adjacent(0, 1) && g.adjacent(1, 2) && g.adjacent(2, 0));
    assert!(SimpleGraph::from_edge_list("a a\n").is_err());
    assert!(SimpleGraph::from_edge_list("a b c\n").is_err());
    let dot = g.to_dot();
    assert!(dot.contains("n0 -- n1"));
}

#[test]
fn ball_shapes() {
    let c6 = cycle(6);
    assert_eq!(c6.ball(0, 0).len(), 1);
    assert_eq!(c6.ball(0, 1).len(), 3);
    assert_eq!(c6.ball(0, 2).len(), 5);
    assert_eq!(c6.ball(0, 3).len(), 6);
}

