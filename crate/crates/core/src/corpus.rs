//! Example graphs, with straight-line planar embeddings where they exist.

use std::f64::consts::PI;

use crate::graph::Graph;
use crate::planar::{embedding_from_coordinates, Embedding};

fn build(vertices: &[String], pairs: &[(String, String)]) -> Graph {
    let v: Vec<&str> = vertices.iter().map(String::as_str).collect();
    let p: Vec<(&str, &str)> = pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    Graph::from_pairs(&v, &p).expect("corpus graphs are well formed")
}

/// `K_n` on vertices `1..n`; edge `ij` runs from `i` to `j` for `i < j`.
pub fn complete_graph(n: usize) -> Graph {
    let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            edges.push((format!("{i}{j}"), i.to_string(), j.to_string()));
        }
    }
    Graph::new(vertices, edges).expect("corpus graphs are well formed")
}

/// `K_{3,3}` with parts `a1..a3`, `b1..b3`; edge `aibp` runs from `ai` to `bp`.
pub fn k33() -> Graph {
    let mut vertices: Vec<String> = (1..=3).map(|i| format!("a{i}")).collect();
    vertices.extend((1..=3).map(|p| format!("b{p}")));
    let mut edges = Vec::new();
    for i in 1..=3 {
        for p in 1..=3 {
            edges.push((format!("a{i}b{p}"), format!("a{i}"), format!("b{p}")));
        }
    }
    Graph::new(vertices, edges).expect("corpus graphs are well formed")
}

/// The `n`-cycle `0 -> 1 -> ... -> n-1 -> 0`.
pub fn cycle_graph(n: usize) -> Graph {
    let vertices: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let pairs: Vec<(String, String)> = (0..n)
        .map(|i| (i.to_string(), ((i + 1) % n).to_string()))
        .collect();
    build(&vertices, &pairs)
}

/// A star with `k` leaves `l1..lk` around the centre `c`; `star(3)` is the Y-graph.
pub fn star(k: usize) -> Graph {
    let mut vertices = vec!["c".to_string()];
    vertices.extend((1..=k).map(|i| format!("l{i}")));
    let pairs: Vec<(String, String)> = (1..=k).map(|i| ("c".into(), format!("l{i}"))).collect();
    build(&vertices, &pairs)
}

/// The path `0 -> 1 -> ... -> n-1`.
pub fn path(n: usize) -> Graph {
    let vertices: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let pairs: Vec<(String, String)> = (1..n)
        .map(|i| ((i - 1).to_string(), i.to_string()))
        .collect();
    build(&vertices, &pairs)
}

/// Two triangles `a1a2a3` and `b1b2b3` joined by the edge `a1-b1`.
pub fn barbell() -> Graph {
    Graph::from_pairs(
        &["a1", "a2", "a3", "b1", "b2", "b3"],
        &[
            ("a1", "a2"),
            ("a2", "a3"),
            ("a1", "a3"),
            ("b1", "b2"),
            ("b2", "b3"),
            ("b1", "b3"),
            ("a1", "b1"),
        ],
    )
    .expect("corpus graphs are well formed")
}

/// Two concentric `p`-cycles joined by `p` radii, with spokes from a centre
/// `c` to the inner cycle `i1..ip`; the outer cycle is `o1..op`.
pub fn gamma(p: usize) -> Graph {
    gamma_with_coordinates(p).0
}

/// `gamma(p)` with straight-line vertex positions.
pub fn gamma_with_coordinates(p: usize) -> (Graph, Vec<(f64, f64)>) {
    let mut vertices = vec!["c".to_string()];
    let mut coords = vec![(0.0, 0.0)];
    for k in 0..p {
        vertices.push(format!("i{}", k + 1));
        coords.push(polar(1.0, 2.0 * PI * k as f64 / p as f64));
    }
    for k in 0..p {
        vertices.push(format!("o{}", k + 1));
        coords.push(polar(2.0, 2.0 * PI * k as f64 / p as f64));
    }
    let (i, o) = (|k: usize| format!("i{}", k % p + 1), |k: usize| format!("o{}", k % p + 1));
    let mut pairs = Vec::new();
    for k in 0..p {
        pairs.push(("c".to_string(), i(k)));
    }
    for k in 0..p {
        pairs.push((i(k), i(k + 1)));
    }
    for k in 0..p {
        pairs.push((i(k), o(k)));
    }
    for k in 0..p {
        pairs.push((o(k), o(k + 1)));
    }
    (build(&vertices, &pairs), coords)
}

/// `gamma(p)` with the inside rotated by half a step: the inner cycle has
/// `2p` vertices, spokes reach the odd ones and radii leave the even ones.
pub fn gamma_prime(p: usize) -> Graph {
    gamma_prime_with_coordinates(p).0
}

pub fn gamma_prime_with_coordinates(p: usize) -> (Graph, Vec<(f64, f64)>) {
    let mut vertices = vec!["c".to_string()];
    let mut coords = vec![(0.0, 0.0)];
    for k in 0..2 * p {
        vertices.push(format!("i{}", k + 1));
        coords.push(polar(1.0, PI * k as f64 / p as f64));
    }
    for k in 0..p {
        vertices.push(format!("o{}", k + 1));
        coords.push(polar(2.0, 2.0 * PI * k as f64 / p as f64));
    }
    let i = |k: usize| format!("i{}", k % (2 * p) + 1);
    let o = |k: usize| format!("o{}", k % p + 1);
    let mut pairs = Vec::new();
    for k in 0..p {
        pairs.push(("c".to_string(), i(2 * k + 1)));
    }
    for k in 0..2 * p {
        pairs.push((i(k), i(k + 1)));
    }
    for k in 0..p {
        pairs.push((i(2 * k), o(k)));
    }
    for k in 0..p {
        pairs.push((o(k), o(k + 1)));
    }
    (build(&vertices, &pairs), coords)
}

fn polar(r: f64, theta: f64) -> (f64, f64) {
    (r * theta.cos(), r * theta.sin())
}

fn embedded(graph: Graph, coords: &[(f64, f64)]) -> (Graph, Embedding) {
    let emb = embedding_from_coordinates(&graph, coords);
    (graph, emb)
}

pub fn triangle_embedded() -> (Graph, Embedding) {
    embedded(cycle_graph(3), &[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)])
}

/// `K_4` with vertex `4` in the middle of the triangle `123`.
pub fn k4_with_coordinates() -> (Graph, Vec<(f64, f64)>) {
    (complete_graph(4), vec![(0.0, 0.0), (4.0, 0.0), (2.0, 3.0), (2.0, 1.0)])
}

pub fn k4_embedded() -> (Graph, Embedding) {
    let (g, c) = k4_with_coordinates();
    embedded(g, &c)
}

pub fn star_embedded(k: usize) -> (Graph, Embedding) {
    let mut coords = vec![(0.0, 0.0)];
    coords.extend((0..k).map(|i| polar(1.0, 2.0 * PI * i as f64 / k as f64)));
    embedded(star(k), &coords)
}

pub fn barbell_with_coordinates() -> (Graph, Vec<(f64, f64)>) {
    let coords = vec![
        (-1.0, 0.0),
        (-2.0, 1.0),
        (-2.0, -1.0),
        (1.0, 0.0),
        (2.0, 1.0),
        (2.0, -1.0),
    ];
    (barbell(), coords)
}

pub fn barbell_embedded() -> (Graph, Embedding) {
    let (g, c) = barbell_with_coordinates();
    embedded(g, &c)
}

pub fn gamma_embedded(p: usize) -> (Graph, Embedding) {
    let (g, c) = gamma_with_coordinates(p);
    embedded(g, &c)
}

pub fn gamma_prime_embedded(p: usize) -> (Graph, Embedding) {
    let (g, c) = gamma_prime_with_coordinates(p);
    embedded(g, &c)
}

/// Every bundled example by name, with an embedding when planar.
pub fn bundled() -> Vec<(String, Graph, Option<Embedding>)> {
    let mut out = Vec::new();
    let (g, e) = k4_embedded();
    out.push(("k4".to_string(), g, Some(e)));
    out.push(("k5".to_string(), complete_graph(5), None));
    out.push(("k33".to_string(), k33(), None));
    let (g, e) = star_embedded(3);
    out.push(("y".to_string(), g, Some(e)));
    let (g, e) = barbell_embedded();
    out.push(("barbell".to_string(), g, Some(e)));
    for p in 3..=8 {
        let (g, e) = gamma_embedded(p);
        out.push((format!("gamma{p}"), g, Some(e)));
    }
    for p in 3..=8 {
        let (g, e) = gamma_prime_embedded(p);
        out.push((format!("gamma_prime{p}"), g, Some(e)));
    }
    out
}
