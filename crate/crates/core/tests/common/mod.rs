//! Random graphs, random plane drawings and the checks run on them, shared by
//! the property tests and the acceptance harness.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

use confspace::discrete_config::{build_discrete_config, euler_characteristic_formula, homology_oracle};
use confspace::graph::{fundamental_cycle_basis, subdivide, validate, EdgeChain, Graph};
use confspace::intersection_form::{build_intersection_matrix, config_homology, intersection_tensor, scalar_form};
use confspace::planar::{
    check_thm3_hypotheses, disjoint_pairs, h1_generator_cycles, torus_basis_check, trace_faces, Dart, Embedding,
};
use confspace::relative_complex::{build_relative_complex, rank_formula_check, relative_h2};
use confspace::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

pub type Check = Result<(), String>;

/// A connected graph on at most `max_vertices` vertices: a random tree plus up
/// to `extra` chords, each edge with a random orientation.
pub fn connected_graph(max_vertices: usize, extra: usize) -> impl Strategy<Value = Graph> {
    (2..=max_vertices)
        .prop_flat_map(move |n| {
            let parents: Vec<_> = (1..n).map(|i| 0..i).collect();
            let chords = prop::collection::vec((0..n, 0..n), 0..=extra);
            let flips = prop::collection::vec(any::<bool>(), n * n);
            (Just(n), parents, chords, flips)
        })
        .prop_map(|(n, parents, chords, flips)| {
            let mut seen = HashSet::new();
            let mut pairs = Vec::new();
            let tree = parents.into_iter().enumerate().map(|(i, p)| (i + 1, p));
            for (a, b) in tree.chain(chords) {
                if a == b || !seen.insert((a.min(b), a.max(b))) {
                    continue;
                }
                let (t, h) = if flips[pairs.len()] { (b, a) } else { (a, b) };
                pairs.push((format!("v{t}"), format!("v{h}")));
            }
            let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let v: Vec<&str> = vertices.iter().map(String::as_str).collect();
            let p: Vec<(&str, &str)> = pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
            Graph::from_pairs(&v, &p).unwrap()
        })
}

/// Possibly disconnected: every pair of vertices is an edge with some probability.
pub fn any_graph(max_vertices: usize) -> impl Strategy<Value = Graph> {
    (1..=max_vertices)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(prop::bool::weighted(0.35), n * n)))
        .prop_map(|(n, bits)| {
            let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let mut pairs = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    if bits[a * n + b] {
                        pairs.push((vertices[a].as_str(), vertices[b].as_str()));
                    }
                }
            }
            let v: Vec<&str> = vertices.iter().map(String::as_str).collect();
            Graph::from_pairs(&v, &pairs).unwrap()
        })
}

/// `g` with two new cycles of the given lengths hung by paths of length
/// `bridge` from its first and last vertex, and those two cycles.
pub fn with_two_far_cycles(g: &Graph, len_a: usize, len_b: usize, bridge: usize) -> (Graph, EdgeChain, EdgeChain) {
    let mut vertices: Vec<String> = g.vertices().to_vec();
    let mut edges: Vec<(String, String, String)> = g
        .edges()
        .iter()
        .map(|e| (e.id.clone(), g.vertex_id(e.tail).into(), g.vertex_id(e.head).into()))
        .collect();
    let mut add_cycle = |tag: &str, len: usize, anchor: String, vertices: &mut Vec<String>| {
        let names: Vec<String> = (0..len).map(|k| format!("{tag}{k}")).collect();
        vertices.extend(names.iter().cloned());
        let mut chain = Vec::new();
        for k in 0..len {
            let id = format!("{tag}e{k}");
            edges.push((id.clone(), names[k].clone(), names[(k + 1) % len].clone()));
            chain.push((id, 1));
        }
        let mut prev = anchor;
        for k in 0..bridge {
            let next = if k + 1 == bridge { names[0].clone() } else { format!("{tag}p{k}") };
            if k + 1 < bridge {
                vertices.push(next.clone());
            }
            edges.push((format!("{tag}b{k}"), prev, next.clone()));
            prev = next;
        }
        chain
    };
    let first = g.vertex_id(0).to_string();
    let last = g.vertex_id(g.vertex_count() - 1).to_string();
    let a = add_cycle("x", len_a, first, &mut vertices);
    let b = add_cycle("y", len_b, last, &mut vertices);
    let h = Graph::new(vertices, edges).unwrap();
    let chain = |terms: &[(String, i64)]| {
        let t: Vec<(&str, i64)> = terms.iter().map(|(s, n)| (s.as_str(), *n)).collect();
        EdgeChain::from_ids(&h, &t).unwrap()
    };
    let (za, zb) = (chain(&a), chain(&b));
    (h, za, zb)
}

pub fn check_complexes(g: &Graph) -> Check {
    let d = build_discrete_config(g);
    ensure!(d.boundary_squared_is_zero(), "d^2 != 0 on D(G,2)");
    ensure!(build_relative_complex(g).boundary_squared_is_zero(), "d^2 != 0 on (N, dN)");
    let formula = euler_characteristic_formula(g);
    ensure!(d.euler_characteristic() == formula, "cell count {} vs formula {formula}", d.euler_characteristic());
    let oracle = homology_oracle(&d);
    let alt: i64 = oracle
        .betti
        .iter()
        .enumerate()
        .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
        .sum();
    ensure!(alt == formula, "alternating Betti sum {alt} vs {formula}");
    Ok(())
}

#[derive(Debug, PartialEq)]
pub struct Ranks {
    pub oracle_betti: Vec<usize>,
    pub oracle_torsion: Vec<Vec<BigInt>>,
    pub relative_rank: usize,
    pub b1: usize,
    pub b2: usize,
    pub coker_free: usize,
}

/// Both routes to the homology of the configuration space; they must agree.
pub fn ranks(g: &Graph) -> Result<Ranks, String> {
    let d = build_discrete_config(g);
    let oracle = homology_oracle(&d);
    let rel = build_relative_complex(g);
    let h2 = relative_h2(&rel);
    let basis = fundamental_cycle_basis(g).map_err(|e| e.to_string())?;
    let im = build_intersection_matrix(&basis, &rel, &h2).map_err(|e| e.to_string())?;
    let rep = config_homology(g, &im, Some(&oracle)).map_err(|e| e.to_string())?;
    ensure!(rep.oracle_agreement == Some(true), "oracle {:?} vs intersection route {:?}", oracle, rep);
    Ok(Ranks {
        oracle_betti: oracle.betti,
        oracle_torsion: oracle.torsion,
        relative_rank: h2.rank,
        b1: rep.b1,
        b2: rep.b2,
        coker_free: rep.coker_free_rank,
    })
}

pub fn check_relative_and_routes(g: &Graph) -> Check {
    let class = validate(g);
    let rel = build_relative_complex(g);
    let h2 = relative_h2(&rel);
    if class.is_generic() {
        let check = rank_formula_check(g, &rel, &h2).map_err(|e| e.to_string())?;
        ensure!(check.holds(), "relative pair: {check:?}");
    }
    if class.connected && !class.circle_like {
        ranks(g)?;
    }
    Ok(())
}

pub fn check_scalar_symmetry(g: &Graph, picks: [usize; 3]) -> Check {
    let basis = fundamental_cycle_basis(g).map_err(|e| e.to_string())?;
    if basis.is_empty() {
        return Ok(());
    }
    let (z, w) = (&basis[picks[0] % basis.len()], &basis[picks[1] % basis.len()]);
    let meeting: Vec<(usize, usize)> = (0..g.edge_count())
        .flat_map(|e| (0..g.edge_count()).map(move |f| (e, f)))
        .filter(|&(e, f)| g.edges_meet(e, f))
        .collect();
    let (e, f) = meeting[picks[2] % meeting.len()];
    let (a, b) = (&g.edge(e).id, &g.edge(f).id);
    let (x, y) = (scalar_form(g, a, b, z, w), scalar_form(g, b, a, w, z));
    ensure!(x == y, "I_{a}{b}(z w) = {x:?} but I_{b}{a}(w z) = {y:?}");
    Ok(())
}

/// Cycles with vertex-disjoint supports have zero tensor, in both orders.
pub fn check_separated(h: &Graph, za: &EdgeChain, zb: &EdgeChain) -> Check {
    let rel = build_relative_complex(h);
    let zero = |z: &EdgeChain, w: &EdgeChain| intersection_tensor(z, w, &rel).unwrap().iter().all(Zero::is_zero);
    ensure!(zero(za, zb) && zero(zb, za), "far apart cycles intersect");
    ensure!(!zero(za, za), "a cycle misses itself");
    let basis = fundamental_cycle_basis(h).map_err(|e| e.to_string())?;
    for z in &basis {
        for w in &basis {
            if z.support_vertices(h).is_disjoint(&w.support_vertices(h)) {
                ensure!(zero(z, w), "disjoint basis cycles intersect");
            }
        }
    }
    Ok(())
}

pub fn check_subdivision(g: &Graph, edge: usize, parts: usize) -> Check {
    if !validate(g).is_generic() {
        return Ok(());
    }
    let id = g.edge(edge % g.edge_count()).id.clone();
    let split = subdivide(g, &BTreeMap::from([(id, parts)])).map_err(|e| e.to_string())?;
    let (before, after) = (ranks(g)?, ranks(&split)?);
    ensure!(before == after, "ranks change under subdivision: {before:?} vs {after:?}");
    let rel = build_relative_complex(&split);
    let h2 = relative_h2(&rel);
    let check = rank_formula_check(&split, &rel, &h2).map_err(|e| e.to_string())?;
    ensure!(check.holds(), "subdivided relative pair: {check:?}");
    Ok(())
}

#[derive(Clone, Copy, Debug, Default)]
pub struct PlanarStats {
    pub checked: usize,
    pub with_tori: usize,
    pub hypotheses_hold: usize,
}

pub fn check_planar(g: &Graph, emb: &Embedding, stats: &mut PlanarStats) -> Check {
    let class = validate(g);
    if class.circle_like || g.edge_count() == 0 {
        return Ok(());
    }
    stats.checked += 1;
    let ps = trace_faces(g, emb).map_err(|e| e.to_string())?;
    let pairs = disjoint_pairs(&ps);
    ensure!(pairs.len().is_multiple_of(2), "odd number of pairs");
    for &(i, j) in &pairs.pairs {
        ensure!(pairs.contains(j, i), "pair ({i},{j}) without its reverse");
        ensure!(ps.face_vertices(i).is_disjoint(ps.face_vertices(j)), "pair ({i},{j}) not disjoint");
    }
    if !pairs.is_empty() {
        stats.with_tori += 1;
    }

    let dc = build_discrete_config(g);
    let oracle = homology_oracle(&dc);
    let rel = build_relative_complex(g);
    let h2 = relative_h2(&rel);
    let im = build_intersection_matrix(ps.bounded_cycles(), &rel, &h2).map_err(|e| e.to_string())?;
    let rep = config_homology(g, &im, Some(&oracle)).map_err(|e| e.to_string())?;
    ensure!(rep.oracle_agreement == Some(true), "routes disagree");
    ensure!(
        pairs.len() == im.nullity() && pairs.len() == oracle.betti[2],
        "|J| = {}, nullity {}, oracle b2 {}",
        pairs.len(),
        im.nullity(),
        oracle.betti[2]
    );
    let check = torus_basis_check(&ps, &pairs, &im);
    ensure!(check.passes(), "torus basis: {check:?}");

    if check_thm3_hypotheses(&ps, g).all_pass() {
        stats.hypotheses_hold += 1;
        let r = ps.bounded_count();
        ensure!(oracle.betti[1] == 2 * r + 1, "b1 = {} but r = {r}", oracle.betti[1]);
        ensure!(rep.coker_free_rank == 1, "cokernel free rank {}", rep.coker_free_rank);
        let gens = h1_generator_cycles(&ps, g, &dc).map_err(|e| e.to_string())?;
        ensure!(gens.full_rank(), "generator cycles have rank {}", gens.rank);
    }
    Ok(())
}

pub type Point = (f64, f64);

/// A plane graph whose edges are polylines, so degree-two vertices can be
/// smoothed away without losing the drawing.
#[derive(Clone, Debug)]
pub struct Drawing {
    pub points: Vec<Point>,
    pub alive: Vec<bool>,
    /// `(tail, head, polyline from tail to head)`
    pub edges: Vec<Option<(usize, usize, Vec<Point>)>>,
}

impl Drawing {
    pub fn grid(w: usize, h: usize, bits: &[bool]) -> Drawing {
        let id = |x: usize, y: usize| y * w + x;
        let points = (0..w * h).map(|k| ((k % w) as f64, (k / w) as f64)).collect();
        let mut edges = Vec::new();
        let mut bit = bits.iter();
        for y in 0..h {
            for x in 0..w {
                let mut push = |a: usize, b: usize, pa: Point, pb: Point| {
                    if *bit.next().unwrap() {
                        edges.push(Some((a, b, vec![pa, pb])));
                    }
                };
                let p = (x as f64, y as f64);
                if x + 1 < w {
                    push(id(x, y), id(x + 1, y), p, (p.0 + 1.0, p.1));
                }
                if y + 1 < h {
                    push(id(x, y), id(x, y + 1), p, (p.0, p.1 + 1.0));
                }
                if x + 1 < w && y + 1 < h {
                    push(id(x, y), id(x + 1, y + 1), p, (p.0 + 1.0, p.1 + 1.0));
                }
            }
        }
        let mut d = Drawing { points, alive: vec![true; w * h], edges };
        d.keep_component_of(0);
        d
    }

    fn incident(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| matches!(&self.edges[e], Some((a, b, _)) if *a == v || *b == v))
            .collect()
    }

    pub fn keep_component_of(&mut self, root: usize) {
        let mut seen = vec![false; self.points.len()];
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(v) = stack.pop() {
            for e in self.incident(v) {
                let (a, b, _) = self.edges[e].as_ref().unwrap();
                let u = if *a == v { *b } else { *a };
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        for e in self.edges.iter_mut() {
            if matches!(e, Some((a, _, _)) if !seen[*a]) {
                *e = None;
            }
        }
        self.alive = seen;
    }

    fn adjacent(&self, a: usize, b: usize) -> bool {
        self.edges.iter().flatten().any(|(x, y, _)| (*x, *y) == (a, b) || (*x, *y) == (b, a))
    }

    /// Removes leaves, and replaces paths through degree-two vertices by single
    /// edges, deleting the vertex instead when that edge already exists.
    pub fn simplify(&mut self) {
        loop {
            let live: Vec<usize> = (0..self.points.len()).filter(|&v| self.alive[v]).collect();
            if live.len() <= 3 {
                return;
            }
            let mut changed = false;
            for v in live {
                let inc = self.incident(v);
                if inc.len() == 1 {
                    self.edges[inc[0]] = None;
                    self.alive[v] = false;
                    changed = true;
                    break;
                }
                if inc.len() == 2 {
                    let (a, pa) = self.walk_away(inc[0], v);
                    let (b, pb) = self.walk_away(inc[1], v);
                    if self.adjacent(a, b) {
                        self.edges[inc[0]] = None;
                        self.edges[inc[1]] = None;
                        self.alive[v] = false;
                        changed = true;
                        break;
                    }
                    let mut line = pa;
                    line.reverse();
                    line.extend(pb.into_iter().skip(1));
                    self.edges[inc[0]] = Some((a, b, line));
                    self.edges[inc[1]] = None;
                    self.alive[v] = false;
                    changed = true;
                    break;
                }
            }
            if !changed {
                return;
            }
        }
    }

    /// The far endpoint of `e` and its polyline from `v`.
    fn walk_away(&self, e: usize, v: usize) -> (usize, Vec<Point>) {
        let (a, b, line) = self.edges[e].as_ref().unwrap();
        if *a == v {
            (*b, line.clone())
        } else {
            (*a, line.iter().rev().copied().collect())
        }
    }

    pub fn embed(&self) -> (Graph, Embedding) {
        let live: Vec<usize> = (0..self.points.len()).filter(|&v| self.alive[v]).collect();
        let index = |v: usize| live.binary_search(&v).unwrap();
        let names: Vec<String> = live.iter().map(|v| format!("p{v}")).collect();
        let kept: Vec<&(usize, usize, Vec<Point>)> = self.edges.iter().flatten().collect();
        let edges = kept
            .iter()
            .enumerate()
            .map(|(k, (a, b, _))| (format!("e{k}"), names[index(*a)].clone(), names[index(*b)].clone()));
        let graph = Graph::new(names.clone(), edges).unwrap();

        let first_step = |e: usize, v: usize| {
            let (a, _, line) = kept[e];
            let (p, q) = if index(*a) == v { (line[0], line[1]) } else { (line[line.len() - 1], line[line.len() - 2]) };
            (q.1 - p.1).atan2(q.0 - p.0)
        };
        let rotations: Vec<Vec<usize>> = (0..graph.vertex_count())
            .map(|v| {
                let mut rot = graph.incident(v).to_vec();
                rot.sort_by(|&x, &y| first_step(x, v).total_cmp(&first_step(y, v)));
                rot
            })
            .collect();
        if graph.edge_count() == 0 {
            return (graph, Embedding { rotations, outer: None });
        }
        let probe = Embedding { rotations: rotations.clone(), outer: Some(Dart::forward(0)) };
        let walks = trace_faces(&graph, &probe).unwrap().faces;
        let area = |walk: &[Dart]| {
            walk.iter()
                .map(|d| {
                    let line = &kept[d.edge].2;
                    let pts: Vec<Point> = if d.reverse { line.iter().rev().copied().collect() } else { line.clone() };
                    pts.windows(2).map(|s| s[0].0 * s[1].1 - s[1].0 * s[0].1).sum::<f64>()
                })
                .sum::<f64>()
        };
        let outer = if walks.len() == 1 {
            walks[0][0]
        } else {
            walks.iter().find(|w| area(w) < 0.0).expect("outer walk")[0]
        };
        (graph, Embedding { rotations, outer: Some(outer) })
    }
}

pub fn drawing() -> impl Strategy<Value = Drawing> {
    (2usize..=4, 2usize..=3, prop::bool::weighted(0.7))
        .prop_flat_map(|(w, h, smooth)| {
            (Just(w), Just(h), Just(smooth), prop::collection::vec(prop::bool::weighted(0.75), 3 * w * h))
        })
        .prop_map(|(w, h, smooth, bits)| {
            let mut d = Drawing::grid(w, h, &bits);
            if smooth {
                d.simplify();
            }
            d
        })
}

/// A full rectangular grid with random diagonals, smoothed: mostly
/// two-connected with valence at least three.
pub fn stiff_drawing() -> impl Strategy<Value = Drawing> {
    (3usize..=4, 2usize..=3)
        .prop_flat_map(|(w, h)| (Just(w), Just(h), prop::collection::vec(any::<bool>(), w * h)))
        .prop_map(|(w, h, diag)| {
            let mut bits = Vec::new();
            for y in 0..h {
                for x in 0..w {
                    if x + 1 < w {
                        bits.push(true);
                    }
                    if y + 1 < h {
                        bits.push(true);
                    }
                    if x + 1 < w && y + 1 < h {
                        bits.push(diag[y * w + x]);
                    }
                }
            }
            let mut d = Drawing::grid(w, h, &bits);
            d.simplify();
            d
        })
}

