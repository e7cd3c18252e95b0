//! Planar embeddings given as rotation systems: faces, face cycles, pairs of
//! faces with disjoint closures, the torus basis of `H_2`, and the Betti
//! formulas and explicit `H_1` generators for well-behaved embeddings.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::chain_algebra::{invariant_factors, rank};
use crate::discrete_config::{Cell1, DiscreteConfigComplex};
use crate::error::{Error, Result};
use crate::graph::{EdgeChain, Graph};
use crate::intersection_form::IntersectionMatrix;
use crate::IntMatrix;

/// An edge traversed in a direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Dart {
    pub edge: usize,
    pub reverse: bool,
}

impl Dart {
    pub fn forward(edge: usize) -> Self {
        Dart { edge, reverse: false }
    }

    pub fn backward(edge: usize) -> Self {
        Dart { edge, reverse: true }
    }

    pub fn origin(&self, graph: &Graph) -> usize {
        let e = graph.edge(self.edge);
        if self.reverse {
            e.head
        } else {
            e.tail
        }
    }

    pub fn target(&self, graph: &Graph) -> usize {
        graph.edge(self.edge).other(self.origin(graph))
    }

    pub fn reversed(&self) -> Self {
        Dart {
            edge: self.edge,
            reverse: !self.reverse,
        }
    }

    fn sign(&self) -> i64 {
        if self.reverse {
            -1
        } else {
            1
        }
    }

    fn slot(&self) -> usize {
        2 * self.edge + usize::from(self.reverse)
    }
}

/// Counterclockwise rotation at every vertex plus a dart on the outer face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub rotations: Vec<Vec<usize>>,
    /// a dart whose traced face (face on its left) is the unbounded one
    pub outer: Option<Dart>,
}

#[derive(Clone, Debug)]
pub struct PlanarStructure {
    pub rotations: Vec<Vec<usize>>,
    /// boundary walks with the face on the left; the outer face is first
    pub faces: Vec<Vec<Dart>>,
    pub outer_index: usize,
    /// `z_0, z_1, ..., z_r`, all anticlockwise
    pub face_cycles: Vec<EdgeChain>,
    face_vertices: Vec<BTreeSet<usize>>,
}

impl PlanarStructure {
    /// Number of bounded faces, `r = b_1(G)`.
    pub fn bounded_count(&self) -> usize {
        self.faces.len() - 1
    }

    /// `z_1, ..., z_r`, a basis of `H_1(G)`.
    pub fn bounded_cycles(&self) -> &[EdgeChain] {
        &self.face_cycles[1..]
    }

    /// Vertices on the closure of face `i`.
    pub fn face_vertices(&self, i: usize) -> &BTreeSet<usize> {
        &self.face_vertices[i]
    }

    fn face_edges(&self, i: usize) -> BTreeSet<usize> {
        self.faces[i].iter().map(|d| d.edge).collect()
    }

    /// Coefficients of `z_i` in the bounded basis, with `z_0 = z_1 + ... + z_r`.
    pub fn face_coordinates(&self, i: usize) -> Vec<i64> {
        let r = self.bounded_count();
        if i == 0 {
            vec![1; r]
        } else {
            let mut v = vec![0; r];
            v[i - 1] = 1;
            v
        }
    }
}

fn check_rotations(graph: &Graph, embedding: &Embedding) -> Result<()> {
    if embedding.rotations.len() != graph.vertex_count() {
        return Err(Error::BadRotation(format!(
            "{} rotations for {} vertices",
            embedding.rotations.len(),
            graph.vertex_count()
        )));
    }
    for (v, rot) in embedding.rotations.iter().enumerate() {
        let listed: BTreeSet<usize> = rot.iter().copied().collect();
        let incident: BTreeSet<usize> = graph.incident(v).iter().copied().collect();
        if listed.len() != rot.len() {
            return Err(Error::BadRotation(format!(
                "vertex `{}` lists an edge twice",
                graph.vertex_id(v)
            )));
        }
        if listed != incident {
            return Err(Error::BadRotation(format!(
                "rotation at `{}` does not match its incident edges",
                graph.vertex_id(v)
            )));
        }
    }
    Ok(())
}

/// Traces the faces of a rotation system.
///
/// The successor of a dart ending at `w` leaves `w` along the edge just
/// before the reversed dart in the counterclockwise rotation at `w`. The face
/// stays on the left, so bounded faces come out anticlockwise and the outer
/// walk clockwise; the outer walk is negated to give `z_0`.
pub fn trace_faces(graph: &Graph, embedding: &Embedding) -> Result<PlanarStructure> {
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    check_rotations(graph, embedding)?;
    let rotations = embedding.rotations.clone();
    let expected = graph.edge_count() + 2 - graph.vertex_count();

    if graph.edge_count() == 0 {
        return Ok(PlanarStructure {
            rotations,
            faces: vec![Vec::new()],
            outer_index: 0,
            face_cycles: vec![EdgeChain::new()],
            face_vertices: vec![(0..graph.vertex_count()).collect()],
        });
    }

    let mut walks = boundary_walks(graph, &rotations);
    if walks.len() != expected {
        return Err(Error::EulerMismatch {
            traced: walks.len(),
            expected,
        });
    }

    let marker = embedding
        .outer
        .ok_or_else(|| Error::BadOuterMarker("no outer face marker given".into()))?;
    if marker.edge >= graph.edge_count() {
        return Err(Error::BadOuterMarker(format!("edge index {} out of range", marker.edge)));
    }
    let outer = walks
        .iter()
        .position(|w| w.contains(&marker))
        .expect("every dart lies on a face");
    let outer_walk = walks.remove(outer);
    walks.insert(0, outer_walk);

    let face_cycles = walks
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let c = EdgeChain::from_terms(w.iter().map(|d| (d.edge, d.sign())));
            if i == 0 {
                c.scaled(-1)
            } else {
                c
            }
        })
        .collect();
    let face_vertices = walks
        .iter()
        .map(|w| w.iter().map(|d| d.origin(graph)).collect())
        .collect();
    Ok(PlanarStructure {
        rotations,
        faces: walks,
        outer_index: 0,
        face_cycles,
        face_vertices,
    })
}

/// All boundary walks of the rotation system, in order of their first dart.
fn boundary_walks(graph: &Graph, rotations: &[Vec<usize>]) -> Vec<Vec<Dart>> {
    let position = |v: usize, e: usize| rotations[v].iter().position(|&x| x == e).unwrap();
    let leaving = |v: usize, e: usize| {
        if graph.edge(e).tail == v {
            Dart::forward(e)
        } else {
            Dart::backward(e)
        }
    };
    let next = |d: Dart| {
        let w = d.target(graph);
        let rot = &rotations[w];
        let pred = rot[(position(w, d.edge) + rot.len() - 1) % rot.len()];
        leaving(w, pred)
    };

    let mut seen = vec![false; 2 * graph.edge_count()];
    let mut walks: Vec<Vec<Dart>> = Vec::new();
    for slot in 0..2 * graph.edge_count() {
        if seen[slot] {
            continue;
        }
        let start = Dart {
            edge: slot / 2,
            reverse: slot % 2 == 1,
        };
        let mut walk = Vec::new();
        let mut d = start;
        loop {
            seen[d.slot()] = true;
            walk.push(d);
            d = next(d);
            if d == start {
                break;
            }
        }
        walks.push(walk);
    }
    walks
}

/// Straight-line embedding from vertex positions: rotations by angle, and the
/// outer marker on the walk of negative signed area.
pub fn embedding_from_coordinates(graph: &Graph, coords: &[(f64, f64)]) -> Embedding {
    assert_eq!(coords.len(), graph.vertex_count());
    let rotations: Vec<Vec<usize>> = (0..graph.vertex_count())
        .map(|v| {
            let (x, y) = coords[v];
            let mut inc = graph.incident(v).to_vec();
            let angle = |e: usize| {
                let (px, py) = coords[graph.edge(e).other(v)];
                (py - y).atan2(px - x)
            };
            inc.sort_by(|&a, &b| angle(a).total_cmp(&angle(b)));
            inc
        })
        .collect();
    let outer = boundary_walks(graph, &rotations)
        .into_iter()
        .find(|w| {
            let area: f64 = w
                .iter()
                .map(|d| {
                    let (a, b) = (coords[d.origin(graph)], coords[d.target(graph)]);
                    a.0 * b.1 - b.0 * a.1
                })
                .sum();
            area < 0.0 || w.len() == 2 * graph.edge_count()
        })
        .map(|w| w[0]);
    Embedding { rotations, outer }
}

/// Ordered pairs of distinct faces whose closures are disjoint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DisjointPairSet {
    pub pairs: Vec<(usize, usize)>,
}

impl DisjointPairSet {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.pairs.binary_search(&(i, j)).is_ok()
    }

    pub fn position(&self, i: usize, j: usize) -> Option<usize> {
        self.pairs.binary_search(&(i, j)).ok()
    }
}

pub fn disjoint_pairs(ps: &PlanarStructure) -> DisjointPairSet {
    let n = ps.faces.len();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && ps.face_vertices[i].is_disjoint(&ps.face_vertices[j]) {
                pairs.push((i, j));
            }
        }
    }
    DisjointPairSet { pairs }
}

/// `z_a (x) z_b` in bounded-face coordinates, as an `r x r` row-major vector.
pub fn torus_tensor(ps: &PlanarStructure, a: usize, b: usize) -> Vec<BigInt> {
    let (x, y) = (ps.face_coordinates(a), ps.face_coordinates(b));
    x.iter()
        .flat_map(|&p| y.iter().map(move |&q| BigInt::from(p * q)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusBasisCheck {
    pub pair_count: usize,
    pub nullity: usize,
    pub all_in_kernel: bool,
    pub independent: bool,
    /// the torus lattice has no index in the kernel lattice
    pub saturated: bool,
}

impl TorusBasisCheck {
    pub fn passes(&self) -> bool {
        self.all_in_kernel && self.independent && self.saturated && self.pair_count == self.nullity
    }
}

/// Checks that the torus tensors form a basis of `ker I`. The intersection
/// matrix must be built on the bounded face cycles.
pub fn torus_basis_check(
    ps: &PlanarStructure,
    pairs: &DisjointPairSet,
    im: &IntersectionMatrix,
) -> TorusBasisCheck {
    let r = ps.bounded_count();
    assert_eq!(im.basis_len(), r, "intersection matrix must use the face basis");
    let tensors: Vec<Vec<BigInt>> = pairs
        .pairs
        .iter()
        .map(|&(i, j)| torus_tensor(ps, i, j))
        .collect();
    let all_in_kernel = tensors
        .iter()
        .all(|t| im.apply(t).iter().all(Zero::is_zero));
    let stacked = IntMatrix::from_cols(r * r, &tensors);
    let factors = invariant_factors(&stacked);
    let independent = factors.len() == tensors.len();
    let saturated = factors.iter().all(|d| *d == BigInt::from(1));
    TorusBasisCheck {
        pair_count: pairs.len(),
        nullity: im.nullity(),
        all_in_kernel,
        independent,
        saturated,
    }
}

/// Individual outcomes of the hypotheses of the Betti formulas.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisChecks {
    pub valence_at_least_three: bool,
    /// every boundary walk, the outer one included, is a simple cycle
    pub simple_face_boundaries: bool,
    /// every nonempty intersection of two face closures is connected
    pub connected_intersections: bool,
    pub failures: Vec<String>,
}

impl HypothesisChecks {
    pub fn all_pass(&self) -> bool {
        self.valence_at_least_three && self.simple_face_boundaries && self.connected_intersections
    }
}

pub fn check_thm3_hypotheses(ps: &PlanarStructure, graph: &Graph) -> HypothesisChecks {
    let mut failures = Vec::new();
    let low: Vec<&str> = (0..graph.vertex_count())
        .filter(|&v| graph.degree(v) < 3)
        .map(|v| graph.vertex_id(v))
        .collect();
    if !low.is_empty() {
        failures.push(format!("vertices of valence below 3: {}", low.join(", ")));
    }
    let mut simple = true;
    for (i, walk) in ps.faces.iter().enumerate() {
        let distinct: HashSet<usize> = walk.iter().map(|d| d.origin(graph)).collect();
        if distinct.len() != walk.len() || walk.len() < 3 {
            simple = false;
            failures.push(format!("boundary of face {i} is not a simple cycle"));
        }
    }
    let mut connected = true;
    for i in 0..ps.faces.len() {
        for j in i + 1..ps.faces.len() {
            let common: BTreeSet<usize> = ps.face_vertices[i]
                .intersection(&ps.face_vertices[j])
                .copied()
                .collect();
            if common.is_empty() {
                continue;
            }
            let shared_edges: Vec<usize> = ps
                .face_edges(i)
                .intersection(&ps.face_edges(j))
                .copied()
                .collect();
            if !subgraph_connected(graph, &common, &shared_edges) {
                connected = false;
                failures.push(format!("closures of faces {i} and {j} meet in a disconnected set"));
            }
        }
    }
    HypothesisChecks {
        valence_at_least_three: low.is_empty(),
        simple_face_boundaries: simple,
        connected_intersections: connected,
        failures,
    }
}

fn subgraph_connected(graph: &Graph, vertices: &BTreeSet<usize>, edges: &[usize]) -> bool {
    let list: Vec<usize> = vertices.iter().copied().collect();
    let idx = |v: usize| list.binary_search(&v).unwrap();
    let mut parent: Vec<usize> = (0..list.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &e in edges {
        let (a, b) = (idx(graph.edge(e).tail), idx(graph.edge(e).head));
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let root = find(&mut parent, 0);
    (0..list.len()).all(|x| find(&mut parent, x) == root)
}

/// `(2 b_1 + 1, b_1^2 - b_1 + 2 - sum_v (mu(v) - 1)(mu(v) - 2))`.
pub fn betti_via_thm3(
    ps: &PlanarStructure,
    graph: &Graph,
    checks: &HypothesisChecks,
) -> Result<(i64, i64)> {
    if !checks.all_pass() {
        return Err(Error::HypothesisViolated(checks.failures.join("; ")));
    }
    let r = ps.bounded_count() as i64;
    let sum: i64 = (0..graph.vertex_count())
        .map(|v| {
            let mu = graph.degree(v) as i64;
            (mu - 1) * (mu - 2)
        })
        .sum();
    Ok((2 * r + 1, r * r - r + 2 - sum))
}

/// Everything the planar route says about `H_*` of the configuration space.
#[derive(Clone, Debug, Serialize)]
pub struct PlanarBettiReport {
    pub faces: usize,
    pub pairs: Vec<(usize, usize)>,
    pub b2_htwo: usize,
    /// `z_i (x) z_j` for each pair, `r x r` row-major in the bounded face basis
    #[serde(serialize_with = "crate::io::ints::rows")]
    pub torus_tensors: Vec<Vec<BigInt>>,
    pub thm3_hypotheses: HypothesisChecks,
    pub b1_thm3: Option<i64>,
    pub b2_thm3: Option<i64>,
}

pub fn planar_betti_report(ps: &PlanarStructure, graph: &Graph) -> PlanarBettiReport {
    let pairs = disjoint_pairs(ps);
    let checks = check_thm3_hypotheses(ps, graph);
    let formulas = betti_via_thm3(ps, graph, &checks).ok();
    PlanarBettiReport {
        faces: ps.faces.len(),
        torus_tensors: pairs.pairs.iter().map(|&(i, j)| torus_tensor(ps, i, j)).collect(),
        b2_htwo: pairs.len(),
        pairs: pairs.pairs,
        thm3_hypotheses: checks,
        b1_thm3: formulas.map(|f| f.0),
        b2_thm3: formulas.map(|f| f.1),
    }
}

/// Explicit one-cycles of D(G,2): each bounded face boundary against a fixed
/// vertex off it (both orders), and the triple cycle at an essential vertex.
#[derive(Clone, Debug, Serialize)]
pub struct GeneratorCycles {
    /// dense over the one-cells of D(G,2): `c_1 v_1, ..., c_r v_r`, then
    /// `v_1 c_1, ..., v_r c_r`, then the triple cycle
    pub cycles: Vec<Vec<i64>>,
    pub labels: Vec<String>,
    pub stationary: Vec<usize>,
    pub triple_vertex: usize,
    pub triple_edges: [usize; 3],
    /// rank of the span of their classes in `H_1(D(G,2); Q)`
    pub rank: usize,
}

impl GeneratorCycles {
    pub fn full_rank(&self) -> bool {
        self.rank == self.cycles.len()
    }

    pub fn triple(&self) -> &[i64] {
        self.cycles.last().expect("triple cycle present")
    }
}

/// `sum n_e (e, v)`: the first particle runs along `c`, the second sits at `v`.
pub fn cycle_times_vertex(d: &DiscreteConfigComplex, c: &EdgeChain, v: usize) -> Option<Vec<i64>> {
    let mut out = vec![0; d.cells1.len()];
    for (e, n) in c.terms() {
        out[d.cell1_index(Cell1::Horizontal { edge: e, vertex: v })?] += n;
    }
    Some(out)
}

/// `sum n_e (v, e)`: the first particle sits at `v`, the second runs along `c`.
pub fn vertex_times_cycle(d: &DiscreteConfigComplex, v: usize, c: &EdgeChain) -> Option<Vec<i64>> {
    let mut out = vec![0; d.cells1.len()];
    for (e, n) in c.terms() {
        out[d.cell1_index(Cell1::Vertical { vertex: v, edge: e })?] += n;
    }
    Some(out)
}

/// The cycle `sum_(ijk) sign(ijk) (v_i e_j + e_j v_i)` around three edges at
/// `u`, each edge taken oriented towards `u`.
pub fn triple_cycle(d: &DiscreteConfigComplex, u: usize, edges: [usize; 3]) -> Vec<i64> {
    let graph = d.graph();
    let towards = |e: usize| if graph.edge(e).head == u { 1 } else { -1 };
    let far = |e: usize| graph.edge(e).other(u);
    const PERMS: [([usize; 3], i64); 6] = [
        ([0, 1, 2], 1),
        ([1, 2, 0], 1),
        ([2, 0, 1], 1),
        ([0, 2, 1], -1),
        ([2, 1, 0], -1),
        ([1, 0, 2], -1),
    ];
    let mut out = vec![0; d.cells1.len()];
    for (p, sign) in PERMS {
        let (vi, ej) = (far(edges[p[0]]), edges[p[1]]);
        let s = sign * towards(ej);
        let vert = d.cell1_index(Cell1::Vertical { vertex: vi, edge: ej }).unwrap();
        let horiz = d.cell1_index(Cell1::Horizontal { edge: ej, vertex: vi }).unwrap();
        out[vert] += s;
        out[horiz] += s;
    }
    out
}

/// Builds the `2r + 1` explicit cycles and the rank of their classes.
///
/// `v_i` is the smallest vertex id off the closure of face `i`; the triple is
/// the first three edges (in edge order) at the smallest essential vertex id.
pub fn h1_generator_cycles(
    ps: &PlanarStructure,
    graph: &Graph,
    d: &DiscreteConfigComplex,
) -> Result<GeneratorCycles> {
    let by_id = |vs: &mut Vec<usize>| vs.sort_by(|&a, &b| graph.vertex_id(a).cmp(graph.vertex_id(b)));
    let mut essential: Vec<usize> = (0..graph.vertex_count())
        .filter(|&v| graph.degree(v) >= 3)
        .collect();
    by_id(&mut essential);
    let &u = essential.first().ok_or(Error::NoEssentialVertex)?;
    let inc = graph.incident(u);
    let triple_edges = [inc[0], inc[1], inc[2]];

    let r = ps.bounded_count();
    let mut stationary = Vec::with_capacity(r);
    for i in 1..=r {
        let mut off: Vec<usize> = (0..graph.vertex_count())
            .filter(|v| !ps.face_vertices(i).contains(v))
            .collect();
        by_id(&mut off);
        stationary.push(*off.first().ok_or(Error::NoOffBoundaryVertex(i))?);
    }

    let mut cycles = Vec::with_capacity(2 * r + 1);
    let mut labels = Vec::with_capacity(2 * r + 1);
    for i in 1..=r {
        let v = stationary[i - 1];
        cycles.push(cycle_times_vertex(d, &ps.face_cycles[i], v).expect("v is off the face"));
        labels.push(format!("c{i}·{}", graph.vertex_id(v)));
    }
    for i in 1..=r {
        let v = stationary[i - 1];
        cycles.push(vertex_times_cycle(d, v, &ps.face_cycles[i]).expect("v is off the face"));
        labels.push(format!("{}·c{i}", graph.vertex_id(v)));
    }
    cycles.push(triple_cycle(d, u, triple_edges));
    labels.push(format!("triple@{}", graph.vertex_id(u)));

    for c in &cycles {
        if d.boundary_of_chain(c).iter().any(|&x| x != 0) {
            return Err(Error::NotACycle);
        }
    }
    let as_big: Vec<Vec<BigInt>> = cycles
        .iter()
        .map(|c| c.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let gens = IntMatrix::from_cols(d.cells1.len(), &as_big);
    let rank = rank(&d.boundary2.hstack(&gens)) - rank(&d.boundary2);
    Ok(GeneratorCycles {
        cycles,
        labels,
        stationary,
        triple_vertex: u,
        triple_edges,
        rank,
    })
}
