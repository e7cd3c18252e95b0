//! Cup products `H^1 x H^1 -> H^2` in the rational cohomology of the
//! configuration space of a planar graph.
//!
//! `H^2` is written in the basis `eta_ij` dual to the tori `T_ij`, one for
//! each pair of faces with disjoint closures. In degree one the classes are
//! `xi_i` and `eta_i`, pulled back from the two factors of `G x G` along the
//! dual basis `u_i` of the face cycles, and the special class, which vanishes
//! on every cycle where one particle stands still.
//!
//! Two independent routes are provided. [`basis_products`] applies the closed
//! formula in the `epsilon_ij`; [`verify_on_tori`] evaluates the classes on
//! honest one-cycles of D(G,2) spanning each torus and compares.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::chain_algebra::{kernel_basis, smith_normal_form, SmithDecomposition};
use crate::discrete_config::{build_discrete_config, Cell1, DiscreteConfigComplex};
use crate::error::{Error, Result};
use crate::graph::{EdgeChain, Graph};
use crate::intersection_form::IntersectionMatrix;
use crate::planar::{
    cycle_times_vertex, h1_generator_cycles, torus_tensor, vertex_times_cycle, DisjointPairSet,
    GeneratorCycles, PlanarStructure,
};
use crate::{IntMatrix, Rational};

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Value of a functional given on `z_1..z_r` at face `i`, with `z_0 = sum z_k`.
fn at_face(f: &[Rational], i: usize) -> Rational {
    if i == 0 {
        f.iter().fold(Rational::zero(), |a, b| a + b)
    } else {
        f[i - 1].clone()
    }
}

/// `xi (u) eta` for `xi = xi+ x 1 + 1 x xi-` and `eta = eta+ x 1 + 1 x eta-`,
/// as coefficients over the pairs of `pairs`.
pub fn cup_pullback(
    xi_plus: &[Rational],
    xi_minus: &[Rational],
    eta_plus: &[Rational],
    eta_minus: &[Rational],
    pairs: &DisjointPairSet,
) -> Vec<Rational> {
    pairs
        .pairs
        .iter()
        .map(|&(i, j)| {
            at_face(eta_plus, i) * at_face(xi_minus, j) - at_face(xi_plus, i) * at_face(eta_minus, j)
        })
        .collect()
}

/// Labels of the degree-one classes: `xi1..xir`, `eta1..etar`, `special`.
pub fn h1_labels(r: usize) -> Vec<String> {
    let mut out: Vec<String> = (1..=r).map(|i| format!("xi{i}")).collect();
    out.extend((1..=r).map(|i| format!("eta{i}")));
    out.push("special".into());
    out
}

pub fn h2_labels(pairs: &DisjointPairSet) -> Vec<String> {
    pairs
        .pairs
        .iter()
        .map(|(i, j)| format!("eta({i},{j})"))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ClassKind {
    Xi(usize),
    Eta(usize),
    Special,
}

fn kind_of(index: usize, r: usize) -> ClassKind {
    if index < r {
        ClassKind::Xi(index + 1)
    } else if index < 2 * r {
        ClassKind::Eta(index - r + 1)
    } else {
        ClassKind::Special
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProductTable {
    pub h1_basis: Vec<String>,
    pub h2_basis: Vec<String>,
    /// `(a, b) -> a (u) b` over `h2_basis`, for every ordered pair of labels
    pub entries: BTreeMap<(String, String), Vec<Rational>>,
}

impl ProductTable {
    pub fn product(&self, a: &str, b: &str) -> Option<&[Rational]> {
        self.entries
            .get(&(a.to_string(), b.to_string()))
            .map(Vec::as_slice)
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.entries.iter().all(|((a, b), v)| {
            self.product(b, a).is_some_and(|w| v.iter().zip(w).all(|(x, y)| x == &-y.clone()))
        })
    }

    /// Dimension of the span of all products.
    pub fn image_rank(&self) -> usize {
        let cols: Vec<Vec<Rational>> = self.entries.values().cloned().collect();
        rational_rank(&cols, self.h2_basis.len())
    }
}

impl Serialize for ProductTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Sparse<'a>(&'a [String], &'a [Rational]);
        impl Serialize for Sparse<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let nonzero: Vec<_> = self.0.iter().zip(self.1).filter(|(_, v)| !v.is_zero()).collect();
                let mut m = s.serialize_map(Some(nonzero.len()))?;
                for (k, v) in nonzero {
                    m.serialize_entry(k, &v.to_string())?;
                }
                m.end()
            }
        }
        #[derive(Serialize)]
        struct Entry<'a> {
            left: &'a str,
            right: &'a str,
            product: Sparse<'a>,
        }
        let mut top = s.serialize_map(Some(3))?;
        top.serialize_entry("h1_basis", &self.h1_basis)?;
        top.serialize_entry("h2_basis", &self.h2_basis)?;
        struct Entries<'a>(&'a ProductTable);
        impl Serialize for Entries<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = s.serialize_seq(Some(self.0.entries.len()))?;
                for ((a, b), v) in &self.0.entries {
                    seq.serialize_element(&Entry {
                        left: a,
                        right: b,
                        product: Sparse(&self.0.h2_basis, v),
                    })?;
                }
                seq.end()
            }
        }
        top.serialize_entry("entries", &Entries(self))?;
        top.end()
    }
}

/// The product table from the closed formulas: `xi xi = eta eta = 0`,
/// `xi_i eta_j = -e_ij eta_ij - e_i0 eta_i0 - e_0j eta_0j` and every product
/// with the special class zero.
///
/// Needs an essential vertex, read off the rotation system; the Betti
/// hypotheses are not required.
pub fn basis_products(ps: &PlanarStructure, pairs: &DisjointPairSet) -> Result<ProductTable> {
    if !ps.rotations.iter().any(|rot| rot.len() >= 3) {
        return Err(Error::HypothesisViolated(
            "the graph has no essential vertex, so there is no special class".into(),
        ));
    }
    let r = ps.bounded_count();
    let labels = h1_labels(r);
    let n = pairs.len();
    let xi_eta = |i: usize, j: usize| {
        let mut v = vec![Rational::zero(); n];
        for (a, b) in [(i, j), (i, 0), (0, j)] {
            if let Some(k) = pairs.position(a, b) {
                v[k] -= q(1);
            }
        }
        v
    };
    let mut entries = BTreeMap::new();
    for (x, a) in labels.iter().enumerate() {
        for (y, b) in labels.iter().enumerate() {
            let v = match (kind_of(x, r), kind_of(y, r)) {
                (ClassKind::Xi(i), ClassKind::Eta(j)) => xi_eta(i, j),
                (ClassKind::Eta(j), ClassKind::Xi(i)) => {
                    xi_eta(i, j).into_iter().map(|c| -c).collect()
                }
                _ => vec![Rational::zero(); n],
            };
            entries.insert((a.clone(), b.clone()), v);
        }
    }
    Ok(ProductTable {
        h1_basis: labels,
        h2_basis: h2_labels(pairs),
        entries,
    })
}

/// Degree-one cohomology of D(G,2) over the rationals, set up so that the
/// classes of the table can be evaluated on arbitrary one-cycles.
#[derive(Clone, Debug)]
pub struct CohomologyModel {
    complex: DiscreteConfigComplex,
    face_cycles: Vec<EdgeChain>,
    r: usize,
    /// `C_1 -> Q^k` killing exactly the boundaries
    projector: IntMatrix,
    face_solver: SmithDecomposition<BigInt>,
    basis_solver: SmithDecomposition<BigInt>,
    /// a basis of `H_1(D; Q)`, as cycles
    pub h1_basis_cycles: Vec<Vec<i64>>,
    pub generators: GeneratorCycles,
    triple_position: usize,
    /// dimension of the space of special classes
    pub special_dim: usize,
}

impl CohomologyModel {
    pub fn new(graph: &Graph, ps: &PlanarStructure) -> Result<CohomologyModel> {
        let complex = build_discrete_config(graph);
        let generators = h1_generator_cycles(ps, graph, &complex)?;
        let r = ps.bounded_count();

        let snf = smith_normal_form(&complex.boundary2);
        let n1 = complex.cells1.len();
        let rho = snf.rank();
        let projector = IntMatrix::from_rows(
            (rho..n1).map(|i| snf.left.row(i).to_vec()).collect(),
        );
        let project = |c: &[i64]| sparse_apply(&projector, c);

        let faces: Vec<Vec<BigInt>> = ps
            .bounded_cycles()
            .iter()
            .map(|z| z.dense(graph.edge_count()).into_iter().map(BigInt::from).collect())
            .collect();
        let face_solver = smith_normal_form(&IntMatrix::from_cols(graph.edge_count(), &faces));

        let mut echelon = Echelon::default();
        let mut h: Vec<Vec<i64>> = Vec::new();
        let offer = |c: Vec<i64>, h: &mut Vec<Vec<i64>>, ech: &mut Echelon| {
            if ech.insert(project(&c)) {
                h.push(c);
            }
        };
        for c in &generators.cycles[..2 * r] {
            offer(c.clone(), &mut h, &mut echelon);
        }
        for c in stationary_cycles(graph, &complex, ps, &face_solver) {
            offer(c, &mut h, &mut echelon);
        }
        let before_triple = h.len();
        offer(generators.triple().to_vec(), &mut h, &mut echelon);
        if h.len() == before_triple {
            return Err(Error::HypothesisViolated(
                "the triple cycle is homologous to cycles with a stationary particle".into(),
            ));
        }
        let triple_position = before_triple;
        for z in kernel_basis(&complex.boundary1) {
            let c: Vec<i64> = z.iter().map(|x| i64::try_from(x).expect("small cycle")).collect();
            offer(c, &mut h, &mut echelon);
        }
        let special_dim = h.len() - before_triple;

        let cols: Vec<Vec<BigInt>> = h.iter().map(|c| project(c)).collect();
        let basis_solver = smith_normal_form(&IntMatrix::from_cols(n1 - rho, &cols));
        Ok(CohomologyModel {
            complex,
            face_cycles: ps.face_cycles.clone(),
            r,
            projector,
            face_solver,
            basis_solver,
            h1_basis_cycles: h,
            generators,
            triple_position,
            special_dim,
        })
    }

    pub fn complex(&self) -> &DiscreteConfigComplex {
        &self.complex
    }

    /// `b_1` of the configuration space.
    pub fn b1(&self) -> usize {
        self.h1_basis_cycles.len()
    }

    pub fn bounded_count(&self) -> usize {
        self.r
    }

    /// The edge chains traced by the first and by the second particle.
    pub fn factor_projections(&self, cycle: &[i64]) -> (EdgeChain, EdgeChain) {
        let (mut first, mut second) = (EdgeChain::new(), EdgeChain::new());
        for (k, &n) in cycle.iter().enumerate() {
            if n == 0 {
                continue;
            }
            match self.complex.cells1[k] {
                Cell1::Horizontal { edge, .. } => first.add_term(edge, n),
                Cell1::Vertical { edge, .. } => second.add_term(edge, n),
            }
        }
        (first, second)
    }

    /// Coordinates of a graph cycle in the bounded face basis.
    pub fn face_coordinates(&self, chain: &EdgeChain) -> Result<Vec<BigInt>> {
        let ne = self.complex.graph().edge_count();
        let b: Vec<BigInt> = chain.dense(ne).into_iter().map(BigInt::from).collect();
        self.face_solver
            .solve(&b)
            .ok_or_else(|| Error::SolveFailure("chain is not a cycle of the graph".into()))
    }

    /// `<xi+ x 1 + 1 x xi-, c>` for a one-cycle `c` of D(G,2).
    pub fn pullback_value(&self, plus: &[Rational], minus: &[Rational], cycle: &[i64]) -> Result<Rational> {
        let (first, second) = self.factor_projections(cycle);
        let dot = |f: &[Rational], y: Vec<BigInt>| {
            f.iter()
                .zip(y)
                .fold(Rational::zero(), |a, (x, n)| a + x * Rational::from_integer(n))
        };
        Ok(dot(plus, self.face_coordinates(&first)?) + dot(minus, self.face_coordinates(&second)?))
    }

    /// Coordinates of the homology class of a cycle in `h1_basis_cycles`.
    pub fn class_coordinates(&self, cycle: &[i64]) -> Result<Vec<Rational>> {
        if self.complex.boundary_of_chain(cycle).iter().any(|&x| x != 0) {
            return Err(Error::NotACycle);
        }
        let p: Vec<Rational> = sparse_apply(&self.projector, cycle)
            .into_iter()
            .map(Rational::from_integer)
            .collect();
        self.basis_solver
            .solve_rational(&p)
            .ok_or_else(|| Error::SolveFailure("cycle outside the span of the basis".into()))
    }

    /// The special class: dual to the triple cycle, zero on every other basis
    /// cycle, so `+1` on the triple cycle.
    pub fn special_value(&self, cycle: &[i64]) -> Result<Rational> {
        Ok(self.class_coordinates(cycle)?[self.triple_position].clone())
    }

    fn unit(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.r];
        v[i - 1] = q(1);
        v
    }

    /// Value of the class at position `index` of [`h1_labels`] on a cycle.
    pub fn evaluate(&self, index: usize, cycle: &[i64]) -> Result<Rational> {
        let zero = vec![Rational::zero(); self.r];
        match kind_of(index, self.r) {
            ClassKind::Xi(i) => self.pullback_value(&self.unit(i), &zero, cycle),
            ClassKind::Eta(i) => self.pullback_value(&zero, &self.unit(i), cycle),
            ClassKind::Special => self.special_value(cycle),
        }
    }

    /// Values of every class of [`h1_labels`] on a cycle, in label order.
    pub fn evaluate_all(&self, cycle: &[i64]) -> Result<Vec<Rational>> {
        let (first, second) = self.factor_projections(cycle);
        let mut out: Vec<Rational> = self
            .face_coordinates(&first)?
            .into_iter()
            .chain(self.face_coordinates(&second)?)
            .map(Rational::from_integer)
            .collect();
        out.push(self.special_value(cycle)?);
        Ok(out)
    }

    /// Classes against the explicit generator cycles.
    pub fn bases(&self, pairs: &DisjointPairSet) -> Result<CohomologyBases> {
        let n = 2 * self.r + 1;
        let mut pairing = vec![vec![Rational::zero(); n]; n];
        for (a, row) in pairing.iter_mut().enumerate() {
            for (b, cell) in row.iter_mut().enumerate() {
                *cell = self.evaluate(a, &self.generators.cycles[b])?;
            }
        }
        Ok(CohomologyBases {
            h2_basis: h2_labels(pairs),
            h1_basis: h1_labels(self.r),
            generator_labels: self.generators.labels.clone(),
            pairing_data: pairing,
        })
    }

    /// The cycles `z_i x w` and `w' x z_j` spanning `H_1` of the torus `T_ij`,
    /// with `w` the smallest vertex on face `j` and `w'` on face `i`.
    pub fn torus_cycles(&self, ps: &PlanarStructure, i: usize, j: usize) -> (Vec<i64>, Vec<i64>) {
        let g = self.complex.graph();
        let pick = |k: usize| {
            *ps.face_vertices(k)
                .iter()
                .min_by(|&&a, &&b| g.vertex_id(a).cmp(g.vertex_id(b)))
                .expect("faces have vertices")
        };
        let a = cycle_times_vertex(&self.complex, &self.face_cycles[i], pick(j))
            .expect("closures are disjoint");
        let b = vertex_times_cycle(&self.complex, pick(i), &self.face_cycles[j])
            .expect("closures are disjoint");
        (a, b)
    }
}

/// `m c` for a sparse integer vector `c`.
fn sparse_apply(m: &IntMatrix, c: &[i64]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); m.rows()];
    for (k, &n) in c.iter().enumerate() {
        if n == 0 {
            continue;
        }
        let n = BigInt::from(n);
        for (i, x) in out.iter_mut().enumerate() {
            let a = &m[(i, k)];
            if !a.is_zero() {
                *x += a * &n;
            }
        }
    }
    out
}

/// `c x v` and `v x c` for every vertex `v` and `c` running over a basis of
/// the cycles of `G - v` that do not wind around `v`.
///
/// The winding number of `c` around `v` is the coefficient, in the bounded
/// face basis, of any face at `v` (zero for the outer face).
fn stationary_cycles(
    graph: &Graph,
    complex: &DiscreteConfigComplex,
    ps: &PlanarStructure,
    face_solver: &SmithDecomposition<BigInt>,
) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for v in 0..graph.vertex_count() {
        let kept: Vec<usize> = (0..graph.edge_count())
            .filter(|&e| !graph.edge(e).has_endpoint(v))
            .collect();
        let mut incidence = IntMatrix::zeros(graph.vertex_count(), kept.len());
        for (k, &e) in kept.iter().enumerate() {
            incidence[(graph.edge(e).head, k)] += 1;
            incidence[(graph.edge(e).tail, k)] -= 1;
        }
        let cycles: Vec<EdgeChain> = kernel_basis(&incidence)
            .iter()
            .map(|z| {
                EdgeChain::from_terms(
                    kept.iter()
                        .zip(z)
                        .map(|(&e, n)| (e, i64::try_from(n).expect("small cycle"))),
                )
            })
            .collect();
        let face = (0..ps.faces.len())
            .find(|&k| ps.face_vertices(k).contains(&v))
            .expect("every vertex lies on a face");
        let winding: Vec<BigInt> = cycles
            .iter()
            .map(|c| {
                if face == 0 {
                    return BigInt::zero();
                }
                let b: Vec<BigInt> = c.dense(graph.edge_count()).into_iter().map(BigInt::from).collect();
                face_solver.solve(&b).expect("cycles lie in the face lattice")[face - 1].clone()
            })
            .collect();
        for t in kernel_basis(&IntMatrix::from_rows(vec![winding])) {
            let c = cycles.iter().zip(&t).fold(EdgeChain::new(), |acc, (c, k)| {
                acc.plus(&c.scaled(i64::try_from(k).expect("small coefficient")))
            });
            out.push(cycle_times_vertex(complex, &c, v).expect("c avoids v"));
            out.push(vertex_times_cycle(complex, v, &c).expect("c avoids v"));
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomologyBases {
    pub h2_basis: Vec<String>,
    pub h1_basis: Vec<String>,
    pub generator_labels: Vec<String>,
    /// `pairing_data[a][b]`: class `a` on generator cycle `b`
    #[serde(serialize_with = "rational_rows")]
    pub pairing_data: Vec<Vec<Rational>>,
}

impl CohomologyBases {
    pub fn is_identity(&self) -> bool {
        self.pairing_data.iter().enumerate().all(|(a, row)| {
            row.iter()
                .enumerate()
                .all(|(b, x)| *x == if a == b { q(1) } else { q(0) })
        })
    }

    pub fn is_invertible(&self) -> bool {
        rational_rank(&self.pairing_data, self.pairing_data.len()) == self.pairing_data.len()
    }
}

fn rational_rows<S: Serializer>(rows: &[Vec<Rational>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let text: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();
    text.serialize(s)
}

/// The product table measured on actual cycles.
///
/// On `T_ij` the coefficient of `eta_ij` in `x (u) y` is
/// `-x(a) y(b) + x(b) y(a)` for the cycles `a = z_i x w` and `b = w' x z_j`
/// spanning its first homology.
pub fn measured_products(
    model: &CohomologyModel,
    ps: &PlanarStructure,
    pairs: &DisjointPairSet,
) -> Result<ProductTable> {
    let labels = h1_labels(model.bounded_count());
    let n = labels.len();
    let mut values = vec![vec![vec![Rational::zero(); pairs.len()]; n]; n];
    for (k, &(i, j)) in pairs.pairs.iter().enumerate() {
        let (a, b) = model.torus_cycles(ps, i, j);
        let (on_a, on_b) = (model.evaluate_all(&a)?, model.evaluate_all(&b)?);
        for x in 0..n {
            for y in 0..n {
                values[x][y][k] = -(&on_a[x] * &on_b[y]) + &on_b[x] * &on_a[y];
            }
        }
    }
    let mut entries = BTreeMap::new();
    for (x, row) in values.into_iter().enumerate() {
        for (y, v) in row.into_iter().enumerate() {
            entries.insert((labels[x].clone(), labels[y].clone()), v);
        }
    }
    Ok(ProductTable {
        h1_basis: labels,
        h2_basis: h2_labels(pairs),
        entries,
    })
}

/// One coefficient on which a table and the measurement disagree.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Mismatch {
    pub left: String,
    pub right: String,
    pub pair: String,
    pub table: String,
    pub measured: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TorusVerification {
    /// every torus tensor lies in `ker I`
    pub tori_in_kernel: bool,
    pub mismatches: Vec<Mismatch>,
}

impl TorusVerification {
    pub fn passes(&self) -> bool {
        self.tori_in_kernel && self.mismatches.is_empty()
    }

    /// Mismatches confined to products with the special class.
    pub fn only_special(&self) -> bool {
        self.mismatches
            .iter()
            .all(|m| m.left == "special" || m.right == "special")
    }
}

/// Compares `table` with [`measured_products`] and checks that every torus
/// tensor lies in `ker I` (`im` must use the bounded face basis).
pub fn verify_on_tori(
    table: &ProductTable,
    model: &CohomologyModel,
    ps: &PlanarStructure,
    pairs: &DisjointPairSet,
    im: &IntersectionMatrix,
) -> Result<TorusVerification> {
    let tori_in_kernel = pairs
        .pairs
        .iter()
        .all(|&(i, j)| im.apply(&torus_tensor(ps, i, j)).iter().all(Zero::is_zero));
    let measured = measured_products(model, ps, pairs)?;
    let mut mismatches = Vec::new();
    for ((a, b), want) in &measured.entries {
        let got = table.product(a, b);
        for (k, w) in want.iter().enumerate() {
            let g = got.and_then(|v| v.get(k));
            if g != Some(w) {
                mismatches.push(Mismatch {
                    left: a.clone(),
                    right: b.clone(),
                    pair: measured.h2_basis[k].clone(),
                    table: g.map_or_else(|| "missing".into(), ToString::to_string),
                    measured: w.to_string(),
                });
            }
        }
    }
    Ok(TorusVerification {
        tori_in_kernel,
        mismatches,
    })
}

/// The special class vanishes on every `c x v` and `v x c` with `c` not
/// winding around `v`.
pub fn special_annihilates_stationary(model: &CohomologyModel, ps: &PlanarStructure) -> Result<bool> {
    let complex = model.complex();
    for c in stationary_cycles(complex.graph(), complex, ps, &model.face_solver) {
        if !model.special_value(&c)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Fraction-free row echelon form, grown one vector at a time.
#[derive(Default)]
struct Echelon {
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl Echelon {
    /// Adds `v` if it is independent of the rows so far.
    fn insert(&mut self, mut v: Vec<BigInt>) -> bool {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let (a, b) = (row[*p].clone(), v[*p].clone());
            for (x, y) in v.iter_mut().zip(row) {
                *x = &a * &*x - &b * y;
            }
            let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            if !g.is_zero() && !g.is_one() {
                v.iter_mut().for_each(|x| *x = &*x / &g);
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                self.rows.push((p, v));
                true
            }
            None => false,
        }
    }
}

fn rational_rank(cols: &[Vec<Rational>], len: usize) -> usize {
    let mut ech = Echelon::default();
    let mut rank = 0;
    for c in cols {
        let lcm = c.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let v: Vec<BigInt> = c.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
        debug_assert_eq!(v.len(), len);
        if ech.insert(v) {
            rank += 1;
        }
    }
    rank
}
