//! The discretized configuration space D(G,2): products of closed cells of G
//! with disjoint supports, as an integer cellular chain complex.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::chain_algebra::{chain_homology, rank, HomologySummary};
use crate::error::{Error, Result};
use crate::graph::{validate, Graph};
use crate::IntMatrix;

/// A one-cell of a product complex: an edge times a vertex or vice versa.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Cell1 {
    /// first particle on the edge, second parked at the vertex
    Horizontal { edge: usize, vertex: usize },
    /// first particle parked at the vertex, second on the edge
    Vertical { vertex: usize, edge: usize },
}

impl Cell1 {
    pub fn label(&self, graph: &Graph) -> String {
        match *self {
            Cell1::Horizontal { edge, vertex } => {
                format!("({},{})", graph.edge(edge).id, graph.vertex_id(vertex))
            }
            Cell1::Vertical { vertex, edge } => {
                format!("({},{})", graph.vertex_id(vertex), graph.edge(edge).id)
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct DiscreteConfigComplex {
    graph: Graph,
    pub cells0: Vec<(usize, usize)>,
    pub cells1: Vec<Cell1>,
    pub cells2: Vec<(usize, usize)>,
    pub boundary1: IntMatrix,
    pub boundary2: IntMatrix,
    index0: HashMap<(usize, usize), usize>,
    index1: HashMap<Cell1, usize>,
}

impl DiscreteConfigComplex {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn cell_counts(&self) -> [usize; 3] {
        [self.cells0.len(), self.cells1.len(), self.cells2.len()]
    }

    /// Alternating sum of cell counts.
    pub fn euler_characteristic(&self) -> i64 {
        let [c0, c1, c2] = self.cell_counts();
        c0 as i64 - c1 as i64 + c2 as i64
    }

    pub fn cell1_index(&self, cell: Cell1) -> Option<usize> {
        self.index1.get(&cell).copied()
    }

    pub fn cell0_index(&self, u: usize, v: usize) -> Option<usize> {
        self.index0.get(&(u, v)).copied()
    }

    /// `boundary1 * boundary2 == 0`.
    pub fn boundary_squared_is_zero(&self) -> bool {
        self.boundary1.mul(&self.boundary2).is_zero()
    }

    /// Boundary of a 1-chain given densely over `cells1`.
    pub fn boundary_of_chain(&self, chain: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.cells0.len()];
        for (j, &n) in chain.iter().enumerate() {
            if n == 0 {
                continue;
            }
            for (i, x) in out.iter_mut().enumerate() {
                let b = &self.boundary1[(i, j)];
                if *b != BigInt::from(0) {
                    *x += n * i64::try_from(b).expect("boundary entries are units");
                }
            }
        }
        out
    }
}

/// Builds D(G,2) with lexicographically ordered cells.
///
/// Signs follow the product rule with `d(edge) = head - tail`:
/// `d(e,v) = (h,v) - (t,v)`, `d(v,e) = (v,h) - (v,t)` and
/// `d(e,f) = (h_e,f) - (t_e,f) - (e,h_f) + (e,t_f)`.
pub fn build_discrete_config(graph: &Graph) -> DiscreteConfigComplex {
    let nv = graph.vertex_count();
    let ne = graph.edge_count();

    let mut cells0 = Vec::new();
    for u in 0..nv {
        for v in 0..nv {
            if u != v {
                cells0.push((u, v));
            }
        }
    }
    let mut cells1 = Vec::new();
    for e in 0..ne {
        for v in 0..nv {
            if !graph.edge(e).has_endpoint(v) {
                cells1.push(Cell1::Horizontal { edge: e, vertex: v });
            }
        }
    }
    for v in 0..nv {
        for e in 0..ne {
            if !graph.edge(e).has_endpoint(v) {
                cells1.push(Cell1::Vertical { vertex: v, edge: e });
            }
        }
    }
    let mut cells2 = Vec::new();
    for e in 0..ne {
        for f in 0..ne {
            if !graph.edges_meet(e, f) {
                cells2.push((e, f));
            }
        }
    }

    let index0: HashMap<_, _> = cells0.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let index1: HashMap<_, _> = cells1.iter().enumerate().map(|(i, &c)| (c, i)).collect();

    let mut boundary1 = IntMatrix::zeros(cells0.len(), cells1.len());
    for (j, cell) in cells1.iter().enumerate() {
        let (plus, minus) = match *cell {
            Cell1::Horizontal { edge, vertex } => {
                let ed = graph.edge(edge);
                ((ed.head, vertex), (ed.tail, vertex))
            }
            Cell1::Vertical { vertex, edge } => {
                let ed = graph.edge(edge);
                ((vertex, ed.head), (vertex, ed.tail))
            }
        };
        boundary1[(index0[&plus], j)] += 1;
        boundary1[(index0[&minus], j)] -= 1;
    }

    let mut boundary2 = IntMatrix::zeros(cells1.len(), cells2.len());
    for (j, &(e, f)) in cells2.iter().enumerate() {
        let (ee, ff) = (graph.edge(e), graph.edge(f));
        let terms = [
            (Cell1::Vertical { vertex: ee.head, edge: f }, 1),
            (Cell1::Vertical { vertex: ee.tail, edge: f }, -1),
            (Cell1::Horizontal { edge: e, vertex: ff.head }, -1),
            (Cell1::Horizontal { edge: e, vertex: ff.tail }, 1),
        ];
        for (cell, sign) in terms {
            boundary2[(index1[&cell], j)] += sign;
        }
    }

    DiscreteConfigComplex {
        graph: graph.clone(),
        cells0,
        cells1,
        cells2,
        boundary1,
        boundary2,
        index0,
        index1,
    }
}

/// `chi(G)^2 + chi(G) - sum_v (mu(v) - 1)(mu(v) - 2)`.
pub fn euler_characteristic_formula(graph: &Graph) -> i64 {
    let chi = graph.euler_characteristic();
    let correction: i64 = (0..graph.vertex_count())
        .map(|v| {
            let mu = graph.degree(v) as i64;
            (mu - 1) * (mu - 2)
        })
        .sum();
    chi * chi + chi - correction
}

/// Integral homology of D(G,2) straight from its boundary matrices.
pub fn homology_oracle(complex: &DiscreteConfigComplex) -> HomologySummary<BigInt> {
    chain_homology(
        &complex.cell_counts(),
        &[&complex.boundary1, &complex.boundary2],
    )
}

/// Rank of `H_1(D(G,2)) -> H_1(G x G)` induced by inclusion.
///
/// Through the two projections `H_1(G x G) = H_1(G) + H_1(G)` for connected
/// `G`; the image of the cycle space under the projection `P` has rank
/// `rank [d_1; P] - rank d_1`.
pub fn inclusion_h1_rank(graph: &Graph, complex: &DiscreteConfigComplex) -> Result<usize> {
    let class = validate(graph);
    if !class.connected {
        return Err(Error::Disconnected);
    }
    if class.circle_like {
        return Err(Error::HypothesisViolated(
            "graph is homeomorphic to a circle".into(),
        ));
    }
    let ne = graph.edge_count();
    let n0 = complex.cells0.len();
    let mut stacked = IntMatrix::zeros(n0 + 2 * ne, complex.cells1.len());
    for i in 0..n0 {
        for j in 0..complex.cells1.len() {
            stacked[(i, j)] = complex.boundary1[(i, j)].clone();
        }
    }
    for (j, cell) in complex.cells1.iter().enumerate() {
        let row = match *cell {
            Cell1::Horizontal { edge, .. } => edge,
            Cell1::Vertical { edge, .. } => ne + edge,
        };
        stacked[(n0 + row, j)] = BigInt::from(1);
    }
    Ok(rank(&stacked) - rank(&complex.boundary1))
}
