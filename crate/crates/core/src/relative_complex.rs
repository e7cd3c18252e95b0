//! Cellular chains of the pair (N, dN), where N is the closed cellular
//! neighbourhood of the diagonal in G x G and dN = N ∩ D(G,2).
//!
//! The relative boundary is the product boundary with every generator lying
//! in dN discarded: a one-cell `(v,e)` or `(e,v)` survives only when `v` is an
//! endpoint of `e`, and a zero-cell only when it is diagonal.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::chain_algebra::{invariant_factors, smith_normal_form};
use crate::discrete_config::Cell1;
use crate::error::{Error, Result};
use crate::graph::{validate, Graph};
use crate::IntMatrix;

#[derive(Clone, Debug)]
pub struct RelativeComplex {
    graph: Graph,
    /// ordered pairs of meeting edges, diagonal pairs included
    pub cells2: Vec<(usize, usize)>,
    pub cells1: Vec<Cell1>,
    /// diagonal vertex pairs `(v,v)`, indexed by `v`
    pub cells0: Vec<usize>,
    pub boundary2: IntMatrix,
    pub boundary1: IntMatrix,
    index2: HashMap<(usize, usize), usize>,
}

impl RelativeComplex {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn cell2_index(&self, e: usize, f: usize) -> Option<usize> {
        self.index2.get(&(e, f)).copied()
    }

    pub fn boundary_squared_is_zero(&self) -> bool {
        self.boundary1.mul(&self.boundary2).is_zero()
    }
}

pub fn build_relative_complex(graph: &Graph) -> RelativeComplex {
    let nv = graph.vertex_count();
    let ne = graph.edge_count();

    let mut cells2 = Vec::new();
    for e in 0..ne {
        for f in 0..ne {
            if graph.edges_meet(e, f) {
                cells2.push((e, f));
            }
        }
    }
    let mut cells1 = Vec::new();
    for e in 0..ne {
        for v in 0..nv {
            if graph.edge(e).has_endpoint(v) {
                cells1.push(Cell1::Horizontal { edge: e, vertex: v });
            }
        }
    }
    for v in 0..nv {
        for e in 0..ne {
            if graph.edge(e).has_endpoint(v) {
                cells1.push(Cell1::Vertical { vertex: v, edge: e });
            }
        }
    }
    let cells0: Vec<usize> = (0..nv).collect();

    let index1: HashMap<Cell1, usize> = cells1.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let index2: HashMap<(usize, usize), usize> =
        cells2.iter().enumerate().map(|(i, &c)| (c, i)).collect();

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
            if let Some(&i) = index1.get(&cell) {
                boundary2[(i, j)] += sign;
            }
        }
    }

    let mut boundary1 = IntMatrix::zeros(cells0.len(), cells1.len());
    for (j, cell) in cells1.iter().enumerate() {
        let (v, e) = match *cell {
            Cell1::Horizontal { edge, vertex } => (vertex, edge),
            Cell1::Vertical { vertex, edge } => (vertex, edge),
        };
        let sign = if graph.edge(e).head == v { 1 } else { -1 };
        boundary1[(v, j)] += sign;
    }

    RelativeComplex {
        graph: graph.clone(),
        cells2,
        cells1,
        cells0,
        boundary2,
        boundary1,
        index2,
    }
}

/// `H_2(N, dN)` as the kernel of the top boundary.
#[derive(Clone, Debug)]
pub struct RelativeH2 {
    pub kernel_basis: Vec<Vec<BigInt>>,
    pub rank: usize,
}

pub fn relative_h2(complex: &RelativeComplex) -> RelativeH2 {
    let snf = smith_normal_form(&complex.boundary2);
    let kernel_basis: Vec<Vec<BigInt>> = (snf.rank()..complex.cells2.len())
        .map(|j| snf.right.column(j))
        .collect();
    let rank = kernel_basis.len();
    RelativeH2 { kernel_basis, rank }
}

/// `b_1(G) - 1 + sum_v (mu(v) - 1)(mu(v) - 2)`.
pub fn rank_formula(graph: &Graph) -> i64 {
    let b1 = validate(graph).first_betti;
    let sum: i64 = (0..graph.vertex_count())
        .map(|v| {
            let mu = graph.degree(v) as i64;
            (mu - 1) * (mu - 2)
        })
        .sum();
    b1 - 1 + sum
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankFormulaCheck {
    pub formula: i64,
    pub rank: usize,
    pub h0_vanishes: bool,
    pub h1_vanishes: bool,
}

impl RankFormulaCheck {
    pub fn holds(&self) -> bool {
        self.h0_vanishes && self.h1_vanishes && self.formula == self.rank as i64
    }
}

/// Compares the rank of `H_2(N, dN)` with the closed formula and certifies
/// that `H_0` and `H_1` of the pair vanish.
pub fn rank_formula_check(
    graph: &Graph,
    complex: &RelativeComplex,
    h2: &RelativeH2,
) -> Result<RankFormulaCheck> {
    let class = validate(graph);
    if !class.is_generic() {
        return Err(Error::HypothesisViolated(
            "graph must be connected and homeomorphic to neither a circle nor an interval".into(),
        ));
    }
    let f1 = invariant_factors(&complex.boundary1);
    let f2 = invariant_factors(&complex.boundary2);
    let units = |f: &[BigInt]| f.iter().all(|d| *d == BigInt::from(1));
    let h0_vanishes = f1.len() == complex.cells0.len() && units(&f1);
    let nullity1 = complex.cells1.len() - f1.len();
    let h1_vanishes = nullity1 == f2.len() && units(&f2);
    Ok(RankFormulaCheck {
        formula: rank_formula(graph),
        rank: h2.rank,
        h0_vanishes,
        h1_vanishes,
    })
}
