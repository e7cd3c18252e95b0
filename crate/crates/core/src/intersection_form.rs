//! The intersection form `H_1(G) (x) H_1(G) -> H_2(N, dN)` and the homology
//! of the configuration space it determines.
//!
//! For cycles `z = sum n_e e` and `z' = sum m_f f` the form is the relative
//! two-chain `sum n_e m_f (e,f)` over pairs of meeting edges. Its kernel is
//! `H_2` of the configuration space; its cokernel, plus two copies of
//! `H_1(G)`, is `H_1`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::chain_algebra::{
    cokernel_invariants, kernel_basis, rank, smith_normal_form, HomologySummary,
};
use crate::error::{Error, Result};
use crate::graph::{validate, EdgeChain, Graph};
use crate::relative_complex::{RelativeComplex, RelativeH2};
use crate::IntMatrix;

/// `I(z (x) z')` in the coordinates of `complex.cells2`.
pub fn intersection_tensor(
    z: &EdgeChain,
    z_prime: &EdgeChain,
    complex: &RelativeComplex,
) -> Result<Vec<BigInt>> {
    let graph = complex.graph();
    if !z.is_cycle(graph) || !z_prime.is_cycle(graph) {
        return Err(Error::NotACycle);
    }
    let mut out = vec![BigInt::zero(); complex.cells2.len()];
    for (e, n) in z.terms() {
        for (f, m) in z_prime.terms() {
            if let Some(i) = complex.cell2_index(e, f) {
                out[i] += n * m;
            }
        }
    }
    Ok(out)
}

/// The `(e, e')` coordinate of `I(z (x) z')`: the product of the coefficients.
pub fn scalar_form(
    graph: &Graph,
    e: &str,
    e_prime: &str,
    z: &EdgeChain,
    z_prime: &EdgeChain,
) -> Result<i64> {
    let (a, b) = (graph.edge_index(e)?, graph.edge_index(e_prime)?);
    if !graph.edges_meet(a, b) {
        return Err(Error::NonAdjacentEdges(e.into(), e_prime.into()));
    }
    if !z.is_cycle(graph) || !z_prime.is_cycle(graph) {
        return Err(Error::NotACycle);
    }
    Ok(z.coefficient(a) * z_prime.coefficient(b))
}

#[derive(Clone, Debug)]
pub struct IntersectionMatrix {
    pub basis: Vec<EdgeChain>,
    /// rows: relative two-cells; column `i * r + j`: `z_i (x) z_j`
    pub matrix: IntMatrix,
    /// the same columns in the coordinates of the `H_2(N, dN)` kernel basis
    pub h2_coordinates: IntMatrix,
}

impl IntersectionMatrix {
    pub fn basis_len(&self) -> usize {
        self.basis.len()
    }

    pub fn rank(&self) -> usize {
        rank(&self.matrix)
    }

    pub fn nullity(&self) -> usize {
        self.matrix.cols() - self.rank()
    }

    /// Applies `I` to a tensor given as an `r x r` coefficient vector.
    pub fn apply(&self, tensor: &[BigInt]) -> Vec<BigInt> {
        self.matrix.mul_vec(tensor)
    }
}

pub fn build_intersection_matrix(
    basis: &[EdgeChain],
    complex: &RelativeComplex,
    h2: &RelativeH2,
) -> Result<IntersectionMatrix> {
    let r = basis.len();
    let rows = complex.cells2.len();
    let mut columns = Vec::with_capacity(r * r);
    for zi in basis {
        for zj in basis {
            columns.push(intersection_tensor(zi, zj, complex)?);
        }
    }
    let matrix = IntMatrix::from_cols(rows, &columns);

    let kernel = IntMatrix::from_cols(rows, &h2.kernel_basis);
    let snf = smith_normal_form(&kernel);
    let mut coords = Vec::with_capacity(columns.len());
    for (k, col) in columns.iter().enumerate() {
        let y = snf.solve(col).ok_or_else(|| {
            Error::SolveFailure(format!(
                "column ({}, {}) is not in the kernel lattice",
                k / r.max(1),
                k % r.max(1)
            ))
        })?;
        coords.push(y);
    }
    let h2_coordinates = IntMatrix::from_cols(h2.rank, &coords);
    Ok(IntersectionMatrix {
        basis: basis.to_vec(),
        matrix,
        h2_coordinates,
    })
}

/// Expands a tensor `sum x_ij z_i (x) z_j` into edge coordinates, `E x E`.
pub fn edge_tensor(graph: &Graph, basis: &[EdgeChain], coeffs: &[BigInt]) -> Vec<Vec<BigInt>> {
    let ne = graph.edge_count();
    let r = basis.len();
    let mut out = vec![vec![BigInt::zero(); ne]; ne];
    for i in 0..r {
        for j in 0..r {
            let x = &coeffs[i * r + j];
            if x.is_zero() {
                continue;
            }
            for (e, n) in basis[i].terms() {
                for (f, m) in basis[j].terms() {
                    out[e][f] += x * BigInt::from(n * m);
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfigHomologyReport {
    pub b2: usize,
    /// kernel generators as `r x r` coefficient vectors, row-major
    #[serde(serialize_with = "crate::io::ints::rows")]
    pub h2_generators: Vec<Vec<BigInt>>,
    pub b1: usize,
    pub coker_free_rank: usize,
    #[serde(serialize_with = "crate::io::ints::list")]
    pub coker_torsion: Vec<BigInt>,
    /// `(coker free rank, 2 b_1(G))`
    pub b1_decomposition: (usize, usize),
    pub oracle_agreement: Option<bool>,
}

pub fn config_homology(
    graph: &Graph,
    im: &IntersectionMatrix,
    oracle: Option<&HomologySummary<BigInt>>,
) -> Result<ConfigHomologyReport> {
    let class = validate(graph);
    if !class.connected || class.circle_like {
        return Err(Error::HypothesisViolated(
            "graph must be connected and not homeomorphic to a circle".into(),
        ));
    }
    let h2_generators = kernel_basis(&im.h2_coordinates);
    let b2 = h2_generators.len();
    let (coker_free_rank, coker_torsion) = cokernel_invariants(&im.h2_coordinates);
    let twice_b1 = 2 * class.first_betti as usize;
    let b1 = coker_free_rank + twice_b1;
    let oracle_agreement = oracle.map(|h| {
        h.betti.get(1) == Some(&b1)
            && h.betti.get(2) == Some(&b2)
            && h.torsion.get(1).map(Vec::as_slice) == Some(coker_torsion.as_slice())
            && h.torsion.get(2).is_none_or(Vec::is_empty)
    });
    Ok(ConfigHomologyReport {
        b2,
        h2_generators,
        b1,
        coker_free_rank,
        coker_torsion,
        b1_decomposition: (coker_free_rank, twice_b1),
        oracle_agreement,
    })
}

/// Normalises the sign of a vector so its first nonzero entry is positive.
pub fn normalize_sign(v: &mut [BigInt]) {
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first < &BigInt::zero() {
            v.iter_mut().for_each(|x| *x = -std::mem::take(x));
        }
    }
}

/// Whether two vectors are rational multiples of each other.
pub fn proportional(a: &[BigInt], b: &[BigInt]) -> bool {
    let Some(k) = a.iter().position(|x| !x.is_zero()) else {
        return b.iter().all(Zero::is_zero);
    };
    if b[k].is_zero() {
        return false;
    }
    a.iter().zip(b).all(|(x, y)| x * &b[k] == y * &a[k])
}

/// Greatest common divisor of all entries.
pub fn content(v: &[BigInt]) -> BigInt {
    use num_integer::Integer;
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

pub fn is_primitive(v: &[BigInt]) -> bool {
    content(v).is_one()
}
