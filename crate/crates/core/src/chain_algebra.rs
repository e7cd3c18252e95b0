//! Exact integer linear algebra: Smith normal form and what falls out of it.
//!
//! Pivot rule: the nonzero entry of least absolute value in the active
//! submatrix, ties broken by smallest row and then smallest column. Entries
//! of absolute value one stop the search early since nothing beats them.

use num_rational::Ratio;
use serde::Serialize;

use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// `left * A * right = diag`, with `left` and `right` unimodular.
#[derive(Clone, Debug)]
pub struct SmithDecomposition<T> {
    pub left: Matrix<T>,
    pub diag: Matrix<T>,
    pub right: Matrix<T>,
    pub original_rows: usize,
    pub original_cols: usize,
    rank: usize,
}

impl<T: Scalar> SmithDecomposition<T> {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Nonzero diagonal entries `d_1 | d_2 | ...`.
    pub fn invariant_factors(&self) -> Vec<T> {
        (0..self.rank).map(|i| self.diag[(i, i)].clone()).collect()
    }

    /// Integer solution of `A y = b`, if one exists. Free coordinates are zero.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        let lb = self.left.mul_vec(b);
        if lb[self.rank..].iter().any(|v| !v.is_zero()) {
            return None;
        }
        let mut w = vec![T::zero(); self.original_cols];
        for i in 0..self.rank {
            let d = &self.diag[(i, i)];
            if !lb[i].is_multiple_of(d) {
                return None;
            }
            w[i] = lb[i].clone() / d.clone();
        }
        Some(self.right.mul_vec(&w))
    }

    /// Rational solution of `A y = b`, if `b` lies in the rational column space.
    pub fn solve_rational(&self, b: &[Ratio<T>]) -> Option<Vec<Ratio<T>>> {
        let zero = Ratio::from_integer(T::zero());
        let lb: Vec<Ratio<T>> = (0..self.original_rows)
            .map(|i| {
                self.left
                    .row(i)
                    .iter()
                    .zip(b)
                    .filter(|(l, _)| !l.is_zero())
                    .fold(zero.clone(), |acc, (l, v)| acc + v.clone() * l.clone())
            })
            .collect();
        if lb[self.rank..].iter().any(|v| !num_traits::Zero::is_zero(v)) {
            return None;
        }
        let mut w = vec![zero.clone(); self.original_cols];
        for i in 0..self.rank {
            w[i] = lb[i].clone() / self.diag[(i, i)].clone();
        }
        Some(
            (0..self.original_cols)
                .map(|r| {
                    self.right
                        .row(r)
                        .iter()
                        .zip(&w)
                        .filter(|(a, _)| !a.is_zero())
                        .fold(zero.clone(), |acc, (a, v)| acc + v.clone() * a.clone())
                })
                .collect(),
        )
    }
}

fn find_pivot<T: Scalar>(a: &Matrix<T>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, T)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let v = &a[(i, j)];
            if v.is_zero() {
                continue;
            }
            let av = v.abs();
            if best.as_ref().is_none_or(|(_, _, b)| av < *b) {
                let unit = av.is_one();
                best = Some((i, j, av));
                if unit {
                    return best.map(|(i, j, _)| (i, j));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Least nonzero entry along row `t` and column `t` of the active block.
fn find_cross_pivot<T: Scalar>(a: &Matrix<T>, t: usize) -> (usize, usize) {
    let mut best = (t, t, a[(t, t)].abs());
    let consider = |i: usize, j: usize, best: &mut (usize, usize, T)| {
        let v = &a[(i, j)];
        if !v.is_zero() && (best.2.is_zero() || v.abs() < best.2) {
            *best = (i, j, v.abs());
        }
    };
    for i in t + 1..a.rows() {
        consider(i, t, &mut best);
    }
    for j in t + 1..a.cols() {
        consider(t, j, &mut best);
    }
    (best.0, best.1)
}

struct Reducer<'a, T> {
    a: Matrix<T>,
    left: Option<&'a mut Matrix<T>>,
    right: Option<&'a mut Matrix<T>>,
}

impl<T: Scalar> Reducer<'_, T> {
    fn swap_rows(&mut self, x: usize, y: usize) {
        if x != y {
            self.a.swap_rows(x, y);
            if let Some(l) = self.left.as_deref_mut() {
                l.swap_rows(x, y);
            }
        }
    }

    fn swap_cols(&mut self, x: usize, y: usize) {
        if x != y {
            self.a.swap_cols(x, y);
            if let Some(r) = self.right.as_deref_mut() {
                r.swap_cols(x, y);
            }
        }
    }

    fn add_row(&mut self, dst: usize, src: usize, factor: &T) {
        let support = self.a.row_support(src);
        self.a.add_row_multiple(dst, src, factor, &support);
        if let Some(l) = self.left.as_deref_mut() {
            let support = l.row_support(src);
            l.add_row_multiple(dst, src, factor, &support);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, factor: &T) {
        let support = self.a.col_support(src);
        self.a.add_col_multiple(dst, src, factor, &support);
        if let Some(r) = self.right.as_deref_mut() {
            let support = r.col_support(src);
            r.add_col_multiple(dst, src, factor, &support);
        }
    }

    /// Clears row and column `t` around the pivot; true if a remainder survived.
    fn clear_cross(&mut self, t: usize) -> bool {
        let p = self.a[(t, t)].clone();
        let mut dirty = false;
        for i in t + 1..self.a.rows() {
            if self.a[(i, t)].is_zero() {
                continue;
            }
            let q = self.a[(i, t)].div_floor(&p);
            self.add_row(i, t, &-q);
            dirty |= !self.a[(i, t)].is_zero();
        }
        for j in t + 1..self.a.cols() {
            if self.a[(t, j)].is_zero() {
                continue;
            }
            let q = self.a[(t, j)].div_floor(&p);
            self.add_col(j, t, &-q);
            dirty |= !self.a[(t, j)].is_zero();
        }
        dirty
    }

    fn non_divisible_row(&self, t: usize) -> Option<usize> {
        let p = &self.a[(t, t)];
        if p.abs().is_one() {
            return None;
        }
        (t + 1..self.a.rows()).find(|&i| {
            (t + 1..self.a.cols()).any(|j| !self.a[(i, j)].is_multiple_of(p))
        })
    }

    fn run(&mut self) -> usize {
        let limit = self.a.rows().min(self.a.cols());
        let mut t = 0;
        while t < limit {
            let Some((pi, pj)) = find_pivot(&self.a, t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                if self.clear_cross(t) {
                    let (i, j) = find_cross_pivot(&self.a, t);
                    self.swap_rows(t, i);
                    self.swap_cols(t, j);
                    continue;
                }
                match self.non_divisible_row(t) {
                    Some(i) => self.add_row(t, i, &T::one()),
                    None => break,
                }
            }
            if self.a[(t, t)].is_negative() {
                self.a.negate_row(t);
                if let Some(l) = self.left.as_deref_mut() {
                    l.negate_row(t);
                }
            }
            t += 1;
        }
        t
    }
}

/// Full Smith decomposition with both transforms.
pub fn smith_normal_form<T: Scalar>(a: &Matrix<T>) -> SmithDecomposition<T> {
    let mut left = Matrix::identity(a.rows());
    let mut right = Matrix::identity(a.cols());
    let (diag, rank) = {
        let mut r = Reducer {
            a: a.clone(),
            left: Some(&mut left),
            right: Some(&mut right),
        };
        let rank = r.run();
        (r.a, rank)
    };
    SmithDecomposition {
        left,
        diag,
        right,
        original_rows: a.rows(),
        original_cols: a.cols(),
        rank,
    }
}

/// Invariant factors only; skips transform bookkeeping.
pub fn invariant_factors<T: Scalar>(a: &Matrix<T>) -> Vec<T> {
    let mut r = Reducer {
        a: a.clone(),
        left: None,
        right: None,
    };
    let rank = r.run();
    (0..rank).map(|i| r.a[(i, i)].clone()).collect()
}

pub fn rank<T: Scalar>(a: &Matrix<T>) -> usize {
    invariant_factors(a).len()
}

/// Basis of the integer kernel `{x : A x = 0}`; it spans a saturated lattice.
pub fn kernel_basis<T: Scalar>(a: &Matrix<T>) -> Vec<Vec<T>> {
    let snf = smith_normal_form(a);
    (snf.rank()..a.cols()).map(|j| snf.right.column(j)).collect()
}

/// `(free rank, torsion factors > 1)` of `Z^rows / im A`.
pub fn cokernel_invariants<T: Scalar>(a: &Matrix<T>) -> (usize, Vec<T>) {
    let factors = invariant_factors(a);
    let free = a.rows() - factors.len();
    (free, factors.into_iter().filter(|d| !d.is_one()).collect())
}

/// Betti numbers and torsion of a chain complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound(serialize = "T: std::fmt::Display"))]
pub struct HomologySummary<T> {
    pub betti: Vec<usize>,
    #[serde(serialize_with = "crate::io::ints::rows")]
    pub torsion: Vec<Vec<T>>,
}

/// Homology of `C_n -> ... -> C_1 -> C_0`.
///
/// `boundaries[k]` is the matrix of `d_{k+1} : C_{k+1} -> C_k`; `cell_counts`
/// has one entry per degree.
pub fn chain_homology<T: Scalar>(
    cell_counts: &[usize],
    boundaries: &[&Matrix<T>],
) -> HomologySummary<T> {
    assert_eq!(boundaries.len() + 1, cell_counts.len());
    for (k, d) in boundaries.iter().enumerate() {
        assert_eq!((d.rows(), d.cols()), (cell_counts[k], cell_counts[k + 1]));
    }
    let factors: Vec<Vec<T>> = boundaries.iter().map(|d| invariant_factors(*d)).collect();
    let rank_of = |k: usize| -> usize {
        // rank of d_k : C_k -> C_{k-1}
        if k == 0 || k > factors.len() {
            0
        } else {
            factors[k - 1].len()
        }
    };
    let betti = (0..cell_counts.len())
        .map(|k| cell_counts[k] - rank_of(k) - rank_of(k + 1))
        .collect();
    let torsion = (0..cell_counts.len())
        .map(|k| {
            factors
                .get(k)
                .map(|f| f.iter().filter(|d| !d.is_one()).cloned().collect())
                .unwrap_or_default()
        })
        .collect();
    HomologySummary { betti, torsion }
}
