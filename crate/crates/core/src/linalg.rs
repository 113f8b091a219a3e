//! Dense complex linear algebra used by every other module.
//!
//! Everything here works on plain `Vec<C64>` vectors and the row-major
//! [`Mat`] type. Rank decisions use a relative threshold: a residual counts
//! as nonzero iff it exceeds `tol * max(1, largest input norm)`.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex;
use num_traits::{Float, Zero};

/// Complex scalar used throughout the crate.
pub type C64 = Complex<f64>;

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Hermitian inner product, conjugate-linear in the first argument.
pub fn inner(x: &[C64], y: &[C64]) -> C64 {
    debug_assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

pub fn norm(x: &[C64]) -> f64 {
    Float::sqrt(x.iter().map(|a| a.norm_sqr()).sum::<f64>())
}

pub fn max_abs(x: &[C64]) -> f64 {
    x.iter().map(|a| a.norm()).fold(0.0, f64::max)
}

/// Largest coordinate difference between two vectors of equal length.
pub fn max_abs_diff(x: &[C64], y: &[C64]) -> f64 {
    debug_assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
}

/// `y += alpha * x`
pub fn axpy(alpha: C64, x: &[C64], y: &mut [C64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

pub fn scaled(alpha: C64, x: &[C64]) -> Vec<C64> {
    x.iter().map(|v| alpha * v).collect()
}

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![C64::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = re(1.0);
        }
        m
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<C64>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Mat { rows, cols, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<C64>]) -> Self {
        let mut m = Mat::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = *v;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[C64]) {
        assert_eq!(v.len(), self.rows);
        for (i, x) in v.iter().enumerate() {
            self[(i, j)] = *x;
        }
    }

    pub fn adjoint(&self) -> Mat {
        let mut m = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn matmul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                let orow = other.row(k);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, b) in dst.iter_mut().zip(orow) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn apply(&self, x: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, x.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Row vector times matrix: `x^T M`.
    pub fn apply_left(&self, x: &[C64]) -> Vec<C64> {
        assert_eq!(self.rows, x.len(), "vector-matrix shape mismatch");
        let mut out = vec![C64::zero(); self.cols];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            axpy(*xi, self.row(i), &mut out);
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, alpha: C64) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: scaled(alpha, &self.data) }
    }

    pub fn kron(&self, other: &Mat) -> Mat {
        let (r2, c2) = (other.rows, other.cols);
        let mut out = Mat::zeros(self.rows * r2, self.cols * c2);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..r2 {
                    for l in 0..c2 {
                        out[(i * r2 + k, j * c2 + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.data)
    }

    pub fn max_abs_diff(&self, other: &Mat) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        max_abs_diff(&self.data, &other.data)
    }

    pub fn frobenius(&self) -> f64 {
        norm(&self.data)
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Threshold below which a residual of vectors with the given norms is zero.
pub fn rank_threshold(tol: f64, largest_norm: f64) -> f64 {
    tol * largest_norm.max(1.0)
}

/// Removes from `v` its components along the orthonormal `basis`, twice.
pub fn project_out(basis: &[Vec<C64>], v: &mut [C64]) {
    for _ in 0..2 {
        for q in basis {
            let h = inner(q, v);
            axpy(-h, q, v);
        }
    }
}

/// Extends the orthonormal `basis` by the part of `candidates` not already in
/// its span, using Gram-Schmidt with largest-residual pivoting. Returns the
/// number of vectors added.
// `!(x > thr)` also rejects NaN.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn extend_orthonormal(basis: &mut Vec<Vec<C64>>, candidates: Vec<Vec<C64>>, tol: f64) -> usize {
    let largest = candidates.iter().map(|v| norm(v)).fold(0.0, f64::max);
    let thr = rank_threshold(tol, largest);
    let mut residuals: Vec<Vec<C64>> = candidates
        .into_iter()
        .map(|mut v| {
            project_out(basis, &mut v);
            v
        })
        .collect();
    let mut norms: Vec<f64> = residuals.iter().map(|v| norm(v)).collect();
    let mut added = 0;
    let dim = residuals.first().map_or(0, |v| v.len());
    loop {
        if basis.len() >= dim {
            break;
        }
        let Some((best, &best_norm)) =
            norms.iter().enumerate().max_by(|a, b| a.1.partial_cmp(b.1).unwrap_or(core::cmp::Ordering::Equal))
        else {
            break;
        };
        if !(best_norm > thr) {
            break;
        }
        let mut q = residuals.swap_remove(best);
        norms.swap_remove(best);
        project_out(basis, &mut q);
        let n = norm(&q);
        if !(n > thr) {
            continue;
        }
        let q: Vec<C64> = scaled(re(1.0 / n), &q);
        for (r, rn) in residuals.iter_mut().zip(norms.iter_mut()) {
            let h = inner(&q, r);
            axpy(-h, &q, r);
            *rn = norm(r);
        }
        basis.push(q);
        added += 1;
    }
    added
}

/// Orthonormal basis of the span of `vectors`.
pub fn orthonormal_basis(vectors: Vec<Vec<C64>>, tol: f64) -> Vec<Vec<C64>> {
    let mut basis = Vec::new();
    extend_orthonormal(&mut basis, vectors, tol);
    basis
}

/// Numerical rank of a family of vectors.
pub fn rank(vectors: Vec<Vec<C64>>, tol: f64) -> usize {
    orthonormal_basis(vectors, tol).len()
}

/// Orthonormal basis of `{x : M x = 0}`, computed as the orthogonal
/// complement of the conjugated row space.
pub fn null_space(m: &Mat, tol: f64) -> Vec<Vec<C64>> {
    let rows: Vec<Vec<C64>> = (0..m.rows()).map(|i| m.row(i).iter().map(|z| z.conj()).collect()).collect();
    let row_space = orthonormal_basis(rows, tol);
    orthogonal_complement(&row_space, m.cols())
}

/// Orthonormal basis of the complement of the span of an orthonormal family in `C^n`.
pub fn orthogonal_complement(basis: &[Vec<C64>], n: usize) -> Vec<Vec<C64>> {
    let mut full: Vec<Vec<C64>> = basis.to_vec();
    let start = full.len();
    let units: Vec<Vec<C64>> = (0..n)
        .map(|i| {
            let mut e = vec![C64::zero(); n];
            e[i] = re(1.0);
            e
        })
        .collect();
    // A fixed looser threshold: unit vectors are either in the span or far from it.
    extend_orthonormal(&mut full, units, 1e-6);
    full.split_off(start)
}

/// Distance of `v` from the span of an orthonormal basis.
pub fn distance_to_span(basis: &[Vec<C64>], v: &[C64]) -> f64 {
    let mut r = v.to_vec();
    project_out(basis, &mut r);
    norm(&r)
}

/// Solves `A X = B` by Gaussian elimination with partial pivoting.
/// Returns `None` when a pivot falls below `1e-13` times the largest entry.
pub fn solve(a: &Mat, b: &Mat) -> Option<Mat> {
    let n = a.rows();
    assert_eq!(a.cols(), n, "solve needs a square matrix");
    assert_eq!(b.rows(), n, "solve right-hand side shape");
    let m = b.cols();
    let mut a = a.clone();
    let mut b = b.clone();
    let scale = a.max_abs().max(f64::MIN_POSITIVE);
    for col in 0..n {
        let (piv, pval) = (col..n)
            .map(|r| (r, a[(r, col)].norm()))
            .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap_or(core::cmp::Ordering::Equal))?;
        if pval <= 1e-13 * scale {
            return None;
        }
        if piv != col {
            for j in 0..n {
                let t = a[(col, j)];
                a[(col, j)] = a[(piv, j)];
                a[(piv, j)] = t;
            }
            for j in 0..m {
                let t = b[(col, j)];
                b[(col, j)] = b[(piv, j)];
                b[(piv, j)] = t;
            }
        }
        let inv = a[(col, col)].inv();
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = a[(r, col)] * inv;
            if f.is_zero() {
                continue;
            }
            for j in col..n {
                let v = a[(col, j)];
                a[(r, j)] -= f * v;
            }
            for j in 0..m {
                let v = b[(col, j)];
                b[(r, j)] -= f * v;
            }
        }
    }
    for r in 0..n {
        let inv = a[(r, r)].inv();
        for j in 0..m {
            b[(r, j)] *= inv;
        }
    }
    Some(b)
}

pub fn inverse(a: &Mat) -> Option<Mat> {
    solve(a, &Mat::identity(a.rows()))
}

/// Left inverse `(A^* A)^{-1} A^*` of a matrix with full column rank.
pub fn left_inverse(a: &Mat) -> Option<Mat> {
    let ah = a.adjoint();
    let gram = ah.matmul(a);
    solve(&gram, &ah)
}

/// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Eigenvalues are returned in ascending order; the `k`-th column
/// of the returned matrix is a unit eigenvector for the `k`-th eigenvalue.
pub fn hermitian_eigen(h: &Mat) -> (Vec<f64>, Mat) {
    let n = h.rows();
    assert_eq!(h.cols(), n, "eigen needs a square matrix");
    let mut a = h.clone();
    // Enforce exact hermiticity before iterating.
    for i in 0..n {
        a[(i, i)] = re(a[(i, i)].re);
        for j in (i + 1)..n {
            let avg = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let mut v = Mat::identity(n);
    let total = a.frobenius().max(f64::MIN_POSITIVE);
    for _sweep in 0..100 {
        let off: f64 = Float::sqrt(
            (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| a[(i, j)].norm_sqr())
                .sum::<f64>(),
        );
        if off <= 1e-15 * total {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag <= 1e-300 {
                    continue;
                }
                let phase = apq / mag;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (2.0 * mag);
                let t = if theta >= 0.0 {
                    1.0 / (theta + Float::sqrt(theta * theta + 1.0))
                } else {
                    -1.0 / (-theta + Float::sqrt(theta * theta + 1.0))
                };
                let cs = 1.0 / Float::sqrt(t * t + 1.0);
                let sn = t * cs;
                // U = diag(1, conj(phase)) * [[c, s], [-s, c]] acting on (p, q).
                let upp = re(cs);
                let upq = re(sn);
                let uqp = phase.conj() * (-sn);
                let uqq = phase.conj() * cs;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * upp + akq * uqp;
                    a[(k, q)] = akp * upq + akq * uqq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = upp.conj() * apk + uqp.conj() * aqk;
                    a[(q, k)] = upq.conj() * apk + uqq.conj() * aqk;
                }
                a[(p, q)] = C64::zero();
                a[(q, p)] = C64::zero();
                a[(p, p)] = re(a[(p, p)].re);
                a[(q, q)] = re(a[(q, q)].re);
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * upp + vkq * uqp;
                    v[(k, q)] = vkp * upq + vkq * uqq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap_or(core::cmp::Ordering::Equal));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = Mat::zeros(n, n);
    for (k, &i) in order.iter().enumerate() {
        for r in 0..n {
            vectors[(r, k)] = v[(r, i)];
        }
    }
    (values, vectors)
}

/// Operator (spectral) norm of a square or rectangular matrix.
pub fn operator_norm(m: &Mat) -> f64 {
    let g = m.adjoint().matmul(m);
    let (vals, _) = hermitian_eigen(&g);
    Float::sqrt(vals.last().copied().unwrap_or(0.0).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn herm_example() -> Mat {
        Mat::from_row_major(
            3,
            3,
            vec![re(2.0), c(1.0, -1.0), c(0.0, 0.5), c(1.0, 1.0), re(-1.0), re(0.25), c(0.0, -0.5), re(0.25), re(3.0)],
        )
    }

    #[test]
    fn jacobi_reconstructs_hermitian_matrix() {
        let h = herm_example();
        let (vals, v) = hermitian_eigen(&h);
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        let mut d = Mat::zeros(3, 3);
        for (i, l) in vals.iter().enumerate() {
            d[(i, i)] = re(*l);
        }
        let back = v.matmul(&d).matmul(&v.adjoint());
        assert!(back.max_abs_diff(&h) < 1e-12);
        assert!(v.adjoint().matmul(&v).max_abs_diff(&Mat::identity(3)) < 1e-12);
    }

    #[test]
    fn jacobi_trace_matches() {
        let h = herm_example();
        let (vals, _) = hermitian_eigen(&h);
        let s: f64 = vals.iter().sum();
        assert!((s - h.trace().re).abs() < 1e-12);
    }

    #[test]
    fn solve_recovers_inverse() {
        let a = Mat::from_row_major(2, 2, vec![re(0.0), re(1.0), c(2.0, 1.0), re(3.0)]);
        let inv = inverse(&a).unwrap();
        assert!(a.matmul(&inv).max_abs_diff(&Mat::identity(2)) < 1e-14);
        let singular = Mat::from_row_major(2, 2, vec![re(1.0), re(2.0), re(2.0), re(4.0)]);
        assert!(inverse(&singular).is_none());
    }

    #[test]
    fn rank_and_null_space() {
        let vs = vec![vec![re(1.0), re(0.0), re(1.0)], vec![re(2.0), re(0.0), re(2.0)], vec![re(0.0), re(1.0), re(0.0)]];
        assert_eq!(rank(vs.clone(), 1e-9), 2);
        let m = Mat::from_row_major(1, 3, vec![re(1.0), re(1.0), re(0.0)]);
        let ns = null_space(&m, 1e-9);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(max_abs(&m.apply(v)) < 1e-12);
        }
    }

    #[test]
    fn operator_norm_of_diagonal() {
        let m = Mat::from_row_major(2, 2, vec![re(3.0), re(0.0), re(0.0), c(0.0, -4.0)]);
        assert!((operator_norm(&m) - 4.0).abs() < 1e-12);
    }
}
