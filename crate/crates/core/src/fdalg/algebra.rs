use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{self, re, Mat, C64};

/// Numerical tolerance for every identity check in the crate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance(pub f64);

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance(1e-9)
    }
}

impl Tolerance {
    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn accepts(self, residual: f64) -> bool {
        residual <= self.0
    }
}

/// A direct sum of full complex matrix blocks `M_{n_1} ⊕ ... ⊕ M_{n_k}`.
///
/// Coordinates of an element are taken against the matrix-unit basis,
/// block after block, each block in row-major order. Matrix units are
/// orthonormal for the Hilbert-Schmidt inner product, so the HS inner
/// product is the standard one on coordinates.
#[derive(Clone, Debug)]
pub struct FdCStarAlgebra {
    blocks: Vec<usize>,
    offsets: Vec<usize>,
    dim: usize,
    labels: Option<Vec<String>>,
}

impl PartialEq for FdCStarAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.blocks == other.blocks
    }
}

impl FdCStarAlgebra {
    pub fn new(blocks: Vec<usize>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::Shape("block list must be nonempty".into()));
        }
        if blocks.contains(&0) {
            return Err(Error::Shape("block sizes must be positive".into()));
        }
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut dim = 0;
        for &n in &blocks {
            offsets.push(dim);
            dim += n * n;
        }
        Ok(FdCStarAlgebra { blocks, offsets, dim, labels: None })
    }

    /// `C^n`: n one-dimensional blocks.
    pub fn commutative(n: usize) -> Self {
        FdCStarAlgebra::new(vec![1; n]).expect("n > 0")
    }

    pub fn matrix(n: usize) -> Self {
        FdCStarAlgebra::new(vec![n]).expect("n > 0")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.blocks.len() {
            return Err(Error::Shape(format!("{} labels for {} blocks", labels.len(), self.blocks.len())));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn block_sizes(&self) -> &[usize] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn offset(&self, block: usize) -> usize {
        self.offsets[block]
    }

    pub fn is_commutative(&self) -> bool {
        self.blocks.iter().all(|&n| n == 1)
    }

    /// Flat coordinate index of the matrix unit `e^{(block)}_{r s}`.
    #[inline]
    pub fn index(&self, block: usize, r: usize, s: usize) -> usize {
        let n = self.blocks[block];
        debug_assert!(r < n && s < n);
        self.offsets[block] + r * n + s
    }

    /// Inverse of [`index`](Self::index).
    pub fn locate(&self, idx: usize) -> (usize, usize, usize) {
        assert!(idx < self.dim, "coordinate index out of range");
        let block = match self.offsets.binary_search(&idx) {
            Ok(b) => b,
            Err(b) => b - 1,
        };
        let n = self.blocks[block];
        let local = idx - self.offsets[block];
        (block, local / n, local % n)
    }

    pub fn check(&self, x: &Element) -> Result<()> {
        if x.coords.len() != self.dim {
            return Err(Error::Shape(format!("element has {} coordinates, algebra dimension is {}", x.coords.len(), self.dim)));
        }
        Ok(())
    }

    pub fn same_as(&self, other: &FdCStarAlgebra) -> Result<()> {
        if self != other {
            return Err(Error::AlgebraMismatch { expected: format!("{:?}", self.blocks), found: format!("{:?}", other.blocks) });
        }
        Ok(())
    }

    pub fn zero(&self) -> Element {
        Element::zeros(self.dim)
    }

    pub fn one(&self) -> Element {
        let mut x = self.zero();
        for (b, &n) in self.blocks.iter().enumerate() {
            for r in 0..n {
                x.coords[self.index(b, r, r)] = re(1.0);
            }
        }
        x
    }

    pub fn unit(&self, block: usize, r: usize, s: usize) -> Element {
        let mut x = self.zero();
        x.coords[self.index(block, r, s)] = re(1.0);
        x
    }

    /// The matrix-unit basis in coordinate order.
    pub fn basis(&self) -> Vec<Element> {
        (0..self.dim).map(|i| Element::basis_vector(self.dim, i)).collect()
    }

    /// Unit of a single block, a minimal central projection.
    pub fn block_unit(&self, block: usize) -> Element {
        let mut x = self.zero();
        for r in 0..self.blocks[block] {
            x.coords[self.index(block, r, r)] = re(1.0);
        }
        x
    }

    pub fn block(&self, x: &Element, block: usize) -> Mat {
        let n = self.blocks[block];
        let o = self.offsets[block];
        Mat::from_row_major(n, n, x.coords[o..o + n * n].to_vec())
    }

    pub fn from_blocks(&self, blocks: &[Mat]) -> Result<Element> {
        if blocks.len() != self.blocks.len() {
            return Err(Error::Shape(format!("{} blocks given, algebra has {}", blocks.len(), self.blocks.len())));
        }
        let mut coords = Vec::with_capacity(self.dim);
        for (m, &n) in blocks.iter().zip(&self.blocks) {
            if m.rows() != n || m.cols() != n {
                return Err(Error::Shape(format!("block of shape {}x{} where {n}x{n} expected", m.rows(), m.cols())));
            }
            coords.extend_from_slice(m.data());
        }
        Ok(Element { coords })
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        let mut out = self.zero();
        for (b, &n) in self.blocks.iter().enumerate() {
            let o = self.offsets[b];
            let xs = &x.coords[o..o + n * n];
            let ys = &y.coords[o..o + n * n];
            let dst = &mut out.coords[o..o + n * n];
            for i in 0..n {
                for k in 0..n {
                    let a = xs[i * n + k];
                    if a.is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        dst[i * n + j] += a * ys[k * n + j];
                    }
                }
            }
        }
        out
    }

    pub fn adjoint(&self, x: &Element) -> Element {
        let mut out = self.zero();
        for (b, &n) in self.blocks.iter().enumerate() {
            let o = self.offsets[b];
            for r in 0..n {
                for s in 0..n {
                    out.coords[o + s * n + r] = x.coords[o + r * n + s].conj();
                }
            }
        }
        out
    }

    pub fn commutator(&self, x: &Element, y: &Element) -> Element {
        self.mul(x, y).sub(&self.mul(y, x))
    }

    /// Operator norm: largest block operator norm.
    pub fn op_norm(&self, x: &Element) -> f64 {
        (0..self.blocks.len()).map(|b| linalg::operator_norm(&self.block(x, b))).fold(0.0, f64::max)
    }

    pub fn trace(&self, x: &Element) -> C64 {
        (0..self.blocks.len()).map(|b| self.block(x, b).trace()).sum()
    }

    /// Sets the flags of `x` against their defining identities.
    pub fn classify(&self, x: &Element, tol: Tolerance) -> Classification {
        let xs = self.adjoint(x);
        let selfadjoint = tol.accepts(x.max_abs_diff(&xs));
        let projection = selfadjoint && tol.accepts(self.mul(x, x).max_abs_diff(x));
        let central = (0..self.dim).all(|i| {
            let e = Element::basis_vector(self.dim, i);
            tol.accepts(self.commutator(x, &e).max_abs())
        });
        let one = self.one();
        let unitary = tol.accepts(self.mul(&xs, x).max_abs_diff(&one)) && tol.accepts(self.mul(x, &xs).max_abs_diff(&one));
        Classification { selfadjoint, projection, central, unitary }
    }

    /// True iff `x` is a projection in the center: a sum of block units.
    pub fn is_central_projection(&self, x: &Element, tol: Tolerance) -> bool {
        let c = self.classify(x, tol);
        c.projection && c.central
    }

    /// For a central projection, the blocks it contains (others must vanish).
    pub fn central_support(&self, x: &Element, tol: Tolerance) -> Result<Vec<usize>> {
        if !self.is_central_projection(x, tol) {
            return Err(Error::Precondition("element is not a central projection".into()));
        }
        Ok((0..self.blocks.len()).filter(|&b| self.block(x, b)[(0, 0)].re > 0.5).collect())
    }
}

/// Structural flags of an element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Classification {
    pub selfadjoint: bool,
    pub projection: bool,
    pub central: bool,
    pub unitary: bool,
}

/// An element of some [`FdCStarAlgebra`], stored as matrix-unit coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Element {
    coords: Vec<C64>,
}

impl Element {
    pub fn zeros(dim: usize) -> Self {
        Element { coords: vec![C64::zero(); dim] }
    }

    pub fn from_coords(coords: Vec<C64>) -> Self {
        Element { coords }
    }

    pub fn from_real(coords: &[f64]) -> Self {
        Element { coords: coords.iter().map(|&x| re(x)).collect() }
    }

    pub fn basis_vector(dim: usize, i: usize) -> Self {
        let mut x = Element::zeros(dim);
        x.coords[i] = re(1.0);
        x
    }

    pub fn coords(&self) -> &[C64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<C64> {
        self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn add(&self, other: &Element) -> Element {
        Element { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Element) -> Element {
        Element { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, alpha: C64) -> Element {
        Element { coords: linalg::scaled(alpha, &self.coords) }
    }

    pub fn add_scaled(&mut self, alpha: C64, other: &Element) {
        linalg::axpy(alpha, &other.coords, &mut self.coords);
    }

    pub fn inner(&self, other: &Element) -> C64 {
        linalg::inner(&self.coords, &other.coords)
    }

    /// Hilbert-Schmidt norm.
    pub fn norm(&self) -> f64 {
        linalg::norm(&self.coords)
    }

    pub fn max_abs(&self) -> f64 {
        linalg::max_abs(&self.coords)
    }

    pub fn max_abs_diff(&self, other: &Element) -> f64 {
        linalg::max_abs_diff(&self.coords, &other.coords)
    }
}

/// Tensor product algebra: blocks `n_i * m_j` in lexicographic order.
pub fn tensor(a: &FdCStarAlgebra, b: &FdCStarAlgebra) -> FdCStarAlgebra {
    let blocks = a.blocks.iter().flat_map(|&n| b.blocks.iter().map(move |&m| n * m)).collect();
    FdCStarAlgebra::new(blocks).expect("tensor of nonempty algebras")
}

/// Coordinate index in `A ⊗ B` of the tensor of the `i`-th basis element of
/// `A` and the `j`-th basis element of `B`.
#[derive(Clone, Debug)]
pub struct TensorIndex {
    table: Vec<usize>,
    dim_b: usize,
}

impl TensorIndex {
    pub fn new(a: &FdCStarAlgebra, b: &FdCStarAlgebra) -> Self {
        let ab = tensor(a, b);
        let kb = b.num_blocks();
        let mut table = vec![0; a.dim() * b.dim()];
        for i in 0..a.dim() {
            let (bi, r, s) = a.locate(i);
            for j in 0..b.dim() {
                let (bj, t, u) = b.locate(j);
                let m = b.block_sizes()[bj];
                table[i * b.dim() + j] = ab.index(bi * kb + bj, r * m + t, s * m + u);
            }
        }
        TensorIndex { table, dim_b: b.dim() }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.table[i * self.dim_b + j]
    }
}

/// `x ⊗ y` as an element of `tensor(a, b)`, blockwise the Kronecker product.
pub fn tensor_elements(a: &FdCStarAlgebra, b: &FdCStarAlgebra, x: &Element, y: &Element) -> Element {
    let idx = TensorIndex::new(a, b);
    let mut out = Element::zeros(a.dim() * b.dim());
    for (i, xi) in x.coords.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.coords.iter().enumerate() {
            out.coords[idx.get(i, j)] = xi * yj;
        }
    }
    out
}
