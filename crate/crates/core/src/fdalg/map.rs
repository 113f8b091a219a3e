use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::algebra::{tensor, Element, FdCStarAlgebra, TensorIndex, Tolerance};
use crate::error::{Error, Result};
use crate::linalg::{self, Mat, C64};

/// A linear map between two algebras, stored as a dense matrix in the
/// matrix-unit bases (`target.dim() x source.dim()`).
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap {
    source: FdCStarAlgebra,
    target: FdCStarAlgebra,
    matrix: Mat,
}

impl LinearMap {
    pub fn new(source: FdCStarAlgebra, target: FdCStarAlgebra, matrix: Mat) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::Shape(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        Ok(LinearMap { source, target, matrix })
    }

    pub fn identity(a: &FdCStarAlgebra) -> Self {
        LinearMap { source: a.clone(), target: a.clone(), matrix: Mat::identity(a.dim()) }
    }

    pub fn zero(source: &FdCStarAlgebra, target: &FdCStarAlgebra) -> Self {
        LinearMap { source: source.clone(), target: target.clone(), matrix: Mat::zeros(target.dim(), source.dim()) }
    }

    /// Map given by its images of the basis vectors of `source`.
    pub fn from_images(source: &FdCStarAlgebra, target: &FdCStarAlgebra, images: &[Element]) -> Result<Self> {
        if images.len() != source.dim() {
            return Err(Error::Shape(format!("{} images for a source of dimension {}", images.len(), source.dim())));
        }
        let mut m = Mat::zeros(target.dim(), source.dim());
        for (j, x) in images.iter().enumerate() {
            target.check(x)?;
            m.set_column(j, x.coords());
        }
        Ok(LinearMap { source: source.clone(), target: target.clone(), matrix: m })
    }

    pub fn source(&self) -> &FdCStarAlgebra {
        &self.source
    }

    pub fn target(&self) -> &FdCStarAlgebra {
        &self.target
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn apply(&self, x: &Element) -> Element {
        Element::from_coords(self.matrix.apply(x.coords()))
    }

    /// Image of the `j`-th basis vector.
    pub fn image_of_basis(&self, j: usize) -> Element {
        Element::from_coords(self.matrix.column(j))
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &LinearMap) -> Result<LinearMap> {
        self.source.same_as(&inner.target)?;
        Ok(LinearMap { source: inner.source.clone(), target: self.target.clone(), matrix: self.matrix.matmul(&inner.matrix) })
    }

    pub fn sub(&self, other: &LinearMap) -> Result<LinearMap> {
        self.source.same_as(&other.source)?;
        self.target.same_as(&other.target)?;
        Ok(LinearMap { source: self.source.clone(), target: self.target.clone(), matrix: self.matrix.sub(&other.matrix) })
    }

    pub fn max_abs_diff(&self, other: &LinearMap) -> f64 {
        if self.source != other.source || self.target != other.target {
            return f64::INFINITY;
        }
        self.matrix.max_abs_diff(&other.matrix)
    }

    pub fn rank(&self, tol: Tolerance) -> usize {
        let cols = (0..self.matrix.cols()).map(|j| self.matrix.column(j)).collect();
        linalg::rank(cols, tol.get())
    }

    /// Largest residual of the *-homomorphism identities `f(xy) = f(x)f(y)`
    /// and `f(x*) = f(x)*` over all pairs of basis vectors.
    pub fn homomorphism_residual(&self) -> f64 {
        let (src, tgt) = (&self.source, &self.target);
        let images: Vec<Element> = (0..src.dim()).map(|j| self.image_of_basis(j)).collect();
        let zero = tgt.zero();
        let mut worst: f64 = 0.0;
        for i in 0..src.dim() {
            let (bi, r, s) = src.locate(i);
            let star = &images[src.index(bi, s, r)];
            worst = worst.max(star.max_abs_diff(&tgt.adjoint(&images[i])));
            for j in 0..src.dim() {
                // e_{rs} e_{tu} = δ_{st} e_{ru} within one block, zero across blocks.
                let (bj, t, u) = src.locate(j);
                let lhs = if bi == bj && s == t { &images[src.index(bi, r, u)] } else { &zero };
                let rhs = tgt.mul(&images[i], &images[j]);
                worst = worst.max(lhs.max_abs_diff(&rhs));
            }
        }
        worst
    }

    pub fn unital_residual(&self) -> f64 {
        self.apply(&self.source.one()).max_abs_diff(&self.target.one())
    }
}

/// `f ⊗ g : A ⊗ B -> A' ⊗ B'`.
pub fn tensor_maps(f: &LinearMap, g: &LinearMap) -> LinearMap {
    let src = tensor(&f.source, &g.source);
    let tgt = tensor(&f.target, &g.target);
    let si = TensorIndex::new(&f.source, &g.source);
    let ti = TensorIndex::new(&f.target, &g.target);
    let mut m = Mat::zeros(tgt.dim(), src.dim());
    let (fm, gm) = (&f.matrix, &g.matrix);
    for p in 0..f.source.dim() {
        for pp in 0..f.target.dim() {
            let a = fm[(pp, p)];
            if a.is_zero() {
                continue;
            }
            for q in 0..g.source.dim() {
                let col = si.get(p, q);
                for qq in 0..g.target.dim() {
                    let b = gm[(qq, q)];
                    if b.is_zero() {
                        continue;
                    }
                    m[(ti.get(pp, qq), col)] = a * b;
                }
            }
        }
    }
    LinearMap { source: src, target: tgt, matrix: m }
}

/// A linear functional, paired against the matrix-unit basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Functional {
    coords: Vec<C64>,
}

impl Functional {
    pub fn new(coords: Vec<C64>) -> Self {
        Functional { coords }
    }

    pub fn zero(a: &FdCStarAlgebra) -> Self {
        Functional { coords: vec![C64::zero(); a.dim()] }
    }

    /// The `i`-th element of the basis dual to the matrix units.
    pub fn dual_basis(a: &FdCStarAlgebra, i: usize) -> Self {
        Functional { coords: Element::basis_vector(a.dim(), i).into_coords() }
    }

    pub fn dual_basis_all(a: &FdCStarAlgebra) -> Vec<Functional> {
        (0..a.dim()).map(|i| Functional::dual_basis(a, i)).collect()
    }

    pub fn coords(&self) -> &[C64] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn eval(&self, x: &Element) -> C64 {
        debug_assert_eq!(self.coords.len(), x.len());
        self.coords.iter().zip(x.coords()).map(|(w, v)| w * v).sum()
    }

    pub fn add(&self, other: &Functional) -> Functional {
        Functional { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, alpha: C64) -> Functional {
        Functional { coords: linalg::scaled(alpha, &self.coords) }
    }

    /// `ω ∘ f`
    pub fn pull_back(&self, f: &LinearMap) -> Functional {
        Functional { coords: f.matrix().apply_left(&self.coords) }
    }

    pub fn max_abs_diff(&self, other: &Functional) -> f64 {
        linalg::max_abs_diff(&self.coords, &other.coords)
    }
}

/// `υ ⊗ ω` as a functional on `A ⊗ B`.
pub fn tensor_functionals(a: &FdCStarAlgebra, b: &FdCStarAlgebra, u: &Functional, w: &Functional) -> Functional {
    let idx = TensorIndex::new(a, b);
    let mut coords = vec![C64::zero(); a.dim() * b.dim()];
    for (i, ui) in u.coords.iter().enumerate() {
        for (j, wj) in w.coords.iter().enumerate() {
            coords[idx.get(i, j)] = ui * wj;
        }
    }
    Functional { coords }
}

/// The slice map `(id ⊗ ω)(x)` for `x ∈ B ⊗ A`.
pub fn slice(b: &FdCStarAlgebra, a: &FdCStarAlgebra, x: &Element, omega: &Functional) -> Result<Element> {
    if x.len() != b.dim() * a.dim() {
        return Err(Error::Shape(format!("slice input has {} coordinates, expected {}", x.len(), b.dim() * a.dim())));
    }
    if omega.len() != a.dim() {
        return Err(Error::AlgebraMismatch { expected: format!("functional of length {}", a.dim()), found: format!("{}", omega.len()) });
    }
    let idx = TensorIndex::new(b, a);
    let xc = x.coords();
    let out = (0..b.dim())
        .map(|i| (0..a.dim()).map(|j| xc[idx.get(i, j)] * omega.coords[j]).sum())
        .collect();
    Ok(Element::from_coords(out))
}

/// The left slice `(ω ⊗ id)(x)` for `x ∈ A ⊗ B`.
pub fn slice_left(a: &FdCStarAlgebra, b: &FdCStarAlgebra, x: &Element, omega: &Functional) -> Result<Element> {
    if x.len() != a.dim() * b.dim() {
        return Err(Error::Shape(format!("slice input has {} coordinates, expected {}", x.len(), a.dim() * b.dim())));
    }
    if omega.len() != a.dim() {
        return Err(Error::AlgebraMismatch { expected: format!("functional of length {}", a.dim()), found: format!("{}", omega.len()) });
    }
    let idx = TensorIndex::new(a, b);
    let xc = x.coords();
    let out = (0..b.dim())
        .map(|j| (0..a.dim()).map(|i| xc[idx.get(i, j)] * omega.coords[i]).sum())
        .collect();
    Ok(Element::from_coords(out))
}

/// `(id ⊗ ω)` as a linear map `B ⊗ A -> B`.
pub fn slice_map(b: &FdCStarAlgebra, a: &FdCStarAlgebra, omega: &Functional) -> LinearMap {
    let ba = tensor(b, a);
    let idx = TensorIndex::new(b, a);
    let mut m = Mat::zeros(b.dim(), ba.dim());
    for i in 0..b.dim() {
        for j in 0..a.dim() {
            m[(i, idx.get(i, j))] = omega.coords[j];
        }
    }
    LinearMap { source: ba, target: b.clone(), matrix: m }
}
