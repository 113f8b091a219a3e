use alloc::vec::Vec;

use super::algebra::{Element, FdCStarAlgebra, Tolerance};
use crate::error::{Error, Result};
use crate::linalg::{self, C64};

/// A linear subspace of an algebra with a Hilbert-Schmidt orthonormal basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: FdCStarAlgebra,
    basis: Vec<Element>,
}

impl Subspace {
    pub fn zero(ambient: &FdCStarAlgebra) -> Self {
        Subspace { ambient: ambient.clone(), basis: Vec::new() }
    }

    pub fn full(ambient: &FdCStarAlgebra) -> Self {
        Subspace { ambient: ambient.clone(), basis: ambient.basis() }
    }

    pub fn span(ambient: &FdCStarAlgebra, vectors: &[Element], tol: Tolerance) -> Self {
        let mut s = Subspace::zero(ambient);
        s.extend(vectors.iter().cloned(), tol);
        s
    }

    pub fn ambient(&self) -> &FdCStarAlgebra {
        &self.ambient
    }

    pub fn basis(&self) -> &[Element] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Adds the given vectors to the span; returns the newly added basis vectors.
    pub fn extend<I: IntoIterator<Item = Element>>(&mut self, vectors: I, tol: Tolerance) -> Vec<Element> {
        let mut raw: Vec<Vec<C64>> = self.basis.iter().map(|e| e.coords().to_vec()).collect();
        let start = raw.len();
        let cands: Vec<Vec<C64>> = vectors.into_iter().map(Element::into_coords).collect();
        if cands.is_empty() {
            return Vec::new();
        }
        linalg::extend_orthonormal(&mut raw, cands, tol.get());
        let added: Vec<Element> = raw.split_off(start).into_iter().map(Element::from_coords).collect();
        self.basis.extend(added.iter().cloned());
        added
    }

    pub fn project(&self, x: &Element) -> Element {
        let mut out = Element::zeros(x.len());
        for q in &self.basis {
            out.add_scaled(q.inner(x), q);
        }
        out
    }

    /// Distance of `x` from the subspace.
    pub fn residual(&self, x: &Element) -> f64 {
        let raw: Vec<Vec<C64>> = self.basis.iter().map(|e| e.coords().to_vec()).collect();
        linalg::distance_to_span(&raw, x.coords())
    }

    pub fn contains(&self, x: &Element, tol: Tolerance) -> bool {
        tol.accepts(self.residual(x))
    }

    /// Largest distance of a basis vector of `other` from `self`.
    pub fn containment_residual(&self, other: &Subspace) -> f64 {
        other.basis.iter().map(|q| self.residual(q)).fold(0.0, f64::max)
    }

    /// Symmetric subspace comparison by mutual containment.
    pub fn equality_residual(&self, other: &Subspace) -> f64 {
        if self.dim() != other.dim() {
            return self.containment_residual(other).max(other.containment_residual(self)).max(1.0);
        }
        self.containment_residual(other).max(other.containment_residual(self))
    }

    /// Worst residual of closure under adjoint and multiplication.
    pub fn closure_residual(&self) -> f64 {
        let a = &self.ambient;
        let mut worst: f64 = 0.0;
        for x in &self.basis {
            worst = worst.max(self.residual(&a.adjoint(x)));
            for y in &self.basis {
                worst = worst.max(self.residual(&a.mul(x, y)));
            }
        }
        worst
    }
}

/// Smallest *-subalgebra containing `generators` (and the unit when asked).
///
/// Rounds of span closure: each round multiplies the newly found basis
/// vectors with the whole basis on both sides and adds what is new. The
/// dimension can grow at most `ambient.dim()` times, so the round cap is
/// `ambient.dim() + 2`.
pub fn generated_star_subalgebra(ambient: &FdCStarAlgebra, generators: &[Element], include_unit: bool, tol: Tolerance) -> Result<Subspace> {
    for g in generators {
        ambient.check(g)?;
    }
    let mut seeds: Vec<Element> = Vec::with_capacity(2 * generators.len() + 1);
    if include_unit {
        seeds.push(ambient.one());
    }
    for g in generators {
        seeds.push(g.clone());
        seeds.push(ambient.adjoint(g));
    }
    let mut s = Subspace::zero(ambient);
    let mut fresh = s.extend(seeds, tol);
    let cap = ambient.dim() + 2;
    for _round in 0..cap {
        if fresh.is_empty() {
            return Ok(s);
        }
        let mut products = Vec::with_capacity(2 * fresh.len() * s.dim());
        for x in &fresh {
            for y in s.basis() {
                products.push(ambient.mul(x, y));
                products.push(ambient.mul(y, x));
            }
        }
        fresh = s.extend(products, tol);
    }
    if fresh.is_empty() {
        Ok(s)
    } else {
        Err(Error::IterationCap { rounds: cap })
    }
}
