//! Finite-dimensional C*-bialgebras: function algebras of finite groups and
//! semigroups, reduced group algebras, convolution, group-like projections
//! and quotients by central group-like projections.

mod group;

use alloc::format;
use alloc::vec::Vec;

pub use group::{cyclic_table, gamma5, FiniteGroup, Semigroup};

use crate::error::{Error, Result};
use crate::fdalg::{
    generated_star_subalgebra, slice, slice_left, tensor, tensor_elements, tensor_functionals, tensor_maps, wedderburn, Element,
    FdCStarAlgebra, Functional, LinearMap, Subspace, Tolerance,
};
use crate::linalg::{self, re, Mat, C64};

/// Where a bialgebra came from; determines which special operations apply.
#[derive(Clone, Debug)]
pub enum Kind {
    /// `C(G)` with basis `δ_g` in element order.
    FunctionOfGroup(FiniteGroup),
    /// `C(S)` for a semigroup that need not be a group.
    FunctionOfSemigroup(Semigroup),
    /// The image of the left regular representation; `lambdas[g]` is `λ_g`.
    GroupAlgebra { group: FiniteGroup, lambdas: Vec<Element> },
    Quotient,
    Custom,
}

/// An algebra with a verified comultiplication and optional counit.
#[derive(Clone, Debug)]
pub struct Bialgebra {
    algebra: FdCStarAlgebra,
    comult: LinearMap,
    counit: Option<Functional>,
    kind: Kind,
}

/// Residual of `(Δ ⊗ id)Δ = (id ⊗ Δ)Δ`.
pub fn coassociativity_residual(comult: &LinearMap) -> f64 {
    let id = LinearMap::identity(comult.source());
    let left = tensor_maps(comult, &id).compose(comult);
    let right = tensor_maps(&id, comult).compose(comult);
    match (left, right) {
        (Ok(l), Ok(r)) => l.matrix().max_abs_diff(r.matrix()),
        _ => f64::INFINITY,
    }
}

/// Residual of `(ε ⊗ id)Δ = id = (id ⊗ ε)Δ`.
pub fn counit_residual(comult: &LinearMap, counit: &Functional) -> f64 {
    let a = comult.source();
    let mut worst: f64 = 0.0;
    for j in 0..a.dim() {
        let d = comult.image_of_basis(j);
        let e = Element::basis_vector(a.dim(), j);
        let (Ok(l), Ok(r)) = (slice_left(a, a, &d, counit), slice(a, a, &d, counit)) else {
            return f64::INFINITY;
        };
        worst = worst.max(l.max_abs_diff(&e)).max(r.max_abs_diff(&e));
    }
    worst
}

impl Bialgebra {
    /// Verifies that `comult` is a unital coassociative *-homomorphism and,
    /// when given, that `counit` satisfies both counit laws.
    pub fn new(algebra: FdCStarAlgebra, comult: LinearMap, counit: Option<Functional>, tol: Tolerance) -> Result<Self> {
        Self::with_kind(algebra, comult, counit, Kind::Custom, tol)
    }

    fn with_kind(algebra: FdCStarAlgebra, comult: LinearMap, counit: Option<Functional>, kind: Kind, tol: Tolerance) -> Result<Self> {
        algebra.same_as(comult.source())?;
        tensor(&algebra, &algebra).same_as(comult.target())?;
        let checks = [
            ("comultiplication is multiplicative and *-preserving", comult.homomorphism_residual()),
            ("comultiplication is unital", comult.unital_residual()),
            ("coassociativity", coassociativity_residual(&comult)),
        ];
        for (axiom, residual) in checks {
            if !tol.accepts(residual) {
                return Err(Error::BialgebraAxiom { axiom, residual });
            }
        }
        if let Some(eps) = &counit {
            if eps.len() != algebra.dim() {
                return Err(Error::Shape(format!("counit has length {}, algebra dimension is {}", eps.len(), algebra.dim())));
            }
            let residual = counit_residual(&comult, eps);
            if !tol.accepts(residual) {
                return Err(Error::BialgebraAxiom { axiom: "counit laws", residual });
            }
        }
        Ok(Bialgebra { algebra, comult, counit, kind })
    }

    /// `C(G)`: `Δ(δ_g) = Σ_{hk=g} δ_h ⊗ δ_k`, `ε = ev_e`.
    pub fn function_algebra(g: &FiniteGroup) -> Result<Self> {
        let (alg, comult) = semigroup_comult(g.as_semigroup());
        let counit = Functional::dual_basis(&alg, g.identity());
        Self::with_kind(alg, comult, Some(counit), Kind::FunctionOfGroup(g.clone()), Tolerance::default())
    }

    /// `C(S)` for a finite semigroup; the counit exists exactly when `S` has an identity.
    pub fn semigroup_algebra(s: &Semigroup) -> Result<Self> {
        let (alg, comult) = semigroup_comult(s);
        let counit = s.identity().map(|e| Functional::dual_basis(&alg, e));
        Self::with_kind(alg, comult, counit, Kind::FunctionOfSemigroup(s.clone()), Tolerance::default())
    }

    /// The reduced group algebra, realized in the left regular representation
    /// and decomposed into blocks. `Δ(λ_g) = λ_g ⊗ λ_g`, `ε(λ_g) = 1`.
    pub fn group_algebra(g: &FiniteGroup, tol: Tolerance, seed: u64) -> Result<Self> {
        let n = g.order();
        let reg = FdCStarAlgebra::matrix(n);
        let regular: Vec<Element> = (0..n)
            .map(|a| {
                let mut x = reg.zero();
                for h in 0..n {
                    x.add_scaled(re(1.0), &reg.unit(0, g.mul(a, h), h));
                }
                x
            })
            .collect();
        let span = generated_star_subalgebra(&reg, &regular, true, tol)?;
        let w = wedderburn(&span, tol, seed)?;
        let alg = w.algebra.clone();
        let lambdas: Vec<Element> = regular.iter().map(|x| w.retract.apply(x)).collect();
        let m = Mat::from_columns(alg.dim(), &lambdas.iter().map(|l| l.coords().to_vec()).collect::<Vec<_>>());
        let minv = linalg::inverse(&m).ok_or_else(|| Error::Internal("group elements are linearly dependent".into()))?;
        let aa = tensor(&alg, &alg);
        let squares: Vec<Vec<C64>> = lambdas.iter().map(|l| tensor_elements(&alg, &alg, l, l).into_coords()).collect();
        let comult = LinearMap::new(alg.clone(), aa.clone(), Mat::from_columns(aa.dim(), &squares).matmul(&minv))?;
        let ones = Mat::from_row_major(1, n, alloc::vec![re(1.0); n]);
        let counit = Functional::new(ones.matmul(&minv).row(0).to_vec());
        Self::with_kind(alg, comult, Some(counit), Kind::GroupAlgebra { group: g.clone(), lambdas }, tol)
    }

    pub fn algebra(&self) -> &FdCStarAlgebra {
        &self.algebra
    }

    pub fn comult(&self) -> &LinearMap {
        &self.comult
    }

    pub fn counit(&self) -> Option<&Functional> {
        self.counit.as_ref()
    }

    pub fn kind(&self) -> &Kind {
        &self.kind
    }

    /// The group `G` when this is `C(G)`.
    pub fn function_group(&self) -> Option<&FiniteGroup> {
        match &self.kind {
            Kind::FunctionOfGroup(g) => Some(g),
            _ => None,
        }
    }

    /// `λ_g` when this is a group algebra.
    pub fn lambda(&self, g: usize) -> Option<&Element> {
        match &self.kind {
            Kind::GroupAlgebra { lambdas, .. } => lambdas.get(g),
            _ => None,
        }
    }

    pub fn comultiply(&self, x: &Element) -> Element {
        self.comult.apply(x)
    }

    /// Ranks of `span{Δ(a)(1 ⊗ b)}` and `span{(a ⊗ 1)Δ(b)}` over basis pairs.
    pub fn cancellation_ranks(&self, tol: Tolerance) -> (usize, usize) {
        let a = &self.algebra;
        let aa = tensor(a, a);
        let one = a.one();
        let basis = a.basis();
        let deltas: Vec<Element> = (0..a.dim()).map(|j| self.comult.image_of_basis(j)).collect();
        let mut left = Vec::with_capacity(a.dim() * a.dim());
        let mut right = Vec::with_capacity(a.dim() * a.dim());
        for d in &deltas {
            for b in &basis {
                left.push(aa.mul(d, &tensor_elements(a, a, &one, b)).into_coords());
                right.push(aa.mul(&tensor_elements(a, a, b, &one), d).into_coords());
            }
        }
        (linalg::rank(left, tol.get()), linalg::rank(right, tol.get()))
    }

    pub fn check_cancellation(&self, tol: Tolerance) -> bool {
        let d2 = self.algebra.dim() * self.algebra.dim();
        self.cancellation_ranks(tol) == (d2, d2)
    }

    /// `υω = (υ ⊗ ω) ∘ Δ`
    pub fn convolve(&self, u: &Functional, w: &Functional) -> Result<Functional> {
        let d = self.algebra.dim();
        if u.len() != d || w.len() != d {
            return Err(Error::AlgebraMismatch { expected: format!("functionals of length {d}"), found: format!("{} and {}", u.len(), w.len()) });
        }
        Ok(tensor_functionals(&self.algebra, &self.algebra, u, w).pull_back(&self.comult))
    }

    /// Largest of the projection residuals of `p` and `‖(p ⊗ 1)Δ(p) - p ⊗ p‖`.
    pub fn grouplike_residual(&self, p: &Element) -> f64 {
        let a = &self.algebra;
        if a.check(p).is_err() {
            return f64::INFINITY;
        }
        let aa = tensor(a, a);
        let proj = p.max_abs_diff(&a.adjoint(p)).max(a.mul(p, p).max_abs_diff(p));
        let lhs = aa.mul(&tensor_elements(a, a, p, &a.one()), &self.comultiply(p));
        proj.max(lhs.max_abs_diff(&tensor_elements(a, a, p, p)))
    }

    pub fn check_grouplike(&self, p: &Element, tol: Tolerance) -> bool {
        tol.accepts(self.grouplike_residual(p))
    }

    /// The projection attached to a subset of the group, given as a bitmask:
    /// its indicator in `C(G)`, or `|N|^{-1} Σ_{g ∈ N} λ_g` in the group algebra.
    pub fn subset_projection(&self, mask: u64) -> Result<Element> {
        match &self.kind {
            Kind::FunctionOfGroup(g) => Ok(indicator(&self.algebra, g.order(), mask)),
            Kind::FunctionOfSemigroup(s) => Ok(indicator(&self.algebra, s.len(), mask)),
            Kind::GroupAlgebra { lambdas, .. } => {
                let members: Vec<&Element> = lambdas.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, l)| l).collect();
                if members.is_empty() {
                    return Ok(self.algebra.zero());
                }
                let mut p = self.algebra.zero();
                for l in &members {
                    p.add_scaled(re(1.0 / members.len() as f64), l);
                }
                Ok(p)
            }
            _ => Err(Error::Precondition("subset projections need a group or semigroup bialgebra".into())),
        }
    }

    /// The quotient `(pA, (p ⊗ p)Δ)` by a central group-like projection,
    /// presented in block form. The counit survives when `ε(p) = 1`.
    pub fn quotient(&self, p: &Element, tol: Tolerance, seed: u64) -> Result<Quotient> {
        let a = &self.algebra;
        a.check(p)?;
        if !a.is_central_projection(p, tol) {
            return Err(Error::Precondition("quotient needs a central projection".into()));
        }
        let gl = self.grouplike_residual(p);
        if !tol.accepts(gl) {
            return Err(Error::Precondition(format!("projection is not group-like (residual {gl:e})")));
        }
        if p.max_abs() <= tol.get() {
            return Err(Error::Precondition("the zero projection has a zero quotient".into()));
        }
        let corner = Subspace::span(a, &a.basis().iter().map(|x| a.mul(p, x)).collect::<Vec<_>>(), tol);
        let w = wedderburn(&corner, tol, seed)?;
        let ap = w.algebra.clone();
        let pp = tensor_elements(a, a, p, p);
        let aa = tensor(a, a);
        let retract2 = tensor_maps(&w.retract, &w.retract);
        let images: Vec<Element> = (0..ap.dim())
            .map(|j| {
                let x = w.embed.image_of_basis(j);
                retract2.apply(&aa.mul(&pp, &self.comultiply(&x)))
            })
            .collect();
        let comult = LinearMap::from_images(&ap, &tensor(&ap, &ap), &images)?;
        let counit = match &self.counit {
            Some(eps) if (eps.eval(p) - re(1.0)).norm() <= tol.get() => Some(eps.pull_back(&w.embed)),
            _ => None,
        };
        let bialgebra = Self::with_kind(ap, comult, counit, Kind::Quotient, tol)?;
        let map = w.retract.clone();
        let lhs = bialgebra.comult.compose(&map)?;
        let rhs = retract2.compose(&self.comult)?;
        let residual = lhs.max_abs_diff(&rhs);
        if !tol.accepts(residual) {
            return Err(Error::BialgebraAxiom { axiom: "quotient map intertwines comultiplications", residual });
        }
        Ok(Quotient { bialgebra, map, embed: w.embed })
    }
}

/// A quotient bialgebra with the surjection `a ↦ pa` and the embedding of `pA` back into `A`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub bialgebra: Bialgebra,
    pub map: LinearMap,
    pub embed: LinearMap,
}

fn semigroup_comult(s: &Semigroup) -> (FdCStarAlgebra, LinearMap) {
    let n = s.len();
    let alg = FdCStarAlgebra::commutative(n);
    let aa = tensor(&alg, &alg);
    let mut m = Mat::zeros(aa.dim(), n);
    for h in 0..n {
        for k in 0..n {
            // basis δ_h ⊗ δ_k sits at index h * n + k in C^n ⊗ C^n.
            m[(h * n + k, s.mul(h, k))] = re(1.0);
        }
    }
    let comult = LinearMap::new(alg.clone(), aa, m).expect("shape");
    (alg, comult)
}

fn indicator(alg: &FdCStarAlgebra, n: usize, mask: u64) -> Element {
    let mut x = alg.zero();
    for i in (0..n).filter(|&i| mask >> i & 1 == 1) {
        x.add_scaled(re(1.0), &Element::basis_vector(n, i));
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn z2_function_algebra_comultiplication() {
        let g = FiniteGroup::cyclic(2);
        let b = Bialgebra::function_algebra(&g).unwrap();
        let a = b.algebra();
        let de = Element::basis_vector(2, 0);
        let dt = Element::basis_vector(2, 1);
        let expected = tensor_elements(a, a, &de, &dt).add(&tensor_elements(a, a, &dt, &de));
        assert_eq!(b.comultiply(&dt), expected);
        let eps = b.counit().unwrap();
        assert_eq!(eps.eval(&de), re(1.0));
        assert_eq!(eps.eval(&dt), re(0.0));
        assert!(b.check_cancellation(tol()));
    }

    #[test]
    fn group_algebra_blocks() {
        let z2 = Bialgebra::group_algebra(&FiniteGroup::cyclic(2), tol(), 0).unwrap();
        assert_eq!(z2.algebra().block_sizes(), &[1, 1]);
        let s3 = Bialgebra::group_algebra(&FiniteGroup::symmetric3(), tol(), 0).unwrap();
        assert_eq!(s3.algebra().block_sizes(), &[1, 1, 2]);
        assert!(s3.check_cancellation(tol()));
        let a = s3.algebra();
        let le = s3.lambda(0).unwrap();
        assert!(le.max_abs_diff(&a.one()) < 1e-9);
        assert!(s3.comultiply(le).max_abs_diff(&tensor(a, a).one()) < 1e-9);
    }

    #[test]
    fn gamma5_fails_cancellation_and_has_no_counit() {
        let b = Bialgebra::semigroup_algebra(&gamma5()).unwrap();
        assert!(b.counit().is_none());
        assert!(!b.check_cancellation(tol()));
    }

    #[test]
    fn convolution_of_evaluations() {
        let g = FiniteGroup::symmetric3();
        let b = Bialgebra::function_algebra(&g).unwrap();
        let ev = |i| Functional::dual_basis(b.algebra(), i);
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(b.convolve(&ev(x), &ev(y)).unwrap(), ev(g.mul(x, y)));
            }
        }
        let eps = b.counit().unwrap();
        let w = Functional::new((0..6).map(|i| linalg::c(i as f64, 1.0)).collect());
        assert!(b.convolve(eps, &w).unwrap().max_abs_diff(&w) < 1e-14);
        assert!(b.convolve(&Functional::zero(b.algebra()), &w).unwrap().max_abs_diff(&Functional::zero(b.algebra())) == 0.0);
    }

    #[test]
    fn grouplike_examples() {
        let z2 = Bialgebra::function_algebra(&FiniteGroup::cyclic(2)).unwrap();
        assert!(z2.check_grouplike(&z2.algebra().one(), tol()));
        assert!(!z2.check_grouplike(&Element::basis_vector(2, 1), tol()));
        let gz2 = Bialgebra::group_algebra(&FiniteGroup::cyclic(2), tol(), 0).unwrap();
        let p = gz2.subset_projection(0b11).unwrap();
        assert!(gz2.check_grouplike(&p, tol()));
        let flags = gz2.algebra().classify(&p, tol());
        assert!(flags.selfadjoint && flags.projection && flags.central);
        // The unnormalized sum is not a projection.
        assert!(!gz2.check_grouplike(&p.scale(re(2.0)), tol()));
    }

    #[test]
    fn quotients() {
        let s3 = FiniteGroup::symmetric3();
        let b = Bialgebra::function_algebra(&s3).unwrap();
        let a3 = b.subset_projection(0b000111).unwrap();
        let q = b.quotient(&a3, tol(), 0).unwrap();
        assert_eq!(q.bialgebra.algebra().block_sizes(), &[1, 1, 1]);
        assert!(q.bialgebra.counit().is_some());
        assert!(q.bialgebra.check_cancellation(tol()));

        let full = b.quotient(&b.algebra().one(), tol(), 0).unwrap();
        assert_eq!(full.bialgebra.algebra().dim(), 6);

        let z2 = Bialgebra::function_algebra(&FiniteGroup::cyclic(2)).unwrap();
        let triv = z2.quotient(&Element::basis_vector(2, 0), tol(), 0).unwrap();
        assert_eq!(triv.bialgebra.algebra().block_sizes(), &[1]);
        assert!(z2.quotient(&Element::basis_vector(2, 1), tol(), 0).is_err());
    }

    #[test]
    fn grouplike_indicators_are_subgroups() {
        for name in ["Z2", "Z3", "Z4", "S3"] {
            let g = FiniteGroup::preset(name).unwrap();
            let b = Bialgebra::function_algebra(&g).unwrap();
            let found: Vec<u64> =
                (0..1u64 << g.order()).filter(|&m| b.check_grouplike(&b.subset_projection(m).unwrap(), tol())).collect();
            let mut expected = g.subgroups();
            expected.insert(0, 0);
            // The zero function is trivially group-like; nonzero ones are exactly the subgroups.
            assert_eq!(found, expected);
        }
    }
}
