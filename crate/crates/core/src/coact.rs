//! Partial coactions `δ: C -> C ⊗ A`, the slice action `ω ▷ c`, the
//! optional properties and the dual partial Hopf action axioms.

use alloc::format;
use alloc::vec::Vec;

use crate::bialgebra::{gamma5, Bialgebra};
use crate::error::{Error, Result};
use crate::fdalg::{slice, tensor, tensor_elements, tensor_maps, Element, FdCStarAlgebra, Functional, LinearMap, Subspace, Tolerance};
use crate::linalg::re;

/// A verified partial coaction of a bialgebra on a carrier algebra.
#[derive(Clone, Debug)]
pub struct PartialCoaction {
    carrier: FdCStarAlgebra,
    bialgebra: Bialgebra,
    map: LinearMap,
}

/// Residuals of the defining identities.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AxiomResiduals {
    pub homomorphism: f64,
    pub unit_projection: f64,
    pub partial_coassociativity: f64,
}

impl AxiomResiduals {
    pub fn max(&self) -> f64 {
        self.homomorphism.max(self.unit_projection).max(self.partial_coassociativity)
    }
}

/// Optional properties of a partial coaction and their residuals.
#[derive(Clone, Debug, PartialEq)]
pub struct PropertyReport {
    pub podles: bool,
    pub podles_residual: f64,
    pub weakly_continuous: bool,
    pub weak_continuity_residual: f64,
    /// Always true: every finite-dimensional carrier is unital.
    pub regular: bool,
    pub regular_reason: &'static str,
    pub counital: bool,
    /// `INFINITY` when the bialgebra has no counit.
    pub counit_residual: f64,
    pub injective: bool,
    pub rank: usize,
    /// `span{(ω ▷ 1)c} = C`, which under the Podleś condition is equivalent to weak continuity.
    pub unit_slices_span: bool,
    pub unit_slices_residual: f64,
    /// False only if the Podleś condition holds and the two continuity tests disagree.
    pub continuity_criteria_agree: bool,
}

/// Residuals of the dual partial Hopf action axioms H1-H4.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DualActionReport {
    pub h1: f64,
    pub h2: f64,
    pub h3: f64,
    pub h4: f64,
}

impl DualActionReport {
    pub fn max(&self) -> f64 {
        self.h1.max(self.h2).max(self.h3).max(self.h4)
    }

    pub fn holds(&self, tol: Tolerance) -> bool {
        tol.accepts(self.max())
    }
}

impl PartialCoaction {
    /// Validates the *-homomorphism property, that `δ(1)` is a projection, and
    /// partial coassociativity on a full basis.
    pub fn new(carrier: FdCStarAlgebra, bialgebra: Bialgebra, map: LinearMap, tol: Tolerance) -> Result<Self> {
        let d = Self::new_unchecked(carrier, bialgebra, map)?;
        let r = d.axiom_residuals();
        let checks = [
            ("multiplicative and *-preserving", r.homomorphism),
            ("image of the unit is a projection", r.unit_projection),
            ("partial coassociativity", r.partial_coassociativity),
        ];
        for (axiom, residual) in checks {
            if !tol.accepts(residual) {
                return Err(Error::CoactionAxiom { axiom, residual });
            }
        }
        Ok(d)
    }

    /// Checks shapes only; use [`axiom_residuals`](Self::axiom_residuals) to inspect the axioms.
    pub fn new_unchecked(carrier: FdCStarAlgebra, bialgebra: Bialgebra, map: LinearMap) -> Result<Self> {
        carrier.same_as(map.source())?;
        tensor(&carrier, bialgebra.algebra()).same_as(map.target())?;
        Ok(PartialCoaction { carrier, bialgebra, map })
    }

    /// `c ↦ c ⊗ 1`
    pub fn trivial(carrier: &FdCStarAlgebra, bialgebra: &Bialgebra) -> Self {
        let a = bialgebra.algebra();
        let one = a.one();
        let images: Vec<Element> = carrier.basis().iter().map(|c| tensor_elements(carrier, a, c, &one)).collect();
        let map = LinearMap::from_images(carrier, &tensor(carrier, a), &images).expect("shapes agree");
        PartialCoaction { carrier: carrier.clone(), bialgebra: bialgebra.clone(), map }
    }

    pub fn carrier(&self) -> &FdCStarAlgebra {
        &self.carrier
    }

    pub fn bialgebra(&self) -> &Bialgebra {
        &self.bialgebra
    }

    pub fn map(&self) -> &LinearMap {
        &self.map
    }

    /// `C ⊗ A`
    pub fn tensor_algebra(&self) -> &FdCStarAlgebra {
        self.map.target()
    }

    pub fn apply(&self, c: &Element) -> Element {
        self.map.apply(c)
    }

    /// `δ(1_C)`
    pub fn unit_image(&self) -> Element {
        self.map.apply(&self.carrier.one())
    }

    pub fn axiom_residuals(&self) -> AxiomResiduals {
        let ca = self.tensor_algebra();
        let p = self.unit_image();
        let unit_projection = p.max_abs_diff(&ca.adjoint(&p)).max(ca.mul(&p, &p).max_abs_diff(&p));
        AxiomResiduals {
            homomorphism: self.map.homomorphism_residual(),
            unit_projection,
            partial_coassociativity: self.partial_coassociativity_residual(),
        }
    }

    fn partial_coassociativity_residual(&self) -> f64 {
        let a = self.bialgebra.algebra();
        let ca = self.tensor_algebra();
        let caa = tensor(ca, a);
        let left = tensor_maps(&self.map, &LinearMap::identity(a));
        let right = tensor_maps(&LinearMap::identity(&self.carrier), self.bialgebra.comult());
        let p1 = tensor_elements(ca, a, &self.unit_image(), &a.one());
        let mut worst: f64 = 0.0;
        for j in 0..self.carrier.dim() {
            let d = self.map.image_of_basis(j);
            let lhs = left.apply(&d);
            let rhs = caa.mul(&p1, &right.apply(&d));
            worst = worst.max(lhs.max_abs_diff(&rhs));
        }
        worst
    }

    /// `ω ▷ c = (id ⊗ ω)δ(c)`
    pub fn act(&self, omega: &Functional, c: &Element) -> Result<Element> {
        self.carrier.check(c)?;
        slice(&self.carrier, self.bialgebra.algebra(), &self.apply(c), omega)
    }

    /// `c ↦ ω ▷ c` as a linear map on the carrier.
    pub fn act_map(&self, omega: &Functional) -> Result<LinearMap> {
        let images = self.carrier.basis().iter().map(|c| self.act(omega, c)).collect::<Result<Vec<_>>>()?;
        LinearMap::from_images(&self.carrier, &self.carrier, &images)
    }

    /// Slices `ε_k ▷ e_j` for the dual basis `ε_k` of `A` and the basis `e_j` of `C`,
    /// indexed `[k][j]`.
    fn slice_table(&self) -> Vec<Vec<Element>> {
        let a = self.bialgebra.algebra();
        Functional::dual_basis_all(a)
            .iter()
            .map(|w| (0..self.carrier.dim()).map(|j| slice(&self.carrier, a, &self.map.image_of_basis(j), w).expect("shapes agree")).collect())
            .collect()
    }

    pub fn verify(&self, tol: Tolerance) -> PropertyReport {
        let c = &self.carrier;
        let a = self.bialgebra.algebra();
        let ca = self.tensor_algebra();
        let p = self.unit_image();
        let one_c = c.one();

        let mut lhs = Vec::with_capacity(c.dim() * a.dim());
        let mut rhs = Vec::with_capacity(c.dim() * a.dim());
        for j in 0..c.dim() {
            let d = self.map.image_of_basis(j);
            let cj = Element::basis_vector(c.dim(), j);
            for k in 0..a.dim() {
                let ak = Element::basis_vector(a.dim(), k);
                lhs.push(ca.mul(&d, &tensor_elements(c, a, &one_c, &ak)));
                rhs.push(ca.mul(&p, &tensor_elements(c, a, &cj, &ak)));
            }
        }
        let podles_residual = Subspace::span(ca, &lhs, tol).equality_residual(&Subspace::span(ca, &rhs, tol));

        let table = self.slice_table();
        let slices: Vec<Element> = table.iter().flatten().cloned().collect();
        let weak_continuity_residual = Subspace::span(c, &slices, tol).containment_residual(&Subspace::full(c));

        let unit_slices: Vec<Element> = table
            .iter()
            .map(|row| {
                let mut u = c.zero();
                for (j, s) in row.iter().enumerate() {
                    u.add_scaled(one_c.coords()[j], s);
                }
                u
            })
            .collect();
        let products: Vec<Element> = unit_slices.iter().flat_map(|u| c.basis().into_iter().map(move |b| (u.clone(), b))).map(|(u, b)| c.mul(&u, &b)).collect();
        let unit_slices_residual = Subspace::span(c, &products, tol).containment_residual(&Subspace::full(c));

        let counit_residual = match self.bialgebra.counit() {
            Some(eps) => (0..c.dim())
                .map(|j| slice(c, a, &self.map.image_of_basis(j), eps).expect("shapes agree").max_abs_diff(&Element::basis_vector(c.dim(), j)))
                .fold(0.0, f64::max),
            None => f64::INFINITY,
        };

        let rank = self.map.rank(tol);
        let podles = tol.accepts(podles_residual);
        let weakly_continuous = tol.accepts(weak_continuity_residual);
        let unit_slices_span = tol.accepts(unit_slices_residual);
        PropertyReport {
            podles,
            podles_residual,
            weakly_continuous,
            weak_continuity_residual,
            regular: true,
            regular_reason: "the carrier is unital",
            counital: tol.accepts(counit_residual),
            counit_residual,
            injective: rank == c.dim(),
            rank,
            unit_slices_span,
            unit_slices_residual,
            continuity_criteria_agree: !podles || weakly_continuous == unit_slices_span,
        }
    }

    /// Largest residual of `χ ▷ (ω ▷ c) = (χ ▷ 1)(χω ▷ c)` over basis `ω` and `c`.
    pub fn character_act_residual(&self, chi: &Functional) -> Result<f64> {
        let c = &self.carrier;
        let chi1 = self.act(chi, &c.one())?;
        let mut worst: f64 = 0.0;
        for w in Functional::dual_basis_all(self.bialgebra.algebra()) {
            let chiw = self.bialgebra.convolve(chi, &w)?;
            for x in c.basis() {
                let lhs = self.act(chi, &self.act(&w, &x)?)?;
                let rhs = c.mul(&chi1, &self.act(&chiw, &x)?);
                worst = worst.max(lhs.max_abs_diff(&rhs));
            }
        }
        Ok(worst)
    }

    /// The map `ω ↦ ω ▷ c` is linear, so `ω ▷ c` for any `ω` is read off the slice table.
    fn act_from_table(table: &[Vec<Element>], c: &FdCStarAlgebra, omega: &Functional, x: &Element) -> Element {
        let mut out = c.zero();
        for (k, row) in table.iter().enumerate() {
            let wk = omega.coords()[k];
            if wk == re(0.0) {
                continue;
            }
            for (j, s) in row.iter().enumerate() {
                let xj = x.coords()[j];
                if xj != re(0.0) {
                    out.add_scaled(wk * xj, s);
                }
            }
        }
        out
    }
}

/// The coaction `λ ↦ λp` on the scalars attached to a group-like projection.
pub fn coaction_on_scalars(b: &Bialgebra, p: &Element, tol: Tolerance) -> Result<PartialCoaction> {
    let r = b.grouplike_residual(p);
    if !tol.accepts(r) {
        return Err(Error::Precondition(format!("projection is not group-like (residual {r:e})")));
    }
    let scalars = FdCStarAlgebra::commutative(1);
    let map = LinearMap::from_images(&scalars, &tensor(&scalars, b.algebra()), core::slice::from_ref(p))?;
    PartialCoaction::new(scalars, b.clone(), map, tol)
}

/// Residuals of the axioms of the dual partial action `υ ▷ c` of `(A*, Δ̂)`
/// with `⟨Δ̂υ, a ⊗ b⟩ = υ(ab)`, checked over the dual basis and the carrier basis.
pub fn check_dual_partial_action(d: &PartialCoaction) -> Result<DualActionReport> {
    let b = d.bialgebra();
    let eps = b.counit().ok_or(Error::NoCounit)?;
    let a = b.algebra();
    let c = d.carrier();
    let table = d.slice_table();
    let dual = Functional::dual_basis_all(a);
    let act = |w: &Functional, x: &Element| PartialCoaction::act_from_table(&table, c, w, x);
    let cbasis = c.basis();
    let one = c.one();

    // Δ̂(ε_m) = Σ ε_k ⊗ ε_l over matrix-unit pairs with e_k e_l = e_m.
    let coproduct: Vec<Vec<(usize, usize)>> = (0..a.dim())
        .map(|m| {
            let (blk, r, u) = a.locate(m);
            let n = a.block_sizes()[blk];
            (0..n).map(|s| (a.index(blk, r, s), a.index(blk, s, u))).collect()
        })
        .collect();

    let mut h1: f64 = 0.0;
    for x in &cbasis {
        h1 = h1.max(act(eps, x).max_abs_diff(x));
    }

    let unit_acts: Vec<Element> = dual.iter().map(|w| act(w, &one)).collect();
    let mut h2: f64 = 0.0;
    let mut h3: f64 = 0.0;
    let mut h4: f64 = 0.0;
    for (m, u) in dual.iter().enumerate() {
        for x in &cbasis {
            for y in &cbasis {
                let lhs = act(u, &c.mul(x, y));
                let mut rhs = c.zero();
                for &(k, l) in &coproduct[m] {
                    rhs = rhs.add(&c.mul(&act(&dual[k], x), &act(&dual[l], y)));
                }
                h2 = h2.max(lhs.max_abs_diff(&rhs));
            }
        }
        for w in &dual {
            let convs: Vec<(Functional, Functional)> =
                coproduct[m].iter().map(|&(k, l)| (b.convolve(&dual[l], w).expect("same algebra"), b.convolve(&dual[k], w).expect("same algebra"))).collect();
            for x in &cbasis {
                let lhs = act(u, &act(w, x));
                let mut r3 = c.zero();
                let mut r4 = c.zero();
                for (&(k, l), (lw, kw)) in coproduct[m].iter().zip(&convs) {
                    r3 = r3.add(&c.mul(&unit_acts[k], &act(lw, x)));
                    r4 = r4.add(&c.mul(&act(kw, x), &unit_acts[l]));
                }
                h3 = h3.max(lhs.max_abs_diff(&r3));
                h4 = h4.max(lhs.max_abs_diff(&r4));
            }
        }
    }
    Ok(DualActionReport { h1, h2, h3, h4 })
}

/// Largest coordinate difference between two coactions on the same carrier and bialgebra.
pub fn coaction_distance(x: &PartialCoaction, y: &PartialCoaction) -> f64 {
    x.map.max_abs_diff(&y.map)
}

/// The coaction of the inverse-semigroup bialgebra `C(Γ5)` on `ℂ²` with
/// `δ(α, β) = (α, 0) ⊗ δ_{v*v} + (0, α) ⊗ δ_v`.
pub fn gamma5_coaction(tol: Tolerance) -> Result<PartialCoaction> {
    let s = gamma5();
    let b = Bialgebra::semigroup_algebra(&s)?;
    let a = b.algebra().clone();
    let c2 = FdCStarAlgebra::commutative(2);
    let at = |n: &str| Element::basis_vector(a.dim(), s.index_of(n).expect("preset element"));
    let e1 = Element::basis_vector(2, 0);
    let e2 = Element::basis_vector(2, 1);
    let img = tensor_elements(&c2, &a, &e1, &at("v*v")).add(&tensor_elements(&c2, &a, &e2, &at("v")));
    let map = LinearMap::from_images(&c2, &tensor(&c2, &a), &[img, tensor(&c2, &a).zero()])?;
    PartialCoaction::new(c2, b, map, tol)
}

/// The slice maps `Θ_w = (id ⊗ ev_w)∘δ` of [`gamma5_coaction`] and how they compose.
#[derive(Clone, Debug, PartialEq)]
pub struct Gamma5Checks {
    pub partial_coassociativity: f64,
    /// Largest entry of `Θ_v Θ_{v*} Θ_v`, zero in the example.
    pub v_vstar_v: f64,
    /// `Θ_v Θ_{v*v} - Θ_v`.
    pub v_vstarv_minus_v: f64,
    /// Largest entry of `Θ_v`, nonzero.
    pub v: f64,
}

impl Gamma5Checks {
    /// The failure of the group-style composition law is exact: no tolerance.
    pub fn reproduces_counterexample(&self, tol: Tolerance) -> bool {
        tol.accepts(self.partial_coassociativity) && self.v_vstar_v == 0.0 && self.v_vstarv_minus_v == 0.0 && self.v > 0.0
    }
}

pub fn gamma5_checks(d: &PartialCoaction) -> Result<Gamma5Checks> {
    let s = gamma5();
    let a = d.bialgebra().algebra();
    let theta = |n: &str| -> Result<LinearMap> {
        let k = s.index_of(n).ok_or_else(|| Error::Internal(format!("missing element {n}")))?;
        d.act_map(&Functional::dual_basis(a, k))
    };
    let (v, vs, vsv) = (theta("v")?, theta("v*")?, theta("v*v")?);
    Ok(Gamma5Checks {
        partial_coassociativity: d.axiom_residuals().partial_coassociativity,
        v_vstar_v: v.compose(&vs.compose(&v)?)?.matrix().max_abs(),
        v_vstarv_minus_v: v.compose(&vsv)?.max_abs_diff(&v),
        v: v.matrix().max_abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bialgebra::FiniteGroup;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn trivial_coaction_has_every_property() {
        let b = Bialgebra::function_algebra(&FiniteGroup::cyclic(2)).unwrap();
        let c2 = FdCStarAlgebra::commutative(2);
        let d = PartialCoaction::trivial(&c2, &b);
        assert!(d.axiom_residuals().max() < 1e-12);
        let r = d.verify(tol());
        assert!(r.podles && r.weakly_continuous && r.counital && r.regular && r.injective);
        let w = Functional::new(alloc::vec![re(2.0), re(3.0)]);
        let x = Element::from_real(&[1.0, -1.0]);
        assert_eq!(d.act(&w, &x).unwrap(), x.scale(re(5.0)));
        assert!(check_dual_partial_action(&d).unwrap().holds(tol()));
    }

    #[test]
    fn gamma5_example() {
        let d = gamma5_coaction(tol()).unwrap();
        let s = gamma5();
        let a = d.bialgebra().algebra();
        let theta = |n: &str| d.act_map(&Functional::dual_basis(a, s.index_of(n).unwrap())).unwrap();
        let x = Element::from_real(&[2.0, 3.0]);
        assert_eq!(theta("v").apply(&x), Element::from_real(&[0.0, 2.0]));
        assert_eq!(theta("v*v").apply(&x), Element::from_real(&[2.0, 0.0]));
        assert!(gamma5_checks(&d).unwrap().reproduces_counterexample(tol()));
        let r = d.verify(tol());
        assert!(r.podles && r.weakly_continuous && !r.injective && !r.counital);
    }

    #[test]
    fn non_subgroup_projection_fails_partial_coassociativity() {
        let b = Bialgebra::function_algebra(&FiniteGroup::cyclic(2)).unwrap();
        let scalars = FdCStarAlgebra::commutative(1);
        let map = LinearMap::from_images(&scalars, &tensor(&scalars, b.algebra()), &[Element::basis_vector(2, 1)]).unwrap();
        assert!(matches!(PartialCoaction::new(scalars, b.clone(), map, tol()), Err(Error::CoactionAxiom { axiom: "partial coassociativity", .. })));
        assert!(coaction_on_scalars(&b, &Element::basis_vector(2, 1), tol()).is_err());
    }

    #[test]
    fn coactions_on_scalars() {
        let s3 = FiniteGroup::symmetric3();
        let b = Bialgebra::function_algebra(&s3).unwrap();
        for mask in [0b111111, 0b000001, 0b000111] {
            let p = b.subset_projection(mask).unwrap();
            let d = coaction_on_scalars(&b, &p, tol()).unwrap();
            assert!(d.verify(tol()).counital);
            assert!(check_dual_partial_action(&d).unwrap().holds(tol()));
        }
        let ga = Bialgebra::group_algebra(&s3, tol(), 0).unwrap();
        let p = ga.subset_projection(0b000111).unwrap();
        let d = coaction_on_scalars(&ga, &p, tol()).unwrap();
        assert!(check_dual_partial_action(&d).unwrap().holds(tol()));
    }

    #[test]
    fn character_act_identity_for_evaluations() {
        let g = FiniteGroup::cyclic(3);
        let b = Bialgebra::function_algebra(&g).unwrap();
        let c = FdCStarAlgebra::new(alloc::vec![1, 2]).unwrap();
        let d = PartialCoaction::trivial(&c, &b);
        for k in 0..3 {
            assert!(d.character_act_residual(&Functional::dual_basis(b.algebra(), k)).unwrap() < 1e-12);
        }
    }
}
