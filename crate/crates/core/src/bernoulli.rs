//! The classical partial Bernoulli shift of a finite group: the translation
//! coaction on functions of subsets of the group, the admissible projection
//! `p`, the restriction `δ^ε` to subsets containing the identity, and its
//! universal property among counital partial coactions.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::bialgebra::{Bialgebra, FiniteGroup};
use crate::coact::PartialCoaction;
use crate::dilation::{morphism_residual, restrict, MorphismMode, Restriction};
use crate::error::{Error, Result};
use crate::linalg::re;
use crate::fdalg::{generated_star_subalgebra, tensor, tensor_elements, tensor_maps, Element, FdCStarAlgebra, Functional, LinearMap, Tolerance};

pub const DEFAULT_CAP: usize = 4;

/// Residuals of the defining identities of the shift.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BernoulliInvariants {
    /// Projection plus `[(p ⊗ 1), (id ⊗ Δ)(p)] = 0`.
    pub admissible: f64,
    /// `(δ ⊗ id)(p) = (id ⊗ Δ)(p)`.
    pub coaction_identity: f64,
    /// `δ(p_ε) = p`.
    pub p_eps_image: f64,
    /// `(id ⊗ ε)(p) = p_ε`.
    pub counit_of_p: f64,
    /// `δ(1) = 1 ⊗ 1`.
    pub unital: f64,
    pub podles: bool,
    pub counital: bool,
}

impl BernoulliInvariants {
    pub fn max(&self) -> f64 {
        self.admissible.max(self.coaction_identity).max(self.p_eps_image).max(self.counit_of_p).max(self.unital)
    }
}

#[derive(Clone, Debug)]
pub struct BernoulliData {
    group: FiniteGroup,
    bialgebra: Bialgebra,
    algebra: FdCStarAlgebra,
    p_gamma: Vec<Element>,
    p: Element,
    coaction: PartialCoaction,
    p_eps: Element,
    restricted: Restriction,
    /// Bitmasks of the subsets containing the identity, in carrier order.
    restricted_subsets: Vec<u64>,
    invariants: BernoulliInvariants,
}

/// `S ↦ gS` on bitmasks over the group's element order.
fn translate(g: &FiniteGroup, h: usize, s: u64) -> u64 {
    (0..g.order()).filter(|&k| s >> k & 1 == 1).fold(0, |acc, k| acc | 1 << g.mul(h, k))
}

/// Residual of `q² = q = q*` and `[(q ⊗ 1), (id ⊗ Δ)(q)] = 0` for `q ∈ C ⊗ A`.
pub fn admissible_residual(c: &FdCStarAlgebra, b: &Bialgebra, q: &Element) -> Result<f64> {
    let a = b.algebra();
    let ca = tensor(c, a);
    if q.len() != ca.dim() {
        return Err(Error::Shape(format!("expected an element of dimension {}, found {}", ca.dim(), q.len())));
    }
    let proj = ca.mul(q, q).max_abs_diff(q).max(ca.adjoint(q).max_abs_diff(q));
    let caa = tensor(&ca, a);
    let q1 = tensor_elements(&ca, a, q, &a.one());
    let dq = tensor_maps(&LinearMap::identity(c), b.comult()).apply(q);
    Ok(proj.max(caa.commutator(&q1, &dq).max_abs()))
}

pub fn check_admissible(c: &FdCStarAlgebra, b: &Bialgebra, q: &Element, tol: Tolerance) -> Result<bool> {
    Ok(tol.accepts(admissible_residual(c, b, q)?))
}

/// Names a subset bitmask by its elements, as `{e,t}`.
pub fn subset_name(g: &FiniteGroup, s: u64) -> String {
    let names: Vec<&str> = (0..g.order()).filter(|&k| s >> k & 1 == 1).map(|k| g.name(k)).collect();
    format!("{{{}}}", names.join(","))
}

impl BernoulliData {
    /// The shift `δ(f)(S, g) = f(g⁻¹S)` on `C({0,1}^Γ)`; rejects groups above `cap`.
    pub fn build(group: &FiniteGroup, cap: usize, tol: Tolerance) -> Result<Self> {
        let n = group.order();
        if n > cap {
            return Err(Error::Precondition(format!("group order {n} exceeds the cap {cap}")));
        }
        let bialgebra = Bialgebra::function_algebra(group)?;
        let a = bialgebra.algebra().clone();
        let size = 1usize << n;
        let algebra = FdCStarAlgebra::commutative(size);
        let ca = tensor(&algebra, &a);
        let images: Vec<Element> = (0..size as u64)
            .map(|t| {
                let mut x = alloc::vec![re(0.0); ca.dim()];
                for h in 0..n {
                    x[translate(group, h, t) as usize * n + h] = re(1.0);
                }
                Element::from_coords(x)
            })
            .collect();
        let map = LinearMap::from_images(&algebra, &ca, &images)?;
        let coaction = PartialCoaction::new(algebra.clone(), bialgebra.clone(), map, tol)?;

        let indicator = |gamma: usize| Element::from_real(&(0..size).map(|s| (s >> gamma & 1) as f64).collect::<Vec<_>>());
        let p_gamma: Vec<Element> = (0..n).map(indicator).collect();
        let mut p = ca.zero();
        for (gamma, pg) in p_gamma.iter().enumerate() {
            p = p.add(&tensor_elements(&algebra, &a, pg, &Element::basis_vector(n, gamma)));
        }
        let p_eps = p_gamma[group.identity()].clone();
        let restricted = restrict(&coaction, &p_eps, tol)?;
        let restricted_subsets = (0..size as u64).filter(|s| s >> group.identity() & 1 == 1).collect();

        let lhs = tensor_maps(coaction.map(), &LinearMap::identity(&a)).apply(&p);
        let rhs = tensor_maps(&LinearMap::identity(&algebra), bialgebra.comult()).apply(&p);
        let eps = bialgebra.counit().expect("function algebras are counital");
        let report = coaction.verify(tol);
        let invariants = BernoulliInvariants {
            admissible: admissible_residual(&algebra, &bialgebra, &p)?,
            coaction_identity: lhs.max_abs_diff(&rhs),
            p_eps_image: coaction.apply(&p_eps).max_abs_diff(&p),
            counit_of_p: crate::fdalg::slice(&algebra, &a, &p, eps)?.max_abs_diff(&p_eps),
            unital: coaction.unit_image().max_abs_diff(&ca.one()),
            podles: report.podles,
            counital: report.counital,
        };
        if !tol.accepts(invariants.max()) || !invariants.podles || !invariants.counital {
            return Err(Error::Internal(format!("the Bernoulli shift fails its invariants: {invariants:?}")));
        }
        Ok(BernoulliData { group: group.clone(), bialgebra, algebra, p_gamma, p, coaction, p_eps, restricted, restricted_subsets, invariants })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn bialgebra(&self) -> &Bialgebra {
        &self.bialgebra
    }

    pub fn algebra(&self) -> &FdCStarAlgebra {
        &self.algebra
    }

    pub fn p_gamma(&self, gamma: usize) -> &Element {
        &self.p_gamma[gamma]
    }

    pub fn p(&self) -> &Element {
        &self.p
    }

    pub fn coaction(&self) -> &PartialCoaction {
        &self.coaction
    }

    pub fn p_eps(&self) -> &Element {
        &self.p_eps
    }

    /// `δ^ε` on `p_ε C(B_Γ)`.
    pub fn restricted(&self) -> &PartialCoaction {
        &self.restricted.coaction
    }

    pub fn restricted_inclusion(&self) -> &LinearMap {
        &self.restricted.inclusion
    }

    pub fn restricted_subsets(&self) -> &[u64] {
        &self.restricted_subsets
    }

    pub fn invariants(&self) -> &BernoulliInvariants {
        &self.invariants
    }

    /// `p(p_ε ⊗ 1)` in `C(B^ε_Γ) ⊗ C(Γ)` coordinates.
    fn initial_element(&self) -> Element {
        let a = self.bialgebra.algebra();
        let big = tensor(&self.algebra, a);
        let cut = big.mul(&self.p, &tensor_elements(&self.algebra, a, &self.p_eps, &a.one()));
        Element::from_coords(tensor_maps(&self.restricted.inclusion, &LinearMap::identity(a)).matrix().adjoint().apply(cut.coords()))
    }

    /// The unique unital *-homomorphism `π: C(B^ε_Γ) -> C` with
    /// `(π ⊗ id)(p(p_ε ⊗ 1)) = δ_C(1)`, built from the joint spectral projections
    /// of `q_γ = ev_γ ▷ 1`.
    pub fn universal_map(&self, dc: &PartialCoaction, tol: Tolerance) -> Result<UniversalMap> {
        let a = self.bialgebra.algebra();
        dc.bialgebra().algebra().same_as(a)?;
        if dc.bialgebra().comult().max_abs_diff(self.bialgebra.comult()) > 1e-12 {
            return Err(Error::Precondition("the coaction is not over the function algebra of this group".into()));
        }
        let report = dc.verify(tol);
        if !report.counital {
            return Err(Error::Precondition(format!("the coaction is not counital (residual {:e})", report.counit_residual)));
        }
        let c = dc.carrier();
        let one = c.one();
        let q: Vec<Element> = (0..self.group.order()).map(|g| dc.act(&Functional::dual_basis(a, g), &one)).collect::<Result<_>>()?;
        let images: Vec<Element> = self
            .restricted_subsets
            .iter()
            .map(|&s| {
                (0..self.group.order()).fold(one.clone(), |acc, g| {
                    let f = if s >> g & 1 == 1 { q[g].clone() } else { one.sub(&q[g]) };
                    c.mul(&acc, &f)
                })
            })
            .collect();
        let source = self.restricted.coaction.carrier();
        let pi = LinearMap::from_images(source, c, &images)?;
        let homomorphism_residual = pi.homomorphism_residual().max(pi.unital_residual());
        if !tol.accepts(homomorphism_residual) {
            return Err(Error::Internal(format!("no consistent assignment: the joint spectral map is not a unital *-homomorphism (residual {homomorphism_residual:e})")));
        }
        let initial_residual = tensor_maps(&pi, &LinearMap::identity(a)).apply(&self.initial_element()).max_abs_diff(&dc.unit_image());
        let strong_residual = morphism_residual(&pi, &self.restricted.coaction, dc, MorphismMode::Strong)?;

        // Any solution must send p^γ p_ε to (id ⊗ ev_γ)δ_C(1) = q_γ, and these generate.
        let retract = LinearMap::new(self.algebra.clone(), source.clone(), self.restricted.inclusion.matrix().adjoint())?;
        let generators: Vec<Element> = self.p_gamma.iter().map(|pg| retract.apply(&self.algebra.mul(pg, &self.p_eps))).collect();
        let generator_residual = generators.iter().zip(&q).map(|(x, qg)| pi.apply(x).max_abs_diff(qg)).fold(0.0, f64::max);
        let generated = generated_star_subalgebra(source, &generators, true, tol)?.dim();
        let unique = generated == source.dim() && tol.accepts(generator_residual);
        Ok(UniversalMap { pi, homomorphism_residual, initial_residual, strong_residual, generator_residual, unique })
    }
}

#[derive(Clone, Debug)]
pub struct UniversalMap {
    pub pi: LinearMap,
    pub homomorphism_residual: f64,
    /// `(π ⊗ id)(p(p_ε ⊗ 1)) = δ_C(1)`.
    pub initial_residual: f64,
    /// `(π ⊗ id)∘δ^ε = δ_C∘π`.
    pub strong_residual: f64,
    /// `π(p^γ p_ε) = ev_γ ▷ 1`, forced for any solution.
    pub generator_residual: f64,
    /// The generators `p^γ p_ε` generate and `π` agrees with the forced values on them.
    pub unique: bool,
}

impl UniversalMap {
    pub fn holds(&self, tol: Tolerance) -> bool {
        self.unique && tol.accepts(self.homomorphism_residual.max(self.initial_residual).max(self.strong_residual))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouplink::{trivial_partial_action, DisconnectedPartialAction};
    use alloc::string::ToString;
    use alloc::vec;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn z2_dimensions_and_invariants() {
        let bd = BernoulliData::build(&FiniteGroup::cyclic(2), DEFAULT_CAP, tol()).unwrap();
        assert_eq!(bd.algebra().dim(), 4);
        assert_eq!(bd.restricted().carrier().dim(), 2);
        assert_eq!(bd.invariants().coaction_identity, 0.0);
        assert_eq!(bd.invariants().p_eps_image, 0.0);
        assert!(bd.restricted().verify(tol()).counital);
        assert_eq!(subset_name(bd.group(), bd.restricted_subsets()[1]), "{e,t}");
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(BernoulliData::build(&FiniteGroup::symmetric3(), DEFAULT_CAP, tol()), Err(Error::Precondition(_))));
        assert!(BernoulliData::build(&FiniteGroup::cyclic(3), DEFAULT_CAP, tol()).is_ok());
    }

    #[test]
    fn restricted_partial_action_for_z2() {
        let bd = BernoulliData::build(&FiniteGroup::cyclic(2), DEFAULT_CAP, tol()).unwrap();
        let pa = DisconnectedPartialAction::from_coaction(bd.restricted(), tol()).unwrap();
        // Carrier points {e}, {e,t}; p_t is the indicator of {e,t} and θ_t fixes it.
        assert!(pa.projection(1).max_abs_diff(&Element::from_real(&[0.0, 1.0])) < 1e-12);
        assert!(pa.map(1).apply(&Element::from_real(&[0.0, 1.0])).max_abs_diff(&Element::from_real(&[0.0, 1.0])) < 1e-12);
    }

    #[test]
    fn admissible_examples() {
        let bd = BernoulliData::build(&FiniteGroup::cyclic(2), DEFAULT_CAP, tol()).unwrap();
        let c = bd.algebra();
        let ca = tensor(c, bd.bialgebra().algebra());
        assert!(check_admissible(c, bd.bialgebra(), &ca.zero(), tol()).unwrap());
        assert!(check_admissible(c, bd.bialgebra(), &ca.one(), tol()).unwrap());
        assert!(check_admissible(c, bd.bialgebra(), bd.p(), tol()).unwrap());
        assert!(check_admissible(c, bd.bialgebra(), &Element::zeros(3), tol()).is_err());
    }

    #[test]
    fn universal_map_examples() {
        let g = FiniteGroup::cyclic(2);
        let bd = BernoulliData::build(&g, DEFAULT_CAP, tol()).unwrap();
        let own = bd.universal_map(bd.restricted(), tol()).unwrap();
        assert!(own.holds(tol()));
        assert!(own.pi.max_abs_diff(&LinearMap::identity(bd.restricted().carrier())) < 1e-12);

        let trivial = PartialCoaction::trivial(&FdCStarAlgebra::commutative(1), bd.bialgebra());
        let u = bd.universal_map(&trivial, tol()).unwrap();
        assert!(u.holds(tol()));
        // Evaluation at S = Γ, the last restricted subset.
        assert!(u.pi.max_abs_diff(&LinearMap::new(bd.restricted().carrier().clone(), FdCStarAlgebra::commutative(1), crate::linalg::Mat::from_row_major(1, 2, vec![re(0.0), re(1.0)])).unwrap()) < 1e-12);

        let s = trivial_partial_action(g, vec!["x".to_string()]).unwrap();
        let one_point = DisconnectedPartialAction::from_set_action(&s, tol()).unwrap().to_coaction(tol()).unwrap();
        let u = bd.universal_map(&one_point, tol()).unwrap();
        assert!(u.holds(tol()));
        assert!(u.pi.apply(&Element::from_real(&[1.0, 0.0])).max_abs_diff(&Element::from_real(&[1.0])) < 1e-12);
    }

    #[test]
    fn larger_groups() {
        for n in [3, 4] {
            let bd = BernoulliData::build(&FiniteGroup::cyclic(n), DEFAULT_CAP, tol()).unwrap();
            assert_eq!(bd.algebra().dim(), 1 << n);
            assert_eq!(bd.restricted().carrier().dim(), 1 << (n - 1));
            assert!(bd.universal_map(bd.restricted(), tol()).unwrap().holds(tol()));
        }
    }
}
