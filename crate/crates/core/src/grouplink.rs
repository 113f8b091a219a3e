//! Disconnected partial group actions and their correspondence with
//! counital partial coactions of `C(Γ)`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::bialgebra::{Bialgebra, FiniteGroup};
use crate::coact::PartialCoaction;
use crate::error::{Error, Result};
use crate::fdalg::{tensor, tensor_elements, Element, FdCStarAlgebra, Functional, LinearMap, Tolerance};
use crate::linalg::{re, Mat};

/// A partial action of a finite group on a finite set: `alpha[g][x] = Some(y)`
/// iff `x ∈ D_{g^{-1}}` and `α_g(x) = y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetPartialAction {
    group: FiniteGroup,
    points: Vec<String>,
    alpha: Vec<Vec<Option<usize>>>,
}

impl SetPartialAction {
    /// Validates `α_e = id`, `α_{g^{-1}} = α_g^{-1}` and `α_g α_h ⊆ α_{gh}`.
    pub fn new(group: FiniteGroup, points: Vec<String>, alpha: Vec<Vec<Option<usize>>>) -> Result<Self> {
        let n = points.len();
        if n == 0 {
            return Err(Error::PartialAction("the point set is empty".into()));
        }
        if alpha.len() != group.order() {
            return Err(Error::PartialAction(format!("{} maps for a group of order {}", alpha.len(), group.order())));
        }
        for (g, row) in alpha.iter().enumerate() {
            if row.len() != n {
                return Err(Error::PartialAction(format!("map for {} has {} entries, expected {n}", group.name(g), row.len())));
            }
            if let Some(y) = row.iter().flatten().find(|&&y| y >= n) {
                return Err(Error::PartialAction(format!("map for {} sends a point to index {y}", group.name(g))));
            }
        }
        let s = SetPartialAction { group, points, alpha };
        s.validate()?;
        Ok(s)
    }

    fn validate(&self) -> Result<()> {
        let g = &self.group;
        let n = self.points.len();
        let e = g.identity();
        if (0..n).any(|x| self.alpha[e][x] != Some(x)) {
            return Err(Error::PartialAction("the identity must act as the identity on every point".into()));
        }
        for a in 0..g.order() {
            let ai = g.inv(a);
            for x in 0..n {
                if let Some(y) = self.alpha[a][x] {
                    if self.alpha[ai][y] != Some(x) {
                        return Err(Error::PartialAction(format!(
                            "map for {} is not inverse to map for {} at point {}",
                            g.name(ai),
                            g.name(a),
                            self.points[y]
                        )));
                    }
                }
            }
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                for x in 0..n {
                    if let Some(y) = self.alpha[b][x].and_then(|y| self.alpha[a][y]) {
                        if self.alpha[g.mul(a, b)][x] != Some(y) {
                            return Err(Error::PartialAction(format!(
                                "composition of {} after {} at point {} is not extended by {}",
                                g.name(a),
                                g.name(b),
                                self.points[x],
                                g.name(g.mul(a, b))
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Global action given by a permutation for every group element.
    pub fn global(group: FiniteGroup, points: Vec<String>, perms: &[Vec<usize>]) -> Result<Self> {
        let alpha = perms.iter().map(|p| p.iter().map(|&y| Some(y)).collect()).collect();
        Self::new(group, points, alpha)
    }

    /// Restriction of a partial action to a subset `Y`: `α_g` restricted to `{x ∈ Y : α_g(x) ∈ Y}`.
    pub fn restrict(&self, keep: &[usize]) -> Result<Self> {
        let index = |x: usize| keep.iter().position(|&k| k == x);
        let points = keep.iter().map(|&k| self.points[k].clone()).collect();
        let alpha = self
            .alpha
            .iter()
            .map(|row| keep.iter().map(|&x| row[x].and_then(index)).collect())
            .collect();
        Self::new(self.group.clone(), points, alpha)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `α_g(x)` when `x ∈ D_{g^{-1}}`.
    pub fn apply(&self, g: usize, x: usize) -> Option<usize> {
        self.alpha[g][x]
    }

    /// Membership of `x` in `D_g`, the range of `α_g`.
    pub fn in_domain(&self, g: usize, x: usize) -> bool {
        self.alpha[self.group.inv(g)][x].is_some()
    }
}

/// A family of central projections `p_g` and *-isomorphisms `θ_g: p_{g^{-1}}C -> p_gC`.
///
/// Each `θ_g` is stored as a total map on `C` that vanishes off `p_{g^{-1}}C`.
#[derive(Clone, Debug)]
pub struct DisconnectedPartialAction {
    group: FiniteGroup,
    carrier: FdCStarAlgebra,
    projections: Vec<Element>,
    maps: Vec<LinearMap>,
    set_level: Option<SetPartialAction>,
}

fn mult_map(c: &FdCStarAlgebra, p: &Element) -> LinearMap {
    let images: Vec<Element> = c.basis().iter().map(|x| c.mul(p, x)).collect();
    LinearMap::from_images(c, c, &images).expect("shapes agree")
}

fn compose3(a: &LinearMap, b: &LinearMap, c: &LinearMap) -> Mat {
    a.matrix().matmul(b.matrix()).matmul(c.matrix())
}

impl DisconnectedPartialAction {
    pub fn new(group: FiniteGroup, carrier: FdCStarAlgebra, projections: Vec<Element>, maps: Vec<LinearMap>, tol: Tolerance) -> Result<Self> {
        let pa = DisconnectedPartialAction { group, carrier, projections, maps, set_level: None };
        pa.validate(tol)?;
        Ok(pa)
    }

    /// Compiles a set-level partial action: `θ_g(δ_x) = δ_{α_g(x)}` on `C(X)`.
    pub fn from_set_action(s: &SetPartialAction, tol: Tolerance) -> Result<Self> {
        let n = s.len();
        let c = FdCStarAlgebra::commutative(n);
        let g = s.group();
        let projections = (0..g.order())
            .map(|a| Element::from_real(&(0..n).map(|x| if s.in_domain(a, x) { 1.0 } else { 0.0 }).collect::<Vec<_>>()))
            .collect();
        let maps = (0..g.order())
            .map(|a| {
                let mut m = Mat::zeros(n, n);
                for x in 0..n {
                    if let Some(y) = s.apply(a, x) {
                        m[(y, x)] = re(1.0);
                    }
                }
                LinearMap::new(c.clone(), c.clone(), m).expect("square")
            })
            .collect();
        let mut pa = Self::new(g.clone(), c, projections, maps, tol)?;
        pa.set_level = Some(s.clone());
        Ok(pa)
    }

    fn validate(&self, tol: Tolerance) -> Result<()> {
        let g = &self.group;
        let c = &self.carrier;
        let fail = |msg: String| Err(Error::PartialAction(msg));
        if self.projections.len() != g.order() || self.maps.len() != g.order() {
            return fail(format!("expected {} projections and maps", g.order()));
        }
        for (a, p) in self.projections.iter().enumerate() {
            c.check(p)?;
            if !c.is_central_projection(p, tol) {
                return fail(format!("p_{} is not a central projection", g.name(a)));
            }
        }
        for m in &self.maps {
            c.same_as(m.source())?;
            c.same_as(m.target())?;
        }
        let e = g.identity();
        if self.projections[e].max_abs_diff(&c.one()) > tol.get() || self.maps[e].max_abs_diff(&LinearMap::identity(c)) > tol.get() {
            return fail("the identity must have p_e = 1 and θ_e = id".into());
        }
        let mults: Vec<LinearMap> = self.projections.iter().map(|p| mult_map(c, p)).collect();
        for a in 0..g.order() {
            let ai = g.inv(a);
            let th = &self.maps[a];
            let name = g.name(a);
            let checks = [
                ("vanishes off its domain", th.matrix().matmul(mults[ai].matrix()).max_abs_diff(th.matrix())),
                ("lands in its range", mults[a].matrix().matmul(th.matrix()).max_abs_diff(th.matrix())),
                ("is a *-homomorphism", th.homomorphism_residual()),
                ("is inverted by the inverse element", self.maps[ai].matrix().matmul(th.matrix()).max_abs_diff(mults[ai].matrix())),
            ];
            for (what, r) in checks {
                if !tol.accepts(r) {
                    return fail(format!("θ_{name} {what} (residual {r:e})"));
                }
            }
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                let (ai, bi, ab) = (g.inv(a), g.inv(b), g.mul(a, b));
                let l1 = compose3(&self.maps[ai], &self.maps[a], &self.maps[b]);
                let r1 = self.maps[ai].matrix().matmul(self.maps[ab].matrix());
                let l2 = compose3(&self.maps[a], &self.maps[b], &self.maps[bi]);
                let r2 = self.maps[ab].matrix().matmul(self.maps[bi].matrix());
                let r = l1.max_abs_diff(&r1).max(l2.max_abs_diff(&r2));
                if !tol.accepts(r) {
                    return fail(format!("composition law fails for ({}, {}) (residual {r:e})", g.name(a), g.name(b)));
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn carrier(&self) -> &FdCStarAlgebra {
        &self.carrier
    }

    pub fn projection(&self, g: usize) -> &Element {
        &self.projections[g]
    }

    pub fn map(&self, g: usize) -> &LinearMap {
        &self.maps[g]
    }

    pub fn set_level(&self) -> Option<&SetPartialAction> {
        self.set_level.as_ref()
    }

    /// Largest coordinate difference between the projections and maps of two actions.
    pub fn distance(&self, other: &DisconnectedPartialAction) -> f64 {
        if self.group != other.group || self.carrier != other.carrier {
            return f64::INFINITY;
        }
        let p = self.projections.iter().zip(&other.projections).map(|(x, y)| x.max_abs_diff(y)).fold(0.0, f64::max);
        self.maps.iter().zip(&other.maps).map(|(x, y)| x.max_abs_diff(y)).fold(p, f64::max)
    }

    /// `δ(c) = Σ_g θ_g(p_{g^{-1}}c) ⊗ δ_g` as a counital partial coaction of `C(Γ)`.
    pub fn to_coaction(&self, tol: Tolerance) -> Result<PartialCoaction> {
        let b = Bialgebra::function_algebra(&self.group)?;
        let c = &self.carrier;
        let a = b.algebra();
        let n = self.group.order();
        let images: Vec<Element> = c
            .basis()
            .iter()
            .map(|x| {
                let mut out = tensor(c, a).zero();
                for (g, th) in self.maps.iter().enumerate() {
                    out = out.add(&tensor_elements(c, a, &th.apply(x), &Element::basis_vector(n, g)));
                }
                out
            })
            .collect();
        let map = LinearMap::from_images(c, &tensor(c, a), &images)?;
        PartialCoaction::new(c.clone(), b, map, tol)
    }

    /// `p_g = ev_g ▷ 1`, `θ_g = ev_g ▷ ·` for a counital partial coaction of `C(Γ)`.
    pub fn from_coaction(d: &PartialCoaction, tol: Tolerance) -> Result<Self> {
        let group = d
            .bialgebra()
            .function_group()
            .ok_or_else(|| Error::Precondition("the bialgebra is not the function algebra of a group".into()))?
            .clone();
        let report = d.verify(tol);
        if !report.counital {
            return Err(Error::Precondition(format!("the partial coaction is not counital (residual {:e})", report.counit_residual)));
        }
        let a = d.bialgebra().algebra();
        let c = d.carrier();
        let mut projections = Vec::with_capacity(group.order());
        let mut maps = Vec::with_capacity(group.order());
        for g in 0..group.order() {
            let ev = Functional::dual_basis(a, g);
            projections.push(d.act(&ev, &c.one())?);
            maps.push(d.act_map(&ev)?);
        }
        Self::new(group, c.clone(), projections, maps, tol)
    }
}

/// Strong or weak morphisms of partial coactions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MorphismMode {
    Strong,
    Weak,
}

/// Residual of the group-level morphism criteria for `π: B -> C` between the
/// actions `(p, β)` on `B` and `(q, γ)` on `C`.
pub fn group_morphism_residual(pi: &LinearMap, source: &DisconnectedPartialAction, target: &DisconnectedPartialAction, mode: MorphismMode) -> Result<f64> {
    source.carrier.same_as(pi.source())?;
    target.carrier.same_as(pi.target())?;
    if source.group != target.group {
        return Err(Error::Precondition("the two actions are of different groups".into()));
    }
    let g = &source.group;
    let cb = &target.carrier;
    let pi1 = pi.apply(&source.carrier.one());
    let mut worst: f64 = 0.0;
    for a in 0..g.order() {
        let ai = g.inv(a);
        let pi_pa = pi.apply(&source.projections[a]);
        let gamma = &target.maps[a];
        match mode {
            MorphismMode::Strong => {
                worst = worst.max(pi_pa.max_abs_diff(&cb.mul(&target.projections[a], &pi1)));
            }
            MorphismMode::Weak => {
                let lhs = cb.mul(&pi1, &gamma.apply(&cb.mul(&target.projections[ai], &pi1)));
                worst = worst.max(lhs.max_abs_diff(&pi_pa));
                worst = worst.max(pi_pa.max_abs_diff(&gamma.apply(&pi.apply(&source.projections[ai]))));
            }
        }
        // π ∘ β_g ⊆ γ_g ∘ π: π maps the domain of β_g into that of γ_g, where both agree.
        let pi_dom = pi.apply(&source.projections[ai]);
        worst = worst.max(cb.mul(&target.projections[ai], &pi_dom).max_abs_diff(&pi_dom));
        let lhs = pi.matrix().matmul(source.maps[a].matrix());
        let rhs = gamma.matrix().matmul(pi.matrix()).matmul(mult_map(&source.carrier, &source.projections[ai]).matrix());
        worst = worst.max(lhs.max_abs_diff(&rhs));
    }
    Ok(worst)
}

pub fn check_group_morphism(pi: &LinearMap, source: &DisconnectedPartialAction, target: &DisconnectedPartialAction, mode: MorphismMode, tol: Tolerance) -> Result<bool> {
    Ok(tol.accepts(group_morphism_residual(pi, source, target, mode)?))
}

/// The point-level map `x ↦ f(x)` between finite sets as the *-homomorphism
/// `C(X) -> C(Y)`, `δ_x ↦ Σ_{y : f(y) = x} δ_y` (pull-back along `f: Y -> X`).
pub fn pullback(source_points: usize, target_to_source: &[Option<usize>]) -> LinearMap {
    let c = FdCStarAlgebra::commutative(source_points);
    let d = FdCStarAlgebra::commutative(target_to_source.len());
    let mut m = Mat::zeros(d.dim(), c.dim());
    for (y, x) in target_to_source.iter().enumerate() {
        if let Some(x) = x {
            m[(y, *x)] = re(1.0);
        }
    }
    LinearMap::new(c, d, m).expect("shapes agree")
}

/// Index list `0..n` as point names `x0, x1, ...`.
pub fn point_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

/// A set-level partial action in which every non-identity element has empty domain.
pub fn trivial_partial_action(group: FiniteGroup, points: Vec<String>) -> Result<SetPartialAction> {
    let n = points.len();
    let e = group.identity();
    let alpha = (0..group.order()).map(|g| if g == e { (0..n).map(Some).collect() } else { vec![None; n] }).collect();
    SetPartialAction::new(group, points, alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn swap() -> SetPartialAction {
        SetPartialAction::global(FiniteGroup::cyclic(2), point_names(2), &[vec![0, 1], vec![1, 0]]).unwrap()
    }

    #[test]
    fn global_swap_gives_dual_coaction() {
        let pa = DisconnectedPartialAction::from_set_action(&swap(), tol()).unwrap();
        let d = pa.to_coaction(tol()).unwrap();
        assert!(d.verify(tol()).counital);
        let c = d.carrier();
        let a = d.bialgebra().algebra();
        let x0 = Element::basis_vector(2, 0);
        let expected = tensor_elements(c, a, &x0, &Element::basis_vector(2, 0)).add(&tensor_elements(c, a, &Element::basis_vector(2, 1), &Element::basis_vector(2, 1)));
        assert_eq!(d.apply(&x0), expected);
        assert!(DisconnectedPartialAction::from_coaction(&d, tol()).unwrap().distance(&pa) < 1e-12);
    }

    #[test]
    fn one_point_empty_domain() {
        let s = trivial_partial_action(FiniteGroup::cyclic(2), vec!["x".to_string()]).unwrap();
        let pa = DisconnectedPartialAction::from_set_action(&s, tol()).unwrap();
        let d = pa.to_coaction(tol()).unwrap();
        let c = d.carrier();
        assert_eq!(d.apply(&c.one()), Element::from_real(&[1.0, 0.0]));
        assert_eq!(pa.projection(1).max_abs(), 0.0);
    }

    #[test]
    fn rejects_broken_composition() {
        // Z/3 on one point where a acts but a2 does not: violates inverses.
        let g = FiniteGroup::cyclic(3);
        let alpha = vec![vec![Some(0)], vec![Some(0)], vec![None]];
        assert!(SetPartialAction::new(g, point_names(1), alpha).is_err());
    }

    #[test]
    fn trivial_coaction_is_global_action() {
        let b = Bialgebra::function_algebra(&FiniteGroup::cyclic(3)).unwrap();
        let c = FdCStarAlgebra::new(vec![1, 2]).unwrap();
        let d = PartialCoaction::trivial(&c, &b);
        let pa = DisconnectedPartialAction::from_coaction(&d, tol()).unwrap();
        for g in 0..3 {
            assert!(pa.projection(g).max_abs_diff(&c.one()) < 1e-12);
            assert!(pa.map(g).max_abs_diff(&LinearMap::identity(&c)) < 1e-12);
        }
    }

    #[test]
    fn embedding_into_globalization_is_weak_not_strong() {
        let one = trivial_partial_action(FiniteGroup::cyclic(2), vec!["x".to_string()]).unwrap();
        let src = DisconnectedPartialAction::from_set_action(&one, tol()).unwrap();
        let tgt = DisconnectedPartialAction::from_set_action(&swap(), tol()).unwrap();
        let iota = pullback(1, &[Some(0), None]);
        assert!(check_group_morphism(&iota, &src, &tgt, MorphismMode::Weak, tol()).unwrap());
        assert!(!check_group_morphism(&iota, &src, &tgt, MorphismMode::Strong, tol()).unwrap());
        let id = LinearMap::identity(tgt.carrier());
        assert!(check_group_morphism(&id, &tgt, &tgt, MorphismMode::Strong, tol()).unwrap());
        assert!(check_group_morphism(&id, &tgt, &tgt, MorphismMode::Weak, tol()).unwrap());
    }
}
