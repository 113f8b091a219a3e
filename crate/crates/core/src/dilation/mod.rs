//! Restrictions, invariance and morphisms of partial coactions, and
//! dilations: the canonical dilation, the globalization, minimalization and
//! the comparison map between minimal dilations.

mod orbit;

use alloc::format;
use alloc::vec::Vec;

pub use orbit::{orbit_globalization, OrbitGlobalization};

pub use crate::grouplink::MorphismMode;

use crate::coact::PartialCoaction;
use crate::error::{Error, Result};
use crate::fdalg::{
    generated_star_subalgebra, slice, tensor, tensor_elements, tensor_maps, wedderburn, Element, FdCStarAlgebra, Functional, LinearMap, Subspace,
    Tolerance,
};
use crate::linalg::{self, re, Mat};

/// Coordinate inclusion of the summand `eB` cut out by a central projection.
pub fn summand(b: &FdCStarAlgebra, e: &Element, tol: Tolerance) -> Result<(FdCStarAlgebra, LinearMap)> {
    let support = b.central_support(e, tol)?;
    if support.is_empty() {
        return Err(Error::Precondition("the zero projection cuts out no summand".into()));
    }
    let c = FdCStarAlgebra::new(support.iter().map(|&k| b.block_sizes()[k]).collect())?;
    let mut m = Mat::zeros(b.dim(), c.dim());
    for (ci, &bk) in support.iter().enumerate() {
        let n = b.block_sizes()[bk];
        for r in 0..n {
            for s in 0..n {
                m[(b.index(bk, r, s), c.index(ci, r, s))] = re(1.0);
            }
        }
    }
    let incl = LinearMap::new(c.clone(), b.clone(), m)?;
    Ok((c, incl))
}

fn tensor_alg(d: &PartialCoaction) -> &FdCStarAlgebra {
    d.tensor_algebra()
}

/// Residual of weak invariance of `eB`: `δ_B(eB)(eB ⊗ A) ⊆ eB ⊗ A`.
fn weak_invariance_residual(db: &PartialCoaction, e: &Element, incl: &LinearMap) -> f64 {
    let b = db.carrier();
    let a = db.bialgebra().algebra();
    let ba = tensor_alg(db);
    let e1 = tensor_elements(b, a, e, &a.one());
    let basis: Vec<Element> = (0..incl.source().dim()).map(|j| incl.image_of_basis(j)).collect();
    let mut worst: f64 = 0.0;
    for x in &basis {
        let dx = db.apply(x);
        for y in &basis {
            for k in 0..a.dim() {
                let z = ba.mul(&dx, &tensor_elements(b, a, y, &Element::basis_vector(a.dim(), k)));
                worst = worst.max(ba.mul(&e1, &z).max_abs_diff(&z));
            }
        }
    }
    worst
}

/// Residual of `δ_B(e) = δ_B(e)(e ⊗ 1)`, strong invariance of `eB`.
fn strong_invariance_residual(db: &PartialCoaction, e: &Element) -> f64 {
    let a = db.bialgebra().algebra();
    let de = db.apply(e);
    de.max_abs_diff(&tensor_alg(db).mul(&de, &tensor_elements(db.carrier(), a, e, &a.one())))
}

pub fn invariance_residual(db: &PartialCoaction, e: &Element, mode: MorphismMode, tol: Tolerance) -> Result<f64> {
    let (_, incl) = summand(db.carrier(), e, tol)?;
    Ok(match mode {
        MorphismMode::Weak => weak_invariance_residual(db, e, &incl),
        MorphismMode::Strong => strong_invariance_residual(db, e),
    })
}

pub fn check_invariance(db: &PartialCoaction, e: &Element, mode: MorphismMode, tol: Tolerance) -> Result<bool> {
    Ok(tol.accepts(invariance_residual(db, e, mode, tol)?))
}

/// A restricted coaction together with the inclusion of its carrier.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub coaction: PartialCoaction,
    pub inclusion: LinearMap,
}

/// `δ_C(c) = (e ⊗ 1)δ_B(c)(e ⊗ 1)` on the summand `C = eB`.
pub fn restrict(db: &PartialCoaction, e: &Element, tol: Tolerance) -> Result<Restriction> {
    let b = db.carrier();
    let a = db.bialgebra().algebra();
    let (c, incl) = summand(b, e, tol)?;
    let r = weak_invariance_residual(db, e, &incl);
    if !tol.accepts(r) {
        return Err(Error::Precondition(format!("the summand is not weakly invariant (residual {r:e})")));
    }
    let ba = tensor_alg(db);
    let e1 = tensor_elements(b, a, e, &a.one());
    let extract = LinearMap::new(ba.clone(), tensor(&c, a), tensor_maps(&incl, &LinearMap::identity(a)).matrix().adjoint())?;
    let images: Vec<Element> = (0..c.dim())
        .map(|j| {
            let x = db.apply(&incl.image_of_basis(j));
            extract.apply(&ba.mul(&ba.mul(&e1, &x), &e1))
        })
        .collect();
    let map = LinearMap::from_images(&c, &tensor(&c, a), &images)?;
    let coaction = PartialCoaction::new(c, db.bialgebra().clone(), map, tol)?;
    Ok(Restriction { coaction, inclusion: incl })
}

fn same_bialgebra(x: &PartialCoaction, y: &PartialCoaction) -> Result<()> {
    x.bialgebra().algebra().same_as(y.bialgebra().algebra())?;
    let r = x.bialgebra().comult().max_abs_diff(y.bialgebra().comult());
    if r > 1e-12 {
        return Err(Error::Precondition(format!("the coactions are over different comultiplications (difference {r:e})")));
    }
    Ok(())
}

/// Residual of the strong or weak morphism identity for `π: C -> B`.
pub fn morphism_residual(pi: &LinearMap, dc: &PartialCoaction, db: &PartialCoaction, mode: MorphismMode) -> Result<f64> {
    dc.carrier().same_as(pi.source())?;
    db.carrier().same_as(pi.target())?;
    same_bialgebra(dc, db)?;
    let a = dc.bialgebra().algebra();
    let b = db.carrier();
    let ba = tensor_alg(db);
    let pi_a = tensor_maps(pi, &LinearMap::identity(a));
    let mut worst: f64 = 0.0;
    let images: Vec<Element> = (0..dc.carrier().dim()).map(|j| pi.image_of_basis(j)).collect();
    for (j, pc) in images.iter().enumerate() {
        let lhs = pi_a.apply(&dc.map().image_of_basis(j));
        let rhs = db.apply(pc);
        match mode {
            MorphismMode::Strong => worst = worst.max(lhs.max_abs_diff(&rhs)),
            MorphismMode::Weak => {
                for pc2 in &images {
                    for k in 0..a.dim() {
                        let t = tensor_elements(b, a, pc2, &Element::basis_vector(a.dim(), k));
                        worst = worst.max(ba.mul(&lhs, &t).max_abs_diff(&ba.mul(&rhs, &t)));
                    }
                }
            }
        }
    }
    Ok(worst)
}

pub fn check_morphism(pi: &LinearMap, dc: &PartialCoaction, db: &PartialCoaction, mode: MorphismMode, tol: Tolerance) -> Result<bool> {
    Ok(tol.accepts(morphism_residual(pi, dc, db, mode)?))
}

/// `(id ⊗ Δ)` on `C ⊗ A`, landing in `(C ⊗ A) ⊗ A`.
fn id_comult(d: &PartialCoaction) -> LinearMap {
    tensor_maps(&LinearMap::identity(d.carrier()), d.bialgebra().comult())
}

fn require_injective(d: &PartialCoaction, tol: Tolerance) -> Result<()> {
    let rank = d.map().rank(tol);
    if rank != d.carrier().dim() {
        return Err(Error::Precondition(format!("the partial coaction is not injective (rank {rank} < {})", d.carrier().dim())));
    }
    Ok(())
}

/// `C ⊠ A` inside `C ⊗ A` with the checks made on it.
#[derive(Clone, Debug)]
pub struct CanonicalDilation {
    pub space: Subspace,
    /// Closure under products and adjoints.
    pub closure_residual: f64,
    /// Distance of `δ_C(C)` from the space.
    pub contains_image_residual: f64,
    /// Distance of the slices `(id ⊗ id ⊗ ω)(id ⊗ Δ)(x)` from the space.
    pub slice_residual: f64,
}

/// The elements `x ∈ C ⊗ A` with `[x, δ_C(1)] = 0` and
/// `(δ_C ⊗ id)(x) = (δ_C(1) ⊗ 1)(id ⊗ Δ)(x)`.
pub fn canonical_dilation(dc: &PartialCoaction, tol: Tolerance) -> Result<CanonicalDilation> {
    require_injective(dc, tol)?;
    let a = dc.bialgebra().algebra();
    let ca = tensor_alg(dc);
    let caa = tensor(ca, a);
    let p = dc.unit_image();
    let p1 = tensor_elements(ca, a, &p, &a.one());
    let lift = tensor_maps(dc.map(), &LinearMap::identity(a));
    let idd = id_comult(dc);
    let n = ca.dim();
    let mut rows = Mat::zeros(n + caa.dim(), n);
    for (j, x) in ca.basis().iter().enumerate() {
        let comm = ca.commutator(x, &p);
        let cond = lift.apply(x).sub(&caa.mul(&p1, &idd.apply(x)));
        for (i, v) in comm.coords().iter().chain(cond.coords()).enumerate() {
            rows[(i, j)] = *v;
        }
    }
    let kernel: Vec<Element> = linalg::null_space(&rows, tol.get()).into_iter().map(Element::from_coords).collect();
    let space = Subspace::span(ca, &kernel, tol);
    let closure_residual = space.closure_residual();
    let contains_image_residual = (0..dc.carrier().dim()).map(|j| space.residual(&dc.map().image_of_basis(j))).fold(0.0, f64::max);
    let mut slice_residual: f64 = 0.0;
    for x in space.basis() {
        let y = idd.apply(x);
        for w in Functional::dual_basis_all(a) {
            slice_residual = slice_residual.max(space.residual(&slice(ca, a, &y, &w)?));
        }
    }
    Ok(CanonicalDilation { space, closure_residual, contains_image_residual, slice_residual })
}

/// A genuine coaction `δ_B` with an injective *-homomorphism `ι: C -> B` onto a summand.
#[derive(Clone, Debug)]
pub struct Dilation {
    coaction: PartialCoaction,
    embed: LinearMap,
}

/// The checks behind [`Dilation::report`].
#[derive(Clone, Debug, PartialEq)]
pub struct DilationReport {
    pub is_dilation: bool,
    pub is_minimal: bool,
    pub weak_morphism_residual: f64,
    /// Dimension of the algebra generated by `ι(C)` and `A* ▷ ι(C)`.
    pub generated_dim: usize,
    pub dim: usize,
    pub block_sizes: Vec<usize>,
}

impl Dilation {
    /// Validates that `coaction` is genuine (`δ_B(1) = 1 ⊗ 1`) and that `embed`
    /// is an injective *-homomorphism onto a summand.
    pub fn new(coaction: PartialCoaction, embed: LinearMap, tol: Tolerance) -> Result<Self> {
        let b = coaction.carrier();
        b.same_as(embed.target())?;
        let unit = coaction.unit_image().max_abs_diff(&coaction.tensor_algebra().one());
        if !tol.accepts(unit) {
            return Err(Error::CoactionAxiom { axiom: "the dilated coaction is unital", residual: unit });
        }
        let hom = embed.homomorphism_residual();
        if !tol.accepts(hom) {
            return Err(Error::Precondition(format!("the embedding is not a *-homomorphism (residual {hom:e})")));
        }
        if embed.rank(tol) != embed.source().dim() {
            return Err(Error::Precondition("the embedding is not injective".into()));
        }
        if !b.is_central_projection(&embed.apply(&embed.source().one()), tol) {
            return Err(Error::Precondition("the embedding does not land on a direct summand".into()));
        }
        Ok(Dilation { coaction, embed })
    }

    pub fn big(&self) -> &FdCStarAlgebra {
        self.coaction.carrier()
    }

    pub fn coaction(&self) -> &PartialCoaction {
        &self.coaction
    }

    pub fn embed(&self) -> &LinearMap {
        &self.embed
    }

    /// `ι(C) ∪ {ω ▷ ι(c)}` over the dual basis and the carrier basis.
    fn translates(&self) -> Vec<Element> {
        let a = self.coaction.bialgebra().algebra();
        let mut out: Vec<Element> = (0..self.embed.source().dim()).map(|j| self.embed.image_of_basis(j)).collect();
        let dual = Functional::dual_basis_all(a);
        for j in 0..self.embed.source().dim() {
            let x = self.coaction.apply(&self.embed.image_of_basis(j));
            for w in &dual {
                out.push(slice(self.big(), a, &x, w).expect("shapes agree"));
            }
        }
        out
    }

    pub fn generated_dim(&self, tol: Tolerance) -> Result<usize> {
        Ok(generated_star_subalgebra(self.big(), &self.translates(), false, tol)?.dim())
    }

    pub fn report(&self, dc: &PartialCoaction, tol: Tolerance) -> Result<DilationReport> {
        let weak_morphism_residual = morphism_residual(&self.embed, dc, &self.coaction, MorphismMode::Weak)?;
        let is_dilation = tol.accepts(weak_morphism_residual);
        let generated_dim = self.generated_dim(tol)?;
        Ok(DilationReport {
            is_dilation,
            is_minimal: is_dilation && generated_dim == self.big().dim(),
            weak_morphism_residual,
            generated_dim,
            dim: self.big().dim(),
            block_sizes: self.big().block_sizes().to_vec(),
        })
    }

    /// `(ι(1) ⊗ 1)δ_B(ι(c))(ι(1) ⊗ 1) - (ι ⊗ id)δ_C(c)` over a basis.
    pub fn restriction_residual(&self, dc: &PartialCoaction) -> Result<f64> {
        same_bialgebra(dc, &self.coaction)?;
        let a = dc.bialgebra().algebra();
        let ba = self.coaction.tensor_algebra();
        let e1 = tensor_elements(self.big(), a, &self.embed.apply(&dc.carrier().one()), &a.one());
        let lift = tensor_maps(&self.embed, &LinearMap::identity(a));
        let mut worst: f64 = 0.0;
        for j in 0..dc.carrier().dim() {
            let x = self.coaction.apply(&self.embed.image_of_basis(j));
            let lhs = ba.mul(&ba.mul(&e1, &x), &e1);
            worst = worst.max(lhs.max_abs_diff(&lift.apply(&dc.map().image_of_basis(j))));
        }
        Ok(worst)
    }

    /// Count of basis pairs on which exactly one of `δ_B(b)(b' ⊗ 1)` and
    /// `(b ⊗ 1)δ_B(b')` vanishes.
    pub fn vanishing_asymmetries(&self, tol: Tolerance) -> usize {
        let b = self.big();
        let a = self.coaction.bialgebra().algebra();
        let ba = self.coaction.tensor_algebra();
        let one = a.one();
        let deltas: Vec<Element> = (0..b.dim()).map(|j| self.coaction.map().image_of_basis(j)).collect();
        let lifts: Vec<Element> = b.basis().iter().map(|x| tensor_elements(b, a, x, &one)).collect();
        let mut bad = 0;
        for i in 0..b.dim() {
            for j in 0..b.dim() {
                let l = ba.mul(&deltas[i], &lifts[j]).max_abs() <= tol.get();
                let r = ba.mul(&lifts[i], &deltas[j]).max_abs() <= tol.get();
                if l != r {
                    bad += 1;
                }
            }
        }
        bad
    }
}

/// Transports a coaction on `B` to the subalgebra presented by a block decomposition.
fn corestrict(db: &PartialCoaction, embed: &LinearMap, retract: &LinearMap, tol: Tolerance) -> Result<PartialCoaction> {
    let a = db.bialgebra().algebra();
    let r2 = tensor_maps(retract, &LinearMap::identity(a));
    let map = r2.compose(db.map())?.compose(embed)?;
    // The image must stay inside the subalgebra tensor A.
    let e2 = tensor_maps(embed, &LinearMap::identity(a));
    let back = e2.compose(&map)?;
    let direct = db.map().compose(embed)?;
    let r = back.max_abs_diff(&direct);
    if !tol.accepts(r) {
        return Err(Error::Precondition(format!("the subalgebra is not invariant under the coaction (residual {r:e})")));
    }
    PartialCoaction::new(embed.source().clone(), db.bialgebra().clone(), map, tol)
}

/// The globalization as a dilation plus its realization inside `C ⊗ A`.
#[derive(Clone, Debug)]
pub struct Globalization {
    pub dilation: Dilation,
    /// The generated subalgebra of `C ⊗ A`.
    pub space: Subspace,
    /// Block presentation of `space` into `C ⊗ A`.
    pub realize: LinearMap,
    /// Coordinates in the block presentation of an element of `space`.
    pub coordinates: LinearMap,
    pub seed: u64,
}

/// The *-subalgebra of `C ⊗ A` generated by `δ_C(C)` and the slices of
/// `(id ⊗ Δ)δ_C(c)` over the dual basis, with the coaction `id ⊗ Δ`.
pub fn globalize(dc: &PartialCoaction, tol: Tolerance, seed: u64) -> Result<Globalization> {
    require_injective(dc, tol)?;
    let a = dc.bialgebra().algebra();
    let ca = tensor_alg(dc);
    let idd = id_comult(dc);
    let dual = Functional::dual_basis_all(a);
    let mut gens = Vec::with_capacity(dc.carrier().dim() * (a.dim() + 1));
    for j in 0..dc.carrier().dim() {
        let x = dc.map().image_of_basis(j);
        let y = idd.apply(&x);
        for w in &dual {
            gens.push(slice(ca, a, &y, w)?);
        }
        gens.push(x);
    }
    let space = generated_star_subalgebra(ca, &gens, false, tol)?;
    let w = wedderburn(&space, tol, seed)?;
    let whole = PartialCoaction::new_unchecked(ca.clone(), dc.bialgebra().clone(), idd.clone())?;
    let coaction = corestrict(&whole, &w.embed, &w.retract, tol)?;
    let embed = w.retract.compose(dc.map())?;
    let dilation = Dilation::new(coaction, embed, tol)?;
    Ok(Globalization { dilation, space, realize: w.embed, coordinates: w.retract, seed })
}

/// Restricts a dilation to the subalgebra generated by `ι(C)` and `A* ▷ ι(C)`.
pub fn minimalize(d: &Dilation, tol: Tolerance, seed: u64) -> Result<Dilation> {
    let sub = generated_star_subalgebra(d.big(), &d.translates(), false, tol)?;
    let w = wedderburn(&sub, tol, seed)?;
    let coaction = corestrict(&d.coaction, &w.embed, &w.retract, tol)?;
    let embed = w.retract.compose(&d.embed)?;
    Dilation::new(coaction, embed, tol)
}

/// The canonical map from a minimal dilation to the globalization.
#[derive(Clone, Debug)]
pub struct Comparison {
    /// `φ: B -> 𝔊(C)` in the block presentation of the globalization.
    pub phi: LinearMap,
    pub rank: usize,
    /// `φ ∘ ι = δ_C` read in `C ⊗ A`.
    pub base_residual: f64,
    /// `ω ▷ φ(b) = φ(ω ▷ b)`.
    pub module_residual: f64,
    /// Distance of `φ(B)` from `𝔊(C)` inside `C ⊗ A`.
    pub range_residual: f64,
    pub multiplicative_residual: f64,
    pub surjective: bool,
    pub injective: bool,
    pub iso: bool,
    pub source_blocks: Vec<usize>,
    pub target_blocks: Vec<usize>,
}

/// `φ(b) = (ι^{-1} ⊗ id)((ι(1) ⊗ 1)δ_B(b)(ι(1) ⊗ 1))` and its certification as an isomorphism.
pub fn comparison(d: &Dilation, g: &Globalization, dc: &PartialCoaction, tol: Tolerance) -> Result<Comparison> {
    same_bialgebra(dc, &d.coaction)?;
    dc.carrier().same_as(d.embed.source())?;
    let gd = &g.dilation;
    let base = gd.restriction_residual(dc)?;
    if !tol.accepts(base) {
        return Err(Error::Precondition(format!("the globalization is not over the given coaction (residual {base:e})")));
    }
    let a = dc.bialgebra().algebra();
    let b = d.big();
    let ba = d.coaction.tensor_algebra();
    let ca = tensor_alg(dc);
    let e1 = tensor_elements(b, a, &d.embed.apply(&dc.carrier().one()), &a.one());
    let linv = linalg::left_inverse(d.embed.matrix()).ok_or_else(|| Error::Internal("embedding has no left inverse".into()))?;
    let linv = LinearMap::new(b.clone(), dc.carrier().clone(), linv)?;
    let pull = tensor_maps(&linv, &LinearMap::identity(a));
    let images: Vec<Element> = (0..b.dim())
        .map(|j| {
            let x = d.coaction.map().image_of_basis(j);
            pull.apply(&ba.mul(&ba.mul(&e1, &x), &e1))
        })
        .collect();
    let phi_ca = LinearMap::from_images(b, ca, &images)?;

    let base_residual = phi_ca.compose(&d.embed)?.max_abs_diff(dc.map());
    let range_residual = images.iter().map(|x| g.space.residual(x)).fold(0.0, f64::max);
    let idd = id_comult(dc);
    let mut module_residual: f64 = 0.0;
    for w in Functional::dual_basis_all(a) {
        for (j, image) in images.iter().enumerate() {
            let lhs = slice(ca, a, &idd.apply(image), &w)?;
            let wb = slice(b, a, &d.coaction.map().image_of_basis(j), &w)?;
            module_residual = module_residual.max(lhs.max_abs_diff(&phi_ca.apply(&wb)));
        }
    }
    let phi = g.coordinates.compose(&phi_ca)?;
    let multiplicative_residual = phi.homomorphism_residual();
    let rank = phi_ca.rank(tol);
    let surjective = rank == g.space.dim() && tol.accepts(range_residual);
    let injective = rank == b.dim();
    let iso = surjective
        && injective
        && tol.accepts(base_residual)
        && tol.accepts(module_residual)
        && tol.accepts(multiplicative_residual);
    Ok(Comparison {
        phi,
        rank,
        base_residual,
        module_residual,
        range_residual,
        multiplicative_residual,
        surjective,
        injective,
        iso,
        source_blocks: b.block_sizes().to_vec(),
        target_blocks: gd.big().block_sizes().to_vec(),
    })
}

/// Sorted copy of a block-size list, for multiset comparison.
pub fn block_multiset(blocks: &[usize]) -> Vec<usize> {
    let mut v = blocks.to_vec();
    v.sort_unstable();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bialgebra::{Bialgebra, FiniteGroup};
    use crate::grouplink::{point_names, trivial_partial_action, DisconnectedPartialAction, SetPartialAction};
    use alloc::string::ToString;
    use alloc::vec;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn one_point() -> (SetPartialAction, PartialCoaction) {
        let s = trivial_partial_action(FiniteGroup::cyclic(2), vec!["x".to_string()]).unwrap();
        let d = DisconnectedPartialAction::from_set_action(&s, tol()).unwrap().to_coaction(tol()).unwrap();
        (s, d)
    }

    fn comultiplication_coaction() -> PartialCoaction {
        let b = Bialgebra::function_algebra(&FiniteGroup::cyclic(2)).unwrap();
        PartialCoaction::new(b.algebra().clone(), b.clone(), b.comult().clone(), tol()).unwrap()
    }

    #[test]
    fn restriction_of_comultiplication_to_a_point() {
        let d = comultiplication_coaction();
        let e = Element::basis_vector(2, 0);
        let r = restrict(&d, &e, tol()).unwrap();
        let (_, expected) = one_point();
        assert!(r.coaction.map().max_abs_diff(expected.map()) < 1e-12);
        assert!(check_invariance(&d, &e, MorphismMode::Weak, tol()).unwrap());
        assert!(!check_invariance(&d, &e, MorphismMode::Strong, tol()).unwrap());
        let one = d.carrier().one();
        assert!(check_invariance(&d, &one, MorphismMode::Strong, tol()).unwrap());
        assert!(restrict(&d, &one, tol()).unwrap().coaction.map().max_abs_diff(d.map()) < 1e-12);
    }

    #[test]
    fn one_point_globalizes_to_the_swap() {
        let (_, d) = one_point();
        let g = globalize(&d, tol(), 0).unwrap();
        assert_eq!(g.dilation.big().block_sizes(), &[1, 1]);
        let rep = g.dilation.report(&d, tol()).unwrap();
        assert!(rep.is_dilation && rep.is_minimal);
        let cd = canonical_dilation(&d, tol()).unwrap();
        assert_eq!(cd.space.dim(), 2);
        assert!(cd.space.containment_residual(&g.space) < 1e-9);
        let c = comparison(&g.dilation, &g, &d, tol()).unwrap();
        assert!(c.iso);
        assert!(c.phi.max_abs_diff(&LinearMap::identity(g.dilation.big())) < 1e-9);
        assert_eq!(g.dilation.vanishing_asymmetries(tol()), 0);
    }

    #[test]
    fn global_coaction_globalizes_to_itself() {
        let s = SetPartialAction::global(FiniteGroup::cyclic(2), point_names(2), &[vec![0, 1], vec![1, 0]]).unwrap();
        let d = DisconnectedPartialAction::from_set_action(&s, tol()).unwrap().to_coaction(tol()).unwrap();
        let g = globalize(&d, tol(), 0).unwrap();
        assert_eq!(g.dilation.big().dim(), 2);
        assert!(g.dilation.report(&d, tol()).unwrap().is_minimal);
    }

    #[test]
    fn minimalize_drops_a_fixed_point() {
        // Z/2 swapping a, b and fixing c, with C the functions on {a}.
        let s = SetPartialAction::global(FiniteGroup::cyclic(2), point_names(3), &[vec![0, 1, 2], vec![1, 0, 2]]).unwrap();
        let db = DisconnectedPartialAction::from_set_action(&s, tol()).unwrap().to_coaction(tol()).unwrap();
        let e = Element::from_real(&[1.0, 0.0, 0.0]);
        let r = restrict(&db, &e, tol()).unwrap();
        let big = Dilation::new(db.clone(), r.inclusion.clone(), tol()).unwrap();
        let rep = big.report(&r.coaction, tol()).unwrap();
        assert!(rep.is_dilation && !rep.is_minimal);
        let g = globalize(&r.coaction, tol(), 0).unwrap();
        let c = comparison(&big, &g, &r.coaction, tol()).unwrap();
        assert!(c.surjective && !c.injective && !c.iso);
        assert_eq!(c.rank, 2);
        let m = minimalize(&big, tol(), 0).unwrap();
        assert_eq!(m.big().dim(), 2);
        assert!(m.report(&r.coaction, tol()).unwrap().is_minimal);
        assert!(comparison(&m, &g, &r.coaction, tol()).unwrap().iso);
    }
}
