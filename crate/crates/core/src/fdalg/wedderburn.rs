use alloc::format;
use alloc::vec::Vec;

use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::algebra::{Element, FdCStarAlgebra, Tolerance};
use super::map::LinearMap;
use super::subspace::Subspace;
use crate::error::{Error, Result};
use crate::linalg::{self, re, Mat, C64};

/// Spectral gap demanded before a random element is trusted to separate blocks.
const GAP: f64 = 1e-4;
const MAX_ATTEMPTS: usize = 8;

/// A *-subalgebra identified with an explicit direct sum of matrix blocks.
#[derive(Clone, Debug)]
pub struct Wedderburn {
    /// The abstract algebra, blocks in ascending size.
    pub algebra: FdCStarAlgebra,
    /// Injective *-homomorphism from `algebra` onto the subalgebra.
    pub embed: LinearMap,
    /// Left inverse of `embed`, orthogonal projection onto the subalgebra followed by coordinates.
    pub retract: LinearMap,
    pub seed: u64,
    /// Random draws spent across all spectral separations.
    pub attempts: usize,
}

impl Wedderburn {
    /// Unit of the subalgebra as an element of the ambient algebra.
    pub fn unit(&self) -> Element {
        self.embed.apply(&self.algebra.one())
    }
}

fn random_selfadjoint(a: &FdCStarAlgebra, basis: &[Element], rng: &mut ChaCha8Rng) -> Element {
    let mut w = a.zero();
    for b in basis {
        let r = rng.random_range(-1.0..1.0);
        let i = rng.random_range(-1.0..1.0);
        w.add_scaled(C64::new(r, i), b);
    }
    w.add(&a.adjoint(&w))
}

/// Matrix of `x ↦ z x` on an orthonormal family spanning an invariant subspace.
fn left_mult_matrix(a: &FdCStarAlgebra, z: &Element, basis: &[Element]) -> Mat {
    let k = basis.len();
    let mut m = Mat::zeros(k, k);
    for (j, bj) in basis.iter().enumerate() {
        let zb = a.mul(z, bj);
        for (i, bi) in basis.iter().enumerate() {
            m[(i, j)] = bi.inner(&zb);
        }
    }
    m
}

fn combine(a: &FdCStarAlgebra, basis: &[Element], coeffs: &[C64]) -> Element {
    let mut out = a.zero();
    for (c, b) in coeffs.iter().zip(basis) {
        out.add_scaled(*c, b);
    }
    out
}

fn spread_scale(ev: &[f64]) -> f64 {
    ev.iter().fold(0.0_f64, |m, v| m.max(v.abs())).max(1.0)
}

/// Decomposes the *-subalgebra `sub` into matrix blocks.
///
/// Minimal central projections come from the spectrum of a random central
/// self-adjoint element; inside each block a random self-adjoint element
/// gives a rank-one projection from which the matrix units are built.
/// Random draws use a ChaCha stream seeded with `seed`.
pub fn wedderburn(sub: &Subspace, tol: Tolerance, seed: u64) -> Result<Wedderburn> {
    let a = sub.ambient();
    if sub.dim() == 0 {
        return Err(Error::Precondition("the zero subspace has no block decomposition".into()));
    }
    let closure = sub.closure_residual();
    if closure > tol.get().max(1e-8) {
        return Err(Error::NotAnAlgebra { residual: closure });
    }
    let s = sub.basis();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0;

    // Center: coefficient vectors c with [Σ c_k s_k, s_j] = 0 for all j.
    let d = s.len();
    let mut rows = Mat::zeros(d * a.dim(), d);
    for (k, sk) in s.iter().enumerate() {
        for (j, sj) in s.iter().enumerate() {
            let comm = a.commutator(sk, sj);
            for (t, v) in comm.coords().iter().enumerate() {
                rows[(j * a.dim() + t, k)] = *v;
            }
        }
    }
    let center: Vec<Element> = linalg::null_space(&rows, 1e-9).iter().map(|c| combine(a, s, c)).collect();
    let k = center.len();
    if k == 0 {
        return Err(Error::Internal("subalgebra has a trivial center".into()));
    }

    // Minimal central projections.
    let mut central = None;
    while attempts < MAX_ATTEMPTS {
        attempts += 1;
        let z = random_selfadjoint(a, &center, &mut rng);
        let (ev, vecs) = linalg::hermitian_eigen(&left_mult_matrix(a, &z, &center));
        let scale = spread_scale(&ev);
        if ev.windows(2).any(|w| w[1] - w[0] < GAP * scale) {
            continue;
        }
        let mut qs = Vec::with_capacity(k);
        for col in 0..k {
            let e = combine(a, &center, &vecs.column(col));
            let mu = e.inner(&a.mul(&e, &e)) / e.inner(&e);
            qs.push(e.scale(mu.inv()));
        }
        central = Some(qs);
        break;
    }
    let Some(qs) = central else {
        return Err(Error::DegenerateSpectrum { attempts, seed });
    };

    struct Block {
        n: usize,
        units: Vec<Element>,
    }
    let mut blocks: Vec<Block> = Vec::with_capacity(k);
    for q in &qs {
        let local = Subspace::span(a, &s.iter().map(|x| a.mul(q, x)).collect::<Vec<_>>(), tol);
        let dim = local.dim();
        let n = Float::round(Float::sqrt(dim as f64)) as usize;
        if n * n != dim || n == 0 {
            return Err(Error::Internal(format!("central summand of dimension {dim} is not a full matrix block")));
        }
        let e11 = if n == 1 {
            Some(q.clone())
        } else {
            let mut found = None;
            while attempts < MAX_ATTEMPTS * (blocks.len() + 2) {
                attempts += 1;
                let h = random_selfadjoint(a, local.basis(), &mut rng);
                let (ev, vecs) = linalg::hermitian_eigen(&left_mult_matrix(a, &h, local.basis()));
                let scale = spread_scale(&ev);
                if ev[n - 1] - ev[0] > GAP * 1e-2 * scale || ev[n] - ev[n - 1] < GAP * scale {
                    continue;
                }
                let eig: Vec<Element> = (0..n).map(|c| combine(a, local.basis(), &vecs.column(c))).collect();
                let mut p = a.zero();
                for f in &eig {
                    p.add_scaled(f.inner(q), f);
                }
                found = Some(p);
                break;
            }
            found
        };
        let Some(e11) = e11 else {
            return Err(Error::DegenerateSpectrum { attempts, seed });
        };
        let scale = e11.norm();
        let mut raw = alloc::vec![linalg::scaled(re(1.0 / scale), e11.coords())];
        let cands = local.basis().iter().map(|b| a.mul(b, &e11).into_coords()).collect();
        linalg::extend_orthonormal(&mut raw, cands, 1e-9);
        if raw.len() != n {
            return Err(Error::Internal(format!("expected {n} column vectors, found {}", raw.len())));
        }
        let v: Vec<Element> = raw.into_iter().map(|c| Element::from_coords(linalg::scaled(re(scale), &c))).collect();
        let mut units = Vec::with_capacity(n * n);
        for vr in &v {
            for vs in &v {
                units.push(a.mul(vr, &a.adjoint(vs)));
            }
        }
        blocks.push(Block { n, units });
    }
    blocks.sort_by_key(|b| b.n);

    let algebra = FdCStarAlgebra::new(blocks.iter().map(|b| b.n).collect())?;
    let images: Vec<Element> = blocks.iter().flat_map(|b| b.units.iter().cloned()).collect();
    let embed = LinearMap::from_images(&algebra, a, &images)?;
    let mut r = Mat::zeros(algebra.dim(), a.dim());
    for (i, e) in images.iter().enumerate() {
        let n2 = e.inner(e).re;
        for (t, v) in e.coords().iter().enumerate() {
            r[(i, t)] = v.conj() / n2;
        }
    }
    let retract = LinearMap::new(a.clone(), algebra.clone(), r)?;
    let hom = embed.homomorphism_residual();
    if hom > tol.get().max(1e-8) {
        return Err(Error::Internal(format!("block decomposition is not multiplicative (residual {hom:e})")));
    }
    Ok(Wedderburn { algebra, embed, retract, seed, attempts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fdalg::generated_star_subalgebra;
    use alloc::vec;

    #[test]
    fn full_algebra_recovers_blocks() {
        let a = FdCStarAlgebra::new(vec![2, 1, 3]).unwrap();
        let w = wedderburn(&Subspace::full(&a), Tolerance::default(), 7).unwrap();
        assert_eq!(w.algebra.block_sizes(), &[1, 2, 3]);
        assert!(w.embed.unital_residual() < 1e-9);
        let id = w.retract.compose(&w.embed).unwrap();
        assert!(id.max_abs_diff(&LinearMap::identity(&w.algebra)) < 1e-9);
    }

    #[test]
    fn diagonal_copy_inside_tensor_square() {
        // x ↦ x ⊗ 1 embeds M_2 into M_4 with multiplicity two.
        let m2 = FdCStarAlgebra::matrix(2);
        let m4 = FdCStarAlgebra::matrix(4);
        let gens: Vec<Element> = m2
            .basis()
            .iter()
            .map(|x| Element::from_coords(m2.block(x, 0).kron(&Mat::identity(2)).data().to_vec()))
            .collect();
        let s = generated_star_subalgebra(&m4, &gens, false, Tolerance::default()).unwrap();
        let w = wedderburn(&s, Tolerance::default(), 1).unwrap();
        assert_eq!(w.algebra.block_sizes(), &[2]);
        assert!(w.unit().max_abs_diff(&m4.one()) < 1e-9);
    }

    #[test]
    fn non_unital_corner() {
        let m3 = FdCStarAlgebra::matrix(3);
        let s = generated_star_subalgebra(&m3, &[m3.unit(0, 0, 1)], false, Tolerance::default()).unwrap();
        let w = wedderburn(&s, Tolerance::default(), 3).unwrap();
        assert_eq!(w.algebra.block_sizes(), &[2]);
        let p = m3.unit(0, 0, 0).add(&m3.unit(0, 1, 1));
        assert!(w.unit().max_abs_diff(&p) < 1e-9);
    }

    #[test]
    fn rejects_non_algebra() {
        let m2 = FdCStarAlgebra::matrix(2);
        let s = Subspace::span(&m2, &[m2.unit(0, 0, 1)], Tolerance::default());
        assert!(matches!(wedderburn(&s, Tolerance::default(), 0), Err(Error::NotAnAlgebra { .. })));
    }
}
