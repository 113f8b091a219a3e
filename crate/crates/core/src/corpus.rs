//! A fixed collection of small partial actions and partial coactions of
//! `Z2`, `Z3`, `Z4` and `S3`, shared by the property suites and the CLI presets.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::bernoulli::BernoulliData;
use crate::bialgebra::{Bialgebra, FiniteGroup};
use crate::coact::{coaction_on_scalars, PartialCoaction};
use crate::dilation::restrict;
use crate::error::Result;
use crate::fdalg::{Element, Tolerance};
use crate::grouplink::{point_names, trivial_partial_action, DisconnectedPartialAction, SetPartialAction};

/// Action of `Z_n` generated by the permutation `sigma`.
fn cyclic_action(n: usize, sigma: &[usize]) -> Result<SetPartialAction> {
    let k = sigma.len();
    let mut perms = vec![(0..k).collect::<Vec<usize>>()];
    for i in 1..n {
        let prev = &perms[i - 1];
        perms.push((0..k).map(|x| sigma[prev[x]]).collect());
    }
    SetPartialAction::global(FiniteGroup::cyclic(n), point_names(k), &perms)
}

/// `S3` on `{0, 1, 2}` by permutations, in the order `e, r, r2, s, sr, sr2`.
fn s3_natural() -> Result<SetPartialAction> {
    let perms = [vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1], vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]];
    SetPartialAction::global(FiniteGroup::symmetric3(), point_names(3), &perms)
}

/// `S3` on two points through the sign.
fn s3_sign() -> Result<SetPartialAction> {
    let (id, sw) = (vec![0, 1], vec![1, 0]);
    let perms = [id.clone(), id.clone(), id, sw.clone(), sw.clone(), sw];
    SetPartialAction::global(FiniteGroup::symmetric3(), point_names(2), &perms)
}

/// Named set-level partial actions: global, empty-domain and mixed cases on at most four points.
pub fn set_actions() -> Result<Vec<(String, SetPartialAction)>> {
    let one = |g: FiniteGroup, k: usize| trivial_partial_action(g, point_names(k));
    Ok(vec![
        ("z2-swap".into(), cyclic_action(2, &[1, 0])?),
        ("z2-identity".into(), cyclic_action(2, &[0, 1])?),
        ("z2-one-point".into(), one(FiniteGroup::cyclic(2), 1)?),
        ("z2-fixed-and-free".into(), cyclic_action(2, &[0, 2, 1])?.restrict(&[0, 1])?),
        ("z2-swap-plus-fixed".into(), cyclic_action(2, &[1, 0, 2, 3])?.restrict(&[0, 2, 3])?),
        ("z3-rotation".into(), cyclic_action(3, &[1, 2, 0])?),
        ("z3-two-of-three".into(), cyclic_action(3, &[1, 2, 0])?.restrict(&[0, 1])?),
        ("z3-empty-domains".into(), one(FiniteGroup::cyclic(3), 2)?),
        ("z4-rotation".into(), cyclic_action(4, &[1, 2, 3, 0])?),
        ("z4-three-of-four".into(), cyclic_action(4, &[1, 2, 3, 0])?.restrict(&[0, 1, 2])?),
        ("z4-pairs".into(), cyclic_action(4, &[1, 0, 3, 2])?.restrict(&[0, 2, 3])?),
        ("z4-empty-domains".into(), one(FiniteGroup::cyclic(4), 1)?),
        ("s3-natural".into(), s3_natural()?),
        ("s3-two-of-three".into(), s3_natural()?.restrict(&[0, 1])?),
        ("s3-sign-one-point".into(), s3_sign()?.restrict(&[0])?),
        ("s3-empty-domains".into(), one(FiniteGroup::symmetric3(), 1)?),
    ])
}

/// The disconnected partial actions compiled from [`set_actions`].
pub fn partial_actions(tol: Tolerance) -> Result<Vec<(String, DisconnectedPartialAction)>> {
    set_actions()?.into_iter().map(|(n, s)| Ok((n, DisconnectedPartialAction::from_set_action(&s, tol)?))).collect()
}

/// Every verified partial coaction of a function algebra or a group algebra in the corpus.
pub fn coactions(tol: Tolerance, seed: u64) -> Result<Vec<(String, PartialCoaction)>> {
    let mut out = Vec::new();
    for (name, pa) in partial_actions(tol)? {
        out.push((name, pa.to_coaction(tol)?));
    }
    for (label, g) in groups() {
        let fun = Bialgebra::function_algebra(&g)?;
        let whole = PartialCoaction::new(fun.algebra().clone(), fun.clone(), fun.comult().clone(), tol)?;
        // Restrictions of the comultiplication to the functions on a subset.
        for mask in 1..(1u64 << g.order()) {
            if g.order() > 3 && mask.count_ones() > 2 && mask != (1 << g.order()) - 1 {
                continue;
            }
            let e = Element::from_real(&(0..g.order()).map(|k| (mask >> k & 1) as f64).collect::<Vec<_>>());
            out.push((format!("{label}-comult-on-{mask:b}"), restrict(&whole, &e, tol)?.coaction));
        }
        for mask in g.subgroups() {
            out.push((format!("{label}-scalars-{mask:b}"), coaction_on_scalars(&fun, &fun.subset_projection(mask)?, tol)?));
        }

        let grp = Bialgebra::group_algebra(&g, tol, seed)?;
        let whole = PartialCoaction::new(grp.algebra().clone(), grp.clone(), grp.comult().clone(), tol)?;
        for b in 0..grp.algebra().num_blocks() {
            let e = grp.algebra().block_unit(b);
            out.push((format!("{label}-dual-comult-on-block-{b}"), restrict(&whole, &e, tol)?.coaction));
        }
        out.push((format!("{label}-dual-comult"), whole));
        for mask in g.subgroups() {
            out.push((format!("{label}-dual-scalars-{mask:b}"), coaction_on_scalars(&grp, &grp.subset_projection(mask)?, tol)?));
        }
        out.push((format!("{label}-dual-trivial"), PartialCoaction::trivial(grp.algebra(), &grp)));
    }
    for n in 2..=4 {
        let bd = BernoulliData::build(&FiniteGroup::cyclic(n), n, tol)?;
        out.push((format!("bernoulli-z{n}"), bd.coaction().clone()));
        out.push((format!("bernoulli-z{n}-restricted"), bd.restricted().clone()));
    }
    Ok(out)
}

/// The four corpus groups with short labels.
pub fn groups() -> Vec<(String, FiniteGroup)> {
    vec![
        ("z2".to_string(), FiniteGroup::cyclic(2)),
        ("z3".to_string(), FiniteGroup::cyclic(3)),
        ("z4".to_string(), FiniteGroup::cyclic(4)),
        ("s3".to_string(), FiniteGroup::symmetric3()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_shapes() {
        let sets = set_actions().unwrap();
        assert!(sets.len() >= 10);
        assert!(sets.iter().all(|(_, s)| s.len() <= 4));
        let fixed = &sets.iter().find(|(n, _)| n == "z2-fixed-and-free").unwrap().1;
        assert_eq!(fixed.apply(1, 0), Some(0));
        assert_eq!(fixed.apply(1, 1), None);
    }
}
