use pcoact_core::bialgebra::{Bialgebra, FiniteGroup};
use pcoact_core::coact::coaction_distance;
use pcoact_core::corpus;
use pcoact_core::dilation::{check_morphism, comparison, globalize, orbit_globalization, MorphismMode};
use pcoact_core::fdalg::{generated_star_subalgebra, slice, tensor, tensor_elements, Element, FdCStarAlgebra, Functional, Tolerance};
use pcoact_core::grouplink::{check_group_morphism, point_names, pullback, DisconnectedPartialAction, SetPartialAction};
use pcoact_core::linalg::{c, C64};
use proptest::prelude::*;

const TAU: Tolerance = Tolerance(1e-9);

fn blocks() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..=3, 1..=3)
}

fn coords(n: usize) -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0).prop_map(|(x, y)| c(x, y)), n)
}

fn algebra_with(k: usize) -> impl Strategy<Value = (FdCStarAlgebra, Vec<Element>)> {
    blocks().prop_flat_map(move |b| {
        let a = FdCStarAlgebra::new(b).unwrap();
        let d = a.dim();
        (Just(a), prop::collection::vec(coords(d).prop_map(Element::from_coords), k))
    })
}

/// A global action of `Z_n` generated by a permutation of order dividing `n`,
/// restricted to a nonempty subset.
fn cyclic_partial_action() -> impl Strategy<Value = SetPartialAction> {
    (2usize..=4, 1usize..=4)
        .prop_flat_map(|(n, k)| (Just(n), Just((0..k).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(any::<bool>(), k)))
        .prop_filter("order must divide n", |(n, sigma, _)| {
            let mut x: Vec<usize> = (0..sigma.len()).collect();
            for _ in 0..*n {
                x = x.iter().map(|&i| sigma[i]).collect();
            }
            x.iter().enumerate().all(|(i, &j)| i == j)
        })
        .prop_map(|(n, sigma, keep)| {
            let k = sigma.len();
            let mut perms = vec![(0..k).collect::<Vec<usize>>()];
            for i in 1..n {
                let prev = perms[i - 1].clone();
                perms.push(prev.iter().map(|&x| sigma[x]).collect());
            }
            let global = SetPartialAction::global(FiniteGroup::cyclic(n), point_names(k), &perms).unwrap();
            let mut kept: Vec<usize> = (0..k).filter(|&i| keep[i]).collect();
            if kept.is_empty() {
                kept.push(0);
            }
            global.restrict(&kept).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn star_and_norm_identities((a, xs) in algebra_with(2)) {
        let (x, y) = (&xs[0], &xs[1]);
        let xy = a.mul(x, y);
        prop_assert!(a.adjoint(&xy).max_abs_diff(&a.mul(&a.adjoint(y), &a.adjoint(x))) < 1e-12);
        let (nx, ny) = (a.op_norm(x), a.op_norm(y));
        prop_assert!(a.op_norm(&xy) <= nx * ny * (1.0 + 1e-9) + 1e-12);
        let cstar = a.op_norm(&a.mul(&a.adjoint(x), x));
        prop_assert!((cstar - nx * nx).abs() <= 1e-9 * (1.0 + nx * nx));
    }

    #[test]
    fn tensor_is_associative_in_coordinates((a, xs) in algebra_with(1), (b, ys) in algebra_with(1), (c3, zs) in algebra_with(1)) {
        let ab = tensor(&a, &b);
        let bc = tensor(&b, &c3);
        prop_assert_eq!(tensor(&ab, &c3).dim(), tensor(&a, &bc).dim());
        let left = tensor_elements(&ab, &c3, &tensor_elements(&a, &b, &xs[0], &ys[0]), &zs[0]);
        let right = tensor_elements(&a, &bc, &xs[0], &tensor_elements(&b, &c3, &ys[0], &zs[0]));
        prop_assert!(left.max_abs_diff(&right) < 1e-12);
    }

    #[test]
    fn slice_is_a_left_module_map((b, bs) in algebra_with(1), (a, ws) in algebra_with(1), seed in 0u64..1000) {
        let ba = tensor(&b, &a);
        let x = Element::from_coords((0..ba.dim()).map(|i| c(((i as u64 * 7 + seed) % 5) as f64 - 2.0, (i % 3) as f64)).collect());
        let w = Functional::new(ws[0].coords().to_vec());
        let lhs = slice(&b, &a, &ba.mul(&tensor_elements(&b, &a, &bs[0], &a.one()), &x), &w).unwrap();
        let rhs = b.mul(&bs[0], &slice(&b, &a, &x, &w).unwrap());
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-9);
    }

    #[test]
    fn generated_subalgebra_is_idempotent((a, xs) in algebra_with(1), unit in any::<bool>()) {
        let s = generated_star_subalgebra(&a, &xs, unit, TAU).unwrap();
        let t = generated_star_subalgebra(&a, s.basis(), false, TAU).unwrap();
        prop_assert_eq!(s.dim(), t.dim());
        prop_assert!(s.closure_residual() < 1e-8);
    }

    #[test]
    fn convolution_is_associative(ws in prop::collection::vec(coords(6), 3), group_algebra in any::<bool>()) {
        let g = FiniteGroup::symmetric3();
        let b = if group_algebra { Bialgebra::group_algebra(&g, TAU, 0).unwrap() } else { Bialgebra::function_algebra(&g).unwrap() };
        let dim = b.algebra().dim();
        let f: Vec<Functional> = ws.iter().map(|w| Functional::new(w[..dim].to_vec())).collect();
        let l = b.convolve(&b.convolve(&f[0], &f[1]).unwrap(), &f[2]).unwrap();
        let r = b.convolve(&f[0], &b.convolve(&f[1], &f[2]).unwrap()).unwrap();
        prop_assert!(l.max_abs_diff(&r) < 1e-9);
        let eps = b.counit().unwrap();
        prop_assert!(b.convolve(eps, &f[0]).unwrap().max_abs_diff(&f[0]) < 1e-9);
    }

    #[test]
    fn random_partial_actions_round_trip_and_globalize(s in cyclic_partial_action()) {
        let pa = DisconnectedPartialAction::from_set_action(&s, TAU).unwrap();
        let d = pa.to_coaction(TAU).unwrap();
        let back = DisconnectedPartialAction::from_coaction(&d, TAU).unwrap();
        prop_assert!(pa.distance(&back) < 1e-10);
        prop_assert!(coaction_distance(&d, &back.to_coaction(TAU).unwrap()) < 1e-10);
        let g = globalize(&d, TAU, 0).unwrap();
        let o = orbit_globalization(&pa, TAU).unwrap();
        let cmp = comparison(&o.dilation, &g, &d, TAU).unwrap();
        prop_assert!(cmp.iso);
    }
}

/// Inclusions of restricted partial actions into the global action they come from.
#[test]
fn group_and_coaction_morphism_checks_agree() {
    let swap_fix = SetPartialAction::global(FiniteGroup::cyclic(2), point_names(3), &[vec![0, 1, 2], vec![1, 0, 2]]).unwrap();
    let rot = SetPartialAction::global(FiniteGroup::cyclic(4), point_names(4), &[vec![0, 1, 2, 3], vec![1, 2, 3, 0], vec![2, 3, 0, 1], vec![3, 0, 1, 2]]).unwrap();
    let mut pairs = 0;
    let mut strong_seen = [false, false];
    for global in [swap_fix, rot] {
        let n = global.len();
        let target = DisconnectedPartialAction::from_set_action(&global, TAU).unwrap();
        let dt = target.to_coaction(TAU).unwrap();
        for mask in 1u32..(1 << n) {
            let keep: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let source = DisconnectedPartialAction::from_set_action(&global.restrict(&keep).unwrap(), TAU).unwrap();
            let ds = source.to_coaction(TAU).unwrap();
            let map: Vec<Option<usize>> = (0..n).map(|y| keep.iter().position(|&k| k == y)).collect();
            let pi = pullback(keep.len(), &map);
            for mode in [MorphismMode::Strong, MorphismMode::Weak] {
                let group_level = check_group_morphism(&pi, &source, &target, mode, TAU).unwrap();
                let coaction_level = check_morphism(&pi, &ds, &dt, mode, TAU).unwrap();
                assert_eq!(group_level, coaction_level, "mask {mask:b}, {mode:?}");
                if mode == MorphismMode::Strong {
                    strong_seen[group_level as usize] = true;
                } else {
                    assert!(group_level, "restriction inclusions are weak morphisms");
                }
                pairs += 1;
            }
        }
    }
    assert!(strong_seen[0] && strong_seen[1]);
    assert!(pairs > 10);
}

#[test]
fn corpus_inclusions_into_orbit_globalizations_are_weak() {
    for (name, pa) in corpus::partial_actions(TAU).unwrap() {
        let o = orbit_globalization(&pa, TAU).unwrap();
        let target = DisconnectedPartialAction::from_set_action(&o.global, TAU).unwrap();
        let pi = o.dilation.embed();
        let weak = check_group_morphism(pi, &pa, &target, MorphismMode::Weak, TAU).unwrap();
        let strong = check_group_morphism(pi, &pa, &target, MorphismMode::Strong, TAU).unwrap();
        let d = pa.to_coaction(TAU).unwrap();
        assert!(weak, "{name}");
        assert_eq!(weak, check_morphism(pi, &d, o.dilation.coaction(), MorphismMode::Weak, TAU).unwrap(), "{name}");
        assert_eq!(strong, check_morphism(pi, &d, o.dilation.coaction(), MorphismMode::Strong, TAU).unwrap(), "{name}");
    }
}
