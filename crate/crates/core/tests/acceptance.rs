//! Acceptance suite: one PASS/FAIL line per criterion at the pinned tolerances.

use std::process::ExitCode;

use pcoact_core::bernoulli::BernoulliData;
use pcoact_core::bialgebra::Bialgebra;
use pcoact_core::coact::{check_dual_partial_action, coaction_distance, gamma5_checks, gamma5_coaction, PartialCoaction};
use pcoact_core::corpus;
use pcoact_core::dilation::{block_multiset, canonical_dilation, comparison, globalize, minimalize, orbit_globalization, Dilation};
use pcoact_core::fdalg::{generated_star_subalgebra, wedderburn, Element, FdCStarAlgebra, Tolerance};
use pcoact_core::grouplink::DisconnectedPartialAction;
use pcoact_core::linalg::c;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TAU: Tolerance = Tolerance(1e-9);
const TIGHT: f64 = 1e-10;
const SEED: u64 = 0;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: pcoact_core::Error) -> String {
    e.to_string()
}

fn corpus_coactions() -> Result<Vec<(String, PartialCoaction)>, String> {
    corpus::coactions(TAU, SEED).map_err(err)
}

fn counital_function_coactions() -> Result<Vec<(String, PartialCoaction)>, String> {
    Ok(corpus_coactions()?
        .into_iter()
        .filter(|(_, d)| d.bialgebra().function_group().is_some() && d.verify(TAU).counital)
        .collect())
}

fn counterexample() -> Outcome {
    let d = gamma5_coaction(TAU).map_err(err)?;
    let k = gamma5_checks(&d).map_err(err)?;
    ensure(k.reproduces_counterexample(TAU), || format!("{k:?}"))?;
    Ok(format!(
        "partial coassociativity residual {:.1e}; |Θ_vΘ_v*Θ_v| = {}; |Θ_vΘ_v*v - Θ_v| = {}; |Θ_v| = {}",
        k.partial_coassociativity, k.v_vstar_v, k.v_vstarv_minus_v, k.v
    ))
}

fn round_trip() -> Outcome {
    let actions = corpus::partial_actions(TAU).map_err(err)?;
    ensure(actions.len() >= 10, || format!("only {} corpus actions", actions.len()))?;
    let mut worst: f64 = 0.0;
    for (name, pa) in &actions {
        let d = pa.to_coaction(TAU).map_err(err)?;
        let back = DisconnectedPartialAction::from_coaction(&d, TAU).map_err(err)?;
        let r = pa.distance(&back).max(coaction_distance(&d, &back.to_coaction(TAU).map_err(err)?));
        ensure(r <= TIGHT, || format!("{name}: residual {r:e}"))?;
        worst = worst.max(r);
    }
    let coactions = counital_function_coactions()?;
    for (name, d) in &coactions {
        let pa = DisconnectedPartialAction::from_coaction(d, TAU).map_err(err)?;
        let r = coaction_distance(d, &pa.to_coaction(TAU).map_err(err)?);
        ensure(r <= TIGHT, || format!("{name}: residual {r:e}"))?;
        worst = worst.max(r);
    }
    Ok(format!("{} partial actions and {} counital coactions, worst residual {worst:.1e}", actions.len(), coactions.len()))
}

fn check_minimal(name: &str, d: &Dilation, dc: &PartialCoaction) -> Result<(), String> {
    let rep = d.report(dc, TAU).map_err(err)?;
    ensure(rep.is_dilation && rep.is_minimal, || format!("{name}: {rep:?}"))
}

fn globalization_uniqueness(dilations: &mut Vec<(String, Dilation)>) -> Outcome {
    let mut globalized = 0;
    for (name, dc) in corpus_coactions()? {
        if dc.bialgebra().function_group().is_none() || !dc.verify(TAU).injective {
            continue;
        }
        let g = globalize(&dc, TAU, SEED).map_err(|e| format!("{name}: {e}"))?;
        check_minimal(&name, &g.dilation, &dc)?;
        let r = g.dilation.restriction_residual(&dc).map_err(err)?;
        ensure(TAU.accepts(r), || format!("{name}: restriction residual {r:e}"))?;
        let cd = canonical_dilation(&dc, TAU).map_err(err)?;
        let inside = g.space.containment_residual(&cd.space);
        ensure(TAU.accepts(inside), || format!("{name}: globalization not inside the canonical dilation ({inside:e})"))?;
        let own = comparison(&g.dilation, &g, &dc, TAU).map_err(err)?;
        ensure(own.iso, || format!("{name}: self comparison {own:?}"))?;
        dilations.push((name, g.dilation));
        globalized += 1;
    }
    let mut compared = 0;
    for (name, pa) in corpus::partial_actions(TAU).map_err(err)? {
        let dc = pa.to_coaction(TAU).map_err(err)?;
        let orbit = orbit_globalization(&pa, TAU).map_err(|e| format!("{name}: {e}"))?;
        let m = minimalize(&orbit.dilation, TAU, SEED).map_err(|e| format!("{name}: {e}"))?;
        check_minimal(&name, &m, &dc)?;
        let g = globalize(&dc, TAU, SEED).map_err(err)?;
        let cmp = comparison(&m, &g, &dc, TAU).map_err(err)?;
        ensure(cmp.iso && cmp.multiplicative_residual <= 1e-9, || format!("{name}: {cmp:?}"))?;
        ensure(block_multiset(&cmp.source_blocks) == block_multiset(&cmp.target_blocks), || format!("{name}: blocks differ"))?;
        dilations.push((format!("{name}-orbit"), m));
        compared += 1;
    }
    Ok(format!("{globalized} globalizations verified minimal; {compared} orbit dilations isomorphic via φ"))
}

fn bernoulli() -> Outcome {
    let coactions = counital_function_coactions()?;
    let mut maps = 0;
    for n in 2..=4 {
        let g = pcoact_core::bialgebra::FiniteGroup::cyclic(n);
        let bd = BernoulliData::build(&g, 4, TAU).map_err(err)?;
        let inv = bd.invariants();
        ensure(bd.algebra().dim() == 1 << n && bd.restricted().carrier().dim() == 1 << (n - 1), || format!("Z{n}: wrong dimensions"))?;
        ensure(TAU.accepts(inv.admissible), || format!("Z{n}: p not admissible"))?;
        ensure(inv.coaction_identity == 0.0 && inv.p_eps_image == 0.0, || format!("Z{n}: {inv:?}"))?;
        for (name, dc) in &coactions {
            if dc.bialgebra().function_group() != Some(bd.group()) {
                continue;
            }
            let u = bd.universal_map(dc, TAU).map_err(|e| format!("{name}: {e}"))?;
            ensure(u.initial_residual <= TIGHT && u.unique && TAU.accepts(u.strong_residual), || format!("{name}: {u:?}"))?;
            maps += 1;
        }
    }
    Ok(format!("Z2, Z3, Z4 invariants exact; {maps} universal maps unique and strong"))
}

fn weak_continuity_implies_podles() -> Outcome {
    let all = corpus_coactions()?;
    let mut weakly = 0;
    let violations: Vec<String> = all
        .iter()
        .filter_map(|(name, d)| {
            let r = d.verify(TAU);
            if r.weakly_continuous {
                weakly += 1;
            }
            (r.weakly_continuous && !r.podles).then(|| name.clone())
        })
        .collect();
    ensure(violations.is_empty(), || format!("violations: {violations:?}"))?;
    Ok(format!("{} coactions, {weakly} weakly continuous, 0 violations", all.len()))
}

fn grouplike_enumeration() -> Outcome {
    let mut counts = Vec::new();
    for (label, g) in corpus::groups() {
        let b = Bialgebra::function_algebra(&g).map_err(err)?;
        let mut found = Vec::new();
        for mask in 1..(1u64 << g.order()) {
            if b.check_grouplike(&b.subset_projection(mask).map_err(err)?, TAU) {
                found.push(mask);
            }
        }
        ensure(found == g.subgroups(), || format!("{label}: group-like {found:?} vs subgroups {:?}", g.subgroups()))?;
        counts.push(found.len());
    }
    ensure(counts == [2, 2, 3, 6], || format!("counts {counts:?}"))?;
    Ok(format!("counts {counts:?} for Z2, Z3, Z4, S3"))
}

fn dual_action_axioms() -> Outcome {
    let all = corpus_coactions()?;
    let mut checked = 0;
    let mut worst: f64 = 0.0;
    for (name, d) in &all {
        if d.bialgebra().counit().is_none() || !d.verify(TAU).counital {
            continue;
        }
        let r = check_dual_partial_action(d).map_err(err)?;
        ensure(r.max() <= TIGHT, || format!("{name}: {r:?}"))?;
        worst = worst.max(r.max());
        checked += 1;
    }
    ensure(all.iter().any(|(n, _)| n.ends_with("-restricted")), || "Bernoulli restriction missing".into())?;
    Ok(format!("{checked} counital coactions, worst residual {worst:.1e}"))
}

fn random_element(a: &FdCStarAlgebra, rng: &mut ChaCha8Rng) -> Element {
    let density = rng.random_range(0.05..0.4);
    Element::from_coords(
        (0..a.dim())
            .map(|_| if rng.random_bool(density) { c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)) } else { c(0.0, 0.0) })
            .collect(),
    )
}

fn engine(dilations: &[(String, Dilation)]) -> Outcome {
    let a = FdCStarAlgebra::new(vec![2, 3, 4]).map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut shapes = Vec::new();
    for trial in 0..20 {
        let gens: Vec<Element> = (0..rng.random_range(1..=2)).map(|_| random_element(&a, &mut rng)).collect();
        let s = generated_star_subalgebra(&a, &gens, rng.random_bool(0.5), TAU).map_err(err)?;
        let again = generated_star_subalgebra(&a, s.basis(), false, TAU).map_err(err)?;
        ensure(again.dim() == s.dim(), || format!("trial {trial}: not idempotent"))?;
        if s.dim() == 0 {
            continue;
        }
        let w = wedderburn(&s, TAU, trial).map_err(|e| format!("trial {trial}: {e}"))?;
        let squares: usize = w.algebra.block_sizes().iter().map(|n| n * n).sum();
        ensure(squares == s.dim(), || format!("trial {trial}: Σn² = {squares} vs dim {}", s.dim()))?;
        let hom = w.embed.homomorphism_residual();
        ensure(TAU.accepts(hom), || format!("trial {trial}: embedding residual {hom:e}"))?;
        shapes.push(w.algebra.block_sizes().to_vec());
    }
    for (name, d) in dilations {
        let bad = d.vanishing_asymmetries(TAU);
        ensure(bad == 0, || format!("{name}: {bad} asymmetric pairs"))?;
    }
    shapes.sort();
    shapes.dedup();
    Ok(format!("20 random subalgebras ({} distinct block shapes); symmetry on {} dilations", shapes.len(), dilations.len()))
}

fn main() -> ExitCode {
    let mut dilations = Vec::new();
    let results: Vec<(&str, Outcome)> = vec![
        ("counterexample regression (inverse semigroup)", counterexample()),
        ("partial action / coaction round trip", round_trip()),
        ("globalization uniqueness", globalization_uniqueness(&mut dilations)),
        ("Bernoulli suite", bernoulli()),
        ("weak continuity implies Podleś", weak_continuity_implies_podles()),
        ("group-like enumeration", grouplike_enumeration()),
        ("dual Hopf-action axioms", dual_action_axioms()),
        ("engine self-tests", engine(&dilations)),
    ];
    let mut failed = 0;
    for (i, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("criterion {} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
