//! Command dispatch.

use std::io::Read;

use pcoact_core::bernoulli::{subset_name, BernoulliData};
use pcoact_core::bialgebra::FiniteGroup;
use pcoact_core::coact::{check_dual_partial_action, coaction_distance, gamma5_checks, PartialCoaction};
use pcoact_core::dilation::{block_multiset, canonical_dilation, comparison, globalize, minimalize, orbit_globalization};
use pcoact_core::grouplink::DisconnectedPartialAction;
use serde_json::Value;

use crate::config::{parse_config, resolve_group, GroupSpec, Object, Options, Overrides, RawOptions};
use crate::error::{CliError, Result};
use crate::report::{coords, Report};

pub const BERNOULLI_CAP: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Verify { config: String },
    Globalize { config: String },
    Bernoulli { group: String, target: Option<String> },
    Correspond { config: String },
}

/// Reads a file, or standard input for `-`.
pub fn read_source(name: &str) -> Result<String> {
    let io = |e: std::io::Error| CliError::Io { source_name: name.into(), message: e.to_string() };
    if name == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(name).map_err(io)
    }
}

pub fn execute(command: &Command, over: Overrides) -> Result<Report> {
    match command {
        Command::Verify { config } => verify(&read_source(config)?, over),
        Command::Globalize { config } => globalize_cmd(&read_source(config)?, over),
        Command::Correspond { config } => correspond(&read_source(config)?, over),
        Command::Bernoulli { group, target } => {
            let target = target.as_deref().map(read_source).transpose()?;
            bernoulli(group, target.as_deref(), over)
        }
    }
}

pub fn verify(text: &str, over: Overrides) -> Result<Report> {
    let cfg = parse_config(text, over)?;
    let tol = cfg.options.tol;
    let mut r = Report::new("verify", cfg.options.seed, tol);
    let raw = cfg.raw_coaction()?;
    describe(&mut r, &raw);
    let axioms = raw.axiom_residuals();
    r.residual("homomorphism", axioms.homomorphism);
    r.residual("unit_is_projection", axioms.unit_projection);
    r.residual("partial_coassociativity", axioms.partial_coassociativity);
    if !tol.accepts(axioms.max()) {
        return Ok(r);
    }
    let d = raw;
    let p = d.verify(tol);
    r.residual("podles", p.podles_residual);
    r.residual("weakly_continuous", p.weak_continuity_residual);
    r.flag("regular", p.regular, None);
    r.put("regular_reason", p.regular_reason);
    r.residual("counital", p.counit_residual);
    r.flag("injective", p.injective, None);
    r.put("rank", p.rank);
    r.flag("continuity_criteria_agree", p.continuity_criteria_agree, p.unit_slices_span.then_some(p.unit_slices_residual));
    let (left, right) = d.bialgebra().cancellation_ranks(tol);
    r.put("cancellation_ranks", vec![left, right]);
    if d.bialgebra().counit().is_some() {
        let h = check_dual_partial_action(&d)?;
        r.residual("dual_action_h1", h.h1);
        r.residual("dual_action_h2", h.h2);
        r.residual("dual_action_h3", h.h3);
        r.residual("dual_action_h4", h.h4);
    } else {
        r.put("dual_action", "skipped: the bialgebra has no counit");
    }
    if matches!(cfg.object, Object::Gamma5) {
        let k = gamma5_checks(&d)?;
        r.flag("theta_v_theta_vstar_theta_v_is_zero", k.v_vstar_v == 0.0, Some(k.v_vstar_v));
        r.flag("theta_v_theta_vstarv_equals_theta_v", k.v_vstarv_minus_v == 0.0, Some(k.v_vstarv_minus_v));
        r.flag("theta_v_is_nonzero", k.v > 0.0, None);
    }
    Ok(r)
}

fn describe(r: &mut Report, d: &PartialCoaction) {
    r.put("carrier_blocks", d.carrier().block_sizes().to_vec());
    r.put("bialgebra_blocks", d.bialgebra().algebra().block_sizes().to_vec());
}

pub fn globalize_cmd(text: &str, over: Overrides) -> Result<Report> {
    let cfg = parse_config(text, over)?;
    let (tol, seed) = (cfg.options.tol, cfg.options.seed);
    let d = cfg.coaction()?;
    let mut r = Report::new("globalize", seed, tol);
    describe(&mut r, &d);

    let g = globalize(&d, tol, seed)?;
    let rep = g.dilation.report(&d, tol)?;
    r.residual("globalization_is_dilation", rep.weak_morphism_residual);
    r.flag("globalization_is_minimal", rep.is_minimal, None);
    r.residual("globalization_restricts_to_input", g.dilation.restriction_residual(&d)?);
    let cd = canonical_dilation(&d, tol)?;
    r.residual("canonical_dilation_is_subalgebra", cd.closure_residual.max(cd.contains_image_residual).max(cd.slice_residual));
    r.residual("globalization_inside_canonical_dilation", g.space.containment_residual(&cd.space));
    r.flag("vanishing_symmetry", g.dilation.vanishing_asymmetries(tol) == 0, None);
    let own = comparison(&g.dilation, &g, &d, tol)?;
    r.flag("comparison_with_itself_is_iso", own.iso, None);
    let m = minimalize(&g.dilation, tol, seed)?;
    r.flag("minimalize_keeps_globalization", m.big().dim() == g.dilation.big().dim(), None);
    r.put("block_sizes", g.dilation.big().block_sizes().to_vec());
    r.put("dimension", g.dilation.big().dim());
    r.put("canonical_dilation_dimension", cd.space.dim());

    if let Object::SetAction(s) = &cfg.object {
        let pa = DisconnectedPartialAction::from_set_action(s, tol)?;
        let orbit = orbit_globalization(&pa, tol)?;
        r.residual("orbit_restricts_to_input", orbit.dilation.restriction_residual(&d)?);
        let mo = minimalize(&orbit.dilation, tol, seed)?;
        let mrep = mo.report(&d, tol)?;
        r.residual("orbit_is_dilation", mrep.weak_morphism_residual);
        r.flag("orbit_is_minimal", mrep.is_minimal, None);
        let cmp = comparison(&mo, &g, &d, tol)?;
        r.residual("comparison_base", cmp.base_residual);
        r.residual("comparison_module_identity", cmp.module_residual);
        r.residual("comparison_multiplicative", cmp.multiplicative_residual);
        r.flag("comparison_surjective", cmp.surjective, None);
        r.flag("comparison_injective", cmp.injective, None);
        r.flag("iso", cmp.iso, None);
        r.flag("block_multisets_agree", block_multiset(&cmp.source_blocks) == block_multiset(&cmp.target_blocks), None);
        r.put("comparison_rank", cmp.rank);
        r.put("orbit_points", orbit.global.points().to_vec());
    }
    Ok(r)
}

pub fn correspond(text: &str, over: Overrides) -> Result<Report> {
    let cfg = parse_config(text, over)?;
    let tol = cfg.options.tol;
    let group = cfg
        .group
        .clone()
        .filter(|_| cfg.bialgebra.function_group().is_some())
        .ok_or_else(|| CliError::semantic("bialgebra", "the correspondence needs a coaction of the function algebra of a group"))?;
    let d = cfg.coaction()?;
    let mut r = Report::new("correspond", cfg.options.seed, tol);
    describe(&mut r, &d);
    let pa = DisconnectedPartialAction::from_coaction(&d, tol)?;
    let again = pa.to_coaction(tol)?;
    r.residual("to_coaction_after_from_coaction", coaction_distance(&d, &again));
    r.residual("from_coaction_after_to_coaction", pa.distance(&DisconnectedPartialAction::from_coaction(&again, tol)?));
    if let Object::SetAction(s) = &cfg.object {
        r.residual("matches_set_level_input", pa.distance(&DisconnectedPartialAction::from_set_action(s, tol)?));
    }
    r.residual("podles", d.verify(tol).podles_residual);
    let mut projections = serde_json::Map::new();
    for (k, name) in group.elements().iter().enumerate() {
        projections.insert(name.clone(), coords(pa.projection(k)));
    }
    r.put("projections", Value::Object(projections));
    Ok(r)
}

fn bernoulli_group(arg: &str) -> Result<FiniteGroup> {
    if let Some(g) = FiniteGroup::preset(arg) {
        return Ok(g);
    }
    let text = read_source(arg)?;
    let mut de = serde_json::Deserializer::from_str(&text);
    let spec: GroupSpec = serde_path_to_error::deserialize(&mut de)
        .map_err(|e| CliError::semantic(format!("group{}", if e.path().to_string() == "." { String::new() } else { format!(".{}", e.path()) }), e.inner().to_string()))?;
    resolve_group(&spec, "group")
}

pub fn bernoulli(group: &str, target: Option<&str>, over: Overrides) -> Result<Report> {
    let options = Options::resolve(&RawOptions::default(), over, BERNOULLI_CAP)?;
    let g = bernoulli_group(group)?;
    let tol = options.tol;
    let bd = BernoulliData::build(&g, options.cap_group_order, tol).map_err(|e| match e {
        pcoact_core::Error::Precondition(m) => CliError::semantic("group", m),
        other => other.into(),
    })?;
    let n = g.order();
    let mut r = Report::new("bernoulli", options.seed, tol);
    let inv = bd.invariants();
    r.flag("dimension", bd.algebra().dim() == 1 << n, None);
    r.flag("restricted_dimension", bd.restricted().carrier().dim() == 1 << (n - 1), None);
    r.residual("admissible", inv.admissible);
    r.residual("coaction_identity", inv.coaction_identity);
    r.residual("p_eps_image", inv.p_eps_image);
    r.residual("counit_of_p", inv.counit_of_p);
    r.residual("unital", inv.unital);
    r.flag("podles", inv.podles, None);
    r.flag("counital", inv.counital, None);
    let restricted = bd.restricted().verify(tol);
    r.residual("restricted_counital", restricted.counit_residual);
    r.residual("restricted_dual_action", check_dual_partial_action(bd.restricted())?.max());
    r.put("group", g.elements().to_vec());
    r.put("dimension", bd.algebra().dim());
    r.put("restricted_dimension", bd.restricted().carrier().dim());
    r.put("restricted_subsets", bd.restricted_subsets().iter().map(|&s| subset_name(&g, s)).collect::<Vec<_>>());

    if let Some(text) = target {
        let cfg = parse_config(text, Overrides { tol: Some(tol.get()), seed: Some(options.seed), cap_group_order: Some(options.cap_group_order) })?;
        if cfg.group.as_ref() != Some(&g) || cfg.bialgebra.function_group().is_none() {
            return Err(CliError::semantic("group", "the target must be a coaction of the function algebra of the same group"));
        }
        let dc = cfg.coaction()?;
        let u = bd.universal_map(&dc, tol)?;
        r.residual("universal_map_homomorphism", u.homomorphism_residual);
        r.residual("bernoulli_initial", u.initial_residual);
        r.residual("strong_morphism", u.strong_residual);
        r.flag("unique_on_generators", u.unique, u.unique.then_some(u.generator_residual));
        let mut pi = serde_json::Map::new();
        for (j, &s) in bd.restricted_subsets().iter().enumerate() {
            pi.insert(subset_name(&g, s), coords(&u.pi.image_of_basis(j)));
        }
        r.put("pi", Value::Object(pi));
    }
    Ok(r)
}
