//! JSON configuration: schema, parsing with field paths, and semantic resolution.

use std::collections::{BTreeMap, BTreeSet};

use pcoact_core::bialgebra::{gamma5, Bialgebra, FiniteGroup};
use pcoact_core::coact::{gamma5_coaction, PartialCoaction};
use pcoact_core::corpus;
use pcoact_core::fdalg::{tensor, Element, FdCStarAlgebra, LinearMap, Tolerance};
use pcoact_core::grouplink::SetPartialAction;
use pcoact_core::linalg::{c, Mat, C64};
use serde::Deserialize;

use crate::error::{CliError, Result};

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_CAP: usize = 6;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    #[serde(default)]
    pub group: Option<GroupSpec>,
    #[serde(default)]
    pub bialgebra: BialgebraChoice,
    pub object: ObjectSpec,
    #[serde(default)]
    pub options: RawOptions,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Preset(String),
    Table(TableSpec),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableSpec {
    pub elements: Vec<String>,
    pub table: Vec<Vec<Entry>>,
}

/// A Cayley table entry, by index or by element name.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Index(usize),
    Name(String),
}

#[derive(Clone, Copy, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum BialgebraChoice {
    #[default]
    Function,
    Group,
    Gamma5,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ObjectSpec {
    /// Points, per-element ranges `D_g`, and per-element partial bijections `α_g`.
    SetAction(SetActionSpec),
    /// The matrix of `δ` in the matrix-unit bases, `(dim C · dim A) × dim C`.
    Coaction(CoactionSpec),
    /// `λ ↦ λp` on the scalars.
    ScalarProjection(Vec<Scalar>),
    /// `c ↦ c ⊗ 1` on a carrier with the given blocks.
    Trivial { carrier: Vec<usize> },
    /// `gamma5` or the name of a corpus partial action.
    Preset(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetActionSpec {
    pub points: Vec<String>,
    #[serde(default)]
    pub domains: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub maps: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoactionSpec {
    pub carrier: Vec<usize>,
    pub matrix: Vec<Vec<Scalar>>,
}

/// A real number or a `[re, im]` pair.
#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Real(f64),
    Complex([f64; 2]),
}

impl Scalar {
    fn value(self) -> C64 {
        match self {
            Scalar::Real(x) => c(x, 0.0),
            Scalar::Complex([x, y]) => c(x, y),
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawOptions {
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub cap_group_order: Option<usize>,
}

/// Command-line values that take precedence over the config's `options`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Overrides {
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub cap_group_order: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Options {
    pub tol: Tolerance,
    pub seed: u64,
    pub cap_group_order: usize,
}

impl Options {
    pub fn resolve(raw: &RawOptions, over: Overrides, default_cap: usize) -> Result<Self> {
        let tol = over.tol.or(raw.tol).unwrap_or(DEFAULT_TOL);
        if !(tol.is_finite() && tol > 0.0) {
            return Err(CliError::semantic("options.tol", format!("tolerance must be positive and finite, found {tol}")));
        }
        Ok(Options {
            tol: Tolerance(tol),
            seed: over.seed.or(raw.seed).unwrap_or(0),
            cap_group_order: over.cap_group_order.or(raw.cap_group_order).unwrap_or(default_cap),
        })
    }
}

/// The object a command acts on.
#[derive(Clone, Debug)]
pub enum Object {
    SetAction(SetPartialAction),
    /// A coaction map that has not been validated yet.
    Coaction { carrier: FdCStarAlgebra, map: LinearMap },
    Gamma5,
}

#[derive(Clone, Debug)]
pub struct Config {
    pub group: Option<FiniteGroup>,
    pub bialgebra: Bialgebra,
    pub object: Object,
    pub options: Options,
}

impl Config {
    /// `δ` as an unvalidated partial coaction.
    pub fn raw_coaction(&self) -> Result<PartialCoaction> {
        match &self.object {
            Object::SetAction(s) => {
                let pa = pcoact_core::grouplink::DisconnectedPartialAction::from_set_action(s, self.options.tol)?;
                Ok(pa.to_coaction(self.options.tol)?)
            }
            Object::Coaction { carrier, map } => Ok(PartialCoaction::new_unchecked(carrier.clone(), self.bialgebra.clone(), map.clone())?),
            Object::Gamma5 => Ok(gamma5_coaction(self.options.tol)?),
        }
    }

    /// `δ`, validated.
    pub fn coaction(&self) -> Result<PartialCoaction> {
        let d = self.raw_coaction()?;
        Ok(PartialCoaction::new(d.carrier().clone(), d.bialgebra().clone(), d.map().clone(), self.options.tol)?)
    }
}

pub fn parse_raw(text: &str) -> Result<RawConfig> {
    let mut de = serde_json::Deserializer::from_str(text);
    let raw: RawConfig = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if inner.is_syntax() || inner.is_eof() {
            CliError::Syntax { line: inner.line(), column: inner.column(), message: inner.to_string() }
        } else {
            let message = inner.to_string();
            let message = message.split(" at line ").next().unwrap_or(&message).to_string();
            CliError::semantic(if path == "." { "config".to_string() } else { path }, message)
        }
    })?;
    de.end().map_err(|e| CliError::Syntax { line: e.line(), column: e.column(), message: e.to_string() })?;
    Ok(raw)
}

/// Parses and cross-validates a configuration document.
pub fn parse_config(text: &str, over: Overrides) -> Result<Config> {
    resolve(parse_raw(text)?, over)
}

pub fn resolve_group(spec: &GroupSpec, path: &str) -> Result<FiniteGroup> {
    match spec {
        GroupSpec::Preset(name) => {
            FiniteGroup::preset(name).ok_or_else(|| CliError::semantic(path, format!("unknown group preset {name:?} (expected Z2, Z3, Z4 or S3)")))
        }
        GroupSpec::Table(t) => {
            let n = t.elements.len();
            if t.table.len() != n {
                return Err(CliError::semantic(format!("{path}.table"), format!("expected {n} rows, found {}", t.table.len())));
            }
            let mut table = Vec::with_capacity(n);
            for (i, row) in t.table.iter().enumerate() {
                if row.len() != n {
                    return Err(CliError::semantic(format!("{path}.table[{i}]"), format!("expected {n} entries, found {}", row.len())));
                }
                let mut out = Vec::with_capacity(n);
                for (j, entry) in row.iter().enumerate() {
                    let k = match entry {
                        Entry::Index(k) if *k < n => *k,
                        Entry::Index(k) => return Err(CliError::semantic(format!("{path}.table[{i}][{j}]"), format!("index {k} out of range"))),
                        Entry::Name(s) => t
                            .elements
                            .iter()
                            .position(|e| e == s)
                            .ok_or_else(|| CliError::semantic(format!("{path}.table[{i}][{j}]"), format!("unknown element {s:?}")))?,
                    };
                    out.push(k);
                }
                table.push(out);
            }
            FiniteGroup::new(t.elements.clone(), table).map_err(|e| CliError::semantic(path, e.to_string()))
        }
    }
}

fn check_cap(g: &FiniteGroup, options: &Options, path: &str) -> Result<()> {
    if g.order() > options.cap_group_order {
        return Err(CliError::semantic(path, format!("group order {} exceeds the cap {}", g.order(), options.cap_group_order)));
    }
    Ok(())
}

fn resolve(raw: RawConfig, over: Overrides) -> Result<Config> {
    let options = Options::resolve(&raw.options, over, DEFAULT_CAP)?;
    let mut group = raw.group.as_ref().map(|g| resolve_group(g, "group")).transpose()?;

    if let ObjectSpec::Preset(name) = &raw.object {
        if name == "gamma5" {
            return Ok(Config { group, bialgebra: Bialgebra::semigroup_algebra(&gamma5())?, object: Object::Gamma5, options });
        }
        let (_, s) = corpus::set_actions()?
            .into_iter()
            .find(|(n, _)| n == name)
            .ok_or_else(|| CliError::semantic("object.preset", format!("unknown preset {name:?}")))?;
        if let Some(g) = &group {
            if g != s.group() {
                return Err(CliError::semantic("group", format!("the preset {name:?} is an action of a different group")));
            }
        }
        if raw.bialgebra != BialgebraChoice::Function {
            return Err(CliError::semantic("bialgebra", "set-level actions are coactions of the function algebra"));
        }
        let g = s.group().clone();
        check_cap(&g, &options, "group")?;
        return Ok(Config { group: Some(g.clone()), bialgebra: Bialgebra::function_algebra(&g)?, object: Object::SetAction(s), options });
    }

    let bialgebra = match raw.bialgebra {
        BialgebraChoice::Gamma5 => Bialgebra::semigroup_algebra(&gamma5())?,
        choice => {
            let g = group.as_ref().ok_or_else(|| CliError::semantic("group", "a group is required"))?;
            check_cap(g, &options, "group")?;
            if choice == BialgebraChoice::Function {
                Bialgebra::function_algebra(g)?
            } else {
                Bialgebra::group_algebra(g, options.tol, options.seed)?
            }
        }
    };
    let a = bialgebra.algebra().clone();
    let object = match raw.object {
        ObjectSpec::SetAction(spec) => {
            if raw.bialgebra != BialgebraChoice::Function {
                return Err(CliError::semantic("bialgebra", "set-level actions are coactions of the function algebra"));
            }
            Object::SetAction(resolve_set_action(&spec, group.as_ref().expect("checked above"))?)
        }
        ObjectSpec::Coaction(spec) => {
            let carrier = carrier_algebra(&spec.carrier, "object.coaction.carrier")?;
            let (rows, cols) = (carrier.dim() * a.dim(), carrier.dim());
            if spec.matrix.len() != rows || spec.matrix.iter().any(|r| r.len() != cols) {
                let found_cols = spec.matrix.first().map_or(0, |r| r.len());
                return Err(CliError::semantic(
                    "object.coaction.matrix",
                    format!("expected a ({} · {}) × {} = {rows} × {cols} matrix, found {} × {found_cols}", carrier.dim(), a.dim(), cols, spec.matrix.len()),
                ));
            }
            let data = spec.matrix.iter().flatten().map(|x| x.value()).collect();
            let map = LinearMap::new(carrier.clone(), tensor(&carrier, &a), Mat::from_row_major(rows, cols, data))?;
            Object::Coaction { carrier, map }
        }
        ObjectSpec::ScalarProjection(p) => {
            if p.len() != a.dim() {
                return Err(CliError::semantic("object.scalar_projection", format!("expected {} coordinates, found {}", a.dim(), p.len())));
            }
            let carrier = FdCStarAlgebra::commutative(1);
            let p = Element::from_coords(p.iter().map(|x| x.value()).collect());
            let map = LinearMap::from_images(&carrier, &tensor(&carrier, &a), &[p])?;
            Object::Coaction { carrier, map }
        }
        ObjectSpec::Trivial { carrier } => {
            let carrier = carrier_algebra(&carrier, "object.trivial.carrier")?;
            let map = PartialCoaction::trivial(&carrier, &bialgebra).map().clone();
            Object::Coaction { carrier, map }
        }
        ObjectSpec::Preset(_) => unreachable!("handled above"),
    };
    if raw.bialgebra == BialgebraChoice::Gamma5 {
        group = None;
    }
    Ok(Config { group, bialgebra, object, options })
}

fn carrier_algebra(blocks: &[usize], path: &str) -> Result<FdCStarAlgebra> {
    FdCStarAlgebra::new(blocks.to_vec()).map_err(|e| CliError::semantic(path, e.to_string()))
}

fn resolve_set_action(spec: &SetActionSpec, g: &FiniteGroup) -> Result<SetPartialAction> {
    let base = "object.set_action";
    let n = spec.points.len();
    let names: BTreeSet<&String> = spec.points.iter().collect();
    if names.len() != n || n == 0 {
        return Err(CliError::semantic(format!("{base}.points"), "points must be nonempty and distinct"));
    }
    let point = |s: &str, path: &str| -> Result<usize> {
        spec.points.iter().position(|p| p == s).ok_or_else(|| CliError::semantic(path, format!("unknown point {s:?}")))
    };
    let element = |s: &str, path: &str| -> Result<usize> {
        g.index_of(s).ok_or_else(|| CliError::semantic(path, format!("unknown group element {s:?}")))
    };
    let e = g.identity();
    let mut alpha: Vec<Vec<Option<usize>>> = (0..g.order()).map(|k| if k == e { (0..n).map(Some).collect() } else { vec![None; n] }).collect();
    for (gname, map) in &spec.maps {
        let path = format!("{base}.maps.{gname}");
        let k = element(gname, &path)?;
        alpha[k] = vec![None; n];
        for (x, y) in map {
            alpha[k][point(x, &format!("{path}.{x}"))?] = Some(point(y, &format!("{path}.{x}"))?);
        }
    }
    for (gname, dom) in &spec.domains {
        let path = format!("{base}.domains.{gname}");
        let k = element(gname, &path)?;
        let mut want = BTreeSet::new();
        for x in dom {
            want.insert(point(x, &path)?);
        }
        let have: BTreeSet<usize> = alpha[k].iter().flatten().copied().collect();
        if want != have {
            let listed: Vec<&str> = have.iter().map(|&i| spec.points[i].as_str()).collect();
            return Err(CliError::semantic(path, format!("D_{gname} must be the range of the map for {gname}, which is {listed:?}")));
        }
    }
    SetPartialAction::new(g.clone(), spec.points.clone(), alpha).map_err(|err| CliError::semantic(base, err.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_point_config() {
        let c = parse_config(r#"{"group": "Z2", "object": {"set_action": {"points": ["x"], "domains": {"t": []}}}}"#, Overrides::default()).unwrap();
        match c.object {
            Object::SetAction(s) => assert_eq!(s.apply(1, 0), None),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_associative_table_names_the_triple() {
        let text = r#"{"group": {"elements": ["e", "a", "b"], "table": [["e","a","b"],["a","e","e"],["b","e","e"]]}, "object": {"trivial": {"carrier": [1]}}}"#;
        let err = parse_config(text, Overrides::default()).unwrap_err();
        let msg = err.to_string();
        assert!(msg.starts_with("group:"), "{msg}");
        assert!(msg.contains("not associative at ("), "{msg}");
    }

    #[test]
    fn wrong_matrix_shape_names_the_expected_shape() {
        let text = r#"{"group": "Z2", "object": {"coaction": {"carrier": [1], "matrix": [[1]]}}}"#;
        let msg = parse_config(text, Overrides::default()).unwrap_err().to_string();
        assert!(msg.contains("object.coaction.matrix") && msg.contains("2 × 1"), "{msg}");
    }

    #[test]
    fn field_paths_and_syntax_errors() {
        let msg = parse_config(r#"{"group": "Z2", "object": {"trivial": {"carrier": "x"}}}"#, Overrides::default()).unwrap_err().to_string();
        assert!(msg.starts_with("object.trivial.carrier"), "{msg}");
        assert!(matches!(parse_config("{", Overrides::default()), Err(CliError::Syntax { .. })));
        let msg = parse_config(r#"{"group": "Z5", "object": {"trivial": {"carrier": [1]}}}"#, Overrides::default()).unwrap_err().to_string();
        assert!(msg.starts_with("group:"), "{msg}");
    }

    #[test]
    fn overrides_take_precedence() {
        let text = r#"{"group": "Z2", "object": {"trivial": {"carrier": [1]}}, "options": {"tol": 1e-6, "seed": 3}}"#;
        let c = parse_config(text, Overrides { seed: Some(9), ..Default::default() }).unwrap();
        assert_eq!(c.options.tol, Tolerance(1e-6));
        assert_eq!(c.options.seed, 9);
        let err = parse_config(r#"{"group": "S3", "object": {"trivial": {"carrier": [1]}}}"#, Overrides { cap_group_order: Some(4), ..Default::default() });
        assert!(err.is_err());
    }
}
