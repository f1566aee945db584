//! Scenario files: a field, a groupoid, a twist, a subring given by
//! bounds, and optional ideals, elements, a `Ḡ` order and expectations.
//!
//! ```toml
//! name = "example"
//!
//! [field]
//! kind = "rationals"      # rationals | quadratic | prime
//! valuation = "padic"     # padic | trivial
//! p = 5
//!
//! [groupoid]
//! kind = "delta"          # delta | product_with_delta | group | disjoint_union
//! n = 2
//!
//! [subring]               # missing elements are +inf
//! e11 = 0
//! e12 = "-inf"
//! e22 = 0
//! ```

mod checks;
mod corpus;

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;

use crate::algebra::{GSkewfield, GradedElement, Twist};
use crate::ext::Ext;
use crate::groupoid::{FiniteGroup, Groupoid, GroupoidError};
use crate::pattern::{BoundPattern, Side};
use crate::scalar::{FieldAutomorphism, FieldDescriptor, FieldKind, ScalarError, Valuation};

pub use checks::{run_checks, CheckOptions, CheckOutcome, CheckStatus, Report, REPORT_SCHEMA};
pub use corpus::{corpus_file, corpus_names, example_names, reproduce, CORPUS};

#[derive(Debug, thiserror::Error)]
pub enum ScenarioError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("invalid scenario: {0}")]
    Validation(#[from] ValidationError),
    #[error("unknown example {0:?}; try one of: {1}")]
    UnknownExample(String, String),
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ValidationError {
    #[error("[{section}] needs key {key:?}")]
    Missing { section: &'static str, key: &'static str },
    #[error("[{section}] has unsupported value {value:?} for {key:?}")]
    Unsupported { section: &'static str, key: &'static str, value: String },
    #[error("field: {0}")]
    Field(ScalarError),
    #[error("groupoid: {0}")]
    Groupoid(#[from] GroupoidError),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("twist key {0:?} must name a composable pair as \"f,g\"")]
    TwistKey(String),
    #[error("twist value at {0:?} must be nonzero")]
    ZeroTwist(String),
    #[error("coefficient {key:?}: {source}")]
    Coefficient { key: String, source: ScalarError },
    #[error("twist fails condition ({condition}): {witness}")]
    Twist { condition: u8, witness: String },
    #[error("subring fails {rule}: {detail}")]
    Pattern { rule: String, detail: String },
    #[error("ideal {name}: {detail}")]
    Ideal { name: String, detail: String },
    #[error("element {name}: {detail}")]
    Element { name: String, detail: String },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldSection {
    kind: String,
    valuation: Option<String>,
    p: Option<u64>,
    a: Option<i64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupoidSection {
    kind: String,
    n: Option<usize>,
    group: Option<String>,
    #[serde(default)]
    parts: Vec<PartSection>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct PartSection {
    prefix: String,
    kind: String,
    n: Option<usize>,
    group: Option<String>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct TwistSection {
    /// `"f,g" = value` on full element names.
    #[serde(default)]
    alpha: BTreeMap<String, String>,
    /// `"h,h'" = value` on group elements, lifted to `H[Δn]`.
    #[serde(default)]
    group_alpha: BTreeMap<String, String>,
    /// `degree = "id" | "conj"`; for `H[Δn]` the key may be a group element.
    #[serde(default)]
    sigma: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct IdealSection {
    side: String,
    bounds: Option<BTreeMap<String, Ext>>,
    generators: Option<Vec<String>>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct OrderSection {
    /// `[lesser, greater]` pairs of degree names generating the `Ḡ` order.
    #[serde(default)]
    le: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Comparison {
    pub a: String,
    pub b: String,
    /// gt | ge | eq | le | lt | incomparable
    pub relation: String,
}

/// Claims a scenario makes about itself; each becomes a pass/fail check.
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectations {
    pub skewfield: Option<bool>,
    pub g_simple: Option<bool>,
    pub simple: Option<bool>,
    pub nonhomogeneous_ideal: Option<bool>,
    pub g_total: Option<bool>,
    pub g_stable: Option<bool>,
    pub residue_support: Option<Vec<String>>,
    pub residue_simple: Option<bool>,
    #[serde(default)]
    pub incomparable_ideals: Vec<[String; 2]>,
    #[serde(default)]
    pub cyclic: BTreeMap<String, bool>,
    pub gbar_classes: Option<usize>,
    pub gamma_group: Option<bool>,
    pub order_valid: Option<bool>,
    pub t_v: Option<BTreeMap<String, Ext>>,
    pub s_v: Option<BTreeMap<String, Ext>>,
    /// "pass" or "hypothesis-violation".
    pub dubrovin: Option<String>,
    #[serde(default)]
    pub values: BTreeMap<String, String>,
    #[serde(default)]
    pub compare: Vec<Comparison>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    name: String,
    #[serde(default)]
    description: String,
    field: FieldSection,
    groupoid: GroupoidSection,
    #[serde(default)]
    twist: TwistSection,
    subring: BTreeMap<String, Ext>,
    #[serde(default)]
    ideals: BTreeMap<String, IdealSection>,
    #[serde(default)]
    elements: BTreeMap<String, String>,
    order: Option<OrderSection>,
    #[serde(default)]
    expect: Expectations,
}

/// A loaded and validated scenario.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: String,
    pub description: String,
    pub ring: BoundPattern,
    pub ideals: Vec<(String, BoundPattern)>,
    pub elements: Vec<(String, GradedElement)>,
    /// `(lesser, greater)` pairs replacing the derived `Ḡ` order.
    pub gbar_order: Option<Vec<(String, String)>>,
    pub expect: Expectations,
}

impl Scenario {
    pub fn parent(&self) -> &Arc<GSkewfield> {
        self.ring.parent()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Scenario, ScenarioError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|source| ScenarioError::Io { path: path.display().to_string(), source })?;
        Self::from_toml(&text)
    }

    pub fn from_toml(text: &str) -> Result<Scenario, ScenarioError> {
        let file: ScenarioFile = toml::from_str(text)?;
        Ok(build(file)?)
    }
}

fn build(file: ScenarioFile) -> Result<Scenario, ValidationError> {
    let field = build_field(&file.field)?;
    let (groupoid, lifted) = build_groupoid(&file.groupoid)?;
    let groupoid = Arc::new(groupoid);
    let twist = build_twist(&file.twist, &field, &groupoid, lifted.as_ref())?;
    let q = GSkewfield::new_unchecked(field, groupoid.clone(), twist).map_err(|e| ValidationError::Twist {
        condition: 0,
        witness: e.to_string(),
    })?;
    let report = q.validate();
    if let Some(fail) = report.first_failure() {
        return Err(ValidationError::Twist {
            condition: fail.condition,
            witness: fail.witness.clone().unwrap_or_default(),
        });
    }
    let q = Arc::new(q);

    let named: Vec<(&str, Ext)> = file.subring.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    let ring = BoundPattern::subring_from_names(q.clone(), &named).map_err(|e| match e {
        crate::pattern::PatternError::UnknownElement(n) => ValidationError::UnknownElement(n),
        other => ValidationError::Pattern { rule: "shape".into(), detail: other.to_string() },
    })?;
    let report = ring.validate();
    if let Some(v) = report.violations.first() {
        return Err(ValidationError::Pattern { rule: v.rule.clone(), detail: v.detail.clone() });
    }

    let mut ideals = Vec::new();
    for (name, sec) in &file.ideals {
        ideals.push((name.clone(), build_ideal(&ring, name, sec)?));
    }
    let mut elements = Vec::new();
    for (name, text) in &file.elements {
        let x = q
            .parse_element(text)
            .map_err(|e| ValidationError::Element { name: name.clone(), detail: e.to_string() })?;
        elements.push((name.clone(), x));
    }
    for c in &file.expect.compare {
        for n in [&c.a, &c.b] {
            if !file.elements.contains_key(n) {
                return Err(ValidationError::Element { name: n.clone(), detail: "not listed in [elements]".into() });
            }
        }
    }
    let gbar_order = file
        .order
        .map(|o| o.le.into_iter().map(|[a, b]| (a, b)).collect::<Vec<_>>());
    if let Some(pairs) = &gbar_order {
        for (a, b) in pairs {
            for n in [a, b] {
                groupoid.lookup(n).map_err(|_| ValidationError::UnknownElement(n.clone()))?;
            }
        }
    }
    Ok(Scenario {
        name: file.name,
        description: file.description,
        ring,
        ideals,
        elements,
        gbar_order,
        expect: file.expect,
    })
}

fn build_field(sec: &FieldSection) -> Result<FieldDescriptor, ValidationError> {
    let kind = match sec.kind.as_str() {
        "rationals" => FieldKind::Rationals,
        "quadratic" => FieldKind::Quadratic(sec.a.ok_or(ValidationError::Missing { section: "field", key: "a" })?),
        "prime" => FieldKind::Prime(sec.p.ok_or(ValidationError::Missing { section: "field", key: "p" })?),
        other => {
            return Err(ValidationError::Unsupported { section: "field", key: "kind", value: other.to_string() })
        }
    };
    let valuation = match sec.valuation.as_deref().unwrap_or("trivial") {
        "trivial" => Valuation::Trivial,
        "padic" => Valuation::PAdic(sec.p.ok_or(ValidationError::Missing { section: "field", key: "p" })?),
        other => {
            return Err(ValidationError::Unsupported { section: "field", key: "valuation", value: other.to_string() })
        }
    };
    FieldDescriptor::new(kind, valuation).map_err(ValidationError::Field)
}

fn group_of(section: &'static str, spec: Option<&String>) -> Result<FiniteGroup, ValidationError> {
    let spec = spec.ok_or(ValidationError::Missing { section, key: "group" })?;
    FiniteGroup::by_name(spec).ok_or_else(|| ValidationError::Unsupported {
        section,
        key: "group",
        value: spec.clone(),
    })
}

fn size(section: &'static str, n: Option<usize>) -> Result<usize, ValidationError> {
    match n {
        Some(n) if n >= 1 => Ok(n),
        Some(n) => Err(ValidationError::Unsupported { section, key: "n", value: n.to_string() }),
        None => Err(ValidationError::Missing { section, key: "n" }),
    }
}

/// The groupoid, plus the group and `n` when it is `H[Δn]` (or a group,
/// with `n = 1`), for lifting group twists.
fn build_groupoid(sec: &GroupoidSection) -> Result<(Groupoid, Option<(FiniteGroup, usize)>), ValidationError> {
    let single = |kind: &str, n: Option<usize>, group: Option<&String>, section: &'static str| {
        Ok::<_, ValidationError>(match kind {
            "delta" => (Groupoid::delta(size(section, n)?), None),
            "group" => {
                let h = group_of(section, group)?;
                (Groupoid::from_group(&h), Some((h, 1)))
            }
            "product_with_delta" => {
                let h = group_of(section, group)?;
                let n = size(section, n)?;
                (Groupoid::product_with_delta(&h, n)?, Some((h, n)))
            }
            other => {
                return Err(ValidationError::Unsupported { section, key: "kind", value: other.to_string() })
            }
        })
    };
    if sec.kind == "disjoint_union" {
        if sec.parts.is_empty() {
            return Err(ValidationError::Missing { section: "groupoid", key: "parts" });
        }
        let built = sec
            .parts
            .iter()
            .map(|p| single(&p.kind, p.n, p.group.as_ref(), "groupoid.parts").map(|(g, _)| (p.prefix.as_str(), g)))
            .collect::<Result<Vec<_>, _>>()?;
        let refs: Vec<(&str, &Groupoid)> = built.iter().map(|(p, g)| (*p, g)).collect();
        return Ok((Groupoid::disjoint_union(&refs)?, None));
    }
    single(&sec.kind, sec.n, sec.group.as_ref(), "groupoid")
}

fn pair(key: &str) -> Result<(&str, &str), ValidationError> {
    key.split_once(',')
        .map(|(a, b)| (a.trim(), b.trim()))
        .ok_or_else(|| ValidationError::TwistKey(key.to_string()))
}

fn automorphism(key: &str, value: &str) -> Result<FieldAutomorphism, ValidationError> {
    match value {
        "id" | "identity" => Ok(FieldAutomorphism::Identity),
        "conj" | "conjugation" => Ok(FieldAutomorphism::Conjugation),
        other => Err(ValidationError::Unsupported { section: "twist", key: "sigma", value: format!("{key} = {other}") }),
    }
}

fn build_twist(
    sec: &TwistSection,
    field: &FieldDescriptor,
    grp: &Groupoid,
    lifted: Option<&(FiniteGroup, usize)>,
) -> Result<Twist, ValidationError> {
    let n = grp.len();
    let mut twist = Twist::trivial(grp, field);
    let scalar = |key: &str, text: &str| {
        let c = field
            .parse(text)
            .map_err(|source| ValidationError::Coefficient { key: key.to_string(), source })?;
        if c.is_zero() {
            return Err(ValidationError::ZeroTwist(key.to_string()));
        }
        Ok(c)
    };
    if !sec.group_alpha.is_empty() || sec.sigma.keys().any(|k| grp.lookup(k).is_err()) {
        let Some((h, m)) = lifted else {
            return Err(ValidationError::Unsupported {
                section: "twist",
                key: "group_alpha",
                value: "the groupoid is not built from a group".into(),
            });
        };
        let block = m * m;
        for (key, text) in &sec.group_alpha {
            let (a, b) = pair(key)?;
            let ha = h.lookup(a).ok_or_else(|| ValidationError::UnknownElement(a.to_string()))?;
            let hb = h.lookup(b).ok_or_else(|| ValidationError::UnknownElement(b.to_string()))?;
            let c = scalar(key, text)?;
            for x in 0..block {
                for y in 0..block {
                    let (f, g) = (ha * block + x, hb * block + y);
                    if grp.mul(f, g).is_some() {
                        twist.set_alpha(n, f, g, Some(c.clone()));
                    }
                }
            }
        }
        for (key, text) in &sec.sigma {
            if grp.lookup(key).is_ok() {
                continue;
            }
            let hk = h.lookup(key).ok_or_else(|| ValidationError::UnknownElement(key.clone()))?;
            let s = automorphism(key, text)?;
            for x in 0..block {
                twist.sigma[hk * block + x] = s;
            }
        }
    }
    for (key, text) in &sec.alpha {
        let (a, b) = pair(key)?;
        let f = grp.lookup(a).map_err(|_| ValidationError::UnknownElement(a.to_string()))?;
        let g = grp.lookup(b).map_err(|_| ValidationError::UnknownElement(b.to_string()))?;
        if grp.mul(f, g).is_none() {
            return Err(ValidationError::TwistKey(key.clone()));
        }
        twist.set_alpha(n, f, g, Some(scalar(key, text)?));
    }
    for (key, text) in &sec.sigma {
        if let Ok(g) = grp.lookup(key) {
            twist.sigma[g] = automorphism(key, text)?;
        }
    }
    Ok(twist)
}

fn build_ideal(ring: &BoundPattern, name: &str, sec: &IdealSection) -> Result<BoundPattern, ValidationError> {
    let err = |detail: String| ValidationError::Ideal { name: name.to_string(), detail };
    let side = match sec.side.as_str() {
        "left" => Side::Left,
        "right" => Side::Right,
        "two-sided" | "two_sided" => Side::TwoSided,
        other => return Err(err(format!("unknown side {other:?}"))),
    };
    let ideal = match (&sec.bounds, &sec.generators) {
        (Some(bounds), None) => {
            let named: Vec<(&str, Ext)> = bounds.iter().map(|(k, v)| (k.as_str(), *v)).collect();
            ring.ideal_from_names(&named, side).map_err(|e| err(e.to_string()))?
        }
        (None, Some(gens)) => {
            let q = ring.parent();
            let xs = gens
                .iter()
                .map(|t| q.parse_element(t).map_err(|e| err(e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            ring.ideal_generated(&xs, side).map_err(|e| err(e.to_string()))?
        }
        _ => return Err(err("give exactly one of bounds or generators".into())),
    };
    if let Some(v) = ideal.validate().violations.first() {
        return Err(err(format!("{}: {}", v.rule, v.detail)));
    }
    Ok(ideal)
}
