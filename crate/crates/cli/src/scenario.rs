//! Scenario files: JSON schema, object references and argument shapes.
//!
//! Parsing here is purely syntactic. Anything that needs group theory or ring
//! construction (subgroup labels, action validity, ...) is deferred to the
//! check itself and surfaces as an `error` status instead of an input error.

use std::collections::BTreeMap;
use std::str::FromStr;

use equihom_core::groups::GroupSpec;
use equihom_core::homology::CoefficientGroup;
use equihom_linalg::{FGAbelianGroup, Z};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{Map, Value};
use thiserror::Error;

use crate::catalog::{self, Kind};

pub const SCHEMA_VERSION: u64 = 1;
pub const DEFAULT_MAX_DEGREE: usize = 4;
pub const DEGREE_LIMIT: usize = 6;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema_version must be {SCHEMA_VERSION}, found {0}")]
    Schema(String),
    #[error("scenario: {0}")]
    Shape(String),
    #[error("check #{index}: unknown check id {id:?}")]
    UnknownCheck { index: usize, id: String },
    #[error("check #{index}: unresolved reference @{name}")]
    Unresolved { index: usize, name: String },
    #[error("check #{index} ({id}): {message}")]
    Arguments { index: usize, id: String, message: String },
    #[error("max_degree {0} exceeds the limit {DEGREE_LIMIT}")]
    Degree(usize),
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub seed: u64,
    pub max_degree: usize,
    pub checks: Vec<CheckSpec>,
}

#[derive(Clone, Debug)]
pub struct CheckSpec {
    pub id: String,
    pub task: Task,
    pub expect: Option<Expectation>,
}

/// What a check's outcome is compared against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expectation {
    Pass,
    Fail,
    /// Every computed homology group vanishes.
    Zero,
    Values(Vec<FGAbelianGroup>),
}

impl TryFrom<Value> for Expectation {
    type Error = String;
    fn try_from(v: Value) -> Result<Self, String> {
        match v {
            Value::String(s) => match s.as_str() {
                "pass" => Ok(Expectation::Pass),
                "fail" => Ok(Expectation::Fail),
                "zero" | "all-zero" => Ok(Expectation::Zero),
                other => Err(format!("unknown expectation {other:?}")),
            },
            Value::Array(items) => items.into_iter().map(group_literal).collect::<Result<_, _>>().map(Expectation::Values),
            other => Err(format!("expectation must be a string or a list of groups, got {other}")),
        }
    }
}

fn group_literal(v: Value) -> Result<FGAbelianGroup, String> {
    match v {
        Value::String(s) => s.parse().map_err(|e: equihom_linalg::LinalgError| e.to_string()),
        other => serde_json::from_value(other).map_err(|e| e.to_string()),
    }
}

/// Overrides from the command line.
#[derive(Clone, Copy, Debug, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub max_degree: Option<usize>,
}

pub fn parse(text: &str, overrides: Overrides) -> Result<Scenario, InputError> {
    let root: Value = serde_json::from_str(text)?;
    let Value::Object(mut root) = root else {
        return Err(InputError::Shape("top level must be an object".into()));
    };
    match root.remove("schema_version") {
        Some(Value::Number(n)) if n.as_u64() == Some(SCHEMA_VERSION) => {}
        Some(other) => return Err(InputError::Schema(other.to_string())),
        None => return Err(InputError::Schema("nothing".into())),
    }
    let seed = match root.remove("seed") {
        None => 0,
        Some(v) => v.as_u64().ok_or_else(|| InputError::Shape("seed must be a nonnegative integer".into()))?,
    };
    let max_degree = match root.remove("max_degree") {
        None => DEFAULT_MAX_DEGREE,
        Some(v) => v.as_u64().ok_or_else(|| InputError::Shape("max_degree must be a nonnegative integer".into()))? as usize,
    };
    let objects = match root.remove("objects") {
        None => Map::new(),
        Some(Value::Object(m)) => m,
        Some(_) => return Err(InputError::Shape("objects must be a map from names to definitions".into())),
    };
    let checks = match root.remove("checks") {
        Some(Value::Array(v)) => v,
        _ => return Err(InputError::Shape("checks must be a list".into())),
    };
    if let Some(k) = root.keys().next() {
        return Err(InputError::Shape(format!("unknown field {k:?}")));
    }
    let seed = overrides.seed.unwrap_or(seed);
    let max_degree = overrides.max_degree.unwrap_or(max_degree);
    if max_degree > DEGREE_LIMIT {
        return Err(InputError::Degree(max_degree));
    }
    let objects = object_table(objects)?;
    let checks = checks
        .into_iter()
        .enumerate()
        .map(|(index, entry)| parse_check(index, entry, &objects, max_degree))
        .collect::<Result<_, _>>()?;
    Ok(Scenario { seed, max_degree, checks })
}

const OBJECT_KINDS: [&str; 7] = ["group", "subgroup", "ring", "complex", "category", "gset", "coefficients"];

fn object_table(objects: Map<String, Value>) -> Result<BTreeMap<String, Value>, InputError> {
    objects
        .into_iter()
        .map(|(name, def)| match def {
            Value::Object(m) if m.len() == 1 => {
                let (kind, value) = m.into_iter().next().expect("one entry");
                if !OBJECT_KINDS.contains(&kind.as_str()) {
                    return Err(InputError::Shape(format!("object {name:?} has unknown kind {kind:?}")));
                }
                Ok((name, value))
            }
            _ => Err(InputError::Shape(format!("object {name:?} must be {{\"<kind>\": definition}}"))),
        })
        .collect()
}

enum ResolveError {
    Missing(String),
    TooDeep,
}

/// Replaces every string `"@name"` with the named definition, recursively.
fn resolve(v: Value, objects: &BTreeMap<String, Value>, depth: usize) -> Result<Value, ResolveError> {
    if depth > 32 {
        return Err(ResolveError::TooDeep);
    }
    Ok(match v {
        Value::String(s) if s.starts_with('@') => {
            let name = &s[1..];
            let def = objects.get(name).ok_or_else(|| ResolveError::Missing(name.to_string()))?;
            resolve(def.clone(), objects, depth + 1)?
        }
        Value::Array(items) => Value::Array(items.into_iter().map(|x| resolve(x, objects, depth)).collect::<Result<_, _>>()?),
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, x)| Ok((k, resolve(x, objects, depth)?))).collect::<Result<_, ResolveError>>()?),
        other => other,
    })
}

fn parse_check(index: usize, entry: Value, objects: &BTreeMap<String, Value>, max_degree: usize) -> Result<CheckSpec, InputError> {
    let Value::Object(mut args) = entry else {
        return Err(InputError::Shape(format!("check #{index} must be an object")));
    };
    let id = match args.remove("check") {
        Some(Value::String(s)) => s,
        _ => return Err(InputError::Shape(format!("check #{index} needs a string \"check\" field"))),
    };
    let id = if id == "iso" {
        match args.remove("name") {
            Some(Value::String(name)) => format!("iso:{name}"),
            _ => return Err(InputError::Arguments { index, id, message: "iso needs a \"name\"".into() }),
        }
    } else {
        id
    };
    let info = catalog::lookup(&id).ok_or_else(|| InputError::UnknownCheck { index, id: id.clone() })?;
    let arg_error = |message: String| InputError::Arguments { index, id: id.clone(), message };
    let expect = match args.remove("expect").or_else(|| args.remove("expectation")) {
        None => None,
        Some(v) => Some(Expectation::try_from(v).map_err(arg_error)?),
    };
    let args = resolve(Value::Object(args), objects, 0).map_err(|e| match e {
        ResolveError::Missing(name) => InputError::Unresolved { index, name },
        ResolveError::TooDeep => arg_error("reference chain too deep (cyclic objects?)".into()),
    })?;
    let task = Task::parse(info.kind, args).map_err(arg_error)?;
    if let Some(d) = task.degree() {
        if d > max_degree {
            return Err(InputError::Arguments { index, id: id.clone(), message: format!("degree {d} exceeds max_degree {max_degree}") });
        }
    }
    Ok(CheckSpec { id, task, expect })
}

// ---- argument shapes ----

/// A group: `"cyclic:n"`, `"symmetric:n"` or `{"table": [[...]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(try_from = "Value")]
pub struct GroupArg(pub GroupSpec);

impl TryFrom<Value> for GroupArg {
    type Error = String;
    fn try_from(v: Value) -> Result<Self, String> {
        match v {
            Value::String(s) => GroupSpec::from_str(&s).map(GroupArg).map_err(|e| e.to_string()),
            Value::Object(mut m) if m.len() == 1 && m.contains_key("table") => {
                let t: Vec<Vec<usize>> = serde_json::from_value(m.remove("table").expect("present")).map_err(|e| e.to_string())?;
                Ok(GroupArg(GroupSpec::Table(t)))
            }
            other => Err(format!("a group is \"cyclic:n\", \"symmetric:n\" or {{\"table\": ...}}, got {other}")),
        }
    }
}

/// A group element, by index or by label.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum ElemArg {
    Index(usize),
    Label(String),
}

/// `[elements]`, `"whole"`, `"trivial"`, `"order:k"` (first subgroup of that
/// order, subgroups sorted by order then elements) or `{"generated": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(try_from = "Value")]
pub enum SubgroupArg {
    Elements(Vec<ElemArg>),
    Whole,
    Trivial,
    Order(usize),
    Generated(Vec<ElemArg>),
}

impl TryFrom<Value> for SubgroupArg {
    type Error = String;
    fn try_from(v: Value) -> Result<Self, String> {
        match v {
            Value::String(s) => match s.as_str() {
                "whole" => Ok(SubgroupArg::Whole),
                "trivial" => Ok(SubgroupArg::Trivial),
                _ => s
                    .strip_prefix("order:")
                    .and_then(|k| k.trim().parse().ok())
                    .map(SubgroupArg::Order)
                    .ok_or_else(|| format!("unknown subgroup {s:?}")),
            },
            Value::Array(_) => serde_json::from_value(v).map(SubgroupArg::Elements).map_err(|e| e.to_string()),
            Value::Object(mut m) if m.len() == 1 && m.contains_key("generated") => {
                serde_json::from_value(m.remove("generated").expect("present")).map(SubgroupArg::Generated).map_err(|e| e.to_string())
            }
            other => Err(format!("cannot read subgroup from {other}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(try_from = "Value")]
pub enum GSetArg {
    Point,
    Regular,
    Cosets(SubgroupArg),
}

impl TryFrom<Value> for GSetArg {
    type Error = String;
    fn try_from(v: Value) -> Result<Self, String> {
        match v {
            Value::String(s) if s == "point" => Ok(GSetArg::Point),
            Value::String(s) if s == "regular" => Ok(GSetArg::Regular),
            Value::Object(mut m) if m.len() == 1 && m.contains_key("cosets") => {
                SubgroupArg::try_from(m.remove("cosets").expect("present")).map(GSetArg::Cosets)
            }
            other => Err(format!("a G-set is \"point\", \"regular\" or {{\"cosets\": subgroup}}, got {other}")),
        }
    }
}

/// A ring action: `"trivial"`, `"sign"`, `"conjugation"`, `"perm:..."`,
/// `{"permutations": [[...]]}` or `{"matrices": [[[...]]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum ActionArg {
    Named(String),
    Permutations { permutations: Vec<Vec<i64>> },
    Matrices { matrices: Vec<Vec<Vec<i64>>> },
}

pub type Sparse = Vec<(usize, i64)>;

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(try_from = "Value")]
pub enum RingArg {
    Integers,
    DualNumbers,
    Gaussian,
    MatrixInt(usize),
    Truncated(usize),
    GroupRing(GroupArg),
    Node(Box<RingNode>),
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum RingNode {
    Integers,
    DualNumbers,
    Gaussian,
    GroupRing {
        group: GroupArg,
    },
    Matrix {
        n: usize,
        ring: Option<RingArg>,
    },
    Truncated {
        k: usize,
    },
    Table {
        labels: Vec<String>,
        products: Vec<(usize, usize, Sparse)>,
        unit: Option<Sparse>,
    },
    Unitalize {
        ring: RingArg,
    },
    Sum {
        rings: Vec<RingArg>,
    },
    Tensor {
        rings: Vec<RingArg>,
    },
    WithAction {
        ring: RingArg,
        group: GroupArg,
        subgroup: Option<SubgroupArg>,
        action: ActionArg,
    },
    Crossed {
        ring: RingArg,
        group: Option<GroupArg>,
        subgroup: Option<SubgroupArg>,
        action: Option<ActionArg>,
    },
    GroupoidCrossed {
        ring: RingArg,
        group: GroupArg,
        gset: GSetArg,
        action: Option<ActionArg>,
    },
}

impl TryFrom<Value> for RingArg {
    type Error = String;
    fn try_from(v: Value) -> Result<Self, String> {
        match v {
            Value::String(s) => {
                let num = |rest: &str| rest.trim().parse::<usize>().map_err(|_| format!("bad ring name {s:?}"));
                match s.as_str() {
                    "integers" | "Z" => Ok(RingArg::Integers),
                    "dual_numbers" | "dual" => Ok(RingArg::DualNumbers),
                    "gaussian" | "Z[i]" => Ok(RingArg::Gaussian),
                    _ => {
                        if let Some(n) = s.strip_prefix("matrix:") {
                            Ok(RingArg::MatrixInt(num(n)?))
                        } else if let Some(k) = s.strip_prefix("truncated:") {
                            Ok(RingArg::Truncated(num(k)?))
                        } else if let Some(g) = s.strip_prefix("group:") {
                            GroupArg::try_from(Value::String(g.into())).map(RingArg::GroupRing)
                        } else {
                            Err(format!("unknown ring {s:?}"))
                        }
                    }
                }
            }
            Value::Object(_) => serde_json::from_value(v).map(|n| RingArg::Node(Box::new(n))).map_err(|e| e.to_string()),
            other => Err(format!("cannot read ring from {other}")),
        }
    }
}

/// A vertex action on a complex, relative to the check's group.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum VertexActionArg {
    /// One vertex permutation per standard generator.
    Generators { generators: Vec<Vec<usize>> },
    /// One vertex permutation per element of a subgroup, in element order.
    Elements { subgroup: SubgroupArg, elements: Vec<Vec<usize>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(try_from = "Value")]
pub enum ComplexArg {
    Point,
    Orbit(SubgroupArg),
    Explicit(ComplexDef),
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDef {
    pub vertices: usize,
    pub facets: Vec<Vec<usize>>,
    pub action: Option<VertexActionArg>,
    #[serde(default)]
    pub subdivide: bool,
}

impl TryFrom<Value> for ComplexArg {
    type Error = String;
    fn try_from(v: Value) -> Result<Self, String> {
        match v {
            Value::String(s) if s == "point" => Ok(ComplexArg::Point),
            Value::Object(mut m) if m.len() == 1 && m.contains_key("orbit") => {
                SubgroupArg::try_from(m.remove("orbit").expect("present")).map(ComplexArg::Orbit)
            }
            Value::Object(_) => serde_json::from_value(v).map(ComplexArg::Explicit).map_err(|e| e.to_string()),
            other => Err(format!("cannot read complex from {other}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(try_from = "Value")]
pub enum CategoryArg {
    Path(usize),
    Ring(RingArg),
    CrossedGroupoid { ring: RingArg, group: GroupArg, gset: GSetArg, action: Option<ActionArg> },
    Explicit(CategoryDef),
}

/// Objects, arrows `[source, target, label]`, identities and nonzero
/// compositions `[g, f, [[arrow, coefficient], ...]]` as sparse triples.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDef {
    pub objects: Vec<String>,
    pub arrows: Vec<(usize, usize, String)>,
    pub identities: Vec<Sparse>,
    #[serde(default)]
    pub compose: Vec<(usize, usize, Sparse)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupoidDef {
    ring: RingArg,
    group: GroupArg,
    gset: GSetArg,
    action: Option<ActionArg>,
}

impl TryFrom<Value> for CategoryArg {
    type Error = String;
    fn try_from(v: Value) -> Result<Self, String> {
        let Value::Object(mut m) = v else {
            return Err("a category is an object".into());
        };
        if m.len() == 1 {
            if let Some(n) = m.get("path") {
                return n.as_u64().map(|n| CategoryArg::Path(n as usize)).ok_or_else(|| "path length must be an integer".into());
            }
            if let Some(r) = m.remove("ring") {
                return RingArg::try_from(r).map(CategoryArg::Ring);
            }
            if let Some(g) = m.remove("crossed_groupoid") {
                let d: GroupoidDef = serde_json::from_value(g).map_err(|e| e.to_string())?;
                return Ok(CategoryArg::CrossedGroupoid { ring: d.ring, group: d.group, gset: d.gset, action: d.action });
            }
        }
        serde_json::from_value(Value::Object(m)).map(CategoryArg::Explicit).map_err(|e| e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Monomial {
    pub exps: Vec<u32>,
    pub coef: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyValue {
    pub simplex: Vec<usize>,
    pub poly: Vec<Monomial>,
}

/// Coefficients `"Z"`, `"Z/m"`, or a `+`-separated sum of those.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(try_from = "String")]
pub struct CoefficientsArg(pub CoefficientGroup);

impl Default for CoefficientsArg {
    fn default() -> Self {
        CoefficientsArg(CoefficientGroup::Integers)
    }
}

impl TryFrom<String> for CoefficientsArg {
    type Error = String;
    fn try_from(s: String) -> Result<Self, String> {
        let one = |p: &str| -> Result<CoefficientGroup, String> {
            match p.trim() {
                "Z" => Ok(CoefficientGroup::Integers),
                other => other
                    .strip_prefix("Z/")
                    .and_then(|m| m.trim().parse::<Z>().ok())
                    .filter(|m| *m >= Z::from(2))
                    .map(CoefficientGroup::Cyclic)
                    .ok_or_else(|| format!("unknown coefficients {other:?}")),
            }
        };
        let parts = s.split('+').map(one).collect::<Result<Vec<_>, _>>()?;
        Ok(CoefficientsArg(if parts.len() == 1 { parts.into_iter().next().expect("one") } else { CoefficientGroup::Sum(parts) }))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(try_from = "Value")]
pub enum HochschildCoefficients {
    Ring,
    Twisted(ElemArg),
}

impl TryFrom<Value> for HochschildCoefficients {
    type Error = String;
    fn try_from(v: Value) -> Result<Self, String> {
        match v {
            Value::String(s) if s == "ring" => Ok(HochschildCoefficients::Ring),
            Value::Object(mut m) if m.len() == 1 && m.contains_key("twisted") => {
                serde_json::from_value(m.remove("twisted").expect("present")).map(HochschildCoefficients::Twisted).map_err(|e| e.to_string())
            }
            other => Err(format!("coefficients are \"ring\" or {{\"twisted\": element}}, got {other}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainComplexDef {
    #[serde(default)]
    pub lo: i64,
    pub ranks: Vec<usize>,
    /// `boundaries[k]` is `d_{lo+k+1}` as dense rows.
    pub boundaries: Vec<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyLatticeArg {
    pub complex: ComplexArg,
    pub degree: u32,
}

// ---- per-check arguments ----

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsoArgs {
    pub group: GroupArg,
    pub subgroup: Option<SubgroupArg>,
    pub ring: Option<RingArg>,
    pub gset: Option<GSetArg>,
    pub complex: Option<ComplexArg>,
    /// Coset representatives in coset order, first one in `H`.
    pub section: Option<Vec<ElemArg>>,
    /// `K` for `indxtheta`.
    pub inner: Option<SubgroupArg>,
    pub theta: Option<ElemArg>,
    pub degree: Option<u32>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResIndArgs {
    pub group: GroupArg,
    pub subgroup: SubgroupArg,
    pub inner: SubgroupArg,
    pub ring: RingArg,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtendArgs {
    pub complex: ComplexArg,
    /// Simplices (vertex lists) generating the subcomplex `Y`.
    pub domain: Vec<Vec<usize>>,
    pub values: Vec<PolyValue>,
    pub bound: Option<u32>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RoundtripArgs {
    #[serde(default = "d200")]
    pub instances: usize,
    #[serde(default = "d8")]
    pub max_vertices: usize,
    #[serde(default = "d3")]
    pub max_dim: usize,
    #[serde(default = "d3u")]
    pub degree: u32,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryArgs {
    pub category: CategoryArg,
    pub degree: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SnfArgs {
    pub chain_complex: Option<ChainComplexDef>,
    pub complex: Option<ComplexArg>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleArgs {
    #[serde(default = "d500")]
    pub instances: usize,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BarArgs {
    pub ring: Option<RingArg>,
    pub polyfun: Option<PolyLatticeArg>,
    #[serde(default)]
    pub coefficients: CoefficientsArg,
    pub degree: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BarSumArgs {
    pub rings: Vec<RingArg>,
    #[serde(default)]
    pub coefficients: CoefficientsArg,
    pub degree: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingArgs {
    pub ring: RingArg,
    pub coefficients: Option<HochschildCoefficients>,
    pub degree: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquivariantArgs {
    pub group: GroupArg,
    pub subgroup: Option<SubgroupArg>,
    pub complex: Option<ComplexArg>,
    pub ring: Option<RingArg>,
    pub representatives: Option<Vec<ElemArg>>,
    pub degree: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LadderArgs {
    pub ring: RingArg,
    pub n: i64,
}

fn d200() -> usize {
    200
}
fn d500() -> usize {
    500
}
fn d8() -> usize {
    8
}
fn d3() -> usize {
    3
}
fn d3u() -> u32 {
    3
}

/// Parsed arguments, one variant per check kind.
#[derive(Clone, Debug)]
pub enum Task {
    Iso(equihom_core::induction::IsoName, IsoArgs),
    ResInd(ResIndArgs),
    Extend(ExtendArgs),
    ExtendRoundtrip(RoundtripArgs),
    Cone(CategoryArgs),
    Snf(SnfArgs),
    SnfOracle(OracleArgs),
    Bar(BarArgs),
    BarSum(BarSumArgs),
    Hochschild(RingArgs),
    CyclicNerve(CategoryArgs),
    Cyclic(RingArgs),
    Split(RingArgs),
    Ladder(LadderArgs),
    Hyper(EquivariantArgs),
    Coend(EquivariantArgs),
    Yoneda(EquivariantArgs),
    Reilu(EquivariantArgs),
}

fn typed<T: DeserializeOwned>(args: Value) -> Result<T, String> {
    serde_json::from_value(args).map_err(|e| e.to_string())
}

impl Task {
    fn parse(kind: Kind, args: Value) -> Result<Task, String> {
        let task = match kind {
            Kind::Iso(name) => Task::Iso(name, typed(args)?),
            Kind::ResInd => Task::ResInd(typed(args)?),
            Kind::Extend => Task::Extend(typed(args)?),
            Kind::ExtendRoundtrip => Task::ExtendRoundtrip(typed(args)?),
            Kind::Cone => Task::Cone(typed(args)?),
            Kind::Snf => Task::Snf(typed(args)?),
            Kind::SnfOracle => Task::SnfOracle(typed(args)?),
            Kind::Bar => Task::Bar(typed(args)?),
            Kind::BarSum => Task::BarSum(typed(args)?),
            Kind::Hochschild => Task::Hochschild(typed(args)?),
            Kind::CyclicNerve => Task::CyclicNerve(typed(args)?),
            Kind::Cyclic => Task::Cyclic(typed(args)?),
            Kind::Split => Task::Split(typed(args)?),
            Kind::Ladder => Task::Ladder(typed(args)?),
            Kind::Hyper => Task::Hyper(typed(args)?),
            Kind::Coend => Task::Coend(typed(args)?),
            Kind::Yoneda => Task::Yoneda(typed(args)?),
            Kind::Reilu => Task::Reilu(typed(args)?),
        };
        task.check_shape()?;
        Ok(task)
    }

    /// Argument combinations serde cannot express.
    fn check_shape(&self) -> Result<(), String> {
        let need = |ok: bool, msg: &str| if ok { Ok(()) } else { Err(msg.to_string()) };
        match self {
            Task::Bar(a) => need(a.ring.is_some() != a.polyfun.is_some(), "give exactly one of \"ring\" and \"polyfun\""),
            Task::BarSum(a) => need(!a.rings.is_empty(), "\"rings\" must be nonempty"),
            Task::Snf(a) => need(a.chain_complex.is_some() != a.complex.is_some(), "give exactly one of \"chain_complex\" and \"complex\""),
            Task::Coend(a) | Task::Reilu(a) => need(a.complex.is_some(), "missing \"complex\""),
            Task::Hyper(a) => need(a.complex.is_some() && a.ring.is_none(), "hyperhomology takes a \"complex\" and no \"ring\""),
            Task::Yoneda(a) => need(a.subgroup.is_some() && a.complex.is_none(), "yoneda takes a \"subgroup\" and no \"complex\""),
            _ => Ok(()),
        }
    }

    /// The homological degree the check computes up to, when it has one.
    pub fn degree(&self) -> Option<usize> {
        match self {
            Task::Bar(a) => a.degree,
            Task::BarSum(a) => a.degree,
            Task::Hochschild(a) | Task::Cyclic(a) | Task::Split(a) => a.degree,
            Task::CyclicNerve(a) => a.degree,
            Task::Hyper(a) | Task::Coend(a) | Task::Yoneda(a) | Task::Reilu(a) => a.degree,
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scenario(checks: &str) -> String {
        format!(r#"{{"schema_version": 1, "seed": 3, "objects": {{"S3": {{"group": "symmetric:3"}}}}, "checks": {checks}}}"#)
    }

    #[test]
    fn iso_name_and_references() {
        let s = parse(&scenario(r#"[{"check":"iso","name":"green","group":"@S3","subgroup":"order:3","ring":"Z"}]"#), Overrides::default()).unwrap();
        assert_eq!(s.checks[0].id, "iso:green");
        assert_eq!(s.max_degree, DEFAULT_MAX_DEGREE);
        let Task::Iso(_, a) = &s.checks[0].task else { panic!() };
        assert_eq!(a.group, GroupArg(GroupSpec::Symmetric(3)));
        assert_eq!(a.subgroup, Some(SubgroupArg::Order(3)));
    }

    #[test]
    fn input_errors() {
        let bad = |text: &str| parse(text, Overrides::default()).unwrap_err();
        assert!(matches!(bad("{"), InputError::Json(_)));
        assert!(matches!(bad(r#"{"schema_version": 2, "checks": []}"#), InputError::Schema(_)));
        assert!(matches!(bad(&scenario(r#"[{"check":"nope"}]"#)), InputError::UnknownCheck { .. }));
        assert!(matches!(bad(&scenario(r#"[{"check":"hochschild","ring":"@R"}]"#)), InputError::Unresolved { .. }));
        assert!(matches!(bad(&scenario(r#"[{"check":"hochschild","ring":"Z","colour":1}]"#)), InputError::Arguments { .. }));
        assert!(matches!(bad(&scenario(r#"[{"check":"hochschild","ring":"Z","degree":5}]"#)), InputError::Arguments { .. }));
        assert!(matches!(bad(&scenario(r#"[{"check":"bar-probe"}]"#)), InputError::Arguments { .. }));
        let deep = Overrides { max_degree: Some(7), ..Default::default() };
        assert!(matches!(parse(&scenario("[]"), deep), Err(InputError::Degree(7))));
    }

    #[test]
    fn expectations() {
        assert_eq!(Expectation::try_from(Value::from("zero")).unwrap(), Expectation::Zero);
        let v: Value = serde_json::json!(["Z^2", {"rank": 0, "torsion": [2, 2]}, "0"]);
        let Expectation::Values(gs) = Expectation::try_from(v).unwrap() else { panic!() };
        assert_eq!(gs, vec![FGAbelianGroup::free(2), FGAbelianGroup::from_small(0, &[2, 2]), FGAbelianGroup::zero()]);
        assert!(Expectation::try_from(Value::from("maybe")).is_err());
    }

    #[test]
    fn ring_shapes() {
        let r: RingArg = serde_json::from_value(serde_json::json!({
            "op": "crossed", "ring": "gaussian", "group": "cyclic:2", "action": "sign"
        }))
        .unwrap();
        assert!(matches!(r, RingArg::Node(_)));
        assert_eq!(serde_json::from_value::<RingArg>(Value::from("truncated:2")).unwrap(), RingArg::Truncated(2));
        assert!(serde_json::from_value::<RingArg>(Value::from("quaternions")).is_err());
        let c: CoefficientsArg = serde_json::from_value(Value::from("Z + Z/2")).unwrap();
        assert_eq!(c.0, CoefficientGroup::Sum(vec![CoefficientGroup::Integers, CoefficientGroup::Cyclic(Z::from(2))]));
    }
}
