//! JSON documents for graphs and cocycles, and their conversion to core types.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use kgt_core::cocycle::{check_cocycle, product_cocycle, skew_lift, Coboundary, Cocycle, CocycleKind};
use kgt_core::constructions::{cartesian, skew_product, GroupTable};
use kgt_core::degree::MultiDegree;
use kgt_core::kgraph::{validate_skeleton, EdgeDecl, GraphError, KGraph, KGraphSkeleton, SquareDecl};
use kgt_core::phase::Phase;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An angle written as `p/q turn`, `a/b rad`, `p/q turn + a/b rad` or
/// `<float> rad`; a bare JSON number is read as float radians.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Angle(pub Phase);

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Radians(f64),
        }
        match Repr::deserialize(d)? {
            Repr::Text(s) => Phase::from_str(&s).map(Angle).map_err(serde::de::Error::custom),
            Repr::Radians(r) if r.is_finite() => Ok(Angle(Phase::float(r))),
            Repr::Radians(r) => Err(serde::de::Error::custom(format!("angle {r} is not finite"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeEntry {
    pub id: String,
    /// 1-based.
    pub color: usize,
    pub range: String,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SquareEntry {
    /// `[e, f]` with color(e) < color(f).
    pub first: [String; 2],
    /// `[f′, e′]` with `ef = f′e′`.
    pub second: [String; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub k: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeEntry>,
    #[serde(default)]
    pub squares: Vec<SquareEntry>,
}

impl GraphDocument {
    /// Rejects color 0 and colors above `k` before core validation sees them.
    pub fn to_skeleton(&self) -> Result<KGraphSkeleton, GraphError> {
        let mut edges = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            if e.color == 0 || e.color > self.k {
                return Err(GraphError::MalformedSkeleton(format!(
                    "edge {:?} has color {} outside 1..={}",
                    e.id, e.color, self.k
                )));
            }
            edges.push(EdgeDecl { id: e.id.clone(), color: e.color - 1, range: e.range.clone(), source: e.source.clone() });
        }
        let squares = self.squares.iter().map(|s| SquareDecl { first: s.first.clone(), second: s.second.clone() }).collect();
        Ok(KGraphSkeleton { k: self.k, vertices: self.vertices.clone(), edges, squares })
    }

    pub fn from_skeleton(s: &KGraphSkeleton) -> Self {
        GraphDocument {
            k: s.k,
            vertices: s.vertices.clone(),
            edges: s
                .edges
                .iter()
                .map(|e| EdgeEntry { id: e.id.clone(), color: e.color + 1, range: e.range.clone(), source: e.source.clone() })
                .collect(),
            squares: s.squares.iter().map(|q| SquareEntry { first: q.first.clone(), second: q.second.clone() }).collect(),
        }
    }

    pub fn from_graph(g: &KGraph) -> Self {
        Self::from_skeleton(&g.skeleton())
    }

    pub fn to_graph(&self) -> Result<KGraph, GraphError> {
        validate_skeleton(&self.to_skeleton()?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Cyclic(usize),
    /// Multiplication table with the identity at index 0.
    Table(Vec<Vec<usize>>),
}

impl GroupSpec {
    fn to_group(&self) -> Result<GroupTable, LoadError> {
        match self {
            GroupSpec::Cyclic(0) => Err(LoadError::Invalid("the cyclic group needs positive order".into())),
            GroupSpec::Cyclic(n) => Ok(GroupTable::cyclic(*n)),
            GroupSpec::Table(t) => GroupTable::new(t.clone()).map_err(|e| LoadError::Invalid(e.to_string())),
        }
    }
}

/// Parameters of a builtin cocycle, tagged by its name.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", content = "params", rename_all = "snake_case", deny_unknown_fields)]
pub enum Builtin {
    Trivial,
    /// `c((μ,m),(ν,n)) = F(ν)^{|m|}` with `F` given on edges (unlisted edges give 1).
    CF { base_rank: usize, edge_phases: BTreeMap<String, Angle> },
    COmega { base_rank: usize, omega: Vec<Angle> },
    /// Bicharacter `Π θ[a][b]^{m_{r+a} n_{r+b}}`; the rotation cocycle on a
    /// 2-graph is `base_rank 0`, `theta [[0, 0], [θ, 0]]`.
    CSigma { base_rank: usize, theta: Vec<Vec<Angle>> },
    SkewLift {
        base_graph: GraphDocument,
        base: Box<CocycleDocument>,
        group: GroupSpec,
        /// Group element of each base edge.
        functor: BTreeMap<String, usize>,
    },
    Product {
        left_graph: GraphDocument,
        left: Box<CocycleDocument>,
        right_graph: GraphDocument,
        right: Box<CocycleDocument>,
    },
    /// `δb` for `b` given on path labels (unlisted paths give 1).
    Coboundary { values: Vec<(String, Angle)> },
}

/// `{"kind": "builtin", "name", "params", "cap"?}` or
/// `{"kind": "table", "entries", "cap"}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawCocycle", into = "RawCocycle")]
pub enum CocycleDocument {
    Builtin {
        builtin: Builtin,
        /// Degree cap of the load-time cocycle check.
        cap: Option<Vec<u32>>,
    },
    Table {
        /// `(λ, μ, c(λ, μ))` by path label; unlisted pairs give 1.
        entries: Vec<(String, String, Angle)>,
        cap: Vec<u32>,
    },
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum CocycleKindTag {
    Builtin,
    Table,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCocycle {
    kind: CocycleKindTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    params: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    entries: Option<Vec<(String, String, Angle)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cap: Option<Vec<u32>>,
}

impl TryFrom<RawCocycle> for CocycleDocument {
    type Error = String;

    fn try_from(raw: RawCocycle) -> Result<Self, String> {
        match raw.kind {
            CocycleKindTag::Builtin => {
                if raw.entries.is_some() {
                    return Err("a builtin cocycle has no `entries`".into());
                }
                let name = raw.name.ok_or("a builtin cocycle needs a `name`")?;
                let mut tagged = serde_json::Map::new();
                tagged.insert("name".into(), serde_json::Value::String(name));
                if let Some(p) = raw.params {
                    tagged.insert("params".into(), p);
                }
                let builtin = Builtin::deserialize(serde_json::Value::Object(tagged)).map_err(|e| e.to_string())?;
                Ok(CocycleDocument::Builtin { builtin, cap: raw.cap })
            }
            CocycleKindTag::Table => {
                if raw.name.is_some() || raw.params.is_some() {
                    return Err("a table cocycle has no `name` or `params`".into());
                }
                let entries = raw.entries.ok_or("a table cocycle needs `entries`")?;
                let cap = raw.cap.ok_or("a table cocycle needs a `cap`")?;
                Ok(CocycleDocument::Table { entries, cap })
            }
        }
    }
}

impl From<CocycleDocument> for RawCocycle {
    fn from(doc: CocycleDocument) -> Self {
        match doc {
            CocycleDocument::Builtin { builtin, cap } => {
                let mut tagged = match serde_json::to_value(&builtin).expect("builtins serialize") {
                    serde_json::Value::Object(m) => m,
                    _ => unreachable!("adjacently tagged enums serialize to objects"),
                };
                let name = match tagged.remove("name") {
                    Some(serde_json::Value::String(s)) => s,
                    _ => unreachable!("tag is a string"),
                };
                RawCocycle { kind: CocycleKindTag::Builtin, name: Some(name), params: tagged.remove("params"), entries: None, cap }
            }
            CocycleDocument::Table { entries, cap } => {
                RawCocycle { kind: CocycleKindTag::Table, name: None, params: None, entries: Some(entries), cap: Some(cap) }
            }
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{0}")]
    Graph(#[from] GraphError),
    #[error("invalid cocycle: {0}")]
    Invalid(String),
    #[error("cocycle graph does not match the construction: {0}")]
    GraphMismatch(String),
    #[error("cocycle identity fails: {0}")]
    NotACocycle(String),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "Z/{n}"),
            GroupSpec::Table(t) => write!(f, "group of order {}", t.len()),
        }
    }
}

fn phases(v: &[Angle]) -> Vec<Phase> {
    v.iter().map(|a| a.0).collect()
}

fn same_graph(expected: &KGraph, built: &KGraph, what: &str) -> Result<(), LoadError> {
    if expected == built {
        Ok(())
    } else {
        Err(LoadError::GraphMismatch(format!("the graph is not the {what} of the embedded factors")))
    }
}

/// Default cap of the load-time check: 2 in every color.
pub fn default_cap(k: usize) -> MultiDegree {
    MultiDegree::splat(k, 2)
}

impl CocycleDocument {
    pub fn builtin(builtin: Builtin) -> Self {
        CocycleDocument::Builtin { builtin, cap: None }
    }

    pub fn cap(&self, k: usize) -> Result<MultiDegree, LoadError> {
        let raw = match self {
            CocycleDocument::Builtin { cap, .. } => cap.clone(),
            CocycleDocument::Table { cap, .. } => Some(cap.clone()),
        };
        match raw {
            None => Ok(default_cap(k)),
            Some(c) if c.len() == k => Ok(MultiDegree::new(c)),
            Some(c) => Err(LoadError::Invalid(format!("cap has {} entries but the graph has rank {k}", c.len()))),
        }
    }

    /// Builds the cocycle on `graph` without the load-time check.
    pub fn build(&self, graph: &Arc<KGraph>) -> Result<Cocycle, LoadError> {
        let invalid = |e: kgt_core::cocycle::CocycleError| LoadError::Invalid(e.to_string());
        match self {
            CocycleDocument::Table { entries, .. } => {
                let mut map = BTreeMap::new();
                for (a, b, v) in entries {
                    map.insert((graph.path_by_label(a)?, graph.path_by_label(b)?), v.0);
                }
                Cocycle::table(graph.clone(), map).map_err(invalid)
            }
            CocycleDocument::Builtin { builtin, .. } => match builtin {
                Builtin::Trivial => Ok(Cocycle::trivial(graph.clone())),
                Builtin::CSigma { base_rank, theta } => {
                    Cocycle::sigma(graph.clone(), *base_rank, theta.iter().map(|r| phases(r)).collect()).map_err(invalid)
                }
                Builtin::COmega { base_rank, omega } => {
                    if base_rank + omega.len() != graph.k() {
                        return Err(LoadError::Invalid(format!(
                            "base rank {base_rank} plus {} generators differs from k = {}",
                            omega.len(),
                            graph.k()
                        )));
                    }
                    Ok(Cocycle::from_kind(graph.clone(), CocycleKind::Omega { base_rank: *base_rank, omega: phases(omega) }))
                }
                Builtin::CF { base_rank, edge_phases } => {
                    if *base_rank > graph.k() {
                        return Err(LoadError::Invalid(format!("base rank {base_rank} exceeds k = {}", graph.k())));
                    }
                    let mut values = vec![Phase::one(); graph.edge_count()];
                    for (name, v) in edge_phases {
                        let e = graph.edge_by_name(name).ok_or_else(|| GraphError::UnknownName(name.clone()))?;
                        values[e] = v.0;
                    }
                    Ok(Cocycle::from_kind(graph.clone(), CocycleKind::Functor { base_rank: *base_rank, edge_phases: values }))
                }
                Builtin::Coboundary { values } => {
                    let mut b = Coboundary::new();
                    for (label, v) in values {
                        b.set(graph.path_by_label(label)?, v.0);
                    }
                    Ok(Cocycle::coboundary(graph.clone(), b))
                }
                Builtin::SkewLift { base_graph, base, group, functor } => {
                    let bg = Arc::new(base_graph.to_graph()?);
                    let base_c = base.load(&bg)?;
                    let mut labels = Vec::with_capacity(bg.edge_count());
                    for e in bg.edges() {
                        labels.push(*functor.get(&e.name).ok_or_else(|| LoadError::Invalid(format!("no group label for edge {:?}", e.name)))?);
                    }
                    let skew = skew_product(&bg, &group.to_group()?, &labels).map_err(|e| LoadError::Invalid(e.to_string()))?;
                    same_graph(graph, &skew.graph, &format!("skew product by {group}"))?;
                    let lifted = skew_lift(&base_c, &skew).map_err(invalid)?;
                    Ok(Cocycle::from_kind(graph.clone(), lifted.kind().clone()))
                }
                Builtin::Product { left_graph, left, right_graph, right } => {
                    let (lg, rg) = (Arc::new(left_graph.to_graph()?), Arc::new(right_graph.to_graph()?));
                    let (lc, rc) = (left.load(&lg)?, right.load(&rg)?);
                    let prod = cartesian(&lg, &rg);
                    same_graph(graph, &prod.graph, "Cartesian product")?;
                    let c = product_cocycle(&lc, &rc, &prod).map_err(invalid)?;
                    Ok(Cocycle::from_kind(graph.clone(), c.kind().clone()))
                }
            },
        }
    }

    /// Builds the cocycle and checks the cocycle identity up to the cap.
    pub fn load(&self, graph: &Arc<KGraph>) -> Result<Cocycle, LoadError> {
        let c = self.build(graph)?;
        let r = check_cocycle(&c, &self.cap(graph.k())?, 1e-9);
        match r.counterexample {
            Some(w) => Err(LoadError::NotACocycle(w)),
            None => Ok(c),
        }
    }
}

/// The rotation cocycle `θ^{d(λ)₂ d(μ)₁}` on a 2-graph as a document.
pub fn rotation_cocycle(theta: Phase) -> CocycleDocument {
    let zero = Angle(Phase::one());
    CocycleDocument::builtin(Builtin::CSigma { base_rank: 0, theta: vec![vec![zero, zero], vec![Angle(theta), zero]] })
}
