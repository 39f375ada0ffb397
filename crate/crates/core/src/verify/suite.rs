//! Named checks, instance sets and the suite runner.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::random::{names_corruption, perturb_square, random_cocycle, random_kgraph, GenerationError, GraphBounds};
use crate::cocycle::{c_omega, check_cocycle, product_cocycle, skew_lift, Cocycle};
use crate::constructions::{cartesian, crossed_product, skew_product, Automorphism, GroupTable, ZlAction};
use crate::degree::MultiDegree;
use crate::fock::checks::{
    ck_relations_check, commutation_check, cp_identity_check, gauge_check, nica_basis_check, psi_check, rep_axioms_check,
    surjectivity_check, XFock, YFock,
};
use crate::fock::{FockKind, FockSpace};
use crate::kgraph::{f1, f2, omega, validate_skeleton, KGraph, Path};
use crate::outcome::{spread_indices, Outcome};
use crate::phase::Phase;
use crate::scalar::{GaussRat, Scalar};
use crate::system::System;
use crate::xmod::checks::{
    x_adjoint_check, x_associativity_check, x_compact_alignment_check, x_hermitian_check, x_iota_functoriality_check,
    x_left_action_check, x_tensor_iso_check, x_theta_density_check, x_unit_action_check,
};
use crate::xmod::{vertex_constant, vertex_indicator, x_basis, x_zero, VertexFn, XElem};
use crate::ymod::checks::{
    alpha_decomposition_check, alpha_k_check, alpha_norm_check, alpha_properties_check, cylinder_density_check,
    depth_coherence_check, interchange_check, iota_theta_decomposition_check, sup_norm_check, y_associativity_check,
    y_iota_formula_check, y_left_action_check, y_tensor_iso_check,
};
use crate::ymod::{y_add, y_delta, y_lift};

/// What a check needs from an instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    /// The graph and cocycle only.
    Graph,
    /// The finite-path modules.
    X,
    /// The infinite-path modules; needs a source-free graph.
    Y,
    /// Truncated Fock space of the finite-path system.
    FockX,
    /// Truncated Fock space of the infinite-path system; needs a source-free graph.
    FockY,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckInfo {
    pub id: &'static str,
    pub level: Level,
    pub summary: &'static str,
}

const fn info(id: &'static str, level: Level, summary: &'static str) -> CheckInfo {
    CheckInfo { id, level, summary }
}

/// Every check, in run order.
pub const REGISTRY: &[CheckInfo] = &[
    info("cocycle-identity", Level::Graph, "cocycle identity and normalization on all composable triples up to the cap"),
    info("skeleton-roundtrip", Level::Graph, "the skeleton of a validated graph validates back to the same graph"),
    info("square-perturbation", Level::Graph, "a corrupted square entry is rejected with an error naming that square"),
    info("x-tensor-inner-product", Level::X, "<f1 g1, f2 g2> = <g1, <f1,f2> g2> and products span X_{m+n}"),
    info("x-associativity", Level::X, "(fg)h = f(gh) in the finite-path system"),
    info("x-hermitian", Level::X, "right linearity, conjugate symmetry and positive definiteness of X_n"),
    info("x-unit-action", Level::X, "products with X_0 are the module actions"),
    info("x-iota-functoriality", Level::X, "iota_n^p iota_m^n = iota_m^p and iota(S)(xy) = (Sx)y"),
    info("x-adjoint", Level::X, "Theta_{g,f} is the adjoint of Theta_{f,g}"),
    info("x-theta-density", Level::X, "rank-one operators of point masses span the block-diagonal operators"),
    info("left-action-in-x", Level::X, "the left action of C(vertices) is a sum of rank-one operators with kernel at the sources"),
    info("x-compact-alignment", Level::X, "iota(S) iota(T) is block diagonal at the join degree"),
    info("y-tensor-inner-product", Level::Y, "<f1 g1, f2 g2> = <g1, <f1,f2> g2> on cylinder functions"),
    info("y-associativity", Level::Y, "(fg)h = f(gh) in the infinite-path system"),
    info("alpha-properties", Level::Y, "alpha_n respects both actions, inner products and products, and is injective"),
    info("alpha-k-homomorphism", Level::Y, "alpha^K is multiplicative, *-preserving and contractive"),
    info("iota-theta-decomposition", Level::Y, "both rank-one decompositions of iota(Theta) iota(Theta) agree"),
    info("y-iota-formula", Level::Y, "the pathwise formula for iota(Theta_{alpha f, alpha g}) matches the operator"),
    info("interchange", Level::Y, "alpha^K of iota(Theta) iota(Theta) is the product of the images"),
    info("left-action-in-y", Level::Y, "the left action on Y_n is a sum of rank-one operators"),
    info("alpha-decomposition", Level::Y, "the pointwise decomposition reassembles alpha_{n,m}(f)"),
    info("cylinder-density", Level::Y, "shifted cylinder functions span the cylinder functions on Z(u)"),
    info("sup-norm", Level::Y, "sup norm equals module norm on functions supported over an s-section"),
    info("alpha-norm", Level::Y, "alpha_{n,m} does not increase the norm"),
    info("depth-coherence", Level::Y, "all operations commute with raising the depth"),
    info("fock-representation-x", Level::FockX, "creation operators on the X Fock space form a representation"),
    info("fock-representation-y", Level::FockY, "creation operators on the Y Fock space form a representation"),
    info("fock-gauge", Level::FockX, "the gauge unitaries implement the torus action"),
    info("nica-covariance", Level::FockX, "compacts at degrees m and n multiply through the join"),
    info("cuntz-krieger", Level::FockX, "sum over vertex paths of s s* is the vertex projection above the degree"),
    info("commutation-relations", Level::FockX, "s_e s_f = c(e,f) conj c(f',e') s_f' s_e' for every square"),
    info("cp-identity", Level::FockY, "the covariance identity for the left action holds away from the top blocks"),
    info("psi-model", Level::FockY, "psi = creation after alpha is an injective Nica covariant representation"),
    info("surjectivity", Level::FockY, "every Fock basis vector is reproduced from psi-images"),
];

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum VerifyError {
    #[error("unknown check selector '{0}'")]
    UnknownCheck(String),
    #[error(transparent)]
    Generation(#[from] GenerationError),
}

fn glob_match(pattern: &[u8], text: &[u8]) -> bool {
    match (pattern.first(), text.first()) {
        (None, None) => true,
        (Some(b'*'), _) => glob_match(&pattern[1..], text) || (!text.is_empty() && glob_match(pattern, &text[1..])),
        (Some(b'?'), Some(_)) => glob_match(&pattern[1..], &text[1..]),
        (Some(a), Some(b)) if a == b => glob_match(&pattern[1..], &text[1..]),
        _ => false,
    }
}

/// Resolves a comma-separated list of check ids or `*`/`?` globs, or `all`.
/// The result follows registry order without repeats.
pub fn select(selector: &str) -> Result<Vec<&'static CheckInfo>, VerifyError> {
    let mut chosen = vec![false; REGISTRY.len()];
    let mut any = false;
    for part in selector.split(',').map(str::trim) {
        if part.is_empty() {
            return Err(VerifyError::UnknownCheck(selector.to_string()));
        }
        let pattern = if part == "all" { "*" } else { part };
        let mut hit = false;
        for (i, c) in REGISTRY.iter().enumerate() {
            if glob_match(pattern.as_bytes(), c.id.as_bytes()) {
                chosen[i] = true;
                hit = true;
            }
        }
        if !hit {
            return Err(VerifyError::UnknownCheck(part.to_string()));
        }
        any = true;
    }
    if !any {
        return Err(VerifyError::UnknownCheck(selector.to_string()));
    }
    Ok(REGISTRY.iter().zip(chosen).filter(|(_, c)| *c).map(|(i, _)| i).collect())
}

/// A degree given for every rank at once, or for one rank only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DegreeSpec {
    Uniform(u32),
    Exact(MultiDegree),
}

impl DegreeSpec {
    /// `None` when an exact degree has the wrong rank.
    pub fn resolve(&self, k: usize) -> Option<MultiDegree> {
        match self {
            DegreeSpec::Uniform(v) => Some(MultiDegree::splat(k, *v)),
            DegreeSpec::Exact(d) if d.rank() == k => Some(d.clone()),
            DegreeSpec::Exact(_) => None,
        }
    }
}

impl core::fmt::Display for DegreeSpec {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            DegreeSpec::Uniform(v) => write!(f, "{v}"),
            DegreeSpec::Exact(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Random graphs in the battery.
    pub graphs: usize,
    /// Random cocycles per random graph; even-numbered ones are quarter-turn valued.
    pub cocycles_per_graph: usize,
    pub bounds: GraphBounds,
    /// Largest total degree used by the graph and module checks.
    pub cap: DegreeSpec,
    /// Depth minus degree for cylinder functions in the module checks.
    pub slack: DegreeSpec,
    /// Fock truncation.
    pub fock_truncation: DegreeSpec,
    /// Fock depth for the infinite-path system; at least the truncation.
    pub fock_depth: DegreeSpec,
    /// Fock spaces are shrunk until their dimension is at most this.
    pub max_fock_dim: usize,
    /// Degree tuples tried per check and instance.
    pub max_degree_sets: usize,
    /// Basis tuples tried per degree tuple.
    pub max_cases: usize,
    pub perturbations: usize,
    pub tol: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            graphs: 25,
            cocycles_per_graph: 4,
            bounds: GraphBounds { max_edges_per_color: 3, ..GraphBounds::default() },
            cap: DegreeSpec::Uniform(2),
            slack: DegreeSpec::Uniform(1),
            fock_truncation: DegreeSpec::Uniform(2),
            fock_depth: DegreeSpec::Uniform(4),
            max_fock_dim: 400,
            max_degree_sets: 6,
            max_cases: 64,
            perturbations: 8,
            tol: 1e-9,
        }
    }
}

/// A graph with a cocycle to run checks on.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub graph: Arc<KGraph>,
    pub cocycle: Cocycle,
    /// Seed of a randomly generated instance.
    pub seed: Option<u64>,
}

impl Instance {
    pub fn new(name: impl Into<String>, cocycle: Cocycle) -> Self {
        Instance { name: name.into(), graph: cocycle.graph().clone(), cocycle, seed: None }
    }
}

/// The built-in instances: the one-vertex 2-graph with four twists, the
/// two-cycle, a finite-path 2-graph, and one instance of each construction.
pub fn fixture_instances() -> Vec<Instance> {
    let g1 = Arc::new(f1());
    let g2 = Arc::new(f2());
    let mut out = vec![
        Instance::new("f1-trivial", Cocycle::trivial(g1.clone())),
        Instance::new("f1-quarter-turn", Cocycle::theta(g1.clone(), Phase::turns(1, 4))),
        Instance::new("f1-one-radian", Cocycle::theta(g1.clone(), Phase::radians(1, 1))),
        Instance::new("f1-sixth-turn", Cocycle::theta(g1, Phase::turns(1, 6))),
        Instance::new("f2-trivial", Cocycle::trivial(g2.clone())),
    ];
    let om = Arc::new(omega(2, &MultiDegree::from([2, 2])));
    out.push(Instance::new("omega-quarter-turn", Cocycle::theta(om, Phase::turns(1, 4))));
    let prod = cartesian(&g2, &g2);
    let left = random_cocycle(7, &g2, &MultiDegree::from([3]), true);
    let right = random_cocycle(11, &g2, &MultiDegree::from([3]), false);
    let c = product_cocycle(&left, &right, &prod).expect("factors match");
    out.push(Instance::new("f2-times-f2", c));
    let skew = skew_product(&g2, &GroupTable::cyclic(2), &[1, 1]).expect("valid labels");
    let base = random_cocycle(3, &g2, &MultiDegree::from([3]), true);
    out.push(Instance::new("f2-skew-z2", skew_lift(&base, &skew).expect("base matches")));
    let swap = ZlAction { generators: vec![Automorphism { vertices: vec![1, 0], edges: vec![1, 0] }] };
    let crossed = crossed_product(&g2, &swap, &MultiDegree::from([4])).expect("swap is an automorphism");
    let c = c_omega(&crossed, &[Phase::turns(1, 4)]).expect("one generator");
    out.push(Instance::new("f2-crossed-swap", c));
    out
}

fn mix(seed: u64, i: u64) -> u64 {
    let mut z = seed ^ i.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// The random battery: `graphs × cocycles_per_graph` seeded instances.
pub fn random_instances(cfg: &SuiteConfig) -> Result<Vec<Instance>, VerifyError> {
    let mut out = Vec::new();
    for i in 0..cfg.graphs {
        let gseed = mix(cfg.seed, i as u64);
        let g = Arc::new(random_kgraph(gseed, &cfg.bounds)?);
        let cap = cfg.cap.resolve(g.k()).unwrap_or_else(|| MultiDegree::splat(g.k(), 2));
        for j in 0..cfg.cocycles_per_graph {
            let cseed = mix(gseed, j as u64 + 1);
            let cocycle = random_cocycle(cseed, &g, &cap, j % 2 == 0);
            out.push(Instance { name: format!("random-{i}-{j}"), graph: g.clone(), cocycle, seed: Some(cseed) });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    /// The first witness found.
    Fail(String),
    /// Why the check does not apply.
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseReport {
    pub check: &'static str,
    pub instance: String,
    pub seed: Option<u64>,
    pub status: Status,
    pub cases: usize,
    pub millis: u64,
    /// Parameters actually used.
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Report {
    pub cases: Vec<CaseReport>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseReport> {
        self.cases.iter().filter(|c| matches!(c.status, Status::Fail(_)))
    }

    /// `(pass, fail, skipped)` counts.
    pub fn tally(&self) -> (usize, usize, usize) {
        let mut t = (0, 0, 0);
        for c in &self.cases {
            match c.status {
                Status::Pass => t.0 += 1,
                Status::Fail(_) => t.1 += 1,
                Status::Skipped(_) => t.2 += 1,
            }
        }
        t
    }
}

enum Run {
    Done(Outcome, String),
    Skip(String),
}

fn outcome_of(ok: bool, witness: impl FnOnce() -> String) -> Outcome {
    let mut o = Outcome::new();
    o.record(ok, witness);
    o
}

fn spread<T: Clone>(items: &[T], max: usize) -> Vec<T> {
    spread_indices(items.len(), max).map(|i| items[i].clone()).collect()
}

fn nonzero_below(cap: &MultiDegree) -> Vec<MultiDegree> {
    cap.below().into_iter().filter(|d| !d.is_zero()).collect()
}

/// Nonzero `(m, n)` with `m + n ≤ cap`.
fn sum_pairs(cap: &MultiDegree) -> Vec<(MultiDegree, MultiDegree)> {
    let ds = nonzero_below(cap);
    let mut out = Vec::new();
    for m in &ds {
        for n in &ds {
            if m.add(n).le(cap) {
                out.push((m.clone(), n.clone()));
            }
        }
    }
    out
}

/// Nonzero `(p, q, r)` with `p + q + r ≤ cap`.
fn sum_triples(cap: &MultiDegree) -> Vec<(MultiDegree, MultiDegree, MultiDegree)> {
    let mut out = Vec::new();
    for (pq, r) in sum_pairs(cap) {
        for p in nonzero_below(&pq) {
            if let Some(q) = pq.checked_sub(&p).filter(|q| !q.is_zero()) {
                out.push((p, q, r.clone()));
            }
        }
    }
    out
}

/// Nonzero `(m, n)` with `m ∨ n ≤ cap`.
fn join_pairs(cap: &MultiDegree) -> Vec<(MultiDegree, MultiDegree)> {
    let ds = nonzero_below(cap);
    ds.iter().flat_map(|m| ds.iter().map(move |n| (m.clone(), n.clone()))).collect()
}

/// Nonzero `n ≤ m ≤ cap`.
fn nested_pairs(cap: &MultiDegree) -> Vec<(MultiDegree, MultiDegree)> {
    join_pairs(cap).into_iter().filter(|(m, n)| n.le(m)).collect()
}

fn graph_check(id: &str, inst: &Instance, cfg: &SuiteConfig) -> Run {
    let g = &inst.graph;
    let Some(cap) = cfg.cap.resolve(g.k()) else {
        return Run::Skip(format!("cap {} does not have rank {}", cfg.cap, g.k()));
    };
    match id {
        "cocycle-identity" => {
            let r = check_cocycle(&inst.cocycle, &cap, cfg.tol);
            let o = Outcome { cases: r.triples_checked + r.pairs_checked, failure: r.counterexample };
            Run::Done(o, format!("cap {cap}"))
        }
        "skeleton-roundtrip" => {
            let o = match validate_skeleton(&g.skeleton()) {
                Ok(h) => outcome_of(h == **g, || "round trip changed the graph".into()),
                Err(e) => Outcome::failed(format!("skeleton of a valid graph is rejected: {e}")),
            };
            Run::Done(o, String::new())
        }
        "square-perturbation" => {
            let skel = g.skeleton();
            let mut o = Outcome::new();
            for t in 0..cfg.perturbations as u64 {
                let Some((bad, c)) = perturb_square(&skel, mix(inst.seed.unwrap_or(cfg.seed), t)) else {
                    return Run::Skip("the graph has no squares".into());
                };
                let witness = || format!("square {} slot {} changed from {} to {}", c.square, c.slot, c.old, c.new);
                match validate_skeleton(&bad) {
                    Ok(_) => o.record(false, || format!("{}: accepted", witness())),
                    Err(e) => o.record(names_corruption(&e, &c), || format!("{}: error does not name the square: {e}", witness())),
                }
            }
            Run::Done(o, format!("{} perturbations", cfg.perturbations))
        }
        _ => unreachable!("not a graph check"),
    }
}

struct Ctx<'a, S: Scalar> {
    sys: &'a System<S>,
    cap: MultiDegree,
    slack: MultiDegree,
    cfg: &'a SuiteConfig,
}

impl<S: Scalar> Ctx<'_, S> {
    fn sets<T: Clone>(&self, items: &[T]) -> Vec<T> {
        spread(items, self.cfg.max_degree_sets)
    }

    /// Positive parts are perfect squares so exact decompositions exist.
    fn scalars(&self) -> Vec<VertexFn<S>> {
        let mut out = vec![vertex_constant(self.sys, S::from_ints(4, -9))];
        out.extend((0..self.sys.graph().vertex_count()).map(|v| vertex_indicator(self.sys, v)));
        out
    }

    /// A basis combination with distinct coefficients.
    fn mixed(&self, n: &MultiDegree) -> XElem<S> {
        let mut f = x_zero(self.sys, n);
        for (i, c) in f.coeffs.iter_mut().enumerate() {
            *c = S::from_ints(i as i64 + 1, 1 - i as i64);
        }
        f
    }

    fn detail(&self) -> String {
        format!("cap {}, slack {}", self.cap, self.slack)
    }
}

fn each<T>(items: Vec<T>, mut f: impl FnMut(&T) -> Outcome) -> Outcome {
    let mut o = Outcome::new();
    for it in &items {
        o.absorb(f(it));
    }
    o
}

fn module_check<S: Scalar>(id: &str, cx: &Ctx<'_, S>) -> Run {
    let sys = cx.sys;
    let g = sys.graph().clone();
    let max = cx.cfg.max_cases;
    let degrees = cx.sets(&nonzero_below(&cx.cap));
    let o = match id {
        "x-tensor-inner-product" => each(cx.sets(&sum_pairs(&cx.cap)), |(m, n)| x_tensor_iso_check(sys, m, n)),
        "x-associativity" => {
            let triples = sum_triples(&cx.cap);
            if triples.is_empty() {
                return Run::Skip(format!("no three nonzero degrees fit under {}", cx.cap));
            }
            each(cx.sets(&triples), |(p, q, r)| x_associativity_check(sys, p, q, r))
        }
        "x-hermitian" => each(degrees, |n| x_hermitian_check(sys, n, &[cx.mixed(n)], &cx.scalars())),
        "x-unit-action" => each(degrees, |n| x_unit_action_check(sys, n, &cx.scalars())),
        "x-iota-functoriality" => {
            let mut chains = Vec::new();
            for p in nonzero_below(&cx.cap) {
                for n in nonzero_below(&p) {
                    for m in nonzero_below(&n) {
                        chains.push((m, n.clone(), p.clone()));
                    }
                }
            }
            each(cx.sets(&chains), |(m, n, p)| x_iota_functoriality_check(sys, m, n, p, max))
        }
        "x-adjoint" => each(degrees, |n| x_adjoint_check(sys, n, max)),
        "x-theta-density" => {
            let small: Vec<MultiDegree> = nonzero_below(&cx.cap).into_iter().filter(|n| sys.table(n).len() <= 12).collect();
            if small.is_empty() {
                return Run::Skip("every degree has more than 12 paths".into());
            }
            each(cx.sets(&small), |n| x_theta_density_check(sys, n))
        }
        "left-action-in-x" => each(degrees, |n| each(cx.scalars(), |a| x_left_action_check(sys, a, n))),
        "x-compact-alignment" => each(cx.sets(&join_pairs(&cx.cap)), |(m, n)| x_compact_alignment_check(sys, m, n, max)),
        "y-tensor-inner-product" => {
            each(cx.sets(&sum_pairs(&cx.cap)), |(m, n)| y_tensor_iso_check(sys, m, n, &cx.slack, max))
        }
        "y-associativity" => {
            let triples = sum_triples(&cx.cap);
            if triples.is_empty() {
                return Run::Skip(format!("no three nonzero degrees fit under {}", cx.cap));
            }
            each(cx.sets(&triples), |(p, q, r)| y_associativity_check(sys, [p, q, r], &cx.slack, max))
        }
        "alpha-properties" => each(cx.sets(&sum_pairs(&cx.cap)), |(m, n)| alpha_properties_check(sys, m, n, &cx.scalars())),
        "alpha-k-homomorphism" => each(degrees, |n| alpha_k_check(sys, n, &n.add(&cx.slack), &[], max)),
        "iota-theta-decomposition" => {
            each(cx.sets(&join_pairs(&cx.cap)), |(m, n)| iota_theta_decomposition_check(sys, m, n, max))
        }
        "y-iota-formula" => each(cx.sets(&join_pairs(&cx.cap)), |(m, n)| y_iota_formula_check(sys, m, n, &cx.slack, max)),
        "interchange" => each(cx.sets(&join_pairs(&cx.cap)), |(m, n)| interchange_check(sys, m, n, max)),
        "left-action-in-y" => each(degrees, |n| each(cx.scalars(), |a| y_left_action_check(sys, a, n))),
        "alpha-decomposition" => {
            each(cx.sets(&nested_pairs(&cx.cap)), |(m, n)| alpha_decomposition_check(sys, m, n, &[cx.mixed(m)]))
        }
        "cylinder-density" => {
            let mut us: Vec<Path> = Vec::new();
            for n in nonzero_below(&cx.cap) {
                us.extend(spread(&g.paths(&n), 2));
            }
            each(cx.sets(&us), |u| cylinder_density_check(sys, u, &u.degree.add(&cx.slack)))
        }
        "sup-norm" => each(degrees, |n| {
            let mut section: Vec<Path> = Vec::new();
            for p in g.paths(n) {
                if section.iter().all(|q| q.source != p.source) {
                    section.push(p);
                }
            }
            let mut f = y_delta(sys, n, &section[0]);
            for (i, p) in section.iter().enumerate().skip(1) {
                f = y_add(sys, &f, &y_delta(sys, n, p).scale(S::from_ints(i as i64 + 1, -1))).expect("same degree");
            }
            let deep = y_lift(sys, &f, &n.add(&cx.slack)).expect("deeper");
            let mut o = sup_norm_check(sys, &f, &section);
            o.absorb(sup_norm_check(sys, &deep, &section));
            o
        }),
        "alpha-norm" => each(cx.sets(&nested_pairs(&cx.cap)), |(m, n)| {
            let mut fs = x_basis(sys, m);
            fs.push(cx.mixed(m));
            alpha_norm_check(sys, n, &fs)
        }),
        "depth-coherence" => {
            let extra = MultiDegree::unit(sys.k(), 0);
            each(degrees, |n| depth_coherence_check(sys, n, &n.add(&cx.slack), &extra, max))
        }
        _ => unreachable!("not a module check"),
    };
    Run::Done(o, cx.detail())
}

/// Shrinks `(N, D)` one coordinate at a time until the space fits.
fn fit_fock<S: Scalar>(
    sys: &System<S>,
    kind: FockKind,
    mut n: MultiDegree,
    mut d: MultiDegree,
    limit: usize,
) -> Option<FockSpace> {
    let lower = |x: &MultiDegree| {
        let (i, _) = x.entries().iter().enumerate().max_by_key(|(_, v)| **v)?;
        x.checked_sub(&MultiDegree::unit(x.rank(), i))
    };
    loop {
        let space = match kind {
            FockKind::X => FockSpace::x(sys, &n),
            FockKind::Y => FockSpace::y(sys, &n, &d).ok()?,
        };
        if space.dim <= limit && space.dim > 0 {
            return Some(space);
        }
        if kind == FockKind::Y && d != n {
            let slack = d.checked_sub(&n).expect("N <= D");
            let i = (0..slack.rank()).max_by_key(|&i| slack.get(i)).expect("rank");
            d = d.checked_sub(&MultiDegree::unit(d.rank(), i)).expect("positive");
        } else {
            if n.is_zero() {
                return None;
            }
            n = lower(&n)?;
            if kind == FockKind::X {
                d = n.clone();
            } else {
                d = lower(&d)?;
            }
        }
    }
}

fn fock_check<S: Scalar>(id: &str, cx: &Ctx<'_, S>, kind: FockKind) -> Run {
    let sys = cx.sys;
    let k = sys.k();
    let (Some(n), Some(d)) = (cx.cfg.fock_truncation.resolve(k), cx.cfg.fock_depth.resolve(k)) else {
        return Run::Skip(format!("Fock degrees do not have rank {k}"));
    };
    let d = d.join(&n);
    let Some(space) = fit_fock(sys, kind, n, d, cx.cfg.max_fock_dim) else {
        return Run::Skip(format!("no nonzero truncation has dimension at most {}", cx.cfg.max_fock_dim));
    };
    let detail = match kind {
        FockKind::X => format!("N {}, dim {}", space.truncation, space.dim),
        FockKind::Y => format!("N {}, D {}, dim {}", space.truncation, space.depth(), space.dim),
    };
    let max = cx.cfg.max_cases;
    let trunc = space.truncation.clone();
    let blocks = cx.sets(&nonzero_below(&trunc));
    let o = match id {
        "fock-representation-x" => rep_axioms_check(&XFock { sys, space: &space }, max),
        "fock-representation-y" => rep_axioms_check(&YFock { sys, space: &space }, max),
        "fock-gauge" => {
            let z: Vec<S> = (0..k).map(|j| S::from_phase(&Phase::turns(j as i64 + 1, 4)).expect("quarter turn")).collect();
            let mut o = gauge_check(&XFock { sys, space: &space }, &z);
            if sys.graph().is_source_free().is_ok() {
                if let Some(ys) = fit_fock(sys, FockKind::Y, trunc.clone(), trunc.add(&MultiDegree::splat(k, 1)), cx.cfg.max_fock_dim) {
                    o.absorb(gauge_check(&YFock { sys, space: &ys }, &z));
                }
            }
            o
        }
        "nica-covariance" => each(cx.sets(&join_pairs(&trunc)), |(m, n)| nica_basis_check(&space, sys, m, n, max)),
        "cuntz-krieger" => each(blocks, |n| ck_relations_check(&space, sys, n, max).outcome),
        "commutation-relations" => {
            if k < 2 {
                return Run::Skip("a rank-one graph has no squares".into());
            }
            if !(0..k).any(|i| (0..k).any(|j| i != j && space.truncation.get(i) > 0 && space.truncation.get(j) > 0)) {
                return Run::Skip(format!("truncation {} holds no two-color path", space.truncation));
            }
            commutation_check(&space, sys, max)
        }
        "cp-identity" => {
            let mut scalars = vec![vertex_constant(sys, S::one())];
            scalars.extend((0..sys.graph().vertex_count()).map(|v| vertex_indicator(sys, v)));
            each(trunc.below(), |n| each(scalars.clone(), |a| cp_identity_check(&space, sys, a, n)))
        }
        "psi-model" => psi_check(&space, sys, max),
        "surjectivity" => surjectivity_check(&space, sys),
        _ => unreachable!("not a Fock check"),
    };
    Run::Done(o, detail)
}

fn run_one<S: Scalar>(info: &CheckInfo, inst: &Instance, sys: &System<S>, cfg: &SuiteConfig) -> Run {
    let k = inst.graph.k();
    let (Some(cap), Some(slack)) = (cfg.cap.resolve(k), cfg.slack.resolve(k)) else {
        return Run::Skip(format!("configured degrees do not have rank {k}"));
    };
    if matches!(info.level, Level::Y | Level::FockY) {
        if let Err((v, c)) = inst.graph.is_source_free() {
            return Run::Skip(format!("vertex {} receives no edge of color {}", inst.graph.vertex_name(v), c + 1));
        }
    }
    let cx = Ctx { sys, cap, slack, cfg };
    match info.level {
        Level::Graph => graph_check(info.id, inst, cfg),
        Level::X | Level::Y => module_check(info.id, &cx),
        Level::FockX => fock_check(info.id, &cx, FockKind::X),
        Level::FockY => fock_check(info.id, &cx, FockKind::Y),
    }
}

fn run_instance<S: Scalar>(
    checks: &[&'static CheckInfo],
    inst: &Instance,
    sys: Result<System<S>, String>,
    cfg: &SuiteConfig,
    clock: &dyn Fn() -> u64,
    out: &mut Vec<CaseReport>,
) {
    for info in checks {
        let start = clock();
        let run = match (&sys, info.level) {
            (_, Level::Graph) => graph_check(info.id, inst, cfg),
            (Ok(sys), _) => run_one(info, inst, sys, cfg),
            (Err(e), _) => Run::Done(Outcome::failed(format!("system construction failed: {e}")), String::new()),
        };
        let (status, cases, detail) = match run {
            Run::Done(o, detail) => (o.failure.map_or(Status::Pass, Status::Fail), o.cases, detail),
            Run::Skip(why) => (Status::Skipped(why), 0, String::new()),
        };
        out.push(CaseReport {
            check: info.id,
            instance: inst.name.clone(),
            seed: inst.seed,
            status,
            cases,
            millis: clock().saturating_sub(start),
            detail,
        });
    }
}

/// Runs `checks` on every instance. Quarter-turn valued cocycles run in exact
/// Gaussian rationals, all others in floating point at `cfg.tol`. `clock`
/// returns milliseconds.
pub fn run_checks(checks: &[&'static CheckInfo], instances: &[Instance], cfg: &SuiteConfig, clock: &dyn Fn() -> u64) -> Report {
    let mut cases = Vec::new();
    for inst in instances {
        if inst.cocycle.is_quarter_turn_valued() {
            let sys = System::<GaussRat>::new(&inst.cocycle, 0.0).map_err(|e| e.to_string());
            run_instance(checks, inst, sys, cfg, clock, &mut cases);
        } else {
            let sys = System::<Complex64>::new(&inst.cocycle, cfg.tol).map_err(|e| e.to_string());
            run_instance(checks, inst, sys, cfg, clock, &mut cases);
        }
    }
    Report { cases }
}

/// Selected checks on the fixtures followed by the random battery.
pub fn run_suite(selector: &str, cfg: &SuiteConfig, clock: &dyn Fn() -> u64) -> Result<Report, VerifyError> {
    let checks = select(selector)?;
    let mut instances = fixture_instances();
    instances.extend(random_instances(cfg)?);
    Ok(run_checks(&checks, &instances, cfg, clock))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_ids_are_unique_and_descriptive() {
        for (i, a) in REGISTRY.iter().enumerate() {
            assert!(a.id.bytes().all(|b| b.is_ascii_lowercase() || b == b'-'), "{}", a.id);
            assert!(REGISTRY[i + 1..].iter().all(|b| b.id != a.id), "{}", a.id);
        }
    }

    #[test]
    fn selectors() {
        assert_eq!(select("all").unwrap().len(), REGISTRY.len());
        let x: Vec<_> = select("x-*").unwrap().iter().map(|c| c.id).collect();
        assert!(x.contains(&"x-adjoint") && !x.contains(&"left-action-in-x"));
        let two = select("interchange, cocycle-identity,interchange").unwrap();
        assert_eq!(two.iter().map(|c| c.id).collect::<Vec<_>>(), ["cocycle-identity", "interchange"]);
        assert_eq!(select("x-?djoint").unwrap()[0].id, "x-adjoint");
        assert_eq!(select("nope"), Err(VerifyError::UnknownCheck("nope".into())));
        assert!(select("").is_err());
        assert!(select("x-*,").is_err());
    }

    #[test]
    fn fixtures_have_valid_cocycles() {
        for inst in fixture_instances() {
            let r = check_cocycle(&inst.cocycle, &MultiDegree::splat(inst.graph.k(), 2), 1e-9);
            assert!(r.passed(), "{}: {:?}", inst.name, r.counterexample);
        }
    }

    #[test]
    fn random_battery_is_reproducible() {
        let cfg = SuiteConfig { graphs: 3, cocycles_per_graph: 2, ..SuiteConfig::default() };
        let a = random_instances(&cfg).unwrap();
        let b = random_instances(&cfg).unwrap();
        assert_eq!(a.len(), 6);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.seed, y.seed);
            assert_eq!(*x.graph, *y.graph);
        }
    }

    #[test]
    fn every_check_passes_on_the_two_cycle() {
        let inst = fixture_instances().into_iter().find(|i| i.name == "f2-trivial").unwrap();
        let checks = select("all").unwrap();
        let r = run_checks(&checks, &[inst], &SuiteConfig::default(), &|| 0);
        for c in &r.cases {
            assert!(!matches!(c.status, Status::Fail(_)), "{c:?}");
        }
        assert!(r.cases.iter().any(|c| c.check == "commutation-relations" && matches!(c.status, Status::Skipped(_))));
    }

    #[test]
    fn y_checks_skip_graphs_with_sources() {
        let inst = fixture_instances().into_iter().find(|i| i.name == "omega-quarter-turn").unwrap();
        let r = run_checks(&select("y-associativity,x-adjoint").unwrap(), &[inst], &SuiteConfig::default(), &|| 0);
        assert!(matches!(r.cases[0].status, Status::Pass), "{:?}", r.cases[0]);
        assert!(matches!(r.cases[1].status, Status::Skipped(_)));
    }
}
