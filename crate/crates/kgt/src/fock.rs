//! The `fock` command: generator matrices and relation reports on a truncated
//! Fock space.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, ValueEnum};
use kgt_core::cocycle::Cocycle;
use kgt_core::degree::MultiDegree;
use kgt_core::fock::checks::commutation_phase;
use kgt_core::fock::{creation_x, creation_y, FockKind, FockOp, FockSpace};
use kgt_core::kgraph::{KGraph, Path};
use kgt_core::scalar::{Complex64, GaussRat, Scalar};
use kgt_core::system::{ModuleError, System};
use kgt_core::verify::{run_checks, DegreeSpec, Instance, Level, SuiteConfig, REGISTRY};
use kgt_core::xmod::x_delta;
use kgt_core::ymod::alpha;
use serde::{Deserialize, Serialize};

use crate::cli::{clock, emit, load_cocycle, load_graph, parse_multidegree, Failure, EXIT_CHECK_FAILED, EXIT_PASS};
use crate::report::ReportDocument;

pub const MATRICES_SCHEMA: &str = "kgt-fock/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum SystemKind {
    /// Finite paths.
    #[value(name = "X", alias = "x")]
    X,
    /// Infinite paths; needs a source-free graph and a depth.
    #[value(name = "Y", alias = "y")]
    Y,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Matrices,
    Relations,
}

#[derive(Args, Debug)]
pub struct FockArgs {
    /// Graph document or `fixture:NAME`.
    pub graph: String,
    /// Cocycle document; the trivial cocycle when omitted.
    pub cocycle: Option<String>,
    #[arg(long, value_enum)]
    pub system: SystemKind,
    /// Truncation N: `2` or `2,1`.
    #[arg(long = "N", alias = "truncation")]
    pub truncation: String,
    /// Depth D ≥ N of the infinite-path system.
    #[arg(long = "D", alias = "depth")]
    pub depth: Option<String>,
    #[arg(long, value_enum, default_value_t = Emit::Relations)]
    pub emit: Emit,
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,
    /// Refuse Fock spaces of larger dimension.
    #[arg(long, default_value_t = 400)]
    pub max_dim: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisEntry {
    pub index: usize,
    /// Degree of the block holding this vector.
    pub block: Vec<u32>,
    /// Label of the path at the block's depth.
    pub path: String,
    pub depth: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    Vertex,
    Edge,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Generator {
    pub name: String,
    pub kind: GeneratorKind,
    pub degree: Vec<u32>,
    /// Dense row-major entries as `[re, im]`.
    pub matrix: Vec<Vec<[f64; 2]>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FockMatrices {
    pub schema: String,
    pub system: SystemKind,
    pub truncation: Vec<u32>,
    pub depth: Vec<u32>,
    pub dim: usize,
    /// `exact` for Gaussian rationals, `float` otherwise.
    pub arithmetic: String,
    pub basis: Vec<BasisEntry>,
    pub generators: Vec<Generator>,
}

fn degree_arg(s: &str, k: usize, flag: &str) -> Result<MultiDegree, Failure> {
    let d = if s.contains(',') {
        parse_multidegree(s).map_err(Failure::usage)?
    } else {
        MultiDegree::splat(k, s.trim().trim_start_matches('(').trim_end_matches(')').parse().map_err(|e| Failure::usage(format!("--{flag} {s:?}: {e}")))?)
    };
    if d.rank() != k {
        return Err(Failure::usage(format!("--{flag} {d} does not have rank {k}")));
    }
    Ok(d)
}

fn space_of<S: Scalar>(sys: &System<S>, kind: SystemKind, n: &MultiDegree, d: &MultiDegree) -> Result<FockSpace, Failure> {
    match kind {
        SystemKind::X => Ok(FockSpace::x(sys, n)),
        SystemKind::Y => {
            if let Err((v, c)) = sys.graph().is_source_free() {
                return Err(Failure::input(format!(
                    "the infinite-path system needs a source-free graph; vertex {} receives no color-{} edge",
                    sys.graph().vertex_name(v),
                    c + 1
                )));
            }
            FockSpace::y(sys, n, d).map_err(|e| Failure::usage(e.to_string()))
        }
    }
}

/// Creation operator of `δ_λ` in X, or of `α_{d(λ)}(δ_λ)` in Y.
fn generator<S: Scalar>(space: &FockSpace, sys: &System<S>, p: &Path) -> Result<FockOp<S>, ModuleError> {
    match space.kind {
        FockKind::X => creation_x(space, sys, &x_delta(sys, p)),
        FockKind::Y => creation_y(space, sys, &alpha(sys, &p.degree, &x_delta(sys, p))?),
    }
}

fn dense<S: Scalar>(op: &FockOp<S>) -> Vec<Vec<[f64; 2]>> {
    let mut m = vec![vec![[0.0, 0.0]; op.matrix.cols()]; op.matrix.rows()];
    for (i, j, v) in op.matrix.entries() {
        let z = v.to_c64();
        m[i][j] = [z.re, z.im];
    }
    m
}

/// Vertex projections and edge creation operators with `d(e) ≤ N`.
pub fn fock_matrices<S: Scalar>(sys: &System<S>, kind: SystemKind, n: &MultiDegree, d: &MultiDegree, max_dim: usize) -> Result<FockMatrices, Failure> {
    let space = space_of(sys, kind, n, d)?;
    if space.dim > max_dim {
        return Err(Failure::input(format!("Fock dimension {} exceeds --max-dim {max_dim}", space.dim)));
    }
    let g = sys.graph().clone();
    let basis = (0..space.dim)
        .map(|i| {
            let (block, path, depth) = space.legend(sys, i);
            BasisEntry { index: i, block: block.entries().to_vec(), path, depth: depth.entries().to_vec() }
        })
        .collect();
    let mut generators = Vec::new();
    let fail = |e: ModuleError| Failure::input(e.to_string());
    for v in 0..g.vertex_count() {
        let p = g.vertex_path(v);
        let op = generator(&space, sys, &p).map_err(fail)?;
        generators.push(Generator { name: g.vertex_name(v).to_string(), kind: GeneratorKind::Vertex, degree: p.degree.entries().to_vec(), matrix: dense(&op) });
    }
    for e in 0..g.edge_count() {
        let p = g.edge_path(e);
        if !p.degree.le(n) {
            continue;
        }
        let op = generator(&space, sys, &p).map_err(fail)?;
        generators.push(Generator { name: g.edge(e).name.clone(), kind: GeneratorKind::Edge, degree: p.degree.entries().to_vec(), matrix: dense(&op) });
    }
    Ok(FockMatrices {
        schema: MATRICES_SCHEMA.to_string(),
        system: kind,
        truncation: n.entries().to_vec(),
        depth: space.depth().entries().to_vec(),
        dim: space.dim,
        arithmetic: if S::EXACT { "exact" } else { "float" }.to_string(),
        basis,
        generators,
    })
}

fn format_scalar(z: Complex64) -> String {
    let turns = z.im.atan2(z.re) / std::f64::consts::TAU;
    format!("{:.12}{:+.12}i (arg {:.12} turn)", z.re, z.im, turns)
}

/// `s_f s_e = r·s_e s_f` for every square `ef = fe`, on the X Fock space.
fn commuting_phases<S: Scalar>(sys: &System<S>, c: &Cocycle, n: &MultiDegree) -> String {
    let g = sys.graph().clone();
    let space = FockSpace::x(sys, n);
    let mut text = String::new();
    for ((e, f), (f2, e2)) in g.squares() {
        if (f2, e2) != (f, e) {
            continue;
        }
        let (pe, pf) = (g.edge_path(e), g.edge_path(f));
        let (en, fname) = (&g.edge(e).name, &g.edge(f).name);
        if !pe.degree.add(&pf.degree).le(n) {
            let _ = writeln!(text, "  ({en}, {fname}): degree exceeds N = {n}");
            continue;
        }
        let _ = match commutation_phase(&space, sys, &pe, &pf) {
            Ok(r) => {
                let expected = c.eval(&pf, &pe).mul(&c.eval(&pe, &pf).conj());
                writeln!(text, "  s_{fname} s_{en} = r s_{en} s_{fname} with r = {}, expected phase {expected}", format_scalar(r.to_c64()))
            }
            Err(w) => writeln!(text, "  ({en}, {fname}): {w}"),
        };
    }
    if text.is_empty() {
        text.push_str("  none\n");
    }
    text
}

fn relations_report(inst: &Instance, kind: SystemKind, n: &MultiDegree, d: &MultiDegree, tol: f64) -> (String, bool) {
    let level = match kind {
        SystemKind::X => Level::FockX,
        SystemKind::Y => Level::FockY,
    };
    let checks: Vec<_> = REGISTRY.iter().filter(|c| c.level == level).collect();
    let cfg = SuiteConfig {
        fock_truncation: DegreeSpec::Exact(n.clone()),
        fock_depth: DegreeSpec::Exact(d.clone()),
        max_fock_dim: usize::MAX,
        tol,
        ..SuiteConfig::default()
    };
    let report = run_checks(&checks, std::slice::from_ref(inst), &cfg, &clock());
    let doc = ReportDocument::new("fock", &cfg, &report, |c| format!("kgt check --suite {} --truncation {n} --depth {d}", c.check));
    (doc.to_text(), doc.passed())
}

fn phases_text(c: &Cocycle, n: &MultiDegree, tol: f64) -> String {
    if c.is_quarter_turn_valued() {
        commuting_phases(&System::<GaussRat>::new(c, 0.0).expect("quarter-turn valued"), c, n)
    } else {
        commuting_phases(&System::<Complex64>::new(c, tol).expect("float systems accept every cocycle"), c, n)
    }
}

pub fn run_fock(a: &FockArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let g: Arc<KGraph> = load_graph(&a.graph)?;
    let k = g.k();
    let n = degree_arg(&a.truncation, k, "N")?;
    let d = match (a.system, &a.depth) {
        (SystemKind::Y, None) => return Err(Failure::usage("--system Y needs --D")),
        (_, Some(s)) => degree_arg(s, k, "D")?,
        (SystemKind::X, None) => n.clone(),
    };
    if a.system == SystemKind::X && d != n {
        return Err(Failure::usage("--D applies to --system Y only"));
    }
    if !n.le(&d) {
        return Err(Failure::usage(format!("--N {n} is not below --D {d}")));
    }
    let c = load_cocycle(a.cocycle.as_deref(), &g)?;
    match a.emit {
        Emit::Matrices => {
            let m = if c.is_quarter_turn_valued() {
                fock_matrices(&System::<GaussRat>::new(&c, 0.0).expect("quarter-turn valued"), a.system, &n, &d, a.max_dim)?
            } else {
                fock_matrices(&System::<Complex64>::new(&c, a.tolerance).expect("float"), a.system, &n, &d, a.max_dim)?
            };
            emit(a.out.as_deref(), &(serde_json::to_string(&m).expect("matrices serialize") + "\n"), out)?;
            Ok(EXIT_PASS)
        }
        Emit::Relations => {
            if a.system == SystemKind::Y {
                let sys = System::<Complex64>::new(&c, a.tolerance).expect("float");
                space_of(&sys, a.system, &n, &d)?;
            }
            let inst = Instance::new(a.graph.clone(), c.clone());
            let mut text = format!("system {:?}, N = {n}, D = {d}\ncommuting squares:\n", a.system);
            text.push_str(&phases_text(&c, &n, a.tolerance));
            let (report, passed) = relations_report(&inst, a.system, &n, &d, a.tolerance);
            text.push_str(&report);
            emit(a.out.as_deref(), &text, out)?;
            Ok(if passed { EXIT_PASS } else { EXIT_CHECK_FAILED })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use kgt_core::kgraph::{f1, f2};
    use kgt_core::phase::Phase;

    #[test]
    fn zero_truncation_has_only_vertex_diagonal() {
        let g = Arc::new(f2());
        let sys = System::<GaussRat>::new(&Cocycle::trivial(g), 0.0).unwrap();
        let m = fock_matrices(&sys, SystemKind::X, &MultiDegree::from([0]), &MultiDegree::from([0]), 100).unwrap();
        assert_eq!(m.dim, 2);
        assert_eq!(m.generators.len(), 2);
        assert!(m.generators.iter().all(|gen| gen.kind == GeneratorKind::Vertex));
        assert_eq!(m.generators[0].matrix, vec![vec![[1.0, 0.0], [0.0, 0.0]], vec![[0.0, 0.0], [0.0, 0.0]]]);
    }

    #[test]
    fn quarter_turn_commuting_phase() {
        let g = Arc::new(f1());
        let c = Cocycle::theta(g, Phase::turns(1, 4));
        let text = phases_text(&c, &MultiDegree::from([1, 1]), 1e-9);
        assert!(text.contains("s_f s_e = r s_e s_f"), "{text}");
        let r_is = |re: &str, im: &str| text.contains(&format!("r = {re}{im}i"));
        assert!(r_is("0.000000000000", "+1.000000000000") || r_is("0.000000000000", "-1.000000000000"), "{text}");
    }

    #[test]
    fn edge_generators_are_partial_isometries() {
        let g = Arc::new(f1());
        let c = Cocycle::theta(g, Phase::radians(1, 1));
        let sys = System::<Complex64>::new(&c, 1e-9).unwrap();
        let m = fock_matrices(&sys, SystemKind::Y, &MultiDegree::from([1, 1]), &MultiDegree::from([2, 2]), 400).unwrap();
        assert_eq!(m.depth, vec![2, 2]);
        for gen in m.generators.iter().filter(|g| g.kind == GeneratorKind::Edge) {
            let cols = gen.matrix.len();
            for j in 0..cols {
                let norm: f64 = gen.matrix.iter().map(|row| row[j][0].powi(2) + row[j][1].powi(2)).sum();
                assert!(norm < 1e-9 || (norm - 1.0).abs() < 1e-9, "{} column {j}: {norm}", gen.name);
            }
        }
    }
}
