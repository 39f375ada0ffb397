//! Argument parsing, input loading and the `validate`, `check` and `list` commands.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kgt_core::cocycle::Cocycle;
use kgt_core::degree::MultiDegree;
use kgt_core::kgraph::{builtin_fixture, FixtureParams, GraphError, KGraph};
use kgt_core::verify::{fixture_instances, random_instances, run_checks, select, CaseReport, DegreeSpec, Instance, SuiteConfig, VerifyError, REGISTRY};
use serde::de::DeserializeOwned;

use crate::build::{run_build, BuildArgs};
use crate::documents::{CocycleDocument, GraphDocument, LoadError};
use crate::fock::{run_fock, FockArgs};
use crate::report::ReportDocument;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_STRUCTURE: i32 = 3;
pub const EXIT_USAGE: i32 = 4;

/// A command that stopped early, with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, message: message.into() }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

#[derive(Parser, Debug)]
#[command(name = "kgt", version, about = "Twisted k-graph product systems: validation, relation checks and Fock matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a k-graph document.
    Validate {
        /// Graph document, or `fixture:NAME` for F1, F2, omega or single_vertex.
        graph: String,
    },
    /// Run relation checks on a graph and cocycle, or on the built-in battery.
    Check(CheckArgs),
    /// Build a Cartesian product, skew product or crossed product.
    Build(BuildArgs),
    /// Emit truncated Fock-space matrices or a relation report.
    Fock(FockArgs),
    /// List the check ids.
    List,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// Graph document, or `fixture:NAME`.
    pub graph: Option<String>,
    /// Cocycle document; the trivial cocycle when omitted.
    pub cocycle: Option<String>,
    /// Check ids, `*` globs or `all`, separated by commas.
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, env = "KGT_SEED", default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub degrees: DegreeArgs,
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,
    /// Largest Fock dimension before the truncation is shrunk.
    #[arg(long, default_value_t = 400)]
    pub max_fock_dim: usize,
    /// Basis tuples tried per degree tuple.
    #[arg(long, default_value_t = 64)]
    pub max_cases: usize,
    /// Also run the fixtures and the seeded random battery.
    #[arg(long)]
    pub battery: bool,
    /// Random graphs in the battery.
    #[arg(long, default_value_t = 25)]
    pub graphs: usize,
    #[arg(long, default_value_t = 4)]
    pub cocycles_per_graph: usize,
    /// Only run the instance with this name.
    #[arg(long)]
    pub instance: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct DegreeArgs {
    /// Largest degree for graph and module checks: `2` or `2,1`.
    #[arg(long, value_parser = parse_degree_spec)]
    pub cap: Option<DegreeSpec>,
    /// Depth minus degree for cylinder functions.
    #[arg(long, value_parser = parse_degree_spec)]
    pub slack: Option<DegreeSpec>,
    /// Fock truncation N.
    #[arg(long, value_parser = parse_degree_spec)]
    pub truncation: Option<DegreeSpec>,
    /// Fock depth D for the infinite-path system.
    #[arg(long, value_parser = parse_degree_spec)]
    pub depth: Option<DegreeSpec>,
}

impl DegreeArgs {
    fn apply(&self, cfg: &mut SuiteConfig) {
        let set = |slot: &mut DegreeSpec, v: &Option<DegreeSpec>| {
            if let Some(v) = v {
                *slot = v.clone();
            }
        };
        set(&mut cfg.cap, &self.cap);
        set(&mut cfg.slack, &self.slack);
        set(&mut cfg.fock_truncation, &self.truncation);
        set(&mut cfg.fock_depth, &self.depth);
    }

    fn flags(&self) -> String {
        let mut s = String::new();
        for (name, v) in [("cap", &self.cap), ("slack", &self.slack), ("truncation", &self.truncation), ("depth", &self.depth)] {
            if let Some(v) = v {
                s.push_str(&format!(" --{name} {}", degree_flag(v)));
            }
        }
        s
    }
}

fn degree_flag(d: &DegreeSpec) -> String {
    match d {
        DegreeSpec::Uniform(v) => v.to_string(),
        DegreeSpec::Exact(m) => m.entries().iter().map(u32::to_string).collect::<Vec<_>>().join(","),
    }
}

/// `2` is the same value in every color; `2,1` or `(2,1)` is one value per color.
pub fn parse_degree_spec(s: &str) -> Result<DegreeSpec, String> {
    let t = s.trim().trim_start_matches('(').trim_end_matches(')');
    if !t.contains(',') {
        return t.trim().parse().map(DegreeSpec::Uniform).map_err(|e| format!("{s:?}: {e}"));
    }
    Ok(DegreeSpec::Exact(parse_multidegree(t)?))
}

pub fn parse_multidegree(s: &str) -> Result<MultiDegree, String> {
    let t = s.trim().trim_start_matches('(').trim_end_matches(')');
    t.split(',').map(|x| x.trim().parse::<u32>().map_err(|e| format!("{s:?}: {e}"))).collect::<Result<Vec<_>, _>>().map(MultiDegree::new)
}

/// Exit code and message for a graph that fails validation: structural
/// violations exit 3, everything else 2.
pub fn graph_failure(source: &str, e: &GraphError) -> Failure {
    let (code, kind) = match e {
        GraphError::SquareNotBijective { .. } => (EXIT_STRUCTURE, "SquareNotBijective"),
        GraphError::EndpointMismatch { .. } => (EXIT_STRUCTURE, "EndpointMismatch"),
        GraphError::HexagonViolation { .. } => (EXIT_STRUCTURE, "HexagonViolation"),
        GraphError::MalformedSkeleton(_) => (EXIT_INPUT, "MalformedSkeleton"),
        GraphError::UnknownName(_) => (EXIT_INPUT, "UnknownName"),
        _ => (EXIT_INPUT, "InvalidGraph"),
    };
    Failure { code, message: format!("{source}: {kind}: {e}") }
}

fn load_failure(source: &str, e: &LoadError) -> Failure {
    match e {
        LoadError::Graph(g) => graph_failure(source, g),
        other => Failure::input(format!("{source}: {other}")),
    }
}

/// Parses a JSON file; syntax and field errors carry the line and column.
pub fn read_json<T: DeserializeOwned>(path: &str, kind: &str) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{path}: cannot read: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Failure::input(format!("{path}:{}:{}: {kind}: {e}", e.line(), e.column())))
}

/// A graph document path, or `fixture:NAME` for a built-in graph.
pub fn load_graph(spec: &str) -> Result<Arc<KGraph>, Failure> {
    if let Some(name) = spec.strip_prefix("fixture:") {
        return builtin_fixture(name, &FixtureParams::default()).map(Arc::new).map_err(|e| graph_failure(spec, &e));
    }
    let doc: GraphDocument = read_json(spec, "MalformedSkeleton")?;
    doc.to_graph().map(Arc::new).map_err(|e| graph_failure(spec, &e))
}

pub fn load_cocycle_document(path: &str) -> Result<CocycleDocument, Failure> {
    read_json(path, "invalid cocycle document")
}

/// The cocycle in `path` on `graph`, checked up to its cap; trivial when absent.
pub fn load_cocycle(path: Option<&str>, graph: &Arc<KGraph>) -> Result<Cocycle, Failure> {
    match path {
        None => Ok(Cocycle::trivial(graph.clone())),
        Some(p) => load_cocycle_document(p)?.load(graph).map_err(|e| load_failure(p, &e)),
    }
}

/// Writes `text` to `path`, or to `out` when no path is given.
pub fn emit(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::input(format!("{}: cannot write: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(|e| Failure::input(format!("cannot write output: {e}"))),
    }
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_PASS
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Validate { graph } => run_validate(&graph, out),
        Command::Check(a) => run_check(&a, out),
        Command::Build(a) => run_build(&a, out, err),
        Command::Fock(a) => run_fock(&a, out),
        Command::List => run_list(out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn run_validate(spec: &str, out: &mut dyn Write) -> Result<i32, Failure> {
    let g = load_graph(spec)?;
    let sources = match g.is_source_free() {
        Ok(()) => "source-free".to_string(),
        Err((v, c)) => format!("vertex {} receives no color-{} edge", g.vertex_name(v), c + 1),
    };
    let text = format!(
        "valid {}-graph: {} vertices, {} edges, {} squares, {sources}\n",
        g.k(),
        g.vertex_count(),
        g.edge_count(),
        g.squares().count()
    );
    emit(None, &text, out)?;
    Ok(EXIT_PASS)
}

fn run_list(out: &mut dyn Write) -> Result<i32, Failure> {
    let mut text = String::new();
    for c in REGISTRY {
        text.push_str(&format!("{:<26} {:<6} {}\n", c.id, format!("{:?}", c.level), c.summary));
    }
    emit(None, &text, out)?;
    Ok(EXIT_PASS)
}

pub fn clock() -> impl Fn() -> u64 {
    let start = Instant::now();
    move || start.elapsed().as_millis() as u64
}

fn run_check(a: &CheckArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let checks = select(&a.suite).map_err(|e| match e {
        VerifyError::UnknownCheck(_) => Failure::usage(format!("{e}; run `kgt list` for the check ids")),
        other => Failure::input(other.to_string()),
    })?;
    if a.graph.is_none() && !a.battery {
        return Err(Failure::usage("give a graph document or --battery"));
    }
    let mut cfg = SuiteConfig {
        seed: a.seed,
        graphs: a.graphs,
        cocycles_per_graph: a.cocycles_per_graph,
        max_fock_dim: a.max_fock_dim,
        max_cases: a.max_cases,
        tol: a.tolerance,
        ..SuiteConfig::default()
    };
    a.degrees.apply(&mut cfg);
    let mut instances = Vec::new();
    if let Some(graph) = &a.graph {
        let g = load_graph(graph)?;
        let c = load_cocycle(a.cocycle.as_deref(), &g)?;
        let name = match &a.cocycle {
            Some(p) => format!("{} with {}", stem(graph), stem(p)),
            None => format!("{} with trivial", stem(graph)),
        };
        instances.push(Instance::new(name, c));
    }
    if a.battery {
        instances.extend(fixture_instances());
        instances.extend(random_instances(&cfg).map_err(|e| Failure::input(e.to_string()))?);
    }
    if let Some(name) = &a.instance {
        instances.retain(|i| &i.name == name);
        if instances.is_empty() {
            return Err(Failure::usage(format!("no instance is named {name:?}")));
        }
    }
    let report = run_checks(&checks, &instances, &cfg, &clock());
    let replay = |c: &CaseReport| replay_command(a, c);
    let doc = ReportDocument::new(&a.suite, &cfg, &report, replay);
    let text = match a.format {
        Format::Text => doc.to_text(),
        Format::Machine => serde_json::to_string_pretty(&doc).expect("reports serialize") + "\n",
    };
    emit(a.out.as_deref(), &text, out)?;
    Ok(if doc.passed() { EXIT_PASS } else { EXIT_CHECK_FAILED })
}

fn stem(spec: &str) -> String {
    match spec.strip_prefix("fixture:") {
        Some(n) => n.to_string(),
        None => Path::new(spec).file_stem().map_or_else(|| spec.to_string(), |s| s.to_string_lossy().into_owned()),
    }
}

fn replay_command(a: &CheckArgs, c: &CaseReport) -> String {
    let mut cmd = String::from("kgt check");
    let from_files = a.graph.is_some() && c.instance.contains(" with ");
    if from_files {
        cmd.push(' ');
        cmd.push_str(a.graph.as_deref().unwrap_or_default());
        if let Some(p) = &a.cocycle {
            cmd.push(' ');
            cmd.push_str(p);
        }
    } else {
        cmd.push_str(&format!(
            " --battery --graphs {} --cocycles-per-graph {} --instance {}",
            a.graphs, a.cocycles_per_graph, c.instance
        ));
    }
    cmd.push_str(&format!(" --suite {} --seed {}", c.check, a.seed));
    cmd.push_str(&a.degrees.flags());
    if a.tolerance != 1e-9 {
        cmd.push_str(&format!(" --tolerance {:e}", a.tolerance));
    }
    if a.max_fock_dim != 400 {
        cmd.push_str(&format!(" --max-fock-dim {}", a.max_fock_dim));
    }
    if a.max_cases != 64 {
        cmd.push_str(&format!(" --max-cases {}", a.max_cases));
    }
    cmd
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_specs() {
        assert_eq!(parse_degree_spec("3"), Ok(DegreeSpec::Uniform(3)));
        assert_eq!(parse_degree_spec("(2,1)"), Ok(DegreeSpec::Exact(MultiDegree::from([2, 1]))));
        assert_eq!(parse_degree_spec("2, 0"), Ok(DegreeSpec::Exact(MultiDegree::from([2, 0]))));
        assert!(parse_degree_spec("x").is_err());
        assert!(parse_degree_spec("1,-1").is_err());
    }

    #[test]
    fn structural_errors_exit_3() {
        let e = GraphError::HexagonViolation { triple: ["a".into(), "b".into(), "c".into()] };
        let f = graph_failure("g.json", &e);
        assert_eq!(f.code, EXIT_STRUCTURE);
        assert!(f.message.contains("HexagonViolation"));
        assert_eq!(graph_failure("g.json", &GraphError::MalformedSkeleton("x".into())).code, EXIT_INPUT);
    }

    #[test]
    fn help_and_version_exit_0() {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        assert_eq!(run(["kgt", "--help"], &mut o, &mut e), EXIT_PASS);
        assert_eq!(run(["kgt", "--version"], &mut o, &mut e), EXIT_PASS);
        assert_eq!(run(["kgt", "check", "--bogus"], &mut o, &mut e), EXIT_USAGE);
    }

    #[test]
    fn replay_reruns_one_case() {
        let a = CheckArgs::try_parse_from(["check", "g.json", "c.json", "--cap", "3"]);
        let a = a.unwrap();
        let case = CaseReport {
            check: "x-adjoint",
            instance: "g with c".into(),
            seed: None,
            status: kgt_core::verify::Status::Pass,
            cases: 0,
            millis: 0,
            detail: String::new(),
        };
        assert_eq!(replay_command(&a, &case), "kgt check g.json c.json --suite x-adjoint --seed 0 --cap 3");
    }

    #[derive(Parser)]
    struct CheckOnly {
        #[command(flatten)]
        args: CheckArgs,
    }

    impl CheckArgs {
        fn try_parse_from(it: [&str; 5]) -> Result<CheckArgs, clap::Error> {
            CheckOnly::try_parse_from(it).map(|c| c.args)
        }
    }
}
