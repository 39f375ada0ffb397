//! The `build` command: product constructions emitted as documents.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Args, ValueEnum};
use kgt_core::constructions::{cartesian, crossed_product, skew_product, Automorphism, GroupTable, ZlAction};
use kgt_core::degree::MultiDegree;
use kgt_core::kgraph::KGraph;
use kgt_core::phase::Phase;

use crate::cli::{emit, load_cocycle_document, load_graph, parse_multidegree, Failure, EXIT_PASS};
use crate::documents::{Angle, Builtin, CocycleDocument, GraphDocument, GroupSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Operation {
    /// Λ1 × Λ2 with the product of two cocycles.
    Cartesian,
    /// Λ ×_f Z/n with the lifted cocycle.
    Skew,
    /// Λ ×_β Z^l with the cocycle c_ω.
    Crossed,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[arg(long, value_enum)]
    pub op: Operation,
    /// Input graph document or `fixture:NAME`; give two for `cartesian`.
    #[arg(long = "graph", required = true)]
    pub graphs: Vec<String>,
    /// Cocycle document on each input graph, in the same order.
    #[arg(long = "cocycle")]
    pub cocycles: Vec<String>,
    /// Order n of the cyclic group for `skew`.
    #[arg(long)]
    pub group_order: Option<usize>,
    /// Group element of every edge for `skew`: `a=1,b=0`.
    #[arg(long)]
    pub labels: Option<String>,
    /// Vertex permutation of one generator for `crossed`: `u=v,v=u`. Repeat per generator.
    #[arg(long = "vertex-map")]
    pub vertex_maps: Vec<String>,
    /// Edge permutation of one generator for `crossed`: `a=b,b=a`. Repeat per generator.
    #[arg(long = "edge-map")]
    pub edge_maps: Vec<String>,
    /// ω_j for each generator of `crossed`, as angles such as `1/4 turn`.
    #[arg(long = "omega")]
    pub omega: Vec<String>,
    /// Z^l cap of the load-time cocycle check for `crossed`: `2` or `2,1`.
    #[arg(long)]
    pub cap: Option<String>,
    /// Write the graph here instead of stdout.
    #[arg(long)]
    pub out_graph: Option<PathBuf>,
    /// Write the cocycle here; not written when absent.
    #[arg(long)]
    pub out_cocycle: Option<PathBuf>,
}

/// `name=value` pairs separated by commas.
fn parse_assignments(s: &str) -> Result<Vec<(String, String)>, Failure> {
    s.split(',')
        .map(|part| {
            let (k, v) = part.split_once('=').ok_or_else(|| Failure::usage(format!("expected name=value in {part:?}")))?;
            Ok((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

fn named<'a>(kind: &str, names: impl Iterator<Item = &'a str>, wanted: &str) -> Result<usize, Failure> {
    let names: Vec<&str> = names.collect();
    names.iter().position(|n| *n == wanted).ok_or_else(|| Failure::input(format!("no {kind} is named {wanted:?}")))
}

/// Reads a permutation given as `name=image` for every element.
fn permutation(kind: &str, spec: &str, names: &[&str]) -> Result<Vec<usize>, Failure> {
    let mut out = vec![None; names.len()];
    for (k, v) in parse_assignments(spec)? {
        let i = named(kind, names.iter().copied(), &k)?;
        out[i] = Some(named(kind, names.iter().copied(), &v)?);
    }
    out.into_iter()
        .enumerate()
        .map(|(i, x)| x.ok_or_else(|| Failure::usage(format!("the {kind} map does not send {:?} anywhere", names[i]))))
        .collect()
}

fn cocycle_or_trivial(args: &BuildArgs, i: usize) -> Result<CocycleDocument, Failure> {
    match args.cocycles.get(i) {
        Some(p) => load_cocycle_document(p),
        None => Ok(CocycleDocument::builtin(Builtin::Trivial)),
    }
}

fn expect_counts(args: &BuildArgs, graphs: usize, max_cocycles: usize) -> Result<(), Failure> {
    let op = format!("{:?}", args.op).to_lowercase();
    if args.graphs.len() != graphs {
        return Err(Failure::usage(format!("{op} takes {graphs} --graph")));
    }
    if !(args.cocycles.is_empty() || args.cocycles.len() == max_cocycles) {
        return Err(Failure::usage(format!("{op} takes 0 or {max_cocycles} --cocycle")));
    }
    Ok(())
}

/// The constructed graph and its cocycle document.
pub fn construct(args: &BuildArgs) -> Result<(Arc<KGraph>, CocycleDocument), Failure> {
    match args.op {
        Operation::Cartesian => {
            expect_counts(args, 2, 2)?;
            let (l, r) = (load_graph(&args.graphs[0])?, load_graph(&args.graphs[1])?);
            let prod = cartesian(&l, &r);
            let doc = CocycleDocument::builtin(Builtin::Product {
                left_graph: GraphDocument::from_graph(&l),
                left: Box::new(cocycle_or_trivial(args, 0)?),
                right_graph: GraphDocument::from_graph(&r),
                right: Box::new(cocycle_or_trivial(args, 1)?),
            });
            Ok((prod.graph, doc))
        }
        Operation::Skew => {
            expect_counts(args, 1, 1)?;
            let g = load_graph(&args.graphs[0])?;
            let n = args.group_order.ok_or_else(|| Failure::usage("skew needs --group-order"))?;
            if n == 0 {
                return Err(Failure::usage("--group-order must be positive"));
            }
            let labels = args.labels.as_deref().ok_or_else(|| Failure::usage("skew needs --labels"))?;
            let mut functor = BTreeMap::new();
            for (edge, a) in parse_assignments(labels)? {
                g.edge_by_name(&edge).ok_or_else(|| Failure::input(format!("no edge is named {edge:?}")))?;
                let a: usize = a.parse().map_err(|e| Failure::usage(format!("label of {edge}: {e}")))?;
                functor.insert(edge, a);
            }
            let mut per_edge = Vec::with_capacity(g.edge_count());
            for e in g.edges() {
                per_edge.push(*functor.get(&e.name).ok_or_else(|| Failure::usage(format!("edge {:?} has no label", e.name)))?);
            }
            let skew = skew_product(&g, &GroupTable::cyclic(n), &per_edge).map_err(|e| Failure::input(e.to_string()))?;
            let doc = CocycleDocument::builtin(Builtin::SkewLift {
                base_graph: GraphDocument::from_graph(&g),
                base: Box::new(cocycle_or_trivial(args, 0)?),
                group: GroupSpec::Cyclic(n),
                functor,
            });
            Ok((skew.graph, doc))
        }
        Operation::Crossed => {
            expect_counts(args, 1, 0)?;
            let g = load_graph(&args.graphs[0])?;
            if args.vertex_maps.len() != args.edge_maps.len() || args.vertex_maps.is_empty() {
                return Err(Failure::usage("crossed takes one --vertex-map and one --edge-map per generator"));
            }
            let l = args.vertex_maps.len();
            let vnames: Vec<&str> = g.vertex_names().iter().map(String::as_str).collect();
            let enames: Vec<&str> = g.edges().iter().map(|e| e.name.as_str()).collect();
            let mut generators = Vec::with_capacity(l);
            for (vm, em) in args.vertex_maps.iter().zip(&args.edge_maps) {
                generators.push(Automorphism { vertices: permutation("vertex", vm, &vnames)?, edges: permutation("edge", em, &enames)? });
            }
            let omega = if args.omega.is_empty() {
                vec![Angle(Phase::one()); l]
            } else if args.omega.len() == l {
                args.omega
                    .iter()
                    .map(|s| Phase::from_str(s).map(Angle).map_err(|e| Failure::usage(format!("--omega {s:?}: {e}"))))
                    .collect::<Result<_, _>>()?
            } else {
                return Err(Failure::usage(format!("crossed takes 0 or {l} --omega")));
            };
            let cap = match &args.cap {
                Some(c) if !c.contains(',') => MultiDegree::splat(l, c.trim().parse().map_err(|e| Failure::usage(format!("--cap: {e}")))?),
                Some(c) => parse_multidegree(c).map_err(Failure::usage)?,
                None => MultiDegree::splat(l, 2),
            };
            let crossed = crossed_product(&g, &ZlAction { generators }, &cap).map_err(|e| Failure::input(e.to_string()))?;
            let k = crossed.graph.k();
            let mut total_cap = vec![2; g.k()];
            total_cap.extend_from_slice(cap.entries());
            debug_assert_eq!(total_cap.len(), k);
            let doc = CocycleDocument::Builtin { builtin: Builtin::COmega { base_rank: g.k(), omega }, cap: Some(total_cap) };
            Ok((crossed.graph, doc))
        }
    }
}

pub fn run_build(args: &BuildArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let (graph, cocycle) = construct(args)?;
    cocycle.load(&graph).map_err(|e| Failure::input(format!("constructed cocycle: {e}")))?;
    let graph_json = serde_json::to_string_pretty(&GraphDocument::from_graph(&graph)).expect("graphs serialize") + "\n";
    emit(args.out_graph.as_deref(), &graph_json, out)?;
    match &args.out_cocycle {
        Some(p) => {
            let json = serde_json::to_string_pretty(&cocycle).expect("cocycles serialize") + "\n";
            emit(Some(p), &json, out)?;
        }
        None => {
            let _ = writeln!(err, "note: cocycle not written; pass --out-cocycle to keep it");
        }
    }
    Ok(EXIT_PASS)
}
