//! The `stoc` command line.

use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use stoc_core::bounds::{
    axial_dag_set, capacity_certificate, clique_cover_number, diff_avoiding_bound, max_matching,
    window_series, BoundCertificate, LowerEntry, SeriesBound,
};
use stoc_core::code::{Scope, Verdict};
use stoc_core::construct::{
    clique_partition_code, edge_to_vertex_code, gcd_scheme_code, matching_code, stacked_code,
    stacked_linear_code, tiling_code, torus_row_parity, TilingKind,
};
use stoc_core::design::{
    affine_design, builtin_family_3x5, example_family_2x3, family_from_design, kirkman_design_15,
};
use stoc_core::graph::{torus_rowcol_graph, Graph};
use stoc_core::interleave::Mode;
use stoc_core::interleave::{build_interleaved_graph, greedy_coloring};
use stoc_core::limits::Limits;
use stoc_core::lp::{build_lp, enumerate_gadgets, lp_capacity_bound, ClosureMode};
use stoc_core::window::{window_graph_with, Metric, RecoverySet};
use stoc_core::Error as CoreError;

use crate::error::{LabError, Result};
use crate::formats::{
    self, load_code, load_family, load_graph, load_tiling, to_line, AnyCode, CodeFile, DesignFile,
    FamilyFile, GraphFile, InterleaveSidecar,
};
use crate::presets::{self, RunOptions};
use crate::report::{capacity_json, certificate_json, frac, Report};

#[derive(Parser, Debug)]
#[command(
    name = "stoc",
    version,
    about = "Storage codes on graphs: constructions, bounds and experiment presets"
)]
pub struct Cli {
    /// Output format for reports and summaries (file outputs are always JSON).
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for every sampling step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Multiply every size cap by this factor. Needs --allow-slow.
    #[arg(long, global = true, requires = "allow_slow")]
    pub cap_override: Option<usize>,
    /// Confirms a cap override; exact searches may then run for a long time.
    #[arg(long, global = true)]
    pub allow_slow: bool,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Include runtimes in experiment reports (they are omitted by default
    /// so reports stay byte-identical).
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate or validate graph files.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Generate or verify resolvable designs and orthogonal partition families.
    #[command(subcommand)]
    Design(DesignCmd),
    /// Build, verify or measure codes.
    #[command(subcommand)]
    Code(CodeCmd),
    /// Interleave a graph with a family, or a code over it.
    #[command(subcommand)]
    Interleave(InterleaveCmd),
    /// Exact bound certificates.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Linear-programming capacity bound.
    #[command(subcommand)]
    Lp(LpCmd),
    /// Largest code at a fixed alphabet size, by exhaustive search.
    Oracle {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 2)]
        q: u32,
    },
    /// List or run experiment presets.
    #[command(subcommand)]
    Experiment(ExperimentCmd),
}

#[derive(Subcommand, Debug)]
pub enum GraphCmd {
    /// Emit a graph file.
    Gen {
        #[arg(value_enum)]
        kind: GraphKind,
        /// Vertex count, cycle length, torus side or window side.
        #[arg(long)]
        n: usize,
        /// Recovery set for `window`, e.g. `interval:2,2`, `linf:1`, `rect:2,1,1,2`.
        #[arg(long)]
        recovery: Option<String>,
    },
    /// Check a graph file.
    Validate { file: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphKind {
    Complete,
    Cycle,
    Path,
    Torus,
    Window,
}

#[derive(Subcommand, Debug)]
pub enum DesignCmd {
    /// Emit a design file, or its family with `--family`.
    Gen {
        #[arg(value_enum)]
        kind: DesignKind,
        /// Prime order for `affine`.
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        family: bool,
    },
    /// Check a design file or a family file (detected by its keys).
    Verify { file: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DesignKind {
    Affine,
    Kirkman,
    /// The built-in 3x5 family (always a family).
    Builtin3x5,
    /// The 2x3 family with three matrices (always a family).
    Example2x3,
}

#[derive(Subcommand, Debug)]
pub enum CodeCmd {
    /// Emit a code file.
    Build(BuildArgs),
    /// Check the storage property of a code on a graph.
    Verify {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        /// Only check these vertices (comma separated).
        #[arg(long, value_delimiter = ',')]
        vertices: Option<Vec<usize>>,
    },
    /// Report size and rate.
    Rate {
        #[arg(long)]
        code: PathBuf,
    },
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[arg(value_enum)]
    pub construction: Construction,
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub l: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub tiling: Option<PathBuf>,
    /// One-dimensional code for `stacked`.
    #[arg(long)]
    pub code: Option<PathBuf>,
    #[arg(long)]
    pub rows: Option<usize>,
    /// Write the word list instead of a generator.
    #[arg(long)]
    pub explicit: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    CliquePartition,
    EdgeToVertex,
    Matching,
    TorusRowParity,
    Gcd,
    Tiling,
    Stacked,
}

#[derive(Subcommand, Debug)]
pub enum InterleaveCmd {
    /// Emit the interleaved graph and its sidecar (to `<out>` and `<out>.sidecar.json`).
    Build {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        family: PathBuf,
    },
    /// Interleave a seed code: linear seeds give a generator, explicit seeds
    /// every tuple or `--sample` random tuples.
    Run {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        sample: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum BoundsCmd {
    Independence {
        #[arg(long)]
        graph: PathBuf,
    },
    Mais {
        #[arg(long)]
        graph: PathBuf,
    },
    CliqueCover {
        #[arg(long)]
        graph: PathBuf,
    },
    Matching {
        #[arg(long)]
        graph: PathBuf,
    },
    /// All computable certificates combined into a capacity verdict.
    Capacity {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 2)]
        tau: usize,
        #[arg(long, default_value_t = 2)]
        max_support: usize,
    },
    /// Per-window bounds `1 - |S|/N` over a schedule of window sides.
    Series {
        #[arg(long)]
        recovery: String,
        #[arg(long, value_delimiter = ',', required = true)]
        ns: Vec<usize>,
        /// `mais`, or a tiling lattice `linf:R`, `l1:R`, `rect:R,B`.
        #[arg(long, default_value = "mais")]
        bound: String,
    },
    /// Bounds from difference-avoiding sets of a one-dimensional recovery set.
    DiffAvoiding {
        #[arg(long)]
        recovery: String,
        #[arg(long, value_delimiter = ',', required = true)]
        ns: Vec<usize>,
    },
    /// The diagonal DAG set of the axial window.
    Axial {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum LpCmd {
    Bound {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 2)]
        tau: usize,
        #[arg(long, default_value_t = 2)]
        max_support: usize,
        #[arg(long, value_enum, default_value_t = Closure::Formula)]
        closure: Closure,
        /// Also write the LP in a plain-text dump.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Closure {
    Formula,
    WithSet,
}

impl From<Closure> for ClosureMode {
    fn from(c: Closure) -> Self {
        match c {
            Closure::Formula => ClosureMode::Formula,
            Closure::WithSet => ClosureMode::WithSet,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum ExperimentCmd {
    List,
    Run {
        names: Vec<String>,
        #[arg(long)]
        all: bool,
    },
}

/// What a command produced: a file body, a JSON summary, or a report.
enum Output {
    File(String),
    Summary(Value),
    Report(Report),
}

pub fn execute(cli: &Cli) -> Result<()> {
    let limits = match cli.cap_override {
        Some(0) => {
            return Err(LabError::Usage(
                "--cap-override needs a positive factor".into(),
            ))
        }
        Some(f) => Limits::default().scaled(f),
        None => Limits::default(),
    };
    let (output, failures) = dispatch(cli, &limits)?;
    let body = match output {
        Output::File(text) => text,
        Output::Summary(value) => render_value(&value, cli.format),
        Output::Report(report) => match cli.format {
            Format::Json => report.to_json(),
            Format::Csv => report.to_csv(),
            Format::Table => report.to_table(),
        },
    };
    match &cli.out {
        Some(path) => formats::write_file(path, &body)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .map_err(|source| LabError::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })?;
        }
    }
    if failures > 0 {
        return Err(LabError::Mismatch(failures));
    }
    Ok(())
}

fn dispatch(cli: &Cli, limits: &Limits) -> Result<(Output, usize)> {
    let out = match &cli.command {
        Command::Graph(cmd) => graph_cmd(cmd, limits)?,
        Command::Design(cmd) => design_cmd(cmd)?,
        Command::Code(cmd) => return code_cmd(cmd, limits),
        Command::Interleave(cmd) => interleave_cmd(cmd, cli, limits)?,
        Command::Bounds(cmd) => bounds_cmd(cmd, limits)?,
        Command::Lp(LpCmd::Bound {
            graph,
            tau,
            max_support,
            closure,
            dump,
        }) => {
            let g = load_graph(graph)?;
            let mode = ClosureMode::from(*closure);
            if let Some(path) = dump {
                let gadgets = enumerate_gadgets(&g, *max_support, *tau, mode, limits)?;
                formats::write_file(path, &build_lp(&g, &gadgets, *tau)?.to_text())?;
            }
            let bound = lp_capacity_bound(&g, *tau, *max_support, mode, limits)?;
            let cert = BoundCertificate::lp(&g, bound)?;
            Output::Summary(certificate_json(&graph.display().to_string(), &cert, true))
        }
        Command::Oracle { graph, q } => {
            let g = load_graph(graph)?;
            let cert = BoundCertificate::oracle(&g, *q, limits)?;
            Output::Summary(certificate_json(
                &graph.display().to_string(),
                &cert,
                cert.revalidate(&g).is_ok(),
            ))
        }
        Command::Experiment(ExperimentCmd::List) => {
            let list: Vec<Value> = presets::PRESETS
                .iter()
                .map(|p| json!({ "name": p.name, "description": p.description }))
                .collect();
            Output::Summary(Value::Array(list))
        }
        Command::Experiment(ExperimentCmd::Run { names, all }) => {
            let chosen: Vec<&presets::Preset> = if *all {
                presets::PRESETS.iter().collect()
            } else if names.is_empty() {
                return Err(LabError::Usage("name a preset or pass --all".into()));
            } else {
                names
                    .iter()
                    .map(|n| {
                        presets::find(n).ok_or_else(|| {
                            LabError::Usage(format!(
                                "unknown preset `{n}` (known: {})",
                                presets::names().collect::<Vec<_>>().join(", ")
                            ))
                        })
                    })
                    .collect::<Result<_>>()?
            };
            let opts = RunOptions {
                seed: cli.seed,
                limits: *limits,
                timings: cli.timings,
            };
            let reports = chosen
                .into_iter()
                .map(|p| presets::run_preset(p, &opts))
                .collect::<Result<Vec<_>>>()?;
            let report = Report::new(cli.seed, cli.cap_override, reports);
            let failures = report.failures();
            return Ok((Output::Report(report), failures));
        }
    };
    Ok((out, 0))
}

fn graph_cmd(cmd: &GraphCmd, limits: &Limits) -> Result<Output> {
    match cmd {
        GraphCmd::Gen { kind, n, recovery } => {
            let g = match kind {
                GraphKind::Complete => Graph::complete(*n),
                GraphKind::Cycle => Graph::cycle(*n),
                GraphKind::Path => Graph::path(*n),
                GraphKind::Torus => torus_rowcol_graph(*n)?,
                GraphKind::Window => {
                    let spec = recovery
                        .as_deref()
                        .ok_or_else(|| LabError::Usage("window graphs need --recovery".into()))?;
                    window_graph_with(&parse_recovery(spec)?, *n, limits)?.graph
                }
            };
            Ok(Output::File(to_line(&GraphFile::from_graph(&g))))
        }
        GraphCmd::Validate { file } => {
            let g = load_graph(file)?;
            Ok(Output::Summary(json!({
                "file": file.display().to_string(),
                "valid": true,
                "n": g.n(),
                "directed": g.is_directed(),
                "edges": g.edge_count(),
            })))
        }
    }
}

fn design_cmd(cmd: &DesignCmd) -> Result<Output> {
    match cmd {
        DesignCmd::Gen { kind, q, family } => {
            let design = match kind {
                DesignKind::Affine => {
                    let q = q.ok_or_else(|| LabError::Usage("affine designs need --q".into()))?;
                    affine_design(q)?
                }
                DesignKind::Kirkman => kirkman_design_15(),
                DesignKind::Builtin3x5 => {
                    return Ok(Output::File(to_line(&FamilyFile::from(
                        &builtin_family_3x5(),
                    ))))
                }
                DesignKind::Example2x3 => {
                    return Ok(Output::File(to_line(&FamilyFile::from(
                        &example_family_2x3(),
                    ))))
                }
            };
            if *family {
                Ok(Output::File(to_line(&FamilyFile::from(
                    &family_from_design(&design)?,
                ))))
            } else {
                Ok(Output::File(to_line(&DesignFile::from(&design))))
            }
        }
        DesignCmd::Verify { file } => {
            let text = formats::read_text(file)?;
            let probe: Value = formats::parse(&file.display().to_string(), &text)?;
            if probe.get("matrices").is_some() {
                let f = load_family(file)?;
                Ok(Output::Summary(
                    json!({ "file": file.display().to_string(), "kind": "family", "valid": true, "k": f.k, "s": f.s, "matrices": f.matrices.len() }),
                ))
            } else {
                let d = formats::load_design(file)?;
                Ok(Output::Summary(
                    json!({ "file": file.display().to_string(), "kind": "design", "valid": true, "v": d.v, "k": d.k, "classes": d.classes.len() }),
                ))
            }
        }
    }
}

fn need<T: Clone>(value: &Option<T>, flag: &str, construction: &str) -> Result<T> {
    value
        .clone()
        .ok_or_else(|| LabError::Usage(format!("{construction} needs --{flag}")))
}

fn code_cmd(cmd: &CodeCmd, limits: &Limits) -> Result<(Output, usize)> {
    match cmd {
        CodeCmd::Build(args) => Ok((Output::File(build_code(args, limits)?), 0)),
        CodeCmd::Verify {
            code,
            graph,
            vertices,
        } => {
            let c = load_code(code)?;
            let g = load_graph(graph)?;
            let scope = match vertices {
                Some(v) => Scope::Subset(v),
                None => Scope::All,
            };
            let verdict = match &c {
                AnyCode::Explicit(c) => c.verify(&g, scope)?,
                AnyCode::Linear(c) => c.verify(&g, scope)?,
            };
            let (summary, failures) = match verdict {
                Verdict::Pass => (json!({ "verdict": "pass" }), 0),
                Verdict::Fail(w) => (
                    json!({ "verdict": "fail", "witness": { "v": w.v, "x": w.x, "y": w.y } }),
                    1,
                ),
            };
            Ok((Output::Summary(summary), failures))
        }
        CodeCmd::Rate { code } => {
            let (size, rate) = match load_code(code)? {
                AnyCode::Explicit(c) => (c.len().to_string(), c.rate()),
                AnyCode::Linear(c) => (c.size().to_string(), c.rate()),
            };
            Ok((
                Output::Summary(json!({
                    "size": size,
                    "alphabet": rate.base,
                    "rate": rate.exact.as_ref().map(frac),
                    "rate_approx": rate.approx,
                })),
                0,
            ))
        }
    }
}

fn build_code(args: &BuildArgs, limits: &Limits) -> Result<String> {
    let name = match args.construction {
        Construction::CliquePartition => "clique-partition",
        Construction::EdgeToVertex => "edge-to-vertex",
        Construction::Matching => "matching",
        Construction::TorusRowParity => "torus-row-parity",
        Construction::Gcd => "gcd",
        Construction::Tiling => "tiling",
        Construction::Stacked => "stacked",
    };
    let graph = || -> Result<Graph> { load_graph(&need(&args.graph, "graph", name)?) };
    let q = args.q;
    let linear = match args.construction {
        Construction::CliquePartition => {
            let g = graph()?;
            clique_partition_code(&g, &clique_cover_number(&g, limits)?, q)?
        }
        Construction::EdgeToVertex => edge_to_vertex_code(&graph()?, q)?,
        Construction::Matching => {
            let g = graph()?;
            matching_code(&g, &max_matching(&g), q)?
        }
        Construction::TorusRowParity => torus_row_parity(need(&args.n, "n", name)?, q)?,
        Construction::Gcd => {
            gcd_scheme_code(
                need(&args.l, "l", name)?,
                need(&args.r, "r", name)?,
                need(&args.n, "n", name)?,
                q,
            )?
            .0
        }
        Construction::Tiling => {
            let t = load_tiling(&need(&args.tiling, "tiling", name)?)?;
            tiling_code(&t, &graph()?, q)?.code
        }
        Construction::Stacked => {
            let rows = need(&args.rows, "rows", name)?;
            match load_code(&need(&args.code, "code", name)?)? {
                AnyCode::Linear(c) => stacked_linear_code(&c, rows)?,
                AnyCode::Explicit(c) => {
                    return Ok(to_line(&CodeFile::from_code(&stacked_code(
                        &c, rows, limits,
                    )?)))
                }
            }
        }
    };
    if args.explicit {
        Ok(to_line(&CodeFile::from_code(&linear.enumerate(limits)?)))
    } else {
        Ok(to_line(&CodeFile::from_linear(&linear)))
    }
}

fn interleave_cmd(cmd: &InterleaveCmd, cli: &Cli, limits: &Limits) -> Result<Output> {
    match cmd {
        InterleaveCmd::Build { graph, family } => {
            let g = load_graph(graph)?;
            let fam = load_family(family)?;
            let ig = build_interleaved_graph(&g, &greedy_coloring(&g), &fam)?;
            let graph_line = to_line(&GraphFile::from_graph(&ig.graph));
            let sidecar_line = to_line(&InterleaveSidecar::from(&ig));
            match &cli.out {
                Some(path) => {
                    formats::write_file(&sidecar_path(path), &sidecar_line)?;
                    Ok(Output::File(graph_line))
                }
                None => Ok(Output::File(to_line(&json!({
                    "graph": GraphFile::from_graph(&ig.graph),
                    "sidecar": InterleaveSidecar::from(&ig),
                })))),
            }
        }
        InterleaveCmd::Run {
            graph,
            family,
            code,
            sample,
        } => {
            let g = load_graph(graph)?;
            let fam = load_family(family)?;
            let ig = build_interleaved_graph(&g, &greedy_coloring(&g), &fam)?;
            let file = match (load_code(code)?, sample) {
                (AnyCode::Linear(c), None) => {
                    CodeFile::from_linear(&ig.interleaved_linear_code(&c)?)
                }
                (AnyCode::Linear(c), Some(count)) => {
                    let words = c.enumerate(limits)?;
                    CodeFile::from_code(&ig.interleaved_code(
                        &words,
                        Mode::Sample {
                            seed: cli.seed,
                            count: *count,
                        },
                        limits,
                    )?)
                }
                (AnyCode::Explicit(c), None) => {
                    CodeFile::from_code(&ig.interleaved_code(&c, Mode::Full, limits)?)
                }
                (AnyCode::Explicit(c), Some(count)) => CodeFile::from_code(&ig.interleaved_code(
                    &c,
                    Mode::Sample {
                        seed: cli.seed,
                        count: *count,
                    },
                    limits,
                )?),
            };
            Ok(Output::File(to_line(&file)))
        }
    }
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".sidecar.json");
    PathBuf::from(s)
}

fn bounds_cmd(cmd: &BoundsCmd, limits: &Limits) -> Result<Output> {
    let single = |graph: &PathBuf,
                  make: &dyn Fn(&Graph) -> stoc_core::Result<BoundCertificate>|
     -> Result<Output> {
        let g = load_graph(graph)?;
        let cert = make(&g)?;
        let ok = cert.revalidate(&g).is_ok();
        Ok(Output::Summary(certificate_json(
            &graph.display().to_string(),
            &cert,
            ok,
        )))
    };
    match cmd {
        BoundsCmd::Independence { graph } => {
            single(graph, &|g| BoundCertificate::independence(g, limits))
        }
        BoundsCmd::Mais { graph } => single(graph, &|g| BoundCertificate::mais(g, limits)),
        BoundsCmd::CliqueCover { graph } => {
            single(graph, &|g| BoundCertificate::clique_cover(g, limits))
        }
        BoundsCmd::Matching { graph } => single(graph, &|g| Ok(BoundCertificate::matching(g))),
        BoundsCmd::Capacity {
            graph,
            tau,
            max_support,
        } => {
            let g = load_graph(graph)?;
            let name = graph.display().to_string();
            let mut lower = Vec::new();
            if let Some(c) = skip_caps(BoundCertificate::clique_cover(&g, limits))? {
                lower.push(LowerEntry::from_certificate(&c, &g)?);
            }
            lower.push(LowerEntry::from_certificate(
                &BoundCertificate::matching(&g),
                &g,
            )?);
            if !g.is_directed() && (0..g.n()).all(|v| g.degree(v) > 0) {
                lower.push(LowerEntry::from_linear(
                    "edge_to_vertex",
                    &edge_to_vertex_code(&g, 2)?,
                    &g,
                )?);
            }
            let mut upper = Vec::new();
            upper.extend(skip_caps(BoundCertificate::independence(&g, limits))?);
            upper.extend(skip_caps(BoundCertificate::mais(&g, limits))?);
            if !g.is_directed() {
                if let Some(b) = skip_caps(lp_capacity_bound(
                    &g,
                    *tau,
                    *max_support,
                    ClosureMode::Formula,
                    limits,
                ))? {
                    upper.push(BoundCertificate::lp(&g, b)?);
                }
            }
            let report = capacity_certificate(&name, &g, lower, upper)?;
            Ok(Output::Summary(capacity_json(&report)))
        }
        BoundsCmd::Series {
            recovery,
            ns,
            bound,
        } => {
            let rec = parse_recovery(recovery)?;
            let bound = parse_series_bound(bound)?;
            let s = window_series(&rec, ns, bound, limits)?;
            Ok(Output::Summary(json!({
                "points": s.points.iter().map(|p| json!({
                    "n": p.n, "cells": p.cells, "dag_set_size": p.dag_set.len(), "value": frac(&p.value), "slack": frac(&p.slack)
                })).collect::<Vec<_>>(),
                "estimate": frac(&s.estimate),
                "estimate_is_proof": false,
            })))
        }
        BoundsCmd::DiffAvoiding { recovery, ns } => {
            let rec = parse_recovery(recovery)?;
            let points = diff_avoiding_bound(&rec, ns, limits)?;
            Ok(Output::Summary(json!({
                "points": points.iter().map(|p| json!({
                    "n": p.n, "left": p.left, "right": p.right, "bound": frac(&p.bound)
                })).collect::<Vec<_>>(),
            })))
        }
        BoundsCmd::Axial { t, n } => {
            let set = axial_dag_set(*t, *n, limits)?;
            Ok(Output::Summary(json!({
                "t": t, "n": n, "size": set.len(), "density": frac(&stoc_core::rational::ratio(set.len() as i64, (n * n) as i64)), "set": set,
            })))
        }
    }
}

/// Turns a cap rejection into "not computed"; other errors propagate.
fn skip_caps<T>(r: stoc_core::Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(CoreError::CapExceeded { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn numbers(text: &str, count: usize, spec: &str) -> Result<Vec<i64>> {
    let values: Vec<i64> = text
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| LabError::Usage(format!("bad numbers in `{spec}`")))?;
    if count > 0 && values.len() != count {
        return Err(LabError::Usage(format!("`{spec}` needs {count} numbers")));
    }
    Ok(values)
}

/// `interval:l,r`, `pair:l,r`, `linf:r`, `l1:r`, `rect:l,r,b,a`,
/// `axial:l,r,b,a` or `offsets:o1,o2,...` (one-dimensional).
pub fn parse_recovery(spec: &str) -> Result<RecoverySet> {
    let (kind, args) = spec
        .split_once(':')
        .ok_or_else(|| LabError::Usage(format!("recovery set `{spec}` needs `kind:args`")))?;
    let set = match kind {
        "interval" => {
            let v = numbers(args, 2, spec)?;
            RecoverySet::interval(v[0], v[1])?
        }
        "pair" => {
            let v = numbers(args, 2, spec)?;
            RecoverySet::pair(v[0], v[1])?
        }
        "linf" => RecoverySet::ball(Metric::Linf, numbers(args, 1, spec)?[0])?,
        "l1" => RecoverySet::ball(Metric::L1, numbers(args, 1, spec)?[0])?,
        "rect" => {
            let v = numbers(args, 4, spec)?;
            RecoverySet::rect(v[0], v[1], v[2], v[3])?
        }
        "axial" => {
            let v = numbers(args, 4, spec)?;
            RecoverySet::axial(v[0], v[1], v[2], v[3])?
        }
        "offsets" => {
            let offsets: Vec<(i64, i64)> = numbers(args, 0, spec)?
                .into_iter()
                .map(|o| (o, 0))
                .collect();
            RecoverySet::from_offsets(1, &offsets)?
        }
        _ => return Err(LabError::Usage(format!("unknown recovery kind `{kind}`"))),
    };
    Ok(set)
}

fn parse_series_bound(spec: &str) -> Result<SeriesBound> {
    if spec == "mais" {
        return Ok(SeriesBound::Mais);
    }
    let (kind, args) = spec
        .split_once(':')
        .ok_or_else(|| LabError::Usage(format!("unknown series bound `{spec}`")))?;
    let v = numbers(args, 0, spec)?;
    let r = |i: usize| {
        v.get(i)
            .and_then(|&x| usize::try_from(x).ok())
            .ok_or_else(|| LabError::Usage(format!("bad `{spec}`")))
    };
    let kind = match kind {
        "linf" => TilingKind::Linf { r: r(0)? },
        "l1" => TilingKind::L1 { r: r(0)? },
        "rect" => TilingKind::Rect { r: r(0)?, b: r(1)? },
        _ => return Err(LabError::Usage(format!("unknown series bound `{spec}`"))),
    };
    Ok(SeriesBound::Lattice(kind))
}

fn render_value(value: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("summaries serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["key", "value"]).expect("in-memory write");
            for (k, v) in flatten(value) {
                w.write_record([k, v]).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
        }
        Format::Table => {
            let rows = flatten(value);
            let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            rows.into_iter()
                .map(|(k, v)| format!("{k:<width$}  {v}\n"))
                .collect()
        }
    }
}

/// Leaf values keyed by dotted paths; arrays of scalars stay on one line.
fn flatten(value: &Value) -> Vec<(String, String)> {
    fn walk(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        let key = |k: &str| {
            if prefix.is_empty() {
                k.to_string()
            } else {
                format!("{prefix}.{k}")
            }
        };
        match v {
            Value::Object(map) => {
                for (k, v) in map {
                    walk(&key(k), v, out);
                }
            }
            Value::Array(items) if items.iter().any(|i| i.is_object() || i.is_array()) => {
                for (i, v) in items.iter().enumerate() {
                    walk(&key(&i.to_string()), v, out);
                }
            }
            Value::String(s) => out.push((prefix.to_string(), s.clone())),
            other => out.push((prefix.to_string(), other.to_string())),
        }
    }
    let mut out = Vec::new();
    walk("", value, &mut out);
    out
}
