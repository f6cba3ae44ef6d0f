//! Argument grammar and command dispatch for the `specgraph` binary.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value as Json};
use specgraph_core::families::{
    clique_extension, make_complete, make_cycle, make_grid, make_johnson, make_petersen, make_triangular,
};
use specgraph_core::lines::{self, LinesError};
use specgraph_core::reconstruct::{reconstruct_with, SpectralMode};
use specgraph_core::regularity::{check_cube_entries, check_local_identities, co_edge_params, srg_params};
use specgraph_core::spectral::{certified_spectrum, is_walk_regular, spectrum, DEFAULT_CLUSTER_TOL};
use specgraph_core::structure::{check_interlacing, is_equitable, quotient_matrix, quotient_spectrum, Partition};
use specgraph_core::{ExtensionParams, Graph, Violation};

use crate::graph6;
use crate::report::{
    spectrum_entries, CensusReport, ParamsReport, VerdictReport, VertexLinesReport, ViolationReport,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable capping the worker pool size.
pub const THREADS_VAR: &str = "SPECGRAPH_THREADS";

const FAMILIES: &str = "complete, johnson, triangular, grid, cycle, petersen, clique-ext-<family>";

#[derive(Debug, Parser)]
#[command(name = "specgraph", version, about = "Recognise clique extensions of triangular graphs")]
pub struct Cli {
    /// Attach run metadata (timing, thread count) to the JSON output.
    #[arg(long, global = true)]
    pub verbose: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a graph from a named family as graph6.
    Gen(GenArgs),
    /// Print the adjacency spectrum.
    Spectrum {
        #[command(flatten)]
        input: Input,
        /// Skip the exact kernel certification of integer eigenvalues.
        #[arg(long)]
        numeric: bool,
    },
    /// Run one named checker.
    Check {
        checker: Checker,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        params: ParamArgs,
        /// Vertex labels, comma separated, for the interlacing checker.
        #[arg(long)]
        partition: Option<String>,
        /// Largest walk length for the walk-regular checker.
        #[arg(long, default_value_t = 4)]
        max_power: usize,
    },
    /// The two lines through each vertex.
    Lines {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        params: ParamArgs,
        /// Report a single vertex.
        #[arg(long)]
        vertex: Option<usize>,
    },
    /// The global line census.
    Census {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Run the full staged reconstruction.
    Reconstruct {
        #[command(flatten)]
        input: Input,
        /// Certify the spectrum without the dense eigensolver.
        #[arg(long)]
        exact_only: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Checker {
    CoEdge,
    Srg,
    WalkRegular,
    Cube,
    LocalIdentities,
    Interlacing,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Input {
    /// Read a graph6 file (first graph).
    #[arg(long = "in", value_name = "PATH")]
    pub path: Option<PathBuf>,
    /// A graph6 string given inline.
    #[arg(long)]
    pub graph6: Option<String>,
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    /// Clique size; inferred from order and valency when omitted.
    #[arg(long, requires = "n")]
    pub s: Option<usize>,
    #[arg(long, requires = "s")]
    pub n: Option<usize>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub q: Option<usize>,
}

/// A failure that is not a verdict on the graph: bad arguments or unreadable
/// input.
#[derive(Debug)]
pub struct UsageError(pub String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

struct Outcome {
    pass: bool,
    payload: Payload,
}

enum Payload {
    Json(Json),
    Text(String),
}

fn json_outcome(pass: bool, payload: impl Serialize) -> Outcome {
    Outcome {
        pass,
        payload: Payload::Json(serde_json::to_value(payload).expect("report types serialize")),
    }
}

fn need(value: Option<usize>, family: &str, flag: &str) -> Result<usize, UsageError> {
    value.ok_or_else(|| UsageError(format!("family {family} needs --{flag}")))
}

fn build_family(family: &str, a: &GenArgs) -> Result<Graph, UsageError> {
    if let Some(base) = family.strip_prefix("clique-ext-") {
        let s = need(a.s, family, "s")?;
        return Ok(clique_extension(&build_family(base, a)?, s)?);
    }
    Ok(match family {
        "complete" => make_complete(need(a.n, family, "n")?)?,
        "johnson" => make_johnson(need(a.t, family, "t")?, need(a.d, family, "d")?)?,
        "triangular" => make_triangular(need(a.n, family, "n")?)?,
        "grid" => make_grid(need(a.p, family, "p")?, need(a.q, family, "q")?)?,
        "cycle" => make_cycle(need(a.n, family, "n")?)?,
        "petersen" => make_petersen(),
        other => {
            return Err(UsageError(format!(
                "unknown family {other:?}; valid families: {FAMILIES}"
            )))
        }
    })
}

fn read_graph(input: &Input) -> Result<Graph, UsageError> {
    let text = match (&input.path, &input.graph6) {
        (Some(path), _) => std::fs::read_to_string(path)
            .map_err(|e| UsageError(format!("{}: {e}", path.display())))?,
        (None, Some(s)) => s.clone(),
        (None, None) => return Err(UsageError("no input graph".into())),
    };
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .ok_or_else(|| UsageError("input contains no graph".into()))?;
    Ok(graph6::decode(line)?)
}

fn resolve_params(g: &Graph, p: &ParamArgs) -> Result<ExtensionParams, String> {
    match (p.s, p.n) {
        (Some(s), Some(n)) => ExtensionParams::new(s, n).map_err(|e| e.to_string()),
        _ => {
            let k = g.regular_valency().ok_or("graph is not regular; pass --s and --n")?;
            ExtensionParams::from_order_and_valency(g.order(), k).ok_or_else(|| {
                format!(
                    "order {} and valency {k} match no clique extension of a triangular graph; pass --s and --n",
                    g.order()
                )
            })
        }
    }
}

fn violation_outcome(check: &str, params: Option<ExtensionParams>, v: &Violation) -> Outcome {
    json_outcome(
        false,
        json!({
            "check": check,
            "pass": false,
            "params": params.map(ParamsReport::from),
            "violation": ViolationReport::from(v),
        }),
    )
}

fn detail_outcome(check: &str, detail: String) -> Outcome {
    json_outcome(false, json!({"check": check, "pass": false, "detail": detail}))
}

fn run_check(
    checker: Checker,
    g: &Graph,
    params: &ParamArgs,
    partition: Option<&str>,
    max_power: usize,
) -> Result<Outcome, UsageError> {
    let name = checker.to_possible_value().expect("no skipped variants").get_name().to_string();
    Ok(match checker {
        Checker::CoEdge => match co_edge_params(g) {
            Ok(p) => json_outcome(
                true,
                json!({"check": name, "pass": true, "params": {"v": p.order, "k": p.valency, "mu": p.mu}}),
            ),
            Err(v) => violation_outcome(&name, None, &v),
        },
        Checker::Srg => match srg_params(g) {
            Ok(p) => json_outcome(
                true,
                json!({"check": name, "pass": true,
                       "params": {"v": p.order, "k": p.valency, "lambda": p.lambda, "mu": p.mu}}),
            ),
            Err(v) => violation_outcome(&name, None, &v),
        },
        Checker::WalkRegular => {
            let pass = is_walk_regular(g, max_power);
            json_outcome(pass, json!({"check": name, "pass": pass, "max_power": max_power}))
        }
        Checker::Cube | Checker::LocalIdentities => {
            let p = match resolve_params(g, params) {
                Ok(p) => p,
                Err(e) => return Ok(detail_outcome(&name, e)),
            };
            let result = if checker == Checker::Cube {
                check_cube_entries(g, &p)
            } else {
                check_local_identities(g, &p)
            };
            match result {
                Ok(()) => json_outcome(
                    true,
                    json!({"check": name, "pass": true, "params": ParamsReport::from(p)}),
                ),
                Err(v) => violation_outcome(&name, Some(p), &v),
            }
        }
        Checker::Interlacing => {
            let labels = partition.ok_or_else(|| UsageError("interlacing needs --partition".into()))?;
            let labels: Vec<usize> = labels
                .split(',')
                .map(|l| l.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|e| UsageError(format!("bad --partition: {e}")))?;
            let pi = Partition::from_labels(&labels)?;
            let q = quotient_matrix(g, &pi)?;
            let big = spectrum(g, DEFAULT_CLUSTER_TOL)?;
            let small = quotient_spectrum(&q)?;
            let r = check_interlacing(&big, &small)?;
            let quotient: Vec<Vec<String>> = q
                .rows()
                .iter()
                .map(|row| row.iter().map(ToString::to_string).collect())
                .collect();
            json_outcome(
                r.interlaces,
                json!({
                    "check": name,
                    "pass": r.interlaces,
                    "interlaces": r.interlaces,
                    "tight": r.tight,
                    "equitable": is_equitable(g, &pi)?,
                    "quotient": quotient,
                    "graph_spectrum": spectrum_entries(&big),
                    "quotient_spectrum": spectrum_entries(&small),
                }),
            )
        }
    })
}

fn lines_error_json(e: &LinesError) -> Json {
    let mut out = json!({"detail": e.to_string()});
    match e {
        LinesError::Check(v) => out["violation"] = json!(ViolationReport::from(v)),
        LinesError::WrongLineCount { vertex, lines } => {
            out["vertex"] = json!(vertex);
            out["lines"] = json!(lines);
        }
        LinesError::WrongValency { vertex, .. } | LinesError::SearchLimit(vertex) => {
            out["vertex"] = json!(vertex)
        }
        _ => {}
    }
    out
}

fn run_lines(g: &Graph, params: &ParamArgs, vertex: Option<usize>) -> Result<Outcome, UsageError> {
    let p = match resolve_params(g, params) {
        Ok(p) => p,
        Err(e) => return Ok(json_outcome(false, json!({"pass": false, "detail": e}))),
    };
    if let Some(x) = vertex {
        g.check_vertex(x)?;
    }
    let vertices: Vec<usize> = match vertex {
        Some(x) => vec![x],
        None => (0..g.order()).collect(),
    };
    let mut reports = Vec::with_capacity(vertices.len());
    let mut pass = true;
    for x in vertices {
        match lines::lines_through(g, x, p) {
            Ok(d) => {
                let violations = lines::validate_vertex_lines(&d, p);
                pass &= violations.is_empty();
                reports.push(VertexLinesReport::new(&d, &violations));
            }
            Err(e) => {
                return Ok(json_outcome(
                    false,
                    json!({"pass": false, "params": ParamsReport::from(p), "error": lines_error_json(&e)}),
                ))
            }
        }
    }
    Ok(json_outcome(
        pass,
        json!({"pass": pass, "params": ParamsReport::from(p), "vertices": reports}),
    ))
}

fn run_census(g: &Graph, params: &ParamArgs) -> Result<Outcome, UsageError> {
    let p = match resolve_params(g, params) {
        Ok(p) => p,
        Err(e) => return Ok(json_outcome(false, json!({"pass": false, "detail": e}))),
    };
    let result = lines::compute_census(g, p).and_then(|c| {
        lines::check_line_intersections(&c, p)
            .map(|_| c)
            .map_err(LinesError::Check)
    });
    Ok(match result {
        Ok(c) => json_outcome(
            true,
            json!({"pass": true, "params": ParamsReport::from(p), "census": CensusReport::from(&c)}),
        ),
        Err(e) => json_outcome(
            false,
            json!({"pass": false, "params": ParamsReport::from(p), "error": lines_error_json(&e)}),
        ),
    })
}

fn dispatch(command: &Command) -> Result<Outcome, UsageError> {
    match command {
        Command::Gen(args) => {
            let g = build_family(&args.family, args)?;
            Ok(Outcome {
                pass: true,
                payload: Payload::Text(graph6::encode(&g)),
            })
        }
        Command::Spectrum { input, numeric } => {
            let g = read_graph(input)?;
            let spec = if *numeric {
                spectrum(&g, DEFAULT_CLUSTER_TOL)?
            } else {
                certified_spectrum(&g)?
            };
            Ok(json_outcome(true, spectrum_entries(&spec)))
        }
        Command::Check {
            checker,
            input,
            params,
            partition,
            max_power,
        } => {
            let g = read_graph(input)?;
            run_check(*checker, &g, params, partition.as_deref(), *max_power)
        }
        Command::Lines { input, params, vertex } => run_lines(&read_graph(input)?, params, *vertex),
        Command::Census { input, params } => run_census(&read_graph(input)?, params),
        Command::Reconstruct { input, exact_only } => {
            let g = read_graph(input)?;
            let mode = if *exact_only { SpectralMode::ExactOnly } else { SpectralMode::Auto };
            let v = reconstruct_with(&g, mode);
            Ok(json_outcome(v.is_confirmed(), VerdictReport::from(&v)))
        }
    }
}

/// Reads the thread cap from the environment; `None` when unset.
pub fn thread_cap(value: Option<&str>) -> Result<Option<usize>, UsageError> {
    match value {
        None => Ok(None),
        Some(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(UsageError(format!("{THREADS_VAR} must be a positive integer, got {v:?}"))),
        },
    }
}

fn configure_threads() -> Result<usize, UsageError> {
    let cap = thread_cap(std::env::var(THREADS_VAR).ok().as_deref())?;
    if let Some(n) = cap {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(rayon::current_num_threads())
}

/// Parses `args` (including the program name), runs the command and writes
/// the result. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let threads = match configure_threads() {
        Ok(t) => t,
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let start = Instant::now();
    let outcome = match dispatch(&cli.command) {
        Ok(o) => o,
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let written = match outcome.payload {
        Payload::Text(text) => writeln!(out, "{text}"),
        Payload::Json(mut value) => {
            if cli.verbose {
                let meta = json!({
                    "elapsed_ms": start.elapsed().as_millis() as u64,
                    "threads": threads,
                    "version": env!("CARGO_PKG_VERSION"),
                });
                value = match value {
                    Json::Object(mut map) => {
                        map.insert("meta".into(), meta);
                        Json::Object(map)
                    }
                    other => json!({"result": other, "meta": meta}),
                };
            }
            writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("json values serialize"))
        }
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return EXIT_USAGE;
    }
    if outcome.pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}
