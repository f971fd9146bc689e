//! `turan`: closed forms, constructions and exact checks for Turán numbers of
//! path/star forests.
//!
//! Exit status: 0 success, 1 usage or parse error, 2 computation error or
//! timeout, 3 a result that contradicts what the theory guarantees.

mod input;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use turan_core::constructions::{extremal_construction, order4_extremal, star_extremal};
use turan_core::formulas::goldberg_counterexample;
use turan_core::{
    exact_turan, find_embedding, turan_formula, verify_range, Construction, ForestClass,
    ForestSpec, OracleOptions, Order4Variant,
};

#[derive(Parser, Debug)]
#[command(
    name = "turan",
    version,
    about = "Turán numbers of path and star forests"
)]
struct Cli {
    /// Oracle time limit per (forest, n), in seconds.
    #[arg(long, global = true, env = "TURAN_TIMEOUT_SECS", default_value_t = 300)]
    timeout: u64,
    /// Oracle worker threads (default: one per core).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate the closed form for ex(n, F).
    Formula {
        spec: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Build the extremal construction for F on n vertices.
    Construct {
        spec: String,
        #[arg(long)]
        n: usize,
        /// Order-4 forests: which of the two constructions.
        #[arg(long, value_enum)]
        variant: Option<Variant>,
        /// Star forests: the index i of F(n, i), 1-based.
        #[arg(long)]
        index: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Decide whether the graph in a file contains F.
    Check {
        /// graph6 (`.g6`, or sniffed) or JSON `{"n": .., "edges": [[u, v], ..]}`.
        graph: PathBuf,
        spec: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Exact ex(n, F) and its extremal graphs by exhaustive search.
    Oracle {
        spec: String,
        #[arg(long)]
        n: usize,
        /// List every extremal isomorphism class.
        #[arg(long)]
        all_extremal: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Compare formula, construction and oracle over a range of n.
    Verify {
        spec: String,
        /// Inclusive range `A..B`.
        #[arg(long, value_parser = parse_range)]
        range: (usize, usize),
        /// Largest n handed to the oracle.
        #[arg(long, default_value_t = 9)]
        oracle_cap: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Search for a counterexample to the Goldberg–Magdon-Ismail conjecture.
    Conjecture {
        spec: String,
        #[arg(long, default_value_t = 40)]
        n_max: u64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Graph6,
    Dot,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Variant {
    G1,
    G2,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once("..").ok_or("expected A..B")?;
    let a: usize = a.trim().parse().map_err(|e| format!("range start: {e}"))?;
    let b: usize = b
        .trim()
        .trim_start_matches('=')
        .parse()
        .map_err(|e| format!("range end: {e}"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

/// Failure with its exit status.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Self {
            code: 1,
            error: anyhow!(msg.into()),
        }
    }

    fn mismatch(msg: impl Into<String>) -> Self {
        Self {
            code: 3,
            error: anyhow!(msg.into()),
        }
    }
}

impl From<turan_core::Error> for Failure {
    fn from(e: turan_core::Error) -> Self {
        use turan_core::Error::*;
        let code = match e {
            Syntax { .. } | ComponentSize { .. } | EmptyForest => 1,
            _ => 2,
        };
        Self {
            code,
            error: e.into(),
        }
    }
}

/// What a successful or partially successful run produced.
struct Report {
    text: String,
    /// Non-zero when the report is complete but signals a problem.
    code: u8,
}

impl Report {
    fn ok(text: String) -> Self {
        Self { text, code: 0 }
    }
}

fn forest(spec: &str) -> Result<ForestSpec, Failure> {
    Ok(spec.parse::<ForestSpec>()?)
}

/// One JSON document per line.
fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serialisable");
    s.push('\n');
    s
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let options = OracleOptions {
        enumerate_all: false,
        bound_hint: None,
        timeout: Some(Duration::from_secs(cli.timeout)),
        workers: cli.workers,
    };
    if cli.workers == Some(0) {
        return Err(Failure::usage("--workers must be at least 1"));
    }
    match &cli.command {
        Command::Formula { spec, n, format } => {
            let f = forest(spec)?;
            let eval = turan_formula(&f, *n as u64)?;
            let text = match format {
                Format::Json => to_json(&json!({ "forest": f, "n": n, "evaluation": eval })),
                Format::Table => {
                    let mut t = String::new();
                    let _ = writeln!(t, "forest    {f}");
                    let _ = writeln!(t, "n         {n}");
                    let _ = writeln!(t, "value     {}", eval.value);
                    let _ = writeln!(t, "theorem   {}", eval.theorem);
                    if let Some(i) = eval.argmax_i {
                        let _ = writeln!(t, "argmax_i  {i} (maximisers {:?})", eval.maximizers);
                    }
                    if let Some(fs) = &eval.f {
                        let shown: Vec<String> = fs.iter().map(|x| x.to_string()).collect();
                        let _ = writeln!(t, "f_i       {}", shown.join(" "));
                    }
                    if let Some(o) = &eval.order4 {
                        let _ = writeln!(
                            t,
                            "order-4   g1 = {}, g2 = {}, residue {}, {:?}",
                            o.g1_edges, o.g2_edges, o.residue, o.verdict
                        );
                    }
                    let caveat = if eval.asymptotic_caveat {
                        "proven for sufficiently large n only"
                    } else {
                        "exact for every n in range"
                    };
                    let _ = writeln!(t, "caveat    {caveat}");
                    t
                }
                _ => return Err(Failure::usage("formula supports --format table|json")),
            };
            Ok(Report::ok(text))
        }
        Command::Construct {
            spec,
            n,
            variant,
            index,
            format,
        } => {
            let f = forest(spec)?;
            let class = f.classify();
            let c: Construction = match (variant, index) {
                (Some(_), Some(_)) => {
                    return Err(Failure::usage("--variant and --index are exclusive"))
                }
                (Some(v), None) => {
                    if class != ForestClass::Order4Mixed {
                        return Err(Failure::usage(
                            "--variant applies only to a·P4 + b·S3 with a, b >= 1",
                        ));
                    }
                    let (a, b) = f.order4_counts().expect("order-4 class");
                    let v = match v {
                        Variant::G1 => Order4Variant::G1,
                        Variant::G2 => Order4Variant::G2,
                    };
                    order4_extremal(a, b, *n, v)?
                }
                (None, Some(i)) => {
                    if !matches!(class, ForestClass::StarForest | ForestClass::AllP3) {
                        return Err(Failure::usage("--index applies only to star forests"));
                    }
                    if *i == 0 || *i > f.component_count() {
                        return Err(Failure::usage(format!(
                            "--index must be in 1..={}",
                            f.component_count()
                        )));
                    }
                    star_extremal(&f, *n, *i)?
                }
                (None, None) => extremal_construction(&f, *n)?,
            };
            // Never emit a graph that fails its own freeness check.
            if let Some(e) = find_embedding(&c.graph, &f) {
                return Err(Failure::mismatch(format!(
                    "construction contains {f}: {}",
                    e.render(&f).trim_end()
                )));
            }
            let text = match format {
                Format::Graph6 => format!("{}\n", c.graph.encode_graph6()),
                Format::Dot => c.graph.to_dot(),
                Format::Json => to_json(&json!({
                    "descriptor": c.descriptor,
                    "edges": c.graph.edge_count(),
                    "graph6": c.graph.encode_graph6(),
                    "graph": c.graph,
                })),
                Format::Table => {
                    let d = &c.descriptor;
                    let mut t = String::new();
                    let _ = writeln!(t, "forest     {f}");
                    let _ = writeln!(
                        t,
                        "family     {}",
                        serde_json::to_value(d.family).unwrap().as_str().unwrap()
                    );
                    let _ = writeln!(t, "n          {}", d.n);
                    if let Some(i) = d.index {
                        let _ = writeln!(t, "index      {i}");
                    }
                    if let Some(v) = d.variant {
                        let _ = writeln!(
                            t,
                            "variant    {}",
                            serde_json::to_value(v).unwrap().as_str().unwrap()
                        );
                    }
                    let _ = writeln!(
                        t,
                        "universal  {} (vertices 0..{})",
                        d.universal_count, d.universal_count
                    );
                    let _ = writeln!(
                        t,
                        "remainder  {}",
                        serde_json::to_string(&d.remainder).unwrap()
                    );
                    let _ = writeln!(t, "edges      {}", c.graph.edge_count());
                    let _ = writeln!(t, "graph6     {}", c.graph.encode_graph6());
                    t
                }
            };
            Ok(Report::ok(text))
        }
        Command::Check {
            graph,
            spec,
            format,
        } => {
            let f = forest(spec)?;
            let g = input::read_graph(graph).map_err(|e| Failure { code: 1, error: e })?;
            let found = find_embedding(&g, &f);
            let text = match format {
                Format::Json => to_json(&json!({
                    "forest": f,
                    "n": g.n(),
                    "edges": g.edge_count(),
                    "contains": found.is_some(),
                    "witness": found.as_ref().map(|e| e.assignments()),
                })),
                Format::Table => match &found {
                    Some(e) => format!("contains\n{}", e.render(&f)),
                    None => "F-free\n".to_string(),
                },
                _ => return Err(Failure::usage("check supports --format table|json")),
            };
            Ok(Report::ok(text))
        }
        Command::Oracle {
            spec,
            n,
            all_extremal,
            format,
        } => {
            let f = forest(spec)?;
            let options = OracleOptions {
                enumerate_all: *all_extremal,
                ..options
            };
            let r = exact_turan(&f, *n, &options)?;
            let text = match format {
                Format::Json => to_json(&r),
                Format::Table => r.to_table(),
                _ => return Err(Failure::usage("oracle supports --format table|json")),
            };
            // A partial result is still printed, but the run did not finish.
            let code = if r.exact { 0 } else { 2 };
            Ok(Report { text, code })
        }
        Command::Verify {
            spec,
            range,
            oracle_cap,
            format,
        } => {
            let f = forest(spec)?;
            let report = verify_range(&f, range.0, range.1, *oracle_cap, &options)?;
            let text = match format {
                Format::Json => to_json(&report),
                Format::Table => report.to_table(),
                _ => return Err(Failure::usage("verify supports --format table|json")),
            };
            let code = if report.has_mismatch() { 3 } else { 0 };
            Ok(Report { text, code })
        }
        Command::Conjecture {
            spec,
            n_max,
            format,
        } => {
            let f = forest(spec)?;
            let found = goldberg_counterexample(&f, *n_max)?;
            let text = match (format, &found) {
                (Format::Json, _) => {
                    to_json(&json!({ "forest": f, "n_max": n_max, "counterexample": found }))
                }
                (Format::Table, Some(r)) => {
                    let mut t = String::new();
                    let _ = writeln!(
                        t,
                        "forest       {}  (e(F) = {}, k = {})",
                        r.forest, r.e_f, r.k
                    );
                    let _ = writeln!(t, "witness n    {}", r.witness_n);
                    let _ = writeln!(t, "edges        {}", r.witness_edges);
                    let _ = writeln!(
                        t,
                        "avg degree   {} > {} = e(F) - 1",
                        r.avg_degree,
                        r.e_f - 1
                    );
                    let _ = writeln!(t, "theorem      {}", r.theorem);
                    let _ = writeln!(t, "F-free       certified");
                    let _ = writeln!(t, "graph6       {}", r.witness.encode_graph6());
                    t
                }
                (Format::Table, None) => format!("no counterexample found up to {n_max}\n"),
                _ => return Err(Failure::usage("conjecture supports --format table|json")),
            };
            Ok(Report::ok(text))
        }
    }
}

fn emit(cli: &Cli, text: &str) -> anyhow::Result<()> {
    match &cli.output {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(report) => {
            if let Err(e) = emit(&cli, &report.text) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if report.code == 2 {
                eprintln!("warning: oracle timed out; result is a lower bound only");
            }
            ExitCode::from(report.code)
        }
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            if f.code == 1 {
                eprintln!("run `turan --help` for usage");
            }
            ExitCode::from(f.code)
        }
    }
}
