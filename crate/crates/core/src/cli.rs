//! Command-line front end.
//!
//! Graphs are passed as graph6 strings or `@path` references to a file of
//! graph6 lines. Exit codes: 0 success, 2 usage error, 3 precondition
//! violation, 4 search limit exceeded.

use std::fmt;
use std::fs::OpenOptions;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::berge::{
    berge_sandwich_check, cliques_to_hypergraph, contains_berge_pattern, exact_berge_extremal, hypergraph_to_graph,
    Assignment, BergePattern, CliqueMode,
};
use crate::classifier::{classify_linearity, Certificate, LinearityVerdict};
use crate::constructions::{FamilySpec, RParams};
use crate::counting::{
    asymptotic_predictor, certified_c4_bound, certified_cycle_bound, certified_path_bound, count_cliques, count_cycles,
    count_paths, greedy_lower_certificates, BoundReport, Predictor,
};
use crate::embed::count_copies;
use crate::error::Error;
use crate::extremal::{
    exact_extremal, heuristic_lower, random_deletion_lower, ExtremalRecord, RandomConstructionParams,
};
use crate::format::{from_graph6, hypergraph_from_text, hypergraph_to_text, parse_graph6_lines, to_dot, to_graph6};
use crate::graph::Graph;
use crate::hypergraph::Hypergraph;

const CSV_HELP: &str = "\
CSV columns:
  count, bound:      formula,inputs,value,exact_count,ratio
  extremal:          n,h,forbidden,value,method,witness,seed
  extremal ledger:   the extremal columns plus wall_time_ms
  classify:          k,f,verdict,r0,host,r,embedding
  berge extremal:    n,r,forbidden,value,witness
  berge sandwich:    n,r,f,ex_clique,ex_berge,ex_edges,lower_holds,upper_holds
  sweep furedi:      q,t,k,n,e,cycles,cycle_bound,cycle_ratio,greedy_cycle,paths,path_bound,path_ratio,greedy_path,predicted_cycles,skipped
  sweep extremal:    n,h,forbidden,value,witness,skipped
Graph arguments are graph6 strings or @FILE (one graph6 per line).";

#[derive(Parser, Debug)]
#[command(name = "genturan", version, about = "Generalized Turán numbers toolkit", after_help = CSV_HELP)]
struct Cli {
    #[command(subcommand)]
    command: RawCommand,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Largest n for exhaustive graph search.
    #[arg(long, global = true, default_value_t = crate::extremal::DEFAULT_LIMIT)]
    limit: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Text,
    Graph6,
    Dot,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Text => "text",
            Format::Graph6 => "graph6",
            Format::Dot => "dot",
        })
    }
}

#[derive(Subcommand, Debug)]
enum RawCommand {
    /// Build a named graph family member.
    Construct {
        #[arg(value_enum)]
        family: FamilyKind,
        #[command(flatten)]
        p: FamilyArgs,
    },
    /// Count copies of a pattern in a graph.
    Count {
        #[arg(long)]
        graph: String,
        #[arg(long, value_enum)]
        pattern: PatternKind,
        /// Length or size parameter for path, cycle and clique patterns.
        #[arg(long)]
        k: Option<usize>,
        /// Pattern graph for `--pattern graph`.
        #[arg(long)]
        h: Option<String>,
    },
    /// Evaluate a counting bound, optionally against a host graph.
    Bound {
        #[arg(value_enum)]
        formula: BoundKind,
        #[arg(long)]
        graph: Option<String>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        e: Option<u64>,
        #[arg(long)]
        t: Option<u64>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        q: Option<u64>,
        /// Predictor family for `predict`.
        #[arg(long)]
        id: Option<String>,
    },
    /// Compute ex(n, H, F) exactly or a lower bound for it.
    Extremal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        h: String,
        /// Forbidden graph; repeat for several.
        #[arg(long = "forbid")]
        forbid: Vec<String>,
        #[arg(long, value_enum, default_value_t = MethodKind::Exact)]
        method: MethodKind,
        #[arg(long, default_value_t = 20_000)]
        iterations: usize,
        /// Coefficient of the edge probability for `--method random`.
        #[arg(long)]
        c: Option<f64>,
        /// Append a row (with wall time) to this CSV file.
        #[arg(long)]
        ledger: Option<PathBuf>,
    },
    /// Decide whether ex(n, C_k, F) is linear or quadratic.
    Classify {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        f: String,
    },
    /// Berge hypergraph operations.
    Berge {
        #[command(subcommand)]
        verb: RawBerge,
    },
    /// Tables over a parameter range.
    Sweep {
        #[command(subcommand)]
        kind: RawSweep,
    },
}

#[derive(Args, Debug, Default)]
struct FamilyArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    a: Option<usize>,
    #[arg(long)]
    b: Option<usize>,
    #[arg(long)]
    c: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    /// Base graph for `blowup`.
    #[arg(long)]
    base: Option<String>,
    /// Comma-separated class sizes for `blowup`.
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum FamilyKind {
    Turan,
    Blowup,
    Furedi,
    CStar,
    CDoubleStar,
    Banana,
    QGraph,
    RGraph,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PatternKind {
    Path,
    Cycle,
    Clique,
    Graph,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    Cycle,
    Path,
    C4,
    Greedy,
    Predict,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodKind {
    Exact,
    Heuristic,
    Random,
}

#[derive(Subcommand, Debug)]
enum RawBerge {
    /// Look for a Berge copy of F in a hypergraph file.
    Detect {
        #[arg(long)]
        hyper: PathBuf,
        #[arg(long)]
        f: Option<String>,
        /// Look for two hyperedges sharing two vertices instead.
        #[arg(long)]
        forbid_c2: bool,
    },
    /// Greedy reduction of a hypergraph file to a graph.
    ToGraph {
        #[arg(long)]
        hyper: PathBuf,
    },
    /// Hypergraph of the cliques of a graph.
    FromCliques {
        #[arg(long)]
        graph: String,
        /// Keep only cliques of this size (default: all of size >= 2).
        #[arg(long)]
        r: Option<usize>,
    },
    /// Exact ex_r(n, Berge-F).
    Extremal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long = "forbid")]
        forbid: Vec<String>,
        #[arg(long)]
        forbid_c2: bool,
        #[arg(long)]
        ledger: Option<PathBuf>,
    },
    /// ex(n,K_r,F) <= ex_r(n,Berge-F) <= ex(n,K_r,F) + ex(n,F).
    Sandwich {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        f: String,
    },
}

#[derive(Subcommand, Debug)]
enum RawSweep {
    /// Exact cycle and path counts on F_{q,t} against the bounds.
    Furedi {
        /// Comma list or inclusive range `a..b`.
        #[arg(long)]
        q: String,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: usize,
    },
    /// ex(n, H, F) over a range of n.
    Extremal {
        #[arg(long)]
        n: String,
        #[arg(long)]
        h: String,
        #[arg(long = "forbid")]
        forbid: Vec<String>,
    },
}

/// A validated command.
#[derive(Clone, Debug)]
pub enum Command {
    Construct(FamilySpec),
    Count {
        graph: Graph,
        pattern: PatternKind,
        k: Option<usize>,
        h: Option<Graph>,
    },
    Bound {
        formula: BoundKind,
        graph: Option<Graph>,
        n: Option<u64>,
        e: Option<u64>,
        t: Option<u64>,
        k: Option<u32>,
        q: Option<u64>,
        id: Option<Predictor>,
    },
    Extremal {
        n: usize,
        h: Graph,
        forbid: Vec<Graph>,
        method: MethodKind,
        iterations: usize,
        c: Option<f64>,
        ledger: Option<PathBuf>,
    },
    Classify {
        k: usize,
        f: Graph,
    },
    BergeDetect {
        hyper: Hypergraph,
        pattern: BergePattern,
    },
    BergeToGraph {
        hyper: Hypergraph,
    },
    BergeFromCliques {
        graph: Graph,
        mode: CliqueMode,
    },
    BergeExtremal {
        n: usize,
        r: usize,
        forbid: Vec<BergePattern>,
        ledger: Option<PathBuf>,
    },
    BergeSandwich {
        n: usize,
        r: usize,
        f: Graph,
    },
    SweepFuredi {
        qs: Vec<usize>,
        t: usize,
        k: usize,
    },
    SweepExtremal {
        ns: Vec<usize>,
        h: Graph,
        forbid: Vec<Graph>,
    },
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub seed: u64,
    pub workers: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub limit: usize,
}

#[derive(Debug)]
pub enum CliError {
    /// `--help` or `--version` output; not a failure.
    Info(String),
    Usage(String),
    Precondition(String),
    Limit(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Info(_) => 0,
            CliError::Usage(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Limit(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Info(m)
            | CliError::Usage(m)
            | CliError::Precondition(m)
            | CliError::Limit(m)
            | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Precondition(m) => CliError::Precondition(format!("precondition violated: {m}")),
            e @ Error::LimitExceeded { .. } => CliError::Limit(e.to_string()),
            e @ (Error::Graph6(_) | Error::Hypergraph(_)) => CliError::Usage(e.to_string()),
            Error::Io(e) => CliError::Io(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

fn read_text(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

/// All graphs named by one argument.
fn graphs_arg(flag: &str, value: &str) -> CliResult<Vec<Graph>> {
    let parsed = match value.strip_prefix('@') {
        Some(path) => parse_graph6_lines(&read_text(Path::new(path))?),
        None => from_graph6(value).map(|g| vec![g]),
    };
    parsed.map_err(|e| CliError::Usage(format!("--{flag}: {e}")))
}

fn graph_arg(flag: &str, value: &str) -> CliResult<Graph> {
    let mut gs = graphs_arg(flag, value)?;
    match gs.len() {
        1 => Ok(gs.remove(0)),
        m => usage(format!("--{flag}: expected one graph, got {m}")),
    }
}

fn need<T>(flag: &str, v: Option<T>) -> CliResult<T> {
    v.ok_or_else(|| CliError::Usage(format!("missing --{flag}")))
}

/// `3,4,5` or the inclusive range `3..8` (empty when reversed).
fn parse_range(flag: &str, s: &str) -> CliResult<Vec<usize>> {
    let num = |x: &str| {
        x.trim()
            .parse::<usize>()
            .map_err(|_| CliError::Usage(format!("--{flag}: {x:?} is not a non-negative integer")))
    };
    if let Some((a, b)) = s.split_once("..") {
        return Ok((num(a)?..=num(b)?).collect());
    }
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(num).collect()
}

fn family_spec(kind: FamilyKind, p: FamilyArgs) -> CliResult<FamilySpec> {
    let spec = match kind {
        FamilyKind::Turan => FamilySpec::Turan {
            n: need("n", p.n)?,
            k: need("k", p.k)?,
        },
        FamilyKind::Blowup => FamilySpec::Blowup {
            base: graph_arg("base", &need("base", p.base)?)?,
            sizes: p.sizes,
        },
        FamilyKind::Furedi => FamilySpec::Furedi {
            q: need("q", p.q)?,
            t: need("t", p.t)?,
        },
        FamilyKind::CStar => FamilySpec::CStar {
            k: need("k", p.k)?,
            r: need("r", p.r)?,
        },
        FamilyKind::CDoubleStar => FamilySpec::CDoubleStar {
            k: need("k", p.k)?,
            r: need("r", p.r)?,
        },
        FamilyKind::Banana => FamilySpec::Banana {
            t: need("t", p.t)?,
            r: need("r", p.r)?,
        },
        FamilyKind::QGraph => FamilySpec::QGraph {
            k: need("k", p.k)?,
            r: need("r", p.r)?,
            t: need("t", p.t)?,
        },
        FamilyKind::RGraph => {
            let (a, b, c) = (need("a", p.a)?, need("b", p.b)?, need("c", p.c)?);
            let k = need("k", p.k)?;
            let d = match p.d {
                Some(d) => d,
                None => k.checked_sub(a + b + c).ok_or_else(|| {
                    CliError::Precondition(format!(
                        "precondition violated: a + b + c = {} exceeds k = {k}",
                        a + b + c
                    ))
                })?,
            };
            FamilySpec::RGraph {
                k,
                r: need("r", p.r)?,
                p: RParams { a, b, c, d },
            }
        }
    };
    validate_family(&spec)?;
    Ok(spec)
}

/// Parameter checks that do not build the graph.
fn validate_family(spec: &FamilySpec) -> CliResult<()> {
    let bad = |m: String| Err(CliError::Precondition(format!("precondition violated: {m}")));
    match spec {
        FamilySpec::Furedi { q, t } => {
            if crate::field::prime_power(*q).is_none() {
                return bad(format!("q = {q} is not a prime power"));
            }
            if *t < 2 || (q - 1) % (t - 1) != 0 {
                return bad(format!("t - 1 must divide q - 1 (q = {q}, t = {t})"));
            }
            crate::field::Field::new(*q)?;
        }
        FamilySpec::RGraph { k, p, .. } if p.k() != *k => return bad(format!("a + b + c + d must equal k = {k}")),
        _ => {}
    }
    Ok(())
}

fn berge_patterns(forbid: &[String], c2: bool) -> CliResult<Vec<BergePattern>> {
    let mut out = Vec::new();
    if c2 {
        out.push(BergePattern::DoubleEdge);
    }
    for f in forbid {
        out.extend(graphs_arg("forbid", f)?.into_iter().map(BergePattern::Graph));
    }
    Ok(out)
}

fn forbidden_list(forbid: &[String]) -> CliResult<Vec<Graph>> {
    let mut out = Vec::new();
    for f in forbid {
        out.extend(graphs_arg("forbid", f)?);
    }
    Ok(out)
}

fn default_format(c: &Command) -> Format {
    match c {
        Command::Construct(_) | Command::BergeToGraph { .. } => Format::Graph6,
        Command::Classify { .. } | Command::BergeDetect { .. } | Command::BergeFromCliques { .. } => Format::Text,
        _ => Format::Csv,
    }
}

fn allowed_formats(c: &Command) -> &'static [Format] {
    match c {
        Command::Construct(_) | Command::BergeToGraph { .. } => {
            &[Format::Graph6, Format::Dot, Format::Text, Format::Csv]
        }
        Command::Classify { .. } | Command::BergeDetect { .. } => &[Format::Text, Format::Csv],
        Command::BergeFromCliques { .. } => &[Format::Text],
        Command::Extremal { .. } => &[Format::Csv, Format::Graph6, Format::Text],
        _ => &[Format::Csv, Format::Text],
    }
}

/// Parses and validates a full argument vector (program name first).
pub fn parse_args<I, S>(argv: I) -> CliResult<RunConfig>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => CliError::Info(e.to_string()),
        _ => CliError::Usage(e.render().to_string()),
    })?;
    let command = match cli.command {
        RawCommand::Construct { family, p } => Command::Construct(family_spec(family, p)?),
        RawCommand::Count { graph, pattern, k, h } => {
            let graph = graph_arg("graph", &graph)?;
            let h = h.map(|h| graph_arg("h", &h)).transpose()?;
            match pattern {
                PatternKind::Graph if h.is_none() => return usage("--pattern graph needs --h"),
                PatternKind::Path | PatternKind::Cycle | PatternKind::Clique if k.is_none() => {
                    return usage("missing --k")
                }
                _ => {}
            }
            Command::Count { graph, pattern, k, h }
        }
        RawCommand::Bound {
            formula,
            graph,
            n,
            e,
            t,
            k,
            q,
            id,
        } => Command::Bound {
            formula,
            graph: graph.map(|g| graph_arg("graph", &g)).transpose()?,
            n,
            e,
            t,
            k,
            q,
            id: id.map(|s| s.parse::<Predictor>()).transpose()?,
        },
        RawCommand::Extremal {
            n,
            h,
            forbid,
            method,
            iterations,
            c,
            ledger,
        } => Command::Extremal {
            n,
            h: graph_arg("h", &h)?,
            forbid: forbidden_list(&forbid)?,
            method,
            iterations,
            c,
            ledger,
        },
        RawCommand::Classify { k, f } => {
            if k < 4 {
                return Err(CliError::Precondition(format!(
                    "precondition violated: k must be at least 4, got {k}"
                )));
            }
            Command::Classify {
                k,
                f: graph_arg("f", &f)?,
            }
        }
        RawCommand::Berge { verb } => match verb {
            RawBerge::Detect { hyper, f, forbid_c2 } => {
                let pattern = match (f, forbid_c2) {
                    (Some(f), false) => BergePattern::Graph(graph_arg("f", &f)?),
                    (None, true) => BergePattern::DoubleEdge,
                    _ => return usage("give exactly one of --f and --forbid-c2"),
                };
                Command::BergeDetect {
                    hyper: hypergraph_from_text(&read_text(&hyper)?)?,
                    pattern,
                }
            }
            RawBerge::ToGraph { hyper } => Command::BergeToGraph {
                hyper: hypergraph_from_text(&read_text(&hyper)?)?,
            },
            RawBerge::FromCliques { graph, r } => Command::BergeFromCliques {
                graph: graph_arg("graph", &graph)?,
                mode: r.map_or(CliqueMode::All, CliqueMode::Uniform),
            },
            RawBerge::Extremal {
                n,
                r,
                forbid,
                forbid_c2,
                ledger,
            } => Command::BergeExtremal {
                n,
                r,
                forbid: berge_patterns(&forbid, forbid_c2)?,
                ledger,
            },
            RawBerge::Sandwich { n, r, f } => Command::BergeSandwich {
                n,
                r,
                f: graph_arg("f", &f)?,
            },
        },
        RawCommand::Sweep { kind } => match kind {
            RawSweep::Furedi { q, t, k } => Command::SweepFuredi {
                qs: parse_range("q", &q)?,
                t,
                k,
            },
            RawSweep::Extremal { n, h, forbid } => Command::SweepExtremal {
                ns: parse_range("n", &n)?,
                h: graph_arg("h", &h)?,
                forbid: forbidden_list(&forbid)?,
            },
        },
    };
    let format = cli.common.format.unwrap_or_else(|| default_format(&command));
    if !allowed_formats(&command).contains(&format) {
        return usage(format!("--format {format} is not available for this command"));
    }
    if cli.common.workers == Some(0) {
        return usage("--workers must be at least 1");
    }
    Ok(RunConfig {
        command,
        seed: cli.common.seed,
        workers: cli.common.workers,
        out: cli.common.out,
        format,
        limit: cli.common.limit,
    })
}

struct Table {
    w: csv::Writer<Vec<u8>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(header).expect("in-memory write");
        Table { w }
    }

    fn row<I, T>(&mut self, fields: I)
    where
        I: IntoIterator<Item = T>,
        T: AsRef<[u8]>,
    {
        self.w.write_record(fields).expect("in-memory write");
    }

    fn finish(self) -> String {
        String::from_utf8(self.w.into_inner().expect("in-memory flush")).expect("CSV of UTF-8 fields")
    }
}

/// `a/b` as a decimal with six places, or empty when `b` is zero.
fn ratio(a: &BigUint, b: &BigUint) -> String {
    if b.is_zero() {
        return String::new();
    }
    let scaled = a * BigUint::from(1_000_000u32) / b;
    let s = scaled.to_f64().unwrap_or(f64::NAN) / 1e6;
    format!("{s:.6}")
}

fn forbidden_string(fs: &[Graph]) -> String {
    fs.iter().map(to_graph6).collect::<Vec<_>>().join(" ")
}

fn graph_output(g: &Graph, name: &str, format: Format) -> String {
    match format {
        Format::Dot => to_dot(g, name),
        Format::Text => {
            let mut s = format!("{} {}\n", g.order(), g.edge_count());
            for (u, v) in g.edges() {
                s.push_str(&format!("{u} {v}\n"));
            }
            s
        }
        Format::Csv => {
            let mut t = Table::new(&["family", "n", "edges", "graph6"]);
            t.row([
                name.to_string(),
                g.order().to_string(),
                g.edge_count().to_string(),
                to_graph6(g),
            ]);
            t.finish()
        }
        Format::Graph6 => format!("{}\n", to_graph6(g)),
    }
}

fn bound_table(rows: &[(BoundReport, Option<BigUint>)]) -> String {
    let mut t = Table::new(&["formula", "inputs", "value", "exact_count", "ratio"]);
    for (b, exact) in rows {
        let (count, r) = match exact {
            Some(c) => (c.to_string(), ratio(c, &b.value)),
            None => (String::new(), String::new()),
        };
        t.row([
            b.formula.as_str().to_string(),
            b.inputs_string(),
            b.value.to_string(),
            count,
            r,
        ]);
    }
    t.finish()
}

fn text_table(csv: &str) -> String {
    let mut lines = csv.lines();
    let Some(header) = lines.next() else {
        return String::new();
    };
    let names: Vec<&str> = header.split(',').collect();
    let mut out = String::new();
    for line in lines {
        let mut r = csv::ReaderBuilder::new()
            .has_headers(false)
            .from_reader(line.as_bytes());
        if let Some(Ok(rec)) = r.records().next() {
            for (name, v) in names.iter().zip(rec.iter()) {
                out.push_str(&format!("{name}={v}\n"));
            }
            out.push('\n');
        }
    }
    out
}

fn in_format(csv: String, format: Format) -> String {
    match format {
        Format::Text => text_table(&csv),
        _ => csv,
    }
}

fn run_count(graph: &Graph, pattern: PatternKind, k: Option<usize>, h: &Option<Graph>) -> CliResult<String> {
    let (name, value, k) = match pattern {
        PatternKind::Path => ("paths", count_paths(graph, k.unwrap())?.value, k),
        PatternKind::Cycle => ("cycles", count_cycles(graph, k.unwrap())?.value, k),
        PatternKind::Clique => ("cliques", count_cliques(graph, k.unwrap())?.value, k),
        PatternKind::Graph => ("copies", count_copies(h.as_ref().unwrap(), graph).value, None),
    };
    let mut inputs = format!("n={};e={}", graph.order(), graph.edge_count());
    if let Some(k) = k {
        inputs.push_str(&format!(";k={k}"));
    }
    if let Some(h) = h {
        inputs.push_str(&format!(";h={}", to_graph6(h)));
    }
    let mut t = Table::new(&["formula", "inputs", "value", "exact_count", "ratio"]);
    t.row([
        name.to_string(),
        inputs,
        value.to_string(),
        value.to_string(),
        String::new(),
    ]);
    Ok(t.finish())
}

#[allow(clippy::too_many_arguments)]
fn run_bound(
    formula: BoundKind,
    graph: &Option<Graph>,
    n: Option<u64>,
    e: Option<u64>,
    t: Option<u64>,
    k: Option<u32>,
    q: Option<u64>,
    id: Option<Predictor>,
) -> CliResult<String> {
    let n = n.or(graph.as_ref().map(|g| g.order() as u64));
    let e = e.or(graph.as_ref().map(|g| g.edge_count() as u64));
    let rows = match formula {
        BoundKind::Cycle => {
            let k = need("k", k)?;
            let b = certified_cycle_bound(need("n", n)?, need("e", e)?, need("t", t)?, k)?;
            let exact = graph
                .as_ref()
                .map(|g| count_cycles(g, k as usize).map(|c| c.value))
                .transpose()?;
            vec![(b, exact)]
        }
        BoundKind::Path => {
            let k = need("k", k)?;
            let b = certified_path_bound(need("n", n)?, need("e", e)?, need("t", t)?, k)?;
            let exact = graph
                .as_ref()
                .map(|g| count_paths(g, k as usize).map(|c| c.value))
                .transpose()?;
            vec![(b, exact)]
        }
        BoundKind::C4 => {
            let b = certified_c4_bound(need("n", n)?, need("t", t)?)?;
            let exact = graph
                .as_ref()
                .map(|g| count_cycles(g, 4).map(|c| c.value))
                .transpose()?;
            vec![(b, exact)]
        }
        BoundKind::Greedy => {
            let (q, t, k) = (need("q", q)?, need("t", t)?, need("k", k)?);
            let (path, cycle) = greedy_lower_certificates(q, t, k)?;
            let host = graph.as_ref();
            let mut rows = vec![(
                path,
                host.map(|g| count_paths(g, k as usize).map(|c| c.value)).transpose()?,
            )];
            if let Some(c) = cycle {
                rows.push((
                    c,
                    host.map(|g| count_cycles(g, k as usize).map(|c| c.value)).transpose()?,
                ));
            }
            rows
        }
        BoundKind::Predict => {
            let which = need("id", id)?;
            let p = asymptotic_predictor(which, need("n", n)?, need("t", t)?, need("k", k)?)?;
            let mut tb = Table::new(&["formula", "inputs", "value", "exact_count", "ratio"]);
            tb.row([
                "asymptotic".to_string(),
                format!("id={which:?};n={};t={};k={}", n.unwrap(), t.unwrap(), k.unwrap()).to_lowercase(),
                p.to_string(),
                String::new(),
                String::new(),
            ]);
            return Ok(tb.finish());
        }
    };
    Ok(bound_table(&rows))
}

const EXTREMAL_HEADER: [&str; 7] = ["n", "h", "forbidden", "value", "method", "witness", "seed"];

fn extremal_fields(r: &ExtremalRecord) -> [String; 7] {
    [
        r.n.to_string(),
        to_graph6(&r.pattern),
        forbidden_string(&r.forbidden),
        r.value.to_string(),
        r.method.to_string(),
        to_graph6(&r.witness),
        r.seed.map(|s| s.to_string()).unwrap_or_default(),
    ]
}

/// Appends one row to a CSV ledger, writing the header when the file is new.
fn append_ledger(path: &Path, header: &[&str], fields: &[String]) -> CliResult<()> {
    let fresh = std::fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
    let file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| CliError::Io(format!("cannot open ledger {}: {e}", path.display())))?;
    let mut w = csv::Writer::from_writer(file);
    let io = |e: csv::Error| CliError::Io(format!("ledger write failed: {e}"));
    if fresh {
        w.write_record(header).map_err(io)?;
    }
    w.write_record(fields).map_err(io)?;
    w.flush().map_err(|e| CliError::Io(e.to_string()))
}

fn hyperedges_string(h: &Hypergraph) -> String {
    h.edges()
        .iter()
        .map(|e| e.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("|")
}

fn classify_output(v: &LinearityVerdict, format: Format) -> String {
    let map_str = |m: &[usize]| m.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let (host, r, embedding, r0) = match &v.certificate {
        Certificate::Containment { host, embedding, .. } => {
            let r = match host {
                FamilySpec::CStar { r, .. } | FamilySpec::CDoubleStar { r, .. } => *r,
                _ => 0,
            };
            (host.to_string(), r.to_string(), map_str(embedding), v.r0_star)
        }
        Certificate::Forest { r, embeddings } => {
            let maps: Vec<String> = embeddings.iter().map(|(p, m)| format!("{p}:{}", map_str(m))).collect();
            (
                format!("fkr-forest(k={},r={r})", v.k),
                r.to_string(),
                maps.join("|"),
                v.r0_forest,
            )
        }
        Certificate::Family { family, .. } => {
            let r = match family {
                FamilySpec::RGraph { r, .. } => r.to_string(),
                _ => String::new(),
            };
            (family.to_string(), r, String::new(), v.r0_forest)
        }
    };
    if format == Format::Csv {
        let mut t = Table::new(&["k", "f", "verdict", "r0", "host", "r", "embedding"]);
        t.row([
            v.k.to_string(),
            to_graph6(&v.f),
            v.verdict.to_string(),
            r0.to_string(),
            host,
            r,
            embedding,
        ]);
        return t.finish();
    }
    let mut s = format!("k {}\nf {}\nverdict {}\nr0 {r0}\n", v.k, to_graph6(&v.f), v.verdict);
    match &v.certificate {
        Certificate::Containment { host, embedding, .. } => {
            s.push_str(&format!("host {host}\nembedding {}\n", map_str(embedding)));
        }
        Certificate::Forest { r, embeddings } => {
            s.push_str(&format!("host fkr-forest\nr {r}\n"));
            for (p, m) in embeddings {
                s.push_str(&format!("embedding r_graph{p} {}\n", map_str(m)));
            }
        }
        Certificate::Family { family, member, growth } => {
            s.push_str(&format!(
                "family {family}\nmember {}\nfree {}\ngrowth n1={} n2={} c1={} c2={} passed={}\n",
                to_graph6(member),
                crate::embed::is_free(member, &v.f),
                growth.n1,
                growth.n2,
                growth.count1,
                growth.count2,
                growth.passes()
            ));
        }
    }
    s.push_str(&format!("verified {}\n", v.verify()));
    s
}

/// Executes a command and returns its output. Extremal ledgers are written
/// as a side effect.
pub fn execute(cfg: &RunConfig) -> CliResult<String> {
    match cfg.workers {
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| CliError::Io(e.to_string()))?;
            pool.install(|| dispatch(cfg))
        }
        None => dispatch(cfg),
    }
}

fn dispatch(cfg: &RunConfig) -> CliResult<String> {
    let format = cfg.format;
    match &cfg.command {
        Command::Construct(spec) => {
            let g = spec.build()?;
            Ok(graph_output(&g, &spec.to_string(), format))
        }
        Command::Count { graph, pattern, k, h } => Ok(in_format(run_count(graph, *pattern, *k, h)?, format)),
        Command::Bound {
            formula,
            graph,
            n,
            e,
            t,
            k,
            q,
            id,
        } => Ok(in_format(run_bound(*formula, graph, *n, *e, *t, *k, *q, *id)?, format)),
        Command::Extremal {
            n,
            h,
            forbid,
            method,
            iterations,
            c,
            ledger,
        } => {
            let start = Instant::now();
            let rec = match method {
                MethodKind::Exact => exact_extremal(*n, h, forbid, cfg.limit)?,
                MethodKind::Heuristic => heuristic_lower(*n, h, forbid, cfg.seed, *iterations)?,
                MethodKind::Random => {
                    let [f] = forbid.as_slice() else {
                        return usage("--method random takes exactly one --forbid");
                    };
                    let c = c.unwrap_or_else(|| RandomConstructionParams::reference_c(h, f));
                    random_deletion_lower(&RandomConstructionParams {
                        n: *n,
                        h: h.clone(),
                        f: f.clone(),
                        c,
                        seed: cfg.seed,
                    })?
                }
            };
            let fields = extremal_fields(&rec);
            if let Some(path) = ledger {
                let mut row = fields.to_vec();
                row.push(start.elapsed().as_millis().to_string());
                let mut header = EXTREMAL_HEADER.to_vec();
                header.push("wall_time_ms");
                append_ledger(path, &header, &row)?;
            }
            Ok(match format {
                Format::Graph6 => format!("{}\n", to_graph6(&rec.witness)),
                _ => {
                    let mut t = Table::new(&EXTREMAL_HEADER);
                    t.row(fields);
                    in_format(t.finish(), format)
                }
            })
        }
        Command::Classify { k, f } => Ok(classify_output(&classify_linearity(*k, f)?, format)),
        Command::BergeDetect { hyper, pattern } => {
            let w = contains_berge_pattern(hyper, pattern);
            let core = w
                .as_ref()
                .map(|w| w.core.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
            let edges = w
                .as_ref()
                .map(|w| w.assignment.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
            if format == Format::Csv {
                let mut t = Table::new(&["pattern", "found", "core", "hyperedges"]);
                t.row([
                    pattern.to_string(),
                    w.is_some().to_string(),
                    core.unwrap_or_default(),
                    edges.unwrap_or_default(),
                ]);
                return Ok(t.finish());
            }
            Ok(match w {
                Some(_) => format!(
                    "found {pattern}\ncore {}\nhyperedges {}\n",
                    core.unwrap(),
                    edges.unwrap()
                ),
                None => format!("absent {pattern}\n"),
            })
        }
        Command::BergeToGraph { hyper } => {
            let out = hypergraph_to_graph(hyper);
            let mut s = graph_output(&out.graph, "greedy", format);
            if format == Format::Text {
                for (e, a) in hyper.edges().iter().zip(&out.assignment) {
                    let lhs = e.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
                    match a {
                        Assignment::Edge(u, v) => s.push_str(&format!("# {lhs} -> {u} {v}\n")),
                        Assignment::Clique => s.push_str(&format!("# {lhs} -> clique\n")),
                    }
                }
            }
            Ok(s)
        }
        Command::BergeFromCliques { graph, mode } => Ok(hypergraph_to_text(&cliques_to_hypergraph(graph, *mode)?)),
        Command::BergeExtremal { n, r, forbid, ledger } => {
            let start = Instant::now();
            let rec = exact_berge_extremal(*n, *r, forbid)?;
            let forb = forbid.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ");
            let fields = [
                n.to_string(),
                r.to_string(),
                forb.clone(),
                rec.value.to_string(),
                hyperedges_string(&rec.witness),
            ];
            if let Some(path) = ledger {
                let row = vec![
                    n.to_string(),
                    format!("berge-r{r}"),
                    forb,
                    rec.value.to_string(),
                    "exact".to_string(),
                    hyperedges_string(&rec.witness),
                    String::new(),
                    start.elapsed().as_millis().to_string(),
                ];
                let mut header = EXTREMAL_HEADER.to_vec();
                header.push("wall_time_ms");
                append_ledger(path, &header, &row)?;
            }
            let mut t = Table::new(&["n", "r", "forbidden", "value", "witness"]);
            t.row(fields);
            Ok(in_format(t.finish(), format))
        }
        Command::BergeSandwich { n, r, f } => {
            let rep = berge_sandwich_check(*n, *r, f)?;
            let mut t = Table::new(&[
                "n",
                "r",
                "f",
                "ex_clique",
                "ex_berge",
                "ex_edges",
                "lower_holds",
                "upper_holds",
            ]);
            t.row([
                n.to_string(),
                r.to_string(),
                to_graph6(f),
                rep.ex_clique.to_string(),
                rep.ex_berge.to_string(),
                rep.ex_edges.to_string(),
                rep.lower_holds().to_string(),
                rep.upper_holds().to_string(),
            ]);
            Ok(in_format(t.finish(), format))
        }
        Command::SweepFuredi { .. } | Command::SweepExtremal { .. } => Ok(in_format(run_sweep(cfg)?, format)),
    }
}

/// CSV table for a sweep command; points that cannot be computed get a
/// reason in the `skipped` column and empty value columns.
pub fn run_sweep(cfg: &RunConfig) -> CliResult<String> {
    match &cfg.command {
        Command::SweepFuredi { qs, t, k } => {
            let mut tb = Table::new(&[
                "q",
                "t",
                "k",
                "n",
                "e",
                "cycles",
                "cycle_bound",
                "cycle_ratio",
                "greedy_cycle",
                "paths",
                "path_bound",
                "path_ratio",
                "greedy_path",
                "predicted_cycles",
                "skipped",
            ]);
            for &q in qs {
                let head = [q.to_string(), t.to_string(), k.to_string()];
                match sweep_furedi_point(q, *t, *k) {
                    Ok(cols) => tb.row(head.into_iter().chain(cols).chain([String::new()])),
                    Err(reason) => tb.row(head.into_iter().chain(vec![String::new(); 11]).chain([reason])),
                }
            }
            Ok(tb.finish())
        }
        Command::SweepExtremal { ns, h, forbid } => {
            let mut tb = Table::new(&["n", "h", "forbidden", "value", "witness", "skipped"]);
            for &n in ns {
                let head = [n.to_string(), to_graph6(h), forbidden_string(forbid)];
                match exact_extremal(n, h, forbid, cfg.limit) {
                    Ok(rec) => {
                        tb.row(
                            head.into_iter()
                                .chain([rec.value.to_string(), to_graph6(&rec.witness), String::new()]),
                        )
                    }
                    Err(e @ (Error::LimitExceeded { .. } | Error::Precondition(_))) => {
                        tb.row(head.into_iter().chain([String::new(), String::new(), e.to_string()]))
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            Ok(tb.finish())
        }
        _ => usage("not a sweep command"),
    }
}

fn sweep_furedi_point(q: usize, t: usize, k: usize) -> std::result::Result<Vec<String>, String> {
    let g = crate::constructions::furedi_graph(q, t).map_err(|e| e.to_string())?;
    let (n, e) = (g.order() as u64, g.edge_count() as u64);
    let kk = k as u32;
    let opt = |r: crate::error::Result<BoundReport>| r.ok().map(|b| b.value);
    let cycles = count_cycles(&g, k).map_err(|e| e.to_string())?.value;
    let paths = count_paths(&g, k).map_err(|e| e.to_string())?.value;
    let cycle_bound = opt(certified_cycle_bound(n, e, t as u64, kk));
    let path_bound = opt(certified_path_bound(n, e, t as u64, kk));
    let greedy = greedy_lower_certificates(q as u64, t as u64, kk).ok();
    let show = |x: &Option<BigUint>| x.as_ref().map(|v| v.to_string()).unwrap_or_default();
    let rat = |c: &BigUint, b: &Option<BigUint>| b.as_ref().map(|b| ratio(c, b)).unwrap_or_default();
    let greedy_cycle = greedy.as_ref().and_then(|g| g.1.as_ref().map(|b| b.value.clone()));
    let greedy_path = greedy.as_ref().map(|g| g.0.value.clone());
    let predicted = asymptotic_predictor(Predictor::Cycle, n, t as u64, kk)
        .map(|p| format!("{:.3}", p.to_f64()))
        .unwrap_or_default();
    Ok(vec![
        n.to_string(),
        e.to_string(),
        cycles.to_string(),
        show(&cycle_bound),
        rat(&cycles, &cycle_bound),
        show(&greedy_cycle),
        paths.to_string(),
        show(&path_bound),
        rat(&paths, &path_bound),
        show(&greedy_path),
        predicted,
    ])
}

/// Entry point used by the binary: parse, run, write. Returns the exit code.
pub fn main_with_args<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cfg = match parse_args(argv) {
        Ok(c) => c,
        Err(CliError::Info(msg)) => {
            print!("{msg}");
            return 0;
        }
        Err(e) => {
            eprintln!("{e}");
            return e.exit_code();
        }
    };
    let out = match execute(&cfg) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            return e.exit_code();
        }
    };
    let written = match &cfg.out {
        Some(path) => std::fs::write(path, out.as_bytes()),
        None => std::io::stdout().write_all(out.as_bytes()),
    };
    match written {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("cannot write output: {e}");
            1
        }
    }
}
