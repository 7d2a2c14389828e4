//! `ferrers-lab`: spanning trees, spectra, resistance and exhaustive searches
//! for bipartite graphs.

mod output;

use clap::{Args, Parser, Subcommand};
use ferrers_core::conjectures::{check_all, check_bound, BoundReport, BoundValue, BOUND_NAMES};
use ferrers_core::graphs::io::{parse_graph, write_bipartite, GraphFile};
use ferrers_core::graphs::{ferrers_from_partition, ferrers_invariant, ferrers_partition, is_ferrers, staircase_order};
use ferrers_core::report::{rational_string, round12, ser_bigint, ser_rational};
use ferrers_core::resistance::{resistance, theorem71_check, theorem71_scan};
use ferrers_core::search::{
    degree_class_max, spectral_search_in, verify_ferrers_bound, Budget, ClassSpec, GraphRecord, SearchOptions,
    SearchReport, MAX_GENERAL_VERTICES,
};
use ferrers_core::spectral::spectrum_report;
use ferrers_core::trees::{enumerate_spanning_trees, sigma_bruteforce, sigma_formula, tau, term_list};
use ferrers_core::{BigInt, BigRational, BipartiteGraph, Error, Graph, Partition};
use output::{render, write_out, Format, Table};
use serde::Serialize;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_COUNTEREXAMPLE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

/// Graph files: a header `bipartite M N` or `general N`, then one edge per
/// line as two 1-based indices (`i j` or `e i j`); `#` starts a comment.
/// Vertices of a bipartite file are numbered 1..M for the first part and
/// M+1..M+N for the second wherever a single vertex index is expected.
#[derive(Parser, Debug)]
#[command(name = "ferrers-lab", version, about, long_about = None)]
struct Cli {
    /// Worker threads for parallel searches (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Output file; `-` or absent means standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Budget overrides, e.g. `vertices=12,pq=30,candidates=1000000,trees=5000`.
    #[arg(long, global = true, env = "FERRERS_LAB_BUDGET")]
    budget: Option<String>,
    /// Include wall time in search reports (makes output nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GraphArg {
    /// Graph file, or `-` for standard input.
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Args, Debug)]
struct EmitArg {
    /// Write every extremal graph and counterexample into this directory.
    #[arg(long)]
    emit_graphs: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the Ferrers graph of a partition, or a complete bipartite graph.
    Gen {
        #[arg(long, conflicts_with = "complete", required_unless_present = "complete")]
        partition: Option<Partition>,
        /// Column count; defaults to the largest part.
        #[arg(long, requires = "partition")]
        cols: Option<usize>,
        /// Part sizes `M,N` of a complete bipartite graph.
        #[arg(long, value_parser = parse_pair)]
        complete: Option<(usize, usize)>,
    },
    /// Spanning-tree count, Ferrers invariant and optional tree listings.
    Trees {
        #[command(flatten)]
        graph: GraphArg,
        /// List every spanning tree.
        #[arg(long)]
        enumerate: bool,
        /// Weighted spanning-tree polynomial (bipartite graphs).
        #[arg(long)]
        sigma: bool,
    },
    /// Adjacency, Laplacian and normalized Laplacian spectra with bound checks.
    Spectral {
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Exact resistance distance for one pair, or all pairs.
    Resistance {
        #[command(flatten)]
        graph: GraphArg,
        /// 1-based vertex pair `i,j`.
        #[arg(long, value_parser = parse_pair)]
        pair: Option<(usize, usize)>,
    },
    /// The eleven edge-deletion conditions for two disjoint edges.
    Thm71 {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, value_parser = parse_pair)]
        e: (usize, usize),
        #[arg(long, value_parser = parse_pair)]
        f: (usize, usize),
    },
    /// The eleven conditions over every connected graph up to `max-n` vertices.
    Thm71Scan {
        #[arg(long, default_value_t = 7)]
        max_n: usize,
    },
    /// Spanning-tree bounds and majorization checks for one bipartite graph.
    Check {
        #[command(flatten)]
        graph: GraphArg,
        /// Run every check.
        #[arg(long, conflicts_with = "bound")]
        all: bool,
        /// One of bozkurt, venkataramana, grone-merris, hermitian, eq3, conjecture65.
        #[arg(long)]
        bound: Option<String>,
    },
    /// Check tau(G) <= F(G) on every connected bipartite graph up to N vertices.
    VerifyFerrersBound {
        #[arg(long)]
        max_vertices: usize,
        #[command(flatten)]
        emit: EmitArg,
    },
    /// Spectral-radius maximizers over subgraphs of K(p,q) with e edges.
    SpectralSearch {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        e: usize,
        /// Only connected graphs.
        #[arg(long)]
        connected: bool,
        #[command(flatten)]
        emit: EmitArg,
    },
    /// Spectral-radius maximizers over graphs whose first part has degrees D.
    DegreeClass {
        #[arg(long = "D", value_name = "D")]
        degrees: Partition,
        #[command(flatten)]
        emit: EmitArg,
    },
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `i,j`, got {s:?}"))?;
    let a = a.trim().parse().map_err(|_| format!("bad number in {s:?}"))?;
    let b = b.trim().parse().map_err(|_| format!("bad number in {s:?}"))?;
    Ok((a, b))
}

/// Failure of a run, carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            Error::Inconsistent(_) => EXIT_COUNTEREXAMPLE,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

/// A rendered report and whether it records a counterexample.
struct Outcome {
    text: String,
    counterexample: bool,
}

struct Ctx {
    format: Format,
    options: SearchOptions,
}

impl Ctx {
    fn emit<T: Serialize>(&self, command: &str, body: &T, table: Table, counterexample: bool) -> Result<Outcome, Failure> {
        Ok(Outcome {
            text: render(command, body, table, self.format).map_err(usage)?,
            counterexample,
        })
    }
}

fn read_graph(path: &Path) -> Result<GraphFile, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| usage(format!("reading standard input: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?
    };
    parse_graph(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn vertex(label: usize, g: &Graph) -> Result<usize, Failure> {
    if label == 0 || label > g.vertex_count() {
        return Err(usage(format!(
            "vertex {label} out of range 1..={}",
            g.vertex_count()
        )));
    }
    Ok(label - 1)
}

fn f12(x: f64) -> String {
    let x = round12(x);
    if x != 0.0 && x.abs() < 1e-6 {
        format!("{x:e}")
    } else {
        x.to_string()
    }
}

fn edge_list(edges: &[(usize, usize)]) -> Vec<[usize; 2]> {
    edges.iter().map(|&(a, b)| [a + 1, b + 1]).collect()
}

fn cmd_gen(partition: Option<Partition>, cols: Option<usize>, complete: Option<(usize, usize)>) -> Result<Outcome, Failure> {
    let g = match (partition, complete) {
        (Some(p), _) => {
            let cols = cols.unwrap_or(p.largest().unwrap_or(0) as usize);
            ferrers_from_partition(&p, cols)?
        }
        (None, Some((m, n))) => BipartiteGraph::complete(m, n)?,
        (None, None) => return Err(usage("give --partition or --complete")),
    };
    Ok(Outcome {
        text: write_bipartite(&g),
        counterexample: false,
    })
}

#[derive(Serialize)]
struct SigmaReport {
    /// Vertex labels in variable order: first part, then second part.
    variable_order: Vec<usize>,
    terms: Vec<SigmaTerm>,
    #[serde(skip_serializing_if = "Option::is_none")]
    formula_matches: Option<bool>,
}

#[derive(Serialize)]
struct SigmaTerm {
    exponents: Vec<u32>,
    coefficient: String,
}

#[derive(Serialize)]
struct TreesReport {
    vertices: usize,
    edges: usize,
    #[serde(serialize_with = "ser_bigint")]
    tau: BigInt,
    #[serde(skip_serializing_if = "Option::is_none")]
    bipartite: Option<BipartiteTrees>,
    #[serde(skip_serializing_if = "Option::is_none")]
    spanning_trees: Option<Vec<Vec<[usize; 2]>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sigma: Option<SigmaReport>,
}

#[derive(Serialize)]
struct BipartiteTrees {
    #[serde(serialize_with = "ser_rational")]
    ferrers_invariant: BigRational,
    ferrers_good: bool,
    tight: bool,
    is_ferrers: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    partition: Option<Partition>,
}

fn sigma_report(b: &BipartiteGraph, budget: u64) -> Result<SigmaReport, Failure> {
    let m = b.m();
    if let Some(lambda) = ferrers_partition(b).filter(|_| b.is_connected()) {
        let (rows, cols) = staircase_order(b);
        let stair = b.permuted(&rows, &cols);
        let brute = sigma_bruteforce(&stair, budget)?;
        let formula = sigma_formula(&lambda, &lambda.conjugate())?;
        let order = rows.iter().map(|&i| i + 1).chain(cols.iter().map(|&j| m + j + 1)).collect();
        return Ok(SigmaReport {
            variable_order: order,
            terms: terms(&brute),
            formula_matches: Some(brute == formula),
        });
    }
    let brute = sigma_bruteforce(b, budget)?;
    Ok(SigmaReport {
        variable_order: (1..=b.vertex_count()).collect(),
        terms: terms(&brute),
        formula_matches: None,
    })
}

fn terms(p: &ferrers_core::IntPoly) -> Vec<SigmaTerm> {
    term_list(p)
        .into_iter()
        .map(|(exponents, coefficient)| SigmaTerm { exponents, coefficient })
        .collect()
}

fn cmd_trees(ctx: &Ctx, file: &GraphFile, enumerate: bool, sigma: bool) -> Result<Outcome, Failure> {
    let g = file.to_graph();
    let t = tau(&g)?;
    let bip = file.to_bipartite().ok();
    let bipartite = bip.as_ref().map(|b| {
        let f = ferrers_invariant(b);
        let t = BigRational::from_integer(t.clone());
        BipartiteTrees {
            ferrers_good: t <= f,
            tight: t == f,
            is_ferrers: is_ferrers(b),
            partition: ferrers_partition(b),
            ferrers_invariant: f,
        }
    });
    let spanning_trees = if enumerate {
        let edges = g.edges();
        let trees = enumerate_spanning_trees(&g, ctx.options.budget.trees)?;
        Some(
            trees
                .iter()
                .map(|tree| edge_list(&tree.iter().map(|&k| edges[k]).collect::<Vec<_>>()))
                .collect(),
        )
    } else {
        None
    };
    let sigma = match (sigma, &bip) {
        (false, _) => None,
        (true, Some(b)) => Some(sigma_report(b, ctx.options.budget.trees)?),
        (true, None) => return Err(usage("--sigma needs a bipartite graph")),
    };
    let mut table = Table::new(vec!["vertices", "edges", "tau", "ferrers_invariant", "ferrers_good", "is_ferrers"]);
    table.push(vec![
        g.vertex_count().to_string(),
        g.edge_count().to_string(),
        t.to_string(),
        bipartite.as_ref().map(|b| rational_string(&b.ferrers_invariant)).unwrap_or_default(),
        bipartite.as_ref().map(|b| b.ferrers_good.to_string()).unwrap_or_default(),
        bipartite.as_ref().map(|b| b.is_ferrers.to_string()).unwrap_or_default(),
    ]);
    let report = TreesReport {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        tau: t,
        bipartite,
        spanning_trees,
        sigma,
    };
    ctx.emit("trees", &report, table, false)
}

fn cmd_spectral(ctx: &Ctx, file: &GraphFile) -> Result<Outcome, Failure> {
    let b = file.to_bipartite()?;
    let report = spectrum_report(&b);
    let mut table = Table::new(vec!["index", "laplacian", "normalized"]);
    for k in 0..report.laplacian_spectrum.len() {
        table.push(vec![
            (k + 1).to_string(),
            f12(report.laplacian_spectrum[k]),
            report.normalized_spectrum.get(k).map(|&x| f12(x)).unwrap_or_default(),
        ]);
    }
    ctx.emit("spectral", &report, table, !report.sqrt_edge_bound.holds)
}

#[derive(Serialize)]
struct ResistanceEntry {
    i: usize,
    j: usize,
    #[serde(serialize_with = "ser_rational")]
    resistance: BigRational,
    #[serde(serialize_with = "ferrers_core::report::ser_f64")]
    approx: f64,
}

#[derive(Serialize)]
struct ResistanceReport {
    pairs: Vec<ResistanceEntry>,
}

fn cmd_resistance(ctx: &Ctx, file: &GraphFile, pair: Option<(usize, usize)>) -> Result<Outcome, Failure> {
    use num_traits::ToPrimitive;
    let g = file.to_graph();
    let pairs: Vec<(usize, usize)> = match pair {
        Some((a, b)) => vec![(vertex(a, &g)?, vertex(b, &g)?)],
        None => (0..g.vertex_count())
            .flat_map(|a| (a + 1..g.vertex_count()).map(move |b| (a, b)))
            .collect(),
    };
    let mut entries = Vec::new();
    let mut table = Table::new(vec!["i", "j", "resistance", "approx"]);
    for (a, b) in pairs {
        let r = resistance(&g, a, b)?;
        let approx = r.to_f64().unwrap_or(f64::NAN);
        table.push(vec![(a + 1).to_string(), (b + 1).to_string(), rational_string(&r), f12(approx)]);
        entries.push(ResistanceEntry {
            i: a + 1,
            j: b + 1,
            resistance: r,
            approx,
        });
    }
    ctx.emit("resistance", &ResistanceReport { pairs: entries }, table, false)
}

fn cmd_thm71(ctx: &Ctx, file: &GraphFile, e: (usize, usize), f: (usize, usize)) -> Result<Outcome, Failure> {
    let g = file.to_graph();
    let e = (vertex(e.0, &g)?, vertex(e.1, &g)?);
    let f = (vertex(f.0, &g)?, vertex(f.1, &g)?);
    let report = theorem71_check(&g, e, f)?;
    let mut table = Table::new(vec!["condition", "holds"]);
    for c in &report.conditions {
        table.push(vec![c.name.to_string(), c.holds.to_string()]);
    }
    let bad = !report.all_agree || !report.monotone;
    ctx.emit("thm71", &report, table, bad)
}

fn cmd_thm71_scan(ctx: &Ctx, max_n: usize) -> Result<Outcome, Failure> {
    if max_n > MAX_GENERAL_VERTICES {
        return Err(usage(format!("--max-n is limited to {MAX_GENERAL_VERTICES}")));
    }
    let scan = theorem71_scan(max_n)?;
    let mut table = Table::new(vec!["max_n", "graphs", "pairs", "all_true", "all_false", "failures"]);
    table.push(vec![
        scan.max_n.to_string(),
        scan.graphs.to_string(),
        scan.pairs.to_string(),
        scan.pairs_all_true.to_string(),
        scan.pairs_all_false.to_string(),
        scan.failures.len().to_string(),
    ]);
    ctx.emit("thm71-scan", &scan, table, !scan.passed())
}

#[derive(Serialize)]
struct CheckReport {
    reports: Vec<BoundReport>,
}

fn value_text(v: &BoundValue) -> String {
    match v {
        BoundValue::Exact(r) => rational_string(r),
        BoundValue::RationalTimesSqrt { coefficient, radicand } => {
            format!("{} * sqrt({})", rational_string(coefficient), rational_string(radicand))
        }
        BoundValue::Real(x) => f12(*x),
    }
}

fn cmd_check(ctx: &Ctx, file: &GraphFile, all: bool, bound: Option<String>) -> Result<Outcome, Failure> {
    let b = file.to_bipartite()?;
    let reports = match (all, bound) {
        (_, Some(name)) => vec![check_bound(&b, &name)?],
        (true, None) => check_all(&b),
        (false, None) => return Err(usage(format!("give --all or --bound ({})", BOUND_NAMES.join(", ")))),
    };
    let mut table = Table::new(vec!["name", "lhs", "rhs", "holds", "equality"]);
    for r in &reports {
        table.push(vec![
            r.name.to_string(),
            value_text(&r.lhs),
            value_text(&r.rhs),
            r.holds.map(|h| h.to_string()).unwrap_or_else(|| "hypotheses not met".into()),
            r.equality.to_string(),
        ]);
    }
    let violated = reports.iter().any(|r| r.holds == Some(false));
    ctx.emit("check", &CheckReport { reports }, table, violated)
}

fn search_table(report: &SearchReport) -> Table {
    let mut table = Table::new(vec![
        "role", "code", "m", "n", "is_ferrers", "partition", "lambda_max", "tau", "ferrers_invariant", "reason",
    ]);
    let rows = report
        .extremal
        .iter()
        .map(|r| ("extremal", r))
        .chain(report.counterexamples.iter().map(|r| ("counterexample", r)));
    for (role, r) in rows {
        table.push(vec![
            role.to_string(),
            r.code.to_string(),
            r.m.to_string(),
            r.n.to_string(),
            r.is_ferrers.to_string(),
            r.partition.as_ref().map(|p| p.to_string()).unwrap_or_default(),
            r.lambda_max.map(f12).unwrap_or_default(),
            r.tau.as_ref().map(|t| t.to_string()).unwrap_or_default(),
            r.ferrers_invariant.as_ref().map(rational_string).unwrap_or_default(),
            r.reason.clone().unwrap_or_default(),
        ]);
    }
    table
}

fn emit_graphs(dir: &Option<PathBuf>, report: &SearchReport) -> Result<(), Failure> {
    let Some(dir) = dir else { return Ok(()) };
    std::fs::create_dir_all(dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
    let write = |role: &str, r: &GraphRecord| {
        let path = dir.join(format!("{role}-{}.graph", r.code));
        std::fs::write(&path, write_bipartite(r.graph())).map_err(|e| usage(format!("{}: {e}", path.display())))
    };
    for r in &report.extremal {
        write("extremal", r)?;
    }
    for r in &report.counterexamples {
        write("counterexample", r)?;
    }
    Ok(())
}

fn search_outcome(ctx: &Ctx, command: &str, report: SearchReport, emit: &EmitArg) -> Result<Outcome, Failure> {
    emit_graphs(&emit.emit_graphs, &report)?;
    let table = search_table(&report);
    let bad = !report.verified();
    ctx.emit(command, &report, table, bad)
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    let budget = match &cli.budget {
        Some(s) => s.parse::<Budget>()?,
        None => Budget::default(),
    };
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(usage("--jobs must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| usage(e.to_string()))?;
    }
    let ctx = Ctx {
        format: cli.format,
        options: SearchOptions {
            budget,
            timing: cli.timing,
        },
    };
    match cli.command {
        Command::Gen {
            partition,
            cols,
            complete,
        } => cmd_gen(partition, cols, complete),
        Command::Trees {
            graph,
            enumerate,
            sigma,
        } => cmd_trees(&ctx, &read_graph(&graph.graph)?, enumerate, sigma),
        Command::Spectral { graph } => cmd_spectral(&ctx, &read_graph(&graph.graph)?),
        Command::Resistance { graph, pair } => cmd_resistance(&ctx, &read_graph(&graph.graph)?, pair),
        Command::Thm71 { graph, e, f } => cmd_thm71(&ctx, &read_graph(&graph.graph)?, e, f),
        Command::Thm71Scan { max_n } => cmd_thm71_scan(&ctx, max_n),
        Command::Check { graph, all, bound } => cmd_check(&ctx, &read_graph(&graph.graph)?, all, bound),
        Command::VerifyFerrersBound { max_vertices, emit } => {
            let report = verify_ferrers_bound(max_vertices, &ctx.options)?;
            search_outcome(&ctx, "verify-ferrers-bound", report, &emit)
        }
        Command::SpectralSearch {
            p,
            q,
            e,
            connected,
            emit,
        } => {
            let mut spec = ClassSpec::kpqe(p, q, e)?;
            if connected {
                spec = spec.connected_only();
            }
            let report = spectral_search_in(spec, &ctx.options)?;
            search_outcome(&ctx, "spectral-search", report, &emit)
        }
        Command::DegreeClass { degrees, emit } => {
            let report = degree_class_max(&degrees, &ctx.options)?;
            search_outcome(&ctx, "degree-class", report, &emit)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let output = cli.output.clone();
    match run(cli) {
        Ok(outcome) => {
            if let Err(e) = write_out(output.as_deref(), &outcome.text) {
                eprintln!("error: writing output: {e}");
                return ExitCode::from(EXIT_USAGE);
            }
            ExitCode::from(if outcome.counterexample { EXIT_COUNTEREXAMPLE } else { 0 })
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
