//! `cfpq` — context-free path queries over edge-labeled graphs.
//!
//! Subcommands:
//!
//! * `query`: evaluate one query, emitting node pairs (relational
//!   semantics) or one witnessing path per pair (single-path semantics);
//! * `bench`: evaluate one query over every triple file in a directory and
//!   report result counts and median timings as CSV;
//! * `selftest`: re-run the built-in worked example and verify every
//!   intermediate matrix state against its known values.
//!
//! Exit codes: 0 on success, 1 for file and parse problems (and a failed
//! selftest), 2 for an unknown start nonterminal.

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use cfpq_core::{demo, engine, singlepath, CnfGrammar, Grammar, Graph, MatrixRepr, QueryError};

#[derive(Parser)]
#[command(
    name = "cfpq",
    version,
    about = "Context-free path querying over edge-labeled directed graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a query and print the resulting pairs or paths
    Query(QueryArgs),
    /// Evaluate a query over every triple file in a directory, CSV output
    Bench(BenchArgs),
    /// Verify the built-in example instance state by state
    Selftest(SelftestArgs),
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("input").required(true).args(["graph", "triples"])))]
struct QueryArgs {
    /// Edge-list graph file (one `src label dst` per line)
    #[arg(long, value_name = "PATH")]
    graph: Option<PathBuf>,
    /// Triple file (one `o p s` per line, simplified N-Triples accepted)
    #[arg(long, value_name = "PATH")]
    triples: Option<PathBuf>,
    /// Add the inverse edge (s, p_r, o) for every ingested triple
    #[arg(long, requires = "triples")]
    add_inverses: bool,
    /// Grammar file
    #[arg(long, value_name = "PATH")]
    grammar: PathBuf,
    /// Start nonterminal
    #[arg(long, value_name = "NAME")]
    start: String,
    /// Query semantics
    #[arg(long, value_enum, default_value_t = Semantics::Relational)]
    semantics: Semantics,
    /// Output file, `-` for stdout
    #[arg(long, value_name = "PATH", default_value = "-")]
    output: String,
    /// Emit JSON instead of tab-separated lines
    #[arg(long)]
    json: bool,
    /// Boolean matrix layout
    #[arg(long, value_enum, default_value_t = ReprChoice::Auto)]
    repr: ReprChoice,
}

#[derive(Args)]
struct BenchArgs {
    /// Directory of triple files, one graph per file
    #[arg(long, value_name = "DIR")]
    triples_dir: PathBuf,
    /// Grammar file
    #[arg(long, value_name = "PATH")]
    grammar: PathBuf,
    /// Start nonterminal
    #[arg(long, value_name = "NAME")]
    start: String,
    /// Evaluations per file; the median time is reported
    #[arg(long, value_name = "K", default_value_t = 3)]
    repeat: usize,
    /// Boolean matrix layout
    #[arg(long, value_enum, default_value_t = ReprChoice::Auto)]
    repr: ReprChoice,
}

#[derive(Args)]
struct SelftestArgs {
    /// Print every matrix state
    #[arg(long)]
    verbose: bool,
    /// Corrupt the initial matrix to exercise the failure path
    #[arg(long, hide = true)]
    corrupt: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Semantics {
    Relational,
    #[value(name = "single-path")]
    SinglePath,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReprChoice {
    Auto,
    Dense,
    Sparse,
}

impl ReprChoice {
    fn resolve(self, dim: usize) -> MatrixRepr {
        match self {
            ReprChoice::Auto => MatrixRepr::auto(dim),
            ReprChoice::Dense => MatrixRepr::Dense,
            ReprChoice::Sparse => MatrixRepr::Sparse,
        }
    }
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {message}")]
    File { path: String, message: String },
    #[error("unknown start nonterminal `{0}`")]
    UnknownStart(String),
    #[error("selftest failed")]
    SelftestFailed,
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::UnknownStart(_) => 2,
            _ => 1,
        }
    }

    fn file(path: &Path, err: impl std::fmt::Display) -> CliError {
        CliError::File {
            path: path.display().to_string(),
            message: err.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Query(args) => cmd_query(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Selftest(args) => cmd_selftest(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("cfpq: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::file(path, e))
}

fn load_grammar(path: &Path) -> Result<Grammar, CliError> {
    Grammar::parse(&read_file(path)?).map_err(|e| CliError::file(path, e))
}

fn load_query_graph(args: &QueryArgs) -> Result<Graph, CliError> {
    if let Some(path) = &args.graph {
        Graph::from_edge_list(&read_file(path)?).map_err(|e| CliError::file(path, e))
    } else {
        let path = args.triples.as_ref().expect("input group is required");
        Graph::from_triples(&read_file(path)?, args.add_inverses)
            .map_err(|e| CliError::file(path, e))
    }
}

#[derive(Serialize)]
struct PairRecord<'a> {
    src: &'a str,
    dst: &'a str,
}

#[derive(Serialize)]
struct PathRecord<'a> {
    src: &'a str,
    dst: &'a str,
    length: usize,
    labels: Vec<&'a str>,
}

fn cmd_query(args: QueryArgs) -> Result<(), CliError> {
    let grammar = load_grammar(&args.grammar)?;
    let graph = load_query_graph(&args)?;
    if !grammar.has_nonterminal(&args.start) {
        return Err(CliError::UnknownStart(args.start.clone()));
    }

    let mut out = String::new();
    match args.semantics {
        Semantics::Relational => {
            let pairs = query_with_repr(&graph, &grammar, &args.start, args.repr)
                .map_err(|QueryError::UnknownStart(s)| CliError::UnknownStart(s))?;
            if args.json {
                let records: Vec<PairRecord> = pairs
                    .iter()
                    .map(|&(i, j)| PairRecord {
                        src: graph.node_name(i),
                        dst: graph.node_name(j),
                    })
                    .collect();
                out = serde_json::to_string(&records).expect("serializable");
                out.push('\n');
            } else {
                for &(i, j) in &pairs {
                    out.push_str(graph.node_name(i));
                    out.push('\t');
                    out.push_str(graph.node_name(j));
                    out.push('\n');
                }
            }
        }
        Semantics::SinglePath => {
            let paths = singlepath::query_single_path(&graph, &grammar, &args.start)
                .map_err(|QueryError::UnknownStart(s)| CliError::UnknownStart(s))?;
            if args.json {
                let records: Vec<PathRecord> = paths
                    .iter()
                    .map(|(&(i, j), path)| PathRecord {
                        src: graph.node_name(i),
                        dst: graph.node_name(j),
                        length: path.len(),
                        labels: path.labels(),
                    })
                    .collect();
                out = serde_json::to_string(&records).expect("serializable");
                out.push('\n');
            } else {
                for (&(i, j), path) in &paths {
                    out.push_str(&format!(
                        "{}\t{}\t{}\t{}\n",
                        graph.node_name(i),
                        graph.node_name(j),
                        path.len(),
                        path.labels().join(",")
                    ));
                }
            }
        }
    }

    if args.output == "-" {
        let stdout = std::io::stdout();
        stdout
            .lock()
            .write_all(out.as_bytes())
            .map_err(|e| CliError::file(Path::new("-"), e))
    } else {
        fs::write(&args.output, out).map_err(|e| CliError::file(Path::new(&args.output), e))
    }
}

/// Relational query with an explicit matrix layout choice.
fn query_with_repr(
    graph: &Graph,
    grammar: &Grammar,
    start: &str,
    repr: ReprChoice,
) -> Result<BTreeSet<(u32, u32)>, QueryError> {
    if !grammar.has_nonterminal(start) {
        return Err(QueryError::UnknownStart(start.to_owned()));
    }
    let cnf = grammar.to_cnf();
    let start_idx = cnf.nonterm_index(start).expect("start checked above");
    let t = engine::init_matrix(graph, &cnf, repr.resolve(graph.node_count()));
    let (fixpoint, _) = engine::closure(t, &cnf);
    Ok(engine::relations(&fixpoint).pairs(start_idx).clone())
}

fn cmd_bench(args: BenchArgs) -> Result<(), CliError> {
    let grammar = load_grammar(&args.grammar)?;
    if !grammar.has_nonterminal(&args.start) {
        return Err(CliError::UnknownStart(args.start.clone()));
    }
    let cnf = grammar.to_cnf();
    let start_idx = cnf.nonterm_index(&args.start).expect("start checked above");
    let repeat = args.repeat.max(1);

    let mut files: Vec<PathBuf> = fs::read_dir(&args.triples_dir)
        .map_err(|e| CliError::file(&args.triples_dir, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    files.sort();

    println!("name,nodes,edges,results,median_ms");
    for path in files {
        // Per the evaluation convention, every triple also contributes its
        // inverse edge.
        let graph = Graph::from_triples(&read_file(&path)?, true)
            .map_err(|e| CliError::file(&path, e))?;
        let repr = args.repr.resolve(graph.node_count());

        let mut results = 0usize;
        let mut timings: Vec<Duration> = Vec::with_capacity(repeat);
        for _ in 0..repeat {
            let started = Instant::now();
            let t = engine::init_matrix(&graph, &cnf, repr);
            let (fixpoint, _) = engine::closure(t, &cnf);
            results = fixpoint.matrix(start_idx).count_ones();
            timings.push(started.elapsed());
        }
        timings.sort();
        let median = if repeat % 2 == 1 {
            timings[repeat / 2]
        } else {
            (timings[repeat / 2 - 1] + timings[repeat / 2]) / 2
        };

        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        println!(
            "{name},{},{},{results},{:.3}",
            graph.node_count(),
            graph.edge_count(),
            median.as_secs_f64() * 1e3
        );
    }
    Ok(())
}

fn cmd_selftest(args: SelftestArgs) -> Result<(), CliError> {
    let graph = Graph::from_edge_list(demo::GRAPH).expect("built-in graph parses");
    let cnf = Grammar::parse(demo::CNF_GRAMMAR)
        .expect("built-in grammar parses")
        .to_cnf();

    let mut t0 = engine::init_matrix(&graph, &cnf, MatrixRepr::Dense);
    if args.corrupt {
        t0.matrix_mut(0).set(2, 1);
    }
    let (states, iterations) = engine::closure_trace(t0, &cnf);
    let expected = demo::closure_states();

    let mut all_ok = true;
    let mut check = |name: &str, ok: bool| {
        println!("{name}: {}", if ok { "PASS" } else { "FAIL" });
        all_ok &= ok;
    };

    for (k, want) in expected.iter().enumerate() {
        let want: BTreeSet<(String, usize, usize)> = want
            .iter()
            .map(|&(a, i, j)| (a.to_owned(), i, j))
            .collect();
        let got = states.get(k).map(|state| state_facts(state, &cnf));
        let label = if k == 0 {
            "initial matrix".to_owned()
        } else {
            format!("state after iteration {k}")
        };
        if args.verbose {
            if let Some(state) = states.get(k) {
                print_state(&label, state, &cnf);
            }
        }
        check(&label, got.as_ref() == Some(&want));
    }
    check(
        &format!("fixpoint detected at iteration {}", demo::ITERATIONS),
        iterations == demo::ITERATIONS && states.len() == expected.len(),
    );

    let relations = engine::relations(states.last().expect("at least the initial state"));
    let relations_ok = demo::relations().iter().all(|(name, pairs)| {
        let a = cnf.nonterm_index(name).expect("built-in nonterminal");
        relations.pairs(a) == &pairs.iter().copied().collect::<BTreeSet<_>>()
    });
    check("extracted relations", relations_ok);

    if all_ok {
        Ok(())
    } else {
        Err(CliError::SelftestFailed)
    }
}

fn state_facts(
    state: &cfpq_core::NontermMatrixSet,
    cnf: &CnfGrammar,
) -> BTreeSet<(String, usize, usize)> {
    let mut facts = BTreeSet::new();
    for a in 0..state.nonterm_count() {
        for (i, j) in state.matrix(a).iter_ones() {
            facts.insert((cnf.nonterm_name(a).to_owned(), i, j));
        }
    }
    facts
}

fn print_state(label: &str, state: &cfpq_core::NontermMatrixSet, cnf: &CnfGrammar) {
    println!("{label}:");
    for i in 0..state.dim() {
        for j in 0..state.dim() {
            let cell = state.cell(i, j);
            if !cell.is_empty() {
                let names: Vec<&str> = cell.iter().map(|&a| cnf.nonterm_name(a)).collect();
                println!("  ({i},{j}) {{{}}}", names.join(", "));
            }
        }
    }
}
