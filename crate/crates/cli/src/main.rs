//! `itrans`: generate instances, solve, reduce, verify and sweep.
//!
//! Exit codes: 0 success, 1 solver failure (or an invalid transversal under
//! `verify`), 2 input or parse error, 3 budget exhausted.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use transversal::experiment::{rows_to_csv, rows_to_json, run_experiment, ExperimentSpec};
use transversal::generators::{
    gen_clique_grid, gen_disjoint_cliques, gen_random_local_sparse, reduce_graph_family,
    reduce_list_coloring, GraphFamilyInstance, ListColoringInstance,
};
use transversal::io::{graph_to_json, load_graph, load_json, load_transversal};
use transversal::ksfree::{solve_ksfree, KsBackend};
use transversal::lll::{moser_tardos_it, DEFAULT_MAX_RESAMPLES};
use transversal::nibble::{solve_it, NibbleConfig, DEFAULT_RETRY_CAP};
use transversal::oracle::{brute_force_transversal, OracleMode, DEFAULT_NODE_BUDGET};
use transversal::reducer::{reduce_local_degree, ReduceParams, DEFAULT_MAX_RETRIES};
use transversal::{Error, Result};

#[derive(Parser)]
#[command(name = "itrans", version, about = "Independent and K_s-free transversals")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// `csv` is accepted by `stats` and `experiment`.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance in graph JSON format.
    #[command(subcommand)]
    Gen(Gen),
    /// Degree, local degree and part statistics.
    Stats { graph: PathBuf },
    #[command(subcommand)]
    Solve(Solve),
    /// Reduce the local degree; the report goes to --report or stderr.
    Reduce(ReduceArgs),
    /// Exact search for a K_s-free transversal (s = 2: independent).
    Oracle {
        graph: PathBuf,
        #[arg(long, default_value_t = 2)]
        s: usize,
        /// Count all valid transversals instead of stopping at one.
        #[arg(long)]
        count: bool,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        node_budget: u64,
    },
    /// Check that a transversal file is valid for a graph.
    Verify {
        graph: PathBuf,
        #[arg(long)]
        transversal: PathBuf,
        #[arg(long, default_value_t = 2)]
        s: usize,
    },
    /// Run a seeded sweep described by a JSON spec.
    Experiment {
        spec: PathBuf,
        /// Record wall-clock milliseconds per row.
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Subcommand)]
enum Gen {
    DisjointCliques {
        #[arg(long)]
        delta: usize,
    },
    CliqueGrid {
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        n: usize,
    },
    Random {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        local: usize,
    },
    /// Reduce a list-coloring instance; the host labels go to --labels.
    ReduceListcoloring {
        file: PathBuf,
        #[arg(long)]
        labels: Option<PathBuf>,
    },
    ReduceFamily { file: PathBuf },
}

#[derive(Subcommand)]
enum Solve {
    Lll {
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_RESAMPLES)]
        max_resamples: u64,
    },
    Nibble {
        graph: PathBuf,
        #[arg(long, default_value_t = 0.5)]
        epsilon: f64,
        #[arg(long, default_value_t = DEFAULT_RETRY_CAP)]
        retry_cap: usize,
        #[arg(long)]
        no_early_exit: bool,
        /// Accept every first draw and only record schedule violations.
        #[arg(long)]
        relaxed: bool,
    },
    Ksfree {
        graph: PathBuf,
        #[arg(long)]
        s: usize,
        #[arg(long, value_enum, default_value_t = Backend::Lll)]
        backend: Backend,
        #[arg(long, default_value_t = 0.5)]
        epsilon: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Backend {
    Nibble,
    Lll,
    Oracle,
}

impl From<Backend> for KsBackend {
    fn from(b: Backend) -> Self {
        match b {
            Backend::Nibble => KsBackend::Nibble,
            Backend::Lll => KsBackend::Lll,
            Backend::Oracle => KsBackend::Oracle,
        }
    }
}

#[derive(Args)]
struct ReduceArgs {
    graph: PathBuf,
    #[arg(long)]
    gamma: f64,
    #[arg(long)]
    epsilon: f64,
    /// Degree bound of the input; defaults to its maximum degree.
    #[arg(long)]
    delta: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_MAX_RETRIES)]
    max_retries: usize,
    #[arg(long)]
    report: Option<PathBuf>,
}

/// Text to emit and whether the command succeeded.
struct Output {
    text: String,
    ok: bool,
}

impl Output {
    fn json(v: Value, ok: bool) -> Self {
        Output {
            text: serde_json::to_string_pretty(&v).expect("json serializes"),
            ok,
        }
    }
}

fn json_only(cli: &Cli) -> Result<()> {
    if cli.format == Format::Csv {
        return Err(Error::Input(
            "csv output is only available for stats and experiment".into(),
        ));
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Output> {
    let seed = cli.seed;
    match &cli.command {
        Command::Gen(gen) => {
            json_only(cli)?;
            let g = match gen {
                Gen::DisjointCliques { delta } => gen_disjoint_cliques(*delta)?,
                Gen::CliqueGrid { delta, n } => gen_clique_grid(*delta, *n)?,
                Gen::Random { r, n, delta, local } => {
                    gen_random_local_sparse(*r, *n, *delta, *local, seed)?
                }
                Gen::ReduceListcoloring { file, labels } => {
                    let inst: ListColoringInstance = load_json(file)?;
                    let red = reduce_list_coloring(&inst)?;
                    if let Some(path) = labels {
                        fs::write(path, serde_json::to_string(&red.labels).expect("labels serialize"))?;
                    }
                    red.graph
                }
                Gen::ReduceFamily { file } => {
                    let inst: GraphFamilyInstance = load_json(file)?;
                    reduce_graph_family(&inst)?
                }
            };
            Ok(Output {
                text: graph_to_json(&g),
                ok: true,
            })
        }
        Command::Stats { graph } => {
            let g = load_graph(graph)?;
            let stats = g.compute_stats();
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&stats).expect("stats serialize"),
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.serialize(stats).map_err(|e| Error::Io(e.into()))?;
                    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
                    String::from_utf8(bytes).expect("csv is utf-8")
                }
            };
            Ok(Output { text, ok: true })
        }
        Command::Solve(solve) => {
            json_only(cli)?;
            solve_cmd(solve, seed)
        }
        Command::Reduce(args) => {
            json_only(cli)?;
            let g = load_graph(&args.graph)?;
            let params = ReduceParams {
                delta: args.delta,
                max_retries: args.max_retries,
                ..ReduceParams::new(args.gamma, args.epsilon, seed)
            };
            let red = reduce_local_degree(&g, &params)?;
            let report = serde_json::to_string_pretty(&red.report).expect("report serializes");
            match &args.report {
                Some(path) => fs::write(path, report + "\n")?,
                None => eprintln!("{report}"),
            }
            Ok(Output {
                text: graph_to_json(&red.graph),
                ok: true,
            })
        }
        Command::Oracle {
            graph,
            s,
            count,
            node_budget,
        } => {
            json_only(cli)?;
            let g = load_graph(graph)?;
            let mode = if *count { OracleMode::Count } else { OracleMode::Decide };
            let res = brute_force_transversal(&g, *s, mode, *node_budget)?;
            Ok(Output::json(
                json!({
                    "exists": res.exists,
                    "transversal": res.witness,
                    "count": res.count,
                    "nodes_explored": res.nodes_explored,
                }),
                true,
            ))
        }
        Command::Verify { graph, transversal, s } => {
            json_only(cli)?;
            let g = load_graph(graph)?;
            let t = load_transversal(transversal)?;
            let full = g.is_full_transversal(&t)?;
            let valid = g.is_ks_free_transversal(&t, *s)?;
            Ok(Output::json(json!({"valid": valid, "full": full, "s": s}), valid))
        }
        Command::Experiment { spec, timing } => {
            let mut spec: ExperimentSpec = load_json(spec)?;
            spec.timing |= *timing;
            let rows = run_experiment(&spec)?;
            let text = match cli.format {
                Format::Json => rows_to_json(&rows),
                Format::Csv => rows_to_csv(&rows)?,
            };
            Ok(Output { text, ok: true })
        }
    }
}

fn solve_cmd(solve: &Solve, seed: u64) -> Result<Output> {
    match solve {
        Solve::Lll { graph, max_resamples } => {
            let g = load_graph(graph)?;
            let rep = moser_tardos_it(&g, seed, *max_resamples)?;
            Ok(Output::json(
                json!({
                    "success": rep.success,
                    "transversal": rep.transversal,
                    "resamples": rep.resample_count,
                    "margin": rep.condition_margin,
                }),
                rep.success,
            ))
        }
        Solve::Nibble {
            graph,
            epsilon,
            retry_cap,
            no_early_exit,
            relaxed,
        } => {
            let g = load_graph(graph)?;
            let config = NibbleConfig {
                retry_cap: *retry_cap,
                early_exit: !no_early_exit,
                enforce_schedule: !relaxed,
                ..NibbleConfig::new(*epsilon)
            };
            let sol = solve_it(&g, &config, seed)?;
            Ok(Output::json(
                json!({
                    "success": true,
                    "transversal": sol.transversal,
                    "trace": sol.run.trace,
                    "early_exit_at": sol.run.early_exit_at,
                    "finisher_resamples": sol.finisher.resample_count,
                    "finisher_margin": sol.finisher.condition_margin,
                }),
                true,
            ))
        }
        Solve::Ksfree {
            graph,
            s,
            backend,
            epsilon,
        } => {
            let g = load_graph(graph)?;
            let sol = solve_ksfree(&g, *s, *epsilon, (*backend).into(), seed)?;
            let mut v = json!(sol);
            v["success"] = json!(true);
            Ok(Output::json(v, true))
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut text = out.text;
            if !text.ends_with('\n') {
                text.push('\n');
            }
            let written = match &cli.out {
                Some(path) => fs::write(path, &text),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
