//! Seeded parameter sweeps.
//!
//! An [`ExperimentSpec`] names a generator with a grid of parameter values,
//! a list of solver configurations and a repetition count. Every
//! combination of generator parameters and solver configuration is a cell;
//! cells are numbered generator-major. Repetition `rep` of cell `cell` draws
//! its instance from `derive_seed(master, [cell, rep, 0])` and runs the
//! solver with `derive_seed(master, [cell, rep, 1])`.
//!
//! Report columns, in order: `cell, rep, generator, params, solver, seed,
//! success, verified, iterations, wall_ms, error`. `iterations` is the
//! resample count (lll), round count (nibble), node count (oracle) or total
//! attempts (reduce). `wall_ms` is 0 when timing is off, which makes the
//! report a pure function of the spec.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{gen_clique_grid, gen_disjoint_cliques, gen_random_local_sparse};
use crate::graph::MultipartiteGraph;
use crate::ksfree::{solve_ksfree, KsBackend};
use crate::lll::{moser_tardos_it, DEFAULT_MAX_RESAMPLES};
use crate::nibble::{solve_it, NibbleConfig, DEFAULT_RETRY_CAP};
use crate::oracle::{brute_force_transversal, OracleMode, DEFAULT_NODE_BUDGET};
use crate::reducer::{reduce_local_degree, ReduceParams, DEFAULT_MAX_RETRIES, SUBSAMPLE_LOCAL_LIMIT};
use crate::seed::derive_seed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverKind {
    Lll,
    Nibble,
    Ksfree,
    Oracle,
    Reduce,
}

impl std::fmt::Display for SolverKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            SolverKind::Lll => "lll",
            SolverKind::Nibble => "nibble",
            SolverKind::Ksfree => "ksfree",
            SolverKind::Oracle => "oracle",
            SolverKind::Reduce => "reduce",
        };
        f.write_str(name)
    }
}

/// Everything a solver run needs besides the graph. Missing fields in JSON
/// take the defaults of [`SolverConfig::default`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    pub solver: SolverKind,
    pub epsilon: f64,
    pub gamma: f64,
    pub s: usize,
    /// Seed for a single run. Sweeps ignore it and derive one per row.
    pub seed: u64,
    /// Independent-transversal backend of the ksfree pipeline.
    pub backend: KsBackend,
    pub max_resamples: u64,
    pub retry_cap: usize,
    pub max_retries: usize,
    pub node_budget: u64,
    pub early_exit: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            solver: SolverKind::Lll,
            epsilon: 0.5,
            gamma: 0.5,
            s: 2,
            seed: 0,
            backend: KsBackend::Lll,
            max_resamples: DEFAULT_MAX_RESAMPLES,
            retry_cap: DEFAULT_RETRY_CAP,
            max_retries: DEFAULT_MAX_RETRIES,
            node_budget: DEFAULT_NODE_BUDGET,
            early_exit: true,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.epsilon.is_nan() || self.epsilon <= 0.0 {
            return Err(Error::input(format!("epsilon must be positive, got {}", self.epsilon)));
        }
        if self.gamma.is_nan() || self.gamma <= 0.0 || self.gamma >= 1.0 {
            return Err(Error::input(format!("gamma must lie in (0, 1), got {}", self.gamma)));
        }
        if self.s < 2 {
            return Err(Error::input(format!("s must be >= 2, got {}", self.s)));
        }
        if self.max_resamples == 0 || self.retry_cap == 0 || self.max_retries == 0 || self.node_budget == 0 {
            return Err(Error::input("budgets must be positive"));
        }
        Ok(())
    }

    pub fn nibble_config(&self) -> NibbleConfig {
        NibbleConfig {
            retry_cap: self.retry_cap,
            early_exit: self.early_exit,
            max_resamples: self.max_resamples,
            ..NibbleConfig::new(self.epsilon)
        }
    }
}

/// Generator plus a list of values for each of its parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GeneratorGrid {
    RandomLocalSparse {
        r: Vec<usize>,
        n: Vec<usize>,
        delta: Vec<usize>,
        local: Vec<usize>,
    },
    DisjointCliques {
        delta: Vec<usize>,
    },
    CliqueGrid {
        delta: Vec<usize>,
        n: Vec<usize>,
    },
}

/// One point of a generator grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorCell {
    RandomLocalSparse { r: usize, n: usize, delta: usize, local: usize },
    DisjointCliques { delta: usize },
    CliqueGrid { delta: usize, n: usize },
}

impl GeneratorCell {
    pub fn name(&self) -> &'static str {
        match self {
            GeneratorCell::RandomLocalSparse { .. } => "random_local_sparse",
            GeneratorCell::DisjointCliques { .. } => "disjoint_cliques",
            GeneratorCell::CliqueGrid { .. } => "clique_grid",
        }
    }

    pub fn params(&self) -> String {
        match self {
            GeneratorCell::RandomLocalSparse { r, n, delta, local } => {
                format!("r={r};n={n};delta={delta};local={local}")
            }
            GeneratorCell::DisjointCliques { delta } => format!("delta={delta}"),
            GeneratorCell::CliqueGrid { delta, n } => format!("delta={delta};n={n}"),
        }
    }

    /// Deterministic generators ignore the seed.
    pub fn generate(&self, seed: u64) -> Result<MultipartiteGraph> {
        match *self {
            GeneratorCell::RandomLocalSparse { r, n, delta, local } => {
                gen_random_local_sparse(r, n, delta, local, seed)
            }
            GeneratorCell::DisjointCliques { delta } => gen_disjoint_cliques(delta),
            GeneratorCell::CliqueGrid { delta, n } => gen_clique_grid(delta, n),
        }
    }
}

impl GeneratorGrid {
    /// Cartesian product, last parameter varying fastest.
    pub fn cells(&self) -> Vec<GeneratorCell> {
        let mut out = Vec::new();
        match self {
            GeneratorGrid::RandomLocalSparse { r, n, delta, local } => {
                for &r in r {
                    for &n in n {
                        for &delta in delta {
                            for &local in local {
                                out.push(GeneratorCell::RandomLocalSparse { r, n, delta, local });
                            }
                        }
                    }
                }
            }
            GeneratorGrid::DisjointCliques { delta } => {
                out.extend(delta.iter().map(|&delta| GeneratorCell::DisjointCliques { delta }));
            }
            GeneratorGrid::CliqueGrid { delta, n } => {
                for &delta in delta {
                    for &n in n {
                        out.push(GeneratorCell::CliqueGrid { delta, n });
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub generator: GeneratorGrid,
    pub solvers: Vec<SolverConfig>,
    pub repetitions: usize,
    pub master_seed: u64,
    /// Record wall-clock time per row.
    #[serde(default)]
    pub timing: bool,
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<()> {
        if self.generator.cells().is_empty() || self.solvers.is_empty() {
            return Err(Error::input("experiment grid is empty"));
        }
        if self.repetitions < 1 {
            return Err(Error::input("repetitions must be >= 1"));
        }
        self.solvers.iter().try_for_each(SolverConfig::validate)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub cell: usize,
    pub rep: usize,
    pub generator: String,
    pub params: String,
    pub solver: String,
    pub seed: u64,
    pub success: bool,
    pub verified: bool,
    pub iterations: u64,
    pub wall_ms: f64,
    pub error: String,
}

struct Outcome {
    success: bool,
    verified: bool,
    iterations: u64,
}

fn run_solver(g: &MultipartiteGraph, cfg: &SolverConfig, seed: u64) -> Result<Outcome> {
    match cfg.solver {
        SolverKind::Lll => {
            let rep = moser_tardos_it(g, seed, cfg.max_resamples)?;
            let verified = match &rep.transversal {
                Some(t) => g.is_independent_transversal(t)?,
                None => false,
            };
            Ok(Outcome {
                success: rep.success,
                verified,
                iterations: rep.resample_count,
            })
        }
        SolverKind::Nibble => {
            let sol = solve_it(g, &cfg.nibble_config(), seed)?;
            Ok(Outcome {
                success: true,
                verified: g.is_independent_transversal(&sol.transversal)?,
                iterations: sol.run.trace.len() as u64,
            })
        }
        SolverKind::Ksfree => {
            let sol = solve_ksfree(g, cfg.s, cfg.epsilon, cfg.backend, seed)?;
            Ok(Outcome {
                success: true,
                verified: g.is_ks_free_transversal(&sol.transversal, cfg.s)?,
                iterations: sol.coloring.moves.len() as u64,
            })
        }
        SolverKind::Oracle => {
            let res = brute_force_transversal(g, cfg.s, OracleMode::Decide, cfg.node_budget)?;
            let verified = match &res.witness {
                Some(t) => g.is_ks_free_transversal(t, cfg.s)?,
                None => false,
            };
            Ok(Outcome {
                success: res.exists,
                verified,
                iterations: res.nodes_explored,
            })
        }
        SolverKind::Reduce => {
            let params = ReduceParams {
                max_retries: cfg.max_retries,
                ..ReduceParams::new(cfg.gamma, cfg.epsilon, seed)
            };
            let red = reduce_local_degree(g, &params)?;
            let stats = red.graph.compute_stats();
            Ok(Outcome {
                success: true,
                verified: stats.local_degree < SUBSAMPLE_LOCAL_LIMIT
                    && stats.max_degree as f64 <= red.report.declared_degree_bound,
                iterations: red.report.stages.iter().map(|s| s.attempts as u64).sum(),
            })
        }
    }
}

/// Run every cell and repetition in order. Errors are written into their
/// row and the sweep continues. A row counts as a success only if its
/// output was re-verified.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<Vec<ReportRow>> {
    spec.validate()?;
    let mut rows = Vec::new();
    let mut cell = 0;
    for gen in spec.generator.cells() {
        for cfg in &spec.solvers {
            for rep in 0..spec.repetitions {
                let graph_seed = derive_seed(spec.master_seed, &[cell as u64, rep as u64, 0]);
                let solver_seed = derive_seed(spec.master_seed, &[cell as u64, rep as u64, 1]);
                let start = Instant::now();
                let outcome = gen
                    .generate(graph_seed)
                    .and_then(|g| run_solver(&g, cfg, solver_seed));
                let wall_ms = if spec.timing {
                    start.elapsed().as_secs_f64() * 1e3
                } else {
                    0.0
                };
                let mut row = ReportRow {
                    cell,
                    rep,
                    generator: gen.name().to_string(),
                    params: gen.params(),
                    solver: cfg.solver.to_string(),
                    seed: graph_seed,
                    success: false,
                    verified: false,
                    iterations: 0,
                    wall_ms,
                    error: String::new(),
                };
                match outcome {
                    Ok(o) => {
                        row.success = o.success && o.verified;
                        row.verified = o.verified;
                        row.iterations = o.iterations;
                        if o.success && !o.verified {
                            row.error = "output failed verification".into();
                        }
                    }
                    Err(e) => row.error = e.to_string(),
                }
                rows.push(row);
            }
            cell += 1;
        }
    }
    Ok(rows)
}

pub fn rows_to_csv(rows: &[ReportRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| Error::Io(e.into()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn rows_to_json(rows: &[ReportRow]) -> String {
    serde_json::to_string_pretty(rows).expect("rows serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(reps: usize) -> ExperimentSpec {
        ExperimentSpec {
            generator: GeneratorGrid::RandomLocalSparse {
                r: vec![6],
                n: vec![12],
                delta: vec![2],
                local: vec![2],
            },
            solvers: vec![SolverConfig::default()],
            repetitions: reps,
            master_seed: 42,
            timing: false,
        }
    }

    #[test]
    fn one_cell_one_rep_one_row() {
        let rows = run_experiment(&spec(1)).unwrap();
        assert_eq!(rows.len(), 1);
        assert!(rows[0].success && rows[0].verified);
    }

    #[test]
    fn same_seed_same_csv() {
        let a = rows_to_csv(&run_experiment(&spec(3)).unwrap()).unwrap();
        let b = rows_to_csv(&run_experiment(&spec(3)).unwrap()).unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with("cell,rep,generator,params,solver,seed,success,verified,iterations,wall_ms,error\n"));
    }

    #[test]
    fn errors_stay_in_their_row() {
        let mut s = spec(2);
        s.generator = GeneratorGrid::DisjointCliques { delta: vec![2, 3] };
        s.solvers = vec![SolverConfig {
            solver: SolverKind::Oracle,
            node_budget: 3,
            ..SolverConfig::default()
        }];
        let rows = run_experiment(&s).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows.iter().all(|r| !r.success && r.error.contains("budget")));
    }

    #[test]
    fn spec_parses_from_json() {
        let text = r#"{
            "generator": {"kind": "clique_grid", "delta": [4], "n": [2, 3]},
            "solvers": [{"solver": "oracle", "s": 3}],
            "repetitions": 1,
            "master_seed": 7
        }"#;
        let s: ExperimentSpec = serde_json::from_str(text).unwrap();
        let rows = run_experiment(&s).unwrap();
        assert_eq!(rows.iter().map(|r| r.success).collect::<Vec<_>>(), vec![false, true]);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let mut s = spec(0);
        assert!(run_experiment(&s).is_err());
        s.repetitions = 1;
        s.solvers[0].gamma = 1.0;
        assert!(run_experiment(&s).is_err());
    }
}
