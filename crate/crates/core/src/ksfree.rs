//! `K_s`-free transversals through colorings.
//!
//! Color the vertices with `s - 1` colors so that no vertex can lower its
//! number of same-colored neighbors by switching color, then drop every edge
//! whose endpoints differ in color. Each vertex keeps at most
//! `floor(delta / (s - 1))` neighbors, and an independent transversal of what
//! remains is `(s - 1)`-colorable in the original graph, hence `K_s`-free.

use std::collections::BTreeMap;
use std::f64::consts::E;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Stage};
use crate::graph::{GraphStats, MultipartiteGraph, Transversal, VertexId};
use crate::lll::{moser_tardos_it, DEFAULT_MAX_RESAMPLES};
use crate::nibble::{solve_it, NibbleConfig};
use crate::oracle::{brute_force_transversal, OracleMode, DEFAULT_NODE_BUDGET};
use crate::seed::{derive_seed, rng_from_seed};

/// One recoloring step of the local search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ColorMove {
    pub vertex: VertexId,
    pub from: usize,
    pub to: usize,
    pub mono_before: usize,
    pub mono_after: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coloring {
    pub colors: BTreeMap<VertexId, usize>,
    pub mono_edge_count: usize,
    pub color_count: usize,
    #[serde(skip)]
    pub moves: Vec<ColorMove>,
}

impl Coloring {
    pub fn color(&self, v: VertexId) -> Option<usize> {
        self.colors.get(&v).copied()
    }

    /// Number of edges of `g` whose endpoints share a color.
    pub fn count_mono(&self, g: &MultipartiteGraph) -> Result<usize> {
        let mut n = 0;
        for &(u, v) in g.edges() {
            if self.require(u)? == self.require(v)? {
                n += 1;
            }
        }
        Ok(n)
    }

    /// Largest number of same-colored neighbors over all vertices.
    pub fn max_same_color_degree(&self, g: &MultipartiteGraph) -> Result<usize> {
        let mut best = 0;
        for v in g.vertices() {
            let c = self.require(v)?;
            let mut same = 0;
            for &w in g.neighbors(v) {
                if self.require(w)? == c {
                    same += 1;
                }
            }
            best = best.max(same);
        }
        Ok(best)
    }

    fn require(&self, v: VertexId) -> Result<usize> {
        self.color(v)
            .ok_or_else(|| Error::input(format!("vertex {v} has no color")))
    }
}

/// `floor(delta / (s - 1))`.
pub fn same_color_bound(max_degree: usize, s: usize) -> usize {
    max_degree / (s - 1)
}

/// Local search from a seeded random coloring with `s - 1` colors. Vertices
/// are scanned by id; the first one with more same-colored neighbors than
/// some other color class moves to the smallest such class (lowest color on
/// ties) and the scan restarts.
pub fn minimize_mono_coloring(g: &MultipartiteGraph, s: usize, seed: u64) -> Result<Coloring> {
    if s < 2 {
        return Err(Error::input(format!("clique order s must be >= 2, got {s}")));
    }
    let k = s - 1;
    let mut rng = rng_from_seed(seed);
    let mut color = vec![0usize; g.id_bound()];
    for v in g.vertices() {
        color[v] = if k == 1 { 0 } else { rng.gen_range(0..k) };
    }
    // counts[v * k + c] = neighbors of v with color c
    let mut counts = vec![0usize; g.id_bound() * k];
    for v in g.vertices() {
        for &w in g.neighbors(v) {
            counts[v * k + color[w]] += 1;
        }
    }
    let mut mono = g.edges().iter().filter(|&&(u, v)| color[u] == color[v]).count();
    let vertices: Vec<VertexId> = g.vertices().collect();
    let mut moves = Vec::new();

    'scan: loop {
        for &v in &vertices {
            let row = &counts[v * k..(v + 1) * k];
            let (best, &low) = row
                .iter()
                .enumerate()
                .min_by_key(|&(c, &n)| (n, c))
                .expect("at least one color");
            let here = row[color[v]];
            if here <= low {
                continue;
            }
            let from = color[v];
            color[v] = best;
            for &w in g.neighbors(v) {
                counts[w * k + from] -= 1;
                counts[w * k + best] += 1;
            }
            let before = mono;
            mono = mono - here + low;
            moves.push(ColorMove {
                vertex: v,
                from,
                to: best,
                mono_before: before,
                mono_after: mono,
            });
            continue 'scan;
        }
        break;
    }

    let coloring = Coloring {
        colors: vertices.iter().map(|&v| (v, color[v])).collect(),
        mono_edge_count: mono,
        color_count: k,
        moves,
    };
    let bound = same_color_bound(g.max_degree(), s);
    let worst = coloring.max_same_color_degree(g)?;
    if worst > bound || coloring.count_mono(g)? != mono {
        return Err(Error::solver(
            Stage::Coloring,
            format!("internal: local optimum has same-color degree {worst} > {bound} or stale count"),
        ));
    }
    Ok(coloring)
}

/// Same vertices and parts, monochromatic edges only.
pub fn split_by_coloring(g: &MultipartiteGraph, c: &Coloring) -> Result<MultipartiteGraph> {
    let mut edges = Vec::new();
    for &(u, v) in g.edges() {
        if c.require(u)? == c.require(v)? {
            edges.push((u, v));
        }
    }
    if let Some(v) = g.vertices().find(|&v| c.color(v).is_none()) {
        return Err(Error::input(format!("vertex {v} has no color")));
    }
    Ok(g.with_edge_subset(edges))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KsBackend {
    Nibble,
    Lll,
    Oracle,
}

impl std::str::FromStr for KsBackend {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nibble" => Ok(KsBackend::Nibble),
            "lll" => Ok(KsBackend::Lll),
            "oracle" => Ok(KsBackend::Oracle),
            other => Err(Error::input(format!("unknown backend {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KsFreeSolution {
    pub transversal: Transversal,
    pub coloring: Coloring,
    /// Statistics of the monochromatic subgraph.
    pub residual: GraphStats,
    /// `floor(delta / (s - 1))` for the input graph.
    pub degree_bound: usize,
    pub backend: KsBackend,
    /// Resampling steps of the lll backend or of the nibble finisher.
    pub resamples: Option<u64>,
    pub nibble_rounds: Option<usize>,
    pub oracle_nodes: Option<u64>,
}

/// Color, split, find an independent transversal of the monochromatic
/// subgraph with `backend`, and verify the result is `K_s`-free in `g`.
pub fn solve_ksfree(
    g: &MultipartiteGraph,
    s: usize,
    epsilon: f64,
    backend: KsBackend,
    seed: u64,
) -> Result<KsFreeSolution> {
    if s < 2 {
        return Err(Error::input(format!("clique order s must be >= 2, got {s}")));
    }
    g.require_nonempty_parts()?;
    g.require_no_intra_part_edges()?;
    let bound = same_color_bound(g.max_degree(), s);
    let min_part = g.min_part_size();
    let needed = match backend {
        KsBackend::Lll => Some(2.0 * E * bound as f64),
        KsBackend::Nibble => Some((1.0 + epsilon) * bound as f64),
        KsBackend::Oracle => None,
    };
    if let Some(need) = needed {
        if (min_part as f64) < need {
            return Err(Error::input(format!(
                "smallest part has {min_part} vertices, {backend:?} backend needs {need:.3} \
                 (max degree {}, s = {s}, bound {bound})",
                g.max_degree()
            )));
        }
    }

    let coloring = minimize_mono_coloring(g, s, derive_seed(seed, &[0]))?;
    let residual_graph = split_by_coloring(g, &coloring)?;
    let backend_seed = derive_seed(seed, &[1]);
    let (mut resamples, mut nibble_rounds, mut oracle_nodes) = (None, None, None);
    let transversal = match backend {
        KsBackend::Lll => {
            let rep = moser_tardos_it(&residual_graph, backend_seed, DEFAULT_MAX_RESAMPLES)?;
            resamples = Some(rep.resample_count);
            rep.transversal.ok_or_else(|| {
                Error::solver(
                    Stage::Lll,
                    format!("resampling gave up after {} steps", rep.resample_count),
                )
            })?
        }
        KsBackend::Nibble => {
            let sol = solve_it(&residual_graph, &NibbleConfig::new(epsilon), backend_seed)?;
            resamples = Some(sol.finisher.resample_count);
            nibble_rounds = Some(sol.run.trace.len());
            sol.transversal
        }
        KsBackend::Oracle => {
            let res = brute_force_transversal(&residual_graph, 2, OracleMode::Decide, DEFAULT_NODE_BUDGET)?;
            oracle_nodes = Some(res.nodes_explored);
            res.witness.ok_or_else(|| {
                Error::solver(
                    Stage::Oracle,
                    "the monochromatic subgraph has no independent transversal",
                )
            })?
        }
    };

    if !g.is_ks_free_transversal(&transversal, s)? {
        return Err(Error::solver(
            Stage::Coloring,
            format!("internal: output contains a K_{s}"),
        ));
    }
    Ok(KsFreeSolution {
        transversal,
        residual: residual_graph.compute_stats(),
        coloring,
        degree_bound: bound,
        backend,
        resamples,
        nibble_rounds,
        oracle_nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_clique_grid, gen_random_local_sparse};

    fn k4() -> MultipartiteGraph {
        let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        MultipartiteGraph::new(vec![vec![0], vec![1], vec![2], vec![3]], edges).unwrap()
    }

    #[test]
    fn edgeless_has_no_mono_edges() {
        let c = minimize_mono_coloring(&MultipartiteGraph::edgeless(3, 3), 3, 1).unwrap();
        assert_eq!(c.mono_edge_count, 0);
        assert!(c.moves.is_empty());
    }

    #[test]
    fn k4_splits_two_and_two() {
        for seed in 0..20 {
            let g = k4();
            let c = minimize_mono_coloring(&g, 3, seed).unwrap();
            assert_eq!(c.mono_edge_count, 2);
            let h = split_by_coloring(&g, &c).unwrap();
            assert_eq!(h.edge_count(), 2);
            assert_eq!(h.max_degree(), 1);
        }
    }

    #[test]
    fn moves_strictly_decrease() {
        let g = gen_random_local_sparse(10, 6, 9, 3, 4).unwrap();
        let c = minimize_mono_coloring(&g, 3, 7).unwrap();
        for m in &c.moves {
            assert!(m.mono_after < m.mono_before);
        }
        assert!(c.moves.len() <= g.edge_count());
        assert_eq!(c.count_mono(&g).unwrap(), c.mono_edge_count);
    }

    #[test]
    fn s_two_is_one_color() {
        let g = k4();
        let c = minimize_mono_coloring(&g, 2, 0).unwrap();
        assert_eq!(c.mono_edge_count, 6);
        assert!(c.colors.values().all(|&x| x == 0));
        assert_eq!(split_by_coloring(&g, &c).unwrap().edge_count(), 6);
    }

    #[test]
    fn partial_coloring_is_rejected() {
        let g = k4();
        let mut c = minimize_mono_coloring(&g, 3, 0).unwrap();
        c.colors.remove(&2);
        assert!(matches!(split_by_coloring(&g, &c), Err(Error::Input(_))));
        assert!(matches!(minimize_mono_coloring(&g, 1, 0), Err(Error::Input(_))));
    }

    #[test]
    fn grid_without_k3_free_transversal_fails_on_oracle() {
        let g = gen_clique_grid(4, 2).unwrap();
        let err = solve_ksfree(&g, 3, 0.5, KsBackend::Oracle, 1).unwrap_err();
        assert_eq!(err.stage(), Some(Stage::Oracle));
    }

    #[test]
    fn lll_backend_at_threshold() {
        let g = gen_random_local_sparse(40, 33, 12, 12, 5).unwrap();
        let sol = solve_ksfree(&g, 3, 0.5, KsBackend::Lll, 2).unwrap();
        assert!(g.is_ks_free_transversal(&sol.transversal, 3).unwrap());
        assert!(sol.residual.max_degree <= sol.degree_bound);
    }

    #[test]
    fn small_parts_are_rejected_with_stats() {
        let g = gen_random_local_sparse(10, 4, 12, 12, 5).unwrap();
        match solve_ksfree(&g, 3, 0.5, KsBackend::Lll, 2) {
            Err(Error::Input(msg)) => assert!(msg.contains("smallest part")),
            other => panic!("{other:?}"),
        }
    }
}
