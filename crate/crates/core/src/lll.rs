//! Sample-and-resample search for an independent transversal.
//!
//! Each part is a random variable (its chosen vertex) and each edge is a bad
//! event that occurs when both endpoints are chosen. Resampling the two
//! parts of a violated edge until nothing is violated terminates quickly
//! whenever the local lemma condition `e p (d + 1) <= 1` holds, which for
//! uniform choices means parts of size at least `2e * max_degree`.

use std::collections::BTreeSet;
use std::f64::consts::E;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{MultipartiteGraph, Transversal, VertexId};
use crate::seed::{rng_from_seed, SolverRng};

pub const DEFAULT_MAX_RESAMPLES: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LllReport {
    pub success: bool,
    pub resample_count: u64,
    pub transversal: Option<Transversal>,
    /// `e * p * (d + 1)` for the instance; at most 1 certifies existence.
    pub condition_margin: f64,
}

/// `e * p * (d + 1)` with `p` the largest probability of an edge event,
/// `max 1 / (|part(u)| |part(v)|)`, and `d = 2 * max_part_size * max_degree - 1`
/// the dependency bound. Zero for an edgeless graph.
pub fn lll_condition_check(g: &MultipartiteGraph) -> Result<f64> {
    g.require_nonempty_parts()?;
    let size = |v: VertexId| g.part(g.part_of(v).expect("edge endpoint present")).len() as f64;
    let p = g
        .edges()
        .iter()
        .map(|&(u, v)| 1.0 / (size(u) * size(v)))
        .fold(0.0, f64::max);
    if p == 0.0 {
        return Ok(0.0);
    }
    let largest = g.parts().iter().map(Vec::len).max().unwrap_or(0) as f64;
    let d = 2.0 * largest * g.max_degree() as f64 - 1.0;
    Ok(E * p * (d + 1.0))
}

fn pick(g: &MultipartiteGraph, k: usize, rng: &mut SolverRng) -> VertexId {
    let part = g.part(k);
    part[rng.gen_range(0..part.len())]
}

/// One uniformly random vertex from every part, independently.
pub fn sample_transversal(g: &MultipartiteGraph, seed: u64) -> Result<Transversal> {
    g.require_nonempty_parts()?;
    let mut rng = rng_from_seed(seed);
    Ok((0..g.part_count()).map(|k| (k, pick(g, k, &mut rng))).collect())
}

/// Resample violated edges, lowest edge index first, until the sample is an
/// independent transversal or `max_resamples` resampling steps were spent.
pub fn moser_tardos_it(g: &MultipartiteGraph, seed: u64, max_resamples: u64) -> Result<LllReport> {
    g.require_nonempty_parts()?;
    g.require_no_intra_part_edges()?;
    let condition_margin = lll_condition_check(g)?;

    let mut rng = rng_from_seed(seed);
    let mut choice: Vec<VertexId> = (0..g.part_count()).map(|k| pick(g, k, &mut rng)).collect();
    let mut selected = vec![false; g.id_bound()];
    for &v in &choice {
        selected[v] = true;
    }

    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); g.id_bound()];
    for (id, &(u, v)) in g.edges().iter().enumerate() {
        incident[u].push(id);
        incident[v].push(id);
    }
    let mut violated: BTreeSet<usize> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, &(u, v))| selected[u] && selected[v])
        .map(|(id, _)| id)
        .collect();

    let mut resamples = 0u64;
    while let Some(&id) = violated.iter().next() {
        if resamples >= max_resamples {
            return Ok(LllReport {
                success: false,
                resample_count: resamples,
                transversal: None,
                condition_margin,
            });
        }
        resamples += 1;
        let (a, b) = g.edges()[id];
        for x in [a, b] {
            let k = g.part_of(x).expect("edge endpoint present");
            let old = choice[k];
            selected[old] = false;
            for &e in &incident[old] {
                violated.remove(&e);
            }
            let new = pick(g, k, &mut rng);
            choice[k] = new;
            selected[new] = true;
            for &e in &incident[new] {
                let (u, v) = g.edges()[e];
                if selected[u] && selected[v] {
                    violated.insert(e);
                }
            }
        }
    }

    let transversal: Transversal = choice.into_iter().enumerate().collect();
    if !g.is_independent_transversal(&transversal)? {
        return Err(Error::solver(
            crate::error::Stage::Lll,
            "internal: violated-edge bookkeeping disagrees with a full re-scan",
        ));
    }
    Ok(LllReport {
        success: true,
        resample_count: resamples,
        transversal: Some(transversal),
        condition_margin,
    })
}
