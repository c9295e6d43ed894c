//! Exact search for independent and `K_s`-free transversals on small
//! instances.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{contains_clique, MultipartiteGraph, Transversal, VertexId};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleMode {
    /// Stop at the first witness.
    Decide,
    /// Count every valid full transversal.
    Count,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub exists: bool,
    pub witness: Option<Transversal>,
    pub count: Option<u64>,
    pub nodes_explored: u64,
}

struct Search<'a> {
    g: &'a MultipartiteGraph,
    s: usize,
    mode: OracleMode,
    budget: u64,
    nodes: u64,
    count: u64,
    chosen: Vec<VertexId>,
    witness: Option<Vec<VertexId>>,
}

impl Search<'_> {
    /// Does the newest vertex close a `K_s` with the earlier picks?
    fn closes_clique(&self, v: VertexId) -> bool {
        let nbrs: Vec<VertexId> = self
            .chosen
            .iter()
            .copied()
            .filter(|&u| self.g.is_adjacent(u, v))
            .collect();
        contains_clique(&nbrs, self.s - 1, |a, b| self.g.is_adjacent(a, b))
    }

    /// Returns `true` when the search should stop.
    fn descend(&mut self, k: usize) -> Result<bool> {
        if k == self.g.part_count() {
            self.count += 1;
            if self.witness.is_none() {
                self.witness = Some(self.chosen.clone());
            }
            return Ok(self.mode == OracleMode::Decide);
        }
        for &v in self.g.part(k) {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::Budget(format!(
                    "oracle explored more than {} nodes",
                    self.budget
                )));
            }
            if self.closes_clique(v) {
                continue;
            }
            self.chosen.push(v);
            let stop = self.descend(k + 1)?;
            self.chosen.pop();
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Depth-first search over parts in index order, pruning as soon as the
/// newest pick completes a clique of order `s`.
pub fn brute_force_transversal(
    g: &MultipartiteGraph,
    s: usize,
    mode: OracleMode,
    node_budget: u64,
) -> Result<OracleResult> {
    if s < 2 {
        return Err(Error::input(format!("clique order s must be >= 2, got {s}")));
    }
    let mut search = Search {
        g,
        s,
        mode,
        budget: node_budget,
        nodes: 0,
        count: 0,
        chosen: Vec::with_capacity(g.part_count()),
        witness: None,
    };
    search.descend(0)?;
    let witness = search
        .witness
        .map(|vs| vs.into_iter().enumerate().collect::<Transversal>());
    Ok(OracleResult {
        exists: witness.is_some(),
        witness,
        count: (mode == OracleMode::Count).then_some(search.count),
        nodes_explored: search.nodes,
    })
}

/// `true` iff the graph has no `K_s`-free transversal.
pub fn certify_no_transversal(g: &MultipartiteGraph, s: usize) -> Result<bool> {
    Ok(!brute_force_transversal(g, s, OracleMode::Decide, DEFAULT_NODE_BUDGET)?.exists)
}

/// Count valid transversals by checking every element of the product of the
/// parts, with no pruning. Cross-check for [`brute_force_transversal`].
pub fn count_by_enumeration(g: &MultipartiteGraph, s: usize) -> Result<u64> {
    let r = g.part_count();
    if g.parts().iter().any(Vec::is_empty) {
        return Ok(0);
    }
    let mut digits = vec![0usize; r];
    let mut count = 0;
    loop {
        let t: Transversal = digits
            .iter()
            .enumerate()
            .map(|(k, &d)| (k, g.part(k)[d]))
            .collect();
        if g.is_ks_free_transversal(&t, s)? {
            count += 1;
        }
        // Odometer increment.
        let mut k = 0;
        loop {
            if k == r {
                return Ok(count);
            }
            digits[k] += 1;
            if digits[k] < g.part(k).len() {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}
