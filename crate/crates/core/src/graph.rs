//! Vertex-partitioned graphs, transversals and the degree statistics the
//! solvers condition on.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type PartIndex = usize;

/// An undirected simple graph whose vertex set is split into ordered,
/// pairwise disjoint parts.
///
/// Vertex ids are labels: a graph built by a generator uses `0..N`, and
/// [`MultipartiteGraph::delete_vertices`] keeps the ids of the survivors, so
/// a transversal of a subgraph is also a vertex set of the original graph.
///
/// Neighbor lists are sorted by `(part, id)`, which turns
/// [`per_part_degree`](Self::per_part_degree) into two binary searches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultipartiteGraph {
    parts: Vec<Vec<VertexId>>,
    part_of: Vec<Option<PartIndex>>,
    edges: Vec<(VertexId, VertexId)>,
    neighbors: Vec<Vec<VertexId>>,
}

/// Summary statistics of a [`MultipartiteGraph`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub max_degree: usize,
    /// Largest number of neighbors a vertex has inside a single other part.
    pub local_degree: usize,
    pub min_part_size: usize,
    pub part_count: usize,
    pub edge_count: usize,
}

impl MultipartiteGraph {
    /// Build a graph from its parts and an edge list.
    ///
    /// Duplicate edges are merged. Edges inside a part are accepted here;
    /// the solvers reject them (see [`Self::intra_part_edge_count`]).
    pub fn new<I>(parts: Vec<Vec<VertexId>>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let universe = parts
            .iter()
            .flat_map(|p| p.iter().copied())
            .max()
            .map_or(0, |m| m + 1);
        let mut part_of = vec![None; universe];
        let mut parts = parts;
        for (i, part) in parts.iter_mut().enumerate() {
            part.sort_unstable();
            for &v in part.iter() {
                if let Some(j) = part_of[v] {
                    return Err(Error::input(format!(
                        "vertex {v} appears in parts {j} and {i}"
                    )));
                }
                part_of[v] = Some(i);
            }
        }

        let mut normalized = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if part_of.get(x).copied().flatten().is_none() {
                    return Err(Error::input(format!(
                        "edge ({u}, {v}) references unknown vertex {x}"
                    )));
                }
            }
            if u == v {
                return Err(Error::input(format!("self-loop at vertex {u}")));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        normalized.sort_unstable();
        normalized.dedup();

        Ok(Self::assemble(parts, part_of, normalized))
    }

    /// Internal constructor for already validated, sorted, deduplicated input.
    fn assemble(
        parts: Vec<Vec<VertexId>>,
        part_of: Vec<Option<PartIndex>>,
        edges: Vec<(VertexId, VertexId)>,
    ) -> Self {
        let mut neighbors = vec![Vec::new(); part_of.len()];
        for &(u, v) in &edges {
            neighbors[u].push(v);
            neighbors[v].push(u);
        }
        for list in &mut neighbors {
            list.sort_unstable_by_key(|&w| (part_of[w], w));
        }
        MultipartiteGraph {
            parts,
            part_of,
            edges,
            neighbors,
        }
    }

    /// `r` parts of `n` vertices each, no edges. Vertex `i * n + j` is the
    /// `j`-th vertex of part `i`.
    pub fn edgeless(r: usize, n: usize) -> Self {
        let parts: Vec<Vec<VertexId>> = (0..r).map(|i| (i * n..(i + 1) * n).collect()).collect();
        let part_of = (0..r * n).map(|v| Some(v / n.max(1))).collect();
        Self::assemble(parts, part_of, Vec::new())
    }

    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[Vec<VertexId>] {
        &self.parts
    }

    pub fn part(&self, k: PartIndex) -> &[VertexId] {
        &self.parts[k]
    }

    /// One past the largest vertex id ever present.
    pub fn id_bound(&self) -> usize {
        self.part_of.len()
    }

    pub fn part_of(&self, v: VertexId) -> Option<PartIndex> {
        self.part_of.get(v).copied().flatten()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.part_of(v).is_some()
    }

    pub fn vertex_count(&self) -> usize {
        self.parts.iter().map(Vec::len).sum()
    }

    /// Present vertices in part order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.parts.iter().flat_map(|p| p.iter().copied())
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Neighbors of `v` sorted by `(part, id)`. Empty for absent ids.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        self.neighbors.get(v).map_or(&[], Vec::as_slice)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors(v).len()
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_part_size(&self) -> usize {
        self.parts.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn is_adjacent(&self, u: VertexId, v: VertexId) -> bool {
        let Some(pv) = self.part_of(v) else {
            return false;
        };
        self.neighbors(u)
            .binary_search_by_key(&(Some(pv), v), |&w| (self.part_of[w], w))
            .is_ok()
    }

    /// Number of neighbors of `v` inside part `k`.
    pub fn per_part_degree(&self, v: VertexId, k: PartIndex) -> Result<usize> {
        if !self.contains(v) {
            return Err(Error::input(format!("unknown vertex {v}")));
        }
        if k >= self.part_count() {
            return Err(Error::input(format!(
                "part index {k} out of range ({} parts)",
                self.part_count()
            )));
        }
        Ok(self.neighbors_in_part(v, k).len())
    }

    /// Neighbors of `v` inside part `k` (unchecked indices).
    pub fn neighbors_in_part(&self, v: VertexId, k: PartIndex) -> &[VertexId] {
        let list = self.neighbors(v);
        let lo = list.partition_point(|&w| self.part_of[w] < Some(k));
        let hi = list.partition_point(|&w| self.part_of[w] <= Some(k));
        &list[lo..hi]
    }

    /// Largest number of neighbors `v` has inside one part other than its own.
    pub fn vertex_local_degree(&self, v: VertexId) -> usize {
        let own = self.part_of(v);
        let list = self.neighbors(v);
        let mut best = 0;
        let mut i = 0;
        while i < list.len() {
            let p = self.part_of[list[i]];
            let run = list[i..].iter().take_while(|&&w| self.part_of[w] == p).count();
            if p != own {
                best = best.max(run);
            }
            i += run;
        }
        best
    }

    pub fn compute_stats(&self) -> GraphStats {
        GraphStats {
            max_degree: self.max_degree(),
            local_degree: self
                .vertices()
                .map(|v| self.vertex_local_degree(v))
                .max()
                .unwrap_or(0),
            min_part_size: self.min_part_size(),
            part_count: self.part_count(),
            edge_count: self.edge_count(),
        }
    }

    pub fn intra_part_edge_count(&self) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v)| self.part_of[u] == self.part_of[v])
            .count()
    }

    /// Drop edges whose endpoints share a part. Returns the cleaned graph and
    /// how many edges were removed.
    pub fn without_intra_part_edges(&self) -> (Self, usize) {
        let removed = self.intra_part_edge_count();
        if removed > 0 {
            log::warn!("removing {removed} intra-part edges");
        }
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|&(u, v)| self.part_of[u] != self.part_of[v])
            .collect();
        (
            Self::assemble(self.parts.clone(), self.part_of.clone(), edges),
            removed,
        )
    }

    pub(crate) fn require_no_intra_part_edges(&self) -> Result<()> {
        match self.intra_part_edge_count() {
            0 => Ok(()),
            n => Err(Error::input(format!(
                "graph has {n} edges inside a part; normalize it first"
            ))),
        }
    }

    pub(crate) fn require_nonempty_parts(&self) -> Result<()> {
        match self.parts.iter().position(Vec::is_empty) {
            None => Ok(()),
            Some(k) => Err(Error::input(format!("part {k} is empty"))),
        }
    }

    /// Induced subgraph on the present vertices outside `removed`. Parts keep
    /// their indices, possibly becoming empty; vertex ids are unchanged.
    pub fn delete_vertices(&self, removed: &HashSet<VertexId>) -> Self {
        if removed.is_empty() {
            return self.clone();
        }
        let keep = |v: VertexId| !removed.contains(&v);
        let parts = self
            .parts
            .iter()
            .map(|p| p.iter().copied().filter(|&v| keep(v)).collect())
            .collect();
        let part_of = self
            .part_of
            .iter()
            .enumerate()
            .map(|(v, &p)| if keep(v) { p } else { None })
            .collect();
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|&(u, v)| keep(u) && keep(v))
            .collect();
        let neighbors = self
            .neighbors
            .iter()
            .enumerate()
            .map(|(v, list)| {
                if keep(v) {
                    list.iter().copied().filter(|&w| keep(w)).collect()
                } else {
                    Vec::new()
                }
            })
            .collect();
        MultipartiteGraph {
            parts,
            part_of,
            edges,
            neighbors,
        }
    }

    /// Same vertices and parts with a different edge set drawn from this
    /// graph's edges.
    pub(crate) fn with_edge_subset(&self, edges: Vec<(VertexId, VertexId)>) -> Self {
        Self::assemble(self.parts.clone(), self.part_of.clone(), edges)
    }

    /// Subgraph induced by the listed parts, in the listed order: part `i` of
    /// the result is part `keep[i]` of `self`. Vertex ids are unchanged.
    pub fn restrict_to_parts(&self, keep: &[PartIndex]) -> Self {
        let parts: Vec<Vec<VertexId>> = keep.iter().map(|&k| self.parts[k].clone()).collect();
        let mut part_of = vec![None; self.part_of.len()];
        for (i, part) in parts.iter().enumerate() {
            for &v in part {
                part_of[v] = Some(i);
            }
        }
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|&(u, v)| part_of[u].is_some() && part_of[v].is_some())
            .collect();
        Self::assemble(parts, part_of, edges)
    }

    /// Checks shared by the transversal predicates: every assigned vertex
    /// lies in the part it claims.
    fn validate_assignment(&self, t: &Transversal) -> Result<()> {
        for (k, v) in t.iter() {
            if k >= self.part_count() {
                return Err(Error::input(format!("transversal names unknown part {k}")));
            }
            if self.part_of(v) != Some(k) {
                return Err(Error::input(format!(
                    "vertex {v} is not in part {k} (found in {:?})",
                    self.part_of(v)
                )));
            }
        }
        Ok(())
    }

    pub fn is_full_transversal(&self, t: &Transversal) -> Result<bool> {
        self.validate_assignment(t)?;
        Ok(t.len() == self.part_count())
    }

    /// True iff `t` picks one vertex from every part and no two picks are
    /// adjacent.
    pub fn is_independent_transversal(&self, t: &Transversal) -> Result<bool> {
        if !self.is_full_transversal(t)? {
            return Ok(false);
        }
        let chosen: HashSet<VertexId> = t.vertices().collect();
        Ok(chosen
            .iter()
            .all(|&v| self.neighbors(v).iter().all(|w| !chosen.contains(w))))
    }

    /// True iff `t` is full and the graph induced on its vertices has no
    /// clique of order `s`.
    pub fn is_ks_free_transversal(&self, t: &Transversal, s: usize) -> Result<bool> {
        if s < 2 {
            return Err(Error::input(format!("clique order s must be >= 2, got {s}")));
        }
        if !self.is_full_transversal(t)? {
            return Ok(false);
        }
        let chosen: Vec<VertexId> = t.vertices().collect();
        Ok(!contains_clique(&chosen, s, |u, v| self.is_adjacent(u, v)))
    }
}

/// Backtracking test for a clique of order `s` among `candidates`.
pub fn contains_clique<F>(candidates: &[VertexId], s: usize, adjacent: F) -> bool
where
    F: Fn(VertexId, VertexId) -> bool,
{
    fn extend<F: Fn(VertexId, VertexId) -> bool>(
        pool: &[VertexId],
        needed: usize,
        adjacent: &F,
    ) -> bool {
        if needed == 0 {
            return true;
        }
        if pool.len() < needed {
            return false;
        }
        for (i, &v) in pool.iter().enumerate() {
            if pool.len() - i < needed {
                break;
            }
            let next: Vec<VertexId> = pool[i + 1..]
                .iter()
                .copied()
                .filter(|&w| adjacent(v, w))
                .collect();
            if extend(&next, needed - 1, adjacent) {
                return true;
            }
        }
        false
    }
    extend(candidates, s, &adjacent)
}

/// A choice of at most one vertex per part, keyed by part index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Transversal(BTreeMap<PartIndex, VertexId>);

impl Transversal {
    pub fn new() -> Self {
        Self::default()
    }

    /// Assign `v` to part `k`, returning the previous choice for `k`.
    pub fn insert(&mut self, k: PartIndex, v: VertexId) -> Option<VertexId> {
        self.0.insert(k, v)
    }

    pub fn get(&self, k: PartIndex) -> Option<VertexId> {
        self.0.get(&k).copied()
    }

    pub fn contains_part(&self, k: PartIndex) -> bool {
        self.0.contains_key(&k)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(part, vertex)` pairs in part order.
    pub fn iter(&self) -> impl Iterator<Item = (PartIndex, VertexId)> + '_ {
        self.0.iter().map(|(&k, &v)| (k, v))
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.0.values().copied()
    }

    pub fn parts(&self) -> impl Iterator<Item = PartIndex> + '_ {
        self.0.keys().copied()
    }
}

impl FromIterator<(PartIndex, VertexId)> for Transversal {
    fn from_iter<T: IntoIterator<Item = (PartIndex, VertexId)>>(iter: T) -> Self {
        Transversal(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_clique_grid, gen_disjoint_cliques};

    fn all_transversals(g: &MultipartiteGraph) -> Vec<Transversal> {
        let mut out = vec![Transversal::new()];
        for (k, part) in g.parts().iter().enumerate() {
            out = out
                .into_iter()
                .flat_map(|t| {
                    part.iter().map(move |&v| {
                        let mut t = t.clone();
                        t.insert(k, v);
                        t
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn stats_of_edgeless_graph() {
        let g = MultipartiteGraph::edgeless(3, 2);
        let s = g.compute_stats();
        assert_eq!((s.max_degree, s.local_degree), (0, 0));
        assert_eq!((s.min_part_size, s.part_count, s.edge_count), (2, 3, 0));
    }

    #[test]
    fn stats_of_empty_graph() {
        let g = MultipartiteGraph::new(vec![], vec![]).unwrap();
        assert_eq!(g.compute_stats(), GraphStats::default());
    }

    #[test]
    fn stats_of_constructions() {
        let s = gen_disjoint_cliques(2).unwrap().compute_stats();
        assert_eq!((s.max_degree, s.local_degree), (2, 1));
        let s = gen_clique_grid(4, 2).unwrap().compute_stats();
        assert_eq!((s.max_degree, s.local_degree), (4, 1));
    }

    #[test]
    fn rejects_overlapping_parts_and_unknown_endpoints() {
        assert!(MultipartiteGraph::new(vec![vec![0, 1], vec![1]], vec![]).is_err());
        assert!(MultipartiteGraph::new(vec![vec![0], vec![1]], vec![(0, 2)]).is_err());
        assert!(MultipartiteGraph::new(vec![vec![0], vec![1]], vec![(1, 1)]).is_err());
    }

    #[test]
    fn per_part_degree_counts() {
        let g = MultipartiteGraph::edgeless(2, 2);
        assert_eq!(g.per_part_degree(0, 1).unwrap(), 0);

        // Star: centre 0 in part 0, leaves 1, 2, 3 all in part 1.
        let star = MultipartiteGraph::new(vec![vec![0], vec![1, 2, 3]], vec![(0, 1), (0, 2), (0, 3)])
            .unwrap();
        assert_eq!(star.per_part_degree(0, 1).unwrap(), 3);
        assert_eq!(star.per_part_degree(0, 0).unwrap(), 0);

        // In the grid every vertex has one neighbor in each other part.
        // Vertex 2 is row 1, column 0; its neighbor in part 2 is vertex 4.
        let grid = gen_clique_grid(4, 2).unwrap();
        assert_eq!(grid.per_part_degree(2, 2).unwrap(), 1);

        assert!(g.per_part_degree(9, 0).is_err());
        assert!(g.per_part_degree(0, 5).is_err());
    }

    #[test]
    fn delete_vertices_cases() {
        let g = gen_disjoint_cliques(2).unwrap();
        assert_eq!(g.delete_vertices(&HashSet::new()), g);

        let edge = MultipartiteGraph::new(vec![vec![0], vec![1]], vec![(0, 1)]).unwrap();
        let cut = edge.delete_vertices(&HashSet::from([1]));
        assert_eq!(cut.edge_count(), 0);
        assert_eq!(cut.part(1).len(), 0);
        assert_eq!(cut.part_count(), 2);

        // Clique 0 of disjoint_cliques(2) is {0, 1, 2}.
        let rest = g.delete_vertices(&HashSet::from([0, 1, 2]));
        assert_eq!(rest.edge_count(), 3);
        assert!(rest.parts().iter().all(|p| p.len() == 1));
        assert_eq!(rest.vertices().collect::<Vec<_>>(), vec![3, 4, 5]);
    }

    #[test]
    fn independence_checks() {
        let g = MultipartiteGraph::edgeless(3, 2);
        let t: Transversal = [(0, 1), (1, 2), (2, 5)].into_iter().collect();
        assert!(g.is_independent_transversal(&t).unwrap());

        let edge = MultipartiteGraph::new(vec![vec![0], vec![1]], vec![(0, 1)]).unwrap();
        let t: Transversal = [(0, 0), (1, 1)].into_iter().collect();
        assert!(!edge.is_independent_transversal(&t).unwrap());

        let cliques = gen_disjoint_cliques(2).unwrap();
        let all = all_transversals(&cliques);
        assert_eq!(all.len(), 8);
        for t in &all {
            assert!(!cliques.is_independent_transversal(t).unwrap());
        }
    }

    #[test]
    fn wrong_part_claim_is_an_error() {
        let g = MultipartiteGraph::edgeless(2, 2);
        let t: Transversal = [(0, 2), (1, 3)].into_iter().collect();
        assert!(g.is_independent_transversal(&t).is_err());
        assert!(g.is_ks_free_transversal(&t, 3).is_err());
    }

    #[test]
    fn partial_transversal_is_not_independent_transversal() {
        let g = MultipartiteGraph::edgeless(2, 2);
        let t: Transversal = [(0, 0)].into_iter().collect();
        assert!(!g.is_independent_transversal(&t).unwrap());
    }

    #[test]
    fn ks_free_checks() {
        let grid = gen_clique_grid(4, 2).unwrap();
        let all = all_transversals(&grid);
        assert_eq!(all.len(), 32);
        for t in &all {
            assert!(!grid.is_ks_free_transversal(t, 3).unwrap());
        }

        let tri = gen_clique_grid(2, 1).unwrap();
        let t: Transversal = [(0, 0), (1, 1), (2, 2)].into_iter().collect();
        assert!(tri.is_ks_free_transversal(&t, 4).unwrap());
        assert!(!tri.is_ks_free_transversal(&t, 3).unwrap());
        assert!(tri.is_ks_free_transversal(&t, 1).is_err());
    }

    #[test]
    fn intra_part_edges_are_normalized() {
        let g = MultipartiteGraph::new(vec![vec![0, 1], vec![2]], vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.intra_part_edge_count(), 1);
        assert!(g.require_no_intra_part_edges().is_err());
        let (clean, removed) = g.without_intra_part_edges();
        assert_eq!(removed, 1);
        assert_eq!(clean.edges(), &[(1, 2)]);
        // Intra-part neighbors never count towards local degree.
        assert_eq!(g.compute_stats().local_degree, 1);
    }

    #[test]
    fn restrict_to_parts_reorders() {
        let g = gen_disjoint_cliques(2).unwrap();
        let h = g.restrict_to_parts(&[2, 0]);
        assert_eq!(h.part_count(), 2);
        assert_eq!(h.part(0), g.part(2));
        assert_eq!(h.part_of(2), Some(0));
        assert_eq!(h.edge_count(), 2);
    }
}
