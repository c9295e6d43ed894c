//! Instance generators: the extremal constructions, the list-coloring and
//! graph-family reductions, and seeded random instances with bounded degree
//! and bounded local degree.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use rand::seq::index;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{MultipartiteGraph, PartIndex, Transversal, VertexId};
use crate::oracle::{brute_force_transversal, OracleMode, DEFAULT_NODE_BUDGET};
use crate::seed::rng_from_seed;

/// `delta` vertex-disjoint cliques of order `delta + 1`, partitioned into
/// `delta + 1` parts so that each clique has one vertex in every part.
///
/// Max degree `delta`, local degree 1, parts of size `delta`, and no
/// independent transversal: the parts are one vertex too small.
///
/// The vertex of clique `c` in part `i` has id `c * (delta + 1) + i`.
pub fn gen_disjoint_cliques(delta: usize) -> Result<MultipartiteGraph> {
    if delta < 1 {
        return Err(Error::input("disjoint cliques need delta >= 1"));
    }
    let order = delta + 1;
    let parts = (0..order)
        .map(|i| (0..delta).map(|c| c * order + i).collect())
        .collect();
    let mut edges = Vec::new();
    for c in 0..delta {
        for i in 0..order {
            for j in i + 1..order {
                edges.push((c * order + i, c * order + j));
            }
        }
    }
    MultipartiteGraph::new(parts, edges)
}

/// Grid on `{0..=delta} x {0..n}`: part `i` is row `i`, and each column is a
/// clique of order `delta + 1`. Vertex `(i, j)` has id `i * n + j`.
///
/// When `n * (s - 1) < delta + 1` a transversal must put `s` vertices into
/// some column, so there is no `K_s`-free transversal.
pub fn gen_clique_grid(delta: usize, n: usize) -> Result<MultipartiteGraph> {
    if delta < 1 || n < 1 {
        return Err(Error::input("clique grid needs delta >= 1 and n >= 1"));
    }
    let rows = delta + 1;
    let parts = (0..rows)
        .map(|i| (0..n).map(|j| i * n + j).collect())
        .collect();
    let mut edges = Vec::new();
    for j in 0..n {
        for i in 0..rows {
            for k in i + 1..rows {
                edges.push((i * n + j, k * n + j));
            }
        }
    }
    MultipartiteGraph::new(parts, edges)
}

/// Number of vertices in the union of `2 delta - 1` copies of `K_{delta,delta}`.
pub fn bipartite_union_order(delta: usize) -> usize {
    2 * delta * (2 * delta - 1)
}

/// Disjoint union of `2 delta - 1` copies of `K_{delta,delta}`, split into
/// `2 delta` parts of size `2 delta - 1` by `assignment[v] = part of v`.
///
/// Copy `k` has left side `k * 2delta + (0..delta)` and right side
/// `k * 2delta + delta + (0..delta)`.
pub fn gen_bipartite_union(delta: usize, assignment: &[PartIndex]) -> Result<MultipartiteGraph> {
    if delta < 1 {
        return Err(Error::input("bipartite union needs delta >= 1"));
    }
    let order = bipartite_union_order(delta);
    let part_count = 2 * delta;
    let part_size = 2 * delta - 1;
    if assignment.len() != order {
        return Err(Error::input(format!(
            "assignment covers {} vertices, expected {order}",
            assignment.len()
        )));
    }
    let mut parts = vec![Vec::new(); part_count];
    for (v, &p) in assignment.iter().enumerate() {
        if p >= part_count {
            return Err(Error::input(format!(
                "vertex {v} assigned to part {p}, expected fewer than {part_count} parts"
            )));
        }
        parts[p].push(v);
    }
    if let Some((k, part)) = parts.iter().enumerate().find(|(_, p)| p.len() != part_size) {
        return Err(Error::input(format!(
            "part {k} has {} vertices, expected {part_size}",
            part.len()
        )));
    }
    let mut edges = Vec::new();
    for copy in 0..part_size {
        let base = copy * 2 * delta;
        for a in 0..delta {
            for b in 0..delta {
                edges.push((base + a, base + delta + b));
            }
        }
    }
    MultipartiteGraph::new(parts, edges)
}

/// Exhaustively search part assignments of the bipartite union for one with
/// no independent transversal. Only feasible for `delta <= 2`.
///
/// Part 0 always contains vertex 0 and parts are filled in order of their
/// smallest vertex, so each set partition is visited once.
pub fn find_no_it_assignment(delta: usize) -> Result<Option<Vec<PartIndex>>> {
    if !(1..=2).contains(&delta) {
        return Err(Error::input("assignment search is limited to delta <= 2"));
    }
    let order = bipartite_union_order(delta);
    let part_size = 2 * delta - 1;

    fn search(
        delta: usize,
        remaining: &[VertexId],
        part_size: usize,
        current: &mut Vec<Vec<VertexId>>,
    ) -> Result<Option<Vec<PartIndex>>> {
        if remaining.is_empty() {
            let mut assignment = vec![0; bipartite_union_order(delta)];
            for (k, part) in current.iter().enumerate() {
                for &v in part {
                    assignment[v] = k;
                }
            }
            let g = gen_bipartite_union(delta, &assignment)?;
            let res = brute_force_transversal(&g, 2, OracleMode::Decide, DEFAULT_NODE_BUDGET)?;
            return Ok((!res.exists).then_some(assignment));
        }
        let first = remaining[0];
        let rest = &remaining[1..];
        for combo in combinations(rest, part_size - 1) {
            let mut part = vec![first];
            part.extend(&combo);
            let left: Vec<VertexId> = rest.iter().copied().filter(|v| !combo.contains(v)).collect();
            current.push(part);
            if let Some(found) = search(delta, &left, part_size, current)? {
                return Ok(Some(found));
            }
            current.pop();
        }
        Ok(None)
    }

    let all: Vec<VertexId> = (0..order).collect();
    search(delta, &all, part_size, &mut Vec::new())
}

fn combinations(items: &[VertexId], k: usize) -> Vec<Vec<VertexId>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut tail in combinations(&items[i + 1..], k - 1) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

/// Proposals per unit of target degree in [`gen_random_local_sparse`].
pub const PROPOSALS_PER_DEGREE_SLOT: usize = 2;

/// Random graph on `r` parts of `n` vertices with `deg(v) <= delta` and at
/// most `local` neighbors of any vertex in any other part.
///
/// Edges come from rejection sampling: a uniform pair of vertices in
/// distinct parts is accepted when it is new and both caps still hold. The
/// number of proposals is fixed at `PROPOSALS_PER_DEGREE_SLOT * r * n *
/// min(delta, local * (r - 1))`, so the output depends only on the seed.
pub fn gen_random_local_sparse(
    r: usize,
    n: usize,
    delta: usize,
    local: usize,
    seed: u64,
) -> Result<MultipartiteGraph> {
    if r < 1 || n < 1 {
        return Err(Error::input("random instance needs r >= 1 and n >= 1"));
    }
    if local > delta {
        return Err(Error::input(format!(
            "local degree cap {local} exceeds degree cap {delta}"
        )));
    }
    let reachable = local.saturating_mul(r - 1);
    if reachable < delta {
        log::warn!(
            "local cap {local} over {} other parts allows degree {reachable} < {delta}; saturating",
            r - 1
        );
    }
    let target = delta.min(reachable);
    let total = r * n;
    let budget = PROPOSALS_PER_DEGREE_SLOT * total * target;

    let mut rng = rng_from_seed(seed);
    let mut degree = vec![0usize; total];
    let mut into_part: HashMap<(VertexId, PartIndex), usize> = HashMap::new();
    let mut seen: HashSet<(VertexId, VertexId)> = HashSet::new();
    let mut edges = Vec::new();
    let mut full = 0usize;
    for _ in 0..budget {
        if full == total {
            break;
        }
        let u = rng.gen_range(0..total);
        let v = rng.gen_range(0..total);
        let (pu, pv) = (u / n, v / n);
        if pu == pv || degree[u] >= delta || degree[v] >= delta {
            continue;
        }
        let key = (u.min(v), u.max(v));
        if seen.contains(&key) {
            continue;
        }
        let cu = into_part.get(&(u, pv)).copied().unwrap_or(0);
        let cv = into_part.get(&(v, pu)).copied().unwrap_or(0);
        if cu >= local || cv >= local {
            continue;
        }
        seen.insert(key);
        edges.push(key);
        *into_part.entry((u, pv)).or_default() += 1;
        *into_part.entry((v, pu)).or_default() += 1;
        for x in [u, v] {
            degree[x] += 1;
            if degree[x] == delta {
                full += 1;
            }
        }
    }
    let parts = (0..r).map(|i| (i * n..(i + 1) * n).collect()).collect();
    MultipartiteGraph::new(parts, edges)
}

/// A list-coloring problem: host graph plus a list of allowed colors per
/// host vertex. The host vertex set is the key set of `lists`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListColoringInstance {
    pub edges: Vec<(usize, usize)>,
    pub lists: BTreeMap<usize, Vec<usize>>,
}

impl ListColoringInstance {
    pub fn validate(&self) -> Result<()> {
        if let Some((v, _)) = self.lists.iter().find(|(_, l)| l.is_empty()) {
            return Err(Error::input(format!("host vertex {v} has an empty list")));
        }
        for &(u, w) in &self.edges {
            if u == w {
                return Err(Error::input(format!("host self-loop at {u}")));
            }
            for x in [u, w] {
                if !self.lists.contains_key(&x) {
                    return Err(Error::input(format!("host vertex {x} has no list")));
                }
            }
        }
        Ok(())
    }

    /// Every host vertex gets a color from its list and no host edge is
    /// monochromatic.
    pub fn is_proper_coloring(&self, coloring: &BTreeMap<usize, usize>) -> bool {
        self.lists.iter().all(|(v, list)| {
            coloring.get(v).is_some_and(|c| list.contains(c))
        }) && self
            .edges
            .iter()
            .all(|(u, w)| coloring.get(u) != coloring.get(w))
    }
}

/// Output of [`reduce_list_coloring`] together with the labels needed to map
/// a transversal back to a coloring.
#[derive(Clone, Debug)]
pub struct ListColoringReduction {
    pub graph: MultipartiteGraph,
    /// `labels[v] = (host vertex, color)` for each vertex id of `graph`.
    pub labels: Vec<(usize, usize)>,
}

impl ListColoringReduction {
    pub fn coloring_from(&self, t: &Transversal) -> BTreeMap<usize, usize> {
        t.vertices().map(|v| self.labels[v]).collect()
    }
}

/// One part per host vertex `v` holding the pairs `(v, c)` for `c` in its
/// list; `(v, c) ~ (w, c)` when `v ~ w` in the host and `c` is in both lists.
/// Parts follow the host vertex order; the local degree is at most 1.
pub fn reduce_list_coloring(inst: &ListColoringInstance) -> Result<ListColoringReduction> {
    inst.validate()?;
    let mut labels = Vec::new();
    let mut id_of: HashMap<(usize, usize), VertexId> = HashMap::new();
    let mut parts = Vec::with_capacity(inst.lists.len());
    for (&v, list) in &inst.lists {
        let colors: BTreeSet<usize> = list.iter().copied().collect();
        let mut part = Vec::with_capacity(colors.len());
        for c in colors {
            id_of.insert((v, c), labels.len());
            part.push(labels.len());
            labels.push((v, c));
        }
        parts.push(part);
    }
    let mut edges = Vec::new();
    for &(u, w) in &inst.edges {
        for &c in &inst.lists[&u] {
            if let Some(&y) = id_of.get(&(w, c)) {
                edges.push((id_of[&(u, c)], y));
            }
        }
    }
    Ok(ListColoringReduction {
        graph: MultipartiteGraph::new(parts, edges)?,
        labels,
    })
}

/// Random list-coloring instance: a host on `vertices` vertices with maximum
/// degree at most `max_degree`, each list a uniform `list_size`-subset of
/// the palette `0..palette`.
pub fn gen_random_list_coloring(
    vertices: usize,
    max_degree: usize,
    list_size: usize,
    palette: usize,
    seed: u64,
) -> Result<ListColoringInstance> {
    if list_size == 0 || list_size > palette {
        return Err(Error::input("need 0 < list_size <= palette"));
    }
    let mut rng = rng_from_seed(seed);
    let mut degree = vec![0usize; vertices];
    let mut seen = HashSet::new();
    let mut edges = Vec::new();
    if vertices >= 2 {
        for _ in 0..PROPOSALS_PER_DEGREE_SLOT * vertices * max_degree {
            let u = rng.gen_range(0..vertices);
            let w = rng.gen_range(0..vertices);
            if u == w || degree[u] >= max_degree || degree[w] >= max_degree {
                continue;
            }
            if seen.insert((u.min(w), u.max(w))) {
                edges.push((u.min(w), u.max(w)));
                degree[u] += 1;
                degree[w] += 1;
            }
        }
    }
    let lists = (0..vertices)
        .map(|v| {
            let mut list = index::sample(&mut rng, palette, list_size).into_vec();
            list.sort_unstable();
            (v, list)
        })
        .collect();
    Ok(ListColoringInstance { edges, lists })
}

/// `n` graphs on the shared vertex set `0..vertices`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFamilyInstance {
    pub vertices: usize,
    pub graphs: Vec<Vec<(usize, usize)>>,
}

impl GraphFamilyInstance {
    pub fn copies(&self) -> usize {
        self.graphs.len()
    }

    /// Id of copy `i` of host vertex `v` in the reduced graph.
    pub fn copy_id(&self, v: usize, i: usize) -> VertexId {
        v * self.copies() + i
    }

    fn validate(&self) -> Result<()> {
        for (i, h) in self.graphs.iter().enumerate() {
            for &(u, w) in h {
                if u == w || u >= self.vertices || w >= self.vertices {
                    return Err(Error::input(format!("graph {i} has invalid edge ({u}, {w})")));
                }
            }
        }
        Ok(())
    }
}

/// Part `v` holds the `n` copies of host vertex `v`; copy `i` of `v` is
/// joined to copy `i` of `w` whenever `v ~ w` in the `i`-th graph.
pub fn reduce_graph_family(inst: &GraphFamilyInstance) -> Result<MultipartiteGraph> {
    inst.validate()?;
    let parts = (0..inst.vertices)
        .map(|v| (0..inst.copies()).map(|i| inst.copy_id(v, i)).collect())
        .collect();
    let edges: Vec<_> = inst
        .graphs
        .iter()
        .enumerate()
        .flat_map(|(i, h)| h.iter().map(move |&(u, w)| (inst.copy_id(u, i), inst.copy_id(w, i))))
        .collect();
    MultipartiteGraph::new(parts, edges)
}

/// Map an independent transversal of [`reduce_graph_family`]'s output to
/// the classes `I_1..I_n`, where `I_i` holds the host vertices whose chosen
/// copy is copy `i`.
pub fn transversal_to_partition(
    inst: &GraphFamilyInstance,
    t: &Transversal,
) -> Result<Vec<Vec<usize>>> {
    let g = reduce_graph_family(inst)?;
    if !g.is_independent_transversal(t)? {
        return Err(Error::input("transversal is not an independent transversal"));
    }
    let mut classes = vec![Vec::new(); inst.copies()];
    for (v, copy) in t.iter() {
        classes[copy % inst.copies()].push(v);
    }
    Ok(classes)
}
