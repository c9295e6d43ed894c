//! Local degree reduction.
//!
//! Turns an instance with local degree at most `gamma * delta` into one with
//! local degree below 10 by repeatedly halving every part (keeping one vertex
//! of each mate pair) and finally keeping each vertex independently with
//! probability `delta^(-2/3)`. Each random step is repeated until its
//! acceptance predicate holds, and every predicate is checked on the graph
//! actually produced.
//!
//! Logarithms are natural. Real-valued thresholds are compared against
//! integer statistics without rounding.

use std::collections::HashSet;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result, Stage};
use crate::graph::{MultipartiteGraph, VertexId};
use crate::seed::{derive_seed, rng_from_seed};

pub const DEFAULT_MAX_RETRIES: usize = 1000;

/// Largest number of kept neighbors a vertex may have inside one part after
/// subsampling, plus one.
pub const SUBSAMPLE_LOCAL_LIMIT: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReductionCase {
    /// `gamma^(-4/3) >= delta`: subsample directly.
    Direct,
    /// Halve `j` times, then subsample.
    Halving,
}

/// Claims the halving schedule relies on, evaluated for the
/// concrete parameters. They are asymptotic and often fail for small `delta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ScheduleClaims {
    /// `gamma^(-4/3) / 2 < delta_j`
    pub final_degree_lower: bool,
    /// `delta_j <= (1 + eps/4) delta / 2^j`
    pub final_degree_upper: bool,
    /// `d_j <= 8 delta_j^(1/4)`
    pub final_local_small: bool,
    /// `d_t > ln^4 delta_t` for every `t < j`
    pub local_above_log4: bool,
    /// `delta_j^(1/3) <= delta^(1/3) / 2^(j/3) + 4`, and the same for `d`.
    pub cube_root_telescoping: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReductionSchedule {
    pub case: ReductionCase,
    pub j: u32,
    pub gamma: f64,
    pub epsilon: f64,
    /// `delta_0 ..= delta_j`
    pub delta_seq: Vec<f64>,
    /// `d_0 ..= d_j`
    pub d_seq: Vec<f64>,
    /// `None` in the direct case.
    pub claims: Option<ScheduleClaims>,
    /// The halving argument assumes `epsilon < 1`.
    pub epsilon_at_least_one: bool,
}

impl ReductionSchedule {
    pub fn halvings(&self) -> u32 {
        self.j
    }

    pub fn final_delta(&self) -> f64 {
        *self.delta_seq.last().expect("schedule has delta_0")
    }

    pub fn final_d(&self) -> f64 {
        *self.d_seq.last().expect("schedule has d_0")
    }
}

/// One step of `x -> x/2 + x^(2/3)`.
pub fn halving_step(x: f64) -> f64 {
    x / 2.0 + x.powf(2.0 / 3.0)
}

/// Smallest `j >= 1` with `2^(j-1) < x <= 2^j`. `log2(x)` within `1e-9` of
/// an integer is snapped to it, so exact powers of two are not pushed up a
/// level by rounding in `powf`.
fn halving_count(x: f64) -> u32 {
    let l = x.log2();
    let snapped = if (l - l.round()).abs() < 1e-9 { l.round() } else { l };
    (snapped.ceil() as i64).max(1) as u32
}

/// Decide between the direct and halving cases and lay out the halving
/// schedule.
pub fn plan_reduction(delta: usize, gamma: f64, epsilon: f64) -> Result<ReductionSchedule> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::input(format!("gamma must lie in (0, 1), got {gamma}")));
    }
    if delta < 1 {
        return Err(Error::input("delta must be >= 1"));
    }
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::input(format!("epsilon must be positive, got {epsilon}")));
    }
    let dl = delta as f64;
    let epsilon_at_least_one = epsilon >= 1.0;
    if epsilon_at_least_one {
        log::warn!("epsilon = {epsilon} >= 1: the halving bounds assume epsilon < 1");
    }
    let d0 = gamma * dl;
    if gamma.powf(-4.0 / 3.0) >= dl {
        return Ok(ReductionSchedule {
            case: ReductionCase::Direct,
            j: 0,
            gamma,
            epsilon,
            delta_seq: vec![dl],
            d_seq: vec![d0],
            claims: None,
            epsilon_at_least_one,
        });
    }

    let j = halving_count(gamma.powf(4.0 / 3.0) * dl);
    let mut delta_seq = vec![dl];
    let mut d_seq = vec![d0];
    for _ in 0..j {
        delta_seq.push(halving_step(*delta_seq.last().unwrap()));
        d_seq.push(halving_step(*d_seq.last().unwrap()));
    }
    let pow2j = 2f64.powi(j as i32);
    let dj = delta_seq[j as usize];
    let d_j = d_seq[j as usize];
    let shrink = pow2j.powf(1.0 / 3.0);
    let claims = ScheduleClaims {
        final_degree_lower: gamma.powf(-4.0 / 3.0) / 2.0 < dj,
        final_degree_upper: dj <= (1.0 + epsilon / 4.0) * dl / pow2j,
        final_local_small: d_j <= 8.0 * dj.powf(0.25),
        local_above_log4: (0..j as usize).all(|t| d_seq[t] > delta_seq[t].ln().powi(4)),
        cube_root_telescoping: dj.cbrt() <= dl.cbrt() / shrink + 4.0
            && d_j.cbrt() <= d0.cbrt() / shrink + 4.0,
    };
    Ok(ReductionSchedule {
        case: ReductionCase::Halving,
        j,
        gamma,
        epsilon,
        delta_seq,
        d_seq,
        claims: Some(claims),
        epsilon_at_least_one,
    })
}

/// A graph produced by a rejection-sampled step, with the number of attempts
/// it took.
#[derive(Clone, Debug)]
pub struct Accepted {
    pub graph: MultipartiteGraph,
    pub attempts: usize,
}

/// Keep one vertex of every mate pair in every part (mates are consecutive
/// vertices in stored order), retrying until the result has maximum degree
/// at most `D/2 + D^(2/3)` and local degree at most `d/2 + d^(2/3)`, where
/// `D` is the maximum degree of `g`.
pub fn random_halving(
    g: &MultipartiteGraph,
    d: f64,
    seed: u64,
    max_retries: usize,
) -> Result<Accepted> {
    if let Some((k, part)) = g.parts().iter().enumerate().find(|(_, p)| p.len() % 2 == 1) {
        return Err(Error::input(format!(
            "part {k} has odd size {}; halving needs even parts",
            part.len()
        )));
    }
    let local = g.compute_stats().local_degree;
    if (local as f64) > d {
        return Err(Error::input(format!(
            "local degree {local} exceeds the declared bound {d}"
        )));
    }
    let big = g.max_degree() as f64;
    let degree_cap = halving_step(big);
    let local_cap = halving_step(d);

    let mut best: Option<(usize, usize)> = None;
    for attempt in 0..max_retries.max(1) {
        let mut rng = rng_from_seed(derive_seed(seed, &[attempt as u64]));
        let mut dropped = HashSet::with_capacity(g.vertex_count() / 2);
        for part in g.parts() {
            for pair in part.chunks_exact(2) {
                dropped.insert(pair[usize::from(rng.gen_bool(0.5))]);
            }
        }
        let h = g.delete_vertices(&dropped);
        let s = h.compute_stats();
        if (s.max_degree as f64) <= degree_cap && (s.local_degree as f64) <= local_cap {
            return Ok(Accepted {
                graph: h,
                attempts: attempt + 1,
            });
        }
        if best.is_none_or(|(m, l)| (s.max_degree, s.local_degree) < (m, l)) {
            best = Some((s.max_degree, s.local_degree));
        }
    }
    let (m, l) = best.unwrap_or_default();
    Err(Error::solver(
        Stage::Halving,
        format!(
            "no acceptable halving in {max_retries} attempts: need max degree <= {degree_cap:.3} \
             and local degree <= {local_cap:.3}, best attempt had {m} and {l}"
        ),
    ))
}

/// Part size `(1 + eps) delta` rounded up: the truncation target before
/// subsampling.
fn subsample_part_size(delta: f64, epsilon: f64) -> usize {
    ((1.0 + epsilon) * delta - 1e-9).ceil().max(0.0) as usize
}

/// Outcome counters of one subsampling attempt.
#[derive(Clone, Copy, Debug, Default)]
struct SubsampleCheck {
    max_kept_neighbors: usize,
    max_kept_in_part: usize,
    min_kept_part: usize,
}

/// Subsample with `delta` taken to be the maximum degree of `g` (at least 1).
pub fn subsample_sparsify(
    g: &MultipartiteGraph,
    epsilon: f64,
    seed: u64,
    max_retries: usize,
) -> Result<Accepted> {
    let delta = g.max_degree().max(1) as f64;
    subsample_sparsify_with_delta(g, delta, epsilon, seed, max_retries)
}

/// Keep each vertex independently with probability `delta^(-2/3)` after
/// truncating every part to `(1 + eps) delta` vertices. An attempt is
/// accepted when
///
/// * (A) every vertex has at most `(1 + eps/3) delta^(1/3)` kept neighbors,
/// * (B) no vertex has 10 or more kept neighbors in a single other part,
/// * (C) every part keeps at least `(1 + 2eps/3) delta^(1/3)` vertices.
///
/// `delta` must bound the maximum degree of `g`; the local degree of `g`
/// must be at most `delta^(1/3)` and all parts at least `(1 + eps) delta`.
pub fn subsample_sparsify_with_delta(
    g: &MultipartiteGraph,
    delta: f64,
    epsilon: f64,
    seed: u64,
    max_retries: usize,
) -> Result<Accepted> {
    if epsilon.is_nan() || epsilon <= 0.0 || delta.is_nan() || delta < 1.0 {
        return Err(Error::input(format!(
            "subsampling needs epsilon > 0 and delta >= 1, got {epsilon} and {delta}"
        )));
    }
    g.require_no_intra_part_edges()?;
    let stats = g.compute_stats();
    if stats.max_degree as f64 > delta {
        return Err(Error::input(format!(
            "maximum degree {} exceeds the declared bound {delta}",
            stats.max_degree
        )));
    }
    let cube = delta.cbrt();
    if stats.local_degree as f64 > cube {
        return Err(Error::input(format!(
            "local degree {} exceeds delta^(1/3) = {cube:.3}",
            stats.local_degree
        )));
    }
    let target = subsample_part_size(delta, epsilon);
    if stats.min_part_size < target || g.part_count() == 0 {
        return Err(Error::input(format!(
            "smallest part has {} vertices, need (1 + eps) delta = {:.3}",
            stats.min_part_size,
            (1.0 + epsilon) * delta
        )));
    }
    // Drop the last vertices of each part so every part has exactly `target`.
    let surplus: HashSet<VertexId> = g
        .parts()
        .iter()
        .flat_map(|p| p[target..].iter().copied())
        .collect();
    let g = g.delete_vertices(&surplus);

    let p = delta.powf(-2.0 / 3.0);
    let degree_cap = (1.0 + epsilon / 3.0) * cube;
    let part_floor = (1.0 + 2.0 * epsilon / 3.0) * cube;

    let mut last = SubsampleCheck::default();
    for attempt in 0..max_retries.max(1) {
        let mut rng = rng_from_seed(derive_seed(seed, &[attempt as u64]));
        let mut kept = vec![false; g.id_bound()];
        let mut dropped = HashSet::new();
        for v in g.vertices() {
            if rng.gen_bool(p.min(1.0)) {
                kept[v] = true;
            } else {
                dropped.insert(v);
            }
        }
        let check = check_subsample(&g, &kept);
        last = check;
        if check.max_kept_neighbors as f64 <= degree_cap
            && check.max_kept_in_part < SUBSAMPLE_LOCAL_LIMIT
            && check.min_kept_part as f64 >= part_floor
        {
            return Ok(Accepted {
                graph: g.delete_vertices(&dropped),
                attempts: attempt + 1,
            });
        }
    }
    Err(Error::solver(
        Stage::Subsample,
        format!(
            "no acceptable subsample in {max_retries} attempts (last: {} kept neighbors vs cap \
             {degree_cap:.3}, {} in one part vs limit {}, smallest part {} vs floor {part_floor:.3})",
            last.max_kept_neighbors,
            last.max_kept_in_part,
            SUBSAMPLE_LOCAL_LIMIT - 1,
            last.min_kept_part
        ),
    ))
}

fn check_subsample(g: &MultipartiteGraph, kept: &[bool]) -> SubsampleCheck {
    let mut out = SubsampleCheck {
        min_kept_part: usize::MAX,
        ..Default::default()
    };
    for v in g.vertices() {
        let mut total = 0;
        let nbrs = g.neighbors(v);
        let mut i = 0;
        while i < nbrs.len() {
            let part = g.part_of(nbrs[i]);
            let run = nbrs[i..].iter().take_while(|&&w| g.part_of(w) == part).count();
            let in_part = nbrs[i..i + run].iter().filter(|&&w| kept[w]).count();
            out.max_kept_in_part = out.max_kept_in_part.max(in_part);
            total += in_part;
            i += run;
        }
        out.max_kept_neighbors = out.max_kept_neighbors.max(total);
    }
    for part in g.parts() {
        let n = part.iter().filter(|&&v| kept[v]).count();
        out.min_kept_part = out.min_kept_part.min(n);
    }
    out
}

/// Parameters of [`reduce_local_degree`].
#[derive(Clone, Debug, PartialEq)]
pub struct ReduceParams {
    /// Degree bound of the input. Defaults to its maximum degree.
    pub delta: Option<usize>,
    pub gamma: f64,
    pub epsilon: f64,
    pub seed: u64,
    pub max_retries: usize,
}

impl ReduceParams {
    pub fn new(gamma: f64, epsilon: f64, seed: u64) -> Self {
        ReduceParams {
            delta: None,
            gamma,
            epsilon,
            seed,
            max_retries: DEFAULT_MAX_RETRIES,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StageAttempts {
    pub stage: String,
    pub attempts: usize,
}

/// What [`reduce_local_degree`] produced, with everything the schedule
/// report needs.
#[derive(Clone, Debug, Serialize)]
pub struct ReductionReport {
    pub schedule: ReductionSchedule,
    pub stages: Vec<StageAttempts>,
    /// Degree bound the final subsampling was run with.
    pub subsample_delta: f64,
    pub subsample_epsilon: f64,
    /// `(1 + eps'/3) * subsample_delta^(1/3)`.
    pub declared_degree_bound: f64,
    pub output_max_degree: usize,
    pub output_local_degree: usize,
    pub output_min_part: usize,
    /// Smallest part divided by `max(output max degree, declared bound)`.
    pub part_to_degree_ratio: f64,
}

#[derive(Clone, Debug)]
pub struct Reduction {
    pub graph: MultipartiteGraph,
    pub report: ReductionReport,
}

fn tag(stage: Stage, err: Error) -> Error {
    match err {
        Error::Input(msg) => Error::solver(stage, format!("precondition failed: {msg}")),
        other => other,
    }
}

/// Full pipeline: plan, truncate parts to a multiple of `2^j`, halve `j`
/// times, subsample, then re-check the output against the promised bounds.
pub fn reduce_local_degree(g: &MultipartiteGraph, params: &ReduceParams) -> Result<Reduction> {
    g.require_no_intra_part_edges()?;
    g.require_nonempty_parts()?;
    let stats = g.compute_stats();
    let delta = params.delta.unwrap_or(stats.max_degree).max(1);
    if stats.max_degree > delta {
        return Err(Error::input(format!(
            "maximum degree {} exceeds declared delta {delta}",
            stats.max_degree
        )));
    }
    let schedule = plan_reduction(delta, params.gamma, params.epsilon)?;
    if stats.local_degree as f64 > params.gamma * delta as f64 {
        return Err(Error::input(format!(
            "local degree {} exceeds gamma * delta = {:.3}",
            stats.local_degree,
            params.gamma * delta as f64
        )));
    }
    if (stats.min_part_size as f64) < (1.0 + params.epsilon) * delta as f64 {
        return Err(Error::input(format!(
            "smallest part has {} vertices, need (1 + eps) delta = {:.3}",
            stats.min_part_size,
            (1.0 + params.epsilon) * delta as f64
        )));
    }
    if let Some(c) = &schedule.claims {
        if !c.local_above_log4 {
            log::warn!("d_t > ln^4 delta_t fails for some t < j; halving may not be accepted");
        }
    }

    let mut stages = Vec::new();
    let mut current = g.clone();
    let (sub_delta, sub_eps) = match schedule.case {
        ReductionCase::Direct => (delta as f64, params.epsilon),
        ReductionCase::Halving => {
            let block = 1usize << schedule.j;
            let surplus: HashSet<VertexId> = current
                .parts()
                .iter()
                .flat_map(|p| p[p.len() / block * block..].iter().copied())
                .collect();
            current = current.delete_vertices(&surplus);
            for t in 0..schedule.j as usize {
                let step_seed = derive_seed(params.seed, &[1, t as u64]);
                let acc = random_halving(&current, schedule.d_seq[t], step_seed, params.max_retries)
                    .map_err(|e| tag(Stage::Halving, e))?;
                stages.push(StageAttempts {
                    stage: format!("halving {}", t + 1),
                    attempts: acc.attempts,
                });
                current = acc.graph;
            }
            (schedule.final_delta(), params.epsilon / 2.0)
        }
    };

    let acc = subsample_sparsify_with_delta(
        &current,
        sub_delta,
        sub_eps,
        derive_seed(params.seed, &[2]),
        params.max_retries,
    )
    .map_err(|e| tag(Stage::Subsample, e))?;
    stages.push(StageAttempts {
        stage: "subsample".into(),
        attempts: acc.attempts,
    });

    let out = acc.graph.compute_stats();
    let declared = (1.0 + sub_eps / 3.0) * sub_delta.cbrt();
    let reference = declared.max(out.max_degree as f64);
    let ratio = out.min_part_size as f64 / reference;
    let verified = out.local_degree < SUBSAMPLE_LOCAL_LIMIT
        && out.max_degree as f64 <= declared
        && ratio >= 1.0 + params.epsilon / 8.0;
    if !verified {
        return Err(Error::solver(
            Stage::Subsample,
            format!(
                "output failed re-verification: max degree {} (bound {declared:.3}), local degree {}, \
                 part/degree ratio {ratio:.4} (need {:.4})",
                out.max_degree,
                out.local_degree,
                1.0 + params.epsilon / 8.0
            ),
        ));
    }
    Ok(Reduction {
        graph: acc.graph,
        report: ReductionReport {
            schedule,
            stages,
            subsample_delta: sub_delta,
            subsample_epsilon: sub_eps,
            declared_degree_bound: declared,
            output_max_degree: out.max_degree,
            output_local_degree: out.local_degree,
            output_min_part: out.min_part_size,
            part_to_degree_ratio: ratio,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_random_local_sparse;

    #[test]
    fn direct_case_at_small_delta() {
        // 0.5^(-4/3) = 2^(4/3) ~ 2.52 >= 2
        let s = plan_reduction(2, 0.5, 0.5).unwrap();
        assert_eq!(s.case, ReductionCase::Direct);
        assert_eq!(s.j, 0);
        assert!(s.claims.is_none());
    }

    #[test]
    fn halving_count_for_gamma_one_percent() {
        // 0.01^(4/3) * 10^6 ~ 2154.43, and 2^11 = 2048 < 2154.43 <= 4096.
        let s = plan_reduction(1_000_000, 0.01, 0.5).unwrap();
        assert_eq!(s.case, ReductionCase::Halving);
        assert_eq!(s.j, 12);
        assert_eq!(s.delta_seq[1], 510_000.0);
        assert_eq!(s.delta_seq.len(), 13);
    }

    #[test]
    fn exact_power_of_two_is_not_bumped() {
        // (1/64)^(4/3) * 4096 = 16 exactly, so j = 4.
        let s = plan_reduction(4096, 1.0 / 64.0, 1.0).unwrap();
        assert_eq!(s.j, 4);
        assert!(s.epsilon_at_least_one);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(plan_reduction(10, 1.0, 0.5).is_err());
        assert!(plan_reduction(10, 0.0, 0.5).is_err());
        assert!(plan_reduction(0, 0.5, 0.5).is_err());
        assert!(plan_reduction(10, 0.5, 0.0).is_err());
    }

    #[test]
    fn halving_edgeless_graph() {
        let g = MultipartiteGraph::edgeless(3, 8);
        let acc = random_halving(&g, 1.0, 5, 10).unwrap();
        assert_eq!(acc.attempts, 1);
        assert!(acc.graph.parts().iter().all(|p| p.len() == 4));
        // Exactly one of each consecutive pair survives.
        for (orig, half) in g.parts().iter().zip(acc.graph.parts()) {
            for pair in orig.chunks_exact(2) {
                assert_eq!(pair.iter().filter(|v| half.contains(v)).count(), 1);
            }
        }
    }

    #[test]
    fn halving_rejects_odd_parts() {
        let g = MultipartiteGraph::edgeless(2, 3);
        assert!(matches!(random_halving(&g, 1.0, 0, 5), Err(Error::Input(_))));
    }

    #[test]
    fn halving_respects_bounds() {
        // delta = 16, d = 16: caps 8 + 16^(2/3) ~ 14.35 on both statistics.
        let g = gen_random_local_sparse(4, 64, 16, 16, 11).unwrap();
        assert_eq!(g.max_degree(), 16);
        let acc = random_halving(&g, 16.0, 3, 100).unwrap();
        let s = acc.graph.compute_stats();
        assert!(s.max_degree <= 14 && s.local_degree <= 14);
        assert!(acc.graph.parts().iter().all(|p| p.len() == 32));
    }

    #[test]
    fn subsample_edgeless_only_part_sizes_bind() {
        // delta = 64, eps = 1: p = 1/16, parts truncated to 128, floor (5/3) * 4.
        let g = MultipartiteGraph::edgeless(3, 150);
        let acc = subsample_sparsify_with_delta(&g, 64.0, 1.0, 8, 1000).unwrap();
        assert!(acc.graph.min_part_size() as f64 >= 5.0 / 3.0 * 4.0);
        assert_eq!(acc.graph.edge_count(), 0);
    }

    #[test]
    fn subsample_probability_and_expected_part() {
        // 4096^(-2/3) = 1/256 and (1 + 1) * 4096 / 256 = 32 = 2 * 4096^(1/3).
        let p = 4096f64.powf(-2.0 / 3.0);
        assert!((p - 1.0 / 256.0).abs() < 1e-15);
        assert!((8192.0 * p - 2.0 * 4096f64.cbrt()).abs() < 1e-9);
    }

    #[test]
    fn subsample_checks_preconditions() {
        let g = gen_random_local_sparse(2, 40, 8, 8, 1).unwrap();
        // local degree 8 > 8^(1/3)
        assert!(matches!(subsample_sparsify(&g, 0.5, 0, 3), Err(Error::Input(_))));
        // parts too small for delta = 1000
        let e = MultipartiteGraph::edgeless(2, 10);
        assert!(matches!(subsample_sparsify_with_delta(&e, 1000.0, 0.5, 0, 3), Err(Error::Input(_))));
    }

    #[test]
    fn subsample_sparse_instance_with_declared_delta() {
        // Declared delta = 1000 over an instance of degree <= 10, local <= 2.
        let g = gen_random_local_sparse(2, 2000, 10, 2, 4).unwrap();
        let acc = subsample_sparsify_with_delta(&g, 1000.0, 1.0, 6, 1000).unwrap();
        let s = acc.graph.compute_stats();
        assert!(s.local_degree <= 9);
        assert!(s.max_degree as f64 <= (4.0 / 3.0) * 10.0);
        assert!(s.min_part_size as f64 >= (5.0 / 3.0) * 10.0);
    }

    #[test]
    fn reduce_direct_case_matches_plain_subsampling() {
        // gamma = 0.005: gamma^(-4/3) ~ 1170 >= 1000.
        let g = gen_random_local_sparse(2, 2000, 10, 2, 4).unwrap();
        let mut params = ReduceParams::new(0.005, 1.0, 6);
        params.delta = Some(1000);
        let red = reduce_local_degree(&g, &params).unwrap();
        assert_eq!(red.report.schedule.case, ReductionCase::Direct);
        let direct =
            subsample_sparsify_with_delta(&g, 1000.0, 1.0, derive_seed(6, &[2]), DEFAULT_MAX_RETRIES)
                .unwrap();
        assert_eq!(red.graph, direct.graph);
        assert!(red.report.part_to_degree_ratio >= 1.125);
    }

    #[test]
    fn reduce_edgeless_halves_then_subsamples() {
        // delta = 64, gamma = 1/4: gamma^(4/3) * 64 = 10.08, so j = 4.
        let g = MultipartiteGraph::edgeless(2, 8 * 64 + 3);
        let mut params = ReduceParams::new(0.25, 0.5, 2);
        params.delta = Some(64);
        // delta_4 ~ 24.4, so the 32-vertex parts clear (1 + eps/2) delta_4.
        let red = reduce_local_degree(&g, &params).unwrap();
        assert_eq!(red.report.schedule.j, 4);
        assert_eq!(red.report.stages.len(), 5);
        assert_eq!(red.graph.edge_count(), 0);
        assert!(red.graph.min_part_size() <= 31);
    }
}
