//! Semi-random construction of an independent transversal for instances
//! with small local degree and parts of size `(1 + eps) * delta`.
//!
//! Each round activates every live part with probability `1 / ln delta`,
//! picks a uniform vertex from each activated part, keeps a pick unless it
//! is adjacent to a pick from a lower-indexed part, then deletes the parts
//! that received a vertex and every neighbor of every pick. A round is
//! accepted only if the survivors still satisfy the schedule: live parts of
//! size at least `S_t` and live degrees at most `D_t`. Otherwise it is
//! redrawn with the next seed in the chain. Once the degree/part-size ratio
//! is small enough, the remaining instance is handed to the resampling
//! solver in [`crate::lll`].

use std::collections::HashSet;
use std::f64::consts::E;
use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result, Stage};
use crate::graph::{MultipartiteGraph, PartIndex, Transversal, VertexId};
use crate::lll::{lll_condition_check, moser_tardos_it, LllReport, DEFAULT_MAX_RESAMPLES};
use crate::seed::{derive_seed, rng_from_seed};

pub const DEFAULT_RETRY_CAP: usize = 1000;

/// Local degree above which a warning is logged; the analysis treats the
/// local degree as a constant.
pub const DEFAULT_LOCAL_DEGREE_WARN: usize = 10;

/// Target part sizes `S_t` and degrees `D_t` for every round.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NibbleSchedule {
    pub epsilon: f64,
    pub delta: usize,
    /// `S_1 ..= S_{t_star + 1}`
    pub part_sizes: Vec<f64>,
    /// `D_1 ..= D_{t_star + 1}`
    pub degrees: Vec<f64>,
    /// `ceil((10 / eps) ln delta)`
    pub t_star: usize,
    /// `1 / ln delta`
    pub activation_p: f64,
}

impl NibbleSchedule {
    /// `S_t`, for `1 <= t <= t_star + 1`.
    pub fn s(&self, t: usize) -> f64 {
        self.part_sizes[t - 1]
    }

    /// `D_t`, for `1 <= t <= t_star + 1`.
    pub fn d(&self, t: usize) -> f64 {
        self.degrees[t - 1]
    }

    /// `D_{t_star+1} / S_{t_star+1}`.
    pub fn final_ratio(&self) -> f64 {
        self.d(self.t_star + 1) / self.s(self.t_star + 1)
    }

    pub fn part_decay(&self) -> f64 {
        1.0 - 1.0 / ((1.0 + 3.0 * self.epsilon / 4.0) * (self.delta as f64).ln())
    }

    pub fn degree_decay(&self) -> f64 {
        1.0 - 1.0 / ((1.0 + self.epsilon / 4.0) * (self.delta as f64).ln())
    }
}

/// `S_1 = (1 + eps) delta`, `D_1 = delta`, each shrinking by its own factor
/// per round, for `t_star + 1` rounds.
pub fn build_schedule(delta: usize, epsilon: f64) -> Result<NibbleSchedule> {
    if delta < 3 {
        return Err(Error::input(format!(
            "nibble needs delta >= 3 so that 1/ln(delta) < 1, got {delta}"
        )));
    }
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::input(format!("epsilon must be positive, got {epsilon}")));
    }
    let log_delta = (delta as f64).ln();
    let t_star = ((10.0 / epsilon) * log_delta).ceil() as usize;
    let mut sched = NibbleSchedule {
        epsilon,
        delta,
        part_sizes: vec![(1.0 + epsilon) * delta as f64],
        degrees: vec![delta as f64],
        t_star,
        activation_p: 1.0 / log_delta,
    };
    let (ps, ds) = (sched.part_decay(), sched.degree_decay());
    for _ in 0..t_star {
        let s = *sched.part_sizes.last().unwrap();
        let d = *sched.degrees.last().unwrap();
        sched.part_sizes.push(ps * s);
        sched.degrees.push(ds * d);
    }
    let ratio = sched.final_ratio();
    if ratio >= 1.0 / (2.0 * E) {
        return Err(Error::input(format!(
            "schedule ends at ratio {ratio} >= 1/(2e); epsilon or delta out of range"
        )));
    }
    Ok(sched)
}

/// Evolving state: the live graph (all original parts, finished ones empty),
/// the partial transversal on finished parts and the round counter.
#[derive(Clone, Debug)]
pub struct NibbleState {
    pub origin: Arc<MultipartiteGraph>,
    pub live: MultipartiteGraph,
    pub partial: Transversal,
    /// Index of the next round, starting at 1.
    pub t: usize,
    /// `None` when the input needed no rounds at all.
    pub schedule: Option<NibbleSchedule>,
}

impl NibbleState {
    pub fn new(origin: Arc<MultipartiteGraph>, schedule: Option<NibbleSchedule>) -> Self {
        NibbleState {
            live: (*origin).clone(),
            origin,
            partial: Transversal::new(),
            t: 1,
            schedule,
        }
    }

    /// Parts that do not yet own a transversal vertex.
    pub fn live_parts(&self) -> impl Iterator<Item = PartIndex> + '_ {
        (0..self.live.part_count()).filter(|&k| !self.partial.contains_part(k))
    }

    pub fn min_live_part(&self) -> Option<usize> {
        self.live_parts().map(|k| self.live.part(k).len()).min()
    }

    pub fn live_max_degree(&self) -> usize {
        self.live.max_degree()
    }

    /// `2e * max_degree <= min_part` on the live instance.
    pub fn ready_for_finisher(&self) -> bool {
        match self.min_live_part() {
            None => true,
            Some(m) => 2.0 * E * self.live_max_degree() as f64 <= m as f64,
        }
    }

    /// Full re-scan of the structural invariants: partial vertices have no
    /// live neighbors, finished parts are empty, and every part is either
    /// finished or live.
    pub fn check_invariants(&self) -> Result<()> {
        for (k, v) in self.partial.iter() {
            if !self.live.part(k).is_empty() {
                return Err(internal(format!("finished part {k} still has live vertices")));
            }
            if self.origin.part_of(v) != Some(k) {
                return Err(internal(format!("partial vertex {v} is not in part {k}")));
            }
            if let Some(&w) = self.origin.neighbors(v).iter().find(|&&w| self.live.contains(w)) {
                return Err(internal(format!(
                    "partial vertex {v} is adjacent to live vertex {w}"
                )));
            }
        }
        let partial: Vec<VertexId> = self.partial.vertices().collect();
        for (i, &a) in partial.iter().enumerate() {
            if partial[i + 1..].iter().any(|&b| self.origin.is_adjacent(a, b)) {
                return Err(internal(format!("partial vertex {a} has a partial neighbor")));
            }
        }
        Ok(())
    }
}

fn internal(msg: String) -> Error {
    Error::solver(Stage::Nibble, format!("internal invariant broken: {msg}"))
}

/// Live parts of size at least `S_t` and live degrees at most `D_t`.
/// Vacuously true without a schedule.
#[allow(non_snake_case)]
pub fn check_property_P(st: &NibbleState) -> bool {
    let Some(sched) = &st.schedule else {
        return true;
    };
    let t = st.t.min(sched.t_star + 1);
    let (s_t, d_t) = (sched.s(t), sched.d(t));
    st.live_parts().all(|k| st.live.part(k).len() as f64 >= s_t)
        && st.live.vertices().all(|v| st.live.degree(v) as f64 <= d_t)
}

/// The random choices of one round and their consequences, before they are
/// applied.
#[derive(Clone, Debug, Default)]
pub struct RoundPlan {
    pub activated: Vec<PartIndex>,
    /// `T`: one pick per activated part.
    pub selected: Vec<(PartIndex, VertexId)>,
    /// Picks with no adjacent pick in a lower-indexed part.
    pub added: Vec<(PartIndex, VertexId)>,
    pub deleted: HashSet<VertexId>,
}

pub fn plan_round(st: &NibbleState, seed: u64) -> RoundPlan {
    let mut rng = rng_from_seed(seed);
    let p = st.schedule.as_ref().map_or(1.0, |s| s.activation_p.min(1.0));
    let activated: Vec<PartIndex> = st
        .live_parts()
        .filter(|_| rng.gen_bool(p))
        .collect();
    let selected: Vec<(PartIndex, VertexId)> = activated
        .iter()
        .filter_map(|&k| {
            let part = st.live.part(k);
            (!part.is_empty()).then(|| (k, part[rng.gen_range(0..part.len())]))
        })
        .collect();
    let picked: HashSet<VertexId> = selected.iter().map(|&(_, v)| v).collect();
    let added: Vec<(PartIndex, VertexId)> = selected
        .iter()
        .copied()
        .filter(|&(i, v)| {
            !st.live
                .neighbors(v)
                .iter()
                .any(|&w| picked.contains(&w) && st.live.part_of(w).is_some_and(|j| j < i))
        })
        .collect();
    let mut deleted = HashSet::new();
    for &(k, _) in &added {
        deleted.extend(st.live.part(k).iter().copied());
    }
    for &v in &picked {
        deleted.extend(st.live.neighbors(v).iter().copied());
    }
    RoundPlan {
        activated,
        selected,
        added,
        deleted,
    }
}

/// Live statistics a plan would leave behind, computed without building the
/// next graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlanOutcome {
    /// `None` when no live part would remain.
    pub min_part: Option<usize>,
    pub max_degree: usize,
}

pub fn plan_outcome(st: &NibbleState, plan: &RoundPlan) -> PlanOutcome {
    let finished: HashSet<PartIndex> = plan.added.iter().map(|&(k, _)| k).collect();
    let min_part = st
        .live_parts()
        .filter(|k| !finished.contains(k))
        .map(|k| {
            st.live
                .part(k)
                .iter()
                .filter(|v| !plan.deleted.contains(v))
                .count()
        })
        .min();
    let mut lost = vec![0usize; st.live.id_bound()];
    for &u in &plan.deleted {
        for &w in st.live.neighbors(u) {
            lost[w] += 1;
        }
    }
    let max_degree = st
        .live
        .vertices()
        .filter(|v| !plan.deleted.contains(v))
        .map(|v| st.live.degree(v) - lost[v])
        .max()
        .unwrap_or(0);
    PlanOutcome {
        min_part,
        max_degree,
    }
}

fn apply_plan(st: &NibbleState, plan: &RoundPlan) -> NibbleState {
    let mut partial = st.partial.clone();
    for &(k, v) in &plan.added {
        partial.insert(k, v);
    }
    NibbleState {
        origin: Arc::clone(&st.origin),
        live: st.live.delete_vertices(&plan.deleted),
        partial,
        t: st.t + 1,
        schedule: st.schedule.clone(),
    }
}

/// One round of activation, selection, conflict resolution and deletion.
/// A pure function of `(st, seed)`.
pub fn run_iteration(st: &NibbleState, seed: u64) -> NibbleState {
    apply_plan(st, &plan_round(st, seed))
}

#[derive(Clone, Debug, PartialEq)]
pub struct NibbleConfig {
    pub epsilon: f64,
    /// Redraws allowed per round before giving up.
    pub retry_cap: usize,
    /// Stop iterating once `2e * max_degree <= min_part`.
    pub early_exit: bool,
    /// Reject rounds that break the schedule. With `false` every first draw
    /// is accepted and violations are only recorded in the trace.
    pub enforce_schedule: bool,
    pub local_degree_warn: usize,
    /// Resampling budget of the finishing step.
    pub max_resamples: u64,
}

impl NibbleConfig {
    pub fn new(epsilon: f64) -> Self {
        NibbleConfig {
            epsilon,
            retry_cap: DEFAULT_RETRY_CAP,
            early_exit: true,
            enforce_schedule: true,
            local_degree_warn: DEFAULT_LOCAL_DEGREE_WARN,
            max_resamples: DEFAULT_MAX_RESAMPLES,
        }
    }
}

/// One accepted round.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IterationTrace {
    pub t: usize,
    pub activated: usize,
    /// `|T|`
    pub selected: usize,
    pub added: usize,
    pub deleted_vertices: usize,
    /// Smallest live part after the round (0 when none remain).
    pub min_part: usize,
    pub max_deg: usize,
    /// Thresholds in force during round `t`.
    #[serde(rename = "S_t")]
    pub s_t: f64,
    #[serde(rename = "D_t")]
    pub d_t: f64,
    /// Thresholds the result was checked against.
    #[serde(rename = "S_next")]
    pub s_next: f64,
    #[serde(rename = "D_next")]
    pub d_next: f64,
    pub schedule_held: bool,
    pub retries: usize,
}

#[derive(Clone, Debug)]
pub struct NibbleRun {
    pub state: NibbleState,
    pub trace: Vec<IterationTrace>,
    /// Round at whose start the ratio test stopped the loop.
    pub early_exit_at: Option<usize>,
    /// Number of full invariant re-scans performed (one per accepted round).
    pub invariant_rescans: usize,
}

fn prepare(g: &MultipartiteGraph, config: &NibbleConfig) -> Result<NibbleSchedule> {
    g.require_no_intra_part_edges()?;
    g.require_nonempty_parts()?;
    let stats = g.compute_stats();
    if stats.local_degree > config.local_degree_warn {
        log::warn!(
            "local degree {} exceeds {}; the round analysis assumes a small constant",
            stats.local_degree,
            config.local_degree_warn
        );
    }
    let schedule = build_schedule(stats.max_degree, config.epsilon)?;
    if (stats.min_part_size as f64) < schedule.s(1) {
        return Err(Error::input(format!(
            "smallest part has {} vertices, need (1 + eps) * max_degree = {:.3}",
            stats.min_part_size,
            schedule.s(1)
        )));
    }
    Ok(schedule)
}

/// Iterate rounds from `t = 1` to `t_star`, redrawing any round whose result
/// breaks the schedule, and stop early once the live instance is ready for
/// the finisher (when enabled).
pub fn run_nibble(g: &MultipartiteGraph, config: &NibbleConfig, seed: u64) -> Result<NibbleRun> {
    let origin = Arc::new(g.clone());
    let stats = g.compute_stats();
    let ready = |max_deg: usize, min_part: usize| 2.0 * E * max_deg as f64 <= min_part as f64;
    if config.early_exit && ready(stats.max_degree, stats.min_part_size) {
        g.require_no_intra_part_edges()?;
        return Ok(NibbleRun {
            state: NibbleState::new(origin, None),
            trace: Vec::new(),
            early_exit_at: Some(1),
            invariant_rescans: 0,
        });
    }
    let schedule = prepare(g, config)?;
    let t_star = schedule.t_star;
    let mut state = NibbleState::new(origin, Some(schedule.clone()));
    let mut trace = Vec::new();
    let mut rescans = 0;
    let mut early_exit_at = None;

    while state.t <= t_star {
        if state.live_parts().next().is_none() {
            break;
        }
        if config.early_exit && state.ready_for_finisher() {
            early_exit_at = Some(state.t);
            break;
        }
        let t = state.t;
        let (s_next, d_next) = (schedule.s(t + 1), schedule.d(t + 1));
        let holds = |o: &PlanOutcome| {
            o.min_part.is_none_or(|m| m as f64 >= s_next) && o.max_degree as f64 <= d_next
        };

        let mut accepted = None;
        let mut last = None;
        for retry in 0..config.retry_cap.max(1) {
            let plan = plan_round(&state, derive_seed(seed, &[t as u64, retry as u64]));
            let outcome = plan_outcome(&state, &plan);
            let ok = holds(&outcome);
            if ok || !config.enforce_schedule {
                accepted = Some((plan, outcome, ok, retry));
                break;
            }
            last = Some(outcome);
        }
        let Some((plan, outcome, held, retry)) = accepted else {
            let o = last.expect("at least one attempt");
            return Err(Error::solver(
                Stage::Nibble,
                format!(
                    "round {t}: no draw in {} attempts kept the schedule; last draw left min part {} \
                     (need >= {s_next:.3}) and max degree {} (need <= {d_next:.3})",
                    config.retry_cap,
                    o.min_part.unwrap_or(0),
                    o.max_degree
                ),
            ));
        };
        let next = apply_plan(&state, &plan);
        next.check_invariants()?;
        rescans += 1;
        trace.push(IterationTrace {
            t,
            activated: plan.activated.len(),
            selected: plan.selected.len(),
            added: plan.added.len(),
            deleted_vertices: plan.deleted.len(),
            min_part: outcome.min_part.unwrap_or(0),
            max_deg: outcome.max_degree,
            s_t: schedule.s(t),
            d_t: schedule.d(t),
            s_next,
            d_next,
            schedule_held: held,
            retries: retry,
        });
        state = next;
    }
    Ok(NibbleRun {
        state,
        trace,
        early_exit_at,
        invariant_rescans: rescans,
    })
}

#[derive(Clone, Debug)]
pub struct NibbleSolution {
    pub transversal: Transversal,
    pub run: NibbleRun,
    pub finisher: LllReport,
}

/// Run the rounds, then finish the live parts with the resampling solver and
/// return the union, verified against `g`.
pub fn solve_it(g: &MultipartiteGraph, config: &NibbleConfig, seed: u64) -> Result<NibbleSolution> {
    let run = run_nibble(g, config, seed)?;
    let state = &run.state;
    let live: Vec<PartIndex> = state.live_parts().collect();
    if let Some(&k) = live.iter().find(|&&k| state.live.part(k).is_empty()) {
        return Err(Error::solver(
            Stage::Finisher,
            format!("live part {k} was emptied before the hand-off"),
        ));
    }
    let rest = state.live.restrict_to_parts(&live);
    let margin = lll_condition_check(&rest)?;
    if margin > 1.0 {
        log::warn!("hand-off instance has local lemma margin {margin:.3} > 1");
    }
    let finisher = moser_tardos_it(&rest, derive_seed(seed, &[u64::MAX]), config.max_resamples)?;
    let Some(tail) = finisher.transversal.as_ref() else {
        return Err(Error::solver(
            Stage::Finisher,
            format!(
                "resampling gave up after {} steps on {} live parts (margin {margin:.3})",
                finisher.resample_count,
                live.len()
            ),
        ));
    };
    let mut transversal = state.partial.clone();
    for (i, v) in tail.iter() {
        transversal.insert(live[i], v);
    }
    if !g.is_independent_transversal(&transversal)? {
        return Err(internal("combined transversal is not independent".into()));
    }
    Ok(NibbleSolution {
        transversal,
        run,
        finisher,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_disjoint_cliques, gen_random_local_sparse};

    fn state_for(g: MultipartiteGraph, epsilon: f64) -> NibbleState {
        let sched = build_schedule(g.max_degree().max(3), epsilon).unwrap();
        NibbleState::new(Arc::new(g), Some(sched))
    }

    #[test]
    fn schedule_first_ratio() {
        let s = build_schedule(100, 0.5).unwrap();
        assert!((s.d(1) / s.s(1) - 1.0 / 1.5).abs() < 1e-15);
    }

    #[test]
    fn schedule_length_and_final_ratio() {
        let s = build_schedule(1_000_000, 0.5).unwrap();
        assert_eq!(s.t_star, 277);
        assert_eq!(s.part_sizes.len(), 278);
        assert!(s.final_ratio() < 1.0 / (2.0 * E));
        let s = build_schedule(10_000, 1.0).unwrap();
        assert!(s.final_ratio() <= (-2f64).exp());
    }

    #[test]
    fn schedule_rejects_small_delta() {
        assert!(build_schedule(2, 0.5).is_err());
        assert!(build_schedule(10, 0.0).is_err());
    }

    #[test]
    fn property_holds_on_fresh_instance() {
        let g = gen_random_local_sparse(20, 15, 10, 2, 1).unwrap();
        let st = state_for(g, 0.5);
        assert!(check_property_P(&st));
    }

    #[test]
    fn property_fails_on_emptied_part() {
        let g = gen_random_local_sparse(20, 15, 10, 2, 1).unwrap();
        let mut st = state_for(g, 0.5);
        let part: HashSet<VertexId> = st.live.part(3).iter().copied().collect();
        st.live = st.live.delete_vertices(&part);
        assert!(!check_property_P(&st));
    }

    #[test]
    fn property_fails_on_high_degree_vertex() {
        // A star of degree 5 with schedule delta = 4 puts one vertex at D_1 + 1.
        let mut parts: Vec<Vec<usize>> = vec![(0..10).collect()];
        let mut edges = Vec::new();
        for k in 1..=5 {
            parts.push((k * 10..k * 10 + 10).collect());
            edges.push((0, k * 10));
        }
        let g = MultipartiteGraph::new(parts, edges).unwrap();
        let sched = build_schedule(4, 1.0).unwrap();
        assert_eq!(g.degree(0) as f64, sched.d(1) + 1.0);
        let st = NibbleState::new(Arc::new(g), Some(sched));
        assert!(!check_property_P(&st));
    }

    #[test]
    fn round_without_activation_only_advances_t() {
        let g = gen_random_local_sparse(6, 15, 10, 2, 1).unwrap();
        let st = state_for(g, 0.5);
        // Find a seed that activates nothing.
        let seed = (0..10_000u64)
            .find(|&s| plan_round(&st, s).activated.is_empty())
            .expect("some seed activates no part");
        let next = run_iteration(&st, seed);
        assert_eq!(next.t, 2);
        assert_eq!(next.live, st.live);
        assert!(next.partial.is_empty());
    }

    #[test]
    fn single_activated_part_joins_partial() {
        let g = MultipartiteGraph::edgeless(1, 4);
        let st = state_for(g, 0.5);
        let seed = (0..1000u64)
            .find(|&s| !plan_round(&st, s).activated.is_empty())
            .unwrap();
        let next = run_iteration(&st, seed);
        assert_eq!(next.partial.len(), 1);
        assert!(next.live.part(0).is_empty());
        next.check_invariants().unwrap();
    }

    #[test]
    fn conflicting_picks_resolve_by_part_index() {
        // Parts {0}, {1}, {2, 3}; edges 0-1 and 1-2. When parts 0 and 1 are
        // both active, vertex 1 loses to vertex 0 but still deletes vertex 2.
        let g = MultipartiteGraph::new(vec![vec![0], vec![1], vec![2, 3]], vec![(0, 1), (1, 2)])
            .unwrap();
        let st = state_for(g, 0.5);
        let seed = (0..10_000u64)
            .find(|&s| {
                let p = plan_round(&st, s);
                p.activated == vec![0, 1]
            })
            .unwrap();
        let plan = plan_round(&st, seed);
        assert_eq!(plan.added, vec![(0, 0)]);
        assert!(plan.deleted.contains(&2));
        let next = apply_plan(&st, &plan);
        assert_eq!(next.partial.get(0), Some(0));
        assert!(!next.partial.contains_part(1));
        assert_eq!(next.live.part(2), &[3]);
        assert!(next.live.part(1).is_empty());
        next.check_invariants().unwrap();
    }

    #[test]
    fn iteration_is_pure_in_seed() {
        let g = gen_random_local_sparse(30, 20, 12, 2, 5).unwrap();
        let st = state_for(g, 0.5);
        let a = run_iteration(&st, 77);
        let b = run_iteration(&st, 77);
        assert_eq!(a.live, b.live);
        assert_eq!(a.partial, b.partial);
    }

    #[test]
    fn plan_outcome_matches_applied_state() {
        let g = gen_random_local_sparse(40, 20, 12, 2, 8).unwrap();
        let st = state_for(g, 0.5);
        for seed in 0..20 {
            let plan = plan_round(&st, seed);
            let outcome = plan_outcome(&st, &plan);
            let next = apply_plan(&st, &plan);
            assert_eq!(outcome.min_part, next.min_live_part());
            assert_eq!(outcome.max_degree, next.live_max_degree());
        }
    }

    #[test]
    fn edgeless_input_exits_immediately() {
        let g = MultipartiteGraph::edgeless(5, 3);
        let run = run_nibble(&g, &NibbleConfig::new(0.5), 1).unwrap();
        assert_eq!(run.early_exit_at, Some(1));
        assert!(run.trace.is_empty());

        let single = MultipartiteGraph::edgeless(4, 1);
        let sol = solve_it(&single, &NibbleConfig::new(0.5), 1).unwrap();
        assert_eq!(sol.transversal.vertices().collect::<Vec<_>>(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn disjoint_cliques_are_reported_not_solved() {
        let g = gen_disjoint_cliques(4).unwrap();
        assert!(solve_it(&g, &NibbleConfig::new(0.5), 3).is_err());
    }

    #[test]
    fn relaxed_schedule_records_violations() {
        let g = gen_random_local_sparse(60, 30, 20, 2, 2).unwrap();
        let mut cfg = NibbleConfig::new(0.5);
        cfg.enforce_schedule = false;
        let run = run_nibble(&g, &cfg, 4).unwrap();
        assert_eq!(run.invariant_rescans, run.trace.len());
        assert!(run.trace.iter().all(|it| it.retries == 0));
    }
}
