//! The per-graph checker suite and the sweep driver built on it.
//!
//! Every random choice is derived from `(seed, graph key, stream)`, and
//! graphs are processed through [`crate::par`], which preserves input
//! order; reports are therefore identical for sequential and parallel runs.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::distribution::condition;
use crate::error::{Error, Result};
use crate::events::{all_increasing_events, random_increasing_event_with, Event, GroundSet, IncreasingEvent};
use crate::graph::BipartiteGraph;
use crate::par::{map_indexed, mix_seed, ExecMode};
use crate::rational::{from_u64, ratio};
use crate::verify::{default_limit_parameters, CheckReport, GraphVerifier, Relation};
use crate::vertex_set::VertexSet;

/// Check names in report order. `tv-monotone` is empirical: its failures
/// are findings, not violations.
pub const CHECK_ORDER: [&str; 13] = [
    "partition",
    "partition-conditioned",
    "cell-structure",
    "cell-weight-constancy",
    "bk",
    "cell-chain",
    "bk-weighted",
    "bk-maximum",
    "bk-conditioned",
    "negative-association",
    "submodularity",
    "scaling-limit",
    "tv-monotone",
];

const EMPIRICAL: [&str; 1] = ["tv-monotone"];

// RNG stream identifiers.
const STREAM_PAIRS: u64 = 1;
const STREAM_WEIGHTS: u64 = 2;
const STREAM_WEIGHTED: u64 = 3;
const STREAM_MAXIMUM: u64 = 4;
const STREAM_CONDITIONED: u64 = 5;
const STREAM_NA: u64 = 6;
const STREAM_SUBMODULAR: u64 = 7;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Random increasing-event pairs per graph for BK and the cell chain.
    pub event_pairs: usize,
    /// Graphs up to this many vertices also get every increasing-event pair.
    pub exhaustive_max_vertices: usize,
    /// Random events use between 1 and this many generators.
    pub max_generators: usize,
    pub weighted_instances: usize,
    pub maximum_instances: usize,
    /// Event pairs per satisfiable `(V+, V-)`.
    pub conditioned_instances: usize,
    /// Conditions range over `|V+| + |V-| <= conditioned_max_size`.
    pub conditioned_max_size: usize,
    pub na_instances: usize,
    pub submodularity_instances: usize,
    pub cell_chain: bool,
    pub partition: bool,
    pub conditioned_partition: bool,
    pub limit: bool,
    /// Weights drawn for unit-weight graphs in the weighted checks.
    pub weight_palette: Vec<BigRational>,
    /// Scale points for the empirical TV monotonicity finding.
    pub tv_points: Vec<BigRational>,
    pub exec: ExecMode,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            event_pairs: 200,
            exhaustive_max_vertices: 4,
            max_generators: 3,
            weighted_instances: 100,
            maximum_instances: 100,
            conditioned_instances: 100,
            conditioned_max_size: 2,
            na_instances: 100,
            submodularity_instances: 100,
            cell_chain: true,
            partition: true,
            conditioned_partition: false,
            limit: true,
            weight_palette: vec![ratio(1, 3), ratio(1, 2), from_u64(1), from_u64(2), from_u64(3)],
            tv_points: [1u64, 10, 100, 1000].into_iter().map(from_u64).collect(),
            exec: ExecMode::default(),
        }
    }
}

/// Whether a report should be kept in full or only counted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Detail {
    Full,
    TallyOnly,
}

fn error_report(check: &str, err: &Error) -> CheckReport {
    CheckReport::compare(check, Value::Null, from_u64(0), Relation::Eq, from_u64(0))
        .fail_with(json!({ "error": err.to_string() }))
}

fn emit(sink: &mut dyn FnMut(CheckReport, Detail), check: &str, r: Result<CheckReport>, detail: Detail) {
    match r {
        Ok(report) => sink(report, detail),
        Err(e) => sink(error_report(check, &e), Detail::Full),
    }
}

fn rng_for(graph_seed: u64, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(mix_seed(graph_seed, stream))
}

fn random_pair(ground: &GroundSet, rng: &mut ChaCha8Rng, max_generators: usize) -> (IncreasingEvent, IncreasingEvent) {
    let mut one = || {
        let count = rng.random_range(1..=max_generators.max(1));
        random_increasing_event_with(ground, rng, count)
    };
    (one(), one())
}

/// All disjoint `(V+, V-)` with `|V+| + |V-| <= max_size`, in a fixed order.
pub fn small_conditions(n: usize, max_size: usize) -> Vec<(VertexSet, VertexSet)> {
    let mut out = Vec::new();
    let full = VertexSet::full(n).bits();
    for plus in 0..=full {
        for minus in 0..=full {
            let (p, m) = (VertexSet::from_bits(plus), VertexSet::from_bits(minus));
            if p.is_disjoint(m) && p.len() + m.len() <= max_size {
                out.push((p, m));
            }
        }
    }
    out.sort_by_key(|(p, m)| (p.len() + m.len(), p.bits(), m.bits()));
    out
}

/// Runs every configured check on one graph. `key` identifies the graph
/// within a sweep and feeds the seed derivation.
pub fn run_graph_suite(
    g: &BipartiteGraph,
    key: u64,
    cfg: &SuiteConfig,
    sink: &mut dyn FnMut(CheckReport, Detail),
) -> Result<()> {
    let graph_seed = mix_seed(cfg.seed, key);
    let verifier = GraphVerifier::new(g)?;
    let ground = verifier.ground().clone();
    let n = g.vertex_count();

    if cfg.partition {
        emit(sink, "partition", verifier.verify_partition(), Detail::Full);
    }
    if cfg.cell_chain {
        emit(sink, "cell-structure", verifier.verify_cell_structure(), Detail::Full);
    }

    // Uniform BK and the cell chain, on random pairs and (small graphs)
    // every pair of increasing events.
    let mut pairs = Vec::with_capacity(cfg.event_pairs);
    let mut rng = rng_for(graph_seed, STREAM_PAIRS);
    for _ in 0..cfg.event_pairs {
        pairs.push(random_pair(&ground, &mut rng, cfg.max_generators));
    }
    for (a, b) in &pairs {
        emit(sink, "bk", verifier.check_bk(a, b), Detail::Full);
        if cfg.cell_chain {
            emit(sink, "cell-chain", verifier.verify_cell_chain(a, b), Detail::Full);
        }
    }
    if n <= cfg.exhaustive_max_vertices {
        let all = all_increasing_events(&ground)?;
        for a in &all {
            for b in &all {
                emit(sink, "bk", verifier.check_bk(a, b), Detail::TallyOnly);
                if cfg.cell_chain {
                    emit(sink, "cell-chain", verifier.verify_cell_chain(a, b), Detail::TallyOnly);
                }
            }
        }
    }

    // Weighted measures. A unit-weight input gets seeded random weights.
    let weighted_graph = if g.is_unit_weighted() && !cfg.weight_palette.is_empty() {
        g.with_random_weights(&cfg.weight_palette, mix_seed(graph_seed, STREAM_WEIGHTS))?
    } else {
        g.clone()
    };
    let wv = GraphVerifier::new(&weighted_graph)?;
    if cfg.weighted_instances > 0 {
        emit(sink, "cell-weight-constancy", wv.check_cell_weights(), Detail::Full);
    }
    let mut rng = rng_for(graph_seed, STREAM_WEIGHTED);
    for _ in 0..cfg.weighted_instances {
        let (a, b) = random_pair(&ground, &mut rng, cfg.max_generators);
        emit(sink, "bk-weighted", wv.check_bk_weighted(&a, &b), Detail::Full);
    }
    let mut rng = rng_for(graph_seed, STREAM_MAXIMUM);
    for _ in 0..cfg.maximum_instances {
        let (a, b) = random_pair(&ground, &mut rng, cfg.max_generators);
        emit(sink, "bk-maximum", verifier.check_bk_maximum(&a, &b), Detail::Full);
    }

    if cfg.conditioned_instances > 0 || cfg.conditioned_partition {
        let mut rng = rng_for(graph_seed, STREAM_CONDITIONED);
        for (v_plus, v_minus) in small_conditions(n, cfg.conditioned_max_size) {
            let d = match condition(wv.weighted(), v_plus, v_minus) {
                Ok(d) => d,
                Err(Error::EmptyConditionedSpace) => continue,
                Err(e) => return Err(e),
            };
            if cfg.conditioned_partition {
                emit(sink, "partition-conditioned", wv.verify_partition_conditioned(v_plus, v_minus), Detail::Full);
            }
            let sub_ground = d.ground().clone();
            for _ in 0..cfg.conditioned_instances {
                let (a, b) = random_pair(&sub_ground, &mut rng, cfg.max_generators);
                emit(sink, "bk-conditioned", wv.check_bk_conditioned_on(&d, v_plus, v_minus, &a, &b), Detail::Full);
            }
        }
    }

    let mut rng = rng_for(graph_seed, STREAM_NA);
    for _ in 0..cfg.na_instances {
        let (a, b, va, vb) = random_na_instance(&ground, &mut rng, cfg.max_generators);
        emit(sink, "negative-association", wv.check_na(&a, &b, va, vb), Detail::Full);
    }
    let mut rng = rng_for(graph_seed, STREAM_SUBMODULAR);
    let full = ground.full_set().bits();
    for _ in 0..cfg.submodularity_instances {
        let x = VertexSet::from_bits(rng.random::<u64>() & rng.random::<u64>() & full);
        let y = VertexSet::from_bits(rng.random::<u64>() & rng.random::<u64>() & full);
        sink(wv.check_submodularity(x, y), Detail::Full);
    }

    if cfg.limit && g.edge_count() > 0 {
        let (t, threshold) = default_limit_parameters();
        emit(sink, "scaling-limit", verifier.check_scaling_limit(&t, &threshold), Detail::Full);
        emit(sink, "tv-monotone", verifier.check_tv_monotone(&cfg.tv_points), Detail::Full);
    }
    Ok(())
}

/// Disjoint coordinate sets and one monotone event on each.
fn random_na_instance(
    ground: &GroundSet,
    rng: &mut ChaCha8Rng,
    max_generators: usize,
) -> (Event, Event, VertexSet, VertexSet) {
    let (mut va, mut vb) = (VertexSet::EMPTY, VertexSet::EMPTY);
    for v in 0..ground.size() {
        match rng.random_range(0..3) {
            0 => va.insert(v),
            1 => vb.insert(v),
            _ => {}
        }
    }
    let mut event_on = |support: VertexSet| {
        let count = rng.random_range(1..=max_generators.max(1));
        let gens: Vec<VertexSet> =
            (0..count).map(|_| VertexSet::from_bits(rng.random::<u64>()).intersection(support)).collect();
        let up = IncreasingEvent::upward_closure(ground.clone(), gens).to_event();
        if rng.random_bool(0.5) {
            up
        } else {
            up.complement()
        }
    };
    let a = event_on(va);
    let b = event_on(vb);
    (a, b, va, vb)
}

/// Pass/fail counts for one check name.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckTally {
    pub check: String,
    pub instances: u64,
    pub failures: u64,
    pub empirical: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<CheckReport>,
}

/// Tallies in [`CHECK_ORDER`]; names outside it are appended in
/// first-seen order.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Tallies(Vec<CheckTally>);

impl Tallies {
    pub fn new() -> Self {
        Tallies(
            CHECK_ORDER
                .iter()
                .map(|c| CheckTally {
                    check: (*c).to_owned(),
                    instances: 0,
                    failures: 0,
                    empirical: EMPIRICAL.contains(c),
                    first_failure: None,
                })
                .collect(),
        )
    }

    fn slot(&mut self, check: &str) -> &mut CheckTally {
        if let Some(i) = self.0.iter().position(|t| t.check == check) {
            &mut self.0[i]
        } else {
            self.0.push(CheckTally {
                check: check.to_owned(),
                instances: 0,
                failures: 0,
                empirical: EMPIRICAL.contains(&check),
                first_failure: None,
            });
            self.0.last_mut().expect("just pushed")
        }
    }

    pub fn record(&mut self, report: &CheckReport) {
        let t = self.slot(&report.check);
        t.instances += 1;
        if !report.holds {
            t.failures += 1;
            t.first_failure.get_or_insert_with(|| report.clone());
        }
    }

    pub fn merge(&mut self, other: &Tallies) {
        for o in &other.0 {
            let t = self.slot(&o.check);
            t.instances += o.instances;
            t.failures += o.failures;
            if t.first_failure.is_none() {
                t.first_failure = o.first_failure.clone();
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &CheckTally> {
        self.0.iter()
    }

    pub fn get(&self, check: &str) -> Option<&CheckTally> {
        self.0.iter().find(|t| t.check == check)
    }

    /// Failures of non-empirical checks.
    pub fn violations(&self) -> u64 {
        self.0.iter().filter(|t| !t.empirical).map(|t| t.failures).sum()
    }

    /// Failures of empirical checks.
    pub fn findings(&self) -> u64 {
        self.0.iter().filter(|t| t.empirical).map(|t| t.failures).sum()
    }

    pub fn instances(&self) -> u64 {
        self.0.iter().map(|t| t.instances).sum()
    }

    pub fn first_violation(&self) -> Option<&CheckReport> {
        self.0.iter().filter(|t| !t.empirical).find_map(|t| t.first_failure.as_ref())
    }
}

/// Result of the suite on one graph.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraphSummary {
    pub index: u64,
    pub graph: String,
    pub instances: u64,
    pub violations: u64,
    pub findings: u64,
    #[serde(skip)]
    pub tallies: Tallies,
}

pub fn summarize_graph(g: &BipartiteGraph, key: u64, cfg: &SuiteConfig) -> GraphSummary {
    let mut tallies = Tallies::new();
    if let Err(e) = run_graph_suite(g, key, cfg, &mut |r, _| tallies.record(&r)) {
        tallies.record(&error_report("suite", &e));
    }
    GraphSummary {
        index: key,
        graph: g.to_document(),
        instances: tallies.instances(),
        violations: tallies.violations(),
        findings: tallies.findings(),
        tallies,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub seed: u64,
    pub graphs: usize,
    pub instances: u64,
    pub violations: u64,
    pub findings: u64,
    pub passed: bool,
    pub checks: Tallies,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_witness: Option<CheckReport>,
    pub per_graph: Vec<GraphSummary>,
}

impl SweepReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Runs the suite on every graph (graph `i` uses key `i`) and aggregates.
pub fn run_sweep(graphs: &[BipartiteGraph], cfg: &SuiteConfig) -> SweepReport {
    let per_graph = map_indexed(cfg.exec, graphs, |i, g| summarize_graph(g, i as u64, cfg));
    let mut checks = Tallies::new();
    for s in &per_graph {
        checks.merge(&s.tallies);
    }
    SweepReport {
        seed: cfg.seed,
        graphs: graphs.len(),
        instances: checks.instances(),
        violations: checks.violations(),
        findings: checks.findings(),
        passed: checks.violations() == 0,
        first_witness: checks.first_violation().cloned(),
        checks,
        per_graph,
    }
}

/// Full report for a single graph.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub graph: String,
    pub seed: u64,
    pub passed: bool,
    pub violations: u64,
    pub findings: u64,
    pub summary: Tallies,
    /// Every report, except passing exhaustive-pair reports (counted only).
    pub reports: Vec<CheckReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub sensitivity_probe: Vec<CheckReport>,
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn run_verify(g: &BipartiteGraph, cfg: &SuiteConfig, extra: &[CheckReport]) -> Result<VerifyReport> {
    let mut summary = Tallies::new();
    let mut reports = Vec::new();
    run_graph_suite(g, 0, cfg, &mut |r, detail| {
        summary.record(&r);
        if detail == Detail::Full || !r.holds {
            reports.push(r);
        }
    })?;
    for r in extra {
        summary.record(r);
        reports.push(r.clone());
    }
    Ok(VerifyReport {
        graph: g.to_document(),
        seed: cfg.seed,
        passed: summary.violations() == 0,
        violations: summary.violations(),
        findings: summary.findings(),
        summary,
        reports,
        sensitivity_probe: Vec::new(),
    })
}
