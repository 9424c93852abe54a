//! Exact checkers for the correlation inequalities and for every identity
//! used in the switching-cell argument.
//!
//! Every checker returns a [`CheckReport`] whose verdict is an exact
//! rational comparison. A `CheckReport` that does not hold carries a
//! witness describing the offending instance.

mod chain;
mod reimer;

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::distribution::{
    condition, scaled_distribution, total_variation, uniform_over, weighted_over,
    BoundaryDistribution, Provenance,
};
use crate::error::{Error, Result};
use crate::events::{box_increasing, Event, GroundSet, IncreasingEvent, SetFamily};
use crate::graph::BipartiteGraph;
use crate::matching::{enumerate_all_matchings, maximum_only, Matching};
use crate::rational::serde_rational;
use crate::vertex_set::VertexSet;

pub use chain::PreparedCells;
pub use reimer::{
    sensitivity_probe, sensitivity_probe_variants, verify_reimer, verify_reimer_with, ReimerMode, REIMER_EXHAUSTIVE_CAP,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "==")]
    Eq,
    #[serde(rename = "<")]
    Lt,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "==",
            Relation::Lt => "<",
        }
    }

    pub fn holds(self, lhs: &BigRational, rhs: &BigRational) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Lt => lhs < rhs,
        }
    }
}

/// Outcome of one check on one instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub instance: Value,
    #[serde(with = "serde_rational")]
    pub lhs: BigRational,
    pub relation: Relation,
    #[serde(with = "serde_rational")]
    pub rhs: BigRational,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl CheckReport {
    /// Builds a report whose verdict is `lhs relation rhs`.
    pub fn compare(check: &str, instance: Value, lhs: BigRational, relation: Relation, rhs: BigRational) -> Self {
        let holds = relation.holds(&lhs, &rhs);
        let witness = (!holds).then(|| instance.clone());
        CheckReport { check: check.to_owned(), instance, lhs, relation, rhs, holds, witness }
    }

    /// Marks the report failed with an explicit witness, whatever the
    /// comparison said.
    pub fn fail_with(mut self, witness: Value) -> Self {
        self.holds = false;
        self.witness = Some(witness);
        self
    }
}

pub(crate) fn int(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn big(n: &num_bigint::BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

pub fn describe_increasing(e: &IncreasingEvent) -> Value {
    json!({ "generators": e.to_names() })
}

pub fn describe_event(e: &Event) -> Value {
    json!({ "members": e.to_names() })
}

/// `P(a □ b) <= P(a) P(b)` under an arbitrary distribution, for up-sets.
pub fn check_bk_on(
    check: &str,
    d: &BoundaryDistribution,
    a: &IncreasingEvent,
    b: &IncreasingEvent,
    instance: Value,
) -> Result<CheckReport> {
    if a.ground() != d.ground() || b.ground() != d.ground() {
        return Err(Error::GroundMismatch);
    }
    let ab = box_increasing(a, b)?;
    let total = big(d.total_mass());
    let lhs = big(&d.event_mass(&ab)) / &total;
    let rhs = big(&d.event_mass(a)) * big(&d.event_mass(b)) / (&total * &total);
    Ok(CheckReport::compare(check, instance, lhs, Relation::Le, rhs))
}

/// Caches the per-graph objects every checker needs: the matching list,
/// the three unconditioned laws, and the cell catalog.
pub struct GraphVerifier<'g> {
    g: &'g BipartiteGraph,
    ground: GroundSet,
    matchings: Vec<Matching>,
    uniform: OnceLock<BoundaryDistribution>,
    weighted: OnceLock<BoundaryDistribution>,
    maximum: OnceLock<BoundaryDistribution>,
    cells: OnceLock<std::result::Result<PreparedCells, Error>>,
    weight_constancy: OnceLock<CheckReport>,
    document: OnceLock<Value>,
}

impl<'g> GraphVerifier<'g> {
    pub fn new(g: &'g BipartiteGraph) -> Result<Self> {
        Ok(GraphVerifier {
            g,
            ground: GroundSet::from_graph(g)?,
            matchings: enumerate_all_matchings(g),
            uniform: OnceLock::new(),
            weighted: OnceLock::new(),
            maximum: OnceLock::new(),
            cells: OnceLock::new(),
            weight_constancy: OnceLock::new(),
            document: OnceLock::new(),
        })
    }

    pub fn graph(&self) -> &'g BipartiteGraph {
        self.g
    }

    fn document(&self) -> Value {
        self.document.get_or_init(|| Value::String(self.g.to_document())).clone()
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn matchings(&self) -> &[Matching] {
        &self.matchings
    }

    pub fn uniform(&self) -> &BoundaryDistribution {
        self.uniform
            .get_or_init(|| uniform_over(self.g, &self.matchings, Provenance::Uniform).expect("ground validated"))
    }

    pub fn weighted(&self) -> &BoundaryDistribution {
        self.weighted
            .get_or_init(|| weighted_over(self.g, &self.matchings, Provenance::Weighted).expect("ground validated"))
    }

    pub fn maximum(&self) -> &BoundaryDistribution {
        self.maximum.get_or_init(|| {
            let max = maximum_only(self.matchings.clone());
            uniform_over(self.g, &max, Provenance::Maximum).expect("ground validated")
        })
    }

    pub fn cells(&self) -> Result<&PreparedCells> {
        self.cells
            .get_or_init(|| PreparedCells::new(self.g, &self.matchings))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn pair_instance(&self, a: &IncreasingEvent, b: &IncreasingEvent) -> Value {
        json!({ "graph": self.document(), "a": describe_increasing(a), "b": describe_increasing(b) })
    }

    /// BK for the uniform random matching.
    pub fn check_bk(&self, a: &IncreasingEvent, b: &IncreasingEvent) -> Result<CheckReport> {
        check_bk_on("bk", self.uniform(), a, b, self.pair_instance(a, b))
    }

    /// BK for the weighted measure, plus constancy of `w(C) w(D)` on every
    /// cell.
    pub fn check_bk_weighted(&self, a: &IncreasingEvent, b: &IncreasingEvent) -> Result<CheckReport> {
        let report = check_bk_on("bk-weighted", self.weighted(), a, b, self.pair_instance(a, b))?;
        let constancy = self.check_cell_weights()?;
        Ok(if constancy.holds {
            report
        } else {
            report.fail_with(json!({ "cell_weights": constancy.witness }))
        })
    }

    /// BK for `B'(M')` under the weighted measure conditioned on
    /// `V+ ⊆ B(M)`, `V- ∩ B(M) = ∅`; `a`, `b` live on `V' = V \ (V+ ∪ V-)`.
    pub fn check_bk_conditioned(
        &self,
        v_plus: VertexSet,
        v_minus: VertexSet,
        a: &IncreasingEvent,
        b: &IncreasingEvent,
    ) -> Result<CheckReport> {
        let d = condition(self.weighted(), v_plus, v_minus)?;
        self.check_bk_conditioned_on(&d, v_plus, v_minus, a, b)
    }

    /// As [`check_bk_conditioned`](Self::check_bk_conditioned) with the
    /// conditioned law supplied by the caller.
    pub fn check_bk_conditioned_on(
        &self,
        d: &BoundaryDistribution,
        v_plus: VertexSet,
        v_minus: VertexSet,
        a: &IncreasingEvent,
        b: &IncreasingEvent,
    ) -> Result<CheckReport> {
        let instance = json!({
            "graph": self.document(),
            "v_plus": self.g.names_of(v_plus),
            "v_minus": self.g.names_of(v_minus),
            "a": describe_increasing(a),
            "b": describe_increasing(b),
        });
        check_bk_on("bk-conditioned", d, a, b, instance)
    }

    /// BK for the uniform random maximum matching.
    pub fn check_bk_maximum(&self, a: &IncreasingEvent, b: &IncreasingEvent) -> Result<CheckReport> {
        check_bk_on("bk-maximum", self.maximum(), a, b, self.pair_instance(a, b))
    }

    /// Negative association under the weighted measure: events on disjoint
    /// coordinate sets, each increasing or decreasing.
    pub fn check_na(&self, a: &Event, b: &Event, v0_a: VertexSet, v0_b: VertexSet) -> Result<CheckReport> {
        check_na_on(self.weighted(), a, b, v0_a, v0_b, json!({ "graph": self.document() }))
    }

    /// `P(X ⊆ B) P(Y ⊆ B) >= P(X ∩ Y ⊆ B) P(X ∪ Y ⊆ B)` under the weighted
    /// measure.
    pub fn check_submodularity(&self, x: VertexSet, y: VertexSet) -> CheckReport {
        let d = self.weighted();
        let p = |s: VertexSet| d.probability_where(|b| s.is_subset(b));
        let instance = json!({
            "graph": self.document(),
            "x": self.g.names_of(x),
            "y": self.g.names_of(y),
        });
        CheckReport::compare(
            "submodularity",
            instance,
            p(x) * p(y),
            Relation::Ge,
            p(x.intersection(y)) * p(x.union(y)),
        )
    }

    /// `w(C) w(D)` is the same for every pair of each cell.
    pub fn check_cell_weights(&self) -> Result<CheckReport> {
        if let Some(r) = self.weight_constancy.get() {
            return Ok(r.clone());
        }
        let report = self.cells()?.check_weight_constancy(self.g);
        Ok(self.weight_constancy.get_or_init(|| report).clone())
    }

    /// Partition of `M × M` into the cells `X_i`.
    pub fn verify_partition(&self) -> Result<CheckReport> {
        chain::verify_partition(self.g, &self.matchings)
    }

    /// Partition of `M' × M'` into the cells `X_i`, `i ∈ I'`.
    pub fn verify_partition_conditioned(&self, v_plus: VertexSet, v_minus: VertexSet) -> Result<CheckReport> {
        chain::verify_partition_conditioned(self.g, &self.matchings, v_plus, v_minus)
    }

    /// Event-independent cell identities (boundary images, τ complement and
    /// bijectivity, boundary sizes).
    pub fn verify_cell_structure(&self) -> Result<CheckReport> {
        Ok(self.cells()?.structure_report(self.g))
    }

    /// The per-cell chain for `a`, `b`, summed back to the global count
    /// inequality.
    pub fn verify_cell_chain(&self, a: &IncreasingEvent, b: &IncreasingEvent) -> Result<CheckReport> {
        if a.ground() != &self.ground || b.ground() != &self.ground {
            return Err(Error::GroundMismatch);
        }
        let cells = self.cells()?;
        let structure = cells.structure_report(self.g);
        let mut report = cells.chain_report(self.g, &self.matchings, a, b, self.pair_instance(a, b))?;
        if !structure.holds {
            report = report.fail_with(json!({ "structure": structure.witness }));
        }
        Ok(report)
    }

    /// `TV(law at scale t, maximum-matching law) < threshold`.
    pub fn check_scaling_limit(&self, t: &BigRational, threshold: &BigRational) -> Result<CheckReport> {
        let tv = total_variation(&scaled_distribution(self.g, t)?, self.maximum())?;
        let instance = json!({ "graph": self.document(), "t": t.to_string() });
        Ok(CheckReport::compare("scaling-limit", instance, tv, Relation::Lt, threshold.clone()))
    }

    /// `TV(law at scale t, maximum-matching law)` for each `t`.
    pub fn tv_profile(&self, ts: &[BigRational]) -> Result<Vec<BigRational>> {
        ts.iter()
            .map(|t| total_variation(&scaled_distribution(self.g, t)?, self.maximum()))
            .collect()
    }

    /// Empirical: the TV profile over increasing `ts` is non-increasing.
    /// The limit statement says nothing about monotonicity, so callers treat
    /// a failure here as a finding.
    pub fn check_tv_monotone(&self, ts: &[BigRational]) -> Result<CheckReport> {
        let profile = self.tv_profile(ts)?;
        let worst_rise = profile
            .windows(2)
            .map(|w| &w[1] - &w[0])
            .fold(BigRational::zero(), |acc, d| if d > acc { d } else { acc });
        let instance = json!({
            "graph": self.document(),
            "t": ts.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            "tv": profile.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        });
        Ok(CheckReport::compare("tv-monotone", instance, worst_rise, Relation::Le, BigRational::zero()))
    }
}

/// Negative association on an arbitrary distribution.
pub fn check_na_on(
    d: &BoundaryDistribution,
    a: &Event,
    b: &Event,
    v0_a: VertexSet,
    v0_b: VertexSet,
    mut instance: Value,
) -> Result<CheckReport> {
    let pre = |msg: &str| Err(Error::PreconditionFailed(msg.to_owned()));
    if a.ground() != d.ground() || b.ground() != d.ground() {
        return Err(Error::GroundMismatch);
    }
    if !v0_a.is_disjoint(v0_b) {
        return pre("dependency sets overlap");
    }
    if !a.depends_only_on(v0_a) || !b.depends_only_on(v0_b) {
        return pre("event depends on coordinates outside its set");
    }
    let monotone = |e: &Event| {
        if e.is_increasing() {
            Some(true)
        } else if e.is_decreasing() {
            Some(false)
        } else {
            None
        }
    };
    let (Some(a_up), Some(b_up)) = (monotone(a), monotone(b)) else {
        return pre("event is neither increasing nor decreasing");
    };
    let relation = if a_up == b_up { Relation::Le } else { Relation::Ge };
    let total = big(d.total_mass());
    let ab = a.intersection(b)?;
    let lhs = big(&d.event_mass(&ab)) / &total;
    let rhs = big(&d.event_mass(a)) * big(&d.event_mass(b)) / (&total * &total);
    if let Value::Object(map) = &mut instance {
        map.insert("a".into(), describe_event(a));
        map.insert("b".into(), describe_event(b));
        map.insert("v0_a".into(), json!(d.ground().names_of(v0_a)));
        map.insert("v0_b".into(), json!(d.ground().names_of(v0_b)));
    }
    Ok(CheckReport::compare("negative-association", instance, lhs, relation, rhs))
}

pub fn check_bk(g: &BipartiteGraph, a: &IncreasingEvent, b: &IncreasingEvent) -> Result<CheckReport> {
    GraphVerifier::new(g)?.check_bk(a, b)
}

pub fn check_bk_weighted(g: &BipartiteGraph, a: &IncreasingEvent, b: &IncreasingEvent) -> Result<CheckReport> {
    GraphVerifier::new(g)?.check_bk_weighted(a, b)
}

pub fn check_bk_conditioned(
    g: &BipartiteGraph,
    v_plus: VertexSet,
    v_minus: VertexSet,
    a: &IncreasingEvent,
    b: &IncreasingEvent,
) -> Result<CheckReport> {
    GraphVerifier::new(g)?.check_bk_conditioned(v_plus, v_minus, a, b)
}

pub fn check_bk_maximum(g: &BipartiteGraph, a: &IncreasingEvent, b: &IncreasingEvent) -> Result<CheckReport> {
    GraphVerifier::new(g)?.check_bk_maximum(a, b)
}

pub fn check_na(g: &BipartiteGraph, a: &Event, b: &Event, v0_a: VertexSet, v0_b: VertexSet) -> Result<CheckReport> {
    GraphVerifier::new(g)?.check_na(a, b, v0_a, v0_b)
}

pub fn check_submodularity(g: &BipartiteGraph, x: VertexSet, y: VertexSet) -> Result<CheckReport> {
    Ok(GraphVerifier::new(g)?.check_submodularity(x, y))
}

pub fn verify_partition(g: &BipartiteGraph) -> Result<CheckReport> {
    GraphVerifier::new(g)?.verify_partition()
}

pub fn verify_cell_chain(g: &BipartiteGraph, a: &IncreasingEvent, b: &IncreasingEvent) -> Result<CheckReport> {
    GraphVerifier::new(g)?.verify_cell_chain(a, b)
}

/// The suite's TV threshold and scale for the large-`t` limit.
pub fn default_limit_parameters() -> (BigRational, BigRational) {
    (int(1_000_000), BigRational::new(1.into(), 1000.into()))
}
