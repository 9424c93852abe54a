//! Brute-force check of `|X □ Y| <= |X ∩ reflect(Y)|` for arbitrary
//! families, and the falsifiability probe for the BK checker.

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{check_bk_on, describe_event, describe_increasing, int, CheckReport, Relation};
use crate::distribution::{BoundaryDistribution, Provenance};
use crate::error::{Error, Result};
use crate::par::{map_range, ExecMode};
use crate::events::{box_general, random_event_with, Event, GroundSet, IncreasingEvent, GENERAL_BOX_CAP};
use crate::vertex_set::VertexSet;

/// Exhaustive mode covers `2^(2^n)` squared pairs; 65 536 at `n = 3`.
pub const REIMER_EXHAUSTIVE_CAP: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReimerMode {
    Exhaustive,
    Sampled { samples: usize },
}

fn reimer_holds(x: &Event, y: &Event) -> Result<(usize, usize)> {
    let lhs = box_general(x, y)?.len();
    let rhs = x.intersection(&y.reflect())?.len();
    Ok((lhs, rhs))
}

/// `lhs` counts the pairs satisfying the inequality, `rhs` the pairs tried.
pub fn verify_reimer(u_size: usize, mode: ReimerMode, seed: u64) -> Result<CheckReport> {
    verify_reimer_with(u_size, mode, seed, ExecMode::default())
}

/// [`verify_reimer`] with an explicit execution mode. Pairs are drawn in a
/// fixed order and results are tallied in that order.
pub fn verify_reimer_with(u_size: usize, mode: ReimerMode, seed: u64, exec: ExecMode) -> Result<CheckReport> {
    let ground = GroundSet::anonymous(u_size)?;
    let (xs, ys): (Vec<Event>, Vec<Event>) = match mode {
        ReimerMode::Exhaustive => {
            if u_size > REIMER_EXHAUSTIVE_CAP {
                return Err(Error::ExhaustiveCapExceeded(u_size, REIMER_EXHAUSTIVE_CAP));
            }
            let families = 1u64 << (1u32 << u_size);
            let events: Vec<Event> = (0..families).map(|f| Event::from_bits(ground.clone(), vec![f])).collect();
            (events.clone(), events)
        }
        ReimerMode::Sampled { samples } => {
            if u_size > GENERAL_BOX_CAP {
                return Err(Error::GeneralBoxTooLarge(u_size, GENERAL_BOX_CAP));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples).map(|_| (random_event_with(&ground, &mut rng), random_event_with(&ground, &mut rng))).unzip()
        }
    };
    let pair = |i: usize| match mode {
        ReimerMode::Exhaustive => (&xs[i / ys.len()], &ys[i % ys.len()]),
        ReimerMode::Sampled { .. } => (&xs[i], &ys[i]),
    };
    let count = match mode {
        ReimerMode::Exhaustive => xs.len() * ys.len(),
        ReimerMode::Sampled { .. } => xs.len(),
    };
    let outcomes = map_range(exec, count, |i| {
        let (x, y) = pair(i);
        reimer_holds(x, y)
    });
    let mut good = 0u64;
    let mut witness = None;
    for (i, outcome) in outcomes.into_iter().enumerate() {
        let (lhs, rhs) = outcome?;
        if lhs <= rhs {
            good += 1;
        } else if witness.is_none() {
            let (x, y) = pair(i);
            witness = Some(json!({
                "x": describe_event(x),
                "y": describe_event(y),
                "box": lhs,
                "x_and_reflected_y": rhs,
            }));
        }
    }
    let tried = count as u64;
    let instance = json!({
        "universe": u_size,
        "mode": match mode { ReimerMode::Exhaustive => "exhaustive".to_owned(), ReimerMode::Sampled { samples } => format!("sampled:{samples}") },
        "seed": seed,
    });
    let report = CheckReport::compare("reimer", instance, int(good), Relation::Eq, int(tried));
    Ok(match witness {
        Some(w) => report.fail_with(w),
        None => report,
    })
}

fn two_point_ground() -> GroundSet {
    GroundSet::new(vec!["a".into(), "b".into()]).expect("two labels")
}

fn probe(d: &BoundaryDistribution, a: &IncreasingEvent, b: &IncreasingEvent, label: &str) -> CheckReport {
    let instance = json!({ "distribution": label, "a": describe_increasing(a), "b": describe_increasing(b) });
    check_bk_on("sensitivity-probe", d, a, b, instance).expect("shared ground")
}

/// BK on the positively correlated law uniform on `{∅, {a, b}}` with
/// `A = up({a})`, `B = up({b})`: `1/2 > 1/4`, so this report must fail.
pub fn sensitivity_probe() -> CheckReport {
    sensitivity_probe_variants().swap_remove(0)
}

/// The designed failure, then two controls that must hold: the same law
/// with `A` the full powerset, and the product measure with `p = 1/2`.
pub fn sensitivity_probe_variants() -> Vec<CheckReport> {
    let ground = two_point_ground();
    let (sa, sb) = (VertexSet::singleton(0), VertexSet::singleton(1));
    let a = IncreasingEvent::upward_closure(ground.clone(), [sa]);
    let b = IncreasingEvent::upward_closure(ground.clone(), [sb]);
    let correlated = BoundaryDistribution::from_masses(
        ground.clone(),
        [(VertexSet::EMPTY, BigUint::one()), (sa.union(sb), BigUint::one())],
        Provenance::Custom,
    )
    .expect("valid masses");
    let product = BoundaryDistribution::from_masses(
        ground.clone(),
        (0..4u64).map(|m| (VertexSet::from_bits(m), BigUint::one())),
        Provenance::Custom,
    )
    .expect("valid masses");
    vec![
        probe(&correlated, &a, &b, "uniform on {}, {a,b}"),
        probe(&correlated, &IncreasingEvent::always(ground), &b, "uniform on {}, {a,b}"),
        probe(&product, &a, &b, "product p=1/2"),
    ]
}
