mod common;

use bkmatch::events::{GroundSet, IncreasingEvent};
use bkmatch::verify::*;
use bkmatch::{Event, SetFamily, VertexSet};
use common::*;

#[test]
fn bk_uniform() {
    let g = two_edge_path();
    let ground = GroundSet::from_graph(&g).unwrap();
    let r = check_bk(&g, &up(&ground, &[&["t1"]]), &up(&ground, &[&["s1"]])).unwrap();
    assert!(r.holds);
    assert_eq!((r.lhs.clone(), r.rhs.clone()), (q("1/3"), q("4/9")));

    let g = k11();
    let ground = GroundSet::from_graph(&g).unwrap();
    let a = up(&ground, &[&["t1"]]);
    let r = check_bk(&g, &a, &a).unwrap();
    assert_eq!((r.lhs.clone(), r.rhs.clone(), r.holds), (q("0"), q("1/4"), true));

    let always = IncreasingEvent::always(ground.clone());
    let r = check_bk(&g, &always, &a).unwrap();
    assert_eq!((r.lhs.clone(), r.rhs.clone()), (q("1/2"), q("1/2")));
}

#[test]
fn bk_weighted_and_maximum() {
    let g = k11_weighted("3");
    let ground = GroundSet::from_graph(&g).unwrap();
    let a = up(&ground, &[&["t1"]]);
    let r = check_bk_weighted(&g, &a, &a).unwrap();
    assert_eq!((r.lhs.clone(), r.rhs.clone(), r.holds), (q("0"), q("9/16"), true));

    let path = two_edge_path();
    let ground = GroundSet::from_graph(&path).unwrap();
    let (a, b) = (up(&ground, &[&["s1"]]), up(&ground, &[&["s2"]]));
    assert_eq!(check_bk_weighted(&path, &a, &b).unwrap().holds, check_bk(&path, &a, &b).unwrap().holds);
    let r = check_bk_maximum(&path, &a, &b).unwrap();
    assert_eq!((r.lhs.clone(), r.rhs.clone(), r.holds), (q("0"), q("1/4"), true));

    let g = k22();
    let ground = GroundSet::from_graph(&g).unwrap();
    let t = g.vertex_set().difference(g.s_set());
    for a in bkmatch::events::all_increasing_events(&ground).unwrap().iter().step_by(7) {
        for b in bkmatch::events::all_increasing_events(&ground).unwrap().iter().step_by(5) {
            let r = check_bk_maximum(&g, a, b).unwrap();
            assert!(r.holds);
            let in_box = bkmatch::events::box_increasing(a, b).unwrap().to_event().contains(t);
            assert_eq!(r.lhs, q(if in_box { "1" } else { "0" }));
        }
    }
}

#[test]
fn bk_conditioned() {
    let path = two_edge_path();
    let t1 = path.vertex_set_of(&["t1"]).unwrap();
    let sub = GroundSet::new(vec!["s1".into(), "s2".into()]).unwrap();
    let (a, b) = (up(&sub, &[&["s1"]]), up(&sub, &[&["s2"]]));
    let r = check_bk_conditioned(&path, t1, VertexSet::EMPTY, &a, &b).unwrap();
    assert_eq!((r.lhs.clone(), r.rhs.clone(), r.holds), (q("0"), q("1/4"), true));

    let full = GroundSet::from_graph(&path).unwrap();
    let (a, b) = (up(&full, &[&["t1"]]), up(&full, &[&["s1"]]));
    let plain = check_bk_weighted(&path, &a, &b).unwrap();
    let cond = check_bk_conditioned(&path, VertexSet::EMPTY, VertexSet::EMPTY, &a, &b).unwrap();
    assert_eq!((plain.lhs, plain.rhs), (cond.lhs, cond.rhs));

    // Conditioning on every vertex leaves an empty ground.
    let (s1, rest) = (path.vertex_set_of(&["s1", "t1"]).unwrap(), path.vertex_set_of(&["s2"]).unwrap());
    let empty = GroundSet::new(vec![]).unwrap();
    let always = IncreasingEvent::always(empty.clone());
    let r = check_bk_conditioned(&path, s1, rest, &always, &always).unwrap();
    assert!(r.holds && r.lhs == r.rhs);
}

#[test]
fn negative_association() {
    let path = two_edge_path();
    let ground = GroundSet::from_graph(&path).unwrap();
    let (s1, s2) = (path.vertex_set_of(&["s1"]).unwrap(), path.vertex_set_of(&["s2"]).unwrap());
    let a = up(&ground, &[&["s1"]]).to_event();
    let b = up(&ground, &[&["s2"]]).to_event();
    let r = check_na(&path, &a, &b, s1, s2).unwrap();
    assert_eq!((r.lhs.clone(), r.relation, r.rhs.clone(), r.holds), (q("1/3"), Relation::Le, q("4/9"), true));

    let r = check_na(&path, &a, &b.complement(), s1, s2).unwrap();
    assert_eq!((r.lhs.clone(), r.relation, r.rhs.clone(), r.holds), (q("1/3"), Relation::Ge, q("2/9"), true));

    let full = Event::full(ground.clone());
    let r = check_na(&path, &full, &b, s1, s2).unwrap();
    assert!(r.holds && r.lhs == r.rhs);

    assert!(check_na(&path, &a, &b, s1, s1).is_err());
    assert!(check_na(&path, &a, &b, s2, s1).is_err());
}

#[test]
fn submodularity() {
    let path = two_edge_path();
    let (s1, s2) = (path.vertex_set_of(&["s1"]).unwrap(), path.vertex_set_of(&["s2"]).unwrap());
    let r = check_submodularity(&path, s1, s2).unwrap();
    assert_eq!((r.lhs.clone(), r.relation, r.rhs.clone(), r.holds), (q("4/9"), Relation::Ge, q("1/3"), true));
    let both = s1.union(s2);
    for (x, y) in [(s1, s1), (s1, both)] {
        let r = check_submodularity(&path, x, y).unwrap();
        assert!(r.holds && r.lhs == r.rhs);
    }
}

#[test]
fn sensitivity() {
    let probe = sensitivity_probe();
    assert!(!probe.holds);
    assert_eq!((probe.lhs.clone(), probe.rhs.clone()), (q("1/2"), q("1/4")));
    assert!(probe.witness.is_some());
    let variants = sensitivity_probe_variants();
    assert_eq!(variants.iter().map(|r| r.holds).collect::<Vec<_>>(), vec![false, true, true]);
    assert_eq!((variants[2].lhs.clone(), variants[2].rhs.clone()), (q("1/4"), q("1/4")));
}

#[test]
fn reimer_small_universes() {
    for (n, pairs) in [(0usize, 4u64), (1, 16), (2, 256), (3, 65_536)] {
        let r = verify_reimer(n, ReimerMode::Exhaustive, 0).unwrap();
        assert!(r.holds, "universe {n}");
        assert_eq!(r.rhs, q(&pairs.to_string()));
    }
    assert!(verify_reimer(4, ReimerMode::Exhaustive, 0).is_err());
    assert!(verify_reimer(4, ReimerMode::Sampled { samples: 2000 }, 5).unwrap().holds);
}

#[test]
fn limit_checks() {
    let path = two_edge_path();
    let v = GraphVerifier::new(&path).unwrap();
    let (t, threshold) = default_limit_parameters();
    assert!(v.check_scaling_limit(&t, &threshold).unwrap().holds);
    let profile = v.tv_profile(&[q("1"), q("10"), q("100")]).unwrap();
    assert_eq!(profile, vec![q("1/3"), q("1/21"), q("1/201")]);
    assert!(v.check_tv_monotone(&[q("1"), q("10"), q("100"), q("1000")]).unwrap().holds);
}
