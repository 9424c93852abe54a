#![allow(dead_code)]

use bkmatch::events::{GroundSet, IncreasingEvent};
use bkmatch::{parse_graph, BipartiteGraph};

/// S = {s1, s2}, T = {t1}, e0 = (s1, t1), e1 = (s2, t1).
pub fn two_edge_path() -> BipartiteGraph {
    parse_graph(r#"{"s":["s1","s2"],"t":["t1"],"edges":[["s1","t1"],["s2","t1"]]}"#).unwrap()
}

pub fn k11() -> BipartiteGraph {
    parse_graph(r#"{"s":["s1"],"t":["t1"],"edges":[["s1","t1"]]}"#).unwrap()
}

pub fn k11_weighted(w: &str) -> BipartiteGraph {
    parse_graph(&format!(r#"{{"s":["s1"],"t":["t1"],"edges":[["s1","t1","{w}"]]}}"#)).unwrap()
}

pub fn k22() -> BipartiteGraph {
    BipartiteGraph::from_pairs(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap()
}

pub fn up(ground: &GroundSet, generators: &[&[&str]]) -> IncreasingEvent {
    let sets = generators.iter().map(|names| ground.set_of(names).unwrap());
    IncreasingEvent::upward_closure(ground.clone(), sets)
}

pub fn q(s: &str) -> num_rational::BigRational {
    bkmatch::rational::parse_rational(s).unwrap()
}
