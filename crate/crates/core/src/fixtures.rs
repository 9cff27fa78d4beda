//! Small named hypergraphs used by tests, the demo command and docs.

use crate::hypergraph::{build_hypergraph, Hypergraph};
use crate::io::{EdgeSpec, HypergraphSpec};

/// Four vertices, `e1 = {v1, v2, v3}` and `e2 = {v1, v3, v4}`, unit edge
/// weights, `γ_e1(v1) = 2` and every other vertex weight 1.
///
/// Its walk is not time-reversible, so no graph on the same vertices
/// reproduces it. Stationary distribution `(7, 2, 5, 3) / 17`.
pub fn h3() -> Hypergraph {
    let spec = HypergraphSpec {
        vertices: ["v1", "v2", "v3", "v4"].map(String::from).to_vec(),
        edges: vec![
            EdgeSpec {
                weight: 1.0,
                members: vec![("v1".into(), 2.0), ("v2".into(), 1.0), ("v3".into(), 1.0)],
            },
            EdgeSpec {
                weight: 1.0,
                members: vec![("v1".into(), 1.0), ("v3".into(), 1.0), ("v4".into(), 1.0)],
            },
        ],
    };
    build_hypergraph(&spec).expect("H3 is valid")
}

/// One edge of `k` vertices named `a`, `b`, ... (or `x0`, `x1`, ... past 26),
/// with `ω = 1` and all `γ = 1`.
pub fn trivial_edge(k: usize) -> Hypergraph {
    let names: Vec<String> = (0..k)
        .map(|i| {
            if k <= 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("x{i}")
            }
        })
        .collect();
    let spec = HypergraphSpec {
        edges: vec![EdgeSpec {
            weight: 1.0,
            members: names.iter().map(|n| (n.clone(), 1.0)).collect(),
        }],
        vertices: names,
    };
    build_hypergraph(&spec).expect("single edge is valid")
}
