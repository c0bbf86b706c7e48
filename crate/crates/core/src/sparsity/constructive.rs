//! Detection of balanced (2,2)-tight subgraphs.
//!
//! A sparse graph is constructive when every (2,2)-tight subgraph on two or
//! more vertices carries a nontrivial gain space.

use serde::{Deserialize, Serialize};

use super::pebble::{pebble_game_sparse, PebbleGameState};
use super::tight::{enumerate_tight_subgraphs, TightSubgraph};
use super::SparsityParams;
use crate::error::{Error, Result};
use crate::graph::PeriodicOrbitGraph;
use crate::tgain::gain_space;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstructiveMethod {
    /// Pebble game with a balance test on each minimal tight region.
    #[default]
    Pebble,
    /// Every tight vertex subset; limited to small graphs.
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructiveReport {
    pub constructive: bool,
    /// A tight subgraph with trivial gain space, if any.
    pub witness: Option<TightSubgraph>,
}

pub fn is_constructive(graph: &PeriodicOrbitGraph) -> Result<ConstructiveReport> {
    is_constructive_with(graph, ConstructiveMethod::Pebble)
}

pub fn is_constructive_with(
    graph: &PeriodicOrbitGraph,
    method: ConstructiveMethod,
) -> Result<ConstructiveReport> {
    if !pebble_game_sparse(graph, SparsityParams::TORUS).sparse {
        return Err(Error::NotApplicable("graph is not (2,2)-sparse".into()));
    }
    match method {
        ConstructiveMethod::Pebble => Ok(pebble_region_search(graph)),
        ConstructiveMethod::Exhaustive => exhaustive_search(graph),
    }
}

pub fn is_constructive_exhaustive(graph: &PeriodicOrbitGraph) -> Result<ConstructiveReport> {
    is_constructive_with(graph, ConstructiveMethod::Exhaustive)
}

fn witness_if_balanced(graph: &PeriodicOrbitGraph, vertices: &[u32]) -> Option<TightSubgraph> {
    let (sub, _) = graph.induced_subgraph(vertices).ok()?;
    if !gain_space(&sub).is_trivial() {
        return None;
    }
    let inside = |v: u32| vertices.binary_search(&v).is_ok();
    Some(TightSubgraph {
        vertices: vertices.to_vec(),
        edges: graph
            .edges()
            .iter()
            .filter(|e| inside(e.tail) && inside(e.head))
            .map(|e| e.id)
            .collect(),
    })
}

// After inserting edge uv, failing to gather three pebbles on u, v means the
// vertices reachable from them form the smallest tight set containing both.
// A balanced tight set T contains the region found for its last edge, and
// subgraphs of a balanced graph are balanced, so that region is a witness.
fn pebble_region_search(graph: &PeriodicOrbitGraph) -> ConstructiveReport {
    let mut state = PebbleGameState::new(graph.vertex_count(), SparsityParams::TORUS);
    for e in graph.edges() {
        let inserted = state.try_insert(e.id, e.tail, e.head);
        debug_assert!(inserted, "sparse graph rejected an edge");
        if let Err(region) = state.gather(e.tail, e.head, 3) {
            if let Some(w) = witness_if_balanced(graph, &region) {
                return ConstructiveReport {
                    constructive: false,
                    witness: Some(w),
                };
            }
        }
    }
    ConstructiveReport {
        constructive: true,
        witness: None,
    }
}

fn exhaustive_search(graph: &PeriodicOrbitGraph) -> Result<ConstructiveReport> {
    for t in enumerate_tight_subgraphs(graph, SparsityParams::TORUS)? {
        if t.vertices.len() < 2 {
            continue;
        }
        if witness_if_balanced(graph, &t.vertices).is_some() {
            return Ok(ConstructiveReport {
                constructive: false,
                witness: Some(t),
            });
        }
    }
    Ok(ConstructiveReport {
        constructive: true,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn both(g: &PeriodicOrbitGraph) -> (ConstructiveReport, ConstructiveReport) {
        (
            is_constructive_with(g, ConstructiveMethod::Pebble).unwrap(),
            is_constructive_with(g, ConstructiveMethod::Exhaustive).unwrap(),
        )
    }

    #[test]
    fn fig1_is_constructive() {
        let g = PeriodicOrbitGraph::from_triples(
            4,
            &[
                (1, 2, (0, 0)),
                (2, 3, (0, 0)),
                (3, 4, (0, 0)),
                (1, 4, (0, 0)),
                (1, 3, (-1, 0)),
                (1, 4, (0, 1)),
            ],
        )
        .unwrap();
        let (fast, slow) = both(&g);
        assert!(fast.constructive && slow.constructive);
    }

    #[test]
    fn zero_gain_double_edge() {
        let g = PeriodicOrbitGraph::from_triples(2, &[(1, 2, (0, 0)), (2, 1, (0, 0))]).unwrap();
        let (fast, slow) = both(&g);
        assert!(!fast.constructive);
        assert_eq!(fast.witness.unwrap().vertices, vec![1, 2]);
        assert_eq!(slow.witness.unwrap().vertices, vec![1, 2]);
    }

    #[test]
    fn balanced_double_edge_inside_rigid_triangle() {
        // {1,2} is tight and balanced even though the triangle is not
        let g = PeriodicOrbitGraph::from_triples(
            3,
            &[
                (1, 2, (0, 0)),
                (2, 3, (0, 0)),
                (3, 1, (0, 0)),
                (1, 2, (0, 0)),
            ],
        )
        .unwrap();
        let (fast, slow) = both(&g);
        assert!(!fast.constructive && !slow.constructive);
        assert_eq!(fast.witness.unwrap().vertices, vec![1, 2]);
    }

    #[test]
    fn not_applicable_when_dense() {
        let g = PeriodicOrbitGraph::from_triples(1, &[(1, 1, (1, 0))]).unwrap();
        assert!(matches!(is_constructive(&g), Err(Error::NotApplicable(_))));
    }

    fn sparse_graph(max_n: u32, max_e: usize) -> impl Strategy<Value = PeriodicOrbitGraph> {
        (2..=max_n).prop_flat_map(move |n| {
            prop::collection::vec((1..=n, 1..=n, -1i64..=1, -1i64..=1, 0u8..3), 0..=max_e).prop_map(
                move |raw| {
                    let mut g = PeriodicOrbitGraph::new(n, Vec::new()).unwrap();
                    for (t, h, a, b, zero) in raw {
                        let gain = if zero == 0 { (0, 0) } else { (a, b) };
                        let mut trial = g.clone();
                        trial.add_edge(t, h, gain.into()).unwrap();
                        if pebble_game_sparse(&trial, SparsityParams::TORUS).sparse {
                            g = trial;
                        }
                    }
                    g
                },
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1500))]
        #[test]
        fn fast_path_matches_exhaustive(g in sparse_graph(7, 16)) {
            let (fast, slow) = both(&g);
            prop_assert_eq!(fast.constructive, slow.constructive);
            if let Some(w) = fast.witness {
                let (sub, _) = g.induced_subgraph(&w.vertices).unwrap();
                prop_assert!(gain_space(&sub).is_trivial());
                prop_assert_eq!(sub.edge_count(), 2 * w.vertices.len() - 2);
            }
        }
    }
}
