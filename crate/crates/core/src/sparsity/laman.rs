//! The combinatorial test for generic minimal rigidity on the fixed torus:
//! `|E| = 2|V| - 2`, (2,2)-sparse, and no balanced tight subgraph.

use serde::{Deserialize, Serialize};

use super::constructive::{is_constructive_with, ConstructiveMethod, ConstructiveReport};
use super::pebble::pebble_game_sparse;
use super::tight::TightSubgraph;
use super::SparsityParams;
use crate::error::Result;
use crate::graph::{EdgeId, PeriodicOrbitGraph};
use crate::tgain::gain_space;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum LamanVerdict {
    Ok,
    CountFailure { edges: usize, expected: i64 },
    TightFailure { rejected: Vec<EdgeId> },
    NonConstructive { witness: TightSubgraph },
}

impl LamanVerdict {
    pub fn reason(&self) -> &'static str {
        match self {
            LamanVerdict::Ok => "ok",
            LamanVerdict::CountFailure { .. } => "count-failure",
            LamanVerdict::TightFailure { .. } => "tight-failure",
            LamanVerdict::NonConstructive { .. } => "non-constructive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LamanReport {
    pub minimally_rigid: bool,
    pub verdict: LamanVerdict,
}

pub fn periodic_laman_check(graph: &PeriodicOrbitGraph) -> LamanReport {
    periodic_laman_check_with(graph, ConstructiveMethod::Pebble)
        .expect("pebble path has no size limit")
}

/// Fails only when the exhaustive method is asked for on a graph that is too large.
pub fn periodic_laman_check_with(
    graph: &PeriodicOrbitGraph,
    method: ConstructiveMethod,
) -> Result<LamanReport> {
    let expected = SparsityParams::TORUS.bound(graph.vertex_count());
    let verdict = if graph.edge_count() as i64 != expected {
        LamanVerdict::CountFailure {
            edges: graph.edge_count(),
            expected,
        }
    } else {
        let sparsity = pebble_game_sparse(graph, SparsityParams::TORUS);
        if !sparsity.sparse {
            LamanVerdict::TightFailure {
                rejected: sparsity.rejected,
            }
        } else {
            match is_constructive_with(graph, method)? {
                ConstructiveReport {
                    witness: Some(witness),
                    ..
                } => LamanVerdict::NonConstructive { witness },
                _ => LamanVerdict::Ok,
            }
        }
    };
    Ok(LamanReport {
        minimally_rigid: verdict == LamanVerdict::Ok,
        verdict,
    })
}

/// Summary written by `check`: the witness is the balanced tight subgraph
/// found, and the rank is that of its gain space (of the whole graph if none).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub tight: bool,
    pub constructive: bool,
    pub witness_vertices: Vec<u32>,
    pub gain_space_rank: usize,
}

impl WitnessReport {
    pub fn new(graph: &PeriodicOrbitGraph, report: &LamanReport) -> Self {
        let tight = pebble_game_sparse(graph, SparsityParams::TORUS).tight;
        match &report.verdict {
            LamanVerdict::NonConstructive { witness } => {
                let rank = graph
                    .induced_subgraph(&witness.vertices)
                    .map(|(sub, _)| gain_space(&sub).rank())
                    .unwrap_or(0);
                WitnessReport {
                    tight,
                    constructive: false,
                    witness_vertices: witness.vertices.clone(),
                    gain_space_rank: rank,
                }
            }
            verdict => WitnessReport {
                tight,
                constructive: *verdict == LamanVerdict::Ok,
                witness_vertices: Vec::new(),
                gain_space_rank: gain_space(graph).rank(),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig1() -> PeriodicOrbitGraph {
        PeriodicOrbitGraph::from_triples(
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
        .unwrap()
    }

    #[test]
    fn fig1_passes() {
        let r = periodic_laman_check(&fig1());
        assert!(r.minimally_rigid);
        assert_eq!(r.verdict.reason(), "ok");
        let w = WitnessReport::new(&fig1(), &r);
        assert!(w.tight && w.constructive);
        assert_eq!(w.gain_space_rank, 2);
    }

    #[test]
    fn each_failure_reason() {
        let mut g = fig1();
        g.remove_edge(6);
        assert_eq!(
            periodic_laman_check(&g).verdict,
            LamanVerdict::CountFailure {
                edges: 5,
                expected: 6
            }
        );

        let dense = PeriodicOrbitGraph::from_triples(
            3,
            &[
                (1, 2, (0, 0)),
                (1, 2, (1, 0)),
                (1, 2, (0, 1)),
                (2, 3, (0, 0)),
            ],
        )
        .unwrap();
        assert_eq!(
            periodic_laman_check(&dense).verdict,
            LamanVerdict::TightFailure { rejected: vec![3] }
        );

        let balanced = fig1().map_gains(|_| (0, 0).into());
        let r = periodic_laman_check(&balanced);
        assert_eq!(r.verdict.reason(), "non-constructive");
        let w = WitnessReport::new(&balanced, &r);
        assert!(w.tight && !w.constructive);
        assert_eq!(w.witness_vertices, vec![1, 4]);
        assert_eq!(w.gain_space_rank, 0);
    }

    #[test]
    fn verdict_json_shape() {
        let json = serde_json::to_value(LamanVerdict::CountFailure {
            edges: 1,
            expected: 2,
        })
        .unwrap();
        assert_eq!(json["reason"], "count-failure");
    }

    #[test]
    fn exhaustive_method_agrees_on_fig1() {
        let r = periodic_laman_check_with(&fig1(), ConstructiveMethod::Exhaustive).unwrap();
        assert_eq!(r, periodic_laman_check(&fig1()));
    }
}
