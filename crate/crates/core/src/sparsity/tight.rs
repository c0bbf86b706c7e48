//! Brute-force enumeration of tight vertex subsets.

use serde::{Deserialize, Serialize};

use super::SparsityParams;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, PeriodicOrbitGraph, VertexId};

/// Largest vertex count accepted by the exhaustive routines.
pub const EXHAUSTIVE_BOUND: usize = 14;

/// A connected vertex subset whose induced edge count meets the bound.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TightSubgraph {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

pub fn enumerate_tight_subgraphs(
    graph: &PeriodicOrbitGraph,
    params: SparsityParams,
) -> Result<Vec<TightSubgraph>> {
    enumerate_tight_subgraphs_with_bound(graph, params, EXHAUSTIVE_BOUND)
}

/// All connected induced subgraphs with `|E'| = 2|V'| - l`, ordered by size
/// and then by vertex list. Singletons appear when `l = 2`.
pub fn enumerate_tight_subgraphs_with_bound(
    graph: &PeriodicOrbitGraph,
    params: SparsityParams,
    bound: usize,
) -> Result<Vec<TightSubgraph>> {
    let n = graph.vertex_count();
    if n > bound || n >= 31 {
        return Err(Error::OracleTooLarge { vertices: n, bound });
    }
    let bit = |v: VertexId| 1u32 << (v - 1);
    let edge_masks: Vec<(u32, EdgeId)> = graph
        .edges()
        .iter()
        .map(|e| (bit(e.tail) | bit(e.head), e.id))
        .collect();
    let mut neighbours = vec![0u32; n + 1];
    for e in graph.edges() {
        neighbours[e.tail as usize] |= bit(e.head);
        neighbours[e.head as usize] |= bit(e.tail);
    }
    let connected = |mask: u32| {
        let start = mask & mask.wrapping_neg();
        let mut seen = start;
        let mut frontier = start;
        while frontier != 0 {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize + 1;
                next |= neighbours[v];
                f &= f - 1;
            }
            frontier = next & mask & !seen;
            seen |= frontier;
        }
        seen == mask
    };

    let mut found = Vec::new();
    for mask in 1u32..(1u32 << n) {
        let count = edge_masks.iter().filter(|(m, _)| m & mask == *m).count() as i64;
        if count != params.bound(mask.count_ones() as usize) || !connected(mask) {
            continue;
        }
        found.push(TightSubgraph {
            vertices: (1..=n as u32).filter(|&v| mask & bit(v) != 0).collect(),
            edges: edge_masks
                .iter()
                .filter(|(m, _)| m & mask == *m)
                .map(|&(_, id)| id)
                .collect(),
        });
    }
    found.sort_by(|a, b| {
        a.vertices
            .len()
            .cmp(&b.vertices.len())
            .then_with(|| a.vertices.cmp(&b.vertices))
    });
    Ok(found)
}
