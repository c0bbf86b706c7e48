//! The (k,l)-pebble game for `k = 2`.
//!
//! Every vertex starts with two pebbles. An accepted edge is oriented out of
//! a vertex and consumes one of its pebbles, so `pebbles(v) + outdeg(v) = 2`
//! at all times. An edge `uv` is accepted iff `l + 1` pebbles can be gathered
//! on its endpoints by reversing directed paths.

use serde::{Deserialize, Serialize};

use super::SparsityParams;
use crate::graph::{EdgeId, PeriodicOrbitGraph, VertexId};

#[derive(Clone, Debug)]
pub struct PebbleGameState {
    params: SparsityParams,
    pebbles: Vec<u32>,
    out: Vec<Vec<(EdgeId, VertexId)>>,
    accepted: usize,
}

impl PebbleGameState {
    pub fn new(vertex_count: usize, params: SparsityParams) -> Self {
        PebbleGameState {
            params,
            pebbles: vec![params.k(); vertex_count + 1],
            out: vec![Vec::new(); vertex_count + 1],
            accepted: 0,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.pebbles.len() - 1
    }

    pub fn pebbles(&self, v: VertexId) -> u32 {
        self.pebbles[v as usize]
    }

    pub fn accepted_count(&self) -> usize {
        self.accepted
    }

    pub fn free_pebbles(&self) -> u32 {
        self.pebbles[1..].iter().sum()
    }

    /// Accepted edges oriented out of `v`, as `(edge, head)`.
    pub fn out_edges(&self, v: VertexId) -> &[(EdgeId, VertexId)] {
        &self.out[v as usize]
    }

    /// Moves one pebble to `start` along a reversed path that avoids
    /// `blocked`. Returns `false` if no reachable vertex has a free pebble.
    fn pull_pebble(&mut self, start: VertexId, blocked: VertexId) -> bool {
        let n = self.pebbles.len();
        let mut seen = vec![false; n];
        seen[start as usize] = true;
        seen[blocked as usize] = true;
        // (vertex, edge index via which it was reached from its predecessor)
        let mut pred: Vec<Option<(VertexId, usize)>> = vec![None; n];
        let mut stack = vec![start];
        let mut found = None;
        'search: while let Some(x) = stack.pop() {
            for (idx, &(_, y)) in self.out[x as usize].iter().enumerate() {
                if seen[y as usize] {
                    continue;
                }
                seen[y as usize] = true;
                pred[y as usize] = Some((x, idx));
                if self.pebbles[y as usize] > 0 {
                    found = Some(y);
                    break 'search;
                }
                stack.push(y);
            }
        }
        let Some(target) = found else {
            return false;
        };
        // collect the path first: reversing edges shifts indices in `out`
        let mut path = Vec::new();
        let mut y = target;
        while y != start {
            let (x, idx) = pred[y as usize].expect("path back to start");
            path.push((x, self.out[x as usize][idx].0, y));
            y = x;
        }
        for (x, edge, y) in path {
            let pos = self.out[x as usize]
                .iter()
                .position(|&(e, h)| e == edge && h == y)
                .expect("edge on path");
            self.out[x as usize].swap_remove(pos);
            self.out[y as usize].push((edge, x));
        }
        self.pebbles[target as usize] -= 1;
        self.pebbles[start as usize] += 1;
        true
    }

    /// Tries to collect `need` pebbles on `{u, v}`. On failure returns the
    /// vertices reachable from `u` or `v`, which then span a tight set.
    pub fn gather(&mut self, u: VertexId, v: VertexId, need: u32) -> Result<(), Vec<VertexId>> {
        if u == v {
            return if self.pebbles[u as usize] >= need {
                Ok(())
            } else {
                Err(self.reach(&[u]))
            };
        }
        let k = self.params.k();
        while self.pebbles[u as usize] + self.pebbles[v as usize] < need {
            if self.pebbles[u as usize] < k && self.pull_pebble(u, v) {
                continue;
            }
            if self.pebbles[v as usize] < k && self.pull_pebble(v, u) {
                continue;
            }
            return Err(self.reach(&[u, v]));
        }
        Ok(())
    }

    /// Vertices reachable along oriented edges from `sources`, sorted.
    pub fn reach(&self, sources: &[VertexId]) -> Vec<VertexId> {
        let mut seen = vec![false; self.pebbles.len()];
        let mut stack = Vec::new();
        for &s in sources {
            if !seen[s as usize] {
                seen[s as usize] = true;
                stack.push(s);
            }
        }
        while let Some(x) = stack.pop() {
            for &(_, y) in &self.out[x as usize] {
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    stack.push(y);
                }
            }
        }
        (1..self.pebbles.len() as u32)
            .filter(|&v| seen[v as usize])
            .collect()
    }

    /// Accepts the edge if `l + 1` pebbles can be gathered on its endpoints.
    /// Loops are always rejected since a vertex holds at most `k < l + 1`.
    pub fn try_insert(&mut self, id: EdgeId, u: VertexId, v: VertexId) -> bool {
        if self.gather(u, v, self.params.l() + 1).is_err() {
            return false;
        }
        let tail = if self.pebbles[u as usize] > 0 { u } else { v };
        let head = if tail == u { v } else { u };
        self.pebbles[tail as usize] -= 1;
        self.out[tail as usize].push((id, head));
        self.accepted += 1;
        true
    }

    /// Removes an accepted edge, returning its pebble.
    pub fn remove(&mut self, id: EdgeId) -> bool {
        for x in 1..self.out.len() {
            if let Some(pos) = self.out[x].iter().position(|&(e, _)| e == id) {
                self.out[x].swap_remove(pos);
                self.pebbles[x] += 1;
                self.accepted -= 1;
                return true;
            }
        }
        false
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparsityReport {
    pub sparse: bool,
    pub tight: bool,
    /// Edges refused by the game, inserted in ascending id order.
    pub rejected: Vec<EdgeId>,
}

/// Runs the pebble game over all edges in ascending id order.
pub fn pebble_game_sparse(graph: &PeriodicOrbitGraph, params: SparsityParams) -> SparsityReport {
    let mut state = PebbleGameState::new(graph.vertex_count(), params);
    let rejected: Vec<EdgeId> = graph
        .edges()
        .iter()
        .filter(|e| !state.try_insert(e.id, e.tail, e.head))
        .map(|e| e.id)
        .collect();
    let sparse = rejected.is_empty();
    SparsityReport {
        sparse,
        tight: sparse && graph.edge_count() as i64 == params.bound(graph.vertex_count()),
        rejected,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

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

    /// Every vertex subset spanning an edge: induced edges <= 2|V'| - l.
    fn sparse_by_counting(graph: &PeriodicOrbitGraph, l: i64) -> bool {
        let n = graph.vertex_count();
        (1u32..(1 << n)).all(|mask| {
            let inside = |v: u32| mask & (1 << (v - 1)) != 0;
            let edges = graph
                .edges()
                .iter()
                .filter(|e| inside(e.tail) && inside(e.head))
                .count() as i64;
            edges == 0 || edges <= 2 * mask.count_ones() as i64 - l
        })
    }

    #[test]
    fn fig1_is_torus_tight() {
        let r = pebble_game_sparse(&fig1(), SparsityParams::TORUS);
        assert!(r.sparse && r.tight);
        assert!(r.rejected.is_empty());
        let r3 = pebble_game_sparse(&fig1(), SparsityParams::LAMAN);
        assert!(!r3.sparse);
        assert_eq!(r3.rejected, vec![6]);
    }

    #[test]
    fn doubled_triangle_is_not_laman_sparse() {
        let g = PeriodicOrbitGraph::from_triples(
            3,
            &[
                (1, 2, (0, 0)),
                (1, 2, (0, 0)),
                (2, 3, (0, 0)),
                (3, 1, (0, 0)),
            ],
        )
        .unwrap();
        let r = pebble_game_sparse(&g, SparsityParams::LAMAN);
        assert!(!r.sparse);
        assert_eq!(r.rejected, vec![2]);
        assert!(pebble_game_sparse(&g, SparsityParams::TORUS).tight);
    }

    #[test]
    fn single_vertex_and_loops() {
        let single = PeriodicOrbitGraph::single_vertex();
        let r = pebble_game_sparse(&single, SparsityParams::TORUS);
        assert!(r.sparse && r.tight);
        let with_loop =
            PeriodicOrbitGraph::from_triples(2, &[(1, 2, (0, 0)), (2, 2, (1, 0))]).unwrap();
        for params in [SparsityParams::TORUS, SparsityParams::LAMAN] {
            assert_eq!(pebble_game_sparse(&with_loop, params).rejected, vec![2]);
        }
    }

    #[test]
    fn triple_edges_never_torus_sparse() {
        let g =
            PeriodicOrbitGraph::from_triples(2, &[(1, 2, (0, 0)), (2, 1, (1, 0)), (1, 2, (0, 1))])
                .unwrap();
        assert_eq!(
            pebble_game_sparse(&g, SparsityParams::TORUS).rejected,
            vec![3]
        );
    }

    #[test]
    fn gather_failure_reports_tight_region() {
        let g = fig1();
        let mut state = PebbleGameState::new(4, SparsityParams::TORUS);
        for e in g.edges() {
            assert!(state.try_insert(e.id, e.tail, e.head));
        }
        assert_eq!(state.free_pebbles(), 2);
        // 1 and 4 lie in the tight set {1, 4}
        assert_eq!(state.gather(1, 4, 3), Err(vec![1, 4]));
        assert!(state.remove(6));
        assert_eq!(state.free_pebbles(), 3);
        assert!(state.gather(1, 4, 3).is_ok());
    }

    fn multigraph(max_n: u32, max_e: usize) -> impl Strategy<Value = PeriodicOrbitGraph> {
        (1..=max_n).prop_flat_map(move |n| {
            prop::collection::vec((1..=n, 1..=n, -1i64..=1, -1i64..=1), 0..=max_e).prop_map(
                move |raw| {
                    let triples: Vec<_> =
                        raw.into_iter().map(|(t, h, a, b)| (t, h, (a, b))).collect();
                    PeriodicOrbitGraph::from_triples(n, &triples).unwrap()
                },
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]
        #[test]
        fn pebble_game_matches_subset_counting(g in multigraph(6, 12)) {
            prop_assert_eq!(pebble_game_sparse(&g, SparsityParams::TORUS).sparse, sparse_by_counting(&g, 2));
            prop_assert_eq!(pebble_game_sparse(&g, SparsityParams::LAMAN).sparse, sparse_by_counting(&g, 3));
        }

        #[test]
        fn loops_and_triples_are_dependent(g in multigraph(5, 8), v in 0u32..5, a in -1i64..=1) {
            let v = v % g.vertex_count() as u32 + 1;
            let mut with_loop = g.clone();
            with_loop.add_edge(v, v, (a, 0).into()).unwrap();
            prop_assert!(!pebble_game_sparse(&with_loop, SparsityParams::TORUS).sparse);
            if g.vertex_count() >= 2 {
                let mut triple = g.clone();
                for _ in 0..3 {
                    triple.add_edge(1, 2, (a, 1).into()).unwrap();
                }
                prop_assert!(!pebble_game_sparse(&triple, SparsityParams::TORUS).sparse);
            }
        }
    }
}
