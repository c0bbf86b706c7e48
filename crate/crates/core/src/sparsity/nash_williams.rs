//! Splitting a (2,2)-tight graph into two edge-disjoint spanning trees by
//! matroid partition over two copies of the graphic matroid.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::graph::{EdgeId, PeriodicOrbitGraph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecomposition {
    pub trees: [Vec<EdgeId>; 2],
}

/// Whether `edges` forms a spanning tree of `graph`.
pub fn is_spanning_tree(graph: &PeriodicOrbitGraph, edges: &[EdgeId]) -> bool {
    let n = graph.vertex_count();
    if edges.len() + 1 != n {
        return false;
    }
    let mut parent: Vec<usize> = (0..=n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &id in edges {
        let Some(e) = graph.edge(id) else {
            return false;
        };
        let (a, b) = (
            find(&mut parent, e.tail as usize),
            find(&mut parent, e.head as usize),
        );
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

struct Forests<'a> {
    ends: Vec<(VertexId, VertexId)>,
    ids: &'a [EdgeId],
    owner: Vec<Option<usize>>,
    n: usize,
}

impl Forests<'_> {
    /// Edges (as indices) on the path joining the ends of `x` in forest `f`,
    /// or `None` if `x` can be added to `f` without a cycle.
    fn circuit(&self, f: usize, x: usize) -> Option<Vec<usize>> {
        let (u, v) = self.ends[x];
        if u == v {
            return Some(Vec::new());
        }
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.n + 1];
        for (i, &(a, b)) in self.ends.iter().enumerate() {
            if self.owner[i] == Some(f) {
                adj[a as usize].push((b as usize, i));
                adj[b as usize].push((a as usize, i));
            }
        }
        let mut via: Vec<Option<usize>> = vec![None; self.n + 1];
        let mut seen = vec![false; self.n + 1];
        seen[u as usize] = true;
        let mut queue = VecDeque::from([u as usize]);
        while let Some(a) = queue.pop_front() {
            for &(b, i) in &adj[a] {
                if !seen[b] {
                    seen[b] = true;
                    via[b] = Some(i);
                    queue.push_back(b);
                }
            }
        }
        if !seen[v as usize] {
            return None;
        }
        let mut path = Vec::new();
        let mut w = v as usize;
        while w != u as usize {
            let i = via[w].unwrap();
            path.push(i);
            let (a, b) = self.ends[i];
            w = if a as usize == w {
                b as usize
            } else {
                a as usize
            };
        }
        Some(path)
    }

    /// Shortest augmenting path inserting edge `start` into the partition.
    fn augment(&mut self, start: usize) -> bool {
        let m = self.ends.len();
        // pred[y] = (x, f): y leaves forest f to make room for x
        let mut pred: Vec<Option<(usize, usize)>> = vec![None; m];
        let mut labelled = vec![false; m];
        labelled[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for f in 0..2 {
                if self.owner[x] == Some(f) {
                    continue;
                }
                match self.circuit(f, x) {
                    None => {
                        // walk back: x enters f, each predecessor takes its successor's slot
                        let (mut cur, mut into) = (x, f);
                        loop {
                            let prev = pred[cur];
                            self.owner[cur] = Some(into);
                            match prev {
                                Some((p, g)) => {
                                    cur = p;
                                    into = g;
                                }
                                None => break,
                            }
                        }
                        return true;
                    }
                    Some(cycle) => {
                        for y in cycle {
                            if !labelled[y] {
                                labelled[y] = true;
                                pred[y] = Some((x, f));
                                queue.push_back(y);
                            }
                        }
                    }
                }
            }
        }
        false
    }

    fn tree(&self, f: usize) -> Vec<EdgeId> {
        (0..self.ends.len())
            .filter(|&i| self.owner[i] == Some(f))
            .map(|i| self.ids[i])
            .collect()
    }
}

/// Two edge-disjoint spanning trees covering every edge, or `None` when the
/// graph is not (2,2)-tight.
pub fn nash_williams_decompose(graph: &PeriodicOrbitGraph) -> Option<TreeDecomposition> {
    let n = graph.vertex_count();
    if graph.edge_count() + 2 != 2 * n {
        return None;
    }
    let ids: Vec<EdgeId> = graph.edges().iter().map(|e| e.id).collect();
    let mut forests = Forests {
        ends: graph.edges().iter().map(|e| (e.tail, e.head)).collect(),
        ids: &ids,
        owner: vec![None; ids.len()],
        n,
    };
    for i in 0..ids.len() {
        if !forests.augment(i) {
            return None;
        }
    }
    Some(TreeDecomposition {
        trees: [forests.tree(0), forests.tree(1)],
    })
}
