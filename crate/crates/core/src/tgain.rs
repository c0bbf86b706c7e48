//! Net cycle gains, spanning-tree potentials and the T-gain procedure.
//!
//! Given a spanning tree `T` rooted at `u`, the T-potential of a vertex is
//! the net gain along the tree path from `u`. Re-gauging every edge
//! `v -> w` to `pot(v) + m(e) - pot(w)` zeroes the tree edges and leaves the
//! net gain of every cycle unchanged.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::gain::GainVector;
use crate::graph::{EdgeId, Incidence, PeriodicOrbitGraph, VertexId};
use crate::lattice::GainSpace;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WalkStep {
    pub edge: EdgeId,
    /// `true` when the edge is traversed tail to head.
    pub forward: bool,
}

/// A closed walk given by its start vertex and a sequence of oriented edge
/// traversals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleWalk {
    pub start: VertexId,
    pub steps: Vec<WalkStep>,
}

impl CycleWalk {
    /// Builds a walk from the alternating sequence `v0 e1 v1 ... ek vk` with
    /// `vk = v0`, inferring each traversal direction. Loops are taken forward.
    pub fn alternating(
        graph: &PeriodicOrbitGraph,
        vertices: &[VertexId],
        edges: &[EdgeId],
    ) -> Result<Self> {
        if vertices.len() != edges.len() + 1 {
            return Err(Error::InvalidCycle(format!(
                "{} vertices cannot alternate with {} edges",
                vertices.len(),
                edges.len()
            )));
        }
        let mut steps = Vec::with_capacity(edges.len());
        for (i, &id) in edges.iter().enumerate() {
            let e = graph
                .edge(id)
                .ok_or_else(|| Error::InvalidCycle(format!("edge {id} does not exist")))?;
            let (from, to) = (vertices[i], vertices[i + 1]);
            let forward = if e.tail == from && e.head == to {
                true
            } else if e.head == from && e.tail == to {
                false
            } else {
                return Err(Error::InvalidCycle(format!(
                    "edge {id} does not join {from} and {to}"
                )));
            };
            steps.push(WalkStep { edge: id, forward });
        }
        Ok(CycleWalk {
            start: vertices[0],
            steps,
        })
    }
}

/// Signed sum of gains along a closed walk.
pub fn net_cycle_gain(graph: &PeriodicOrbitGraph, walk: &CycleWalk) -> Result<GainVector> {
    let mut at = walk.start;
    let mut total = GainVector::ZERO;
    for step in &walk.steps {
        let e = graph
            .edge(step.edge)
            .ok_or_else(|| Error::InvalidCycle(format!("edge {} does not exist", step.edge)))?;
        let (from, to, gain) = if step.forward {
            (e.tail, e.head, e.gain)
        } else {
            (e.head, e.tail, -e.gain)
        };
        if from != at {
            return Err(Error::InvalidCycle(format!(
                "edge {} is traversed from {from} but the walk is at {at}",
                e.id
            )));
        }
        total += gain;
        at = to;
    }
    if at != walk.start {
        return Err(Error::InvalidCycle(format!(
            "walk ends at {at}, not at {}",
            walk.start
        )));
    }
    Ok(total)
}

/// A rooted spanning tree together with the T-potential of every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTreeData {
    root: VertexId,
    tree_edges: BTreeSet<EdgeId>,
    potentials: Vec<GainVector>,
    parent: Vec<Option<(EdgeId, VertexId)>>,
    depth: Vec<usize>,
}

impl SpanningTreeData {
    /// Validates `tree_edges` as a spanning tree of `graph` and computes the
    /// potentials from `root`.
    pub fn new(
        graph: &PeriodicOrbitGraph,
        root: VertexId,
        tree_edges: impl IntoIterator<Item = EdgeId>,
    ) -> Result<Self> {
        if !graph.contains_vertex(root) {
            return Err(Error::InvalidTree(format!("root {root} is not a vertex")));
        }
        let tree_edges: BTreeSet<EdgeId> = tree_edges.into_iter().collect();
        if tree_edges.len() + 1 != graph.vertex_count() {
            return Err(Error::InvalidTree(format!(
                "{} edges cannot span {} vertices",
                tree_edges.len(),
                graph.vertex_count()
            )));
        }
        for &id in &tree_edges {
            match graph.edge(id) {
                None => return Err(Error::InvalidTree(format!("edge {id} is not in the graph"))),
                Some(e) if e.is_loop() => {
                    return Err(Error::InvalidTree(format!("edge {id} is a loop")))
                }
                _ => {}
            }
        }
        let adj: Vec<Vec<Incidence>> = graph
            .adjacency()
            .into_iter()
            .map(|list| {
                list.into_iter()
                    .filter(|i| tree_edges.contains(&i.edge))
                    .collect()
            })
            .collect();
        let tree = Self::grow(graph.vertex_count(), root, |v| adj[v as usize].clone());
        match tree {
            Some(t) => Ok(SpanningTreeData { tree_edges, ..t }),
            None => Err(Error::InvalidTree(
                "edges do not connect every vertex".into(),
            )),
        }
    }

    /// Breadth-first tree from vertex 1. Neighbors are visited in ascending
    /// id; among parallel edges the one with the smallest gain (oriented from
    /// the lower endpoint) wins, then the smallest edge id. The choice depends
    /// only on the topology and on gain differences between parallel edges,
    /// so T-gain equivalent graphs get the same tree.
    pub fn canonical(graph: &PeriodicOrbitGraph) -> Result<Self> {
        Self::canonical_from(graph, 1)
    }

    pub(crate) fn canonical_from(graph: &PeriodicOrbitGraph, root: VertexId) -> Result<Self> {
        let adj = sorted_adjacency(graph);
        Self::grow(graph.vertex_count(), root, |v| adj[v as usize].clone())
            .ok_or(Error::NoSpanningTree)
    }

    /// Spanning tree obtained by scanning edges in the given priority order
    /// and keeping those that join two different components.
    pub fn from_edge_priority(
        graph: &PeriodicOrbitGraph,
        root: VertexId,
        order: &[EdgeId],
    ) -> Result<Self> {
        let n = graph.vertex_count();
        let mut dsu: Vec<usize> = (0..=n).collect();
        fn find(d: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while d[r] != r {
                r = d[r];
            }
            let mut c = x;
            while d[c] != r {
                let next = d[c];
                d[c] = r;
                c = next;
            }
            r
        }
        let mut chosen = Vec::new();
        for &id in order {
            let Some(e) = graph.edge(id) else {
                return Err(Error::InvalidTree(format!("edge {id} is not in the graph")));
            };
            let (a, b) = (
                find(&mut dsu, e.tail as usize),
                find(&mut dsu, e.head as usize),
            );
            if a != b {
                dsu[a] = b;
                chosen.push(id);
            }
        }
        if chosen.len() + 1 != n {
            return Err(Error::NoSpanningTree);
        }
        Self::new(graph, root, chosen)
    }

    fn grow(
        n: usize,
        root: VertexId,
        neighbors: impl Fn(VertexId) -> Vec<Incidence>,
    ) -> Option<Self> {
        let mut potentials = vec![GainVector::ZERO; n + 1];
        let mut parent = vec![None; n + 1];
        let mut depth = vec![0; n + 1];
        let mut seen = vec![false; n + 1];
        let mut tree_edges = BTreeSet::new();
        seen[root as usize] = true;
        let mut queue = VecDeque::from([root]);
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for inc in neighbors(v) {
                let w = inc.neighbor as usize;
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    potentials[w] = potentials[v as usize] + inc.gain;
                    parent[w] = Some((inc.edge, v));
                    depth[w] = depth[v as usize] + 1;
                    tree_edges.insert(inc.edge);
                    queue.push_back(inc.neighbor);
                }
            }
        }
        (reached == n).then_some(SpanningTreeData {
            root,
            tree_edges,
            potentials,
            parent,
            depth,
        })
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn tree_edges(&self) -> &BTreeSet<EdgeId> {
        &self.tree_edges
    }

    pub fn contains_edge(&self, id: EdgeId) -> bool {
        self.tree_edges.contains(&id)
    }

    /// T-potential `m(v, T)`.
    pub fn potential(&self, v: VertexId) -> GainVector {
        self.potentials[v as usize]
    }

    /// The closed walk formed by non-tree edge `id` and the tree path back
    /// to its tail.
    pub fn fundamental_cycle(&self, graph: &PeriodicOrbitGraph, id: EdgeId) -> Result<CycleWalk> {
        let e = graph
            .edge(id)
            .ok_or_else(|| Error::InvalidCycle(format!("edge {id} does not exist")))?;
        if self.contains_edge(id) {
            return Err(Error::InvalidCycle(format!("edge {id} is a tree edge")));
        }
        // climb from head and tail to their common ancestor
        let (mut a, mut b) = (e.head, e.tail);
        let mut up_from_head = Vec::new();
        let mut up_from_tail = Vec::new();
        while a != b {
            if self.depth[a as usize] >= self.depth[b as usize] {
                let (edge, p) = self.parent[a as usize].expect("non-root vertex has a parent");
                up_from_head.push((edge, a, p));
                a = p;
            } else {
                let (edge, p) = self.parent[b as usize].expect("non-root vertex has a parent");
                up_from_tail.push((edge, b, p));
                b = p;
            }
        }
        let mut steps = vec![WalkStep {
            edge: id,
            forward: true,
        }];
        for (edge, child, parent) in up_from_head {
            steps.push(tree_step(graph, edge, child, parent));
        }
        for (edge, child, parent) in up_from_tail.into_iter().rev() {
            steps.push(tree_step(graph, edge, parent, child));
        }
        Ok(CycleWalk {
            start: e.tail,
            steps,
        })
    }

    pub fn fundamental_cycles(&self, graph: &PeriodicOrbitGraph) -> Vec<(EdgeId, CycleWalk)> {
        graph
            .edges()
            .iter()
            .filter(|e| !self.contains_edge(e.id))
            .map(|e| {
                (
                    e.id,
                    self.fundamental_cycle(graph, e.id)
                        .expect("non-tree edge has a cycle"),
                )
            })
            .collect()
    }
}

fn tree_step(graph: &PeriodicOrbitGraph, edge: EdgeId, from: VertexId, to: VertexId) -> WalkStep {
    let e = graph.edge(edge).expect("tree edge exists");
    WalkStep {
        edge,
        forward: e.tail == from && e.head == to,
    }
}

fn sorted_adjacency(graph: &PeriodicOrbitGraph) -> Vec<Vec<Incidence>> {
    let mut adj = graph.adjacency();
    for list in adj.iter_mut() {
        list.retain(|inc| graph.edge(inc.edge).is_some_and(|e| !e.is_loop()));
        list.sort_by_key(|inc| {
            let n = graph.edge(inc.edge).expect("edge exists").normalized();
            (inc.neighbor, n.gain, inc.edge)
        });
    }
    adj
}

/// Re-gauges every edge `v -> w` to `m(v, T) + m(e) - m(w, T)`.
pub fn t_gain_procedure(
    graph: &PeriodicOrbitGraph,
    tree: &SpanningTreeData,
) -> Result<PeriodicOrbitGraph> {
    if !graph.is_connected() {
        return Err(Error::NoSpanningTree);
    }
    if tree.potentials.len() != graph.vertex_count() + 1 {
        return Err(Error::InvalidTree(
            "tree was built for a different vertex set".into(),
        ));
    }
    let regauged = graph.map_gains(|e| tree.potential(e.tail) + e.gain - tree.potential(e.head));
    for id in tree.tree_edges() {
        match regauged.edge(*id) {
            Some(e) if e.gain.is_zero() => {}
            _ => {
                return Err(Error::InvalidTree(format!(
                    "tree edge {id} does not match the graph"
                )))
            }
        }
    }
    Ok(regauged)
}

/// T-gain form under the canonical tree, with every edge written as
/// `tail <= head`. Two graphs on the same vertex set are T-gain equivalent
/// exactly when their canonical forms have the same edge multiset.
pub fn t_gain_canonical_form(graph: &PeriodicOrbitGraph) -> Result<PeriodicOrbitGraph> {
    let tree = SpanningTreeData::canonical(graph)?;
    let regauged = t_gain_procedure(graph, &tree)?;
    let edges = regauged.edges().iter().map(|e| e.normalized()).collect();
    PeriodicOrbitGraph::new(graph.vertex_count() as u32, edges)
}

/// Whether two graphs are T-gain equivalent, ignoring edge ids and
/// orientations.
pub fn t_gain_equivalent(a: &PeriodicOrbitGraph, b: &PeriodicOrbitGraph) -> Result<bool> {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    Ok(t_gain_canonical_form(a)?.edge_multiset() == t_gain_canonical_form(b)?.edge_multiset())
}

/// The subgroup of `Z²` generated by the net gains of all cycles. For a
/// disconnected graph this is the sum of the component subgroups.
pub fn gain_space(graph: &PeriodicOrbitGraph) -> GainSpace {
    let mut generators = Vec::new();
    for comp in graph.components() {
        let (sub, _) = graph
            .induced_subgraph(&comp)
            .expect("component vertices exist");
        let tree = SpanningTreeData::canonical(&sub).expect("component is connected");
        for e in sub.edges() {
            if !tree.contains_edge(e.id) {
                generators.push(tree.potential(e.tail) + e.gain - tree.potential(e.head));
            }
        }
    }
    GainSpace::generated_by(generators)
}
