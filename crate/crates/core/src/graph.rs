//! Periodic orbit graphs: finite directed multigraphs with `Z²` edge gains.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gain::GainVector;

/// Vertex identifier, 1-based.
pub type VertexId = u32;
/// Edge identifier, unique within a graph.
pub type EdgeId = u32;

/// The edge `{tail, head; gain}`. The same edge may be written
/// `{head, tail; -gain}`; only one orientation is ever stored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DirectedGainEdge {
    pub id: EdgeId,
    pub tail: VertexId,
    pub head: VertexId,
    pub gain: GainVector,
}

impl DirectedGainEdge {
    pub fn new(id: EdgeId, tail: VertexId, head: VertexId, gain: GainVector) -> Self {
        DirectedGainEdge {
            id,
            tail,
            head,
            gain,
        }
    }

    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }

    pub fn reversed(&self) -> Self {
        DirectedGainEdge {
            id: self.id,
            tail: self.head,
            head: self.tail,
            gain: -self.gain,
        }
    }

    /// Orientation with `tail <= head`. Loop gains are made lexicographically
    /// nonnegative, since a loop and its reversal are the same edge.
    pub fn normalized(&self) -> Self {
        if self.tail > self.head || (self.is_loop() && self.gain < GainVector::ZERO) {
            self.reversed()
        } else {
            *self
        }
    }

    /// Gain seen when leaving `v` along this edge; `None` if not incident.
    /// For loops the stored orientation is used.
    pub fn gain_from(&self, v: VertexId) -> Option<(VertexId, GainVector)> {
        if self.tail == v {
            Some((self.head, self.gain))
        } else if self.head == v {
            Some((self.tail, -self.gain))
        } else {
            None
        }
    }

    /// Same edge up to the reversal identity, ignoring ids.
    pub fn same_as(&self, tail: VertexId, head: VertexId, gain: GainVector) -> bool {
        (self.tail == tail && self.head == head && self.gain == gain)
            || (self.tail == head && self.head == tail && self.gain == -gain)
    }
}

/// An incidence of an edge at a vertex, oriented away from that vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Incidence {
    pub edge: EdgeId,
    pub neighbor: VertexId,
    pub gain: GainVector,
}

/// The periodic orbit graph `<G, m>`.
///
/// Edges are kept sorted by id. Vertex ids run over `1..=vertex_count`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicOrbitGraph {
    vertex_count: u32,
    edges: Vec<DirectedGainEdge>,
}

impl PeriodicOrbitGraph {
    pub fn new(vertex_count: u32, mut edges: Vec<DirectedGainEdge>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidGraph(
                "a graph needs at least one vertex".into(),
            ));
        }
        edges.sort_by_key(|e| e.id);
        for pair in edges.windows(2) {
            if pair[0].id == pair[1].id {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge id {}",
                    pair[0].id
                )));
            }
        }
        for e in &edges {
            for v in [e.tail, e.head] {
                if v == 0 || v > vertex_count {
                    return Err(Error::InvalidGraph(format!(
                        "edge {} references vertex {v}, outside 1..={vertex_count}",
                        e.id
                    )));
                }
            }
        }
        Ok(PeriodicOrbitGraph {
            vertex_count,
            edges,
        })
    }

    /// Builds a graph from `(tail, head, gain)` triples with ids `1, 2, ...`.
    pub fn from_triples(
        vertex_count: u32,
        triples: &[(VertexId, VertexId, (i64, i64))],
    ) -> Result<Self> {
        let edges = triples
            .iter()
            .zip(1..)
            .map(|(&(t, h, g), id)| DirectedGainEdge::new(id, t, h, g.into()))
            .collect();
        Self::new(vertex_count, edges)
    }

    pub fn single_vertex() -> Self {
        PeriodicOrbitGraph {
            vertex_count: 1,
            edges: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count as usize
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        1..=self.vertex_count
    }

    pub fn edges(&self) -> &[DirectedGainEdge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Option<&DirectedGainEdge> {
        self.edges
            .binary_search_by_key(&id, |e| e.id)
            .ok()
            .map(|i| &self.edges[i])
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        v >= 1 && v <= self.vertex_count
    }

    fn next_edge_id(&self) -> EdgeId {
        self.edges.last().map_or(1, |e| e.id + 1)
    }

    /// Incident edge-ends at `v`, each oriented away from `v`. A loop
    /// contributes two incidences with opposite gains.
    pub fn incidences(&self, v: VertexId) -> Vec<Incidence> {
        let mut out = Vec::new();
        for e in &self.edges {
            if e.tail == v {
                out.push(Incidence {
                    edge: e.id,
                    neighbor: e.head,
                    gain: e.gain,
                });
            }
            if e.head == v {
                out.push(Incidence {
                    edge: e.id,
                    neighbor: e.tail,
                    gain: -e.gain,
                });
            }
        }
        out
    }

    /// Degree with loops counted twice.
    pub fn degree(&self, v: VertexId) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.tail == v) + usize::from(e.head == v))
            .sum()
    }

    pub fn has_loop_at(&self, v: VertexId) -> bool {
        self.edges.iter().any(|e| e.is_loop() && e.tail == v)
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(DirectedGainEdge::is_loop)
    }

    /// Undirected adjacency lists indexed by vertex id (index 0 unused).
    pub(crate) fn adjacency(&self) -> Vec<Vec<Incidence>> {
        let mut adj = vec![Vec::new(); self.vertex_count as usize + 1];
        for e in &self.edges {
            adj[e.tail as usize].push(Incidence {
                edge: e.id,
                neighbor: e.head,
                gain: e.gain,
            });
            if !e.is_loop() {
                adj[e.head as usize].push(Incidence {
                    edge: e.id,
                    neighbor: e.tail,
                    gain: -e.gain,
                });
            }
        }
        adj
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertex_count as usize + 1];
        let mut comps = Vec::new();
        for s in self.vertices() {
            if seen[s as usize] {
                continue;
            }
            seen[s as usize] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for inc in &adj[v as usize] {
                    if !seen[inc.neighbor as usize] {
                        seen[inc.neighbor as usize] = true;
                        comp.push(inc.neighbor);
                        queue.push_back(inc.neighbor);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Appends a vertex and returns its id.
    pub fn add_vertex(&mut self) -> VertexId {
        self.vertex_count += 1;
        self.vertex_count
    }

    /// Appends an edge with the next free id and returns that id.
    pub fn add_edge(&mut self, tail: VertexId, head: VertexId, gain: GainVector) -> Result<EdgeId> {
        for v in [tail, head] {
            if !self.contains_vertex(v) {
                return Err(Error::InvalidGraph(format!("vertex {v} does not exist")));
            }
        }
        let id = self.next_edge_id();
        self.edges.push(DirectedGainEdge::new(id, tail, head, gain));
        Ok(id)
    }

    pub fn remove_edge(&mut self, id: EdgeId) -> Option<DirectedGainEdge> {
        let pos = self.edges.binary_search_by_key(&id, |e| e.id).ok()?;
        Some(self.edges.remove(pos))
    }

    /// Removes `v` and its incident edges. Vertex ids above `v` shift down by
    /// one; edge ids are kept.
    pub fn remove_vertex(&self, v: VertexId) -> Result<PeriodicOrbitGraph> {
        if !self.contains_vertex(v) {
            return Err(Error::InvalidGraph(format!("vertex {v} does not exist")));
        }
        if self.vertex_count == 1 {
            return Err(Error::InvalidGraph("cannot remove the only vertex".into()));
        }
        let shift = |w: VertexId| if w > v { w - 1 } else { w };
        let edges = self
            .edges
            .iter()
            .filter(|e| e.tail != v && e.head != v)
            .map(|e| DirectedGainEdge::new(e.id, shift(e.tail), shift(e.head), e.gain))
            .collect();
        Ok(PeriodicOrbitGraph {
            vertex_count: self.vertex_count - 1,
            edges,
        })
    }

    /// Subgraph induced by `vertices`, relabelled `1..=k` in ascending order of
    /// the original ids. Returns the subgraph and the map from new ids
    /// (index `i` = new id `i + 1`) to original ids.
    pub fn induced_subgraph(
        &self,
        vertices: &[VertexId],
    ) -> Result<(PeriodicOrbitGraph, Vec<VertexId>)> {
        let set: BTreeSet<VertexId> = vertices.iter().copied().collect();
        if set.is_empty() {
            return Err(Error::InvalidGraph(
                "induced subgraph needs a vertex".into(),
            ));
        }
        let originals: Vec<VertexId> = set.iter().copied().collect();
        let mut new_id = vec![0u32; self.vertex_count as usize + 1];
        for (i, &v) in originals.iter().enumerate() {
            if !self.contains_vertex(v) {
                return Err(Error::InvalidGraph(format!("vertex {v} does not exist")));
            }
            new_id[v as usize] = i as u32 + 1;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| new_id[e.tail as usize] != 0 && new_id[e.head as usize] != 0)
            .map(|e| {
                DirectedGainEdge::new(
                    e.id,
                    new_id[e.tail as usize],
                    new_id[e.head as usize],
                    e.gain,
                )
            })
            .collect();
        Ok((
            PeriodicOrbitGraph {
                vertex_count: originals.len() as u32,
                edges,
            },
            originals,
        ))
    }

    /// Renames vertices: old vertex `i + 1` becomes `new_ids[i]`.
    pub fn relabel(&self, new_ids: &[VertexId]) -> Result<PeriodicOrbitGraph> {
        if new_ids.len() != self.vertex_count as usize {
            return Err(Error::InvalidGraph(format!(
                "relabelling has {} entries for {} vertices",
                new_ids.len(),
                self.vertex_count
            )));
        }
        let mut seen = vec![false; new_ids.len() + 1];
        for &v in new_ids {
            if v == 0 || v as usize > new_ids.len() || seen[v as usize] {
                return Err(Error::InvalidGraph(
                    "relabelling is not a permutation".into(),
                ));
            }
            seen[v as usize] = true;
        }
        let map = |w: VertexId| new_ids[w as usize - 1];
        let edges = self
            .edges
            .iter()
            .map(|e| DirectedGainEdge::new(e.id, map(e.tail), map(e.head), e.gain))
            .collect();
        PeriodicOrbitGraph::new(self.vertex_count, edges)
    }

    /// Same topology and ids, new gains from `f`.
    pub fn map_gains(
        &self,
        mut f: impl FnMut(&DirectedGainEdge) -> GainVector,
    ) -> PeriodicOrbitGraph {
        PeriodicOrbitGraph {
            vertex_count: self.vertex_count,
            edges: self
                .edges
                .iter()
                .map(|e| DirectedGainEdge { gain: f(e), ..*e })
                .collect(),
        }
    }

    /// Replaces edge `id` by its reversal `{head, tail; -gain}`.
    pub fn reverse_edge(&self, id: EdgeId) -> Result<PeriodicOrbitGraph> {
        let mut g = self.clone();
        let pos = g
            .edges
            .binary_search_by_key(&id, |e| e.id)
            .map_err(|_| Error::InvalidGraph(format!("edge {id} does not exist")))?;
        g.edges[pos] = g.edges[pos].reversed();
        Ok(g)
    }

    /// Normalized `(tail, head, gain)` triples, sorted; ignores edge ids and
    /// orientation.
    pub fn edge_multiset(&self) -> Vec<(VertexId, VertexId, GainVector)> {
        let mut out: Vec<_> = self
            .edges
            .iter()
            .map(|e| {
                let n = e.normalized();
                (n.tail, n.head, n.gain)
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            vertices: self.vertex_count,
            edges: self.edges.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("graph serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile =
            serde_json::from_str(text).map_err(|e| Error::InvalidGraph(e.to_string()))?;
        file.try_into()
    }
}

/// On-disk graph format:
/// `{"vertices": n, "edges": [{"id": k, "tail": i, "head": j, "gain": [a, b]}, ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub vertices: u32,
    pub edges: Vec<DirectedGainEdge>,
}

impl TryFrom<GraphFile> for PeriodicOrbitGraph {
    type Error = Error;

    fn try_from(file: GraphFile) -> Result<Self> {
        PeriodicOrbitGraph::new(file.vertices, file.edges)
    }
}

impl From<&PeriodicOrbitGraph> for GraphFile {
    fn from(g: &PeriodicOrbitGraph) -> Self {
        g.to_file()
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
    fn rejects_bad_vertex_and_duplicate_ids() {
        let e = DirectedGainEdge::new(1, 1, 3, GainVector::ZERO);
        assert!(PeriodicOrbitGraph::new(2, vec![e]).is_err());
        let e2 = DirectedGainEdge::new(1, 1, 2, GainVector::ZERO);
        assert!(PeriodicOrbitGraph::new(2, vec![e2, e2]).is_err());
        assert!(PeriodicOrbitGraph::new(0, vec![]).is_err());
    }

    #[test]
    fn degrees_count_loops_twice() {
        let g = PeriodicOrbitGraph::from_triples(2, &[(1, 1, (1, 0)), (1, 2, (0, 0))]).unwrap();
        assert_eq!(g.degree(1), 3);
        assert_eq!(g.degree(2), 1);
        assert!(g.has_loop_at(1));
        assert_eq!(g.incidences(1).len(), 3);
    }

    #[test]
    fn reversal_identity_normalizes() {
        let e = DirectedGainEdge::new(5, 3, 1, GainVector::new(1, 0));
        let n = e.normalized();
        assert_eq!((n.tail, n.head, n.gain), (1, 3, GainVector::new(-1, 0)));
        assert!(e.same_as(1, 3, GainVector::new(-1, 0)));
        let l = DirectedGainEdge::new(1, 2, 2, GainVector::new(0, -1));
        assert_eq!(l.normalized().gain, GainVector::new(0, 1));
    }

    #[test]
    fn remove_vertex_shifts_ids() {
        let g = fig1().remove_vertex(2).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 4);
        assert!(g.edges().iter().all(|e| e.tail <= 3 && e.head <= 3));
        assert_eq!(g.edge(3).map(|e| (e.tail, e.head)), Some((2, 3)));
    }

    #[test]
    fn induced_subgraph_maps_back() {
        let (sub, map) = fig1().induced_subgraph(&[4, 1, 3]).unwrap();
        assert_eq!(map, vec![1, 3, 4]);
        assert_eq!(sub.edge_count(), 4);
    }

    #[test]
    fn json_round_trip_and_components() {
        let g = fig1();
        let back = PeriodicOrbitGraph::from_json(&g.to_json()).unwrap();
        assert_eq!(g, back);
        assert!(g.is_connected());
        let h = PeriodicOrbitGraph::from_triples(3, &[(1, 2, (0, 0))]).unwrap();
        assert_eq!(h.components(), vec![vec![1, 2], vec![3]]);
    }

    #[test]
    fn relabel_requires_permutation() {
        let g = fig1();
        assert!(g.relabel(&[1, 1, 2, 3]).is_err());
        let r = g.relabel(&[4, 3, 2, 1]).unwrap();
        assert_eq!(r.edge(1).map(|e| (e.tail, e.head)), Some((4, 3)));
    }
}
