//! Periodic Henneberg moves: vertex addition and edge split, their reverses,
//! decomposition down to one vertex and forward replay.

mod generate;
mod sequence;

pub use generate::{generate_random, generate_random_sequence};
pub use sequence::{decompose, replay, replay_validated, HennebergSequence};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gain::GainVector;
use crate::graph::{DirectedGainEdge, Incidence, PeriodicOrbitGraph, VertexId};
use crate::sparsity::periodic_laman_check;

/// A neighbour of the new vertex and the gain of the edge from the new
/// vertex to it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Attachment {
    pub neighbor: VertexId,
    pub gain: GainVector,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SplitEdge {
    pub tail: VertexId,
    pub head: VertexId,
    pub gain: GainVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum HennebergMove {
    /// Adds `new_vertex` with edges `{new_vertex, a.neighbor; a.gain}`.
    VertexAddition {
        new_vertex: VertexId,
        attachments: [Attachment; 2],
    },
    /// Removes `split_edge = {i1, i2; m}` and adds `new_vertex` with edges
    /// `{v0, i1; 0}`, `{v0, i2; m}` and `{v0, third.neighbor; third.gain}`.
    EdgeSplit {
        new_vertex: VertexId,
        split_edge: SplitEdge,
        third: Attachment,
    },
}

impl HennebergMove {
    pub fn new_vertex(&self) -> VertexId {
        match self {
            HennebergMove::VertexAddition { new_vertex, .. }
            | HennebergMove::EdgeSplit { new_vertex, .. } => *new_vertex,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            HennebergMove::VertexAddition { .. } => "vertex_addition",
            HennebergMove::EdgeSplit { .. } => "edge_split",
        }
    }

    /// Checks the gain and neighbour conditions that do not depend on a graph.
    pub fn validate(&self) -> Result<()> {
        match self {
            HennebergMove::VertexAddition {
                attachments: [a, b],
                ..
            } => {
                if a.neighbor == b.neighbor && a.gain == b.gain {
                    return Err(Error::InvalidMove(format!(
                        "both attachments go to vertex {} with gain {}",
                        a.neighbor, a.gain
                    )));
                }
            }
            HennebergMove::EdgeSplit {
                split_edge: e,
                third,
                ..
            } => {
                if e.tail == e.head {
                    return Err(Error::InvalidMove("cannot split a loop".into()));
                }
                if third.neighbor == e.tail {
                    return Err(Error::InvalidMove(format!(
                        "third neighbour {} equals the split edge's first end",
                        third.neighbor
                    )));
                }
                if third.neighbor == e.head && third.gain == e.gain {
                    return Err(Error::InvalidMove(format!(
                        "third edge duplicates {{{}, {}; {}}}",
                        e.tail, e.head, e.gain
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_target(&self, graph: &PeriodicOrbitGraph) -> Result<()> {
        let expected = graph.vertex_count() as VertexId + 1;
        if self.new_vertex() != expected {
            return Err(Error::InvalidMove(format!(
                "new vertex must be {expected}, got {}",
                self.new_vertex()
            )));
        }
        let ends: Vec<VertexId> = match self {
            HennebergMove::VertexAddition { attachments, .. } => {
                attachments.iter().map(|a| a.neighbor).collect()
            }
            HennebergMove::EdgeSplit {
                split_edge, third, ..
            } => vec![split_edge.tail, split_edge.head, third.neighbor],
        };
        match ends.into_iter().find(|&v| !graph.contains_vertex(v)) {
            Some(v) => Err(Error::InvalidMove(format!("vertex {v} does not exist"))),
            None => Ok(()),
        }
    }
}

pub fn apply_vertex_addition(
    graph: &PeriodicOrbitGraph,
    mv: &HennebergMove,
) -> Result<PeriodicOrbitGraph> {
    let HennebergMove::VertexAddition { attachments, .. } = mv else {
        return Err(Error::InvalidMove("expected a vertex addition".into()));
    };
    mv.validate()?;
    mv.check_target(graph)?;
    let mut g = graph.clone();
    let v0 = g.add_vertex();
    for a in attachments {
        g.add_edge(v0, a.neighbor, a.gain)?;
    }
    Ok(g)
}

pub fn apply_edge_split(
    graph: &PeriodicOrbitGraph,
    mv: &HennebergMove,
) -> Result<PeriodicOrbitGraph> {
    let HennebergMove::EdgeSplit {
        split_edge: e,
        third,
        ..
    } = mv
    else {
        return Err(Error::InvalidMove("expected an edge split".into()));
    };
    mv.validate()?;
    mv.check_target(graph)?;
    let found = graph
        .edges()
        .iter()
        .find(|x| x.same_as(e.tail, e.head, e.gain))
        .ok_or_else(|| {
            Error::InvalidMove(format!(
                "edge {{{}, {}; {}}} is not in the graph",
                e.tail, e.head, e.gain
            ))
        })?
        .id;
    let mut g = graph.clone();
    g.remove_edge(found);
    let v0 = g.add_vertex();
    g.add_edge(v0, e.tail, GainVector::ZERO)?;
    g.add_edge(v0, e.head, e.gain)?;
    g.add_edge(v0, third.neighbor, third.gain)?;
    Ok(g)
}

pub fn apply_move(graph: &PeriodicOrbitGraph, mv: &HennebergMove) -> Result<PeriodicOrbitGraph> {
    match mv {
        HennebergMove::VertexAddition { .. } => apply_vertex_addition(graph, mv),
        HennebergMove::EdgeSplit { .. } => apply_edge_split(graph, mv),
    }
}

fn ends_at(graph: &PeriodicOrbitGraph, v0: VertexId, expected: usize) -> Result<Vec<Incidence>> {
    if !graph.contains_vertex(v0) {
        return Err(Error::InvalidGraph(format!("vertex {v0} does not exist")));
    }
    let degree = graph.degree(v0);
    if degree != expected {
        return Err(Error::WrongDegree {
            vertex: v0,
            degree,
            expected,
        });
    }
    if graph.has_loop_at(v0) {
        return Err(Error::InvalidMove(format!("vertex {v0} carries a loop")));
    }
    let mut ends = graph.incidences(v0);
    ends.sort_by_key(|i| (i.neighbor, i.gain, i.edge));
    Ok(ends)
}

/// Removes a 2-valent vertex. Ids above `v0` shift down by one.
pub fn delete_degree2_vertex(
    graph: &PeriodicOrbitGraph,
    v0: VertexId,
) -> Result<PeriodicOrbitGraph> {
    ends_at(graph, v0, 2)?;
    graph.remove_vertex(v0)
}

/// Result of removing a 3-valent vertex and adding one edge among its
/// former neighbours.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReverseSplit {
    /// Vertex ids above the removed vertex shift down by one.
    pub graph: PeriodicOrbitGraph,
    /// The added edge, in the ids of `graph`.
    pub added_edge: DirectedGainEdge,
    /// Edge split on `graph` that rebuilds the input up to a switch at the
    /// removed vertex, which comes back as the last vertex.
    pub forward: HennebergMove,
    /// The rebuilt vertex differs from the removed one by a switch: its
    /// edge gains are the originals minus this vector.
    pub switch: GainVector,
}

/// Tries the candidates `{i1,i2; m02-m01}`, `{i2,i3; m03-m02}`,
/// `{i3,i1; m01-m03}` with ends sorted by neighbour, gain and edge id, and
/// keeps the first whose result passes the periodic Laman check.
pub fn reverse_edge_split(graph: &PeriodicOrbitGraph, v0: VertexId) -> Result<ReverseSplit> {
    let ends = ends_at(graph, v0, 3)?;
    if ends[0].neighbor == ends[2].neighbor {
        return Err(Error::Infeasible(v0));
    }
    let shift = |w: VertexId| if w > v0 { w - 1 } else { w };
    let base = graph.remove_vertex(v0)?;
    for (a, b, c) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        let (ea, eb, ec) = (ends[a], ends[b], ends[c]);
        if ea.neighbor == eb.neighbor && ea.gain == eb.gain {
            continue;
        }
        let mut g = base.clone();
        let id = g.add_edge(shift(ea.neighbor), shift(eb.neighbor), eb.gain - ea.gain)?;
        if !periodic_laman_check(&g).minimally_rigid {
            continue;
        }
        // the forward split needs its first end to differ from the third
        let (first, second) = if ea.neighbor == ec.neighbor {
            (eb, ea)
        } else {
            (ea, eb)
        };
        let forward = HennebergMove::EdgeSplit {
            new_vertex: g.vertex_count() as VertexId + 1,
            split_edge: SplitEdge {
                tail: shift(first.neighbor),
                head: shift(second.neighbor),
                gain: second.gain - first.gain,
            },
            third: Attachment {
                neighbor: shift(ec.neighbor),
                gain: ec.gain - first.gain,
            },
        };
        let added_edge = *g.edge(id).expect("edge just added");
        return Ok(ReverseSplit {
            graph: g,
            added_edge,
            forward,
            switch: first.gain,
        });
    }
    Err(Error::Infeasible(v0))
}
