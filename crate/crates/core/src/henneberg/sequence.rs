//! Henneberg sequences: decomposition to a single vertex and forward replay.

use serde::{Deserialize, Serialize};

use super::{apply_move, reverse_edge_split, Attachment, HennebergMove, SplitEdge};
use crate::error::{Error, Result};
use crate::gain::GainVector;
use crate::graph::{PeriodicOrbitGraph, VertexId};
use crate::rigidity::{generic_rank, LatticeMatrix};
use crate::sparsity::{pebble_game_sparse, periodic_laman_check, SparsityParams};

/// Moves applied in order to a single vertex. Each move adds vertex
/// `k + 2` at step `k`; `labels`, when present, renames construction vertex
/// `c` to `labels[c - 1]` at the end.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HennebergSequence {
    pub moves: Vec<HennebergMove>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<VertexId>>,
}

impl HennebergSequence {
    pub fn new(moves: Vec<HennebergMove>) -> Self {
        HennebergSequence {
            moves,
            labels: None,
        }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("sequence serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidMove(e.to_string()))
    }
}

fn relabel_move(mv: &HennebergMove, map: impl Fn(VertexId) -> VertexId) -> HennebergMove {
    let att = |a: &Attachment| Attachment {
        neighbor: map(a.neighbor),
        gain: a.gain,
    };
    match mv {
        HennebergMove::VertexAddition {
            new_vertex,
            attachments,
        } => HennebergMove::VertexAddition {
            new_vertex: map(*new_vertex),
            attachments: [att(&attachments[0]), att(&attachments[1])],
        },
        HennebergMove::EdgeSplit {
            new_vertex,
            split_edge,
            third,
        } => HennebergMove::EdgeSplit {
            new_vertex: map(*new_vertex),
            split_edge: SplitEdge {
                tail: map(split_edge.tail),
                head: map(split_edge.head),
                gain: split_edge.gain,
            },
            third: att(third),
        },
    }
}

/// Reduces a minimally rigid graph to one vertex, always removing the
/// lowest-id vertex of minimum degree, and returns the inverse moves in
/// construction order. Replaying gives a graph T-gain equivalent to the input.
pub fn decompose(graph: &PeriodicOrbitGraph) -> Result<HennebergSequence> {
    let report = periodic_laman_check(graph);
    if !report.minimally_rigid {
        return Err(Error::NotLaman(report.verdict.reason().to_string()));
    }
    let mut g = graph.clone();
    // orig[w - 1] is the input id of current vertex w
    let mut orig: Vec<VertexId> = graph.vertices().collect();
    let mut undo = Vec::new();
    while g.vertex_count() > 1 {
        let v0 = g
            .vertices()
            .filter(|&v| !g.has_loop_at(v))
            .min_by_key(|&v| (g.degree(v), v))
            .ok_or_else(|| Error::NotLaman("every vertex carries a loop".into()))?;
        let to_orig = |w: VertexId| orig[w as usize - 1];
        match g.degree(v0) {
            2 => {
                let mut ends = g.incidences(v0);
                ends.sort_by_key(|i| (i.neighbor, i.gain, i.edge));
                undo.push((
                    GainVector::ZERO,
                    HennebergMove::VertexAddition {
                        new_vertex: to_orig(v0),
                        attachments: [
                            Attachment {
                                neighbor: to_orig(ends[0].neighbor),
                                gain: ends[0].gain,
                            },
                            Attachment {
                                neighbor: to_orig(ends[1].neighbor),
                                gain: ends[1].gain,
                            },
                        ],
                    },
                ));
                g = g.remove_vertex(v0)?;
            }
            3 => {
                let r = reverse_edge_split(&g, v0)?;
                // forward is written on the reduced graph; map back through the shift
                let unshift = |w: VertexId| to_orig(if w >= v0 { w + 1 } else { w });
                let new_id = to_orig(v0);
                let mv = relabel_move(&r.forward, |w| {
                    if w == r.forward.new_vertex() {
                        new_id
                    } else {
                        unshift(w)
                    }
                });
                undo.push((r.switch, mv));
                g = r.graph;
            }
            d => return Err(Error::NotLaman(format!("minimum degree is {d}"))),
        }
        orig.remove(v0 as usize - 1);
    }

    let n = graph.vertex_count();
    let mut construction = vec![0 as VertexId; n + 1];
    let mut labels = Vec::with_capacity(n);
    construction[orig[0] as usize] = 1;
    labels.push(orig[0]);
    for (_, mv) in undo.iter().rev() {
        labels.push(mv.new_vertex());
        construction[mv.new_vertex() as usize] = labels.len() as VertexId;
    }
    // Every split rebuilds its vertex switched, so later moves touching it
    // must be rewritten in the gauge of the replayed graph.
    let mut potential = vec![GainVector::ZERO; n + 1];
    let moves = undo
        .iter()
        .rev()
        .map(|(switch, mv)| {
            let mut mv = relabel_move(mv, |w| construction[w as usize]);
            let pot = |w: VertexId| potential[w as usize];
            let v0 = mv.new_vertex() as usize;
            match &mut mv {
                HennebergMove::VertexAddition { attachments, .. } => {
                    for a in attachments.iter_mut() {
                        a.gain += pot(a.neighbor);
                    }
                }
                HennebergMove::EdgeSplit {
                    split_edge, third, ..
                } => {
                    let base = pot(split_edge.tail);
                    split_edge.gain += pot(split_edge.head) - base;
                    third.gain += pot(third.neighbor) - base;
                    potential[v0] = *switch + base;
                }
            }
            mv
        })
        .collect();
    Ok(HennebergSequence {
        moves,
        labels: Some(labels),
    })
}

fn replay_with(
    sequence: &HennebergSequence,
    mut check: impl FnMut(&PeriodicOrbitGraph) -> Result<()>,
) -> Result<PeriodicOrbitGraph> {
    let mut g = PeriodicOrbitGraph::single_vertex();
    for (i, mv) in sequence.moves.iter().enumerate() {
        let fail = |source: Error| Error::ReplayFailed {
            index: i + 1,
            source: Box::new(source),
        };
        g = apply_move(&g, mv).map_err(fail)?;
        if !pebble_game_sparse(&g, SparsityParams::TORUS).tight {
            return Err(fail(Error::NotLaman("prefix is not (2,2)-tight".into())));
        }
        check(&g).map_err(fail)?;
    }
    match &sequence.labels {
        Some(labels) => g.relabel(labels),
        None => Ok(g),
    }
}

/// Applies the moves to a single vertex, checking that every prefix is
/// (2,2)-tight. Errors carry the 1-based index of the failing move.
pub fn replay(sequence: &HennebergSequence) -> Result<PeriodicOrbitGraph> {
    replay_with(sequence, |_| Ok(()))
}

/// Like [`replay`], and also requires the generic rank of every prefix on
/// the unit torus to be `2|V| - 2`.
pub fn replay_validated(
    sequence: &HennebergSequence,
    trials: usize,
    seed: u64,
) -> Result<PeriodicOrbitGraph> {
    let lattice = LatticeMatrix::identity();
    replay_with(sequence, |g| {
        let expected = 2 * g.vertex_count() - 2;
        let rank = generic_rank(g, &lattice, trials, seed).rank;
        if rank == expected {
            Ok(())
        } else {
            Err(Error::NotLaman(format!(
                "generic rank {rank}, expected {expected}"
            )))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tgain::t_gain_equivalent;

    fn fig7_sequence() -> HennebergSequence {
        serde_json::from_str(
            r#"{"moves": [
                {"type": "vertex_addition", "new_vertex": 2,
                 "attachments": [{"neighbor": 1, "gain": [-3, -1]}, {"neighbor": 1, "gain": [0, 1]}]},
                {"type": "vertex_addition", "new_vertex": 3,
                 "attachments": [{"neighbor": 2, "gain": [0, 0]}, {"neighbor": 1, "gain": [-1, -1]}]},
                {"type": "edge_split", "new_vertex": 4,
                 "split_edge": {"tail": 1, "head": 3, "gain": [1, 1]}, "third": {"neighbor": 3, "gain": [0, -1]}},
                {"type": "vertex_addition", "new_vertex": 5,
                 "attachments": [{"neighbor": 3, "gain": [0, 0]}, {"neighbor": 2, "gain": [-1, -2]}]}
            ]}"#,
        )
        .unwrap()
    }

    fn fig7e() -> PeriodicOrbitGraph {
        PeriodicOrbitGraph::from_triples(
            5,
            &[
                (1, 2, (3, 1)),
                (2, 1, (0, 1)),
                (2, 3, (0, 0)),
                (1, 4, (0, 0)),
                (3, 4, (0, 1)),
                (4, 3, (1, 1)),
                (5, 3, (0, 0)),
                (2, 5, (1, 2)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn fig7_replays_to_final_graph() {
        let g = replay(&fig7_sequence()).unwrap();
        assert_eq!(g.edge_multiset(), fig7e().edge_multiset());
        assert!(periodic_laman_check(&g).minimally_rigid);
        assert_eq!(replay_validated(&fig7_sequence(), 3, 0).unwrap(), g);
    }

    #[test]
    fn fig7_decomposes() {
        let seq = decompose(&fig7e()).unwrap();
        assert_eq!(seq.len(), 4);
        let back = replay(&seq).unwrap();
        assert!(t_gain_equivalent(&back, &fig7e()).unwrap());
    }

    #[test]
    fn trivial_sequences() {
        assert_eq!(
            replay(&HennebergSequence::default()).unwrap(),
            PeriodicOrbitGraph::single_vertex()
        );
        let seq = decompose(&PeriodicOrbitGraph::single_vertex()).unwrap();
        assert!(seq.is_empty());
    }

    #[test]
    fn bad_third_move_reports_index() {
        let mut seq = fig7_sequence();
        if let HennebergMove::EdgeSplit { split_edge, .. } = &mut seq.moves[2] {
            split_edge.gain = (7, 7).into();
        }
        match replay(&seq).unwrap_err() {
            Error::ReplayFailed { index, source } => {
                assert_eq!(index, 3);
                assert!(matches!(*source, Error::InvalidMove(_)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_laman_is_rejected() {
        let balanced = fig7e().map_gains(|_| (0, 0).into());
        assert!(matches!(decompose(&balanced), Err(Error::NotLaman(_))));
    }

    #[test]
    fn labels_restore_vertex_names() {
        // vertex 1 has degree 3 here and is removed last, so labels are not the identity
        let g = fig7e().relabel(&[5, 4, 3, 2, 1]).unwrap();
        let seq = decompose(&g).unwrap();
        let back = replay(&seq).unwrap();
        assert!(t_gain_equivalent(&back, &g).unwrap());
        let json = seq.to_json();
        assert_eq!(HennebergSequence::from_json(&json).unwrap(), seq);
    }
}
