//! Random minimally rigid orbit graphs built from random Henneberg moves.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{apply_move, Attachment, HennebergMove, HennebergSequence, SplitEdge};
use crate::error::{Error, Result};
use crate::gain::GainVector;
use crate::graph::{DirectedGainEdge, PeriodicOrbitGraph, VertexId};
use crate::sparsity::periodic_laman_check;

const ATTEMPTS_PER_MOVE: usize = 200;
const RESEEDS: u64 = 64;

fn random_gain(rng: &mut ChaCha8Rng, k: i64) -> GainVector {
    GainVector::new(rng.random_range(-k..=k), rng.random_range(-k..=k))
}

fn random_move(rng: &mut ChaCha8Rng, g: &PeriodicOrbitGraph, k: i64) -> HennebergMove {
    let n = g.vertex_count() as VertexId;
    let new_vertex = n + 1;
    if g.edge_count() > 0 && rng.random_bool(0.5) {
        let mut e = g.edges()[rng.random_range(0..g.edge_count())];
        if rng.random_bool(0.5) {
            e = e.reversed();
        }
        let mut neighbor = rng.random_range(1..n);
        if neighbor >= e.tail {
            neighbor += 1;
        }
        HennebergMove::EdgeSplit {
            new_vertex,
            split_edge: SplitEdge {
                tail: e.tail,
                head: e.head,
                gain: e.gain,
            },
            third: Attachment {
                neighbor,
                gain: random_gain(rng, k),
            },
        }
    } else {
        let mut att = || Attachment {
            neighbor: rng.random_range(1..=n),
            gain: random_gain(rng, k),
        };
        HennebergMove::VertexAddition {
            new_vertex,
            attachments: [att(), att()],
        }
    }
}

fn try_build(
    rng: &mut ChaCha8Rng,
    n: usize,
    k: i64,
) -> Option<(HennebergSequence, PeriodicOrbitGraph)> {
    let mut g = PeriodicOrbitGraph::single_vertex();
    let mut moves = Vec::with_capacity(n.saturating_sub(1));
    while g.vertex_count() < n {
        let (mv, next) = (0..ATTEMPTS_PER_MOVE).find_map(|_| {
            let mv = random_move(rng, &g, k);
            let next = apply_move(&g, &mv).ok()?;
            periodic_laman_check(&next)
                .minimally_rigid
                .then_some((mv, next))
        })?;
        moves.push(mv);
        g = next;
    }
    Some((HennebergSequence::new(moves), g))
}

fn check_args(n: usize, k: i64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidConfig(
            "vertex count must be at least 1".into(),
        ));
    }
    if k < 1 {
        return Err(Error::InvalidConfig("gain bound must be at least 1".into()));
    }
    Ok(())
}

/// `n - 1` random moves with gains in `[-k, k]²`, each accepted only if the
/// result passes the periodic Laman check. Returns the sequence and the graph
/// it produces.
pub fn generate_random_sequence(
    n: usize,
    k: i64,
    seed: u64,
) -> Result<(HennebergSequence, PeriodicOrbitGraph)> {
    check_args(n, k)?;
    for round in 0..RESEEDS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(round);
        if let Some(found) = try_build(&mut rng, n, k) {
            return Ok(found);
        }
    }
    Err(Error::InvalidConfig(format!(
        "no graph on {n} vertices found with gain bound {k}"
    )))
}

/// A random minimally rigid graph: a random sequence, then a random vertex
/// renaming, random edge orientations and shuffled edge ids.
pub fn generate_random(n: usize, k: i64, seed: u64) -> Result<PeriodicOrbitGraph> {
    let (_, g) = generate_random_sequence(n, k, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(RESEEDS);
    let mut names: Vec<VertexId> = g.vertices().collect();
    names.shuffle(&mut rng);
    let g = g.relabel(&names)?;
    let mut ids: Vec<u32> = (1..=g.edge_count() as u32).collect();
    ids.shuffle(&mut rng);
    let edges = g
        .edges()
        .iter()
        .zip(ids)
        .map(|(e, id)| {
            let e = if rng.random_bool(0.5) {
                e.reversed()
            } else {
                *e
            };
            DirectedGainEdge::new(id, e.tail, e.head, e.gain)
        })
        .collect();
    PeriodicOrbitGraph::new(g.vertex_count() as u32, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::henneberg::replay;
    use crate::rigidity::{generic_rank, LatticeMatrix};

    #[test]
    fn single_vertex() {
        assert_eq!(
            generate_random(1, 2, 0).unwrap(),
            PeriodicOrbitGraph::single_vertex()
        );
    }

    #[test]
    fn small_example_passes() {
        let g = generate_random(6, 2, 7).unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 10);
        assert!(periodic_laman_check(&g).minimally_rigid);
        assert_eq!(generic_rank(&g, &LatticeMatrix::identity(), 3, 0).rank, 10);
    }

    #[test]
    fn deterministic_and_replayable() {
        assert_eq!(
            generate_random(8, 3, 11).unwrap(),
            generate_random(8, 3, 11).unwrap()
        );
        let (seq, g) = generate_random_sequence(8, 3, 11).unwrap();
        assert_eq!(replay(&seq).unwrap(), g);
    }

    #[test]
    fn bad_arguments() {
        assert!(generate_random(0, 1, 0).is_err());
        assert!(generate_random(3, 0, 0).is_err());
    }
}
