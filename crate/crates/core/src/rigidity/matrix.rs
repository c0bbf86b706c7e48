use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::config::{Configuration, LatticeMatrix, Point};
use super::linalg::{independent_extension, RationalMatrix};
use crate::error::Result;
use crate::gain::GainVector;
use crate::graph::PeriodicOrbitGraph;

pub const DEFAULT_TRIALS: usize = 3;
pub const DEFAULT_SEED: u64 = 0;

/// `|E| x 2|V|` rigidity matrix of the framework `(graph, config)`.
pub fn rigidity_matrix(
    graph: &PeriodicOrbitGraph,
    config: &Configuration,
) -> Result<RationalMatrix> {
    config.ensure_covers(graph.vertex_count())?;
    let mut m = RationalMatrix::zeros(graph.edge_count(), 2 * graph.vertex_count());
    for (row, e) in graph.edges().iter().enumerate() {
        let shift = config.lattice().translate(e.gain);
        let (pi, pj) = (config.position(e.tail), config.position(e.head));
        for k in 0..2 {
            let d = &pi[k] - &pj[k] - &shift[k];
            let ci = 2 * (e.tail as usize - 1) + k;
            let cj = 2 * (e.head as usize - 1) + k;
            *m.get_mut(row, ci) += &d;
            *m.get_mut(row, cj) -= &d;
        }
    }
    Ok(m)
}

/// The rigidity matrix with its rank, motions and self-stresses.
#[derive(Clone, Debug)]
pub struct RigidityMatrixReport {
    pub matrix: RationalMatrix,
    pub rank: usize,
    /// Kernel basis; each vector assigns a velocity to every vertex.
    pub motion_basis: Vec<Vec<Point>>,
    /// Left-kernel basis; each vector assigns a coefficient to every edge,
    /// in edge-id order.
    pub stress_basis: Vec<Vec<BigRational>>,
}

impl RigidityMatrixReport {
    pub fn flex_count(&self) -> usize {
        self.motion_basis.len().saturating_sub(2)
    }
}

fn as_velocities(v: Vec<BigRational>) -> Vec<Point> {
    let mut it = v.into_iter();
    let mut out = Vec::new();
    while let (Some(x), Some(y)) = (it.next(), it.next()) {
        out.push([x, y]);
    }
    out
}

pub fn build_rigidity_matrix(
    graph: &PeriodicOrbitGraph,
    config: &Configuration,
) -> Result<RigidityMatrixReport> {
    let matrix = rigidity_matrix(graph, config)?;
    let rank = matrix.rank();
    let motion_basis = matrix.kernel().into_iter().map(as_velocities).collect();
    let stress_basis = if graph.edge_count() == 0 {
        Vec::new()
    } else {
        matrix.left_kernel()
    };
    Ok(RigidityMatrixReport {
        matrix,
        rank,
        motion_basis,
        stress_basis,
    })
}

/// Infinitesimally rigid iff the rank is `2|V| - 2`.
pub fn is_infinitesimally_rigid(
    graph: &PeriodicOrbitGraph,
    config: &Configuration,
) -> Result<bool> {
    Ok(rigidity_matrix(graph, config)?.rank() == 2 * graph.vertex_count() - 2)
}

/// Kernel split into the two translations and a complement of flexes.
#[derive(Clone, Debug)]
pub struct MotionSpace {
    pub translations: [Vec<Point>; 2],
    pub flexes: Vec<Vec<Point>>,
}

pub fn motion_space(graph: &PeriodicOrbitGraph, config: &Configuration) -> Result<MotionSpace> {
    let matrix = rigidity_matrix(graph, config)?;
    let n = graph.vertex_count();
    let translation = |axis: usize| -> Vec<BigRational> {
        (0..2 * n)
            .map(|c| {
                if c % 2 == axis {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            })
            .collect()
    };
    let t = [translation(0), translation(1)];
    let flexes = independent_extension(&t, &matrix.kernel());
    let [tx, ty] = t;
    Ok(MotionSpace {
        translations: [as_velocities(tx), as_velocities(ty)],
        flexes: flexes.into_iter().map(as_velocities).collect(),
    })
}

pub fn self_stresses(
    graph: &PeriodicOrbitGraph,
    config: &Configuration,
) -> Result<Vec<Vec<BigRational>>> {
    if graph.edge_count() == 0 {
        return Ok(Vec::new());
    }
    Ok(rigidity_matrix(graph, config)?.left_kernel())
}

/// Maximum exact rank over random rational configurations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericRankResult {
    pub rank: usize,
    pub trials: usize,
    pub seed: u64,
    /// Rank observed in each trial, in sampling order.
    pub per_trial: Vec<usize>,
}

/// Samples `trials` configurations on the `2^-31` grid from a ChaCha8
/// stream seeded with `seed` and returns the largest exact rank seen.
///
/// The result is the generic rank with overwhelming probability: a
/// configuration on which a nonzero minor vanishes is a root of a nonzero
/// polynomial of degree at most `|E|`.
pub fn generic_rank(
    graph: &PeriodicOrbitGraph,
    lattice: &LatticeMatrix,
    trials: usize,
    seed: u64,
) -> GenericRankResult {
    let trials = trials.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let per_trial: Vec<usize> = (0..trials)
        .map(|_| {
            let config = Configuration::random(graph.vertex_count(), lattice.clone(), &mut rng);
            rigidity_matrix(graph, &config)
                .expect("random configuration covers the graph")
                .rank()
        })
        .collect();
    GenericRankResult {
        rank: per_trial.iter().copied().max().unwrap_or(0),
        trials,
        seed,
        per_trial,
    }
}

/// Whether two lattices give the same generic rank. Both runs use the same
/// seed, hence the same vertex positions.
pub fn affine_rank_invariance(
    graph: &PeriodicOrbitGraph,
    lattice_a: &LatticeMatrix,
    lattice_b: &LatticeMatrix,
    trials: usize,
    seed: u64,
) -> bool {
    generic_rank(graph, lattice_a, trials, seed).rank
        == generic_rank(graph, lattice_b, trials, seed).rank
}

/// Summary written by the `rank` command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub rank: usize,
    pub flexes: usize,
    pub stresses: usize,
    pub trials: usize,
    pub seed: u64,
}

impl RankReport {
    pub fn new(graph: &PeriodicOrbitGraph, result: &GenericRankResult) -> Self {
        RankReport {
            rank: result.rank,
            flexes: 2 * graph.vertex_count() - 2 - result.rank,
            stresses: graph.edge_count() - result.rank,
            trials: result.trials,
            seed: result.seed,
        }
    }
}

fn gain_term(m: GainVector, negate: bool) -> String {
    // write the shift with nonnegative-looking components where possible
    let shift = if negate { -m } else { m };
    if m.is_zero() {
        String::new()
    } else if shift.a <= 0 && shift.b <= 0 {
        format!(" - ({},{})L0", -shift.a, -shift.b)
    } else {
        format!(" + ({},{})L0", shift.a, shift.b)
    }
}

/// The rigidity matrix written symbolically, one entry per vertex:
/// `p1 - p3 + (1,0)L0` in the column of the tail and
/// `p3 - p1 - (1,0)L0` in the column of the head; `0` elsewhere.
pub fn symbolic_rows(graph: &PeriodicOrbitGraph) -> Vec<Vec<String>> {
    graph
        .edges()
        .iter()
        .map(|e| {
            let mut row = vec!["0".to_string(); graph.vertex_count()];
            if !e.is_loop() {
                let (i, j) = (e.tail, e.head);
                row[i as usize - 1] = format!("p{i} - p{j}{}", gain_term(e.gain, true));
                row[j as usize - 1] = format!("p{j} - p{i}{}", gain_term(e.gain, false));
            }
            row
        })
        .collect()
}
