//! Random corpora run through both rigidity oracles.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use torus_rigidity::henneberg::generate_random;
use torus_rigidity::rigidity::{generic_rank, LatticeMatrix};
use torus_rigidity::sparsity::{periodic_laman_check_with, ConstructiveMethod};
use torus_rigidity::{GainVector, PeriodicOrbitGraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorpusKind {
    /// Output of random Henneberg moves: minimally rigid by construction.
    Henneberg,
    /// A Henneberg topology with fresh random gains, zero a third of the time.
    Regained,
    /// A random spanning tree plus random extra edges, `2|V| - 2` in all.
    Random,
    /// A Henneberg topology with every gain zero.
    ZeroGain,
}

impl CorpusKind {
    pub const ALL: [CorpusKind; 4] = [
        CorpusKind::Henneberg,
        CorpusKind::Regained,
        CorpusKind::Random,
        CorpusKind::ZeroGain,
    ];
}

fn sparse_gain(rng: &mut ChaCha8Rng, k: i64) -> GainVector {
    if rng.random_range(0..3) == 0 {
        GainVector::ZERO
    } else {
        GainVector::new(rng.random_range(-k..=k), rng.random_range(-k..=k))
    }
}

/// Connected multigraph on `n` vertices with `2n - 2` edges and gains in
/// `[-k, k]²`; occasionally contains loops.
pub fn random_connected_graph(n: usize, k: i64, seed: u64) -> PeriodicOrbitGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = n.max(1) as VertexId;
    let mut g = PeriodicOrbitGraph::new(n, Vec::new()).expect("n >= 1");
    for v in 2..=n {
        let u = rng.random_range(1..v);
        let gain = sparse_gain(&mut rng, k);
        g.add_edge(u, v, gain).expect("vertices exist");
    }
    while g.edge_count() < 2 * n as usize - 2 {
        let u = rng.random_range(1..=n);
        let v = if rng.random_range(0..20) == 0 {
            u
        } else {
            rng.random_range(1..=n)
        };
        let gain = sparse_gain(&mut rng, k);
        g.add_edge(u, v, gain).expect("vertices exist");
    }
    g
}

pub fn corpus_graph(kind: CorpusKind, n: usize, k: i64, seed: u64) -> PeriodicOrbitGraph {
    let henneberg = || generate_random(n, k, seed).expect("n >= 1 and k >= 1");
    match kind {
        CorpusKind::Henneberg => henneberg(),
        CorpusKind::Regained => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
            henneberg().map_gains(|_| sparse_gain(&mut rng, k))
        }
        CorpusKind::Random => random_connected_graph(n, k, seed),
        CorpusKind::ZeroGain => henneberg().map_gains(|_| GainVector::ZERO),
    }
}

#[derive(Clone, Debug)]
pub struct CorpusOptions {
    pub count: usize,
    pub min_vertices: usize,
    pub max_vertices: usize,
    pub gain_bound: i64,
    pub seed: u64,
    pub trials: usize,
    pub kinds: Vec<CorpusKind>,
    pub method: ConstructiveMethod,
}

impl Default for CorpusOptions {
    fn default() -> Self {
        CorpusOptions {
            count: 1000,
            min_vertices: 1,
            max_vertices: 8,
            gain_bound: 2,
            seed: 0,
            trials: 3,
            kinds: CorpusKind::ALL.to_vec(),
            method: ConstructiveMethod::Pebble,
        }
    }
}

/// One corpus entry: how it was made and what each oracle said.
#[derive(Clone, Debug, Serialize)]
pub struct CorpusCase {
    pub index: usize,
    pub kind: CorpusKind,
    pub vertices: usize,
    pub seed: u64,
    pub laman: bool,
    pub rank: usize,
    pub reason: &'static str,
}

impl CorpusCase {
    pub fn rank_full(&self) -> bool {
        self.rank == 2 * self.vertices - 2
    }

    pub fn agrees(&self) -> bool {
        self.laman == self.rank_full()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AgreementMatrix {
    pub laman_yes_rank_full: usize,
    pub laman_yes_rank_deficient: usize,
    pub laman_no_rank_full: usize,
    pub laman_no_rank_deficient: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct KindSummary {
    pub kind: CorpusKind,
    pub count: usize,
    pub rigid: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusSummary {
    pub count: usize,
    pub seed: u64,
    pub agreement: AgreementMatrix,
    pub by_kind: Vec<KindSummary>,
    pub disagreements: Vec<CorpusCase>,
    pub elapsed_ms: u128,
}

impl CorpusSummary {
    pub fn all_agree(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// The `index`-th case of a corpus: vertex count, kind and graph seed are
/// drawn from stream `index` of the corpus seed.
pub fn case_parameters(opts: &CorpusOptions, index: usize) -> (CorpusKind, usize, u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    rng.set_stream(index as u64);
    let lo = opts.min_vertices.max(1);
    let n = rng.random_range(lo..=opts.max_vertices.max(lo));
    let kind = opts.kinds[index % opts.kinds.len()];
    (kind, n, rng.random())
}

pub fn evaluate(opts: &CorpusOptions, index: usize) -> CorpusCase {
    let (kind, n, seed) = case_parameters(opts, index);
    let g = corpus_graph(kind, n, opts.gain_bound, seed);
    let report = periodic_laman_check_with(&g, opts.method).expect("corpus graphs are small");
    let rank = generic_rank(&g, &LatticeMatrix::identity(), opts.trials, seed).rank;
    CorpusCase {
        index,
        kind,
        vertices: n,
        seed,
        laman: report.minimally_rigid,
        rank,
        reason: report.verdict.reason(),
    }
}

pub fn run_corpus(opts: &CorpusOptions) -> CorpusSummary {
    let start = Instant::now();
    let cases: Vec<CorpusCase> = if opts.kinds.is_empty() {
        Vec::new()
    } else {
        (0..opts.count)
            .into_par_iter()
            .map(|i| evaluate(opts, i))
            .collect()
    };
    let mut agreement = AgreementMatrix::default();
    for c in &cases {
        match (c.laman, c.rank_full()) {
            (true, true) => agreement.laman_yes_rank_full += 1,
            (true, false) => agreement.laman_yes_rank_deficient += 1,
            (false, true) => agreement.laman_no_rank_full += 1,
            (false, false) => agreement.laman_no_rank_deficient += 1,
        }
    }
    let by_kind = opts
        .kinds
        .iter()
        .filter(|k| cases.iter().any(|c| c.kind == **k))
        .map(|&kind| KindSummary {
            kind,
            count: cases.iter().filter(|c| c.kind == kind).count(),
            rigid: cases.iter().filter(|c| c.kind == kind && c.laman).count(),
        })
        .collect();
    CorpusSummary {
        count: cases.len(),
        seed: opts.seed,
        agreement,
        by_kind,
        disagreements: cases.into_iter().filter(|c| !c.agrees()).collect(),
        elapsed_ms: start.elapsed().as_millis(),
    }
}
