//! (2,2)- and (2,3)-sparsity, tight subgraphs, spanning-tree decompositions
//! and the combinatorial periodic Laman test.

mod constructive;
mod laman;
mod nash_williams;
mod pebble;
mod tight;

pub use constructive::{
    is_constructive, is_constructive_exhaustive, is_constructive_with, ConstructiveMethod,
    ConstructiveReport,
};
pub use laman::{
    periodic_laman_check, periodic_laman_check_with, LamanReport, LamanVerdict, WitnessReport,
};
pub use nash_williams::{is_spanning_tree, nash_williams_decompose, TreeDecomposition};
pub use pebble::{pebble_game_sparse, PebbleGameState, SparsityReport};
pub use tight::{
    enumerate_tight_subgraphs, enumerate_tight_subgraphs_with_bound, TightSubgraph,
    EXHAUSTIVE_BOUND,
};

use serde::{Deserialize, Serialize};

/// Sparsity counts `|E'| <= k|V'| - l`; only `k = 2`, `l ∈ {2, 3}` are used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SparsityParams {
    k: u32,
    l: u32,
}

impl SparsityParams {
    /// `|E| = 2|V| - 2`: the fixed-torus count.
    pub const TORUS: SparsityParams = SparsityParams { k: 2, l: 2 };
    /// `|E| = 2|V| - 3`: the Laman count for finite plane frameworks.
    pub const LAMAN: SparsityParams = SparsityParams { k: 2, l: 3 };

    pub fn new(k: u32, l: u32) -> Option<Self> {
        (k == 2 && (l == 2 || l == 3)).then_some(SparsityParams { k, l })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    /// `k n - l` as a signed count.
    pub fn bound(&self, vertices: usize) -> i64 {
        self.k as i64 * vertices as i64 - self.l as i64
    }
}
