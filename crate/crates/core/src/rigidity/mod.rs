//! The fixed-torus rigidity matrix and its exact generic rank.
//!
//! Row `e = {i, j; m}` holds `p_i - (p_j + m L0)` in the two columns of
//! `v_i` and the negation in those of `v_j`. Its kernel is the space of
//! infinitesimal motions; the two translations always lie in it, so the rank
//! never exceeds `2|V| - 2`.

mod config;
mod linalg;
mod matrix;

pub use config::{ConfigFile, Configuration, LatticeMatrix, Point, SAMPLE_DENOMINATOR};
pub use linalg::RationalMatrix;
pub use matrix::{
    affine_rank_invariance, build_rigidity_matrix, generic_rank, is_infinitesimally_rigid,
    motion_space, rigidity_matrix, self_stresses, symbolic_rows, GenericRankResult, MotionSpace,
    RankReport, RigidityMatrixReport, DEFAULT_SEED, DEFAULT_TRIALS,
};
