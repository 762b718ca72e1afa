//! Exact inverses and determinants of distance matrices of distance
//! well-defined graphs, assembled block by block.
//!
//! A graph is split at its cut vertices into blocks. Each block gets a
//! *bag* `(D, λ, α, β, L)` satisfying `αᵀD = λjᵀ`, `LD + I = βjᵀ` (and the
//! mirrored right-hand conditions); the per-block bags compose into a bag
//! for the whole graph, from which `D⁻¹ = -L + (1/λ) β αᵀ` whenever
//! `λ ≠ 0`. Weighted directed cycles have closed-form bags, so cactoid
//! digraphs (every block a directed cycle) are inverted without any
//! elimination. All arithmetic is over the exact rationals, and every
//! formula has a brute-force oracle in [`linalg`] to check it against.

pub mod bags;
pub mod blocks;
pub mod compose;
pub mod generators;
pub mod graph;
pub mod linalg;

pub use bags::{classify, cycle_bag, generic_bag, verify, Bag, BagVerdict};
pub use blocks::{block_decompose, BlockDecomposition};
pub use compose::{
    cactoid_det, compose_bags, generalized_distance_matrix, ghh_det_cof, graham_pollak_det,
    invert_distance_matrix, CompositionResult,
};
pub use generators::{gen_cactoid, gen_tree, GenSpec, WeightKind};
pub use graph::{distance_matrix, Graph};
pub use linalg::{RMatrix, Rational};
