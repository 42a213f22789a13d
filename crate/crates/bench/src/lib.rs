//! Inputs shared by the benchmarks under `benches/`.

use braidfan_core::oracle::{all_tree_posets, enumerate_coarsenings};
use braidfan_core::{Fan, Preposet};

/// Every `stride`-th complete smooth coarsening of `B(4)`.
pub fn n4_sample(stride: usize) -> Vec<Fan> {
    enumerate_coarsenings(4)
        .expect("n = 4 is enumerable")
        .into_iter()
        .step_by(stride.max(1))
        .collect()
}

pub fn tree_posets(n: usize) -> Vec<Preposet> {
    all_tree_posets(n).expect("n >= 2")
}
