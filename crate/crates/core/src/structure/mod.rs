//! Block structure of strongly connected digraphs: biconnected components
//! of the underlying graph, the block tree, ear decompositions and the
//! side-of-a-vertex predicate.

pub mod blocks;
pub mod ears;
pub mod side;

pub use blocks::{
    biconnected_components, block_tree, is_strongly_biconnected, strongly_biconnected_components, BlockDecomposition,
    BlockTree,
};
pub use ears::{
    closed_ear_decomposition, open_ear_decomposition, validate_ear_decomposition, Ear, EarDecomposition, EarKind,
};
pub use side::{side_mask, t_side};
