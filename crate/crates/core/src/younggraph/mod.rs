//! Block structure of Chevalley–Eilenberg differentials: isotypic (Young graph)
//! pieces of `Λ(A ⊗ B)^*` and bidegree (triangle) pieces for `L = N ⊕ M`.

mod blocks;
mod cauchy;
mod partition;

pub use blocks::{
    blockwise_square_is_zero, render_grid, triangle_report, young_graph_report, Arrow, BlockReport, Component, DEFAULT_YOUNG_LEVELS,
    MAX_YOUNG_LEVELS,
};
pub use cauchy::{cauchy_decompose, CauchyComponent};
pub use partition::{character, CharacterCache, CharacterTable, Partition};
