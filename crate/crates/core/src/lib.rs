//! Exact Schubert calculus over the integers.

pub mod elem;
pub mod error;
pub mod mttree;
pub mod perm;
pub mod poly;
pub mod schubert;
pub mod stanley;

pub use elem::{
    elem_poly, elem_stability, elem_to_schubert, elementary, kostka_inverse_column, kostka_matrix,
    pieri, pieri_stability, schubert_to_elem, staircase, ElemExpansion, ElemIndex, KostkaMatrix,
    StrongStability,
};
pub use error::{Error, Result};
pub use mttree::{
    grassmannian_product, max_transition, mt_tree, stanley_via_mt, tree_to_dot, LeafKind, MtStable,
    MtTree, TransitionData,
};
pub use perm::{Code, Diagram, PermStats, Permutation};
pub use poly::{good_pair_check, Exponent, IndexSequence, Polynomial};
pub use schubert::{
    divided_difference, expand_in_schubert, monk, product_expand, schubert_bjs, schubert_dd,
    SchubertExpansion,
};
pub use stanley::{
    embedded_product, monk_stable, stability_report, stable_expand, stable_expand_with,
    StabilityReport, StableExpansion, StableOptions, StanleyExpansion,
};
