//! Finite layer of the deep-tree coding: trees with a fixed stem, free
//! joins, uniform depth, cusp detection, difference-injective scale pools
//! and the decoding of membership from cusp labels.
//!
//! Unbounded notions are finitized: "infinitely many successors" becomes
//! "at least `successor_min`", and "often has unbounded depth" becomes "not
//! of uniform depth and of height at least `deep_min`".

mod cusp;
mod decode;
mod diffs;
mod itree;

use thiserror::Error;

use crate::tree::TreeError;

pub use cusp::{detect_cusps, successor_classes, CuspLabel, CuspThresholds};
pub use decode::{
    build_cusp_tree, cusp_decode, decode_i0_address, i0_address, membership_labels, BuildOptions, I0Node,
};
pub use diffs::{
    assign_diffs, assign_diffs_with, DiffAssignment, DiffAssignmentJson, GrowthRule, Quad, QuadJson, Sign,
};
pub use itree::{free_join, make_i_tree, uniform_depth, ITree};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DeepTreeError {
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("not an i-tree: {0}")]
    NotITree(String),
    #[error("stems differ: {left} vs {right}")]
    StemMismatch { left: usize, right: usize },
    #[error("pool {pool} ran out after {produced} values (needed {needed})")]
    PoolExhausted {
        pool: usize,
        produced: usize,
        needed: usize,
    },
    #[error("invalid assignment: {0}")]
    BadAssignment(String),
    #[error("label at {node} has difference {diff}, which codes nothing")]
    UnknownDifference { node: String, diff: u64 },
    #[error("label at {node} codes delta {found} but sits at delta {expected}")]
    DeltaMismatch {
        node: String,
        expected: String,
        found: String,
    },
    #[error("node {eta} is labelled both member and non-member")]
    Inconsistent { eta: String },
    #[error("member {node} has a non-member parent")]
    NotPrefixClosed { node: String },
    #[error("no member nodes")]
    NoMembers,
    #[error("tree of height {height} exceeds the depth bound {bound}")]
    TreeTooDeep { height: usize, bound: usize },
    #[error(transparent)]
    Tree(#[from] TreeError),
}
