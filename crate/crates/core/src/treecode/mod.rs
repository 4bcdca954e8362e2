//! Codings of relational structures as colored trees, and of colored trees
//! as plain trees.
//!
//! The second step hangs gadgets below every node. In the depth-coded form
//! each color `j` of a node at depth `n` becomes a path of length
//! `Φ(n, j)`; in the library form each color `j` becomes a copy of a fixed
//! tree `A_j`. Either way a spine of length `D` (the depth horizon) marks
//! the original nodes, so the decoder can tell them apart from gadget
//! nodes.

mod attach;
mod colored_code;
mod library;
mod pairing;
mod structure_code;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tree::TreeError;

pub use attach::attach_trees;
pub use colored_code::{decode_colored_tree, encode_colored_tree, minimal_horizon};
pub use library::{
    decode_colored_tree_with_library, encode_colored_tree_with_library, make_special_family, GadgetLibrary,
};
pub use pairing::{cantor_pair, cantor_unpair, PairingFn};
pub use structure_code::{atom_color, decode_structure, encode_structure, Atom};

/// Color reserved for marking original nodes.
pub const MARKER: u32 = 0;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeCodeError {
    #[error("depth must be at least 1")]
    ZeroDepth,
    #[error("horizon must be at least 1")]
    ZeroHorizon,
    #[error("relation {name} has arity {arity}, deeper than the tree depth {depth}")]
    InsufficientDepth { name: String, arity: usize, depth: usize },
    #[error("not a full tuple tree: {0}")]
    NotFullTree(String),
    #[error("colors at node {node:?} disagree with the structure read off the tree")]
    InconsistentColors { node: String },
    #[error("color {color} at node {node:?} is reserved for the marker")]
    ReservedColor { node: String, color: u32 },
    #[error("color {color} at node {node:?} needs gadget depth {depth}, which is not below the horizon {horizon}")]
    HorizonTooSmall {
        node: String,
        color: u32,
        depth: u64,
        horizon: usize,
    },
    #[error("color {color} at node {node:?} has no gadget in a library of {size}")]
    ColorOutsideLibrary { node: String, color: u32, size: usize },
    #[error("malformed encoding at node {node:?}: {reason}")]
    Malformed { node: String, reason: String },
    #[error("bad gadget library: {0}")]
    Library(String),
    #[error("gadget attached at {0:?}, which is not a node of the tree")]
    UnknownNode(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// Length of the spine hung below every original node. Every gadget must
/// be strictly shallower.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DepthHorizon(usize);

impl DepthHorizon {
    pub fn new(d: usize) -> Result<Self, TreeCodeError> {
        if d == 0 {
            Err(TreeCodeError::ZeroHorizon)
        } else {
            Ok(Self(d))
        }
    }

    pub fn get(&self) -> usize {
        self.0
    }
}

/// Parameters the decoder needs alongside an encoded tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub horizon: usize,
    pub pairing: String,
    pub marker: u32,
    /// Number of library gadgets when the library form was used.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub library: Option<usize>,
}

impl Manifest {
    pub fn for_pairing(horizon: DepthHorizon, phi: PairingFn) -> Self {
        Self {
            horizon: horizon.get(),
            pairing: phi.name().to_string(),
            marker: MARKER,
            library: None,
        }
    }

    pub fn for_library(horizon: DepthHorizon, size: usize) -> Self {
        Self {
            horizon: horizon.get(),
            pairing: "library".to_string(),
            marker: MARKER,
            library: Some(size),
        }
    }
}
