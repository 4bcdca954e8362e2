//! Isomorphism-preserving codings between finite relational structures,
//! colored trees, plain trees and bipartite graphs, together with the
//! extremal packing bounds and exhaustive oracles used to audit them.

pub mod bipartite;
pub mod canon;
pub mod colored;
pub mod deeptree;
pub mod dsu;
pub mod ef;
pub mod gen;
pub mod graphcode;
pub mod iso;
pub mod json;
pub mod oracle;
pub mod packing;
pub mod structure;
pub mod tree;
pub mod treecode;
pub mod verify;

pub use bipartite::{BipartiteGraph, GraphError, VertexId};
pub use canon::{canonical_colored_code, canonical_tree_code, colored_tree_iso, tree_iso, trees_isomorphic};
pub use colored::{Color, ColoredTree};
pub use ef::ef_equivalent;
pub use iso::{bipartite_iso, bipartite_isomorphic};
pub use structure::{PartialIso, RelStructure, Signature, StructureError};
pub use tree::{FinTree, NodeId, TreeError};
