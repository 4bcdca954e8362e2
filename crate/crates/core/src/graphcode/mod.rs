//! Bipartite graph codes of rooted trees.
//!
//! Every node `η` of a tree `T` contributes `14m` pre-graph elements
//! `(η, i, n)` with `i < m` and `n < 14`; odd `n` sits on the left, even `n`
//! on the right, and two elements of the same node are adjacent iff their
//! slots have odd sum. Gluing elements across parent/child pairs and taking
//! the quotient yields a bipartite graph in which each node owns a complete
//! `7m × 7m` block `B(η)`, and the way blocks overlap spells out the tree.
//!
//! Two gluing rules are provided, see [`Variant`]. Decoding works on the
//! bare graph and never looks at vertex ids or the block map.

mod biclique;
mod blocks;
mod build;
mod decode;
mod facts;
mod multiscale;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bipartite::{BipartiteGraph, VertexId};
use crate::json::{GraphJson, JsonError};
use crate::tree::{format_address, parse_address, Address};

pub use biclique::{enumerate_complete_bipartite_subgraphs, maximal_bicliques, Biclique};
pub use blocks::{block_structure, blocks_of_graph, intersection_pattern, BlockStructure};
pub use build::{build_code, build_equiv, build_pre_graph, Partition, PreGraphElem, SLOTS};
pub use decode::decode_tree_from_code;
pub use facts::audit_block_facts;
pub use multiscale::{build_multiscale, decode_multiscale, ScaleSequence, MIN_SCALE_RATIO};

/// Which elements of a parent and a child are glued together.
///
/// * `Paper`: the root shares slots 0 and 1 with each child; every deeper
///   node shares slots 10..=13 with each child, slot for slot. Gluing is
///   transitive, so whole subtrees below depth 1 collapse onto common
///   classes.
/// * `Paired`: root links as above; a non-root node's slots 6..=9 are glued
///   to its children's slots 10..=13. Each class then spans a single
///   parent/child family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Paper,
    #[default]
    Paired,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Paper => "paper",
            Variant::Paired => "paired",
        })
    }
}

impl FromStr for Variant {
    type Err = CodeError;

    fn from_str(s: &str) -> Result<Self, CodeError> {
        match s {
            "paper" => Ok(Variant::Paper),
            "paired" => Ok(Variant::Paired),
            other => Err(CodeError::UnknownVariant(other.to_string())),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("block parameter m must be at least 1")]
    ZeroM,
    #[error("unknown variant {0:?} (expected paper or paired)")]
    UnknownVariant(String),
    #[error("class {0} mixes left and right slots")]
    ParityBroken(VertexId),
    #[error("block of node {node:?} is {left}x{right}, expected {expected}x{expected} complete")]
    BlockShape {
        node: String,
        left: usize,
        right: usize,
        expected: usize,
    },
    #[error("biclique sizes must be positive, got {0}x{1}")]
    BadBicliqueSize(usize, usize),
    #[error("found {found} blocks, expected {expected}")]
    BlockCount { expected: usize, found: usize },
    #[error("graph has no {0}x{0} complete bipartite subgraph")]
    NoBlocks(usize),
    #[error("maximal complete bipartite subgraph of size {left}x{right} exceeds the block size {expected}")]
    OversizedBiclique { left: usize, right: usize, expected: usize },
    #[error("vertex {0} lies in no block")]
    UncoveredVertex(VertexId),
    #[error("edge ({0}, {1}) lies in no block")]
    UncoveredEdge(VertexId, VertexId),
    #[error("blocks {a} and {b} meet in {left}x{right}, which is neither m x m nor 2m x 2m")]
    BadIntersection {
        a: usize,
        b: usize,
        left: usize,
        right: usize,
    },
    #[error("root group is malformed: {0}")]
    RootGroup(String),
    #[error("block {block} could continue through {options} unused families")]
    Ambiguous { block: usize, options: usize },
    #[error("block {0} is reached twice while rebuilding the tree")]
    Revisited(usize),
    #[error("{0} blocks are not reachable from the root")]
    Unreached(usize),
    #[error("vertex degrees {0} are not a positive multiple of 7")]
    BadValence(usize),
    #[error("levels decode to non-isomorphic trees (m = {0} and m = {1})")]
    LevelsDisagree(usize, usize),
    #[error("inferred scales {found:?} do not match the expected {expected:?}")]
    ScaleMismatch { expected: Vec<usize>, found: Vec<usize> },
    #[error("bad scale sequence: {0}")]
    BadScales(String),
    #[error("graph is empty")]
    EmptyGraph,
}

/// A quotient graph `G^[m]_T` with the block of every tree node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphCode {
    pub graph: BipartiteGraph,
    /// Vertex ids of `B(η)`, keyed by the address of `η`.
    pub block_map: BTreeMap<Address, Vec<VertexId>>,
    pub m: usize,
    pub variant: Variant,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct GraphCodeJson {
    #[serde(flatten)]
    pub graph: GraphJson,
    pub m: usize,
    pub variant: Variant,
    pub blocks: BTreeMap<String, Vec<VertexId>>,
}

impl From<&GraphCode> for GraphCodeJson {
    fn from(c: &GraphCode) -> Self {
        GraphCodeJson {
            graph: GraphJson::from(&c.graph),
            m: c.m,
            variant: c.variant,
            blocks: c
                .block_map
                .iter()
                .map(|(a, b)| (format_address(a), b.clone()))
                .collect(),
        }
    }
}

impl TryFrom<GraphCodeJson> for GraphCode {
    type Error = JsonError;

    fn try_from(j: GraphCodeJson) -> Result<Self, JsonError> {
        let graph = BipartiteGraph::try_from(j.graph)?;
        let mut block_map = BTreeMap::new();
        for (key, ids) in j.blocks {
            block_map.insert(parse_address(&key)?, ids);
        }
        for ids in block_map.values() {
            let known = |v: &VertexId| graph.is_left(*v) || graph.right().binary_search(v).is_ok();
            if let Some(&v) = ids.iter().find(|v| !known(v)) {
                return Err(JsonError::UnknownVertex(v));
            }
        }
        Ok(GraphCode {
            graph,
            block_map,
            m: j.m,
            variant: j.variant,
        })
    }
}
