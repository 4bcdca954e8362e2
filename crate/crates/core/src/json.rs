//! JSON interchange for trees, colored trees, bipartite graphs and
//! relational structures.
//!
//! ```text
//! tree          {"nodes": [[], [0], [0, 1]]}
//! colored tree  {"nodes": [...], "colors": {"": [1], "0.1": [2, 3]}}
//! graph         {"left": [0, 1], "right": [2], "edges": [[0, 2]]}
//! structure     {"universe": 3, "relations": {"E": {"arity": 2, "tuples": [[0, 1]]}}}
//! ```

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bipartite::{BipartiteGraph, GraphError, VertexId};
use crate::colored::ColoredTree;
use crate::structure::{RelStructure, Signature, StructureError};
use crate::tree::{format_address, parse_address, FinTree, TreeError};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error(transparent)]
    Syntax(#[from] serde_json::Error),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("color entry for {0:?}, which is not a node of the tree")]
    ColorOffTree(String),
    #[error("block lists vertex {0}, which is not in the graph")]
    UnknownVertex(VertexId),
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct TreeJson {
    pub nodes: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ColoredTreeJson {
    pub nodes: Vec<Vec<u32>>,
    #[serde(default)]
    pub colors: BTreeMap<String, Vec<u32>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct GraphJson {
    pub left: Vec<VertexId>,
    pub right: Vec<VertexId>,
    pub edges: Vec<[VertexId; 2]>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct RelationJson {
    pub arity: usize,
    pub tuples: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct StructureJson {
    pub universe: u32,
    #[serde(default)]
    pub relations: BTreeMap<String, RelationJson>,
}

impl From<&FinTree> for TreeJson {
    fn from(t: &FinTree) -> Self {
        TreeJson { nodes: t.addresses() }
    }
}

impl TryFrom<TreeJson> for FinTree {
    type Error = JsonError;

    fn try_from(j: TreeJson) -> Result<Self, JsonError> {
        Ok(FinTree::from_addresses(j.nodes)?)
    }
}

impl From<&ColoredTree> for ColoredTreeJson {
    fn from(ct: &ColoredTree) -> Self {
        let t = ct.tree();
        let colors = t
            .preorder()
            .into_iter()
            .filter(|&id| !ct.colors(id).is_empty())
            .map(|id| (format_address(&t.address(id)), ct.colors(id).iter().copied().collect()))
            .collect();
        ColoredTreeJson {
            nodes: t.addresses(),
            colors,
        }
    }
}

impl TryFrom<ColoredTreeJson> for ColoredTree {
    type Error = JsonError;

    fn try_from(j: ColoredTreeJson) -> Result<Self, JsonError> {
        let tree = FinTree::from_addresses(j.nodes)?;
        let mut ct = ColoredTree::uncolored(tree);
        for (key, cols) in j.colors {
            let addr = parse_address(&key)?;
            let id = ct.tree().find(&addr).ok_or(JsonError::ColorOffTree(key))?;
            ct.set_colors(id, cols.into_iter().collect::<BTreeSet<_>>());
        }
        Ok(ct)
    }
}

impl From<&BipartiteGraph> for GraphJson {
    fn from(g: &BipartiteGraph) -> Self {
        GraphJson {
            left: g.left().to_vec(),
            right: g.right().to_vec(),
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<GraphJson> for BipartiteGraph {
    type Error = JsonError;

    fn try_from(j: GraphJson) -> Result<Self, JsonError> {
        let edges = j.edges.into_iter().map(|[u, v]| (u, v)).collect();
        Ok(BipartiteGraph::new(j.left, j.right, edges)?)
    }
}

impl From<&RelStructure> for StructureJson {
    fn from(m: &RelStructure) -> Self {
        let relations = m
            .signature()
            .symbols()
            .iter()
            .enumerate()
            .map(|(idx, (name, arity))| {
                (
                    name.clone(),
                    RelationJson {
                        arity: *arity,
                        tuples: m.relation(idx).iter().cloned().collect(),
                    },
                )
            })
            .collect();
        StructureJson {
            universe: m.universe(),
            relations,
        }
    }
}

impl TryFrom<StructureJson> for RelStructure {
    type Error = JsonError;

    /// Relation symbols are ordered by name.
    fn try_from(j: StructureJson) -> Result<Self, JsonError> {
        let sig = Signature::new(j.relations.iter().map(|(name, r)| (name.clone(), r.arity)).collect())?;
        let mut m = RelStructure::empty(j.universe, sig);
        for (idx, (_, rel)) in j.relations.into_iter().enumerate() {
            for t in rel.tuples {
                m.insert_at(idx, t)?;
            }
        }
        Ok(m)
    }
}

pub fn tree_from_str(s: &str) -> Result<FinTree, JsonError> {
    serde_json::from_str::<TreeJson>(s)?.try_into()
}

pub fn colored_tree_from_str(s: &str) -> Result<ColoredTree, JsonError> {
    serde_json::from_str::<ColoredTreeJson>(s)?.try_into()
}

pub fn graph_from_str(s: &str) -> Result<BipartiteGraph, JsonError> {
    serde_json::from_str::<GraphJson>(s)?.try_into()
}

pub fn structure_from_str(s: &str) -> Result<RelStructure, JsonError> {
    serde_json::from_str::<StructureJson>(s)?.try_into()
}
