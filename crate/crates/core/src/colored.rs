//! Trees whose nodes carry finite sets of integer colors.

use std::collections::BTreeSet;

use crate::tree::{FinTree, NodeId};

pub type Color = u32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredTree {
    tree: FinTree,
    colors: Vec<BTreeSet<Color>>,
}

impl ColoredTree {
    /// A colorless copy of `tree`.
    pub fn uncolored(tree: FinTree) -> Self {
        let colors = vec![BTreeSet::new(); tree.len()];
        Self { tree, colors }
    }

    pub fn new(tree: FinTree, colors: Vec<BTreeSet<Color>>) -> Self {
        assert_eq!(tree.len(), colors.len(), "one color set per node");
        Self { tree, colors }
    }

    pub fn tree(&self) -> &FinTree {
        &self.tree
    }

    pub fn colors(&self, id: NodeId) -> &BTreeSet<Color> {
        &self.colors[id]
    }

    pub fn set_colors(&mut self, id: NodeId, colors: BTreeSet<Color>) {
        self.colors[id] = colors;
    }

    pub fn add_color(&mut self, id: NodeId, color: Color) {
        self.colors[id].insert(color);
    }

    pub fn add_child(&mut self, parent: NodeId, label: u32) -> Result<NodeId, crate::tree::TreeError> {
        let id = self.tree.add_child(parent, label)?;
        self.colors.push(BTreeSet::new());
        Ok(id)
    }

    pub fn max_color(&self) -> Option<Color> {
        self.colors.iter().filter_map(|c| c.last().copied()).max()
    }

    pub fn into_parts(self) -> (FinTree, Vec<BTreeSet<Color>>) {
        (self.tree, self.colors)
    }
}
