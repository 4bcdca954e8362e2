//! Finite prefix-closed trees of integer sequences.
//!
//! A [`FinTree`] is stored as an arena: every node knows its parent, its last
//! address entry and its children sorted by that entry. The full address of a
//! node is recovered by walking to the root, so deep paths cost O(depth) per
//! node instead of O(depth^2) for the whole tree.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub type NodeId = usize;

/// Address of a node: the sequence of child labels from the root.
pub type Address = Vec<u32>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("node set does not contain the root")]
    MissingRoot,
    #[error("address {0} has no parent in the node set")]
    NotPrefixClosed(String),
    #[error("node {parent} already has a child labelled {label}")]
    DuplicateChild { parent: String, label: u32 },
    #[error("malformed node address {0:?}")]
    BadAddress(String),
}

#[derive(Clone)]
pub struct FinTree {
    parent: Vec<Option<NodeId>>,
    label: Vec<u32>,
    depth: Vec<usize>,
    children: Vec<Vec<NodeId>>,
}

impl FinTree {
    pub const ROOT: NodeId = 0;

    /// The one-node tree.
    pub fn new() -> Self {
        Self {
            parent: vec![None],
            label: vec![0],
            depth: vec![0],
            children: vec![Vec::new()],
        }
    }

    /// A path with `len` edges below the root: `<>, <0>, <0,0>, ...`.
    pub fn path(len: usize) -> Self {
        let mut t = Self::new();
        let mut cur = Self::ROOT;
        for _ in 0..len {
            cur = t.push_child(cur);
        }
        t
    }

    pub fn from_addresses<I>(addresses: I) -> Result<Self, TreeError>
    where
        I: IntoIterator<Item = Address>,
    {
        let set: BTreeSet<Address> = addresses.into_iter().collect();
        if !set.contains(&Vec::new()) {
            return Err(TreeError::MissingRoot);
        }
        let mut t = Self::new();
        // Lexicographic order visits every parent before its children.
        let mut ids = std::collections::HashMap::with_capacity(set.len());
        ids.insert(Vec::new(), Self::ROOT);
        for addr in set.iter().skip(1) {
            let (last, prefix) = addr.split_last().expect("non-root address");
            let parent = *ids
                .get(prefix)
                .ok_or_else(|| TreeError::NotPrefixClosed(format_address(addr)))?;
            let id = t.add_child(parent, *last)?;
            ids.insert(addr.clone(), id);
        }
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn nodes(&self) -> std::ops::Range<NodeId> {
        0..self.len()
    }

    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        self.parent[id]
    }

    pub fn children(&self, id: NodeId) -> &[NodeId] {
        &self.children[id]
    }

    pub fn depth(&self, id: NodeId) -> usize {
        self.depth[id]
    }

    pub fn label(&self, id: NodeId) -> u32 {
        self.label[id]
    }

    pub fn is_leaf(&self, id: NodeId) -> bool {
        self.children[id].is_empty()
    }

    pub fn child_with_label(&self, id: NodeId, label: u32) -> Option<NodeId> {
        let kids = &self.children[id];
        kids.binary_search_by_key(&label, |&c| self.label[c])
            .ok()
            .map(|pos| kids[pos])
    }

    /// Adds a child with an explicit label.
    pub fn add_child(&mut self, parent: NodeId, label: u32) -> Result<NodeId, TreeError> {
        let pos = match self.children[parent].binary_search_by_key(&label, |&c| self.label[c]) {
            Ok(_) => {
                return Err(TreeError::DuplicateChild {
                    parent: format_address(&self.address(parent)),
                    label,
                })
            }
            Err(pos) => pos,
        };
        let id = self.len();
        self.parent.push(Some(parent));
        self.label.push(label);
        self.depth.push(self.depth[parent] + 1);
        self.children.push(Vec::new());
        self.children[parent].insert(pos, id);
        Ok(id)
    }

    /// Adds a child labelled one past the current largest child label.
    pub fn push_child(&mut self, parent: NodeId) -> NodeId {
        let label = self.next_free_label(parent);
        self.add_child(parent, label).expect("fresh label")
    }

    pub fn next_free_label(&self, id: NodeId) -> u32 {
        self.children[id].last().map(|&c| self.label[c] + 1).unwrap_or(0)
    }

    pub fn address(&self, id: NodeId) -> Address {
        let mut addr = Vec::with_capacity(self.depth[id]);
        let mut cur = id;
        while let Some(p) = self.parent[cur] {
            addr.push(self.label[cur]);
            cur = p;
        }
        addr.reverse();
        addr
    }

    pub fn find(&self, address: &[u32]) -> Option<NodeId> {
        address
            .iter()
            .try_fold(Self::ROOT, |cur, &l| self.child_with_label(cur, l))
    }

    /// Node ids in lexicographic (pre-order) address order.
    pub fn preorder(&self) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![Self::ROOT];
        while let Some(id) = stack.pop() {
            out.push(id);
            stack.extend(self.children[id].iter().rev());
        }
        out
    }

    /// Node ids ordered so that every child precedes its parent.
    pub fn postorder(&self) -> Vec<NodeId> {
        let mut order = self.preorder();
        order.reverse();
        order
    }

    pub fn addresses(&self) -> Vec<Address> {
        self.preorder().into_iter().map(|id| self.address(id)).collect()
    }

    /// Largest distance from each node down to a leaf of its subtree.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0usize; self.len()];
        for id in self.postorder() {
            h[id] = self.children[id].iter().map(|&c| h[c] + 1).max().unwrap_or(0);
        }
        h
    }

    pub fn height(&self) -> usize {
        self.heights()[Self::ROOT]
    }

    /// Copy of the subtree rooted at `id`, re-rooted at the empty address.
    pub fn subtree(&self, id: NodeId) -> FinTree {
        let mut out = FinTree::new();
        let mut stack = vec![(id, FinTree::ROOT)];
        while let Some((src, dst)) = stack.pop() {
            for &c in &self.children[src] {
                let nc = out.add_child(dst, self.label[c]).expect("labels unique");
                stack.push((c, nc));
            }
        }
        out
    }

    /// Copies `other` below `at`, relabelling the children of `other`'s
    /// root by adding `offset`. Returns the ids of the grafted children.
    pub fn graft(&mut self, at: NodeId, other: &FinTree, offset: u32) -> Result<Vec<NodeId>, TreeError> {
        let mut heads = Vec::with_capacity(other.children(Self::ROOT).len());
        let mut stack = Vec::new();
        for &c in other.children(Self::ROOT) {
            let nc = self.add_child(at, other.label[c] + offset)?;
            heads.push(nc);
            stack.push((c, nc));
        }
        while let Some((src, dst)) = stack.pop() {
            for &c in &other.children[src] {
                let nc = self.add_child(dst, other.label[c])?;
                stack.push((c, nc));
            }
        }
        Ok(heads)
    }
}

impl Default for FinTree {
    fn default() -> Self {
        Self::new()
    }
}

/// Two trees are equal when they have the same set of addresses.
impl PartialEq for FinTree {
    fn eq(&self, other: &Self) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let mut stack = vec![(Self::ROOT, Self::ROOT)];
        while let Some((a, b)) = stack.pop() {
            let (ka, kb) = (&self.children[a], &other.children[b]);
            if ka.len() != kb.len() {
                return false;
            }
            for (&ca, &cb) in ka.iter().zip(kb) {
                if self.label[ca] != other.label[cb] {
                    return false;
                }
                stack.push((ca, cb));
            }
        }
        true
    }
}

impl Eq for FinTree {}

impl fmt::Debug for FinTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.addresses().iter().map(|a| format_address(a)))
            .finish()
    }
}

/// Dotted rendering of an address; the root is the empty string.
pub fn format_address(addr: &[u32]) -> String {
    addr.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(".")
}

pub fn parse_address(s: &str) -> Result<Address, TreeError> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split('.')
        .map(|p| p.parse::<u32>().map_err(|_| TreeError::BadAddress(s.to_string())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_node_tree() {
        let t = FinTree::new();
        assert_eq!(t.len(), 1);
        assert_eq!(t.addresses(), vec![Vec::<u32>::new()]);
        assert_eq!(t.height(), 0);
    }

    #[test]
    fn from_addresses_requires_prefix_closure() {
        let err = FinTree::from_addresses(vec![vec![], vec![0, 1]]).unwrap_err();
        assert_eq!(err, TreeError::NotPrefixClosed("0.1".into()));
        assert_eq!(
            FinTree::from_addresses(vec![vec![3]]).unwrap_err(),
            TreeError::MissingRoot
        );
    }

    #[test]
    fn addresses_roundtrip_in_lexicographic_order() {
        let addrs = vec![vec![], vec![0], vec![0, 2], vec![0, 5], vec![7]];
        let t = FinTree::from_addresses(addrs.clone()).unwrap();
        assert_eq!(t.addresses(), addrs);
        assert_eq!(t.find(&[0, 5]).map(|id| t.depth(id)), Some(2));
        assert!(t.find(&[1]).is_none());
    }

    #[test]
    fn equality_ignores_insertion_order() {
        let mut a = FinTree::new();
        a.add_child(FinTree::ROOT, 4).unwrap();
        a.add_child(FinTree::ROOT, 1).unwrap();
        let b = FinTree::from_addresses(vec![vec![], vec![1], vec![4]]).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, FinTree::path(2));
    }

    #[test]
    fn heights_and_subtrees() {
        let t = FinTree::from_addresses(vec![vec![], vec![0], vec![0, 0], vec![1]]).unwrap();
        let h = t.heights();
        assert_eq!(h[FinTree::ROOT], 2);
        let sub = t.subtree(t.find(&[0]).unwrap());
        assert_eq!(sub, FinTree::path(1));
    }

    #[test]
    fn graft_offsets_head_labels() {
        let mut t = FinTree::path(1);
        let heads = t.graft(FinTree::ROOT, &FinTree::path(2), 5).unwrap();
        assert_eq!(heads.len(), 1);
        assert!(t.find(&[5, 0]).is_some());
        assert_eq!(t.len(), 4);
    }

    #[test]
    fn address_strings() {
        assert_eq!(format_address(&[]), "");
        assert_eq!(format_address(&[1, 20, 3]), "1.20.3");
        assert_eq!(parse_address("1.20.3").unwrap(), vec![1, 20, 3]);
        assert_eq!(parse_address("").unwrap(), Vec::<u32>::new());
        assert!(parse_address("1..2").is_err());
    }
}
