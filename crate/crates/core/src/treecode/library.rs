use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::attach::attach_trees;
use super::{DepthHorizon, TreeCodeError, MARKER};
use crate::canon::{canonical_tree_code, CanonicalCode};
use crate::colored::{Color, ColoredTree};
use crate::tree::{format_address, FinTree, NodeId};

/// Pairwise non-isomorphic trees `A_0, A_1, ...`, each of height at least 2.
/// `A_0` codes the marker.
#[derive(Clone, Debug)]
pub struct GadgetLibrary {
    trees: Vec<FinTree>,
    heights: Vec<usize>,
    index: HashMap<CanonicalCode, usize>,
}

impl GadgetLibrary {
    pub fn new(trees: Vec<FinTree>) -> Result<Self, TreeCodeError> {
        if trees.is_empty() {
            return Err(TreeCodeError::Library("no gadgets".into()));
        }
        let mut index = HashMap::with_capacity(trees.len());
        let mut heights = Vec::with_capacity(trees.len());
        for (i, t) in trees.iter().enumerate() {
            let h = t.height();
            if h < 2 {
                return Err(TreeCodeError::Library(format!("gadget {i} has height {h} < 2")));
            }
            if let Some(j) = index.insert(canonical_tree_code(t), i) {
                return Err(TreeCodeError::Library(format!("gadgets {j} and {i} are isomorphic")));
            }
            heights.push(h);
        }
        Ok(Self { trees, heights, index })
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&FinTree> {
        self.trees.get(i)
    }

    pub fn trees(&self) -> &[FinTree] {
        &self.trees
    }

    pub fn index_of(&self, t: &FinTree) -> Option<usize> {
        self.index.get(&canonical_tree_code(t)).copied()
    }

    /// Smallest horizon under which `ct` can be encoded with this library.
    pub fn minimal_horizon(&self, ct: &ColoredTree) -> Result<DepthHorizon, TreeCodeError> {
        let mut need = 0;
        for id in ct.tree().nodes() {
            for j in self.used(ct, id)? {
                need = need.max(self.heights[j as usize] + 2);
            }
        }
        DepthHorizon::new(need)
    }

    fn used(&self, ct: &ColoredTree, id: NodeId) -> Result<Vec<Color>, TreeCodeError> {
        let node = || format_address(&ct.tree().address(id));
        let mut out = vec![MARKER];
        for &j in ct.colors(id) {
            if j == MARKER {
                return Err(TreeCodeError::ReservedColor { node: node(), color: j });
            }
            if j as usize >= self.len() {
                return Err(TreeCodeError::ColorOutsideLibrary {
                    node: node(),
                    color: j,
                    size: self.len(),
                });
            }
            out.push(j);
        }
        Ok(out)
    }
}

/// `count` trees, `A_i` a path of length `i + 2`.
pub fn make_special_family(count: usize) -> Result<GadgetLibrary, TreeCodeError> {
    GadgetLibrary::new((0..count).map(|i| FinTree::path(i + 2)).collect())
}

/// Like the depth-coded encoding, but a node with colors `u` gets one gadget
/// whose root has a single leaf child and a copy of `A_j` for each
/// `j ∈ u ∪ {0}`.
pub fn encode_colored_tree_with_library(
    ct: &ColoredTree,
    lib: &GadgetLibrary,
    horizon: DepthHorizon,
) -> Result<FinTree, TreeCodeError> {
    let d = horizon.get();
    let t = ct.tree();
    let mut gadgets = BTreeMap::new();
    for id in t.nodes() {
        let mut s_u = FinTree::new();
        s_u.add_child(FinTree::ROOT, 0)?;
        for j in lib.used(ct, id)? {
            let need = lib.heights[j as usize] + 1;
            if need >= d {
                return Err(TreeCodeError::HorizonTooSmall {
                    node: format_address(&t.address(id)),
                    color: j,
                    depth: need as u64,
                    horizon: d,
                });
            }
            let head = s_u.add_child(FinTree::ROOT, j + 1)?;
            s_u.graft(head, &lib.trees[j as usize], 0)?;
        }
        let mut wrapper = FinTree::new();
        let head = wrapper.push_child(FinTree::ROOT);
        wrapper.graft(head, &s_u, 0)?;
        gadgets.insert(t.address(id), wrapper);
    }
    let mut spined = t.clone();
    for id in t.nodes() {
        let mut cur = spined.push_child(id);
        for _ in 1..d {
            cur = spined.push_child(cur);
        }
    }
    attach_trees(&spined, &gadgets)
}

pub fn decode_colored_tree_with_library(
    t: &FinTree,
    lib: &GadgetLibrary,
    horizon: DepthHorizon,
) -> Result<ColoredTree, TreeCodeError> {
    let d = horizon.get();
    let heights = t.heights();
    let original = |id: NodeId| heights[id] >= d;
    let malformed = |id: NodeId, reason: String| TreeCodeError::Malformed {
        node: format_address(&t.address(id)),
        reason,
    };
    if !original(FinTree::ROOT) {
        return Err(malformed(FinTree::ROOT, "root has no spine".into()));
    }
    let is_path = |mut id: NodeId| loop {
        match t.children(id) {
            [] => return true,
            [c] => id = *c,
            _ => return false,
        }
    };

    let mut out = ColoredTree::uncolored(FinTree::new());
    let mut stack = vec![(FinTree::ROOT, FinTree::ROOT)];
    while let Some((src, dst)) = stack.pop() {
        let (mut spines, mut gadgets) = (0, 0);
        let mut colors = BTreeSet::new();
        for &c in t.children(src) {
            if original(c) {
                let nc = out.add_child(dst, t.label(c))?;
                stack.push((c, nc));
                continue;
            }
            if heights[c] + 1 == d && is_path(c) {
                spines += 1;
                continue;
            }
            gadgets += 1;
            let mut leaves = 0;
            for &h in t.children(c) {
                if t.is_leaf(h) {
                    leaves += 1;
                    continue;
                }
                let j = lib
                    .index_of(&t.subtree(h))
                    .ok_or_else(|| malformed(h, "subtree matches no library gadget".into()))?;
                colors.insert(j as Color);
            }
            if leaves != 1 {
                return Err(malformed(c, format!("gadget root has {leaves} leaf children")));
            }
        }
        if spines != 1 || gadgets != 1 {
            return Err(malformed(src, format!("{spines} spines and {gadgets} gadgets")));
        }
        if !colors.remove(&MARKER) {
            return Err(malformed(src, "marker gadget missing".into()));
        }
        out.set_colors(dst, colors);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::colored_tree_iso;

    #[test]
    fn family_is_distinct_and_deep() {
        let lib = make_special_family(3).unwrap();
        assert_eq!(lib.len(), 3);
        let codes: BTreeSet<_> = lib.trees().iter().map(canonical_tree_code).collect();
        assert_eq!(codes.len(), 3);
        assert!(lib.trees().iter().all(|t| t.height() >= 2));
        assert_eq!(make_special_family(1).unwrap().len(), 1);
    }

    #[test]
    fn library_rejects_duplicates_and_shallow_trees() {
        assert!(GadgetLibrary::new(vec![FinTree::path(2), FinTree::path(2)]).is_err());
        assert!(GadgetLibrary::new(vec![FinTree::path(1)]).is_err());
    }

    #[test]
    fn many_colors_roundtrip() {
        let lib = make_special_family(40).unwrap();
        let mut ct = ColoredTree::uncolored(FinTree::from_addresses([vec![], vec![0], vec![1]]).unwrap());
        for c in [1, 17, 39] {
            ct.add_color(0, c);
        }
        ct.add_color(2, 5);
        let d = lib.minimal_horizon(&ct).unwrap();
        let t = encode_colored_tree_with_library(&ct, &lib, d).unwrap();
        let back = decode_colored_tree_with_library(&t, &lib, d).unwrap();
        assert!(colored_tree_iso(&ct, &back).is_some());
    }

    #[test]
    fn colors_beyond_the_library() {
        let lib = make_special_family(2).unwrap();
        let mut ct = ColoredTree::uncolored(FinTree::new());
        ct.add_color(0, 2);
        assert!(matches!(
            lib.minimal_horizon(&ct),
            Err(TreeCodeError::ColorOutsideLibrary { .. })
        ));
    }
}
