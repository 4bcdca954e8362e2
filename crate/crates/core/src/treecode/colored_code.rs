use std::collections::{BTreeMap, BTreeSet};

use super::attach::attach_trees;
use super::pairing::PairingFn;
use super::{DepthHorizon, TreeCodeError, MARKER};
use crate::colored::{Color, ColoredTree};
use crate::tree::{format_address, FinTree, NodeId};

fn gadget_depths(ct: &ColoredTree, id: NodeId, phi: PairingFn) -> Result<Vec<(Color, u64)>, TreeCodeError> {
    let t = ct.tree();
    let n = t.depth(id) as u64;
    if ct.colors(id).contains(&MARKER) {
        return Err(TreeCodeError::ReservedColor {
            node: format_address(&t.address(id)),
            color: MARKER,
        });
    }
    Ok(std::iter::once(MARKER)
        .chain(ct.colors(id).iter().copied())
        .map(|j| (j, phi.apply(n, j as u64)))
        .collect())
}

/// Smallest horizon that fits every gadget of `ct`.
pub fn minimal_horizon(ct: &ColoredTree, phi: PairingFn) -> Result<DepthHorizon, TreeCodeError> {
    let mut deepest = 0;
    for id in ct.tree().nodes() {
        for (_, k) in gadget_depths(ct, id, phi)? {
            deepest = deepest.max(k);
        }
    }
    DepthHorizon::new(deepest as usize + 1)
}

/// Plain tree coding `ct`: every original node gets a spine of `D` nodes
/// and, for each color `j` plus the marker, a path of length `Φ(depth, j)`.
pub fn encode_colored_tree(ct: &ColoredTree, phi: PairingFn, horizon: DepthHorizon) -> Result<FinTree, TreeCodeError> {
    let d = horizon.get();
    let t = ct.tree();
    let mut gadgets = BTreeMap::new();
    for id in t.nodes() {
        let mut bouquet = FinTree::new();
        for (j, k) in gadget_depths(ct, id, phi)? {
            if k >= d as u64 {
                return Err(TreeCodeError::HorizonTooSmall {
                    node: format_address(&t.address(id)),
                    color: j,
                    depth: k,
                    horizon: d,
                });
            }
            let mut cur = bouquet.push_child(FinTree::ROOT);
            for _ in 1..k {
                cur = bouquet.push_child(cur);
            }
        }
        gadgets.insert(t.address(id), bouquet);
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

/// Length of the path hanging from `id`, or `None` if the subtree branches.
fn path_length(t: &FinTree, id: NodeId) -> Option<usize> {
    let mut len = 1;
    let mut cur = id;
    loop {
        match t.children(cur) {
            [] => return Some(len),
            [c] => {
                cur = *c;
                len += 1;
            }
            _ => return None,
        }
    }
}

/// Inverse of [`encode_colored_tree`] up to isomorphism.
pub fn decode_colored_tree(t: &FinTree, phi: PairingFn, horizon: DepthHorizon) -> Result<ColoredTree, TreeCodeError> {
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

    let mut out = ColoredTree::uncolored(FinTree::new());
    let mut stack = vec![(FinTree::ROOT, FinTree::ROOT, 0u64)];
    while let Some((src, dst, n)) = stack.pop() {
        let mut spines = 0;
        let mut colors = BTreeSet::new();
        for &c in t.children(src) {
            if original(c) {
                let nc = out.add_child(dst, t.label(c))?;
                stack.push((c, nc, n + 1));
                continue;
            }
            let len = path_length(t, c).ok_or_else(|| malformed(c, "gadget is not a path".into()))?;
            if len == d {
                spines += 1;
                continue;
            }
            let (level, j) = phi
                .invert(len as u64)
                .ok_or_else(|| malformed(c, format!("path of length {len} codes no color")))?;
            if level != n {
                return Err(malformed(c, format!("gadget codes level {level} at depth {n}")));
            }
            let j = Color::try_from(j).map_err(|_| malformed(c, format!("color {j} out of range")))?;
            colors.insert(j);
        }
        if spines != 1 {
            return Err(malformed(src, format!("{spines} spines")));
        }
        if !colors.remove(&MARKER) {
            return Err(malformed(src, "marker gadget missing".into()));
        }
        out.set_colors(dst, colors);
    }
    Ok(out)
}
