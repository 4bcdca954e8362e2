//! AHU-style canonical forms for rooted trees, plain and colored.
//!
//! A node's code is `OPEN, colors.., child codes.., CLOSE` with the child codes
//! sorted lexicographically. Plain trees carry no colors, so their codes are
//! balanced parenthesis strings over `{1, 0}`.

use std::collections::HashMap;

use crate::colored::{Color, ColoredTree};
use crate::tree::{FinTree, NodeId};

const CLOSE: u64 = 0;
const OPEN: u64 = 1;
const COLOR_BASE: u64 = 2;

pub type CanonicalCode = Vec<u64>;

pub fn canonical_tree_code(t: &FinTree) -> CanonicalCode {
    code_with(t, |_| &[])
}

/// Canonical code of a colored tree; equal iff the colored trees are
/// isomorphic.
pub fn canonical_colored_code(ct: &ColoredTree) -> CanonicalCode {
    let colors: Vec<Vec<Color>> = ct
        .tree()
        .nodes()
        .map(|id| ct.colors(id).iter().copied().collect())
        .collect();
    code_with(ct.tree(), |id| &colors[id])
}

fn code_with<'a, F>(t: &FinTree, colors: F) -> CanonicalCode
where
    F: Fn(NodeId) -> &'a [Color],
{
    let mut codes: Vec<Option<CanonicalCode>> = vec![None; t.len()];
    for id in t.postorder() {
        let mut kids: Vec<CanonicalCode> = t
            .children(id)
            .iter()
            .map(|&c| codes[c].take().expect("child coded first"))
            .collect();
        kids.sort_unstable();
        let cols = colors(id);
        let mut code = Vec::with_capacity(2 + cols.len() + kids.iter().map(Vec::len).sum::<usize>());
        code.push(OPEN);
        code.extend(cols.iter().map(|&c| c as u64 + COLOR_BASE));
        for k in kids {
            code.extend(k);
        }
        code.push(CLOSE);
        codes[id] = Some(code);
    }
    codes[FinTree::ROOT].take().expect("root coded")
}

/// Hands out small integer ids to isomorphism classes of (colored) subtrees.
/// Ids are only comparable between trees classified by the same interner.
#[derive(Default)]
pub struct SubtreeClasses {
    ids: HashMap<(Vec<Color>, Vec<u32>), u32>,
}

impl SubtreeClasses {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn classify(&mut self, t: &FinTree) -> Vec<u32> {
        self.classify_with(t, |_| Vec::new())
    }

    pub fn classify_colored(&mut self, ct: &ColoredTree) -> Vec<u32> {
        self.classify_with(ct.tree(), |id| ct.colors(id).iter().copied().collect())
    }

    fn classify_with<F>(&mut self, t: &FinTree, colors: F) -> Vec<u32>
    where
        F: Fn(NodeId) -> Vec<Color>,
    {
        let mut class = vec![0u32; t.len()];
        for id in t.postorder() {
            let mut kids: Vec<u32> = t.children(id).iter().map(|&c| class[c]).collect();
            kids.sort_unstable();
            let next = self.ids.len() as u32;
            class[id] = *self.ids.entry((colors(id), kids)).or_insert(next);
        }
        class
    }
}

/// A color- and order-preserving bijection from `a` onto `b`, indexed by
/// node ids of `a`, if one exists.
pub fn colored_tree_iso(a: &ColoredTree, b: &ColoredTree) -> Option<Vec<NodeId>> {
    let mut classes = SubtreeClasses::new();
    let ca = classes.classify_colored(a);
    let cb = classes.classify_colored(b);
    match_classes(a.tree(), &ca, b.tree(), &cb)
}

/// Tree isomorphism for uncolored trees.
pub fn tree_iso(a: &FinTree, b: &FinTree) -> Option<Vec<NodeId>> {
    let mut classes = SubtreeClasses::new();
    let ca = classes.classify(a);
    let cb = classes.classify(b);
    match_classes(a, &ca, b, &cb)
}

pub fn trees_isomorphic(a: &FinTree, b: &FinTree) -> bool {
    a.len() == b.len() && tree_iso(a, b).is_some()
}

fn match_classes(a: &FinTree, ca: &[u32], b: &FinTree, cb: &[u32]) -> Option<Vec<NodeId>> {
    if a.len() != b.len() || ca[FinTree::ROOT] != cb[FinTree::ROOT] {
        return None;
    }
    let mut map = vec![usize::MAX; a.len()];
    let mut stack = vec![(FinTree::ROOT, FinTree::ROOT)];
    while let Some((x, y)) = stack.pop() {
        map[x] = y;
        let mut kx: Vec<NodeId> = a.children(x).to_vec();
        let mut ky: Vec<NodeId> = b.children(y).to_vec();
        kx.sort_by_key(|&c| ca[c]);
        ky.sort_by_key(|&c| cb[c]);
        // equal classes at (x, y) guarantee equal child class multisets
        stack.extend(kx.into_iter().zip(ky));
    }
    Some(map)
}
