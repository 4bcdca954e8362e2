use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::itree::uniform_depth;
use super::DeepTreeError;
use crate::tree::{Address, FinTree};

/// Finite stand-ins for "infinitely many" and "unbounded".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspThresholds {
    pub successor_min: usize,
    pub deep_min: usize,
}

impl CuspThresholds {
    pub fn new(successor_min: usize, deep_min: usize) -> Result<Self, DeepTreeError> {
        if successor_min == 0 || deep_min == 0 {
            return Err(DeepTreeError::BadParams("cusp thresholds must be positive".into()));
        }
        Ok(Self {
            successor_min,
            deep_min,
        })
    }
}

/// `node` is an `(m, n)`-cusp; always `m > n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CuspLabel {
    pub node: Address,
    pub m: u64,
    pub n: u64,
}

impl CuspLabel {
    pub fn new(node: Address, a: u64, b: u64) -> Result<Self, DeepTreeError> {
        if a == b {
            return Err(DeepTreeError::BadParams(format!(
                "cusp depths must differ, got {a} twice"
            )));
        }
        Ok(Self {
            node,
            m: a.max(b),
            n: a.min(b),
        })
    }

    pub fn diff(&self) -> u64 {
        self.m - self.n
    }
}

/// Same-type classes on successors: the set of out-degrees of internal
/// nodes in each subtree. Uniform-depth regimes cut from one branching
/// pattern share a class whatever their depth.
pub fn successor_classes(t: &FinTree) -> Vec<BTreeSet<usize>> {
    let mut out: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); t.len()];
    for id in t.postorder() {
        let kids = t.children(id);
        if kids.is_empty() {
            continue;
        }
        let mut s = BTreeSet::from([kids.len()]);
        for &c in kids {
            s.extend(out[c].iter().copied());
        }
        out[id] = s;
    }
    out
}

/// Labels every node with at least `successor_min` same-class successors
/// of uniform depth `m`, as many of uniform depth `n ≠ m`, and as many deep
/// successors. Nodes where more than one such pair qualifies are skipped.
/// Labels come out in address order.
pub fn detect_cusps(t: &FinTree, th: CuspThresholds) -> Vec<CuspLabel> {
    let u = uniform_depth(t);
    let h = t.heights();
    let classes = successor_classes(t);
    let mut out = Vec::new();
    for id in t.preorder() {
        let kids = t.children(id);
        if kids.len() < 2 * th.successor_min {
            continue;
        }
        let deep = kids.iter().filter(|&&c| u[c].is_none() && h[c] >= th.deep_min).count();
        if deep < th.successor_min {
            continue;
        }
        let mut regimes: BTreeMap<(&BTreeSet<usize>, usize), usize> = BTreeMap::new();
        for &c in kids {
            if let Some(d) = u[c] {
                *regimes.entry((&classes[c], d)).or_default() += 1;
            }
        }
        let mut per_class: BTreeMap<&BTreeSet<usize>, Vec<usize>> = BTreeMap::new();
        for ((cls, d), n) in regimes {
            if n >= th.successor_min {
                per_class.entry(cls).or_default().push(d);
            }
        }
        let pairs: Vec<&Vec<usize>> = per_class.values().filter(|ds| ds.len() >= 2).collect();
        if let [ds] = pairs.as_slice() {
            if let [n, m] = ds.as_slice() {
                out.push(CuspLabel::new(t.address(id), *m as u64, *n as u64).expect("distinct depths"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::tree_iso;
    use crate::deeptree::itree::{free_join, make_i_tree, planted};

    /// Non-uniform successor of height `h`: a path of length `h - 1` next to
    /// a leaf.
    fn deep(h: usize) -> FinTree {
        let mut t = FinTree::new();
        t.graft(FinTree::ROOT, &FinTree::path(h), 0).unwrap();
        t.push_child(FinTree::ROOT);
        t
    }

    fn decorated(i: usize, n: usize, m: usize, b: u32, deep_copies: usize) -> (FinTree, usize) {
        let j = free_join(&make_i_tree(i, n, b).unwrap(), &make_i_tree(i, m, b).unwrap()).unwrap();
        let at = j.stem_end();
        let mut t = j.into_tree();
        for _ in 0..deep_copies {
            let off = t.next_free_label(at);
            t.graft(at, &planted(&deep(6)), off).unwrap();
        }
        (t, at)
    }

    #[test]
    fn leaf_is_not_a_cusp() {
        assert!(detect_cusps(&FinTree::new(), CuspThresholds::new(1, 1).unwrap()).is_empty());
    }

    #[test]
    fn decorated_stem_end_is_a_cusp() {
        let th = CuspThresholds::new(2, 5).unwrap();
        let (t, at) = decorated(1, 3, 6, 2, 2);
        let labels = detect_cusps(&t, th);
        // depths measured from a successor of the stem end: k - i - 1
        assert_eq!(labels, vec![CuspLabel::new(t.address(at), 6 - 2, 3 - 2).unwrap()]);
        let (thin, _) = decorated(1, 3, 6, 2, 1);
        assert!(detect_cusps(&thin, th).is_empty());
        assert!(CuspThresholds::new(0, 1).is_err());
    }

    #[test]
    fn labels_follow_isomorphisms() {
        let th = CuspThresholds::new(2, 5).unwrap();
        let (t, _) = decorated(2, 4, 7, 3, 3);
        // same tree with the children of every node listed in reverse
        let mut rev = FinTree::new();
        let mut stack = vec![(FinTree::ROOT, FinTree::ROOT)];
        while let Some((src, dst)) = stack.pop() {
            let kids = t.children(src);
            for (k, &c) in kids.iter().rev().enumerate() {
                let nc = rev.add_child(dst, k as u32 * 7 + 1).unwrap();
                stack.push((c, nc));
            }
        }
        let iso = tree_iso(&t, &rev).unwrap();
        let mapped: BTreeSet<CuspLabel> = detect_cusps(&t, th)
            .into_iter()
            .map(|l| {
                let id = t.find(&l.node).unwrap();
                CuspLabel {
                    node: rev.address(iso[id]),
                    ..l
                }
            })
            .collect();
        let direct: BTreeSet<CuspLabel> = detect_cusps(&rev, th).into_iter().collect();
        assert!(!direct.is_empty());
        assert_eq!(mapped, direct);
    }
}
