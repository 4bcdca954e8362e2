use super::DeepTreeError;
use crate::tree::{format_address, FinTree, NodeId};

/// A tree whose nodes of depth at most `stem_length` all lie on the stem
/// `<>, <0>, ..., <0^i>`: every address is 0 at each position below `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ITree {
    stem_length: usize,
    tree: FinTree,
}

impl ITree {
    /// Validates the stem shape; the stem end `0^i` must exist.
    pub fn new(stem_length: usize, tree: FinTree) -> Result<Self, DeepTreeError> {
        if tree.find(&vec![0; stem_length]).is_none() {
            return Err(DeepTreeError::NotITree(format!(
                "stem of length {stem_length} is missing"
            )));
        }
        for id in tree.nodes().skip(1) {
            if tree.depth(id) <= stem_length && tree.label(id) != 0 {
                return Err(DeepTreeError::NotITree(format!(
                    "node {} leaves the stem",
                    format_address(&tree.address(id))
                )));
            }
        }
        Ok(Self { stem_length, tree })
    }

    pub fn stem_length(&self) -> usize {
        self.stem_length
    }

    pub fn tree(&self) -> &FinTree {
        &self.tree
    }

    pub fn into_tree(self) -> FinTree {
        self.tree
    }

    pub fn stem_end(&self) -> NodeId {
        self.tree
            .find(&vec![0; self.stem_length])
            .expect("checked on construction")
    }
}

/// Largest tree `make_i_tree` will build.
const MAX_NODES: u128 = 1 << 24;

/// Sequences of length at most `k` that are 0 below position `i`, with
/// entries beyond the stem drawn from `0..width`.
pub fn make_i_tree(i: usize, k: usize, width: u32) -> Result<ITree, DeepTreeError> {
    if i > k {
        return Err(DeepTreeError::BadParams(format!("stem {i} longer than depth {k}")));
    }
    if width == 0 && k > i {
        return Err(DeepTreeError::BadParams("width must be positive".into()));
    }
    let above: u128 = (0..=(k - i) as u32).map(|e| (width as u128).saturating_pow(e)).sum();
    if i as u128 + above > MAX_NODES {
        return Err(DeepTreeError::BadParams(format!(
            "I_{i}({k}) at width {width} is too large"
        )));
    }
    let mut t = FinTree::path(i);
    let mut frontier = vec![t.find(&vec![0; i]).expect("path")];
    for _ in i..k {
        let mut next = Vec::with_capacity(frontier.len() * width as usize);
        for &id in &frontier {
            for x in 0..width {
                next.push(t.add_child(id, x)?);
            }
        }
        frontier = next;
    }
    ITree::new(i, t)
}

/// Glues `a` and `b` along their stems, nodes `<>` through `<0^i>`
/// identified; everything above `b`'s stem end is relabelled past `a`'s.
pub fn free_join(a: &ITree, b: &ITree) -> Result<ITree, DeepTreeError> {
    if a.stem_length != b.stem_length {
        return Err(DeepTreeError::StemMismatch {
            left: a.stem_length,
            right: b.stem_length,
        });
    }
    let mut out = a.tree.clone();
    let at = a.stem_end();
    let above = b.tree.subtree(b.stem_end());
    let offset = out.next_free_label(at);
    out.graft(at, &above, offset)?;
    ITree::new(a.stem_length, out)
}

/// A new root with `t` as its only successor.
pub(crate) fn planted(t: &FinTree) -> FinTree {
    let mut out = FinTree::new();
    let head = out.push_child(FinTree::ROOT);
    out.graft(head, t, 0).expect("fresh subtree");
    out
}

/// `Some(k)` when every leaf below the node sits exactly `k` levels down.
pub fn uniform_depth(t: &FinTree) -> Vec<Option<usize>> {
    let mut u = vec![None; t.len()];
    for id in t.postorder() {
        let kids = t.children(id);
        u[id] = match kids.first() {
            None => Some(0),
            Some(&c0) => {
                let d = u[c0];
                if d.is_some() && kids.iter().all(|&c| u[c] == d) {
                    d.map(|d| d + 1)
                } else {
                    None
                }
            }
        };
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::{canonical_tree_code, trees_isomorphic};
    use std::collections::BTreeMap;

    #[test]
    fn trivial_shapes() {
        assert_eq!(make_i_tree(0, 0, 3).unwrap().tree().len(), 1);
        let t = make_i_tree(0, 1, 2).unwrap();
        assert_eq!(t.tree().addresses(), vec![vec![], vec![0], vec![1]]);
    }

    #[test]
    fn node_count_matches_the_defining_set() {
        let t = make_i_tree(1, 2, 2).unwrap();
        // all of {0,1}^{<=2} with first entry 0
        let mut direct = 0;
        for len in 0..=2u32 {
            for code in 0..(1u32 << len) {
                let seq: Vec<u32> = (0..len).map(|p| code >> p & 1).collect();
                if seq.first().is_none_or(|&x| x == 0) {
                    direct += 1;
                }
            }
        }
        assert_eq!(t.tree().len(), direct);
    }

    #[test]
    fn validator_rejects_off_stem_nodes() {
        let t = FinTree::from_addresses([vec![], vec![1]]).unwrap();
        assert!(ITree::new(1, t.clone()).is_err());
        assert!(ITree::new(0, t).is_ok());
        assert!(ITree::new(2, FinTree::path(1)).is_err());
        assert!(make_i_tree(3, 2, 2).is_err());
    }

    #[test]
    fn self_join_count() {
        let x = make_i_tree(2, 4, 2).unwrap();
        let j = free_join(&x, &x).unwrap();
        assert_eq!(j.tree().len(), 2 * x.tree().len() - 3);
    }

    #[test]
    fn bare_stem_is_neutral_and_join_commutes() {
        let x = make_i_tree(1, 3, 3).unwrap();
        let stem = make_i_tree(1, 1, 3).unwrap();
        assert!(trees_isomorphic(free_join(&x, &stem).unwrap().tree(), x.tree()));
        assert!(trees_isomorphic(free_join(&stem, &x).unwrap().tree(), x.tree()));
        let y = make_i_tree(1, 2, 2).unwrap();
        assert_eq!(
            canonical_tree_code(free_join(&x, &y).unwrap().tree()),
            canonical_tree_code(free_join(&y, &x).unwrap().tree())
        );
        assert!(free_join(&x, &make_i_tree(2, 2, 1).unwrap()).is_err());
    }

    #[test]
    fn two_depth_regimes_above_one_stem() {
        let j = free_join(&make_i_tree(2, 3, 2).unwrap(), &make_i_tree(2, 5, 2).unwrap()).unwrap();
        let mut leaves = BTreeMap::new();
        for id in j.tree().nodes().filter(|&id| j.tree().is_leaf(id)) {
            *leaves.entry(j.tree().depth(id)).or_insert(0) += 1;
        }
        assert_eq!(leaves, BTreeMap::from([(3, 2), (5, 8)]));
        let u = uniform_depth(j.tree());
        assert_eq!(u[j.stem_end()], None);
        assert_eq!(u[FinTree::ROOT], None);
    }

    #[test]
    fn uniform_depth_of_full_trees() {
        let t = make_i_tree(0, 3, 2).unwrap();
        let u = uniform_depth(t.tree());
        for id in t.tree().nodes() {
            assert_eq!(u[id], Some(3 - t.tree().depth(id)));
        }
    }
}
