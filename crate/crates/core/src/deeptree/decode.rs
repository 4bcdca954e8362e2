use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::cusp::CuspLabel;
use super::diffs::{DiffAssignment, Sign};
use super::itree::planted;
use super::DeepTreeError;
use crate::tree::{format_address, Address, FinTree};

/// A node `(η, δ)` of the pair tree; `lg η = lg δ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct I0Node {
    pub eta: Address,
    pub delta: Address,
}

/// Packs `(η, δ)` into one address, entry `j` being `η_j · width + δ_j`.
pub fn i0_address(node: &I0Node, width: u32) -> Result<Address, DeepTreeError> {
    if node.eta.len() != node.delta.len() {
        return Err(DeepTreeError::BadParams("eta and delta lengths differ".into()));
    }
    node.eta
        .iter()
        .zip(&node.delta)
        .map(|(&e, &d)| {
            if d >= width {
                return None;
            }
            e.checked_mul(width)?.checked_add(d)
        })
        .collect::<Option<_>>()
        .ok_or_else(|| DeepTreeError::BadParams(format!("({:?}, {:?}) does not pack", node.eta, node.delta)))
}

pub fn decode_i0_address(addr: &[u32], width: u32) -> I0Node {
    I0Node {
        eta: addr.iter().map(|x| x / width).collect(),
        delta: addr.iter().map(|x| x % width).collect(),
    }
}

/// The coded nodes: members of `t` and, below each member short of the
/// bound, its missing children up to one past its largest child label.
fn coded_etas(t: &FinTree, bound: usize) -> Result<BTreeMap<Address, Sign>, DeepTreeError> {
    let height = t.height();
    if height > bound {
        return Err(DeepTreeError::TreeTooDeep { height, bound });
    }
    let mut out = BTreeMap::new();
    for id in t.nodes() {
        let eta = t.address(id);
        if eta.len() < bound {
            let top = t.children(id).last().map_or(0, |&c| t.label(c) + 1);
            for x in 0..=top {
                if t.child_with_label(id, x).is_none() {
                    let mut e = eta.clone();
                    e.push(x);
                    out.insert(e, Sign::Minus);
                }
            }
        }
        out.insert(eta, Sign::Plus);
    }
    Ok(out)
}

fn deltas(len: usize, width: u32) -> impl Iterator<Item = Address> {
    let total = (width as u64).pow(len as u32);
    (0..total).map(move |mut j| {
        let mut d = vec![0; len];
        for slot in d.iter_mut().rev() {
            *slot = (j % width as u64) as u32;
            j /= width as u64;
        }
        d
    })
}

/// Cusp labels coding membership in `t`: `(η, δ)` carries `δ⁺`'s pair when
/// `η ∈ t` and `δ⁻`'s otherwise, for every `δ` of matching length.
pub fn membership_labels(t: &FinTree, a: &DiffAssignment) -> Result<Vec<CuspLabel>, DeepTreeError> {
    let mut out = Vec::new();
    for (eta, sign) in coded_etas(t, a.depth_bound())? {
        for delta in deltas(eta.len(), a.width()) {
            let (n, m) = a.quad(&delta).expect("assignment covers the bound").pair(sign);
            let node = i0_address(
                &I0Node {
                    eta: eta.clone(),
                    delta,
                },
                a.width(),
            )?;
            out.push(CuspLabel::new(node, m, n)?);
        }
    }
    out.sort();
    Ok(out)
}

/// Recovers the member tree from cusp labels. Only differences matter, so
/// labels measured from any fixed offset decode the same way.
pub fn cusp_decode(labels: &[CuspLabel], a: &DiffAssignment) -> Result<FinTree, DeepTreeError> {
    let mut signs: BTreeMap<Address, Sign> = BTreeMap::new();
    for l in labels {
        let node = format_address(&l.node);
        let (delta, sign) = a.lookup(l.diff()).ok_or(DeepTreeError::UnknownDifference {
            node: node.clone(),
            diff: l.diff(),
        })?;
        let at = decode_i0_address(&l.node, a.width());
        if &at.delta != delta {
            return Err(DeepTreeError::DeltaMismatch {
                node,
                expected: format_address(&at.delta),
                found: format_address(delta),
            });
        }
        if *signs.entry(at.eta.clone()).or_insert(sign) != sign {
            return Err(DeepTreeError::Inconsistent {
                eta: format_address(&at.eta),
            });
        }
    }
    let members: BTreeSet<Address> = signs
        .into_iter()
        .filter(|(_, s)| *s == Sign::Plus)
        .map(|(e, _)| e)
        .collect();
    if members.is_empty() {
        return Err(DeepTreeError::NoMembers);
    }
    for eta in &members {
        let parent_ok = eta.split_last().is_none_or(|(_, p)| members.contains(p));
        if !parent_ok || (!members.contains(&Vec::new())) {
            return Err(DeepTreeError::NotPrefixClosed {
                node: format_address(eta),
            });
        }
    }
    Ok(FinTree::from_addresses(members)?)
}

/// Shape of the decorations hung on every pair node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildOptions {
    /// Successors per uniform-depth regime, and deep stand-ins per node.
    pub copies: usize,
    /// Height of each deep stand-in; at least 2 so it is not uniform.
    pub deep_height: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            copies: 2,
            deep_height: 3,
        }
    }
}

/// The finite pair tree coding `t`. A pair node at depth `i` labelled
/// `(m, n)` gets `copies` path successors of uniform depth `m − i − 1`, as
/// many of depth `n − i − 1`, and `copies` non-uniform successors of height
/// `deep_height`, so it reads back as an `(m − i − 1, n − i − 1)`-cusp.
pub fn build_cusp_tree(t: &FinTree, a: &DiffAssignment, opts: BuildOptions) -> Result<FinTree, DeepTreeError> {
    if opts.copies == 0 || opts.deep_height < 2 {
        return Err(DeepTreeError::BadParams("need copies >= 1 and deep_height >= 2".into()));
    }
    let labels = membership_labels(t, a)?;
    let mut out = FinTree::from_addresses(labels.iter().map(|l| l.node.clone()))?;
    let mut stand_in = FinTree::path(opts.deep_height);
    stand_in.push_child(FinTree::ROOT);
    let stand_in = planted(&stand_in);
    for l in &labels {
        let at = out.find(&l.node).expect("skeleton node");
        let i = l.node.len() as u64;
        if l.n < i + 2 {
            return Err(DeepTreeError::BadParams(format!(
                "depth {} too small for a cusp at level {i}",
                l.n
            )));
        }
        for depth in [l.n, l.m] {
            let regime = planted(&FinTree::path((depth - i - 1) as usize));
            for _ in 0..opts.copies {
                let off = out.next_free_label(at);
                out.graft(at, &regime, off)?;
            }
        }
        for _ in 0..opts.copies {
            let off = out.next_free_label(at);
            out.graft(at, &stand_in, off)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deeptree::cusp::{detect_cusps, CuspThresholds};
    use crate::deeptree::diffs::assign_diffs;

    fn three() -> FinTree {
        FinTree::from_addresses([vec![], vec![0], vec![1]]).unwrap()
    }

    #[test]
    fn pair_addresses_roundtrip() {
        let n = I0Node {
            eta: vec![3, 0, 2],
            delta: vec![1, 1, 0],
        };
        let addr = i0_address(&n, 2).unwrap();
        assert_eq!(addr, vec![7, 1, 4]);
        assert_eq!(decode_i0_address(&addr, 2), n);
    }

    #[test]
    fn labels_roundtrip() {
        let a = assign_diffs(2, 2).unwrap();
        for t in [FinTree::new(), three(), FinTree::path(2)] {
            let labels = membership_labels(&t, &a).unwrap();
            assert_eq!(cusp_decode(&labels, &a).unwrap(), t);
        }
        assert!(matches!(
            membership_labels(&FinTree::path(3), &a),
            Err(DeepTreeError::TreeTooDeep { .. })
        ));
    }

    #[test]
    fn all_minus_boundary() {
        let a = assign_diffs(1, 1).unwrap();
        let minus = |eta: Vec<u32>| {
            let q = a.quad(&vec![0; eta.len()]).unwrap();
            CuspLabel::new(eta, q.minus.1, q.minus.0).unwrap()
        };
        let plus_root = {
            let q = a.quad(&[]).unwrap();
            CuspLabel::new(vec![], q.plus.1, q.plus.0).unwrap()
        };
        assert_eq!(cusp_decode(&[plus_root, minus(vec![0])], &a).unwrap(), FinTree::new());
        assert_eq!(
            cusp_decode(&[minus(vec![]), minus(vec![0])], &a),
            Err(DeepTreeError::NoMembers)
        );
        let q = a.quad(&[0]).unwrap();
        let orphan = CuspLabel::new(vec![0], q.plus.1, q.plus.0).unwrap();
        assert!(matches!(
            cusp_decode(&[minus(vec![]), orphan], &a),
            Err(DeepTreeError::NotPrefixClosed { .. })
        ));
    }

    #[test]
    fn corrupted_difference_is_rejected() {
        let a = assign_diffs(2, 2).unwrap();
        let mut labels = membership_labels(&three(), &a).unwrap();
        let used: BTreeSet<u64> = a.differences().into_iter().collect();
        let fresh = (1..).find(|d| !used.contains(d)).unwrap();
        labels[1].m = labels[1].n + fresh;
        assert!(matches!(
            cusp_decode(&labels, &a),
            Err(DeepTreeError::UnknownDifference { .. })
        ));
        // a real difference from the wrong delta
        let mut labels = membership_labels(&three(), &a).unwrap();
        let root_diff = a.quad(&[]).unwrap().plus;
        labels[1].n = 0;
        labels[1].m = root_diff.1 - root_diff.0;
        assert!(matches!(
            cusp_decode(&labels, &a),
            Err(DeepTreeError::DeltaMismatch { .. })
        ));
    }

    #[test]
    fn built_tree_decodes_through_detection() {
        let a = assign_diffs(2, 1).unwrap();
        let t = three();
        let opts = BuildOptions::default();
        let big = build_cusp_tree(&t, &a, opts).unwrap();
        let th = CuspThresholds::new(opts.copies, opts.deep_height).unwrap();
        let found = detect_cusps(&big, th);
        assert_eq!(found.len(), membership_labels(&t, &a).unwrap().len());
        assert_eq!(cusp_decode(&found, &a).unwrap(), t);
    }
}
