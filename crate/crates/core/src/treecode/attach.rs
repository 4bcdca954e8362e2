use std::collections::BTreeMap;

use super::TreeCodeError;
use crate::tree::{format_address, Address, FinTree};

/// Hangs a copy of `gadgets[η]` below `η` for every listed node, the
/// gadget's root identified with `η`. Gadget heads are relabelled past
/// `η`'s existing children, so gadget nodes never sit below a node of `t`
/// other than their attachment point.
pub fn attach_trees(t: &FinTree, gadgets: &BTreeMap<Address, FinTree>) -> Result<FinTree, TreeCodeError> {
    let mut out = t.clone();
    for (addr, g) in gadgets {
        let at = t
            .find(addr)
            .ok_or_else(|| TreeCodeError::UnknownNode(format_address(addr)))?;
        let offset = out.next_free_label(at);
        out.graft(at, g, offset)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nothing_to_attach() {
        let t = FinTree::path(2);
        assert_eq!(attach_trees(&t, &BTreeMap::new()).unwrap(), t);
    }

    #[test]
    fn path_at_a_lone_root() {
        let out = attach_trees(&FinTree::new(), &BTreeMap::from([(vec![], FinTree::path(1))])).unwrap();
        assert_eq!(out, FinTree::path(1));
    }

    #[test]
    fn sizes_add_up() {
        let t = FinTree::from_addresses([vec![], vec![0], vec![3]]).unwrap();
        let gadgets = BTreeMap::from([
            (vec![], FinTree::path(2)),
            (
                vec![3],
                FinTree::from_addresses([vec![], vec![0], vec![1], vec![1, 5]]).unwrap(),
            ),
        ]);
        let out = attach_trees(&t, &gadgets).unwrap();
        assert_eq!(out.len(), 3 + 2 + 3);
        assert!(out.find(&[4, 0]).is_some());
        assert!(out.find(&[3, 1, 5]).is_some());
    }

    #[test]
    fn unknown_attachment_point() {
        let err = attach_trees(&FinTree::new(), &BTreeMap::from([(vec![2], FinTree::new())])).unwrap_err();
        assert_eq!(err, TreeCodeError::UnknownNode("2".into()));
    }
}
