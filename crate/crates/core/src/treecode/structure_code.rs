use std::collections::BTreeSet;

use super::pairing::cantor_pair;
use super::TreeCodeError;
use crate::colored::{Color, ColoredTree};
use crate::structure::{RelStructure, Signature};
use crate::tree::{format_address, FinTree};

/// An atomic formula in the variables `x_0 .. x_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    Eq(usize, usize),
    Rel(usize, Vec<usize>),
}

impl Atom {
    fn holds(&self, m: &RelStructure, tuple: &[u32]) -> bool {
        match self {
            Atom::Eq(a, b) => tuple[*a] == tuple[*b],
            Atom::Rel(idx, vars) => {
                let t: Vec<u32> = vars.iter().map(|&v| tuple[v]).collect();
                m.holds(*idx, &t)
            }
        }
    }
}

/// Atoms in `n` variables: equalities `x_a = x_b` with `a < b` first, then
/// every relation in signature order applied to each variable tuple in
/// lexicographic order.
pub fn atoms(sig: &Signature, n: usize) -> Vec<Atom> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            out.push(Atom::Eq(a, b));
        }
    }
    for (idx, (_, arity)) in sig.symbols().iter().enumerate() {
        let mut vars = vec![0usize; *arity];
        loop {
            if *arity > 0 && n == 0 {
                break;
            }
            out.push(Atom::Rel(idx, vars.clone()));
            if !advance(&mut vars, n) {
                break;
            }
        }
    }
    out
}

fn advance(vars: &mut [usize], n: usize) -> bool {
    for v in vars.iter_mut().rev() {
        *v += 1;
        if *v < n {
            return true;
        }
        *v = 0;
    }
    false
}

/// Color of the `i`-th atom at level `n`; never 0.
pub fn atom_color(n: usize, i: usize) -> Color {
    let c = cantor_pair(n as u64, i as u64) + 1;
    Color::try_from(c).expect("atom color fits in u32")
}

/// The tree of all tuples of length at most `d` over the universe, each
/// tuple colored by the atoms it satisfies.
pub fn encode_structure(m: &RelStructure, d: usize) -> Result<ColoredTree, TreeCodeError> {
    if d == 0 {
        return Err(TreeCodeError::ZeroDepth);
    }
    let level_atoms: Vec<Vec<Atom>> = (0..=d).map(|n| atoms(m.signature(), n)).collect();
    let mut tree = FinTree::new();
    let mut tuples: Vec<Vec<u32>> = vec![Vec::new()];
    let mut frontier = vec![FinTree::ROOT];
    for _ in 0..d {
        let mut next = Vec::new();
        for &id in &frontier {
            for x in 0..m.universe() {
                let c = tree.add_child(id, x)?;
                let mut t = tuples[id].clone();
                t.push(x);
                debug_assert_eq!(c, tuples.len());
                tuples.push(t);
                next.push(c);
            }
        }
        frontier = next;
    }
    let colors = tuples
        .iter()
        .map(|t| {
            level_atoms[t.len()]
                .iter()
                .enumerate()
                .filter(|(_, a)| a.holds(m, t))
                .map(|(i, _)| atom_color(t.len(), i))
                .collect()
        })
        .collect();
    Ok(ColoredTree::new(tree, colors))
}

/// Reads the structure off a tuple tree and checks that every node carries
/// exactly the colors the structure dictates.
pub fn decode_structure(ct: &ColoredTree, signature: &Signature) -> Result<RelStructure, TreeCodeError> {
    let t = ct.tree();
    let u = t.children(FinTree::ROOT).len() as u32;
    let d = t.height();
    check_full(t, u, d)?;
    if u > 0 {
        if let Some((name, arity)) = signature.symbols().iter().find(|(_, a)| *a > d) {
            return Err(TreeCodeError::InsufficientDepth {
                name: name.clone(),
                arity: *arity,
                depth: d,
            });
        }
    }

    let mut m = RelStructure::empty(u, signature.clone());
    for (idx, (_, arity)) in signature.symbols().iter().enumerate() {
        if u == 0 && *arity > 0 {
            continue;
        }
        let i = atoms(signature, *arity)
            .iter()
            .position(|a| matches!(a, Atom::Rel(j, vars) if *j == idx && vars.iter().enumerate().all(|(k, &v)| k == v)))
            .expect("identity atom exists");
        let color = atom_color(*arity, i);
        for id in t.nodes().filter(|&id| t.depth(id) == *arity) {
            if ct.colors(id).contains(&color) {
                m.insert_at(idx, t.address(id)).expect("tuple fits the universe");
            }
        }
    }

    let again = encode_structure(&m, d.max(1))?;
    for id in t.nodes() {
        let addr = t.address(id);
        let other = again.tree().find(&addr).expect("same tuple tree");
        if ct.colors(id) != again.colors(other) {
            return Err(TreeCodeError::InconsistentColors {
                node: format_address(&addr),
            });
        }
    }
    Ok(m)
}

/// Every node above depth `d` has children labelled exactly `0..u`.
fn check_full(t: &FinTree, u: u32, d: usize) -> Result<(), TreeCodeError> {
    let want: BTreeSet<u32> = (0..u).collect();
    for id in t.nodes() {
        let labels: BTreeSet<u32> = t.children(id).iter().map(|&c| t.label(c)).collect();
        let ok = if t.depth(id) < d {
            labels == want
        } else {
            labels.is_empty()
        };
        if !ok {
            return Err(TreeCodeError::NotFullTree(format!(
                "node {:?} has children {labels:?}",
                format_address(&t.address(id))
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order2() -> RelStructure {
        let sig = Signature::new(vec![("lt".into(), 2)]).unwrap();
        let mut m = RelStructure::empty(2, sig);
        m.insert("lt", vec![0, 1]).unwrap();
        m
    }

    #[test]
    fn atom_enumeration_order() {
        let sig = Signature::new(vec![("E".into(), 2)]).unwrap();
        let a = atoms(&sig, 2);
        assert_eq!(a[0], Atom::Eq(0, 1));
        assert_eq!(a[1], Atom::Rel(0, vec![0, 0]));
        assert_eq!(a[2], Atom::Rel(0, vec![0, 1]));
        assert_eq!(a.len(), 5);
        assert!(atoms(&sig, 0).is_empty());
    }

    #[test]
    fn empty_signature_pair() {
        let m = RelStructure::empty(2, Signature::empty());
        let ct = encode_structure(&m, 1).unwrap();
        assert_eq!(ct.tree().len(), 3);
        assert!(ct.tree().nodes().all(|id| ct.colors(id).is_empty()));
    }

    #[test]
    fn unary_predicate_on_a_point() {
        let sig = Signature::new(vec![("P".into(), 1)]).unwrap();
        let mut m = RelStructure::empty(1, sig);
        m.insert("P", vec![0]).unwrap();
        let ct = encode_structure(&m, 1).unwrap();
        let child = ct.tree().find(&[0]).unwrap();
        assert_eq!(ct.colors(child), &BTreeSet::from([atom_color(1, 0)]));
        assert!(ct.colors(FinTree::ROOT).is_empty());
    }

    #[test]
    fn order_colors_and_roundtrip() {
        let m = order2();
        let ct = encode_structure(&m, 2).unwrap();
        let lt01 = atom_color(2, 2);
        let t = ct.tree();
        assert!(ct.colors(t.find(&[0, 1]).unwrap()).contains(&lt01));
        assert!(!ct.colors(t.find(&[1, 0]).unwrap()).contains(&lt01));
        assert_eq!(decode_structure(&ct, m.signature()).unwrap(), m);
    }

    #[test]
    fn colorless_tree_over_empty_signature() {
        let ct = ColoredTree::uncolored(FinTree::from_addresses([vec![], vec![0], vec![1]]).unwrap());
        let m = decode_structure(&ct, &Signature::empty()).unwrap();
        assert_eq!(m.universe(), 2);
    }

    #[test]
    fn contradicting_colors_are_rejected() {
        let m = order2();
        let mut ct = encode_structure(&m, 2).unwrap();
        // x0 = x1 claimed on a tuple of distinct elements
        let id = ct.tree().find(&[0, 1]).unwrap();
        ct.add_color(id, atom_color(2, 0));
        assert!(matches!(
            decode_structure(&ct, m.signature()),
            Err(TreeCodeError::InconsistentColors { .. })
        ));
    }

    #[test]
    fn shallow_trees_cannot_carry_binary_relations() {
        let ct = encode_structure(&order2(), 1).unwrap();
        assert!(matches!(
            decode_structure(&ct, order2().signature()),
            Err(TreeCodeError::InsufficientDepth { .. })
        ));
    }
}
