//! Slow, obviously-correct reference implementations.

use std::collections::BTreeSet;

use crate::bipartite::{BipartiteGraph, VertexId};
use crate::graphcode::{PreGraphElem, Variant, SLOTS};
use crate::structure::RelStructure;
use crate::tree::FinTree;

/// Tries every bijection of the universe.
pub fn brute_force_structure_iso(a: &RelStructure, b: &RelStructure) -> bool {
    if a.universe() != b.universe() || a.signature() != b.signature() {
        return false;
    }
    let mut perm: Vec<u32> = (0..a.universe()).collect();
    permutations(&mut perm, 0, &mut |p| a.permuted(p) == *b)
}

fn permutations(p: &mut Vec<u32>, k: usize, f: &mut dyn FnMut(&[u32]) -> bool) -> bool {
    if k == p.len() {
        return f(p);
    }
    for i in k..p.len() {
        p.swap(k, i);
        if permutations(p, k + 1, f) {
            return true;
        }
        p.swap(k, i);
    }
    false
}

/// Parenthesised string with children sorted; equal iff isomorphic.
pub fn tree_string(t: &FinTree) -> String {
    fn go(t: &FinTree, id: usize) -> String {
        let mut kids: Vec<String> = t.children(id).iter().map(|&c| go(t, c)).collect();
        kids.sort();
        format!("({})", kids.concat())
    }
    go(t, FinTree::ROOT)
}

/// Number of gluing classes, from the generating pairs by a boolean
/// transitive closure over all `|T|·m·14` elements.
pub fn warshall_class_count(t: &FinTree, m: usize, variant: Variant) -> usize {
    let n = t.len() * m * SLOTS;
    let mut r = vec![vec![false; n]; n];
    for (x, row) in r.iter_mut().enumerate() {
        row[x] = true;
    }
    let mut glue = |a: PreGraphElem, b: PreGraphElem| {
        let (x, y) = (a.index(m), b.index(m));
        r[x][y] = true;
        r[y][x] = true;
    };
    for nu in t.nodes().skip(1) {
        let eta = t.parent(nu).expect("non-root");
        for i in 0..m {
            let pairs: Vec<(usize, usize)> = match (t.depth(eta), variant) {
                (0, _) => vec![(0, 0), (1, 1)],
                (_, Variant::Paper) => (10..14).map(|s| (s, s)).collect(),
                (_, Variant::Paired) => (6..10).map(|s| (s, s + 4)).collect(),
            };
            for (s, s2) in pairs {
                glue(PreGraphElem::new(eta, i, s), PreGraphElem::new(nu, i, s2));
            }
        }
    }
    for k in 0..n {
        let through_k = r[k].clone();
        for row in r.iter_mut().filter(|row| row[k]) {
            for (cell, &reach) in row.iter_mut().zip(&through_k) {
                *cell |= reach;
            }
        }
    }
    (0..n).filter(|&x| (0..x).all(|y| !r[x][y])).count()
}

/// Every `a × b` complete bipartite subgraph, by checking each `a`-subset
/// of the left side directly.
pub fn naive_complete_subgraphs(g: &BipartiteGraph, a: usize, b: usize) -> BTreeSet<BTreeSet<VertexId>> {
    let mut out = BTreeSet::new();
    for ls in subsets(g.left(), a) {
        let common: Vec<VertexId> = g
            .right()
            .iter()
            .copied()
            .filter(|&v| ls.iter().all(|&u| g.has_edge(u, v)))
            .collect();
        for rs in subsets(&common, b) {
            out.insert(ls.iter().chain(&rs).copied().collect());
        }
    }
    out
}

fn subsets(items: &[VertexId], k: usize) -> Vec<Vec<VertexId>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(items: &[VertexId], k: usize, start: usize, cur: &mut Vec<VertexId>, out: &mut Vec<Vec<VertexId>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    go(items, k, 0, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::trees_isomorphic;
    use crate::gen::{all_digraphs, all_trees, random_permutation, rng};
    use crate::graphcode::{build_equiv, enumerate_complete_bipartite_subgraphs};

    #[test]
    fn permutation_iso() {
        let mut r = rng(5);
        for m in all_digraphs(3).step_by(37) {
            let p = random_permutation(&mut r, 3);
            assert!(brute_force_structure_iso(&m, &m.permuted(&p)));
        }
        let empty = all_digraphs(2).next().unwrap();
        let full = all_digraphs(2).last().unwrap();
        assert!(!brute_force_structure_iso(&empty, &full));
    }

    #[test]
    fn tree_strings_agree_with_canonical_codes() {
        let trees = all_trees(6);
        for (i, a) in trees.iter().enumerate() {
            for b in &trees[i..] {
                assert_eq!(tree_string(a) == tree_string(b), trees_isomorphic(a, b));
            }
        }
    }

    #[test]
    fn class_counts_agree() {
        for t in all_trees(4) {
            for m in 1..=2 {
                for v in [Variant::Paper, Variant::Paired] {
                    assert_eq!(warshall_class_count(&t, m, v), build_equiv(&t, m, v).unwrap().len());
                }
            }
        }
    }

    #[test]
    fn naive_subgraphs_agree_with_the_enumerator() {
        let g = crate::gen::random_bipartite(&mut rng(11), 6, 6, 0.6);
        for (a, b) in [(1, 1), (2, 2), (2, 3), (3, 2)] {
            let fast: BTreeSet<BTreeSet<VertexId>> = enumerate_complete_bipartite_subgraphs(&g, a, b)
                .unwrap()
                .into_iter()
                .collect();
            assert_eq!(fast, naive_complete_subgraphs(&g, a, b), "{a}x{b}");
        }
    }
}
