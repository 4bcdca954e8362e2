//! Seeded generators and exhaustive enumerators for test corpora.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bipartite::BipartiteGraph;
use crate::canon::{canonical_colored_code, canonical_tree_code};
use crate::colored::{Color, ColoredTree};
use crate::structure::{RelStructure, Signature};
use crate::tree::FinTree;

pub type GenRng = ChaCha8Rng;

pub fn rng(seed: u64) -> GenRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random recursive tree with between 1 and `max_nodes` nodes.
pub fn random_tree<R: Rng>(rng: &mut R, max_nodes: usize) -> FinTree {
    let n = rng.gen_range(1..=max_nodes.max(1));
    random_tree_exact(rng, n, usize::MAX)
}

/// `n` nodes, each new node hung under a uniform node of depth below
/// `max_depth`.
pub fn random_tree_exact<R: Rng>(rng: &mut R, n: usize, max_depth: usize) -> FinTree {
    let mut t = FinTree::new();
    let mut open = vec![FinTree::ROOT];
    for _ in 1..n {
        if open.is_empty() {
            break;
        }
        let p = open[rng.gen_range(0..open.len())];
        let c = t.push_child(p);
        if t.depth(c) < max_depth {
            open.push(c);
        }
    }
    t
}

/// Tree of height at most `max_depth` with up to `max_nodes` nodes, each
/// node carrying a random subset of `1..=max_color`.
pub fn random_colored_tree<R: Rng>(rng: &mut R, max_nodes: usize, max_depth: usize, max_color: Color) -> ColoredTree {
    let n = rng.gen_range(1..=max_nodes.max(1));
    let t = random_tree_exact(rng, n, max_depth);
    let colors = t
        .nodes()
        .map(|_| (1..=max_color).filter(|_| rng.gen_bool(0.3)).collect())
        .collect();
    ColoredTree::new(t, colors)
}

/// One binary relation `E`.
pub fn digraph_signature() -> Signature {
    Signature::new(vec![("E".into(), 2)]).expect("one symbol")
}

/// Digraph on `1..=max_elems` elements, loops allowed, each arc with
/// probability 1/2.
pub fn random_digraph<R: Rng>(rng: &mut R, max_elems: u32) -> RelStructure {
    let n = rng.gen_range(1..=max_elems.max(1));
    random_digraph_exact(rng, n)
}

pub fn random_digraph_exact<R: Rng>(rng: &mut R, n: u32) -> RelStructure {
    let mut m = RelStructure::empty(n, digraph_signature());
    for a in 0..n {
        for b in 0..n {
            if rng.gen_bool(0.5) {
                m.insert_at(0, vec![a, b]).expect("in range");
            }
        }
    }
    m
}

/// Every digraph on `n` elements; `2^(n²)` of them.
pub fn all_digraphs(n: u32) -> impl Iterator<Item = RelStructure> {
    assert!(n <= 4, "2^(n^2) digraphs");
    let cells = n * n;
    (0..1u64 << cells).map(move |mask| {
        let mut m = RelStructure::empty(n, digraph_signature());
        for c in 0..cells {
            if mask >> c & 1 == 1 {
                m.insert_at(0, vec![c / n, c % n]).expect("in range");
            }
        }
        m
    })
}

/// Uniform random permutation of `0..n`.
pub fn random_permutation<R: Rng>(rng: &mut R, n: u32) -> Vec<u32> {
    let mut p: Vec<u32> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// `G(a, b, p)` with left `0..a` and right `a..a+b`.
pub fn random_bipartite<R: Rng>(rng: &mut R, a: u32, b: u32, p: f64) -> BipartiteGraph {
    let edges = (0..a)
        .flat_map(|u| (a..a + b).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    BipartiteGraph::new((0..a).collect(), (a..a + b).collect(), edges).expect("valid by construction")
}

/// One representative of every tree with at most `max_nodes` nodes, up to
/// isomorphism, in order of size.
pub fn all_trees(max_nodes: usize) -> Vec<FinTree> {
    let mut out = vec![FinTree::new()];
    let mut layer = vec![FinTree::new()];
    for _ in 1..max_nodes {
        let mut seen = BTreeMap::new();
        for t in &layer {
            for id in t.nodes() {
                let mut u = t.clone();
                u.push_child(id);
                seen.entry(canonical_tree_code(&u)).or_insert(u);
            }
        }
        layer = seen.into_values().collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Every colored tree with at most `max_nodes` nodes and colors from
/// `1..=max_color`, up to isomorphism.
pub fn all_colored_trees(max_nodes: usize, max_color: Color) -> Vec<ColoredTree> {
    let subsets: Vec<BTreeSet<Color>> = (0..1u32 << max_color)
        .map(|mask| (1..=max_color).filter(|c| mask >> (c - 1) & 1 == 1).collect())
        .collect();
    let mut seen = BTreeMap::new();
    for t in all_trees(max_nodes) {
        let n = t.len();
        let mut digits = vec![0usize; n];
        loop {
            let ct = ColoredTree::new(t.clone(), digits.iter().map(|&d| subsets[d].clone()).collect());
            seen.entry(canonical_colored_code(&ct)).or_insert(ct);
            let Some(pos) = digits.iter().position(|&d| d + 1 < subsets.len()) else {
                break;
            };
            digits[pos] += 1;
            digits[..pos].iter_mut().for_each(|d| *d = 0);
        }
    }
    seen.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_counts_match_known_values() {
        let counts: Vec<usize> = (1..=7).map(|n| all_trees(n).len()).collect();
        // rooted unlabelled trees: 1, 1, 2, 4, 9, 20, 48 of each size
        assert_eq!(counts, vec![1, 2, 4, 8, 17, 37, 85]);
    }

    #[test]
    fn colored_tree_counts() {
        // one node, subsets of {1}: two trees
        assert_eq!(all_colored_trees(1, 1).len(), 2);
        // two nodes: 2 * 2 colorings of the edge, plus the two lone roots
        assert_eq!(all_colored_trees(2, 1).len(), 6);
    }

    #[test]
    fn seeded_generators_are_deterministic() {
        let a = random_tree(&mut rng(7), 10);
        let b = random_tree(&mut rng(7), 10);
        assert_eq!(a, b);
        let ct = random_colored_tree(&mut rng(1), 20, 3, 8);
        assert!(ct.tree().height() <= 3);
        assert!(ct.max_color().is_none_or(|c| c <= 8));
        assert_eq!(all_digraphs(2).count(), 16);
        let g = random_bipartite(&mut rng(3), 3, 4, 0.5);
        assert_eq!(g.vertex_count(), 7);
    }
}
