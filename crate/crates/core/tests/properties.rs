use proptest::prelude::*;

use borelcoder_core::canon::canonical_tree_code;
use borelcoder_core::graphcode::{build_code, decode_tree_from_code, Variant};
use borelcoder_core::packing::{e_star, graph_stats, pair_bound_f};
use borelcoder_core::treecode::{decode_colored_tree, encode_colored_tree, minimal_horizon, PairingFn};
use borelcoder_core::{colored_tree_iso, trees_isomorphic, BipartiteGraph, ColoredTree, FinTree};

/// Node `i + 1` hangs below node `parents[i] mod (i + 1)`.
fn tree_from_parents(parents: &[usize]) -> FinTree {
    let mut t = FinTree::new();
    for (i, &p) in parents.iter().enumerate() {
        t.push_child(p % (i + 1));
    }
    t
}

fn trees(max_nodes: usize) -> impl Strategy<Value = FinTree> {
    prop::collection::vec(any::<usize>(), 0..max_nodes).prop_map(|p| tree_from_parents(&p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph_code_roundtrip(t in trees(9), m in 1usize..=2) {
        let code = build_code(&t, m, Variant::Paired).unwrap();
        let back = decode_tree_from_code(&code.graph, m).unwrap();
        prop_assert!(trees_isomorphic(&back, &t));
    }

    #[test]
    fn relabelled_trees_share_codes(parents in prop::collection::vec(any::<usize>(), 0..8), seed in any::<u64>()) {
        let t = tree_from_parents(&parents);
        // same shape, children pushed in a different order
        let mut order: Vec<usize> = (0..parents.len()).collect();
        order.sort_by_key(|&i| (t.depth(i + 1), (i as u64 + 1).wrapping_mul(seed | 1) % 1009));
        let mut u = FinTree::new();
        let mut image = vec![0; t.len()];
        for i in order {
            image[i + 1] = u.push_child(image[t.parent(i + 1).unwrap()]);
        }
        prop_assert_eq!(canonical_tree_code(&t), canonical_tree_code(&u));
    }

    #[test]
    fn colored_roundtrip(parents in prop::collection::vec(any::<usize>(), 0..6),
                         colors in prop::collection::vec((any::<usize>(), 1u32..6), 0..8)) {
        let t = tree_from_parents(&parents);
        let n = t.len();
        let mut ct = ColoredTree::uncolored(t);
        for (node, c) in colors {
            ct.add_color(node % n, c);
        }
        let phi = PairingFn::default();
        let d = minimal_horizon(&ct, phi).unwrap();
        let back = decode_colored_tree(&encode_colored_tree(&ct, phi, d).unwrap(), phi, d).unwrap();
        prop_assert!(colored_tree_iso(&back, &ct).is_some());
    }

    #[test]
    fn e_star_is_the_balanced_product(c in 0u64..100_000) {
        let best = (0..=c).map(|a| a * (c - a)).max().unwrap_or(0);
        prop_assert_eq!(e_star(c), best);
    }

    #[test]
    fn complete_balanced_pairs_attain_f(c in 0u32..12, d in 0u32..12) {
        let half = |v: u32| BipartiteGraph::complete(v.div_ceil(2), v / 2);
        let s = graph_stats(&half(c + 1).disjoint_union(&half(d + 1)));
        prop_assert_eq!(s.e, pair_bound_f(c.into(), d.into()));
        prop_assert_eq!(s.k, u64::from(c + d));
    }
}
