use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::biclique::{maximal_bicliques, Biclique};
use super::{CodeError, GraphCode};
use crate::bipartite::{BipartiteGraph, VertexId};
use crate::tree::Address;

/// The `7m × 7m` complete bipartite subgraphs of `g`. In a code these are
/// exactly the maximal bicliques with both sides at least `7m`, so any
/// larger maximal biclique means `g` is not a code.
pub fn blocks_of_graph(g: &BipartiteGraph, m: usize) -> Result<Vec<Biclique>, CodeError> {
    if m == 0 {
        return Err(CodeError::ZeroM);
    }
    let size = 7 * m;
    let found = maximal_bicliques(g, size, size)?;
    if let Some(big) = found.iter().find(|b| b.left.len() != size || b.right.len() != size) {
        return Err(CodeError::OversizedBiclique {
            left: big.left.len(),
            right: big.right.len(),
            expected: size,
        });
    }
    Ok(found)
}

/// Blocks with the two intersection relations. `r1` holds when two blocks
/// meet in an `m × m` complete bipartite graph and `r2` when they meet in a
/// `2m × 2m` one. Pairs are stored with the smaller index first; any other
/// nonempty intersection lands in `stray`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockStructure {
    pub blocks: Vec<Biclique>,
    pub r1: BTreeSet<(usize, usize)>,
    pub r2: BTreeSet<(usize, usize)>,
    pub stray: Vec<(usize, usize, usize, usize)>,
}

impl BlockStructure {
    pub fn from_blocks(blocks: Vec<Biclique>, m: usize) -> Self {
        // overlap counts, gathered per shared vertex
        let mut home: HashMap<VertexId, (bool, Vec<usize>)> = HashMap::new();
        for (i, b) in blocks.iter().enumerate() {
            for &v in &b.left {
                home.entry(v).or_insert((true, Vec::new())).1.push(i);
            }
            for &v in &b.right {
                home.entry(v).or_insert((false, Vec::new())).1.push(i);
            }
        }
        let mut overlap: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
        for (is_left, owners) in home.values() {
            for (x, &a) in owners.iter().enumerate() {
                for &b in &owners[x + 1..] {
                    let e = overlap.entry((a.min(b), a.max(b))).or_default();
                    if *is_left {
                        e.0 += 1;
                    } else {
                        e.1 += 1;
                    }
                }
            }
        }
        let mut r1 = BTreeSet::new();
        let mut r2 = BTreeSet::new();
        let mut stray = Vec::new();
        // both blocks are complete, so their intersection is too
        for ((a, b), (l, r)) in overlap {
            if l == m && r == m {
                r1.insert((a, b));
            } else if l == 2 * m && r == 2 * m {
                r2.insert((a, b));
            } else {
                stray.push((a, b, l, r));
            }
        }
        Self { blocks, r1, r2, stray }
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn r1_holds(&self, a: usize, b: usize) -> bool {
        self.r1.contains(&(a.min(b), a.max(b)))
    }

    pub fn r2_holds(&self, a: usize, b: usize) -> bool {
        self.r2.contains(&(a.min(b), a.max(b)))
    }
}

/// Block structure computed from the graph alone; the block map only
/// supplies the expected number of blocks.
pub fn block_structure(code: &GraphCode) -> Result<BlockStructure, CodeError> {
    let blocks = blocks_of_graph(&code.graph, code.m)?;
    if blocks.len() != code.block_map.len() {
        return Err(CodeError::BlockCount {
            expected: code.block_map.len(),
            found: blocks.len(),
        });
    }
    Ok(BlockStructure::from_blocks(blocks, code.m))
}

/// Left and right overlap of `B(η)` and `B(ν)` for every pair `η < ν` of
/// node addresses, zeros included.
pub fn intersection_pattern(code: &GraphCode) -> BTreeMap<(Address, Address), (usize, usize)> {
    let sets: Vec<(&Address, BTreeSet<VertexId>)> = code
        .block_map
        .iter()
        .map(|(a, ids)| (a, ids.iter().copied().collect()))
        .collect();
    let mut out = BTreeMap::new();
    for (i, (a, sa)) in sets.iter().enumerate() {
        for (b, sb) in &sets[i + 1..] {
            let (l, r) = sa.intersection(sb).fold(
                (0, 0),
                |(l, r), &v| if code.graph.is_left(v) { (l + 1, r) } else { (l, r + 1) },
            );
            out.insert(((*a).clone(), (*b).clone()), (l, r));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcode::{build_code, Variant};
    use crate::tree::FinTree;

    fn tree(addrs: &[&[u32]]) -> FinTree {
        FinTree::from_addresses(addrs.iter().map(|a| a.to_vec())).unwrap()
    }

    #[test]
    fn one_node_structure() {
        let code = build_code(&FinTree::new(), 1, Variant::Paired).unwrap();
        let bs = block_structure(&code).unwrap();
        assert_eq!(bs.len(), 1);
        assert!(bs.r1.is_empty() && bs.r2.is_empty());
        assert!(intersection_pattern(&code).is_empty());
    }

    #[test]
    fn root_and_child() {
        let code = build_code(&FinTree::path(1), 1, Variant::Paired).unwrap();
        let bs = block_structure(&code).unwrap();
        assert_eq!(bs.r1.len(), 1);
        assert!(bs.r2.is_empty());
    }

    #[test]
    fn path_of_three_nodes() {
        let code = build_code(&FinTree::path(2), 1, Variant::Paired).unwrap();
        let pat = intersection_pattern(&code);
        assert_eq!(pat[&(vec![], vec![0])], (1, 1));
        assert_eq!(pat[&(vec![0], vec![0, 0])], (2, 2));
        assert_eq!(pat[&(vec![], vec![0, 0])], (0, 0));
        let bs = block_structure(&code).unwrap();
        assert_eq!((bs.r1.len(), bs.r2.len()), (1, 1));
    }

    #[test]
    fn paper_variant_chains_through_subtrees() {
        let code = build_code(&FinTree::path(3), 1, Variant::Paper).unwrap();
        let pat = intersection_pattern(&code);
        assert_eq!(pat[&(vec![0], vec![0, 0, 0])], (2, 2));
        let paired = build_code(&FinTree::path(3), 1, Variant::Paired).unwrap();
        assert_eq!(intersection_pattern(&paired)[&(vec![0], vec![0, 0, 0])], (0, 0));
    }

    #[test]
    fn siblings_below_depth_one_share_their_family() {
        let code = build_code(&tree(&[&[], &[0], &[0, 0], &[0, 1]]), 2, Variant::Paired).unwrap();
        let pat = intersection_pattern(&code);
        assert_eq!(pat[&(vec![0, 0], vec![0, 1])], (4, 4));
    }

    #[test]
    fn count_mismatch_is_reported() {
        let mut code = build_code(&FinTree::path(1), 1, Variant::Paired).unwrap();
        code.block_map.insert(vec![7], Vec::new());
        assert_eq!(
            block_structure(&code),
            Err(CodeError::BlockCount { expected: 3, found: 2 })
        );
    }
}
