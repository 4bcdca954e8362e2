use std::collections::{BTreeSet, HashMap, VecDeque};

use super::blocks::{blocks_of_graph, BlockStructure};
use super::CodeError;
use crate::bipartite::{BipartiteGraph, VertexId};
use crate::tree::{FinTree, NodeId};

/// Rebuilds the tree coded by `g` at block parameter `m`.
///
/// Only the abstract graph is used. The root group is the `r1` clique: the
/// root and its children. Every other `r2` maximal clique is one node
/// together with its children, so walking down level by level each placed
/// block picks up the one family it heads.
pub fn decode_tree_from_code(g: &BipartiteGraph, m: usize) -> Result<FinTree, CodeError> {
    let blocks = blocks_of_graph(g, m)?;
    if blocks.is_empty() {
        return Err(CodeError::NoBlocks(7 * m));
    }
    check_coverage(g, &blocks)?;
    let bs = BlockStructure::from_blocks(blocks, m);
    if let Some(&(a, b, left, right)) = bs.stray.first() {
        return Err(CodeError::BadIntersection { a, b, left, right });
    }
    let n = bs.len();

    let mut r1_members: BTreeSet<usize> = BTreeSet::new();
    for &(a, b) in &bs.r1 {
        r1_members.insert(a);
        r1_members.insert(b);
    }
    let k = r1_members.len();
    if bs.r1.len() != k * k.saturating_sub(1) / 2 {
        return Err(CodeError::RootGroup(format!(
            "{} r1 pairs among {k} blocks do not form a clique",
            bs.r1.len()
        )));
    }
    if k == 0 && n > 1 {
        return Err(CodeError::RootGroup(format!("{n} blocks but no r1 pair")));
    }

    let mut r2_adj = vec![BTreeSet::new(); n];
    for &(a, b) in &bs.r2 {
        r2_adj[a].insert(b);
        r2_adj[b].insert(a);
    }
    let root = if k == 0 {
        0
    } else {
        *r1_members
            .iter()
            .find(|&&b| r2_adj[b].is_empty())
            .ok_or_else(|| CodeError::RootGroup("every r1 block has an r2 neighbour".into()))?
    };
    let families = maximal_cliques(&r2_adj);
    let mut used = vec![false; families.len()];
    let mut families_of = vec![Vec::new(); n];
    for (f, fam) in families.iter().enumerate() {
        for &b in fam {
            families_of[b].push(f);
        }
    }

    let mut tree = FinTree::new();
    let mut node_of: Vec<Option<NodeId>> = vec![None; n];
    node_of[root] = Some(FinTree::ROOT);
    let mut queue = VecDeque::new();
    for &b in r1_members.iter().filter(|&&b| b != root) {
        node_of[b] = Some(tree.push_child(FinTree::ROOT));
        queue.push_back(b);
    }
    while let Some(x) = queue.pop_front() {
        let open: Vec<usize> = families_of[x].iter().copied().filter(|&f| !used[f]).collect();
        match open.as_slice() {
            [] => {}
            [f] => {
                used[*f] = true;
                let parent = node_of[x].expect("queued blocks are placed");
                for &c in families[*f].iter().filter(|&&c| c != x) {
                    if node_of[c].is_some() {
                        return Err(CodeError::Revisited(c));
                    }
                    node_of[c] = Some(tree.push_child(parent));
                    queue.push_back(c);
                }
            }
            many => {
                return Err(CodeError::Ambiguous {
                    block: x,
                    options: many.len(),
                })
            }
        }
    }
    let unplaced = node_of.iter().filter(|p| p.is_none()).count();
    let unused = used.iter().filter(|u| !**u).count();
    if unplaced + unused > 0 {
        return Err(CodeError::Unreached(unplaced.max(unused)));
    }
    Ok(tree)
}

fn check_coverage(g: &BipartiteGraph, blocks: &[super::Biclique]) -> Result<(), CodeError> {
    let mut home: HashMap<VertexId, Vec<usize>> = HashMap::new();
    for (i, b) in blocks.iter().enumerate() {
        for &v in b.left.iter().chain(&b.right) {
            home.entry(v).or_default().push(i);
        }
    }
    if let Some(&v) = g.left().iter().chain(g.right()).find(|v| !home.contains_key(v)) {
        return Err(CodeError::UncoveredVertex(v));
    }
    for &(u, v) in g.edges() {
        let inside = home[&u].iter().any(|&i| blocks[i].right.binary_search(&v).is_ok());
        if !inside {
            return Err(CodeError::UncoveredEdge(u, v));
        }
    }
    Ok(())
}

/// Maximal cliques with at least two vertices (Bron–Kerbosch with pivot).
fn maximal_cliques(adj: &[BTreeSet<usize>]) -> Vec<BTreeSet<usize>> {
    fn bk(
        adj: &[BTreeSet<usize>],
        r: &mut Vec<usize>,
        mut p: BTreeSet<usize>,
        mut x: BTreeSet<usize>,
        out: &mut Vec<BTreeSet<usize>>,
    ) {
        if p.is_empty() && x.is_empty() {
            if r.len() >= 2 {
                out.push(r.iter().copied().collect());
            }
            return;
        }
        let pivot = *p
            .iter()
            .chain(&x)
            .max_by_key(|&&u| adj[u].intersection(&p).count())
            .expect("p or x nonempty");
        let candidates: Vec<usize> = p.difference(&adj[pivot]).copied().collect();
        for v in candidates {
            r.push(v);
            let np = p.intersection(&adj[v]).copied().collect();
            let nx = x.intersection(&adj[v]).copied().collect();
            bk(adj, r, np, nx, out);
            r.pop();
            p.remove(&v);
            x.insert(v);
        }
    }
    let mut out = Vec::new();
    bk(
        adj,
        &mut Vec::new(),
        (0..adj.len()).collect(),
        BTreeSet::new(),
        &mut out,
    );
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::trees_isomorphic;
    use crate::graphcode::{build_code, Variant};

    fn tree(addrs: &[&[u32]]) -> FinTree {
        FinTree::from_addresses(addrs.iter().map(|a| a.to_vec())).unwrap()
    }

    #[test]
    fn one_block_is_one_node() {
        let g = BipartiteGraph::complete(7, 7);
        assert_eq!(decode_tree_from_code(&g, 1).unwrap(), FinTree::new());
    }

    #[test]
    fn roundtrip_small_shapes() {
        let shapes = [
            FinTree::path(3),
            tree(&[&[], &[0], &[1], &[2]]),
            tree(&[&[], &[0], &[0, 0], &[0, 1], &[1], &[1, 0], &[1, 0, 0]]),
        ];
        for t in &shapes {
            for m in 1..3 {
                let code = build_code(t, m, Variant::Paired).unwrap();
                let back = decode_tree_from_code(&code.graph, m).unwrap();
                assert!(trees_isomorphic(t, &back), "{t:?} decoded as {back:?}");
            }
        }
    }

    #[test]
    fn paper_variant_conflates_path_and_star() {
        let path = FinTree::path(3);
        let fork = tree(&[&[], &[0], &[0, 0], &[0, 1]]);
        let a = build_code(&path, 1, Variant::Paper).unwrap();
        let b = build_code(&fork, 1, Variant::Paper).unwrap();
        assert!(crate::iso::bipartite_isomorphic(&a.graph, &b.graph));
    }

    #[test]
    fn missing_edge_is_rejected() {
        let code = build_code(&FinTree::path(2), 1, Variant::Paired).unwrap();
        let &(u, v) = code.graph.edges().first().unwrap();
        assert!(decode_tree_from_code(&code.graph.without_edge((u, v)), 1).is_err());
    }

    #[test]
    fn cliques_of_two_triangles() {
        let mut adj = vec![BTreeSet::new(); 5];
        for (a, b) in [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)] {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        let cl = maximal_cliques(&adj);
        assert_eq!(cl, vec![BTreeSet::from([0, 1, 2]), BTreeSet::from([2, 3, 4])]);
    }
}
