use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;

use super::CodeError;
use crate::bipartite::{intersect_sorted, Adjacency, BipartiteGraph, VertexId};

/// A complete bipartite subgraph given by its left and right vertex ids,
/// both sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Biclique {
    pub left: Vec<VertexId>,
    pub right: Vec<VertexId>,
}

impl Biclique {
    pub fn vertices(&self) -> BTreeSet<VertexId> {
        self.left.iter().chain(&self.right).copied().collect()
    }
}

/// All maximal bicliques with at least `min_left` left and `min_right`
/// right vertices, sorted.
///
/// Each maximal biclique `(A, B)` is found once, from the seed `min(A)`:
/// `B` is an intersection of the seed's neighbourhood with neighbourhoods
/// of later left vertices at distance two, and `A` is the common
/// neighbourhood of `B`.
pub fn maximal_bicliques(g: &BipartiteGraph, min_left: usize, min_right: usize) -> Result<Vec<Biclique>, CodeError> {
    if min_left == 0 || min_right == 0 {
        return Err(CodeError::BadBicliqueSize(min_left, min_right));
    }
    let adj = g.adjacency();
    let mut out: Vec<Biclique> = (0..adj.left_count())
        .into_par_iter()
        .flat_map_iter(|seed| seeded(&adj, seed, min_left, min_right))
        .map(|(a, b)| Biclique {
            left: a.iter().map(|&v| adj.id(v)).collect(),
            right: b.iter().map(|&v| adj.id(v)).collect(),
        })
        .collect();
    out.sort_unstable();
    Ok(out)
}

fn seeded(adj: &Adjacency, seed: usize, min_left: usize, min_right: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let base = adj.neighbors(seed);
    if base.len() < min_right {
        return Vec::new();
    }
    let later: BTreeSet<usize> = base
        .iter()
        .flat_map(|&r| adj.neighbors(r).iter().copied())
        .filter(|&l| l > seed)
        .collect();
    let mut family: Vec<Vec<usize>> = vec![base.to_vec()];
    let mut seen: HashSet<Vec<usize>> = family.iter().cloned().collect();
    for l in later {
        let nl = adj.neighbors(l);
        let fresh: Vec<Vec<usize>> = family
            .iter()
            .map(|x| intersect_sorted(x, nl))
            .filter(|y| y.len() >= min_right && !seen.contains(y))
            .collect();
        for y in fresh {
            if seen.insert(y.clone()) {
                family.push(y);
            }
        }
    }
    family
        .into_iter()
        .filter_map(|b| {
            let a = common_neighbors(adj, &b);
            (a.len() >= min_left && a[0] == seed).then_some((a, b))
        })
        .collect()
}

fn common_neighbors(adj: &Adjacency, set: &[usize]) -> Vec<usize> {
    let mut it = set.iter();
    let Some(&first) = it.next() else {
        return Vec::new();
    };
    let mut acc = adj.neighbors(first).to_vec();
    for &v in it {
        acc = intersect_sorted(&acc, adj.neighbors(v));
        if acc.is_empty() {
            break;
        }
    }
    acc
}

/// Vertex sets of all complete bipartite subgraphs with exactly `a` left
/// and `b` right vertices, sorted.
pub fn enumerate_complete_bipartite_subgraphs(
    g: &BipartiteGraph,
    a: usize,
    b: usize,
) -> Result<Vec<BTreeSet<VertexId>>, CodeError> {
    let mut found = BTreeSet::new();
    for bc in maximal_bicliques(g, a, b)? {
        for ls in subsets(&bc.left, a) {
            for rs in subsets(&bc.right, b) {
                found.insert(ls.iter().chain(&rs).copied().collect::<BTreeSet<_>>());
            }
        }
    }
    Ok(found.into_iter().collect())
}

fn subsets(items: &[VertexId], k: usize) -> Vec<Vec<VertexId>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(items: &[VertexId], k: usize, start: usize, cur: &mut Vec<VertexId>, out: &mut Vec<Vec<VertexId>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_by_one_bicliques_are_edges() {
        let g = BipartiteGraph::new(vec![0, 1], vec![2, 3, 4], vec![(0, 2), (0, 3), (1, 3), (1, 4)]).unwrap();
        let found = enumerate_complete_bipartite_subgraphs(&g, 1, 1).unwrap();
        let edges: Vec<BTreeSet<u32>> = g.edges().iter().map(|&(u, v)| BTreeSet::from([u, v])).collect();
        assert_eq!(found, edges);
    }

    #[test]
    fn two_by_two_inside_k33() {
        let g = BipartiteGraph::complete(3, 3);
        assert_eq!(enumerate_complete_bipartite_subgraphs(&g, 2, 2).unwrap().len(), 9);
        assert_eq!(maximal_bicliques(&g, 1, 1).unwrap().len(), 1);
    }

    #[test]
    fn maximal_bicliques_of_a_path() {
        // 0 - 3 - 1 - 4 - 2
        let g = BipartiteGraph::new(vec![0, 1, 2], vec![3, 4], vec![(0, 3), (1, 3), (1, 4), (2, 4)]).unwrap();
        let all = maximal_bicliques(&g, 1, 1).unwrap();
        let expect = vec![
            Biclique {
                left: vec![0, 1],
                right: vec![3],
            },
            Biclique {
                left: vec![1],
                right: vec![3, 4],
            },
            Biclique {
                left: vec![1, 2],
                right: vec![4],
            },
        ];
        assert_eq!(all, expect);
    }

    #[test]
    fn zero_sizes_are_rejected() {
        let g = BipartiteGraph::complete(1, 1);
        assert!(maximal_bicliques(&g, 0, 1).is_err());
    }
}
