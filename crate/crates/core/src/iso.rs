//! Side-preserving isomorphism of bipartite graphs by color refinement with
//! individualization.
//!
//! Both graphs are refined with one shared color dictionary so that a color
//! means the same thing on either side. A mismatch in color histograms ends a
//! branch immediately.

use std::collections::{BTreeMap, HashMap};

use crate::bipartite::{Adjacency, BipartiteGraph, VertexId};

pub fn bipartite_iso(a: &BipartiteGraph, b: &BipartiteGraph) -> Option<BTreeMap<VertexId, VertexId>> {
    if a.left().len() != b.left().len() || a.right().len() != b.right().len() || a.edge_count() != b.edge_count() {
        return None;
    }
    let (ga, gb) = (a.adjacency(), b.adjacency());
    let side = |g: &Adjacency| (0..g.len()).map(|v| u32::from(!g.is_left(v))).collect::<Vec<_>>();
    let (mut ca, mut cb) = (side(&ga), side(&gb));
    if !refine(&ga, &mut ca, &gb, &mut cb) {
        return None;
    }
    let map = search(&ga, &gb, ca, cb)?;
    Some(map.iter().enumerate().map(|(v, &w)| (ga.id(v), gb.id(w))).collect())
}

pub fn bipartite_isomorphic(a: &BipartiteGraph, b: &BipartiteGraph) -> bool {
    bipartite_iso(a, b).is_some()
}

/// Refines both colorings to the common stable partition. Returns `false`
/// as soon as the color histograms disagree.
fn refine(ga: &Adjacency, ca: &mut Vec<u32>, gb: &Adjacency, cb: &mut Vec<u32>) -> bool {
    let mut classes = count_classes(ca, cb);
    loop {
        if !same_histogram(ca, cb) {
            return false;
        }
        let sig = |g: &Adjacency, c: &[u32], v: usize| {
            let mut nb: Vec<u32> = g.neighbors(v).iter().map(|&w| c[w]).collect();
            nb.sort_unstable();
            (c[v], nb)
        };
        let sa: Vec<_> = (0..ga.len()).map(|v| sig(ga, ca, v)).collect();
        let sb: Vec<_> = (0..gb.len()).map(|v| sig(gb, cb, v)).collect();
        let mut dict: BTreeMap<&(u32, Vec<u32>), u32> = BTreeMap::new();
        for s in sa.iter().chain(sb.iter()) {
            dict.insert(s, 0);
        }
        for (i, v) in dict.values_mut().enumerate() {
            *v = i as u32;
        }
        *ca = sa.iter().map(|s| dict[s]).collect();
        *cb = sb.iter().map(|s| dict[s]).collect();
        let next = dict.len();
        if next == classes {
            return same_histogram(ca, cb);
        }
        classes = next;
    }
}

fn count_classes(ca: &[u32], cb: &[u32]) -> usize {
    let mut all: Vec<u32> = ca.iter().chain(cb).copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

fn same_histogram(ca: &[u32], cb: &[u32]) -> bool {
    let mut h: HashMap<u32, i64> = HashMap::new();
    for &c in ca {
        *h.entry(c).or_default() += 1;
    }
    for &c in cb {
        *h.entry(c).or_default() -= 1;
    }
    h.values().all(|&n| n == 0)
}

fn search(ga: &Adjacency, gb: &Adjacency, ca: Vec<u32>, cb: Vec<u32>) -> Option<Vec<usize>> {
    let mut sizes: BTreeMap<u32, usize> = BTreeMap::new();
    for &c in &ca {
        *sizes.entry(c).or_default() += 1;
    }
    let target = sizes
        .iter()
        .filter(|(_, &n)| n > 1)
        .min_by_key(|(&c, &n)| (n, c))
        .map(|(&c, _)| c);
    let Some(color) = target else {
        // discrete: the coloring itself is the only candidate bijection
        let mut by_color = HashMap::with_capacity(cb.len());
        for (w, &c) in cb.iter().enumerate() {
            by_color.insert(c, w);
        }
        let map: Vec<usize> = ca.iter().map(|c| by_color[c]).collect();
        let ok = (0..ga.len()).all(|v| ga.neighbors(v).iter().all(|&u| gb.adjacent(map[v], map[u])));
        return ok.then_some(map);
    };
    let fresh = ca.iter().chain(cb.iter()).copied().max().unwrap_or(0) + 1;
    let v = ca.iter().position(|&c| c == color).expect("class is nonempty");
    for w in (0..gb.len()).filter(|&w| cb[w] == color) {
        let (mut na, mut nb) = (ca.clone(), cb.clone());
        na[v] = fresh;
        nb[w] = fresh;
        if refine(ga, &mut na, gb, &mut nb) {
            if let Some(map) = search(ga, gb, na, nb) {
                return Some(map);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graphs_are_isomorphic() {
        let a = BipartiteGraph::complete(2, 2);
        let b = BipartiteGraph::new(vec![10, 11], vec![20, 21], vec![(10, 20), (10, 21), (11, 20), (11, 21)]).unwrap();
        let map = bipartite_iso(&a, &b).expect("isomorphic");
        for &(u, v) in a.edges() {
            assert!(b.has_edge(map[&u], map[&v]));
        }
    }

    #[test]
    fn missing_edge_breaks_iso() {
        let a = BipartiteGraph::complete(2, 2);
        let b = a.without_edge((0, 2));
        assert!(bipartite_iso(&a, &b).is_none());
    }

    #[test]
    fn sides_are_preserved() {
        // a star centred on the left vs a star centred on the right
        let a = BipartiteGraph::complete(1, 2);
        let b = BipartiteGraph::complete(2, 1);
        assert!(bipartite_iso(&a, &b).is_none());
    }

    #[test]
    fn regular_graphs_need_individualization() {
        // 6-cycle vs two disjoint 4-cycles is impossible (size), so compare a
        // 12-cycle with two 6-cycles: both 2-regular, same sides and edges.
        let cycle = |n: u32, off: u32| -> Vec<(u32, u32)> {
            (0..n)
                .flat_map(|i| [(off + i, off + n + i), (off + (i + 1) % n, off + n + i)])
                .collect()
        };
        let big = BipartiteGraph::new((0..6).collect(), (6..12).collect(), cycle(6, 0)).unwrap();
        let mut left: Vec<u32> = (0..3).collect();
        left.extend(6..9);
        let mut right: Vec<u32> = (3..6).collect();
        right.extend(9..12);
        let mut edges = cycle(3, 0);
        edges.extend(cycle(3, 6));
        let two = BipartiteGraph::new(left, right, edges).unwrap();
        assert!(bipartite_iso(&big, &two).is_none());
        assert!(bipartite_iso(&big, &big).is_some());
        assert!(bipartite_iso(&two, &two).is_some());
    }
}
