//! Bipartite graphs with explicit left and right vertex sets.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

pub type VertexId = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} is declared on both sides")]
    SharedVertex(VertexId),
    #[error("vertex {0} is declared twice")]
    DuplicateVertex(VertexId),
    #[error("edge ({0}, {1}) must join a left vertex to a right vertex")]
    BadEdge(VertexId, VertexId),
}

/// Edges always run from a left vertex to a right vertex. Vertex lists and
/// the edge list are kept sorted and free of duplicates.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BipartiteGraph {
    left: Vec<VertexId>,
    right: Vec<VertexId>,
    edges: Vec<(VertexId, VertexId)>,
}

impl BipartiteGraph {
    pub fn new(
        left: Vec<VertexId>,
        right: Vec<VertexId>,
        edges: Vec<(VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        let left = sorted_unique(left)?;
        let right = sorted_unique(right)?;
        if let Some(&v) = left.iter().find(|v| right.binary_search(v).is_ok()) {
            return Err(GraphError::SharedVertex(v));
        }
        let mut edges = edges;
        for &(u, v) in &edges {
            if left.binary_search(&u).is_err() || right.binary_search(&v).is_err() {
                return Err(GraphError::BadEdge(u, v));
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Self { left, right, edges })
    }

    /// `K_{a,b}` with left vertices `0..a` and right vertices `a..a+b`.
    pub fn complete(a: u32, b: u32) -> Self {
        let left: Vec<_> = (0..a).collect();
        let right: Vec<_> = (a..a + b).collect();
        let edges = left.iter().flat_map(|&u| right.iter().map(move |&v| (u, v))).collect();
        Self { left, right, edges }
    }

    pub fn left(&self) -> &[VertexId] {
        &self.left
    }

    pub fn right(&self) -> &[VertexId] {
        &self.right
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.left.len() + self.right.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_left(&self, v: VertexId) -> bool {
        self.left.binary_search(&v).is_ok()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edges.binary_search(&(u, v)).is_ok()
    }

    pub fn max_vertex(&self) -> Option<VertexId> {
        self.left.last().copied().max(self.right.last().copied())
    }

    /// Disjoint union; the vertices of `other` are shifted past this
    /// graph's largest id.
    pub fn disjoint_union(&self, other: &BipartiteGraph) -> BipartiteGraph {
        let shift = self.max_vertex().map(|m| m + 1).unwrap_or(0);
        let mut left = self.left.clone();
        left.extend(other.left.iter().map(|v| v + shift));
        let mut right = self.right.clone();
        right.extend(other.right.iter().map(|v| v + shift));
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|(u, v)| (u + shift, v + shift)));
        BipartiteGraph::new(left, right, edges).expect("shifted ids are disjoint")
    }

    /// Subgraph induced by `keep`; unknown ids are ignored.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> BipartiteGraph {
        let left = self.left.iter().copied().filter(|v| keep.contains(v)).collect();
        let right = self.right.iter().copied().filter(|v| keep.contains(v)).collect();
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|(u, v)| keep.contains(u) && keep.contains(v))
            .collect();
        BipartiteGraph { left, right, edges }
    }

    pub fn without_edge(&self, edge: (VertexId, VertexId)) -> BipartiteGraph {
        let mut g = self.clone();
        g.edges.retain(|&e| e != edge);
        g
    }

    pub fn with_edge(&self, edge: (VertexId, VertexId)) -> Result<BipartiteGraph, GraphError> {
        let mut edges = self.edges.clone();
        edges.push(edge);
        BipartiteGraph::new(self.left.clone(), self.right.clone(), edges)
    }

    pub fn adjacency(&self) -> Adjacency {
        Adjacency::new(self)
    }

    /// Vertex sets of the connected components, ordered by smallest id.
    /// Isolated vertices form their own components.
    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        let adj = self.adjacency();
        let mut seen = vec![false; adj.len()];
        let mut out = Vec::new();
        for start in 0..adj.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = BTreeSet::new();
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                comp.insert(adj.id(v));
                for &w in adj.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out.sort_by_key(|c| c.iter().next().copied());
        out
    }
}

fn sorted_unique(mut v: Vec<VertexId>) -> Result<Vec<VertexId>, GraphError> {
    v.sort_unstable();
    if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
        return Err(GraphError::DuplicateVertex(w[0]));
    }
    Ok(v)
}

/// Dense view of a graph: left vertices take indices `0..L`, right vertices
/// `L..L+R`, and neighbor lists are sorted.
#[derive(Clone, Debug)]
pub struct Adjacency {
    ids: Vec<VertexId>,
    left_count: usize,
    index: HashMap<VertexId, usize>,
    nbrs: Vec<Vec<usize>>,
}

impl Adjacency {
    fn new(g: &BipartiteGraph) -> Self {
        let ids: Vec<VertexId> = g.left.iter().chain(g.right.iter()).copied().collect();
        let index: HashMap<_, _> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut nbrs = vec![Vec::new(); ids.len()];
        for &(u, v) in &g.edges {
            let (iu, iv) = (index[&u], index[&v]);
            nbrs[iu].push(iv);
            nbrs[iv].push(iu);
        }
        for n in &mut nbrs {
            n.sort_unstable();
        }
        Self {
            ids,
            left_count: g.left.len(),
            index,
            nbrs,
        }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn left_count(&self) -> usize {
        self.left_count
    }

    pub fn is_left(&self, v: usize) -> bool {
        v < self.left_count
    }

    pub fn id(&self, v: usize) -> VertexId {
        self.ids[v]
    }

    pub fn index_of(&self, id: VertexId) -> Option<usize> {
        self.index.get(&id).copied()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.nbrs[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.nbrs[v].len()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.nbrs[u].binary_search(&v).is_ok()
    }
}

/// Intersection of two sorted slices.
pub(crate) fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(a.len().min(b.len()));
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_invalid_graphs() {
        assert_eq!(
            BipartiteGraph::new(vec![0, 1], vec![1], vec![]).unwrap_err(),
            GraphError::SharedVertex(1)
        );
        assert_eq!(
            BipartiteGraph::new(vec![0], vec![1], vec![(1, 0)]).unwrap_err(),
            GraphError::BadEdge(1, 0)
        );
        assert_eq!(
            BipartiteGraph::new(vec![0, 0], vec![], vec![]).unwrap_err(),
            GraphError::DuplicateVertex(0)
        );
    }

    #[test]
    fn complete_graph_shape() {
        let g = BipartiteGraph::complete(3, 2);
        assert_eq!(g.edge_count(), 6);
        assert!(g.has_edge(0, 4));
        assert_eq!(g.components().len(), 1);
    }

    #[test]
    fn components_count_isolated_vertices() {
        let g = BipartiteGraph::new(vec![0, 1, 2], vec![3, 4], vec![(0, 3)]).unwrap();
        assert_eq!(g.components().len(), 4);
    }

    #[test]
    fn disjoint_union_shifts_ids() {
        let g = BipartiteGraph::complete(1, 1).disjoint_union(&BipartiteGraph::complete(2, 2));
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 5);
        assert_eq!(g.components().len(), 2);
    }
}
