use std::collections::{BTreeMap, BTreeSet};

use super::{CodeError, GraphCode, Variant};
use crate::bipartite::{BipartiteGraph, VertexId};
use crate::dsu::Dsu;
use crate::tree::{format_address, FinTree, NodeId};

/// Slots per `(node, i)` pair.
pub const SLOTS: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PreGraphElem {
    pub node: NodeId,
    pub slot_i: usize,
    pub slot_n: usize,
}

impl PreGraphElem {
    pub fn new(node: NodeId, slot_i: usize, slot_n: usize) -> Self {
        Self { node, slot_i, slot_n }
    }

    /// Position in the pre-graph universe, `(node * m + i) * 14 + n`.
    pub fn index(&self, m: usize) -> usize {
        (self.node * m + self.slot_i) * SLOTS + self.slot_n
    }

    pub fn from_index(idx: usize, m: usize) -> Self {
        let slot_n = idx % SLOTS;
        let rest = idx / SLOTS;
        Self {
            node: rest / m,
            slot_i: rest % m,
            slot_n,
        }
    }

    pub fn is_left(&self) -> bool {
        self.slot_n % 2 == 1
    }
}

fn check_m(m: usize) -> Result<(), CodeError> {
    if m == 0 {
        Err(CodeError::ZeroM)
    } else {
        Ok(())
    }
}

/// The pre-graph on `T × m × 14`, vertex ids given by [`PreGraphElem::index`].
pub fn build_pre_graph(t: &FinTree, m: usize) -> Result<BipartiteGraph, CodeError> {
    check_m(m)?;
    let total = t.len() * m * SLOTS;
    let (left, right): (Vec<VertexId>, Vec<VertexId>) = (0..total as VertexId).partition(|&v| v % 2 == 1);
    let mut edges = Vec::with_capacity(t.len() * 49 * m * m);
    for node in t.nodes() {
        let base = node * m * SLOTS;
        let slots = base..base + m * SLOTS;
        for u in slots.clone().filter(|u| u % 2 == 1) {
            for v in slots.clone().filter(|v| v % 2 == 0) {
                edges.push((u as VertexId, v as VertexId));
            }
        }
    }
    Ok(BipartiteGraph::new(left, right, edges).expect("parity split is a valid bipartition"))
}

/// The gluing relation closed under equivalence, as a partition of the
/// pre-graph universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    m: usize,
    class_of: Vec<u32>,
    classes: Vec<Vec<usize>>,
}

impl Partition {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, e: PreGraphElem) -> u32 {
        self.class_of[e.index(self.m)]
    }

    /// Members of a class as pre-graph indices, ascending.
    pub fn members(&self, class: u32) -> &[usize] {
        &self.classes[class as usize]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn is_singleton(&self, e: PreGraphElem) -> bool {
        self.classes[self.class_of(e) as usize].len() == 1
    }
}

pub fn build_equiv(t: &FinTree, m: usize, variant: Variant) -> Result<Partition, CodeError> {
    check_m(m)?;
    let mut dsu = Dsu::new(t.len() * m * SLOTS);
    let idx = |node, i, n| PreGraphElem::new(node, i, n).index(m);
    for eta in t.nodes() {
        for &nu in t.children(eta) {
            for i in 0..m {
                if t.depth(eta) == 0 {
                    for n in 0..2 {
                        dsu.union(idx(eta, i, n), idx(nu, i, n));
                    }
                    continue;
                }
                match variant {
                    Variant::Paper => {
                        for n in 10..14 {
                            dsu.union(idx(eta, i, n), idx(nu, i, n));
                        }
                    }
                    Variant::Paired => {
                        for n in 6..10 {
                            dsu.union(idx(eta, i, n), idx(nu, i, n + 4));
                        }
                    }
                }
            }
        }
    }
    let (class_of, count) = dsu.labels();
    let mut classes = vec![Vec::new(); count];
    for (e, &c) in class_of.iter().enumerate() {
        classes[c as usize].push(e);
    }
    Ok(Partition { m, class_of, classes })
}

/// The quotient graph with induced edges and the block of every node.
pub fn build_code(t: &FinTree, m: usize, variant: Variant) -> Result<GraphCode, CodeError> {
    let part = build_equiv(t, m, variant)?;
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (c, members) in part.classes().iter().enumerate() {
        let first = members[0] % 2;
        if members.iter().any(|e| e % 2 != first) {
            return Err(CodeError::ParityBroken(c as VertexId));
        }
        if first == 1 {
            left.push(c as VertexId);
        } else {
            right.push(c as VertexId);
        }
    }

    let mut edges = Vec::new();
    let mut block_map = BTreeMap::new();
    for node in t.nodes() {
        let mut bl = BTreeSet::new();
        let mut br = BTreeSet::new();
        for i in 0..m {
            for n in 0..SLOTS {
                let e = PreGraphElem::new(node, i, n);
                if e.is_left() {
                    bl.insert(part.class_of(e));
                } else {
                    br.insert(part.class_of(e));
                }
            }
        }
        for &u in &bl {
            edges.extend(br.iter().map(|&v| (u, v)));
        }
        block_map.insert(t.address(node), bl.into_iter().chain(br).collect::<Vec<_>>());
    }
    let graph = BipartiteGraph::new(left, right, edges).expect("classes respect parity");
    let code = GraphCode {
        graph,
        block_map,
        m,
        variant,
    };
    check_blocks_complete(&code)?;
    Ok(code)
}

/// Every block is a complete `7m × 7m` bipartite subgraph.
pub(super) fn check_blocks_complete(code: &GraphCode) -> Result<(), CodeError> {
    let want = 7 * code.m;
    for (addr, ids) in &code.block_map {
        let (l, r): (Vec<VertexId>, Vec<VertexId>) = ids.iter().partition(|&&v| code.graph.is_left(v));
        let complete = l.iter().all(|&u| r.iter().all(|&v| code.graph.has_edge(u, v)));
        if l.len() != want || r.len() != want || !complete {
            return Err(CodeError::BlockShape {
                node: format_address(addr),
                left: l.len(),
                right: r.len(),
                expected: want,
            });
        }
    }
    Ok(())
}
