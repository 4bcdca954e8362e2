//! Extremal edge counts for bipartite graphs and extraction of dense
//! connected pieces.
//!
//! All thresholds are evaluated in exact integer arithmetic.

mod exhaustive;

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::bipartite::{BipartiteGraph, VertexId};

pub use exhaustive::{
    all_graphs, check_complexity_bound, check_exchange, check_extremal, check_pair_bound, check_pair_monotone,
    complete_balanced, OracleReport, SmallGraph,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PackingError {
    #[error("need 4*ell > w^2, got ell = {ell}, w = {w}")]
    Precondition { ell: u64, w: u64 },
    #[error("ell must be positive")]
    ZeroEll,
}

/// `e*(2b) = b²`, `e*(2b+1) = b(b+1)`: the most edges a bipartite graph on
/// `c` vertices can have.
pub fn e_star(c: u64) -> u64 {
    (c / 2) * c.div_ceil(2)
}

/// `e*(c+1) + e*(d+1)`.
pub fn pair_bound_f(c: u64, d: u64) -> u64 {
    e_star(c + 1) + e_star(d + 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PackingStats {
    pub v: u64,
    pub e: u64,
    pub cc: u64,
    pub k: u64,
}

impl std::ops::Add for PackingStats {
    type Output = PackingStats;

    fn add(self, o: PackingStats) -> PackingStats {
        PackingStats {
            v: self.v + o.v,
            e: self.e + o.e,
            cc: self.cc + o.cc,
            k: self.k + o.k,
        }
    }
}

/// Isolated vertices count as components.
pub fn graph_stats(g: &BipartiteGraph) -> PackingStats {
    let v = g.vertex_count() as u64;
    let cc = g.components().len() as u64;
    PackingStats {
        v,
        e: g.edge_count() as u64,
        cc,
        k: v - cc,
    }
}

/// Outcome of the almost-ℓ-complete test.
///
/// `verdict` uses the symmetric reading: both sides in `[0.99ℓ, 1.01ℓ]`.
/// `strict_verdict` uses `[0.99ℓ, ℓ]`. Both require every vertex to have
/// valence at least `0.9ℓ`. When `n` is given, `hypotheses` says whether
/// `v ≤ 2ℓ + N` and `e ≥ ℓ² − N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlmostCompleteReport {
    pub ell: u64,
    pub left_size: u64,
    pub right_size: u64,
    pub min_valence: u64,
    pub verdict: bool,
    pub strict_verdict: bool,
    pub n: Option<u64>,
    pub hypotheses: Option<bool>,
}

impl AlmostCompleteReport {
    /// True when the hypotheses hold but the verdict is negative.
    pub fn refutes_hypotheses(&self) -> bool {
        self.hypotheses == Some(true) && !self.verdict
    }
}

fn side_ok(s: u64, ell: u64) -> bool {
    100 * s >= 99 * ell && 100 * s <= 101 * ell
}

fn side_ok_strict(s: u64, ell: u64) -> bool {
    100 * s >= 99 * ell && s <= ell
}

fn valence_ok(d: u64, ell: u64) -> bool {
    10 * d >= 9 * ell
}

pub fn is_almost_ell_complete(
    g: &BipartiteGraph,
    ell: u64,
    n: Option<u64>,
) -> Result<AlmostCompleteReport, PackingError> {
    if ell == 0 {
        return Err(PackingError::ZeroEll);
    }
    let adj = g.adjacency();
    let min_valence = (0..adj.len()).map(|v| adj.degree(v) as u64).min().unwrap_or(0);
    let (l, r) = (g.left().len() as u64, g.right().len() as u64);
    let val = valence_ok(min_valence, ell) && !adj.is_empty();
    let hypotheses = n.map(|n| {
        let s = graph_stats(g);
        s.v <= 2 * ell + n && s.e + n >= ell * ell
    });
    Ok(AlmostCompleteReport {
        ell,
        left_size: l,
        right_size: r,
        min_valence,
        verdict: val && side_ok(l, ell) && side_ok(r, ell),
        strict_verdict: val && side_ok_strict(l, ell) && side_ok_strict(r, ell),
        n,
        hypotheses,
    })
}

/// `K_{ℓ, ℓ+N−1}` plus one right vertex joined to a single left vertex. It
/// has `2ℓ + N` vertices and at least `ℓ² − N` edges, yet a vertex of
/// valence 1.
pub fn pendant_instance(ell: u32, n: u32) -> BipartiteGraph {
    assert!(n >= 1 && ell >= 1);
    let right = ell + n - 1;
    let g = BipartiteGraph::complete(ell, right);
    let extra = ell + right;
    let mut r: Vec<VertexId> = g.right().to_vec();
    r.push(extra);
    let mut edges = g.edges().to_vec();
    edges.push((0, extra));
    BipartiteGraph::new(g.left().to_vec(), r, edges).expect("fresh vertex")
}

/// Smallest `ℓ₀ ≤ cap` such that for every `ℓ` in `ℓ₀..=cap`, every complete
/// `K_{a,b}` with `a + b ≤ 2ℓ + N` and `ab ≥ ℓ² − N` is almost ℓ-complete.
/// `None` if the implication fails at `cap` itself.
pub fn complete_shape_threshold(n: u64, cap: u64) -> Option<u64> {
    let mut last_bad = 0;
    for ell in 1..=cap {
        if !complete_shapes_pass(ell, n) {
            last_bad = ell;
        }
    }
    (last_bad < cap).then_some(last_bad + 1)
}

/// Checks the most lopsided complete shape allowed at `ℓ`.
pub fn complete_shapes_pass(ell: u64, n: u64) -> bool {
    let s = 2 * ell + n;
    let need = (ell * ell).saturating_sub(n);
    // smallest a with a(s - a) >= need; a(s-a) increases on 0..=s/2
    if (s / 2) * (s - s / 2) < need {
        return true;
    }
    let (mut lo, mut hi) = (0u64, s / 2);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if mid * (s - mid) >= need {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let (a, b) = (lo, s - lo);
    // smaller total sizes only shrink b and raise a
    side_ok(a, ell) && side_ok(b, ell) && valence_ok(a, ell)
}

/// Why no dense connected subgraph was returned.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Absence {
    /// `k(g) ≤ 2ℓ + w` or `e(g) ≥ ℓ²` fails.
    Hypotheses { k: u64, e: u64 },
    /// The densest component has fewer than `ℓ² − w²/4` edges.
    EdgeBound { e: u64 },
    /// The densest component has enough edges but too many vertices, and
    /// shrinking it to `2ℓ + w` vertices loses too many edges.
    VertexBoundUnreachable { v: u64, e: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DenseExtraction {
    Found {
        subgraph: BipartiteGraph,
        stats: PackingStats,
        peeled: usize,
    },
    Absent(Absence),
}

/// Looks for a connected subgraph with at least `ℓ² − w²/4` edges and at
/// most `2ℓ + w` vertices.
///
/// Takes the component with the most edges; if it is one vertex too large,
/// removes the non-cut vertex of least degree.
pub fn extract_dense_connected(g: &BipartiteGraph, ell: u64, w: u64) -> Result<DenseExtraction, PackingError> {
    if 4 * ell <= w * w {
        return Err(PackingError::Precondition { ell, w });
    }
    let s = graph_stats(g);
    if s.k > 2 * ell + w || s.e < ell * ell {
        return Ok(DenseExtraction::Absent(Absence::Hypotheses { k: s.k, e: s.e }));
    }
    let edges_ok = |e: u64| 4 * e + w * w >= 4 * ell * ell;
    let best = g
        .components()
        .into_iter()
        .map(|c| g.induced(&c))
        .max_by(|x, y| {
            x.edge_count()
                .cmp(&y.edge_count())
                .then(y.vertex_count().cmp(&x.vertex_count()))
        })
        .expect("hypotheses imply edges");
    let mut cur = best;
    let mut peeled = 0;
    if !edges_ok(cur.edge_count() as u64) {
        return Ok(DenseExtraction::Absent(Absence::EdgeBound {
            e: cur.edge_count() as u64,
        }));
    }
    while cur.vertex_count() as u64 > 2 * ell + w {
        let Some(next) = peel_one(&cur) else { break };
        if !edges_ok(next.edge_count() as u64) {
            break;
        }
        cur = next;
        peeled += 1;
    }
    let stats = graph_stats(&cur);
    if stats.v > 2 * ell + w {
        return Ok(DenseExtraction::Absent(Absence::VertexBoundUnreachable {
            v: stats.v,
            e: stats.e,
        }));
    }
    Ok(DenseExtraction::Found {
        subgraph: cur,
        stats,
        peeled,
    })
}

/// Removes the least-degree vertex whose removal keeps `g` connected.
fn peel_one(g: &BipartiteGraph) -> Option<BipartiteGraph> {
    let adj = g.adjacency();
    let mut order: Vec<usize> = (0..adj.len()).collect();
    order.sort_by_key(|&v| (adj.degree(v), adj.id(v)));
    let all: BTreeSet<VertexId> = g.left().iter().chain(g.right()).copied().collect();
    for v in order {
        let mut keep = all.clone();
        keep.remove(&adj.id(v));
        let h = g.induced(&keep);
        if h.components().len() == 1 {
            return Some(h);
        }
    }
    None
}

/// CSV with columns `c,e_star`.
pub fn e_star_table(max_c: u64) -> String {
    let mut out = String::from("c,e_star\n");
    for c in 0..=max_c {
        out.push_str(&format!("{c},{}\n", e_star(c)));
    }
    out
}

/// CSV with columns `c,d,f`.
pub fn pair_bound_table(max: u64) -> String {
    let mut out = String::from("c,d,f\n");
    for c in 0..=max {
        for d in 0..=max {
            out.push_str(&format!("{c},{d},{}\n", pair_bound_f(c, d)));
        }
    }
    out
}
