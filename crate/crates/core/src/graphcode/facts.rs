use std::collections::BTreeSet;

use super::build::{build_code, build_equiv, check_blocks_complete, PreGraphElem, SLOTS};
use super::{CodeError, Variant};
use crate::bipartite::VertexId;
use crate::tree::{format_address, FinTree};

/// Checks the structural facts about blocks on one tree and returns a
/// description of every violation.
///
/// * every block is complete `7m × 7m`;
/// * slots 2..=9 are singleton classes (under `Paired`, slots 6..=9 of a
///   non-root node with children are glued by design and skipped);
/// * a singleton class of `B(η)` has all its neighbours inside `B(η)`;
/// * under `Paired`, for `lg(ν) < lg(η)` the blocks meet iff `ν = η⁻`, in
///   `m × m` when `ν` is the root and `2m × 2m` otherwise.
pub fn audit_block_facts(t: &FinTree, m: usize, variant: Variant) -> Result<Vec<String>, CodeError> {
    let code = build_code(t, m, variant)?;
    let part = build_equiv(t, m, variant)?;
    let mut failures = Vec::new();
    if let Err(e) = check_blocks_complete(&code) {
        failures.push(format!("complete blocks: {e}"));
    }

    let blocks: Vec<BTreeSet<VertexId>> = t
        .nodes()
        .map(|id| code.block_map[&t.address(id)].iter().copied().collect())
        .collect();
    let adj = code.graph.adjacency();

    for eta in t.nodes() {
        let name = format_address(&t.address(eta));
        let glued = variant == Variant::Paired && t.depth(eta) > 0 && !t.is_leaf(eta);
        for i in 0..m {
            for n in 2..10 {
                let e = PreGraphElem::new(eta, i, n);
                if glued && n >= 6 {
                    continue;
                }
                if !part.is_singleton(e) {
                    failures.push(format!("singleton slots: ({name:?}, {i}, {n}) is glued"));
                }
            }
            for n in 0..SLOTS {
                let e = PreGraphElem::new(eta, i, n);
                if !part.is_singleton(e) {
                    continue;
                }
                let g = part.class_of(e);
                let gi = adj.index_of(g).expect("class is a vertex");
                if let Some(&h) = adj.neighbors(gi).iter().find(|&&h| !blocks[eta].contains(&adj.id(h))) {
                    failures.push(format!(
                        "singleton propagation: class {g} of {name:?} reaches {} outside the block",
                        adj.id(h)
                    ));
                }
            }
        }
    }

    if variant == Variant::Paired {
        for eta in t.nodes() {
            for nu in t.nodes().filter(|&nu| t.depth(nu) < t.depth(eta)) {
                let (l, r) = blocks[eta].intersection(&blocks[nu]).fold((0, 0), |(l, r), &v| {
                    if code.graph.is_left(v) {
                        (l + 1, r)
                    } else {
                        (l, r + 1)
                    }
                });
                let is_parent = t.parent(eta) == Some(nu);
                let want = match (is_parent, t.depth(nu)) {
                    (false, _) => (0, 0),
                    (true, 0) => (m, m),
                    (true, _) => (2 * m, 2 * m),
                };
                if (l, r) != want {
                    failures.push(format!(
                        "parent overlap: B({:?}) and B({:?}) meet in {l}x{r}, expected {}x{}",
                        format_address(&t.address(nu)),
                        format_address(&t.address(eta)),
                        want.0,
                        want.1
                    ));
                }
            }
        }
    }
    Ok(failures)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_trees_pass_both_variants() {
        let t = FinTree::from_addresses([vec![], vec![0], vec![0, 0], vec![1]]).unwrap();
        for v in [Variant::Paper, Variant::Paired] {
            for m in 1..3 {
                assert_eq!(audit_block_facts(&t, m, v).unwrap(), Vec::<String>::new());
            }
        }
    }
}
