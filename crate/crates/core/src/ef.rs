//! Bounded back-and-forth equivalence of finite relational structures.
//!
//! `ef_equivalent(a, b, k)` evaluates the `k`-round pebble-free game tree:
//! Spoiler picks an element on either side, Duplicator answers on the other,
//! and Duplicator survives a round iff the pairs chosen so far still form a
//! partial isomorphism. Positions are memoized on the set of pairs, which is
//! all that matters for relational signatures.

use std::collections::HashMap;

use crate::structure::{PartialIso, RelStructure, StructureError};

pub fn ef_equivalent(a: &RelStructure, b: &RelStructure, k: usize) -> Result<bool, StructureError> {
    a.check_same_signature(b)?;
    let start = PartialIso::default();
    if !start.is_partial_iso(a, b) {
        // only possible through 0-ary relations
        return Ok(false);
    }
    let mut game = Game {
        a,
        b,
        memo: HashMap::new(),
    };
    Ok(game.duplicator_wins(&start, k))
}

struct Game<'s> {
    a: &'s RelStructure,
    b: &'s RelStructure,
    memo: HashMap<(PartialIso, usize), bool>,
}

impl Game<'_> {
    fn duplicator_wins(&mut self, pos: &PartialIso, rounds: usize) -> bool {
        if rounds == 0 {
            return true;
        }
        if let Some(&v) = self.memo.get(&(pos.clone(), rounds)) {
            return v;
        }
        let wins = self.all_spoiler_moves_answered(pos, rounds);
        self.memo.insert((pos.clone(), rounds), wins);
        wins
    }

    fn all_spoiler_moves_answered(&mut self, pos: &PartialIso, rounds: usize) -> bool {
        let (na, nb) = (self.a.universe(), self.b.universe());
        // Picking an element already in play leaves the position unchanged and
        // only burns a round, which never helps Spoiler.
        for x in (0..na).filter(|&x| pos.image(x).is_none()) {
            let answered = (0..nb).any(|y| self.try_move(pos, (x, y), rounds));
            if !answered {
                return false;
            }
        }
        for y in (0..nb).filter(|&y| pos.preimage(y).is_none()) {
            let answered = (0..na).any(|x| self.try_move(pos, (x, y), rounds));
            if !answered {
                return false;
            }
        }
        true
    }

    fn try_move(&mut self, pos: &PartialIso, pair: (u32, u32), rounds: usize) -> bool {
        let Some(next) = pos.extended(pair.0, pair.1) else {
            return false;
        };
        let fresh = next.index_of(pair).expect("pair just added");
        next.preserves_with(fresh, self.a, self.b) && self.duplicator_wins(&next, rounds - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::Signature;

    fn pure_set(n: u32) -> RelStructure {
        RelStructure::empty(n, Signature::empty())
    }

    fn digraph(n: u32, edges: &[(u32, u32)]) -> RelStructure {
        let sig = Signature::new(vec![("E".into(), 2)]).unwrap();
        let mut m = RelStructure::empty(n, sig);
        for &(u, v) in edges {
            m.insert("E", vec![u, v]).unwrap();
        }
        m
    }

    #[test]
    fn structure_is_equivalent_to_itself() {
        let m = digraph(3, &[(0, 1), (1, 2), (2, 2)]);
        for k in 0..6 {
            assert!(ef_equivalent(&m, &m, k).unwrap());
        }
    }

    #[test]
    fn pure_sets_of_different_size() {
        assert!(ef_equivalent(&pure_set(2), &pure_set(3), 2).unwrap());
        assert!(!ef_equivalent(&pure_set(2), &pure_set(3), 3).unwrap());
    }

    #[test]
    fn signature_mismatch_is_an_error() {
        let err = ef_equivalent(&pure_set(1), &digraph(1, &[]), 1).unwrap_err();
        assert!(matches!(err, StructureError::SignatureMismatch(..)));
    }

    #[test]
    fn loop_is_seen_in_one_round() {
        let a = digraph(1, &[(0, 0)]);
        let b = digraph(1, &[]);
        assert!(ef_equivalent(&a, &b, 0).unwrap());
        assert!(!ef_equivalent(&a, &b, 1).unwrap());
    }

    #[test]
    fn path_versus_cycle_orientation() {
        // directed 3-cycle vs transitive tournament on 3 vertices
        let cyc = digraph(3, &[(0, 1), (1, 2), (2, 0)]);
        let tra = digraph(3, &[(0, 1), (1, 2), (0, 2)]);
        assert!(ef_equivalent(&cyc, &tra, 1).unwrap());
        // Spoiler takes the source of the transitive tournament, then an
        // in-neighbour of Duplicator's answer.
        assert!(!ef_equivalent(&cyc, &tra, 2).unwrap());
    }
}
