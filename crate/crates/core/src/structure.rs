//! Finite relational structures and partial isomorphisms between them.

use std::collections::BTreeSet;

use thiserror::Error;

pub type Element = u32;
pub type Tuple = Vec<Element>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("relation {name} has arity {arity} but tuple {tuple:?} has length {len}")]
    ArityMismatch {
        name: String,
        arity: usize,
        tuple: Tuple,
        len: usize,
    },
    #[error("tuple {tuple:?} of relation {name} leaves the universe of size {universe}")]
    OutOfUniverse { name: String, tuple: Tuple, universe: u32 },
    #[error("relation {0} is declared twice")]
    DuplicateRelation(String),
    #[error("unknown relation {0}")]
    UnknownRelation(String),
    #[error("signatures differ: {0:?} vs {1:?}")]
    SignatureMismatch(Signature, Signature),
}

/// Ordered list of relation symbols with their arities.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Signature(Vec<(String, usize)>);

impl Signature {
    pub fn new(symbols: Vec<(String, usize)>) -> Result<Self, StructureError> {
        let mut seen = BTreeSet::new();
        for (name, _) in &symbols {
            if !seen.insert(name.clone()) {
                return Err(StructureError::DuplicateRelation(name.clone()));
            }
        }
        Ok(Self(symbols))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn symbols(&self) -> &[(String, usize)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|(n, _)| n == name)
    }

    pub fn max_arity(&self) -> usize {
        self.0.iter().map(|(_, a)| *a).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelStructure {
    universe: u32,
    signature: Signature,
    relations: Vec<BTreeSet<Tuple>>,
}

impl RelStructure {
    /// A structure with every relation empty.
    pub fn empty(universe: u32, signature: Signature) -> Self {
        let relations = vec![BTreeSet::new(); signature.len()];
        Self {
            universe,
            signature,
            relations,
        }
    }

    pub fn universe(&self) -> u32 {
        self.universe
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn relation(&self, idx: usize) -> &BTreeSet<Tuple> {
        &self.relations[idx]
    }

    pub fn holds(&self, idx: usize, tuple: &[Element]) -> bool {
        self.relations[idx].contains(tuple)
    }

    pub fn insert(&mut self, name: &str, tuple: Tuple) -> Result<(), StructureError> {
        let idx = self
            .signature
            .position(name)
            .ok_or_else(|| StructureError::UnknownRelation(name.to_string()))?;
        self.insert_at(idx, tuple)
    }

    pub fn insert_at(&mut self, idx: usize, tuple: Tuple) -> Result<(), StructureError> {
        let (name, arity) = &self.signature.0[idx];
        if tuple.len() != *arity {
            return Err(StructureError::ArityMismatch {
                name: name.clone(),
                arity: *arity,
                len: tuple.len(),
                tuple,
            });
        }
        if tuple.iter().any(|&x| x >= self.universe) {
            return Err(StructureError::OutOfUniverse {
                name: name.clone(),
                tuple,
                universe: self.universe,
            });
        }
        self.relations[idx].insert(tuple);
        Ok(())
    }

    pub fn toggle_at(&mut self, idx: usize, tuple: Tuple) -> Result<(), StructureError> {
        if !self.relations[idx].remove(&tuple) {
            self.insert_at(idx, tuple)?;
        }
        Ok(())
    }

    /// Image of this structure under the element bijection `perm`.
    pub fn permuted(&self, perm: &[Element]) -> RelStructure {
        assert_eq!(perm.len(), self.universe as usize);
        let relations = self
            .relations
            .iter()
            .map(|rel| {
                rel.iter()
                    .map(|t| t.iter().map(|&x| perm[x as usize]).collect())
                    .collect()
            })
            .collect();
        RelStructure {
            universe: self.universe,
            signature: self.signature.clone(),
            relations,
        }
    }

    pub fn check_same_signature(&self, other: &RelStructure) -> Result<(), StructureError> {
        if self.signature != other.signature {
            return Err(StructureError::SignatureMismatch(
                self.signature.clone(),
                other.signature.clone(),
            ));
        }
        Ok(())
    }
}

/// A finite set of pairs `(a, b)` read as a partial map from one structure
/// to another.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PartialIso {
    pairs: Vec<(Element, Element)>,
}

impl PartialIso {
    pub fn new(mut pairs: Vec<(Element, Element)>) -> Self {
        pairs.sort_unstable();
        pairs.dedup();
        Self { pairs }
    }

    pub fn pairs(&self) -> &[(Element, Element)] {
        &self.pairs
    }

    pub fn image(&self, a: Element) -> Option<Element> {
        self.pairs.iter().find(|p| p.0 == a).map(|p| p.1)
    }

    pub fn preimage(&self, b: Element) -> Option<Element> {
        self.pairs.iter().find(|p| p.1 == b).map(|p| p.0)
    }

    /// The extension by `(a, b)`, or `None` if it stops being functional
    /// and injective.
    pub fn extended(&self, a: Element, b: Element) -> Option<PartialIso> {
        match (self.image(a), self.preimage(b)) {
            (Some(x), _) if x != b => None,
            (_, Some(y)) if y != a => None,
            (Some(_), _) => Some(self.clone()),
            _ => {
                let mut pairs = self.pairs.clone();
                let pos = pairs.binary_search(&(a, b)).unwrap_err();
                pairs.insert(pos, (a, b));
                Some(PartialIso { pairs })
            }
        }
    }

    fn is_functional_and_injective(&self) -> bool {
        let dom: BTreeSet<_> = self.pairs.iter().map(|p| p.0).collect();
        let ran: BTreeSet<_> = self.pairs.iter().map(|p| p.1).collect();
        dom.len() == self.pairs.len() && ran.len() == self.pairs.len()
    }

    /// Whether the map preserves every relation in both directions on all
    /// tuples drawn from its domain.
    pub fn is_partial_iso(&self, a: &RelStructure, b: &RelStructure) -> bool {
        if a.signature != b.signature || !self.is_functional_and_injective() {
            return false;
        }
        let k = self.pairs.len();
        for (idx, (_, arity)) in a.signature.0.iter().enumerate() {
            let mut positions = vec![0usize; *arity];
            if !for_each_tuple(&mut positions, k, &mut |pos| {
                let ta: Tuple = pos.iter().map(|&p| self.pairs[p].0).collect();
                let tb: Tuple = pos.iter().map(|&p| self.pairs[p].1).collect();
                a.holds(idx, &ta) == b.holds(idx, &tb)
            }) {
                return false;
            }
        }
        true
    }

    /// Like [`is_partial_iso`](Self::is_partial_iso) but only inspects
    /// tuples that mention the pair at index `fresh`.
    pub(crate) fn preserves_with(&self, fresh: usize, a: &RelStructure, b: &RelStructure) -> bool {
        let k = self.pairs.len();
        for (idx, (_, arity)) in a.signature.0.iter().enumerate() {
            let mut positions = vec![0usize; *arity];
            if !for_each_tuple(&mut positions, k, &mut |pos| {
                if !pos.contains(&fresh) {
                    return true;
                }
                let ta: Tuple = pos.iter().map(|&p| self.pairs[p].0).collect();
                let tb: Tuple = pos.iter().map(|&p| self.pairs[p].1).collect();
                a.holds(idx, &ta) == b.holds(idx, &tb)
            }) {
                return false;
            }
        }
        true
    }

    pub(crate) fn index_of(&self, pair: (Element, Element)) -> Option<usize> {
        self.pairs.binary_search(&pair).ok()
    }
}

/// Visits every tuple in `0..k` of length `positions.len()`; stops early and
/// returns `false` as soon as `f` does.
pub(crate) fn for_each_tuple(positions: &mut [usize], k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if positions.is_empty() {
        return f(positions);
    }
    if k == 0 {
        return true;
    }
    positions.iter_mut().for_each(|p| *p = 0);
    loop {
        if !f(positions) {
            return false;
        }
        let mut i = positions.len();
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            positions[i] += 1;
            if positions[i] < k {
                break;
            }
            positions[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order2() -> RelStructure {
        let sig = Signature::new(vec![("lt".into(), 2)]).unwrap();
        let mut m = RelStructure::empty(2, sig);
        m.insert("lt", vec![0, 1]).unwrap();
        m
    }

    #[test]
    fn insert_validates_tuples() {
        let mut m = order2();
        assert!(matches!(
            m.insert("lt", vec![0]),
            Err(StructureError::ArityMismatch { .. })
        ));
        assert!(matches!(
            m.insert("lt", vec![0, 2]),
            Err(StructureError::OutOfUniverse { .. })
        ));
        assert!(matches!(
            m.insert("gt", vec![0, 1]),
            Err(StructureError::UnknownRelation(_))
        ));
    }

    #[test]
    fn partial_iso_checks_relations() {
        let m = order2();
        let id = PartialIso::new(vec![(0, 0), (1, 1)]);
        assert!(id.is_partial_iso(&m, &m));
        let swap = PartialIso::new(vec![(0, 1), (1, 0)]);
        assert!(!swap.is_partial_iso(&m, &m));
        // a single point carries no order information
        assert!(PartialIso::new(vec![(0, 1)]).is_partial_iso(&m, &m));
        assert!(!PartialIso::new(vec![(0, 1), (1, 1)]).is_partial_iso(&m, &m));
    }

    #[test]
    fn extension_keeps_injectivity() {
        let p = PartialIso::new(vec![(0, 1)]);
        assert!(p.extended(1, 1).is_none());
        assert!(p.extended(0, 0).is_none());
        assert_eq!(p.extended(0, 1), Some(p.clone()));
        assert_eq!(p.extended(1, 0).unwrap().pairs(), &[(0, 1), (1, 0)]);
    }

    #[test]
    fn permutation_moves_tuples() {
        let m = order2().permuted(&[1, 0]);
        assert!(m.holds(0, &[1, 0]));
        assert!(!m.holds(0, &[0, 1]));
    }
}
