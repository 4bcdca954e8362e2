use super::build::build_code;
use super::decode::decode_tree_from_code;
use super::{CodeError, Variant};
use crate::bipartite::BipartiteGraph;
use crate::canon::trees_isomorphic;
use crate::tree::FinTree;

pub const MIN_SCALE_RATIO: usize = 8;

/// Strictly increasing block parameters, each at least `ratio` times the
/// previous one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaleSequence {
    values: Vec<usize>,
    ratio: usize,
}

impl ScaleSequence {
    pub fn new(values: Vec<usize>) -> Result<Self, CodeError> {
        Self::with_ratio(values, MIN_SCALE_RATIO)
    }

    pub fn with_ratio(values: Vec<usize>, ratio: usize) -> Result<Self, CodeError> {
        if ratio < MIN_SCALE_RATIO {
            return Err(CodeError::BadScales(format!(
                "ratio {ratio} is below {MIN_SCALE_RATIO}"
            )));
        }
        if values.is_empty() {
            return Err(CodeError::BadScales("no scales given".into()));
        }
        if values[0] == 0 {
            return Err(CodeError::ZeroM);
        }
        for w in values.windows(2) {
            if w[1] < w[0].saturating_mul(ratio) {
                return Err(CodeError::BadScales(format!(
                    "{} follows {} but must be at least {}",
                    w[1],
                    w[0],
                    w[0].saturating_mul(ratio)
                )));
            }
        }
        Ok(Self { values, ratio })
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn ratio(&self) -> usize {
        self.ratio
    }
}

/// Disjoint union of the codes of `t` at every scale, in scale order.
pub fn build_multiscale(t: &FinTree, scales: &ScaleSequence, variant: Variant) -> Result<BipartiteGraph, CodeError> {
    let mut out = BipartiteGraph::default();
    for &m in scales.values() {
        out = out.disjoint_union(&build_code(t, m, variant)?.graph);
    }
    Ok(out)
}

/// Splits `g` into connected components, reads each component's block
/// parameter off its minimum valence (a singleton class has exactly `7m`
/// neighbours and no vertex has fewer), decodes every component and
/// requires all results to be isomorphic.
pub fn decode_multiscale(g: &BipartiteGraph, hint: Option<&ScaleSequence>) -> Result<FinTree, CodeError> {
    let comps = g.components();
    if comps.is_empty() {
        return Err(CodeError::EmptyGraph);
    }
    let mut levels: Vec<(usize, BipartiteGraph)> = Vec::with_capacity(comps.len());
    for comp in &comps {
        let sub = g.induced(comp);
        let m = scale_of(&sub)?;
        levels.push((m, sub));
    }
    levels.sort_by_key(|(m, _)| *m);
    if let Some(h) = hint {
        let found: Vec<usize> = levels.iter().map(|(m, _)| *m).collect();
        if found != h.values() {
            return Err(CodeError::ScaleMismatch {
                expected: h.values().to_vec(),
                found,
            });
        }
    }
    let mut decoded: Vec<(usize, FinTree)> = Vec::with_capacity(levels.len());
    for (m, sub) in &levels {
        decoded.push((*m, decode_tree_from_code(sub, *m)?));
    }
    let (m0, first) = &decoded[0];
    for (m, t) in &decoded[1..] {
        if !trees_isomorphic(first, t) {
            return Err(CodeError::LevelsDisagree(*m0, *m));
        }
    }
    Ok(decoded.swap_remove(0).1)
}

fn scale_of(g: &BipartiteGraph) -> Result<usize, CodeError> {
    let adj = g.adjacency();
    let min = (0..adj.len()).map(|v| adj.degree(v)).min().unwrap_or(0);
    if min == 0 || min % 7 != 0 {
        return Err(CodeError::BadValence(min));
    }
    Ok(min / 7)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcode::build_equiv;

    #[test]
    fn scales_need_the_ratio() {
        assert!(ScaleSequence::new(vec![1, 8, 64]).is_ok());
        assert!(ScaleSequence::new(vec![1, 7]).is_err());
        assert!(ScaleSequence::new(vec![]).is_err());
        assert!(ScaleSequence::with_ratio(vec![1], 4).is_err());
    }

    #[test]
    fn single_scale_matches_plain_code() {
        let t = FinTree::path(2);
        let s = ScaleSequence::new(vec![1]).unwrap();
        let g = build_multiscale(&t, &s, Variant::Paired).unwrap();
        assert_eq!(g, build_code(&t, 1, Variant::Paired).unwrap().graph);
        assert_eq!(
            decode_multiscale(&g, Some(&s)).unwrap(),
            decode_tree_from_code(&g, 1).unwrap()
        );
    }

    #[test]
    fn two_scales_roundtrip() {
        let t = FinTree::path(2);
        let s = ScaleSequence::new(vec![1, 8]).unwrap();
        let g = build_multiscale(&t, &s, Variant::Paired).unwrap();
        let classes: usize = s
            .values()
            .iter()
            .map(|&m| build_equiv(&t, m, Variant::Paired).unwrap().len())
            .sum();
        assert_eq!(g.vertex_count(), classes);
        assert_eq!(g.components().len(), 2);
        assert!(trees_isomorphic(&decode_multiscale(&g, Some(&s)).unwrap(), &t));
    }

    #[test]
    fn wrong_hint_is_reported() {
        let t = FinTree::new();
        let g = build_multiscale(&t, &ScaleSequence::new(vec![1, 8]).unwrap(), Variant::Paired).unwrap();
        let other = ScaleSequence::new(vec![1, 9]).unwrap();
        assert!(matches!(
            decode_multiscale(&g, Some(&other)),
            Err(CodeError::ScaleMismatch { .. })
        ));
    }
}
