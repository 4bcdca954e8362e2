use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::DeepTreeError;
use crate::tree::{format_address, parse_address, Address};

/// How pool values are generated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GrowthRule {
    /// `2pk + (k² mod p)` for a prime `p`: a Sidon set, so every difference
    /// of two values occurs once. Values grow quadratically.
    #[default]
    Sidon,
    /// `u₀ = base`, `u_{j+1} = 2u_j + 1`, so `m > 2n` for any `n < m`.
    /// Exhausts `u64` after about 60 values.
    Doubling,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    /// The coded node is a member.
    Plus,
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        })
    }
}

/// Two pairs `(n, m)` with `n < m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Quad {
    pub plus: (u64, u64),
    pub minus: (u64, u64),
}

impl Quad {
    pub fn pair(&self, s: Sign) -> (u64, u64) {
        match s {
            Sign::Plus => self.plus,
            Sign::Minus => self.minus,
        }
    }

    pub fn diff(&self, s: Sign) -> u64 {
        let (n, m) = self.pair(s);
        m - n
    }
}

/// Disjoint pools `V_i` (values `> i`) and, for every `δ ∈ width^{≤depth}`,
/// four values from `V_{lg δ}`. All differences `m − n` are distinct, so a
/// difference alone names `δ` and its sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffAssignment {
    depth_bound: usize,
    width: u32,
    pools: BTreeMap<usize, Vec<u64>>,
    quads: BTreeMap<Address, Quad>,
    by_diff: HashMap<u64, (Address, Sign)>,
}

const MAX_VALUES: u64 = 1 << 24;

pub fn assign_diffs(depth_bound: usize, width: u32) -> Result<DiffAssignment, DeepTreeError> {
    assign_diffs_with(depth_bound, width, GrowthRule::default())
}

pub fn assign_diffs_with(depth_bound: usize, width: u32, rule: GrowthRule) -> Result<DiffAssignment, DeepTreeError> {
    if width == 0 {
        return Err(DeepTreeError::BadParams("width must be positive".into()));
    }
    let per_level: Vec<u64> = (0..=depth_bound)
        .map(|i| (width as u64).checked_pow(i as u32).and_then(|c| c.checked_mul(4)))
        .collect::<Option<_>>()
        .filter(|v: &Vec<u64>| v.iter().sum::<u64>() <= MAX_VALUES)
        .ok_or_else(|| {
            DeepTreeError::BadParams(format!("width {width} at depth {depth_bound} needs too many values"))
        })?;
    let total: u64 = per_level.iter().sum();
    let base = depth_bound as u64 + 2;

    let values: Vec<u64> = match rule {
        GrowthRule::Sidon => {
            let p = next_prime(total);
            (0..total).map(|k| base + 2 * p * k + (k * k) % p).collect()
        }
        GrowthRule::Doubling => {
            let mut v = Vec::with_capacity(total as usize);
            let mut cur = Some(base);
            while (v.len() as u64) < total {
                let Some(x) = cur else {
                    let mut used = 0;
                    let pool = per_level
                        .iter()
                        .position(|&c| {
                            used += c;
                            used > v.len() as u64
                        })
                        .unwrap_or(depth_bound);
                    return Err(DeepTreeError::PoolExhausted {
                        pool,
                        produced: v.len(),
                        needed: total as usize,
                    });
                };
                v.push(x);
                cur = x.checked_mul(2).and_then(|y| y.checked_add(1));
            }
            v
        }
    };

    let mut pools = BTreeMap::new();
    let mut quads = BTreeMap::new();
    let mut rest = values.as_slice();
    for (i, &count) in per_level.iter().enumerate() {
        let (pool, tail) = rest.split_at(count as usize);
        rest = tail;
        for (j, q) in pool.chunks_exact(4).enumerate() {
            quads.insert(
                sequence(j as u64, i, width),
                Quad {
                    plus: (q[0], q[1]),
                    minus: (q[2], q[3]),
                },
            );
        }
        pools.insert(i, pool.to_vec());
    }
    DiffAssignment::from_parts(depth_bound, width, pools, quads)
}

/// The `j`-th sequence of `width^len` in lexicographic order.
fn sequence(mut j: u64, len: usize, width: u32) -> Address {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = (j % width as u64) as u32;
        j /= width as u64;
    }
    out
}

fn next_prime(n: u64) -> u64 {
    let is_prime = |x: u64| x >= 2 && (2..).take_while(|d| d * d <= x).all(|d| !x.is_multiple_of(d));
    (n.max(2)..).find(|&x| is_prime(x)).expect("primes are unbounded")
}

impl DiffAssignment {
    /// Checks every structural invariant of an assignment.
    pub fn from_parts(
        depth_bound: usize,
        width: u32,
        pools: BTreeMap<usize, Vec<u64>>,
        quads: BTreeMap<Address, Quad>,
    ) -> Result<Self, DeepTreeError> {
        let bad = |s: String| Err(DeepTreeError::BadAssignment(s));
        if width == 0 {
            return bad("width must be positive".into());
        }
        let mut owner: HashMap<u64, usize> = HashMap::new();
        for (&i, pool) in &pools {
            for &x in pool {
                if x <= i as u64 {
                    return bad(format!("value {x} in pool {i} is not above {i}"));
                }
                if let Some(j) = owner.insert(x, i) {
                    return bad(format!("value {x} in pools {j} and {i}"));
                }
            }
        }
        let expected: u64 = (0..=depth_bound).map(|i| (width as u64).pow(i as u32)).sum();
        if quads.len() as u64 != expected {
            return bad(format!("{} quads, expected {expected}", quads.len()));
        }
        let mut used = BTreeSet::new();
        let mut by_diff = HashMap::new();
        for (delta, q) in &quads {
            let key = format_address(delta);
            if delta.len() > depth_bound || delta.iter().any(|&x| x >= width) {
                return bad(format!("delta {key:?} outside width^<={depth_bound}"));
            }
            for s in [Sign::Plus, Sign::Minus] {
                let (n, m) = q.pair(s);
                if n >= m {
                    return bad(format!("delta {key:?} {s}: need n < m, got ({n}, {m})"));
                }
                for x in [n, m] {
                    if owner.get(&x) != Some(&delta.len()) {
                        return bad(format!("value {x} of delta {key:?} is not in pool {}", delta.len()));
                    }
                    if !used.insert(x) {
                        return bad(format!("value {x} used twice"));
                    }
                }
                if let Some((other, _)) = by_diff.insert(m - n, (delta.clone(), s)) {
                    return bad(format!(
                        "difference {} repeats (deltas {:?} and {key:?})",
                        m - n,
                        format_address(&other)
                    ));
                }
            }
        }
        Ok(Self {
            depth_bound,
            width,
            pools,
            quads,
            by_diff,
        })
    }

    pub fn depth_bound(&self) -> usize {
        self.depth_bound
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn pools(&self) -> &BTreeMap<usize, Vec<u64>> {
        &self.pools
    }

    pub fn quads(&self) -> &BTreeMap<Address, Quad> {
        &self.quads
    }

    pub fn quad(&self, delta: &[u32]) -> Option<&Quad> {
        self.quads.get(delta)
    }

    /// The `δ` and sign whose pair has difference `diff`.
    pub fn lookup(&self, diff: u64) -> Option<(&Address, Sign)> {
        self.by_diff.get(&diff).map(|(d, s)| (d, *s))
    }

    /// `Φ(diff(δ±)) = lg δ`; `None` off the coded differences.
    pub fn phi(&self, diff: u64) -> Option<usize> {
        self.lookup(diff).map(|(d, _)| d.len())
    }

    /// Every `diff(δ±)`, in `δ` order, plus before minus.
    pub fn differences(&self) -> Vec<u64> {
        self.quads
            .values()
            .flat_map(|q| [q.diff(Sign::Plus), q.diff(Sign::Minus)])
            .collect()
    }

    /// Whether `m − n` determines `(n, m)` over all pairs of pool values.
    pub fn pools_difference_injective(&self) -> bool {
        let mut all: Vec<u64> = self.pools.values().flatten().copied().collect();
        all.sort_unstable();
        let mut seen = std::collections::HashSet::with_capacity(all.len() * all.len() / 2);
        for (k, &m) in all.iter().enumerate() {
            for &n in &all[..k] {
                if !seen.insert(m - n) {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadJson {
    pub plus: [u64; 2],
    pub minus: [u64; 2],
}

/// `{"depth_bound", "width", "pools": {"i": [..]}, "quads": {"δ": {"plus":
/// [n, m], "minus": [n, m]}}}`; `δ` is dotted, the root is `""`. The bound
/// and width default to what the quads cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffAssignmentJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth_bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub width: Option<u32>,
    pub pools: BTreeMap<String, Vec<u64>>,
    pub quads: BTreeMap<String, QuadJson>,
}

impl From<&DiffAssignment> for DiffAssignmentJson {
    fn from(a: &DiffAssignment) -> Self {
        Self {
            depth_bound: Some(a.depth_bound),
            width: Some(a.width),
            pools: a.pools.iter().map(|(i, v)| (i.to_string(), v.clone())).collect(),
            quads: a
                .quads
                .iter()
                .map(|(d, q)| {
                    (
                        format_address(d),
                        QuadJson {
                            plus: [q.plus.0, q.plus.1],
                            minus: [q.minus.0, q.minus.1],
                        },
                    )
                })
                .collect(),
        }
    }
}

impl TryFrom<DiffAssignmentJson> for DiffAssignment {
    type Error = DeepTreeError;

    fn try_from(j: DiffAssignmentJson) -> Result<Self, DeepTreeError> {
        let pools = j
            .pools
            .into_iter()
            .map(|(k, v)| {
                k.parse::<usize>()
                    .map(|i| (i, v))
                    .map_err(|_| DeepTreeError::BadAssignment(format!("pool key {k:?} is not an integer")))
            })
            .collect::<Result<BTreeMap<_, _>, _>>()?;
        let quads = j
            .quads
            .into_iter()
            .map(|(k, q)| {
                Ok((
                    parse_address(&k)?,
                    Quad {
                        plus: (q.plus[0], q.plus[1]),
                        minus: (q.minus[0], q.minus[1]),
                    },
                ))
            })
            .collect::<Result<BTreeMap<_, _>, DeepTreeError>>()?;
        let depth_bound = j
            .depth_bound
            .unwrap_or_else(|| quads.keys().map(Vec::len).max().unwrap_or(0));
        let width = j
            .width
            .unwrap_or_else(|| quads.keys().flatten().max().map_or(1, |&x| x + 1));
        DiffAssignment::from_parts(depth_bound, width, pools, quads)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_only() {
        let a = assign_diffs(0, 3).unwrap();
        assert_eq!(a.quads().len(), 1);
        assert!(a.quad(&[]).is_some());
        assert_eq!(a.pools().len(), 1);
    }

    #[test]
    fn differences_are_distinct_and_phi_reads_length() {
        for depth in 0..=3 {
            for width in 1..=4 {
                let a = assign_diffs(depth, width).unwrap();
                let d = a.differences();
                assert_eq!(d.iter().collect::<BTreeSet<_>>().len(), d.len());
                assert!(a.pools_difference_injective());
                for (delta, q) in a.quads() {
                    assert_eq!(a.phi(q.diff(Sign::Plus)), Some(delta.len()));
                    assert_eq!(a.phi(q.diff(Sign::Minus)), Some(delta.len()));
                    assert_eq!(a.lookup(q.diff(Sign::Minus)), Some((delta, Sign::Minus)));
                }
                for (&i, pool) in a.pools() {
                    assert!(pool.iter().all(|&x| x > i as u64));
                }
            }
        }
    }

    #[test]
    fn doubling_rule_grows_and_exhausts() {
        let a = assign_diffs_with(1, 2, GrowthRule::Doubling).unwrap();
        let mut all: Vec<u64> = a.pools().values().flatten().copied().collect();
        all.sort_unstable();
        assert!(all.windows(2).all(|w| w[1] > 2 * w[0]));
        assert!(a.pools_difference_injective());
        assert!(matches!(
            assign_diffs_with(3, 4, GrowthRule::Doubling),
            Err(DeepTreeError::PoolExhausted { .. })
        ));
    }

    #[test]
    fn json_roundtrip_and_validation() {
        let a = assign_diffs(2, 2).unwrap();
        let j = DiffAssignmentJson::from(&a);
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains("\"pools\":{\"0\":"));
        assert!(text.contains("\"quads\":{\"\":{\"plus\":"));
        let back: DiffAssignmentJson = serde_json::from_str(&text).unwrap();
        assert_eq!(DiffAssignment::try_from(back).unwrap(), a);

        let mut broken = j.clone();
        let q = broken.quads.get_mut("1.0").unwrap();
        q.minus = q.plus;
        assert!(DiffAssignment::try_from(broken).is_err());

        let mut inferred = j;
        inferred.depth_bound = None;
        inferred.width = None;
        assert_eq!(DiffAssignment::try_from(inferred).unwrap(), a);
    }
}
