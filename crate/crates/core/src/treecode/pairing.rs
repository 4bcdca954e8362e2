//! Cantor pairing and the shifted pairing used to turn (level, color)
//! pairs into gadget depths.

use serde::{Deserialize, Serialize};

/// `(a + b)(a + b + 1) / 2 + b`. Panics on `u64` overflow.
pub fn cantor_pair(a: u64, b: u64) -> u64 {
    let s = a.checked_add(b).expect("pairing overflow");
    s.checked_mul(s + 1).expect("pairing overflow") / 2 + b
}

pub fn cantor_unpair(z: u64) -> (u64, u64) {
    // largest w with w(w+1)/2 <= z
    let mut w = ((8 * z as u128 + 1).isqrt() as u64 - 1) / 2;
    while w * (w + 1) / 2 > z {
        w -= 1;
    }
    let b = z - w * (w + 1) / 2;
    (w - b, b)
}

/// A bijection `ω × ω → ω ∖ {0, 1}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairingFn {
    #[default]
    #[serde(rename = "cantor+2")]
    CantorPlusTwo,
}

impl PairingFn {
    pub fn name(&self) -> &'static str {
        match self {
            PairingFn::CantorPlusTwo => "cantor+2",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        (name == "cantor+2").then_some(PairingFn::CantorPlusTwo)
    }

    pub fn apply(&self, n: u64, j: u64) -> u64 {
        match self {
            PairingFn::CantorPlusTwo => cantor_pair(n, j) + 2,
        }
    }

    /// Inverse of [`apply`](Self::apply); `None` for 0 and 1.
    pub fn invert(&self, k: u64) -> Option<(u64, u64)> {
        match self {
            PairingFn::CantorPlusTwo => k.checked_sub(2).map(cantor_unpair),
        }
    }
}
