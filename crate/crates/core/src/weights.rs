use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{CrystalError, Result};

/// One of the two nodes of the affine sl₂ Dynkin diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct NodeIndex(u8);

impl NodeIndex {
    pub const I0: NodeIndex = NodeIndex(0);
    pub const I1: NodeIndex = NodeIndex(1);
    pub const ALL: [NodeIndex; 2] = [NodeIndex::I0, NodeIndex::I1];

    pub fn new(i: u8) -> Option<NodeIndex> {
        (i < 2).then_some(NodeIndex(i))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn other(self) -> NodeIndex {
        NodeIndex(1 - self.0)
    }

    /// σ(1) = +1, σ(0) = −1.
    pub fn sigma(self) -> i64 {
        if self.0 == 1 {
            1
        } else {
            -1
        }
    }
}

impl TryFrom<u8> for NodeIndex {
    type Error = String;
    fn try_from(v: u8) -> std::result::Result<Self, String> {
        NodeIndex::new(v).ok_or_else(|| format!("node index must be 0 or 1, got {v}"))
    }
}

impl From<NodeIndex> for u8 {
    fn from(i: NodeIndex) -> u8 {
        i.0
    }
}

impl fmt::Display for NodeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `a0·Λ₀ + a1·Λ₁ + d·δ`.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
pub struct Weight {
    #[serde(rename = "L0")]
    pub a0: i64,
    #[serde(rename = "L1")]
    pub a1: i64,
    #[serde(rename = "delta")]
    pub d: i64,
}

impl Weight {
    pub const ZERO: Weight = Weight { a0: 0, a1: 0, d: 0 };
    pub const DELTA: Weight = Weight { a0: 0, a1: 0, d: 1 };

    pub const fn new(a0: i64, a1: i64, d: i64) -> Weight {
        Weight { a0, a1, d }
    }

    /// `m(Λ₀ − Λ₁) + lδ`.
    pub const fn level_zero(m: i64, l: i64) -> Weight {
        Weight {
            a0: m,
            a1: -m,
            d: l,
        }
    }

    pub fn level(&self) -> i64 {
        self.a0 + self.a1
    }

    /// Coefficient `m` of `Λ₀ − Λ₁` for a level-0 weight.
    pub fn m(&self) -> i64 {
        self.a0
    }

    pub fn pairing(&self, i: NodeIndex) -> i64 {
        pairing(i, *self)
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        Weight::new(self.a0 + o.a0, self.a1 + o.a1, self.d + o.d)
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, o: Weight) -> Weight {
        Weight::new(self.a0 - o.a0, self.a1 - o.a1, self.d - o.d)
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight::new(-self.a0, -self.a1, -self.d)
    }
}

impl Mul<Weight> for i64 {
    type Output = Weight;
    fn mul(self, w: Weight) -> Weight {
        Weight::new(self * w.a0, self * w.a1, self * w.d)
    }
}

impl AddAssign for Weight {
    fn add_assign(&mut self, o: Weight) {
        *self = *self + o;
    }
}

impl SubAssign for Weight {
    fn sub_assign(&mut self, o: Weight) {
        *self = *self - o;
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}Λ0{:+}Λ1{:+}δ", self.a0, self.a1, self.d)
    }
}

pub fn pairing(i: NodeIndex, w: Weight) -> i64 {
    if i == NodeIndex::I0 {
        w.a0
    } else {
        w.a1
    }
}

pub fn simple_root(i: NodeIndex) -> Weight {
    if i == NodeIndex::I0 {
        Weight::new(2, -2, 1)
    } else {
        Weight::new(-2, 2, 0)
    }
}

pub fn reflect(i: NodeIndex, w: Weight) -> Weight {
    w - pairing(i, w) * simple_root(i)
}

/// Canonical representative of the W-orbit of a level-0 weight, together with
/// the reflections carrying `w` to it (apply first to last).
pub fn orbit_canonical(w: Weight) -> Result<(Weight, Vec<NodeIndex>)> {
    if w.level() != 0 {
        return Err(CrystalError::NotLevelZero(w.to_string()));
    }
    let mut cur = w;
    let mut word = Vec::new();
    if cur.m() == 0 {
        return Ok((cur, word));
    }
    if cur.m() < 0 {
        cur = reflect(NodeIndex::I1, cur);
        word.push(NodeIndex::I1);
    }
    let m = cur.m();
    // s₁s₀ lowers l by m, s₀s₁ raises it by m
    while cur.d >= m {
        cur = reflect(NodeIndex::I1, reflect(NodeIndex::I0, cur));
        word.extend([NodeIndex::I0, NodeIndex::I1]);
    }
    while cur.d < 0 {
        cur = reflect(NodeIndex::I0, reflect(NodeIndex::I1, cur));
        word.extend([NodeIndex::I1, NodeIndex::I0]);
    }
    Ok((cur, word))
}

/// Applies a reflection word first to last.
pub fn apply_reflections(word: &[NodeIndex], w: Weight) -> Weight {
    word.iter().fold(w, |acc, &i| reflect(i, acc))
}
