//! Elementary crystals: the one-element crystals t_λ, the string crystals
//! B_i, and the path crystal B_∞.

use serde::{Deserialize, Serialize};

use crate::crystal::{Crystal, ExtInt};
use crate::weights::{simple_root, NodeIndex, Weight};

/// `T_λ = {t_λ}`: weight λ, ε = φ = −∞, all operators vanish.
#[derive(Debug, Clone, Copy, Default)]
pub struct TCrystal;

impl Crystal for TCrystal {
    type Elt = Weight;

    fn wt(&self, b: &Weight) -> Weight {
        *b
    }
    fn eps(&self, _: NodeIndex, _: &Weight) -> ExtInt {
        ExtInt::NegInf
    }
    fn phi(&self, _: NodeIndex, _: &Weight) -> ExtInt {
        ExtInt::NegInf
    }
    fn e(&self, _: NodeIndex, _: &Weight) -> Option<Weight> {
        None
    }
    fn f(&self, _: NodeIndex, _: &Weight) -> Option<Weight> {
        None
    }
    fn serial(&self, b: &Weight) -> String {
        format!("t[{},{},{}]", b.a0, b.a1, b.d)
    }
}

/// `t_λ ⊗ t_μ ≅ t_{λ+μ}`.
pub fn t_tensor(lam: Weight, mu: Weight) -> Weight {
    lam + mu
}

/// `(n)_i ∈ B_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BiElt {
    pub color: NodeIndex,
    pub n: i64,
}

impl BiElt {
    pub fn new(color: NodeIndex, n: i64) -> BiElt {
        BiElt { color, n }
    }
}

/// The union of the string crystals B₀ and B₁; each element carries its color.
#[derive(Debug, Clone, Copy, Default)]
pub struct BiCrystal;

impl Crystal for BiCrystal {
    type Elt = BiElt;

    fn wt(&self, b: &BiElt) -> Weight {
        b.n * simple_root(b.color)
    }
    fn eps(&self, i: NodeIndex, b: &BiElt) -> ExtInt {
        if i == b.color {
            ExtInt::Fin(-b.n)
        } else {
            ExtInt::NegInf
        }
    }
    fn phi(&self, i: NodeIndex, b: &BiElt) -> ExtInt {
        if i == b.color {
            ExtInt::Fin(b.n)
        } else {
            ExtInt::NegInf
        }
    }
    fn e(&self, i: NodeIndex, b: &BiElt) -> Option<BiElt> {
        (i == b.color).then(|| BiElt::new(i, b.n + 1))
    }
    fn f(&self, i: NodeIndex, b: &BiElt) -> Option<BiElt> {
        (i == b.color).then(|| BiElt::new(i, b.n - 1))
    }
    fn serial(&self, b: &BiElt) -> String {
        format!("({})_{}", b.n, b.color)
    }
}

/// `B_∞ = {b(n) : n ∈ ℤ}` with weights taken modulo δ.
#[derive(Debug, Clone, Copy, Default)]
pub struct BInf;

pub fn binf_wt(n: i64) -> Weight {
    Weight::new(2 * n, -2 * n, 0)
}

pub fn binf_eps(i: NodeIndex, n: i64) -> i64 {
    if i == NodeIndex::I1 {
        n
    } else {
        -n
    }
}

pub fn binf_phi(i: NodeIndex, n: i64) -> i64 {
    -binf_eps(i, n)
}

/// ẽ₁, f̃₀ lower the entry; ẽ₀, f̃₁ raise it.
pub fn binf_op(i: NodeIndex, raise: bool, n: i64) -> i64 {
    let up = (i == NodeIndex::I1) != raise;
    if up {
        n + 1
    } else {
        n - 1
    }
}

impl Crystal for BInf {
    type Elt = i64;

    fn wt(&self, n: &i64) -> Weight {
        binf_wt(*n)
    }
    fn eps(&self, i: NodeIndex, n: &i64) -> ExtInt {
        ExtInt::Fin(binf_eps(i, *n))
    }
    fn phi(&self, i: NodeIndex, n: &i64) -> ExtInt {
        ExtInt::Fin(binf_phi(i, *n))
    }
    fn e(&self, i: NodeIndex, n: &i64) -> Option<i64> {
        Some(binf_op(i, true, *n))
    }
    fn f(&self, i: NodeIndex, n: &i64) -> Option<i64> {
        Some(binf_op(i, false, *n))
    }
    fn serial(&self, n: &i64) -> String {
        format!("b({n})")
    }
    fn classical_weights(&self) -> bool {
        true
    }
}
