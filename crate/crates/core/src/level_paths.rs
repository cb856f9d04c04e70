//! Two-sided level-0 paths P_{m,l} and the three-factor model
//! B(∞) ⊗ T_λ ⊗ B(−∞) they are computed through.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::crystal::{Crystal, ExtInt, StarredCrystal, Tensor};
use crate::elementary::TCrystal;
use crate::error::{CrystalError, Result};
use crate::path_inf::{
    expand_walls, hp_weight, DomainInfo, HalfPath, PathCrystal, Side, Sign, Uniformity, Wall,
};
use crate::weights::{NodeIndex, Weight};

/// `b₁ ⊗ t_λ ⊗ b₂`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ModElt {
    pub b1: HalfPath,
    pub lam: Weight,
    pub b2: HalfPath,
}

impl ModElt {
    pub fn new(b1: HalfPath, lam: Weight, b2: HalfPath) -> Result<ModElt> {
        if b1.side != Side::Left || b2.side != Side::Right {
            return Err(CrystalError::Precondition(
                "expected left ⊗ t ⊗ right".into(),
            ));
        }
        Ok(ModElt { b1, lam, b2 })
    }

    /// `u_λ = u_∞ ⊗ t_λ ⊗ u_{−∞}`.
    pub fn unit(lam: Weight) -> ModElt {
        ModElt {
            b1: HalfPath::u_inf(),
            lam,
            b2: HalfPath::u_minus_inf(),
        }
    }

    pub fn weight(&self) -> Weight {
        self.lam + hp_weight(&self.b1) + hp_weight(&self.b2)
    }

    pub fn render(&self) -> String {
        format!(
            "{} ⊗ t[{},{},{}] ⊗ {}",
            self.b1, self.lam.a0, self.lam.a1, self.lam.d, self.b2
        )
    }

    fn nested(&self) -> ((HalfPath, Weight), HalfPath) {
        ((self.b1.clone(), self.lam), self.b2.clone())
    }

    fn from_nested(n: ((HalfPath, Weight), HalfPath)) -> ModElt {
        let ((b1, lam), b2) = n;
        ModElt { b1, lam, b2 }
    }
}

impl fmt::Display for ModElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

type ThreeFactor = Tensor<Tensor<PathCrystal, TCrystal>, PathCrystal>;

const MODEL: ThreeFactor = Tensor(Tensor(PathCrystal, TCrystal), PathCrystal);

/// B(∞) ⊗ T_λ ⊗ B(−∞), summed over λ.
#[derive(Debug, Clone, Copy, Default)]
pub struct ModCrystal;

impl Crystal for ModCrystal {
    type Elt = ModElt;

    fn wt(&self, e: &ModElt) -> Weight {
        e.weight()
    }
    fn eps(&self, i: NodeIndex, e: &ModElt) -> ExtInt {
        MODEL.eps(i, &e.nested())
    }
    fn phi(&self, i: NodeIndex, e: &ModElt) -> ExtInt {
        MODEL.phi(i, &e.nested())
    }
    fn e(&self, i: NodeIndex, e: &ModElt) -> Option<ModElt> {
        MODEL.e(i, &e.nested()).map(ModElt::from_nested)
    }
    fn f(&self, i: NodeIndex, e: &ModElt) -> Option<ModElt> {
        MODEL.f(i, &e.nested()).map(ModElt::from_nested)
    }
    fn serial(&self, e: &ModElt) -> String {
        e.render()
    }
}

impl StarredCrystal for ModCrystal {
    fn e_star(&self, i: NodeIndex, e: &ModElt) -> Option<ModElt> {
        self.e(i, &crate::star::star_mod(e))
            .map(|x| crate::star::star_mod(&x))
    }
    fn f_star(&self, i: NodeIndex, e: &ModElt) -> Option<ModElt> {
        self.f(i, &crate::star::star_mod(e))
            .map(|x| crate::star::star_mod(&x))
    }
}

// --- level paths -------------------------------------------------------------------

/// `g_k = 0` for k < 0 and `(−1)^k m` for k ≥ 0.
pub fn ground_value(m: i64, k: i64) -> i64 {
    if k < 0 {
        0
    } else if k % 2 == 0 {
        m
    } else {
        -m
    }
}

/// A path in P_{m,l}: only the entries differing from the ground path are
/// stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "LevelRepr", into = "LevelRepr")]
pub struct LevelPath {
    pub m: i64,
    pub l: i64,
    diff: BTreeMap<i64, i64>,
}

#[derive(Serialize, Deserialize)]
struct LevelRepr {
    m: i64,
    l: i64,
    window_start: i64,
    window: Vec<i64>,
}

impl TryFrom<LevelRepr> for LevelPath {
    type Error = String;
    fn try_from(r: LevelRepr) -> std::result::Result<LevelPath, String> {
        Ok(LevelPath::from_window(r.m, r.l, r.window_start, &r.window))
    }
}

impl From<LevelPath> for LevelRepr {
    fn from(p: LevelPath) -> LevelRepr {
        let (lo, hi) = p.window();
        let window = if lo <= hi {
            (lo..=hi).map(|k| p.get(k)).collect()
        } else {
            Vec::new()
        };
        LevelRepr {
            m: p.m,
            l: p.l,
            window_start: if lo <= hi { lo } else { 0 },
            window,
        }
    }
}

impl LevelPath {
    pub fn from_entries(
        m: i64,
        l: i64,
        entries: impl IntoIterator<Item = (i64, i64)>,
    ) -> LevelPath {
        let diff = entries
            .into_iter()
            .filter(|&(k, v)| v != ground_value(m, k))
            .collect();
        LevelPath { m, l, diff }
    }

    /// Values listed from `start`; positions outside follow the tails.
    pub fn from_window(m: i64, l: i64, start: i64, values: &[i64]) -> LevelPath {
        LevelPath::from_entries(
            m,
            l,
            values
                .iter()
                .enumerate()
                .map(|(j, &v)| (start + j as i64, v)),
        )
    }

    pub fn get(&self, k: i64) -> i64 {
        self.diff
            .get(&k)
            .copied()
            .unwrap_or_else(|| ground_value(self.m, k))
    }

    /// Minimal interval outside which the path equals the ground path
    /// (empty interval `(1, 0)` for ground paths).
    pub fn window(&self) -> (i64, i64) {
        match (self.diff.keys().next(), self.diff.keys().next_back()) {
            (Some(&lo), Some(&hi)) => (lo, hi),
            _ => (1, 0),
        }
    }

    /// The T-factor weight `m(Λ₀−Λ₁) + lδ` carried by the path.
    pub fn label(&self) -> Weight {
        Weight::level_zero(self.m, self.l)
    }

    /// Render as `(...,0,0;2,-2,2,...)`, the semicolon sitting before
    /// position 0.
    pub fn render(&self) -> String {
        let (lo, hi) = self.window();
        let lo = lo.min(0) - 2;
        let hi = hi.max(0) + 3;
        let left: Vec<String> = (lo..0).map(|k| self.get(k).to_string()).collect();
        let right: Vec<String> = (0..=hi).map(|k| self.get(k).to_string()).collect();
        format!("(...,{};{},...)", left.join(","), right.join(","))
    }
}

impl fmt::Display for LevelPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub fn ground_path(m: i64, l: i64) -> LevelPath {
    LevelPath {
        m,
        l,
        diff: BTreeMap::new(),
    }
}

/// Direct weight formula: classical part from the wall sums, δ part from the
/// correction relative to the ground path.
pub fn lp_weight(p: &LevelPath) -> Weight {
    let (lo, hi) = p.window();
    let (lo, hi) = if lo <= hi { (lo, hi + 1) } else { (0, -1) };
    let mut c = p.m;
    let mut d = p.l;
    for k in lo..=hi {
        let (a, b) = (p.get(k - 1), p.get(k));
        let (ga, gb) = (ground_value(p.m, k - 1), ground_value(p.m, k));
        c += (a + b) - (ga + gb);
        d += k * (a.max(-b) - ga.max(-gb));
    }
    Weight::level_zero(c, d)
}

pub fn lp_split(p: &LevelPath) -> ModElt {
    let mut left = BTreeMap::new();
    let mut right = BTreeMap::new();
    for (&k, &v) in &p.diff {
        if k < 0 {
            left.insert(k, v);
        } else {
            right.insert(k, v - ground_value(p.m, k));
        }
    }
    ModElt {
        b1: HalfPath::from_entries(Side::Left, left).expect("left positions"),
        lam: p.label(),
        b2: HalfPath::from_entries(Side::Right, right).expect("right positions"),
    }
}

pub fn lp_join(e: &ModElt) -> Result<LevelPath> {
    if e.lam.level() != 0 {
        return Err(CrystalError::NotLevelZero(e.lam.to_string()));
    }
    let m = e.lam.m();
    let entries = e.b1.entries().iter().map(|(&k, &v)| (k, v)).chain(
        e.b2.entries()
            .iter()
            .map(|(&k, &v)| (k, v + ground_value(m, k))),
    );
    Ok(LevelPath::from_entries(m, e.lam.d, entries))
}

fn via_model(p: &LevelPath, op: impl Fn(&ModElt) -> Option<ModElt>) -> Option<LevelPath> {
    op(&lp_split(p)).map(|e| lp_join(&e).expect("operators preserve the level"))
}

pub fn lp_eps(i: NodeIndex, p: &LevelPath) -> i64 {
    ModCrystal
        .eps(i, &lp_split(p))
        .finite()
        .expect("finite on B(∞)⊗T⊗B(−∞)")
}

pub fn lp_phi(i: NodeIndex, p: &LevelPath) -> i64 {
    ModCrystal
        .phi(i, &lp_split(p))
        .finite()
        .expect("finite on B(∞)⊗T⊗B(−∞)")
}

pub fn lp_etilde(i: NodeIndex, p: &LevelPath) -> Option<LevelPath> {
    via_model(p, |e| ModCrystal.e(i, e))
}

pub fn lp_ftilde(i: NodeIndex, p: &LevelPath) -> Option<LevelPath> {
    via_model(p, |e| ModCrystal.f(i, e))
}

/// Walls at every k with `i_{k−1}+i_k ≠ 0`.
pub fn lp_walls(p: &LevelPath) -> Vec<Wall> {
    let (lo, hi) = p.window();
    let (lo, hi) = if lo <= hi {
        (lo.min(0), (hi + 1).max(0))
    } else {
        (0, 0)
    };
    (lo..=hi)
        .filter_map(|k| {
            let s = p.get(k - 1) + p.get(k);
            Sign::of(s).map(|sign| Wall {
                position: k,
                sign,
                count: s.unsigned_abs(),
            })
        })
        .collect()
}

/// The finite domains d₁…d_{n−1} between consecutive expanded walls.
pub fn lp_domains(p: &LevelPath) -> Vec<DomainInfo> {
    let w = expand_walls(&lp_walls(p));
    w.windows(2)
        .enumerate()
        .map(|(j, pair)| {
            let len = pair[1] - pair[0];
            let v = if len > 0 { p.get(pair[0]) } else { 0 };
            DomainInfo {
                index: j + 1,
                start: pair[0],
                len,
                magnitude: v.abs(),
                sign: Sign::of(v),
            }
        })
        .collect()
}

pub fn wall_signs_uniform(p: &LevelPath) -> Uniformity {
    Uniformity::of(&lp_walls(p))
}

/// P_{m,l} for all (m, l), with operators routed through the three-factor model.
#[derive(Debug, Clone, Copy, Default)]
pub struct LevelCrystal;

impl Crystal for LevelCrystal {
    type Elt = LevelPath;

    fn wt(&self, p: &LevelPath) -> Weight {
        lp_weight(p)
    }
    fn eps(&self, i: NodeIndex, p: &LevelPath) -> ExtInt {
        ExtInt::Fin(lp_eps(i, p))
    }
    fn phi(&self, i: NodeIndex, p: &LevelPath) -> ExtInt {
        ExtInt::Fin(lp_phi(i, p))
    }
    fn e(&self, i: NodeIndex, p: &LevelPath) -> Option<LevelPath> {
        lp_etilde(i, p)
    }
    fn f(&self, i: NodeIndex, p: &LevelPath) -> Option<LevelPath> {
        lp_ftilde(i, p)
    }
    fn serial(&self, p: &LevelPath) -> String {
        format!("[{},{}]{}", p.m, p.l, p.render())
    }
}

impl StarredCrystal for LevelCrystal {
    fn e_star(&self, i: NodeIndex, p: &LevelPath) -> Option<LevelPath> {
        lp_etilde(i, &crate::star::star_level(p)).map(|x| crate::star::star_level(&x))
    }
    fn f_star(&self, i: NodeIndex, p: &LevelPath) -> Option<LevelPath> {
        lp_ftilde(i, &crate::star::star_level(p)).map(|x| crate::star::star_level(&x))
    }
}
