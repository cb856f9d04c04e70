//! Half-infinite paths: P(∞) (left, positions k ≤ −1) and P(−∞) (right,
//! positions k ≥ 0). Right paths are handled through the flip
//! `j_k = −i_{−k−1}`, which identifies P(−∞) with P(∞)^∧.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::crystal::{Crystal, ExtInt, StarredCrystal};
use crate::elementary::binf_op;
use crate::error::{CrystalError, Result};
use crate::weights::{pairing, NodeIndex, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "HalfPathRepr")]
pub struct HalfPath {
    pub side: Side,
    entries: BTreeMap<i64, i64>,
}

#[derive(Deserialize)]
struct HalfPathRepr {
    side: Side,
    entries: BTreeMap<String, i64>,
}

impl TryFrom<HalfPathRepr> for HalfPath {
    type Error = String;
    fn try_from(r: HalfPathRepr) -> std::result::Result<HalfPath, String> {
        let mut entries = BTreeMap::new();
        for (k, v) in r.entries {
            let k: i64 = k.parse().map_err(|_| format!("bad position key {k:?}"))?;
            entries.insert(k, v);
        }
        HalfPath::from_entries(r.side, entries).map_err(|e| e.to_string())
    }
}

/// Sign of a wall.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn of(v: i64) -> Option<Sign> {
        match v.signum() {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if *self == Sign::Plus { "+" } else { "-" })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Wall {
    pub position: i64,
    pub sign: Sign,
    pub count: u64,
}

/// Whether all walls of a path carry one sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Uniformity {
    NoWalls,
    Uniform(Sign),
    Mixed,
}

impl Uniformity {
    pub fn of(walls: &[Wall]) -> Uniformity {
        let mut signs = walls.iter().map(|w| w.sign);
        match signs.next() {
            None => Uniformity::NoWalls,
            Some(s) if signs.all(|t| t == s) => Uniformity::Uniform(s),
            Some(_) => Uniformity::Mixed,
        }
    }

    pub fn is_uniform(self) -> bool {
        !matches!(self, Uniformity::Mixed)
    }

    pub fn sign(self) -> Option<Sign> {
        match self {
            Uniformity::Uniform(s) => Some(s),
            _ => None,
        }
    }
}

/// A finite domain between two consecutive (multiplicity-expanded) walls.
/// `index` is the domain number j; `magnitude`/`sign` describe the entry at
/// `start` (zero for empty domains).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DomainInfo {
    pub index: usize,
    pub start: i64,
    pub len: i64,
    pub magnitude: i64,
    pub sign: Option<Sign>,
}

/// Expands walls by multiplicity into an ascending position list.
pub fn expand_walls(walls: &[Wall]) -> Vec<i64> {
    walls
        .iter()
        .flat_map(|w| std::iter::repeat_n(w.position, w.count as usize))
        .collect()
}

impl HalfPath {
    pub fn from_entries(side: Side, entries: BTreeMap<i64, i64>) -> Result<HalfPath> {
        let mut clean = BTreeMap::new();
        for (k, v) in entries {
            let ok = match side {
                Side::Left => k <= -1,
                Side::Right => k >= 0,
            };
            if !ok {
                return Err(CrystalError::Precondition(format!(
                    "position {k} not allowed on a {side:?} path"
                )));
            }
            if v != 0 {
                clean.insert(k, v);
            }
        }
        Ok(HalfPath {
            side,
            entries: clean,
        })
    }

    pub fn u_inf() -> HalfPath {
        HalfPath {
            side: Side::Left,
            entries: BTreeMap::new(),
        }
    }

    pub fn u_minus_inf() -> HalfPath {
        HalfPath {
            side: Side::Right,
            entries: BTreeMap::new(),
        }
    }

    /// Left path from values listed left to right, the last one at position −1.
    pub fn left(values: &[i64]) -> HalfPath {
        let n = values.len() as i64;
        let entries = values
            .iter()
            .enumerate()
            .map(|(j, &v)| (j as i64 - n, v))
            .collect();
        HalfPath::from_entries(Side::Left, entries).expect("left positions")
    }

    /// Right path from values listed left to right, the first one at position 0.
    pub fn right(values: &[i64]) -> HalfPath {
        let entries = values
            .iter()
            .enumerate()
            .map(|(j, &v)| (j as i64, v))
            .collect();
        HalfPath::from_entries(Side::Right, entries).expect("right positions")
    }

    pub fn get(&self, k: i64) -> i64 {
        self.entries.get(&k).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<i64, i64> {
        &self.entries
    }

    pub fn is_unit(&self) -> bool {
        self.entries.is_empty()
    }

    fn set(&mut self, k: i64, v: i64) {
        if v == 0 {
            self.entries.remove(&k);
        } else {
            self.entries.insert(k, v);
        }
    }

    pub fn min_pos(&self) -> Option<i64> {
        self.entries.keys().next().copied()
    }

    pub fn max_pos(&self) -> Option<i64> {
        self.entries.keys().next_back().copied()
    }

    pub fn sum(&self) -> i64 {
        self.entries.values().sum()
    }

    /// Text form, e.g. `(...,0,1,-1)` for left paths and `(1,-1,0,...)` for right.
    pub fn render(&self) -> String {
        match self.side {
            Side::Left => {
                let lo = self.min_pos().unwrap_or(-1);
                let vals: Vec<String> = (lo..=-1).map(|k| self.get(k).to_string()).collect();
                format!("(...,0,{})", vals.join(","))
            }
            Side::Right => {
                let hi = self.max_pos().unwrap_or(0);
                let vals: Vec<String> = (0..=hi).map(|k| self.get(k).to_string()).collect();
                format!("({},0,...)", vals.join(","))
            }
        }
    }
}

impl fmt::Display for HalfPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `j_k = −i_{−k−1}`; swaps sides and is an involution.
pub fn half_flip(b: &HalfPath) -> HalfPath {
    let side = match b.side {
        Side::Left => Side::Right,
        Side::Right => Side::Left,
    };
    let entries = b.entries.iter().map(|(&k, &v)| (-k - 1, -v)).collect();
    HalfPath { side, entries }
}

// --- left signature rule ---------------------------------------------------

/// `A^{(i)}_k(b) = σ(i)(i_k + 2Σ_{j<k} i_j)` for a left path.
pub fn a_func(i: NodeIndex, k: i64, b: &HalfPath) -> i64 {
    debug_assert_eq!(b.side, Side::Left);
    let below: i64 = b.entries.range(..k).map(|(_, v)| v).sum();
    i.sigma() * (b.get(k) + 2 * below)
}

/// The signature values over the window `[lo−1, −1]`, where position lo−1
/// stands for the all-zero left region (value 0).
fn left_signature(i: NodeIndex, b: &HalfPath) -> Vec<(i64, i64)> {
    let lo = b.min_pos().unwrap_or(0).min(0);
    let mut out = Vec::with_capacity((-lo + 1) as usize);
    let mut below = 0;
    for k in (lo - 1)..=-1 {
        let v = b.get(k);
        out.push((k, i.sigma() * (v + 2 * below)));
        below += v;
    }
    out
}

fn left_eps(i: NodeIndex, b: &HalfPath) -> i64 {
    left_signature(i, b)
        .iter()
        .map(|&(_, a)| a)
        .max()
        .unwrap_or(0)
        .max(0)
}

fn left_e(i: NodeIndex, b: &HalfPath) -> Option<HalfPath> {
    let sig = left_signature(i, b);
    let max = sig.iter().map(|&(_, a)| a).max().unwrap_or(0);
    if max <= 0 {
        // the leftmost maximum lies in the zero region
        return None;
    }
    let (k, _) = sig.iter().find(|&&(_, a)| a == max)?;
    let mut out = b.clone();
    out.set(*k, binf_op(i, true, b.get(*k)));
    Some(out)
}

fn left_f(i: NodeIndex, b: &HalfPath) -> HalfPath {
    let sig = left_signature(i, b);
    let max = sig.iter().map(|&(_, a)| a).max().unwrap_or(0);
    let &(k, _) = sig
        .iter()
        .rev()
        .find(|&&(_, a)| a == max)
        .expect("nonempty signature");
    let mut out = b.clone();
    out.set(k, binf_op(i, false, b.get(k)));
    out
}

fn left_weight(b: &HalfPath) -> Weight {
    let s = b.sum();
    let lo = b.min_pos().unwrap_or(0);
    let mut d = 0;
    for k in lo..=-1 {
        d += k * b.get(k - 1).max(-b.get(k));
    }
    Weight::new(2 * s, -2 * s, d)
}

// --- public operations (both sides) --------------------------------------------

pub fn hp_weight(b: &HalfPath) -> Weight {
    match b.side {
        Side::Left => left_weight(b),
        Side::Right => -left_weight(&half_flip(b)),
    }
}

pub fn hp_eps(i: NodeIndex, b: &HalfPath) -> i64 {
    match b.side {
        Side::Left => left_eps(i, b),
        Side::Right => {
            let fb = half_flip(b);
            left_eps(i, &fb) + pairing(i, left_weight(&fb))
        }
    }
}

pub fn hp_phi(i: NodeIndex, b: &HalfPath) -> i64 {
    hp_eps(i, b) + pairing(i, hp_weight(b))
}

pub fn hp_etilde(i: NodeIndex, b: &HalfPath) -> Option<HalfPath> {
    match b.side {
        Side::Left => left_e(i, b),
        Side::Right => Some(half_flip(&left_f(i, &half_flip(b)))),
    }
}

pub fn hp_ftilde(i: NodeIndex, b: &HalfPath) -> Option<HalfPath> {
    match b.side {
        Side::Left => Some(left_f(i, b)),
        Side::Right => left_e(i, &half_flip(b)).map(|x| half_flip(&x)),
    }
}

/// Walls of a left path at k ≤ −1 (`i_{k−1}+i_k ≠ 0`); of a right path at
/// k ≥ 1 (`j_{k−1}+j_k ≠ 0`).
pub fn hp_walls(b: &HalfPath) -> Vec<Wall> {
    let range = match b.side {
        Side::Left => b.min_pos().unwrap_or(0)..=-1,
        Side::Right => 1..=b.max_pos().map_or(0, |h| h + 1),
    };
    range
        .filter_map(|k| {
            let s = b.get(k - 1) + b.get(k);
            Sign::of(s).map(|sign| Wall {
                position: k,
                sign,
                count: s.unsigned_abs(),
            })
        })
        .collect()
}

/// Finite domains in position order. Left paths number them 1..n from the
/// left (the last one ending at −1); right paths number them n..1 from the
/// left (the first one starting at 0).
pub fn hp_domains(b: &HalfPath) -> Vec<DomainInfo> {
    let p = expand_walls(&hp_walls(b));
    let n = p.len();
    let bounds: Vec<(i64, i64)> = match b.side {
        Side::Left => (0..n)
            .map(|j| (p[j], if j + 1 < n { p[j + 1] } else { 0 }))
            .collect(),
        Side::Right => (0..n)
            .map(|j| (if j == 0 { 0 } else { p[j - 1] }, p[j]))
            .collect(),
    };
    bounds
        .into_iter()
        .enumerate()
        .map(|(j, (start, end))| {
            let index = match b.side {
                Side::Left => j + 1,
                Side::Right => n - j,
            };
            let len = end - start;
            let v = if len > 0 { b.get(start) } else { 0 };
            DomainInfo {
                index,
                start,
                len,
                magnitude: v.abs(),
                sign: Sign::of(v),
            }
        })
        .collect()
}

pub fn hp_length(b: &HalfPath) -> i64 {
    hp_domains(b).iter().map(|d| d.len).sum()
}

pub fn wall_uniformity(b: &HalfPath) -> Uniformity {
    Uniformity::of(&hp_walls(b))
}

/// Writes a uniform-wall left path as `f̃_{i_1}^{k_1} ⋯ f̃_{i_r}^{k_r} u_∞`;
/// the returned word lists the factors outermost first.
pub fn string_factorization(b: &HalfPath) -> Result<Vec<(NodeIndex, u64)>> {
    if b.side != Side::Left {
        return Err(CrystalError::Precondition(
            "string factorization needs a left path".into(),
        ));
    }
    let mut word = Vec::new();
    let mut cur = b.clone();
    while !cur.is_unit() {
        let i = match wall_uniformity(&cur) {
            Uniformity::Uniform(Sign::Minus) => NodeIndex::I0,
            Uniformity::Uniform(Sign::Plus) => NodeIndex::I1,
            _ => {
                return Err(CrystalError::Precondition(format!(
                    "walls of {} carry mixed signs",
                    cur
                )))
            }
        };
        let k = hp_eps(i, &cur);
        if k <= 0 {
            return Err(CrystalError::Reduction(format!("no {i}-string at {cur}")));
        }
        for _ in 0..k {
            cur = hp_etilde(i, &cur).ok_or_else(|| CrystalError::Reduction(cur.render()))?;
        }
        word.push((i, k as u64));
    }
    Ok(word)
}

/// Replays an outermost-first word of f̃-powers on `u_∞`.
pub fn replay_f_word(word: &[(NodeIndex, u64)]) -> HalfPath {
    let mut cur = HalfPath::u_inf();
    for &(i, k) in word.iter().rev() {
        for _ in 0..k {
            cur = left_f(i, &cur);
        }
    }
    cur
}

// --- crystal objects --------------------------------------------------------------

fn star_of(b: &HalfPath) -> HalfPath {
    match b.side {
        Side::Left => crate::star::star_binf(b),
        Side::Right => crate::star::star_bminf(b),
    }
}

/// P(∞) and P(−∞) as crystals; the side is carried by each element.
#[derive(Debug, Clone, Copy, Default)]
pub struct PathCrystal;

impl Crystal for PathCrystal {
    type Elt = HalfPath;

    fn wt(&self, b: &HalfPath) -> Weight {
        hp_weight(b)
    }
    fn eps(&self, i: NodeIndex, b: &HalfPath) -> ExtInt {
        ExtInt::Fin(hp_eps(i, b))
    }
    fn phi(&self, i: NodeIndex, b: &HalfPath) -> ExtInt {
        ExtInt::Fin(hp_phi(i, b))
    }
    fn e(&self, i: NodeIndex, b: &HalfPath) -> Option<HalfPath> {
        hp_etilde(i, b)
    }
    fn f(&self, i: NodeIndex, b: &HalfPath) -> Option<HalfPath> {
        hp_ftilde(i, b)
    }
    fn serial(&self, b: &HalfPath) -> String {
        b.render()
    }
}

impl StarredCrystal for PathCrystal {
    fn e_star(&self, i: NodeIndex, b: &HalfPath) -> Option<HalfPath> {
        hp_etilde(i, &star_of(b)).map(|x| star_of(&x))
    }
    fn f_star(&self, i: NodeIndex, b: &HalfPath) -> Option<HalfPath> {
        hp_ftilde(i, &star_of(b)).map(|x| star_of(&x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const I0: NodeIndex = NodeIndex::I0;
    const I1: NodeIndex = NodeIndex::I1;

    #[test]
    fn a_func_examples() {
        let b = HalfPath::left(&[1, -1, 3, -3]);
        let got: Vec<i64> = (-4..=-1).map(|k| a_func(I1, k, &b)).collect();
        assert_eq!(got, vec![1, 1, 3, 3]);
        assert_eq!(a_func(I0, -4, &b), -1);
        assert_eq!(a_func(I0, -2, &b), -3);
        assert_eq!(a_func(I0, -7, &HalfPath::u_inf()), 0);
    }

    #[test]
    fn operator_examples() {
        let b = HalfPath::left(&[1, -1, 3, -3]);
        assert_eq!(hp_etilde(I1, &b), Some(HalfPath::left(&[1, -1, 2, -3])));
        assert_eq!(hp_etilde(I0, &b), None);
        assert_eq!(hp_eps(I0, &b), 0);
        assert_eq!(hp_ftilde(I0, &b), Some(HalfPath::left(&[-1, 1, -1, 3, -3])));
    }

    #[test]
    fn weight_examples() {
        assert_eq!(hp_weight(&HalfPath::u_inf()), Weight::ZERO);
        assert_eq!(hp_weight(&HalfPath::left(&[-1])), Weight::new(-2, 2, -1));
        assert_eq!(hp_weight(&HalfPath::left(&[1, -1])), Weight::new(0, 0, -1));
    }

    #[test]
    fn walls_and_domains() {
        let b = HalfPath::left(&[1, -1, 3, -3]);
        let w = hp_walls(&b);
        assert_eq!(
            w,
            vec![
                Wall {
                    position: -4,
                    sign: Sign::Plus,
                    count: 1
                },
                Wall {
                    position: -2,
                    sign: Sign::Plus,
                    count: 2
                }
            ]
        );
        let lens: Vec<i64> = hp_domains(&b).iter().map(|d| d.len).collect();
        assert_eq!(lens, vec![2, 0, 2]);
        assert!(hp_walls(&HalfPath::u_inf()).is_empty());
        let c = HalfPath::left(&[-2, 2]);
        assert_eq!(
            hp_walls(&c),
            vec![Wall {
                position: -2,
                sign: Sign::Minus,
                count: 2
            }]
        );
        assert_eq!(hp_length(&c), 2);
    }

    #[test]
    fn flip_examples() {
        assert_eq!(half_flip(&HalfPath::u_inf()), HalfPath::u_minus_inf());
        assert_eq!(half_flip(&HalfPath::left(&[1])), HalfPath::right(&[-1]));
        let b = HalfPath::left(&[2, 0, -1, 3]);
        assert_eq!(half_flip(&half_flip(&b)), b);
    }

    #[test]
    fn factorization_examples() {
        assert_eq!(
            string_factorization(&HalfPath::left(&[3])).unwrap(),
            vec![(I1, 3)]
        );
        assert_eq!(
            string_factorization(&HalfPath::left(&[-3])).unwrap(),
            vec![(I0, 3)]
        );
        let b = HalfPath::left(&[-2, 2]);
        let w = string_factorization(&b).unwrap();
        assert_eq!(w, vec![(I0, 2), (I1, 2)]);
        assert_eq!(replay_f_word(&w), b);
        assert!(string_factorization(&HalfPath::left(&[1, 1, -3])).is_err());
    }

    #[test]
    fn right_paths_behave_as_duals() {
        let r = HalfPath::u_minus_inf();
        for i in NodeIndex::ALL {
            assert_eq!(hp_ftilde(i, &r), None);
            assert!(hp_etilde(i, &r).is_some());
            assert_eq!(hp_eps(i, &r), 0);
        }
    }

    #[test]
    fn json_round_trip() {
        let b = HalfPath::left(&[1, 0, -2]);
        let s = serde_json::to_string(&b).unwrap();
        assert_eq!(s, r#"{"side":"left","entries":{"-3":1,"-1":-2}}"#);
        assert_eq!(serde_json::from_str::<HalfPath>(&s).unwrap(), b);
        assert!(serde_json::from_str::<HalfPath>(r#"{"side":"left","entries":{"2":1}}"#).is_err());
    }
}
