//! The sequence realization of B(∞): `b ↦ (…, a₂, a₁)` inside
//! `u_∞ ⊗ ⋯ ⊗ B_{i₂} ⊗ B_{i₁}` with the colors alternating.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::crystal::{Crystal, ExtInt};
use crate::error::{CrystalError, Result};
use crate::path_inf::{hp_eps, hp_etilde, hp_ftilde, HalfPath, Side};
use crate::weights::{pairing, simple_root, NodeIndex, Weight};

/// `a[0]` is a₁, the exponent at the rightmost factor B_{i₁}.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "SeqRepr")]
pub struct SeqElt {
    pub first_color: NodeIndex,
    pub a: Vec<u64>,
}

#[derive(Deserialize)]
struct SeqRepr {
    first_color: NodeIndex,
    a: Vec<u64>,
}

impl TryFrom<SeqRepr> for SeqElt {
    type Error = String;
    fn try_from(r: SeqRepr) -> std::result::Result<SeqElt, String> {
        Ok(SeqElt::new(r.first_color, r.a))
    }
}

impl SeqElt {
    pub fn new(first_color: NodeIndex, mut a: Vec<u64>) -> SeqElt {
        while a.last() == Some(&0) {
            a.pop();
        }
        SeqElt { first_color, a }
    }

    pub fn empty(first_color: NodeIndex) -> SeqElt {
        SeqElt {
            first_color,
            a: Vec::new(),
        }
    }

    /// Color of the 1-based position q.
    pub fn color(&self, q: usize) -> NodeIndex {
        if q % 2 == 1 {
            self.first_color
        } else {
            self.first_color.other()
        }
    }

    /// a_q for 1-based q (0 beyond the support).
    pub fn get(&self, q: usize) -> u64 {
        if q == 0 {
            return 0;
        }
        self.a.get(q - 1).copied().unwrap_or(0)
    }

    /// Position of the k-th factor of color i.
    pub fn position(&self, i: NodeIndex, k: usize) -> usize {
        if i == self.first_color {
            2 * k - 1
        } else {
            2 * k
        }
    }

    pub fn render(&self) -> String {
        let vals: Vec<String> = self.a.iter().rev().map(|v| v.to_string()).collect();
        if vals.is_empty() {
            format!("(...,0)_{}", self.first_color)
        } else {
            format!("(...,0,{})_{}", vals.join(","), self.first_color)
        }
    }
}

impl fmt::Display for SeqElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `Â^{(i)}_k(s)`: the signature value of the k-th factor of color i.
pub fn hat_a(i: NodeIndex, k: usize, s: &SeqElt) -> i64 {
    let p = s.position(i, k);
    let mut v = s.get(p) as i64;
    for q in (p + 1)..=s.a.len() {
        let aq = s.get(q) as i64;
        v += if s.color(q) == i { 2 * aq } else { -2 * aq };
    }
    v
}

fn hat_window(i: NodeIndex, s: &SeqElt) -> Vec<(usize, i64)> {
    let kmax = s.a.len() / 2 + 2;
    (1..=kmax).map(|k| (k, hat_a(i, k, s))).collect()
}

pub fn seq_eps(i: NodeIndex, s: &SeqElt) -> i64 {
    hat_window(i, s)
        .iter()
        .map(|&(_, v)| v)
        .max()
        .unwrap_or(0)
        .max(0)
}

pub fn seq_etilde(i: NodeIndex, s: &SeqElt) -> Option<SeqElt> {
    let w = hat_window(i, s);
    let max = w.iter().map(|&(_, v)| v).max().unwrap_or(0);
    if max <= 0 {
        return None;
    }
    // leftmost in the tensor = largest k
    let &(k, _) = w.iter().rev().find(|&&(_, v)| v == max)?;
    let p = s.position(i, k);
    let mut a = s.a.clone();
    a[p - 1] -= 1;
    Some(SeqElt::new(s.first_color, a))
}

pub fn seq_ftilde(i: NodeIndex, s: &SeqElt) -> SeqElt {
    let w = hat_window(i, s);
    let max = w.iter().map(|&(_, v)| v).max().unwrap_or(0);
    let &(k, _) = w.iter().find(|&&(_, v)| v == max).expect("nonempty window");
    let p = s.position(i, k);
    let mut a = s.a.clone();
    if a.len() < p {
        a.resize(p, 0);
    }
    a[p - 1] += 1;
    SeqElt::new(s.first_color, a)
}

pub fn seq_weight(s: &SeqElt) -> Weight {
    (1..=s.a.len()).fold(Weight::ZERO, |acc, q| {
        acc - (s.get(q) as i64) * simple_root(s.color(q))
    })
}

/// `(n−1)·a_{n+1} ≤ n·a_n` for all n ≥ 2.
pub fn image_check(s: &SeqElt) -> bool {
    (2..=s.a.len()).all(|n| (n as u64 - 1) * s.get(n + 1) <= n as u64 * s.get(n))
}

/// `a_{k+1} ≤ a_k` for all k.
pub fn is_b_i(s: &SeqElt) -> bool {
    s.a.windows(2).all(|w| w[1] <= w[0])
}

/// Path-side form: entries alternate in sign by parity (position −1 carries
/// the sign σ of `first_color`) and |i_{k−1}| ≤ |i_k|.
pub fn is_b_ii(b: &HalfPath, first_color: NodeIndex) -> bool {
    if b.side != Side::Left {
        return false;
    }
    let lo = b.min_pos().unwrap_or(0);
    (lo..=-1).all(|k| {
        let v = b.get(k);
        let odd = (-k) % 2 == 1;
        let want = if odd {
            first_color.sigma()
        } else {
            first_color.other().sigma()
        };
        v * want >= 0 && b.get(k - 1).abs() <= v.abs()
    })
}

/// Closed-form image of a B_I element: position −k carries σ(i_k)·a_k.
pub fn taiou_transform(s: &SeqElt) -> Result<HalfPath> {
    if !is_b_i(s) {
        return Err(CrystalError::Precondition(format!(
            "{} is not in B_I form",
            s
        )));
    }
    let entries = (1..=s.a.len())
        .map(|k| (-(k as i64), s.color(k).sigma() * s.get(k) as i64))
        .collect();
    HalfPath::from_entries(Side::Left, entries)
}

/// Length used in the length-drop lemma: the largest occupied position.
pub fn seq_support_len(s: &SeqElt) -> usize {
    s.a.len()
}

// --- conversion by operator replay -------------------------------------------

fn reduce<E: Clone>(
    start: &E,
    eps: impl Fn(NodeIndex, &E) -> i64,
    e: impl Fn(NodeIndex, &E) -> Option<E>,
    is_unit: impl Fn(&E) -> bool,
) -> Result<Vec<NodeIndex>> {
    let mut word = Vec::new();
    let mut cur = start.clone();
    loop {
        let Some(i) = NodeIndex::ALL.into_iter().find(|&i| eps(i, &cur) > 0) else {
            return if is_unit(&cur) {
                Ok(word)
            } else {
                Err(CrystalError::Reduction(
                    "no raising operator applies before reaching the unit".into(),
                ))
            };
        };
        cur = e(i, &cur)
            .ok_or_else(|| CrystalError::Reduction(format!("e_{i} vanished with eps > 0")))?;
        word.push(i);
    }
}

pub fn seq_to_path(s: &SeqElt) -> Result<HalfPath> {
    let word = reduce(s, seq_eps, seq_etilde, |x| x.a.is_empty())?;
    let mut b = HalfPath::u_inf();
    for &i in word.iter().rev() {
        b = hp_ftilde(i, &b).expect("f never vanishes on left paths");
    }
    Ok(b)
}

pub fn path_to_seq(b: &HalfPath, first_color: NodeIndex) -> Result<SeqElt> {
    if b.side != Side::Left {
        return Err(CrystalError::Precondition(
            "sequence realization covers left paths only".into(),
        ));
    }
    let word = reduce(b, hp_eps, hp_etilde, |x| x.is_unit())?;
    let mut s = SeqElt::empty(first_color);
    for &i in word.iter().rev() {
        s = seq_ftilde(i, &s);
    }
    Ok(s)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SeqCrystal;

impl Crystal for SeqCrystal {
    type Elt = SeqElt;

    fn wt(&self, s: &SeqElt) -> Weight {
        seq_weight(s)
    }
    fn eps(&self, i: NodeIndex, s: &SeqElt) -> ExtInt {
        ExtInt::Fin(seq_eps(i, s))
    }
    fn phi(&self, i: NodeIndex, s: &SeqElt) -> ExtInt {
        ExtInt::Fin(seq_eps(i, s) + pairing(i, seq_weight(s)))
    }
    fn e(&self, i: NodeIndex, s: &SeqElt) -> Option<SeqElt> {
        seq_etilde(i, s)
    }
    fn f(&self, i: NodeIndex, s: &SeqElt) -> Option<SeqElt> {
        Some(seq_ftilde(i, s))
    }
    fn serial(&self, s: &SeqElt) -> String {
        s.render()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const I0: NodeIndex = NodeIndex::I0;
    const I1: NodeIndex = NodeIndex::I1;

    #[test]
    fn hat_a_examples() {
        let s = SeqElt::new(I0, vec![2, 3]);
        assert_eq!(hat_a(I0, 1, &s), -4);
        assert_eq!(hat_a(I1, 1, &s), 3);
        let z = SeqElt::empty(I0);
        assert_eq!(hat_a(I0, 3, &z), 0);
        assert_eq!(hat_a(I1, 1, &z), 0);
    }

    #[test]
    fn operator_examples() {
        let s = SeqElt::new(I0, vec![2, 3]);
        assert_eq!(seq_eps(I1, &s), 3);
        assert_eq!(seq_eps(I0, &s), 0);
        assert_eq!(seq_etilde(I1, &s), Some(SeqElt::new(I0, vec![2, 2])));
        assert!(image_check(&seq_ftilde(I0, &s)));
    }

    #[test]
    fn image_examples() {
        assert!(image_check(&SeqElt::new(I0, vec![7, 2, 3])));
        assert!(!image_check(&SeqElt::new(I0, vec![7, 2, 5])));
        assert!(image_check(&SeqElt::new(I0, vec![9])));
    }

    #[test]
    fn conversion_examples() {
        assert_eq!(seq_to_path(&SeqElt::empty(I0)).unwrap(), HalfPath::u_inf());
        let s = SeqElt::new(I0, vec![2, 2, 1]);
        let b = HalfPath::left(&[-1, 2, -2]);
        assert_eq!(seq_to_path(&s).unwrap(), b);
        assert_eq!(taiou_transform(&s).unwrap(), b);
        assert_eq!(path_to_seq(&b, I0).unwrap(), s);
        assert_eq!(
            taiou_transform(&SeqElt::new(I0, vec![4])).unwrap(),
            HalfPath::left(&[-4])
        );
        assert!(taiou_transform(&SeqElt::new(I0, vec![1, 2])).is_err());
    }

    #[test]
    fn json_shape() {
        let s = SeqElt::new(I0, vec![2, 3, 0]);
        assert_eq!(
            serde_json::to_string(&s).unwrap(),
            r#"{"first_color":0,"a":[2,3]}"#
        );
    }
}
