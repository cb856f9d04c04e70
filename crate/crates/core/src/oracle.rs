//! Independent oracle: explicit tensor chains evaluated factor by factor with
//! the binary tensor rules, used to cross-check the signature shortcuts.

use crate::crystal::{e_acts_left, f_acts_left, tensor_eps, tensor_phi, Crystal, ExtInt};
use crate::elementary::{BInf, BiCrystal, BiElt, TCrystal};
use crate::error::{CrystalError, Result};
use crate::level_paths::ModElt;
use crate::path_inf::{HalfPath, Side};
use crate::seq_real::SeqElt;
use crate::weights::{pairing, NodeIndex, Weight};

/// One tensor factor. `Unit` is u_∞ or u_{−∞} (ε = φ = 0, weight 0, no
/// operator applies); with zero padding next to it, no legitimate action
/// ever lands on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    Unit,
    Entry(i64),
    Bi(BiElt),
    T(Weight),
}

impl Factor {
    fn wt(self) -> Weight {
        match self {
            Factor::Unit => Weight::ZERO,
            Factor::Entry(n) => BInf.wt(&n),
            Factor::Bi(b) => BiCrystal.wt(&b),
            Factor::T(w) => w,
        }
    }
    fn eps(self, i: NodeIndex) -> ExtInt {
        match self {
            Factor::Unit => ExtInt::Fin(0),
            Factor::Entry(n) => BInf.eps(i, &n),
            Factor::Bi(b) => BiCrystal.eps(i, &b),
            Factor::T(w) => TCrystal.eps(i, &w),
        }
    }
    fn phi(self, i: NodeIndex) -> ExtInt {
        match self {
            Factor::Unit => ExtInt::Fin(0),
            Factor::Entry(n) => BInf.phi(i, &n),
            Factor::Bi(b) => BiCrystal.phi(i, &b),
            Factor::T(w) => TCrystal.phi(i, &w),
        }
    }
    fn act(self, i: NodeIndex, raise: bool) -> Option<Factor> {
        match self {
            Factor::Unit | Factor::T(_) => None,
            Factor::Entry(n) => {
                if raise { BInf.e(i, &n) } else { BInf.f(i, &n) }.map(Factor::Entry)
            }
            Factor::Bi(b) => if raise {
                BiCrystal.e(i, &b)
            } else {
                BiCrystal.f(i, &b)
            }
            .map(Factor::Bi),
        }
    }
}

/// ε_i and φ_i of every suffix `c_k ⊗ ⋯ ⊗ c_n`, folded from the right.
fn suffix_data(i: NodeIndex, chain: &[Factor]) -> Vec<(ExtInt, ExtInt, Weight)> {
    let mut out = vec![(ExtInt::NegInf, ExtInt::NegInf, Weight::ZERO); chain.len() + 1];
    for k in (0..chain.len()).rev() {
        let c = chain[k];
        let (e2, p2, w2) = out[k + 1];
        let (e, p) = if k + 1 == chain.len() {
            (c.eps(i), c.phi(i))
        } else {
            (
                tensor_eps(c.eps(i), e2, pairing(i, c.wt())),
                tensor_phi(c.phi(i), p2, pairing(i, w2)),
            )
        };
        out[k] = (e, p, c.wt() + w2);
    }
    out
}

pub fn chain_eps(i: NodeIndex, chain: &[Factor]) -> ExtInt {
    suffix_data(i, chain)[0].0
}

pub fn chain_phi(i: NodeIndex, chain: &[Factor]) -> ExtInt {
    suffix_data(i, chain)[0].1
}

pub fn chain_wt(chain: &[Factor]) -> Weight {
    chain.iter().fold(Weight::ZERO, |acc, c| acc + c.wt())
}

/// Walks `c₀ ⊗ (c₁ ⊗ (⋯))` deciding left/right at each binary split.
fn chain_act(i: NodeIndex, raise: bool, chain: &[Factor]) -> Option<Vec<Factor>> {
    let suf = suffix_data(i, chain);
    for k in 0..chain.len() {
        let last = k + 1 == chain.len();
        let left = last || {
            let (phi1, eps2) = (chain[k].phi(i), suf[k + 1].0);
            if raise {
                e_acts_left(phi1, eps2)
            } else {
                f_acts_left(phi1, eps2)
            }
        };
        if left {
            let mut out = chain.to_vec();
            out[k] = chain[k].act(i, raise)?;
            return Some(out);
        }
    }
    None
}

pub fn chain_e(i: NodeIndex, chain: &[Factor]) -> Option<Vec<Factor>> {
    chain_act(i, true, chain)
}

pub fn chain_f(i: NodeIndex, chain: &[Factor]) -> Option<Vec<Factor>> {
    chain_act(i, false, chain)
}

// --- conversions --------------------------------------------------------------------

/// `u_∞ ⊗ i_{−n} ⊗ ⋯ ⊗ i_{−1}` with n = `len`.
pub fn left_chain(b: &HalfPath, len: usize) -> Vec<Factor> {
    let mut out = vec![Factor::Unit];
    out.extend((1..=len as i64).rev().map(|k| Factor::Entry(b.get(-k))));
    out
}

/// `j_0 ⊗ ⋯ ⊗ j_{n−1} ⊗ u_{−∞}`.
pub fn right_chain(b: &HalfPath, len: usize) -> Vec<Factor> {
    let mut out: Vec<Factor> = (0..len as i64).map(|k| Factor::Entry(b.get(k))).collect();
    out.push(Factor::Unit);
    out
}

fn entries_of(chain: &[Factor]) -> Result<Vec<i64>> {
    chain
        .iter()
        .map(|c| match c {
            Factor::Entry(n) => Ok(*n),
            _ => Err(CrystalError::Reduction(
                "unexpected factor in entry block".into(),
            )),
        })
        .collect()
}

pub fn left_from_chain(chain: &[Factor]) -> Result<HalfPath> {
    let vals = entries_of(&chain[1..])?;
    Ok(HalfPath::left(&vals))
}

pub fn right_from_chain(chain: &[Factor]) -> Result<HalfPath> {
    let vals = entries_of(&chain[..chain.len() - 1])?;
    Ok(HalfPath::right(&vals))
}

/// Padded length for a half path: support plus two zero factors.
pub fn padded_len(b: &HalfPath) -> usize {
    let span = match b.side {
        Side::Left => b.min_pos().map_or(0, |k| -k),
        Side::Right => b.max_pos().map_or(0, |k| k + 1),
    };
    span as usize + 2
}

/// `u_∞ ⊗ B_{i_n} ⊗ ⋯ ⊗ B_{i_1}` with entries `(−a_k)_{i_k}`, padded by two.
pub fn seq_chain(s: &SeqElt) -> Vec<Factor> {
    let n = s.a.len() + 2;
    let mut out = vec![Factor::Unit];
    out.extend(
        (1..=n)
            .rev()
            .map(|q| Factor::Bi(BiElt::new(s.color(q), -(s.get(q) as i64)))),
    );
    out
}

pub fn seq_from_chain(chain: &[Factor], first_color: NodeIndex) -> Result<SeqElt> {
    let mut a = Vec::new();
    for c in chain[1..].iter().rev() {
        match c {
            Factor::Bi(b) if b.n <= 0 => a.push((-b.n) as u64),
            _ => {
                return Err(CrystalError::Reduction(
                    "sequence factor left the image".into(),
                ))
            }
        }
    }
    Ok(SeqElt::new(first_color, a))
}

/// Full five-part chain for `b₁ ⊗ t_λ ⊗ b₂`; returns the chain and the
/// index of the T factor.
pub fn mod_chain(e: &ModElt) -> (Vec<Factor>, usize) {
    let mut out = left_chain(&e.b1, padded_len(&e.b1));
    let t = out.len();
    out.push(Factor::T(e.lam));
    out.extend(right_chain(&e.b2, padded_len(&e.b2)));
    (out, t)
}

pub fn mod_from_chain(chain: &[Factor], t: usize) -> Result<ModElt> {
    let lam = match chain[t] {
        Factor::T(w) => w,
        _ => return Err(CrystalError::Reduction("T factor moved".into())),
    };
    ModElt::new(
        left_from_chain(&chain[..t])?,
        lam,
        right_from_chain(&chain[t + 1..])?,
    )
}

// --- differential checks -------------------------------------------------------------

#[derive(Debug, Clone, Default, serde::Serialize)]
pub struct OracleReport {
    pub checked: usize,
    pub mismatches: Vec<String>,
}

impl OracleReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn merge(&mut self, other: OracleReport) {
        self.checked += other.checked;
        self.mismatches.extend(other.mismatches);
    }
}

/// Compares the left-path signature rule against the tensor chain of length
/// `len` (must cover the support plus padding).
pub fn check_left_path(b: &HalfPath, len: usize) -> OracleReport {
    use crate::path_inf::{hp_eps, hp_etilde, hp_ftilde};
    let mut rep = OracleReport::default();
    let chain = left_chain(b, len);
    for i in NodeIndex::ALL {
        rep.checked += 1;
        if chain_eps(i, &chain) != ExtInt::Fin(hp_eps(i, b)) {
            rep.mismatches.push(format!("eps_{i} {b}"));
        }
        let e = chain_e(i, &chain).map(|c| left_from_chain(&c).ok());
        if e != hp_etilde(i, b).map(Some) {
            rep.mismatches.push(format!("e_{i} {b}"));
        }
        let f = chain_f(i, &chain).map(|c| left_from_chain(&c).ok());
        if f != hp_ftilde(i, b).map(Some) {
            rep.mismatches.push(format!("f_{i} {b}"));
        }
    }
    rep
}

pub fn check_right_path(b: &HalfPath) -> OracleReport {
    use crate::path_inf::{hp_eps, hp_etilde, hp_ftilde};
    let mut rep = OracleReport::default();
    let chain = right_chain(b, padded_len(b));
    for i in NodeIndex::ALL {
        rep.checked += 1;
        if chain_eps(i, &chain) != ExtInt::Fin(hp_eps(i, b)) {
            rep.mismatches.push(format!("eps_{i} {b}"));
        }
        let e = chain_e(i, &chain).map(|c| right_from_chain(&c).ok());
        if e != hp_etilde(i, b).map(Some) {
            rep.mismatches.push(format!("e_{i} {b}"));
        }
        let f = chain_f(i, &chain).map(|c| right_from_chain(&c).ok());
        if f != hp_ftilde(i, b).map(Some) {
            rep.mismatches.push(format!("f_{i} {b}"));
        }
    }
    rep
}

pub fn check_seq(s: &SeqElt) -> OracleReport {
    use crate::seq_real::{seq_eps, seq_etilde, seq_ftilde};
    let mut rep = OracleReport::default();
    let chain = seq_chain(s);
    for i in NodeIndex::ALL {
        rep.checked += 1;
        if chain_eps(i, &chain) != ExtInt::Fin(seq_eps(i, s)) {
            rep.mismatches.push(format!("eps_{i} {s}"));
        }
        let e = chain_e(i, &chain).map(|c| seq_from_chain(&c, s.first_color).ok());
        if e != seq_etilde(i, s).map(Some) {
            rep.mismatches.push(format!("e_{i} {s}"));
        }
        let f = chain_f(i, &chain).map(|c| seq_from_chain(&c, s.first_color).ok());
        if f != Some(Some(seq_ftilde(i, s))) {
            rep.mismatches.push(format!("f_{i} {s}"));
        }
    }
    rep
}

pub fn check_mod(e: &ModElt) -> OracleReport {
    use crate::level_paths::ModCrystal;
    let mut rep = OracleReport::default();
    let (chain, t) = mod_chain(e);
    for i in NodeIndex::ALL {
        rep.checked += 1;
        if chain_eps(i, &chain) != ModCrystal.eps(i, e)
            || chain_phi(i, &chain) != ModCrystal.phi(i, e)
        {
            rep.mismatches.push(format!("eps/phi_{i} {e}"));
        }
        let up = chain_e(i, &chain).map(|c| mod_from_chain(&c, t).ok());
        if up != ModCrystal.e(i, e).map(Some) {
            rep.mismatches.push(format!("e_{i} {e}"));
        }
        let down = chain_f(i, &chain).map(|c| mod_from_chain(&c, t).ok());
        if down != ModCrystal.f(i, e).map(Some) {
            rep.mismatches.push(format!("f_{i} {e}"));
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::level_paths::{ground_path, lp_split};

    #[test]
    fn left_examples_agree() {
        let b = HalfPath::left(&[1, -1, 3, -3]);
        assert!(check_left_path(&b, 8).ok());
        assert!(check_left_path(&HalfPath::u_inf(), 8).ok());
    }

    #[test]
    fn three_factor_unit() {
        let e = lp_split(&ground_path(1, 0));
        let (chain, _) = mod_chain(&e);
        assert_eq!(chain_f(NodeIndex::I1, &chain), None);
        assert!(check_mod(&e).ok());
    }

    #[test]
    fn seq_example() {
        assert!(check_seq(&SeqElt::new(NodeIndex::I0, vec![2, 3])).ok());
        assert!(check_seq(&SeqElt::new(NodeIndex::I1, vec![1, 0, 2])).ok());
    }
}
