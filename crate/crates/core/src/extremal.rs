//! Weyl group action S_i on normal crystals, bounded extremality tests,
//! B^max(λ) and B(−λ)*.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::crystal::{bfs, Crystal};
use crate::error::{CrystalError, Result};
use crate::level_paths::{
    ground_path, lp_domains, lp_walls, wall_signs_uniform, LevelCrystal, LevelPath,
};
use crate::path_inf::{Sign, Uniformity};
use crate::star::star_level;
use crate::weights::{pairing, NodeIndex, Weight};

pub const DEFAULT_WORD_BOUND: usize = 8;

/// `S_i b = f̃_i^n b` (n ≥ 0) or `ẽ_i^{−n} b` (n < 0), n = ⟨h_i, wt b⟩.
pub fn s_i<C: Crystal>(c: &C, i: NodeIndex, b: &C::Elt) -> Result<C::Elt> {
    let n = pairing(i, c.wt(b));
    let mut cur = b.clone();
    for step in 0..n.unsigned_abs() {
        let next = if n > 0 { c.f(i, &cur) } else { c.e(i, &cur) };
        cur = next.ok_or(CrystalError::Exhausted {
            steps: step as usize,
        })?;
    }
    Ok(cur)
}

/// Applies an S-word first to last.
pub fn s_word<C: Crystal>(c: &C, word: &[NodeIndex], b: &C::Elt) -> Result<C::Elt> {
    word.iter().try_fold(b.clone(), |acc, &i| s_i(c, i, &acc))
}

/// The alternating word of length `len` starting with `start`.
pub fn alternating(start: NodeIndex, len: usize) -> Vec<NodeIndex> {
    (0..len)
        .map(|k| if k % 2 == 0 { start } else { start.other() })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    ExtremalUpTo {
        bound: usize,
    },
    NotExtremal {
        witness: Vec<NodeIndex>,
        color: NodeIndex,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtremalCert {
    pub element: String,
    pub bound: usize,
    pub verdict: Verdict,
    pub fast_sign: Option<Uniformity>,
}

impl ExtremalCert {
    pub fn is_extremal(&self) -> bool {
        matches!(self.verdict, Verdict::ExtremalUpTo { .. })
    }
}

fn failing_color<C: Crystal>(c: &C, x: &C::Elt) -> Option<NodeIndex> {
    NodeIndex::ALL
        .into_iter()
        .find(|&i| c.e(i, x).is_some() && c.f(i, x).is_some())
}

/// Checks i-extremality at every image under alternating S-words of length
/// at most `bound`.
pub fn is_extremal<C: Crystal>(c: &C, b: &C::Elt, bound: usize) -> Result<ExtremalCert> {
    let cert = |verdict| ExtremalCert {
        element: c.serial(b),
        bound,
        verdict,
        fast_sign: None,
    };
    if let Some(color) = failing_color(c, b) {
        return Ok(cert(Verdict::NotExtremal {
            witness: vec![],
            color,
        }));
    }
    for start in NodeIndex::ALL {
        let mut cur = b.clone();
        for len in 1..=bound {
            let i = if len % 2 == 1 { start } else { start.other() };
            cur = s_i(c, i, &cur)?;
            if let Some(color) = failing_color(c, &cur) {
                return Ok(cert(Verdict::NotExtremal {
                    witness: alternating(start, len),
                    color,
                }));
            }
        }
    }
    Ok(cert(Verdict::ExtremalUpTo { bound }))
}

pub fn is_extremal_level(p: &LevelPath, bound: usize) -> Result<ExtremalCert> {
    let mut cert = is_extremal(&LevelCrystal, p, bound)?;
    cert.fast_sign = Some(is_extremal_fast(p));
    Ok(cert)
}

/// Uniform wall sign (or no walls) is the screening test for extremality.
pub fn is_extremal_fast(p: &LevelPath) -> Uniformity {
    wall_signs_uniform(p)
}

/// All images of `b` under alternating S-words of length ≤ `bound`.
pub fn s_orbit<C: Crystal>(c: &C, b: &C::Elt, bound: usize) -> Result<BTreeSet<C::Elt>> {
    let mut out = BTreeSet::new();
    out.insert(b.clone());
    for start in NodeIndex::ALL {
        let mut cur = b.clone();
        for len in 1..=bound {
            let i = if len % 2 == 1 { start } else { start.other() };
            cur = s_i(c, i, &cur)?;
            out.insert(cur.clone());
        }
    }
    Ok(out)
}

/// An S-word (first to last) carrying `from` to `to`, if one of length
/// ≤ `bound` exists.
pub fn s_connecting_word<C: Crystal>(
    c: &C,
    from: &C::Elt,
    to: &C::Elt,
    bound: usize,
) -> Result<Option<Vec<NodeIndex>>> {
    if from == to {
        return Ok(Some(vec![]));
    }
    for len in 1..=bound {
        for start in NodeIndex::ALL {
            let w = alternating(start, len);
            if &s_word(c, &w, from)? == to {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

// --- B^max and B(−λ)* ----------------------------------------------------------------

fn check_level_zero(lam: Weight) -> Result<()> {
    if lam.level() != 0 {
        return Err(CrystalError::NotLevelZero(lam.to_string()));
    }
    Ok(())
}

/// True iff `p` carries the label λ and its star is extremal (bounded test).
pub fn bmax_contains(lam: Weight, p: &LevelPath, bound: usize) -> Result<bool> {
    check_level_zero(lam)?;
    if p.label() != lam {
        return Err(CrystalError::Precondition(format!(
            "path label {} differs from {}",
            p.label(),
            lam
        )));
    }
    Ok(is_extremal(&LevelCrystal, &star_level(p), bound)?.is_extremal())
}

/// The star-fixed seed with domains d_j = (−j, j, …) of length 2c_j, the
/// block ending at position 0 and the ground tail from position 1.
pub fn bmax_seed(lam: Weight, c: &[u64]) -> Result<LevelPath> {
    check_level_zero(lam)?;
    let m = lam.m();
    let expected = (m.unsigned_abs() as usize).saturating_sub(1);
    if c.len() != expected {
        return Err(CrystalError::Precondition(format!(
            "seed needs {expected} domain sizes, got {}",
            c.len()
        )));
    }
    let total: i64 = c.iter().map(|&x| 2 * x as i64).sum();
    let sgn = m.signum();
    let mut entries = Vec::new();
    let mut k = 1 - total;
    for (j, &cj) in c.iter().enumerate() {
        for _ in 0..2 * cj {
            let par = if k.rem_euclid(2) == 0 { 1 } else { -1 };
            entries.push((k, sgn * par * (j as i64 + 1)));
            k += 1;
        }
    }
    if total == 0 {
        entries.push((0, 0));
    }
    Ok(LevelPath::from_entries(m, lam.d, entries))
}

/// All vectors of `len` nonnegative integers with sum ≤ `total`.
pub fn compositions(len: usize, total: u64) -> Vec<Vec<u64>> {
    if len == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(len - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn bmax_seeds(lam: Weight, total: u64) -> Result<Vec<(Vec<u64>, LevelPath)>> {
    check_level_zero(lam)?;
    let len = (lam.m().unsigned_abs() as usize).saturating_sub(1);
    compositions(len, total)
        .into_iter()
        .map(|c| Ok((c.clone(), bmax_seed(lam, &c)?)))
        .collect()
}

/// Seeds with |c⃗| ≤ `size` together with their components to depth `size`.
pub fn enum_bmax(lam: Weight, size: usize) -> Result<Vec<LevelPath>> {
    let mut out = BTreeSet::new();
    for (_, seed) in bmax_seeds(lam, size as u64)? {
        out.extend(bfs(&LevelCrystal, &seed, size).elements().cloned());
    }
    Ok(out.into_iter().collect())
}

/// B(−λ)* to the given depth: stars of the plain component of u_{−λ}.
pub fn enum_bminus_star(lam: Weight, depth: usize) -> Result<Vec<LevelPath>> {
    check_level_zero(lam)?;
    let g = bfs(&LevelCrystal, &ground_path(-lam.m(), -lam.d), depth);
    let set: BTreeSet<LevelPath> = g.elements().map(star_level).collect();
    Ok(set.into_iter().collect())
}

/// Direct characterization: weight λ, extremal, |m| walls of one sign and
/// every finite domain of length 0 or 1.
pub fn bminus_star_char(lam: Weight, p: &LevelPath, bound: usize) -> Result<bool> {
    use crate::level_paths::lp_weight;
    if lp_weight(p) != lam {
        return Ok(false);
    }
    let walls = lp_walls(p);
    let count: u64 = walls.iter().map(|w| w.count).sum();
    let sign_ok = match Uniformity::of(&walls) {
        Uniformity::NoWalls => lam.m() == 0,
        Uniformity::Uniform(s) => (s == Sign::Plus) == (lam.m() > 0),
        Uniformity::Mixed => false,
    };
    Ok(sign_ok
        && count == lam.m().unsigned_abs()
        && lp_domains(p).iter().all(|d| d.len <= 1)
        && is_extremal(&LevelCrystal, p, bound)?.is_extremal())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::level_paths::{lp_etilde, lp_ftilde};

    const I0: NodeIndex = NodeIndex::I0;
    const I1: NodeIndex = NodeIndex::I1;

    #[test]
    fn s_examples() {
        let g = ground_path(1, 0);
        let s1 = s_i(&LevelCrystal, I1, &g).unwrap();
        assert_eq!(s1, lp_etilde(I1, &g).unwrap());
        assert_eq!(s_i(&LevelCrystal, I1, &s1).unwrap(), g);
        let z = ground_path(0, 3);
        assert_eq!(s_i(&LevelCrystal, I0, &z).unwrap(), z);
    }

    #[test]
    fn extremal_examples() {
        for (m, l) in [(1, 0), (2, 0), (-3, 1), (0, 2)] {
            assert!(is_extremal_level(&ground_path(m, l), 8)
                .unwrap()
                .is_extremal());
        }
        let g = ground_path(2, 0);
        // f̃₀ẽ₁ u_λ vanishes; ẽ₁ u_λ (weight 0) is already not 1-extremal
        assert!(lp_etilde(I1, &g).and_then(|x| lp_ftilde(I0, &x)).is_none());
        let x = lp_etilde(I1, &g).unwrap();
        let cert = is_extremal_level(&x, 8).unwrap();
        match &cert.verdict {
            Verdict::NotExtremal { witness, color } => {
                let y = s_word(&LevelCrystal, witness, &x).unwrap();
                assert!(lp_etilde(*color, &y).is_some() && lp_ftilde(*color, &y).is_some());
            }
            v => panic!("expected a witness, got {v:?}"),
        }
        assert_eq!(is_extremal_fast(&g), Uniformity::Uniform(Sign::Plus));
    }

    #[test]
    fn seeds() {
        let lam = Weight::level_zero(2, 0);
        for c1 in 0..4 {
            let s = bmax_seed(lam, &[c1]).unwrap();
            assert!(bmax_contains(lam, &s, 8).unwrap());
            let st = star_level(&s);
            let (lo, hi) = s.window();
            for k in lo.min(0) - 3..hi.max(0) + 4 {
                assert_eq!(st.get(k), s.get(k));
            }
        }
        assert!(bmax_contains(lam, &ground_path(2, 0), 8).unwrap());
        assert!(bmax_contains(lam, &ground_path(1, 0), 8).is_err());
        assert_eq!(bmax_seeds(Weight::level_zero(1, 0), 3).unwrap().len(), 1);
    }

    #[test]
    fn bminus_star() {
        let lam = Weight::level_zero(1, 0);
        let list = enum_bminus_star(lam, 3).unwrap();
        assert!(list.contains(&ground_path(1, 0)));
        for p in &list {
            assert!(bminus_star_char(lam, p, 6).unwrap(), "{p}");
        }
    }
}
