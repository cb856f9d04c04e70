//! The star involution on B(∞), B(−∞) and B(∞)⊗T_λ⊗B(−∞), plus the
//! closed forms it takes on uniform-wall elements.

use crate::error::{CrystalError, Result};
use crate::level_paths::{lp_join, lp_split, lp_weight, LevelPath, ModElt};
use crate::path_inf::{
    expand_walls, half_flip, hp_domains, hp_eps, hp_etilde, hp_walls, HalfPath, Side, Sign,
    Uniformity,
};
use crate::seq_real::{seq_to_path, SeqElt};
use crate::weights::NodeIndex;

/// Peeling exponents: `a₁ = ε_{i₁}(b)`, then strip that string and continue
/// with the other color, until two consecutive exponents vanish.
pub fn peel(b: &HalfPath, first: NodeIndex) -> Vec<u64> {
    let mut a = Vec::new();
    let mut cur = b.clone();
    let mut color = first;
    let mut zeros = 0;
    while zeros < 2 {
        let k = hp_eps(color, &cur);
        for _ in 0..k {
            cur = hp_etilde(color, &cur).expect("string of length eps");
        }
        a.push(k as u64);
        zeros = if k == 0 { zeros + 1 } else { 0 };
        color = color.other();
    }
    debug_assert!(cur.is_unit());
    a
}

pub fn star_binf_with(b: &HalfPath, first: NodeIndex) -> HalfPath {
    assert_eq!(b.side, Side::Left, "star_binf expects a left path");
    let s = SeqElt::new(first, peel(b, first));
    seq_to_path(&s).expect("peeled sequences lie in the image")
}

pub fn star_binf(b: &HalfPath) -> HalfPath {
    star_binf_with(b, NodeIndex::I1)
}

pub fn star_bminf(b: &HalfPath) -> HalfPath {
    assert_eq!(b.side, Side::Right, "star_bminf expects a right path");
    half_flip(&star_binf(&half_flip(b)))
}

/// `(b₁⊗t_λ⊗b₂)* = b₁*⊗t_{−λ−wt b₁−wt b₂}⊗b₂*`.
pub fn star_mod(e: &ModElt) -> ModElt {
    let lam = -e.weight();
    ModElt {
        b1: star_binf(&e.b1),
        lam,
        b2: star_bminf(&e.b2),
    }
}

pub fn star_level(p: &LevelPath) -> LevelPath {
    lp_join(&star_mod(&lp_split(p))).expect("star keeps the level")
}

fn uniform_sign(u: Uniformity) -> Result<Option<Sign>> {
    match u {
        Uniformity::Mixed => Err(CrystalError::Precondition("walls carry mixed signs".into())),
        Uniformity::NoWalls => Ok(None),
        Uniformity::Uniform(s) => Ok(Some(s)),
    }
}

fn parity(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Closed form of star on a uniform-wall left path: domain j (numbered from
/// the left) becomes ±(−1)^k·j.
pub fn psi_phi_closed(b: &HalfPath) -> Result<HalfPath> {
    if b.side != Side::Left {
        return Err(CrystalError::Precondition("expected a left path".into()));
    }
    let Some(sign) = uniform_sign(Uniformity::of(&hp_walls(b)))? else {
        return Ok(b.clone());
    };
    let s = -sign.value();
    let entries = hp_domains(b)
        .iter()
        .flat_map(|d| (d.start..d.start + d.len).map(move |k| (k, s * parity(k) * d.index as i64)))
        .collect();
    HalfPath::from_entries(Side::Left, entries)
}

/// Closed form of star on a uniform-wall right path; domains are numbered
/// from the right.
pub fn u_plus_closed(b: &HalfPath) -> Result<HalfPath> {
    if b.side != Side::Right {
        return Err(CrystalError::Precondition("expected a right path".into()));
    }
    let Some(sign) = uniform_sign(Uniformity::of(&hp_walls(b)))? else {
        return Ok(b.clone());
    };
    let s = sign.value();
    let entries = hp_domains(b)
        .iter()
        .flat_map(|d| (d.start..d.start + d.len).map(move |k| (k, s * parity(k) * d.index as i64)))
        .collect();
    HalfPath::from_entries(Side::Right, entries)
}

/// Closed form of star on an extremal level path whose n walls share one
/// sign: domains become ±(−1)^k·j and the tail becomes the ground tail of
/// m' = ±n.
pub fn star_extremal_closed(p: &LevelPath) -> Result<LevelPath> {
    let walls = crate::level_paths::lp_walls(p);
    let sign = uniform_sign(Uniformity::of(&walls))?;
    let pos = expand_walls(&walls);
    let s = match sign {
        Some(Sign::Minus) | None => 1,
        Some(Sign::Plus) => -1,
    };
    let n = pos.len() as i64;
    let m_new = s * n;
    let mut entries = Vec::new();
    for (j, pair) in pos.windows(2).enumerate() {
        for k in pair[0]..pair[1] {
            entries.push((k, s * parity(k) * (j as i64 + 1)));
        }
    }
    if let Some(&last) = pos.last() {
        // the tail ±(−1)^k·n starts at the last wall, which may lie left of 0
        for k in last..0 {
            entries.push((k, s * parity(k) * n));
        }
    }
    if let Some(&first) = pos.first() {
        // explicit zeros left of the first wall reaching into k ≥ 0
        for k in 0..first {
            entries.push((k, 0));
        }
    }
    let tmp = LevelPath::from_entries(m_new, 0, entries.iter().copied());
    let target = -p.label();
    let w = lp_weight(&tmp);
    if w.m() != target.m() {
        return Err(CrystalError::Precondition(format!(
            "closed form weight {} does not match {}; input is not extremal",
            w, target
        )));
    }
    Ok(LevelPath::from_entries(m_new, target.d - w.d, entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::level_paths::ground_path;

    #[test]
    fn binf_examples() {
        assert_eq!(star_binf(&HalfPath::u_inf()), HalfPath::u_inf());
        for k in 1..5 {
            assert_eq!(star_binf(&HalfPath::left(&[-k])), HalfPath::left(&[-k]));
            assert_eq!(star_binf(&HalfPath::left(&[k])), HalfPath::left(&[k]));
        }
        let b = HalfPath::left(&[-2, 2]);
        assert_eq!(star_binf(&b), HalfPath::left(&[2, -2]));
        assert_eq!(star_binf_with(&b, NodeIndex::I0), HalfPath::left(&[2, -2]));
        assert_eq!(psi_phi_closed(&b).unwrap(), HalfPath::left(&[2, -2]));
    }

    #[test]
    fn bminf_examples() {
        assert_eq!(
            star_bminf(&HalfPath::u_minus_inf()),
            HalfPath::u_minus_inf()
        );
        let r = half_flip(&HalfPath::left(&[-2, 2]));
        assert_eq!(star_bminf(&r), half_flip(&HalfPath::left(&[2, -2])));
        assert_eq!(u_plus_closed(&r).unwrap(), star_bminf(&r));
    }

    #[test]
    fn mod_examples() {
        use crate::weights::{simple_root, Weight};
        let lam = Weight::level_zero(1, 0);
        assert_eq!(star_mod(&ModElt::unit(lam)), ModElt::unit(-lam));
        let e = ModElt::new(HalfPath::left(&[-1]), lam, HalfPath::u_minus_inf()).unwrap();
        let s = star_mod(&e);
        assert_eq!(
            s,
            ModElt::new(
                HalfPath::left(&[-1]),
                -lam + simple_root(NodeIndex::I0),
                HalfPath::u_minus_inf()
            )
            .unwrap()
        );
        assert_eq!(star_mod(&s), e);
    }

    #[test]
    fn golden_closed_form() {
        let p = LevelPath::from_window(2, 0, -5, &[-1, 1, -2, 2, -2, 1, -1, 1, -2, 2]);
        let want = [-1, 1, -2, 2, -2, 3, -3, 3, -4, 4];
        let closed = star_extremal_closed(&p).unwrap();
        let alg = star_level(&p);
        for (j, &v) in want.iter().enumerate() {
            assert_eq!(alg.get(j as i64 - 5), v);
            assert_eq!(closed.get(j as i64 - 5), v);
        }
        assert_eq!(alg.get(11), -4);
        assert_eq!(closed, alg);
        assert_eq!(star_level(&alg), p);
    }

    #[test]
    fn ground_paths_swap() {
        for m in -3..=3 {
            let g = ground_path(m, 2);
            assert_eq!(star_level(&g), ground_path(-m, -2));
            assert_eq!(star_extremal_closed(&g).unwrap(), ground_path(-m, -2));
        }
    }
}
