//! Finite enumeration windows used by the verification suites.

use std::collections::BTreeMap;

use crate::crystal::bfs;
use crate::level_paths::{LevelPath, ModElt};
use crate::path_inf::{half_flip, HalfPath, PathCrystal, Side, Sign};
use crate::seq_real::SeqElt;
use crate::weights::{NodeIndex, Weight};

/// Every left path supported in `[−len, −1]` with entries in `[−max, max]`.
pub fn left_paths_in_window(len: usize, max: i64) -> Vec<HalfPath> {
    let mut out = Vec::new();
    let mut vals = vec![-max; len];
    loop {
        let entries = vals
            .iter()
            .enumerate()
            .map(|(j, &v)| (-(j as i64) - 1, v))
            .collect::<BTreeMap<_, _>>();
        out.push(HalfPath::from_entries(Side::Left, entries).expect("left positions"));
        let mut j = 0;
        loop {
            if j == len {
                return out;
            }
            if vals[j] < max {
                vals[j] += 1;
                break;
            }
            vals[j] = -max;
            j += 1;
        }
    }
}

/// B(∞) elements reached within `depth` steps of u_∞, with their distance
/// (= height, since every element of height h needs h lowering steps).
pub fn binf_by_depth(depth: usize) -> Vec<(HalfPath, usize)> {
    bfs(&PathCrystal, &HalfPath::u_inf(), depth)
        .nodes
        .into_iter()
        .map(|n| (n.elt, n.dist))
        .collect()
}

/// Pairs b₁ ⊗ t_λ ⊗ b₂ with ht(b₁) + ht(b₂) ≤ `depth`.
pub fn mod_by_depth(lam: Weight, depth: usize) -> Vec<ModElt> {
    let left = binf_by_depth(depth);
    let mut out = Vec::new();
    for (b1, d1) in &left {
        for (b, d2) in &left {
            if d1 + d2 <= depth {
                out.push(ModElt {
                    b1: b1.clone(),
                    lam,
                    b2: half_flip(b),
                });
            }
        }
    }
    out.sort();
    out
}

/// Non-increasing sequences with entries ≤ `max` and length ≤ `len`.
pub fn b_i_forms(first_color: NodeIndex, len: usize, max: u64) -> Vec<SeqElt> {
    fn rec(prefix: &mut Vec<u64>, len: usize, cap: u64, fc: NodeIndex, out: &mut Vec<SeqElt>) {
        out.push(SeqElt::new(fc, prefix.clone()));
        if prefix.len() == len {
            return;
        }
        for v in 1..=cap {
            prefix.push(v);
            rec(prefix, len, v, fc, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), len, max, first_color, &mut out);
    out
}

/// Multisets of size ≤ `max_size` drawn from `lo..=hi`, ascending.
pub fn wall_multisets(lo: i64, hi: i64, max_size: usize) -> Vec<Vec<i64>> {
    fn rec(start: i64, hi: i64, left: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        out.push(cur.clone());
        if left == 0 {
            return;
        }
        for p in start..=hi {
            cur.push(p);
            rec(p, hi, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(lo, hi, max_size, &mut Vec::new(), &mut out);
    out
}

/// The unique level path (label l) whose walls are exactly the given
/// ascending expanded positions, all of sign `sign`: zeros left of the first
/// wall, alternating entries between walls, ground tail after the last.
pub fn level_path_from_walls(walls: &[i64], sign: Sign, l: i64) -> LevelPath {
    let Some(&first) = walls.first() else {
        return LevelPath::from_entries(0, l, []);
    };
    let last = (*walls.last().expect("nonempty")).max(-1);
    let mut entries = Vec::new();
    let mut prev = 0;
    for k in first..=last {
        let count = walls.iter().filter(|&&p| p == k).count() as i64;
        let v = sign.value() * count - prev;
        entries.push((k, v));
        prev = v;
    }
    // entry at `last` is (−1)^last·m on the ground tail
    let m = if last.rem_euclid(2) == 0 { prev } else { -prev };
    for k in first.min(0)..first {
        entries.push((k, 0));
    }
    LevelPath::from_entries(m, l, entries)
}

/// Left paths whose walls are the given expanded positions (all ≤ −1) with
/// one sign; the last domain runs to −1.
pub fn left_path_from_walls(walls: &[i64], sign: Sign) -> HalfPath {
    let mut entries = BTreeMap::new();
    let mut prev = 0;
    if let Some(&first) = walls.first() {
        for k in first..=-1 {
            let count = walls.iter().filter(|&&p| p == k).count() as i64;
            let v = sign.value() * count - prev;
            entries.insert(k, v);
            prev = v;
        }
    }
    HalfPath::from_entries(Side::Left, entries).expect("left positions")
}
