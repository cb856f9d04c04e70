mod common;

use common::{ops, walk};
use crystal_lab::enumerate::left_path_from_walls;
use crystal_lab::oracle::{check_left_path, check_right_path, check_seq, padded_len};
use crystal_lab::path_inf::{
    half_flip, hp_domains, hp_eps, hp_etilde, hp_ftilde, hp_phi, hp_weight, replay_f_word,
    string_factorization, PathCrystal, Sign,
};
use crystal_lab::seq_real::{path_to_seq, seq_to_path, seq_weight, SeqCrystal};
use crystal_lab::weights::simple_root;
use crystal_lab::{HalfPath, NodeIndex, SeqElt};
use proptest::prelude::*;

const I0: NodeIndex = NodeIndex::I0;
const I1: NodeIndex = NodeIndex::I1;

#[test]
fn worked_examples() {
    let b = HalfPath::left(&[1, -1, 3, -3]);
    assert_eq!(hp_etilde(I1, &b), Some(HalfPath::left(&[1, -1, 2, -3])));
    assert_eq!(hp_etilde(I0, &HalfPath::u_inf()), None);
    assert_eq!(
        hp_ftilde(I0, &HalfPath::u_inf()),
        Some(HalfPath::left(&[-1]))
    );
    assert_eq!(
        string_factorization(&HalfPath::left(&[-2, 2])).unwrap(),
        vec![(I0, 2), (I1, 2)]
    );
    assert_eq!(HalfPath::left(&[1, -1]).render(), "(...,0,1,-1)");
    assert_eq!(
        half_flip(&HalfPath::left(&[1, -1])).render(),
        "(1,-1,0,...)"
    );
}

#[test]
fn serde_round_trip() {
    let b = HalfPath::left(&[2, -1, 3]);
    let s = serde_json::to_string(&b).unwrap();
    assert_eq!(serde_json::from_str::<HalfPath>(&s).unwrap(), b);
    let bad = r#"{"side":"left","entries":{"0":1}}"#;
    assert!(serde_json::from_str::<HalfPath>(bad).is_err());
}

proptest! {
    #[test]
    fn left_paths_match_tensor_oracle(word in ops(24)) {
        let b = walk(&PathCrystal, &HalfPath::u_inf(), &word);
        prop_assert!(check_left_path(&b, padded_len(&b)).ok());
    }

    #[test]
    fn right_paths_match_tensor_oracle(word in ops(24)) {
        let b = half_flip(&walk(&PathCrystal, &HalfPath::u_inf(), &word));
        prop_assert!(check_right_path(&b).ok());
    }

    #[test]
    fn flip_is_an_involution(word in ops(24)) {
        let b = walk(&PathCrystal, &HalfPath::u_inf(), &word);
        prop_assert_eq!(half_flip(&half_flip(&b)), b);
    }

    #[test]
    fn operators_shift_weight_and_invert(word in ops(24)) {
        let b = walk(&PathCrystal, &HalfPath::u_inf(), &word);
        for i in NodeIndex::ALL {
            let f = hp_ftilde(i, &b).unwrap();
            prop_assert_eq!(hp_weight(&f), hp_weight(&b) - simple_root(i));
            prop_assert_eq!(hp_etilde(i, &f), Some(b.clone()));
            prop_assert_eq!(hp_phi(i, &b) - hp_eps(i, &b), hp_weight(&b).pairing(i));
        }
    }

    #[test]
    fn string_factorization_replays(
        walls in prop::collection::btree_map(-8i64..=-1, 1i64..=3, 0..4),
        plus in any::<bool>(),
    ) {
        let expanded: Vec<i64> = walls.iter().flat_map(|(&k, &n)| std::iter::repeat_n(k, n as usize)).collect();
        let b = left_path_from_walls(&expanded, if plus { Sign::Plus } else { Sign::Minus });
        let w = string_factorization(&b).unwrap();
        prop_assert_eq!(replay_f_word(&w), b.clone());
        // total exponent = height of b
        let total: u64 = w.iter().map(|(_, n)| n).sum();
        let wt = hp_weight(&b);
        prop_assert_eq!(total as i64, -2 * wt.d + wt.a0 / 2);
        prop_assert!(hp_domains(&b).len() <= expanded.len());
    }

    #[test]
    fn sequences_match_paths(word in ops(20), fc in 0u8..2) {
        let fc = NodeIndex::new(fc).unwrap();
        let s = walk(&SeqCrystal, &SeqElt::empty(fc), &word);
        prop_assert!(check_seq(&s).ok());
        let b = seq_to_path(&s).unwrap();
        prop_assert_eq!(walk(&PathCrystal, &HalfPath::u_inf(), &word), b.clone());
        prop_assert_eq!(hp_weight(&b), seq_weight(&s));
        prop_assert_eq!(path_to_seq(&b, fc).unwrap(), s);
    }
}
