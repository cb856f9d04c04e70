mod common;

use crystal_lab::crystal::{
    bfs, check_axioms, graphs_isomorphic, string_lengths_match, Dual, Tensor,
};
use crystal_lab::elementary::{BInf, BiCrystal, BiElt, TCrystal};
use crystal_lab::level_paths::{ground_path, LevelCrystal, ModCrystal};
use crystal_lab::path_inf::PathCrystal;
use crystal_lab::seq_real::SeqCrystal;
use crystal_lab::{Crystal, ExtInt, HalfPath, ModElt, NodeIndex, SeqElt, Weight};

const I0: NodeIndex = NodeIndex::I0;
const I1: NodeIndex = NodeIndex::I1;

#[test]
fn elementary_crystals_satisfy_axioms() {
    let bis: Vec<BiElt> = (-4..=4)
        .flat_map(|n| [BiElt::new(I0, n), BiElt::new(I1, n)])
        .collect();
    assert!(check_axioms(&BiCrystal, &bis).ok());
    let ns: Vec<i64> = (-5..=5).collect();
    assert!(check_axioms(&BInf, &ns).ok());
    let ts = vec![Weight::level_zero(2, 1), Weight::new(1, 0, 0)];
    assert!(check_axioms(&TCrystal, &ts).ok());
    assert_eq!(TCrystal.e(I0, &ts[0]), None);
    assert_eq!(TCrystal.eps(I1, &ts[0]), ExtInt::NegInf);
}

#[test]
fn component_axioms() {
    let g = bfs(&PathCrystal, &HalfPath::u_inf(), 6);
    assert!(check_axioms(&PathCrystal, g.elements()).ok());
    // B(∞) is upper normal only: ε is the ẽ-string length, f̃ never vanishes
    for b in g.elements() {
        for i in NodeIndex::ALL {
            let mut n = 0;
            let mut cur = b.clone();
            while let Some(up) = PathCrystal.e(i, &cur) {
                cur = up;
                n += 1;
            }
            assert_eq!(PathCrystal.eps(i, b), ExtInt::Fin(n));
            assert!(PathCrystal.f(i, b).is_some());
        }
    }
    let s = bfs(&SeqCrystal, &SeqElt::empty(I1), 6);
    assert!(check_axioms(&SeqCrystal, s.elements()).ok());
    let l = bfs(&LevelCrystal, &ground_path(2, 0), 4);
    assert!(check_axioms(&LevelCrystal, l.elements()).ok());
    assert!(l
        .elements()
        .all(|p| string_lengths_match(&LevelCrystal, p, 20)));
    let m = bfs(&ModCrystal, &ModElt::unit(Weight::level_zero(1, 1)), 4);
    assert!(check_axioms(&ModCrystal, m.elements()).ok());
}

#[test]
fn tensor_and_dual_axioms() {
    let t = Tensor(BiCrystal, BiCrystal);
    let elts: Vec<_> = (-3..=3)
        .flat_map(|a| (-3..=3).map(move |b| (BiElt::new(I0, a), BiElt::new(I0, b))))
        .collect();
    assert!(check_axioms(&t, &elts).ok());
    let d = Dual(BInf);
    let ns: Vec<i64> = (-3..=3).collect();
    assert!(check_axioms(&d, &ns).ok());
}

#[test]
fn tensor_rule_direction() {
    // f̃ acts on the left factor exactly when φ(b₁) > ε(b₂)
    let t = Tensor(BiCrystal, BiCrystal);
    let b = (BiElt::new(I0, 1), BiElt::new(I0, -1));
    assert_eq!(t.f(I0, &b), Some((BiElt::new(I0, 1), BiElt::new(I0, -2))));
    assert_eq!(t.e(I0, &b), Some((BiElt::new(I0, 2), BiElt::new(I0, -1))));
}

#[test]
fn depth_one_component_of_unit() {
    let g = bfs(&LevelCrystal, &ground_path(1, 0), 1);
    assert_eq!(g.len(), 3);
    let u = ground_path(1, 0);
    assert!(LevelCrystal.e(I0, &u).is_none());
    assert!(LevelCrystal.f(I1, &u).is_none());
}

#[test]
fn graph_export_and_isomorphism() {
    let a = bfs(&PathCrystal, &HalfPath::u_inf(), 5);
    let b = bfs(&SeqCrystal, &SeqElt::empty(I0), 5);
    assert!(graphs_isomorphic(&a, &b));
    let c = bfs(&PathCrystal, &HalfPath::u_inf(), 4);
    assert!(!graphs_isomorphic(&a, &c));
    let json = a.to_json();
    assert_eq!(json["nodes"].as_array().unwrap().len(), a.len());
    assert_eq!(json["edges"].as_array().unwrap().len(), a.edges.len());
    assert!(a.to_dot().starts_with("digraph"));
}

#[test]
fn ext_int_serde() {
    assert_eq!(serde_json::to_string(&ExtInt::NegInf).unwrap(), "\"-inf\"");
    assert_eq!(serde_json::to_string(&ExtInt::Fin(3)).unwrap(), "3");
    assert!(ExtInt::NegInf < ExtInt::Fin(-100));
}
