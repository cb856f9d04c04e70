// shared helpers: elements reached by random operator walks
#![allow(dead_code)]

use crystal_lab::crystal::Crystal;
use crystal_lab::NodeIndex;
use proptest::prelude::*;

pub fn ops(max_len: usize) -> impl Strategy<Value = Vec<(NodeIndex, bool)>> {
    prop::collection::vec((0u8..2, prop::bool::weighted(0.3)), 0..max_len).prop_map(|v| {
        v.into_iter()
            .map(|(i, raise)| (NodeIndex::new(i).unwrap(), raise))
            .collect()
    })
}

/// Applies the operators in order, skipping the ones that vanish.
pub fn walk<C: Crystal>(c: &C, seed: &C::Elt, word: &[(NodeIndex, bool)]) -> C::Elt {
    word.iter().fold(seed.clone(), |acc, &(i, raise)| {
        let next = if raise { c.e(i, &acc) } else { c.f(i, &acc) };
        next.unwrap_or(acc)
    })
}
