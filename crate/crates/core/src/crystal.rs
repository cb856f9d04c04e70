//! The abstract crystal contract, tensor and dual combinators, bounded
//! breadth-first closure, axiom checking and rooted graph isomorphism.

use std::cmp::Ordering;
use std::collections::{BTreeMap, VecDeque};
use std::fmt::{self, Debug, Write as _};
use std::hash::Hash;
use std::ops::Add;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::weights::{pairing, simple_root, NodeIndex, Weight};

/// An integer or −∞. −∞ absorbs addition and is neutral for max.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtInt {
    NegInf,
    Fin(i64),
}

impl ExtInt {
    pub fn is_neg_inf(self) -> bool {
        matches!(self, ExtInt::NegInf)
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            ExtInt::Fin(v) => Some(v),
            ExtInt::NegInf => None,
        }
    }
}

impl From<i64> for ExtInt {
    fn from(v: i64) -> ExtInt {
        ExtInt::Fin(v)
    }
}

impl Add<i64> for ExtInt {
    type Output = ExtInt;
    fn add(self, o: i64) -> ExtInt {
        match self {
            ExtInt::Fin(v) => ExtInt::Fin(v + o),
            ExtInt::NegInf => ExtInt::NegInf,
        }
    }
}

impl Add for ExtInt {
    type Output = ExtInt;
    fn add(self, o: ExtInt) -> ExtInt {
        match (self, o) {
            (ExtInt::Fin(a), ExtInt::Fin(b)) => ExtInt::Fin(a + b),
            _ => ExtInt::NegInf,
        }
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::Fin(v) => write!(f, "{v}"),
            ExtInt::NegInf => write!(f, "-inf"),
        }
    }
}

impl Serialize for ExtInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtInt::Fin(v) => s.serialize_i64(*v),
            ExtInt::NegInf => s.serialize_str("-inf"),
        }
    }
}

/// A crystal realization. Elements are plain values; the ideal element 0 is
/// modeled by `None` results of the partial operators.
pub trait Crystal {
    type Elt: Clone + Eq + Ord + Hash + Debug;

    fn wt(&self, b: &Self::Elt) -> Weight;
    fn eps(&self, i: NodeIndex, b: &Self::Elt) -> ExtInt;
    fn phi(&self, i: NodeIndex, b: &Self::Elt) -> ExtInt;
    fn e(&self, i: NodeIndex, b: &Self::Elt) -> Option<Self::Elt>;
    fn f(&self, i: NodeIndex, b: &Self::Elt) -> Option<Self::Elt>;

    /// Canonical text form; also the BFS ordering key.
    fn serial(&self, b: &Self::Elt) -> String {
        format!("{b:?}")
    }

    /// True when weights are only meaningful modulo δ.
    fn classical_weights(&self) -> bool {
        false
    }
}

/// A crystal that also carries the star-conjugated (right) structure.
pub trait StarredCrystal: Crystal {
    fn e_star(&self, i: NodeIndex, b: &Self::Elt) -> Option<Self::Elt>;
    fn f_star(&self, i: NodeIndex, b: &Self::Elt) -> Option<Self::Elt>;
}

// --- tensor rules, as pure formulas ---------------------------------------

/// `ε_i(b₁⊗b₂) = max(ε_i(b₁), ε_i(b₂) − ⟨h_i, wt b₁⟩)`.
pub fn tensor_eps(eps1: ExtInt, eps2: ExtInt, pair_wt1: i64) -> ExtInt {
    eps1.max(eps2 + (-pair_wt1))
}

/// `φ_i(b₁⊗b₂) = max(φ_i(b₂), φ_i(b₁) + ⟨h_i, wt b₂⟩)`.
pub fn tensor_phi(phi1: ExtInt, phi2: ExtInt, pair_wt2: i64) -> ExtInt {
    phi2.max(phi1 + pair_wt2)
}

/// ẽ_i acts on the left factor iff `φ_i(b₁) ≥ ε_i(b₂)`.
pub fn e_acts_left(phi1: ExtInt, eps2: ExtInt) -> bool {
    phi1 >= eps2
}

/// f̃_i acts on the left factor iff `φ_i(b₁) > ε_i(b₂)`.
pub fn f_acts_left(phi1: ExtInt, eps2: ExtInt) -> bool {
    phi1 > eps2
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Tensor<A, B>(pub A, pub B);

impl<A: Crystal, B: Crystal> Crystal for Tensor<A, B> {
    type Elt = (A::Elt, B::Elt);

    fn wt(&self, b: &Self::Elt) -> Weight {
        self.0.wt(&b.0) + self.1.wt(&b.1)
    }

    fn eps(&self, i: NodeIndex, b: &Self::Elt) -> ExtInt {
        tensor_eps(
            self.0.eps(i, &b.0),
            self.1.eps(i, &b.1),
            pairing(i, self.0.wt(&b.0)),
        )
    }

    fn phi(&self, i: NodeIndex, b: &Self::Elt) -> ExtInt {
        tensor_phi(
            self.0.phi(i, &b.0),
            self.1.phi(i, &b.1),
            pairing(i, self.1.wt(&b.1)),
        )
    }

    fn e(&self, i: NodeIndex, b: &Self::Elt) -> Option<Self::Elt> {
        if e_acts_left(self.0.phi(i, &b.0), self.1.eps(i, &b.1)) {
            Some((self.0.e(i, &b.0)?, b.1.clone()))
        } else {
            Some((b.0.clone(), self.1.e(i, &b.1)?))
        }
    }

    fn f(&self, i: NodeIndex, b: &Self::Elt) -> Option<Self::Elt> {
        if f_acts_left(self.0.phi(i, &b.0), self.1.eps(i, &b.1)) {
            Some((self.0.f(i, &b.0)?, b.1.clone()))
        } else {
            Some((b.0.clone(), self.1.f(i, &b.1)?))
        }
    }

    fn serial(&self, b: &Self::Elt) -> String {
        format!("{} ⊗ {}", self.0.serial(&b.0), self.1.serial(&b.1))
    }

    fn classical_weights(&self) -> bool {
        self.0.classical_weights() || self.1.classical_weights()
    }
}

/// The dual crystal B^∧: weight negated, ε/φ and ẽ/f̃ exchanged.
#[derive(Debug, Clone, Copy, Default)]
pub struct Dual<C>(pub C);

impl<C: Crystal> Crystal for Dual<C> {
    type Elt = C::Elt;

    fn wt(&self, b: &Self::Elt) -> Weight {
        -self.0.wt(b)
    }
    fn eps(&self, i: NodeIndex, b: &Self::Elt) -> ExtInt {
        self.0.phi(i, b)
    }
    fn phi(&self, i: NodeIndex, b: &Self::Elt) -> ExtInt {
        self.0.eps(i, b)
    }
    fn e(&self, i: NodeIndex, b: &Self::Elt) -> Option<Self::Elt> {
        self.0.f(i, b)
    }
    fn f(&self, i: NodeIndex, b: &Self::Elt) -> Option<Self::Elt> {
        self.0.e(i, b)
    }
    fn serial(&self, b: &Self::Elt) -> String {
        format!("({})^", self.0.serial(b))
    }
    fn classical_weights(&self) -> bool {
        self.0.classical_weights()
    }
}

/// `(b₁⊗b₂)^∧ ↔ b₂^∧⊗b₁^∧`.
pub fn dual_tensor_swap<X: Clone, Y: Clone>(b: &(X, Y)) -> (Y, X) {
    (b.1.clone(), b.0.clone())
}

/// Applies ẽ_i (`raise`) or f̃_i `n` times, stopping at the first absent result.
pub fn apply_power<C: Crystal>(
    c: &C,
    i: NodeIndex,
    raise: bool,
    n: u64,
    b: &C::Elt,
) -> Option<C::Elt> {
    let mut cur = b.clone();
    for _ in 0..n {
        cur = if raise { c.e(i, &cur)? } else { c.f(i, &cur)? };
    }
    Some(cur)
}

// --- graphs -----------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OpFamily {
    Plain,
    Starred,
}

#[derive(Debug, Clone)]
pub struct GraphNode<E> {
    pub elt: E,
    pub wt: Weight,
    pub serial: String,
    pub dist: usize,
}

/// A depth-bounded piece of a connected component. Nodes are sorted by their
/// canonical serialization; an edge `(s, t, i)` means `t = f̃_i s` (or `f̃*_i`).
#[derive(Debug, Clone)]
pub struct ComponentGraph<E> {
    pub nodes: Vec<GraphNode<E>>,
    pub edges: Vec<(usize, usize, NodeIndex)>,
    pub root: usize,
    pub depth: usize,
    pub family: OpFamily,
}

#[derive(Serialize)]
struct JsonNode<'a> {
    id: String,
    wt: Weight,
    serial: &'a str,
}

#[derive(Serialize)]
struct JsonEdge {
    src: String,
    dst: String,
    i: NodeIndex,
}

#[derive(Serialize)]
struct JsonGraph<'a> {
    nodes: Vec<JsonNode<'a>>,
    edges: Vec<JsonEdge>,
}

pub fn serial_id(serial: &str) -> String {
    let digest = Sha256::digest(serial.as_bytes());
    digest[..8]
        .iter()
        .fold(String::with_capacity(16), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
}

impl<E: Clone + Ord> ComponentGraph<E> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = &E> {
        self.nodes.iter().map(|n| &n.elt)
    }

    pub fn index_of(&self, e: &E) -> Option<usize> {
        self.nodes.iter().position(|n| &n.elt == e)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let ids: Vec<String> = self.nodes.iter().map(|n| serial_id(&n.serial)).collect();
        let g = JsonGraph {
            nodes: self
                .nodes
                .iter()
                .zip(&ids)
                .map(|(n, id)| JsonNode {
                    id: id.clone(),
                    wt: n.wt,
                    serial: &n.serial,
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|&(s, t, i)| JsonEdge {
                    src: ids[s].clone(),
                    dst: ids[t].clone(),
                    i,
                })
                .collect(),
        };
        serde_json::to_value(g).expect("graph serializes")
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph crystal {\n");
        let ids: Vec<String> = self.nodes.iter().map(|n| serial_id(&n.serial)).collect();
        for (n, id) in self.nodes.iter().zip(&ids) {
            let label = n.serial.replace('"', "\\\"");
            let _ = writeln!(out, "  \"{id}\" [label=\"{label}\\n{}\"];", n.wt);
        }
        for &(s, t, i) in &self.edges {
            let _ = writeln!(out, "  \"{}\" -> \"{}\" [label=\"{i}\"];", ids[s], ids[t]);
        }
        out.push_str("}\n");
        out
    }
}

fn close_by<C, Op>(
    c: &C,
    seed: &C::Elt,
    depth: usize,
    family: OpFamily,
    op: Op,
) -> ComponentGraph<C::Elt>
where
    C: Crystal,
    Op: Fn(NodeIndex, bool, &C::Elt) -> Option<C::Elt>,
{
    let mut dist: BTreeMap<C::Elt, usize> = BTreeMap::new();
    let mut queue = VecDeque::new();
    dist.insert(seed.clone(), 0);
    queue.push_back(seed.clone());
    while let Some(b) = queue.pop_front() {
        let d = dist[&b];
        if d == depth {
            continue;
        }
        for i in NodeIndex::ALL {
            for raise in [false, true] {
                if let Some(nb) = op(i, raise, &b) {
                    if !dist.contains_key(&nb) {
                        dist.insert(nb.clone(), d + 1);
                        queue.push_back(nb);
                    }
                }
            }
        }
    }
    let mut nodes: Vec<GraphNode<C::Elt>> = dist
        .into_iter()
        .map(|(elt, dist)| GraphNode {
            wt: c.wt(&elt),
            serial: c.serial(&elt),
            elt,
            dist,
        })
        .collect();
    nodes.sort_by(|a, b| a.serial.cmp(&b.serial).then_with(|| a.elt.cmp(&b.elt)));
    let index: BTreeMap<&C::Elt, usize> =
        nodes.iter().enumerate().map(|(k, n)| (&n.elt, k)).collect();
    let mut edges = Vec::new();
    for (k, n) in nodes.iter().enumerate() {
        for i in NodeIndex::ALL {
            if let Some(t) = op(i, false, &n.elt) {
                if let Some(&tk) = index.get(&t) {
                    edges.push((k, tk, i));
                }
            }
        }
    }
    edges.sort();
    let root = index[seed];
    ComponentGraph {
        nodes,
        edges,
        root,
        depth,
        family,
    }
}

/// Breadth-first closure of `seed` under ẽ_i, f̃_i up to `depth` steps.
pub fn bfs<C: Crystal>(c: &C, seed: &C::Elt, depth: usize) -> ComponentGraph<C::Elt> {
    close_by(c, seed, depth, OpFamily::Plain, |i, raise, b| {
        if raise {
            c.e(i, b)
        } else {
            c.f(i, b)
        }
    })
}

/// Breadth-first closure under the starred operators ẽ*_i, f̃*_i.
pub fn bfs_starred<C: StarredCrystal>(
    c: &C,
    seed: &C::Elt,
    depth: usize,
) -> ComponentGraph<C::Elt> {
    close_by(c, seed, depth, OpFamily::Starred, |i, raise, b| {
        if raise {
            c.e_star(i, b)
        } else {
            c.f_star(i, b)
        }
    })
}

pub fn bfs_family<C: StarredCrystal>(
    c: &C,
    seed: &C::Elt,
    depth: usize,
    family: OpFamily,
) -> ComponentGraph<C::Elt> {
    match family {
        OpFamily::Plain => bfs(c, seed, depth),
        OpFamily::Starred => bfs_starred(c, seed, depth),
    }
}

/// Canonical form of a rooted graph: nodes relabeled in traversal order from
/// the root (f̃₀, f̃₁, ẽ₀, ẽ₁ neighbours in that order), each with its weight
/// and its four neighbour labels.
pub fn canonical_form<E: Clone + Ord>(g: &ComponentGraph<E>) -> Vec<(Weight, [Option<usize>; 4])> {
    let n = g.nodes.len();
    let mut adj: Vec<[Option<usize>; 4]> = vec![[None; 4]; n];
    for &(s, t, i) in &g.edges {
        adj[s][i.index()] = Some(t);
        adj[t][2 + i.index()] = Some(s);
    }
    let mut label = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::new();
    label[g.root] = 0;
    order.push(g.root);
    queue.push_back(g.root);
    while let Some(v) = queue.pop_front() {
        for w in adj[v].iter().flatten() {
            if label[*w] == usize::MAX {
                label[*w] = order.len();
                order.push(*w);
                queue.push_back(*w);
            }
        }
    }
    order
        .iter()
        .map(|&v| {
            let mut nb = [None; 4];
            for (slot, t) in adj[v].iter().enumerate() {
                nb[slot] = t.map(|t| label[t]);
            }
            (g.nodes[v].wt, nb)
        })
        .collect()
}

/// Rooted isomorphism of colored weighted graphs. Both graphs must be
/// connected from their roots (true for BFS output).
pub fn graphs_isomorphic<A: Clone + Ord, B: Clone + Ord>(
    g1: &ComponentGraph<A>,
    g2: &ComponentGraph<B>,
) -> bool {
    g1.nodes.len() == g2.nodes.len() && canonical_form(g1) == canonical_form(g2)
}

// --- axioms -------------------------------------------------------------------

#[derive(Debug, Clone, Default, Serialize)]
pub struct AxiomReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn weights_agree(classical: bool, a: Weight, b: Weight) -> bool {
    if classical {
        a.a0 == b.a0 && a.a1 == b.a1
    } else {
        a == b
    }
}

pub fn check_axioms<'a, C: Crystal>(
    c: &C,
    elements: impl IntoIterator<Item = &'a C::Elt>,
) -> AxiomReport
where
    C::Elt: 'a,
{
    let mut rep = AxiomReport::default();
    let classical = c.classical_weights();
    for b in elements {
        rep.checked += 1;
        let w = c.wt(b);
        for i in NodeIndex::ALL {
            let (eps, phi) = (c.eps(i, b), c.phi(i, b));
            let ok = match (eps, phi) {
                (ExtInt::Fin(e), ExtInt::Fin(p)) => p == e + pairing(i, w),
                (ExtInt::NegInf, ExtInt::NegInf) => true,
                _ => false,
            };
            if !ok {
                rep.violations.push(format!(
                    "{}: phi_{i}={phi} eps_{i}={eps} wt={w}",
                    c.serial(b)
                ));
            }
            if let Some(up) = c.e(i, b) {
                if c.f(i, &up).as_ref() != Some(b) {
                    rep.violations
                        .push(format!("{}: f_{i} e_{i} b != b", c.serial(b)));
                }
                if !weights_agree(classical, c.wt(&up), w + simple_root(i)) {
                    rep.violations
                        .push(format!("{}: wt(e_{i} b) != wt(b)+alpha_{i}", c.serial(b)));
                }
            }
            if let Some(down) = c.f(i, b) {
                if c.e(i, &down).as_ref() != Some(b) {
                    rep.violations
                        .push(format!("{}: e_{i} f_{i} b != b", c.serial(b)));
                }
                if !weights_agree(classical, c.wt(&down), w - simple_root(i)) {
                    rep.violations
                        .push(format!("{}: wt(f_{i} b) != wt(b)-alpha_{i}", c.serial(b)));
                }
            }
        }
    }
    rep
}

/// The string property of normal crystals: ε/φ equal the lengths of the
/// ẽ/f̃ strings (checked up to `cap` steps).
pub fn string_lengths_match<C: Crystal>(c: &C, b: &C::Elt, cap: u64) -> bool {
    NodeIndex::ALL.iter().all(|&i| {
        let count = |raise: bool| {
            let mut n = 0;
            let mut cur = b.clone();
            while n <= cap {
                match if raise { c.e(i, &cur) } else { c.f(i, &cur) } {
                    Some(nb) => {
                        cur = nb;
                        n += 1;
                    }
                    None => break,
                }
            }
            n as i64
        };
        let eps = c.eps(i, b).finite();
        let phi = c.phi(i, b).finite();
        match (eps, phi) {
            (Some(e), Some(p)) if e <= cap as i64 && p <= cap as i64 => {
                count(true) == e && count(false) == p
            }
            (Some(_), Some(_)) => true,
            _ => false,
        }
    })
}

/// Orders graph nodes the way `bfs` does; handy for comparing element sets.
pub fn serial_order<C: Crystal>(c: &C, a: &C::Elt, b: &C::Elt) -> Ordering {
    c.serial(a).cmp(&c.serial(b)).then_with(|| a.cmp(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ext_int_arithmetic() {
        assert_eq!(ExtInt::NegInf + 5, ExtInt::NegInf);
        assert_eq!(ExtInt::NegInf.max(ExtInt::Fin(-7)), ExtInt::Fin(-7));
        assert!(ExtInt::NegInf < ExtInt::Fin(i64::MIN));
    }

    #[test]
    fn tensor_eps_direct() {
        assert_eq!(
            tensor_eps(ExtInt::Fin(2), ExtInt::Fin(1), 0),
            ExtInt::Fin(2)
        );
        assert_eq!(
            tensor_eps(ExtInt::Fin(3), ExtInt::NegInf, 4),
            ExtInt::Fin(3)
        );
        assert_eq!(
            tensor_phi(ExtInt::NegInf, ExtInt::Fin(2), -1),
            ExtInt::Fin(2)
        );
    }

    #[test]
    fn tie_breaking() {
        assert!(e_acts_left(ExtInt::Fin(1), ExtInt::Fin(0)));
        assert!(e_acts_left(ExtInt::Fin(1), ExtInt::Fin(1)));
        assert!(!f_acts_left(ExtInt::Fin(1), ExtInt::Fin(1)));
    }
}
