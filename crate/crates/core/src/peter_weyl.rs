//! Desk-scale verification of the decomposition of the level-0 crystal into
//! B^max(λ) ⊗ B(−λ)* pieces.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::crystal::{
    bfs, bfs_starred, canonical_form, graphs_isomorphic, Crystal, StarredCrystal,
};
use crate::error::{CrystalError, Result};
use crate::extremal::{
    bmax_contains, bmax_seeds, enum_bmax, enum_bminus_star, is_extremal, is_extremal_fast, s_i,
    s_orbit,
};
use crate::level_paths::{ground_path, lp_weight, LevelCrystal, LevelPath};
use crate::star::star_level;
use crate::weights::{orbit_canonical, reflect, NodeIndex, Weight};

/// One Kashiwara operator: color and direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Op {
    pub i: NodeIndex,
    pub raise: bool,
}

impl Op {
    pub fn inverse(self) -> Op {
        Op {
            i: self.i,
            raise: !self.raise,
        }
    }

    pub fn apply(self, p: &LevelPath) -> Option<LevelPath> {
        if self.raise {
            LevelCrystal.e(self.i, p)
        } else {
            LevelCrystal.f(self.i, p)
        }
    }

    pub fn apply_star(self, p: &LevelPath) -> Option<LevelPath> {
        if self.raise {
            LevelCrystal.e_star(self.i, p)
        } else {
            LevelCrystal.f_star(self.i, p)
        }
    }

    pub fn token(self, starred: bool) -> String {
        let c = match (self.raise, starred) {
            (true, false) => 'e',
            (false, false) => 'f',
            (true, true) => 'E',
            (false, true) => 'F',
        };
        format!("{c}{}", self.i)
    }
}

/// Applies a word first to last.
pub fn apply_word(word: &[Op], p: &LevelPath, starred: bool) -> Option<LevelPath> {
    word.iter().try_fold(p.clone(), |acc, op| {
        if starred {
            op.apply_star(&acc)
        } else {
            op.apply(&acc)
        }
    })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct DecompBounds {
    pub search_depth: usize,
    pub word_bound: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompRecord {
    pub element: LevelPath,
    pub lambda: Weight,
    pub left: LevelPath,
    /// Starred operators, first to last, carrying `left` to `element` and
    /// u_λ to `right`.
    pub right_word: Vec<String>,
    pub right: LevelPath,
    pub reconstructed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Decomposition {
    Decomposed(DecompRecord),
    Inconclusive { element: LevelPath, reason: String },
}

impl Decomposition {
    pub fn record(&self) -> Option<&DecompRecord> {
        match self {
            Decomposition::Decomposed(r) => Some(r),
            Decomposition::Inconclusive { .. } => None,
        }
    }
}

/// Nearest extremal element of the plain component of `start` and the word
/// reaching it.
fn find_extremal(start: &LevelPath, b: DecompBounds) -> Result<Option<(LevelPath, Vec<Op>)>> {
    let mut parent: HashMap<LevelPath, Option<(LevelPath, Op)>> = HashMap::new();
    let mut queue = VecDeque::new();
    parent.insert(start.clone(), None);
    queue.push_back((start.clone(), 0usize));
    while let Some((x, d)) = queue.pop_front() {
        if is_extremal_fast(&x).is_uniform()
            && is_extremal(&LevelCrystal, &x, b.word_bound)?.is_extremal()
        {
            let mut word = Vec::new();
            let mut cur = x.clone();
            while let Some(Some((prev, op))) = parent.get(&cur).cloned() {
                word.push(op);
                cur = prev;
            }
            word.reverse();
            return Ok(Some((x, word)));
        }
        if d == b.search_depth {
            continue;
        }
        for i in NodeIndex::ALL {
            for raise in [false, true] {
                let op = Op { i, raise };
                if let Some(y) = op.apply(&x) {
                    if !parent.contains_key(&y) {
                        parent.insert(y.clone(), Some((x.clone(), op)));
                        queue.push_back((y, d + 1));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Plain operators realizing `S_i` on `x`.
fn s_ops(i: NodeIndex, x: &LevelPath) -> Vec<Op> {
    let n = lp_weight(x).pairing(i);
    vec![Op { i, raise: n < 0 }; n.unsigned_abs() as usize]
}

pub fn decompose(e: &LevelPath, b: DecompBounds) -> Result<Decomposition> {
    let es = star_level(e);
    let Some((x, path)) = find_extremal(&es, b)? else {
        return Ok(Decomposition::Inconclusive {
            element: e.clone(),
            reason: format!("no extremal vector within plain depth {}", b.search_depth),
        });
    };
    let (lam, sword) = orbit_canonical(-lp_weight(&x))?;
    // x' = S_w x has weight −λ; record the plain operators undoing it
    let mut xp = x.clone();
    let mut undo: Vec<Vec<Op>> = Vec::new();
    for &i in &sword {
        let ops = s_ops(i, &xp);
        xp = s_i(&LevelCrystal, i, &xp)?;
        undo.push(ops.iter().map(|o| o.inverse()).collect());
    }
    let mut word: Vec<Op> = undo.into_iter().rev().flatten().collect();
    word.extend(path.iter().rev().map(|o| o.inverse()));
    let left = star_level(&xp);
    let u = ground_path(lam.m(), lam.d);
    let Some(right) = apply_word(&word, &u, true) else {
        return Err(CrystalError::Reduction(format!(
            "starred word kills u_λ but not the left factor of {e}"
        )));
    };
    let reconstructed = apply_word(&word, &left, true).as_ref() == Some(e);
    Ok(Decomposition::Decomposed(DecompRecord {
        element: e.clone(),
        lambda: lam,
        left,
        right_word: word.iter().map(|o| o.token(true)).collect(),
        right,
        reconstructed,
    }))
}

// --- reports -----------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub bounds: String,
    pub pass: bool,
    pub witnesses: Vec<String>,
}

impl Check {
    fn new(name: impl Into<String>, bounds: impl Into<String>, witnesses: Vec<String>) -> Check {
        Check {
            name: name.into(),
            bounds: bounds.into(),
            pass: witnesses.is_empty(),
            witnesses,
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
    pub inconclusive: Vec<String>,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn conclusive(&self) -> bool {
        self.inconclusive.is_empty()
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.inconclusive.extend(other.inconclusive);
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{} {} [{}]\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.bounds
            ));
            for w in c.witnesses.iter().take(5) {
                out.push_str(&format!("    {w}\n"));
            }
        }
        if !self.inconclusive.is_empty() {
            out.push_str(&format!("INCONCLUSIVE {}\n", self.inconclusive.len()));
        }
        out
    }
}

fn lam_str(lam: Weight) -> String {
    format!("({},{})", lam.m(), lam.d)
}

/// Thread pool honoring CRYSTAL_LAB_THREADS.
pub fn with_pool<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    let threads = std::env::var("CRYSTAL_LAB_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(0);
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Extremal elements of weight λ: u_λ, stars of the B^max(−λ) seeds and the
/// B(−λ)* slice; each generates a component isomorphic to that of u_λ.
pub fn verify_c1(lam: Weight, depth: usize) -> Result<Report> {
    let u = ground_path(lam.m(), lam.d);
    let reference = bfs(&LevelCrystal, &u, depth);
    let mut samples: BTreeSet<LevelPath> = BTreeSet::new();
    samples.insert(u.clone());
    for (_, seed) in bmax_seeds(-lam, 3)? {
        samples.insert(star_level(&seed));
    }
    samples.extend(enum_bminus_star(lam, 2)?);
    let samples: Vec<LevelPath> = samples.into_iter().collect();
    let bad: Vec<String> = with_pool(|| {
        samples
            .par_iter()
            .filter(|b| !graphs_isomorphic(&bfs(&LevelCrystal, b, depth), &reference))
            .map(|b| b.to_string())
            .collect()
    });
    let mut wrong_weight: Vec<String> = samples
        .iter()
        .filter(|b| lp_weight(b) != lam)
        .map(|b| format!("weight {}", b))
        .collect();
    wrong_weight.extend(bad);
    Ok(Report {
        checks: vec![Check::new(
            format!("C1 component isomorphism λ={}", lam_str(lam)),
            format!("depth {depth}, {} samples", samples.len()),
            wrong_weight,
        )],
        inconclusive: vec![],
    })
}

/// u_λ is the only node of weight exactly λ in its component.
pub fn verify_c2(lam: Weight, depth: usize) -> Report {
    let u = ground_path(lam.m(), lam.d);
    let g = bfs(&LevelCrystal, &u, depth);
    let bad: Vec<String> = g
        .nodes
        .iter()
        .filter(|n| n.wt == lam && n.elt != u)
        .map(|n| n.serial.clone())
        .collect();
    Report {
        checks: vec![Check::new(
            format!("C2 unique weight-λ node λ={}", lam_str(lam)),
            format!("depth {depth}, {} nodes", g.len()),
            bad,
        )],
        inconclusive: vec![],
    }
}

/// Every extremal node of the depth-bounded component of u_λ lies in the
/// S-orbit of u_λ within `word_bound`.
pub fn verify_c3(lam: Weight, word_bound: usize, depth: usize) -> Result<Report> {
    let u = ground_path(lam.m(), lam.d);
    let g = bfs(&LevelCrystal, &u, depth);
    let orbit = s_orbit(&LevelCrystal, &u, word_bound)?;
    let mut bad = Vec::new();
    let mut found = 0;
    for x in g.elements() {
        if is_extremal_fast(x).is_uniform()
            && is_extremal(&LevelCrystal, x, word_bound)?.is_extremal()
        {
            found += 1;
            if !orbit.contains(x) {
                bad.push(x.to_string());
            }
        }
    }
    Ok(Report {
        checks: vec![Check::new(
            format!("C3 S-connectivity λ={}", lam_str(lam)),
            format!("depth {depth}, word bound {word_bound}, {found} extremal nodes"),
            bad,
        )],
        inconclusive: vec![],
    })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct PwBounds {
    /// |c⃗| bound and plain depth for the B^max slice.
    pub bmax_size: usize,
    /// Starred depth for the right factor and the union.
    pub right_depth: usize,
    pub word_bound: usize,
}

struct Slice {
    lam: Weight,
    bmax: Vec<LevelPath>,
    right: Vec<LevelPath>,
    union: BTreeMap<LevelPath, (LevelPath, LevelPath)>,
    overlaps: Vec<String>,
}

/// Builds U = {W*(b)} over b in the B^max slice and starred words W of
/// length ≤ D, pairing each element with (b, W*(u_λ)).
fn build_slice(lam: Weight, bmax: Vec<LevelPath>, b: PwBounds) -> Slice {
    let u = ground_path(lam.m(), lam.d);
    let right_graph = bfs_starred(&LevelCrystal, &u, b.right_depth);
    let right: Vec<LevelPath> = right_graph.elements().cloned().collect();
    let mut union = BTreeMap::new();
    let mut overlaps = Vec::new();
    type Piece = (LevelPath, Vec<(LevelPath, LevelPath)>, Vec<String>);
    let pieces: Vec<Piece> = with_pool(|| {
        bmax.par_iter()
            .map(|x| {
                // follow one BFS tree on u_λ and on x in lockstep
                let mut pairs = vec![(x.clone(), u.clone())];
                let mut broken = Vec::new();
                let mut seen: BTreeSet<LevelPath> = BTreeSet::from([u.clone()]);
                let mut queue = VecDeque::from([(x.clone(), u.clone(), 0usize)]);
                while let Some((cx, cu, d)) = queue.pop_front() {
                    if d == b.right_depth {
                        continue;
                    }
                    for i in NodeIndex::ALL {
                        for raise in [false, true] {
                            let op = Op { i, raise };
                            match (op.apply_star(&cx), op.apply_star(&cu)) {
                                (Some(nx), Some(nu)) => {
                                    if seen.insert(nu.clone()) {
                                        pairs.push((nx.clone(), nu.clone()));
                                        queue.push_back((nx, nu, d + 1));
                                    }
                                }
                                (None, None) => {}
                                _ => broken.push(format!(
                                    "{} defined on only one of u_λ, {x} at {cu}",
                                    op.token(true)
                                )),
                            }
                        }
                    }
                }
                (x.clone(), pairs, broken)
            })
            .collect()
    });
    for (x, pairs, broken) in pieces {
        overlaps.extend(broken);
        for (e, r) in pairs {
            if let Some(prev) = union.insert(e.clone(), (x.clone(), r.clone())) {
                if prev != (x.clone(), r.clone()) {
                    overlaps.push(format!("{e} = φ({}, {}) = φ({x}, {r})", prev.0, prev.1));
                }
            }
        }
    }
    Slice {
        lam,
        bmax,
        right,
        union,
        overlaps,
    }
}

fn bi_weight(p: &LevelPath) -> (Weight, Weight) {
    (lp_weight(p), p.label())
}

/// Runs the decomposition checks for each orbit representative in `lams`.
pub fn pw_report(lams: &[Weight], b: PwBounds) -> Result<Report> {
    let dec_bounds = DecompBounds {
        search_depth: b.right_depth + b.bmax_size + 2,
        word_bound: b.word_bound,
    };
    let bounds = format!(
        "|c|≤{0}, plain depth {0}, starred depth {1}, word bound {2}",
        b.bmax_size, b.right_depth, b.word_bound
    );
    let mut report = Report::default();
    let mut slices = Vec::new();
    for &lam0 in lams {
        let (lam, _) = orbit_canonical(lam0)?;
        let bmax = enum_bmax(lam, b.bmax_size)?;
        let slice = build_slice(lam, bmax, b);
        let tag = lam_str(lam);

        // bmax membership of the slice
        let not_bmax: Vec<String> = slice
            .bmax
            .iter()
            .filter(|x| !bmax_contains(lam, x, b.word_bound).unwrap_or(false))
            .map(|x| x.to_string())
            .collect();
        report.checks.push(Check::new(
            format!("B^max membership λ={tag}"),
            bounds.clone(),
            not_bmax,
        ));

        // well-definedness of φ and injectivity
        report.checks.push(Check::new(
            format!("factorization well-defined λ={tag}"),
            bounds.clone(),
            slice.overlaps.clone(),
        ));

        // counts: |U| = |B|·|R| overall and on every bi-weight
        let mut witnesses = Vec::new();
        if slice.union.len() != slice.bmax.len() * slice.right.len() {
            witnesses.push(format!(
                "|U|={} |B|={} |R|={}",
                slice.union.len(),
                slice.bmax.len(),
                slice.right.len()
            ));
        }
        let mut by_u: BTreeMap<(Weight, Weight), usize> = BTreeMap::new();
        for e in slice.union.keys() {
            *by_u.entry(bi_weight(e)).or_default() += 1;
        }
        let mut by_b: BTreeMap<Weight, usize> = BTreeMap::new();
        for x in &slice.bmax {
            *by_b.entry(lp_weight(x)).or_default() += 1;
        }
        let mut by_r: BTreeMap<Weight, usize> = BTreeMap::new();
        for r in &slice.right {
            *by_r.entry(r.label()).or_default() += 1;
        }
        let mut expected: BTreeMap<(Weight, Weight), usize> = BTreeMap::new();
        for (w, nb) in &by_b {
            for (l, nr) in &by_r {
                expected.insert((*w, *l), nb * nr);
            }
        }
        if by_u != expected {
            witnesses.push("bi-weight counts differ".to_string());
        }
        report.checks.push(Check::new(
            format!("slice counts λ={tag}"),
            bounds.clone(),
            witnesses,
        ));

        // decomposition returns the construction pair
        let entries: Vec<(&LevelPath, &(LevelPath, LevelPath))> = slice.union.iter().collect();
        let outcomes: Vec<Result<Decomposition>> = with_pool(|| {
            entries
                .par_iter()
                .map(|(e, _)| decompose(e, dec_bounds))
                .collect()
        });
        let mut bad = Vec::new();
        for ((e, (x, r)), out) in entries.iter().zip(outcomes) {
            match out? {
                Decomposition::Decomposed(rec) => {
                    if rec.lambda != lam || &rec.left != x || &rec.right != r || !rec.reconstructed
                    {
                        bad.push(format!(
                            "{e}: got ({}, {}, λ={})",
                            rec.left,
                            rec.right,
                            lam_str(rec.lambda)
                        ));
                    }
                }
                Decomposition::Inconclusive { reason, .. } => {
                    report.inconclusive.push(format!("{e}: {reason}"))
                }
            }
        }
        report.checks.push(Check::new(
            format!("factorization uniqueness λ={tag}"),
            bounds.clone(),
            bad,
        ));

        // W-invariance: S_i* carries the slice into B^max(s_i λ), and the
        // union built from there decomposes back to λ
        let mut w_bad = Vec::new();
        for i in NodeIndex::ALL {
            let lam_i = reflect(i, lam);
            let moved: Vec<LevelPath> = slice
                .bmax
                .iter()
                .map(|x| {
                    star_level(&s_i(&LevelCrystal, i, &star_level(x)).expect("normal crystal"))
                })
                .collect();
            for y in &moved {
                if !bmax_contains(lam_i, y, b.word_bound).unwrap_or(false) {
                    w_bad.push(format!("S_{i}* image {y} not in B^max"));
                }
            }
            let small = PwBounds {
                right_depth: b.right_depth.min(2),
                ..b
            };
            let other = build_slice(lam_i, moved, small);
            for e in other.union.keys() {
                match decompose(e, dec_bounds)? {
                    Decomposition::Decomposed(rec) if rec.lambda == lam => {}
                    Decomposition::Decomposed(rec) => {
                        w_bad.push(format!("{e} decomposes to λ={}", lam_str(rec.lambda)))
                    }
                    Decomposition::Inconclusive { reason, .. } => {
                        report.inconclusive.push(format!("{e}: {reason}"))
                    }
                }
            }
        }
        report.checks.push(Check::new(
            format!("W-invariance λ={tag}"),
            bounds.clone(),
            w_bad,
        ));
        slices.push(slice);
    }

    // disjointness across non-equivalent representatives
    let mut dis = Vec::new();
    for a in 0..slices.len() {
        for c in a + 1..slices.len() {
            if slices[a].lam == slices[c].lam {
                continue;
            }
            for e in slices[a].union.keys() {
                if slices[c].union.contains_key(e) {
                    dis.push(format!(
                        "{e} in λ={} and λ={}",
                        lam_str(slices[a].lam),
                        lam_str(slices[c].lam)
                    ));
                }
            }
        }
    }
    report
        .checks
        .push(Check::new("disjointness across orbits", bounds, dis));
    Ok(report)
}

/// Root-to-root comparison of a graph with itself after dropping an edge:
/// negative control for the isomorphism test.
pub fn corrupted_control(lam: Weight, depth: usize) -> bool {
    let u = ground_path(lam.m(), lam.d);
    let g = bfs(&LevelCrystal, &u, depth);
    let mut h = g.clone();
    h.edges.pop();
    canonical_form(&g) != canonical_form(&h)
}
