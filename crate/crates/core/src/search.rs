//! Exact maximum family sizes by branch-and-bound over the `k`-sets of `[n]`
//! in canonical order.
//!
//! Each node holds the chosen members and the candidates that can still be
//! added without creating a `(d, s)`-cluster. Adding `x` removes every
//! candidate `y` for which some `d - 2` chosen members complete a cluster with
//! `x` and `y`, so the candidate set stays exact and `|chosen| + |candidates|`
//! is a valid upper bound.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::binom::binomial_u64;
use crate::cluster::{find_violation, least_disjoint_pair};
use crate::family::{full_star, is_full_star_on_support, kset_plus_star, kset_plus_star_pattern, SetFamily};
use crate::kset::{KSet, VertexSet, MAX_VERTICES};

/// Largest number of candidate `k`-sets the search accepts.
pub const MAX_CANDIDATES: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("node budget of {budget} exhausted: {lower} <= h <= {upper}")]
    Inconclusive { budget: u64, lower: usize, upper: usize },
    #[error("result carries no witnesses")]
    NoWitnesses,
    #[error("internal check failed: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Plain,
    Nonintersecting,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Plain => "plain",
            Mode::Nonintersecting => "nonintersecting",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "plain" => Ok(Mode::Plain),
            "nonintersecting" => Ok(Mode::Nonintersecting),
            other => Err(format!("unknown mode `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Enumerate {
    ValueOnly,
    OneWitness,
    AllMaximum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub enumerate: Enumerate,
    pub node_budget: Option<u64>,
    pub workers: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            enumerate: Enumerate::OneWitness,
            node_budget: None,
            workers: 1,
        }
    }
}

impl SearchConfig {
    pub fn new(enumerate: Enumerate) -> Self {
        SearchConfig {
            enumerate,
            ..Self::default()
        }
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn budget(mut self, nodes: u64) -> Self {
        self.node_budget = Some(nodes);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    FullStar,
    KsetPlusStar,
    Other,
}

impl Construction {
    pub fn as_str(self) -> &'static str {
        match self {
            Construction::FullStar => "full-star",
            Construction::KsetPlusStar => "kset-plus-star",
            Construction::Other => "other",
        }
    }
}

impl std::fmt::Display for Construction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub s: usize,
    pub mode: Mode,
    /// Exact maximum when `certified`, otherwise the best size found.
    pub h: usize,
    /// Equal to `h` when `certified`.
    pub upper_bound: usize,
    pub witnesses: Vec<SetFamily>,
    pub nodes_explored: u64,
    pub certified: bool,
    /// Size of the explicit construction used to seed the search.
    pub lower_bound: usize,
    /// The known construction attaining `h`, if any.
    pub lower_bound_construction: Construction,
}

impl SearchResult {
    pub fn require_certified(self, budget: u64) -> Result<SearchResult, SearchError> {
        if self.certified {
            Ok(self)
        } else {
            Err(SearchError::Inconclusive {
                budget,
                lower: self.h,
                upper: self.upper_bound,
            })
        }
    }
}

pub fn classify_family(family: &SetFamily) -> Construction {
    if is_full_star_on_support(family) {
        Construction::FullStar
    } else if kset_plus_star_pattern(family).is_some() {
        Construction::KsetPlusStar
    } else {
        Construction::Other
    }
}

pub fn classify_extremal(result: &SearchResult) -> Result<Vec<Construction>, SearchError> {
    if result.witnesses.is_empty() {
        return Err(SearchError::NoWitnesses);
    }
    Ok(result.witnesses.iter().map(classify_family).collect())
}

#[derive(Clone, Copy, PartialEq, Eq, Default)]
struct Bits([u64; 4]);

impl Bits {
    fn full(m: usize) -> Self {
        let mut b = Bits::default();
        for i in 0..m {
            b.set(i);
        }
        b
    }

    fn set(&mut self, i: usize) {
        self.0[i >> 6] |= 1 << (i & 63);
    }

    fn clear(&mut self, i: usize) {
        self.0[i >> 6] &= !(1 << (i & 63));
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    fn and(self, o: Bits) -> Bits {
        Bits(std::array::from_fn(|i| self.0[i] & o.0[i]))
    }

    fn iter(self) -> impl Iterator<Item = usize> {
        (0..4).flat_map(move |w| {
            let mut word = self.0[w];
            std::iter::from_fn(move || {
                (word != 0).then(|| {
                    let t = word.trailing_zeros() as usize;
                    word &= word - 1;
                    w * 64 + t
                })
            })
        })
    }
}

struct Problem {
    n: usize,
    k: usize,
    d: usize,
    s: usize,
    sets: Vec<KSet>,
    /// `compat[x]`: candidates `y != x` with `|x ∪ y| <= s`.
    compat: Vec<Bits>,
}

impl Problem {
    fn new(n: usize, k: usize, d: usize, s: usize) -> Self {
        let sets: Vec<KSet> = VertexSet::ground(n).subsets(k).collect();
        let compat = sets
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let mut b = Bits::default();
                for (j, &y) in sets.iter().enumerate() {
                    if i != j && (x | y).len() <= s {
                        b.set(j);
                    }
                }
                b
            })
            .collect();
        Problem { n, k, d, s, sets, compat }
    }

    fn index_of(&self, set: KSet) -> usize {
        self.sets.binary_search(&set).expect("k-set of [n]")
    }

    /// Some `d - 2` members of `chosen[start..]` complete a cluster together
    /// with the running union and intersection.
    fn completes(&self, chosen: &[usize], start: usize, need: usize, union: VertexSet, inter: VertexSet) -> bool {
        if need == 0 {
            return inter.is_empty();
        }
        if chosen.len() < start + need {
            return false;
        }
        for i in start..=chosen.len() - need {
            let c = self.sets[chosen[i]];
            let u = union | c;
            if u.len() <= self.s && self.completes(chosen, i + 1, need - 1, u, inter & c) {
                return true;
            }
        }
        false
    }

    /// Candidates left after adding `x` to `chosen`.
    fn include(&self, chosen: &[usize], cands: Bits, x: usize) -> Bits {
        let mut out = cands;
        out.clear(x);
        let sx = self.sets[x];
        for y in cands.and(self.compat[x]).iter() {
            let sy = sx | self.sets[y];
            if self.completes(chosen, 0, self.d - 2, sy, sx & self.sets[y]) {
                out.clear(y);
            }
        }
        out
    }

    fn family(&self, members: &[usize]) -> SetFamily {
        SetFamily::from_members(self.n, self.k, members.iter().map(|&i| self.sets[i]).collect())
            .expect("members are k-sets of [n]")
    }
}

#[derive(Clone)]
struct Node {
    chosen: Vec<usize>,
    cands: Bits,
}

struct Shared {
    best: AtomicUsize,
    nodes: AtomicU64,
    budget: Option<u64>,
    aborted: AtomicBool,
}

struct Searcher<'a> {
    p: &'a Problem,
    shared: &'a Shared,
    enumerate: Enumerate,
    /// Value-only and one-witness: largest size found (or the floor below
    /// which nothing is recorded). All-maximum: size being collected.
    local_best: usize,
    found: Vec<Vec<usize>>,
    nodes: u64,
    open_upper: usize,
    chosen: Vec<usize>,
}

impl<'a> Searcher<'a> {
    fn new(p: &'a Problem, shared: &'a Shared, enumerate: Enumerate, floor: usize) -> Self {
        Searcher {
            p,
            shared,
            enumerate,
            local_best: floor,
            found: Vec::new(),
            nodes: 0,
            open_upper: 0,
            chosen: Vec::new(),
        }
    }

    fn pruned(&self, bound: usize) -> bool {
        let global = self.shared.best.load(Ordering::Relaxed);
        match self.enumerate {
            Enumerate::AllMaximum => bound < self.local_best || bound < global,
            _ => bound <= self.local_best || bound < global,
        }
    }

    fn run(&mut self, node: Node) {
        self.chosen = node.chosen;
        self.dfs(node.cands);
    }

    fn dfs(&mut self, cands: Bits) {
        let bound = self.chosen.len() + cands.count();
        if self.pruned(bound) {
            return;
        }
        if self.shared.aborted.load(Ordering::Relaxed) {
            self.open_upper = self.open_upper.max(bound);
            return;
        }
        self.nodes += 1;
        if let Some(budget) = self.shared.budget {
            if self.shared.nodes.fetch_add(1, Ordering::Relaxed) >= budget {
                self.shared.aborted.store(true, Ordering::Relaxed);
                self.open_upper = self.open_upper.max(bound);
                return;
            }
        }
        let Some(x) = cands.first() else {
            self.leaf();
            return;
        };
        let inc = self.p.include(&self.chosen, cands, x);
        self.chosen.push(x);
        self.dfs(inc);
        self.chosen.pop();
        let mut exc = cands;
        exc.clear(x);
        self.dfs(exc);
    }

    fn leaf(&mut self) {
        let size = self.chosen.len();
        match self.enumerate {
            Enumerate::AllMaximum => {
                if size > self.local_best {
                    self.local_best = size;
                    self.found.clear();
                }
                self.found.push(self.chosen.clone());
            }
            _ => {
                self.local_best = size;
                self.found = vec![self.chosen.clone()];
            }
        }
        self.shared.best.fetch_max(size, Ordering::Relaxed);
    }
}

/// Splits the roots into subproblems in depth-first order.
fn expand(p: &Problem, node: Node, depth: usize, out: &mut Vec<Node>) {
    let Some(x) = node.cands.first().filter(|_| depth > 0) else {
        out.push(node);
        return;
    };
    let mut chosen = node.chosen.clone();
    let inc = p.include(&chosen, node.cands, x);
    chosen.push(x);
    expand(p, Node { chosen, cands: inc }, depth - 1, out);
    let mut exc = node.cands;
    exc.clear(x);
    expand(p, Node { chosen: node.chosen, cands: exc }, depth - 1, out);
}

struct Outcome {
    best: usize,
    found: Vec<Vec<usize>>,
    nodes: u64,
    open_upper: usize,
    aborted: bool,
}

fn solve(p: &Problem, roots: Vec<Node>, config: &SearchConfig, lower: usize) -> Outcome {
    let enumerate = config.enumerate;
    // Value-only and one-witness record strictly larger families, so start
    // just below the construction to still report one attaining it.
    let floor = match enumerate {
        Enumerate::AllMaximum => lower,
        _ => lower.saturating_sub(1),
    };
    let shared = Shared {
        best: AtomicUsize::new(floor),
        nodes: AtomicU64::new(0),
        budget: config.node_budget,
        aborted: AtomicBool::new(false),
    };
    let results: Vec<Searcher> = if config.workers <= 1 {
        let mut searcher = Searcher::new(p, &shared, enumerate, floor);
        let mut all = Vec::new();
        for root in roots {
            searcher.run(root);
            if enumerate == Enumerate::AllMaximum {
                all.append(&mut searcher.found);
            }
        }
        if enumerate == Enumerate::AllMaximum {
            searcher.found = all;
        }
        vec![searcher]
    } else {
        let target = 16 * config.workers;
        let mut depth = 1;
        let mut tasks = Vec::new();
        while depth <= 24 {
            tasks.clear();
            for root in &roots {
                expand(p, root.clone(), depth, &mut tasks);
            }
            if tasks.len() >= target {
                break;
            }
            depth += 1;
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .expect("thread pool");
        pool.install(|| {
            tasks
                .into_par_iter()
                .map(|task| {
                    let mut searcher = Searcher::new(p, &shared, enumerate, floor);
                    searcher.run(task);
                    searcher
                })
                .collect()
        })
    };

    let best = results.iter().map(|r| r.local_best).max().unwrap_or(floor);
    let mut found = Vec::new();
    for r in &results {
        for f in &r.found {
            if f.len() == best {
                found.push(f.clone());
            }
        }
    }
    Outcome {
        best,
        found,
        nodes: results.iter().map(|r| r.nodes).sum(),
        open_upper: results.iter().map(|r| r.open_upper).max().unwrap_or(0),
        aborted: shared.aborted.load(Ordering::Relaxed),
    }
}

fn check_size(n: usize, k: usize) -> Result<(), SearchError> {
    let m = binomial_u64(n as u64, k as u64).unwrap_or(u64::MAX);
    if m > MAX_CANDIDATES as u64 {
        return Err(SearchError::BadParameters(format!(
            "C({n},{k}) = {m} candidate sets exceed the limit of {MAX_CANDIDATES}"
        )));
    }
    Ok(())
}

fn finish(
    p: &Problem,
    mode: Mode,
    config: &SearchConfig,
    lower: usize,
    outcome: Outcome,
) -> Result<SearchResult, SearchError> {
    let certified = !outcome.aborted;
    let h = outcome.best.max(lower);
    let upper_bound = if certified { h } else { h.max(outcome.open_upper) };
    let mut witnesses: Vec<SetFamily> = match config.enumerate {
        Enumerate::ValueOnly => Vec::new(),
        Enumerate::OneWitness => outcome.found.first().map(|f| p.family(f)).into_iter().collect(),
        Enumerate::AllMaximum => {
            let set: BTreeSet<SetFamily> = outcome.found.iter().map(|f| p.family(f)).collect();
            set.into_iter().collect()
        }
    };
    if certified && config.enumerate != Enumerate::ValueOnly && witnesses.is_empty() {
        return Err(SearchError::Internal("no family of the maximum size recorded".into()));
    }
    for w in &witnesses {
        if w.len() != h {
            return Err(SearchError::Internal(format!("witness of size {} but h = {h}", w.len())));
        }
        let violation = find_violation(w, p.d, p.s).map_err(|e| SearchError::Internal(e.to_string()))?;
        if let Some(v) = violation {
            return Err(SearchError::Internal(format!("witness contains a cluster {:?}", v.to_lists())));
        }
        if mode == Mode::Nonintersecting && least_disjoint_pair(w).is_none() {
            return Err(SearchError::Internal("witness is intersecting".into()));
        }
    }
    if !certified && config.enumerate == Enumerate::AllMaximum {
        witnesses.clear();
    }
    let star = binomial_u64(p.n as u64 - 1, p.k as u64 - 1).unwrap_or(u64::MAX) as usize;
    if mode == Mode::Plain && h < star {
        return Err(SearchError::Internal(format!("h = {h} below the star bound {star}")));
    }
    let lower_bound_construction = match mode {
        Mode::Plain if h == star => Construction::FullStar,
        Mode::Nonintersecting if h == lower => Construction::KsetPlusStar,
        _ => Construction::Other,
    };
    Ok(SearchResult {
        n: p.n,
        k: p.k,
        d: p.d,
        s: p.s,
        mode,
        h,
        upper_bound,
        witnesses,
        nodes_explored: outcome.nodes,
        certified,
        lower_bound: lower,
        lower_bound_construction,
    })
}

/// `h(n, k, d, s)`: the largest `(d, s)`-conditionally intersecting
/// `k`-uniform family on `[n]`.
pub fn max_family(n: usize, k: usize, d: usize, s: usize, config: &SearchConfig) -> Result<SearchResult, SearchError> {
    if !(2 <= d && d <= k && k <= n && n <= MAX_VERTICES) || s < k {
        return Err(SearchError::BadParameters(format!(
            "need 2 <= d <= k <= n <= {MAX_VERTICES} and s >= k (got n = {n}, k = {k}, d = {d}, s = {s})"
        )));
    }
    check_size(n, k)?;
    let p = Problem::new(n, k, d, s);
    let star = full_star(n, k, 1).map_err(|e| SearchError::Internal(e.to_string()))?;
    if find_violation(&star, d, s).map_err(|e| SearchError::Internal(e.to_string()))?.is_some() {
        return Err(SearchError::Internal("full star violates the condition".into()));
    }
    let all = Bits::full(p.sets.len());
    let root = match config.enumerate {
        // Relabeling preserves the condition, so some maximum family contains [k].
        Enumerate::ValueOnly | Enumerate::OneWitness => Node {
            chosen: vec![0],
            cands: p.include(&[], all, 0),
        },
        Enumerate::AllMaximum => Node {
            chosen: Vec::new(),
            cands: all,
        },
    };
    let outcome = solve(&p, vec![root], config, star.len());
    finish(&p, Mode::Plain, config, star.len(), outcome)
}

fn seeded(p: &Problem, a: usize, b: usize) -> Node {
    let all = Bits::full(p.sets.len());
    let after_a = p.include(&[], all, a);
    Node {
        chosen: vec![a, b],
        cands: p.include(&[a], after_a, b),
    }
}

/// Largest `(3, 2k)`-conditionally intersecting `k`-uniform family on `[n]`
/// containing two disjoint members.
pub fn max_nonintersecting(n: usize, k: usize, config: &SearchConfig) -> Result<SearchResult, SearchError> {
    if k < 3 || n < 2 * k || n > MAX_VERTICES {
        return Err(SearchError::BadParameters(format!(
            "need k >= 3 and 2k <= n <= {MAX_VERTICES} (got n = {n}, k = {k})"
        )));
    }
    check_size(n, k)?;
    let p = Problem::new(n, k, 3, 2 * k);
    let seed = kset_plus_star(n, k).map_err(|e| SearchError::Internal(e.to_string()))?;
    let seed_ok = find_violation(&seed, 3, 2 * k)
        .map_err(|e| SearchError::Internal(e.to_string()))?
        .is_none()
        && least_disjoint_pair(&seed).is_some();
    if !seed_ok {
        return Err(SearchError::Internal("k-set plus star fails the hypotheses".into()));
    }
    let roots = match config.enumerate {
        // Every qualifying family has a disjoint pair, which relabels to
        // ([k], {k+1..2k}).
        Enumerate::ValueOnly | Enumerate::OneWitness => {
            let a = p.index_of(VertexSet::interval(1, k));
            let b = p.index_of(VertexSet::interval(k + 1, 2 * k));
            vec![seeded(&p, a, b)]
        }
        Enumerate::AllMaximum => {
            let m = p.sets.len();
            let mut roots = Vec::new();
            for a in 0..m {
                for b in a + 1..m {
                    if p.sets[a].is_disjoint(p.sets[b]) {
                        roots.push(seeded(&p, a, b));
                    }
                }
            }
            roots
        }
    };
    let outcome = solve(&p, roots, config, seed.len());
    finish(&p, Mode::Nonintersecting, config, seed.len(), outcome)
}
