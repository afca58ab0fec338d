//! Bad sets and the constructive structural decomposition of conditionally
//! intersecting families, with an independent certificate verifier.
//!
//! A member `B = {b_1 < ... < b_k}` is *bad* when none of its `(k-1)`-subsets
//! is unique, i.e. for every `i` some other member `C_i` contains
//! `B - {b_i}`. The span `V_B = B ∪ C_1 ∪ ... ∪ C_k` and the member set
//! `H_B = {B, C_1, ..., C_k}` seed one block of the decomposition.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cluster::{find_violation, ClusterError, ClusterWitness};
use crate::family::{FamilyError, SetFamily};
use crate::kset::{KSet, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("bad parameters: need 3 <= d <= k (got d = {d}, k = {k})")]
    BadParameters { d: usize, k: usize },
    #[error("family is not ({}, {})-conditionally intersecting: {:?}", .0.d, .0.s, .0.members)]
    NotConditionallyIntersecting(ClusterWitness),
    #[error(transparent)]
    Cluster(#[from] ClusterError),
    #[error("malformed certificate: {0}")]
    Malformed(String),
}

impl From<FamilyError> for StructureError {
    fn from(e: FamilyError) -> Self {
        StructureError::Malformed(e.to_string())
    }
}

/// A bad member together with the members certifying it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadSetWitness {
    pub bad: KSet,
    /// `C_1..C_k`; `C_i` contains `bad` minus its `i`-th smallest vertex.
    pub witnesses: Vec<KSet>,
    /// `V_B`.
    pub span: VertexSet,
    /// `H_B`.
    pub block_family: SetFamily,
}

impl BadSetWitness {
    fn build(n: usize, k: usize, bad: KSet, witnesses: Vec<KSet>) -> Self {
        let span = witnesses.iter().fold(bad, |a, &c| a | c);
        let mut members = witnesses.clone();
        members.push(bad);
        members.sort_unstable();
        BadSetWitness {
            bad,
            witnesses,
            span,
            block_family: SetFamily::from_sorted_unchecked(n, k, members),
        }
    }

    /// Checks the witness relations against `family`; returns a description
    /// of the first broken one.
    pub fn check(&self, family: &SetFamily) -> Result<(), String> {
        let k = family.k();
        if self.bad.len() != k || !family.contains(&self.bad) {
            return Err(format!("{} is not a member", self.bad));
        }
        if self.witnesses.len() != k {
            return Err(format!("{} has {} witnesses, expected {k}", self.bad, self.witnesses.len()));
        }
        for (b_i, c) in self.bad.iter().zip(&self.witnesses) {
            if !family.contains(c) || *c == self.bad {
                return Err(format!("witness {c} for {} is not another member", self.bad));
            }
            if (self.bad & *c) != self.bad.without(b_i) {
                return Err(format!("witness {c} does not meet {} in {}", self.bad, self.bad.without(b_i)));
            }
        }
        let span = self.witnesses.iter().fold(self.bad, |a, &c| a | c);
        if span != self.span {
            return Err(format!("span {} differs from {span}", self.span));
        }
        Ok(())
    }
}

/// One witness per bad member, in canonical member order. `C_i` is the
/// canonically least other member containing `B - {b_i}`.
pub fn bad_sets(family: &SetFamily) -> Vec<BadSetWitness> {
    let k = family.k();
    if k == 0 {
        return Vec::new();
    }
    // Members are visited in canonical order, so each list is sorted.
    let mut containing: HashMap<KSet, Vec<KSet>> = HashMap::new();
    for &m in family {
        for v in m.iter() {
            containing.entry(m.without(v)).or_default().push(m);
        }
    }
    family
        .iter()
        .filter_map(|&b| {
            let witnesses: Option<Vec<KSet>> = b
                .iter()
                .map(|v| containing[&b.without(v)].iter().copied().find(|&c| c != b))
                .collect();
            witnesses.map(|w| BadSetWitness::build(family.n(), k, b, w))
        })
        .collect()
}

/// Union bound that [`decompose`] validates before building blocks:
/// `2k + d - 3` in general and `2k` when `d = k`.
pub fn hypothesis_union_bound(k: usize, d: usize) -> usize {
    if d == k {
        2 * k
    } else {
        2 * k + d - 3
    }
}

/// Vertex partition `Y ∪ Z`, blocks partitioning `Z`, and the member
/// partition `H ∪ B ∪ S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub y: VertexSet,
    pub z: VertexSet,
    pub blocks: Vec<VertexSet>,
    pub h: SetFamily,
    pub b: SetFamily,
    pub s: SetFamily,
    pub seeds: Vec<BadSetWitness>,
}

/// Greedy decomposition: scan bad sets in canonical order and open a block
/// `V_B` whenever `B` avoids every block opened so far. `Z` is the union of
/// blocks, `H` the members inside `Y = [n] - Z`, `B` the union of the chosen
/// `H_B`, and `S` everything else.
pub fn decompose(family: &SetFamily, d: usize) -> Result<Decomposition, StructureError> {
    let k = family.k();
    if d < 3 || d > k {
        return Err(StructureError::BadParameters { d, k });
    }
    let s = hypothesis_union_bound(k, d);
    if let Some(w) = find_violation(family, d, s)? {
        return Err(StructureError::NotConditionallyIntersecting(w));
    }

    let mut z = VertexSet::EMPTY;
    let mut seeds = Vec::new();
    for w in bad_sets(family) {
        if w.bad.is_disjoint(z) {
            debug_assert!(w.span.is_disjoint(z));
            z = z | w.span;
            seeds.push(w);
        }
    }
    let y = VertexSet::ground(family.n()) - z;
    let mut b_members: Vec<KSet> = seeds.iter().flat_map(|w| w.block_family.iter().copied()).collect();
    b_members.sort_unstable();
    b_members.dedup();
    let b = SetFamily::from_sorted_unchecked(family.n(), k, b_members);
    let h = family.filter(|m| m.is_subset(y));
    let s_part = family.filter(|m| !m.is_subset(y) && !b.contains(m));
    Ok(Decomposition {
        n: family.n(),
        k,
        d,
        y,
        z,
        blocks: seeds.iter().map(|w| w.span).collect(),
        h,
        b,
        s: s_part,
        seeds,
    })
}

/// Named checks performed by [`verify_decomposition`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Clause {
    /// `Y`, `Z` partition `[n]`; blocks are pairwise disjoint and cover `Z`.
    VertexPartition,
    /// `H`, `B`, `S` partition the family.
    FamilyPartition,
    /// Every `H`-member lies in `Y` and has a unique `(k-1)`-subset.
    Heavy,
    /// Every `B`-member lies in a single block; blocks have at most `2k` vertices.
    Blocks,
    /// Every `S`-member meets each block in 0 or at least `d` vertices and
    /// is not contained in `Y`.
    Sparse,
    /// For `d = k`: blocks are `(k+1)`-sets carrying complete `k`-graphs and `S` is empty.
    CompleteBlocks,
    /// Seeds are valid bad-set witnesses spanning the blocks, and `B` is the
    /// union of their member sets.
    Seeds,
    /// The family is `(d, s)`-conditionally intersecting.
    Hypothesis,
}

impl Clause {
    pub fn label(self) -> &'static str {
        match self {
            Clause::VertexPartition => "vertex-partition",
            Clause::FamilyPartition => "family-partition",
            Clause::Heavy => "a",
            Clause::Blocks => "b",
            Clause::Sparse => "c",
            Clause::CompleteBlocks => "b'",
            Clause::Seeds => "seeds",
            Clause::Hypothesis => "hypothesis",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseCheck {
    pub clause: Clause,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub member: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<ClauseCheck>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&ClauseCheck> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn get(&self, clause: Clause) -> Option<&ClauseCheck> {
        self.checks.iter().find(|c| c.clause == clause)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            write!(out, "clause {:<16} {status}", c.clause.label()).unwrap();
            if let Some(w) = &c.witness {
                write!(out, "  ({w})").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

struct Checker {
    checks: Vec<ClauseCheck>,
}

impl Checker {
    fn record(&mut self, clause: Clause, failure: Option<(String, Option<KSet>)>) {
        let passed = failure.is_none();
        let (witness, member) = match failure {
            Some((w, m)) => (Some(w), m.map(|m| m.to_vec())),
            None => (None, None),
        };
        self.checks.push(ClauseCheck {
            clause,
            passed,
            witness,
            member,
        });
    }
}

/// Checks a decomposition clause by clause. Only the family and the
/// certificate are consulted; nothing is recomputed through [`decompose`].
pub fn verify_decomposition(family: &SetFamily, dec: &Decomposition, d: usize, s: usize) -> VerificationReport {
    let n = family.n();
    let k = family.k();
    let ground = VertexSet::ground(n);
    let mut out = Checker { checks: Vec::new() };

    // Vertex partition.
    let failure = (|| {
        if dec.y | dec.z != ground {
            return Some((format!("Y ∪ Z = {} is not [{n}]", dec.y | dec.z), None));
        }
        if let Some(v) = (dec.y & dec.z).min_vertex() {
            return Some((format!("vertex {v} lies in both Y and Z"), None));
        }
        let mut covered = VertexSet::EMPTY;
        for (i, blk) in dec.blocks.iter().enumerate() {
            if let Some(v) = (covered & *blk).min_vertex() {
                return Some((format!("block {} overlaps an earlier block at vertex {v}", i + 1), None));
            }
            covered = covered | *blk;
        }
        if covered != dec.z {
            return Some((format!("blocks cover {covered}, Z is {}", dec.z), None));
        }
        None
    })();
    out.record(Clause::VertexPartition, failure);

    // Family partition.
    let failure = (|| {
        for part in [&dec.h, &dec.b, &dec.s] {
            if let Some(m) = part.iter().find(|m| !family.contains(m)) {
                return Some((format!("{m} is not a family member"), Some(*m)));
            }
        }
        for m in family {
            let hits = [&dec.h, &dec.b, &dec.s].iter().filter(|p| p.contains(m)).count();
            if hits != 1 {
                return Some((format!("{m} appears in {hits} parts"), Some(*m)));
            }
        }
        None
    })();
    out.record(Clause::FamilyPartition, failure);

    // (a)
    let degrees = family.shadow_degrees();
    let has_unique = |m: &KSet| m.iter().any(|v| degrees.get(&m.without(v)) == Some(&1));
    let failure = dec.h.iter().find_map(|m| {
        if !m.is_subset(dec.y) {
            Some((format!("H-member {m} is not inside Y"), Some(*m)))
        } else if !has_unique(m) {
            Some((format!("H-member {m} has no unique {}-subset", k.saturating_sub(1)), Some(*m)))
        } else {
            None
        }
    });
    out.record(Clause::Heavy, failure);

    // (b)
    let failure = dec
        .blocks
        .iter()
        .enumerate()
        .find(|(_, blk)| blk.len() > 2 * k)
        .map(|(i, blk)| (format!("block {} = {blk} has more than {} vertices", i + 1, 2 * k), None))
        .or_else(|| {
            dec.b.iter().find_map(|m| {
                let inside = dec.blocks.iter().filter(|blk| m.is_subset(**blk)).count();
                (inside != 1).then(|| (format!("B-member {m} is not inside exactly one block"), Some(*m)))
            })
        });
    out.record(Clause::Blocks, failure);

    // (c)
    let failure = dec.s.iter().find_map(|m| {
        if m.is_subset(dec.y) {
            return Some((format!("S-member {m} lies inside Y"), Some(*m)));
        }
        dec.blocks.iter().find_map(|blk| {
            let meet = (*m & *blk).len();
            (meet != 0 && meet < d).then(|| (format!("S-member {m} meets block {blk} in {meet} vertices"), Some(*m)))
        })
    });
    out.record(Clause::Sparse, failure);

    // (b') for d = k
    if d == k {
        let failure = (|| {
            for blk in &dec.blocks {
                if blk.len() != k + 1 {
                    return Some((format!("block {blk} has {} vertices, expected {}", blk.len(), k + 1), None));
                }
                if let Some(missing) = blk.subsets(k).find(|e| !dec.b.contains(e)) {
                    return Some((format!("block {blk} is missing edge {missing}"), None));
                }
            }
            if let Some(m) = dec.s.iter().next() {
                return Some((format!("S is nonempty, e.g. {m}"), Some(*m)));
            }
            None
        })();
        out.record(Clause::CompleteBlocks, failure);
    }

    // Seeds
    let failure = (|| {
        if dec.seeds.len() != dec.blocks.len() {
            return Some((format!("{} seeds for {} blocks", dec.seeds.len(), dec.blocks.len()), None));
        }
        let mut union: Vec<KSet> = Vec::new();
        for (seed, blk) in dec.seeds.iter().zip(&dec.blocks) {
            if let Err(e) = seed.check(family) {
                return Some((e, Some(seed.bad)));
            }
            if has_unique(&seed.bad) {
                return Some((format!("seed {} has a unique subset", seed.bad), Some(seed.bad)));
            }
            if seed.span != *blk {
                return Some((format!("seed {} spans {}, block is {blk}", seed.bad, seed.span), Some(seed.bad)));
            }
            union.extend(seed.witnesses.iter().copied());
            union.push(seed.bad);
        }
        union.sort_unstable();
        union.dedup();
        if union != dec.b.members() {
            let stray = dec
                .b
                .iter()
                .find(|m| union.binary_search(m).is_err())
                .or_else(|| union.iter().find(|m| !dec.b.contains(m)))
                .copied();
            return Some(("B differs from the union of the seed member sets".to_string(), stray));
        }
        None
    })();
    out.record(Clause::Seeds, failure);

    let failure = match find_violation(family, d, s) {
        Ok(None) => None,
        Ok(Some(w)) => Some((format!("({d}, {s})-cluster {:?}", w.members), w.members.first().copied())),
        Err(e) => Some((e.to_string(), None)),
    };
    out.record(Clause::Hypothesis, failure);

    VerificationReport { checks: out.checks }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockLemmaReport {
    pub span: Vec<usize>,
    pub d: usize,
    pub passed: bool,
    /// Members meeting the span in between 1 and `d - 1` vertices, with the
    /// size of the meet.
    pub violations: Vec<(Vec<usize>, usize)>,
}

/// Every member meets `V_B` in either no vertex or at least `d` vertices.
pub fn check_block_lemma(family: &SetFamily, w: &BadSetWitness, d: usize) -> BlockLemmaReport {
    let violations: Vec<(Vec<usize>, usize)> = family
        .iter()
        .filter_map(|m| {
            let meet = (*m & w.span).len();
            (meet != 0 && meet < d).then(|| (m.to_vec(), meet))
        })
        .collect();
    BlockLemmaReport {
        span: w.span.to_vec(),
        d,
        passed: violations.is_empty(),
        violations,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedRecord {
    pub bad: Vec<usize>,
    pub witnesses: Vec<Vec<usize>>,
}

/// Certificate serialization: every set as an ascending 1-based vertex list,
/// every list in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionRecord {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    #[serde(rename = "Y")]
    pub y: Vec<usize>,
    #[serde(rename = "Z")]
    pub z: Vec<usize>,
    pub blocks: Vec<Vec<usize>>,
    #[serde(rename = "H")]
    pub h: Vec<Vec<usize>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<usize>>,
    #[serde(rename = "S")]
    pub s: Vec<Vec<usize>>,
    pub seeds: Vec<SeedRecord>,
}

impl From<&Decomposition> for DecompositionRecord {
    fn from(dec: &Decomposition) -> Self {
        DecompositionRecord {
            n: dec.n,
            k: dec.k,
            d: dec.d,
            y: dec.y.to_vec(),
            z: dec.z.to_vec(),
            blocks: dec.blocks.iter().map(|b| b.to_vec()).collect(),
            h: dec.h.to_lists(),
            b: dec.b.to_lists(),
            s: dec.s.to_lists(),
            seeds: dec
                .seeds
                .iter()
                .map(|w| SeedRecord {
                    bad: w.bad.to_vec(),
                    witnesses: w.witnesses.iter().map(|c| c.to_vec()).collect(),
                })
                .collect(),
        }
    }
}

fn vertex_set(n: usize, list: &[usize]) -> Result<VertexSet, StructureError> {
    if let Some(&v) = list.iter().find(|&&v| v == 0 || v > n) {
        return Err(StructureError::Malformed(format!("vertex {v} outside [1, {n}]")));
    }
    Ok(VertexSet::from_vertices(list.iter().copied()))
}

impl TryFrom<&DecompositionRecord> for Decomposition {
    type Error = StructureError;

    fn try_from(r: &DecompositionRecord) -> Result<Self, StructureError> {
        let n = r.n;
        let k = r.k;
        let fam = |lists: &[Vec<usize>]| crate::family::make_family(n, k, lists);
        let seeds = r
            .seeds
            .iter()
            .map(|sr| {
                let bad = vertex_set(n, &sr.bad)?;
                let witnesses = sr
                    .witnesses
                    .iter()
                    .map(|c| vertex_set(n, c))
                    .collect::<Result<Vec<_>, _>>()?;
                if bad.len() != k || witnesses.iter().any(|c| c.len() != k) {
                    return Err(StructureError::Malformed(format!("seed {bad} has a set of the wrong size")));
                }
                Ok(BadSetWitness::build(n, k, bad, witnesses))
            })
            .collect::<Result<Vec<_>, StructureError>>()?;
        Ok(Decomposition {
            n,
            k,
            d: r.d,
            y: vertex_set(n, &r.y)?,
            z: vertex_set(n, &r.z)?,
            blocks: r.blocks.iter().map(|b| vertex_set(n, b)).collect::<Result<_, _>>()?,
            h: fam(&r.h)?,
            b: fam(&r.b)?,
            s: fam(&r.s)?,
            seeds,
        })
    }
}

impl Decomposition {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&DecompositionRecord::from(self)).expect("record serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, StructureError> {
        let record: DecompositionRecord =
            serde_json::from_str(text).map_err(|e| StructureError::Malformed(e.to_string()))?;
        Decomposition::try_from(&record)
    }

    /// `|H| + |B| + |S|`.
    pub fn total(&self) -> usize {
        self.h.len() + self.b.len() + self.s.len()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "Y = {}", self.y).unwrap();
        writeln!(out, "Z = {}", self.z).unwrap();
        for (i, (blk, seed)) in self.blocks.iter().zip(&self.seeds).enumerate() {
            writeln!(out, "block {} = {blk} (seed {})", i + 1, seed.bad).unwrap();
        }
        for (name, part) in [("H", &self.h), ("B", &self.b), ("S", &self.s)] {
            let items: Vec<String> = part.iter().map(|m| m.to_string()).collect();
            writeln!(out, "{name} ({}) = [{}]", part.len(), items.join(" ")).unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{complete_kgraph, disjoint_union, full_star, full_star_on, make_family};

    fn s(v: &[usize]) -> KSet {
        VertexSet::from_vertices(v.iter().copied())
    }

    fn k4_plus_star() -> SetFamily {
        disjoint_union(
            &complete_kgraph(3, s(&[1, 2, 3, 4])).unwrap(),
            &full_star_on(9, VertexSet::interval(5, 9), 3, 5).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn k4_members_are_all_bad() {
        let k4 = complete_kgraph(3, s(&[1, 2, 3, 4])).unwrap();
        let bad = bad_sets(&k4);
        assert_eq!(bad.len(), 4);
        let first = &bad[0];
        assert_eq!(first.bad, s(&[1, 2, 3]));
        assert_eq!(first.witnesses, vec![s(&[2, 3, 4]), s(&[1, 3, 4]), s(&[1, 2, 4])]);
        assert_eq!(first.span, s(&[1, 2, 3, 4]));
        assert_eq!(first.block_family, k4);
        assert!(bad.iter().all(|w| w.check(&k4).is_ok()));
    }

    #[test]
    fn stars_and_sparse_families_have_no_bad_sets() {
        assert!(bad_sets(&full_star(7, 3, 3).unwrap()).is_empty());
        assert!(bad_sets(&make_family(4, 3, &[[1, 2, 3], [1, 2, 4]]).unwrap()).is_empty());
    }

    #[test]
    fn decompose_k4_plus_star() {
        let f = k4_plus_star();
        let dec = decompose(&f, 3).unwrap();
        assert_eq!(dec.z, s(&[1, 2, 3, 4]));
        assert_eq!(dec.y, VertexSet::interval(5, 9));
        assert_eq!(dec.blocks, vec![s(&[1, 2, 3, 4])]);
        assert_eq!(dec.b, complete_kgraph(3, s(&[1, 2, 3, 4])).unwrap().with_ground(9).unwrap());
        assert_eq!(dec.h, full_star_on(9, VertexSet::interval(5, 9), 3, 5).unwrap());
        assert!(dec.s.is_empty());
        let report = verify_decomposition(&f, &dec, 3, 6);
        assert!(report.passed(), "{}", report.render());
        assert!(report.get(Clause::CompleteBlocks).is_some());
    }

    #[test]
    fn decompose_degenerate_inputs() {
        let star = full_star(6, 3, 1).unwrap();
        let dec = decompose(&star, 3).unwrap();
        assert!(dec.z.is_empty() && dec.blocks.is_empty());
        assert_eq!(dec.y, VertexSet::ground(6));
        assert_eq!(dec.h, star);
        assert!(dec.b.is_empty() && dec.s.is_empty());

        let pair = make_family(6, 3, &[[1, 2, 3], [4, 5, 6]]).unwrap();
        let dec = decompose(&pair, 3).unwrap();
        assert_eq!(dec.h, pair);
        assert!(dec.z.is_empty());
    }

    #[test]
    fn decompose_rejects_bad_input() {
        let f = make_family(6, 3, &[[1, 2, 3], [1, 4, 5], [2, 4, 6]]).unwrap();
        match decompose(&f, 3) {
            Err(StructureError::NotConditionallyIntersecting(w)) => assert_eq!(w.members, f.members()),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(decompose(&f, 2), Err(StructureError::BadParameters { d: 2, k: 3 }));
        assert_eq!(decompose(&f, 4), Err(StructureError::BadParameters { d: 4, k: 3 }));
    }

    #[test]
    fn tampered_heavy_part_fails_clause_a() {
        let f = k4_plus_star();
        let mut dec = decompose(&f, 3).unwrap();
        let moved = s(&[1, 2, 3]);
        dec.b = dec.b.filter(|m| *m != moved);
        let mut h = dec.h.members().to_vec();
        h.push(moved);
        dec.h = SetFamily::from_members(9, 3, h).unwrap();
        let report = verify_decomposition(&f, &dec, 3, 6);
        let a = report.get(Clause::Heavy).unwrap();
        assert!(!a.passed);
        assert_eq!(a.member, Some(vec![1, 2, 3]));
        assert!(report.get(Clause::FamilyPartition).unwrap().passed);
    }

    #[test]
    fn tampered_vertex_partition() {
        let f = k4_plus_star();
        let mut dec = decompose(&f, 3).unwrap();
        dec.y = dec.y.with(1);
        let report = verify_decomposition(&f, &dec, 3, 6);
        assert_eq!(report.first_failure().unwrap().clause, Clause::VertexPartition);
    }

    #[test]
    fn block_lemma_on_composite() {
        let f = k4_plus_star();
        for w in bad_sets(&f) {
            assert!(check_block_lemma(&f, &w, 3).passed);
        }
        let k4 = complete_kgraph(3, s(&[1, 2, 3, 4])).unwrap();
        for w in bad_sets(&k4) {
            assert!(check_block_lemma(&k4, &w, 3).passed);
        }
    }

    #[test]
    fn block_lemma_runs_without_hypothesis() {
        // {123, 124, 134, 234} plus a member touching the block in one vertex.
        let f = make_family(7, 3, &[[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4], [4, 5, 6]]).unwrap();
        let w = &bad_sets(&f)[0];
        let report = check_block_lemma(&f, w, 3);
        assert!(!report.passed);
        assert_eq!(report.violations, vec![(vec![4, 5, 6], 1)]);
    }

    #[test]
    fn certificate_round_trip() {
        let f = k4_plus_star();
        let dec = decompose(&f, 3).unwrap();
        let json = dec.to_json();
        let back = Decomposition::from_json(&json).unwrap();
        assert_eq!(back, dec);
        assert_eq!(back.to_json(), json);
        assert!(Decomposition::from_json("{}").is_err());
    }
}
