//! Uniform set families over a small ground set and the elementary
//! constructions built on them.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::binom::binomial;
use crate::kset::{KSet, VertexSet, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("vertex {vertex} is outside the ground set [1, {n}]")]
    OutOfRangeVertex { vertex: usize, n: usize },
    #[error("set {set:?} has {found} distinct vertices, expected {expected}")]
    WrongCardinality {
        set: Vec<usize>,
        expected: usize,
        found: usize,
    },
    #[error("ground set of size {0} exceeds the supported maximum of {MAX_VERTICES}")]
    GroundSetTooLarge(usize),
    #[error("uniformity k = {k} must satisfy 1 <= k <= n = {n}")]
    BadUniformity { n: usize, k: usize },
    #[error("{0} is not a member of the family")]
    NotAMember(KSet),
    #[error("component supports overlap on {0}")]
    OverlappingSupports(VertexSet),
    #[error("components have different uniformities ({0} and {1})")]
    MixedUniformity(usize, usize),
    #[error("need at least {needed} vertices, got {got}")]
    TooFewVertices { needed: usize, got: usize },
    #[error("core vertex {0} is not in the host set")]
    CoreNotInHost(usize),
}

/// A `k`-uniform family on `[n]`, members kept strictly increasing in the
/// canonical order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetFamily {
    n: usize,
    k: usize,
    members: Vec<KSet>,
}

impl SetFamily {
    /// Validates and canonicalizes a list of member bitsets. `k = 0` is
    /// accepted here because shadows of 1-uniform families are 0-uniform.
    pub fn from_members(n: usize, k: usize, mut members: Vec<KSet>) -> Result<Self, FamilyError> {
        if n > MAX_VERTICES {
            return Err(FamilyError::GroundSetTooLarge(n));
        }
        if k > n {
            return Err(FamilyError::BadUniformity { n, k });
        }
        let ground = VertexSet::ground(n);
        for m in &members {
            if let Some(v) = m.difference(ground).min_vertex() {
                return Err(FamilyError::OutOfRangeVertex { vertex: v, n });
            }
            if m.len() != k {
                return Err(FamilyError::WrongCardinality {
                    set: m.to_vec(),
                    expected: k,
                    found: m.len(),
                });
            }
        }
        members.sort_unstable();
        members.dedup();
        Ok(SetFamily { n, k, members })
    }

    /// The empty `k`-uniform family on `[n]`.
    pub fn empty(n: usize, k: usize) -> Result<Self, FamilyError> {
        Self::from_members(n, k, Vec::new())
    }

    /// Builds a family from members already known to be valid and canonical.
    pub(crate) fn from_sorted_unchecked(n: usize, k: usize, members: Vec<KSet>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(members.iter().all(|m| m.len() == k && m.is_subset(VertexSet::ground(n))));
        SetFamily { n, k, members }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn members(&self) -> &[KSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, set: &KSet) -> bool {
        self.members.binary_search(set).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, KSet> {
        self.members.iter()
    }

    /// Union of all members.
    pub fn support(&self) -> VertexSet {
        self.members.iter().fold(VertexSet::EMPTY, |a, &m| a | m)
    }

    /// Members satisfying `keep`, same `n` and `k`.
    pub fn filter<P: FnMut(&KSet) -> bool>(&self, mut keep: P) -> SetFamily {
        SetFamily {
            n: self.n,
            k: self.k,
            members: self.members.iter().copied().filter(|m| keep(m)).collect(),
        }
    }

    /// Same members reinterpreted over a larger ground set.
    pub fn with_ground(&self, n: usize) -> Result<SetFamily, FamilyError> {
        SetFamily::from_members(n, self.k, self.members.clone())
    }

    /// For each `(k-1)`-subset in the shadow, how many members contain it.
    pub fn shadow_degrees(&self) -> HashMap<KSet, usize> {
        let mut counts = HashMap::with_capacity(self.members.len() * self.k);
        for &m in &self.members {
            for v in m.iter() {
                *counts.entry(m.without(v)).or_insert(0) += 1;
            }
        }
        counts
    }

    /// Vertex lists, 1-based.
    pub fn to_lists(&self) -> Vec<Vec<usize>> {
        self.members.iter().map(|m| m.to_vec()).collect()
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetFamily(n={}, k={}, ", self.n, self.k)?;
        f.debug_list().entries(self.members.iter()).finish()?;
        f.write_str(")")
    }
}

impl Ord for SetFamily {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, self.k, &self.members).cmp(&(other.n, other.k, &other.members))
    }
}

impl PartialOrd for SetFamily {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> IntoIterator for &'a SetFamily {
    type Item = &'a KSet;
    type IntoIter = std::slice::Iter<'a, KSet>;
    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// Builds a canonical family from 1-based vertex lists. Duplicate sets
/// collapse; the order of the input lists and of vertices within them is
/// irrelevant.
pub fn make_family<S: AsRef<[usize]>>(n: usize, k: usize, sets: &[S]) -> Result<SetFamily, FamilyError> {
    if n > MAX_VERTICES {
        return Err(FamilyError::GroundSetTooLarge(n));
    }
    if k == 0 || k > n {
        return Err(FamilyError::BadUniformity { n, k });
    }
    let mut members = Vec::with_capacity(sets.len());
    for set in sets {
        let set = set.as_ref();
        let mut bits = VertexSet::EMPTY;
        for &v in set {
            if v == 0 || v > n {
                return Err(FamilyError::OutOfRangeVertex { vertex: v, n });
            }
            bits = bits.with(v);
        }
        if bits.len() != k || set.len() != k {
            return Err(FamilyError::WrongCardinality {
                set: set.to_vec(),
                expected: k,
                found: bits.len(),
            });
        }
        members.push(bits);
    }
    SetFamily::from_members(n, k, members)
}

/// All `(k-1)`-sets contained in some member.
pub fn shadow(family: &SetFamily) -> SetFamily {
    if family.k == 0 {
        return SetFamily::from_sorted_unchecked(family.n, 0, Vec::new());
    }
    let mut out: Vec<KSet> = family
        .members
        .iter()
        .flat_map(|&m| m.iter().map(move |v| m.without(v)))
        .collect();
    out.sort_unstable();
    out.dedup();
    SetFamily::from_sorted_unchecked(family.n, family.k - 1, out)
}

/// The `(k-1)`-subsets of `member` contained in no other member.
pub fn unique_subsets(family: &SetFamily, member: &KSet) -> Result<Vec<KSet>, FamilyError> {
    if !family.contains(member) {
        return Err(FamilyError::NotAMember(*member));
    }
    let mut out: Vec<KSet> = member
        .iter()
        .map(|v| member.without(v))
        .filter(|g| {
            !family
                .members
                .iter()
                .any(|other| other != member && g.is_subset(*other))
        })
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Whether every member has at least one unique `(k-1)`-subset; on failure
/// returns the first member (canonical order) that has none.
pub fn first_member_without_unique_subset(family: &SetFamily) -> Option<KSet> {
    let degrees = family.shadow_degrees();
    family
        .members
        .iter()
        .copied()
        .find(|m| m.iter().all(|v| degrees[&m.without(v)] > 1))
}

/// Least vertex common to all members. The empty family is vacuously a star
/// and reports vertex 1.
pub fn is_star(family: &SetFamily) -> Option<usize> {
    if family.is_empty() {
        return Some(1);
    }
    family
        .members
        .iter()
        .fold(VertexSet::ground(family.n), |acc, &m| acc & m)
        .min_vertex()
}

/// All `k`-subsets of `host` containing `core`.
pub fn full_star_on(n: usize, host: VertexSet, k: usize, core: usize) -> Result<SetFamily, FamilyError> {
    if n > MAX_VERTICES {
        return Err(FamilyError::GroundSetTooLarge(n));
    }
    if k == 0 || k > n {
        return Err(FamilyError::BadUniformity { n, k });
    }
    if let Some(v) = host.difference(VertexSet::ground(n)).min_vertex() {
        return Err(FamilyError::OutOfRangeVertex { vertex: v, n });
    }
    if !host.contains(core) {
        return Err(FamilyError::CoreNotInHost(core));
    }
    if host.len() < k {
        return Err(FamilyError::TooFewVertices {
            needed: k,
            got: host.len(),
        });
    }
    let rest = host.without(core);
    let core_set = VertexSet::singleton(core);
    let members = rest.subsets(k - 1).map(|s| s | core_set).collect();
    SetFamily::from_members(n, k, members)
}

/// The full star with the given core on `[n]`.
pub fn full_star(n: usize, k: usize, core: usize) -> Result<SetFamily, FamilyError> {
    if n > MAX_VERTICES {
        return Err(FamilyError::GroundSetTooLarge(n));
    }
    if core == 0 || core > n {
        return Err(FamilyError::OutOfRangeVertex { vertex: core, n });
    }
    full_star_on(n, VertexSet::ground(n), k, core)
}

/// All `k`-subsets of `vertices`; the ground set is `[max vertex]`.
pub fn complete_kgraph(k: usize, vertices: VertexSet) -> Result<SetFamily, FamilyError> {
    if k == 0 {
        return Err(FamilyError::BadUniformity { n: vertices.len(), k });
    }
    if vertices.len() < k {
        return Err(FamilyError::TooFewVertices {
            needed: k,
            got: vertices.len(),
        });
    }
    let n = vertices.max_vertex().unwrap_or(0);
    SetFamily::from_members(n, k, vertices.subsets(k).collect())
}

/// Union of two families with disjoint supports; the ground set is the
/// larger of the two.
pub fn disjoint_union(a: &SetFamily, b: &SetFamily) -> Result<SetFamily, FamilyError> {
    if a.k != b.k {
        return Err(FamilyError::MixedUniformity(a.k, b.k));
    }
    let overlap = a.support() & b.support();
    if !overlap.is_empty() {
        return Err(FamilyError::OverlappingSupports(overlap));
    }
    let mut members = a.members.clone();
    members.extend_from_slice(&b.members);
    SetFamily::from_members(a.n.max(b.n), a.k, members)
}

/// The `k`-set `{n-k+1, ..., n}` together with the full star of core 1 on
/// `[n-k]`; `C(n-k-1, k-1) + 1` members.
pub fn kset_plus_star(n: usize, k: usize) -> Result<SetFamily, FamilyError> {
    if n > MAX_VERTICES {
        return Err(FamilyError::GroundSetTooLarge(n));
    }
    if k == 0 || n < 2 * k {
        return Err(FamilyError::TooFewVertices { needed: 2 * k, got: n });
    }
    let star = full_star_on(n, VertexSet::ground(n - k), k, 1)?;
    let mut members = star.members;
    members.push(VertexSet::interval(n - k + 1, n));
    SetFamily::from_members(n, k, members)
}

/// Declarative description of a generated family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    FullStar { n: usize, k: usize, core: usize },
    FullStarOn { n: usize, host: VertexSet, k: usize, core: usize },
    CompleteKGraph { k: usize, vertices: VertexSet },
    DisjointUnion(Box<FamilySpec>, Box<FamilySpec>),
    KSetPlusStar { n: usize, k: usize },
}

pub fn generate(spec: &FamilySpec) -> Result<SetFamily, FamilyError> {
    match spec {
        FamilySpec::FullStar { n, k, core } => full_star(*n, *k, *core),
        FamilySpec::FullStarOn { n, host, k, core } => full_star_on(*n, *host, *k, *core),
        FamilySpec::CompleteKGraph { k, vertices } => complete_kgraph(*k, *vertices),
        FamilySpec::DisjointUnion(a, b) => disjoint_union(&generate(a)?, &generate(b)?),
        FamilySpec::KSetPlusStar { n, k } => kset_plus_star(*n, *k),
    }
}

/// Whether `family` is the full star on its own support with some core.
pub fn is_full_star_on_support(family: &SetFamily) -> bool {
    if family.is_empty() || is_star(family).is_none() {
        return false;
    }
    let support = family.support();
    binomial(support.len() as u64 - 1, family.k as u64 - 1) == family.len().into()
}

/// Recognizes the "one isolated k-set plus a full star on the remaining
/// vertices" pattern. Returns the isolated member and the core.
pub fn kset_plus_star_pattern(family: &SetFamily) -> Option<(KSet, usize)> {
    let n = family.n;
    let k = family.k;
    let members = family.members();
    let isolated: Vec<KSet> = members
        .iter()
        .copied()
        .filter(|&m| members.iter().all(|&o| o == m || o.is_disjoint(m)))
        .collect();
    if isolated.len() != 1 || members.len() < 2 {
        return None;
    }
    let d = isolated[0];
    let rest = family.filter(|&m| m != d);
    let host = VertexSet::ground(n) - d;
    let core = is_star(&rest)?;
    let star = full_star_on(n, host, k, core).ok()?;
    (star.members == rest.members).then_some((d, core))
}
