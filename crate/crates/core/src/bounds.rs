//! Exact checkers for the counting inequalities: the unique-subset sum, the
//! shadow lemma, and the level/trace analysis of nonintersecting families
//! that are `(3, 2k)`-conditionally intersecting.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::binom::{binomial, binomial_i, BigCount};
use crate::cluster::{find_violation, least_disjoint_pair, ClusterError, ClusterWitness};
use crate::family::{first_member_without_unique_subset, SetFamily};
use crate::kset::{KSet, VertexSet};

/// Cap on the number of trace sets `C ⊆ U` enumerated by the analysis.
pub const MAX_TRACE_SETS: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("no subset chosen for member {0}")]
    IncompleteChoice(KSet),
    #[error("chosen set {chosen} is not a {size}-subset of member {member}")]
    InvalidChoice { member: KSet, chosen: KSet, size: usize },
    #[error("internal inconsistency: valid unique-subset choice with sum {0} > 1")]
    BollobasViolated(String),
    #[error("{0} is not a member of the family")]
    NotAMember(KSet),
    #[error("{0} and {1} are not disjoint")]
    NotDisjoint(KSet, KSet),
    #[error("invalid trace set {0}: {1}")]
    BadC(VertexSet, String),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(HypothesisFailure),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error(transparent)]
    Cluster(#[from] ClusterError),
}

/// Why a family falls outside the nonintersecting analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HypothesisFailure {
    HasThreeCluster(ClusterWitness),
    IsIntersecting,
}

impl HypothesisFailure {
    pub fn reason(&self) -> &'static str {
        match self {
            HypothesisFailure::HasThreeCluster(_) => "has-3-cluster",
            HypothesisFailure::IsIntersecting => "is-intersecting",
        }
    }
}

impl std::fmt::Display for HypothesisFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HypothesisFailure::HasThreeCluster(w) => write!(f, "has-3-cluster {:?}", w.members),
            HypothesisFailure::IsIntersecting => f.write_str("is-intersecting"),
        }
    }
}

pub(crate) fn ser_display<T: std::fmt::Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn ser_display_vec<T: std::fmt::Display, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

/// Designated `(k-1)`-subset `G(H) ⊂ H` for each member `H`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ChoiceFunction {
    map: BTreeMap<KSet, KSet>,
}

impl ChoiceFunction {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, member: KSet, subset: KSet) {
        self.map.insert(member, subset);
    }

    pub fn get(&self, member: &KSet) -> Option<&KSet> {
        self.map.get(member)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// The least unique `(k-1)`-subset of every member, if every member has one.
    pub fn least_unique(family: &SetFamily) -> Option<Self> {
        let degrees = family.shadow_degrees();
        let mut map = BTreeMap::new();
        for &m in family {
            let g = m
                .iter()
                .map(|v| m.without(v))
                .filter(|g| degrees[g] == 1)
                .min()?;
            map.insert(m, g);
        }
        Some(ChoiceFunction { map })
    }

    /// `G(H) = H - {v}`; meaningful for stars with core `v`.
    pub fn remove_vertex(family: &SetFamily, v: usize) -> Self {
        ChoiceFunction {
            map: family.iter().map(|&m| (m, m.without(v))).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BollobasOutcome {
    #[serde(serialize_with = "ser_display")]
    pub sum: BigRational,
    pub valid: bool,
    /// Members whose chosen subset is shared with another member.
    #[serde(serialize_with = "ser_display_vec")]
    pub non_unique: Vec<KSet>,
}

/// `Σ_H 1 / C(n - |H - G(H)|, |G(H)|)` in exact rationals, and whether every
/// `G(H)` is unique. A valid choice with sum above 1 is an error.
pub fn bollobas_check(family: &SetFamily, choice: &ChoiceFunction) -> Result<BollobasOutcome, BoundsError> {
    let n = family.n() as u64;
    let k = family.k();
    let degrees = family.shadow_degrees();
    let mut sum = BigRational::zero();
    let mut non_unique = Vec::new();
    for &h in family {
        let g = *choice.get(&h).ok_or(BoundsError::IncompleteChoice(h))?;
        if !g.is_subset(h) || g.len() + 1 != k {
            return Err(BoundsError::InvalidChoice {
                member: h,
                chosen: g,
                size: k.saturating_sub(1),
            });
        }
        let denom = binomial(n - (h - g).len() as u64, g.len() as u64);
        sum += BigRational::new(BigInt::one(), BigInt::from(denom));
        if degrees.get(&g) != Some(&1) {
            non_unique.push(h);
        }
    }
    let valid = non_unique.is_empty();
    if valid && sum > BigRational::one() {
        return Err(BoundsError::BollobasViolated(sum.to_string()));
    }
    Ok(BollobasOutcome { sum, valid, non_unique })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShadowLemmaReport {
    pub n: usize,
    pub k: usize,
    pub family_size: usize,
    pub shadow_size: usize,
    pub hypothesis_met: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Vec<usize>>,
    /// `n · |H|`
    #[serde(serialize_with = "ser_display")]
    pub lhs: BigCount,
    /// `(n - k + 1) · |∂H|`
    #[serde(serialize_with = "ser_display")]
    pub rhs: BigCount,
    /// Only meaningful when the hypothesis is met.
    pub holds: Option<bool>,
    #[serde(serialize_with = "ser_display")]
    pub slack: BigInt,
}

/// When every member has a unique `(k-1)`-subset, checks
/// `n · |H| <= (n - k + 1) · |∂H|` in integers.
pub fn shadow_lemma_check(family: &SetFamily) -> ShadowLemmaReport {
    let n = family.n();
    let k = family.k();
    let shadow_size = crate::family::shadow(family).len();
    let counterexample = first_member_without_unique_subset(family);
    let lhs = BigCount::from(n) * family.len();
    let rhs = BigCount::from((n + 1).saturating_sub(k)) * shadow_size;
    let slack = BigInt::from(rhs.clone()) - BigInt::from(lhs.clone());
    let hypothesis_met = counterexample.is_none();
    ShadowLemmaReport {
        n,
        k,
        family_size: family.len(),
        shadow_size,
        hypothesis_met,
        counterexample: counterexample.map(|m| m.to_vec()),
        holds: hypothesis_met.then(|| lhs <= rhs),
        lhs,
        rhs,
        slack,
    }
}

/// `F(C) = { F - C : F ∩ U = C }` where `U = [n] - (A ∪ B)`; a
/// `(k - |C|)`-uniform family living on `A ∪ B`.
pub fn trace_family(family: &SetFamily, a: KSet, b: KSet, c: VertexSet) -> Result<SetFamily, BoundsError> {
    for m in [a, b] {
        if !family.contains(&m) {
            return Err(BoundsError::NotAMember(m));
        }
    }
    if !a.is_disjoint(b) {
        return Err(BoundsError::NotDisjoint(a, b));
    }
    let u = VertexSet::ground(family.n()) - (a | b);
    if !c.is_subset(u) {
        return Err(BoundsError::BadC(c, "not contained in U".into()));
    }
    if c.len() + 1 > family.k() {
        return Err(BoundsError::BadC(c, format!("size {} exceeds k - 1", c.len())));
    }
    let traces = family
        .iter()
        .filter(|m| (**m & u) == c)
        .map(|&m| m - c)
        .collect();
    Ok(SetFamily::from_members(family.n(), family.k() - c.len(), traces).expect("traces are valid"))
}

/// `w_i = C(k-1, i-1) · C(n-2k, k-i)`.
pub fn level_weight(n: usize, k: usize, i: usize) -> BigCount {
    binomial_i(k as i64 - 1, i as i64 - 1) * binomial_i(n as i64 - 2 * k as i64, k as i64 - i as i64)
}

/// `k_i = C(2k, i) - C(k-1, i-1) + 1`.
pub fn level_excess(k: usize, i: usize) -> BigCount {
    binomial((2 * k) as u64, i as u64) + BigCount::one() - binomial_i(k as i64 - 1, i as i64 - 1)
}

/// Right-hand side of the cumulative level bound for `ℓ ∈ [k]`:
/// `Σ_{i=1..ℓ} w_i` below the top level, and at `ℓ = k` the top level
/// contributes the two disjoint members `A`, `B` instead of `w_k = 1`, so the
/// total is `C(n-k-1, k-1) + 1`.
pub fn cumulative_level_bound(n: usize, k: usize, ell: usize) -> BigCount {
    let below: BigCount = (1..=ell.min(k.saturating_sub(1))).map(|i| level_weight(n, k, i)).sum();
    if ell >= k {
        below + BigCount::from(2u32)
    } else {
        below
    }
}

/// Perfect/non-perfect bookkeeping for the trace sets `C ∈ C(U, k-i)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelCounts {
    pub i: usize,
    /// `|F_i| = Σ_C |F(C)|`.
    pub members: usize,
    pub perfect: u64,
    pub nonperfect: u64,
    pub good: u64,
    pub bad: u64,
    /// Sets contained in a perfect set one level up (`i >= 2` only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub below_perfect: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub not_below_perfect: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InequalityRow {
    pub ell: usize,
    #[serde(serialize_with = "ser_display")]
    pub lhs: BigCount,
    #[serde(serialize_with = "ser_display")]
    pub rhs: BigCount,
    pub holds: bool,
}

/// Container split at the middle level: `c = ⌊(k+1)/2⌋`, `m = ⌊k/2⌋`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContainerCounts {
    pub c: usize,
    pub m: usize,
    pub good_containers: u64,
    pub bad_containers: u64,
    /// Good-level sets at `c + 1` inside a good container.
    pub s: u64,
    /// Good-level sets at `c + 1` inside no good container.
    pub t: u64,
}

/// Intermediate inequality used on the way to the cumulative bound. These
/// are only guaranteed for `n >= 3k · C(2k, k)` with every member having a
/// unique subset; `armed` records whether that holds for this family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimCheck {
    pub name: String,
    pub armed: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonintersectingReport {
    pub n: usize,
    pub k: usize,
    #[serde(rename = "A")]
    pub a: Vec<usize>,
    #[serde(rename = "B")]
    pub b: Vec<usize>,
    #[serde(rename = "I")]
    pub i_set: Vec<usize>,
    #[serde(rename = "U")]
    pub u_set: Vec<usize>,
    /// `|F_0|, ..., |F_k|`.
    pub level_sizes: Vec<usize>,
    /// One entry per `i ∈ [k-1]`.
    pub levels: Vec<LevelCounts>,
    pub inequality: Vec<InequalityRow>,
    pub fk_is_ab: bool,
    pub every_member_has_unique_subset: bool,
    pub containers: ContainerCounts,
    pub claims: Vec<ClaimCheck>,
    pub large_n_regime: bool,
}

impl NonintersectingReport {
    pub fn inequality_holds(&self) -> bool {
        self.inequality.iter().all(|r| r.holds)
    }

    pub fn total(&self) -> usize {
        self.level_sizes.iter().sum()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let fmt = |v: &[usize]| VertexSet::from_vertices(v.iter().copied()).to_string();
        writeln!(out, "A = {}  B = {}", fmt(&self.a), fmt(&self.b)).unwrap();
        writeln!(out, "I = {}  |U| = {}", fmt(&self.i_set), self.u_set.len()).unwrap();
        writeln!(out, "level sizes |F_0..F_k| = {:?} (total {})", self.level_sizes, self.total()).unwrap();
        writeln!(out, "F_k = {{A, B}}: {}", self.fk_is_ab).unwrap();
        writeln!(out, "every member has a unique (k-1)-subset: {}", self.every_member_has_unique_subset).unwrap();
        writeln!(out, "{:>3} {:>8} {:>10} {:>10} {:>8} {:>8}", "i", "|F_i|", "perfect", "nonperf", "good", "bad").unwrap();
        for l in &self.levels {
            writeln!(
                out,
                "{:>3} {:>8} {:>10} {:>10} {:>8} {:>8}",
                l.i, l.members, l.perfect, l.nonperfect, l.good, l.bad
            )
            .unwrap();
        }
        writeln!(out, "{:>3} {:>12} {:>12}  holds", "ell", "lhs", "rhs").unwrap();
        for r in &self.inequality {
            writeln!(out, "{:>3} {:>12} {:>12}  {}", r.ell, r.lhs, r.rhs, r.holds).unwrap();
        }
        for c in &self.claims {
            let arm = if c.armed { "armed" } else { "info" };
            writeln!(out, "claim {:<28} {arm:<5} {}", c.name, c.holds).unwrap();
        }
        out
    }
}

/// Whether `traces` (an `i`-uniform family on `I`) is the full star on
/// `host` (one of `A`, `B`) for some core.
fn is_full_star_within(traces: &[KSet], host: KSet, k: usize, i: usize) -> bool {
    if traces.is_empty() || !traces.iter().all(|t| t.is_subset(host)) {
        return false;
    }
    let common = traces.iter().fold(host, |a, &t| a & t);
    !common.is_empty() && binomial_i(k as i64 - 1, i as i64 - 1) == BigUint::from(traces.len())
}

/// Level and trace analysis of a `(3, 2k)`-conditionally intersecting family
/// containing two disjoint members.
pub fn analyze_nonintersecting(family: &SetFamily) -> Result<NonintersectingReport, BoundsError> {
    let n = family.n();
    let k = family.k();
    if k < 2 {
        return Err(BoundsError::BadParameters(format!("need k >= 2, got {k}")));
    }
    if let Some(w) = find_violation(family, 3, 2 * k)? {
        return Err(BoundsError::HypothesisNotMet(HypothesisFailure::HasThreeCluster(w)));
    }
    let (a, b) = least_disjoint_pair(family).ok_or(BoundsError::HypothesisNotMet(HypothesisFailure::IsIntersecting))?;
    let i_set = a | b;
    let u = VertexSet::ground(n) - i_set;
    let u_len = u.len() as u64;
    let enumerated: u64 = (1..k).map(|i| crate::binom::binomial_u64(u_len, (k - i) as u64).unwrap_or(u64::MAX)).sum();
    if enumerated > MAX_TRACE_SETS {
        return Err(BoundsError::BadParameters(format!(
            "{enumerated} trace sets exceed the limit of {MAX_TRACE_SETS}"
        )));
    }

    let mut level_sizes = vec![0usize; k + 1];
    let mut traces: HashMap<VertexSet, Vec<KSet>> = HashMap::new();
    for &f in family {
        level_sizes[(f & i_set).len()] += 1;
        traces.entry(f & u).or_default().push(f - u);
    }
    let fk_is_ab = family.iter().filter(|f| f.is_subset(i_set)).copied().collect::<Vec<_>>() == {
        let mut v = vec![a, b];
        v.sort();
        v
    };

    // perfect[i] holds the perfect sets of size k - i, for i in 1..k.
    let mut perfect: Vec<HashSet<VertexSet>> = vec![HashSet::new(); k];
    let mut levels = Vec::with_capacity(k.saturating_sub(1));
    for i in 1..k {
        let size = k - i;
        let mut p = 0u64;
        let mut total = 0u64;
        let mut nonperfect_sets = Vec::new();
        for c in u.subsets(size) {
            total += 1;
            let is_perfect = if size == k - 1 {
                traces.contains_key(&c)
            } else {
                traces
                    .get(&c)
                    .is_some_and(|t| is_full_star_within(t, a, k, i) || is_full_star_within(t, b, k, i))
            };
            if is_perfect {
                perfect[i].insert(c);
                p += 1;
            } else {
                nonperfect_sets.push(c);
            }
        }
        let nonperfect = total - p;
        let (good, bad, below, not_below) = if i == 1 {
            (nonperfect, 0, None, None)
        } else {
            let below_perfect: HashSet<VertexSet> = perfect[i - 1]
                .iter()
                .flat_map(|d| d.iter().map(move |v| d.without(v)))
                .collect();
            let good = nonperfect_sets.iter().filter(|c| below_perfect.contains(c)).count() as u64;
            let below = below_perfect.len() as u64;
            (good, nonperfect - good, Some(below), Some(total - below))
        };
        levels.push(LevelCounts {
            i,
            members: level_sizes[i],
            perfect: p,
            nonperfect,
            good,
            bad,
            below_perfect: below,
            not_below_perfect: not_below,
        });
    }

    let inequality: Vec<InequalityRow> = (1..=k)
        .map(|ell| {
            let lhs = BigCount::from(level_sizes[..=ell].iter().sum::<usize>());
            let rhs = cumulative_level_bound(n, k, ell);
            InequalityRow {
                ell,
                holds: lhs <= rhs,
                lhs,
                rhs,
            }
        })
        .collect();

    let every_member_has_unique_subset = first_member_without_unique_subset(family).is_none();
    let containers = container_counts(k, u, &perfect, &levels);
    let large_n_regime = BigCount::from(n) >= BigCount::from(3 * k) * binomial((2 * k) as u64, k as u64);
    let claims = claim_checks(n, k, &level_sizes, &levels, &containers, large_n_regime && every_member_has_unique_subset);

    Ok(NonintersectingReport {
        n,
        k,
        a: a.to_vec(),
        b: b.to_vec(),
        i_set: i_set.to_vec(),
        u_set: u.to_vec(),
        level_sizes,
        levels,
        inequality,
        fk_is_ab,
        every_member_has_unique_subset,
        containers,
        claims,
        large_n_regime,
    })
}

fn container_counts(
    k: usize,
    u: VertexSet,
    perfect: &[HashSet<VertexSet>],
    levels: &[LevelCounts],
) -> ContainerCounts {
    let c = k.div_ceil(2);
    let m = k / 2;
    // Perfect m-sets live at level i = k - m = c.
    let containers: Vec<VertexSet> = if (1..k).contains(&c) {
        perfect[c].iter().copied().collect()
    } else {
        Vec::new()
    };
    let top = &perfect[1];
    let in_top = |d: &VertexSet| {
        let extra = k - 1 - d.len();
        (u - *d).subsets(extra).any(|e| top.contains(&(*d | e)))
    };
    let good: HashSet<VertexSet> = containers.iter().copied().filter(|d| in_top(d)).collect();
    let bad_containers = (containers.len() - good.len()) as u64;

    let (mut s, mut t) = (0u64, 0u64);
    if c + 1 < k && !levels.is_empty() {
        let level = c + 1;
        let size = k - level;
        for set in u.subsets(size) {
            if perfect[level].contains(&set) {
                continue;
            }
            let in_perfect_up = perfect[level - 1].iter().any(|d| set.is_subset(*d));
            if !in_perfect_up {
                continue;
            }
            if good.iter().any(|d| set.is_subset(*d)) {
                s += 1;
            } else {
                t += 1;
            }
        }
    }
    ContainerCounts {
        c,
        m,
        good_containers: good.len() as u64,
        bad_containers,
        s,
        t,
    }
}

fn claim_checks(
    n: usize,
    k: usize,
    level_sizes: &[usize],
    levels: &[LevelCounts],
    containers: &ContainerCounts,
    armed: bool,
) -> Vec<ClaimCheck> {
    let big = |x: u64| BigInt::from(x);
    let w = |i: usize| BigInt::from(level_weight(n, k, i));
    let kx = |i: usize| BigInt::from(level_excess(k, i));
    let lvl = |i: usize| &levels[i - 1];
    let mut out = Vec::new();
    let push = |out: &mut Vec<ClaimCheck>, name: String, holds: bool| out.push(ClaimCheck { name, armed, holds });

    // k · n_i >= (n - 3k) · b_{i+1}
    for i in 1..k.saturating_sub(1) {
        let lhs = BigInt::from(k) * big(lvl(i).nonperfect);
        let rhs = (BigInt::from(n) - BigInt::from(3 * k)) * big(lvl(i + 1).bad);
        push(&mut out, format!("nonperfect-vs-next-bad[{i}]"), lhs >= rhs);
    }
    // |F_i| <= w_i + k_i b_i - n_i, low levels 2 <= i <= (k+1)/2 and high levels i >= c+1
    for (i, &size) in level_sizes.iter().enumerate().take(k).skip(2) {
        if 2 * i <= k + 1 || i > containers.c {
            let rhs = w(i) + kx(i) * big(lvl(i).bad) - big(lvl(i).nonperfect);
            push(&mut out, format!("level-bound[{i}]"), BigInt::from(size) <= rhs);
        }
    }
    // 2 Σ_{i<=ℓ} |F_i| <= 2 Σ w_i - Σ n_i for 1 <= ℓ <= (k+1)/2
    for ell in 1..k {
        if 2 * ell > k + 1 {
            break;
        }
        let lhs = BigInt::from(2 * level_sizes[..=ell].iter().sum::<usize>());
        let rhs: BigInt = (1..=ell).map(|i| BigInt::from(2) * w(i) - big(lvl(i).nonperfect)).sum();
        push(&mut out, format!("cumulative-half[{ell}]"), lhs <= rhs);
    }
    // 4 Σ_{i<=c+1} |F_i| <= 4 Σ w_i - Σ n_i
    let c1 = containers.c + 1;
    if c1 < k {
        let lhs = BigInt::from(4 * level_sizes[..=c1].iter().sum::<usize>());
        let rhs: BigInt = (1..=c1).map(|i| BigInt::from(4) * w(i) - big(lvl(i).nonperfect)).sum();
        push(&mut out, format!("cumulative-quarter[{c1}]"), lhs <= rhs);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundTables {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    /// `2k + d - 3`.
    pub s: usize,
    /// `C(n-1, k-1)`.
    #[serde(serialize_with = "ser_display")]
    pub star_bound: BigCount,
    /// `C(n-k-1, k-1) + 1`.
    #[serde(serialize_with = "ser_display")]
    pub nonintersecting_bound: BigCount,
    /// `w_i` for `i ∈ [k-1]`.
    #[serde(serialize_with = "ser_display_vec")]
    pub level_weights: Vec<BigCount>,
    /// `k_i` for `i ∈ [k-1]`.
    #[serde(serialize_with = "ser_display_vec")]
    pub level_excess: Vec<BigCount>,
    /// Cumulative level bound for `ℓ ∈ [k]`.
    #[serde(serialize_with = "ser_display_vec")]
    pub cumulative: Vec<BigCount>,
    /// `Σ_{ℓ=d..k} C(2k, ℓ) · C(n-k-1, k-ℓ)`: members meeting one block of
    /// at most `2k` vertices in at least `d` vertices.
    #[serde(serialize_with = "ser_display")]
    pub block_excess: BigCount,
    /// `Σ_{ℓ=1..k} C(n-2k, k-ℓ) · C(2k-1, ℓ-1)`.
    #[serde(serialize_with = "ser_display")]
    pub vandermonde_sum: BigCount,
    pub vandermonde_ok: bool,
}

pub fn bound_tables(n: usize, k: usize, d: usize) -> Result<BoundTables, BoundsError> {
    if k == 0 || n < 2 * k || d < 2 {
        return Err(BoundsError::BadParameters(format!(
            "need k >= 1, n >= 2k and d >= 2 (got n = {n}, k = {k}, d = {d})"
        )));
    }
    let (ni, ki) = (n as i64, k as i64);
    let star_bound = binomial_i(ni - 1, ki - 1);
    let nonintersecting_bound = binomial_i(ni - ki - 1, ki - 1) + BigCount::one();
    let level_weights = (1..k).map(|i| level_weight(n, k, i)).collect();
    let level_excess_v = (1..k).map(|i| level_excess(k, i)).collect();
    let cumulative = (1..=k).map(|ell| cumulative_level_bound(n, k, ell)).collect();
    let block_excess = (d..=k)
        .map(|l| binomial_i(2 * ki, l as i64) * binomial_i(ni - ki - 1, ki - l as i64))
        .sum();
    let vandermonde_sum: BigCount = (1..=ki)
        .map(|l| binomial_i(ni - 2 * ki, ki - l) * binomial_i(2 * ki - 1, l - 1))
        .sum();
    Ok(BoundTables {
        n,
        k,
        d,
        s: 2 * k + d - 3,
        vandermonde_ok: vandermonde_sum == star_bound,
        star_bound,
        nonintersecting_bound,
        level_weights,
        level_excess: level_excess_v,
        cumulative,
        block_excess,
        vandermonde_sum,
    })
}

impl BoundTables {
    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "n = {}  k = {}  d = {}  s = 2k+d-3 = {}", self.n, self.k, self.d, self.s).unwrap();
        writeln!(out, "{:<40} {:>20}", "star bound C(n-1,k-1)", self.star_bound).unwrap();
        writeln!(out, "{:<40} {:>20}", "nonintersecting bound C(n-k-1,k-1)+1", self.nonintersecting_bound).unwrap();
        writeln!(out, "{:<40} {:>20}", "block excess", self.block_excess).unwrap();
        writeln!(out, "{:>3} {:>20} {:>20}", "i", "w_i", "k_i").unwrap();
        for (i, (w, x)) in self.level_weights.iter().zip(&self.level_excess).enumerate() {
            writeln!(out, "{:>3} {:>20} {:>20}", i + 1, w, x).unwrap();
        }
        writeln!(out, "{:>3} {:>20}", "ell", "cumulative bound").unwrap();
        for (l, c) in self.cumulative.iter().enumerate() {
            writeln!(out, "{:>3} {:>20}", l + 1, c).unwrap();
        }
        let status = if self.vandermonde_ok { "ok" } else { "FAILED" };
        writeln!(out, "vandermonde self-test: {} = {} ... {status}", self.vandermonde_sum, self.star_bound).unwrap();
        out
    }
}
