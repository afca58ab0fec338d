//! Detection of `(d, s)`-clusters: `d` distinct members whose union has at
//! most `s` vertices and whose common intersection is empty.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::family::SetFamily;
use crate::kset::{KSet, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClusterError {
    #[error("bad parameters: need d >= 2 and s >= k (got d = {d}, s = {s}, k = {k})")]
    BadParameters { d: usize, s: usize, k: usize },
}

/// `d` members certifying that a family is not `(d, s)`-conditionally
/// intersecting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterWitness {
    pub members: Vec<KSet>,
    pub union_size: usize,
    pub d: usize,
    pub s: usize,
}

impl ClusterWitness {
    /// Re-checks the witness from scratch against `family`.
    pub fn validate(&self, family: &SetFamily) -> bool {
        let m = &self.members;
        if m.len() != self.d || m.windows(2).any(|w| w[0] >= w[1]) {
            return false;
        }
        if !m.iter().all(|x| family.contains(x)) {
            return false;
        }
        let union = m.iter().fold(VertexSet::EMPTY, |a, &x| a | x);
        let inter = m.iter().fold(VertexSet::ground(128), |a, &x| a & x);
        union.len() == self.union_size && self.union_size <= self.s && inter.is_empty()
    }

    pub fn to_lists(&self) -> Vec<Vec<usize>> {
        self.members.iter().map(|m| m.to_vec()).collect()
    }
}

/// Serialized form used in reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub d: usize,
    pub s: usize,
    pub union_size: usize,
    pub members: Vec<Vec<usize>>,
}

impl From<&ClusterWitness> for WitnessRecord {
    fn from(w: &ClusterWitness) -> Self {
        WitnessRecord {
            d: w.d,
            s: w.s,
            union_size: w.union_size,
            members: w.to_lists(),
        }
    }
}

fn check_params(family: &SetFamily, d: usize, s: usize) -> Result<(), ClusterError> {
    if d < 2 || s < family.k() {
        return Err(ClusterError::BadParameters { d, s, k: family.k() });
    }
    Ok(())
}

/// Depth-first search over index tuples `i_1 < ... < i_d` in canonical
/// order, carrying the running union and intersection. The union never
/// shrinks, so any partial tuple whose union exceeds `s` is abandoned; an
/// empty running intersection is kept since it stays empty on extension.
struct Finder<'a> {
    members: &'a [KSet],
    d: usize,
    s: usize,
    stack: Vec<usize>,
}

impl Finder<'_> {
    fn search(&mut self, start: usize, union: VertexSet, inter: VertexSet) -> bool {
        let depth = self.stack.len();
        if depth == self.d {
            return inter.is_empty();
        }
        let need = self.d - depth;
        let end = self.members.len();
        if end < start + need {
            return false;
        }
        for i in start..=end - need {
            let m = self.members[i];
            let u = union | m;
            if u.len() > self.s {
                continue;
            }
            self.stack.push(i);
            if self.search(i + 1, u, inter & m) {
                return true;
            }
            self.stack.pop();
        }
        false
    }
}

/// The canonically least `(d, s)`-cluster in `family`, or `None` when the
/// family is `(d, s)`-conditionally intersecting.
pub fn find_violation(family: &SetFamily, d: usize, s: usize) -> Result<Option<ClusterWitness>, ClusterError> {
    check_params(family, d, s)?;
    let mut finder = Finder {
        members: family.members(),
        d,
        s,
        stack: Vec::with_capacity(d),
    };
    if !finder.search(0, VertexSet::EMPTY, VertexSet::ground(128)) {
        return Ok(None);
    }
    let members: Vec<KSet> = finder.stack.iter().map(|&i| family.members()[i]).collect();
    let union_size = members.iter().fold(VertexSet::EMPTY, |a, &m| a | m).len();
    Ok(Some(ClusterWitness {
        members,
        union_size,
        d,
        s,
    }))
}

pub fn is_conditionally_intersecting(family: &SetFamily, d: usize, s: usize) -> Result<bool, ClusterError> {
    Ok(find_violation(family, d, s)?.is_none())
}

/// Every `d` distinct members share a vertex.
pub fn is_d_wise_intersecting(family: &SetFamily, d: usize) -> Result<bool, ClusterError> {
    is_conditionally_intersecting(family, d, family.n().max(family.k()))
}

/// Canonically least pair of disjoint members.
pub fn least_disjoint_pair(family: &SetFamily) -> Option<(KSet, KSet)> {
    let m = family.members();
    m.iter().enumerate().find_map(|(i, &a)| {
        m[i + 1..].iter().find(|&&b| a.is_disjoint(b)).map(|&b| (a, b))
    })
}
