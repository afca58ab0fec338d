//! Fixed-width vertex sets.
//!
//! Vertices are 1-based at every public boundary and stored 0-based as bit
//! positions, so vertex `v` lives in bit `v - 1`.

use std::cmp::Ordering;
use std::fmt;

/// Largest ground set the bit representation can hold.
pub const MAX_VERTICES: usize = 128;

/// A subset of `[MAX_VERTICES]` stored as a 128-bit mask.
///
/// The total order is lexicographic on the ascending vertex list, so
/// `{1,2,3} < {1,2,4} < {1,3,4} < {2,3,4}` and a proper prefix sorts first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u128);

/// A member of a uniform family. Cardinality is carried by the owning family.
pub type KSet = VertexSet;

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub const fn from_bits(bits: u128) -> Self {
        VertexSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u128 {
        self.0
    }

    /// `{v}` for a 1-based vertex. Panics if `v` is not in `1..=128`.
    #[inline]
    pub fn singleton(v: usize) -> Self {
        assert!((1..=MAX_VERTICES).contains(&v), "vertex {v} out of range");
        VertexSet(1u128 << (v - 1))
    }

    /// `{lo, lo+1, ..., hi}` (1-based, inclusive). Empty when `lo > hi`.
    pub fn interval(lo: usize, hi: usize) -> Self {
        if lo > hi {
            return Self::EMPTY;
        }
        assert!(lo >= 1 && hi <= MAX_VERTICES, "interval {lo}..={hi} out of range");
        let width = hi - lo + 1;
        let mask = if width == 128 { u128::MAX } else { (1u128 << width) - 1 };
        VertexSet(mask << (lo - 1))
    }

    /// The ground set `[n]`.
    #[inline]
    pub fn ground(n: usize) -> Self {
        Self::interval(1, n)
    }

    /// Builds a set from 1-based vertices. Panics on out-of-range input;
    /// fallible construction goes through [`crate::family::make_family`].
    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Self {
        vertices
            .into_iter()
            .fold(Self::EMPTY, |acc, v| acc.with(v))
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        (1..=MAX_VERTICES).contains(&v) && self.0 >> (v - 1) & 1 == 1
    }

    #[inline]
    pub fn with(self, v: usize) -> Self {
        self | Self::singleton(v)
    }

    #[inline]
    pub fn without(self, v: usize) -> Self {
        if self.contains(v) {
            VertexSet(self.0 & !(1u128 << (v - 1)))
        } else {
            self
        }
    }

    #[inline]
    pub const fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub const fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub const fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub const fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Least vertex, 1-based.
    #[inline]
    pub fn min_vertex(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    /// Greatest vertex, 1-based.
    #[inline]
    pub fn max_vertex(self) -> Option<usize> {
        (self.0 != 0).then(|| 128 - self.0.leading_zeros() as usize)
    }

    /// Ascending 1-based vertices.
    pub fn iter(self) -> Vertices {
        Vertices(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All `r`-subsets in canonical order.
    pub fn subsets(self, r: usize) -> Subsets {
        Subsets::new(self.to_vec(), r)
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        // The vertex lists agree strictly below the least differing vertex x.
        // Whichever side owns x either has the smaller entry at that position
        // or, if the other side has no vertex above x, is the longer list.
        let x = diff & diff.wrapping_neg();
        let above = !((x << 1).wrapping_sub(1));
        let (owner, other_side) = if self.0 & x != 0 {
            (Ordering::Less, other.0)
        } else {
            (Ordering::Greater, self.0)
        };
        if other_side & above != 0 {
            owner
        } else {
            owner.reverse()
        }
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::ops::BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: Self) -> Self {
        self.union(rhs)
    }
}

impl std::ops::BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: Self) -> Self {
        self.intersection(rhs)
    }
}

impl std::ops::Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: Self) -> Self {
        self.difference(rhs)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::from_vertices(iter)
    }
}

/// Iterator over the vertices of a [`VertexSet`], ascending and 1-based.
#[derive(Clone)]
pub struct Vertices(u128);

impl Iterator for Vertices {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Vertices {}

/// Lexicographic enumeration of the `r`-subsets of a vertex list.
pub struct Subsets {
    pool: Vec<usize>,
    idx: Vec<usize>,
    done: bool,
}

impl Subsets {
    fn new(pool: Vec<usize>, r: usize) -> Self {
        let done = r > pool.len();
        Subsets {
            idx: (0..r).collect(),
            pool,
            done,
        }
    }
}

impl Iterator for Subsets {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        if self.done {
            return None;
        }
        let out = self
            .idx
            .iter()
            .fold(VertexSet::EMPTY, |acc, &i| acc.with(self.pool[i]));
        let r = self.idx.len();
        let m = self.pool.len();
        let mut i = r;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < m - r + i {
                self.idx[i] += 1;
                for j in i + 1..r {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}
