//! Brute-force reference implementations for cross-checking the library.
//! Sets are plain `u32` vertex masks (bit `v - 1` for vertex `v`) and
//! families are `u32` masks over the candidate list, so nothing here goes
//! through the library's own set algebra.

#![allow(dead_code)]

use condint::SetFamily;

/// All `k`-subsets of `[n]` as vertex masks, ordered lexicographically by
/// ascending vertex list.
pub fn ksets(n: usize, k: usize) -> Vec<u32> {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<u32>) {
        if cur.len() == k {
            out.push(cur.iter().fold(0, |m, &v| m | 1 << (v - 1)));
            return;
        }
        for v in start..=n {
            cur.push(v);
            rec(n, k, v + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, 1, &mut Vec::new(), &mut out);
    out
}

/// Every `d`-subset of the candidates forming a cluster (union at most `s`,
/// empty intersection), as a mask over candidate indices.
pub fn cluster_masks(sets: &[u32], d: usize, s: usize) -> Vec<u32> {
    fn rec(sets: &[u32], d: usize, s: usize, start: usize, chosen: &mut Vec<usize>, out: &mut Vec<u32>) {
        if chosen.len() == d {
            let union = chosen.iter().fold(0u32, |a, &i| a | sets[i]);
            let inter = chosen.iter().fold(u32::MAX, |a, &i| a & sets[i]);
            if union.count_ones() as usize <= s && inter == 0 {
                out.push(chosen.iter().fold(0, |m, &i| m | 1 << i));
            }
            return;
        }
        for i in start..sets.len() {
            chosen.push(i);
            rec(sets, d, s, i + 1, chosen, out);
            chosen.pop();
        }
    }
    let mut out = Vec::new();
    rec(sets, d, s, 0, &mut Vec::new(), &mut out);
    out
}

pub fn mask_is_ci(mask: u32, clusters: &[u32]) -> bool {
    clusters.iter().all(|&c| c & !mask != 0)
}

pub fn to_family(n: usize, k: usize, sets: &[u32], mask: u32) -> SetFamily {
    let lists: Vec<Vec<usize>> = (0..sets.len())
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| (1..=n).filter(|v| sets[i] >> (v - 1) & 1 == 1).collect())
        .collect();
    condint::make_family(n, k, &lists).unwrap()
}

pub struct OracleResult {
    pub h: usize,
    /// Every maximum family, in canonical order.
    pub maxima: Vec<SetFamily>,
    pub masks_examined: u64,
}

/// Maximum size and all maximum families by examining every subfamily of
/// `C([n], k)`. Requires `C(n, k) <= 24`.
pub fn naive_max(n: usize, k: usize, d: usize, s: usize) -> OracleResult {
    naive_max_filtered(n, k, d, s, |_, _| true)
}

/// As [`naive_max`], restricted to subfamilies accepted by `keep`
/// (given the candidate list and the mask).
pub fn naive_max_filtered(n: usize, k: usize, d: usize, s: usize, keep: impl Fn(&[u32], u32) -> bool) -> OracleResult {
    let sets = ksets(n, k);
    assert!(sets.len() <= 24, "oracle limited to 24 candidates");
    let clusters = cluster_masks(&sets, d, s);
    let mut best = 0usize;
    let mut maxima = Vec::new();
    let total = 1u64 << sets.len();
    for mask in 0..total {
        let mask = mask as u32;
        let size = mask.count_ones() as usize;
        if size < best || !mask_is_ci(mask, &clusters) || !keep(&sets, mask) {
            continue;
        }
        if size > best {
            best = size;
            maxima.clear();
        }
        maxima.push(mask);
    }
    let mut fams: Vec<SetFamily> = maxima.iter().map(|&m| to_family(n, k, &sets, m)).collect();
    fams.sort();
    OracleResult {
        h: best,
        maxima: fams,
        masks_examined: total,
    }
}

/// Every `(d, s)`-conditionally intersecting subfamily of `C([n], k)`.
pub fn all_ci_families(n: usize, k: usize, d: usize, s: usize) -> Vec<SetFamily> {
    let sets = ksets(n, k);
    assert!(sets.len() <= 24);
    let clusters = cluster_masks(&sets, d, s);
    (0..1u64 << sets.len())
        .map(|m| m as u32)
        .filter(|&m| mask_is_ci(m, &clusters))
        .map(|m| to_family(n, k, &sets, m))
        .collect()
}

/// Largest `(3, 2k)`-conditionally intersecting family on `[n]` containing
/// the fixed disjoint pair `[k]`, `{k+1..2k}`, by plain depth-first
/// enumeration of every such family (no size bound used for pruning).
/// Returns the maximum and the number of qualifying families.
pub fn restricted_nonintersecting_max(n: usize, k: usize) -> (usize, u64) {
    let sets: Vec<u64> = ksets(n, k).into_iter().map(u64::from).collect();
    let a: u64 = (1 << k) - 1;
    let b: u64 = a << k;
    let s = 2 * k;
    let compatible = |fam: &[u64], x: u64| {
        for i in 0..fam.len() {
            for j in i + 1..fam.len() {
                let (p, q) = (fam[i], fam[j]);
                if (p | q | x).count_ones() as usize <= s && p & q & x == 0 {
                    return false;
                }
            }
        }
        true
    };
    fn rec(
        sets: &[u64],
        start: usize,
        fam: &mut Vec<u64>,
        ok: &dyn Fn(&[u64], u64) -> bool,
        best: &mut usize,
        count: &mut u64,
    ) {
        *count += 1;
        *best = (*best).max(fam.len());
        for i in start..sets.len() {
            let x = sets[i];
            if fam.contains(&x) || !ok(fam, x) {
                continue;
            }
            fam.push(x);
            rec(sets, i + 1, fam, ok, best, count);
            fam.pop();
        }
    }
    let mut fam = vec![a, b];
    let (mut best, mut count) = (0, 0);
    rec(&sets, 0, &mut fam, &compatible, &mut best, &mut count);
    (best, count)
}

/// Binomial coefficient in `u128`, for small arguments.
pub fn choose(n: u64, r: u64) -> u128 {
    if r > n {
        return 0;
    }
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}
