//! Seeded random families for property checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cluster::{find_violation, least_disjoint_pair};
use crate::family::{complete_kgraph, first_member_without_unique_subset, full_star_on, SetFamily};
use crate::kset::{KSet, VertexSet};
use crate::structure::hypothesis_union_bound;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_kset<R: Rng>(rng: &mut R, pool: &[usize], k: usize) -> KSet {
    VertexSet::from_vertices(pool.choose_multiple(rng, k).copied())
}

fn with_member(family: &SetFamily, m: KSet) -> SetFamily {
    let mut members = family.members().to_vec();
    members.push(m);
    SetFamily::from_members(family.n(), family.k(), members).expect("valid member")
}

/// Adds up to `attempts` random `k`-sets of `[n]`, keeping each one only
/// if `keep` accepts the enlarged family.
fn grow<R: Rng>(rng: &mut R, start: SetFamily, attempts: usize, mut keep: impl FnMut(&SetFamily) -> bool) -> SetFamily {
    let pool: Vec<usize> = (1..=start.n()).collect();
    let k = start.k();
    let mut family = start;
    for _ in 0..attempts {
        let m = random_kset(rng, &pool, k);
        if family.contains(&m) {
            continue;
        }
        let next = with_member(&family, m);
        if keep(&next) {
            family = next;
        }
    }
    family
}

fn is_ci(family: &SetFamily, d: usize, s: usize) -> bool {
    find_violation(family, d, s).expect("valid parameters").is_none()
}

/// Greedy random `(d, s)`-conditionally intersecting family.
pub fn random_ci<R: Rng>(rng: &mut R, n: usize, k: usize, d: usize, s: usize, attempts: usize) -> SetFamily {
    let start = SetFamily::empty(n, k).expect("valid parameters");
    grow(rng, start, attempts, |f| is_ci(f, d, s))
}

/// Random family in which every member has a unique `(k-1)`-subset.
pub fn unique_subset_family<R: Rng>(rng: &mut R, n: usize, k: usize, attempts: usize) -> SetFamily {
    let start = SetFamily::empty(n, k).expect("valid parameters");
    grow(rng, start, attempts, |f| first_member_without_unique_subset(f).is_none())
}

/// Random `(3, 2k)`-conditionally intersecting family containing two
/// disjoint members.
pub fn nonintersecting_family<R: Rng>(rng: &mut R, n: usize, k: usize, attempts: usize) -> SetFamily {
    assert!(n >= 2 * k, "need n >= 2k");
    let mut pool: Vec<usize> = (1..=n).collect();
    pool.shuffle(rng);
    let a = VertexSet::from_vertices(pool[..k].iter().copied());
    let b = VertexSet::from_vertices(pool[k..2 * k].iter().copied());
    let start = SetFamily::from_members(n, k, vec![a, b]).expect("valid members");
    let f = grow(rng, start, attempts, |f| is_ci(f, 3, 2 * k));
    debug_assert!(least_disjoint_pair(&f).is_some());
    f
}

/// Disjoint complete `(k+1)`-blocks, a star and sparse extras, kept
/// conditionally intersecting with the union bound the structure theorem
/// assumes (`2k + d - 3`, or `2k` when `d = k`). Vertex supports of blocks
/// and the star are disjoint and randomly placed in `[n]`.
pub fn composite<R: Rng>(rng: &mut R, k: usize, d: usize) -> SetFamily {
    let blocks = rng.gen_range(1..=3);
    let star_vertices = rng.gen_range(k + 1..=k + 4);
    let spare = rng.gen_range(0..=4);
    let n = blocks * (k + 1) + star_vertices + spare;
    let mut pool: Vec<usize> = (1..=n).collect();
    pool.shuffle(rng);
    let mut members = Vec::new();
    let mut at = 0;
    for _ in 0..blocks {
        let block = VertexSet::from_vertices(pool[at..at + k + 1].iter().copied());
        members.extend(complete_kgraph(k, block).expect("k+1 vertices").members().iter().copied());
        at += k + 1;
    }
    let host = VertexSet::from_vertices(pool[at..at + star_vertices].iter().copied());
    let core = host.iter().next().expect("nonempty host");
    let star = full_star_on(n, host, k, core).expect("valid star");
    // Keep a random portion of the star so that not every composite is extremal.
    for &m in star.members() {
        if rng.gen_bool(0.7) {
            members.push(m);
        }
    }
    let s = hypothesis_union_bound(k, d);
    let start = SetFamily::from_members(n, k, members).expect("valid members");
    let start = if is_ci(&start, d, s) {
        start
    } else {
        SetFamily::empty(n, k).expect("valid parameters")
    };
    let extras = rng.gen_range(0..=6);
    grow(rng, start, extras, |f| is_ci(f, d, s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_generation_is_reproducible() {
        let a = random_ci(&mut rng(7), 8, 3, 3, 6, 40);
        let b = random_ci(&mut rng(7), 8, 3, 3, 6, 40);
        assert_eq!(a, b);
        assert!(is_ci(&a, 3, 6));
    }

    #[test]
    fn generators_meet_their_contracts() {
        let mut r = rng(1);
        for _ in 0..20 {
            let u = unique_subset_family(&mut r, 7, 3, 30);
            assert!(first_member_without_unique_subset(&u).is_none());
            let f = nonintersecting_family(&mut r, 9, 3, 40);
            assert!(is_ci(&f, 3, 6));
            assert!(least_disjoint_pair(&f).is_some());
            for (k, d) in [(3, 3), (4, 3), (4, 4)] {
                let c = composite(&mut r, k, d);
                assert!(is_ci(&c, d, hypothesis_union_bound(k, d)));
                assert!(!c.is_empty());
            }
        }
    }
}
