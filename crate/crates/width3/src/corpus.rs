//! A small corpus of all posets up to isomorphism, for desk-scale
//! cross-checks: a finite poset has a fixed-point-free endomorphism
//! exactly when some retract of it (possibly itself) is a tower of nice
//! sections, checked exhaustively for connected posets of width at most
//! three.

use crate::error::{Budget, Error};
use crate::level::width_at_most;
use crate::poset::{bits, Poset};
use crate::search::{find_fpf_endomorphism, is_isomorphic};

/// Numbers of posets up to isomorphism on 1..=7 points.
pub const POSET_COUNTS: [usize; 7] = [1, 2, 5, 16, 63, 318, 2045];

/// All posets on 1..=max_n points up to isomorphism, grown by adding a
/// maximal point above each order ideal of each smaller poset.
pub fn enumerate_posets(max_n: usize, budget: &mut Budget) -> Result<Vec<Vec<Poset>>, Error> {
    assert!((1..=7).contains(&max_n), "corpus enumeration is desk-scale");
    let mut by_size: Vec<Vec<Poset>> = vec![vec![Poset::antichain(1)]];
    for n in 2..=max_n {
        // Bucket candidates by a cheap invariant so isomorphism tests
        // only run within a bucket.
        let mut buckets: std::collections::BTreeMap<Vec<(u32, u32)>, Vec<Poset>> =
            std::collections::BTreeMap::new();
        for p in &by_size[n - 2] {
            for ideal in order_ideals(p) {
                budget.tick()?;
                let mut pairs: Vec<(usize, usize)> = Vec::new();
                for x in 0..p.len() {
                    for y in 0..p.len() {
                        if p.lt(x, y) {
                            pairs.push((x, y));
                        }
                    }
                }
                for x in bits(ideal) {
                    pairs.push((x, p.len()));
                }
                let q = Poset::from_strict_pairs(n, &pairs)?;
                let mut sig: Vec<(u32, u32)> = (0..n)
                    .map(|x| (q.strict_down(x).count_ones(), q.strict_up(x).count_ones()))
                    .collect();
                sig.sort();
                let bucket = buckets.entry(sig).or_default();
                let mut fresh = true;
                for seen in bucket.iter() {
                    if is_isomorphic(&q, seen, budget)? {
                        fresh = false;
                        break;
                    }
                }
                if fresh {
                    bucket.push(q);
                }
            }
        }
        by_size.push(buckets.into_values().flatten().collect());
    }
    for (i, group) in by_size.iter().enumerate() {
        debug_assert_eq!(group.len(), POSET_COUNTS[i], "count mismatch at {} points", i + 1);
    }
    Ok(by_size)
}

/// All down-closed subsets of P (including the empty set).
pub fn order_ideals(p: &Poset) -> Vec<u64> {
    (0..=p.all_mask())
        .filter(|&m| bits(m).all(|x| p.strict_down(x) & !m == 0))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusStats {
    pub checked: usize,
    pub with_fpf_endomorphism: usize,
}

/// For every connected poset of width at most three on up to `max_n`
/// points, checks that a fixed-point-free endomorphism exists exactly
/// when some retract is a tower of nice sections. Returns the tallies,
/// or an error naming no poset (the caller gets a plain disagreement).
pub fn check_fixed_point_equivalence(
    max_n: usize,
    budget: &mut Budget,
) -> Result<CorpusStats, Error> {
    use crate::oracle::has_tower_of_nice_sections_retract;
    let mut stats = CorpusStats { checked: 0, with_fpf_endomorphism: 0 };
    for group in enumerate_posets(max_n, budget)? {
        for p in group {
            if !p.is_connected_on(p.all_mask()) || !width_at_most(&p, 3) {
                continue;
            }
            stats.checked += 1;
            let fpf = find_fpf_endomorphism(&p, budget)?.is_some();
            let tower = has_tower_of_nice_sections_retract(&p, budget)?;
            if fpf {
                stats.with_fpf_endomorphism += 1;
            }
            if fpf != tower {
                return Err(Error::Condition);
            }
        }
    }
    Ok(stats)
}
