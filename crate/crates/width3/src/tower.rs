//! Ordinal decompositions: cuts, towers of (nice) sections, and 4-crown
//! stack recognizers.

use crate::level::level_structure_on;
use crate::pairtype::{pair_type, PairType};
use crate::poset::{bits, Poset};
use crate::section::{is_nice, is_section};

/// Level indices k such that levels 0..=k lie fully below levels k+1...
/// Cut boundaries always align with level boundaries because levels are
/// antichains.
pub fn ordinal_cuts(p: &Poset, domain: u64) -> Vec<usize> {
    let ls = level_structure_on(p, domain);
    let h = ls.height();
    (0..h)
        .filter(|&k| p.fully_below(ls.range(0, k), ls.range(k + 1, h)))
        .collect()
}

/// The finest ordinal decomposition of the sub-poset on `domain`: the
/// point masks of its summands, bottom to top.
pub fn ordinal_summands(p: &Poset, domain: u64) -> Vec<u64> {
    let ls = level_structure_on(p, domain);
    let h = ls.height();
    let cuts = ordinal_cuts(p, domain);
    let mut summands = Vec::new();
    let mut lo = 0usize;
    for &k in &cuts {
        summands.push(ls.range(lo, k));
        lo = k + 1;
    }
    summands.push(ls.range(lo, h));
    summands
}

/// Summand posets if the sub-poset on `domain` is a tower of sections
/// (an ordinal sum of 2-antichains and width-three sections), else `None`.
/// The section decomposition is unique, so the finest cut works.
pub fn tower_decomposition(p: &Poset, domain: u64) -> Option<Vec<Poset>> {
    if domain == 0 {
        return None;
    }
    let mut parts = Vec::new();
    for mask in ordinal_summands(p, domain) {
        let q = p.induced(mask);
        if !is_section(&q) {
            return None;
        }
        parts.push(q);
    }
    Some(parts)
}

/// True if the sub-poset on `domain` is an ordinal sum of nice sections.
pub fn is_tower_of_nice_sections(p: &Poset, domain: u64) -> bool {
    match tower_decomposition(p, domain) {
        Some(parts) => parts.iter().all(|q| is_nice(q) == Ok(true)),
        None => false,
    }
}

/// True if the sub-poset on `domain` is a 2-antichain or a 4-crown stack:
/// every level a 2-antichain, every consecutive level pair fully related.
pub fn is_stack_image(p: &Poset, domain: u64) -> bool {
    if domain == 0 {
        return false;
    }
    let ls = level_structure_on(p, domain);
    if ls.levels.iter().any(|l| l.count_ones() != 2) {
        return false;
    }
    (0..ls.height()).all(|k| p.fully_below(ls.level(k), ls.level(k + 1)))
}

/// True if the sub-poset on `domain` is a 4-crown stack (height ≥ 1).
pub fn is_crown4_stack(p: &Poset, domain: u64) -> bool {
    is_stack_image(p, domain) && level_structure_on(p, domain).height() >= 1
}

/// True if the sub-poset on `domain` is a non-trivial tower of nice
/// sections containing a level pair of type 32 or 23.
pub fn has_32_or_23_level_pair(p: &Poset, domain: u64) -> bool {
    let ls = level_structure_on(p, domain);
    (0..ls.height()).any(|k| {
        matches!(
            pair_type(p, ls.level(k), ls.level(k + 1)),
            Ok(PairType::T32) | Ok(PairType::T23)
        )
    })
}

/// All subsets of `domain` inducing a two-antichain (used as trivial
/// stack images); pairs listed by ascending (low id, high id).
pub fn incomparable_pairs(p: &Poset, domain: u64) -> Vec<u64> {
    let points: Vec<usize> = bits(domain).collect();
    let mut pairs = Vec::new();
    for (i, &x) in points.iter().enumerate() {
        for &y in &points[i + 1..] {
            if !p.comparable(x, y) {
                pairs.push(1 << x | 1 << y);
            }
        }
    }
    pairs
}
