//! Brute-force reference searches. These are the independent oracles the
//! faster methods are validated against: they enumerate candidate images
//! exhaustively and only use the generic retraction search.

use crate::error::{Budget, Error};
use crate::poset::{bits, Poset};
use crate::retraction::Retraction;
use crate::search::{find_fpf_endomorphism, find_retraction_onto};
use crate::tower::{incomparable_pairs, is_tower_of_nice_sections};

/// Enumerates all stacked chains of 2-antichains inside `domain`:
/// sequences of incomparable pairs, each lying fully below the next.
/// Stacks with at least `min_levels` levels are reported. If `floor` is
/// given, every point of the bottom pair must lie strictly above all
/// points of `floor`. Deterministic: pairs ascend by (low id, high id).
/// `visit` returns true to stop the enumeration.
pub fn for_each_stack_image(
    p: &Poset,
    domain: u64,
    min_levels: usize,
    floor: Option<u64>,
    budget: &mut Budget,
    visit: &mut dyn FnMut(&[u64], &mut Budget) -> Result<bool, Error>,
) -> Result<bool, Error> {
    let pairs = incomparable_pairs(p, domain);
    let first: Vec<u64> = match floor {
        Some(f) => pairs
            .iter()
            .copied()
            .filter(|&pair| bits(f).all(|x| pair & !p.strict_up(x) == 0))
            .collect(),
        None => pairs.clone(),
    };

    fn extend(
        p: &Poset,
        pairs: &[u64],
        stack: &mut Vec<u64>,
        min_levels: usize,
        budget: &mut Budget,
        visit: &mut dyn FnMut(&[u64], &mut Budget) -> Result<bool, Error>,
    ) -> Result<bool, Error> {
        budget.tick()?;
        if stack.len() >= min_levels && visit(stack, budget)? {
            return Ok(true);
        }
        let top = *stack.last().unwrap();
        for &pair in pairs {
            if p.fully_below(top, pair) {
                stack.push(pair);
                if extend(p, pairs, stack, min_levels, budget, visit)? {
                    return Ok(true);
                }
                stack.pop();
            }
        }
        Ok(false)
    }

    for &pair in &first {
        let mut stack = vec![pair];
        if extend(p, &pairs, &mut stack, min_levels, budget, visit)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Brute-force search for a retraction of the sub-poset on `domain` onto
/// a stack of 2-antichains with at least `min_levels` levels and, if
/// given, bottom level fully above `floor`.
pub fn find_stack_retraction(
    p: &Poset,
    domain: u64,
    min_levels: usize,
    floor: Option<u64>,
    budget: &mut Budget,
) -> Result<Option<Retraction>, Error> {
    let mut found = None;
    for_each_stack_image(p, domain, min_levels, floor, budget, &mut |stack, budget| {
        let image = stack.iter().fold(0u64, |m, &l| m | l);
        if let Some(r) = find_retraction_onto(p, domain, image, budget)? {
            found = Some(r);
            return Ok(true);
        }
        Ok(false)
    })?;
    Ok(found)
}

/// Brute-force oracle: a retraction of P onto a 4-crown stack (height at
/// least one), or `None`.
pub fn oracle_4crown_stack_retract(
    p: &Poset,
    budget: &mut Budget,
) -> Result<Option<Retraction>, Error> {
    find_stack_retraction(p, p.all_mask(), 2, None, budget)
}

/// As the oracle, but restricted to a single 4-crown (exactly two image
/// levels).
pub fn oracle_single_4crown_retract(
    p: &Poset,
    budget: &mut Budget,
) -> Result<Option<Retraction>, Error> {
    let mut found = None;
    for_each_stack_image(p, p.all_mask(), 2, None, budget, &mut |stack, budget| {
        if stack.len() != 2 {
            return Ok(false);
        }
        let image = stack[0] | stack[1];
        if let Some(r) = find_retraction_onto(p, p.all_mask(), image, budget)? {
            found = Some(r);
            return Ok(true);
        }
        Ok(false)
    })?;
    Ok(found)
}

/// A fixed-point-free automorphism, or `None`.
pub fn find_fpf_automorphism(p: &Poset, budget: &mut Budget) -> Result<Option<Vec<usize>>, Error> {
    fn assign(
        p: &Poset,
        x: usize,
        map: &mut Vec<usize>,
        used: &mut u64,
        budget: &mut Budget,
    ) -> Result<bool, Error> {
        budget.tick()?;
        if x == p.len() {
            return Ok(true);
        }
        for c in 0..p.len() {
            if c == x || *used >> c & 1 == 1 {
                continue;
            }
            let ok = (0..x).all(|y| p.lt(x, y) == p.lt(c, map[y]) && p.lt(y, x) == p.lt(map[y], c));
            if ok {
                map[x] = c;
                *used |= 1 << c;
                if assign(p, x + 1, map, used, budget)? {
                    return Ok(true);
                }
                *used &= !(1 << c);
            }
        }
        Ok(false)
    }

    let mut map = vec![usize::MAX; p.len()];
    let mut used = 0u64;
    if assign(p, 0, &mut map, &mut used, budget)? {
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

/// True if P has a fixed-point-free automorphism and every proper retract
/// has the fixed point property. Exhaustive over all proper subsets, so
/// only for small posets (n ≤ 14).
pub fn is_minimal_automorphic_small(p: &Poset, budget: &mut Budget) -> Result<bool, Error> {
    assert!(p.len() <= 14, "exhaustive subset sweep needs a small poset");
    if find_fpf_automorphism(p, budget)?.is_none() {
        return Ok(false);
    }
    let all = p.all_mask();
    for image in 1..all {
        budget.tick()?;
        let q = p.induced(image);
        // Cheap test first: a retract without the fpp must exist for P to
        // fail, so only fpp-less subsets need the retraction search.
        if find_fpf_endomorphism(&q, &mut Budget::default())?.is_none() {
            continue;
        }
        if find_retraction_onto(p, all, image, &mut Budget::default())?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True if some retract of P (possibly P itself) is a tower of nice
/// sections. Exhaustive over subsets; for the desk-scale corpus check.
pub fn has_tower_of_nice_sections_retract(p: &Poset, budget: &mut Budget) -> Result<bool, Error> {
    assert!(p.len() <= 16, "exhaustive subset sweep needs a small poset");
    let all = p.all_mask();
    for image in (1..=all).rev() {
        budget.tick()?;
        if !is_tower_of_nice_sections(p, image) {
            continue;
        }
        if find_retraction_onto(p, all, image, &mut Budget::default())?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::section::build_section;
    use crate::tower::is_crown4_stack;

    fn section(code: &str) -> Poset {
        build_section(&code.parse().unwrap()).0
    }

    #[test]
    fn stack_images_of_a_4_crown_stack() {
        let p = Poset::ordinal_sum(&[Poset::antichain(2), Poset::antichain(2)]).unwrap();
        let mut n = 0;
        for_each_stack_image(&p, p.all_mask(), 1, None, &mut Budget::default(), &mut |_, _| {
            n += 1;
            Ok(false)
        })
        .unwrap();
        // Two single pairs plus the full stack.
        assert_eq!(n, 3);
    }

    #[test]
    fn segment_10_has_a_4_crown_retract_with_singleton_top_fiber() {
        let p = section("10");
        let r = oracle_4crown_stack_retract(&p, &mut Budget::default()).unwrap().unwrap();
        assert!(is_crown4_stack(&p, r.image));
        // Some witness has a singleton fiber on a top image point.
        let mut witness = false;
        for_each_stack_image(&p, p.all_mask(), 2, None, &mut Budget::default(), &mut |stack, budget| {
            let image = stack.iter().fold(0u64, |m, &l| m | l);
            if let Some(r) = find_retraction_onto(&p, p.all_mask(), image, budget)? {
                let top = *stack.last().unwrap();
                witness = bits(top).any(|v| (0..p.len()).all(|x| x == v || r.map[x] != v));
            }
            Ok(witness)
        })
        .unwrap();
        assert!(witness);
    }

    #[test]
    fn crown_stacks_of_height_at_most_2_have_no_4_crown_stack_retract() {
        for code in ["1", "11"] {
            let p = section(code);
            assert!(oracle_4crown_stack_retract(&p, &mut Budget::default()).unwrap().is_none());
        }
    }

    #[test]
    fn crown_stack_of_height_3_has_one() {
        let p = section("111");
        let r = oracle_4crown_stack_retract(&p, &mut Budget::default()).unwrap().unwrap();
        assert!(is_crown4_stack(&p, r.image));
    }

    #[test]
    fn fpf_automorphisms_of_crowns_and_chains() {
        assert!(find_fpf_automorphism(&Poset::crown(3), &mut Budget::default()).unwrap().is_some());
        assert!(find_fpf_automorphism(&Poset::chain(4), &mut Budget::default()).unwrap().is_none());
        // The 3-antichain has the 3-cycle.
        assert!(find_fpf_automorphism(&Poset::antichain(3), &mut Budget::default())
            .unwrap()
            .is_some());
    }

    #[test]
    fn minimal_automorphic_small_cases() {
        assert!(is_minimal_automorphic_small(&Poset::crown(3), &mut Budget::default()).unwrap());
        assert!(is_minimal_automorphic_small(&Poset::crown(2), &mut Budget::default()).unwrap());
        assert!(!is_minimal_automorphic_small(&Poset::chain(3), &mut Budget::default()).unwrap());
        assert!(is_minimal_automorphic_small(&section("11"), &mut Budget::default()).unwrap());
        assert!(!is_minimal_automorphic_small(&section("111"), &mut Budget::default()).unwrap());
    }

    #[test]
    fn tower_retract_detection() {
        assert!(has_tower_of_nice_sections_retract(&Poset::crown(2), &mut Budget::default())
            .unwrap());
        assert!(!has_tower_of_nice_sections_retract(&Poset::chain(3), &mut Budget::default())
            .unwrap());
    }
}
