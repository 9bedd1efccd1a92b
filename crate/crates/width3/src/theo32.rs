//! Decompositions P = U ⊕ V ⊕ W witnessing a retract that is a width-3
//! tower of nice sections with a 32 (or dually 23) level pair: identity
//! on a crowned-top lower segment U, an explicit chain-folding retraction
//! on an even-height middle segment V whose upper pairs are all 3C, and
//! an aligned witness retraction on an upper segment W crowned at both
//! ends.

use crate::error::{Budget, Error};
use crate::level::{level_structure, level_structure_on};
use crate::pairtype::{pair_type, PairType};
use crate::poset::{bits, Poset};
use crate::retraction::{verify_retraction, Retraction};
use crate::search::find_retraction_onto_constrained;
use crate::section::SectionCode;
use crate::tower::is_tower_of_nice_sections;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theo32Decomposition {
    /// Height of the lower identity segment.
    pub h_u: usize,
    /// Height of the folded middle segment.
    pub h_v: usize,
    /// True when the decomposition was found on the dual (image then has
    /// a 23 pair instead of a 32 pair).
    pub dual: bool,
    pub retraction: Retraction,
}

/// The point of `level_mask` on chain `j`. Chains of built sections and
/// their duals run along ids congruent mod 3.
fn chain_point(level_mask: u64, j: usize) -> usize {
    bits(level_mask).find(|x| x % 3 == j).expect("level has a point on each chain")
}

/// The explicit middle-segment retraction: level 0 fixed, odd levels
/// pushed up one level (chain 2 folded onto chain 1), even levels fixed
/// on chains 0 and 1 with chain 2 folded onto chain 1. Writes into `map`.
fn fold_middle_segment(
    p: &Poset,
    base_level: usize,
    h_v: usize,
    map: &mut [usize],
) {
    let ls = level_structure(p);
    for i in 1..h_v {
        let here = ls.level(base_level + i);
        if i % 2 == 1 {
            let above = ls.level(base_level + i + 1);
            for j in 0..3 {
                map[chain_point(here, j)] = chain_point(above, j.min(1));
            }
        } else {
            map[chain_point(here, 2)] = chain_point(here, 1);
        }
    }
}

fn search_one_orientation(
    p: &Poset,
    code: &SectionCode,
    budget: &mut Budget,
) -> Result<Option<(usize, usize, Retraction)>, Error> {
    let h = code.height();
    let ls = level_structure(p);
    for h_u in 1..h {
        if code.bit(h_u - 1) != 1 {
            continue;
        }
        for h_v in (2..h).step_by(2) {
            let h_w = match h.checked_sub(h_u + h_v) {
                Some(x) if x >= 3 => x,
                _ => continue,
            };
            // Middle segment: every pair above its bottom pair is 3C.
            if (h_u + 1..h_u + h_v).any(|i| code.bit(i) != 0) {
                continue;
            }
            // Upper segment crowned at both ends.
            if code.bit(h_u + h_v) != 1 || code.bit(h - 1) != 1 {
                continue;
            }
            let base_w = h_u + h_v;
            let w_mask = ls.range(base_w, h);
            let w0_level = ls.level(base_w);
            let w = [
                chain_point(w0_level, 0),
                chain_point(w0_level, 1),
                chain_point(w0_level, 2),
            ];
            debug_assert!(h_w >= 3);
            if let Some(s) = upper_witness(p, w_mask, base_w, &w, budget)? {
                // Assemble: identity on the lower segment, fold on the
                // middle, witness on the upper.
                let mut map: Vec<usize> = (0..p.len()).collect();
                fold_middle_segment(p, h_u, h_v, &mut map);
                for x in bits(w_mask) {
                    map[x] = s.map[x];
                }
                let r = Retraction::new(p.all_mask(), map);
                verify_retraction(p, &r).map_err(|_| Error::Condition)?;
                return Ok(Some((h_u, h_v, r)));
            }
        }
    }
    Ok(None)
}

/// Searches a retraction of the upper segment onto a tower of nice
/// sections whose bottom is the 2-antichain on chains 0 and 1 of the
/// segment's bottom level, whose first level pair is a 4-crown, and
/// whose height is at least two, with the second segment level mapped
/// clear of the bottom pair. These constraints pin every degree of
/// freedom the general witness has up to conjugation and fiber
/// redirection, so searching them is complete.
fn upper_witness(
    p: &Poset,
    w_mask: u64,
    base_w: usize,
    w: &[usize; 3],
    budget: &mut Budget,
) -> Result<Option<Retraction>, Error> {
    let ls = level_structure(p);
    let s_bottom = 1u64 << w[0] | 1 << w[1];
    let rest: Vec<usize> = bits(w_mask & !s_bottom & !(1 << w[2])).collect();
    let w1_level = ls.level(base_w + 1);
    for sub in 0..1u64 << rest.len() {
        budget.tick()?;
        let image = rest
            .iter()
            .enumerate()
            .filter(|(i, _)| sub >> i & 1 == 1)
            .fold(s_bottom, |m, (_, &x)| m | 1 << x);
        let lsi = level_structure_on(p, image);
        if lsi.level(0) != s_bottom || lsi.height() < 2 {
            continue;
        }
        if pair_type(p, lsi.level(0), lsi.level(1)) != Ok(PairType::T22) {
            continue;
        }
        if !is_tower_of_nice_sections(p, image) {
            continue;
        }
        let mut allowed = vec![u64::MAX; p.len()];
        allowed[w[2]] = 1 << w[1];
        for x in bits(w1_level) {
            allowed[x] &= !s_bottom;
        }
        if let Some(s) =
            find_retraction_onto_constrained(p, w_mask, image, &allowed, budget)?
        {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// Decides whether P has a retract that is a non-trivial width-3 tower
/// of nice sections, by searching three-segment decompositions on P and
/// on its dual.
pub fn check_theo32(
    p: &Poset,
    code: &SectionCode,
    budget: &mut Budget,
) -> Result<Option<Theo32Decomposition>, Error> {
    assert!(code.is_n2(), "decomposition search requires a crowned-both-ends code");
    if let Some((h_u, h_v, r)) = search_one_orientation(p, code, budget)? {
        return Ok(Some(Theo32Decomposition { h_u, h_v, dual: false, retraction: r }));
    }
    let pd = p.dual();
    let cd = code.reversed();
    if let Some((h_u, h_v, r)) = search_one_orientation(&pd, &cd, budget)? {
        // The same map is a retraction of the original poset.
        let r = Retraction::new(r.domain, r.map);
        verify_retraction(p, &r).map_err(|_| Error::Condition)?;
        return Ok(Some(Theo32Decomposition { h_u, h_v, dual: true, retraction: r }));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::section::{all_codes, build_section};
    use crate::tower::{has_32_or_23_level_pair, tower_decomposition};

    #[test]
    fn no_decomposition_below_height_6() {
        for h in 2..=5 {
            for code in all_codes(h) {
                if !code.is_n2() {
                    continue;
                }
                let p = build_section(&code).0;
                assert!(
                    check_theo32(&p, &code, &mut Budget::default()).unwrap().is_none(),
                    "{code}"
                );
            }
        }
    }

    #[test]
    fn height_6_positives_are_exactly_four() {
        let positives = ["100101", "101001", "101011", "110101"];
        for code in all_codes(6) {
            if !code.is_n2() {
                continue;
            }
            let p = build_section(&code).0;
            let got = check_theo32(&p, &code, &mut Budget::default()).unwrap();
            assert_eq!(
                got.is_some(),
                positives.contains(&code.to_string().as_str()),
                "{code}"
            );
            if let Some(d) = got {
                assert_eq!(verify_retraction(&p, &d.retraction), Ok(()));
                let parts = tower_decomposition(&p, d.retraction.image);
                assert!(parts.is_some(), "{code}");
                assert!(has_32_or_23_level_pair(&p, d.retraction.image), "{code}");
                assert!(is_tower_of_nice_sections(&p, d.retraction.image), "{code}");
            }
        }
    }
}
