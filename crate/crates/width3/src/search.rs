//! Backtracking searches: retractions onto a prescribed image,
//! fixed-point-free endomorphisms, and isomorphism testing.
//!
//! All searches are deterministic: points are processed in increasing
//! (level, id) order and candidate images in increasing id, so golden
//! outputs are reproducible.

use crate::error::{Budget, Error};
use crate::level::{level_structure_on, LevelStructure};
use crate::poset::{bits, Poset};
use crate::retraction::{verify_retraction, Retraction};

fn free_points_in_order(ls: &LevelStructure, domain: u64, image: u64) -> Vec<usize> {
    let mut free: Vec<usize> = bits(domain & !image).collect();
    free.sort_by_key(|&x| (ls.lambda[x], x));
    free
}

/// Candidate images for a free point x, from the constraints against the
/// fixed image points alone.
fn base_candidates(p: &Poset, x: usize, image: u64) -> u64 {
    let mut cand = image;
    for r in bits(image) {
        if p.lt(x, r) {
            cand &= p.down_set(r);
        }
        if p.lt(r, x) {
            cand &= p.up_set(r);
        }
    }
    cand
}

struct RetractionSearch<'a> {
    p: &'a Poset,
    domain: u64,
    image: u64,
    free: Vec<usize>,
    /// Per-point additional restriction of candidate images.
    allowed: Vec<u64>,
}

impl<'a> RetractionSearch<'a> {
    fn run(
        &self,
        budget: &mut Budget,
        visit: &mut dyn FnMut(&Retraction) -> bool,
    ) -> Result<bool, Error> {
        let mut map: Vec<usize> = (0..self.p.len()).collect();
        let cand: Vec<u64> = self
            .free
            .iter()
            .map(|&x| base_candidates(self.p, x, self.image) & self.allowed[x])
            .collect();
        self.assign(0, &cand, &mut map, budget, visit)
    }

    fn assign(
        &self,
        i: usize,
        cand: &[u64],
        map: &mut Vec<usize>,
        budget: &mut Budget,
        visit: &mut dyn FnMut(&Retraction) -> bool,
    ) -> Result<bool, Error> {
        budget.tick()?;
        if i == self.free.len() {
            let r = Retraction::new(self.domain, map.clone());
            debug_assert_eq!(verify_retraction(self.p, &r), Ok(()));
            return Ok(visit(&r));
        }
        let x = self.free[i];
        for c in bits(cand[i]) {
            let mut ok = true;
            for &y in &self.free[..i] {
                if self.p.lt(x, y) && !self.p.le(c, map[y])
                    || self.p.lt(y, x) && !self.p.le(map[y], c)
                {
                    ok = false;
                    break;
                }
            }
            if ok {
                map[x] = c;
                if self.assign(i + 1, cand, map, budget, visit)? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

/// First retraction of the sub-poset on `domain` whose image is exactly
/// `image`, or `None`. Image points are fixed; every other point gets an
/// image in `image` consistent with all comparabilities.
pub fn find_retraction_onto(
    p: &Poset,
    domain: u64,
    image: u64,
    budget: &mut Budget,
) -> Result<Option<Retraction>, Error> {
    find_retraction_onto_constrained(p, domain, image, &vec![u64::MAX; p.len()], budget)
}

/// As `find_retraction_onto`, with an extra per-point restriction of the
/// candidate images (used to pin or forbid individual assignments).
pub fn find_retraction_onto_constrained(
    p: &Poset,
    domain: u64,
    image: u64,
    allowed: &[u64],
    budget: &mut Budget,
) -> Result<Option<Retraction>, Error> {
    let mut found = None;
    for_each_retraction_onto(p, domain, image, allowed, budget, &mut |r| {
        found = Some(r.clone());
        true
    })?;
    Ok(found)
}

/// Enumerates retractions onto `image` in deterministic order, calling
/// `visit` for each; `visit` returns true to stop early.
pub fn for_each_retraction_onto(
    p: &Poset,
    domain: u64,
    image: u64,
    allowed: &[u64],
    budget: &mut Budget,
    visit: &mut dyn FnMut(&Retraction) -> bool,
) -> Result<bool, Error> {
    debug_assert_eq!(image & !domain, 0);
    let ls = level_structure_on(p, domain);
    let search = RetractionSearch {
        p,
        domain,
        image,
        free: free_points_in_order(&ls, domain, image),
        allowed: allowed.to_vec(),
    };
    search.run(budget, visit)
}

/// A fixed-point-free order-preserving self-map, or `None` when the poset
/// has the fixed point property.
pub fn find_fpf_endomorphism(p: &Poset, budget: &mut Budget) -> Result<Option<Vec<usize>>, Error> {
    let domain = p.all_mask();
    let ls = level_structure_on(p, domain);
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&x| (ls.lambda[x], x));
    let mut map = vec![usize::MAX; p.len()];

    fn assign(
        p: &Poset,
        order: &[usize],
        i: usize,
        map: &mut Vec<usize>,
        budget: &mut Budget,
    ) -> Result<bool, Error> {
        budget.tick()?;
        if i == order.len() {
            return Ok(true);
        }
        let x = order[i];
        for c in 0..p.len() {
            if c == x {
                continue;
            }
            let mut ok = true;
            for &y in &order[..i] {
                if p.lt(x, y) && !p.le(c, map[y]) || p.lt(y, x) && !p.le(map[y], c) {
                    ok = false;
                    break;
                }
            }
            if ok {
                map[x] = c;
                if assign(p, order, i + 1, map, budget)? {
                    return Ok(true);
                }
                map[x] = usize::MAX;
            }
        }
        Ok(false)
    }

    if assign(p, &order, 0, &mut map, budget)? {
        debug_assert!(map.iter().enumerate().all(|(x, &y)| x != y));
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

fn refinement_signature(p: &Poset) -> Vec<(usize, u32, u32, u32, u32)> {
    let ls = level_structure_on(p, p.all_mask());
    (0..p.len())
        .map(|x| {
            (
                ls.lambda[x],
                p.strict_down(x).count_ones(),
                p.strict_up(x).count_ones(),
                p.lower_covers_in(x, p.all_mask()).count_ones(),
                p.upper_covers_in(x, p.all_mask()).count_ones(),
            )
        })
        .collect()
}

/// Exact isomorphism test by backtracking with (level, degree) refinement.
pub fn is_isomorphic(p: &Poset, q: &Poset, budget: &mut Budget) -> Result<bool, Error> {
    if p.len() != q.len() {
        return Ok(false);
    }
    let sig_p = refinement_signature(p);
    let sig_q = refinement_signature(q);
    let mut sorted_p = sig_p.clone();
    let mut sorted_q = sig_q.clone();
    sorted_p.sort_unstable();
    sorted_q.sort_unstable();
    if sorted_p != sorted_q {
        return Ok(false);
    }

    fn assign(
        p: &Poset,
        q: &Poset,
        sig_p: &[(usize, u32, u32, u32, u32)],
        sig_q: &[(usize, u32, u32, u32, u32)],
        x: usize,
        map: &mut Vec<usize>,
        used: &mut u64,
        budget: &mut Budget,
    ) -> Result<bool, Error> {
        budget.tick()?;
        if x == p.len() {
            return Ok(true);
        }
        for c in 0..q.len() {
            if *used >> c & 1 == 1 || sig_p[x] != sig_q[c] {
                continue;
            }
            let ok = (0..x).all(|y| {
                p.lt(x, y) == q.lt(c, map[y]) && p.lt(y, x) == q.lt(map[y], c)
            });
            if ok {
                map[x] = c;
                *used |= 1 << c;
                if assign(p, q, sig_p, sig_q, x + 1, map, used, budget)? {
                    return Ok(true);
                }
                *used &= !(1 << c);
            }
        }
        Ok(false)
    }

    let mut map = vec![usize::MAX; p.len()];
    let mut used = 0u64;
    assign(p, q, &sig_p, &sig_q, 0, &mut map, &mut used, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::mask_of;

    #[test]
    fn identity_image_gives_identity_retraction() {
        let p = Poset::crown(3);
        let r = find_retraction_onto(&p, p.all_mask(), p.all_mask(), &mut Budget::default())
            .unwrap()
            .unwrap();
        assert_eq!(r, Retraction::identity(&p));
    }

    #[test]
    fn crown6_has_no_co_singleton_retraction() {
        // No point of the 6-crown is retractable, so no retraction can
        // delete exactly one point.
        let p = Poset::crown(3);
        for x in 0..6 {
            let image = p.all_mask() & !(1 << x);
            let r = find_retraction_onto(&p, p.all_mask(), image, &mut Budget::default()).unwrap();
            assert!(r.is_none());
        }
    }

    #[test]
    fn crown6_retracts_onto_a_2_chain() {
        let p = Poset::crown(3);
        let r = find_retraction_onto(&p, p.all_mask(), mask_of(&[0, 3]), &mut Budget::default())
            .unwrap()
            .unwrap();
        assert_eq!(r.image, mask_of(&[0, 3]));
    }

    #[test]
    fn chains_have_the_fixed_point_property() {
        for n in 1..5 {
            let p = Poset::chain(n);
            assert_eq!(find_fpf_endomorphism(&p, &mut Budget::default()).unwrap(), None);
        }
    }

    #[test]
    fn crown4_has_the_antipodal_fpf_map() {
        let p = Poset::crown(2);
        let f = find_fpf_endomorphism(&p, &mut Budget::default()).unwrap().unwrap();
        assert!(f.iter().enumerate().all(|(x, &y)| x != y));
        // The found map must itself be order-preserving.
        for x in 0..4 {
            for y in 0..4 {
                if p.lt(x, y) {
                    assert!(p.le(f[x], f[y]));
                }
            }
        }
    }

    #[test]
    fn budget_exhaustion_is_distinct_from_none() {
        let p = Poset::crown(3);
        assert_eq!(
            find_fpf_endomorphism(&p, &mut Budget::new(2)),
            Err(Error::BudgetExceeded)
        );
    }

    #[test]
    fn isomorphism_distinguishes_crowns_and_relabelings() {
        let p = Poset::crown(3);
        // Another 6-crown with a different cyclic wiring.
        let q = Poset::from_strict_pairs(
            6,
            &[(0, 3), (0, 5), (1, 4), (1, 3), (2, 5), (2, 4)],
        )
        .unwrap();
        assert!(is_isomorphic(&p, &q, &mut Budget::default()).unwrap());
        assert!(!is_isomorphic(&p, &Poset::chain(6), &mut Budget::default()).unwrap());
        assert!(is_isomorphic(&p, &p.dual().dual(), &mut Budget::default()).unwrap());
    }
}
