//! Retractive splits: certificates decomposing a retraction onto a
//! 4-crown stack into two coupled segment retractions, their validation,
//! assembly into a full retraction, and the pruned certificate search.

use std::collections::BTreeMap;

use crate::error::{Budget, Error};
use crate::level::{level_structure, level_structure_on};
use crate::oracle::{find_stack_retraction, for_each_stack_image};
use crate::pairtype::{pair_type, PairType};
use crate::poset::{bits, Poset};
use crate::retraction::{verify_retraction, Retraction};
use crate::search::for_each_retraction_onto;
use crate::section::{extend_level0_permutation, SectionCode};
use crate::table::SegmentTable;
use crate::tower::is_stack_image;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitKind {
    Up,
    Down,
}

/// A split certificate: for `Down`, `t` retracts levels 0..k-1 onto T and
/// `s` retracts levels k..top minus `deleted` onto S, with T fully below
/// S and every deleted point redirectable into the top level of T. `Up`
/// is the dual decomposition (`t` on the upper part).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitCertificate {
    pub kind: SplitKind,
    pub k: usize,
    pub deleted: u64,
    pub s: Retraction,
    pub t: Retraction,
}

fn image_top_level(p: &Poset, image: u64) -> u64 {
    let ls = level_structure_on(p, image);
    ls.level(ls.height())
}

fn image_bottom_level(p: &Poset, image: u64) -> u64 {
    level_structure_on(p, image).level(0)
}

fn fiber(t: &Retraction, v: usize) -> u64 {
    bits(t.domain).filter(|&x| t.map[x] == v).fold(0u64, |m, x| m | 1 << x)
}

/// True when some point of `anchors` can absorb the deleted point: its
/// fiber contains no point related to `d` in the forbidden direction.
fn deleted_point_ok(p: &Poset, t: &Retraction, anchors: u64, d: usize, below: bool) -> bool {
    bits(anchors).any(|v| {
        let f = fiber(t, v);
        if below {
            f & p.strict_down(d) == 0
        } else {
            f & p.strict_up(d) == 0
        }
    })
}

/// Pure re-check of every certificate invariant, including the coupling
/// conditions. Never searches.
pub fn validate_split_detail(p: &Poset, cert: &SplitCertificate) -> Result<(), String> {
    let ls = level_structure(p);
    let h = ls.height();
    let (t_range, s_range) = match cert.kind {
        SplitKind::Down => {
            if !(1..=h).contains(&cert.k) {
                return Err("down-split level out of range".into());
            }
            (ls.range(0, cert.k - 1), ls.range(cert.k, h))
        }
        SplitKind::Up => {
            if cert.k >= h {
                return Err("up-split level out of range".into());
            }
            (ls.range(cert.k + 1, h), ls.range(0, cert.k))
        }
    };
    if cert.deleted & !s_range != 0 || cert.deleted == s_range {
        return Err("deleted set must be a proper subset of the s-segment".into());
    }
    if cert.s.domain != s_range & !cert.deleted {
        return Err("s-domain must be the s-segment minus the deleted set".into());
    }
    if cert.t.domain != t_range {
        return Err("t-domain must be the complementary segment".into());
    }
    verify_retraction(p, &cert.s).map_err(|e| format!("s: {e}"))?;
    verify_retraction(p, &cert.t).map_err(|e| format!("t: {e}"))?;
    for (name, image) in [("S", cert.s.image), ("T", cert.t.image)] {
        if !is_stack_image(p, image) {
            return Err(format!("{name} is not a 2-antichain or 4-crown stack"));
        }
    }
    match cert.kind {
        SplitKind::Down => {
            let t_top = image_top_level(p, cert.t.image);
            let s_bot = image_bottom_level(p, cert.s.image);
            if !p.fully_below(t_top, s_bot) {
                return Err("top of T must lie fully below bottom of S".into());
            }
            for d in bits(cert.deleted) {
                if !deleted_point_ok(p, &cert.t, t_top, d, true) {
                    return Err(format!("no redirect target in the top of T for {d}"));
                }
            }
        }
        SplitKind::Up => {
            let s_top = image_top_level(p, cert.s.image);
            let t_bot = image_bottom_level(p, cert.t.image);
            if !p.fully_below(s_top, t_bot) {
                return Err("top of S must lie fully below bottom of T".into());
            }
            for u in bits(cert.deleted) {
                if !deleted_point_ok(p, &cert.t, t_bot, u, false) {
                    return Err(format!("no redirect target in the bottom of T for {u}"));
                }
            }
        }
    }
    Ok(())
}

pub fn validate_split(p: &Poset, cert: &SplitCertificate) -> bool {
    validate_split_detail(p, cert).is_ok()
}

/// Combines a valid certificate into a full retraction onto S ⊕ T (up)
/// or T ⊕ S (down): s and t on their domains, each deleted point to the
/// anchor-level point it is not blocked by.
pub fn assemble_split_retraction(p: &Poset, cert: &SplitCertificate) -> Result<Retraction, Error> {
    if !validate_split(p, cert) {
        return Err(Error::Condition);
    }
    let (anchors, below) = match cert.kind {
        SplitKind::Down => (image_top_level(p, cert.t.image), true),
        SplitKind::Up => (image_bottom_level(p, cert.t.image), false),
    };
    let mut map: Vec<usize> = (0..p.len()).collect();
    for x in bits(cert.t.domain) {
        map[x] = cert.t.map[x];
    }
    for x in bits(cert.s.domain) {
        map[x] = cert.s.map[x];
    }
    for d in bits(cert.deleted) {
        let tau = bits(anchors)
            .find(|&v| {
                let f = fiber(&cert.t, v);
                if below {
                    f & p.strict_down(d) == 0
                } else {
                    f & p.strict_up(d) == 0
                }
            })
            .expect("validated certificate has a redirect target");
        let rho = bits(anchors & !(1 << tau)).next().expect("anchor level has two points");
        map[d] = rho;
    }
    let r = Retraction::new(p.all_mask(), map);
    verify_retraction(p, &r).map_err(|_| Error::Condition)?;
    debug_assert_eq!(r.image, cert.s.image | cert.t.image);
    debug_assert!(is_stack_image(p, r.image));
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PruneVerdict {
    Pass,
    Reject(usize),
}

/// Soundness prunes for a down-split (k, D, s, t) of a code of height at
/// least three; indices 1-5 follow the order of the underlying facts, 6
/// is the 011-segment bound.
pub fn apply_criteria(
    code: &SectionCode,
    table: &SegmentTable,
    k: usize,
    deleted_count: usize,
) -> PruneVerdict {
    let h = code.height();
    if h < 3 {
        return PruneVerdict::Pass;
    }
    // 1: the whole top level as s-base needs a flagged prefix of height
    // h-3 below the gap (the 3-antichain prefix of height 0 always works).
    if k == h && h > 3 && !table.flag(&code.prefix(h - 3)) {
        return PruneVerdict::Reject(1);
    }
    // 2: the top level pair as s-base needs at least two deletions.
    if k == h - 1 && deleted_count < 2 {
        return PruneVerdict::Reject(2);
    }
    // 3: the top level pair is no s-base at all under a 6-crown.
    if k == h - 1 && code.bit(h - 2) == 1 {
        return PruneVerdict::Reject(3);
    }
    // 4: s-base from level one up allows at most one deletion.
    if k == 1 && deleted_count > 1 {
        return PruneVerdict::Reject(4);
    }
    // 5: s-base from level one up under a 6-crown pair (1,2) needs a
    // flagged segment above level three.
    if k == 1 && code.bit(1) == 1 && h > 3 {
        let upper = code.suffix(h - 3).reversed();
        if !table.flag(&upper) {
            return PruneVerdict::Reject(5);
        }
    }
    // 6: a segment of shape 011 needs two bottom deletions.
    if h - k == 3
        && code.bit(k) == 0
        && code.bit(k + 1) == 1
        && code.bit(k + 2) == 1
        && deleted_count < 2
    {
        return PruneVerdict::Reject(6);
    }
    PruneVerdict::Pass
}

#[derive(Debug, Clone)]
struct TInterface {
    t: Retraction,
    /// Anchor level of T: its top level (the side facing the s-segment).
    top: u64,
    /// Fibers of the two anchor points, ascending by point id.
    fibers: Vec<u64>,
}

/// All retractions of the lower segment onto 2-antichains or 4-crown
/// stacks, deduplicated by their interface (anchor level and its fibers):
/// everything downstream depends only on that data.
fn t_interfaces(p: &Poset, lower: u64, budget: &mut Budget) -> Result<Vec<TInterface>, Error> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for_each_stack_image(p, lower, 1, None, budget, &mut |stack, budget| {
        let image = stack.iter().fold(0u64, |m, &l| m | l);
        let allowed = vec![u64::MAX; p.len()];
        for_each_retraction_onto(p, lower, image, &allowed, budget, &mut |t| {
            let top = *stack.last().unwrap();
            let fibers: Vec<u64> = bits(top).map(|v| fiber(t, v)).collect();
            if seen.insert((top, fibers.clone())) {
                out.push(TInterface { t: t.clone(), top, fibers });
            }
            false
        })?;
        Ok(false)
    })?;
    Ok(out)
}

/// Subsets of `mask` ordered by size, then ascending value.
fn subsets_by_size(mask: u64) -> Vec<u64> {
    let points: Vec<usize> = bits(mask).collect();
    let mut subs: Vec<u64> = (0..1u32 << points.len())
        .map(|w| {
            points
                .iter()
                .enumerate()
                .filter(|(i, _)| w >> i & 1 == 1)
                .fold(0u64, |m, (_, &x)| m | 1 << x)
        })
        .collect();
    subs.sort_by_key(|&s| (s.count_ones(), s));
    subs
}

#[derive(Debug, Clone, Copy)]
pub struct SplitSearchOptions {
    pub use_criteria: bool,
    /// Search-node budget granted per decided code.
    pub node_budget: u64,
}

impl Default for SplitSearchOptions {
    fn default() -> Self {
        SplitSearchOptions { use_criteria: true, node_budget: crate::error::DEFAULT_BUDGET }
    }
}

fn down_split_search(
    p: &Poset,
    code: &SectionCode,
    table: &SegmentTable,
    opts: SplitSearchOptions,
    budget: &mut Budget,
) -> Result<Option<SplitCertificate>, Error> {
    let ls = level_structure(p);
    let h = code.height();
    for k in 1..=h {
        let j = k - 1;
        // t-base candidacy: the trivial 3-antichain base, or a lower
        // segment already flagged as having a 4-crown stack retract.
        if j >= 1 && !table.flag(&code.prefix(j)) {
            continue;
        }
        let lower = ls.range(0, j);
        let seg = ls.range(k, h);
        let interfaces = t_interfaces(p, lower, budget)?;
        let mut memo: BTreeMap<(u64, u64), Option<Retraction>> = BTreeMap::new();
        for dmask in subsets_by_size(ls.level(k)) {
            if dmask == seg {
                continue;
            }
            if opts.use_criteria {
                if let PruneVerdict::Reject(_) =
                    apply_criteria(code, table, k, dmask.count_ones() as usize)
                {
                    continue;
                }
            }
            for tc in &interfaces {
                let ok = bits(dmask).all(|d| {
                    tc.fibers.iter().any(|&f| f & p.strict_down(d) == 0)
                });
                if !ok {
                    continue;
                }
                let domain = seg & !dmask;
                let entry = match memo.get(&(dmask, tc.top)) {
                    Some(e) => e.clone(),
                    None => {
                        let s = find_stack_retraction(p, domain, 1, Some(tc.top), budget)?;
                        memo.insert((dmask, tc.top), s.clone());
                        s
                    }
                };
                if let Some(s) = entry {
                    let cert = SplitCertificate {
                        kind: SplitKind::Down,
                        k,
                        deleted: dmask,
                        s,
                        t: tc.t.clone(),
                    };
                    debug_assert_eq!(validate_split_detail(p, &cert), Ok(()));
                    return Ok(Some(cert));
                }
            }
        }
    }
    Ok(None)
}

/// Searches a retractive split certifying a 4-crown stack retract:
/// down-splits directly, up-splits as down-splits of the dual. `None`
/// means no such retract exists (completeness of the split method).
pub fn search_retractive_split(
    p: &Poset,
    code: &SectionCode,
    table: &SegmentTable,
    opts: SplitSearchOptions,
    budget: &mut Budget,
) -> Result<Option<SplitCertificate>, Error> {
    assert!(code.is_n2(), "split search requires a crowned-both-ends code");
    if let Some(cert) = down_split_search(p, code, table, opts, budget)? {
        return Ok(Some(cert));
    }
    let pd = p.dual();
    let cd = code.reversed();
    if let Some(cert) = down_split_search(&pd, &cd, table, opts, budget)? {
        // A down-split of the dual is an up-split of the original: same
        // maps, mirrored level index.
        let up = SplitCertificate {
            kind: SplitKind::Up,
            k: code.height() - cert.k,
            deleted: cert.deleted,
            s: cert.s,
            t: cert.t,
        };
        debug_assert_eq!(validate_split_detail(p, &up), Ok(()));
        return Ok(Some(up));
    }
    Ok(None)
}

/// Glues a lower-segment retraction s (singleton fiber on a top image
/// point) and an upper-segment retraction t (singleton fiber on a bottom
/// image point) across the level gap k..k+2 into a retraction onto
/// S ⊕ T, provided the gap is not a 6-crown stack. Conjugates s by the
/// six automorphisms of the lower segment to align the singleton-fiber
/// point away from the anchor of t.
pub fn combine_across_gap(
    p: &Poset,
    k: usize,
    s: &Retraction,
    t: &Retraction,
) -> Result<Retraction, Error> {
    let ls = level_structure(p);
    let h = ls.height();
    if k + 2 > h {
        return Err(Error::Condition);
    }
    let crown = |a: usize, b: usize| pair_type(p, ls.level(a), ls.level(b)) == Ok(PairType::Crown6);
    if crown(k, k + 1) && crown(k + 1, k + 2) {
        return Err(Error::Condition);
    }
    if crown(k + 1, k + 2) {
        // Mirror: handle the 3C-on-bottom case on the dual and flip back.
        let pd = p.dual();
        let r = combine_across_gap(&pd, h - k - 2, t, s)?;
        return Ok(Retraction::new(r.domain, r.map));
    }
    // P(k+1, k+2) is 3C. Anchor v: the singleton-fiber bottom point of T.
    let t_bot = image_bottom_level(p, t.image);
    let v = bits(t_bot)
        .find(|&v| fiber(t, v) == 1 << v)
        .ok_or(Error::Condition)?;
    let (lower_poset, lower_ids) = p.induced_with_map(ls.range(0, k));
    let bottom3: Vec<usize> = bits(level_structure(&lower_poset).level(0)).collect();
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for perm in perms {
        let q = [bottom3[perm[0]], bottom3[perm[1]], bottom3[perm[2]]];
        let Ok(sigma_local) = extend_level0_permutation(&lower_poset, &q) else { continue };
        let mut sigma: Vec<usize> = (0..p.len()).collect();
        for (i, &x) in lower_ids.iter().enumerate() {
            sigma[x] = lower_ids[sigma_local[i]];
        }
        let s2 = crate::section::conjugate_retraction(p, s, &sigma);
        let s2_top = image_top_level(p, s2.image);
        let Some(a) = bits(s2_top).find(|&a| fiber(&s2, a) == 1 << a) else { continue };
        // Deleted set: upper covers of a in P(k+1); none may lie below v.
        let u_set = p.upper_covers_in(a, ls.level(k + 1));
        if u_set & p.strict_down(v) != 0 {
            continue;
        }
        // Extend s2 over P(k+1) minus the deleted covers: everything else
        // there maps to the other top image point of S.
        let b = bits(s2_top & !(1 << a)).next().ok_or(Error::Condition)?;
        let mut map: Vec<usize> = (0..p.len()).collect();
        for x in bits(s2.domain) {
            map[x] = s2.map[x];
        }
        for x in bits(ls.level(k + 1) & !u_set) {
            map[x] = b;
        }
        let s_prime = Retraction::new((s2.domain | ls.level(k + 1)) & !u_set, map);
        let cert = SplitCertificate {
            kind: SplitKind::Up,
            k: k + 1,
            deleted: u_set,
            s: s_prime,
            t: t.clone(),
        };
        if validate_split(p, &cert) {
            return assemble_split_retraction(p, &cert);
        }
    }
    Err(Error::Condition)
}

/// Rewrites a retraction whose image bottom is a 2-antichain into one
/// with standard bottom behaviour: bottom image inside the bottom level.
/// For a crowned bottom pair the bottom level maps onto the image bottom
/// with a singleton fiber; for a 3C bottom pair the two bottom level
/// pairs collapse onto two bottom points.
pub fn normalize_retraction_bottom(p: &Poset, r: &Retraction) -> Result<Retraction, Error> {
    let ls = level_structure(p);
    let h = ls.height();
    let r_bot = image_bottom_level(p, r.image);
    if r_bot.count_ones() != 2 || !p.is_antichain(r_bot) {
        return Err(Error::Shape);
    }
    if h < 2 {
        return Err(Error::Height { got: h, need: 2 });
    }
    match pair_type(p, ls.level(0), ls.level(1)) {
        Ok(PairType::Crown6) => {
            let mut map = r.map.clone();
            let mut bot = r_bot;
            if bot & ls.level(1) != 0 {
                // Pull the level-1 image point down to a bottom point
                // strictly below it, redirecting its whole fiber.
                let b = bits(bot & ls.level(1)).next().unwrap();
                let a = bits(bot & ls.level(0)).next().ok_or(Error::Shape)?;
                let b2 = bits(p.strict_down(b) & ls.level(0) & !(1 << a))
                    .next()
                    .ok_or(Error::Shape)?;
                for x in bits(r.domain) {
                    if map[x] == b {
                        map[x] = b2;
                    }
                }
                bot = 1 << a | 1 << b2;
            }
            // Singleton fiber exists on some bottom image point; send the
            // spare bottom-level point to the other one.
            let r1 = Retraction::new(r.domain, map.clone());
            let single = bits(bot)
                .find(|&q| fiber(&r1, q) == 1 << q)
                .ok_or(Error::Shape)?;
            let other = bits(bot & !(1 << single)).next().unwrap();
            let mut map2 = map;
            for z in bits(ls.level(0) & !bot) {
                map2[z] = other;
            }
            let out = Retraction::new(r.domain, map2);
            verify_retraction(p, &out).map_err(|_| Error::Shape)?;
            Ok(out)
        }
        Ok(PairType::T3c) => {
            let mut points = bits(ls.level(0));
            let (a, b) = (points.next().unwrap(), points.next().unwrap());
            let a_up = bits(p.strict_up(a) & ls.level(1)).next().ok_or(Error::Shape)?;
            let mut map: Vec<usize> = (0..p.len()).collect();
            for x in bits(r.domain & ls.range(2, h)) {
                map[x] = r.map[x];
            }
            for x in bits(ls.range(0, 1)) {
                map[x] = if x == a || x == a_up { a } else { b };
            }
            let out = Retraction::new(r.domain | ls.range(0, 1), map);
            verify_retraction(p, &out).map_err(|_| Error::Shape)?;
            Ok(out)
        }
        _ => Err(Error::Shape),
    }
}

/// Convenience: decide the 4-crown stack retract question by the split
/// method and return the full assembled witness.
pub fn split_method_retract(
    p: &Poset,
    code: &SectionCode,
    table: &SegmentTable,
    opts: SplitSearchOptions,
    budget: &mut Budget,
) -> Result<Option<(SplitCertificate, Retraction)>, Error> {
    match search_retractive_split(p, code, table, opts, budget)? {
        Some(cert) => {
            let r = assemble_split_retraction(p, &cert)?;
            Ok(Some((cert, r)))
        }
        None => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::oracle_4crown_stack_retract;
    use crate::section::build_section;
    use crate::table::build_segment_table;
    use crate::tower::is_crown4_stack;

    fn section(code: &str) -> Poset {
        build_section(&code.parse().unwrap()).0
    }

    fn decide(code: &str) -> Option<SplitCertificate> {
        let table = build_segment_table(code.len() - 1, SplitSearchOptions::default())
            .unwrap();
        let p = section(code);
        search_retractive_split(
            &p,
            &code.parse().unwrap(),
            &table,
            SplitSearchOptions::default(),
            &mut Budget::default(),
        )
        .unwrap()
    }

    #[test]
    fn crown_stack_heights_2_and_3() {
        assert!(decide("11").is_none());
        let cert = decide("111").unwrap();
        let p = section("111");
        let r = assemble_split_retraction(&p, &cert).unwrap();
        assert!(is_crown4_stack(&p, r.image));
    }

    #[test]
    fn height_4_classification_matches_oracle() {
        for code in ["1111", "1101", "1011", "1001"] {
            let split = decide(code);
            let oracle =
                oracle_4crown_stack_retract(&section(code), &mut Budget::default()).unwrap();
            assert_eq!(split.is_some(), oracle.is_some(), "{code}");
        }
    }

    #[test]
    fn assembled_retractions_verify_and_hit_stacks() {
        for code in ["111", "1001", "10101"] {
            let p = section(code);
            let cert = decide(code).unwrap();
            let r = assemble_split_retraction(&p, &cert).unwrap();
            assert_eq!(verify_retraction(&p, &r), Ok(()));
            assert!(is_crown4_stack(&p, r.image), "{code}");
        }
    }

    #[test]
    fn tampered_certificates_fail_validation() {
        let p = section("1001");
        let cert = decide("1001").unwrap();
        assert!(validate_split(&p, &cert));
        let mut bad = cert.clone();
        bad.k += 1;
        assert!(!validate_split(&p, &bad));
        let mut bad = cert;
        bad.deleted = 0;
        assert!(!validate_split(&p, &bad));
    }

    #[test]
    fn criteria_reproduce_the_height_4_rejections() {
        let table = build_segment_table(3, SplitSearchOptions::default()).unwrap();
        let c1111: SectionCode = "1111".parse().unwrap();
        assert_eq!(apply_criteria(&c1111, &table, 4, 0), PruneVerdict::Reject(1));
        assert_eq!(apply_criteria(&c1111, &table, 1, 0), PruneVerdict::Reject(5));
        let c1011: SectionCode = "1011".parse().unwrap();
        assert_eq!(apply_criteria(&c1011, &table, 3, 0), PruneVerdict::Reject(2));
        assert_eq!(apply_criteria(&c1011, &table, 3, 2), PruneVerdict::Reject(3));
        assert_eq!(apply_criteria(&c1011, &table, 1, 2), PruneVerdict::Reject(4));
        assert_eq!(apply_criteria(&c1011, &table, 1, 1), PruneVerdict::Reject(6));
        let c1001: SectionCode = "1001".parse().unwrap();
        assert_eq!(apply_criteria(&c1001, &table, 3, 2), PruneVerdict::Pass);
    }

    #[test]
    fn combine_bridges_a_3c_gap() {
        // The bottom level of 1001 retracts onto a 2-antichain; some
        // retraction of levels 2..4 onto a 4-crown has the singleton
        // bottom fiber the gluing needs; the gap levels 0..2 are not a
        // 6-crown stack.
        let p = section("1001");
        let ls = level_structure(&p);
        let s = find_stack_retraction(&p, ls.range(0, 0), 1, None, &mut Budget::default())
            .unwrap()
            .unwrap();
        let mut found = false;
        for_each_stack_image(&p, ls.range(2, 4), 1, None, &mut Budget::default(), &mut |stack, budget| {
            let image = stack.iter().fold(0u64, |m, &l| m | l);
            let allowed = vec![u64::MAX; p.len()];
            for_each_retraction_onto(&p, ls.range(2, 4), image, &allowed, budget, &mut |t| {
                if let Ok(r) = combine_across_gap(&p, 0, &s, t) {
                    assert_eq!(verify_retraction(&p, &r), Ok(()));
                    assert!(is_crown4_stack(&p, r.image));
                    found = true;
                }
                found
            })
        })
        .unwrap();
        assert!(found);
    }

    #[test]
    fn normalization_standardizes_bottoms() {
        // 3C bottom pair: the lower segment of 1001 read upside down.
        let p = section("011");
        let r = find_stack_retraction(&p, p.all_mask(), 1, None, &mut Budget::default()).unwrap();
        if let Some(r) = r {
            if image_bottom_level(&p, r.image).count_ones() == 2 {
                let ls = level_structure(&p);
                let n = normalize_retraction_bottom(&p, &r).unwrap();
                assert_eq!(image_bottom_level(&p, n.image) & !ls.level(0), 0);
            }
        }
    }
}
