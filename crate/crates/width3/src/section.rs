//! Width-three sections: three level-spanning chains with antichain
//! levels, a cyclic shift symmetry, and no two consecutive levels fully
//! related. Sections of horizon two are encoded by binary words, one bit
//! per consecutive level pair (1 = 6-crown, 0 = three disjoint 2-chains).

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::level::{level_structure, LevelStructure};
use crate::pairtype::{pair_type, PairType};
use crate::poset::{bits, Poset};
use crate::retraction::{retractable_and_irreducible_points, Retraction};

/// Binary code of a width-three section of horizon two: bit k describes
/// the level pair (k, k+1), 1 for a 6-crown and 0 for three 2-chains.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SectionCode {
    bits: Vec<u8>,
}

impl SectionCode {
    pub fn new(bits: Vec<u8>) -> Result<SectionCode, Error> {
        if bits.is_empty() {
            return Err(Error::BadCode("code must be non-empty".into()));
        }
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::BadCode("bits must be 0 or 1".into()));
        }
        Ok(SectionCode { bits })
    }

    /// Height of the encoded poset; the point count is 3 (height + 1).
    pub fn height(&self) -> usize {
        self.bits.len()
    }

    pub fn bit(&self, k: usize) -> u8 {
        self.bits[k]
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// Starts with a 6-crown (lower-section class).
    pub fn is_ls(&self) -> bool {
        self.bits[0] == 1
    }

    /// Ends with a 6-crown (upper-section class).
    pub fn is_us(&self) -> bool {
        *self.bits.last().unwrap() == 1
    }

    /// 6-crowns at both ends and height at least two: the codes whose
    /// posets are nice sections of horizon two.
    pub fn is_n2(&self) -> bool {
        self.height() >= 2 && self.is_ls() && self.is_us()
    }

    /// Code of the dual poset.
    pub fn reversed(&self) -> SectionCode {
        let mut bits = self.bits.clone();
        bits.reverse();
        SectionCode { bits }
    }

    /// First `len` bits: the code of the lower segment up to level `len`.
    pub fn prefix(&self, len: usize) -> SectionCode {
        SectionCode { bits: self.bits[..len].to_vec() }
    }

    /// Last `len` bits: the code of the upper segment.
    pub fn suffix(&self, len: usize) -> SectionCode {
        SectionCode { bits: self.bits[self.bits.len() - len..].to_vec() }
    }
}

impl FromStr for SectionCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<SectionCode, Error> {
        let bits: Vec<u8> = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::BadCode(format!("invalid character {c:?}"))),
            })
            .collect::<Result<_, _>>()?;
        SectionCode::new(bits)
    }
}

impl fmt::Display for SectionCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// Level and chain index of every point: point p is the unique element of
/// level `lambda[p]` on main chain `gamma[p]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionCoordinates {
    pub lambda: Vec<usize>,
    pub gamma: Vec<usize>,
}

impl SectionCoordinates {
    /// Point id of the level-k element of chain j.
    pub fn point(&self, k: usize, j: usize) -> usize {
        (0..self.lambda.len())
            .find(|&p| self.lambda[p] == k && self.gamma[p] == j)
            .expect("coordinates are a bijection")
    }
}

/// Builds the section of a code: point 3k + j is the level-k element of
/// chain j. A 0-bit adds the matching covers c_{k,j} < c_{k+1,j}; a 1-bit
/// additionally wires c_{k,j} below c_{k+1,j+1 mod 3}. All relations
/// between levels at distance two or more are present (horizon two).
pub fn build_section(code: &SectionCode) -> (Poset, SectionCoordinates) {
    let m = code.height();
    let n = 3 * (m + 1);
    let mut pairs = Vec::new();
    for k in 0..m {
        for j in 0..3 {
            pairs.push((3 * k + j, 3 * (k + 1) + j));
            if code.bit(k) == 1 {
                pairs.push((3 * k + j, 3 * (k + 1) + (j + 1) % 3));
            }
        }
    }
    for k in 0..=m {
        for l in k + 2..=m {
            for i in 0..3 {
                for j in 0..3 {
                    pairs.push((3 * k + i, 3 * l + j));
                }
            }
        }
    }
    let p = Poset::from_strict_pairs(n, &pairs)
        .unwrap()
        .named(code.to_string());
    let coords = SectionCoordinates {
        lambda: (0..n).map(|p| p / 3).collect(),
        gamma: (0..n).map(|p| p % 3).collect(),
    };
    (p, coords)
}

fn shift_compatible(p: &Poset, coords: &SectionCoordinates) -> bool {
    let h = *coords.lambda.iter().max().unwrap();
    let mut point = vec![[usize::MAX; 3]; h + 1];
    for x in 0..p.len() {
        point[coords.lambda[x]][coords.gamma[x]] = x;
    }
    for x in 0..p.len() {
        for y in bits(p.strict_up(x)) {
            let shifted_x = point[coords.lambda[x]][(coords.gamma[x] + 1) % 3];
            let shifted_y = point[coords.lambda[y]][(coords.gamma[y] + 1) % 3];
            if !p.lt(shifted_x, shifted_y) {
                return false;
            }
        }
    }
    true
}

fn assign_gamma(
    p: &Poset,
    ls: &LevelStructure,
    k: usize,
    gamma: &mut Vec<usize>,
    prev: &[usize; 3],
) -> Option<SectionCoordinates> {
    if k > ls.height() {
        let coords = SectionCoordinates { lambda: ls.lambda.clone(), gamma: gamma.clone() };
        return shift_compatible(p, &coords).then_some(coords);
    }
    let level: Vec<usize> = bits(ls.level(k)).collect();
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for perm in perms {
        // perm[i] is the chain index of level[i]; each chain must continue
        // upward from its previous element.
        if k > 0 && (0..3).any(|i| !p.lt(prev[perm[i]], level[i])) {
            continue;
        }
        let mut next = [0usize; 3];
        for i in 0..3 {
            gamma[level[i]] = perm[i];
            next[perm[i]] = level[i];
        }
        if let Some(coords) = assign_gamma(p, ls, k + 1, gamma, &next) {
            return Some(coords);
        }
    }
    None
}

/// Coordinates witnessing that P is a width-three section of height at
/// least one, or `None`.
pub fn section_coordinates(p: &Poset) -> Option<SectionCoordinates> {
    let ls = level_structure(p);
    let h = ls.height();
    if h < 1 || p.len() != 3 * (h + 1) {
        return None;
    }
    if ls.levels.iter().any(|l| l.count_ones() != 3) {
        return None;
    }
    for k in 0..h {
        // Consecutive levels must not be fully related.
        if pair_type(p, ls.level(k), ls.level(k + 1)) == Ok(PairType::T33) {
            return None;
        }
    }
    let mut gamma = vec![usize::MAX; p.len()];
    assign_gamma(p, &ls, 0, &mut gamma, &[0; 3])
}

pub fn is_section(p: &Poset) -> bool {
    is_two_antichain(p) || section_coordinates(p).is_some()
}

pub fn is_two_antichain(p: &Poset) -> bool {
    p.len() == 2 && !p.comparable(0, 1)
}

/// A section is nice when no strict pair x < y has the strict up-set of x
/// inside the up-set of y, nor the strict down-set of y inside the
/// down-set of x. Equivalently (and asserted): no retractable point, and
/// no irreducible point.
pub fn is_nice(p: &Poset) -> Result<bool, Error> {
    if is_two_antichain(p) {
        return Ok(true);
    }
    if !is_section(p) {
        return Err(Error::NotASection);
    }
    let mut nice = true;
    'outer: for x in 0..p.len() {
        for y in bits(p.strict_up(x)) {
            if p.strict_up(x) & !p.up_set(y) == 0 || p.strict_down(y) & !p.down_set(x) == 0 {
                nice = false;
                break 'outer;
            }
        }
    }
    let (retractable, irreducible) = retractable_and_irreducible_points(p);
    debug_assert_eq!(nice, retractable == 0);
    debug_assert_eq!(nice, irreducible == 0);
    Ok(nice)
}

/// Smallest distance beyond which every level lies fully below every
/// higher level. Defined for nice sections of height at least two.
pub fn horizon(p: &Poset) -> Result<usize, Error> {
    let ls = level_structure(p);
    let h = ls.height();
    if h < 2 {
        return Err(Error::Height { got: h, need: 2 });
    }
    'eta: for eta in 2..=h {
        for k in 0..=h {
            for l in k + eta..=h {
                if !p.fully_below(ls.level(k), ls.level(l)) {
                    continue 'eta;
                }
            }
        }
        return Ok(eta);
    }
    Err(Error::Shape)
}

/// Reads the code back off a width-three section by classifying each
/// consecutive level pair.
pub fn code_of(p: &Poset) -> Result<SectionCode, Error> {
    if section_coordinates(p).is_none() {
        return Err(Error::NotASection);
    }
    let ls = level_structure(p);
    let mut bits_out = Vec::new();
    for k in 0..ls.height() {
        match pair_type(p, ls.level(k), ls.level(k + 1)) {
            Ok(PairType::Crown6) => bits_out.push(1),
            Ok(PairType::T3c) => bits_out.push(0),
            _ => return Err(Error::NotASection),
        }
    }
    SectionCode::new(bits_out)
}

/// Induced sub-poset on levels k1..=k2.
pub fn segment(p: &Poset, k1: usize, k2: usize) -> Poset {
    let ls = level_structure(p);
    p.induced(ls.range(k1, k2))
}

/// Extends a permutation of the bottom level to the unique automorphism
/// restricting to it. `perm[i]` is the image of the i-th smallest bottom
/// point, itself a bottom point. Works level by level: the image of a
/// point is the unique point of its level whose lower covers are the
/// images of its lower covers.
pub fn extend_level0_permutation(p: &Poset, perm: &[usize; 3]) -> Result<Vec<usize>, Error> {
    let ls = level_structure(p);
    let bottom: Vec<usize> = bits(ls.level(0)).collect();
    if bottom.len() != 3 || perm.iter().any(|&q| !bottom.contains(&q)) {
        return Err(Error::Extension);
    }
    let mut map = vec![usize::MAX; p.len()];
    for (i, &x) in bottom.iter().enumerate() {
        map[x] = perm[i];
    }
    for k in 1..=ls.height() {
        for x in bits(ls.level(k)) {
            let lows = p.lower_covers_in(x, ls.level(k - 1));
            let image_lows = bits(lows).fold(0u64, |m, l| m | 1 << map[l]);
            let mut candidates =
                bits(ls.level(k)).filter(|&y| p.lower_covers_in(y, ls.level(k - 1)) == image_lows);
            let (Some(y), None) = (candidates.next(), candidates.next()) else {
                return Err(Error::Extension);
            };
            map[x] = y;
        }
    }
    for x in 0..p.len() {
        for y in 0..p.len() {
            if p.lt(x, y) != p.lt(map[x], map[y]) {
                return Err(Error::Extension);
            }
        }
    }
    Ok(map)
}

/// Conjugates a retraction by an automorphism: the result retracts
/// a[domain] onto a[image].
pub fn conjugate_retraction(p: &Poset, r: &Retraction, a: &[usize]) -> Retraction {
    let mut inv = vec![usize::MAX; p.len()];
    for (x, &y) in a.iter().enumerate() {
        inv[y] = x;
    }
    let mut map: Vec<usize> = (0..p.len()).collect();
    let domain = bits(r.domain).fold(0u64, |m, x| m | 1 << a[x]);
    for x in bits(domain) {
        map[x] = a[r.map[inv[x]]];
    }
    Retraction::new(domain, map)
}

/// All codes of the given height, lexicographically by bit string.
pub fn all_codes(height: usize) -> Vec<SectionCode> {
    (0..1u32 << height)
        .map(|w| {
            SectionCode::new((0..height).map(|k| (w >> (height - 1 - k) & 1) as u8).collect())
                .unwrap()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Budget;
    use crate::search::is_isomorphic;

    fn section(code: &str) -> Poset {
        build_section(&code.parse().unwrap()).0
    }

    #[test]
    fn code_parsing_and_classes() {
        let c: SectionCode = "101".parse().unwrap();
        assert_eq!(c.to_string(), "101");
        assert!(c.is_ls() && c.is_us() && c.is_n2());
        assert!(!"1".parse::<SectionCode>().unwrap().is_n2());
        assert!(!"10".parse::<SectionCode>().unwrap().is_us());
        assert!("".parse::<SectionCode>().is_err());
        assert!("102".parse::<SectionCode>().is_err());
        assert_eq!("1101".parse::<SectionCode>().unwrap().reversed().to_string(), "1011");
    }

    #[test]
    fn code_1_builds_the_6_crown() {
        let p = section("1");
        assert_eq!(p.len(), 6);
        for j in 0..3 {
            assert_eq!(p.upper_covers_in(j, p.all_mask()).count_ones(), 2);
        }
        assert!(is_isomorphic(&p, &Poset::crown(3), &mut Budget::default()).unwrap());
    }

    #[test]
    fn built_posets_are_sections_and_nice_iff_crowned_at_both_ends() {
        for h in 1..=5 {
            for code in all_codes(h) {
                let p = build_section(&code).0;
                assert!(is_section(&p), "{code} not a section");
                // End-level pairs must be 6-crowns for niceness: a 2-chain
                // end pair leaves irreducible points on the outer level.
                let expect_nice = code.is_ls() && code.is_us();
                assert_eq!(is_nice(&p).unwrap(), expect_nice, "{code}");
                if code.is_n2() {
                    assert_eq!(horizon(&p).unwrap(), 2, "{code}");
                }
            }
        }
    }

    #[test]
    fn code_round_trip_and_dual_reversal() {
        for h in 1..=5 {
            for code in all_codes(h) {
                let p = build_section(&code).0;
                assert_eq!(code_of(&p).unwrap(), code);
                assert_eq!(code_of(&p.dual()).unwrap(), code.reversed());
            }
        }
    }

    #[test]
    fn non_sections_are_rejected() {
        assert!(!is_section(&Poset::crown(2)));
        assert!(!is_section(&Poset::chain(6)));
        assert!(!is_section(&Poset::antichain(3)));
        assert!(is_section(&Poset::antichain(2)));
        assert!(is_nice(&Poset::antichain(2)).unwrap());
        assert_eq!(is_nice(&Poset::crown(2)), Err(Error::NotASection));
    }

    #[test]
    fn three_disjoint_2_chains_form_a_section_that_is_not_nice() {
        let p = section("0");
        assert!(is_section(&p));
        assert!(!is_nice(&p).unwrap());
    }

    #[test]
    fn horizon_needs_height_two() {
        assert_eq!(horizon(&section("1")), Err(Error::Height { got: 1, need: 2 }));
    }

    #[test]
    fn segments_restrict_the_code() {
        let p = section("1010");
        assert_eq!(code_of(&segment(&p, 0, 2)).unwrap().to_string(), "10");
        let level = segment(&p, 2, 2);
        assert_eq!(level.len(), 3);
        assert!(level.is_antichain(0b111));
    }

    #[test]
    fn level0_permutations_extend_to_automorphisms() {
        let p = section("11");
        let id = extend_level0_permutation(&p, &[0, 1, 2]).unwrap();
        assert_eq!(id, (0..p.len()).collect::<Vec<_>>());
        // The 3-cycle on the bottom level induces the full rotation.
        let rot = extend_level0_permutation(&p, &[1, 2, 0]).unwrap();
        for k in 0..=2 {
            for j in 0..3 {
                assert_eq!(rot[3 * k + j], 3 * k + (j + 1) % 3);
            }
        }
        // All six extensions exist and are pairwise distinct.
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let maps: Vec<_> = perms
            .iter()
            .map(|q| extend_level0_permutation(&p, q).unwrap())
            .collect();
        for i in 0..6 {
            for j in i + 1..6 {
                assert_ne!(maps[i], maps[j]);
            }
        }
    }

    #[test]
    fn conjugation_by_identity_and_rotation() {
        let p = section("11");
        let r = Retraction::identity(&p);
        let id: Vec<usize> = (0..p.len()).collect();
        assert_eq!(conjugate_retraction(&p, &r, &id), r);
        let rot = extend_level0_permutation(&p, &[1, 2, 0]).unwrap();
        let s = conjugate_retraction(&p, &r, &rot);
        assert_eq!(s, r); // conjugating the identity changes nothing
    }
}
