//! Finite strict partial orders on at most 64 integer-labeled points.
//!
//! The relation is stored as its full transitive closure in 64-bit row
//! bitsets, so comparability queries are O(1). Posets are immutable after
//! construction; every constructor re-checks irreflexivity and transitivity.

use serde::{Deserialize, Serialize};

use crate::error::Error;

pub const MAX_POINTS: usize = 64;

/// Iterate the point indices set in a bitmask, ascending.
pub fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

pub fn mask_of(points: &[usize]) -> u64 {
    points.iter().fold(0u64, |m, &p| m | 1 << p)
}

/// A finite poset given by its strict-order relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    /// `up[x]` = bitmask of all y with x < y.
    up: Vec<u64>,
    /// `down[x]` = bitmask of all y with y < x.
    down: Vec<u64>,
    pub name: Option<String>,
}

/// Serialized form: the strict relation as a pair list. The closure is
/// recomputed on load, so a cover list and a full closure deserialize to
/// the same poset.
#[derive(Serialize, Deserialize)]
pub struct PosetJson {
    pub n: usize,
    pub lt: Vec<(usize, usize)>,
}

impl Poset {
    /// Builds the poset generated by the given strict pairs, i.e. their
    /// transitive closure. Rejects out-of-range points and cycles.
    pub fn from_strict_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Poset, Error> {
        if n > MAX_POINTS {
            return Err(Error::Index { index: n, n: MAX_POINTS });
        }
        let mut up = vec![0u64; n];
        for &(a, b) in pairs {
            for index in [a, b] {
                if index >= n {
                    return Err(Error::Index { index, n });
                }
            }
            up[a] |= 1 << b;
        }
        // Warshall closure on bitset rows.
        for mid in 0..n {
            for x in 0..n {
                if up[x] >> mid & 1 == 1 {
                    up[x] |= up[mid];
                }
            }
        }
        for x in 0..n {
            if up[x] >> x & 1 == 1 {
                return Err(Error::Cycle(x));
            }
        }
        let mut down = vec![0u64; n];
        for x in 0..n {
            for y in bits(up[x]) {
                down[y] |= 1 << x;
            }
        }
        let p = Poset { n, up, down, name: None };
        p.assert_valid();
        Ok(p)
    }

    pub fn named(mut self, name: impl Into<String>) -> Poset {
        self.name = Some(name.into());
        self
    }

    /// Irreflexivity, transitivity, and antisymmetry of the stored closure.
    pub fn assert_valid(&self) {
        for x in 0..self.n {
            assert_eq!(self.up[x] >> x & 1, 0, "irreflexivity violated at {x}");
            for y in bits(self.up[x]) {
                assert_eq!(self.up[y] & !self.up[x], 0, "transitivity violated at {x} < {y}");
                assert_eq!(self.up[y] >> x & 1, 0, "antisymmetry violated at {x}, {y}");
            }
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn all_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.up[x] >> y & 1 == 1
    }

    #[inline]
    pub fn le(&self, x: usize, y: usize) -> bool {
        x == y || self.lt(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.lt(x, y) || self.lt(y, x)
    }

    /// Strict up-set of x as a bitmask.
    #[inline]
    pub fn strict_up(&self, x: usize) -> u64 {
        self.up[x]
    }

    /// Strict down-set of x as a bitmask.
    #[inline]
    pub fn strict_down(&self, x: usize) -> u64 {
        self.down[x]
    }

    pub fn up_set(&self, x: usize) -> u64 {
        self.up[x] | 1 << x
    }

    pub fn down_set(&self, x: usize) -> u64 {
        self.down[x] | 1 << x
    }

    /// Upper covers of x within `domain`.
    pub fn upper_covers_in(&self, x: usize, domain: u64) -> u64 {
        let above = self.up[x] & domain;
        let mut covers = 0u64;
        for y in bits(above) {
            if self.down[y] & above == 0 {
                covers |= 1 << y;
            }
        }
        covers
    }

    /// Lower covers of x within `domain`.
    pub fn lower_covers_in(&self, x: usize, domain: u64) -> u64 {
        let below = self.down[x] & domain;
        let mut covers = 0u64;
        for y in bits(below) {
            if self.up[y] & below == 0 {
                covers |= 1 << y;
            }
        }
        covers
    }

    pub fn is_antichain(&self, mask: u64) -> bool {
        bits(mask).all(|x| self.up[x] & mask == 0)
    }

    /// True if every a in `lower` is strictly below every b in `upper`.
    pub fn fully_below(&self, lower: u64, upper: u64) -> bool {
        bits(lower).all(|x| upper & !self.up[x] == 0)
    }

    /// Connectivity of the comparability graph restricted to `domain`.
    pub fn is_connected_on(&self, domain: u64) -> bool {
        let Some(start) = bits(domain).next() else { return true };
        let mut seen = 1u64 << start;
        loop {
            let mut grown = seen;
            for x in bits(seen) {
                grown |= (self.up[x] | self.down[x]) & domain;
            }
            if grown == seen {
                break;
            }
            seen = grown;
        }
        seen == domain
    }

    /// The order dual: same points, relation reversed.
    pub fn dual(&self) -> Poset {
        let p = Poset {
            n: self.n,
            up: self.down.clone(),
            down: self.up.clone(),
            name: self.name.as_ref().map(|s| format!("dual({s})")),
        };
        p.assert_valid();
        p
    }

    /// Induced sub-poset on the points of `mask`, together with the map
    /// from new indices back to the original point ids (ascending).
    pub fn induced_with_map(&self, mask: u64) -> (Poset, Vec<usize>) {
        let old_ids: Vec<usize> = bits(mask & self.all_mask()).collect();
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &x) in old_ids.iter().enumerate() {
            new_id[x] = i;
        }
        let m = old_ids.len();
        let mut up = vec![0u64; m];
        let mut down = vec![0u64; m];
        for (i, &x) in old_ids.iter().enumerate() {
            for y in bits(self.up[x] & mask) {
                up[i] |= 1 << new_id[y];
                down[new_id[y]] |= 1 << i;
            }
        }
        let p = Poset { n: m, up, down, name: None };
        p.assert_valid();
        (p, old_ids)
    }

    pub fn induced(&self, mask: u64) -> Poset {
        self.induced_with_map(mask).0
    }

    /// Ordinal sum: carriers concatenated, all cross relations added upward.
    pub fn ordinal_sum(parts: &[Poset]) -> Result<Poset, Error> {
        if parts.is_empty() {
            return Err(Error::EmptyPoset);
        }
        let n: usize = parts.iter().map(|p| p.len()).sum();
        if n > MAX_POINTS {
            return Err(Error::Index { index: n, n: MAX_POINTS });
        }
        let mut pairs = Vec::new();
        let mut offset = 0usize;
        for part in parts {
            for x in 0..part.len() {
                for y in bits(part.up[x]) {
                    pairs.push((offset + x, offset + y));
                }
            }
            for x in 0..offset {
                for y in 0..part.len() {
                    pairs.push((x, offset + y));
                }
            }
            offset += part.len();
        }
        Poset::from_strict_pairs(n, &pairs)
    }

    /// An antichain on `n` points.
    pub fn antichain(n: usize) -> Poset {
        Poset::from_strict_pairs(n, &[]).unwrap()
    }

    /// A chain on `n` points, 0 < 1 < ... < n-1.
    pub fn chain(n: usize) -> Poset {
        let pairs: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::from_strict_pairs(n, &pairs).unwrap()
    }

    /// The 2n-crown on points {0..n-1} (bottom) and {n..2n-1} (top),
    /// bottom i below tops i and i+1 mod n.
    pub fn crown(n: usize) -> Poset {
        assert!(n >= 2);
        let mut pairs = Vec::new();
        for i in 0..n {
            pairs.push((i, n + i));
            pairs.push((i, n + (i + 1) % n));
        }
        Poset::from_strict_pairs(2 * n, &pairs).unwrap()
    }

    pub fn to_json(&self) -> String {
        let mut lt = Vec::new();
        for x in 0..self.n {
            for y in bits(self.up[x]) {
                lt.push((x, y));
            }
        }
        serde_json::to_string(&PosetJson { n: self.n, lt }).unwrap()
    }

    pub fn from_json(text: &str) -> Result<Poset, Error> {
        let parsed: PosetJson =
            serde_json::from_str(text).map_err(|e| Error::BadCode(e.to_string()))?;
        Poset::from_strict_pairs(parsed.n, &parsed.lt)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_adds_transitive_pairs() {
        let p = Poset::from_strict_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(p.lt(0, 2));
        assert!(!p.lt(2, 0));
    }

    #[test]
    fn empty_relation_is_antichain() {
        let p = Poset::from_strict_pairs(2, &[]).unwrap();
        assert!(!p.comparable(0, 1));
    }

    #[test]
    fn cycle_is_rejected() {
        assert_eq!(
            Poset::from_strict_pairs(2, &[(0, 1), (1, 0)]),
            Err(Error::Cycle(0))
        );
    }

    #[test]
    fn out_of_range_is_rejected() {
        assert_eq!(
            Poset::from_strict_pairs(2, &[(0, 5)]),
            Err(Error::Index { index: 5, n: 2 })
        );
    }

    #[test]
    fn ordinal_sum_of_two_antichains_is_a_4_crown() {
        let q = Poset::ordinal_sum(&[Poset::antichain(2), Poset::antichain(2)]).unwrap();
        assert!(q.lt(0, 2) && q.lt(0, 3) && q.lt(1, 2) && q.lt(1, 3));
        assert!(!q.comparable(0, 1) && !q.comparable(2, 3));
    }

    #[test]
    fn dual_is_an_involution() {
        let p = Poset::crown(3);
        assert_eq!(p.dual().dual().up, p.up);
    }

    #[test]
    fn induced_restricts_the_relation() {
        let p = Poset::crown(3);
        let q = p.induced(mask_of(&[0, 1, 2]));
        assert_eq!(q.len(), 3);
        assert!(q.is_antichain(0b111));
    }

    #[test]
    fn json_round_trip_recomputes_closure() {
        let p = Poset::from_strict_pairs(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let q = Poset::from_json(&p.to_json()).unwrap();
        assert_eq!(p, q);
        // A cover list loads to the same closure.
        let r = Poset::from_json(r#"{"n":4,"lt":[[0,1],[1,2],[2,3]]}"#).unwrap();
        assert_eq!(p, r);
    }
}
