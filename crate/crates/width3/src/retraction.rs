//! Retractions (idempotent order-preserving self-maps) with an
//! independent validator. Every search in this crate returns maps that
//! must pass `verify_retraction`; the validator never calls search code.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::poset::{bits, Poset};

/// A retraction of the sub-poset induced by `domain`. `map[x]` is only
/// meaningful for points of the domain; the image is recorded explicitly
/// and must equal the fixed points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Retraction {
    pub domain: u64,
    pub map: Vec<usize>,
    pub image: u64,
}

#[derive(Serialize, Deserialize)]
pub struct RetractionJson {
    pub map: Vec<usize>,
}

impl Retraction {
    pub fn new(domain: u64, map: Vec<usize>) -> Retraction {
        let mut image = 0u64;
        for x in bits(domain) {
            if map[x] == x {
                image |= 1 << x;
            }
        }
        Retraction { domain, map, image }
    }

    pub fn identity(p: &Poset) -> Retraction {
        Retraction::new(p.all_mask(), (0..p.len()).collect())
    }

    pub fn apply(&self, x: usize) -> usize {
        debug_assert!(self.domain >> x & 1 == 1);
        self.map[x]
    }

    /// Full-domain retractions serialize as the plain image list.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&RetractionJson { map: self.map.clone() }).unwrap()
    }

    pub fn from_json(text: &str, p: &Poset) -> Result<Retraction, Error> {
        let parsed: RetractionJson =
            serde_json::from_str(text).map_err(|e| Error::BadCode(e.to_string()))?;
        if parsed.map.len() != p.len() {
            return Err(Error::BadCode(format!(
                "map has {} entries for a poset on {} points",
                parsed.map.len(),
                p.len()
            )));
        }
        Ok(Retraction::new(p.all_mask(), parsed.map))
    }
}

/// Re-checks a retraction from first principles: totality on the domain,
/// idempotence, order preservation, and image = fixed points.
pub fn verify_retraction(p: &Poset, r: &Retraction) -> Result<(), String> {
    if r.domain & !p.all_mask() != 0 {
        return Err("domain contains out-of-range points".into());
    }
    for x in bits(r.domain) {
        let y = r.map[x];
        if y >= p.len() || r.domain >> y & 1 == 0 {
            return Err(format!("map sends {x} outside the domain"));
        }
        if r.map[y] != y {
            return Err(format!("not idempotent at {x}: r(r({x})) != r({x})"));
        }
        if (r.map[x] == x) != (r.image >> x & 1 == 1) {
            return Err(format!("recorded image disagrees with fixed points at {x}"));
        }
    }
    for x in bits(r.domain) {
        for y in bits(p.strict_up(x) & r.domain) {
            if !p.le(r.map[x], r.map[y]) {
                return Err(format!("not order-preserving on {x} < {y}"));
            }
        }
    }
    Ok(())
}

/// Retractable points (some other point dominates their strict down- and
/// up-sets) and irreducible points (a single lower or upper cover).
/// Irreducible points are always retractable.
pub fn retractable_and_irreducible_points(p: &Poset) -> (u64, u64) {
    let all = p.all_mask();
    let mut retractable = 0u64;
    let mut irreducible = 0u64;
    for a in 0..p.len() {
        for b in 0..p.len() {
            if b == a {
                continue;
            }
            if p.strict_down(a) & !p.down_set(b) == 0 && p.strict_up(a) & !p.up_set(b) == 0 {
                retractable |= 1 << a;
                break;
            }
        }
        let lower = p.lower_covers_in(a, all).count_ones();
        let upper = p.upper_covers_in(a, all).count_ones();
        if lower == 1 || upper == 1 {
            irreducible |= 1 << a;
        }
    }
    debug_assert_eq!(irreducible & !retractable, 0);
    (retractable, irreducible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::mask_of;

    #[test]
    fn identity_is_a_retraction() {
        let p = Poset::crown(3);
        assert_eq!(verify_retraction(&p, &Retraction::identity(&p)), Ok(()));
    }

    #[test]
    fn non_monotone_map_is_rejected() {
        let p = Poset::chain(3);
        // Send the top below the middle's image.
        let r = Retraction::new(p.all_mask(), vec![0, 1, 0]);
        assert!(verify_retraction(&p, &r).is_err());
    }

    #[test]
    fn non_idempotent_map_is_rejected() {
        let p = Poset::antichain(3);
        let r = Retraction {
            domain: 0b111,
            map: vec![1, 2, 2],
            image: 0b100,
        };
        assert!(verify_retraction(&p, &r).is_err());
    }

    #[test]
    fn chain_middle_point_is_irreducible() {
        let p = Poset::chain(3);
        let (_, irr) = retractable_and_irreducible_points(&p);
        assert!(irr >> 1 & 1 == 1);
    }

    #[test]
    fn crown6_has_no_retractable_point() {
        let p = Poset::crown(3);
        assert_eq!(retractable_and_irreducible_points(&p), (0, 0));
    }

    #[test]
    fn crown4_points_are_all_retractable() {
        let p = Poset::crown(2);
        let (ret, irr) = retractable_and_irreducible_points(&p);
        assert_eq!(ret, mask_of(&[0, 1, 2, 3]));
        assert_eq!(irr, 0);
    }
}
