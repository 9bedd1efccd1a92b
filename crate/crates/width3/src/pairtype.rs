//! Classification of a pair of stacked antichain layers.

use crate::error::Error;
use crate::level::{level_structure, width_at_most};
use crate::poset::{bits, Poset};

/// Isomorphism type of the sub-poset induced by two antichain layers.
/// `Tmn` is the ordinal sum of an m- and an n-antichain (all relations
/// present), `T2c`/`T3c` are two/three disjoint 2-chains, `Crown6` the
/// 6-crown, `Other` anything else.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairType {
    T22,
    T23,
    T32,
    T33,
    T2c,
    T3c,
    Crown6,
    Other,
}

/// Classifies the induced sub-poset on two antichains A, B where no
/// point of B lies below a point of A.
pub fn pair_type(p: &Poset, a: u64, b: u64) -> Result<PairType, Error> {
    assert!(a & b == 0, "layers must be disjoint");
    assert!(p.is_antichain(a) && p.is_antichain(b), "layers must be antichains");
    for y in bits(b) {
        assert_eq!(p.strict_up(y) & a, 0, "no point of B may lie below A");
    }
    let (na, nb) = (a.count_ones() as usize, b.count_ones() as usize);
    let degrees_up: Vec<usize> = bits(a).map(|x| (p.strict_up(x) & b).count_ones() as usize).collect();
    let degrees_down: Vec<usize> = bits(b).map(|y| (p.strict_down(y) & a).count_ones() as usize).collect();
    let full = degrees_up.iter().all(|&d| d == nb);
    let matching = degrees_up.iter().all(|&d| d == 1) && degrees_down.iter().all(|&d| d == 1);
    let t = match (na, nb) {
        (2, 2) if full => PairType::T22,
        (2, 3) if full => PairType::T23,
        (3, 2) if full => PairType::T32,
        (3, 3) if full => PairType::T33,
        (2, 2) if matching => PairType::T2c,
        (3, 3) if matching => PairType::T3c,
        (3, 3)
            if degrees_up.iter().all(|&d| d == 2)
                && degrees_down.iter().all(|&d| d == 2)
                && p.is_connected_on(a | b) =>
        {
            PairType::Crown6
        }
        (2, 2) | (2, 3) | (3, 2) | (3, 3) => PairType::Other,
        _ => return Err(Error::Shape),
    };
    Ok(t)
}

/// Width-3 automorphy test by level-pair types: every pair of levels
/// must be a 6-crown or of type 22, 23, 32, 33, 2C, or 3C.
pub fn is_automorphic_width3(p: &Poset) -> Result<bool, Error> {
    if !width_at_most(p, 3) {
        return Err(Error::Width);
    }
    let ls = level_structure(p);
    for k in 0..ls.levels.len() {
        for l in k + 1..ls.levels.len() {
            match pair_type(p, ls.levels[k], ls.levels[l]) {
                Ok(PairType::Other) | Err(Error::Shape) => return Ok(false),
                Ok(_) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(true)
}
