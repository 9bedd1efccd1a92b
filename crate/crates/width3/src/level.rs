//! Level sets by min-removal, height, and width.

use crate::error::Error;
use crate::poset::{bits, Poset};

/// The min-removal level decomposition: `levels[0]` are the minimal
/// points, `levels[k+1]` the minimal points of what remains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelStructure {
    /// Level index of each point.
    pub lambda: Vec<usize>,
    /// Point set of each level as a bitmask.
    pub levels: Vec<u64>,
}

impl LevelStructure {
    pub fn height(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }

    pub fn level(&self, k: usize) -> u64 {
        self.levels[k]
    }

    /// Union of levels k..=l as a bitmask.
    pub fn range(&self, k: usize, l: usize) -> u64 {
        self.levels[k..=l].iter().fold(0, |m, &s| m | s)
    }
}

pub fn level_structure(p: &Poset) -> LevelStructure {
    let mut lambda = vec![0usize; p.len()];
    let mut levels = Vec::new();
    let mut remaining = p.all_mask();
    while remaining != 0 {
        let mut level = 0u64;
        for x in bits(remaining) {
            if p.strict_down(x) & remaining == 0 {
                level |= 1 << x;
            }
        }
        for x in bits(level) {
            lambda[x] = levels.len();
        }
        levels.push(level);
        remaining &= !level;
    }
    LevelStructure { lambda, levels }
}

/// Levels of the induced sub-poset on `domain`, in the ambient point ids.
pub fn level_structure_on(p: &Poset, domain: u64) -> LevelStructure {
    let mut lambda = vec![usize::MAX; p.len()];
    let mut levels = Vec::new();
    let mut remaining = domain & p.all_mask();
    while remaining != 0 {
        let mut level = 0u64;
        for x in bits(remaining) {
            if p.strict_down(x) & remaining == 0 {
                level |= 1 << x;
            }
        }
        for x in bits(level) {
            lambda[x] = levels.len();
        }
        levels.push(level);
        remaining &= !level;
    }
    LevelStructure { lambda, levels }
}

/// Height (longest chain length) and width (largest antichain size).
pub fn height_width(p: &Poset) -> Result<(usize, usize), Error> {
    if p.is_empty() {
        return Err(Error::EmptyPoset);
    }
    let ls = level_structure(p);
    Ok((ls.height(), width_capped(p, p.len())))
}

/// Largest antichain size, but stop as soon as `cap` is reached; asking
/// "is the width at most 3?" therefore cuts the search at the first
/// antichain of size 4.
pub fn width_capped(p: &Poset, cap: usize) -> usize {
    fn grow(p: &Poset, allowed: u64, size: usize, best: &mut usize, cap: usize) {
        if size > *best {
            *best = size;
        }
        if *best >= cap {
            return;
        }
        let mut rest = allowed;
        while rest != 0 {
            let x = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if size + 1 + (rest.count_ones() as usize) <= *best {
                break;
            }
            grow(
                p,
                rest & !(p.strict_up(x) | p.strict_down(x)),
                size + 1,
                best,
                cap,
            );
        }
    }
    let mut best = 0;
    grow(p, p.all_mask(), 0, &mut best, cap);
    best
}

pub fn width_at_most(p: &Poset, w: usize) -> bool {
    width_capped(p, w + 1) <= w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Poset;

    #[test]
    fn chain_levels_are_singletons() {
        let p = Poset::chain(3);
        let ls = level_structure(&p);
        assert_eq!(ls.levels, vec![0b001, 0b010, 0b100]);
        assert_eq!(ls.height(), 2);
    }

    #[test]
    fn crown6_levels_and_height_width() {
        let p = Poset::crown(3);
        let ls = level_structure(&p);
        assert_eq!(ls.levels.len(), 2);
        assert_eq!(ls.levels[0].count_ones(), 3);
        assert_eq!(ls.levels[1].count_ones(), 3);
        assert_eq!(height_width(&p).unwrap(), (1, 3));
    }

    #[test]
    fn crown4_height_width() {
        let p = Poset::crown(2);
        assert_eq!(height_width(&p).unwrap(), (1, 2));
    }

    #[test]
    fn empty_poset_is_an_error() {
        let p = Poset::antichain(0);
        assert_eq!(height_width(&p), Err(Error::EmptyPoset));
    }

    #[test]
    fn width_cap_short_circuits() {
        let p = Poset::antichain(10);
        assert_eq!(width_capped(&p, 4), 4);
        assert!(!width_at_most(&p, 3));
    }
}
