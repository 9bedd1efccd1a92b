use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cycle: point {0} is below itself after transitive closure")]
    Cycle(usize),
    #[error("point index {index} out of range for poset on {n} points")]
    Index { index: usize, n: usize },
    #[error("operation undefined on the empty poset")]
    EmptyPoset,
    #[error("poset has width greater than three")]
    Width,
    #[error("height {got} is below the required minimum {need}")]
    Height { got: usize, need: usize },
    #[error("poset is not a width-three section")]
    NotASection,
    #[error("level pair has an unsupported shape")]
    Shape,
    #[error("permutation of the bottom level does not extend to an automorphism")]
    Extension,
    #[error("split conditions are violated")]
    Condition,
    #[error("search node budget exceeded")]
    BudgetExceeded,
    #[error("invalid section code: {0}")]
    BadCode(String),
}

/// Node budget for the backtracking searches. Exhaustion is a distinct
/// outcome (`Error::BudgetExceeded`), never conflated with "no witness".
#[derive(Debug, Clone)]
pub struct Budget {
    remaining: u64,
}

pub const DEFAULT_BUDGET: u64 = 100_000_000;

impl Budget {
    pub fn new(nodes: u64) -> Self {
        Budget { remaining: nodes }
    }

    #[inline]
    pub fn tick(&mut self) -> Result<(), Error> {
        if self.remaining == 0 {
            return Err(Error::BudgetExceeded);
        }
        self.remaining -= 1;
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}
