//! Pass/fail bookkeeping shared by the checkers.

use alloc::string::String;

/// Number of cases examined and the first failure, if any.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub cases: usize,
    pub failure: Option<String>,
}

impl Outcome {
    pub fn new() -> Self {
        Outcome::default()
    }

    pub fn failed(witness: String) -> Self {
        Outcome { cases: 1, failure: Some(witness) }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    /// Counts one case; keeps the first witness.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(witness());
        }
    }

    pub fn absorb(&mut self, other: Outcome) {
        self.cases += other.cases;
        if self.failure.is_none() {
            self.failure = other.failure;
        }
    }
}

/// At most `max` indices from `0..total`, evenly spread and including 0.
pub fn spread_indices(total: usize, max: usize) -> impl Iterator<Item = usize> {
    let take = total.min(max);
    (0..take).map(move |i| if take == total { i } else { i * total / take })
}
