//! Search budgets and deadlines shared by the verification engines.

use std::time::Instant;

/// Resource bounds for a single verification run. Engines check these
/// cooperatively and report an inconclusive result instead of running
/// away; a bound turns non-termination at scale into a reported outcome.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    /// Maximum number of semigroup elements the trellis engine retains.
    pub element_limit: u64,
    /// Maximum number of product pairs an inclusion engine expands.
    pub node_budget: u64,
    /// Cooperative wall-clock deadline, checked every few hundred steps.
    pub deadline: Option<Instant>,
}

impl Default for Limits {
    fn default() -> Limits {
        Limits {
            element_limit: 1 << 25,
            node_budget: 10_000_000,
            deadline: None,
        }
    }
}

impl Limits {
    pub fn with_deadline(mut self, deadline: Instant) -> Limits {
        self.deadline = Some(deadline);
        self
    }

    /// Overrides the engine-specific budget (elements for the trellis
    /// engine, pairs for the inclusion engines).
    pub fn with_budget(mut self, budget: u64) -> Limits {
        self.element_limit = budget;
        self.node_budget = budget;
        self
    }

    #[inline]
    pub fn past_deadline(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}
