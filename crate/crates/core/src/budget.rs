//! Search budgets.
//!
//! Node limits are deterministic and are what every report-producing path
//! uses. Wall-clock limits exist for interactive commands only.

use std::time::{Duration, Instant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Budget {
    pub nodes: Option<u64>,
    pub time: Option<Duration>,
}

impl Budget {
    pub const fn unlimited() -> Self {
        Budget { nodes: None, time: None }
    }

    pub const fn nodes(limit: u64) -> Self {
        Budget { nodes: Some(limit), time: None }
    }

    pub const fn time(limit: Duration) -> Self {
        Budget { nodes: None, time: Some(limit) }
    }

    pub fn meter(&self) -> Meter {
        Meter {
            limit: self.nodes,
            deadline: self.time.map(|d| Instant::now() + d),
            used: 0,
            exhausted: false,
        }
    }
}

/// Counts search nodes against a [`Budget`].
#[derive(Debug, Clone)]
pub struct Meter {
    limit: Option<u64>,
    deadline: Option<Instant>,
    used: u64,
    exhausted: bool,
}

impl Meter {
    /// Records one node. Returns `false` once the budget is spent.
    #[inline]
    pub fn tick(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        self.used += 1;
        if let Some(limit) = self.limit {
            if self.used > limit {
                self.exhausted = true;
                return false;
            }
        }
        if self.used & 0x3ff == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.exhausted = true;
                    return false;
                }
            }
        }
        true
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn exhausted(&self) -> bool {
        self.exhausted
    }

    /// Budget left for a sub-search, as a fresh [`Budget`].
    pub fn remaining(&self) -> Budget {
        Budget {
            nodes: self.limit.map(|l| l.saturating_sub(self.used)),
            time: self
                .deadline
                .map(|d| d.saturating_duration_since(Instant::now())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_limit_trips_after_limit() {
        let mut m = Budget::nodes(3).meter();
        assert!(m.tick());
        assert!(m.tick());
        assert!(m.tick());
        assert!(!m.tick());
        assert!(m.exhausted());
        assert!(!m.tick());
    }

    #[test]
    fn remaining_shrinks() {
        let mut m = Budget::nodes(10).meter();
        for _ in 0..4 {
            m.tick();
        }
        assert_eq!(m.remaining().nodes, Some(6));
        assert_eq!(Budget::unlimited().meter().remaining(), Budget::unlimited());
    }
}
