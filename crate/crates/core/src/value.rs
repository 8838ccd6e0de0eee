use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

/// An extremal number that is either known exactly or bracketed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ValueBound {
    Exact { value: i64 },
    Interval { lo: i64, hi: i64 },
}

impl ValueBound {
    pub fn exact(value: i64) -> Self {
        ValueBound::Exact { value }
    }

    /// Collapses to `Exact` when `lo == hi`.
    pub fn interval(lo: i64, hi: i64) -> Self {
        debug_assert!(lo <= hi);
        if lo == hi {
            ValueBound::Exact { value: lo }
        } else {
            ValueBound::Interval { lo, hi }
        }
    }

    pub fn lo(&self) -> i64 {
        match *self {
            ValueBound::Exact { value } => value,
            ValueBound::Interval { lo, .. } => lo,
        }
    }

    pub fn hi(&self) -> i64 {
        match *self {
            ValueBound::Exact { value } => value,
            ValueBound::Interval { hi, .. } => hi,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ValueBound::Exact { .. })
    }

    pub fn as_exact(&self) -> Option<i64> {
        match *self {
            ValueBound::Exact { value } => Some(value),
            ValueBound::Interval { .. } => None,
        }
    }

    pub fn contains(&self, x: i64) -> bool {
        self.lo() <= x && x <= self.hi()
    }
}

impl Add for ValueBound {
    type Output = ValueBound;

    fn add(self, rhs: ValueBound) -> ValueBound {
        ValueBound::interval(self.lo() + rhs.lo(), self.hi() + rhs.hi())
    }
}

impl Add<i64> for ValueBound {
    type Output = ValueBound;

    fn add(self, rhs: i64) -> ValueBound {
        ValueBound::interval(self.lo() + rhs, self.hi() + rhs)
    }
}

impl fmt::Display for ValueBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ValueBound::Exact { value } => write!(f, "{value}"),
            ValueBound::Interval { lo, hi } => write!(f, "[{lo}, {hi}]"),
        }
    }
}
