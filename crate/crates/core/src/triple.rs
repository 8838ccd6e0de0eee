use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// A 3-set of 1-based vertex labels, stored sorted ascending.
///
/// Ordering is colexicographic: compare the largest entries first. This is the
/// order edges are iterated in everywhere in the crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "[u32; 3]", try_from = "[u32; 3]")]
pub struct Triple([u32; 3]);

impl Triple {
    pub fn new(a: u32, b: u32, c: u32) -> Result<Triple> {
        let mut v = [a, b, c];
        v.sort_unstable();
        if v[0] == v[1] || v[1] == v[2] {
            return invalid(format!("triple {a} {b} {c} has repeated vertices"));
        }
        if v[0] == 0 {
            return invalid("vertex labels are 1-based");
        }
        Ok(Triple(v))
    }

    /// Sorts the entries; panics in debug builds on repeated vertices.
    #[inline]
    pub fn of(a: u32, b: u32, c: u32) -> Triple {
        let mut v = [a, b, c];
        v.sort_unstable();
        debug_assert!(v[0] < v[1] && v[1] < v[2] && v[0] > 0);
        Triple(v)
    }

    #[inline]
    pub fn vertices(&self) -> [u32; 3] {
        self.0
    }

    #[inline]
    pub fn max_vertex(&self) -> u32 {
        self.0[2]
    }

    #[inline]
    pub fn contains(&self, v: u32) -> bool {
        self.0.contains(&v)
    }

    /// 0-based colex rank among all triples of positive integers.
    #[inline]
    pub fn rank(&self) -> usize {
        let [a, b, c] = self.0;
        colex_rank(a, b, c)
    }

    pub fn unrank(rank: usize) -> Triple {
        // largest z with C(z,3) <= rank, then y, then x
        let mut z = 2usize;
        while binom3(z + 1) <= rank {
            z += 1;
        }
        let r = rank - binom3(z);
        let mut y = 1usize;
        while binom2(y + 1) <= r {
            y += 1;
        }
        let x = r - binom2(y);
        Triple([x as u32 + 1, y as u32 + 1, z as u32 + 1])
    }

    /// The three pairs of this triple, each sorted.
    #[inline]
    pub fn pairs(&self) -> [(u32, u32); 3] {
        let [a, b, c] = self.0;
        [(a, b), (a, c), (b, c)]
    }

    /// The vertex of the triple other than `u` and `v`.
    #[inline]
    pub fn third(&self, u: u32, v: u32) -> u32 {
        self.0.iter().copied().find(|&w| w != u && w != v).unwrap_or(0)
    }

    /// Applies a vertex map given as a slice indexed by 1-based label.
    pub fn mapped(&self, map: &[u32]) -> Triple {
        let [a, b, c] = self.0;
        Triple::of(map[a as usize], map[b as usize], map[c as usize])
    }
}

impl Ord for Triple {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.0[2], self.0[1], self.0[0]).cmp(&(other.0[2], other.0[1], other.0[0]))
    }
}

impl PartialOrd for Triple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{},{}}}", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.0[0], self.0[1], self.0[2])
    }
}

impl From<Triple> for [u32; 3] {
    fn from(t: Triple) -> Self {
        t.0
    }
}

impl TryFrom<[u32; 3]> for Triple {
    type Error = crate::Error;
    fn try_from(v: [u32; 3]) -> Result<Self> {
        Triple::new(v[0], v[1], v[2])
    }
}

#[inline]
pub(crate) fn binom2(n: usize) -> usize {
    if n < 2 {
        0
    } else {
        n * (n - 1) / 2
    }
}

#[inline]
pub(crate) fn binom3(n: usize) -> usize {
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}

#[inline]
pub(crate) fn colex_rank(a: u32, b: u32, c: u32) -> usize {
    let (x, y, z) = (a as usize - 1, b as usize - 1, c as usize - 1);
    binom3(z) + binom2(y) + x
}

/// 0-based colex rank of the sorted pair `u < v` (1-based labels).
#[inline]
pub fn pair_rank(u: u32, v: u32) -> usize {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    binom2(v as usize - 1) + (u as usize - 1)
}

pub fn pair_unrank(rank: usize) -> (u32, u32) {
    let mut v = 1usize;
    while binom2(v + 1) <= rank {
        v += 1;
    }
    let u = rank - binom2(v);
    (u as u32 + 1, v as u32 + 1)
}

/// Number of triples on `n` vertices.
pub fn triple_count(n: u32) -> usize {
    binom3(n as usize)
}

pub fn pair_count(n: u32) -> usize {
    binom2(n as usize)
}

/// All triples on `[n]` in colex order.
pub fn all_triples(n: u32) -> impl Iterator<Item = Triple> {
    (3..=n).flat_map(|c| (2..c).flat_map(move |b| (1..b).map(move |a| Triple([a, b, c]))))
}
