use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::triple::Triple;

/// An ordered partition `(V1, V2, V3)` of a ground set of vertices. Parts may be
/// empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PartitionJson", into = "PartitionJson")]
pub struct Partition3 {
    parts: [Vec<u32>; 3],
    ground: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct PartitionJson {
    n: u32,
    parts: [Vec<u32>; 3],
}

impl TryFrom<PartitionJson> for Partition3 {
    type Error = crate::Error;
    fn try_from(p: PartitionJson) -> Result<Self> {
        let pi = Partition3::new(p.parts)?;
        if pi.ground.last().is_some_and(|&v| v > p.n) {
            return invalid("partition vertex exceeds n");
        }
        Ok(pi)
    }
}

impl From<Partition3> for PartitionJson {
    fn from(p: Partition3) -> Self {
        PartitionJson {
            n: p.ground.last().copied().unwrap_or(0),
            parts: p.parts,
        }
    }
}

impl Partition3 {
    pub fn new(parts: [Vec<u32>; 3]) -> Result<Self> {
        let mut parts = parts;
        for p in parts.iter_mut() {
            p.sort_unstable();
        }
        let mut ground: Vec<u32> = parts.iter().flatten().copied().collect();
        ground.sort_unstable();
        if ground.first() == Some(&0) {
            return invalid("vertex labels are 1-based");
        }
        if ground.windows(2).any(|w| w[0] == w[1]) {
            return invalid("partition parts are not pairwise disjoint");
        }
        Ok(Partition3 { parts, ground })
    }

    /// Consecutive parts of the given sizes, starting at vertex `first`.
    pub fn consecutive(first: u32, sizes: [u32; 3]) -> Self {
        let mut next = first;
        let parts = sizes.map(|s| {
            let p: Vec<u32> = (next..next + s).collect();
            next += s;
            p
        });
        Partition3::new(parts).expect("consecutive parts are disjoint")
    }

    /// From a colouring `colour[v-1] in {0,1,2}` of `[n]`.
    pub fn from_colouring(colour: &[u8]) -> Self {
        let mut parts: [Vec<u32>; 3] = Default::default();
        for (i, &c) in colour.iter().enumerate() {
            parts[c as usize].push(i as u32 + 1);
        }
        Partition3::new(parts).expect("a colouring gives disjoint parts")
    }

    pub fn parts(&self) -> &[Vec<u32>; 3] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> &[u32] {
        &self.parts[i]
    }

    pub fn ground(&self) -> &[u32] {
        &self.ground
    }

    pub fn sizes(&self) -> [usize; 3] {
        [self.parts[0].len(), self.parts[1].len(), self.parts[2].len()]
    }

    pub fn is_balanced(&self) -> bool {
        let s = self.sizes();
        let max = s.iter().max().unwrap();
        let min = s.iter().min().unwrap();
        max - min <= 1
    }

    pub fn part_of(&self, v: u32) -> Option<usize> {
        self.parts.iter().position(|p| p.binary_search(&v).is_ok())
    }

    /// `|V1||V2||V3|`.
    pub fn crossing_capacity(&self) -> usize {
        self.sizes().iter().product()
    }

    /// The crossing triples `K_π`.
    pub fn crossing_triples(&self) -> impl Iterator<Item = Triple> + '_ {
        self.parts[0].iter().flat_map(move |&a| {
            self.parts[1].iter().flat_map(move |&b| {
                self.parts[2].iter().map(move |&c| Triple::of(a, b, c))
            })
        })
    }
}
