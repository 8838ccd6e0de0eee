//! Partitions maximising the number of crossing edges.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::budget::{Budget, Meter};
use crate::hypergraph::Hypergraph3;
use crate::partition::Partition3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartitionConfig {
    pub budget: Budget,
    /// Largest order searched exhaustively.
    pub exact_max_n: u32,
    pub seed: u64,
    pub restarts: u32,
}

impl Default for PartitionConfig {
    fn default() -> Self {
        PartitionConfig {
            budget: Budget::unlimited(),
            exact_max_n: 15,
            seed: 0,
            restarts: 32,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionResult {
    pub partition: Partition3,
    pub crossing: usize,
    /// `false` for local search results and for exhaustive runs cut short.
    pub exact: bool,
}

pub fn best_partition(h: &Hypergraph3, config: &PartitionConfig) -> PartitionResult {
    let n = h.n() as usize;
    let mut by_max: Vec<Vec<[u32; 3]>> = vec![Vec::new(); n + 1];
    for e in h.edges() {
        let v = e.vertices();
        by_max[v[2] as usize].push(v);
    }
    if h.n() <= config.exact_max_n {
        let mut meter = config.budget.meter();
        let mut suffix = vec![0usize; n + 2];
        for v in (1..=n).rev() {
            suffix[v] = suffix[v + 1] + by_max[v].len();
        }
        let mut s = Exhaust {
            by_max: &by_max,
            suffix: &suffix,
            colour: vec![0u8; n + 1],
            found: false,
            best: 0,
            best_colour: vec![0u8; n + 1],
        };
        let done = s.go(1, 0, 0, &mut meter);
        return PartitionResult {
            partition: Partition3::from_colouring(&s.best_colour[1..]),
            crossing: s.best,
            exact: done,
        };
    }
    local_search(h, config)
}

struct Exhaust<'a> {
    by_max: &'a [Vec<[u32; 3]>],
    suffix: &'a [usize],
    colour: Vec<u8>,
    found: bool,
    best: usize,
    best_colour: Vec<u8>,
}

impl Exhaust<'_> {
    fn go(&mut self, v: usize, used: u8, cur: usize, meter: &mut Meter) -> bool {
        if v == self.colour.len() {
            if !self.found || cur > self.best {
                self.found = true;
                self.best = cur;
                self.best_colour.clone_from(&self.colour);
            }
            return true;
        }
        if !meter.tick() {
            return false;
        }
        if self.found && cur + self.suffix[v] <= self.best {
            return true;
        }
        for c in 0..=used.min(2) {
            self.colour[v] = c;
            let gain = self.by_max[v]
                .iter()
                .filter(|e| {
                    let (x, y) = (self.colour[e[0] as usize], self.colour[e[1] as usize]);
                    x != y && x != c && y != c
                })
                .count();
            let next = if c == used { used + 1 } else { used };
            if !self.go(v + 1, next, cur + gain, meter) {
                return false;
            }
        }
        true
    }
}

fn crossing(edges: &[[u32; 3]], colour: &[u8]) -> usize {
    edges
        .iter()
        .filter(|e| {
            let (a, b, c) = (colour[e[0] as usize], colour[e[1] as usize], colour[e[2] as usize]);
            a != b && a != c && b != c
        })
        .count()
}

fn local_search(h: &Hypergraph3, config: &PartitionConfig) -> PartitionResult {
    let n = h.n() as usize;
    let edges: Vec<[u32; 3]> = h.edges().iter().map(|e| e.vertices()).collect();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for (i, e) in edges.iter().enumerate() {
        for &v in e {
            incident[v as usize].push(i);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut meter = config.budget.meter();
    let mut best_colour: Vec<u8> = (0..=n).map(|v| (v % 3) as u8).collect();
    let mut best = crossing(&edges, &best_colour);
    'restarts: for _ in 0..config.restarts.max(1) {
        let mut colour: Vec<u8> = (0..=n).map(|_| rng.gen_range(0..3)).collect();
        let mut cur = crossing(&edges, &colour);
        loop {
            let mut improved = false;
            for v in 1..=n {
                if !meter.tick() {
                    if cur > best {
                        best = cur;
                        best_colour = colour;
                    }
                    break 'restarts;
                }
                let old = colour[v];
                let here = |colour: &[u8]| crossing_of(&edges, &incident[v], colour);
                let before = here(&colour);
                let mut pick = (before, old);
                for c in 0..3u8 {
                    if c != old {
                        colour[v] = c;
                        let after = here(&colour);
                        if after > pick.0 {
                            pick = (after, c);
                        }
                    }
                }
                colour[v] = pick.1;
                if pick.1 != old {
                    cur = cur + pick.0 - before;
                    improved = true;
                }
            }
            if !improved {
                break;
            }
        }
        if cur > best {
            best = cur;
            best_colour = colour;
        }
    }
    PartitionResult {
        partition: Partition3::from_colouring(&best_colour[1..]),
        crossing: best,
        exact: false,
    }
}

fn crossing_of(edges: &[[u32; 3]], which: &[usize], colour: &[u8]) -> usize {
    which
        .iter()
        .filter(|&&i| {
            let e = edges[i];
            let (a, b, c) = (colour[e[0] as usize], colour[e[1] as usize], colour[e[2] as usize]);
            a != b && a != c && b != c
        })
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::make_complete_tripartite;

    #[test]
    fn small_cases() {
        let s9 = make_complete_tripartite(9).unwrap();
        let r = best_partition(&s9.hypergraph, &PartitionConfig::default());
        assert_eq!((r.crossing, r.exact), (27, true));
        let mut sizes = r.partition.sizes();
        sizes.sort();
        assert_eq!(sizes, [3, 3, 3]);
        let r = best_partition(&Hypergraph3::complete(6), &PartitionConfig::default());
        assert_eq!(r.crossing, 8);
        assert!(r.partition.is_balanced());
        let r = best_partition(&Hypergraph3::empty(7), &PartitionConfig::default());
        assert_eq!((r.crossing, r.partition.ground().len()), (0, 7));
    }

    #[test]
    fn local_search_on_blow_up() {
        let s = make_complete_tripartite(18).unwrap();
        let r = best_partition(&s.hypergraph, &PartitionConfig::default());
        assert_eq!((r.crossing, r.exact), (216, false));
    }
}
