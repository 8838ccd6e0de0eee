//! Branch and bound for `ex(n, F)`.
//!
//! Triples are decided in lexicographic order, inclusion first, so once the
//! search reaches triples with least vertex `a` everything left lives on
//! `a..=n`. Edges strictly inside `a+1..=n` are bounded by the optimum on
//! `n−a` vertices, computed by the same search on smaller orders first.
//!
//! Symmetry: vertex 1 has maximum degree; inside the link of vertex 1,
//! vertex 2 has maximum degree and its link neighbours form a prefix `3..`.

use serde::{Deserialize, Serialize};

use super::{Detector, ForbiddenFamily};
use crate::budget::{Budget, Meter};
use crate::detection::{embeds_through, f5t_through, Pattern};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph3;
use crate::index::EdgeIndex;
use crate::triple::{binom3, Triple};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TuranConfig {
    pub budget: Budget,
    pub max_n: u32,
}

impl Default for TuranConfig {
    fn default() -> Self {
        TuranConfig {
            budget: Budget::unlimited(),
            max_n: 10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    /// `best` is `ex(n, F)`.
    Optimal,
    /// Budget ran out on the last order; smaller orders are exact.
    Bounds,
    /// Budget ran out before the last order was reached.
    Timeout,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub pruned_bound: u64,
    pub pruned_forbidden: u64,
    pub pruned_degree: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub best: i64,
    pub upper: i64,
    pub witness: Hypergraph3,
    pub stats: SearchStats,
    /// `(lower, upper)` for every order `0..=n`.
    pub orders: Vec<(i64, i64)>,
}

pub fn turan_exact(n: u32, family: &ForbiddenFamily, config: &TuranConfig) -> Result<SearchOutcome> {
    if n > config.max_n {
        return Err(Error::UnsupportedSize { n, max: config.max_n });
    }
    let prepared: Vec<(Detector, Pattern, u32, usize)> = family
        .members()
        .iter()
        .map(|m| (m.detector, Pattern::new(&m.pattern), m.pattern.n(), m.pattern.edge_count()))
        .collect();
    let mut meter = config.budget.meter();
    let mut stats = SearchStats::default();
    let mut orders: Vec<(i64, i64)> = vec![(0, 0); n as usize + 1];
    let mut witness = Hypergraph3::empty(0);
    let mut cut_at: Option<u32> = None;
    for k in 0..=n {
        let inherited = witness.extend_vertices(k)?;
        if k < 3 {
            witness = inherited;
            continue;
        }
        let (lo_prev, hi_prev) = orders[k as usize - 1];
        let hi_cap = if k == 3 {
            1
        } else {
            (hi_prev * k as i64 / (k as i64 - 3)).min(binom3(k as usize) as i64)
        };
        if cut_at.is_some() {
            orders[k as usize] = (lo_prev, hi_cap);
            witness = inherited;
            continue;
        }
        let mut s = Search {
            k,
            triples: lex_triples(k),
            level_end: Vec::new(),
            idx: EdgeIndex::new(k),
            doll: &orders,
            members: &prepared,
            best: lo_prev,
            best_edges: inherited.edges().to_vec(),
            target_hi: hi_cap,
            stats: &mut stats,
        };
        s.level_end = level_ends(&s.triples, k);
        let done = s.best >= s.target_hi || s.dfs(0, &mut meter);
        let (best, edges) = (s.best, std::mem::take(&mut s.best_edges));
        witness = Hypergraph3::from_unsorted_unchecked(k, edges);
        orders[k as usize] = if done { (best, best) } else { (best, hi_cap) };
        if !done {
            cut_at = Some(k);
        }
    }
    stats.nodes = meter.used();
    let (best, upper) = orders[n as usize];
    let status = match cut_at {
        None => SearchStatus::Optimal,
        Some(_) if best == upper => SearchStatus::Optimal,
        Some(k) if k == n => SearchStatus::Bounds,
        Some(_) => SearchStatus::Timeout,
    };
    Ok(SearchOutcome {
        status,
        best,
        upper,
        witness,
        stats,
        orders,
    })
}

fn lex_triples(k: u32) -> Vec<Triple> {
    let mut out = Vec::new();
    for a in 1..=k {
        for b in a + 1..=k {
            for c in b + 1..=k {
                out.push(Triple::of(a, b, c));
            }
        }
    }
    out
}

/// `ends[a]` is one past the last triple with least vertex `a`.
fn level_ends(triples: &[Triple], k: u32) -> Vec<usize> {
    let mut ends = vec![0; k as usize + 2];
    for (i, t) in triples.iter().enumerate() {
        ends[t.vertices()[0] as usize] = i + 1;
    }
    for a in 1..ends.len() {
        ends[a] = ends[a].max(ends[a - 1]);
    }
    ends
}

struct Search<'a> {
    k: u32,
    triples: Vec<Triple>,
    level_end: Vec<usize>,
    idx: EdgeIndex,
    doll: &'a [(i64, i64)],
    members: &'a [(Detector, Pattern, u32, usize)],
    best: i64,
    best_edges: Vec<Triple>,
    target_hi: i64,
    stats: &'a mut SearchStats,
}

impl Search<'_> {
    fn bound(&self, i: usize, a: u32) -> i64 {
        let cur = self.idx.edge_count() as i64;
        let rem = (self.level_end[a as usize] - i) as i64;
        let later = self.doll[(self.k - a) as usize].1;
        let k = self.k as i64;
        if a == 1 {
            let d1 = self.idx.degree(1) as i64;
            return (cur + rem + later).min(k * (d1 + rem) / 3);
        }
        let cap = self.idx.degree(1) as i64;
        let ea = rem.min(cap - self.idx.degree(a) as i64);
        let slack: i64 = (a + 1..=self.k).map(|v| cap - self.idx.degree(v) as i64).sum();
        (cur + ea + later.min((slack - 2 * ea) / 3)).min(k * cap / 3)
    }

    fn allowed_by_symmetry(&self, i: usize, e: Triple) -> bool {
        let [a, b, c] = e.vertices();
        if a == 1 {
            if b == 2 {
                // link neighbours of 2 form a prefix 3, 4, ...
                return c == 3 || self.idx.has(1, 2, c - 1);
            }
            let d2 = self.idx.degree(2);
            return self.idx.degree(b) < d2 && self.idx.degree(c) < d2;
        }
        let cap = self.idx.degree(1);
        let _ = i;
        self.idx.degree(a) < cap && self.idx.degree(b) < cap && self.idx.degree(c) < cap
    }

    fn creates_forbidden(&mut self, e: Triple, meter: &mut Meter) -> Option<bool> {
        for (det, pat, pn, pm) in self.members {
            if *pn > self.k || *pm > self.idx.edge_count() {
                continue;
            }
            let hit = match *det {
                Detector::Codegree(t) => e.pairs().iter().any(|&(u, v)| self.idx.codegree(u, v) > t),
                Detector::F5t(t) => f5t_through(&self.idx, t, e),
                Detector::Generic => embeds_through(pat, &self.idx, e, meter)?,
            };
            if hit {
                return Some(true);
            }
        }
        Some(false)
    }

    /// `true` when the subtree was fully explored.
    fn dfs(&mut self, i: usize, meter: &mut Meter) -> bool {
        if !meter.tick() {
            return false;
        }
        if i == self.triples.len() {
            let cur = self.idx.edge_count() as i64;
            if cur > self.best {
                self.best = cur;
                self.best_edges = self.idx.edges().to_vec();
            }
            return true;
        }
        if self.best >= self.target_hi {
            return true;
        }
        let e = self.triples[i];
        let a = e.vertices()[0];
        if self.bound(i, a) <= self.best {
            self.stats.pruned_bound += 1;
            return true;
        }
        if self.allowed_by_symmetry(i, e) {
            self.idx.push(e);
            match self.creates_forbidden(e, meter) {
                None => {
                    self.idx.pop();
                    return false;
                }
                Some(true) => self.stats.pruned_forbidden += 1,
                Some(false) => {
                    if !self.dfs(i + 1, meter) {
                        self.idx.pop();
                        return false;
                    }
                }
            }
            self.idx.pop();
        } else {
            self.stats.pruned_degree += 1;
        }
        self.dfs(i + 1, meter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::PatternTag;

    #[test]
    fn book_on_five() {
        let f = ForbiddenFamily::of_tags(&[(PatternTag::F2t, 1)]);
        let r = turan_exact(5, &f, &TuranConfig::default()).unwrap();
        assert_eq!((r.status, r.best, r.upper), (SearchStatus::Optimal, 2, 2));
        assert_eq!(r.witness.edge_count(), 2);
        assert!(r.witness.max_codegree() <= 1);
    }

    #[test]
    fn too_large() {
        let f = ForbiddenFamily::f5t(0);
        assert!(matches!(
            turan_exact(11, &f, &TuranConfig::default()),
            Err(Error::UnsupportedSize { .. })
        ));
    }
}
