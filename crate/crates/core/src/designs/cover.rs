//! Exact multiplicity cover over triangles.
//!
//! Each pair `p` may be covered at most `need[p]` times by distinct triples;
//! the search looks for `goal` triples. With `goal = Σ need / 3` this is an
//! exact decomposition, with a smaller goal it is a packing.
//!
//! Column choice: the pair with the least `live - resid`, ties by pair rank.
//! Row choice: the first live triple on that pair in colex order; include
//! before exclude.

use crate::budget::Meter;
use crate::triple::{pair_rank, Triple};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Cover {
    Found(Vec<Triple>),
    Exhausted,
    Stopped,
}

const LIVE: u8 = 0;
const USED: u8 = 1;
const GONE: u8 = 2;

pub(crate) struct CoverSearch {
    n: u32,
    rows: Vec<Triple>,
    row_pairs: Vec<[usize; 3]>,
    pair_rows: Vec<Vec<usize>>,
    pair_ends: Vec<(u32, u32)>,
    resid: Vec<i32>,
    live: Vec<i32>,
    status: Vec<u8>,
    trail: Vec<(usize, u8)>,
    chosen: Vec<usize>,
    goal: usize,
}

impl CoverSearch {
    /// `need` is indexed by pair rank over `[n]`; `forced` triples are taken
    /// up front (they must fit).
    pub(crate) fn new(n: u32, need: &[u32], goal: usize) -> Self {
        let np = need.len();
        let mut pair_ends = vec![(0, 0); np];
        for v in 2..=n {
            for u in 1..v {
                pair_ends[pair_rank(u, v)] = (u, v);
            }
        }
        let mut rows = Vec::new();
        let mut row_pairs = Vec::new();
        let mut pair_rows = vec![Vec::new(); np];
        for c in 3..=n {
            for b in 2..c {
                if need[pair_rank(b, c)] == 0 {
                    continue;
                }
                for a in 1..b {
                    let ps = [pair_rank(a, b), pair_rank(a, c), pair_rank(b, c)];
                    if ps.iter().all(|&p| need[p] > 0) {
                        let r = rows.len();
                        rows.push(Triple::of(a, b, c));
                        row_pairs.push(ps);
                        for p in ps {
                            pair_rows[p].push(r);
                        }
                    }
                }
            }
        }
        let live = pair_rows.iter().map(|r| r.len() as i32).collect();
        CoverSearch {
            n,
            status: vec![LIVE; rows.len()],
            rows,
            row_pairs,
            pair_rows,
            pair_ends,
            resid: need.iter().map(|&x| x as i32).collect(),
            live,
            trail: Vec::new(),
            chosen: Vec::new(),
            goal,
        }
    }

    pub(crate) fn run(&mut self, meter: &mut Meter) -> Cover {
        match self.search(meter) {
            Some(true) => {
                let mut out: Vec<Triple> = self.chosen.iter().map(|&r| self.rows[r]).collect();
                out.sort_unstable();
                Cover::Found(out)
            }
            Some(false) => Cover::Exhausted,
            None => Cover::Stopped,
        }
    }

    fn drop_row(&mut self, r: usize, to: u8) {
        self.status[r] = to;
        self.trail.push((r, to));
        for p in self.row_pairs[r] {
            self.live[p] -= 1;
            if to == USED {
                self.resid[p] -= 1;
            }
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (r, was) = self.trail.pop().unwrap();
            self.status[r] = LIVE;
            for p in self.row_pairs[r] {
                self.live[p] += 1;
                if was == USED {
                    self.resid[p] += 1;
                }
            }
        }
    }

    fn include(&mut self, r: usize) {
        self.drop_row(r, USED);
        for p in self.row_pairs[r] {
            if self.resid[p] == 0 {
                for i in 0..self.pair_rows[p].len() {
                    let q = self.pair_rows[p][i];
                    if self.status[q] == LIVE {
                        self.drop_row(q, GONE);
                    }
                }
            }
        }
    }

    /// Upper bound on further triples: each vertex can absorb at most half its
    /// usable pair capacity, each triple uses three such halves.
    fn room(&self) -> usize {
        let mut per_vertex = vec![0i32; self.n as usize + 1];
        let mut total = 0i32;
        for p in 0..self.resid.len() {
            let c = self.resid[p].min(self.live[p]);
            if c > 0 {
                let (u, v) = self.pair_ends[p];
                per_vertex[u as usize] += c;
                per_vertex[v as usize] += c;
                total += c;
            }
        }
        let halves: i32 = per_vertex.iter().map(|&c| c / 2).sum();
        ((total / 3).min(halves / 3)) as usize
    }

    fn search(&mut self, meter: &mut Meter) -> Option<bool> {
        if !meter.tick() {
            return None;
        }
        if self.chosen.len() == self.goal {
            return Some(true);
        }
        if self.chosen.len() + self.room() < self.goal {
            return Some(false);
        }
        let mut pick: Option<(i32, usize)> = None;
        for p in 0..self.resid.len() {
            if self.resid[p] > 0 && self.live[p] > 0 {
                let slack = self.live[p] - self.resid[p];
                if pick.is_none_or(|(s, _)| slack < s) {
                    pick = Some((slack, p));
                }
            }
        }
        let Some((_, p)) = pick else {
            return Some(false);
        };
        let r = *self.pair_rows[p]
            .iter()
            .find(|&&r| self.status[r] == LIVE)
            .expect("pair has a live row");

        let mark = self.trail.len();
        self.include(r);
        self.chosen.push(r);
        if self.search(meter)? {
            return Some(true);
        }
        self.chosen.pop();
        self.undo_to(mark);

        self.drop_row(r, GONE);
        if self.search(meter)? {
            return Some(true);
        }
        self.undo_to(mark);
        Some(false)
    }
}
