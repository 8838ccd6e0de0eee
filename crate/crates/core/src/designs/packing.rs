//! `ex(m, F2^t)`: the largest 3-graph on `m` vertices with codegrees at most `t`.

use serde::{Deserialize, Serialize};

use super::cover::{Cover, CoverSearch};
use super::{appendix_lower_bound, decompose_exact, dehon_admissible, sts, Decomposition, MultiplicityTarget};
use crate::budget::Budget;
use crate::hypergraph::Hypergraph3;
use crate::index::EdgeIndex;
use crate::triple::{all_triples, binom2, binom3, pair_count};
use crate::value::ValueBound;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExF2tConfig {
    /// Largest `m` for which values below the upper bound are ruled out by
    /// exhaustive search.
    pub exact_max_m: u32,
    pub budget: Budget,
}

impl Default for ExF2tConfig {
    fn default() -> Self {
        ExF2tConfig {
            exact_max_m: 13,
            budget: Budget::nodes(2_000_000),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExF2t {
    pub value: ValueBound,
    /// A codegree-`t` hypergraph with `value.lo()` edges.
    pub witness: Hypergraph3,
    pub method: String,
}

/// Upper bound from the leave `L = t·C(m,2) − 3k`: every vertex has leave
/// degree of parity `t(m−1)`, so `L >= m/2` when that is odd, and otherwise
/// `L != 1` (and `L != 2` for simple leaves, `t = 1`).
pub fn ex_f2t_upper(m: u32, t: u32) -> i64 {
    if t == 0 || m < 3 {
        return 0;
    }
    if t >= m - 2 {
        return binom3(m as usize) as i64;
    }
    let total = t as i64 * binom2(m as usize) as i64;
    let odd = (t as i64 * (m as i64 - 1)) % 2 == 1;
    let mut k = total / 3;
    loop {
        let leave = total - 3 * k;
        let ok = if odd {
            2 * leave >= m as i64
        } else {
            leave != 1 && !(leave == 2 && t == 1)
        };
        if ok {
            return k;
        }
        k -= 1;
    }
}

fn greedy(m: u32, t: u32) -> Hypergraph3 {
    let mut idx = EdgeIndex::new(m);
    for e in all_triples(m) {
        if e.pairs().iter().all(|&(u, v)| idx.codegree(u, v) < t) {
            idx.push(e);
        }
    }
    Hypergraph3::from_unsorted_unchecked(m, idx.edges().to_vec())
}

/// Maximum partial triple systems for even `m`: a Steiner triple system on
/// `m+1` points minus a point, or for `m ≡ 4 (mod 6)` a decomposition of
/// `K_m` minus a 3-star and a perfect matching of the other vertices.
fn even_packing(m: u32, budget: Budget) -> Option<Hypergraph3> {
    if m % 6 != 4 {
        let blocks = sts::sts_blocks(m + 1).ok()?;
        let kept = blocks.into_iter().filter(|e| !e.contains(m + 1)).collect();
        return Some(Hypergraph3::from_sorted_unchecked(m, kept));
    }
    let mut leave = vec![(1, 2), (1, 3), (1, 4)];
    leave.extend((5..m).step_by(2).map(|v| (v, v + 1)));
    let target = MultiplicityTarget::complete_minus(m, leave).ok()?;
    match decompose_exact(&target, 1, budget) {
        Ok(Decomposition::Found(d)) => Some(d.blocks),
        _ => None,
    }
}

fn exact(value: i64, witness: Hypergraph3, method: &str) -> ExF2t {
    ExF2t {
        value: ValueBound::exact(value),
        witness,
        method: method.into(),
    }
}

pub fn ex_f2t(m: u32, t: u32, config: &ExF2tConfig) -> ExF2t {
    if t == 0 || m < 3 {
        return exact(0, Hypergraph3::empty(m), "trivial");
    }
    if t >= m - 2 {
        return exact(binom3(m as usize) as i64, Hypergraph3::complete(m), "complete");
    }
    let upper = ex_f2t_upper(m, t);
    if dehon_admissible(m as i64, t as i64).unwrap_or(false) {
        if t == 1 {
            let blocks = sts::sts_blocks(m).expect("admissible order");
            return exact(upper, Hypergraph3::from_sorted_unchecked(m, blocks), "steiner triple system");
        }
        if let Ok(Decomposition::Found(d)) = decompose_exact(&MultiplicityTarget::complete(m), t, config.budget) {
            return exact(upper, d.blocks, "design");
        }
    }

    if t == 1 && m.is_multiple_of(2) {
        if let Some(h) = even_packing(m, config.budget) {
            if h.edge_count() as i64 == upper {
                return exact(upper, h, "maximum packing");
            }
        }
    }

    let mut lower = greedy(m, t);
    let mut method = "greedy";
    if m > config.exact_max_m {
        if let Ok(c) = appendix_lower_bound(m, t, config.budget) {
            if c.hypergraph.edge_count() > lower.edge_count() {
                lower = c.hypergraph;
                method = "near-design construction";
            }
        }
    }
    let mut hi = upper;
    let mut meter = config.budget.meter();
    let need = vec![t; pair_count(m)];
    while m <= config.exact_max_m && hi > lower.edge_count() as i64 {
        match CoverSearch::new(m, &need, hi as usize).run(&mut meter) {
            Cover::Found(b) => {
                let h = Hypergraph3::from_sorted_unchecked(m, b);
                return exact(hi, h, "packing search");
            }
            Cover::Exhausted => hi -= 1,
            Cover::Stopped => break,
        }
    }
    let lo = lower.edge_count() as i64;
    if hi == lo {
        return exact(lo, lower, "packing search");
    }
    ExF2t {
        value: ValueBound::interval(lo, hi),
        witness: lower,
        method: method.into(),
    }
}
