//! Near-design lower-bound constructions for `ex(n, F2^t)`.

use std::collections::HashSet;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::{decompose_exact, sts, Decomposition, MultiplicityTarget};
use crate::budget::Budget;
use crate::error::{invalid, Error, Result};
use crate::hypergraph::Hypergraph3;
use crate::triple::{binom2, Triple};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AppendixCase {
    EvenT,
    OddTOddN,
    OddTEvenN,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AppendixConstruction {
    pub hypergraph: Hypergraph3,
    pub case: AppendixCase,
    /// The case formula, exactly.
    pub bound: Ratio<i64>,
    /// `ceil(bound)`, the edge count the construction certifies.
    pub claimed: i64,
    /// Pairs removed from the base graph before decomposing.
    pub removed: Vec<(u32, u32)>,
}

pub fn case_bound(n: u32, t: u32) -> (AppendixCase, Ratio<i64>) {
    let (n, ti) = (n as i64, t as i64);
    let base = Ratio::new(ti * binom2(n as usize) as i64, 3);
    if t.is_multiple_of(2) {
        (AppendixCase::EvenT, base - Ratio::new(2 * ti, 3))
    } else if n % 2 == 1 {
        (AppendixCase::OddTOddN, base - Ratio::new(8 * ti, 3))
    } else {
        (
            AppendixCase::OddTEvenN,
            base - Ratio::new(n, 3) - Ratio::new(ti * ti, 6) - Ratio::from(3 * ti),
        )
    }
}

fn c4(a: u32, b: u32, c: u32, d: u32) -> [(u32, u32); 4] {
    [(a, b), (b, c), (c, d), (d, a)]
}

fn decompose(n: u32, removed: &[(u32, u32)], t: u32, budget: Budget) -> Result<Vec<Triple>> {
    let g = MultiplicityTarget::complete_minus(n, removed.iter().copied())?;
    match decompose_exact(&g, t, budget)? {
        Decomposition::Found(d) => Ok(d.blocks.edges().to_vec()),
        Decomposition::Infeasible(why) => Err(Error::Infeasible(format!(
            "{}-fold decomposition of {}: {why}",
            t,
            g.describe()
        ))),
        Decomposition::Timeout { nodes } => Err(Error::BudgetExhausted(format!(
            "{}-fold decomposition of {} after {nodes} nodes",
            t,
            g.describe()
        ))),
    }
}

/// First variant whose edge count times `t` is divisible by 3.
fn pick_variant(n: u32, t: u32, base_edges: usize, variants: &[Vec<(u32, u32)>]) -> Result<Vec<(u32, u32)>> {
    for v in variants {
        if (t as usize * (base_edges - v.len())).is_multiple_of(3) {
            if v.iter().any(|&(a, b)| a.max(b) > n) {
                return invalid(format!("n = {n} is too small for the removal pattern"));
            }
            return Ok(v.clone());
        }
    }
    unreachable!("edge counts cover all residues mod 3")
}

pub fn appendix_lower_bound(n: u32, t: u32, budget: Budget) -> Result<AppendixConstruction> {
    if t == 0 {
        return invalid("the appendix constructions need t >= 1");
    }
    if n < t + 3 {
        return invalid(format!("need n >= t + 3, got n = {n}, t = {t}"));
    }
    let (case, bound) = case_bound(n, t);
    let claimed = ceil(bound);
    let all = binom2(n as usize);
    let (hypergraph, removed) = match case {
        AppendixCase::EvenT => {
            let removed = pick_variant(n, t, all, &[vec![], vec![(1, 2)], vec![(1, 2), (3, 4)]])?;
            (Hypergraph3::from_triples(n, decompose(n, &removed, t, budget)?)?, removed)
        }
        AppendixCase::OddTOddN => {
            let one = c4(1, 2, 3, 4).to_vec();
            let two = [c4(1, 2, 3, 4), c4(5, 6, 7, 8)].concat();
            let removed = pick_variant(n, t, all, &[vec![], one, two])?;
            (Hypergraph3::from_triples(n, decompose(n, &removed, t, budget)?)?, removed)
        }
        AppendixCase::OddTEvenN => block_construction(n, t, budget)?,
    };
    Ok(AppendixConstruction {
        hypergraph,
        case,
        bound,
        claimed,
        removed,
    })
}

fn ceil(r: Ratio<i64>) -> i64 {
    r.ceil().to_integer()
}

/// Blocks `B_k` of size `t+3`, leftover `J` with a perfect matching removed,
/// the rest decomposed, then a dense codegree-`t` gadget inside each block.
fn block_construction(n: u32, t: u32, budget: Budget) -> Result<(Hypergraph3, Vec<(u32, u32)>)> {
    let b = t + 3;
    let s = n / b;
    let block = |k: u32, i: u32| k * b + i + 1;
    let mut base_removed = Vec::new();
    for k in 0..s {
        for j in 1..b {
            for i in 0..j {
                base_removed.push((block(k, i), block(k, j)));
            }
        }
    }
    let mut w = s * b + 1;
    while w < n {
        base_removed.push((w, w + 1));
        w += 2;
    }
    // C4s with consecutive vertices in different blocks
    let spread = |first: u32| c4(block(first, 0), block(first + 1, 0), block(first + 2, 0), block(first + 3, 0));
    let (one, two) = if s >= 8 {
        (spread(0).to_vec(), [spread(0), spread(4)].concat())
    } else if s >= 4 {
        let alt = c4(block(0, 1), block(1, 1), block(0, 2), block(1, 2));
        (spread(0).to_vec(), [spread(0), alt].concat())
    } else if s >= 2 {
        let first = c4(block(0, 0), block(1, 0), block(0, 1), block(1, 1));
        let second = c4(block(0, 2), block(1, 2), block(0, 3), block(1, 3));
        (first.to_vec(), [first, second].concat())
    } else {
        return Err(Error::Infeasible(format!(
            "n = {n} holds fewer than two blocks of size {b}"
        )));
    };
    let all = binom2(n as usize) - base_removed.len();
    let extra = pick_variant(n, t, all, &[vec![], one, two])?;
    let mut removed = base_removed;
    removed.extend(&extra);
    if s == 2 {
        starved_link(n, b, &removed)?;
    }
    let mut edges = decompose(n, &removed, t, budget)?;
    let gadget = dense_block(t)?;
    for k in 0..s {
        edges.extend(gadget.edges().iter().map(|e| {
            let [x, y, z] = e.vertices();
            Triple::of(block(k, x - 1), block(k, y - 1), block(k, z - 1))
        }));
    }
    Ok((Hypergraph3::from_triples(n, edges)?, extra))
}

/// With two blocks, a pair across them can only close a triangle through a
/// leftover vertex, so each block vertex needs at least as many leftover
/// neighbours as neighbours in the other block.
fn starved_link(n: u32, b: u32, removed: &[(u32, u32)]) -> Result<()> {
    let gone: HashSet<(u32, u32)> = removed.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    let adjacent = |u: u32, v: u32| !gone.contains(&(u.min(v), u.max(v)));
    for u in 1..=2 * b {
        let other = if u <= b { b + 1..=2 * b } else { 1..=b };
        let across = other.filter(|&w| adjacent(u, w)).count();
        let spare = (2 * b + 1..=n).filter(|&j| adjacent(u, j)).count();
        if across > spare {
            return Err(Error::Infeasible(format!(
                "n = {n}: vertex {u} has {across} neighbours in the other block but only {spare} leftover neighbours"
            )));
        }
    }
    Ok(())
}

/// Every pair covered, at most `C(n,2)/3 + n/3` edges, for even `n >= 4`.
pub fn pair_covering(n: u32) -> Result<Hypergraph3> {
    if n < 4 || n % 2 == 1 {
        return invalid(format!("need an even n >= 4, got {n}"));
    }
    if (n - 1) % 6 == 1 || (n - 1) % 6 == 3 {
        let mut edges = sts::sts_blocks(n - 1)?;
        for i in 1..n / 2 {
            edges.push(Triple::of(2 * i - 1, 2 * i, n));
        }
        edges.push(Triple::of(1, n - 1, n));
        Hypergraph3::from_triples(n, edges)
    } else {
        let big = sts::sts_blocks(n + 1)?;
        let mut edges = Vec::new();
        for e in big {
            if !e.contains(n + 1) {
                edges.push(e);
                continue;
            }
            let [v, u, _] = e.vertices();
            let z = (1..=n).find(|&z| z != v && z != u).unwrap();
            edges.push(Triple::of(v, u, z));
        }
        Hypergraph3::from_triples(n, edges)
    }
}

/// The complete 3-graph on `t+3` vertices minus the covering above.
pub fn dense_block(t: u32) -> Result<Hypergraph3> {
    if t.is_multiple_of(2) {
        return invalid(format!("need odd t, got {t}"));
    }
    let cover = pair_covering(t + 3)?;
    Ok(Hypergraph3::complete(t + 3).difference(&cover))
}
