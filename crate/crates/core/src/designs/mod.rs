//! Triple systems, multiplicity triangle decompositions and packings.

mod appendix;
mod c4free;
mod climb;
mod cover;
mod packing;
mod sts;

pub use appendix::{appendix_lower_bound, pair_covering, dense_block, AppendixConstruction, AppendixCase};
pub use c4free::{c4_free_graph, ex_c4_exact, C4FreeGraph, C4Method};
pub use packing::{ex_f2t, ex_f2t_upper, ExF2t, ExF2tConfig};

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{invalid, Error, Result};
use crate::hypergraph::Hypergraph3;
use crate::triple::{pair_count, pair_rank, pair_unrank, Triple};

use cover::{Cover, CoverSearch};

/// Whether an `(n,3,2,t)`-design can exist.
pub fn dehon_admissible(n: i64, t: i64) -> Result<bool> {
    if t < 0 || t > n - 2 {
        return invalid(format!("need 0 <= t <= n - 2, got n = {n}, t = {t}"));
    }
    Ok((t * n * (n - 1)) % 6 == 0 && (t * (n - 1)) % 2 == 0)
}

/// A graph on `[n]` with a required multiplicity per pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TargetJson", into = "TargetJson")]
pub struct MultiplicityTarget {
    n: u32,
    required: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct TargetJson {
    n: u32,
    pairs: Vec<[u32; 3]>,
}

impl TryFrom<TargetJson> for MultiplicityTarget {
    type Error = Error;
    fn try_from(j: TargetJson) -> Result<Self> {
        let mut t = MultiplicityTarget::empty(j.n);
        for [u, v, m] in j.pairs {
            t.set(u, v, m)?;
        }
        Ok(t)
    }
}

impl From<MultiplicityTarget> for TargetJson {
    fn from(t: MultiplicityTarget) -> Self {
        TargetJson {
            n: t.n,
            pairs: t.pairs().map(|(u, v, m)| [u, v, m]).collect(),
        }
    }
}

impl MultiplicityTarget {
    pub fn empty(n: u32) -> Self {
        MultiplicityTarget {
            n,
            required: vec![0; pair_count(n)],
        }
    }

    pub fn complete(n: u32) -> Self {
        MultiplicityTarget {
            n,
            required: vec![1; pair_count(n)],
        }
    }

    pub fn from_pairs(n: u32, pairs: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut t = MultiplicityTarget::empty(n);
        for (u, v) in pairs {
            t.set(u, v, 1)?;
        }
        Ok(t)
    }

    /// Complete graph minus the given pairs.
    pub fn complete_minus(n: u32, removed: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut t = MultiplicityTarget::complete(n);
        for (u, v) in removed {
            t.set(u, v, 0)?;
        }
        Ok(t)
    }

    pub fn set(&mut self, u: u32, v: u32, m: u32) -> Result<()> {
        if u == v || u == 0 || v == 0 || u > self.n || v > self.n {
            return invalid(format!("pair {{{u},{v}}} is not a pair of [{}]", self.n));
        }
        self.required[pair_rank(u, v)] = m;
        Ok(())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn required(&self, u: u32, v: u32) -> u32 {
        self.required[pair_rank(u, v)]
    }

    /// Non-zero entries `(u, v, m)` with `u < v`, in colex pair order.
    pub fn pairs(&self) -> impl Iterator<Item = (u32, u32, u32)> + '_ {
        self.required
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(r, &m)| {
                let (u, v) = pair_unrank(r);
                (u, v, m)
            })
    }

    /// Total multiplicity (the edge count for a 0/1 target).
    pub fn total(&self) -> u64 {
        self.required.iter().map(|&m| m as u64).sum()
    }

    /// Sum of multiplicities at `v`.
    pub fn degree(&self, v: u32) -> u64 {
        (1..=self.n)
            .filter(|&u| u != v)
            .map(|u| self.required(u, v) as u64)
            .sum()
    }

    pub fn describe(&self) -> String {
        if self.required.iter().all(|&m| m == 1) {
            format!("complete graph K_{}", self.n)
        } else {
            let missing = self.required.iter().filter(|&&m| m == 0).count();
            format!(
                "graph on {} vertices with {} pairs, {} pairs excluded",
                self.n,
                self.required.len() - missing,
                missing
            )
        }
    }

    fn scaled(&self, t: u32) -> Vec<u32> {
        self.required.iter().map(|&m| m * t).collect()
    }
}

/// `t|E| ≡ 0 (mod 3)` and `t·deg(v)` even everywhere.
pub fn k3t_divisible(target: &MultiplicityTarget, t: u32) -> bool {
    let t = t as u64;
    (t * target.total()).is_multiple_of(3) && (1..=target.n).all(|v| (t * target.degree(v)).is_multiple_of(2))
}

/// A set of distinct triples meant to cover each pair `lambda · required` times.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Design {
    pub blocks: Hypergraph3,
    pub lambda: u32,
    pub target: MultiplicityTarget,
}

impl Design {
    pub fn new(blocks: Hypergraph3, lambda: u32, target: MultiplicityTarget) -> Result<Self> {
        if blocks.n() != target.n() {
            return invalid("block set and target have different vertex counts");
        }
        Ok(Design { blocks, lambda, target })
    }

    /// Rejects repeated blocks.
    pub fn from_blocks(blocks: Vec<Triple>, lambda: u32, target: MultiplicityTarget) -> Result<Self> {
        Design::new(Hypergraph3::from_triples(target.n(), blocks)?, lambda, target)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairViolation {
    pub pair: (u32, u32),
    pub expected: u32,
    pub found: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignCheck {
    pub valid: bool,
    pub violations: Vec<PairViolation>,
}

pub fn verify_design(d: &Design) -> DesignCheck {
    let n = d.target.n();
    let mut cover = vec![0u32; pair_count(n)];
    for e in d.blocks.edges() {
        for (u, v) in e.pairs() {
            cover[pair_rank(u, v)] += 1;
        }
    }
    let violations: Vec<PairViolation> = cover
        .iter()
        .enumerate()
        .filter_map(|(r, &found)| {
            let expected = d.target.required[r] * d.lambda;
            (found != expected).then(|| PairViolation {
                pair: pair_unrank(r),
                expected,
                found,
            })
        })
        .collect();
    DesignCheck {
        valid: violations.is_empty(),
        violations,
    }
}

pub fn build_steiner_triple_system(n: u32) -> Result<Design> {
    let blocks = sts::sts_blocks(n)?;
    let d = Design::from_blocks(blocks, 1, MultiplicityTarget::complete(n))?;
    debug_assert!(verify_design(&d).valid);
    Ok(d)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decomposition {
    Found(Design),
    Infeasible(String),
    Timeout { nodes: u64 },
}

impl Decomposition {
    pub fn design(self) -> Option<Design> {
        match self {
            Decomposition::Found(d) => Some(d),
            _ => None,
        }
    }
}

/// Largest vertex count for which the exact cover is tried before climbing.
const EXACT_FIRST_MAX_N: u32 = 13;

const CLIMB_RUNS: u64 = 12;

/// Finds distinct triples covering each pair exactly `t · required` times.
pub fn decompose_exact(target: &MultiplicityTarget, t: u32, budget: Budget) -> Result<Decomposition> {
    if t == 0 {
        return invalid("decomposition multiplicity must be positive");
    }
    if !k3t_divisible(target, t) {
        return Ok(Decomposition::Infeasible(format!(
            "{} is not (K3,{t})-divisible",
            target.describe()
        )));
    }
    let need = target.scaled(t);
    let goal = (need.iter().map(|&x| x as u64).sum::<u64>() / 3) as usize;
    let n = target.n();
    let finish = |blocks: Vec<Triple>| -> Result<Decomposition> {
        let d = Design::from_blocks(blocks, t, target.clone())?;
        assert!(verify_design(&d).valid, "decomposition failed verification");
        Ok(Decomposition::Found(d))
    };
    let climb_steps = 100 * goal as u64 + 50_000;
    let mut meter = budget.meter();
    if n <= EXACT_FIRST_MAX_N {
        match CoverSearch::new(n, &need, goal).run(&mut meter) {
            Cover::Found(b) => return finish(b),
            Cover::Exhausted => {
                return Ok(Decomposition::Infeasible("exhaustive search found no decomposition".into()))
            }
            Cover::Stopped => {}
        }
        if let Some(b) = climb::climb_with_restarts(n, &need, CLIMB_RUNS, climb_steps) {
            return finish(b);
        }
        return Ok(Decomposition::Timeout { nodes: meter.used() });
    }
    if let Some(b) = climb::climb_with_restarts(n, &need, CLIMB_RUNS, climb_steps) {
        return finish(b);
    }
    match CoverSearch::new(n, &need, goal).run(&mut meter) {
        Cover::Found(b) => finish(b),
        Cover::Exhausted => Ok(Decomposition::Infeasible("exhaustive search found no decomposition".into())),
        Cover::Stopped => Ok(Decomposition::Timeout { nodes: meter.used() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissibility() {
        assert!(dehon_admissible(7, 1).unwrap());
        assert!(!dehon_admissible(6, 1).unwrap());
        assert!(dehon_admissible(9, 2).unwrap());
        assert!(dehon_admissible(5, 4).is_err());
        assert!(dehon_admissible(5, -1).is_err());
    }

    #[test]
    fn divisibility() {
        assert!(k3t_divisible(&MultiplicityTarget::complete(9), 1));
        assert!(!k3t_divisible(&MultiplicityTarget::complete(8), 1));
        let g = MultiplicityTarget::complete_minus(8, [(1, 2)]).unwrap();
        assert!(!k3t_divisible(&g, 3));
    }

    #[test]
    fn fano_verification() {
        let d = build_steiner_triple_system(7).unwrap();
        assert_eq!(d.blocks.edge_count(), 7);
        assert!(verify_design(&d).valid);
        let fewer: Vec<Triple> = d.blocks.edges()[1..].to_vec();
        let broken = Design::from_blocks(fewer, 1, MultiplicityTarget::complete(7)).unwrap();
        let check = verify_design(&broken);
        assert!(!check.valid);
        assert_eq!(check.violations.len(), 3);
        let b = d.blocks.edges()[0];
        assert!(Design::from_blocks(vec![b, b], 1, MultiplicityTarget::complete(7)).is_err());
    }

    #[test]
    fn octahedron() {
        let g = MultiplicityTarget::complete_minus(6, [(1, 2), (3, 4), (5, 6)]).unwrap();
        let d = decompose_exact(&g, 1, Budget::unlimited()).unwrap().design().unwrap();
        assert_eq!(d.blocks.edge_count(), 4);
    }

    #[test]
    fn k4_is_not_divisible() {
        let r = decompose_exact(&MultiplicityTarget::complete(4), 1, Budget::unlimited()).unwrap();
        assert!(matches!(r, Decomposition::Infeasible(_)));
    }

    #[test]
    fn target_json_roundtrip() {
        let g = MultiplicityTarget::complete_minus(5, [(2, 4)]).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(serde_json::from_str::<MultiplicityTarget>(&s).unwrap(), g);
    }
}
