//! Weighted partial maxSAT encoding of `ex(n, F)`.

use std::collections::BTreeSet;
use std::fmt;

use super::ForbiddenFamily;
use crate::detection::automorphism_count;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph3;
use crate::triple::{triple_count, Triple};

pub const DEFAULT_COPY_LIMIT: u64 = 2_000_000;

/// Variable `i` is the `i`-th triple in colex order, counted from 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wcnf {
    pub vars: u64,
    /// Each hard clause lists the variables that may not all be true.
    pub hard: Vec<Vec<u64>>,
}

impl Wcnf {
    pub fn top(&self) -> u64 {
        self.vars + 1
    }

    pub fn soft_count(&self) -> u64 {
        self.vars
    }

    pub fn clause_count(&self) -> u64 {
        self.vars + self.hard.len() as u64
    }
}

impl fmt::Display for Wcnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p wcnf {} {} {}", self.vars, self.clause_count(), self.top())?;
        for v in 1..=self.vars {
            writeln!(f, "1 {v} 0")?;
        }
        let top = self.top();
        for c in &self.hard {
            write!(f, "{top}")?;
            for v in c {
                write!(f, " -{v}")?;
            }
            writeln!(f, " 0")?;
        }
        Ok(())
    }
}

fn falling(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n.saturating_sub(i)))
}

pub fn export_maxsat(n: u32, family: &ForbiddenFamily, copy_limit: u64) -> Result<Wcnf> {
    let mut estimate = 0u64;
    for p in family.patterns() {
        if p.n() <= n {
            estimate = estimate.saturating_add(falling(n as u64, p.n() as u64) / automorphism_count(p));
        }
    }
    if estimate > copy_limit {
        return Err(Error::CopyExplosion { estimate });
    }
    let mut copies: BTreeSet<Vec<u64>> = BTreeSet::new();
    for p in family.patterns() {
        if p.n() <= n {
            collect_copies(n, p, &mut copies);
        }
    }
    Ok(Wcnf {
        vars: triple_count(n) as u64,
        hard: copies.into_iter().collect(),
    })
}

fn collect_copies(n: u32, p: &Hypergraph3, out: &mut BTreeSet<Vec<u64>>) {
    let active: Vec<u32> = (1..=p.n()).filter(|&v| p.degree(v).is_ok_and(|d| d > 0)).collect();
    let mut map = vec![0u32; p.n() as usize + 1];
    let mut used = vec![false; n as usize + 1];
    fn go(
        i: usize,
        n: u32,
        p: &Hypergraph3,
        active: &[u32],
        map: &mut [u32],
        used: &mut [bool],
        out: &mut BTreeSet<Vec<u64>>,
    ) {
        if i == active.len() {
            let mut ranks: Vec<u64> = p
                .edges()
                .iter()
                .map(|e| {
                    let [a, b, c] = e.vertices();
                    Triple::of(map[a as usize], map[b as usize], map[c as usize]).rank() as u64 + 1
                })
                .collect();
            ranks.sort_unstable();
            out.insert(ranks);
            return;
        }
        for h in 1..=n {
            if !used[h as usize] {
                used[h as usize] = true;
                map[active[i] as usize] = h;
                go(i + 1, n, p, active, map, used, out);
                used[h as usize] = false;
            }
        }
    }
    go(0, n, p, &active, &mut map, &mut used, out);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::PatternTag;

    #[test]
    fn counts() {
        let w = export_maxsat(5, &ForbiddenFamily::of_tags(&[(PatternTag::F5t, 0)]), DEFAULT_COPY_LIMIT).unwrap();
        assert_eq!((w.vars, w.hard.len()), (10, 30));
        let w = export_maxsat(4, &ForbiddenFamily::of_tags(&[(PatternTag::F2t, 1)]), DEFAULT_COPY_LIMIT).unwrap();
        assert_eq!(w.hard.len(), 6);
        assert!(w.hard.iter().all(|c| c.len() == 2));
        let w = export_maxsat(3, &ForbiddenFamily::of_tags(&[(PatternTag::K4Minus, 0)]), DEFAULT_COPY_LIMIT).unwrap();
        assert_eq!(w.to_string(), "p wcnf 1 1 2\n1 1 0\n");
    }

    #[test]
    fn refuses_large() {
        let f = ForbiddenFamily::of_tags(&[(PatternTag::F5t, 3)]);
        assert!(matches!(export_maxsat(10, &f, 1000), Err(Error::CopyExplosion { .. })));
    }
}
