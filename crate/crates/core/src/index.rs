//! Mutable adjacency index over a 3-graph: O(1) membership, pair links and
//! degrees. Searches push and pop edges in stack order.

use crate::triple::{colex_rank, pair_count, pair_rank, triple_count, Triple};

#[derive(Debug, Clone)]
pub struct EdgeIndex {
    n: u32,
    bits: Vec<u64>,
    links: Vec<Vec<u32>>,
    degree: Vec<u32>,
    stack: Vec<Triple>,
}

impl EdgeIndex {
    pub fn new(n: u32) -> Self {
        let words = triple_count(n).div_ceil(64);
        EdgeIndex {
            n,
            bits: vec![0; words],
            links: vec![Vec::new(); pair_count(n)],
            degree: vec![0; n as usize + 1],
            stack: Vec::new(),
        }
    }

    pub fn from_edges<'a>(n: u32, edges: impl IntoIterator<Item = &'a Triple>) -> Self {
        let mut idx = EdgeIndex::new(n);
        for &e in edges {
            idx.push(e);
        }
        idx
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.stack.len()
    }

    pub fn edges(&self) -> &[Triple] {
        &self.stack
    }

    #[inline]
    pub fn contains(&self, t: Triple) -> bool {
        let r = t.rank();
        self.bits[r >> 6] >> (r & 63) & 1 == 1
    }

    /// Membership for three distinct vertices in any order.
    #[inline]
    pub fn has(&self, a: u32, b: u32, c: u32) -> bool {
        let mut v = [a, b, c];
        v.sort_unstable();
        let r = colex_rank(v[0], v[1], v[2]);
        self.bits[r >> 6] >> (r & 63) & 1 == 1
    }

    /// Third vertices `z` with `uvz` an edge, in insertion order.
    #[inline]
    pub fn link(&self, u: u32, v: u32) -> &[u32] {
        &self.links[pair_rank(u, v)]
    }

    #[inline]
    pub fn codegree(&self, u: u32, v: u32) -> u32 {
        self.links[pair_rank(u, v)].len() as u32
    }

    #[inline]
    pub fn degree(&self, v: u32) -> u32 {
        self.degree[v as usize]
    }

    /// Inserts an edge not already present.
    pub fn push(&mut self, t: Triple) {
        debug_assert!(!self.contains(t));
        let r = t.rank();
        self.bits[r >> 6] |= 1 << (r & 63);
        let [a, b, c] = t.vertices();
        self.links[pair_rank(a, b)].push(c);
        self.links[pair_rank(a, c)].push(b);
        self.links[pair_rank(b, c)].push(a);
        self.degree[a as usize] += 1;
        self.degree[b as usize] += 1;
        self.degree[c as usize] += 1;
        self.stack.push(t);
    }

    /// Removes the most recently pushed edge.
    pub fn pop(&mut self) -> Option<Triple> {
        let t = self.stack.pop()?;
        let r = t.rank();
        self.bits[r >> 6] &= !(1 << (r & 63));
        let [a, b, c] = t.vertices();
        self.links[pair_rank(a, b)].pop();
        self.links[pair_rank(a, c)].pop();
        self.links[pair_rank(b, c)].pop();
        self.degree[a as usize] -= 1;
        self.degree[b as usize] -= 1;
        self.degree[c as usize] -= 1;
        Some(t)
    }

    pub fn max_codegree(&self) -> u32 {
        self.links.iter().map(|l| l.len() as u32).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn push_pop_restores_state() {
        let mut idx = EdgeIndex::new(6);
        idx.push(Triple::of(1, 2, 3));
        idx.push(Triple::of(1, 2, 4));
        assert!(idx.has(3, 2, 1));
        assert_eq!(idx.codegree(1, 2), 2);
        assert_eq!(idx.link(2, 1), &[3, 4]);
        assert_eq!(idx.degree(1), 2);
        assert_eq!(idx.pop(), Some(Triple::of(1, 2, 4)));
        assert!(!idx.has(1, 2, 4));
        assert_eq!(idx.codegree(1, 2), 1);
        assert_eq!(idx.degree(4), 0);
        assert_eq!(idx.max_codegree(), 1);
    }
}
