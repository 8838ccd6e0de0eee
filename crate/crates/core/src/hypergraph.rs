use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::index::EdgeIndex;
use crate::partition::Partition3;
use crate::triple::{pair_count, Triple};

/// A 3-uniform hypergraph on the vertex set `[n]`.
///
/// Edges are kept sorted in colex order with no duplicates. Adjacency queries
/// go through a lazily built [`EdgeIndex`].
pub struct Hypergraph3 {
    n: u32,
    edges: Vec<Triple>,
    index: OnceLock<EdgeIndex>,
}

impl Clone for Hypergraph3 {
    fn clone(&self) -> Self {
        Hypergraph3 {
            n: self.n,
            edges: self.edges.clone(),
            index: OnceLock::new(),
        }
    }
}

impl PartialEq for Hypergraph3 {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Hypergraph3 {}

impl fmt::Debug for Hypergraph3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hypergraph3")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct HypergraphJson {
    n: u32,
    edges: Vec<[u32; 3]>,
}

impl Serialize for Hypergraph3 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HypergraphJson {
            n: self.n,
            edges: self.edges.iter().map(|t| t.vertices()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Hypergraph3 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = HypergraphJson::deserialize(d)?;
        Hypergraph3::new(raw.n, raw.edges).map_err(serde::de::Error::custom)
    }
}

impl Hypergraph3 {
    /// Builds a hypergraph, rejecting out-of-range vertices and duplicate edges.
    pub fn new(n: u32, edges: impl IntoIterator<Item = [u32; 3]>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for [a, b, c] in edges {
            let t = Triple::new(a, b, c)?;
            if t.max_vertex() > n {
                return invalid(format!("edge {t} has a vertex outside [1, {n}]"));
            }
            if !set.insert(t) {
                return invalid(format!("duplicate edge {t}"));
            }
        }
        Ok(Hypergraph3::from_set(n, set))
    }

    pub fn from_triples(n: u32, edges: impl IntoIterator<Item = Triple>) -> Result<Self> {
        Hypergraph3::new(n, edges.into_iter().map(|t| t.vertices()))
    }

    pub(crate) fn from_set(n: u32, set: BTreeSet<Triple>) -> Self {
        Hypergraph3 {
            n,
            edges: set.into_iter().collect(),
            index: OnceLock::new(),
        }
    }

    /// Caller guarantees the edges are in range, colex-sorted and distinct.
    pub(crate) fn from_sorted_unchecked(n: u32, edges: Vec<Triple>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.last().is_none_or(|t| t.max_vertex() <= n));
        Hypergraph3 {
            n,
            edges,
            index: OnceLock::new(),
        }
    }

    pub(crate) fn from_unsorted_unchecked(n: u32, mut edges: Vec<Triple>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        Hypergraph3::from_sorted_unchecked(n, edges)
    }

    pub fn empty(n: u32) -> Self {
        Hypergraph3::from_sorted_unchecked(n, Vec::new())
    }

    pub fn complete(n: u32) -> Self {
        Hypergraph3::from_sorted_unchecked(n, crate::triple::all_triples(n).collect())
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in colex order.
    #[inline]
    pub fn edges(&self) -> &[Triple] {
        &self.edges
    }

    pub fn index(&self) -> &EdgeIndex {
        self.index
            .get_or_init(|| EdgeIndex::from_edges(self.n, self.edges.iter()))
    }

    #[inline]
    pub fn contains(&self, t: Triple) -> bool {
        t.max_vertex() <= self.n && self.index().contains(t)
    }

    pub fn has(&self, a: u32, b: u32, c: u32) -> bool {
        match Triple::new(a, b, c) {
            Ok(t) => self.contains(t),
            Err(_) => false,
        }
    }

    fn check_vertex(&self, v: u32) -> Result<()> {
        if v == 0 || v > self.n {
            return invalid(format!("vertex {v} outside [1, {}]", self.n));
        }
        Ok(())
    }

    fn check_set(&self, s: &[u32]) -> Result<()> {
        s.iter().try_for_each(|&v| self.check_vertex(v))
    }

    pub fn degree(&self, v: u32) -> Result<u32> {
        self.check_vertex(v)?;
        Ok(self.index().degree(v))
    }

    /// Minimum vertex degree.
    pub fn min_degree(&self) -> u32 {
        let idx = self.index();
        (1..=self.n).map(|v| idx.degree(v)).min().unwrap_or(0)
    }

    /// `|{z in s : xyz in H}|`.
    pub fn codegree(&self, x: u32, y: u32, s: &[u32]) -> Result<u32> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        self.check_set(s)?;
        if x == y {
            return invalid("codegree needs two distinct vertices");
        }
        let set = VertexMask::new(self.n, s);
        Ok(self
            .index()
            .link(x, y)
            .iter()
            .filter(|&&z| set.contains(z))
            .count() as u32)
    }

    /// Codegree over the whole vertex set.
    pub fn codegree_all(&self, x: u32, y: u32) -> Result<u32> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        if x == y {
            return invalid("codegree needs two distinct vertices");
        }
        Ok(self.index().codegree(x, y))
    }

    /// Common neighbours of `x` and `y` inside `s`, ascending.
    pub fn neighbors_in(&self, x: u32, y: u32, s: &[u32]) -> Result<Vec<u32>> {
        self.codegree(x, y, s)?;
        let set = VertexMask::new(self.n, s);
        let mut out: Vec<u32> = self
            .index()
            .link(x, y)
            .iter()
            .copied()
            .filter(|&z| set.contains(z))
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Link graph of `x` between `s` and `t`: pairs `yz` with `y` in `s`, `z` in `t`.
    pub fn link_between(&self, x: u32, s: &[u32], t: &[u32]) -> Result<PairSet> {
        self.check_vertex(x)?;
        self.check_set(s)?;
        self.check_set(t)?;
        let sm = VertexMask::new(self.n, s);
        let tm = VertexMask::new(self.n, t);
        let mut pairs = BTreeSet::new();
        for e in &self.edges {
            if !e.contains(x) {
                continue;
            }
            let [a, b, c] = e.vertices();
            let (y, z) = match (a == x, b == x) {
                (true, _) => (b, c),
                (_, true) => (a, c),
                _ => (a, b),
            };
            if (sm.contains(y) && tm.contains(z)) || (sm.contains(z) && tm.contains(y)) {
                pairs.insert((y, z));
            }
        }
        Ok(PairSet { pairs })
    }

    /// Size of the link of `x` between `s` and `t`, each unordered pair once.
    pub fn degree_between(&self, x: u32, s: &[u32], t: &[u32]) -> Result<u32> {
        Ok(self.link_between(x, s, t)?.len() as u32)
    }

    pub fn max_codegree(&self) -> u32 {
        self.index().max_codegree()
    }

    /// `(H ∩ K_π, K_π \ H)` for the crossing triples `K_π` of `pi`.
    pub fn crossing_split(&self, pi: &Partition3) -> Result<(Hypergraph3, Hypergraph3)> {
        if let Some(&v) = pi.ground().iter().find(|&&v| v == 0 || v > self.n) {
            return invalid(format!("partition vertex {v} outside [1, {}]", self.n));
        }
        let mut crossing = Vec::new();
        let mut missing = Vec::new();
        for t in pi.crossing_triples() {
            if self.contains(t) {
                crossing.push(t);
            } else {
                missing.push(t);
            }
        }
        Ok((
            Hypergraph3::from_unsorted_unchecked(self.n, crossing),
            Hypergraph3::from_unsorted_unchecked(self.n, missing),
        ))
    }

    /// Number of edges with one vertex in each part.
    pub fn crossing_count(&self, pi: &Partition3) -> usize {
        self.edges
            .iter()
            .filter(|e| {
                let mut seen = [false; 3];
                e.vertices().iter().all(|&v| match pi.part_of(v) {
                    Some(p) if !seen[p] => {
                        seen[p] = true;
                        true
                    }
                    _ => false,
                })
            })
            .count()
    }

    /// The `t`-blow-up: vertex `v` becomes the block `(v-1)t+1 ..= vt`.
    pub fn blow_up(&self, t: u32) -> Result<Hypergraph3> {
        if t == 0 {
            return invalid("blow-up factor must be positive");
        }
        let block = |v: u32| ((v - 1) * t + 1)..=(v * t);
        let mut edges = Vec::with_capacity(self.edges.len() * (t * t * t) as usize);
        for e in &self.edges {
            let [a, b, c] = e.vertices();
            for x in block(a) {
                for y in block(b) {
                    for z in block(c) {
                        edges.push(Triple::of(x, y, z));
                    }
                }
            }
        }
        Ok(Hypergraph3::from_unsorted_unchecked(self.n * t, edges))
    }

    /// Image under a vertex map `map[old] = new` (index 0 unused) onto `[new_n]`.
    pub fn relabel(&self, map: &[u32], new_n: u32) -> Result<Hypergraph3> {
        if map.len() < self.n as usize + 1 {
            return invalid("relabeling map too short");
        }
        let mut seen = vec![false; new_n as usize + 1];
        for &m in &map[1..=self.n as usize] {
            if m == 0 || m > new_n || std::mem::replace(&mut seen[m as usize], true) {
                return invalid("relabeling map is not injective into the target range");
            }
        }
        Ok(Hypergraph3::from_unsorted_unchecked(
            new_n,
            self.edges.iter().map(|e| e.mapped(map)).collect(),
        ))
    }

    /// Adds edges, rejecting ones already present.
    pub fn with_edges(&self, extra: impl IntoIterator<Item = Triple>) -> Result<Hypergraph3> {
        let mut set: BTreeSet<Triple> = self.edges.iter().copied().collect();
        for t in extra {
            if t.max_vertex() > self.n {
                return invalid(format!("edge {t} outside [1, {}]", self.n));
            }
            if !set.insert(t) {
                return Err(Error::InvalidArguments(format!("duplicate edge {t}")));
            }
        }
        Ok(Hypergraph3::from_set(self.n, set))
    }

    /// Same edges on a larger vertex set.
    pub fn extend_vertices(&self, n: u32) -> Result<Hypergraph3> {
        if n < self.n {
            return invalid("cannot shrink the vertex set");
        }
        Ok(Hypergraph3::from_sorted_unchecked(n, self.edges.clone()))
    }

    /// Edges not in `self`, on the same vertex set.
    pub fn complement(&self) -> Hypergraph3 {
        let idx = self.index();
        Hypergraph3::from_sorted_unchecked(
            self.n,
            crate::triple::all_triples(self.n)
                .filter(|t| !idx.contains(*t))
                .collect(),
        )
    }

    /// Edges of `self` that are not edges of `other`.
    pub fn difference(&self, other: &Hypergraph3) -> Hypergraph3 {
        Hypergraph3::from_sorted_unchecked(
            self.n,
            self.edges
                .iter()
                .copied()
                .filter(|&t| !other.contains(t))
                .collect(),
        )
    }

    /// Codegree of every pair, indexed by pair rank.
    pub fn pair_codegrees(&self) -> Vec<u32> {
        let idx = self.index();
        (0..pair_count(self.n))
            .map(|r| {
                let (u, v) = crate::triple::pair_unrank(r);
                idx.codegree(u, v)
            })
            .collect()
    }
}

/// Membership mask for a vertex subset of `[n]`.
pub(crate) struct VertexMask(Vec<bool>);

impl VertexMask {
    pub(crate) fn new(n: u32, s: &[u32]) -> Self {
        let mut m = vec![false; n as usize + 1];
        for &v in s {
            if (v as usize) < m.len() {
                m[v as usize] = true;
            }
        }
        VertexMask(m)
    }

    #[inline]
    pub(crate) fn contains(&self, v: u32) -> bool {
        self.0.get(v as usize).copied().unwrap_or(false)
    }
}

/// A set of unordered vertex pairs, each stored as `(small, large)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSet {
    pairs: BTreeSet<(u32, u32)>,
}

impl PairSet {
    pub fn new() -> Self {
        PairSet::default()
    }

    pub fn insert(&mut self, u: u32, v: u32) -> Result<bool> {
        if u == v {
            return invalid("a pair needs two distinct vertices");
        }
        Ok(self.pairs.insert((u.min(v), u.max(v))))
    }

    pub fn contains(&self, u: u32, v: u32) -> bool {
        self.pairs.contains(&(u.min(v), u.max(v)))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.pairs.iter().copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Hypergraph3 {
        Hypergraph3::new(5, [[1, 2, 3], [1, 2, 4], [3, 4, 5]]).unwrap()
    }

    #[test]
    fn rejects_duplicates_and_range() {
        assert!(Hypergraph3::new(4, [[1, 2, 3], [3, 2, 1]]).is_err());
        assert!(Hypergraph3::new(3, [[1, 2, 4]]).is_err());
        assert!(Hypergraph3::new(3, [[1, 1, 2]]).is_err());
    }

    #[test]
    fn edges_are_colex_sorted() {
        let h = Hypergraph3::new(5, [[3, 4, 5], [1, 2, 4], [1, 2, 3]]).unwrap();
        assert_eq!(h.edges(), f5().edges());
        assert_eq!(h.edges()[0], Triple::of(1, 2, 3));
        assert_eq!(h.edges()[2], Triple::of(3, 4, 5));
    }

    #[test]
    fn codegree_errors() {
        let h = f5();
        assert!(h.codegree(1, 1, &[2]).is_err());
        assert!(h.codegree(1, 6, &[2]).is_err());
        assert_eq!(h.codegree(1, 2, &[]).unwrap(), 0);
        assert_eq!(h.codegree(1, 2, &[1, 2, 3, 4, 5]).unwrap(), 2);
        assert_eq!(h.codegree(1, 2, &[3]).unwrap(), 1);
    }

    #[test]
    fn f5_degree_of_vertex_five() {
        let all: Vec<u32> = (1..=5).collect();
        assert_eq!(f5().degree_between(5, &all, &all).unwrap(), 1);
        assert_eq!(f5().degree_between(1, &all, &all).unwrap(), 2);
        assert_eq!(f5().degree_between(1, &[2], &[3, 4]).unwrap(), 2);
        assert_eq!(f5().min_degree(), 1);
    }

    #[test]
    fn blow_up_counts() {
        let b = f5().blow_up(2).unwrap();
        assert_eq!(b.n(), 10);
        assert_eq!(b.edge_count(), 24);
        assert!(f5().blow_up(0).is_err());
        assert_eq!(f5().blow_up(1).unwrap(), f5());
    }

    #[test]
    fn complement_partitions_all_triples() {
        let h = f5();
        assert_eq!(h.complement().edge_count() + h.edge_count(), 10);
    }

    #[test]
    fn json_round_trip() {
        let s = serde_json::to_string(&f5()).unwrap();
        assert_eq!(s, r#"{"n":5,"edges":[[1,2,3],[1,2,4],[3,4,5]]}"#);
        let back: Hypergraph3 = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f5());
        assert!(serde_json::from_str::<Hypergraph3>(r#"{"n":3,"edges":[[1,2,3],[1,2,3]]}"#).is_err());
    }
}
