//! Named hypergraphs: complete tripartite graphs and their decorations,
//! forbidden patterns, satellite constructions, `Ŝ(n)` and `H°(n,t)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::designs::{c4_free_graph, ex_f2t, C4FreeGraph, ExF2t, ExF2tConfig};
use crate::error::{invalid, Error, Result};
use crate::hypergraph::Hypergraph3;
use crate::partition::Partition3;
use crate::triple::{binom2, binom3, Triple};
use crate::value::ValueBound;

/// Part sizes `⌊n/3⌋, ⌊(n+1)/3⌋, ⌊(n+2)/3⌋`.
pub fn balanced_sizes(n: u32) -> [u32; 3] {
    [n / 3, (n + 1) / 3, n.div_ceil(3)]
}

/// `s(n)`, the size of the balanced complete tripartite 3-graph.
pub fn s(n: u32) -> i64 {
    balanced_sizes(n).iter().map(|&x| x as i64).product()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Decoration {
    None,
    InnerTriple,
    TwoPlusOne,
    PendantVertex,
}

impl FromStr for Decoration {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Decoration::None),
            "inner-triple" => Ok(Decoration::InnerTriple),
            "two-plus-one" => Ok(Decoration::TwoPlusOne),
            "pendant-vertex" => Ok(Decoration::PendantVertex),
            _ => invalid(format!("unknown decoration {s:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecoratedTripartite {
    pub hypergraph: Hypergraph3,
    pub partition: Partition3,
    pub decoration: Decoration,
    pub special: Vec<u32>,
}

pub fn make_complete_tripartite(n: u32) -> Result<DecoratedTripartite> {
    if n < 3 {
        return invalid(format!("S(n) needs n >= 3, got {n}"));
    }
    let partition = Partition3::consecutive(1, balanced_sizes(n));
    let hypergraph = Hypergraph3::from_unsorted_unchecked(n, partition.crossing_triples().collect());
    Ok(DecoratedTripartite {
        hypergraph,
        partition,
        decoration: Decoration::None,
        special: Vec::new(),
    })
}

/// `S′(m)`, `S″(m)` or `S⁺(m)`; decorations use the least eligible vertices.
pub fn make_decorated_tripartite(m: u32, variant: Decoration) -> Result<DecoratedTripartite> {
    let (min, base_n) = match variant {
        Decoration::None => (3, m),
        Decoration::InnerTriple => (9, m),
        Decoration::TwoPlusOne => (6, m),
        Decoration::PendantVertex => (7, m - 1),
    };
    if m < min {
        return invalid(format!("{variant:?} needs m >= {min}, got {m}"));
    }
    let base = make_complete_tripartite(base_n)?;
    let v1 = base.partition.part(0);
    let v2 = base.partition.part(1);
    let special = match variant {
        Decoration::None => return Ok(base),
        Decoration::InnerTriple => vec![v1[0], v1[1], v1[2]],
        Decoration::TwoPlusOne => vec![v1[0], v1[1], v2[0]],
        Decoration::PendantVertex => vec![v1[0], v1[1], m],
    };
    let hypergraph = base
        .hypergraph
        .extend_vertices(m)?
        .with_edges([Triple::of(special[0], special[1], special[2])])?;
    Ok(DecoratedTripartite {
        hypergraph,
        partition: base.partition,
        decoration: variant,
        special,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PatternTag {
    F5t,
    F2t,
    K4Minus,
    F5Prime,
    FHat,
}

impl FromStr for PatternTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "f5t" | "f5" => Ok(PatternTag::F5t),
            "f2t" => Ok(PatternTag::F2t),
            "k4minus" | "k4-" => Ok(PatternTag::K4Minus),
            "f5prime" => Ok(PatternTag::F5Prime),
            "fhat" => Ok(PatternTag::FHat),
            _ => invalid(format!("unknown pattern {s:?}")),
        }
    }
}

impl fmt::Display for PatternTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PatternTag::F5t => "F5t",
            PatternTag::F2t => "F2t",
            PatternTag::K4Minus => "K4minus",
            PatternTag::F5Prime => "F5prime",
            PatternTag::FHat => "Fhat",
        })
    }
}

/// Vertex names of `F̂` in label order.
pub const FHAT_VERTEX_NAMES: [&str; 20] = [
    "1", "2", "3", "4", "5", "c12", "c23", "c31", "a1^1", "a1^2", "b1^1", "b1^2", "a2^1", "a2^2", "b2^1",
    "b2^2", "a3^1", "a3^2", "b3^1", "b3^2",
];

fn fhat() -> Hypergraph3 {
    let a = |i: u32, l: u32| 9 + 4 * (i - 1) + (l - 1);
    let b = |i: u32, l: u32| 11 + 4 * (i - 1) + (l - 1);
    let (c12, c23, c31) = (6, 7, 8);
    let mut edges = vec![[1, 2, 3], [1, 2, 4], [3, 4, 5]];
    edges.push([c12, b(1, 2), a(2, 2)]);
    edges.push([c23, b(2, 2), a(3, 2)]);
    edges.push([c31, b(3, 2), a(1, 2)]);
    for i in 1..=3 {
        for l in 1..=2 {
            for m in 1..=2 {
                edges.push([5, a(i, l), b(i, m)]);
            }
        }
    }
    let sorted = edges.into_iter().map(|[x, y, z]| {
        let mut v = [x, y, z];
        v.sort_unstable();
        v
    });
    Hypergraph3::new(20, sorted).expect("F-hat is well formed")
}

/// `t` is used by `F5t` and `F2t` only.
pub fn make_pattern(tag: PatternTag, t: u32) -> Hypergraph3 {
    match tag {
        PatternTag::F5t => {
            let mut e = vec![[1, 2, 3], [1, 2, 4]];
            e.extend((5..=5 + t).map(|k| [3, 4, k]));
            Hypergraph3::new(5 + t, e).unwrap()
        }
        PatternTag::F2t => Hypergraph3::new(3 + t, (3..=3 + t).map(|k| [1, 2, k])).unwrap(),
        PatternTag::K4Minus => Hypergraph3::new(4, [[1, 2, 3], [1, 2, 4], [1, 3, 4]]).unwrap(),
        // 3' = 6, 4' = 7
        PatternTag::F5Prime => Hypergraph3::new(7, [[1, 2, 3], [1, 2, 4], [3, 4, 5], [5, 6, 7]]).unwrap(),
        PatternTag::FHat => fhat(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatelliteConstruction {
    pub hypergraph: Hypergraph3,
    pub tower: Vec<u32>,
    pub partition: Partition3,
}

/// `|W1||W2||W3| + t·Σ C(|Wi|,2) + C(t,3)`.
pub fn satellite_count(t: u32, sizes: [u32; 3]) -> i64 {
    let [a, b, c] = sizes.map(|x| x as i64);
    a * b * c + t as i64 * sizes.iter().map(|&x| binom2(x as usize) as i64).sum::<i64>() + binom3(t as usize) as i64
}

pub fn make_satellite(n: u32, t: u32, sizes: [u32; 3]) -> Result<SatelliteConstruction> {
    if t == 0 {
        return invalid("the tower needs t >= 1");
    }
    if sizes.iter().sum::<u32>() + t != n {
        return invalid(format!("part sizes {sizes:?} do not sum to n - t = {}", n as i64 - t as i64));
    }
    let partition = Partition3::consecutive(t + 1, sizes);
    let mut edges: Vec<Triple> = partition.crossing_triples().collect();
    for c in 3..=t {
        for b in 2..c {
            for a in 1..b {
                edges.push(Triple::of(a, b, c));
            }
        }
    }
    for v in 1..=t {
        for p in partition.parts() {
            for (j, &y) in p.iter().enumerate() {
                for &x in &p[..j] {
                    edges.push(Triple::of(v, x, y));
                }
            }
        }
    }
    Ok(SatelliteConstruction {
        hypergraph: Hypergraph3::from_unsorted_unchecked(n, edges),
        tower: (1..=t).collect(),
        partition,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shat {
    pub hypergraph: Hypergraph3,
    /// The partition of `S(n−1)` on `[n−1]`.
    pub partition: Partition3,
    pub apex: u32,
    pub c4_free: C4FreeGraph,
}

/// `S(n−1)` plus a vertex whose link is complete inside `V1` and `V2` and a
/// dense C4-free graph inside `V3`.
pub fn make_shat(n: u32) -> Result<Shat> {
    if n < 10 {
        return invalid(format!("Ŝ(n) needs n >= 10, got {n}"));
    }
    let base = make_complete_tripartite(n - 1)?;
    let pi = base.partition;
    let mut extra = Vec::new();
    for p in &pi.parts()[..2] {
        for (j, &y) in p.iter().enumerate() {
            for &x in &p[..j] {
                extra.push(Triple::of(x, y, n));
            }
        }
    }
    let v3 = pi.part(2);
    let g = c4_free_graph(v3.len() as u32);
    for &(u, v) in &g.edges {
        extra.push(Triple::of(v3[u as usize - 1], v3[v as usize - 1], n));
    }
    let hypergraph = base.hypergraph.extend_vertices(n)?.with_edges(extra)?;
    Ok(Shat {
        hypergraph,
        partition: pi,
        apex: n,
        c4_free: g,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extremal {
    pub hypergraph: Hypergraph3,
    pub partition: Partition3,
    /// Inner block status per part: `ex(|Vi|, F2^t)` as far as certified.
    pub inner: [ExF2t; 3],
    /// Certified status of `s°_t(n)`; `hypergraph` has `value.lo()` edges.
    pub value: ValueBound,
}

/// `H°(n,t)`: `S(n)` plus a densest known codegree-`t` block inside each part.
pub fn make_extremal(n: u32, t: u32, config: &ExF2tConfig) -> Result<Extremal> {
    if n < 9 {
        return invalid(format!("H°(n,t) needs n >= 9, got {n}"));
    }
    let base = make_complete_tripartite(n)?;
    let pi = base.partition;
    let inner = [0, 1, 2].map(|i| ex_f2t(pi.part(i).len() as u32, t, config));
    let mut edges = base.hypergraph.edges().to_vec();
    let mut value = ValueBound::exact(s(n));
    for (i, block) in inner.iter().enumerate() {
        let part = pi.part(i);
        edges.extend(block.witness.edges().iter().map(|e| {
            let [x, y, z] = e.vertices();
            Triple::of(part[x as usize - 1], part[y as usize - 1], part[z as usize - 1])
        }));
        value = value + block.value;
    }
    let hypergraph = Hypergraph3::from_unsorted_unchecked(n, edges);
    debug_assert_eq!(hypergraph.edge_count() as i64, value.lo());
    Ok(Extremal {
        hypergraph,
        partition: pi,
        inner,
        value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tripartite_counts() {
        for (n, m) in [(6, 8), (9, 27), (7, 12)] {
            assert_eq!(make_complete_tripartite(n).unwrap().hypergraph.edge_count(), m);
        }
        assert!(make_complete_tripartite(2).is_err());
    }

    #[test]
    fn pattern_shapes() {
        let f5 = make_pattern(PatternTag::F5t, 0);
        assert_eq!((f5.n(), f5.edge_count()), (5, 3));
        let book = make_pattern(PatternTag::F2t, 2);
        assert_eq!(book.edges(), Hypergraph3::new(5, [[1, 2, 3], [1, 2, 4], [1, 2, 5]]).unwrap().edges());
        let fhat = make_pattern(PatternTag::FHat, 0);
        assert_eq!((fhat.n(), fhat.edge_count()), (20, 18));
        assert_eq!(fhat.degree(5).unwrap(), 13);
        assert!("nope".parse::<PatternTag>().is_err());
    }

    #[test]
    fn decorations() {
        let sp = make_decorated_tripartite(9, Decoration::InnerTriple).unwrap();
        assert_eq!(sp.hypergraph.edge_count(), 28);
        assert_eq!(sp.special, vec![1, 2, 3]);
        assert_eq!(make_decorated_tripartite(9, Decoration::TwoPlusOne).unwrap().hypergraph.edge_count(), 28);
        let plus = make_decorated_tripartite(10, Decoration::PendantVertex).unwrap();
        assert_eq!((plus.hypergraph.n(), plus.hypergraph.edge_count()), (10, 28));
        assert_eq!(plus.hypergraph.degree(10).unwrap(), 1);
        assert!(make_decorated_tripartite(8, Decoration::InnerTriple).is_err());
    }

    #[test]
    fn satellites() {
        let h = make_satellite(12, 3, [3, 3, 3]).unwrap();
        assert_eq!(h.hypergraph.edge_count(), 55);
        assert_eq!(make_satellite(10, 1, [3, 3, 3]).unwrap().hypergraph.edge_count(), 36);
        assert!(make_satellite(10, 1, [3, 3, 2]).is_err());
    }

    #[test]
    fn extremal_small() {
        let cfg = ExF2tConfig::default();
        let h = make_extremal(21, 1, &cfg).unwrap();
        assert_eq!(h.value, ValueBound::exact(364));
        assert_eq!(h.hypergraph.edge_count(), 364);
        assert_eq!(make_extremal(9, 0, &cfg).unwrap().value, ValueBound::exact(27));
        assert_eq!(make_extremal(12, 1, &cfg).unwrap().value, ValueBound::exact(67));
    }

    #[test]
    fn shat_links() {
        let h = make_shat(16).unwrap();
        // S(15) has parts of size 5; two complete links of C(5,2) plus ex(5, C4) = 6
        assert_eq!(h.hypergraph.edge_count() as i64, s(15) + 10 + 10 + 6);
        assert_eq!(h.hypergraph.edge_count() as i64 - s(16), 1);
    }
}
