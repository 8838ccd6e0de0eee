//! Exact canonical forms for small uniform hypergraphs (uniformity 2 or 3).
//!
//! Colour refinement on vertex/edge incidence, then individualization over
//! the first non-singleton cell. Two vertices whose transposition is an
//! automorphism lead to identical subtrees, so only one per twin class is
//! branched on. The canonical code is the minimum relabeled edge list over
//! all leaves.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph3;

/// Largest vertex count accepted by [`canonical_form`].
pub const EXACT_CANON_MAX_N: u32 = 16;

/// Byte encoding of an isomorphism class; equal keys iff isomorphic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalKey(pub Vec<u8>);

impl CanonicalKey {
    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.to_hex())
    }
}

pub fn canonical_form(h: &Hypergraph3) -> Result<CanonicalKey> {
    if h.n() > EXACT_CANON_MAX_N {
        return Err(Error::UnsupportedSize {
            n: h.n(),
            max: EXACT_CANON_MAX_N,
        });
    }
    let edges: Vec<Vec<u32>> = h
        .edges()
        .iter()
        .map(|t| t.vertices().iter().map(|v| v - 1).collect())
        .collect();
    let code = Canonizer::new(h.n() as usize, 3, &edges).code();
    Ok(CanonicalKey(encode(h.n(), 3, &code)))
}

/// Canonical key of a simple graph on `0..n` (0-based endpoints).
pub fn graph_key(n: usize, edges: &[(u32, u32)]) -> CanonicalKey {
    let edges: Vec<Vec<u32>> = edges.iter().map(|&(a, b)| vec![a, b]).collect();
    let code = Canonizer::new(n, 2, &edges).code();
    CanonicalKey(encode(n as u32, 2, &code))
}

fn encode(n: u32, k: u8, code: &[u32]) -> Vec<u8> {
    let mut out = Vec::with_capacity(code.len() * 2 + 4);
    out.push(k);
    out.extend_from_slice(&(n as u16).to_be_bytes());
    for &x in code {
        out.extend_from_slice(&(x as u16).to_be_bytes());
    }
    out
}

struct Canonizer {
    n: usize,
    k: usize,
    edges: Vec<Vec<u32>>,
    incident: Vec<Vec<usize>>,
    twin: Vec<usize>,
}

impl Canonizer {
    fn new(n: usize, k: usize, edges: &[Vec<u32>]) -> Self {
        let edges: Vec<Vec<u32>> = edges
            .iter()
            .map(|e| {
                let mut e = e.clone();
                e.sort_unstable();
                e
            })
            .collect();
        let mut incident = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            for &v in e {
                incident[v as usize].push(i);
            }
        }
        let mut c = Canonizer {
            n,
            k,
            edges,
            incident,
            twin: Vec::new(),
        };
        c.twin = c.twin_classes();
        c
    }

    /// Class representative per vertex under "transposition is an automorphism".
    #[allow(clippy::needless_range_loop)]
    fn twin_classes(&self) -> Vec<usize> {
        let set: HashSet<&[u32]> = self.edges.iter().map(|e| e.as_slice()).collect();
        let mut rep: Vec<usize> = (0..self.n).collect();
        for v in 0..self.n {
            if rep[v] != v {
                continue;
            }
            for w in v + 1..self.n {
                if rep[w] != w || self.incident[v].len() != self.incident[w].len() {
                    continue;
                }
                if self.swap_is_automorphism(&set, v as u32, w as u32) {
                    rep[w] = v;
                }
            }
        }
        rep
    }

    fn swap_is_automorphism(&self, set: &HashSet<&[u32]>, u: u32, w: u32) -> bool {
        let check = |from: u32, to: u32| {
            self.incident[from as usize].iter().all(|&i| {
                let e = &self.edges[i];
                if e.contains(&to) {
                    return true;
                }
                let mut img: Vec<u32> = e.iter().map(|&x| if x == from { to } else { x }).collect();
                img.sort_unstable();
                set.contains(img.as_slice())
            })
        };
        check(u, w) && check(w, u)
    }

    fn code(&self) -> Vec<u32> {
        let colours = self.refine(vec![0; self.n]);
        let mut best: Option<Vec<u32>> = None;
        self.search(colours, &mut best);
        best.unwrap_or_default()
    }

    fn search(&self, colours: Vec<u32>, best: &mut Option<Vec<u32>>) {
        let cells = cell_count(&colours);
        if cells == self.n {
            let code = self.leaf_code(&colours);
            if best.as_ref().is_none_or(|b| code < *b) {
                *best = Some(code);
            }
            return;
        }
        // first non-singleton cell
        let mut size = vec![0usize; self.n];
        for &c in &colours {
            size[c as usize] += 1;
        }
        let target = (0..self.n).find(|&c| size[c] > 1).unwrap() as u32;
        let mut tried = Vec::new();
        for v in 0..self.n {
            if colours[v] != target || tried.contains(&self.twin[v]) {
                continue;
            }
            tried.push(self.twin[v]);
            let child = self.refine(individualize(&colours, v));
            self.search(child, best);
        }
    }

    fn refine(&self, mut colours: Vec<u32>) -> Vec<u32> {
        let mut cells = cell_count(&colours);
        loop {
            let mut sigs: Vec<(u32, Vec<u32>, usize)> = (0..self.n)
                .map(|v| {
                    let mut items: Vec<u32> = Vec::with_capacity(self.incident[v].len() * (self.k - 1));
                    let mut groups: Vec<Vec<u32>> = self.incident[v]
                        .iter()
                        .map(|&i| {
                            let mut g: Vec<u32> = self.edges[i]
                                .iter()
                                .filter(|&&x| x as usize != v)
                                .map(|&x| colours[x as usize])
                                .collect();
                            g.sort_unstable();
                            g
                        })
                        .collect();
                    groups.sort_unstable();
                    for g in groups {
                        items.extend(g);
                    }
                    (colours[v], items, v)
                })
                .collect();
            sigs.sort_unstable();
            let mut next = vec![0u32; self.n];
            let mut c = 0u32;
            for i in 0..sigs.len() {
                if i > 0 && (sigs[i].0 != sigs[i - 1].0 || sigs[i].1 != sigs[i - 1].1) {
                    c += 1;
                }
                next[sigs[i].2] = c;
            }
            colours = next;
            let now = cell_count(&colours);
            if now == cells {
                return colours;
            }
            cells = now;
        }
    }

    fn leaf_code(&self, labels: &[u32]) -> Vec<u32> {
        let mut rel: Vec<Vec<u32>> = self
            .edges
            .iter()
            .map(|e| {
                let mut r: Vec<u32> = e.iter().map(|&x| labels[x as usize]).collect();
                r.sort_unstable();
                r.reverse(); // colex comparison via reversed lex
                r
            })
            .collect();
        rel.sort_unstable();
        let mut code = Vec::with_capacity(rel.len() * self.k + 1);
        code.push(rel.len() as u32);
        for r in rel {
            code.extend(r);
        }
        code
    }
}

fn cell_count(colours: &[u32]) -> usize {
    colours.iter().max().map_or(0, |&m| m as usize + 1)
}

fn individualize(colours: &[u32], v: usize) -> Vec<u32> {
    let mut keyed: Vec<(u32, u32, usize)> = colours
        .iter()
        .enumerate()
        .map(|(x, &c)| (c, u32::from(x != v && c == colours[v]), x))
        .collect();
    keyed.sort_unstable();
    let mut out = vec![0u32; colours.len()];
    let mut c = 0u32;
    for i in 0..keyed.len() {
        if i > 0 && (keyed[i].0, keyed[i].1) != (keyed[i - 1].0, keyed[i - 1].1) {
            c += 1;
        }
        out[keyed[i].2] = c;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Hypergraph3 {
        Hypergraph3::new(5, [[1, 2, 3], [1, 2, 4], [3, 4, 5]]).unwrap()
    }

    #[test]
    fn relabeling_invariant() {
        let h = f5();
        let g = h.relabel(&[0, 5, 3, 1, 2, 4], 5).unwrap();
        assert_eq!(canonical_form(&h).unwrap(), canonical_form(&g).unwrap());
    }

    #[test]
    fn f5_differs_from_book() {
        let book = Hypergraph3::new(5, [[1, 2, 3], [1, 2, 4], [1, 2, 5]]).unwrap();
        assert_ne!(canonical_form(&f5()).unwrap(), canonical_form(&book).unwrap());
    }

    #[test]
    fn empty_key_depends_only_on_n() {
        let a = canonical_form(&Hypergraph3::empty(7)).unwrap();
        let b = canonical_form(&Hypergraph3::empty(7)).unwrap();
        let c = canonical_form(&Hypergraph3::empty(8)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn too_large_is_rejected() {
        assert!(matches!(
            canonical_form(&Hypergraph3::empty(17)),
            Err(Error::UnsupportedSize { .. })
        ));
    }

    #[test]
    fn symmetric_inputs_finish() {
        // complete 3-graph on 16 vertices: every pair of vertices is a twin pair
        let k = Hypergraph3::complete(16);
        let mut map = vec![0u32];
        map.extend((1..=16).rev());
        let k2 = k.relabel(&map, 16).unwrap();
        assert_eq!(canonical_form(&k).unwrap(), canonical_form(&k2).unwrap());
    }

    #[test]
    fn graph_keys() {
        let p3a = graph_key(4, &[(0, 1), (1, 2)]);
        let p3b = graph_key(4, &[(3, 2), (2, 0)]);
        let two = graph_key(4, &[(0, 1), (2, 3)]);
        assert_eq!(p3a, p3b);
        assert_ne!(p3a, two);
    }
}
