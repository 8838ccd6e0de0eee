//! Dense graphs without a 4-cycle.

use std::collections::BTreeMap;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

/// Largest order handled by exhaustive search.
pub const EXACT_C4_MAX_M: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum C4Method {
    Exact,
    Polarity { q: u32 },
    Greedy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct C4FreeGraph {
    pub m: u32,
    /// Edges `(u, v)`, `1 <= u < v <= m`, sorted.
    pub edges: Vec<(u32, u32)>,
    pub method: C4Method,
    /// True only when exhaustive search proved no denser graph exists.
    pub certified_maximum: bool,
}

impl C4FreeGraph {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

/// Exact search up to [`EXACT_C4_MAX_M`], the polarity graph of PG(2,q) when
/// `m = q²+q+1` for a prime `q`, greedy completion otherwise.
pub fn c4_free_graph(m: u32) -> C4FreeGraph {
    if m <= EXACT_C4_MAX_M {
        let edges = ex_c4_exact(m);
        return C4FreeGraph {
            m,
            edges,
            method: C4Method::Exact,
            certified_maximum: true,
        };
    }
    if let Some(q) = (2..m).find(|&q| q * q + q + 1 == m && is_prime(q)) {
        return C4FreeGraph {
            m,
            edges: polarity(q),
            method: C4Method::Polarity { q },
            certified_maximum: false,
        };
    }
    let q = (2..).find(|&q| is_prime(q) && q * q + q + 1 >= m).unwrap();
    let seeded: Vec<(u32, u32)> = polarity(q).into_iter().filter(|&(_, v)| v <= m).collect();
    let a = complete_greedily(m, seeded);
    let b = complete_greedily(m, Vec::new());
    let edges = if b.len() > a.len() { b } else { a };
    C4FreeGraph {
        m,
        edges,
        method: C4Method::Greedy,
        certified_maximum: false,
    }
}

fn is_prime(q: u32) -> bool {
    q >= 2 && (2..q).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Points of PG(2,q) are adjacent when orthogonal; loops dropped.
fn polarity(q: u32) -> Vec<(u32, u32)> {
    let mut pts: Vec<[u32; 3]> = Vec::new();
    for x in 0..q {
        for y in 0..q {
            pts.push([x, y, 1]);
        }
    }
    for x in 0..q {
        pts.push([x, 1, 0]);
    }
    pts.push([1, 0, 0]);
    let mut edges = Vec::new();
    for j in 0..pts.len() {
        for i in 0..j {
            let (a, b) = (pts[i], pts[j]);
            if (a[0] * b[0] + a[1] * b[1] + a[2] * b[2]) % q == 0 {
                edges.push((i as u32 + 1, j as u32 + 1));
            }
        }
    }
    edges.sort_unstable();
    edges
}

fn complete_greedily(m: u32, seed: Vec<(u32, u32)>) -> Vec<(u32, u32)> {
    let mut adj = vec![0u128; m as usize + 1];
    for &(u, v) in &seed {
        adj[u as usize] |= 1 << v;
        adj[v as usize] |= 1 << u;
    }
    let mut edges = seed;
    for v in 2..=m {
        for u in 1..v {
            if adj[u as usize] >> v & 1 == 0 && can_add(&adj, u, v) {
                adj[u as usize] |= 1 << v;
                adj[v as usize] |= 1 << u;
                edges.push((u, v));
            }
        }
    }
    edges.sort_unstable();
    edges
}

/// Adding `uv` keeps the graph C4-free iff no neighbour of `v` already shares
/// a neighbour with `u`, and vice versa.
fn can_add(adj: &[u128], u: u32, v: u32) -> bool {
    let (nu, nv) = (adj[u as usize], adj[v as usize]);
    let mut x = nv & !(1 << u);
    while x != 0 {
        let y = x.trailing_zeros();
        x &= x - 1;
        if adj[y as usize] & nu != 0 {
            return false;
        }
    }
    let mut x = nu & !(1 << v);
    while x != 0 {
        let y = x.trailing_zeros();
        x &= x - 1;
        if adj[y as usize] & nv != 0 {
            return false;
        }
    }
    true
}

/// A maximum C4-free graph on `[m]` by exhaustive search.
///
/// Orders `1..=k` are solved in turn. In the order-`k` instance vertex 0 has
/// maximum degree `d` with neighbours `1..=d`; every other vertex has degree
/// at most `d`; pairs are decided vertex by vertex, and the edges among
/// vertices after `i` are bounded by the already known optimum for that many
/// vertices.
pub fn ex_c4_exact(m: u32) -> Vec<(u32, u32)> {
    static SOLVED: Mutex<BTreeMap<u32, Vec<(u32, u32)>>> = Mutex::new(BTreeMap::new());
    if let Some(g) = SOLVED.lock().unwrap().get(&m) {
        return g.clone();
    }
    let g = solve_exact(m);
    SOLVED.lock().unwrap().insert(m, g.clone());
    g
}

fn solve_exact(m: u32) -> Vec<(u32, u32)> {
    assert!(m <= 64, "exact C4-free search is limited to small orders");
    let mut best: Vec<usize> = vec![0; m as usize + 1];
    let mut graph = Vec::new();
    for k in 2..=m as usize {
        best[k] = best[k - 1];
        loop {
            let mut s = Doll {
                k,
                best: &best,
                adj: vec![0u64; k],
                deg: vec![0; k],
                cap: 0,
                edges: 0,
                target: best[k] + 1,
                found: None,
            };
            for d in (1..k).rev() {
                if d + best[k - 1] < s.target {
                    break;
                }
                s.cap = d;
                s.reset();
                for j in 1..=d {
                    s.set(0, j, true);
                }
                if s.search(1, 2) {
                    break;
                }
            }
            match s.found {
                Some(e) => {
                    best[k] = e.len();
                    graph = e;
                }
                None => break,
            }
        }
    }
    graph.sort_unstable();
    graph
}

struct Doll<'a> {
    k: usize,
    best: &'a [usize],
    adj: Vec<u64>,
    deg: Vec<usize>,
    cap: usize,
    edges: usize,
    target: usize,
    found: Option<Vec<(u32, u32)>>,
}

impl Doll<'_> {
    fn reset(&mut self) {
        self.adj.iter_mut().for_each(|a| *a = 0);
        self.deg.iter_mut().for_each(|d| *d = 0);
        self.edges = 0;
    }

    fn set(&mut self, u: usize, v: usize, on: bool) {
        if on {
            self.adj[u] |= 1 << v;
            self.adj[v] |= 1 << u;
            self.deg[u] += 1;
            self.deg[v] += 1;
            self.edges += 1;
        } else {
            self.adj[u] &= !(1 << v);
            self.adj[v] &= !(1 << u);
            self.deg[u] -= 1;
            self.deg[v] -= 1;
            self.edges -= 1;
        }
    }

    fn ok(&self, u: usize, v: usize) -> bool {
        let (nu, nv) = (self.adj[u], self.adj[v]);
        let mut x = nv & !(1 << u);
        while x != 0 {
            let y = x.trailing_zeros() as usize;
            x &= x - 1;
            if self.adj[y] & nu != 0 {
                return false;
            }
        }
        let mut x = nu & !(1 << v);
        while x != 0 {
            let y = x.trailing_zeros() as usize;
            x &= x - 1;
            if self.adj[y] & nv != 0 {
                return false;
            }
        }
        true
    }

    fn bound(&self, i: usize, j: usize) -> usize {
        let room_i = (self.cap - self.deg[i]).min(self.k - j);
        let rest = self.k - 1 - i;
        let later = self.best[rest];
        let slack: usize = (i + 1..self.k).map(|v| self.cap - self.deg[v]).sum::<usize>();
        self.edges + room_i + later.min((slack.saturating_sub(room_i)) / 2)
    }

    /// Decides pair `(i, j)`; pairs go row by row.
    fn search(&mut self, i: usize, j: usize) -> bool {
        if self.edges >= self.target {
            let mut e = Vec::new();
            for v in 0..self.k {
                for u in 0..v {
                    if self.adj[u] >> v & 1 == 1 {
                        e.push((u as u32 + 1, v as u32 + 1));
                    }
                }
            }
            self.found = Some(e);
            return true;
        }
        if i + 1 >= self.k {
            return false;
        }
        if j >= self.k {
            return self.search(i + 1, i + 2);
        }
        if self.bound(i, j) < self.target {
            return false;
        }
        if self.deg[i] < self.cap && self.deg[j] < self.cap && self.ok(i, j) {
            self.set(i, j, true);
            if self.search(i, j + 1) {
                return true;
            }
            self.set(i, j, false);
        }
        self.search(i, j + 1)
    }
}
