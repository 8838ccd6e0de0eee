#![allow(dead_code)]

use turan3::{Hypergraph3, Triple};

pub fn triples(n: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                out.push([a, b, c]);
            }
        }
    }
    out
}

pub fn from_mask(n: u32, all: &[[u32; 3]], mask: u64) -> Hypergraph3 {
    let edges = all.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| *e);
    Hypergraph3::new(n, edges).unwrap()
}

fn has(host: &Hypergraph3, e: [u32; 3]) -> bool {
    let mut v = e;
    v.sort();
    host.contains(Triple::of(v[0], v[1], v[2]))
}

/// Plain injective-map enumeration, independent of the library matcher.
pub fn naive_contains(host: &Hypergraph3, pattern: &Hypergraph3) -> bool {
    let (hn, pn) = (host.n() as usize, pattern.n() as usize);
    if pn > hn || pattern.edge_count() > host.edge_count() {
        return false;
    }
    let mut map = vec![0u32; pn + 1];
    let mut used = vec![false; hn + 1];
    fn go(k: usize, pn: usize, hn: usize, map: &mut [u32], used: &mut [bool], host: &Hypergraph3, pattern: &Hypergraph3) -> bool {
        if k > pn {
            return pattern.edges().iter().all(|e| {
                let [a, b, c] = e.vertices();
                has(host, [map[a as usize], map[b as usize], map[c as usize]])
            });
        }
        for v in 1..=hn {
            if used[v] {
                continue;
            }
            used[v] = true;
            map[k] = v as u32;
            if go(k + 1, pn, hn, map, used, host, pattern) {
                return true;
            }
            used[v] = false;
        }
        false
    }
    go(1, pn, hn, &mut map, &mut used, host, pattern)
}

pub fn max_codegree(h: &Hypergraph3) -> u32 {
    let n = h.n();
    let mut best = 0;
    for x in 1..=n {
        for y in x + 1..=n {
            let d = (1..=n).filter(|&z| z != x && z != y && has(h, [x, y, z])).count() as u32;
            best = best.max(d);
        }
    }
    best
}

/// Largest edge count over all `2^C(n,3)` hypergraphs passing `free`.
pub fn brute_max(n: u32, free: impl Fn(&Hypergraph3) -> bool) -> usize {
    let all = triples(n);
    assert!(all.len() <= 20);
    (0u64..1 << all.len())
        .filter(|m| free(&from_mask(n, &all, *m)))
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap()
}

/// `ex(m, F2^t)` by include/exclude search. The bound counts, for every
/// pair, the smaller of its unused codegree and its undecided triples.
pub fn brute_packing(m: u32, t: u32) -> usize {
    struct S {
        all: Vec<[u32; 3]>,
        cod: Vec<u32>,
        open: Vec<u32>,
        t: u32,
        m: u32,
        best: usize,
    }
    impl S {
        fn pairs(&self, i: usize) -> [usize; 3] {
            let [a, b, c] = self.all[i];
            let idx = |x: u32, y: u32| (x * (self.m + 1) + y) as usize;
            [idx(a, b), idx(a, c), idx(b, c)]
        }
        fn room(&self) -> usize {
            let mut total = 0;
            for x in 1..=self.m {
                for y in x + 1..=self.m {
                    let p = (x * (self.m + 1) + y) as usize;
                    total += (self.t - self.cod[p]).min(self.open[p]) as usize;
                }
            }
            total / 3
        }
        fn go(&mut self, i: usize, size: usize) {
            if size + self.room() <= self.best {
                return;
            }
            if i == self.all.len() {
                self.best = size;
                return;
            }
            let ps = self.pairs(i);
            ps.iter().for_each(|&p| self.open[p] -= 1);
            if ps.iter().all(|&p| self.cod[p] < self.t) {
                ps.iter().for_each(|&p| self.cod[p] += 1);
                self.go(i + 1, size + 1);
                ps.iter().for_each(|&p| self.cod[p] -= 1);
            }
            self.go(i + 1, size);
            ps.iter().for_each(|&p| self.open[p] += 1);
        }
    }
    let len = ((m + 1) * (m + 1)) as usize;
    let mut s = S {
        all: triples(m),
        cod: vec![0; len],
        open: vec![m.saturating_sub(2); len],
        t,
        m,
        best: 0,
    };
    s.go(0, 0);
    s.best
}

pub fn permutations(n: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = (1..=n).collect();
    fn heap(k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            if k.is_multiple_of(2) {
                cur.swap(i, k - 1);
            } else {
                cur.swap(0, k - 1);
            }
        }
    }
    heap(n as usize, &mut cur, &mut out);
    out
}

pub fn relabel(h: &Hypergraph3, perm: &[u32]) -> Hypergraph3 {
    let mut map = vec![0];
    map.extend_from_slice(perm);
    h.relabel(&map, h.n()).unwrap()
}

pub fn isomorphic(a: &Hypergraph3, b: &Hypergraph3) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && permutations(a.n()).iter().any(|p| relabel(a, p) == *b)
}
