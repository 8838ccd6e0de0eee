//! Subhypergraph containment.

use serde::{Deserialize, Serialize};

use crate::budget::{Budget, Meter};
use crate::hypergraph::Hypergraph3;
use crate::index::EdgeIndex;
use crate::triple::Triple;

/// Injective vertex map: `map[i]` is the host image of pattern vertex `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Embedding {
    pub map: Vec<u32>,
}

impl Embedding {
    pub fn image(&self, v: u32) -> u32 {
        self.map[v as usize - 1]
    }

    /// Checks injectivity and that every pattern edge lands on a host edge.
    pub fn is_valid(&self, host: &Hypergraph3, pattern: &Hypergraph3) -> bool {
        if self.map.len() != pattern.n() as usize {
            return false;
        }
        let mut seen = vec![false; host.n() as usize + 1];
        for &v in &self.map {
            if v == 0 || v > host.n() || std::mem::replace(&mut seen[v as usize], true) {
                return false;
            }
        }
        pattern.edges().iter().all(|e| {
            let [a, b, c] = e.vertices();
            host.has(self.image(a), self.image(b), self.image(c))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Containment {
    Found(Embedding),
    Absent,
    Timeout,
}

impl Containment {
    pub fn is_found(&self) -> bool {
        matches!(self, Containment::Found(_))
    }

    pub fn embedding(&self) -> Option<&Embedding> {
        match self {
            Containment::Found(e) => Some(e),
            _ => None,
        }
    }
}

pub fn find_embedding(host: &Hypergraph3, pattern: &Hypergraph3, budget: Budget) -> Containment {
    if pattern.n() > host.n() || pattern.edge_count() > host.edge_count() {
        return Containment::Absent;
    }
    let mut meter = budget.meter();
    let p = Pattern::new(pattern);
    let mut m = Matcher::new(&p, host.index(), &[]).with_twins();
    match m.run(&mut meter, false) {
        Walk::Done => Containment::Found(Embedding { map: m.map[1..].to_vec() }),
        Walk::Exhausted => Containment::Absent,
        Walk::Stopped => Containment::Timeout,
    }
}

/// Like [`find_embedding`] with some pattern vertices already placed:
/// `fixed` holds `(pattern vertex, host vertex)` pairs. Shares `meter`.
pub fn find_embedding_pinned(
    host: &Hypergraph3,
    pattern: &Hypergraph3,
    fixed: &[(u32, u32)],
    meter: &mut Meter,
) -> Containment {
    if pattern.n() > host.n() || pattern.edge_count() > host.edge_count() {
        return Containment::Absent;
    }
    let p = Pattern::new(pattern);
    let idx = host.index();
    if fixed.iter().any(|&(u, x)| idx.degree(x) < p.degree[u as usize]) {
        return Containment::Absent;
    }
    let image = |v: u32| fixed.iter().find(|&&(u, _)| u == v).map(|&(_, x)| x);
    for e in &p.edges {
        if let [Some(a), Some(b), Some(c)] = e.map(image) {
            if !idx.has(a, b, c) {
                return Containment::Absent;
            }
        }
    }
    let mut m = Matcher::new(&p, idx, fixed).with_twins();
    match m.run(meter, false) {
        Walk::Done => Containment::Found(Embedding { map: m.map[1..].to_vec() }),
        Walk::Exhausted => Containment::Absent,
        Walk::Stopped => Containment::Timeout,
    }
}

/// Counts unlabeled copies of `pattern` in `host`. `None` on budget exhaustion.
pub fn count_copies(host: &Hypergraph3, pattern: &Hypergraph3, budget: Budget) -> Option<u64> {
    if pattern.n() > host.n() || pattern.edge_count() > host.edge_count() {
        return Some(0);
    }
    let mut meter = budget.meter();
    let labeled = count_maps(pattern, host.index(), &mut meter)?;
    let aut = count_maps(pattern, pattern.index(), &mut meter)?;
    Some(labeled / aut)
}

/// Number of automorphisms of `h`.
pub fn automorphism_count(h: &Hypergraph3) -> u64 {
    count_maps(h, h.index(), &mut Budget::unlimited().meter()).expect("unlimited budget")
}

fn count_maps(pattern: &Hypergraph3, host: &EdgeIndex, meter: &mut Meter) -> Option<u64> {
    let p = Pattern::new(pattern);
    let mut m = Matcher::new(&p, host, &[]);
    match m.run(meter, true) {
        Walk::Stopped => None,
        _ => Some(m.found),
    }
}

/// A pattern prepared for repeated matching.
#[derive(Debug, Clone)]
pub(crate) struct Pattern {
    n: u32,
    edges: Vec<[u32; 3]>,
    incident: Vec<Vec<usize>>,
    degree: Vec<u32>,
    codegree: Vec<Vec<u32>>,
}

impl Pattern {
    pub(crate) fn new(h: &Hypergraph3) -> Self {
        let n = h.n();
        let edges: Vec<[u32; 3]> = h.edges().iter().map(|t| t.vertices()).collect();
        let mut incident = vec![Vec::new(); n as usize + 1];
        let mut codegree = vec![vec![0u32; n as usize + 1]; n as usize + 1];
        for (i, e) in edges.iter().enumerate() {
            for &v in e {
                incident[v as usize].push(i);
            }
            for (x, y) in [(e[0], e[1]), (e[0], e[2]), (e[1], e[2])] {
                codegree[x as usize][y as usize] += 1;
                codegree[y as usize][x as usize] += 1;
            }
        }
        let degree = incident.iter().map(|l| l.len() as u32).collect();
        Pattern {
            n,
            edges,
            incident,
            degree,
            codegree,
        }
    }

    /// Matching order given already-placed vertices: greedily the vertex with
    /// the most edges into the placed set, then highest degree, then label.
    fn order(&self, placed: &[u32]) -> Vec<u32> {
        let mut in_set = vec![false; self.n as usize + 1];
        for &v in placed {
            in_set[v as usize] = true;
        }
        let mut order = Vec::new();
        while order.len() + placed.len() < self.n as usize {
            let best = (1..=self.n)
                .filter(|&v| !in_set[v as usize])
                .max_by_key(|&v| {
                    let (mut two, mut one) = (0, 0);
                    for &i in &self.incident[v as usize] {
                        let k = self.edges[i].iter().filter(|&&x| x != v && in_set[x as usize]).count();
                        match k {
                            2 => two += 1,
                            1 => one += 1,
                            _ => {}
                        }
                    }
                    (two, one, self.degree[v as usize], std::cmp::Reverse(v))
                })
                .unwrap();
            in_set[best as usize] = true;
            order.push(best);
        }
        order
    }
}

enum Walk {
    Done,
    Exhausted,
    Stopped,
}

pub(crate) struct Matcher<'a> {
    p: &'a Pattern,
    host: &'a EdgeIndex,
    order: Vec<u32>,
    map: Vec<u32>,
    used: Vec<bool>,
    found: u64,
    /// Host twin classes; unused twins are interchangeable.
    twins: Option<Vec<u32>>,
}

/// Largest host handled by [`twin_classes`].
const TWIN_MAX_N: u32 = 160;

/// `class[x]` is the least `y` such that swapping `x` and `y` is an
/// automorphism of the host.
pub(crate) fn twin_classes(host: &EdgeIndex) -> Vec<u32> {
    let n = host.n();
    let mut class = vec![0u32; n as usize + 1];
    let swappable = |x: u32, y: u32| {
        if host.degree(x) != host.degree(y) {
            return false;
        }
        for a in 1..=n {
            if a == x || a == y {
                continue;
            }
            for b in a + 1..=n {
                if b != x && b != y && host.has(x, a, b) != host.has(y, a, b) {
                    return false;
                }
            }
        }
        true
    };
    for x in 1..=n {
        if class[x as usize] != 0 {
            continue;
        }
        class[x as usize] = x;
        for y in x + 1..=n {
            if class[y as usize] == 0 && swappable(x, y) {
                class[y as usize] = x;
            }
        }
    }
    class
}

impl<'a> Matcher<'a> {
    /// `fixed` pairs pattern vertices with host vertices before the search.
    fn new(p: &'a Pattern, host: &'a EdgeIndex, fixed: &[(u32, u32)]) -> Self {
        let placed: Vec<u32> = fixed.iter().map(|&(u, _)| u).collect();
        let mut map = vec![0; p.n as usize + 1];
        let mut used = vec![false; host.n() as usize + 1];
        for &(u, x) in fixed {
            map[u as usize] = x;
            used[x as usize] = true;
        }
        Matcher {
            p,
            host,
            order: p.order(&placed),
            map,
            used,
            found: 0,
            twins: None,
        }
    }

    fn with_twins(mut self) -> Self {
        if self.host.n() <= TWIN_MAX_N {
            self.twins = Some(twin_classes(self.host));
        }
        self
    }

    fn run(&mut self, meter: &mut Meter, count_all: bool) -> Walk {
        match self.extend(0, meter, count_all) {
            Some(true) => Walk::Done,
            Some(false) => Walk::Exhausted,
            None => Walk::Stopped,
        }
    }

    fn candidates(&self, u: u32) -> Vec<u32> {
        let mut best: Option<&[u32]> = None;
        let mut anchor = 0;
        for &i in &self.p.incident[u as usize] {
            let others: Vec<u32> = self.p.edges[i]
                .iter()
                .filter(|&&x| x != u)
                .map(|&x| self.map[x as usize])
                .collect();
            match (others[0], others[1]) {
                (0, 0) => {}
                (a, 0) | (0, a) => {
                    if anchor == 0 {
                        anchor = a;
                    }
                }
                (a, b) => {
                    let l = self.host.link(a, b);
                    if best.is_none_or(|bl| l.len() < bl.len()) {
                        best = Some(l);
                    }
                }
            }
        }
        let mut c: Vec<u32> = if let Some(l) = best {
            l.to_vec()
        } else if anchor != 0 {
            (1..=self.host.n())
                .filter(|&w| w != anchor && self.host.codegree(anchor, w) > 0)
                .collect()
        } else {
            (1..=self.host.n()).collect()
        };
        c.sort_unstable();
        c
    }

    fn fits(&self, u: u32, x: u32) -> bool {
        if self.used[x as usize] || self.host.degree(x) < self.p.degree[u as usize] {
            return false;
        }
        for &i in &self.p.incident[u as usize] {
            let e = self.p.edges[i];
            let mut img = [0u32; 3];
            for (k, &v) in e.iter().enumerate() {
                img[k] = if v == u { x } else { self.map[v as usize] };
            }
            let mapped = img.iter().filter(|&&y| y != 0).count();
            if mapped == 3 && !self.host.has(img[0], img[1], img[2]) {
                return false;
            }
        }
        for v in 1..=self.p.n {
            let y = self.map[v as usize];
            let need = self.p.codegree[u as usize][v as usize];
            if y != 0 && need > 1 && self.host.codegree(x, y) < need {
                return false;
            }
        }
        true
    }

    /// `Some(true)`: stop, embedding in `map`; `Some(false)`: subtree done;
    /// `None`: budget gone.
    fn extend(&mut self, depth: usize, meter: &mut Meter, count_all: bool) -> Option<bool> {
        if !meter.tick() {
            return None;
        }
        if depth == self.order.len() {
            self.found += 1;
            return Some(!count_all);
        }
        let u = self.order[depth];
        let mut tried: Vec<u32> = Vec::new();
        for x in self.candidates(u) {
            if !self.fits(u, x) {
                continue;
            }
            if !count_all {
                if let Some(tw) = &self.twins {
                    let c = tw[x as usize];
                    if tried.contains(&c) {
                        continue;
                    }
                    tried.push(c);
                }
            }
            self.map[u as usize] = x;
            self.used[x as usize] = true;
            let r = self.extend(depth + 1, meter, count_all);
            if r != Some(false) {
                return r;
            }
            self.used[x as usize] = false;
            self.map[u as usize] = 0;
        }
        Some(false)
    }
}

/// Whether some copy of `pattern` in `host` uses the edge `e`.
/// `None` on budget exhaustion.
pub(crate) fn embeds_through(p: &Pattern, host: &EdgeIndex, e: Triple, meter: &mut Meter) -> Option<bool> {
    let [x, y, z] = e.vertices();
    let perms = [[x, y, z], [x, z, y], [y, x, z], [y, z, x], [z, x, y], [z, y, x]];
    for f in &p.edges {
        for img in &perms {
            let fixed = [(f[0], img[0]), (f[1], img[1]), (f[2], img[2])];
            let ok = fixed.iter().all(|&(u, h)| host.degree(h) >= p.degree[u as usize]);
            if !ok {
                continue;
            }
            let mut m = Matcher::new(p, host, &fixed);
            match m.run(meter, false) {
                Walk::Done => return Some(true),
                Walk::Exhausted => {}
                Walk::Stopped => return None,
            }
        }
    }
    Some(false)
}

/// Looks for a copy of F5^t: pattern vertices 1,2 map to `a,b`, the high
/// codegree pair 3,4 to `c,d`, satellites to the least vertices of
/// `L(c,d) \ {a,b}`.
pub fn contains_f5t(host: &Hypergraph3, t: u32) -> Option<Embedding> {
    let idx = host.index();
    let n = host.n();
    for d in 2..=n {
        for c in 1..d {
            if idx.codegree(c, d) < t + 1 {
                continue;
            }
            if let Some((a, b)) = f5t_base(idx, t, c, d) {
                let mut sats: Vec<u32> = idx.link(c, d).iter().copied().filter(|&k| k != a && k != b).collect();
                sats.sort_unstable();
                let mut map = vec![a, b, c, d];
                map.extend(&sats[..t as usize + 1]);
                return Some(Embedding { map });
            }
        }
    }
    None
}

/// Least pair `{a,b}` (by `b` then `a`) with `abc, abd` edges and at least
/// `t+1` vertices of `L(c,d)` outside `{a,b}`.
fn f5t_base(idx: &EdgeIndex, t: u32, c: u32, d: u32) -> Option<(u32, u32)> {
    let lcd = idx.link(c, d);
    let need = t as usize + 1;
    let outside = |a: u32, b: u32| lcd.iter().filter(|&&k| k != a && k != b).count() >= need;
    let mut best: Option<(u32, u32)> = None;
    for b in 1..=idx.n() {
        if b == c || b == d || idx.codegree(b, c) == 0 {
            continue;
        }
        for &a in idx.link(b, c) {
            if a < b && a != d && idx.has(a, b, d) && outside(a, b) && best.is_none_or(|(ba, bb)| (b, a) < (bb, ba)) {
                best = Some((a, b));
            }
        }
        if best.is_some() {
            return best;
        }
    }
    None
}

/// Whether adding `e` (already pushed into `idx`) created a copy of F5^t
/// that uses `e`.
pub(crate) fn f5t_through(idx: &EdgeIndex, t: u32, e: Triple) -> bool {
    let need = t as usize + 1;
    let [x, y, z] = e.vertices();
    for (p, q, r) in [(x, y, z), (x, z, y), (y, z, x)] {
        // e as a satellite edge: {p,q} is the pair {3,4}
        if idx.codegree(p, q) as usize >= need && f5t_base(idx, t, p.min(q), p.max(q)).is_some() {
            return true;
        }
        // e as 12c with {a,b} = {p,q}, c = r; d ranges over the rest of L(a,b)
        for &d in idx.link(p, q) {
            if d == r {
                continue;
            }
            let cnt = idx.link(r, d).iter().filter(|&&k| k != p && k != q).count();
            if cnt >= need {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Hypergraph3 {
        Hypergraph3::new(5, [[1, 2, 3], [1, 2, 4], [3, 4, 5]]).unwrap()
    }

    fn k4minus() -> Hypergraph3 {
        Hypergraph3::new(4, [[1, 2, 3], [1, 2, 4], [1, 3, 4]]).unwrap()
    }

    #[test]
    fn f5_has_no_k4minus() {
        assert_eq!(find_embedding(&f5(), &k4minus(), Budget::unlimited()), Containment::Absent);
    }

    #[test]
    fn f5_automorphisms() {
        assert_eq!(automorphism_count(&f5()), 4);
        assert_eq!(count_copies(&f5(), &f5(), Budget::unlimited()), Some(1));
    }

    #[test]
    fn single_edge_copies() {
        let edge = Hypergraph3::new(3, [[1, 2, 3]]).unwrap();
        assert_eq!(count_copies(&Hypergraph3::complete(5), &edge, Budget::unlimited()), Some(10));
    }

    #[test]
    fn f5t_identity_witness() {
        let h = Hypergraph3::new(7, [[1, 2, 3], [1, 2, 4], [3, 4, 5], [3, 4, 6], [3, 4, 7]]).unwrap();
        let w = contains_f5t(&h, 2).unwrap();
        assert_eq!(w.map, vec![1, 2, 3, 4, 5, 6, 7]);
        assert!(contains_f5t(&h, 3).is_none());
    }

    #[test]
    fn timeout_is_distinct() {
        let host = Hypergraph3::complete(9);
        let pat = Hypergraph3::complete(5);
        assert_eq!(find_embedding(&host, &pat, Budget::nodes(3)), Containment::Timeout);
    }
}
