//! Closed forms and inequalities around `s°_t(n)`, evaluated exactly.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Mutex;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::constructions::{balanced_sizes, make_extremal, s, satellite_count};
use crate::designs::{ex_f2t, ExF2tConfig};
use crate::error::{invalid, Result};
use crate::hypergraph::Hypergraph3;
use crate::partition::Partition3;
use crate::search::random_free_sample;
use crate::value::ValueBound;

pub type Q = Ratio<i64>;

fn q(x: i64) -> Q {
    Q::from_integer(x)
}

fn frac(a: i64, b: i64) -> Q {
    Q::new(a, b)
}

/// Source of `ex(m, F2^t)` values.
pub trait Provider: Sync {
    fn ex_f2t(&self, m: u32, t: u32) -> ValueBound;
}

/// Packing numbers from the design and search routines, memoised.
#[derive(Debug, Default)]
pub struct PackingProvider {
    config: ExF2tConfig,
    cache: Mutex<HashMap<(u32, u32), ValueBound>>,
}

impl PackingProvider {
    pub fn new(config: ExF2tConfig) -> Self {
        PackingProvider {
            config,
            cache: Mutex::new(HashMap::new()),
        }
    }
}

impl Provider for PackingProvider {
    fn ex_f2t(&self, m: u32, t: u32) -> ValueBound {
        if let Some(v) = self.cache.lock().unwrap().get(&(m, t)) {
            return *v;
        }
        let v = ex_f2t(m, t, &self.config).value;
        self.cache.lock().unwrap().insert((m, t), v);
        v
    }
}

impl<F: Fn(u32, u32) -> ValueBound + Sync> Provider for F {
    fn ex_f2t(&self, m: u32, t: u32) -> ValueBound {
        self(m, t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
}

impl Outcome {
    fn of(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }

    /// `Pass` when `surely` holds, `Fail` when even `possibly` fails.
    fn bracket(surely: bool, possibly: bool) -> Self {
        match (surely, possibly) {
            (true, _) => Outcome::Pass,
            (false, false) => Outcome::Fail,
            (false, true) => Outcome::Inconclusive,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub assertion: String,
    pub outcome: Outcome,
    /// Informational checks are reported but never fail a run.
    pub informational: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// One line of a scan table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub n: u32,
    pub t: u32,
    pub value_lo: String,
    pub value_hi: String,
    pub check: String,
    pub pass: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaReport {
    pub name: String,
    pub inputs: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<ValueBound>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<Row>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl FormulaReport {
    fn new(name: &str, inputs: Value) -> Self {
        let inputs = match inputs {
            Value::Object(m) => m.into_iter().collect(),
            _ => BTreeMap::new(),
        };
        FormulaReport {
            name: name.into(),
            inputs,
            value: None,
            checks: Vec::new(),
            rows: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, assertion: impl Into<String>, outcome: Outcome, witness: Option<String>) {
        self.checks.push(Check {
            assertion: assertion.into(),
            outcome,
            informational: false,
            witness: if outcome == Outcome::Pass { None } else { witness },
        });
    }

    fn note_check(&mut self, assertion: impl Into<String>, outcome: Outcome, witness: Option<String>) {
        self.check(assertion, outcome, witness);
        self.checks.last_mut().unwrap().informational = true;
    }

    /// Marks every check informational.
    pub fn informational(mut self) -> Self {
        for c in &mut self.checks {
            c.informational = true;
        }
        self
    }

    /// No required check failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.informational || c.outcome != Outcome::Fail)
    }

    /// Some required check could not be decided.
    pub fn inconclusive(&self) -> bool {
        self.checks.iter().any(|c| !c.informational && c.outcome == Outcome::Inconclusive)
    }

    pub fn outcome_of(&self, assertion: &str) -> Option<Outcome> {
        self.checks.iter().find(|c| c.assertion == assertion).map(|c| c.outcome)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,t,value_lo,value_hi,check,pass\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{},{},{},{}", r.n, r.t, r.value_lo, r.value_hi, r.check, r.pass.as_str());
        }
        out
    }
}

fn sizes_label(sizes: [u32; 3]) -> String {
    format!("{}-{}-{}", sizes[0], sizes[1], sizes[2])
}

/// `s°_t(n) = s(n) + Σ ex(|Vi|, F2^t)` over the balanced part sizes.
pub fn s_ho(n: u32, t: u32, provider: &dyn Provider) -> Result<ValueBound> {
    if n < 3 {
        return invalid(format!("need n >= 3, got {n}"));
    }
    Ok(partition_profile_value(balanced_sizes(n), t, provider))
}

/// `n³/27 + tn²/18 − tn/6`, for `n ≡ 3, 9 (mod 18)`.
pub fn closed_form_corollary(n: u32, t: u32) -> Result<i64> {
    if n % 18 != 3 && n % 18 != 9 {
        return invalid(format!("need n ≡ 3 or 9 (mod 18), got n = {n}"));
    }
    let (n, t) = (n as i64, t as i64);
    let v = frac(n * n * n, 27) + frac(t * n * n, 18) - frac(t * n, 6);
    debug_assert!(v.is_integer());
    Ok(v.to_integer())
}

/// Compares the closed form with `s°_t(n)` from the provider.
pub fn corollary_check(n: u32, t: u32, provider: &dyn Provider) -> Result<FormulaReport> {
    let closed = closed_form_corollary(n, t)?;
    let v = s_ho(n, t, provider)?;
    let mut r = FormulaReport::new("corollary", json!({"n": n, "t": t}));
    r.value = Some(v);
    r.check(
        "closed form equals s_ho",
        Outcome::bracket(v.as_exact() == Some(closed), v.contains(closed)),
        Some(format!("closed form {closed}, s_ho {v}")),
    );
    Ok(r)
}

/// `|V1||V2||V3| + Σ ex(|Vi|, F2^t)`.
pub fn partition_profile_value(sizes: [u32; 3], t: u32, provider: &dyn Provider) -> ValueBound {
    let product = sizes.iter().map(|&x| x as i64).product::<i64>();
    sizes
        .iter()
        .fold(ValueBound::exact(product), |acc, &m| acc + provider.ex_f2t(m, t))
}

/// Size profiles `a <= b <= c` with `a + b + c = total`.
pub fn size_profiles(total: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in 0..=total / 3 {
        for b in a..=(total - a) / 2 {
            out.push([a, b, total - a - b]);
        }
    }
    out
}

pub const BALANCED_MAX: &str = "balanced profile attains the maximum";
pub const BALANCED_UNIQUE: &str = "maximum attained only at the balanced profile";
pub const BALANCED_PRODUCT: &str = "balanced profile maximises the product";

pub fn balanced_optimality_scan(n: u32, t: u32, provider: &dyn Provider) -> FormulaReport {
    let mut r = FormulaReport::new("balanced_optimality_scan", json!({"n": n, "t": t}));
    let balanced = {
        let mut b = balanced_sizes(n);
        b.sort_unstable();
        b
    };
    let bal = partition_profile_value(balanced, t, provider);
    r.value = Some(bal);
    let mut attains = (true, true);
    let mut unique = (true, true);
    let mut product_ok = true;
    let mut offenders = Vec::new();
    let bal_product: i64 = balanced.iter().map(|&x| x as i64).product();
    for sizes in size_profiles(n) {
        let v = partition_profile_value(sizes, t, provider);
        let row_outcome = if sizes == balanced {
            Outcome::Pass
        } else {
            attains.0 &= bal.lo() >= v.hi();
            attains.1 &= bal.hi() >= v.lo();
            unique.0 &= bal.lo() > v.hi();
            unique.1 &= bal.hi() > v.lo();
            product_ok &= sizes.iter().map(|&x| x as i64).product::<i64>() <= bal_product;
            if v.hi() >= bal.lo() {
                offenders.push(format!("{} -> {}", sizes_label(sizes), v));
            }
            Outcome::bracket(bal.lo() > v.hi(), bal.hi() > v.lo())
        };
        r.rows.push(Row {
            n,
            t,
            value_lo: v.lo().to_string(),
            value_hi: v.hi().to_string(),
            check: sizes_label(sizes),
            pass: row_outcome,
        });
    }
    let witness = Some(format!("balanced {} -> {}; rivals: {}", sizes_label(balanced), bal, offenders.join(", ")));
    r.check(BALANCED_MAX, Outcome::bracket(attains.0, attains.1), witness.clone());
    r.note_check(BALANCED_UNIQUE, Outcome::bracket(unique.0, unique.1), witness);
    r.check(BALANCED_PRODUCT, Outcome::of(product_ok), None);
    r
}

/// `f_{n,t}(x) = x1x2x3 + t·Σ xi(xi−1)/2 + C(t,3)`.
pub fn f_nt(t: u32, x: [Q; 3]) -> Q {
    let t = t as i64;
    let pairs = x.iter().map(|&xi| xi * (xi - q(1)) / q(2)).fold(q(0), |a, b| a + b);
    x[0] * x[1] * x[2] + q(t) * pairs + q(t * (t - 1) * (t - 2) / 6)
}

/// The displayed value of `f_{n,t}` at `x1 = x2 = x3 = (n−t)/3`.
pub fn f_symmetric(n: u32, t: u32) -> Q {
    let (n, t) = (n as i64, t as i64);
    frac(n * n * n, 27) + frac(t * n * n, 18) - (frac(2 * t * t, 9) + frac(t, 2)) * q(n) + frac(8 * t * t * t, 27)
        + frac(t, 3)
}

pub const SYMMETRIC_FORMULA: &str = "displayed symmetric value equals direct evaluation";
pub const PROFILES_BELOW_SYMMETRIC: &str = "every profile value is at most the symmetric value";
pub const GAP: &str = "s_ho exceeds every satellite value by more than n/10";

pub fn satellite_gap_check(n: u32, t: u32, provider: &dyn Provider) -> Result<FormulaReport> {
    if t == 0 || n < t + 3 {
        return invalid(format!("need t >= 1 and n >= t + 3, got n = {n}, t = {t}"));
    }
    let mut r = FormulaReport::new("satellite_gap_check", json!({"n": n, "t": t}));
    let third = frac(n as i64 - t as i64, 3);
    let displayed = f_symmetric(n, t);
    let direct = f_nt(t, [third; 3]);
    r.check(
        SYMMETRIC_FORMULA,
        Outcome::of(displayed == direct),
        Some(format!("displayed {displayed}, direct {direct}")),
    );
    let (mut best, mut arg) = (i64::MIN, [0; 3]);
    for sizes in size_profiles(n - t) {
        let v = satellite_count(t, sizes);
        if v > best {
            best = v;
            arg = sizes;
        }
    }
    r.check(
        PROFILES_BELOW_SYMMETRIC,
        Outcome::of(q(best) <= displayed),
        Some(format!("profile {} gives {best} > {displayed}", sizes_label(arg))),
    );
    let sho = s_ho(n, t, provider)?;
    r.value = Some(sho);
    let need = q(best) + frac(n as i64, 10);
    r.check(
        GAP,
        Outcome::bracket(q(sho.lo()) > need, q(sho.hi()) > need),
        Some(format!(
            "s_ho {sho}, max satellite {best} at {}, n/10 = {}",
            sizes_label(arg),
            frac(n as i64, 10)
        )),
    );
    r.inputs.insert("symmetric_value".into(), json!(displayed.to_string()));
    r.inputs.insert("max_satellite".into(), json!(best));
    Ok(r)
}

/// The global interval for `s°_t(n)`.
pub fn sho_interval(n: u32, t: u32) -> (Q, Q) {
    let (nn, tt) = (q(n as i64), q(t as i64));
    let head = nn * nn * nn / q(27) + tt * nn * nn / q(18);
    let lo = head - (tt / q(6) + frac(4, 9)) * nn - (tt * tt / q(2) + frac(80, 9) * tt + frac(2, 27));
    let hi = head - tt * nn / q(6);
    (lo, hi)
}

/// The sharper interval for the residue of `n` modulo 3.
pub fn sho_residue_interval(n: u32, t: u32) -> (Q, Q) {
    let (nn, tt) = (q(n as i64), q(t as i64));
    let head = nn * nn * nn / q(27) + tt * nn * nn / q(18);
    match n % 3 {
        0 => (
            head - (tt / q(6) + frac(1, 3)) * nn - (tt * tt / q(2) + q(9) * tt),
            head - tt * nn / q(6),
        ),
        1 => (
            head - (tt / q(6) + frac(4, 9)) * nn - (tt * tt / q(2) + frac(80, 9) * tt - frac(2, 27)),
            head - (tt / q(6) + frac(1, 9)) * nn + (tt / q(9) + frac(2, 27)),
        ),
        _ => (
            head - (tt / q(6) + frac(4, 9)) * nn - (tt * tt / q(2) + frac(80, 9) * tt + frac(2, 27)),
            head - (tt / q(6) + frac(1, 9)) * nn + (tt / q(9) - frac(2, 27)),
        ),
    }
}

pub const IN_GLOBAL: &str = "s_ho lies in the global interval";
pub const IN_RESIDUE: &str = "s_ho lies in the residue interval";

pub fn sho_interval_check(n: u32, t: u32, provider: &dyn Provider) -> Result<FormulaReport> {
    let v = s_ho(n, t, provider)?;
    let mut r = FormulaReport::new("sho_interval", json!({"n": n, "t": t}));
    r.value = Some(v);
    for (name, (lo, hi)) in [(IN_GLOBAL, sho_interval(n, t)), (IN_RESIDUE, sho_residue_interval(n, t))] {
        let surely = lo <= q(v.lo()) && q(v.hi()) <= hi;
        let possibly = q(v.hi()) >= lo && q(v.lo()) <= hi;
        r.check(name, Outcome::bracket(surely, possibly), Some(format!("s_ho {v} vs [{lo}, {hi}]")));
        r.rows.push(Row {
            n,
            t,
            value_lo: v.lo().to_string(),
            value_hi: v.hi().to_string(),
            check: name.replace(' ', "_"),
            pass: Outcome::bracket(surely, possibly),
        });
    }
    Ok(r)
}

/// Degrees `d_{S,T}(x)` (S, T disjoint) and `d_{S,S}(x)`.
fn link_degrees(h: &Hypergraph3, x: u32, in_s: &[bool], in_t: &[bool]) -> (i64, i64) {
    let (mut st, mut ss) = (0, 0);
    for e in h.edges() {
        let [a, b, c] = e.vertices();
        let (p, q) = if a == x {
            (b, c)
        } else if b == x {
            (a, c)
        } else if c == x {
            (a, b)
        } else {
            continue;
        };
        let (p, q) = (p as usize, q as usize);
        if in_s[p] && in_t[q] || in_s[q] && in_t[p] {
            st += 1;
        }
        if in_s[p] && in_s[q] {
            ss += 1;
        }
    }
    (st, ss)
}

#[derive(Debug, Clone)]
enum Trial {
    Skipped,
    Checked { first: Option<String>, second: Option<String> },
}

pub const FIRST_INEQUALITY: &str = "d_ST(x) + d_ST(x') <= |S||T| + (t+3)n";
pub const SECOND_INEQUALITY: &str = "d_SS(x) + d_SS(x') <= |S|^2/2 + (t+4)n";

/// Random F5^t-free hosts (greedy samples, and every fourth trial an
/// `H°(n,t)`), a random pair of codegree at least `t+1`, and random disjoint
/// `S`, `T`. Trial `i` uses order `ns[i % ns.len()]` and its own stream.
pub fn lemma31_property_suite(ns: &[u32], t: u32, trials: u32, seed: u64) -> Result<FormulaReport> {
    if trials == 0 || ns.is_empty() || ns.iter().any(|&n| n < 9) {
        return invalid("need trials >= 1 and orders n >= 9");
    }
    let config = ExF2tConfig::default();
    let mut hosts = BTreeMap::new();
    for &n in ns {
        let h = make_extremal(n, t, &config)?;
        hosts.insert(n, (h.hypergraph, h.partition));
    }
    let results: Vec<Trial> = (0..trials)
        .into_par_iter()
        .map(|i| run_trial(ns[i as usize % ns.len()], t, seed, i, &hosts))
        .collect::<Result<_>>()?;
    let mut r = FormulaReport::new(
        "lemma31_property_suite",
        json!({"orders": ns, "t": t, "trials": trials, "seed": seed}),
    );
    let skipped = results.iter().filter(|x| matches!(x, Trial::Skipped)).count();
    let mut first = Vec::new();
    let mut second = Vec::new();
    for res in &results {
        if let Trial::Checked { first: a, second: b } = res {
            first.extend(a.clone());
            second.extend(b.clone());
        }
    }
    r.inputs.insert("qualifying".into(), json!(results.len() - skipped));
    r.inputs.insert("skipped".into(), json!(skipped));
    r.check(FIRST_INEQUALITY, Outcome::of(first.is_empty()), first.first().cloned());
    r.check(SECOND_INEQUALITY, Outcome::of(second.is_empty()), second.first().cloned());
    if !first.is_empty() || !second.is_empty() {
        r.notes.push(format!("{} + {} violations", first.len(), second.len()));
    }
    Ok(r)
}

fn run_trial(n: u32, t: u32, seed: u64, trial: u32, hosts: &BTreeMap<u32, (Hypergraph3, Partition3)>) -> Result<Trial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    let extremal = trial % 4 == 3;
    let sampled;
    let (h, parts) = if extremal {
        let (h, p) = &hosts[&n];
        (h, Some(p))
    } else {
        let density = rng.gen_range(0.2..=1.0);
        sampled = random_free_sample(n, t, density, rng.gen())?;
        (&sampled, None)
    };
    let mut pairs = Vec::new();
    for x in 1..=n {
        for y in x + 1..=n {
            if h.index().codegree(x, y) > t {
                pairs.push((x, y));
            }
        }
    }
    if pairs.is_empty() {
        return Ok(Trial::Skipped);
    }
    let (x, y) = pairs[rng.gen_range(0..pairs.len())];
    let mut in_s = vec![false; n as usize + 1];
    let mut in_t = vec![false; n as usize + 1];
    match parts {
        Some(p) if rng.gen_bool(0.5) => {
            let i = rng.gen_range(0..3);
            let j = (i + rng.gen_range(1..3)) % 3;
            p.part(i).iter().for_each(|&v| in_s[v as usize] = true);
            p.part(j).iter().for_each(|&v| in_t[v as usize] = true);
        }
        _ => {
            for v in 1..=n as usize {
                match rng.gen_range(0..3) {
                    0 => in_s[v] = true,
                    1 => in_t[v] = true,
                    _ => {}
                }
            }
        }
    }
    let s_len = in_s.iter().filter(|&&b| b).count() as i64;
    let t_len = in_t.iter().filter(|&&b| b).count() as i64;
    let (ax, bx) = link_degrees(h, x, &in_s, &in_t);
    let (ay, by) = link_degrees(h, y, &in_s, &in_t);
    let (n64, t64) = (n as i64, t as i64);
    let witness = |lhs: String, rhs: String| format!("trial {trial}, n = {n}, t = {t}, x = {x}, x' = {y}: {lhs} > {rhs}");
    let first = (ax + ay > s_len * t_len + (t64 + 3) * n64)
        .then(|| witness((ax + ay).to_string(), (s_len * t_len + (t64 + 3) * n64).to_string()));
    let second_rhs = frac(s_len * s_len, 2) + q((t64 + 4) * n64);
    let second = (q(bx + by) > second_rhs).then(|| witness((bx + by).to_string(), second_rhs.to_string()));
    Ok(Trial::Checked { first, second })
}

/// Smallest scanned `n` from which `pass(n)` holds for every larger scanned `n`.
pub fn empirical_threshold(ns: impl IntoIterator<Item = u32>, mut pass: impl FnMut(u32) -> bool) -> Option<u32> {
    let mut threshold = None;
    for n in ns {
        if pass(n) {
            threshold.get_or_insert(n);
        } else {
            threshold = None;
        }
    }
    threshold
}

/// Like [`s`] but as a report value, for symmetry with `s_ho`.
pub fn s_value(n: u32) -> ValueBound {
    ValueBound::exact(s(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oracle(m: u32, t: u32) -> ValueBound {
        // small packing numbers, t = 1
        assert_eq!(t, 1);
        ValueBound::exact([0, 0, 0, 1, 1, 2, 4, 7, 8, 12, 13, 17, 20][m as usize])
    }

    #[test]
    fn examples() {
        let p = PackingProvider::default();
        assert_eq!(s_ho(21, 1, &p).unwrap(), ValueBound::exact(364));
        assert_eq!(s_ho(9, 0, &p).unwrap(), ValueBound::exact(27));
        assert_eq!(s_ho(12, 1, &oracle).unwrap(), ValueBound::exact(67));
        assert_eq!(closed_form_corollary(21, 1).unwrap(), 364);
        assert_eq!(closed_form_corollary(21, 0).unwrap(), 343);
        assert!(closed_form_corollary(20, 1).is_err());
        assert_eq!(partition_profile_value([3, 4, 5], 1, &oracle), ValueBound::exact(64));
        assert_eq!(partition_profile_value([4, 4, 4], 1, &oracle), ValueBound::exact(67));
        assert_eq!(partition_profile_value([10, 0, 0], 1, &oracle), ValueBound::exact(13));
    }

    #[test]
    fn symmetric_point() {
        let v = f_symmetric(30, 1);
        assert_eq!(v, q(1050) - frac(13, 18) * q(30) + frac(8, 27) + frac(1, 3));
        for n in 4..60 {
            for t in 1..5 {
                let x = frac(n as i64 - t as i64, 3);
                assert_eq!(f_nt(t, [x; 3]), f_symmetric(n, t));
            }
        }
    }

    #[test]
    fn scan_at_twelve() {
        let r = balanced_optimality_scan(12, 1, &oracle);
        assert_eq!(r.value, Some(ValueBound::exact(67)));
        assert_eq!(r.outcome_of(BALANCED_MAX), Some(Outcome::Pass));
        let row = r.rows.iter().find(|r| r.check == "3-4-5").unwrap();
        assert_eq!(row.value_lo, "64");
        assert!(r.to_csv().starts_with("n,t,value_lo,value_hi,check,pass\n"));
    }

    #[test]
    fn zero_interval_contains_s() {
        for n in 3..=100 {
            let (lo, hi) = sho_interval(n, 0);
            assert!(lo <= q(s(n)) && q(s(n)) <= hi, "n = {n}");
        }
    }

    #[test]
    fn threshold() {
        assert_eq!(empirical_threshold(1..=6, |n| n != 3), Some(4));
        assert_eq!(empirical_threshold(1..=3, |n| n != 3), None);
    }
}
