//! The subcommands. Each returns an exit code or an error carrying one.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use log::info;
use serde_json::{json, Value};

use turan3::canon::canonical_form;
use turan3::constructions::{
    balanced_sizes, make_complete_tripartite, make_decorated_tripartite, make_extremal, make_pattern, make_satellite, make_shat, s,
    satellite_count, Decoration, PatternTag,
};
use turan3::designs::{decompose_exact, verify_design, Decomposition, Design, ExF2tConfig, MultiplicityTarget};
use turan3::formulas::{
    balanced_optimality_scan, closed_form_corollary, corollary_check, s_ho, satellite_gap_check, sho_interval_check, FormulaReport,
    PackingProvider,
};
use turan3::io::{parse_h3, write_h3, write_p3};
use turan3::search::{best_partition, export_maxsat, turan_exact, PartitionConfig, SearchStatus, TuranConfig, DEFAULT_COPY_LIMIT};
use turan3::{contains_f5t, find_embedding, Containment, ForbiddenFamily, Hypergraph3, Partition3};

use crate::config::{Format, RunConfig};
use crate::verify::{overall, run_suite, Context, Status, Suite};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FOUND: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<turan3::Error> for Failure {
    fn from(e: turan3::Error) -> Self {
        let code = match e {
            turan3::Error::BudgetExhausted(_) => EXIT_BUDGET,
            turan3::Error::Infeasible(_) => EXIT_FOUND,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<crate::config::UsageError> for Failure {
    fn from(e: crate::config::UsageError) -> Self {
        Failure::usage(e.0)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_FOUND,
            message: format!("i/o error: {e}"),
        }
    }
}

pub type Outcome = Result<u8, Failure>;

fn read_host(path: &Path) -> Result<Hypergraph3, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    parse_h3(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, text)?;
    info!("wrote {}", path.display());
    Ok(())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn packing(cfg: &RunConfig) -> ExF2tConfig {
    ExF2tConfig {
        exact_max_m: cfg.ex_f2t_max_m,
        ..ExF2tConfig::default()
    }
}

pub fn parse_list(s: &str) -> Result<Vec<u32>, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|w| !w.is_empty())
        .map(|w| w.parse().map_err(|_| Failure::usage(format!("not a vertex label: `{w}`"))))
        .collect()
}

/// `"1-2,3-4"` into pairs.
pub fn parse_pairs(s: &str) -> Result<Vec<(u32, u32)>, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|w| !w.is_empty())
        .map(|w| {
            let bad = || Failure::usage(format!("expected a pair `u-v`, got `{w}`"));
            let (a, b) = w.split_once('-').ok_or_else(bad)?;
            Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
        })
        .collect()
}

pub struct Construct {
    pub family: String,
    pub n: Option<u32>,
    pub t: u32,
    pub sizes: Option<String>,
    pub pattern: Option<String>,
}

struct Built {
    hypergraph: Hypergraph3,
    partition: Option<Partition3>,
    predicted: Value,
    certification: Value,
}

fn need_n(n: Option<u32>, family: &str) -> Result<u32, Failure> {
    n.ok_or_else(|| Failure::usage(format!("family `{family}` needs --n")))
}

fn build(c: &Construct, cfg: &RunConfig) -> Result<Built, Failure> {
    let family = c.family.as_str();
    let built = match family {
        "tripartite" | "inner-triple" | "two-plus-one" | "pendant-vertex" => {
            let n = need_n(c.n, family)?;
            let d = if family == "tripartite" {
                make_complete_tripartite(n)?
            } else {
                make_decorated_tripartite(n, family.parse::<Decoration>()?)?
            };
            let predicted = if family == "pendant-vertex" { s(n - 1) + 1 } else { s(n) + (family != "tripartite") as i64 };
            Built {
                certification: json!({"decoration": d.decoration, "special": d.special}),
                hypergraph: d.hypergraph,
                partition: Some(d.partition),
                predicted: json!(predicted),
            }
        }
        "satellite" => {
            let n = need_n(c.n, family)?;
            if n < c.t {
                return Err(Failure::usage("satellite needs n >= t"));
            }
            let sizes = match &c.sizes {
                Some(text) => {
                    let v = parse_list(text)?;
                    <[u32; 3]>::try_from(v).map_err(|_| Failure::usage("--sizes takes three numbers a,b,c"))?
                }
                None => balanced_sizes(n - c.t),
            };
            let sat = make_satellite(n, c.t, sizes)?;
            Built {
                certification: json!({"tower": sat.tower, "sizes": sizes}),
                hypergraph: sat.hypergraph,
                partition: Some(sat.partition),
                predicted: json!(satellite_count(c.t, sizes)),
            }
        }
        "shat" => {
            let n = need_n(c.n, family)?;
            let sh = make_shat(n)?;
            Built {
                predicted: json!(s(n - 1) + sh.hypergraph.degree(sh.apex)? as i64),
                certification: json!({"apex": sh.apex, "c4_free": sh.c4_free}),
                hypergraph: sh.hypergraph,
                partition: Some(sh.partition),
            }
        }
        "extremal" => {
            let n = need_n(c.n, family)?;
            let h = make_extremal(n, c.t, &packing(cfg))?;
            let inner: Vec<Value> = h
                .inner
                .iter()
                .map(|b| json!({"value": b.value, "method": b.method}))
                .collect();
            Built {
                predicted: json!(h.value),
                certification: json!({"s_ho": h.value, "inner": inner}),
                hypergraph: h.hypergraph,
                partition: Some(h.partition),
            }
        }
        "pattern" => {
            let tag: PatternTag = c
                .pattern
                .as_deref()
                .ok_or_else(|| Failure::usage("family `pattern` needs --pattern"))?
                .parse()?;
            let h = make_pattern(tag, c.t);
            Built {
                predicted: json!(h.edge_count()),
                certification: json!({"pattern": format!("{tag:?}"), "t": c.t}),
                hypergraph: h,
                partition: None,
            }
        }
        _ => {
            return Err(Failure::usage(format!(
                "unknown family `{family}` (tripartite, inner-triple, two-plus-one, pendant-vertex, satellite, shat, extremal, pattern)"
            )))
        }
    };
    Ok(built)
}

pub fn construct(c: &Construct, cfg: &RunConfig) -> Outcome {
    let b = build(c, cfg)?;
    let h = &b.hypergraph;
    let key = if h.n() <= cfg.canon_max_n {
        Some(canonical_form(h)?.to_hex())
    } else {
        None
    };
    let mut header = vec![format!("family {} n {} t {}", c.family, h.n(), c.t), format!("edges {}", h.edge_count())];
    if let Some(k) = &key {
        header.push(format!("canonical {k}"));
    }
    let text = write_h3(h, &header);
    let Some(out) = &cfg.out else {
        print!("{text}");
        return Ok(EXIT_OK);
    };
    write_file(out, &text)?;
    if let Some(pi) = &b.partition {
        write_file(&out.with_extension("p3"), &write_p3(h.n(), pi))?;
    }
    let sidecar = json!({
        "family": c.family,
        "params": {"n": h.n(), "t": c.t, "sizes": c.sizes, "pattern": c.pattern},
        "edges": h.edge_count(),
        "predicted": b.predicted,
        "canonical_key": key,
        "certification": b.certification,
    });
    write_file(&out.with_extension("json"), &pretty(&sidecar))?;
    println!("{} edges written to {}", h.edge_count(), out.display());
    Ok(EXIT_OK)
}

pub fn check(host: &Path, pattern: &str, t: u32, cfg: &RunConfig) -> Outcome {
    let h = read_host(host)?;
    let spec = if matches!(pattern, "f5t" | "f2t") { format!("{pattern}:{t}") } else { pattern.to_string() };
    let family = ForbiddenFamily::parse(&spec)?;
    let [member] = family.members() else {
        return Err(Failure::usage("check takes a single pattern"));
    };
    let fast = match spec.as_str() {
        "f5" => Some(0),
        _ => spec.strip_prefix("f5t:").and_then(|k| k.parse().ok()),
    };
    let result = match fast {
        Some(k) => match contains_f5t(&h, k) {
            Some(e) => Containment::Found(e),
            None => Containment::Absent,
        },
        None => find_embedding(&h, &member.pattern, cfg.budget()),
    };
    Ok(match result {
        Containment::Found(e) => {
            println!("found {}: {}", member.label, json!(e.map));
            EXIT_FOUND
        }
        Containment::Absent => {
            println!("free of {}", member.label);
            EXIT_OK
        }
        Containment::Timeout => {
            println!("budget exhausted before deciding");
            EXIT_BUDGET
        }
    })
}

pub fn codegree(host: &Path, pair: Option<&str>, set: Option<&str>) -> Outcome {
    let h = read_host(host)?;
    let set = match set {
        Some(s) => Some(parse_list(s)?),
        None => None,
    };
    let report = match pair {
        Some(p) => {
            let v = parse_list(p)?;
            let [x, y] = v[..] else {
                return Err(Failure::usage("--pair takes two vertices x,y"));
            };
            let value = match &set {
                Some(s) => h.codegree(x, y, s)?,
                None => h.codegree_all(x, y)?,
            };
            json!({"pair": [x, y], "set": set, "codegree": value})
        }
        None => {
            let mut histogram = std::collections::BTreeMap::new();
            for x in 1..=h.n() {
                for y in x + 1..=h.n() {
                    let d = match &set {
                        Some(s) => h.codegree(x, y, s)?,
                        None => h.codegree_all(x, y)?,
                    };
                    *histogram.entry(d).or_insert(0u64) += 1;
                }
            }
            let max = histogram.keys().next_back().copied().unwrap_or(0);
            json!({"max_codegree": max, "histogram": histogram, "set": set})
        }
    };
    print!("{}", pretty(&report));
    Ok(EXIT_OK)
}

fn decompose_and_write(target: MultiplicityTarget, t: u32, cfg: &RunConfig) -> Outcome {
    match decompose_exact(&target, t, cfg.budget())? {
        Decomposition::Found(d) => {
            let check = verify_design(&d);
            let certificate = json!({
                "n": target.n(),
                "t": t,
                "target": target.describe(),
                "blocks": d.blocks.edge_count(),
                "verified": check.valid,
            });
            let text = write_h3(&d.blocks, &[format!("{t}-fold decomposition of {}", target.describe())]);
            match &cfg.out {
                Some(out) => {
                    write_file(out, &text)?;
                    write_file(&out.with_extension("json"), &pretty(&certificate))?;
                    println!("{} blocks written to {}", d.blocks.edge_count(), out.display());
                }
                None => print!("{text}"),
            }
            Ok(if check.valid { EXIT_OK } else { EXIT_FOUND })
        }
        Decomposition::Infeasible(why) => {
            println!("infeasible: {why}");
            Ok(EXIT_FOUND)
        }
        Decomposition::Timeout { nodes } => {
            println!("budget exhausted after {nodes} nodes");
            Ok(EXIT_BUDGET)
        }
    }
}

pub fn design(n: Option<u32>, t: u32, verify: Option<&Path>, cfg: &RunConfig) -> Outcome {
    if let Some(path) = verify {
        return verify_design_file(path, t, cfg);
    }
    let n = n.ok_or_else(|| Failure::usage("design needs --n or --verify"))?;
    decompose_and_write(MultiplicityTarget::complete(n), t, cfg)
}

fn verify_design_file(path: &Path, t: u32, cfg: &RunConfig) -> Outcome {
    let blocks = read_host(path)?;
    let n = blocks.n();
    let d = Design::new(blocks, t, MultiplicityTarget::complete(n))?;
    let check = verify_design(&d);
    if check.valid {
        println!("valid: every pair of [{n}] lies in exactly {t} blocks");
        return Ok(EXIT_OK);
    }
    for v in check.violations.iter().take(20) {
        println!("pair {} {}: expected {}, found {}", v.pair.0, v.pair.1, v.expected, v.found);
    }
    if check.violations.len() > 20 {
        println!("... {} violating pairs in total", check.violations.len());
    }
    let witness = cfg.out.clone().unwrap_or_else(|| path.with_extension("violations.json"));
    write_file(&witness, &pretty(&json!({"file": path, "n": n, "t": t, "violations": check.violations})))?;
    Ok(EXIT_FOUND)
}

pub fn decompose(n: u32, t: u32, remove: Option<&str>, cfg: &RunConfig) -> Outcome {
    let removed = match remove {
        Some(r) => parse_pairs(r)?,
        None => Vec::new(),
    };
    decompose_and_write(MultiplicityTarget::complete_minus(n, removed)?, t, cfg)
}

pub fn turan(n: u32, forbid: &str, wcnf: Option<&Path>, cfg: &RunConfig) -> Outcome {
    let family = ForbiddenFamily::parse(forbid)?;
    if let Some(path) = wcnf {
        let w = export_maxsat(n, &family, DEFAULT_COPY_LIMIT)?;
        write_file(path, &w.to_string())?;
    }
    let config = TuranConfig {
        budget: cfg.budget(),
        max_n: cfg.turan_max_n,
    };
    let out = turan_exact(n, &family, &config)?;
    let report = json!({
        "n": n,
        "family": family.to_string(),
        "status": out.status,
        "best": out.best,
        "upper": out.upper,
        "orders": out.orders,
        "stats": out.stats,
        "witness": write_h3(&out.witness, &[]),
    });
    if let Some(path) = &cfg.out {
        write_file(path, &write_h3(&out.witness, &[format!("ex({n}, {family}) >= {}", out.best)]))?;
    }
    print!("{}", pretty(&report));
    Ok(if out.status == SearchStatus::Optimal { EXIT_OK } else { EXIT_BUDGET })
}

pub fn partition(host: &Path, cfg: &RunConfig) -> Outcome {
    let h = read_host(host)?;
    let config = PartitionConfig {
        budget: cfg.budget(),
        exact_max_n: cfg.partition_max_n,
        seed: cfg.seed,
        ..PartitionConfig::default()
    };
    let r = best_partition(&h, &config);
    if let Some(path) = &cfg.out {
        write_file(path, &write_p3(h.n(), &r.partition))?;
    }
    print!(
        "{}",
        pretty(&json!({"crossing": r.crossing, "exact": r.exact, "partition": r.partition.parts(), "edges": h.edge_count()}))
    );
    Ok(EXIT_OK)
}

pub fn formulas(n: u32, t: u32, cfg: &RunConfig) -> Outcome {
    let provider = PackingProvider::new(packing(cfg));
    let mut reports: Vec<FormulaReport> = Vec::new();
    if closed_form_corollary(n, t).is_ok() {
        reports.push(corollary_check(n, t, &provider)?);
    }
    reports.push(sho_interval_check(n, t, &provider)?);
    reports.push(balanced_optimality_scan(n, t, &provider));
    if t >= 1 && n >= t + 3 {
        reports.push(satellite_gap_check(n, t, &provider)?);
    }
    let text = match cfg.format {
        Format::Csv => {
            let mut out = String::from("n,t,value_lo,value_hi,check,pass\n");
            for r in &reports {
                out.extend(r.to_csv().lines().skip(1).map(|l| format!("{l}\n")));
            }
            out
        }
        Format::Json => pretty(&json!({"n": n, "t": t, "s_ho": s_ho(n, t, &provider)?, "reports": reports})),
        Format::Text => {
            let mut out = format!("s_ho({n}, {t}) = {}\n", s_ho(n, t, &provider)?);
            for r in &reports {
                for c in &r.checks {
                    out.push_str(&format!("{}: {} ({})\n", r.name, c.assertion, c.outcome.as_str()));
                }
            }
            out
        }
    };
    match &cfg.out {
        Some(path) => write_file(path, &text)?,
        None => print!("{text}"),
    }
    let failed = reports.iter().any(|r| !r.passed());
    Ok(if failed { EXIT_FOUND } else { EXIT_OK })
}

pub fn verify(suite: Suite, cfg: &RunConfig) -> Outcome {
    let dir: PathBuf = cfg.out.clone().unwrap_or_else(|| PathBuf::from("."));
    let cx = Context::from_config(cfg);
    let criteria = run_suite(suite, &cx);
    let status = overall(&criteria);
    for c in &criteria {
        println!("criterion {:>2}: {:<6} {} ({})", c.id, c.status.as_str(), c.title, c.summary);
    }
    let report = json!({
        "artifact": "turan3-verify",
        "version": env!("CARGO_PKG_VERSION"),
        "suite": suite.name(),
        "seed": cfg.seed,
        "config": cfg.report_view(),
        "criteria": criteria,
        "status": status,
    });
    fs::create_dir_all(&dir)?;
    write_file(&dir.join(format!("verify-{}.json", suite.name())), &pretty(&report))?;
    let scans: String = criteria.iter().filter_map(|c| c.csv.clone()).collect();
    if !scans.is_empty() {
        write_file(&dir.join(format!("verify-{}-scans.csv", suite.name())), &scans)?;
    }
    let failing: Vec<_> = criteria.iter().filter(|c| c.status != Status::Pass).collect();
    if !failing.is_empty() {
        write_file(&dir.join(format!("verify-{}-witness.json", suite.name())), &pretty(&json!(failing)))?;
    }
    println!("overall: {}", status.as_str());
    Ok(status.exit_code())
}
