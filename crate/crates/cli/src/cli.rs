//! Argument parsing and dispatch.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use log::{error, info};

use crate::commands::{self, Construct, Failure, Outcome, EXIT_USAGE};
use crate::config::{Format, RunConfig, UsageError};
use crate::verify::Suite;

#[derive(Parser, Debug)]
#[command(name = "turan3", version, about = "Generalized triangles in 3-uniform hypergraphs")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

/// Settings shared by every command. Flags override `--config`, which
/// overrides the defaults.
#[derive(Args, Debug, Default)]
pub struct Global {
    /// File of `key = value` lines.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Wall-clock limit, e.g. `30s` or `1.5`.
    #[arg(long, global = true)]
    pub budget: Option<String>,
    /// Node limit per search.
    #[arg(long, global = true)]
    pub budget_nodes: Option<u64>,
    #[arg(long, global = true)]
    pub canon_max_n: Option<u32>,
    #[arg(long, global = true)]
    pub ex_f2t_max_m: Option<u32>,
    #[arg(long, global = true)]
    pub turan_max_n: Option<u32>,
    #[arg(long, global = true)]
    pub partition_max_n: Option<u32>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub format: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a named construction.
    Construct {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, default_value_t = 0)]
        t: u32,
        /// Part sizes `a,b,c` for satellites.
        #[arg(long)]
        sizes: Option<String>,
        #[arg(long)]
        pattern: Option<String>,
    },
    /// Test a host for a copy of a pattern.
    Check {
        #[arg(long)]
        host: PathBuf,
        /// `f5t`, `f2t`, `f5`, `k4minus`, `f5prime`, `fhat` or `file:<path>`.
        #[arg(long)]
        pattern: String,
        #[arg(long, default_value_t = 0)]
        t: u32,
    },
    /// Pair codegrees of a host.
    Codegree {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        pair: Option<String>,
        #[arg(long)]
        set: Option<String>,
    },
    /// Decompose `t·K_n` into triangles, or check a decomposition.
    Design {
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, default_value_t = 1)]
        t: u32,
        #[arg(long)]
        verify: Option<PathBuf>,
    },
    /// Decompose `t·(K_n − removed pairs)` into triangles.
    Decompose {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        t: u32,
        /// Pairs `u-v`, comma separated.
        #[arg(long)]
        remove: Option<String>,
    },
    /// Exact Turán number at a small order.
    Turan {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        forbid: String,
        #[arg(long)]
        export_wcnf: Option<PathBuf>,
    },
    /// Partition maximising crossing edges.
    Partition {
        #[arg(long)]
        host: PathBuf,
    },
    /// Evaluate the formulas around `s_ho(n, t)`.
    Formulas {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        t: u32,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Run a suite of checks and write a report.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Construct { .. } => "construct",
            Command::Check { .. } => "check",
            Command::Codegree { .. } => "codegree",
            Command::Design { .. } => "design",
            Command::Decompose { .. } => "decompose",
            Command::Turan { .. } => "turan",
            Command::Partition { .. } => "partition",
            Command::Formulas { .. } => "formulas",
            Command::Verify { .. } => "verify",
        }
    }
}

pub fn effective_config(cli: &Cli) -> Result<RunConfig, UsageError> {
    let g = &cli.global;
    let mut c = RunConfig::defaults(cli.command.name());
    if let Command::Formulas { json, csv, .. } = &cli.command {
        if *csv {
            c.format = Format::Csv;
        } else if *json {
            c.format = Format::Json;
        }
    }
    if let Some(path) = &g.config {
        c.load_file(path)?;
    }
    let flags = [
        ("seed", g.seed.map(|v| v.to_string())),
        ("threads", g.threads.map(|v| v.to_string())),
        ("budget", g.budget.clone()),
        ("budget_nodes", g.budget_nodes.map(|v| v.to_string())),
        ("canon_max_n", g.canon_max_n.map(|v| v.to_string())),
        ("ex_f2t_max_m", g.ex_f2t_max_m.map(|v| v.to_string())),
        ("turan_max_n", g.turan_max_n.map(|v| v.to_string())),
        ("partition_max_n", g.partition_max_n.map(|v| v.to_string())),
        ("out", g.out.as_ref().map(|p| p.display().to_string())),
        ("format", g.format.clone()),
    ];
    for (key, value) in flags {
        if let Some(v) = value {
            c.set(key, &v)?;
        }
    }
    c.validate()?;
    Ok(c)
}

fn dispatch(cli: &Cli, cfg: &RunConfig) -> Outcome {
    match &cli.command {
        Command::Construct {
            family,
            n,
            t,
            sizes,
            pattern,
        } => commands::construct(
            &Construct {
                family: family.clone(),
                n: *n,
                t: *t,
                sizes: sizes.clone(),
                pattern: pattern.clone(),
            },
            cfg,
        ),
        Command::Check { host, pattern, t } => commands::check(host, pattern, *t, cfg),
        Command::Codegree { host, pair, set } => commands::codegree(host, pair.as_deref(), set.as_deref()),
        Command::Design { n, t, verify } => commands::design(*n, *t, verify.as_deref(), cfg),
        Command::Decompose { n, t, remove } => commands::decompose(*n, *t, remove.as_deref(), cfg),
        Command::Turan { n, forbid, export_wcnf } => commands::turan(*n, forbid, export_wcnf.as_deref(), cfg),
        Command::Partition { host } => commands::partition(host, cfg),
        Command::Formulas { n, t, .. } => commands::formulas(*n, *t, cfg),
        Command::Verify { suite } => {
            let suite: Suite = suite.parse().map_err(Failure::usage)?;
            commands::verify(suite, cfg)
        }
    }
}

/// Parses `args`, runs the command on a pool of `threads` workers and
/// returns the process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    let cfg = match effective_config(&cli) {
        Ok(c) => c,
        Err(e) => {
            error!("{e}");
            return EXIT_USAGE;
        }
    };
    info!("effective config: {}", serde_json::to_string(&cfg).unwrap_or_default());
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cfg.threads).build() {
        Ok(p) => p,
        Err(e) => {
            error!("cannot start {} workers: {e}", cfg.threads);
            return EXIT_USAGE;
        }
    };
    match pool.install(|| dispatch(&cli, &cfg)) {
        Ok(code) => code,
        Err(Failure { code, message }) => {
            error!("{message}");
            code
        }
    }
}
