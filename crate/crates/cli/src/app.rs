//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::io;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use semigroup_census::closed::{
    bounds_from_count, f_gamma_by_closed_sets, f_gamma_by_direct_census, f_gamma_by_fibers, RouteCaps,
};
use semigroup_census::tree::{self, TreeConfig};
use semigroup_census::{Error, StratumRow};
use thiserror::Error;

use crate::cache::{Cache, CacheError, CensusRecord};
use crate::ratios::{ratio_rows, two_decimals, PHI_SQUARED};
use crate::render::{Cell, Format, Table};
use crate::verify::Verifier;

#[derive(Debug, Parser)]
#[command(name = "sgcensus", version, about = "Census of numerical semigroups by genus and even gaps")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Census cache file (append-only).
    #[arg(long, global = true, env = "SGCENSUS_CACHE")]
    pub cache: Option<PathBuf>,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,
    /// Abort after visiting this many tree nodes.
    #[arg(long, global = true, value_name = "NODES")]
    pub budget: Option<u64>,
    /// Largest gamma for the direct census route.
    #[arg(long, global = true, default_value_t = RouteCaps::default().direct)]
    pub direct_cap: u32,
    /// Largest gamma for the closed-set route.
    #[arg(long, global = true, default_value_t = RouteCaps::default().closed_sets)]
    pub closed_sets_cap: u32,
    /// Largest gamma for the fiber route.
    #[arg(long, global = true, default_value_t = RouteCaps::default().fibers)]
    pub fibers_cap: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number of semigroups of each genus.
    Ng {
        #[arg(long, default_value_t = 20)]
        max_genus: u32,
    },
    /// Counts by genus and number of even gaps.
    Strata {
        #[arg(long, default_value_t = 20)]
        max_genus: u32,
    },
    /// f_gamma by one or all routes.
    Fgamma {
        #[arg(long, default_value_t = 9)]
        max_gamma: u32,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
    },
    /// Lower and upper bounds for f_gamma.
    Bounds {
        #[arg(long, default_value_t = 14)]
        max_gamma: u32,
    },
    /// Growth ratios of f_gamma.
    Ratios {
        #[arg(long, default_value_t = 14)]
        max_gamma: u32,
    },
    /// Run every invariant check.
    Verify {
        #[arg(long, default_value_t = 14)]
        max_genus: u32,
        #[arg(long, default_value_t = 6)]
        max_gamma: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Direct,
    ClosedSets,
    Fibers,
    All,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Cache(#[from] CacheError),
    #[error("invariant violated: {0}")]
    Invariant(String),
    /// The full report goes to stdout, the summary to stderr.
    #[error("invariant violated: {summary}")]
    VerifyFailed { report: String, summary: String },
    #[error(transparent)]
    Core(#[from] Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invariant(_) | CliError::VerifyFailed { .. } | CliError::Core(Error::CountOverflow) => 2,
            CliError::Cache(_) => 3,
            CliError::Core(Error::BudgetExceeded { .. } | Error::RouteCapExceeded { .. }) => 4,
            CliError::Core(_) | CliError::Io(_) => 1,
        }
    }
}

pub struct Context {
    pub format: Format,
    pub config: TreeConfig,
    pub caps: RouteCaps,
    pub cache: Option<Cache>,
}

impl Context {
    pub fn new(global: &Global) -> Result<Self, CliError> {
        let mut config = TreeConfig::default().with_workers(global.workers);
        if let Some(b) = global.budget {
            config = config.with_budget(b);
        }
        let caps = RouteCaps {
            direct: global.direct_cap,
            closed_sets: global.closed_sets_cap,
            fibers: global.fibers_cap,
        };
        let cache = global.cache.as_ref().map(Cache::open).transpose()?;
        Ok(Context { format: global.format, config, caps, cache })
    }

    fn workers(&self) -> usize {
        match self.config.workers {
            0 => std::thread::available_parallelism().map_or(1, |n| n.get()),
            n => n,
        }
    }

    /// Rows `0..=max_genus`, from the cache when complete, otherwise counted
    /// and appended.
    pub fn rows(&mut self, max_genus: u32) -> Result<Vec<StratumRow>, CliError> {
        if let Some(rows) = self.cache.as_ref().and_then(|c| c.rows_up_to(max_genus)) {
            return Ok(rows);
        }
        let start = Instant::now();
        let rows = tree::stratum_rows(max_genus, &self.config)?;
        let seconds = start.elapsed().as_secs_f64();
        let workers = self.workers();
        if let Some(cache) = self.cache.as_mut() {
            for row in &rows {
                cache.insert(CensusRecord::new(row, seconds, workers))?;
            }
        }
        Ok(rows)
    }
}

pub fn ng(ctx: &mut Context, max_genus: u32) -> Result<Table, CliError> {
    let mut t = Table::new(["genus", "n"]);
    for r in ctx.rows(max_genus)? {
        t.push(vec![Cell::Int(r.genus as u64), Cell::Int(r.total)]);
    }
    Ok(t)
}

pub fn strata(ctx: &mut Context, max_genus: u32) -> Result<Table, CliError> {
    let width = 2 * max_genus / 3 + 1;
    let columns = std::iter::once("genus".to_string())
        .chain((0..width).map(|c| format!("gamma{c}")))
        .chain(["total".to_string()]);
    let mut t = Table::new(columns);
    for r in ctx.rows(max_genus)? {
        let mut row = vec![Cell::Int(r.genus as u64)];
        row.extend((0..width as usize).map(|c| r.counts.get(c).copied().into()));
        row.push(Cell::Int(r.total));
        t.push(row);
    }
    Ok(t)
}

type Route = fn(u32, &RouteCaps, &TreeConfig) -> Result<u64, Error>;

const ROUTES: [(&str, Route); 3] = [
    ("direct", f_gamma_by_direct_census),
    ("closed_sets", f_gamma_by_closed_sets),
    ("fibers", f_gamma_by_fibers),
];

fn within(caps: &RouteCaps, route: &str, gamma: u32) -> bool {
    gamma
        <= match route {
            "direct" => caps.direct,
            "closed_sets" => caps.closed_sets,
            _ => caps.fibers,
        }
}

fn f_values(ctx: &Context, max_gamma: u32) -> Result<Vec<u64>, CliError> {
    (0..=max_gamma).map(|g| Ok(f_gamma_by_closed_sets(g, &ctx.caps, &ctx.config)?)).collect()
}

pub fn fgamma(ctx: &mut Context, max_gamma: u32, method: Method) -> Result<Table, CliError> {
    let single = match method {
        Method::Direct => Some(0),
        Method::ClosedSets => Some(1),
        Method::Fibers => Some(2),
        Method::All => None,
    };
    if let Some(i) = single {
        let mut t = Table::new(["gamma", "f"]);
        for gamma in 0..=max_gamma {
            t.push(vec![Cell::Int(gamma as u64), Cell::Int(ROUTES[i].1(gamma, &ctx.caps, &ctx.config)?)]);
        }
        return Ok(t);
    }
    let mut t = Table::new(["gamma", "direct", "closed_sets", "fibers", "f"]);
    for gamma in 0..=max_gamma {
        let mut values = Vec::new();
        for (name, route) in ROUTES {
            values.push(if within(&ctx.caps, name, gamma) { Some(route(gamma, &ctx.caps, &ctx.config)?) } else { None });
        }
        let known: Vec<u64> = values.iter().flatten().copied().collect();
        let Some(&f) = known.first() else {
            return Err(Error::RouteCapExceeded { route: "closed-sets", gamma, cap: ctx.caps.closed_sets }.into());
        };
        if known.iter().any(|&v| v != f) {
            return Err(CliError::Invariant(format!("routes disagree at gamma {gamma}: {values:?}")));
        }
        let mut row = vec![Cell::Int(gamma as u64)];
        row.extend(values.into_iter().map(Cell::from));
        row.push(Cell::Int(f));
        t.push(row);
    }
    Ok(t)
}

pub fn bounds(ctx: &mut Context, max_gamma: u32) -> Result<Table, CliError> {
    let rows = ctx.rows(max_gamma)?;
    let mut t = Table::new(["gamma", "n", "c1", "f", "c2"]);
    for gamma in 0..=max_gamma {
        let n = rows[gamma as usize].total;
        let b = bounds_from_count(gamma, n)?;
        let f = (gamma <= ctx.caps.closed_sets)
            .then(|| f_gamma_by_closed_sets(gamma, &ctx.caps, &ctx.config))
            .transpose()?;
        if let Some(f) = f.filter(|&f| !b.contains(f)) {
            return Err(CliError::Invariant(format!("f_{gamma} = {f} outside [{}, {}]", b.c1, b.c2)));
        }
        t.push(vec![Cell::Int(gamma as u64), Cell::Int(n), Cell::Int(b.c1), f.into(), Cell::Int(b.c2)]);
    }
    Ok(t)
}

pub fn ratios(ctx: &mut Context, max_gamma: u32) -> Result<Table, CliError> {
    let f = f_values(ctx, max_gamma)?;
    let rows = ctx.rows(2 * max_gamma)?;
    let n2g: Vec<u64> = (0..=max_gamma as usize).map(|g| rows[2 * g].total).collect();
    let mut t = Table::new(["gamma", "f", "n2g", "ratio_prev", "ratio_n", "ratio_partial_sum"]);
    let text = |r: Option<_>| r.map_or(Cell::Blank, |r| Cell::Text(two_decimals(r)));
    for r in ratio_rows(&f, &n2g) {
        t.push(vec![
            Cell::Int(r.gamma as u64),
            Cell::Int(r.f),
            Cell::Int(r.n2g),
            text(r.ratio_prev),
            text(Some(r.ratio_n)),
            text(r.ratio_partial_sum),
        ]);
    }
    t.notes.push(format!("reference: phi^2 = {PHI_SQUARED:.3}"));
    Ok(t)
}

pub fn verify(ctx: &mut Context, max_genus: u32, max_gamma: u32) -> Result<Table, CliError> {
    let rows = ctx.rows(max_genus.max(3 * max_gamma))?;
    let verifier = Verifier { max_genus, max_gamma, config: &ctx.config, caps: &ctx.caps, rows: &rows };
    let outcomes = verifier.run()?;
    let mut t = Table::new(["check", "status", "detail"]);
    for o in &outcomes {
        let status = match (o.passed(), &o.note) {
            (false, _) => "FAIL",
            (true, None) => "pass",
            (true, Some(_)) => "pass (note)",
        };
        let detail = o.failure.clone().or_else(|| o.note.clone()).map_or(Cell::Blank, Cell::Text);
        t.push(vec![Cell::Text(o.name.into()), Cell::Text(status.into()), detail]);
    }
    if let Some(bad) = outcomes.iter().find(|o| !o.passed()) {
        let summary = format!("{}: {}", bad.name, bad.failure.as_deref().unwrap());
        return Err(CliError::VerifyFailed { report: t.render(ctx.format), summary });
    }
    Ok(t)
}

pub fn execute(cli: &Cli) -> Result<String, CliError> {
    let mut ctx = Context::new(&cli.global)?;
    let table = match cli.command {
        Command::Ng { max_genus } => ng(&mut ctx, max_genus)?,
        Command::Strata { max_genus } => strata(&mut ctx, max_genus)?,
        Command::Fgamma { max_gamma, method } => fgamma(&mut ctx, max_gamma, method)?,
        Command::Bounds { max_gamma } => bounds(&mut ctx, max_gamma)?,
        Command::Ratios { max_gamma } => ratios(&mut ctx, max_gamma)?,
        Command::Verify { max_genus, max_gamma } => verify(&mut ctx, max_genus, max_gamma)?,
    };
    Ok(table.render(ctx.format))
}

/// Parses `args`, runs the command, and returns `(stdout, stderr, exit code)`.
pub fn run<I, T>(args: I) -> (String, String, u8)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { (text, String::new(), 0) } else { (String::new(), text, 1) };
        }
    };
    match execute(&cli) {
        Ok(out) => (out, String::new(), 0),
        Err(CliError::VerifyFailed { report, summary }) => (report, format!("sgcensus: invariant violated: {summary}\n"), 2),
        Err(e) => (String::new(), format!("sgcensus: {e}\n"), e.exit_code()),
    }
}
