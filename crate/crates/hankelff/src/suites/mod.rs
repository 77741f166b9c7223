//! The reconciliation suites. Each takes a [`RunConfig`], enumerates or
//! samples its parameter space on the worker pool and returns a
//! [`Report`]; rows and failures come out in a fixed order, whatever the
//! worker count.

use hankelff_core::census::CensusQuery;
use hankelff_core::ffield::Field;
use hankelff_core::hankel::SymbolSeq;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::cache::CacheError;
use crate::config::{Command, RunConfig, SpanArg};
use crate::pool;
use crate::report::{row, Report};

mod census;
mod converse;
mod euclid;
mod expsum;
mod extension;
mod kernel;
mod variance;

pub use census::census;
pub use converse::converse;
pub use euclid::euclid;
pub use expsum::expsum;
pub use extension::extension;
pub use kernel::kernel;
pub use variance::variance;

/// Failure messages kept per check; the rest are only counted.
pub const MAX_LISTED: usize = 10;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("bad flag: {0}")]
    BadFlag(String),
    #[error("{what} needs {needed} evaluations, over the budget of {budget}")]
    BudgetExceeded { what: String, needed: u128, budget: u128 },
    #[error(transparent)]
    Cache(#[from] CacheError),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

pub(crate) fn field_of(cfg: &RunConfig) -> Result<Field, RunError> {
    cfg.field.build().map_err(|e| RunError::BadFlag(e.to_string()))
}

pub(crate) fn require_prime(field: &Field, what: &str) -> Result<u32, RunError> {
    if !field.is_prime_field() {
        return Err(RunError::BadFlag(format!("{what} is defined over prime fields only (use --e 1)")));
    }
    Ok(field.characteristic())
}

pub(crate) fn within_budget(cfg: &RunConfig, what: impl Into<String>, needed: u128) -> Result<(), RunError> {
    if needed > cfg.budget {
        return Err(RunError::BudgetExceeded { what: what.into(), needed, budget: cfg.budget });
    }
    Ok(())
}

/// `n` from the flags, or the suite's default range.
pub(crate) fn degrees(cfg: &RunConfig, default: SpanArg) -> SpanArg {
    cfg.n.unwrap_or(default)
}

/// The sequences of degree `n` a check runs over: all of `F_q^{n+1}`, or a
/// seeded uniform sample when `--sample` is given.
pub(crate) enum Source {
    All { n: usize, size: u64 },
    Sampled(Vec<SymbolSeq>),
}

impl Source {
    pub fn new(cfg: &RunConfig, field: &Field, n: usize, what: &str) -> Result<Source, RunError> {
        if let Some(k) = cfg.sample {
            // the stream depends only on seed, field and degree
            let stream = cfg.seed ^ ((field.order() as u64) << 40) ^ ((n as u64) << 20);
            let mut rng = ChaCha8Rng::seed_from_u64(stream);
            let seqs = (0..k)
                .map(|_| SymbolSeq::new((0..=n).map(|_| field.elem(rng.gen_range(0..field.order())).expect("code below q")).collect()))
                .collect();
            return Ok(Source::Sampled(seqs));
        }
        let size = CensusQuery::new(n, 0).size(field);
        within_budget(cfg, format!("{what} over all sequences of degree {n}"), size)?;
        Ok(Source::All { n, size: size as u64 })
    }

    pub fn len(&self) -> u64 {
        match self {
            Source::All { size, .. } => *size,
            Source::Sampled(v) => v.len() as u64,
        }
    }

    pub fn get(&self, field: &Field, i: u64) -> SymbolSeq {
        match self {
            Source::All { n, .. } => CensusQuery::new(*n, 0).sequence(field, i),
            Source::Sampled(v) => v[i as usize].clone(),
        }
    }

    pub fn mode(&self) -> &'static str {
        match self {
            Source::All { .. } => "exhaustive",
            Source::Sampled(_) => "sampled",
        }
    }
}

/// Something gathered per range of a sweep and merged in range order.
pub(crate) trait Tally: Default + Send {
    fn merge(&mut self, later: Self);
}

/// Visits every sequence of `src` on the pool.
pub(crate) fn sweep<T, F>(jobs: usize, field: &Field, src: &Source, visit: F) -> T
where
    T: Tally,
    F: Fn(&mut T, &SymbolSeq) + Sync,
{
    pool::fold_ranges(
        jobs,
        src.len(),
        |range| {
            let mut acc = T::default();
            for i in range {
                visit(&mut acc, &src.get(field, i));
            }
            acc
        },
        |a, b| a.merge(b),
    )
    .unwrap_or_default()
}

/// Failure messages with a cap on how many are kept.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub(crate) struct Failures {
    pub count: u64,
    pub listed: Vec<String>,
}

impl Failures {
    pub fn push(&mut self, msg: impl FnOnce() -> String) {
        self.count += 1;
        if self.listed.len() < MAX_LISTED {
            self.listed.push(msg());
        }
    }

    pub fn merge(&mut self, later: Failures) {
        self.count += later.count;
        let room = MAX_LISTED - self.listed.len();
        self.listed.extend(later.listed.into_iter().take(room));
    }

    /// Moves the messages into a report, with a note for the unlisted rest.
    pub fn drain_into(self, report: &mut Report, context: &str) {
        let listed = self.listed.len() as u64;
        for m in self.listed {
            report.failures.push(format!("{context}: {m}"));
        }
        if self.count > listed {
            report.failures.push(format!("{context}: {} more failures not listed", self.count - listed));
        }
    }
}

/// Runs the configured command.
pub fn run(cfg: &RunConfig) -> Result<Report, RunError> {
    match cfg.command {
        Command::Variance => variance(cfg),
        Command::Census => census(cfg),
        Command::Kernel => kernel(cfg),
        Command::Converse => converse(cfg),
        Command::Extension => extension(cfg),
        Command::Euclid => euclid(cfg),
        Command::Expsum => expsum(cfg),
        Command::All => all(cfg),
    }
}

/// Every suite with the same flags. Suites that need a prime field are
/// skipped, with a note, over extension fields.
pub fn all(cfg: &RunConfig) -> Result<Report, RunError> {
    let field = field_of(cfg)?;
    let mut report = Report::new("all", cfg.params());
    type Suite = fn(&RunConfig) -> Result<Report, RunError>;
    let suites: [(Command, Suite); 7] = [
        (Command::Variance, variance),
        (Command::Census, census),
        (Command::Kernel, kernel),
        (Command::Converse, converse),
        (Command::Extension, extension),
        (Command::Euclid, euclid),
        (Command::Expsum, expsum),
    ];
    for (cmd, suite) in suites {
        let name = cmd.name();
        if matches!(cmd, Command::Variance | Command::Expsum) && !field.is_prime_field() {
            report.informational.push(json!({ "suite": name, "note": "skipped: needs a prime field" }));
            continue;
        }
        let sub = suite(&RunConfig { command: cmd, ..cfg.clone() })?;
        report.rows.push(row(json!({
            "suite": name,
            "rows": sub.rows.len(),
            "informational": sub.informational.len(),
            "failures": sub.failures.len(),
            "match": sub.passed(),
        })));
        report.informational.extend(sub.informational.into_iter().map(|v| json!({ "suite": name, "entry": v })));
        report.failures.extend(sub.failures.into_iter().map(|f| format!("{name}: {f}")));
    }
    Ok(report)
}
