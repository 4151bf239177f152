//! Verification suites. Each suite is a list of named checks with JSON witnesses.

mod bounds;
mod coherence;
mod jankov;
mod kt;
mod paths;
mod s4t;
mod sufficiency;
mod unfolding;

use crate::error::{Error, Result};
use crate::frame::{Frame, GeneralFrame};
use crate::semantics::eval::{Enumeration, Machine, Program};
use serde::Serialize;
use serde_json::Value;
use std::time::Instant;

pub const SUITES: [&str; 8] = [
    "facts-bounds",
    "delta-paths",
    "jankov-theorem",
    "unfolding",
    "kt-section4",
    "s4t-section5",
    "sufficiency",
    "coherence",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Budget,
    /// Reported for context; does not affect the verdict.
    Info,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub detail: Value,
}

impl Check {
    pub fn new(id: impl Into<String>, ok: bool, detail: Value) -> Check {
        Check { id: id.into(), status: if ok { Status::Pass } else { Status::Fail }, detail }
    }

    pub fn info(id: impl Into<String>, detail: Value) -> Check {
        Check { id: id.into(), status: Status::Info, detail }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub seed: u64,
    pub checks: Vec<Check>,
    /// Command line that reruns this suite.
    pub replay: String,
    /// Wall time; the only field that varies between identical runs.
    pub elapsed_ms: u128,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| matches!(c.status, Status::Fail | Status::Budget))
    }
}

/// Knobs shared by all suites.
#[derive(Debug, Clone)]
pub struct Options {
    pub seed: u64,
    /// Valuation budget for exhaustive checks.
    pub budget: u64,
    /// Samples for falsification searches.
    pub samples: u64,
    /// Restrict `kt-section4` to one `(I, J)` pair.
    pub pair: Option<(Vec<u64>, Vec<u64>)>,
    /// Override the truncation bound used by `s4t-section5`.
    pub truncate: Option<u64>,
    /// Override `k` on symbolic frames.
    pub k: Option<usize>,
}

impl Default for Options {
    fn default() -> Self {
        Options { seed: 42, budget: 1_000_000, samples: 1000, pair: None, truncate: None, k: None }
    }
}

impl Options {
    fn replay(&self, suite: &str) -> String {
        let mut s = format!("tense verify {suite} --seed {} --budget {} --samples {}", self.seed, self.budget, self.samples);
        let list = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        if let Some((i, j)) = &self.pair {
            s += &format!(" --I {} --J {}", list(i), list(j));
        }
        if let Some(n) = self.truncate {
            s += &format!(" --truncate {n}");
        }
        if let Some(k) = self.k {
            s += &format!(" --k {k}");
        }
        s
    }
}

pub fn run(name: &str, opts: &Options) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut checks = match name {
        "facts-bounds" => bounds::run(opts)?,
        "delta-paths" => paths::run(opts)?,
        "jankov-theorem" => jankov::run(opts)?,
        "unfolding" => unfolding::run(opts)?,
        "kt-section4" => kt::run(opts)?,
        "s4t-section5" => s4t::run(opts)?,
        "sufficiency" => sufficiency::run(opts)?,
        "coherence" => coherence::run(opts)?,
        _ => return Err(Error::Invalid(format!("unknown suite `{name}` (known: {})", SUITES.join(", ")))),
    };
    checks.sort_by(|a, b| a.id.cmp(&b.id));
    let passed = checks.iter().all(|c| matches!(c.status, Status::Pass | Status::Info));
    Ok(SuiteReport {
        suite: name.to_string(),
        passed,
        seed: opts.seed,
        checks,
        replay: opts.replay(name),
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Evaluates `prog` on the Kripke frame `f` under every valuation, in one batch.
/// Only for small valuation spaces.
fn evaluate<'p>(prog: &'p Program, f: &Frame) -> Machine<'p> {
    let g = GeneralFrame::kripke(f.clone());
    let en = Enumeration::new(&g, prog.vars.clone());
    let total = en.total.expect("small valuation space");
    let mut m = Machine::new(prog, f, total.div_ceil(64) as usize);
    en.fill(&mut m, 0);
    m.run();
    m
}
