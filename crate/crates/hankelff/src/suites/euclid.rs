use hankelff_core::ffield::Field;
use hankelff_core::hankel::{euclid_correspondence_check, rho_pi_profile, truncation_check, SymbolSeq};
use serde_json::json;

use super::{degrees, field_of, sweep, Failures, RunError, Source, Tally, MAX_LISTED};
use crate::config::{RunConfig, SpanArg};
use crate::format::{class_str, seq_str};
use crate::report::{row, Report};

#[derive(Default)]
struct EuclidTally {
    sequences: u64,
    quasi_regular: u64,
    levels: u64,
    truncations: u64,
    failures: Failures,
    /// Last levels whose stated class or pair is not observed.
    terminal_mismatches: u64,
    /// Of those, how many still have the kernel the stated class implies.
    kernel_reading_holds: u64,
    terminal_examples: Vec<String>,
}

impl Tally for EuclidTally {
    fn merge(&mut self, later: EuclidTally) {
        self.sequences += later.sequences;
        self.quasi_regular += later.quasi_regular;
        self.levels += later.levels;
        self.truncations += later.truncations;
        self.failures.merge(later.failures);
        self.terminal_mismatches += later.terminal_mismatches;
        self.kernel_reading_holds += later.kernel_reading_holds;
        let room = MAX_LISTED - self.terminal_examples.len();
        self.terminal_examples.extend(later.terminal_examples.into_iter().take(room));
    }
}

fn check(field: &Field, acc: &mut EuclidTally, seq: &SymbolSeq) {
    acc.sequences += 1;
    let profile = rho_pi_profile(field, seq);
    if profile.rank < 2 {
        return;
    }
    if profile.pi >= 1 {
        let rep = truncation_check(field, seq).expect("rank at least 2 with π ≥ 1");
        acc.truncations += 1;
        if !rep.passed() {
            acc.failures.push(|| format!("{}: truncation keeps class {}, expected ρ = {}", seq_str(seq), class_str(rep.observed.class()), profile.rho));
        }
        return;
    }
    acc.quasi_regular += 1;
    let rep = euclid_correspondence_check(field, seq).expect("quasi-regular of rank at least 2");
    acc.levels += rep.levels.iter().filter(|lv| lv.asserted).count() as u64;
    let fails = rep.failures();
    if !fails.is_empty() {
        acc.failures.push(|| format!("{}: {}", seq_str(seq), fails.join("; ")));
    }
    for lv in rep.discrepancies() {
        acc.terminal_mismatches += 1;
        if lv.kernel_reading == Some(true) {
            acc.kernel_reading_holds += 1;
        }
        if acc.terminal_examples.len() < MAX_LISTED {
            acc.terminal_examples.push(format!(
                "{} level {}: stated {}, observed {}",
                seq_str(seq),
                lv.level,
                class_str(lv.claimed),
                class_str(lv.observed.class())
            ));
        }
    }
}

pub fn euclid(cfg: &RunConfig) -> Result<Report, RunError> {
    let field = field_of(cfg)?;
    let q = field.order();
    let mut report = Report::new("euclid", cfg.params());
    for n in degrees(cfg, SpanArg::new(2, 7)).iter() {
        let src = Source::new(cfg, &field, n, "the Euclid check")?;
        let t: EuclidTally = sweep(cfg.jobs, &field, &src, |acc, s| check(&field, acc, s));
        report.rows.push(row(json!({
            "q": q,
            "n": n,
            "mode": src.mode(),
            "sequences": t.sequences,
            "quasi_regular": t.quasi_regular,
            "levels": t.levels,
            "truncations": t.truncations,
            "failures": t.failures.count,
            "match": t.failures.count == 0,
        })));
        if t.terminal_mismatches > 0 {
            report.informational.push(json!({
                "check": "euclid-last-level",
                "q": q,
                "n": n,
                "mismatched": t.terminal_mismatches,
                "kernel_reading_holds": t.kernel_reading_holds,
                "examples": t.terminal_examples,
            }));
        }
        t.failures.drain_into(&mut report, &format!("q={q} n={n}"));
    }
    Ok(report)
}
