use std::collections::BTreeMap;

use hankelff_core::ffield::Field;
use hankelff_core::hankel::{extension_check, SymbolSeq};
use serde_json::json;

use super::{degrees, field_of, sweep, Failures, RunError, Source, Tally};
use crate::config::{RunConfig, SpanArg};
use crate::format::seq_str;
use crate::report::{row, Report};

#[derive(Default)]
struct CaseTally {
    sequences: u64,
    stayed: u64,
    moved: u64,
    failures: Failures,
}

#[derive(Default)]
struct ExtensionTally {
    cases: BTreeMap<&'static str, CaseTally>,
}

impl Tally for ExtensionTally {
    fn merge(&mut self, later: ExtensionTally) {
        for (k, c) in later.cases {
            let mine = self.cases.entry(k).or_default();
            mine.sequences += c.sequences;
            mine.stayed += c.stayed;
            mine.moved += c.moved;
            mine.failures.merge(c.failures);
        }
    }
}

fn check(field: &Field, acc: &mut ExtensionTally, seq: &SymbolSeq) {
    let rep = extension_check(field, seq);
    let c = acc.cases.entry(rep.case.name()).or_default();
    c.sequences += 1;
    c.stayed += rep.split.0 as u64;
    c.moved += rep.split.1 as u64;
    if !rep.passed() {
        c.failures.push(|| format!("{}: {}", seq_str(seq), rep.failures.join("; ")));
    }
}

pub fn extension(cfg: &RunConfig) -> Result<Report, RunError> {
    let field = field_of(cfg)?;
    let q = field.order();
    let mut report = Report::new("extension", cfg.params());
    for n in degrees(cfg, SpanArg::new(0, 6)).iter() {
        let src = Source::new(cfg, &field, n, "the extension check")?;
        let t: ExtensionTally = sweep(cfg.jobs, &field, &src, |acc, s| check(&field, acc, s));
        for (case, c) in t.cases {
            report.rows.push(row(json!({
                "q": q,
                "n": n,
                "mode": src.mode(),
                "case": case,
                "sequences": c.sequences,
                "stayed": c.stayed,
                "moved": c.moved,
                "failures": c.failures.count,
                "match": c.failures.count == 0,
            })));
            c.failures.drain_into(&mut report, &format!("q={q} n={n} {case}"));
        }
    }
    Ok(report)
}
