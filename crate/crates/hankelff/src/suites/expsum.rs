use std::collections::BTreeMap;

use hankelff_core::cyclosum::{expsum_lemma_check, inner_sum_work, ExpsumCase};
use hankelff_core::divisor::{summation_identity_check, table_work, DivisorTable};
use hankelff_core::ffield::Field;
use hankelff_core::hankel::SymbolSeq;
use serde_json::json;

use super::{degrees, field_of, require_prime, sweep, within_budget, Failures, RunError, Source, Tally};
use crate::config::{RunConfig, SpanArg};
use crate::format::{rational_str, seq_str};
use crate::pool;
use crate::report::{row, Report};

#[derive(Default)]
struct ClassTally {
    case: &'static str,
    sequences: u64,
    predicted: Option<i64>,
    failures: Failures,
}

#[derive(Default)]
struct ExpsumTally {
    classes: BTreeMap<(usize, usize, usize), ClassTally>,
}

impl Tally for ExpsumTally {
    fn merge(&mut self, later: ExpsumTally) {
        for (k, c) in later.classes {
            let mine = self.classes.entry(k).or_default();
            mine.case = c.case;
            mine.sequences += c.sequences;
            mine.predicted = mine.predicted.or(c.predicted);
            mine.failures.merge(c.failures);
        }
    }
}

fn case_name(case: ExpsumCase) -> &'static str {
    match case {
        ExpsumCase::Degenerate => "vanishing",
        ExpsumCase::FullRankOdd => "vanishing-full-rank",
        ExpsumCase::QuasiRegular { .. } => "product",
    }
}

fn check(field: &Field, budget: u128, acc: &mut ExpsumTally, seq_minus: &SymbolSeq) {
    let rep = expsum_lemma_check(field, seq_minus, budget).expect("budget checked for the whole degree");
    let c = acc.classes.entry(rep.profile.class()).or_default();
    c.case = case_name(rep.case);
    c.sequences += 1;
    c.predicted = rep.predicted;
    if !rep.passed() {
        c.failures.push(|| format!("{}: {}", seq_str(seq_minus), rep.failures.join("; ")));
    }
}

/// `n` here is the degree of the extended sequence; the sequences checked
/// have `n` entries and each is extended by every `α_n`.
pub fn expsum(cfg: &RunConfig) -> Result<Report, RunError> {
    let field = field_of(cfg)?;
    let p = require_prime(&field, "the exponential sum")?;
    let mut report = Report::new("expsum", cfg.params());
    let span = degrees(cfg, SpanArg::new(1, 6));
    if span.lo == 0 {
        return Err(RunError::BadFlag("expsum needs n ≥ 1".into()));
    }
    for n in span.iter() {
        let per_seq = inner_sum_work(p, n).saturating_mul(2 * p as u128);
        let src = Source::new(cfg, &field, n - 1, "the exponential-sum check")?;
        within_budget(cfg, format!("the exponential sums of degree {n}"), per_seq.saturating_mul(src.len() as u128))?;
        let t: ExpsumTally = sweep(cfg.jobs, &field, &src, |acc, s| check(&field, cfg.budget, acc, s));
        for ((r, rho, pi), c) in t.classes {
            report.rows.push(row(json!({
                "check": "lemma",
                "p": p,
                "n": n,
                "mode": src.mode(),
                "r": r,
                "rho": rho,
                "pi": pi,
                "case": c.case,
                "sequences": c.sequences,
                "predicted": c.predicted.map(|v| v.to_string()),
                "match": c.failures.count == 0,
            })));
            c.failures.drain_into(&mut report, &format!("p={p} n={n} class ({r},{rho},{pi})"));
        }
        if n % 2 == 1 {
            let n1 = n / 2 + 1;
            report.informational.push(json!({
                "check": "lemma-literal-label",
                "p": p,
                "n": n,
                "class": format!("({n1},0,0)"),
                "sequences": 0,
                "note": "no sequence has rank n1 with ρ = π = 0; the full-rank class is checked instead",
            }));
        }

        let work = table_work(p, n);
        within_budget(cfg, format!("the divisor table of degree {n}"), work)?;
        let table = pool::fold_ranges(
            cfg.jobs,
            work as u64,
            |range| {
                let mut t = DivisorTable::empty(&field, n).expect("prime field");
                t.accumulate(range);
                t
            },
            |a, b| a.merge(&b),
        )
        .expect("at least one range");
        let hs = cfg.h.unwrap_or(SpanArg::new(0, n));
        for h in hs.capped(n) {
            let rep = summation_identity_check(&table, h).expect("h within range");
            report.rows.push(row(json!({
                "check": "identity",
                "p": p,
                "n": n,
                "h": h,
                "lhs": rep.lhs.to_string(),
                "rhs": rational_str(&rep.rhs),
                "match": rep.passed(),
            })));
            if !rep.passed() {
                report.failures.push(format!("p={p} n={n} h={h}: second moment {} against {}", rep.lhs, rational_str(&rep.rhs)));
            }
        }
    }
    Ok(report)
}
