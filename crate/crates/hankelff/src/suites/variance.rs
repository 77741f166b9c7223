use hankelff_core::divisor::{table_work, variance_report, DivisorTable};
use serde_json::json;

use super::{degrees, field_of, require_prime, within_budget, RunError};
use crate::config::{RunConfig, SpanArg};
use crate::format::rational_str;
use crate::pool;
use crate::report::{row, Report};

/// Smallest degree the variance theorem covers.
const MIN_DEGREE: usize = 4;

fn default_degrees(p: u32) -> SpanArg {
    match p {
        2 | 3 => SpanArg::new(4, 8),
        5 => SpanArg::new(4, 7),
        _ => SpanArg::new(4, 5),
    }
}

pub fn variance(cfg: &RunConfig) -> Result<Report, RunError> {
    let field = field_of(cfg)?;
    let p = require_prime(&field, "the variance")?;
    let mut report = Report::new("variance", cfg.params());
    for n in degrees(cfg, default_degrees(p)).iter() {
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
            let rep = variance_report(&table, h).expect("h within range");
            let r = row(json!({
                "p": p,
                "n": n,
                "h": h,
                "brute": rational_str(&rep.brute),
                "formula": rational_str(&rep.formula),
                "match": rep.matches(),
            }));
            if n < MIN_DEGREE {
                let mut r = r;
                r.insert("note".into(), json!("degree below the range of the theorem"));
                report.informational.push(serde_json::Value::Object(r));
                continue;
            }
            if !rep.matches() {
                report.failures.push(format!(
                    "p={p} n={n} h={h}: brute {} formula {} mean {} expected {}",
                    rational_str(&rep.brute),
                    rational_str(&rep.formula),
                    rational_str(&rep.mean_check.0),
                    rational_str(&rep.mean_check.1)
                ));
            }
            report.rows.push(r);
        }
    }
    Ok(report)
}
