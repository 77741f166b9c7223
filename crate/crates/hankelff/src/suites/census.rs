use hankelff_core::census::{census_fold, census_reconcile, check_budget, rank_count_decomposes, CensusQuery, CensusTally};
use hankelff_core::ffield::Field;
use serde_json::json;

use super::{degrees, field_of, RunError};
use crate::cache::{self, key_fields, CacheError};
use crate::config::{RunConfig, SpanArg};
use crate::format::seq_str;
use crate::pool;
use crate::report::{row, Report};

fn default_degrees(q: u32) -> SpanArg {
    match q {
        2 => SpanArg::new(0, 10),
        3 => SpanArg::new(0, 7),
        4 | 5 => SpanArg::new(0, 6),
        _ => SpanArg::new(0, 4),
    }
}

fn tally(cfg: &RunConfig, field: &Field, query: &CensusQuery) -> Result<CensusTally, RunError> {
    let size = check_budget(field, query, cfg.budget).map_err(|_| RunError::BudgetExceeded {
        what: format!("the census n={} h={}", query.n, query.h),
        needed: query.size(field),
        budget: cfg.budget,
    })?;
    Ok(pool::fold_ranges(cfg.jobs, size, |r| census_fold(field, query, r), |a, b| a.merge(b)).unwrap_or_default())
}

/// The tally from the cache when present and current, else enumerated and
/// written back.
fn cached_tally(cfg: &RunConfig, field: &Field, query: &CensusQuery) -> Result<CensusTally, RunError> {
    let Some(dir) = &cfg.cache_dir else {
        return tally(cfg, field, query);
    };
    match cache::read(dir, field, query) {
        Ok(Some(t)) => return Ok(t),
        Ok(None) => {}
        Err(CacheError::SchemaMismatch { path }) => eprintln!("stale cache file {}, recomputing", path.display()),
        Err(e) => return Err(e.into()),
    }
    let t = tally(cfg, field, query)?;
    cache::write(dir, field, &census_reconcile(field, query, &t))?;
    Ok(t)
}

pub fn census(cfg: &RunConfig) -> Result<Report, RunError> {
    let field = field_of(cfg)?;
    let q = field.order();
    let mut report = Report::new("census", cfg.params());
    for n in degrees(cfg, default_degrees(q)).iter() {
        let hs = cfg.h.unwrap_or(SpanArg::new(0, n));
        for h in hs.capped(n + 1) {
            let query = CensusQuery::new(n, h);
            let t = cached_tally(cfg, &field, &query)?;
            let rec = census_reconcile(&field, &query, &t);
            for r in &rec.records {
                let (kind, rank, rho, pi, l, m) = key_fields(&r.key);
                let keep = cfg.r.is_none_or(|x| x == rank)
                    && cfg.rho.is_none_or(|x| rho == Some(x))
                    && cfg.pi.is_none_or(|x| pi == Some(x))
                    && cfg.l.is_none_or(|x| l == Some(x))
                    && cfg.m.is_none_or(|x| m == Some(x));
                if keep {
                    report.rows.push(row(json!({
                        "q": q,
                        "n": n,
                        "h": h,
                        "kind": kind,
                        "r": rank,
                        "rho": rho,
                        "pi": pi,
                        "l": l,
                        "m": m,
                        "brute": r.brute.to_string(),
                        "formula": r.formula.value.to_string(),
                        "match": r.matches(),
                    })));
                }
            }
            for mm in &rec.mismatches {
                let seqs: Vec<String> = mm.witnesses.iter().map(seq_str).collect();
                report.failures.push(format!(
                    "q={q} n={n} h={h} {:?}: brute {} formula {} witnesses [{}]",
                    mm.record.key,
                    mm.record.brute,
                    mm.record.formula.value,
                    seqs.join(" ")
                ));
            }
            if !rec.mass_ok {
                report.failures.push(format!("q={q} n={n} h={h}: tally covers {} sequences", rec.total));
            }
            if !rank_count_decomposes(q, n, h) {
                report.failures.push(format!("q={q} n={n} h={h}: rank counts are not the sum of class counts"));
            }
        }
    }
    Ok(report)
}
