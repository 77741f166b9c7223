use hankelff_core::ffield::Field;
use hankelff_core::fpoly::{monic_enumerate, Poly};
use hankelff_core::hankel::{canonical_pair, characterize, seq_from_charpolys};
use serde_json::json;

use super::{field_of, Failures, RunError};
use crate::config::RunConfig;
use crate::format::seq_str;
use crate::pool;
use crate::report::{row, Report};

/// Degrees of `A1` checked by default.
const MAX_DEGREE: usize = 4;

/// Smallest `n` for which a pair with `deg A2 < deg A1 = d1` has a
/// quasi-regular sequence of rank `d1`.
fn min_degree(d1: usize) -> usize {
    d1.max(2 * d1 - 2)
}

#[derive(Default)]
struct ConverseTally {
    pairs: u64,
    sequences: u64,
    failures: Failures,
}

fn check(field: &Field, cfg: &RunConfig, a1: &Poly, a2: &Poly, n: usize, acc: &mut ConverseTally) {
    let q = field.order() as usize;
    acc.pairs += 1;
    let label = || format!("A1={} A2={} n={n}", a1.display(field), a2.display(field));
    let res = match seq_from_charpolys(field, a1, a2, n, cfg.budget) {
        Ok(r) => r,
        Err(e) => {
            acc.failures.push(|| format!("{}: {e}", label()));
            return;
        }
    };
    acc.sequences += res.sequences.len() as u64;
    if res.sequences.len() != q - 1 {
        acc.failures.push(|| format!("{}: {} sequences instead of {}", label(), res.sequences.len(), q - 1));
        return;
    }
    let Some(canon) = res.canonical_sequence() else {
        acc.failures.push(|| format!("{}: no normalized representative", label()));
        return;
    };
    let mut multiples: Vec<_> = field.elements().filter(|c| !c.is_zero()).map(|c| canon.scale(field, c)).collect();
    multiples.sort();
    if multiples != res.sequences {
        acc.failures.push(|| format!("{}: sequences are not scalar multiples of {}", label(), seq_str(canon)));
    }
    for s in &res.sequences {
        let (profile, pair) = characterize(field, s);
        let want = canonical_pair(field, a1, a2, profile.c1, profile.c2);
        if profile.class() != res.target || pair != want {
            acc.failures.push(|| format!("{}: {} does not round-trip", label(), seq_str(s)));
        }
    }
}

pub fn converse(cfg: &RunConfig) -> Result<Report, RunError> {
    let field = field_of(cfg)?;
    let q = field.order();
    let mut report = Report::new("converse", cfg.params());
    let deg_lo = cfg.r.unwrap_or(1).max(1);
    let deg_hi = cfg.r.unwrap_or(MAX_DEGREE).max(1);
    for d1 in deg_lo..=deg_hi {
        let lo = min_degree(d1);
        let ns: Vec<usize> = match cfg.n {
            Some(span) => span.iter().filter(|&n| n >= lo).collect(),
            None => (lo..=lo + 3).collect(),
        };
        let a1s: Vec<Poly> = monic_enumerate(&field, d1).collect();
        let a2s: Vec<Poly> = (0..d1).flat_map(|d| monic_enumerate(&field, d)).collect();
        let pairs: Vec<(&Poly, &Poly)> = a1s.iter().flat_map(|a1| a2s.iter().map(move |a2| (a1, a2))).filter(|(a1, a2)| a1.is_coprime(&field, a2)).collect();
        for n in ns {
            let t = pool::fold_ranges(
                cfg.jobs,
                pairs.len() as u64,
                |range| {
                    let mut acc = ConverseTally::default();
                    for i in range {
                        let (a1, a2) = pairs[i as usize];
                        check(&field, cfg, a1, a2, n, &mut acc);
                    }
                    acc
                },
                |a, b| {
                    a.pairs += b.pairs;
                    a.sequences += b.sequences;
                    a.failures.merge(b.failures);
                },
            )
            .unwrap_or_default();
            report.rows.push(row(json!({
                "q": q,
                "deg_a1": d1,
                "n": n,
                "pairs": t.pairs,
                "sequences": t.sequences,
                "failures": t.failures.count,
                "match": t.failures.count == 0,
            })));
            t.failures.drain_into(&mut report, &format!("q={q} deg A1={d1} n={n}"));
        }
    }
    Ok(report)
}
