use hankelff_core::ffield::{Elem, Field};
use hankelff_core::hankel::{hankel_kernel_basis, kernel_predict, HankelView, SymbolSeq};
use hankelff_core::linalg::{span_equal, span_rank};
use serde_json::json;

use super::{degrees, field_of, sweep, Failures, RunError, Source, Tally};
use crate::config::{RunConfig, SpanArg};
use crate::format::seq_str;
use crate::report::{row, Report};

#[derive(Default)]
struct KernelTally {
    sequences: u64,
    shapes: u64,
    failures: Failures,
}

impl Tally for KernelTally {
    fn merge(&mut self, later: KernelTally) {
        self.sequences += later.sequences;
        self.shapes += later.shapes;
        self.failures.merge(later.failures);
    }
}

/// Exhaustive by default; larger fields reach degree 9 with `--sample`.
fn default_degrees(q: u32) -> SpanArg {
    if q <= 3 {
        SpanArg::new(0, 7)
    } else {
        SpanArg::new(0, 5)
    }
}

fn check(field: &Field, cfg: &RunConfig, acc: &mut KernelTally, seq: &SymbolSeq) {
    acc.sequences += 1;
    for (l, m) in seq.shapes() {
        if cfg.l.is_some_and(|x| x != l) || cfg.m.is_some_and(|x| x != m) {
            continue;
        }
        acc.shapes += 1;
        let view = HankelView::new(seq, l, m).expect("shape fits");
        let basis: Vec<Vec<Elem>> = hankel_kernel_basis(field, &view).iter().map(|p| p.to_vector(m)).collect();
        let pred = kernel_predict(field, seq, l, m).expect("shape fits");
        let gens: Vec<Vec<Elem>> = pred.generators.iter().map(|p| p.to_vector(m)).collect();
        let dim_ok = basis.len() == pred.predicted_dim && span_rank(field, &gens) == pred.predicted_dim;
        if !dim_ok || !span_equal(field, &basis, &gens) {
            acc.failures.push(|| {
                format!("{} at {l}x{m}: kernel dimension {}, predicted {} ({:?})", seq_str(seq), basis.len(), pred.predicted_dim, pred.regime)
            });
        }
    }
}

pub fn kernel(cfg: &RunConfig) -> Result<Report, RunError> {
    let field = field_of(cfg)?;
    let q = field.order();
    let mut report = Report::new("kernel", cfg.params());
    for n in degrees(cfg, default_degrees(q)).iter() {
        let src = Source::new(cfg, &field, n, "the kernel check")?;
        let t: KernelTally = sweep(cfg.jobs, &field, &src, |acc, s| check(&field, cfg, acc, s));
        report.rows.push(row(json!({
            "q": q,
            "n": n,
            "mode": src.mode(),
            "sequences": t.sequences,
            "shapes": t.shapes,
            "mismatches": t.failures.count,
            "match": t.failures.count == 0,
        })));
        t.failures.drain_into(&mut report, &format!("q={q} n={n}"));
    }
    Ok(report)
}
