//! Counting sequences by rank and `(ρ, π)` class: an exhaustive tally and
//! the closed forms it is reconciled against.
//!
//! The sequences counted have a zero prefix of length `h`:
//! `α_0 = .. = α_{h-1} = 0`, the rest free. They are enumerated by an
//! index in `0..q^{n+1-h}` whose base-`q` digits give `α_n` (least
//! significant) up to `α_h`, so any contiguous index range can be tallied
//! independently and the tallies added.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::ops::Range;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::ffield::{Elem, Field};
use crate::hankel::{hankel_rank, rho_pi_profile, HankelError, HankelView, SymbolSeq};

/// Witnesses kept per tally key.
pub const MAX_WITNESSES: usize = 10;

/// Default cap on the number of sequences enumerated.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusQuery {
    pub n: usize,
    pub h: usize,
}

impl CensusQuery {
    /// Panics unless `h ≤ n + 1`.
    pub fn new(n: usize, h: usize) -> CensusQuery {
        assert!(h <= n + 1, "zero prefix longer than the sequence");
        CensusQuery { n, h }
    }

    /// `q^{n+1-h}`, the number of sequences with the zero prefix.
    pub fn size(&self, field: &Field) -> u128 {
        (field.order() as u128).checked_pow((self.n + 1 - self.h) as u32).unwrap_or(u128::MAX)
    }

    /// The sequence with the given enumeration index.
    pub fn sequence(&self, field: &Field, mut index: u64) -> SymbolSeq {
        let q = field.order() as u64;
        let mut entries = alloc::vec![Elem::ZERO; self.n + 1];
        for k in (self.h..=self.n).rev() {
            entries[k] = field.elem((index % q) as u32).expect("digit below q");
            index /= q;
        }
        SymbolSeq::new(entries)
    }
}

/// What a tally entry counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CensusKey {
    /// Sequences of class `(r, ρ, π)`.
    Class { r: usize, rho: usize, pi: usize },
    /// Sequences with `rank H_{n1,n2}(α) = r`.
    Rank { r: usize },
    /// Sequences with `rank H_{l,m}(α) = r`.
    Shape { l: usize, m: usize, r: usize },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct Bucket {
    count: u64,
    witnesses: Vec<SymbolSeq>,
}

/// Counts per key over some index range, with the first few sequences seen.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CensusTally {
    buckets: BTreeMap<CensusKey, Bucket>,
    total: u64,
}

impl CensusTally {
    fn record(&mut self, key: CensusKey, seq: &SymbolSeq) {
        let b = self.buckets.entry(key).or_default();
        b.count += 1;
        if b.witnesses.len() < MAX_WITNESSES {
            b.witnesses.push(seq.clone());
        }
    }

    /// Adds a tally covering the index range that follows this one.
    /// Witness lists stay in enumeration order, so the result does not
    /// depend on how the range was split.
    pub fn merge(&mut self, later: CensusTally) {
        self.total += later.total;
        for (key, b) in later.buckets {
            let mine = self.buckets.entry(key).or_default();
            mine.count += b.count;
            let room = MAX_WITNESSES - mine.witnesses.len();
            mine.witnesses.extend(b.witnesses.into_iter().take(room));
        }
    }

    /// A tally restored from stored counts. It carries no witnesses.
    pub fn from_counts(total: u64, counts: impl IntoIterator<Item = (CensusKey, u64)>) -> CensusTally {
        let buckets = counts.into_iter().map(|(key, count)| (key, Bucket { count, witnesses: Vec::new() })).collect();
        CensusTally { buckets, total }
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn count(&self, key: &CensusKey) -> u64 {
        self.buckets.get(key).map_or(0, |b| b.count)
    }

    pub fn witnesses(&self, key: &CensusKey) -> &[SymbolSeq] {
        self.buckets.get(key).map_or(&[], |b| &b.witnesses)
    }

    pub fn keys(&self) -> impl Iterator<Item = &CensusKey> {
        self.buckets.keys()
    }
}

/// Tallies the sequences with indices in `range`.
pub fn census_fold(field: &Field, query: &CensusQuery, range: Range<u64>) -> CensusTally {
    let mut tally = CensusTally::default();
    for index in range {
        let seq = query.sequence(field, index);
        let p = rho_pi_profile(field, &seq);
        tally.total += 1;
        tally.record(CensusKey::Class { r: p.rank, rho: p.rho, pi: p.pi }, &seq);
        tally.record(CensusKey::Rank { r: p.rank }, &seq);
        for (l, m) in seq.shapes() {
            let view = HankelView::new(&seq, l, m).expect("shape fits");
            tally.record(CensusKey::Shape { l, m, r: hankel_rank(field, &view) }, &seq);
        }
    }
    tally
}

pub fn check_budget(field: &Field, query: &CensusQuery, budget: u128) -> Result<u64, HankelError> {
    let needed = query.size(field);
    if needed > budget || needed > u64::MAX as u128 {
        return Err(HankelError::BudgetExceeded { needed, budget });
    }
    Ok(needed as u64)
}

/// Single-threaded tally of the whole query.
pub fn census_enumerate(field: &Field, query: &CensusQuery, budget: u128) -> Result<CensusTally, HankelError> {
    let size = check_budget(field, query, budget)?;
    Ok(census_fold(field, query, 0..size))
}

/// A closed-form count; `empty` marks parameters outside every case of the
/// theorem, for which the count is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaCount {
    pub value: BigInt,
    pub empty: bool,
}

impl FormulaCount {
    fn empty() -> FormulaCount {
        FormulaCount { value: BigInt::zero(), empty: true }
    }

    fn of(value: BigInt) -> FormulaCount {
        FormulaCount { value, empty: false }
    }
}

fn pow(q: u32, e: i64) -> BigInt {
    assert!(e >= 0, "negative exponent {e} in a count");
    BigInt::from(q).pow(e as u32)
}

fn n1_of(n: usize) -> usize {
    (n + 2) / 2
}

/// `|L_n^h(ρ + π, ρ, π)|`.
pub fn formula_l_rho_pi(q: u32, n: usize, h: usize, rho: usize, pi: usize) -> FormulaCount {
    let n1 = n1_of(n);
    let even = n.is_multiple_of(2);
    let r = rho + pi;
    let (ni, hi, ri, rhoi, pii) = (n as i64, h as i64, r as i64, rho as i64, pi as i64);
    let qm1 = BigInt::from(q - 1);
    if rho == 0 {
        let cap = if even { n1 as i64 - 1 } else { n1 as i64 };
        if ri > cap || ri > ni - hi + 1 {
            return FormulaCount::empty();
        }
        if r == 0 {
            return FormulaCount::of(BigInt::one());
        }
        return FormulaCount::of(qm1 * pow(q, ri - 1));
    }
    if rho < n1 {
        let cap = if even { n1 as i64 - rhoi - 1 } else { n1 as i64 - rhoi };
        if pii > cap || rhoi < hi + 1 {
            return FormulaCount::empty();
        }
        if pi == 0 {
            return FormulaCount::of(qm1 * pow(q, 2 * rhoi - hi - 1));
        }
        return FormulaCount::of(qm1.pow(2) * pow(q, 2 * rhoi + pii - hi - 2));
    }
    if rho == n1 && pi == 0 && h < n1 {
        return FormulaCount::of(qm1 * pow(q, ni - hi));
    }
    FormulaCount::empty()
}

/// The first three cases of the per-rank count; shared with the
/// rectangular count below the full rank.
fn rank_count_below_top(q: u32, n: usize, h: usize, r: usize) -> Option<BigInt> {
    let n1 = n1_of(n);
    let (ni, hi, ri) = (n as i64, h as i64, r as i64);
    if r == 0 {
        return Some(BigInt::one());
    }
    if ri <= hi.min(ni - hi + 1) {
        return Some(BigInt::from(q - 1) * pow(q, ri - 1));
    }
    if h < r && r < n1 {
        return Some(BigInt::from(q * q - 1) * pow(q, 2 * ri - hi - 2));
    }
    None
}

/// `|L_n^h(r)|`, the sequences with `rank H_{n1,n2}(α) = r`.
pub fn formula_l_r(q: u32, n: usize, h: usize, r: usize) -> FormulaCount {
    let n1 = n1_of(n);
    if r > n1 {
        return FormulaCount::empty();
    }
    if let Some(v) = rank_count_below_top(q, n, h, r) {
        return FormulaCount::of(v);
    }
    if r == n1 && h < n1 {
        let (ni, hi) = (n as i64, h as i64);
        return FormulaCount::of(pow(q, ni - hi + 1) - pow(q, 2 * n1 as i64 - hi - 2));
    }
    FormulaCount::empty()
}

/// `|H_{l,m}^h(r)|`, the sequences with `rank H_{l,m}(α) = r`.
pub fn formula_h(q: u32, l: usize, m: usize, h: usize, r: usize) -> FormulaCount {
    assert!(l >= 1 && m >= 1);
    let n = l + m - 2;
    let mn = l.min(m);
    if r < mn {
        return rank_count_below_top(q, n, h, r).map_or_else(FormulaCount::empty, FormulaCount::of);
    }
    if r > mn {
        return FormulaCount::empty();
    }
    let (ni, hi, mni) = (n as i64, h as i64, mn as i64);
    let top = pow(q, (l + m) as i64 - hi - 1);
    if mni - 1 <= hi.min(ni - hi + 1) {
        return FormulaCount::of(top - pow(q, mni - 1));
    }
    if mni - 1 > hi {
        return FormulaCount::of(top - pow(q, 2 * mni - hi - 2));
    }
    FormulaCount::empty()
}

/// The per-rank count agrees with the sum of the per-class counts of that
/// rank, for every `r ≤ n1`.
pub fn rank_count_decomposes(q: u32, n: usize, h: usize) -> bool {
    (0..=n1_of(n)).all(|r| {
        let sum: BigInt = (0..=r).map(|rho| formula_l_rho_pi(q, n, h, rho, r - rho).value).sum();
        formula_l_r(q, n, h, r).value == sum
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRecord {
    pub key: CensusKey,
    pub brute: BigUint,
    pub formula: FormulaCount,
}

impl CensusRecord {
    pub fn matches(&self) -> bool {
        BigInt::from(self.brute.clone()) == self.formula.value
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusMismatch {
    pub record: CensusRecord,
    pub witnesses: Vec<SymbolSeq>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub query: CensusQuery,
    /// Class records, then rank records, then shape records, each in key
    /// order. Keys with zero brute count appear only when the formula
    /// claims a nonempty set.
    pub records: Vec<CensusRecord>,
    pub total: BigUint,
    /// Whether the tally covers exactly `q^{n+1-h}` sequences.
    pub mass_ok: bool,
    pub mismatches: Vec<CensusMismatch>,
}

impl CensusReport {
    pub fn passed(&self) -> bool {
        self.mass_ok && self.mismatches.is_empty()
    }
}

/// Pairs every tallied count with its closed form.
pub fn census_reconcile(field: &Field, query: &CensusQuery, tally: &CensusTally) -> CensusReport {
    let q = field.order();
    let (n, h) = (query.n, query.h);
    let n1 = n1_of(n);
    let mut keys: Vec<(CensusKey, FormulaCount)> = Vec::new();
    for rho in 0..=n1 {
        for pi in 0..=n1 - rho {
            keys.push((CensusKey::Class { r: rho + pi, rho, pi }, formula_l_rho_pi(q, n, h, rho, pi)));
        }
    }
    for r in 0..=n1 {
        keys.push((CensusKey::Rank { r }, formula_l_r(q, n, h, r)));
    }
    for m in 1..=n + 1 {
        let l = n + 2 - m;
        for r in 0..=l.min(m) {
            keys.push((CensusKey::Shape { l, m, r }, formula_h(q, l, m, h, r)));
        }
    }
    let mut records = Vec::new();
    let mut mismatches = Vec::new();
    for (key, formula) in keys {
        let brute = tally.count(&key);
        if brute == 0 && formula.value.is_zero() {
            continue;
        }
        let record = CensusRecord { key, brute: BigUint::from(brute), formula };
        if !record.matches() {
            mismatches.push(CensusMismatch { record: record.clone(), witnesses: tally.witnesses(&key).to_vec() });
        }
        records.push(record);
    }
    // keys outside the admissible grid would mean a broken profile
    for key in tally.keys() {
        if !records.iter().any(|r| r.key == *key) {
            let record = CensusRecord { key: *key, brute: BigUint::from(tally.count(key)), formula: FormulaCount::empty() };
            mismatches.push(CensusMismatch { record: record.clone(), witnesses: tally.witnesses(key).to_vec() });
            records.push(record);
        }
    }
    let total = BigUint::from(tally.total());
    let mass_ok = u128::from(tally.total()) == query.size(field);
    CensusReport { query: *query, records, total, mass_ok, mismatches }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn class_count(t: &CensusTally, r: usize, rho: usize, pi: usize) -> u64 {
        t.count(&CensusKey::Class { r, rho, pi })
    }

    #[test]
    fn enumerate_examples() {
        let f2 = Field::prime(2).unwrap();
        let t = census_enumerate(&f2, &CensusQuery::new(2, 0), DEFAULT_BUDGET).unwrap();
        let by_rank: Vec<u64> = (0..=2).map(|r| t.count(&CensusKey::Rank { r })).collect();
        assert_eq!(by_rank, [1, 3, 4]);
        let t = census_enumerate(&f2, &CensusQuery::new(2, 3), DEFAULT_BUDGET).unwrap();
        assert_eq!(t.total(), 1);
        assert_eq!(class_count(&t, 0, 0, 0), 1);
        let f3 = Field::prime(3).unwrap();
        let t = census_enumerate(&f3, &CensusQuery::new(2, 1), DEFAULT_BUDGET).unwrap();
        assert_eq!(t.total(), 9);
    }

    #[test]
    fn budget_guard() {
        let f5 = Field::prime(5).unwrap();
        assert!(matches!(census_enumerate(&f5, &CensusQuery::new(9, 0), 1000), Err(HankelError::BudgetExceeded { .. })));
    }

    #[test]
    fn formula_examples() {
        assert_eq!(formula_l_rho_pi(3, 4, 1, 0, 2).value, BigInt::from(6));
        assert_eq!(formula_l_rho_pi(2, 4, 0, 1, 1).value, BigInt::from(2));
        assert_eq!(formula_l_rho_pi(2, 4, 0, 3, 0).value, BigInt::from(16));
        assert_eq!(formula_l_r(2, 2, 0, 2).value, BigInt::from(4));
        assert_eq!(formula_l_r(2, 2, 0, 1).value, BigInt::from(3));
        for q in [2, 3, 5] {
            assert_eq!(formula_l_r(q, 5, 2, 0).value, BigInt::one());
        }
        assert_eq!(formula_h(2, 3, 3, 0, 3).value, BigInt::from(16));
        // r = 1 > min(h, n - h + 1) = 0 here, so the (q^2 - 1) branch applies
        assert_eq!(formula_h(2, 3, 3, 0, 1).value, BigInt::from(3));
        let f2 = Field::prime(2).unwrap();
        let t = census_enumerate(&f2, &CensusQuery::new(4, 0), DEFAULT_BUDGET).unwrap();
        assert_eq!(t.count(&CensusKey::Shape { l: 3, m: 3, r: 1 }), 3);
        assert_eq!(formula_h(2, 3, 3, 1, 1).value, BigInt::from(1));
        assert!(formula_l_rho_pi(2, 4, 0, 3, 1).empty);
    }

    #[test]
    fn full_rank_square_counted_two_ways() {
        for q in [2, 3, 4, 5] {
            for n in (0..=10).step_by(2) {
                let n1 = n1_of(n);
                for h in 0..n1 {
                    assert_eq!(formula_h(q, n1, n1, h, n1).value, formula_l_rho_pi(q, n, h, n1, 0).value);
                }
            }
        }
    }

    #[test]
    fn rank_counts_decompose_into_classes() {
        for q in [2, 3, 4, 5, 7] {
            for n in 0..=12 {
                for h in 0..=n + 1 {
                    assert!(rank_count_decomposes(q, n, h), "q={q} n={n} h={h}");
                }
            }
        }
    }

    #[test]
    fn reconcile_small_prime_fields() {
        for p in [2, 3] {
            let f = Field::prime(p).unwrap();
            for n in 0..=5 {
                for h in 0..=n + 1 {
                    let query = CensusQuery::new(n, h);
                    let t = census_enumerate(&f, &query, DEFAULT_BUDGET).unwrap();
                    let rep = census_reconcile(&f, &query, &t);
                    assert!(rep.passed(), "p={p} n={n} h={h}: {:?}", rep.mismatches);
                }
            }
        }
    }

    #[test]
    fn split_ranges_merge_to_the_same_tally() {
        let f = Field::prime(3).unwrap();
        let query = CensusQuery::new(4, 1);
        let whole = census_enumerate(&f, &query, DEFAULT_BUDGET).unwrap();
        let size = query.size(&f) as u64;
        for cuts in [vec![0, size], vec![0, 1, 7, size], vec![0, 40, 40, 41, size]] {
            let mut acc = CensusTally::default();
            for w in cuts.windows(2) {
                acc.merge(census_fold(&f, &query, w[0]..w[1]));
            }
            assert_eq!(acc, whole);
        }
    }
}
