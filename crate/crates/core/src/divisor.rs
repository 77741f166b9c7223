//! The divisor function on monic polynomials over `F_p`, its sums over
//! short intervals, and the variance of those sums.
//!
//! A monic `B` of degree `n` is indexed by `Σ_{i<n} b_i p^i`, the same order
//! as [`monic_from_index`](crate::fpoly::monic_from_index). The interval
//! `I(A; h) = {B monic : deg(B - A) < h}` frees the `h` lowest coefficients,
//! so it is the block of `p^h` consecutive indices sharing `index / p^h`.

use alloc::vec::Vec;
use core::ops::Range;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::ffield::Field;
use crate::fpoly::Poly;

/// Default cap on the number of products formed when building a table.
pub const DEFAULT_BUDGET: u128 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DivisorError {
    #[error("building the table needs {needed} products, over the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("the divisor tables only cover prime fields")]
    ExtensionFieldUnsupported,
    #[error("expected a monic polynomial of degree {expected}")]
    DegreeMismatch { expected: usize },
    #[error("interval parameter h = {h} exceeds n = {n}")]
    IntervalTooLong { h: usize, n: usize },
}

/// `d(B)` for every monic `B` of degree `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorTable {
    p: u32,
    n: usize,
    counts: Vec<u32>,
}

/// Number of `(E, F)` pairs with `deg E + deg F = n`: `(n + 1) p^n`.
pub fn table_work(p: u32, n: usize) -> u128 {
    (p as u128).checked_pow(n as u32).and_then(|x| x.checked_mul(n as u128 + 1)).unwrap_or(u128::MAX)
}

fn check_field(field: &Field) -> Result<u32, DivisorError> {
    if !field.is_prime_field() {
        return Err(DivisorError::ExtensionFieldUnsupported);
    }
    Ok(field.characteristic())
}

impl DivisorTable {
    /// All zeros; add partial tables into it with [`merge`](Self::merge).
    pub fn empty(field: &Field, n: usize) -> Result<DivisorTable, DivisorError> {
        let p = check_field(field)?;
        Ok(DivisorTable { p, n, counts: alloc::vec![0; (p as usize).pow(n as u32)] })
    }

    /// The full table by convolution: every pair of monic `(E, F)` with
    /// `deg E + deg F = n` bumps the count of `E F`.
    pub fn build(field: &Field, n: usize, budget: u128) -> Result<DivisorTable, DivisorError> {
        let p = check_field(field)?;
        let needed = table_work(p, n);
        if needed > budget {
            return Err(DivisorError::BudgetExceeded { needed, budget });
        }
        let mut table = DivisorTable::empty(field, n)?;
        table.accumulate(0..needed as u64);
        Ok(table)
    }

    /// Adds the products of the pairs with the given indices. Pair `j` has
    /// `deg E = j / p^n`; the remainder splits as `e_index * p^{n - deg E} +
    /// f_index`. Tables from disjoint ranges merge to the full table.
    pub fn accumulate(&mut self, pairs: Range<u64>) {
        let p = self.p as u64;
        let n = self.n;
        let block = p.pow(n as u32);
        let mut e = alloc::vec![0u32; n + 1];
        let mut f = alloc::vec![0u32; n + 1];
        let mut prod = alloc::vec![0u64; n + 1];
        for j in pairs {
            let k = (j / block) as usize;
            let rest = j % block;
            let f_span = p.pow((n - k) as u32);
            digits_monic(rest / f_span, p, k, &mut e);
            digits_monic(rest % f_span, p, n - k, &mut f);
            prod.iter_mut().for_each(|c| *c = 0);
            for (a, &ea) in e[..=k].iter().enumerate() {
                if ea == 0 {
                    continue;
                }
                for (b, &fb) in f[..=n - k].iter().enumerate() {
                    prod[a + b] += ea as u64 * fb as u64;
                }
            }
            let mut index = 0u64;
            for c in prod[..n].iter().rev() {
                index = index * p + c % p;
            }
            self.counts[index as usize] += 1;
        }
    }

    pub fn merge(&mut self, other: &DivisorTable) {
        assert_eq!((self.p, self.n), (other.p, other.n), "tables of different shape");
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// `d` of the monic polynomial with the given index.
    pub fn count(&self, index: usize) -> u32 {
        self.counts[index]
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// Index of a monic polynomial of degree `n`.
    pub fn index_of(&self, b: &Poly) -> Result<usize, DivisorError> {
        if b.degree() != Some(self.n) || !b.is_monic() {
            return Err(DivisorError::DegreeMismatch { expected: self.n });
        }
        Ok(b.coeffs()[..self.n].iter().rev().fold(0usize, |acc, c| acc * self.p as usize + c.code() as usize))
    }

    pub fn divisor_count(&self, b: &Poly) -> Result<u32, DivisorError> {
        Ok(self.counts[self.index_of(b)?])
    }

    /// Interval sums, one per class `index / p^h`, in class order.
    pub fn class_sums(&self, h: usize) -> Result<Vec<u64>, DivisorError> {
        if h > self.n {
            return Err(DivisorError::IntervalTooLong { h, n: self.n });
        }
        let size = (self.p as usize).pow(h as u32);
        Ok(self.counts.chunks(size).map(|c| c.iter().map(|&d| d as u64).sum()).collect())
    }
}

/// Base-`p` digits of `index` as the lower coefficients of a monic
/// polynomial of degree `deg`.
fn digits_monic(mut index: u64, p: u64, deg: usize, out: &mut [u32]) {
    for c in out[..deg].iter_mut() {
        *c = (index % p) as u32;
        index /= p;
    }
    out[deg] = 1;
}

/// `I(A; h)` for a monic centre `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalSpec {
    pub center: Poly,
    pub h: usize,
}

impl IntervalSpec {
    pub fn new(center: Poly, h: usize) -> IntervalSpec {
        IntervalSpec { center, h }
    }

    /// Indices of the `p^h` members.
    pub fn members(&self, table: &DivisorTable) -> Result<Range<usize>, DivisorError> {
        if self.h > table.n {
            return Err(DivisorError::IntervalTooLong { h: self.h, n: table.n });
        }
        let size = (table.p as usize).pow(self.h as u32);
        let start = table.index_of(&self.center)? / size * size;
        Ok(start..start + size)
    }
}

/// `Σ_{B ∈ I(A; h)} d(B)`.
pub fn interval_sum(table: &DivisorTable, interval: &IntervalSpec) -> Result<u64, DivisorError> {
    Ok(interval.members(table)?.map(|i| table.counts[i] as u64).sum())
}

fn rational(x: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(x.into())
}

fn pow_int(p: u32, e: usize) -> BigInt {
    num_traits::pow(BigInt::from(p), e)
}

/// `p^h (n + 1)`, the mean of the interval sums.
pub fn interval_mean(p: u32, n: usize, h: usize) -> BigInt {
    pow_int(p, h) * BigInt::from(n + 1)
}

/// The closed form for the variance:
/// `(p - 1) p^{h-1} (n-2h-1)(n-2h)(n-2h+1) / 6` for `h ≤ ⌊n/2⌋ - 1`, else 0.
pub fn variance_formula(p: u32, n: usize, h: usize) -> BigRational {
    if h + 1 > n / 2 {
        return BigRational::zero();
    }
    let k = (n - 2 * h) as i64;
    let cubic = BigInt::from((k - 1) * k * (k + 1));
    let scale = BigRational::new(BigInt::from(p - 1) * pow_int(p, h), BigInt::from(p));
    scale * rational(cubic) / rational(6)
}

/// `(1 / p^n) Σ_A (Σ_{B ∈ I(A;h)} d(B) - p^h (n+1))^2`, computed from the
/// class sums, each weighted by the `p^h` centres that share it.
pub fn variance_bruteforce(table: &DivisorTable, h: usize) -> Result<BigRational, DivisorError> {
    let sums = table.class_sums(h)?;
    let mean = interval_mean(table.p, table.n, h);
    let total: BigInt = sums.iter().map(|&s| {
        let dev = BigInt::from(s) - &mean;
        &dev * &dev
    }).sum();
    Ok(BigRational::new(total, pow_int(table.p, table.n - h)))
}

/// Mean of the interval sums over all centres.
pub fn observed_mean(table: &DivisorTable, h: usize) -> Result<BigRational, DivisorError> {
    let sums = table.class_sums(h)?;
    let total: BigInt = sums.iter().map(|&s| BigInt::from(s)).sum();
    Ok(BigRational::new(total, BigInt::from(sums.len())))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarianceReport {
    pub p: u32,
    pub n: usize,
    pub h: usize,
    pub brute: BigRational,
    pub formula: BigRational,
    /// `(observed mean, p^h (n + 1))`.
    pub mean_check: (BigRational, BigRational),
    /// `n < 4`: outside the range of the theorem, reported but not asserted.
    pub informational: bool,
}

impl VarianceReport {
    pub fn matches(&self) -> bool {
        self.brute == self.formula && self.mean_check.0 == self.mean_check.1
    }

    pub fn passed(&self) -> bool {
        self.informational || self.matches()
    }
}

pub fn variance_report(table: &DivisorTable, h: usize) -> Result<VarianceReport, DivisorError> {
    let (p, n) = (table.p, table.n);
    Ok(VarianceReport {
        p,
        n,
        h,
        brute: variance_bruteforce(table, h)?,
        formula: variance_formula(p, n, h),
        mean_check: (observed_mean(table, h)?, rational(interval_mean(p, n, h))),
        informational: n < 4,
    })
}

/// `Σ_A (Σ_{B ∈ I(A;h)} d(B))^2` against
/// `(p-1) p^{h+n-1} Σ_{r=h+1}^{n1-1} (n+1-2r)^2 + p^{2h+n} (n+1)^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummationReport {
    pub p: u32,
    pub n: usize,
    pub h: usize,
    pub lhs: BigUint,
    pub rhs: BigRational,
}

impl SummationReport {
    pub fn passed(&self) -> bool {
        self.rhs == rational(BigInt::from(self.lhs.clone()))
    }
}

pub fn summation_rhs(p: u32, n: usize, h: usize) -> BigRational {
    let n1 = n / 2 + 1;
    let squares: i64 = (h + 1..n1).map(|r| {
        let x = n as i64 + 1 - 2 * r as i64;
        x * x
    }).sum();
    // p^{h+n-1} is fractional only when h = n = 0
    let lead = BigRational::new(BigInt::from(p - 1) * pow_int(p, h + n), BigInt::from(p));
    let tail = pow_int(p, 2 * h + n) * BigInt::from((n + 1) * (n + 1));
    lead * rational(squares) + rational(tail)
}

pub fn summation_identity_check(table: &DivisorTable, h: usize) -> Result<SummationReport, DivisorError> {
    let sums = table.class_sums(h)?;
    let per_class: BigUint = sums.iter().map(|&s| BigUint::from(s) * BigUint::from(s)).sum();
    let lhs = per_class * num_traits::pow(BigUint::from(table.p), h);
    let (p, n) = (table.p, table.n);
    Ok(SummationReport { p, n, h, lhs, rhs: summation_rhs(p, n, h) })
}

/// `true` when the variance is an integer, for display.
pub fn is_integral(x: &BigRational) -> bool {
    x.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpoly::{monic_enumerate, monic_from_index};

    fn f(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    fn ratio(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    /// `d(N)` by trial division over every monic candidate.
    fn divisors_by_search(field: &Field, b: &Poly) -> u32 {
        let n = b.degree().unwrap();
        (0..=n)
            .flat_map(|k| monic_enumerate(field, k))
            .filter(|e| b.rem(field, e).unwrap().is_zero())
            .count() as u32
    }

    #[test]
    fn table_agrees_with_trial_division() {
        for p in [2, 3] {
            let field = f(p);
            for n in 0..=4 {
                let table = DivisorTable::build(&field, n, DEFAULT_BUDGET).unwrap();
                for (i, b) in monic_enumerate(&field, n).enumerate() {
                    assert_eq!(table.count(i), divisors_by_search(&field, &b), "p={p} {}", b.display(&field));
                    assert_eq!(table.index_of(&b).unwrap(), i);
                }
            }
        }
    }

    #[test]
    fn table_examples() {
        for p in [2, 3, 5] {
            let field = f(p);
            let table = DivisorTable::build(&field, 3, DEFAULT_BUDGET).unwrap();
            assert_eq!(table.divisor_count(&Poly::monomial(3)).unwrap(), 4);
            let total: u64 = table.counts().iter().map(|&d| d as u64).sum();
            assert_eq!(total, 4 * (p as u64).pow(3));
        }
        // T^2 + T + 1 is irreducible over F_2
        let f2 = f(2);
        let table = DivisorTable::build(&f2, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(table.divisor_count(&Poly::from_codes(&f2, &[1, 1, 1]).unwrap()).unwrap(), 2);
        assert_eq!(DivisorTable::build(&Field::new(2, 2, None).unwrap(), 2, DEFAULT_BUDGET), Err(DivisorError::ExtensionFieldUnsupported));
        assert!(matches!(DivisorTable::build(&f(5), 9, 1000), Err(DivisorError::BudgetExceeded { .. })));
    }

    #[test]
    fn split_accumulation_matches() {
        let field = f(3);
        let full = DivisorTable::build(&field, 4, DEFAULT_BUDGET).unwrap();
        let work = table_work(3, 4) as u64;
        let mut acc = DivisorTable::empty(&field, 4).unwrap();
        for w in [0, 7, 100, 101, work].windows(2) {
            let mut part = DivisorTable::empty(&field, 4).unwrap();
            part.accumulate(w[0]..w[1]);
            acc.merge(&part);
        }
        assert_eq!(acc, full);
    }

    #[test]
    fn interval_sums() {
        let field = f(2);
        let n = 4;
        let table = DivisorTable::build(&field, n, DEFAULT_BUDGET).unwrap();
        for a in monic_enumerate(&field, n) {
            let whole = interval_sum(&table, &IntervalSpec::new(a.clone(), n)).unwrap();
            assert_eq!(whole, 5 * 16);
            let single = interval_sum(&table, &IntervalSpec::new(a.clone(), 0)).unwrap();
            assert_eq!(single, table.divisor_count(&a).unwrap() as u64);
            // members differ from the centre only below T^h
            for h in 0..=n {
                let iv = IntervalSpec::new(a.clone(), h);
                for i in iv.members(&table).unwrap() {
                    let b = monic_from_index(&field, n, i as u64);
                    assert!(b.sub(&field, &a).degree().is_none_or(|d| d < h));
                }
            }
        }
        let err = interval_sum(&table, &IntervalSpec::new(Poly::monomial(3), 1));
        assert_eq!(err, Err(DivisorError::DegreeMismatch { expected: 4 }));
    }

    #[test]
    fn interval_sum_depends_only_on_high_coefficients() {
        let field = f(3);
        let n = 4;
        let table = DivisorTable::build(&field, n, DEFAULT_BUDGET).unwrap();
        for h in 0..=n {
            for a in monic_enumerate(&field, n) {
                let s = interval_sum(&table, &IntervalSpec::new(a.clone(), h)).unwrap();
                let mut low = a.coeffs().to_vec();
                low[..h].iter_mut().for_each(|c| *c = crate::ffield::Elem::ZERO);
                let base = Poly::from_coeffs(low);
                assert_eq!(s, interval_sum(&table, &IntervalSpec::new(base, h)).unwrap());
            }
        }
    }

    #[test]
    fn variance_formula_examples() {
        assert_eq!(variance_formula(2, 4, 1), ratio(1, 1));
        assert_eq!(variance_formula(2, 4, 2), ratio(0, 1));
        assert_eq!(variance_formula(3, 4, 0), ratio(20, 3));
        assert_eq!(variance_formula(2, 5, 1), ratio(4, 1));
    }

    #[test]
    fn variance_bruteforce_examples() {
        let t4 = DivisorTable::build(&f(2), 4, DEFAULT_BUDGET).unwrap();
        assert_eq!(variance_bruteforce(&t4, 4).unwrap(), ratio(0, 1));
        assert_eq!(variance_bruteforce(&t4, 1).unwrap(), ratio(1, 1));
        let t5 = DivisorTable::build(&f(2), 5, DEFAULT_BUDGET).unwrap();
        assert_eq!(variance_bruteforce(&t5, 1).unwrap(), ratio(4, 1));
        let t34 = DivisorTable::build(&f(3), 4, DEFAULT_BUDGET).unwrap();
        assert_eq!(variance_bruteforce(&t34, 0).unwrap(), ratio(20, 3));
    }

    #[test]
    fn variance_and_mean_reconcile() {
        for (p, top) in [(2, 7), (3, 6), (5, 5)] {
            let field = f(p);
            for n in 1..=top {
                let table = DivisorTable::build(&field, n, DEFAULT_BUDGET).unwrap();
                for h in 0..=n {
                    let rep = variance_report(&table, h).unwrap();
                    assert_eq!(rep.mean_check.0, rep.mean_check.1, "p={p} n={n} h={h}");
                    assert!(rep.brute >= BigRational::zero());
                    if n >= 4 {
                        assert!(rep.matches(), "p={p} n={n} h={h}: {} vs {}", rep.brute, rep.formula);
                    }
                    let six_pn = pow_int(p, n) * BigInt::from(6);
                    assert!((&six_pn % rep.brute.denom()).is_zero());
                    assert!((&six_pn % rep.formula.denom()).is_zero());
                }
            }
        }
    }

    #[test]
    fn summation_identity() {
        for (p, top) in [(2, 7), (3, 6)] {
            let field = f(p);
            for n in 1..=top {
                let table = DivisorTable::build(&field, n, DEFAULT_BUDGET).unwrap();
                for h in 0..=n {
                    let rep = summation_identity_check(&table, h).unwrap();
                    assert!(rep.passed(), "p={p} n={n} h={h}: {} vs {}", rep.lhs, rep.rhs);
                }
            }
        }
        // no r in the sum once h ≥ n1 - 1
        let table = DivisorTable::build(&f(2), 4, DEFAULT_BUDGET).unwrap();
        let rep = summation_identity_check(&table, 2).unwrap();
        assert_eq!(rep.lhs, BigUint::from(2u32.pow(8) * 25));
    }
}
