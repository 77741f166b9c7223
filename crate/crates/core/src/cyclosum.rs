//! Exact sums of `p`-th roots of unity, used to evaluate the exponential
//! sums over Hankel bilinear forms without floating point.
//!
//! An element of `Z[ζ]`, `ζ = exp(2πi / p)`, is stored by its coordinates in
//! the basis `1, ζ, .., ζ^{p-2}`; `ζ^{p-1}` is rewritten as
//! `-(1 + ζ + .. + ζ^{p-2})`. Since `Φ_p` is the minimal polynomial of `ζ`
//! the coordinates are unique, so zero tests and equality are exact.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::ffield::{is_prime, Elem, Field};
use crate::hankel::{rho_pi_profile, RhoPiProfile, SymbolSeq};

/// Default cap on `(n + 1) p^n`, the bilinear forms evaluated per sum.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("cannot combine elements of Z[ζ_{0}] and Z[ζ_{1}]")]
    PrimeMismatch(u32, u32),
    #[error("coordinate overflow")]
    Overflow,
    #[error("exponential sums need a prime field")]
    ExtensionFieldUnsupported,
    #[error("evaluating {needed} bilinear forms exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("the sequence before extension must be nonempty")]
    EmptySequence,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    p: u32,
    coords: Vec<i64>,
}

impl CycInt {
    pub fn zero(p: u32) -> Result<CycInt, CycError> {
        if !is_prime(p) {
            return Err(CycError::NotPrime(p));
        }
        Ok(CycInt { p, coords: alloc::vec![0; p as usize - 1] })
    }

    pub fn from_integer(p: u32, k: i64) -> Result<CycInt, CycError> {
        let mut z = CycInt::zero(p)?;
        z.coords[0] = k;
        Ok(z)
    }

    /// `Σ_k counts[k] ζ^k` for `counts` of length `p`.
    pub fn from_histogram(p: u32, counts: &[i64]) -> Result<CycInt, CycError> {
        let mut z = CycInt::zero(p)?;
        assert_eq!(counts.len(), p as usize, "histogram length must be p");
        let top = counts[p as usize - 1];
        for (c, &k) in z.coords.iter_mut().zip(counts) {
            *c = k.checked_sub(top).ok_or(CycError::Overflow)?;
        }
        Ok(z)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// The rational integer this equals, if it is one.
    pub fn as_integer(&self) -> Option<i64> {
        self.coords[1..].iter().all(|&c| c == 0).then_some(self.coords[0])
    }

    /// Coordinates on all of `1, ζ, .., ζ^{p-1}` with the last one zero.
    /// A rational integer `k` lifts to `(k, 0, .., 0)`; any representative
    /// `(c_0, c, c, .., c)` of it differs from that by a multiple of
    /// `1 + ζ + .. + ζ^{p-1}`.
    pub fn lift(&self) -> Vec<i64> {
        let mut out = self.coords.clone();
        out.push(0);
        out
    }

    fn same_ring(&self, other: &CycInt) -> Result<(), CycError> {
        if self.p != other.p {
            return Err(CycError::PrimeMismatch(self.p, other.p));
        }
        Ok(())
    }

    pub fn add(&self, other: &CycInt) -> Result<CycInt, CycError> {
        self.same_ring(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.checked_add(*b).ok_or(CycError::Overflow))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CycInt { p: self.p, coords })
    }

    pub fn neg(&self) -> CycInt {
        CycInt { p: self.p, coords: self.coords.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &CycInt) -> Result<CycInt, CycError> {
        self.same_ring(other)?;
        let p = self.p as usize;
        // product on the length-p lift, then fold ζ^{p-1} back
        let mut full = alloc::vec![0i64; p];
        for (i, &a) in self.coords.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coords.iter().enumerate() {
                let t = a.checked_mul(b).ok_or(CycError::Overflow)?;
                let k = (i + j) % p;
                full[k] = full[k].checked_add(t).ok_or(CycError::Overflow)?;
            }
        }
        CycInt::from_histogram(self.p, &full)
    }

    /// Image under `ζ ↦ ζ^{-1}`, i.e. complex conjugation.
    pub fn conj(&self) -> CycInt {
        let p = self.p as usize;
        let mut full = alloc::vec![0i64; p];
        for (i, &c) in self.coords.iter().enumerate() {
            full[(p - i) % p] = c;
        }
        CycInt::from_histogram(self.p, &full).expect("conjugation keeps coordinates in range")
    }
}

/// `ζ^{k mod p}`.
pub fn cyc_from_exponent(p: u32, k: i64) -> Result<CycInt, CycError> {
    let mut counts = alloc::vec![0i64; CycInt::zero(p)?.coords.len() + 1];
    counts[k.rem_euclid(p as i64) as usize] = 1;
    CycInt::from_histogram(p, &counts)
}

/// Inner sum of one `(l, m)` block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSum {
    pub l: usize,
    pub m: usize,
    pub value: CycInt,
}

fn check_prime_field(field: &Field) -> Result<u32, CycError> {
    if !field.is_prime_field() {
        return Err(CycError::ExtensionFieldUnsupported);
    }
    Ok(field.characteristic())
}

/// `(n + 1) p^n`.
pub fn inner_sum_work(p: u32, n: usize) -> u128 {
    (p as u128).checked_pow(n as u32).and_then(|x| x.checked_mul(n as u128 + 1)).unwrap_or(u128::MAX)
}

/// For each `l + m = n`, `Σ ζ^{sign · eᵀ H_{l+1,m+1}(α) f}` over
/// `e ∈ F_p^l × {1}` and `f ∈ F_p^m × {1}`, by direct enumeration.
pub fn hankel_block_sums(field: &Field, seq: &SymbolSeq, sign: i8, budget: u128) -> Result<Vec<BlockSum>, CycError> {
    let p = check_prime_field(field)?;
    assert!(sign == 1 || sign == -1, "sign must be ±1");
    let n = seq.n();
    let needed = inner_sum_work(p, n);
    if needed > budget {
        return Err(CycError::BudgetExceeded { needed, budget });
    }
    let alpha: Vec<u64> = seq.codes().iter().map(|&c| c as u64).collect();
    let pu = p as u64;
    let mut out = Vec::with_capacity(n + 1);
    for l in 0..=n {
        let m = n - l;
        let mut hist = alloc::vec![0i64; p as usize];
        let mut e = alloc::vec![0u64; l + 1];
        let mut f = alloc::vec![0u64; m + 1];
        let mut row = alloc::vec![0u64; m + 1];
        for ei in 0..pu.pow(l as u32) {
            fill_digits(ei, pu, &mut e);
            for (j, v) in row.iter_mut().enumerate() {
                *v = e.iter().enumerate().map(|(i, &x)| x * alpha[i + j]).sum::<u64>() % pu;
            }
            for fi in 0..pu.pow(m as u32) {
                fill_digits(fi, pu, &mut f);
                let x = row.iter().zip(&f).map(|(a, b)| a * b).sum::<u64>() % pu;
                let k = if sign == 1 { x } else { (pu - x) % pu };
                hist[k as usize] += 1;
            }
        }
        out.push(BlockSum { l, m, value: CycInt::from_histogram(p, &hist)? });
    }
    Ok(out)
}

/// Base-`p` digits of `index` followed by a final 1.
fn fill_digits(mut index: u64, p: u64, out: &mut [u64]) {
    let last = out.len() - 1;
    for d in out[..last].iter_mut() {
        *d = index % p;
        index /= p;
    }
    out[last] = 1;
}

/// The sum of all block sums.
pub fn inner_hankel_sum(field: &Field, seq: &SymbolSeq, sign: i8, budget: u128) -> Result<CycInt, CycError> {
    let blocks = hankel_block_sums(field, seq, sign, budget)?;
    let mut total = CycInt::zero(field.characteristic())?;
    for b in &blocks {
        total = total.add(&b.value)?;
    }
    Ok(total)
}

/// Which statement applies to `α⁻`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpsumCase {
    /// `π(α⁻) ≥ 1`: every block sum vanishes.
    Degenerate,
    /// `n` odd and `α⁻` of full rank `n1`: every block sum vanishes.
    FullRankOdd,
    /// `α⁻` quasi-regular of rank `r ≤ n1 - 1`: the summed product is
    /// `p^{2n-2r+1} (n+1-2r)^2`.
    QuasiRegular { r: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionSums {
    pub next: Elem,
    pub minus: Vec<BlockSum>,
    pub plus: CycInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpsumReport {
    pub p: u32,
    /// Degree of the extended sequences.
    pub n: usize,
    pub profile: RhoPiProfile,
    pub case: ExpsumCase,
    pub extensions: Vec<ExtensionSums>,
    /// `Σ_{α_n} S_-(α) S_+(α)`.
    pub product_sum: CycInt,
    /// The integer the product sum should equal, in the quasi-regular case.
    pub predicted: Option<i64>,
    pub failures: Vec<String>,
}

impl ExpsumReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluates both sums for every extension `(α⁻ | α_n)` and checks the
/// statement that applies to `α⁻`.
pub fn expsum_lemma_check(field: &Field, seq_minus: &SymbolSeq, budget: u128) -> Result<ExpsumReport, CycError> {
    let p = check_prime_field(field)?;
    if seq_minus.is_empty() {
        return Err(CycError::EmptySequence);
    }
    let n = seq_minus.len();
    let n1 = n / 2 + 1;
    let profile = rho_pi_profile(field, seq_minus);
    let case = if profile.pi >= 1 {
        ExpsumCase::Degenerate
    } else if n % 2 == 1 && profile.rho == n1 {
        ExpsumCase::FullRankOdd
    } else {
        assert!(profile.rank < n1, "quasi-regular rank {} reaches n1 = {n1} for even n", profile.rank);
        ExpsumCase::QuasiRegular { r: profile.rank }
    };
    let mut failures = Vec::new();
    let mut extensions = Vec::new();
    let mut product_sum = CycInt::zero(p)?;
    for next in field.elements() {
        let seq = seq_minus.extend(next);
        let minus = hankel_block_sums(field, &seq, -1, budget)?;
        let plus = inner_hankel_sum(field, &seq, 1, budget)?;
        let mut s_minus = CycInt::zero(p)?;
        for b in &minus {
            s_minus = s_minus.add(&b.value)?;
            if !matches!(case, ExpsumCase::QuasiRegular { .. }) && !b.value.is_zero() {
                failures.push(format!("next={}: block ({}, {}) sums to {:?}", next.code(), b.l, b.m, b.value.coords()));
            }
        }
        if s_minus != plus.conj() {
            failures.push(format!("next={}: the two signs are not conjugate", next.code()));
        }
        product_sum = product_sum.add(&s_minus.mul(&plus)?)?;
        extensions.push(ExtensionSums { next, minus, plus });
    }
    let predicted = match case {
        ExpsumCase::QuasiRegular { r } => {
            let k = n as i64 + 1 - 2 * r as i64;
            let value = (p as i64).checked_pow((2 * n - 2 * r + 1) as u32).and_then(|x| x.checked_mul(k * k)).ok_or(CycError::Overflow)?;
            if product_sum.as_integer() != Some(value) {
                failures.push(format!("product sum {:?} differs from {value}", product_sum.coords()));
            }
            Some(value)
        }
        _ => None,
    };
    Ok(ExpsumReport { p, n, profile, case, extensions, product_sum, predicted, failures })
}

#[cfg(test)]
mod tests {
    extern crate std;

    use super::*;
    use alloc::vec;

    fn f(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    fn seq(field: &Field, codes: &[u32]) -> SymbolSeq {
        SymbolSeq::from_codes(field, codes).unwrap()
    }

    /// Numerical value of an element, for an independent cross-check.
    fn approx(z: &CycInt) -> (f64, f64) {
        let p = z.p() as f64;
        z.coords().iter().enumerate().fold((0.0, 0.0), |(re, im), (k, &c)| {
            let t = 2.0 * core::f64::consts::PI * k as f64 / p;
            (re + c as f64 * t.cos(), im + c as f64 * t.sin())
        })
    }

    #[test]
    fn exponent_examples() {
        assert_eq!(cyc_from_exponent(2, 1).unwrap().coords(), &[-1]);
        assert_eq!(cyc_from_exponent(3, 2).unwrap().coords(), &[-1, -1]);
        for p in [2, 3, 5, 7] {
            assert_eq!(cyc_from_exponent(p, 0).unwrap(), CycInt::from_integer(p, 1).unwrap());
            let mut total = CycInt::zero(p).unwrap();
            for k in 0..p as i64 {
                assert_eq!(cyc_from_exponent(p, k).unwrap(), cyc_from_exponent(p, k + p as i64).unwrap());
                assert_eq!(cyc_from_exponent(p, k).unwrap(), cyc_from_exponent(p, k - 3 * p as i64).unwrap());
                total = total.add(&cyc_from_exponent(p, k).unwrap()).unwrap();
            }
            assert!(total.is_zero());
        }
        assert_eq!(CycInt::zero(4), Err(CycError::NotPrime(4)));
    }

    #[test]
    fn ring_arithmetic() {
        let z = cyc_from_exponent(2, 1).unwrap();
        assert_eq!(z.mul(&z).unwrap().as_integer(), Some(1));
        assert_eq!(z.add(&CycInt::from_integer(3, 1).unwrap()), Err(CycError::PrimeMismatch(2, 3)));
        for p in [3, 5, 7] {
            for a in 0..p as i64 {
                for b in 0..p as i64 {
                    let prod = cyc_from_exponent(p, a).unwrap().mul(&cyc_from_exponent(p, b).unwrap()).unwrap();
                    assert_eq!(prod, cyc_from_exponent(p, a + b).unwrap());
                }
                assert_eq!(cyc_from_exponent(p, a).unwrap().conj(), cyc_from_exponent(p, -a).unwrap());
            }
        }
        // |1 + ζ|^2 = 2 + ζ + ζ^{-1} for p = 5, checked numerically
        let w = CycInt::from_integer(5, 1).unwrap().add(&cyc_from_exponent(5, 1).unwrap()).unwrap();
        let norm = w.mul(&w.conj()).unwrap();
        let (re, im) = approx(&norm);
        let expect = 2.0 + 2.0 * (2.0 * core::f64::consts::PI / 5.0).cos();
        assert!((re - expect).abs() < 1e-9 && im.abs() < 1e-9);
        assert_eq!(CycInt::from_integer(5, 7).unwrap().lift(), vec![7, 0, 0, 0, 0]);
    }

    #[test]
    fn inner_sum_examples() {
        let f2 = f(2);
        let zero = inner_hankel_sum(&f2, &SymbolSeq::zero(2), 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(zero.as_integer(), Some(12));
        // α = (1, 0): blocks (0,1), (1,0) each give ζ^0 + ζ^1 = 0
        let s = inner_hankel_sum(&f2, &seq(&f2, &[1, 0]), 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(s.as_integer(), Some(0));
        let f3 = f(3);
        for codes in [[0, 1, 2], [1, 2, 2], [2, 0, 1]] {
            let a = seq(&f3, &codes);
            let plus = inner_hankel_sum(&f3, &a, 1, DEFAULT_BUDGET).unwrap();
            let minus = inner_hankel_sum(&f3, &a, -1, DEFAULT_BUDGET).unwrap();
            assert_eq!(minus, plus.conj());
        }
        assert!(matches!(inner_hankel_sum(&f3, &SymbolSeq::zero(12), 1, 1000), Err(CycError::BudgetExceeded { .. })));
        assert_eq!(inner_hankel_sum(&Field::new(2, 2, None).unwrap(), &SymbolSeq::zero(1), 1, 10), Err(CycError::ExtensionFieldUnsupported));
    }

    #[test]
    fn lemma_examples() {
        let f2 = f(2);
        let rep = expsum_lemma_check(&f2, &seq(&f2, &[1, 0]), DEFAULT_BUDGET).unwrap();
        assert_eq!(rep.case, ExpsumCase::QuasiRegular { r: 1 });
        assert_eq!(rep.predicted, Some(8));
        assert!(rep.passed(), "{:?}", rep.failures);
        let rep = expsum_lemma_check(&f2, &seq(&f2, &[0, 0, 1]), DEFAULT_BUDGET).unwrap();
        assert_eq!(rep.case, ExpsumCase::Degenerate);
        assert!(rep.extensions.iter().all(|e| e.minus.iter().all(|b| b.value.is_zero())));
        assert!(rep.passed());
        let f3 = f(3);
        let rep = expsum_lemma_check(&f3, &SymbolSeq::zero(1), DEFAULT_BUDGET).unwrap();
        assert_eq!(rep.predicted, Some(2187));
        assert_eq!(rep.product_sum.as_integer(), Some(2187));
    }

    #[test]
    fn lemma_holds_exhaustively() {
        for (p, top) in [(2u32, 5usize), (3, 4)] {
            let field = f(p);
            for len in 1..=top {
                let total = (p as u64).pow(len as u32);
                for idx in 0..total {
                    let mut codes = vec![0u32; len];
                    let mut k = idx;
                    for c in codes.iter_mut() {
                        *c = (k % p as u64) as u32;
                        k /= p as u64;
                    }
                    let rep = expsum_lemma_check(&field, &seq(&field, &codes), DEFAULT_BUDGET).unwrap();
                    assert!(rep.passed(), "p={p} {codes:?}: {:?}", rep.failures);
                }
            }
        }
    }
}
