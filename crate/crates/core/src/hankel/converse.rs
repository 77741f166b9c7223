//! Building sequences from a prescribed characteristic pair.
//!
//! Requiring that a polynomial `P` of degree `< m` lies in the kernel of
//! `H_{n+2-m, m}(α)` is a linear condition on `α`. The conditions for `A1`
//! and `A2` at their characteristic degrees cut out a small subspace of
//! `F_q^{n+1}`, which is enumerated and filtered by profile and pair.

use alloc::vec::Vec;

use super::charpoly::{canonical_pair, characterize};
use super::{HankelError, SymbolSeq};
use crate::ffield::{Elem, Field};
use crate::fpoly::Poly;
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConverseResult {
    /// `(rank, ρ, π)` of the class searched.
    pub target: (usize, usize, usize),
    /// Matching sequences, sorted by entry codes.
    pub sequences: Vec<SymbolSeq>,
    /// Index of the representative whose first nonzero entry is one.
    pub canonical: Option<usize>,
}

impl ConverseResult {
    pub fn canonical_sequence(&self) -> Option<&SymbolSeq> {
        self.canonical.map(|i| &self.sequences[i])
    }
}

fn degree_or_zero(p: &Poly) -> usize {
    p.degree().unwrap_or(0)
}

/// Picks the class named by the converse theorem for `(a1, a2, n)`.
fn default_target(a1: &Poly, a2: &Poly, n: usize) -> Result<(usize, usize, usize), HankelError> {
    let d1 = degree_or_zero(a1);
    let bound = Err(HankelError::BoundViolation { n });
    match d1 {
        0 => {
            if a2.is_zero() {
                return Ok((0, 0, 0));
            }
            if *a2 == Poly::monomial(n + 1) {
                return Ok((1, 0, 1));
            }
            let d2 = degree_or_zero(a2);
            if d2 >= 2 && n >= d2 {
                let r = n + 2 - d2;
                return Ok((r, 0, r));
            }
            bound
        }
        1 => {
            if n == 0 {
                return bound;
            }
            let d2 = degree_or_zero(a2);
            if d2 >= 3 && n >= d2 {
                let r = n + 2 - d2;
                return Ok((r, 1, r - 1));
            }
            Ok((1, 1, 0))
        }
        _ => {
            let d2 = degree_or_zero(a2);
            if n + 2 >= d1.max(d2) + d1 {
                Ok((d1, d1, 0))
            } else {
                bound
            }
        }
    }
}

/// Admissibility of a class for sequence degree `n`.
fn class_is_admissible(n: usize, (r, rho, pi): (usize, usize, usize)) -> bool {
    let n1 = (n + 2) / 2;
    if r != rho + pi || r > n1 {
        return false;
    }
    if n.is_multiple_of(2) && rho != n1 && r == n1 && r > 0 {
        return false;
    }
    true
}

/// All sequences in the class chosen by the converse theorem whose
/// characteristic pair is equivalent to `(a1, a2)`. Where the class is
/// unique up to scalars this is exactly `q - 1` sequences.
///
/// `budget` caps the number of candidate sequences enumerated.
pub fn seq_from_charpolys(field: &Field, a1: &Poly, a2: &Poly, n: usize, budget: u128) -> Result<ConverseResult, HankelError> {
    if a1.is_zero() {
        return Err(HankelError::BoundViolation { n });
    }
    if !a1.gcd(field, a2).degree().is_some_and(|d| d == 0) {
        return Err(HankelError::NotCoprime);
    }
    let target = default_target(a1, a2, n)?;
    seq_from_charpolys_with_target(field, a1, a2, n, target, budget)
}

/// As [`seq_from_charpolys`] with the class `(rank, ρ, π)` given explicitly.
pub fn seq_from_charpolys_with_target(
    field: &Field,
    a1: &Poly,
    a2: &Poly,
    n: usize,
    target: (usize, usize, usize),
    budget: u128,
) -> Result<ConverseResult, HankelError> {
    if a1.is_zero() {
        return Err(HankelError::BoundViolation { n });
    }
    if !a1.gcd(field, a2).degree().is_some_and(|d| d == 0) {
        return Err(HankelError::NotCoprime);
    }
    if !class_is_admissible(n, target) || degree_or_zero(a1) != target.1 {
        return Err(HankelError::BoundViolation { n });
    }
    let (r, _, _) = target;
    let (c1, c2) = (r, n + 2 - r);
    if degree_or_zero(a2) > c2 {
        return Err(HankelError::BoundViolation { n });
    }
    let mut rows: Vec<Vec<Elem>> = Vec::new();
    let mut require = |p: &Poly, m: usize| {
        if m > n + 1 || p.degree() >= Some(m) {
            return;
        }
        // row i of H_{n+2-m, m}(α) times p: Σ_j α_{i+j} p_j
        for i in 0..n + 2 - m {
            let mut row = alloc::vec![Elem::ZERO; n + 1];
            for (j, &c) in p.coeffs().iter().enumerate() {
                row[i + j] = field.add(row[i + j], c);
            }
            rows.push(row);
        }
    };
    require(a1, c1 + 1);
    if c1 == c2 {
        require(a2, c1 + 1);
    } else {
        require(a2, c2 + 1);
    }
    let basis = if rows.is_empty() {
        (0..=n)
            .map(|k| {
                let mut v = alloc::vec![Elem::ZERO; n + 1];
                v[k] = Elem::ONE;
                v
            })
            .collect()
    } else {
        Matrix::from_rows(&rows).kernel_basis(field)
    };
    let q = field.order() as u128;
    let needed = q.checked_pow(basis.len() as u32).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(HankelError::BudgetExceeded { needed, budget });
    }
    let want = canonical_pair(field, a1, a2, c1, c2);
    let mut sequences = Vec::new();
    let mut coeffs = alloc::vec![Elem::ZERO; basis.len()];
    for idx in 0..needed {
        let mut k = idx;
        for c in coeffs.iter_mut() {
            *c = field.elem((k % q) as u32).expect("digit below q");
            k /= q;
        }
        let mut entries = alloc::vec![Elem::ZERO; n + 1];
        for (c, b) in coeffs.iter().zip(&basis) {
            if c.is_zero() {
                continue;
            }
            for (e, &x) in entries.iter_mut().zip(b) {
                *e = field.add(*e, field.mul(*c, x));
            }
        }
        let seq = SymbolSeq::new(entries);
        let (profile, pair) = characterize(field, &seq);
        if profile.class() == target && pair == want {
            sequences.push(seq);
        }
    }
    sequences.sort();
    let canonical = sequences.iter().position(|s| s.entries().iter().find(|a| !a.is_zero()).is_none_or(|&a| a == Elem::ONE));
    Ok(ConverseResult { target, sequences, canonical })
}
