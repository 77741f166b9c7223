//! Hankel matrices `H_{l,m}(α)` built from a symbol sequence
//! `α = (α_0, .., α_n)`: exact rank and kernel, the `(ρ, π)` profile and
//! everything derived from it.
//!
//! Indices are 0-based throughout: entry `(i, j)` of `H_{l,m}(α)` is
//! `α_{i+j}` for `i < l`, `j < m`.

use alloc::vec::Vec;

use crate::ffield::{Elem, Field};
use crate::fpoly::Poly;
use crate::linalg::Matrix;

mod charpoly;
mod converse;
mod euclid;
mod extension;
mod form;

pub use charpoly::{canonical_pair, canonical_second, char_polys, characterize, kernel_predict, pairs_equivalent, CharPair, KernelDescription, Regime};
pub use converse::{seq_from_charpolys, seq_from_charpolys_with_target, ConverseResult};
pub use euclid::{euclid_correspondence_check, truncation_check, EuclidLevel, EuclidReport, TruncationReport};
pub use extension::{extend_profile, extension_check, ExtensionCase, ExtensionOutcome, ExtensionReport};
pub use form::{rho_pi_form, RhoPiForm};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HankelError {
    #[error("shape {l}x{m} does not fit a sequence of length {len}")]
    ShapeMismatch { l: usize, m: usize, len: usize },
    #[error("characteristic polynomials are not coprime")]
    NotCoprime,
    #[error("no sequence class of degree n = {n} matches the given polynomials")]
    BoundViolation { n: usize },
    #[error("not applicable: {0}")]
    NotApplicable(&'static str),
    #[error("enumeration of {needed} candidates exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
}

/// A sequence `α ∈ F_q^{n+1}`, `n ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolSeq {
    entries: Vec<Elem>,
}

impl SymbolSeq {
    /// Panics on an empty entry list.
    pub fn new(entries: Vec<Elem>) -> SymbolSeq {
        assert!(!entries.is_empty(), "a symbol sequence has at least one entry");
        SymbolSeq { entries }
    }

    pub fn from_codes(field: &Field, codes: &[u32]) -> Option<SymbolSeq> {
        if codes.is_empty() {
            return None;
        }
        codes.iter().map(|&c| field.elem(c)).collect::<Option<Vec<_>>>().map(SymbolSeq::new)
    }

    pub fn zero(n: usize) -> SymbolSeq {
        SymbolSeq::new(alloc::vec![Elem::ZERO; n + 1])
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn get(&self, k: usize) -> Elem {
        self.entries[k]
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn n(&self) -> usize {
        self.entries.len() - 1
    }

    /// Row count of the near-square matrix, `⌊(n+2)/2⌋`.
    pub fn n1(&self) -> usize {
        (self.n() + 2) / 2
    }

    /// Column count of the near-square matrix, `⌊(n+3)/2⌋`.
    pub fn n2(&self) -> usize {
        (self.n() + 3) / 2
    }

    /// The prefix `(α_0, .., α_k)`.
    pub fn truncate(&self, k: usize) -> SymbolSeq {
        SymbolSeq::new(self.entries[..=k].to_vec())
    }

    pub fn extend(&self, next: Elem) -> SymbolSeq {
        let mut entries = self.entries.clone();
        entries.push(next);
        SymbolSeq::new(entries)
    }

    pub fn scale(&self, field: &Field, c: Elem) -> SymbolSeq {
        SymbolSeq::new(self.entries.iter().map(|&a| field.mul(a, c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|a| a.is_zero())
    }

    /// Number of leading zero entries.
    pub fn leading_zeros(&self) -> usize {
        self.entries.iter().take_while(|a| a.is_zero()).count()
    }

    pub fn codes(&self) -> Vec<u32> {
        self.entries.iter().map(|a| a.code()).collect()
    }

    /// All shapes `(l, m)` with `l + m - 2 = n`, by increasing `m`.
    pub fn shapes(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.n();
        (1..=n + 1).map(move |m| (n + 2 - m, m))
    }
}

/// The matrix `H_{l,m}(α)` of a sequence, for any `l + m - 2 ≤ n`.
#[derive(Debug, Clone, Copy)]
pub struct HankelView<'a> {
    seq: &'a SymbolSeq,
    l: usize,
    m: usize,
}

impl<'a> HankelView<'a> {
    pub fn new(seq: &'a SymbolSeq, l: usize, m: usize) -> Result<HankelView<'a>, HankelError> {
        if l == 0 || m == 0 || l + m - 2 > seq.n() {
            return Err(HankelError::ShapeMismatch { l, m, len: seq.len() });
        }
        Ok(HankelView { seq, l, m })
    }

    pub fn seq(&self) -> &'a SymbolSeq {
        self.seq
    }

    pub fn rows(&self) -> usize {
        self.l
    }

    pub fn cols(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> Elem {
        self.seq.entries[i + j]
    }

    pub fn to_matrix(&self) -> Matrix {
        let mut mat = Matrix::zeros(self.l, self.m);
        for i in 0..self.l {
            for j in 0..self.m {
                mat.set(i, j, self.entry(i, j));
            }
        }
        mat
    }

    /// Whether the polynomial, read as a column vector, is annihilated.
    pub fn annihilates(&self, field: &Field, v: &Poly) -> bool {
        if v.degree() >= Some(self.m) {
            return false;
        }
        (0..self.l).all(|i| {
            v.coeffs()
                .iter()
                .enumerate()
                .fold(Elem::ZERO, |acc, (j, &c)| field.add(acc, field.mul(self.entry(i, j), c)))
                .is_zero()
        })
    }
}

pub fn hankel_rank(field: &Field, view: &HankelView<'_>) -> usize {
    view.to_matrix().rank(field)
}

/// Kernel basis in reduced echelon order, each vector read as a polynomial
/// of degree below `m`.
pub fn hankel_kernel_basis(field: &Field, view: &HankelView<'_>) -> Vec<Poly> {
    view.to_matrix().kernel_basis(field).into_iter().map(Poly::from_coeffs).collect()
}

/// The `(ρ, π)` profile and the characteristic degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RhoPiProfile {
    pub n: usize,
    pub rank: usize,
    pub rho: usize,
    pub pi: usize,
    pub c1: usize,
    pub c2: usize,
}

impl RhoPiProfile {
    pub fn quasi_regular(&self) -> bool {
        self.pi == 0
    }

    pub fn n1(&self) -> usize {
        (self.n + 2) / 2
    }

    /// `(rank, ρ, π)`.
    pub fn class(&self) -> (usize, usize, usize) {
        (self.rank, self.rho, self.pi)
    }

    pub(crate) fn from_class(n: usize, rank: usize, rho: usize) -> RhoPiProfile {
        RhoPiProfile { n, rank, rho, pi: rank - rho, c1: rank, c2: n + 2 - rank }
    }
}

fn leading_square_is_invertible(field: &Field, seq: &SymbolSeq, l: usize) -> bool {
    let view = HankelView { seq, l, m: l };
    view.to_matrix().rank(field) == l
}

/// `ρ` is the largest `l ≤ n1` with `det H_{l,l}(α) ≠ 0` (zero if none),
/// and `π = rank H_{n1,n2}(α) - ρ`.
pub fn rho_pi_profile(field: &Field, seq: &SymbolSeq) -> RhoPiProfile {
    let n = seq.n();
    let (n1, n2) = (seq.n1(), seq.n2());
    let rank = HankelView { seq, l: n1, m: n2 }.to_matrix().rank(field);
    // an invertible l x l block forces rank >= l, so start below the rank
    let rho = (1..=rank.min(n1)).rev().find(|&l| leading_square_is_invertible(field, seq, l)).unwrap_or(0);
    RhoPiProfile::from_class(n, rank, rho)
}
