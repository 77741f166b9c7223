//! Row reduction of `H_{l,m}(α)` to its `(ρ, π)`-form.
//!
//! With `x` solving `H_{ρ,ρ}(α) x = (α_ρ, .., α_{2ρ-1})`, rows `i = l-1`
//! down to `ρ` (0-based) become `R_i - Σ_t x_t R_{i-ρ+t}`. Every reduced row
//! is again a Hankel slice of a single tail sequence
//! `β_k = α_k - Σ_t x_t α_{k-ρ+t}`, `k ≥ ρ`; the tail vanishes except
//! for its last `π` entries.

use alloc::vec::Vec;

use super::{rho_pi_profile, HankelError, HankelView, SymbolSeq};
use crate::ffield::{Elem, Field};
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhoPiForm {
    pub l: usize,
    pub m: usize,
    pub rho: usize,
    /// Empty when the form is degenerate (the matrix itself).
    pub x: Vec<Elem>,
    /// `(α_0, .., α_{ρ+m-2})`, the entries of the untouched top rows.
    pub alpha_prime: Vec<Elem>,
    /// `(β_ρ, .., β_n)`.
    pub beta: Vec<Elem>,
    pub pi_observed: usize,
    /// The reduced matrix.
    pub matrix: Matrix,
}

impl RhoPiForm {
    pub fn is_degenerate(&self) -> bool {
        self.x.is_empty()
    }
}

/// Solves `H_{ρ,ρ}(α) x = (α_ρ, .., α_{2ρ-1})` by elimination on the
/// augmented matrix. The block is invertible by definition of `ρ`.
fn solve_leading_block(field: &Field, seq: &SymbolSeq, rho: usize) -> Vec<Elem> {
    let mut aug = Matrix::zeros(rho, rho + 1);
    for i in 0..rho {
        for j in 0..rho {
            aug.set(i, j, seq.get(i + j));
        }
        aug.set(i, rho, seq.get(rho + i));
    }
    let pivots = aug.rref(field);
    debug_assert_eq!(pivots, (0..rho).collect::<Vec<_>>());
    (0..rho).map(|i| aug.get(i, rho)).collect()
}

pub fn rho_pi_form(field: &Field, seq: &SymbolSeq, l: usize, m: usize) -> Result<RhoPiForm, HankelError> {
    if l == 0 || m == 0 || l + m - 2 != seq.n() {
        return Err(HankelError::ShapeMismatch { l, m, len: seq.len() });
    }
    let view = HankelView::new(seq, l, m)?;
    let mut matrix = view.to_matrix();
    let profile = rho_pi_profile(field, seq);
    let rho = profile.rho;
    let n1 = seq.n1();
    if rho == 0 || rho >= n1 || l <= rho {
        return Ok(RhoPiForm {
            l,
            m,
            rho,
            x: Vec::new(),
            alpha_prime: seq.entries().to_vec(),
            beta: Vec::new(),
            pi_observed: profile.pi,
            matrix,
        });
    }
    let x = solve_leading_block(field, seq, rho);
    let original = matrix.clone();
    for i in (rho..l).rev() {
        for j in 0..m {
            let mut v = original.get(i, j);
            for (t, &xt) in x.iter().enumerate() {
                v = field.sub(v, field.mul(xt, original.get(i - rho + t, j)));
            }
            matrix.set(i, j, v);
        }
    }
    // read the tail off the reduced rows; each skew-diagonal must be constant
    let n = seq.n();
    let mut beta: Vec<Option<Elem>> = alloc::vec![None; n + 1 - rho];
    for i in rho..l {
        for j in 0..m {
            let slot = &mut beta[i + j - rho];
            match slot {
                None => *slot = Some(matrix.get(i, j)),
                Some(b) => assert_eq!(*b, matrix.get(i, j), "reduced rows are not Hankel"),
            }
        }
    }
    let beta: Vec<Elem> = beta.into_iter().map(|b| b.expect("every tail index is covered")).collect();
    let pi_observed = match beta.iter().position(|b| !b.is_zero()) {
        Some(k) => n + 1 - (k + rho),
        None => 0,
    };
    Ok(RhoPiForm {
        l,
        m,
        rho,
        x,
        alpha_prime: seq.entries()[..rho + m - 1].to_vec(),
        beta,
        pi_observed,
        matrix,
    })
}
