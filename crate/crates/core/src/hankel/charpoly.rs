//! Characteristic polynomials and the kernel description they generate.

use alloc::vec::Vec;

use super::{hankel_kernel_basis, rho_pi_profile, HankelError, HankelView, RhoPiProfile, SymbolSeq};
use crate::ffield::{Elem, Field};
use crate::fpoly::Poly;
use crate::linalg::in_span;

/// The characteristic pair `(A1, A2)` in canonical form.
///
/// `A1` is monic. When `c1 < c2`, `A2` is only determined up to a scalar
/// and multiples `B·A1` with `deg B ≤ c2 - c1`; the canonical choice drops
/// those multiples from the quotient of `A2` by `A1` and makes the result
/// monic. When `c1 = c2` both polynomials come from one two-dimensional
/// kernel: `A2` is its monic element of least degree and `A1` the monic
/// element of top degree with no `T^{deg A2}` term.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharPair {
    pub a1: Poly,
    pub a2: Poly,
}

/// `A2` with the quotient terms of degree `≤ gap` removed, made monic.
pub fn canonical_second(field: &Field, a2: &Poly, a1: &Poly, gap: usize) -> Poly {
    if a2.is_zero() {
        return Poly::zero();
    }
    let (q, r) = a2.divmod(field, a1).expect("A1 is nonzero");
    let high: Vec<Elem> = q.coeffs().iter().enumerate().map(|(i, &c)| if i <= gap { Elem::ZERO } else { c }).collect();
    Poly::from_coeffs(high).mul(field, a1).add(field, &r).monic(field)
}

fn canonical_square(field: &Field, a: &Poly, b: &Poly) -> CharPair {
    let (mut hi, mut lo) = if a.degree() >= b.degree() { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
    if hi.degree() == lo.degree() {
        let c = field.div(lo.leading().expect("nonzero"), hi.leading().expect("nonzero")).expect("nonzero");
        lo = lo.sub(field, &hi.scale(field, c));
    }
    assert!(!lo.is_zero(), "the two kernel generators are dependent");
    let a2 = lo.monic(field);
    hi = hi.monic(field);
    let d2 = a2.degree().expect("nonzero");
    let a1 = hi.sub(field, &a2.scale(field, hi.coeff(d2)));
    CharPair { a1, a2 }
}

/// Puts any valid pair for characteristic degrees `(c1, c2)` into canonical
/// form, so that two pairs describe the same kernels iff their canonical
/// forms are equal.
pub fn canonical_pair(field: &Field, a1: &Poly, a2: &Poly, c1: usize, c2: usize) -> CharPair {
    if c1 == c2 && !a2.is_zero() {
        return canonical_square(field, a1, a2);
    }
    CharPair { a1: a1.monic(field), a2: canonical_second(field, a2, a1, c2 - c1) }
}

pub fn pairs_equivalent(field: &Field, x: &CharPair, y: &CharPair, c1: usize, c2: usize) -> bool {
    canonical_pair(field, &x.a1, &x.a2, c1, c2) == canonical_pair(field, &y.a1, &y.a2, c1, c2)
}

fn kernel_at(field: &Field, seq: &SymbolSeq, m: usize) -> Vec<Poly> {
    let view = HankelView::new(seq, seq.n() + 2 - m, m).expect("shape within the sequence");
    hankel_kernel_basis(field, &view)
}

/// Profile and canonical characteristic pair together.
pub fn characterize(field: &Field, seq: &SymbolSeq) -> (RhoPiProfile, CharPair) {
    let profile = rho_pi_profile(field, seq);
    let pair = pair_for_profile(field, seq, &profile);
    (profile, pair)
}

pub fn char_polys(field: &Field, seq: &SymbolSeq) -> CharPair {
    characterize(field, seq).1
}

fn pair_for_profile(field: &Field, seq: &SymbolSeq, p: &RhoPiProfile) -> CharPair {
    let n = p.n;
    if p.rank == 0 {
        return CharPair { a1: Poly::one(), a2: Poly::zero() };
    }
    if n == 0 {
        // a single nonzero entry: no kernel exists at any shape
        return CharPair { a1: Poly::monomial(1), a2: Poly::one() };
    }
    if p.rank == 1 {
        return if p.rho == 1 {
            let a1 = single_generator(field, seq, 2);
            CharPair { a1, a2: Poly::one() }
        } else {
            CharPair { a1: Poly::one(), a2: Poly::monomial(n + 1) }
        };
    }
    if p.c1 == p.c2 {
        let basis = kernel_at(field, seq, p.c1 + 1);
        assert_eq!(basis.len(), 2);
        return canonical_square(field, &basis[0], &basis[1]);
    }
    let a1 = single_generator(field, seq, p.c1 + 1);
    let gap = p.c2 - p.c1;
    let m = p.c2 + 1;
    let multiples: Vec<Vec<Elem>> = (0..=gap).map(|j| a1.shift(j).to_vector(m)).collect();
    let a2 = kernel_at(field, seq, m)
        .into_iter()
        .find(|v| !in_span(field, &multiples, &v.to_vector(m)))
        .expect("the kernel gains a second generator");
    let a2 = canonical_second(field, &a2, &a1, gap);
    CharPair { a1, a2 }
}

fn single_generator(field: &Field, seq: &SymbolSeq, m: usize) -> Poly {
    let basis = kernel_at(field, seq, m);
    assert_eq!(basis.len(), 1, "kernel at the first characteristic degree is a line");
    basis[0].monic(field)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Trivial,
    SingleGenerator,
    DoubleGenerator,
}

/// The kernel of `H_{l,m}(α)` as predicted from the profile and pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelDescription {
    pub l: usize,
    pub m: usize,
    pub c1: usize,
    pub c2: usize,
    pub pair: CharPair,
    pub regime: Regime,
    pub predicted_dim: usize,
    /// `T^j A1` for `j ≤ m - c1 - 1`, then `T^j A2` for `j ≤ m - c2 - 1`.
    pub generators: Vec<Poly>,
}

pub fn kernel_predict(field: &Field, seq: &SymbolSeq, l: usize, m: usize) -> Result<KernelDescription, HankelError> {
    if l == 0 || m == 0 || l + m - 2 != seq.n() {
        return Err(HankelError::ShapeMismatch { l, m, len: seq.len() });
    }
    let (p, pair) = characterize(field, seq);
    let n = p.n;
    let (regime, predicted_dim) = if m <= p.c1 {
        (Regime::Trivial, 0)
    } else if m <= p.c2 {
        (Regime::SingleGenerator, m - p.c1)
    } else {
        (Regime::DoubleGenerator, 2 * m - n - 2)
    };
    let mut generators = Vec::new();
    if m > p.c1 {
        generators.extend((0..m - p.c1).map(|j| pair.a1.shift(j)));
    }
    if m > p.c2 {
        generators.extend((0..m - p.c2).map(|j| pair.a2.shift(j)));
    }
    Ok(KernelDescription { l, m, c1: p.c1, c2: p.c2, pair, regime, predicted_dim, generators })
}
