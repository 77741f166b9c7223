//! Polynomials over `F_q`, coefficients stored low degree first.
//!
//! A polynomial doubles as a column vector: coefficient `i` is vector entry
//! `i`, so kernel vectors of Hankel matrices convert without reindexing.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::ffield::{Elem, Field, FieldError};

/// Polynomial with trimmed coefficients; the zero polynomial has none.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly { coeffs: vec![Elem::ONE] }
    }

    pub fn constant(c: Elem) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    /// `T^k`.
    pub fn monomial(k: usize) -> Poly {
        let mut coeffs = vec![Elem::ZERO; k + 1];
        coeffs[k] = Elem::ONE;
        Poly { coeffs }
    }

    /// Trailing zeros are dropped.
    pub fn from_coeffs(mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Builds a polynomial from integer codes, e.g. `[1, 0, 1]` is `T^2 + 1`.
    pub fn from_codes(field: &Field, codes: &[u32]) -> Option<Poly> {
        codes
            .iter()
            .map(|&c| field.elem(c))
            .collect::<Option<Vec<_>>>()
            .map(Poly::from_coeffs)
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    /// Degree, with `None` standing for `deg 0 = -inf`. `Option`'s ordering
    /// puts `None` below every `Some`, so `p.degree() <= Some(k)` holds for
    /// the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<Elem> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(Elem::ONE)
    }

    /// Coefficient vector padded with zeros to `len` entries.
    ///
    /// Panics if the polynomial does not fit.
    pub fn to_vector(&self, len: usize) -> Vec<Elem> {
        assert!(self.coeffs.len() <= len, "polynomial of degree {:?} does not fit in {len} entries", self.degree());
        let mut v = self.coeffs.clone();
        v.resize(len, Elem::ZERO);
        v
    }

    pub fn add(&self, field: &Field, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs((0..len).map(|i| field.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, field: &Field, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs((0..len).map(|i| field.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn scale(&self, field: &Field, c: Elem) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&a| field.mul(a, c)).collect())
    }

    /// Multiplication by `T^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Elem::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { coeffs }
    }

    pub fn mul(&self, field: &Field, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    /// Long division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn divmod(&self, field: &Field, divisor: &Poly) -> Result<(Poly, Poly), FieldError> {
        let db = divisor.degree().ok_or(FieldError::DivisionByZero)?;
        let lead_inv = field.inv(divisor.coeffs[db])?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Elem::ZERO; rem.len() - db];
        for k in (0..quot.len()).rev() {
            let c = field.mul(rem[k + db], lead_inv);
            quot[k] = c;
            if c.is_zero() {
                continue;
            }
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = field.sub(rem[k + i], field.mul(c, d));
            }
        }
        rem.truncate(db);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    pub fn rem(&self, field: &Field, divisor: &Poly) -> Result<Poly, FieldError> {
        Ok(self.divmod(field, divisor)?.1)
    }

    /// Scales to leading coefficient one; the zero polynomial is unchanged.
    pub fn monic(&self, field: &Field) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(c) => self.scale(field, field.inv(c).expect("leading coefficient is nonzero")),
        }
    }

    pub fn gcd(&self, field: &Field, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(field, &b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.monic(field)
    }

    pub fn is_coprime(&self, field: &Field, other: &Poly) -> bool {
        self.gcd(field, other) == Poly::one()
    }

    pub fn eval(&self, field: &Field, x: Elem) -> Elem {
        self.coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| field.add(field.mul(acc, x), c))
    }

    pub fn display<'a>(&'a self, field: &'a Field) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, field }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    field: &'a Field,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.poly.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let show_coeff = c != Elem::ONE || i == 0;
            if show_coeff {
                if self.field.is_prime_field() {
                    write!(f, "{}", c.code())?;
                } else {
                    write!(f, "({})", self.field.element(c))?;
                }
            }
            match i {
                0 => {}
                1 => f.write_str("T")?,
                _ => write!(f, "T^{i}")?,
            }
        }
        Ok(())
    }
}

/// The remainder sequence of the Euclidean algorithm.
///
/// `polys[i] = quotients[i] * polys[i + 1] + polys[i + 2]` holds exactly with
/// strictly decreasing degrees (the final division is exact, so its
/// remainder is the zero polynomial past the end of `polys`). The last entry
/// of `polys` is the last nonzero remainder and `gcd` is its monic form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EuclidChain {
    pub polys: Vec<Poly>,
    pub quotients: Vec<Poly>,
    pub degrees: Vec<usize>,
    pub gcd: Poly,
}

impl EuclidChain {
    /// Runs the Euclidean algorithm on `(a, b)` with `deg b < deg a` or
    /// `b = 0`. Returns `None` if `a = 0` or the degree condition fails.
    pub fn new(field: &Field, a: &Poly, b: &Poly) -> Option<EuclidChain> {
        if a.is_zero() || b.degree() >= a.degree() {
            return None;
        }
        let mut polys = vec![a.clone()];
        let mut quotients = Vec::new();
        let mut cur = b.clone();
        while !cur.is_zero() {
            let prev = polys.last().expect("chain is nonempty");
            let (qt, r) = prev.divmod(field, &cur).expect("cur is nonzero");
            quotients.push(qt);
            polys.push(cur);
            cur = r;
        }
        let degrees = polys.iter().map(|p| p.degree().expect("chain entries are nonzero")).collect();
        let gcd = polys.last().expect("chain is nonempty").monic(field);
        Some(EuclidChain { polys, quotients, degrees, gcd })
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }
}

/// The monic polynomial of degree `deg` whose lower coefficients have codes
/// given by the base-`q` digits of `index` (constant term least significant).
pub fn monic_from_index(field: &Field, deg: usize, mut index: u64) -> Poly {
    let q = field.order() as u64;
    let mut coeffs = Vec::with_capacity(deg + 1);
    for _ in 0..deg {
        coeffs.push(field.elem((index % q) as u32).expect("digit below q"));
        index /= q;
    }
    coeffs.push(Elem::ONE);
    Poly { coeffs }
}

/// All `q^deg` monic polynomials of degree `deg`, in index order.
pub fn monic_enumerate(field: &Field, deg: usize) -> impl Iterator<Item = Poly> + '_ {
    let count = (field.order() as u64).pow(deg as u32);
    (0..count).map(move |i| monic_from_index(field, deg, i))
}

/// All polynomials of degree at most `max_deg` (including zero), in code order.
pub fn poly_enumerate(field: &Field, max_deg: usize) -> impl Iterator<Item = Poly> + '_ {
    let q = field.order() as u64;
    let count = q.pow(max_deg as u32 + 1);
    (0..count).map(move |mut i| {
        let mut coeffs = Vec::with_capacity(max_deg + 1);
        for _ in 0..=max_deg {
            coeffs.push(field.elem((i % q) as u32).expect("digit below q"));
            i /= q;
        }
        Poly::from_coeffs(coeffs)
    })
}
