//! Exact arithmetic in `F_p` and `F_{p^e}`.
//!
//! Elements are stored as a canonical integer code: for the prime field the
//! residue itself, for an extension field the coefficient tuple
//! `(c_0, .., c_{e-1})` of the residue polynomial packed as
//! `c_0 + c_1 p + .. + c_{e-1} p^{e-1}`. Two elements are equal exactly when
//! their codes are equal, and enumerating codes `0..q` lists the field in
//! lexicographic order with the highest coefficient most significant
//! (`GF(4)`: `0, 1, x, x+1`).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Largest extension degree accepted by [`Field::new`].
pub const MAX_EXTENSION_DEGREE: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("modulus {0:?} is not a monic irreducible polynomial")]
    NotIrreducible(Vec<u32>),
    #[error("modulus degree does not match extension degree {expected}")]
    DegreeMismatch { expected: u32 },
    #[error("field order {p}^{e} is out of range")]
    TooLarge { p: u32, e: u32 },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
}

/// A field element in canonical form. Only meaningful together with the
/// [`Field`] that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    /// The canonical integer code of the element.
    #[inline]
    pub const fn code(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// A finite field `F_q`, `q = p^e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Field {
    p: u32,
    e: u32,
    q: u32,
    /// Monic modulus, low degree first, length `e + 1`. Empty for `e = 1`.
    modulus: Vec<u32>,
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// Builds `F_{p^e}`. When `e > 1` and no modulus is given, the smallest
    /// monic irreducible of degree `e` is used, where candidates are ordered by
    /// the code of their lower coefficients (same order as element codes).
    pub fn new(p: u32, e: u32, modulus: Option<&[u32]>) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if e == 0 || e > MAX_EXTENSION_DEGREE {
            return Err(FieldError::TooLarge { p, e });
        }
        let q = (p as u64)
            .checked_pow(e)
            .filter(|&q| q <= u32::MAX as u64 / 2)
            .ok_or(FieldError::TooLarge { p, e })? as u32;
        if e == 1 {
            if let Some(m) = modulus {
                // A linear modulus is allowed as long as it is monic of degree 1.
                if !m.is_empty() && (m.len() != 2 || m[1] != 1 || m[0] >= p) {
                    return Err(FieldError::DegreeMismatch { expected: 1 });
                }
            }
            return Ok(Field { p, e, q, modulus: Vec::new() });
        }
        let modulus = match modulus {
            Some(m) => {
                if m.len() != e as usize + 1 {
                    return Err(FieldError::DegreeMismatch { expected: e });
                }
                if m.iter().any(|&c| c >= p) || m[e as usize] != 1 || !fp_is_irreducible(p, m) {
                    return Err(FieldError::NotIrreducible(m.to_vec()));
                }
                m.to_vec()
            }
            None => smallest_irreducible(p, e),
        };
        Ok(Field { p, e, q, modulus })
    }

    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Field, FieldError> {
        Field::new(p, 1, None)
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.e
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    /// Monic modulus, low degree first; empty for a prime field.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn is_prime_field(&self) -> bool {
        self.e == 1
    }

    /// Element with the given canonical code, if it is in range.
    pub fn elem(&self, code: u32) -> Option<Elem> {
        (code < self.q).then_some(Elem(code))
    }

    /// Image of an integer under `Z -> F_p ⊆ F_q`.
    pub fn from_int(&self, k: i64) -> Elem {
        Elem(k.rem_euclid(self.p as i64) as u32)
    }

    /// Coefficient tuple of the residue polynomial, low degree first.
    pub fn digits(&self, a: Elem) -> Vec<u32> {
        let mut out = vec![0; self.e as usize];
        let mut c = a.0;
        for d in out.iter_mut() {
            *d = c % self.p;
            c /= self.p;
        }
        out
    }

    /// Inverse of [`Field::digits`]. Digits must be reduced mod `p`.
    pub fn from_digits(&self, digits: &[u32]) -> Option<Elem> {
        if digits.len() != self.e as usize || digits.iter().any(|&d| d >= self.p) {
            return None;
        }
        Some(Elem(digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)))
    }

    /// All `q` elements in code order, zero first.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.q).map(Elem)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.e == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= self.p { s - self.p } else { s });
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        Elem(out)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.e == 1 {
            return Elem(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        while x > 0 {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        Elem(out)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if self.e == 1 {
            return Elem(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let e = self.e as usize;
        let p = self.p as u64;
        let mut x = [0u64; MAX_EXTENSION_DEGREE as usize];
        let mut y = [0u64; MAX_EXTENSION_DEGREE as usize];
        let (mut ca, mut cb) = (a.0, b.0);
        for i in 0..e {
            x[i] = (ca % self.p) as u64;
            y[i] = (cb % self.p) as u64;
            ca /= self.p;
            cb /= self.p;
        }
        let mut prod = [0u64; 2 * MAX_EXTENSION_DEGREE as usize];
        for i in 0..e {
            if x[i] == 0 {
                continue;
            }
            for j in 0..e {
                prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
            }
        }
        // Reduce with x^e = -(m_0 + .. + m_{e-1} x^{e-1}).
        for k in (e..2 * e - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &m) in self.modulus[..e].iter().enumerate() {
                let idx = k - e + i;
                prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
            }
        }
        let mut out = 0u64;
        for i in (0..e).rev() {
            out = out * p + prod[i];
        }
        Elem(out as u32)
    }

    pub fn pow(&self, a: Elem, mut k: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(a, self.q as u64 - 2))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Checked element wrapper bound to this field.
    pub fn element(&self, a: Elem) -> FieldElement<'_> {
        FieldElement { field: self, elem: a }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "GF({}^{})", self.p, self.e)
        }
    }
}

/// Arithmetic operation selector for [`FieldElement::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// An element carrying its field, for call sites that mix fields.
#[derive(Debug, Clone, Copy)]
pub struct FieldElement<'f> {
    field: &'f Field,
    elem: Elem,
}

impl<'f> FieldElement<'f> {
    pub fn field(&self) -> &'f Field {
        self.field
    }

    pub fn elem(&self) -> Elem {
        self.elem
    }

    pub fn arith(self, other: FieldElement<'_>, op: ArithOp) -> Result<FieldElement<'f>, FieldError> {
        if !core::ptr::eq(self.field, other.field) && self.field != other.field {
            return Err(FieldError::FieldMismatch);
        }
        let f = self.field;
        let elem = match op {
            ArithOp::Add => f.add(self.elem, other.elem),
            ArithOp::Sub => f.sub(self.elem, other.elem),
            ArithOp::Mul => f.mul(self.elem, other.elem),
        };
        Ok(FieldElement { field: f, elem })
    }

    pub fn inv(self) -> Result<FieldElement<'f>, FieldError> {
        Ok(FieldElement { field: self.field, elem: self.field.inv(self.elem)? })
    }
}

impl PartialEq for FieldElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.elem == other.elem
    }
}

impl Eq for FieldElement<'_> {}

impl fmt::Display for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.e == 1 {
            return write!(f, "{}", self.elem.0);
        }
        let digits = self.field.digits(self.elem);
        let mut first = true;
        for (i, &c) in digits.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => f.write_str("x")?,
                (1, _) => write!(f, "{c}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

// Plain F_p polynomial helpers (u32 coefficients, low degree first) used only
// to validate and select moduli.

fn fp_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_inv(a: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut base = a as u64 % p as u64;
    let mut k = p - 2;
    while k > 0 {
        if k & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        k >>= 1;
    }
    acc as u32
}

fn fp_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = fp_trim(a.to_vec());
    let b = fp_trim(b.to_vec());
    let db = b.len() - 1;
    let lead_inv = fp_inv(b[db], p) as u64;
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = r[r.len() - 1] as u64 * lead_inv % p as u64;
        for (i, &bi) in b.iter().enumerate() {
            let t = (r[k + i] as u64 + (p as u64 - c) * bi as u64) % p as u64;
            r[k + i] = t as u32;
        }
        r = fp_trim(r);
    }
    r
}

fn fp_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    fp_rem(&prod, m, p)
}

fn fp_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = fp_trim(a.to_vec());
    let mut b = fp_trim(b.to_vec());
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// `x^(p^i) - x mod f` for the irreducibility test.
fn fp_frobenius_minus_x(f: &[u32], p: u32, i: u32) -> Vec<u32> {
    let mut x_pow = fp_rem(&[0, 1], f, p);
    for _ in 0..i {
        // raise to the p-th power by repeated squaring
        let mut acc = vec![1u32];
        let mut base = x_pow.clone();
        let mut k = p;
        while k > 0 {
            if k & 1 == 1 {
                acc = fp_mulmod(&acc, &base, f, p);
            }
            base = fp_mulmod(&base, &base, f, p);
            k >>= 1;
        }
        x_pow = acc;
    }
    let mut d = x_pow;
    if d.len() < 2 {
        d.resize(2, 0);
    }
    d[1] = (d[1] + p - 1) % p;
    fp_trim(d)
}

/// Ben-Or test: `f` of degree `e` is irreducible iff
/// `gcd(f, x^(p^i) - x) = 1` for `1 <= i <= e/2`.
fn fp_is_irreducible(p: u32, f: &[u32]) -> bool {
    let f = fp_trim(f.to_vec());
    if f.len() < 2 {
        return false;
    }
    let e = (f.len() - 1) as u32;
    for i in 1..=e / 2 {
        let g = fp_gcd(&f, &fp_frobenius_minus_x(&f, p, i), p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

fn smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
    let count = (p as u64).pow(e);
    for code in 0..count {
        let mut f = Vec::with_capacity(e as usize + 1);
        let mut c = code;
        for _ in 0..e {
            f.push((c % p as u64) as u32);
            c /= p as u64;
        }
        f.push(1);
        if fp_is_irreducible(p, &f) {
            return f;
        }
    }
    unreachable!("an irreducible of every degree exists over F_p")
}
