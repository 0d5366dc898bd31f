//! Table-driven arithmetic in GF(p^m).
//!
//! Elements are stored as integers in `[0, q)` whose base-p digits are the
//! coefficients of the polynomial representation modulo the field's primitive
//! polynomial (digit `i` is the coefficient of `x^i`). The generator of the
//! multiplicative group is always the class of `x`, so `exp[i] = x^i`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u32 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("polynomial has degree {got}, expected {expected}")]
    DegreeMismatch { expected: u32, got: usize },
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("coefficient {0} is not reduced modulo the characteristic")]
    BadCoefficient(u32),
    #[error("x does not generate the multiplicative group modulo the given polynomial")]
    NotPrimitive,
    #[error("field size {p}^{m} exceeds the supported maximum of 65536")]
    FieldTooLarge { p: u32, m: u32 },
    #[error("no primitive polynomial of degree {m} over GF({p}) was found")]
    NoPrimitivePolynomial { p: u32, m: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("value {value} is not an element of GF({q})")]
    OutOfField { value: u32, q: u32 },
}

/// A field element. The value is only meaningful relative to the
/// [`FieldSpec`] that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fe(u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    /// Wraps a raw value without range checking; use [`FieldSpec::elem`]
    /// for untrusted input.
    #[inline]
    pub const fn from_raw(value: u32) -> Fe {
        Fe(value)
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::fmt::Display for Fe {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Serializable description of a field: `{p, m, prim_poly: [c0, .., cm]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prim_poly: Option<Vec<u32>>,
}

/// A concrete finite field GF(p^m) with exponential and logarithm tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u32,
    m: u32,
    q: u32,
    prim_poly: Vec<u32>,
    /// `exp[i] = x^i` for `0 <= i < 2(q-1)`; the second half repeats the first
    /// so products of two logarithms index without a reduction.
    exp: Vec<u32>,
    /// `log[a]` for nonzero `a`; `log[0]` is unused.
    log: Vec<u32>,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n as u64 {
        if (n as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Builds GF(p^m). When `prim_poly` is `None`, the smallest primitive
/// polynomial in base-p order of its lower coefficients is used
/// (`x^4 + x + 1` for GF(16)); for prime fields this is `x - g` with `g` the
/// smallest primitive root.
pub fn build_field(p: u32, m: u32, prim_poly: Option<&[u32]>) -> Result<FieldSpec, GfError> {
    if !is_prime(p) {
        return Err(GfError::NotPrime(p));
    }
    if m == 0 {
        return Err(GfError::ZeroDegree);
    }
    let q = (p as u64)
        .checked_pow(m)
        .filter(|&q| q <= MAX_FIELD_SIZE as u64)
        .ok_or(GfError::FieldTooLarge { p, m })? as u32;

    match prim_poly {
        Some(poly) => {
            if poly.len() != m as usize + 1 {
                return Err(GfError::DegreeMismatch {
                    expected: m,
                    got: poly.len().saturating_sub(1),
                });
            }
            if let Some(&c) = poly.iter().find(|&&c| c >= p) {
                return Err(GfError::BadCoefficient(c));
            }
            if poly[m as usize] != 1 {
                return Err(GfError::NotMonic);
            }
            build_tables(p, m, q, poly).ok_or(GfError::NotPrimitive)
        }
        None => default_field(p, m, q),
    }
}

fn default_field(p: u32, m: u32, q: u32) -> Result<FieldSpec, GfError> {
    if m == 1 {
        // x - g = x + (p - g)
        let start = if p == 2 { 1 } else { 2 };
        for g in start..p {
            let poly = [(p - g) % p, 1];
            if let Some(f) = build_tables(p, m, q, &poly) {
                return Ok(f);
            }
        }
        return Err(GfError::NoPrimitivePolynomial { p, m });
    }
    let mut poly = vec![0u32; m as usize + 1];
    poly[m as usize] = 1;
    for lower in 1..q {
        let mut v = lower;
        for c in poly.iter_mut().take(m as usize) {
            *c = v % p;
            v /= p;
        }
        if poly[0] == 0 {
            continue;
        }
        if let Some(f) = build_tables(p, m, q, &poly) {
            return Ok(f);
        }
    }
    Err(GfError::NoPrimitivePolynomial { p, m })
}

/// Walks the powers of `x` modulo `poly`; returns `None` unless they visit
/// every nonzero residue before returning to 1.
fn build_tables(p: u32, m: u32, q: u32, poly: &[u32]) -> Option<FieldSpec> {
    let m_us = m as usize;
    let order = (q - 1) as usize;
    let mut exp = vec![0u32; 2 * order];
    let mut log = vec![u32::MAX; q as usize];
    let mut digits = vec![0u32; m_us];
    digits[0] = 1;
    for (i, slot) in exp.iter_mut().take(order).enumerate() {
        let value = digits.iter().rev().fold(0u32, |acc, &d| acc * p + d);
        if value == 0 || log[value as usize] != u32::MAX {
            return None;
        }
        log[value as usize] = i as u32;
        *slot = value;
        // multiply by x and reduce: x^m = -(c0 + c1 x + ... + c_{m-1} x^{m-1})
        let carry = digits[m_us - 1];
        for j in (1..m_us).rev() {
            digits[j] = digits[j - 1];
        }
        digits[0] = 0;
        for (d, &c) in digits.iter_mut().zip(poly) {
            *d = (*d + (p - (carry * c) % p)) % p;
        }
    }
    if digits.iter().rev().fold(0u32, |acc, &d| acc * p + d) != 1 {
        return None;
    }
    let (lo, hi) = exp.split_at_mut(order);
    hi.copy_from_slice(lo);
    log[0] = 0;
    Some(FieldSpec {
        p,
        m,
        q,
        prim_poly: poly.to_vec(),
        exp,
        log,
    })
}

impl FieldSpec {
    pub fn from_descriptor(desc: &FieldDescriptor) -> Result<Self, GfError> {
        build_field(desc.p, desc.m, desc.prim_poly.as_deref())
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p,
            m: self.m,
            prim_poly: Some(self.prim_poly.clone()),
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    /// Field size q = p^m.
    pub fn size(&self) -> u32 {
        self.q
    }

    /// Order of the multiplicative group, q - 1.
    pub fn order(&self) -> u32 {
        self.q - 1
    }

    pub fn prim_poly(&self) -> &[u32] {
        &self.prim_poly
    }

    /// `exp_table()[i] = g^i` for `0 <= i < q - 1`.
    pub fn exp_table(&self) -> &[u32] {
        &self.exp[..self.order() as usize]
    }

    pub fn generator(&self) -> Fe {
        Fe(self.exp[1 % self.exp.len()])
    }

    pub fn elem(&self, value: u32) -> Result<Fe, GfError> {
        if value < self.q {
            Ok(Fe(value))
        } else {
            Err(GfError::OutOfField { value, q: self.q })
        }
    }

    /// All elements in value order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q).map(Fe)
    }

    /// Nonzero elements in value order.
    pub fn nonzero_elements(&self) -> impl Iterator<Item = Fe> {
        (1..self.q).map(Fe)
    }

    /// Integer n mapped into the prime subfield.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.p as i64) as u32)
    }

    /// `g^e` for any integer exponent.
    #[inline]
    pub fn exp(&self, e: i64) -> Fe {
        Fe(self.exp[e.rem_euclid(self.order() as i64) as usize])
    }

    /// Discrete logarithm base the generator; `None` for zero.
    #[inline]
    pub fn log(&self, a: Fe) -> Option<u32> {
        debug_assert!(a.0 < self.q);
        (a.0 != 0).then(|| self.log[a.0 as usize])
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        debug_assert!(a.0 < self.q && b.0 < self.q);
        if self.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        if self.m == 1 {
            return Fe((a.0 + b.0) % self.p);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        while x != 0 || y != 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        Fe(out)
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        debug_assert!(a.0 < self.q);
        if self.p == 2 || a.0 == 0 {
            return a;
        }
        if self.m == 1 {
            return Fe(self.p - a.0);
        }
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        while x != 0 {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        Fe(out)
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        debug_assert!(a.0 < self.q && b.0 < self.q);
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        Fe(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Fe) -> Result<Fe, GfError> {
        match self.log(a) {
            None => Err(GfError::DivisionByZero),
            Some(l) => Ok(Fe(self.exp[((self.order() - l) % self.order()) as usize])),
        }
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`; negative exponents require `a != 0`. `0^0 = 1`.
    pub fn pow(&self, a: Fe, e: i64) -> Result<Fe, GfError> {
        match self.log(a) {
            Some(l) => Ok(self.exp(l as i64 * e)),
            None if e == 0 => Ok(Fe::ONE),
            None if e > 0 => Ok(Fe::ZERO),
            None => Err(GfError::DivisionByZero),
        }
    }

    /// `dst += c * src`, elementwise.
    #[inline]
    pub fn axpy(&self, dst: &mut [Fe], c: Fe, src: &[Fe]) {
        debug_assert_eq!(dst.len(), src.len());
        let Some(lc) = self.log(c) else { return };
        for (d, &s) in dst.iter_mut().zip(src) {
            if s.0 != 0 {
                let prod = Fe(self.exp[(lc + self.log[s.0 as usize]) as usize]);
                *d = self.add(*d, prod);
            }
        }
    }

    /// `v *= c`, elementwise.
    pub fn scale(&self, v: &mut [Fe], c: Fe) {
        for x in v.iter_mut() {
            *x = self.mul(*x, c);
        }
    }

    pub fn dot(&self, a: &[Fe], b: &[Fe]) -> Fe {
        debug_assert_eq!(a.len(), b.len());
        a.iter()
            .zip(b)
            .fold(Fe::ZERO, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    /// All points of the torus `(F_q^*)^r`, lexicographic in element value
    /// with the first coordinate most significant. This order is the
    /// codeword coordinate order everywhere in the crate.
    pub fn torus_points(&self, r: usize) -> Vec<Vec<Fe>> {
        let mut out = Vec::with_capacity((self.order() as usize).pow(r as u32));
        let mut cur = vec![Fe::ONE; r];
        if r == 0 {
            return out;
        }
        loop {
            out.push(cur.clone());
            let mut i = r;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i].0 + 1 < self.q {
                    cur[i] = Fe(cur[i].0 + 1);
                    break;
                }
                cur[i] = Fe::ONE;
            }
        }
    }
}
