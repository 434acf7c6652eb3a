//! Arithmetic in binary finite fields GF(2^k) for k <= 16.
//!
//! An element is a polynomial over GF(2) stored as a coefficient bitmask:
//! bit `i` of the mask is the coefficient of `x^i`. Addition is bitwise XOR;
//! multiplication is a carry-less product reduced modulo an irreducible
//! polynomial of degree `k`, itself stored as a `(k+1)`-bit mask. For example
//! `x^4 + x + 1` is `0b1_0011 = 0x13` and defines GF(16).

use std::fmt;
use thiserror::Error;

/// Largest supported bit-width; every element fits a machine-word mask.
pub const MAX_FIELD_BITS: u32 = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("field bit-width must be in 1..={MAX_FIELD_BITS}, got {0}")]
    BitWidthOutOfRange(u32),
    #[error("modulus {modulus:#x} does not have degree exactly {k}")]
    BadModulusDegree { modulus: u32, k: u32 },
    #[error("modulus {modulus:#x} is reducible (divisible by {factor:#x})")]
    ReducibleModulus { modulus: u32, factor: u32 },
    #[error("element mask {mask:#x} is out of range for GF(2^{k})")]
    ElementOutOfRange { mask: u32, k: u32 },
    #[error("0^0 is undefined")]
    ZeroToTheZero,
    #[error("the zero element has no multiplicative order")]
    ZeroHasNoOrder,
}

/// An element of GF(2^k), stored as a k-bit coefficient mask.
///
/// Elements do not remember which field they belong to; they are validated
/// against a [`BinaryField`] when used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn mask(self) -> u16 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A binary finite field GF(2^k), defined by its irreducible modulus.
///
/// Irreducibility is verified at construction by trial division against every
/// polynomial of degree at most `k/2`; a reducible modulus is rejected rather
/// than silently producing a ring with zero divisors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinaryField {
    k: u32,
    modulus: u32,
}

impl BinaryField {
    pub fn new(k: u32, modulus: u32) -> Result<BinaryField, FieldError> {
        if k == 0 || k > MAX_FIELD_BITS {
            return Err(FieldError::BitWidthOutOfRange(k));
        }
        if poly_degree(modulus) != Some(k) {
            return Err(FieldError::BadModulusDegree { modulus, k });
        }
        if let Some(factor) = proper_factor(modulus, k) {
            return Err(FieldError::ReducibleModulus { modulus, factor });
        }
        Ok(BinaryField { k, modulus })
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Number of field elements, `2^k`.
    #[inline]
    pub fn order(&self) -> u32 {
        1u32 << self.k
    }

    /// Checked element constructor: the mask must use at most `k` bits.
    pub fn element(&self, mask: u32) -> Result<FieldElement, FieldError> {
        if mask >= self.order() {
            return Err(FieldError::ElementOutOfRange { mask, k: self.k });
        }
        Ok(FieldElement(mask as u16))
    }

    /// All `2^k` elements in mask order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order()).map(|m| FieldElement(m as u16))
    }

    #[inline]
    fn check(&self, a: FieldElement) {
        assert!(
            (a.0 as u32) < self.order(),
            "element mask {:#x} out of range for GF(2^{})",
            a.0,
            self.k
        );
    }

    /// Characteristic-2 addition: coefficientwise XOR. Every element is its
    /// own negative, so this is also subtraction.
    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        FieldElement(a.0 ^ b.0)
    }

    /// Carry-less product reduced modulo the field modulus.
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        let mut shifted = a.0 as u32;
        let b = b.0 as u32;
        let mut acc = 0u32;
        for i in 0..self.k {
            if (b >> i) & 1 == 1 {
                acc ^= shifted;
            }
            shifted <<= 1;
            if (shifted >> self.k) & 1 == 1 {
                shifted ^= self.modulus;
            }
        }
        FieldElement(acc as u16)
    }

    /// Power by repeated squaring. `pow(0, 0)` is rejected rather than given
    /// a silent convention.
    pub fn pow(&self, a: FieldElement, e: u64) -> Result<FieldElement, FieldError> {
        self.check(a);
        if a.is_zero() {
            return if e == 0 {
                Err(FieldError::ZeroToTheZero)
            } else {
                Ok(FieldElement::ZERO)
            };
        }
        let mut base = a;
        let mut e = e;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// True iff the multiplicative order of `a` is exactly `2^k - 1`, i.e.
    /// `a` generates the full multiplicative group. Checked via
    /// `a^((2^k-1)/p) != 1` for every prime `p` dividing `2^k - 1`.
    pub fn is_generator(&self, a: FieldElement) -> Result<bool, FieldError> {
        self.check(a);
        if a.is_zero() {
            return Err(FieldError::ZeroHasNoOrder);
        }
        let group_order = self.order() - 1;
        for p in distinct_prime_factors(group_order) {
            let probe = self.pow(a, (group_order / p) as u64)?;
            if probe == FieldElement::ONE {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The set `{ x^3 : x != 0 }` of nonzero cubes, sorted by mask.
    ///
    /// When `3 | 2^k - 1` this is the index-3 subgroup of the multiplicative
    /// group; otherwise cubing is a bijection and the set is all of it.
    pub fn nonzero_cubes(&self) -> Vec<FieldElement> {
        let mut cubes: Vec<FieldElement> = (1..self.order())
            .map(|m| {
                let x = FieldElement(m as u16);
                self.mul(self.mul(x, x), x)
            })
            .collect();
        cubes.sort_unstable();
        cubes.dedup();
        cubes
    }
}

/// Degree of a polynomial mask, or `None` for the zero polynomial.
fn poly_degree(p: u32) -> Option<u32> {
    if p == 0 {
        None
    } else {
        Some(31 - p.leading_zeros())
    }
}

/// Remainder of polynomial division over GF(2).
fn poly_rem(mut a: u32, b: u32) -> u32 {
    let db = poly_degree(b).expect("divisor must be nonzero");
    while let Some(da) = poly_degree(a) {
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

/// Finds a nontrivial factor of `p` (degree `k`) with degree <= k/2, if any.
/// A reducible polynomial always has one.
fn proper_factor(p: u32, k: u32) -> Option<u32> {
    for d in 1..=(k / 2) {
        let lo = 1u32 << d;
        let hi = 1u32 << (d + 1);
        for divisor in lo..hi {
            if poly_rem(p, divisor) == 0 {
                return Some(divisor);
            }
        }
    }
    None
}

fn distinct_prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// ============================================================================
// Tests
// ============================================================================
