//! GF(p^m) arithmetic on polynomial coefficient vectors.
//!
//! Elements are residues modulo a fixed monic irreducible polynomial. The
//! modulus is chosen deterministically (smallest in the base-p integer
//! encoding with the constant term least significant), so element indices
//! and all downstream constructions are reproducible across runs.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 256;

#[derive(Debug, PartialEq, Eq)]
struct FieldData {
    p: u64,
    m: usize,
    /// Monic irreducible modulus, coefficients `c_0..c_m` with `c_m = 1`.
    modulus: Vec<u64>,
}

/// The finite field GF(p^m).
///
/// Cloning is cheap; clones share the same field data and are interoperable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    data: Arc<FieldData>,
}

/// An element of a [`FiniteField`], stored as `m` coefficients over GF(p).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: FiniteField,
    coeffs: Vec<u64>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of polynomial division over GF(p). Both inputs little-endian
/// (constant term first); `divisor` must be monic.
fn poly_rem(mut num: Vec<u64>, divisor: &[u64], p: u64) -> Vec<u64> {
    let d = divisor.len() - 1;
    while num.len() > d {
        let lead = *num.last().unwrap() % p;
        let shift = num.len() - 1 - d;
        if lead != 0 {
            for (i, &c) in divisor.iter().enumerate() {
                let idx = shift + i;
                num[idx] = (num[idx] + p - (lead * c) % p) % p;
            }
        }
        num.pop();
    }
    num.resize(d, 0);
    num
}

/// True if the monic polynomial (little-endian, length m+1) has no monic
/// divisor of degree 1..=m/2 over GF(p).
fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let m = poly.len() - 1;
    for deg in 1..=m / 2 {
        let count = p.pow(deg as u32);
        for code in 0..count {
            let mut divisor: Vec<u64> = (0..deg)
                .map(|i| (code / p.pow(i as u32)) % p)
                .collect();
            divisor.push(1);
            if poly_rem(poly.to_vec(), &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    /// Constructs GF(p^m) with the deterministically smallest irreducible modulus.
    pub fn new(p: u64, m: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m < 1 || p.checked_pow(m as u32).is_none_or(|q| q > MAX_FIELD_ORDER) {
            return Err(Error::FieldTooLarge(p.saturating_pow(m as u32), MAX_FIELD_ORDER));
        }
        let count = p.pow(m as u32);
        for code in 0..count {
            let mut modulus: Vec<u64> = (0..m).map(|i| (code / p.pow(i as u32)) % p).collect();
            modulus.push(1);
            if is_irreducible(&modulus, p) {
                return Ok(FiniteField { data: Arc::new(FieldData { p, m, modulus }) });
            }
        }
        Err(Error::NoIrreducible(m))
    }

    /// Constructs GF(q) from a prime power q, factoring out p and m.
    pub fn from_order(q: u64) -> Result<Self> {
        let mut p = 2;
        while p * p <= q {
            if q.is_multiple_of(p) {
                break;
            }
            p += 1;
        }
        if p * p > q {
            p = q; // q itself is prime (or 1, rejected below)
        }
        if q < 2 {
            return Err(Error::NotPrimePower(q));
        }
        let mut m = 0;
        let mut rest = q;
        while rest > 1 {
            if !rest.is_multiple_of(p) {
                return Err(Error::NotPrimePower(q));
            }
            rest /= p;
            m += 1;
        }
        Self::new(p, m)
    }

    pub fn characteristic(&self) -> u64 {
        self.data.p
    }

    pub fn degree(&self) -> usize {
        self.data.m
    }

    /// Field order q = p^m.
    pub fn order(&self) -> u64 {
        self.data.p.pow(self.data.m as u32)
    }

    /// Modulus coefficients `c_0..c_m`, constant term first, `c_m = 1`.
    pub fn modulus(&self) -> &[u64] {
        &self.data.modulus
    }

    /// The element whose coefficient vector encodes `index` in base p
    /// (constant term least significant). Indices run over `0..q`.
    pub fn element(&self, index: u64) -> Result<FieldElement> {
        if index >= self.order() {
            return Err(Error::ElementOutOfRange(index, self.order()));
        }
        let p = self.data.p;
        let coeffs = (0..self.data.m).map(|i| (index / p.pow(i as u32)) % p).collect();
        Ok(FieldElement { field: self.clone(), coeffs })
    }

    pub fn zero(&self) -> FieldElement {
        self.element(0).unwrap()
    }

    pub fn one(&self) -> FieldElement {
        self.element(1).unwrap()
    }

    /// All q elements in index order.
    pub fn elements(&self) -> Vec<FieldElement> {
        (0..self.order()).map(|i| self.element(i).unwrap()).collect()
    }
}

impl FieldElement {
    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Position of this element in the field's canonical enumeration.
    pub fn index(&self) -> u64 {
        let p = self.field.data.p;
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn check_same_field(&self, other: &FieldElement) -> Result<()> {
        if self.field.data != other.field.data {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_same_field(other)?;
        let p = self.field.data.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a + b) % p)
            .collect();
        Ok(FieldElement { field: self.field.clone(), coeffs })
    }

    pub fn neg(&self) -> FieldElement {
        let p = self.field.data.p;
        let coeffs = self.coeffs.iter().map(|&c| (p - c) % p).collect();
        FieldElement { field: self.field.clone(), coeffs }
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_same_field(other)?;
        let p = self.field.data.p;
        let m = self.field.data.m;
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b) % p;
            }
        }
        let coeffs = poly_rem(prod, &self.field.data.modulus, p);
        Ok(FieldElement { field: self.field.clone(), coeffs })
    }

    /// Multiplicative inverse via a^(q−2).
    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        self.pow(self.field.order() - 2)
    }

    pub fn pow(&self, mut e: u64) -> Result<FieldElement> {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Absolute trace tr(x) = x + x^p + … + x^(p^(m−1)), landing in the prime
    /// subfield; returned as an integer in 0..p.
    pub fn trace(&self) -> u64 {
        let p = self.field.data.p;
        let m = self.field.data.m;
        let mut acc = self.field.zero();
        let mut term = self.clone();
        for _ in 0..m {
            acc = acc.add(&term).unwrap();
            term = term.pow(p).unwrap();
        }
        debug_assert!(acc.coeffs[1..].iter().all(|&c| c == 0), "trace not in prime subfield");
        acc.coeffs[0]
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Oracle for modulus selection: list every reducible monic cubic over
    // GF(2) as a product of lower-degree monic polynomials, then take the
    // first cubic (in encoding order) not in that list.
    #[test]
    fn gf8_modulus_is_first_irreducible_cubic() {
        let mult = |a: &[u64], b: &[u64]| -> Vec<u64> {
            let mut out = vec![0u64; a.len() + b.len() - 1];
            for (i, &x) in a.iter().enumerate() {
                for (j, &y) in b.iter().enumerate() {
                    out[i + j] = (out[i + j] + x * y) % 2;
                }
            }
            out
        };
        let monics = |deg: usize| -> Vec<Vec<u64>> {
            (0..1u64 << deg)
                .map(|code| {
                    let mut c: Vec<u64> = (0..deg).map(|i| (code >> i) & 1).collect();
                    c.push(1);
                    c
                })
                .collect()
        };
        let mut reducible: Vec<Vec<u64>> = Vec::new();
        for a in monics(1) {
            for b in monics(2) {
                reducible.push(mult(&a, &b));
            }
        }
        let first = monics(3)
            .into_iter()
            .find(|c| !reducible.contains(c))
            .unwrap();
        assert_eq!(first, vec![1, 1, 0, 1]); // x^3 + x + 1

        let field = FiniteField::new(2, 3).unwrap();
        assert_eq!(field.modulus(), &[1, 1, 0, 1]);
    }

    #[test]
    fn prime_fields_have_linear_modulus() {
        assert_eq!(FiniteField::new(2, 1).unwrap().modulus(), &[0, 1]); // x
        assert_eq!(FiniteField::new(3, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(FiniteField::new(3, 1).unwrap().order(), 3);
    }

    #[test]
    fn mod3_addition() {
        let f = FiniteField::new(3, 1).unwrap();
        let two = f.element(2).unwrap();
        assert_eq!(two.add(&two).unwrap().index(), 1);
    }

    #[test]
    fn gf8_reduction() {
        // x · x² = x³ ≡ x + 1 (mod x³ + x + 1)
        let f = FiniteField::new(2, 3).unwrap();
        let x = f.element(2).unwrap();
        let x2 = f.element(4).unwrap();
        assert_eq!(x.mul(&x2).unwrap().index(), 3);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FiniteField::new(4, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(FiniteField::new(6, 2).unwrap_err(), Error::NotPrime(6));
        assert!(FiniteField::new(2, 9).is_err()); // 512 > cap
        assert!(FiniteField::from_order(6).is_err());
        assert!(FiniteField::from_order(12).is_err());
    }

    #[test]
    fn from_order_matches_new() {
        assert_eq!(FiniteField::from_order(9).unwrap(), FiniteField::new(3, 2).unwrap());
        assert_eq!(FiniteField::from_order(8).unwrap(), FiniteField::new(2, 3).unwrap());
        assert_eq!(FiniteField::from_order(7).unwrap(), FiniteField::new(7, 1).unwrap());
    }

    // Exhaustive group axioms for every order up to the protocol range.
    #[test]
    fn field_axioms_exhaustive() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49, 81] {
            let f = FiniteField::from_order(q).unwrap();
            let elems = f.elements();
            for a in &elems {
                assert_eq!(a.add(&f.zero()).unwrap(), *a);
                assert_eq!(a.mul(&f.one()).unwrap(), *a);
                assert_eq!(a.add(&a.neg()).unwrap(), f.zero());
                if !a.is_zero() {
                    assert_eq!(a.mul(&a.inv().unwrap()).unwrap(), f.one());
                }
                for b in &elems {
                    assert_eq!(a.add(b).unwrap(), b.add(a).unwrap());
                    assert_eq!(a.mul(b).unwrap(), b.mul(a).unwrap());
                    // Frobenius is additive
                    let p = f.characteristic();
                    assert_eq!(
                        a.add(b).unwrap().pow(p).unwrap(),
                        a.pow(p).unwrap().add(&b.pow(p).unwrap()).unwrap()
                    );
                    for c in elems.iter().step_by(3) {
                        assert_eq!(
                            a.mul(&b.add(c).unwrap()).unwrap(),
                            a.mul(b).unwrap().add(&a.mul(c).unwrap()).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn trace_lands_in_prime_subfield_and_is_linear() {
        let f = FiniteField::from_order(9).unwrap();
        let p = f.characteristic();
        for a in f.elements() {
            for b in f.elements() {
                let t = a.add(&b).unwrap().trace();
                assert_eq!(t, (a.trace() + b.trace()) % p);
            }
        }
        // trace is onto GF(p): some element has nonzero trace
        assert!(f.elements().iter().any(|a| a.trace() != 0));
    }

    #[test]
    fn element_index_round_trip() {
        let f = FiniteField::from_order(27).unwrap();
        for i in 0..27 {
            assert_eq!(f.element(i).unwrap().index(), i);
        }
    }

    #[test]
    fn mismatched_fields_rejected() {
        let a = FiniteField::new(3, 1).unwrap().element(1).unwrap();
        let b = FiniteField::new(5, 1).unwrap().element(1).unwrap();
        assert_eq!(a.add(&b).unwrap_err(), Error::FieldMismatch);
    }
}
