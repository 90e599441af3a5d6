//! Arithmetic in GF(2^m) over a polynomial basis.
//!
//! Elements are encoded as integers where bit `k` is the coefficient of
//! `α^k`, with `α` a root of the field modulus. The default modulus for each
//! degree is the smallest irreducible polynomial (by integer encoding) with a
//! nonzero constant term, listed in [`DEFAULT_MODULI`].

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 24;

/// Default moduli for m = 1..=24, integer-encoded (bit k = coefficient of x^k).
pub const DEFAULT_MODULI: [u64; MAX_DEGREE as usize] = [
    3, 7, 11, 19, 37, 67, 131, 283, 515, 1033, 2053, 4105, 8219, 16417, 32771, 65579, 131081,
    262153, 524327, 1048585, 2097157, 4194307, 8388641, 16777243,
];

/// An element of GF(2^m), polynomial-basis encoded.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(transparent)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn value(self) -> u32 {
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

/// A concrete finite field GF(2^m) with a fixed irreducible modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldCtx {
    m: u32,
    modulus: u64,
}

fn degree(p: u64) -> u32 {
    63 - p.leading_zeros()
}

fn poly_rem(mut a: u64, b: u64) -> u64 {
    let db = degree(b);
    while a != 0 && degree(a) >= db {
        a ^= b << (degree(a) - db);
    }
    a
}

/// Trial division against every polynomial of degree 1..=deg/2.
pub fn is_irreducible(poly: u64) -> bool {
    if poly < 2 {
        return false;
    }
    let d = degree(poly);
    if d == 0 {
        return false;
    }
    let half = d / 2;
    (2u64..(1u64 << (half + 1))).all(|q| poly_rem(poly, q) != 0)
}

/// Smallest irreducible polynomial of degree `m` with nonzero constant term.
pub fn search_default_modulus(m: u32) -> Result<u64> {
    if !(1..=MAX_DEGREE).contains(&m) {
        return Err(Error::DegreeOutOfRange(m));
    }
    let mut p = (1u64 << m) | 1;
    while !is_irreducible(p) {
        p += 2;
    }
    Ok(p)
}

impl FieldCtx {
    /// Field with the default modulus for degree `m`.
    pub fn new(m: u32) -> Result<Self> {
        if !(1..=MAX_DEGREE).contains(&m) {
            return Err(Error::DegreeOutOfRange(m));
        }
        Ok(FieldCtx {
            m,
            modulus: DEFAULT_MODULI[(m - 1) as usize],
        })
    }

    /// Field with a caller-supplied modulus, checked for irreducibility.
    pub fn with_modulus(m: u32, modulus: u64) -> Result<Self> {
        if !(1..=MAX_DEGREE).contains(&m) {
            return Err(Error::DegreeOutOfRange(m));
        }
        if modulus >> m != 1 || !is_irreducible(modulus) {
            return Err(Error::ReducibleModulus { modulus, degree: m });
        }
        Ok(FieldCtx { m, modulus })
    }

    /// Field whose size is `q`, which must be a power of two.
    pub fn for_size(q: u64) -> Result<Self> {
        if q < 2 || !q.is_power_of_two() {
            return Err(Error::Domain(format!(
                "field size {q} is not a power of two"
            )));
        }
        Self::new(q.trailing_zeros())
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Number of elements, 2^m.
    #[inline]
    pub fn size(&self) -> u64 {
        1u64 << self.m
    }

    pub fn element(&self, value: u64) -> Result<FieldElement> {
        if value >= self.size() {
            return Err(Error::ElementOutOfRange { value, m: self.m });
        }
        Ok(FieldElement(value as u32))
    }

    #[inline]
    pub fn contains(&self, e: FieldElement) -> bool {
        u64::from(e.0) < self.size()
    }

    pub fn check(&self, e: FieldElement) -> Result<FieldElement> {
        if self.contains(e) {
            Ok(e)
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// The class of x modulo the field polynomial.
    pub fn alpha(&self) -> FieldElement {
        FieldElement(poly_rem(2, self.modulus) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.size() as u32).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(self.contains(a) && self.contains(b));
        FieldElement(a.0 ^ b.0)
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(self.contains(a) && self.contains(b));
        let top = 1u64 << self.m;
        let mut x = u64::from(a.0);
        let mut y = b.0;
        let mut acc = 0u64;
        while y != 0 {
            if y & 1 == 1 {
                acc ^= x;
            }
            y >>= 1;
            x <<= 1;
            if x & top != 0 {
                x ^= self.modulus;
            }
        }
        FieldElement(acc as u32)
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        self.check(a)?;
        Ok(self.pow(a, self.size() - 2))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^(2^k)`.
    pub fn frobenius(&self, a: FieldElement, k: u32) -> FieldElement {
        (0..k).fold(a, |x, _| self.mul(x, x))
    }

    /// Degree over GF(2) of the subfield generated by `elems`.
    pub fn subfield_degree(&self, elems: &[FieldElement]) -> Result<u32> {
        if elems.is_empty() {
            return Err(Error::Empty("subfield_degree needs at least one element"));
        }
        for &e in elems {
            self.check(e)?;
        }
        let k = (1..=self.m)
            .filter(|k| self.m.is_multiple_of(*k))
            .find(|&k| elems.iter().all(|&e| self.frobenius(e, k) == e))
            .expect("k = m always fixes every element");
        Ok(k)
    }

    /// Polynomial-basis coordinates, bit k first at index k.
    pub fn descend(&self, e: FieldElement) -> Vec<bool> {
        (0..self.m).map(|k| (e.0 >> k) & 1 == 1).collect()
    }

    pub fn ascend(&self, bits: &[bool]) -> Result<FieldElement> {
        if bits.len() != self.m as usize {
            return Err(Error::BitLength {
                expected: self.m as usize,
                got: bits.len(),
            });
        }
        let v = bits
            .iter()
            .enumerate()
            .fold(0u32, |acc, (k, &b)| acc | (u32::from(b) << k));
        Ok(FieldElement(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Schoolbook product then long division, independent of `FieldCtx::mul`.
    fn oracle_mul(a: u64, b: u64, modulus: u64) -> u64 {
        let mut prod = 0u64;
        for k in 0..32 {
            if (b >> k) & 1 == 1 {
                prod ^= a << k;
            }
        }
        poly_rem(prod, modulus)
    }

    #[test]
    fn default_table_matches_search() {
        for m in 1..=MAX_DEGREE {
            assert_eq!(
                search_default_modulus(m).unwrap(),
                DEFAULT_MODULI[(m - 1) as usize],
                "m={m}"
            );
        }
    }

    #[test]
    fn small_defaults() {
        assert_eq!(FieldCtx::new(1).unwrap().modulus(), 3);
        assert_eq!(FieldCtx::new(2).unwrap().modulus(), 7);
        assert_eq!(FieldCtx::new(4).unwrap().modulus(), 19);
        assert_eq!(FieldCtx::new(1).unwrap().elements().count(), 2);
    }

    #[test]
    fn degree_range_and_reducible_rejected() {
        assert_eq!(FieldCtx::new(0), Err(Error::DegreeOutOfRange(0)));
        assert_eq!(FieldCtx::new(25), Err(Error::DegreeOutOfRange(25)));
        // x^4 + 1 = (x + 1)^4
        assert!(matches!(
            FieldCtx::with_modulus(4, 17),
            Err(Error::ReducibleModulus { .. })
        ));
        assert!(FieldCtx::with_modulus(4, 25).is_ok());
        // wrong degree
        assert!(FieldCtx::with_modulus(3, 19).is_err());
    }

    #[test]
    fn worked_products() {
        let f4 = FieldCtx::new(2).unwrap();
        assert_eq!(f4.mul(FieldElement(2), FieldElement(2)), FieldElement(3));
        let f8 = FieldCtx::new(3).unwrap();
        assert_eq!(f8.modulus(), 11);
        assert_eq!(f8.mul(FieldElement(2), FieldElement(2)), FieldElement(4));
        for a in f8.elements() {
            assert_eq!(f8.add(a, a), FieldElement::ZERO);
        }
    }

    #[test]
    fn mul_matches_oracle_exhaustively() {
        for m in 1..=6 {
            let f = FieldCtx::new(m).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(
                        u64::from(f.mul(a, b).0),
                        oracle_mul(a.0.into(), b.0.into(), f.modulus())
                    );
                }
            }
        }
    }

    #[test]
    fn inverse_and_group_order_exhaustive() {
        for m in 1..=8 {
            let f = FieldCtx::new(m).unwrap();
            for a in f.elements().skip(1) {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
                assert_eq!(f.pow(a, f.size() - 1), FieldElement::ONE);
            }
            assert_eq!(f.inv(FieldElement::ZERO), Err(Error::ZeroInverse));
            assert_eq!(f.pow(FieldElement(0), 0), FieldElement::ONE);
        }
    }

    #[test]
    fn subfield_degrees() {
        let f4 = FieldCtx::new(2).unwrap();
        assert_eq!(
            f4.subfield_degree(&[FieldElement(0), FieldElement(1)])
                .unwrap(),
            1
        );
        assert_eq!(f4.subfield_degree(&[f4.alpha()]).unwrap(), 2);
        let f16 = FieldCtx::new(4).unwrap();
        let a5 = f16.pow(f16.alpha(), 5);
        assert_eq!(f16.subfield_degree(&[a5]).unwrap(), 2);
        assert!(f16.subfield_degree(&[]).is_err());
        for a in f16.elements() {
            assert_eq!(4 % f16.subfield_degree(&[a]).unwrap(), 0);
        }
    }

    #[test]
    fn descend_ascend() {
        let f4 = FieldCtx::new(2).unwrap();
        assert_eq!(f4.descend(FieldElement(0)), vec![false, false]);
        assert_eq!(f4.descend(FieldElement(3)), vec![true, true]);
        assert_eq!(
            f4.ascend(&[true]),
            Err(Error::BitLength {
                expected: 2,
                got: 1
            })
        );
        for m in 1..=8 {
            let f = FieldCtx::new(m).unwrap();
            for e in f.elements() {
                assert_eq!(f.ascend(&f.descend(e)).unwrap(), e);
            }
        }
        let f16 = FieldCtx::new(4).unwrap();
        for a in f16.elements() {
            for b in f16.elements() {
                let lhs = f16.descend(f16.add(a, b));
                let rhs: Vec<bool> = f16
                    .descend(a)
                    .iter()
                    .zip(f16.descend(b))
                    .map(|(x, y)| x ^ y)
                    .collect();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn alpha_in_prime_field() {
        assert_eq!(FieldCtx::new(1).unwrap().alpha(), FieldElement::ONE);
        assert_eq!(FieldCtx::new(5).unwrap().alpha(), FieldElement(2));
    }

    #[test]
    fn out_of_range_elements() {
        let f4 = FieldCtx::new(2).unwrap();
        assert!(f4.element(4).is_err());
        assert_eq!(f4.check(FieldElement(9)), Err(Error::FieldMismatch));
        assert!(f4.inv(FieldElement(9)).is_err());
        assert!(FieldCtx::for_size(6).is_err());
        assert_eq!(FieldCtx::for_size(16).unwrap().m(), 4);
    }
}
