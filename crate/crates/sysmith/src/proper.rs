//! Proper rational functions: quotients `p/q` of polynomials with
//! `deg p <= deg q`.
//!
//! These form a discrete valuation ring. The valuation of a nonzero element
//! is its order at infinity, `deg q - deg p`; units are the biproper
//! functions (valuation zero) and the canonical associate of a nonzero
//! element with valuation `k` is `(1/z)^k`.
//!
//! Stored reduced (`gcd(p, q) = 1`) with a monic denominator, so structural
//! equality is mathematical equality. Zero is `0/1`.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProperRat {
    num: Poly,
    den: Poly,
}

impl ProperRat {
    /// Builds `num/den`, reducing to lowest terms; errors when `den` is zero
    /// or the quotient is not proper.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(ProperRat::zero());
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g).expect("gcd divides");
        let (den, _) = den.div_rem(&g).expect("gcd divides");
        if num.degree() > den.degree() {
            return Err(Error::NotRingValued);
        }
        let lead = den.leading().recip();
        Ok(ProperRat {
            num: num.scale(&lead),
            den: den.scale(&lead),
        })
    }

    pub fn zero() -> Self {
        ProperRat {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        ProperRat {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    /// The generator `1/z` of the maximal ideal, raised to `k`.
    pub fn inv_z_pow(k: usize) -> Self {
        ProperRat {
            num: Poly::one(),
            den: Poly::monomial(num_rational::BigRational::from_integer(1.into()), k),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Order at infinity: `deg den - deg num`. `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        let dn = self.num.degree()?;
        let dd = self.den.degree().expect("denominator is nonzero");
        Some(dd - dn)
    }

    /// Units are the biproper elements (valuation zero).
    pub fn is_unit(&self) -> bool {
        self.valuation() == Some(0)
    }

    pub fn add(&self, other: &ProperRat) -> ProperRat {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        ProperRat::new(num, den).expect("sum of proper functions is proper")
    }

    pub fn neg(&self) -> ProperRat {
        ProperRat {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &ProperRat) -> ProperRat {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ProperRat) -> ProperRat {
        ProperRat::new(self.num.mul(&other.num), self.den.mul(&other.den))
            .expect("product of proper functions is proper")
    }

    /// Exact division inside the ring: defined when `other` is nonzero and
    /// `valuation(self) >= valuation(other)` (in particular for zero self).
    pub fn divide(&self, other: &ProperRat) -> Result<ProperRat> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(ProperRat::zero());
        }
        ProperRat::new(self.num.mul(&other.den), self.den.mul(&other.num))
            .map_err(|_| Error::NotDivisible)
    }

    /// Inverse of a unit (biproper element).
    pub fn recip_unit(&self) -> Result<ProperRat> {
        if !self.is_unit() {
            return Err(Error::NotDivisible);
        }
        ProperRat::new(self.den.clone(), self.num.clone())
    }

    /// Canonical associate `(1/z)^k`; zero stays zero.
    pub fn canonical(&self) -> ProperRat {
        match self.valuation() {
            None => ProperRat::zero(),
            Some(k) => ProperRat::inv_z_pow(k),
        }
    }
}

/// Prints as `num` for denominator one, otherwise `(num)/(den)`; reparses to
/// the same value under the crate's expression grammar.
impl fmt::Display for ProperRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
