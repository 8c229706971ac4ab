//! Elements of the field of fractions of a shipped ring.
//!
//! A [`Frac`] is stored reduced — `gcd(num, den)` is a unit — with a
//! canonical denominator (positive, monic, or a power of `1/z` depending on
//! the ring), so structural equality is equality in the field. Any unit
//! factor lives in the numerator.

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{RingElem, RingTag};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frac {
    num: RingElem,
    den: RingElem,
}

impl Frac {
    /// Reduces `num/den` to canonical lowest terms; errors on a zero
    /// denominator or mismatched rings.
    pub fn new(num: RingElem, den: RingElem) -> Result<Self> {
        if num.tag() != den.tag() {
            return Err(Error::RingMismatch);
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Frac {
                den: RingElem::one(num.tag()),
                num,
            });
        }
        let g = num.gcd(&den)?;
        let num = num.divide_exact(&g).expect("gcd divides");
        let den = den.divide_exact(&g).expect("gcd divides");
        // Push the denominator's unit into the numerator.
        let u_inv = den.unit_of().inverse_unit().expect("unit part");
        Ok(Frac {
            num: num.mul(&u_inv),
            den: den.canonical(),
        })
    }

    pub fn from_ring(e: RingElem) -> Self {
        Frac {
            den: RingElem::one(e.tag()),
            num: e,
        }
    }

    pub fn zero(tag: RingTag) -> Self {
        Frac::from_ring(RingElem::zero(tag))
    }

    pub fn one(tag: RingTag) -> Self {
        Frac::from_ring(RingElem::one(tag))
    }

    pub fn num(&self) -> &RingElem {
        &self.num
    }

    pub fn den(&self) -> &RingElem {
        &self.den
    }

    pub fn tag(&self) -> RingTag {
        self.num.tag()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Whether the fraction lies in the base ring (denominator one).
    pub fn is_ring_valued(&self) -> bool {
        self.den.is_one()
    }

    /// The underlying ring element, when ring-valued.
    pub fn to_ring(&self) -> Result<RingElem> {
        if self.is_ring_valued() {
            Ok(self.num.clone())
        } else {
            Err(Error::NotRingValued)
        }
    }

    pub fn add(&self, other: &Frac) -> Frac {
        Frac::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
        .expect("denominators are nonzero")
    }

    pub fn neg(&self) -> Frac {
        Frac {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Frac) -> Frac {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Frac) -> Frac {
        Frac::new(self.num.mul(&other.num), self.den.mul(&other.den))
            .expect("denominators are nonzero")
    }

    /// Multiplies by a ring element.
    pub fn mul_elem(&self, e: &RingElem) -> Frac {
        Frac::new(self.num.mul(e), self.den.clone()).expect("denominator unchanged")
    }

    pub fn recip(&self) -> Result<Frac> {
        Frac::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Frac) -> Result<Frac> {
        Ok(self.mul(&other.recip()?))
    }

    /// Order at infinity of a rational function presented as a fraction of
    /// polynomials: `deg den - deg num`. Errors on zero or on fractions over
    /// the other rings.
    pub fn order_at_infinity(&self) -> Result<i64> {
        if self.tag() != RingTag::Qz {
            return Err(Error::UnsupportedRing);
        }
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dn = self.num.as_poly().unwrap().degree().unwrap() as i64;
        let dd = self.den.as_poly().unwrap().degree().unwrap() as i64;
        Ok(dd - dn)
    }
}

/// Ring-valued fractions print as the element; otherwise `num/den`, with
/// polynomial and proper-rational parts parenthesized so the text reparses.
impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ring_valued() {
            return write!(f, "{}", self.num);
        }
        match self.tag() {
            RingTag::Z => write!(f, "{}/{}", self.num, self.den),
            RingTag::Qz | RingTag::Rpr => write!(f, "({})/({})", self.num, self.den),
        }
    }
}
