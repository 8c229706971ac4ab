//! Ring elements of the three shipped elementary divisor domains and the
//! scalar operations every higher layer is built from.
//!
//! The central primitive is the extended greatest common divisor
//! [`RingElem::gcd_ext`]: all three domains are Euclidean, so Bezout
//! coefficients always exist and every gcd returned here comes with a
//! certificate `x*a + y*b = g` that callers (and tests) can check.
//!
//! Associates are normalized through [`RingElem::canonical`]:
//! nonnegative integers, monic polynomials, and powers `(1/z)^k` for proper
//! rational functions. The decomposition `a = unit_of(a) * canonical(a)`
//! holds for every element, including zero (whose unit is one).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::proper::ProperRat;

/// Which concrete elementary divisor domain an element lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingTag {
    /// Arbitrary-precision integers.
    Z,
    /// Polynomials in `z` with rational coefficients.
    Qz,
    /// Proper rational functions in `z`.
    Rpr,
}

impl fmt::Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingTag::Z => write!(f, "Z"),
            RingTag::Qz => write!(f, "Qz"),
            RingTag::Rpr => write!(f, "Rpr"),
        }
    }
}

/// An element of one of the shipped domains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingElem {
    Int(BigInt),
    Poly(Poly),
    Proper(ProperRat),
}

/// Result of [`RingElem::gcd_ext`]: `g = x*a + y*b` with `g` canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtGcd {
    pub g: RingElem,
    pub x: RingElem,
    pub y: RingElem,
}

impl RingElem {
    pub fn zero(tag: RingTag) -> Self {
        match tag {
            RingTag::Z => RingElem::Int(BigInt::zero()),
            RingTag::Qz => RingElem::Poly(Poly::zero()),
            RingTag::Rpr => RingElem::Proper(ProperRat::zero()),
        }
    }

    pub fn one(tag: RingTag) -> Self {
        match tag {
            RingTag::Z => RingElem::Int(BigInt::one()),
            RingTag::Qz => RingElem::Poly(Poly::one()),
            RingTag::Rpr => RingElem::Proper(ProperRat::one()),
        }
    }

    /// The integer `n` as an element of the given ring (a constant there).
    pub fn from_i64(tag: RingTag, n: i64) -> Self {
        match tag {
            RingTag::Z => RingElem::Int(BigInt::from(n)),
            RingTag::Qz => RingElem::Poly(Poly::from_int(n)),
            RingTag::Rpr => RingElem::Proper(
                ProperRat::new(Poly::from_int(n), Poly::one()).expect("constant is proper"),
            ),
        }
    }

    pub fn tag(&self) -> RingTag {
        match self {
            RingElem::Int(_) => RingTag::Z,
            RingElem::Poly(_) => RingTag::Qz,
            RingElem::Proper(_) => RingTag::Rpr,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingElem::Int(a) => a.is_zero(),
            RingElem::Poly(p) => p.is_zero(),
            RingElem::Proper(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            RingElem::Int(a) => a.is_one(),
            RingElem::Poly(p) => p.is_one(),
            RingElem::Proper(r) => r.is_one(),
        }
    }

    pub fn is_unit(&self) -> bool {
        match self {
            RingElem::Int(a) => a.abs().is_one(),
            RingElem::Poly(p) => !p.is_zero() && p.is_constant(),
            RingElem::Proper(r) => r.is_unit(),
        }
    }

    fn check_same_ring(&self, other: &RingElem) -> Result<()> {
        if self.tag() == other.tag() {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Sum. Panics if the elements belong to different rings; combining
    /// rings is a programming error, not an input condition.
    pub fn add(&self, other: &RingElem) -> RingElem {
        match (self, other) {
            (RingElem::Int(a), RingElem::Int(b)) => RingElem::Int(a + b),
            (RingElem::Poly(a), RingElem::Poly(b)) => RingElem::Poly(a.add(b)),
            (RingElem::Proper(a), RingElem::Proper(b)) => RingElem::Proper(a.add(b)),
            _ => panic!("ring mismatch in arithmetic"),
        }
    }

    pub fn neg(&self) -> RingElem {
        match self {
            RingElem::Int(a) => RingElem::Int(-a),
            RingElem::Poly(p) => RingElem::Poly(p.neg()),
            RingElem::Proper(r) => RingElem::Proper(r.neg()),
        }
    }

    pub fn sub(&self, other: &RingElem) -> RingElem {
        self.add(&other.neg())
    }

    /// Product. Panics if the elements belong to different rings.
    pub fn mul(&self, other: &RingElem) -> RingElem {
        match (self, other) {
            (RingElem::Int(a), RingElem::Int(b)) => RingElem::Int(a * b),
            (RingElem::Poly(a), RingElem::Poly(b)) => RingElem::Poly(a.mul(b)),
            (RingElem::Proper(a), RingElem::Proper(b)) => RingElem::Proper(a.mul(b)),
            _ => panic!("ring mismatch in arithmetic"),
        }
    }

    pub fn pow(&self, e: u32) -> RingElem {
        let mut acc = RingElem::one(self.tag());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division `self = q*other + r` with `r` strictly smaller
    /// than `other` in the ring's Euclidean size.
    pub fn div_rem(&self, other: &RingElem) -> Result<(RingElem, RingElem)> {
        self.check_same_ring(other)?;
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match (self, other) {
            (RingElem::Int(a), RingElem::Int(b)) => {
                Ok((RingElem::Int(a / b), RingElem::Int(a % b)))
            }
            (RingElem::Poly(a), RingElem::Poly(b)) => {
                let (q, r) = a.div_rem(b)?;
                Ok((RingElem::Poly(q), RingElem::Poly(r)))
            }
            (RingElem::Proper(a), RingElem::Proper(b)) => match a.divide(b) {
                Ok(q) => Ok((RingElem::Proper(q), RingElem::zero(RingTag::Rpr))),
                Err(Error::NotDivisible) => {
                    Ok((RingElem::zero(RingTag::Rpr), RingElem::Proper(a.clone())))
                }
                Err(e) => Err(e),
            },
            _ => unreachable!("tags already checked"),
        }
    }

    /// Exact division; errors when `other` does not divide `self`.
    pub fn divide_exact(&self, other: &RingElem) -> Result<RingElem> {
        let (q, r) = self.div_rem(other)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NotDivisible)
        }
    }

    /// Whether `self` divides `other` (zero divides only zero).
    pub fn divides(&self, other: &RingElem) -> Result<bool> {
        self.check_same_ring(other)?;
        if self.is_zero() {
            return Ok(other.is_zero());
        }
        Ok(other.divide_exact(self).is_ok())
    }

    /// Canonical associate: `|a|` for integers, the monic associate for
    /// polynomials, `(1/z)^valuation` for proper rational functions. Zero
    /// maps to zero and units map to one.
    pub fn canonical(&self) -> RingElem {
        match self {
            RingElem::Int(a) => RingElem::Int(a.abs()),
            RingElem::Poly(p) => RingElem::Poly(p.monic()),
            RingElem::Proper(r) => RingElem::Proper(r.canonical()),
        }
    }

    pub fn is_canonical(&self) -> bool {
        self == &self.canonical()
    }

    /// The unit `u` with `self = u * canonical(self)`; one for zero.
    pub fn unit_of(&self) -> RingElem {
        if self.is_zero() {
            return RingElem::one(self.tag());
        }
        match self {
            RingElem::Int(a) => RingElem::Int(if a.is_negative() {
                -BigInt::one()
            } else {
                BigInt::one()
            }),
            RingElem::Poly(p) => RingElem::Poly(Poly::constant(p.leading())),
            RingElem::Proper(r) => RingElem::Proper(
                r.divide(&r.canonical()).expect("canonical associate divides"),
            ),
        }
    }

    /// Inverse of a unit; errors on non-units.
    pub fn inverse_unit(&self) -> Result<RingElem> {
        if !self.is_unit() {
            return Err(Error::NotDivisible);
        }
        match self {
            RingElem::Int(a) => Ok(RingElem::Int(a.clone())),
            RingElem::Poly(p) => Ok(RingElem::Poly(Poly::constant(p.leading().recip()))),
            RingElem::Proper(r) => Ok(RingElem::Proper(r.recip_unit()?)),
        }
    }

    /// Whether two elements differ by a unit factor.
    pub fn associates(&self, other: &RingElem) -> Result<bool> {
        self.check_same_ring(other)?;
        Ok(self.canonical() == other.canonical())
    }

    /// Extended gcd: returns canonical `g` together with Bezout
    /// coefficients, `g = x*self + y*other`. Both arguments zero yields
    /// `(0, 0, 0)`.
    pub fn gcd_ext(&self, other: &RingElem) -> Result<ExtGcd> {
        self.check_same_ring(other)?;
        let tag = self.tag();
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut x0, mut x1) = (RingElem::one(tag), RingElem::zero(tag));
        let (mut y0, mut y1) = (RingElem::zero(tag), RingElem::one(tag));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            (r0, r1) = (r1, r);
            (x0, x1) = (x1.clone(), x0.sub(&q.mul(&x1)));
            (y0, y1) = (y1.clone(), y0.sub(&q.mul(&y1)));
        }
        if r0.is_zero() {
            let z = RingElem::zero(tag);
            return Ok(ExtGcd {
                g: z.clone(),
                x: z.clone(),
                y: z,
            });
        }
        let u_inv = r0.unit_of().inverse_unit().expect("unit part is a unit");
        Ok(ExtGcd {
            g: r0.canonical(),
            x: x0.mul(&u_inv),
            y: y0.mul(&u_inv),
        })
    }

    /// Canonical gcd without the Bezout certificate.
    pub fn gcd(&self, other: &RingElem) -> Result<RingElem> {
        Ok(self.gcd_ext(other)?.g)
    }

    /// Canonical least common multiple; zero absorbs.
    pub fn lcm(&self, other: &RingElem) -> Result<RingElem> {
        self.check_same_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(RingElem::zero(self.tag()));
        }
        let g = self.gcd(other)?;
        Ok(self
            .mul(other)
            .divide_exact(&g)
            .expect("gcd divides the product")
            .canonical())
    }

    /// Compares the Euclidean size of two nonzero elements of one ring:
    /// magnitude for integers, degree for polynomials, valuation for proper
    /// rational functions. Used to pick the smallest pivot deterministically.
    pub fn size_cmp(&self, other: &RingElem) -> Ordering {
        match (self, other) {
            (RingElem::Int(a), RingElem::Int(b)) => a.magnitude().cmp(b.magnitude()),
            (RingElem::Poly(a), RingElem::Poly(b)) => a.degree().cmp(&b.degree()),
            (RingElem::Proper(a), RingElem::Proper(b)) => a.valuation().cmp(&b.valuation()),
            _ => panic!("ring mismatch in arithmetic"),
        }
    }

    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            RingElem::Int(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        match self {
            RingElem::Poly(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_proper(&self) -> Option<&ProperRat> {
        match self {
            RingElem::Proper(r) => Some(r),
            _ => None,
        }
    }

    /// Constant rational `c` as an element of the ring, when it is one
    /// (always for `Qz`/`Rpr`; for `Z` only when `c` is an integer).
    pub fn from_rational(tag: RingTag, c: &BigRational) -> Option<RingElem> {
        match tag {
            RingTag::Z => c
                .is_integer()
                .then(|| RingElem::Int(c.to_integer())),
            RingTag::Qz => Some(RingElem::Poly(Poly::constant(c.clone()))),
            RingTag::Rpr => Some(RingElem::Proper(
                ProperRat::new(Poly::constant(c.clone()), Poly::one())
                    .expect("constant is proper"),
            )),
        }
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElem::Int(a) => write!(f, "{a}"),
            RingElem::Poly(p) => write!(f, "{p}"),
            RingElem::Proper(r) => write!(f, "{r}"),
        }
    }
}
