//! Univariate polynomials in `z` with exact rational coefficients.
//!
//! Coefficients are stored ascending by degree with no trailing zeros, so
//! structural equality coincides with mathematical equality. The zero
//! polynomial is the empty coefficient vector and has degree `None`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};

/// A polynomial in `z` over the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    /// Coefficient of `z^i` at position `i`; no trailing zeros.
    coeffs: Vec<BigRational>,
}

impl Poly {
    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::new(vec![c])
    }

    pub fn from_int(n: i64) -> Self {
        Poly::constant(BigRational::from_integer(BigInt::from(n)))
    }

    /// The monomial `c * z^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// The variable `z`.
    pub fn var() -> Self {
        Poly::monomial(BigRational::one(), 1)
    }

    /// Ascending coefficients (no trailing zeros).
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        Poly::new(out)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Euclidean division: returns `(q, r)` with `self = q*other + r` and
    /// `deg r < deg other`.
    pub fn div_rem(&self, other: &Poly) -> Result<(Poly, Poly)> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = other.degree().unwrap();
        let lead_inv = other.leading().recip();
        let mut rem = self.clone();
        let mut q = vec![BigRational::zero(); self.coeffs.len().saturating_sub(d)];
        while let Some(rd) = rem.degree() {
            if rd < d {
                break;
            }
            let factor = rem.leading() * &lead_inv;
            let shift = rd - d;
            q[shift] = factor.clone();
            // rem -= factor * z^shift * other
            let mut coeffs = rem.coeffs;
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[shift + j] -= &factor * b;
            }
            rem = Poly::new(coeffs);
        }
        Ok((Poly::new(q), rem))
    }

    /// Monic associate (zero stays zero).
    pub fn monic(&self) -> Poly {
        match self.coeffs.last() {
            None => Poly::zero(),
            Some(lead) => self.scale(&lead.recip()),
        }
    }

    /// `z^k * self(1/z)`; requires `k >= deg self`. Coefficient `i` of the
    /// result is coefficient `k - i` of `self`.
    pub fn reverse(&self, k: usize) -> Poly {
        let mut out = vec![BigRational::zero(); k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[k - i] = c.clone();
        }
        Poly::new(out)
    }

    /// Raises to a nonnegative integer power.
    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Monic greatest common divisor via the Euclidean algorithm.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            // Renormalizing each remainder keeps coefficients small.
            b = r.monic();
        }
        a.monic()
    }
}

fn fmt_coeff(c: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

/// Prints in descending powers, e.g. `z^2 - 1/2*z + 3`. The output reparses
/// to the same polynomial under the crate's expression grammar.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if k == 0 {
                fmt_coeff(&mag, f)?;
            } else {
                if !mag.is_one() {
                    fmt_coeff(&mag, f)?;
                    write!(f, "*")?;
                }
                if k == 1 {
                    write!(f, "z")?;
                } else {
                    write!(f, "z^{k}")?;
                }
            }
        }
        Ok(())
    }
}
