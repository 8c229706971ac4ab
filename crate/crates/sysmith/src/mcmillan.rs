//! Smith-McMillan form of a fraction-valued matrix.
//!
//! For `G` over the field of fractions of an elementary divisor domain, a
//! least common denominator `phi` is cleared, the Smith form of the
//! ring-valued `phi * G` is computed, and each invariant factor `alpha_i`
//! splits against `phi` as `eps_i = alpha_i / gcd(alpha_i, phi)` and
//! `psi_i = phi / gcd(alpha_i, phi)`. The numerators then divide in
//! increasing order, the denominators in decreasing order, each pair is
//! coprime, and `u * G * v` equals `diag(eps_i/psi_i) (+) 0` exactly (not
//! just up to units): all parts are canonical associates.

use crate::error::{Error, Result};
use crate::frac::Frac;
use crate::matrix::{MatF, MatR};
use crate::ring::RingElem;
use crate::smith::smith;

/// A Smith-McMillan decomposition `u * g * v = diag(eps_i/psi_i) (+) 0`.
#[derive(Clone, Debug)]
pub struct SmDecomp {
    /// Unimodular row transformation over the ring.
    pub u: MatR,
    /// Unimodular column transformation over the ring.
    pub v: MatR,
    /// Canonical numerators, each dividing the next.
    pub numerators: Vec<RingElem>,
    /// Canonical denominators, each divisible by the next.
    pub denominators: Vec<RingElem>,
    pub rank: usize,
    /// The least common denominator cleared during the construction.
    pub lcd: RingElem,
    rows: usize,
    cols: usize,
}

impl SmDecomp {
    /// The diagonal as reduced fractions `numerators[i] / denominators[i]`.
    pub fn fractions(&self) -> Vec<Frac> {
        self.numerators
            .iter()
            .zip(&self.denominators)
            .map(|(e, p)| Frac::new(e.clone(), p.clone()).expect("denominator nonzero"))
            .collect()
    }

    /// The full Smith-McMillan form as a matrix of the original shape.
    pub fn form(&self) -> MatF {
        let tag = self.lcd.tag();
        MatF::diag(tag, &self.fractions(), self.rows, self.cols)
            .expect("rank bounded by both dimensions")
    }

    /// Number of non-unit denominators — the dimension any realization of
    /// the matrix must have at least.
    pub fn pole_count(&self) -> usize {
        self.denominators.iter().filter(|p| !p.is_unit()).count()
    }
}

/// Computes the Smith-McMillan decomposition of a fraction-valued matrix.
pub fn smith_mcmillan(g: &MatF) -> Result<SmDecomp> {
    let phi = g.lcd();
    let cleared = g
        .scale_elem(&phi)?
        .to_ring()
        .map_err(|_| Error::Internal("lcd must clear every denominator"))?;
    let sd = smith(&cleared)?;
    let mut numerators = Vec::with_capacity(sd.rank);
    let mut denominators = Vec::with_capacity(sd.rank);
    for alpha in &sd.inv_factors {
        let d = alpha.gcd(&phi)?;
        numerators.push(alpha.divide_exact(&d).expect("gcd divides"));
        denominators.push(phi.divide_exact(&d).expect("gcd divides"));
    }
    let dec = SmDecomp {
        u: sd.u,
        v: sd.v,
        numerators,
        denominators,
        rank: sd.rank,
        lcd: phi,
        rows: g.rows(),
        cols: g.cols(),
    };
    // The construction promises exact equality, with every part canonical;
    // verify rather than assume.
    let lhs = dec.u.to_frac().mul(g)?.mul(&dec.v.to_frac())?;
    if lhs != dec.form() {
        return Err(Error::Internal("transformed matrix must equal the form"));
    }
    Ok(dec)
}
