//! Systems whose blocks live in the field of fractions.
//!
//! A system may be presented with fractional blocks — rational numbers over
//! the integers, or rational functions over a polynomial ring — while the
//! canonical-form machinery works over the base ring.  Clearing the least
//! common denominators `alpha`, `beta`, `gamma` of `A`, `B`, `C` turns such
//! a presentation into the ring-valued data
//!
//! ```text
//!     P = 1/(beta gamma) [ alpha A   beta B              ]
//!                        [ gamma C   (beta gamma/alpha) D ],
//! ```
//!
//! provided the scaled feedthrough is ring-valued.  The forward direction
//! predicts the Smith–McMillan forms of `P` and of `A` from the transfer
//! matrix by splitting each invariant fraction against the cleared
//! denominators; the converse rebuilds the Smith–McMillan form of the
//! transfer matrix from those two forms.  For polynomial matrices the same
//! clearing against powers of `1/z` yields the structure at infinity, which
//! is computed here along two independent routes and cross-checked.

use crate::coprime::{fraction_coprime, CoprimeReport, Side};
use crate::error::{Error, Result};
use crate::frac::Frac;
use crate::matrix::{Mat, MatF, MatR};
use crate::mcmillan::{smith_mcmillan, SmDecomp};
use crate::poly::Poly;
use crate::proper::ProperRat;
use crate::ring::{RingElem, RingTag};
use crate::smith::{prime_exponent, smith};

/// A system with fraction-valued blocks, together with the cleared least
/// common denominators and the coprimeness verdicts of the cleared pairs.
#[derive(Clone, Debug)]
pub struct FofSystem {
    a: MatF,
    b: MatF,
    c: MatF,
    d: MatF,
    alpha: RingElem,
    beta: RingElem,
    gamma: RingElem,
    left: CoprimeReport,
    right: CoprimeReport,
}

impl FofSystem {
    /// The fraction-valued block `A`.
    pub fn a(&self) -> &MatF {
        &self.a
    }

    /// The fraction-valued block `B`.
    pub fn b(&self) -> &MatF {
        &self.b
    }

    /// The fraction-valued block `C`.
    pub fn c(&self) -> &MatF {
        &self.c
    }

    /// The fraction-valued block `D`.
    pub fn d(&self) -> &MatF {
        &self.d
    }

    /// Least common denominator of `A`.
    pub fn alpha(&self) -> &RingElem {
        &self.alpha
    }

    /// Least common denominator of `B`.
    pub fn beta(&self) -> &RingElem {
        &self.beta
    }

    /// Least common denominator of `C`.
    pub fn gamma(&self) -> &RingElem {
        &self.gamma
    }

    /// Coprimeness report for the cleared pair `(A, B)`.
    pub fn left(&self) -> &CoprimeReport {
        &self.left
    }

    /// Coprimeness report for the cleared pair `(A, C)`.
    pub fn right(&self) -> &CoprimeReport {
        &self.right
    }

    /// State dimension `n`.
    pub fn n(&self) -> usize {
        self.a.rows()
    }

    /// Number of inputs `m`.
    pub fn m(&self) -> usize {
        self.b.cols()
    }

    /// Number of outputs `p`.
    pub fn p(&self) -> usize {
        self.c.rows()
    }

    /// The coefficient ring underlying the fractions.
    pub fn ring(&self) -> RingTag {
        self.a.ring()
    }

    /// The cleared system matrix
    /// `1/(beta gamma) [[alpha A, beta B], [gamma C, (beta gamma/alpha) D]]`.
    pub fn assembled(&self) -> MatF {
        let tag = self.ring();
        let one = RingElem::one(tag);
        let bg = self.beta.mul(&self.gamma);
        let aa = self.a.scale_elem(&self.alpha).expect("same ring");
        let bb = self.b.scale_elem(&self.beta).expect("same ring");
        let cc = self.c.scale_elem(&self.gamma).expect("same ring");
        let d_factor = Frac::new(bg.clone(), self.alpha.clone()).expect("alpha nonzero");
        let dd = self.d.scale(&d_factor).expect("same ring");
        Mat::from_blocks(&aa, &bb, &cc, &dd)
            .expect("blocks conform")
            .scale(&Frac::new(one, bg).expect("beta gamma nonzero"))
            .expect("same ring")
    }

    /// The transfer matrix `G = D - C A^{-1} B` over the field of fractions.
    pub fn transfer(&self) -> Result<MatF> {
        let correction = self.c.mul(&self.a.inverse()?)?.mul(&self.b)?;
        self.d.sub(&correction)
    }
}

/// Validate and package a fraction-valued system.
///
/// Checks the block shapes, the nonsingularity of `A`, and that the scaled
/// feedthrough `(beta gamma / alpha) D` is ring-valued; coprimeness of the
/// cleared pairs is recorded but not required, so reducible presentations
/// can still be assembled and inspected.
pub fn fof_assemble(a: MatF, b: MatF, c: MatF, d: MatF) -> Result<FofSystem> {
    if !a.is_square() {
        return Err(Error::NotSquare);
    }
    let tag = a.ring();
    if b.ring() != tag || c.ring() != tag || d.ring() != tag {
        return Err(Error::RingMismatch);
    }
    let n = a.rows();
    if b.rows() != n || c.cols() != n || d.rows() != c.rows() || d.cols() != b.cols() {
        return Err(Error::ShapeMismatch);
    }
    if a.det()?.is_zero() {
        return Err(Error::Singular);
    }
    let alpha = a.lcd();
    let beta = b.lcd();
    let gamma = c.lcd();
    let bg = beta.mul(&gamma);
    let d_factor = Frac::new(bg, alpha.clone())?;
    d.scale(&d_factor)?.to_ring()?;
    let left = fraction_coprime(&a, &b, Side::Left)?;
    let right = fraction_coprime(&a, &c, Side::Right)?;
    Ok(FofSystem {
        a,
        b,
        c,
        d,
        alpha,
        beta,
        gamma,
        left,
        right,
    })
}

/// Everything produced while predicting the canonical forms of a
/// fraction-valued system from its transfer matrix.
///
/// The splitting data are indexed by the invariant fractions of the
/// transfer matrix: position `i` refines `eps_i / psi_i` against the
/// cleared denominators, with `delta_i = gcd(eps_i, alpha)`,
/// `nu_i = gcd(psi_i, beta gamma)`, and `chi_i` the common part of the two
/// cofactors `alpha / delta_i` and `beta gamma / nu_i`.
#[derive(Clone, Debug)]
pub struct FofForwardReport {
    /// `gcd(eps_i, alpha)`, ascending.
    pub delta: Vec<RingElem>,
    /// `gcd(psi_i, beta gamma)`, descending.
    pub nu: Vec<RingElem>,
    /// `gcd(alpha / delta_i, beta gamma / nu_i)`.
    pub chi: Vec<RingElem>,
    /// `alpha / delta_i`, descending.
    pub alpha_hat: Vec<RingElem>,
    /// `beta gamma / nu_i`, ascending.
    pub beta_hat: Vec<RingElem>,
    /// `alpha_hat_i / chi_i`, descending.
    pub alpha_tilde: Vec<RingElem>,
    /// `beta_hat_i / chi_i`, ascending.
    pub beta_tilde: Vec<RingElem>,
    /// `eps_i / delta_i`, ascending.
    pub eps_tilde: Vec<RingElem>,
    /// `psi_i / nu_i`, descending.
    pub psi_tilde: Vec<RingElem>,
    /// Number of trailing-block poles: the largest `i` with
    /// `alpha_tilde_i psi_tilde_i` a non-unit.
    pub g: usize,
    /// Predicted Smith–McMillan diagonal of `A`.
    pub predicted_sm_a: Vec<Frac>,
    /// Predicted Smith–McMillan diagonal of the cleared system matrix.
    pub predicted_sm_p: Vec<Frac>,
    /// Computed Smith–McMillan diagonal of `A`.
    pub computed_sm_a: Vec<Frac>,
    /// Computed Smith–McMillan diagonal of the cleared system matrix.
    pub computed_sm_p: Vec<Frac>,
    /// Whether the prediction for `A` matches the computation.
    pub matched_a: bool,
    /// Whether the prediction for the system matrix matches the computation.
    pub matched_p: bool,
    /// Whether all derived divisibility chains and coprimality side
    /// conditions hold.
    pub chains_ok: bool,
    /// Whether the computed system form has the constant leading block
    /// `1/(beta gamma)` of multiplicity `n`, with `beta gamma` the largest
    /// denominator.
    pub leading_block_ok: bool,
    /// Smith–McMillan decomposition of the transfer matrix.
    pub sm_g: SmDecomp,
}

/// Predict the Smith–McMillan forms of a fraction-valued system and of its
/// `A` block from the transfer matrix, and compare against computation.
///
/// Requires the cleared pairs `(A, B)` and `(A, C)` to be coprime on their
/// respective sides.  Each invariant fraction `eps_i / psi_i` of the
/// transfer matrix is split against `alpha` and `beta gamma`; the split
/// predicts `n - g` copies of `1/alpha` followed by the refined
/// denominators for `A`, and `n` copies of `1/(beta gamma)` followed by the
/// refined numerators for the cleared system matrix.  Both predictions are
/// checked against freshly computed decompositions.
pub fn fof_forward(sys: &FofSystem) -> Result<FofForwardReport> {
    if !sys.left.coprime {
        return Err(Error::NotCoprime("left"));
    }
    if !sys.right.coprime {
        return Err(Error::NotCoprime("right"));
    }
    let tag = sys.ring();
    let n = sys.n();
    let one = RingElem::one(tag);
    let alpha = sys.alpha.clone();
    let bg = sys.beta.mul(&sys.gamma);

    let g_mat = sys.transfer()?;
    let sm_g = smith_mcmillan(&g_mat)?;
    let r = sm_g.rank;
    let assembled = sys.assembled();
    if assembled.rank() != n + r {
        return Err(Error::Internal("rank of P must be n plus rank of G"));
    }

    let mut delta = Vec::with_capacity(r);
    let mut nu = Vec::with_capacity(r);
    let mut chi = Vec::with_capacity(r);
    let mut alpha_hat = Vec::with_capacity(r);
    let mut beta_hat = Vec::with_capacity(r);
    let mut alpha_tilde = Vec::with_capacity(r);
    let mut beta_tilde = Vec::with_capacity(r);
    let mut eps_tilde = Vec::with_capacity(r);
    let mut psi_tilde = Vec::with_capacity(r);
    for i in 0..r {
        let eps = &sm_g.numerators[i];
        let psi = &sm_g.denominators[i];
        let d_i = eps.gcd(&alpha)?;
        let a_hat = alpha.divide_exact(&d_i)?;
        eps_tilde.push(eps.divide_exact(&d_i)?);
        let n_i = psi.gcd(&bg)?;
        let b_hat = bg.divide_exact(&n_i)?;
        psi_tilde.push(psi.divide_exact(&n_i)?);
        let c_i = a_hat.gcd(&b_hat)?;
        alpha_tilde.push(a_hat.divide_exact(&c_i)?);
        beta_tilde.push(b_hat.divide_exact(&c_i)?);
        delta.push(d_i);
        nu.push(n_i);
        chi.push(c_i);
        alpha_hat.push(a_hat);
        beta_hat.push(b_hat);
    }

    // The products alpha_tilde_i psi_tilde_i descend, so the non-units
    // form a prefix whose length is the first hit from the top.
    let g = (0..r)
        .rev()
        .find(|&i| !alpha_tilde[i].mul(&psi_tilde[i]).is_unit())
        .map_or(0, |i| i + 1);
    if g > n {
        return Err(Error::Hypothesis(format!(
            "a degree-{n} system cannot carry {g} trailing-block poles"
        )));
    }

    let mut predicted_sm_a = vec![Frac::new(one.clone(), alpha.clone())?; n - g];
    for i in (0..g).rev() {
        let den = delta[i].mul(&chi[i]);
        predicted_sm_a.push(Frac::new(psi_tilde[i].clone(), den)?);
    }
    let diag_len = (n + sys.p()).min(n + sys.m());
    let mut predicted_sm_p = vec![Frac::new(one.clone(), bg.clone())?; n];
    for i in 0..r {
        let den = nu[i].mul(&chi[i]);
        predicted_sm_p.push(Frac::new(eps_tilde[i].clone(), den)?);
    }
    predicted_sm_p.resize(diag_len, Frac::zero(tag));

    let computed_sm_a = smith_mcmillan(&sys.a)?.fractions();
    let sm_p = smith_mcmillan(&assembled)?;
    let mut computed_sm_p = sm_p.fractions();
    computed_sm_p.resize(diag_len, Frac::zero(tag));

    let matched_a = computed_sm_a == predicted_sm_a;
    let matched_p = computed_sm_p == predicted_sm_p;

    let mut chains_ok = true;
    for i in 0..r {
        let dc = delta[i].mul(&chi[i]);
        let cn = chi[i].mul(&nu[i]);
        chains_ok &= dc.divides(&alpha)?
            && cn.divides(&bg)?
            && psi_tilde[i].gcd(&dc)?.is_unit()
            && eps_tilde[i].gcd(&cn)?.is_unit();
        if i + 1 < r {
            chains_ok &= delta[i].divides(&delta[i + 1])?
                && eps_tilde[i].divides(&eps_tilde[i + 1])?
                && nu[i + 1].divides(&nu[i])?
                && psi_tilde[i + 1].divides(&psi_tilde[i])?
                && alpha_tilde[i + 1].divides(&alpha_tilde[i])?
                && beta_tilde[i].divides(&beta_tilde[i + 1])?
                && dc.divides(&delta[i + 1].mul(&chi[i + 1]))?
                && chi[i + 1].mul(&nu[i + 1]).divides(&cn)?;
        }
    }

    let leading = Frac::new(one, bg.clone())?;
    let mut leading_block_ok = computed_sm_p[..n].iter().all(|f| *f == leading);
    if n + r > 0 {
        leading_block_ok &= sm_p.lcd == bg && sm_p.denominators[0] == bg;
    }

    Ok(FofForwardReport {
        delta,
        nu,
        chi,
        alpha_hat,
        beta_hat,
        alpha_tilde,
        beta_tilde,
        eps_tilde,
        psi_tilde,
        g,
        predicted_sm_a,
        predicted_sm_p,
        computed_sm_a,
        computed_sm_p,
        matched_a,
        matched_p,
        chains_ok,
        leading_block_ok,
        sm_g,
    })
}

/// Splitting data recovered while rebuilding the Smith–McMillan form of a
/// transfer matrix from the forms of the system matrix and of `A`.
///
/// All vectors are indexed by trailing position `i = 1..r`: `mu_i` and
/// `sigma_i` are the common parts cancelled between the `i`-th trailing
/// fraction of the system form and the `(n - i + 1)`-th fraction of the
/// form of `A`; the tilde vectors are the corresponding cofactors.
#[derive(Clone, Debug)]
pub struct FofConverseReport {
    /// `gcd` of each paired denominator of `A` and trailing denominator.
    pub mu: Vec<RingElem>,
    /// `gcd` of each paired numerator of `A` and trailing numerator.
    pub sigma: Vec<RingElem>,
    /// Denominators of the form of `A` with `mu_i` removed.
    pub alpha_tilde: Vec<RingElem>,
    /// Numerators of the form of `A` with `sigma_i` removed.
    pub beta_tilde: Vec<RingElem>,
    /// Trailing denominators with `mu_i` removed.
    pub delta_tilde: Vec<RingElem>,
    /// Trailing numerators with `sigma_i` removed.
    pub nu_tilde: Vec<RingElem>,
    /// The recovered Smith–McMillan fractions of the transfer matrix.
    pub predicted_sm_g: Vec<Frac>,
}

/// Rebuild the Smith–McMillan form of the transfer matrix from the
/// Smith–McMillan forms of the cleared system matrix and of `A`.
///
/// `sm_a` lists the `n` invariant fractions of `A` and `sm_p` the `n + r`
/// nonzero invariant fractions of the cleared system matrix, both in
/// canonical order.  The first `n` entries of `sm_p` must repeat one
/// fraction with unit numerator — the leading block — and every trailing
/// denominator must divide its denominator.  Pairing trailing fraction `i`
/// with fraction `n - i + 1` of `A` (taken as `1` beyond the left end) and
/// cancelling the common parts yields the `r` invariant fractions of the
/// transfer matrix.
pub fn fof_converse(
    sm_a: &[Frac],
    sm_p: &[Frac],
    n: usize,
    r: usize,
) -> Result<FofConverseReport> {
    if sm_a.len() != n || sm_p.len() != n + r {
        return Err(Error::ShapeMismatch);
    }
    if n + r == 0 {
        return Ok(FofConverseReport {
            mu: Vec::new(),
            sigma: Vec::new(),
            alpha_tilde: Vec::new(),
            beta_tilde: Vec::new(),
            delta_tilde: Vec::new(),
            nu_tilde: Vec::new(),
            predicted_sm_g: Vec::new(),
        });
    }
    let tag = sm_p.first().unwrap_or(&sm_a[0]).tag();
    if sm_a.iter().chain(sm_p.iter()).any(|f| f.tag() != tag) {
        return Err(Error::RingMismatch);
    }
    if sm_a.iter().chain(sm_p.iter()).any(|f| f.is_zero()) {
        return Err(Error::Hypothesis(
            "invariant fractions must be nonzero".into(),
        ));
    }
    let one = RingElem::one(tag);
    if n > 0 {
        let lead = &sm_p[0];
        if !lead.num().is_unit() || sm_p[..n].iter().any(|f| f != lead) {
            return Err(Error::Hypothesis(
                "the leading block must repeat one fraction with unit numerator".into(),
            ));
        }
    }
    let alphas: Vec<RingElem> = sm_a.iter().map(|f| f.den().clone()).collect();
    let betas: Vec<RingElem> = sm_a.iter().map(|f| f.num().canonical()).collect();
    for j in 0..n.saturating_sub(1) {
        if !betas[j].divides(&betas[j + 1])? || !alphas[j + 1].divides(&alphas[j])? {
            return Err(Error::Hypothesis(
                "the form of A must be a canonical chain".into(),
            ));
        }
    }
    let nus: Vec<RingElem> = sm_p[n..].iter().map(|f| f.num().canonical()).collect();
    let deltas: Vec<RingElem> = sm_p[n..].iter().map(|f| f.den().clone()).collect();
    for i in 0..r.saturating_sub(1) {
        if !nus[i].divides(&nus[i + 1])? || !deltas[i + 1].divides(&deltas[i])? {
            return Err(Error::Hypothesis(
                "the trailing block must be a canonical chain".into(),
            ));
        }
    }
    if n > 0 && r > 0 && !deltas[0].divides(sm_p[0].den())? {
        return Err(Error::Hypothesis(
            "trailing denominators must divide the leading denominator".into(),
        ));
    }

    let mut mu = Vec::with_capacity(r);
    let mut sigma = Vec::with_capacity(r);
    let mut alpha_tilde = Vec::with_capacity(r);
    let mut beta_tilde = Vec::with_capacity(r);
    let mut delta_tilde = Vec::with_capacity(r);
    let mut nu_tilde = Vec::with_capacity(r);
    let mut predicted_sm_g = Vec::with_capacity(r);
    for i in 1..=r {
        let (a_j, b_j) = if i <= n {
            (alphas[n - i].clone(), betas[n - i].clone())
        } else {
            (one.clone(), one.clone())
        };
        let m_i = a_j.gcd(&deltas[i - 1])?;
        let s_i = b_j.gcd(&nus[i - 1])?;
        let a_t = a_j.divide_exact(&m_i)?;
        let d_t = deltas[i - 1].divide_exact(&m_i)?;
        let b_t = b_j.divide_exact(&s_i)?;
        let n_t = nus[i - 1].divide_exact(&s_i)?;
        predicted_sm_g.push(Frac::new(a_t.mul(&n_t), b_t.mul(&d_t))?);
        mu.push(m_i);
        sigma.push(s_i);
        alpha_tilde.push(a_t);
        beta_tilde.push(b_t);
        delta_tilde.push(d_t);
        nu_tilde.push(n_t);
    }
    for i in 0..r.saturating_sub(1) {
        let num_chain = predicted_sm_g[i]
            .num()
            .canonical()
            .divides(&predicted_sm_g[i + 1].num().canonical())?;
        let den_chain = predicted_sm_g[i + 1]
            .den()
            .divides(predicted_sm_g[i].den())?;
        if !num_chain || !den_chain {
            return Err(Error::Hypothesis(
                "the given forms are not consistent with any system".into(),
            ));
        }
    }

    Ok(FofConverseReport {
        mu,
        sigma,
        alpha_tilde,
        beta_tilde,
        delta_tilde,
        nu_tilde,
        predicted_sm_g,
    })
}

/// The structure at infinity of a polynomial matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfinityReport {
    /// The largest degree among the entries.
    pub degree: usize,
    /// Multiplicities of the variable in the Smith form of the reversed
    /// matrix, ascending; one per invariant factor.
    pub exponents: Vec<u32>,
    /// Invariant orders at infinity: each exponent minus the degree.
    pub orders: Vec<i64>,
}

/// Compute the invariant orders at infinity of a polynomial matrix.
///
/// The matrix is reversed entrywise — each entry `t(z)` becomes
/// `z^d t(1/z)` for the maximal entry degree `d` — and the multiplicities
/// of the variable in the Smith form of the reversal, shifted down by `d`,
/// are the orders.  The same orders are recomputed independently by
/// rewriting each entry as a fraction of proper rationals and taking
/// valuations across the Smith–McMillan form; the two routes must agree.
pub fn infinity_structure(t: &MatR) -> Result<InfinityReport> {
    if t.ring() != RingTag::Qz {
        return Err(Error::UnsupportedRing);
    }
    if t.is_zero() {
        return Err(Error::Hypothesis(
            "the zero matrix has no structure at infinity".into(),
        ));
    }
    let degree = t
        .entries()
        .filter_map(|e| e.as_poly().and_then(Poly::degree))
        .max()
        .unwrap_or(0);

    let reversed = t.map(RingTag::Qz, |e| {
        RingElem::Poly(e.as_poly().expect("polynomial ring").reverse(degree))
    });
    let var = RingElem::Poly(Poly::var());
    let sd = smith(&reversed)?;
    let mut exponents = Vec::with_capacity(sd.rank);
    let mut orders = Vec::with_capacity(sd.rank);
    for f in &sd.inv_factors {
        let e = prime_exponent(f, &var)?;
        exponents.push(e);
        orders.push(e as i64 - degree as i64);
    }

    // Independent route: view each entry p(z) as the proper rational
    // p(z)/z^k divided by (1/z)^k and read valuations off the
    // Smith–McMillan form.
    let as_proper = |e: &RingElem| -> Frac {
        let p = e.as_poly().expect("polynomial ring");
        match p.degree() {
            None => Frac::zero(RingTag::Rpr),
            Some(k) => {
                let v = ProperRat::new(p.clone(), Poly::monomial(num_traits::One::one(), k))
                    .expect("proper by construction");
                Frac::new(
                    RingElem::Proper(v),
                    RingElem::Proper(ProperRat::inv_z_pow(k)),
                )
                .expect("denominator nonzero")
            }
        }
    };
    let t_proper: MatF = t.map(RingTag::Rpr, |e| as_proper(e));
    let sm = smith_mcmillan(&t_proper)?;
    let valuation = |e: &RingElem| -> Result<i64> {
        let v = e
            .as_proper()
            .and_then(ProperRat::valuation)
            .ok_or(Error::Internal("canonical factors must be nonzero"))?;
        Ok(v as i64)
    };
    let mut check = Vec::with_capacity(sm.rank);
    for i in 0..sm.rank {
        check.push(valuation(&sm.numerators[i])? - valuation(&sm.denominators[i])?);
    }
    if check != orders {
        return Err(Error::Internal(
            "structure at infinity computed two ways disagrees",
        ));
    }

    Ok(InfinityReport {
        degree,
        exponents,
        orders,
    })
}
