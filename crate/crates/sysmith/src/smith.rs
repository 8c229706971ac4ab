//! Smith normal form over the shipped elementary divisor domains, plus the
//! independent minor-gcd route, determinantal divisors, and partial
//! multiplicities at a prime.
//!
//! [`smith`] diagonalizes by extended-gcd two-row (two-column) elimination,
//! accumulating both transformations, then repairs divisibility along the
//! diagonal with 2x2 gcd/lcm folds and normalizes every invariant factor to
//! its canonical associate. The result is deterministic: pivots are chosen
//! as the smallest nonzero entry in the ring's Euclidean size, ties broken
//! in row-major order.
//!
//! [`smith_oracle`] recomputes the invariant factors from scratch as
//! quotients of determinantal divisors (gcds of all `k x k` minors, with
//! cofactor-expansion determinants), sharing no code with the elimination
//! path; it is deliberately exponential and guarded.

use crate::error::{Error, Result};
use crate::matrix::{IndexSet, MatR};
use crate::proper::ProperRat;
use crate::ring::{RingElem, RingTag};

/// Largest `min(rows, cols)` accepted by the exhaustive minor enumeration.
pub const MINOR_GUARD: usize = 6;

/// A Smith decomposition `u * a * v = s`.
#[derive(Clone, Debug)]
pub struct SmithDecomp {
    /// Unimodular row transformation (`rows x rows`).
    pub u: MatR,
    /// Unimodular column transformation (`cols x cols`).
    pub v: MatR,
    /// The Smith form: diagonal, canonical entries, each dividing the next.
    pub s: MatR,
    /// The nonzero diagonal of `s`: canonical invariant factors.
    pub inv_factors: Vec<RingElem>,
    pub rank: usize,
    /// Determinantal divisors `d_k = inv_factors[0] * ... * inv_factors[k-1]`.
    pub det_divisors: Vec<RingElem>,
}

/// Positive partial multiplicities of a chain of invariant factors at a
/// prime, in non-decreasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialMults {
    pub prime: RingElem,
    pub mults: Vec<u32>,
}

/// Finds the position of the nonzero entry of smallest Euclidean size in
/// the trailing submatrix starting at `(t, t)`, row-major tie-break.
fn find_pivot(s: &MatR, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            if s.at(i, j).is_zero() {
                continue;
            }
            match best {
                None => best = Some((i, j)),
                Some((bi, bj)) => {
                    if s.at(i, j).size_cmp(s.at(bi, bj)).is_lt() {
                        best = Some((i, j));
                    }
                }
            }
        }
    }
    best
}

/// Clears `s[i][t]` against the pivot `s[t][t]` by a unimodular row
/// operation mirrored onto `u`. Uses a plain elimination when the pivot
/// divides the target and an extended-gcd 2x2 block otherwise.
fn clear_row_entry(s: &mut MatR, u: &mut MatR, t: usize, i: usize) -> Result<()> {
    let a = s.at(t, t).clone();
    let b = s.at(i, t).clone();
    if let Ok(q) = b.divide_exact(&a) {
        let c = q.neg();
        s.row_axpy(i, t, &c);
        u.row_axpy(i, t, &c);
        return Ok(());
    }
    let e = a.gcd_ext(&b)?;
    let nb = b.divide_exact(&e.g).expect("gcd divides").neg();
    let na = a.divide_exact(&e.g).expect("gcd divides");
    s.row_combine(t, i, &e.x, &e.y, &nb, &na);
    u.row_combine(t, i, &e.x, &e.y, &nb, &na);
    Ok(())
}

/// Column counterpart of [`clear_row_entry`], mirrored onto `v`.
fn clear_col_entry(s: &mut MatR, v: &mut MatR, t: usize, j: usize) -> Result<()> {
    let a = s.at(t, t).clone();
    let b = s.at(t, j).clone();
    if let Ok(q) = b.divide_exact(&a) {
        let c = q.neg();
        s.col_axpy(j, t, &c);
        v.col_axpy(j, t, &c);
        return Ok(());
    }
    let e = a.gcd_ext(&b)?;
    let nb = b.divide_exact(&e.g).expect("gcd divides").neg();
    let na = a.divide_exact(&e.g).expect("gcd divides");
    s.col_combine(t, j, &e.x, &e.y, &nb, &na);
    v.col_combine(t, j, &e.x, &e.y, &nb, &na);
    Ok(())
}

/// Computes the Smith decomposition of any matrix, empty shapes included.
pub fn smith(a: &MatR) -> Result<SmithDecomp> {
    let ring = a.ring();
    let (p, m) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = MatR::identity(ring, p);
    let mut v = MatR::identity(ring, m);

    let mut t = 0;
    while t < p.min(m) {
        let (pi, pj) = match find_pivot(&s, t) {
            Some(pos) => pos,
            None => break,
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            for i in t + 1..p {
                if !s.at(i, t).is_zero() {
                    clear_row_entry(&mut s, &mut u, t, i)?;
                }
            }
            for j in t + 1..m {
                if !s.at(t, j).is_zero() {
                    clear_col_entry(&mut s, &mut v, t, j)?;
                }
            }
            // Column clearing can refill the pivot column (gcd steps mix
            // both columns); loop until both are clean. Each gcd step
            // strictly shrinks the pivot, so this terminates.
            let col_clean = (t + 1..p).all(|i| s.at(i, t).is_zero());
            let row_clean = (t + 1..m).all(|j| s.at(t, j).is_zero());
            if col_clean && row_clean {
                break;
            }
        }
        t += 1;
    }
    let rank = t;

    // Repair divisibility along the diagonal: replace offending pairs by
    // (gcd, lcm) with unimodular operations until the chain holds.
    loop {
        let mut changed = false;
        for i in 0..rank.saturating_sub(1) {
            let a_i = s.at(i, i).clone();
            let b_i = s.at(i + 1, i + 1).clone();
            if a_i.divides(&b_i)? {
                continue;
            }
            let one = RingElem::one(ring);
            s.col_axpy(i, i + 1, &one);
            v.col_axpy(i, i + 1, &one);
            let e = a_i.gcd_ext(&b_i)?;
            let nb = b_i.divide_exact(&e.g).expect("gcd divides").neg();
            let na = a_i.divide_exact(&e.g).expect("gcd divides");
            s.row_combine(i, i + 1, &e.x, &e.y, &nb, &na);
            u.row_combine(i, i + 1, &e.x, &e.y, &nb, &na);
            let off = s
                .at(i, i + 1)
                .divide_exact(s.at(i, i))
                .expect("gcd divides the fold's off-diagonal entry")
                .neg();
            s.col_axpy(i + 1, i, &off);
            v.col_axpy(i + 1, i, &off);
            changed = true;
        }
        if !changed {
            break;
        }
    }

    // Normalize each invariant factor to its canonical associate.
    for i in 0..rank {
        let unit = s.at(i, i).unit_of();
        if !unit.is_one() {
            let inv = unit.inverse_unit().expect("unit part");
            s.row_scale(i, &inv);
            u.row_scale(i, &inv);
        }
    }

    let inv_factors: Vec<RingElem> = (0..rank).map(|i| s.at(i, i).clone()).collect();
    let mut det_divisors = Vec::with_capacity(rank);
    let mut acc = RingElem::one(ring);
    for f in &inv_factors {
        acc = acc.mul(f);
        det_divisors.push(acc.clone());
    }

    Ok(SmithDecomp {
        u,
        v,
        s,
        inv_factors,
        rank,
        det_divisors,
    })
}

/// Determinant by cofactor expansion along the first row — kept separate
/// from the Bareiss path so the minor-gcd oracle is independent of it.
fn det_cofactor(m: &MatR) -> RingElem {
    let n = m.rows();
    debug_assert_eq!(n, m.cols());
    if n == 0 {
        return RingElem::one(m.ring());
    }
    if n == 1 {
        return m.at(0, 0).clone();
    }
    let mut acc = RingElem::zero(m.ring());
    for j in 0..n {
        if m.at(0, j).is_zero() {
            continue;
        }
        let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let rows: Vec<usize> = (1..n).collect();
        let sub = m.gather(&rows, &cols).expect("indices in range");
        let term = m.at(0, j).mul(&det_cofactor(&sub));
        acc = if j % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}

/// Gcd of all `k x k` minors for `k = 1, .., rank`, by exhaustive
/// enumeration with cofactor determinants. Guarded to small matrices.
pub fn determinantal_divisors(a: &MatR) -> Result<Vec<RingElem>> {
    if a.rows().min(a.cols()) > MINOR_GUARD {
        return Err(Error::GuardExceeded);
    }
    let ring = a.ring();
    let mut out = Vec::new();
    for k in 1..=a.rows().min(a.cols()) {
        let mut g = RingElem::zero(ring);
        for rows in IndexSet::combinations(a.rows(), k) {
            for cols in IndexSet::combinations(a.cols(), k) {
                let sub = a
                    .gather(&rows.zero_based(), &cols.zero_based())
                    .expect("indices in range");
                g = g.gcd(&det_cofactor(&sub))?;
            }
        }
        if g.is_zero() {
            break; // every k-minor vanishes: rank is k - 1
        }
        out.push(g);
    }
    Ok(out)
}

/// Invariant factors recomputed as quotients of consecutive determinantal
/// divisors. Independent of [`smith`]; used to cross-check it.
pub fn smith_oracle(a: &MatR) -> Result<Vec<RingElem>> {
    let deltas = determinantal_divisors(a)?;
    let mut out = Vec::with_capacity(deltas.len());
    let mut prev = RingElem::one(a.ring());
    for d in &deltas {
        out.push(
            d.divide_exact(&prev)
                .map_err(|_| Error::Internal("determinantal divisors must divide in turn"))?
                .canonical(),
        );
        prev = d.clone();
    }
    Ok(out)
}

/// Exponent of `prime` in `e`: the largest `t` with `prime^t | e`.
/// `e` must be nonzero and `prime` a valid prime for its ring.
pub fn prime_exponent(e: &RingElem, prime: &RingElem) -> Result<u32> {
    check_prime(prime)?;
    if e.is_zero() {
        return Err(Error::Hypothesis("prime exponent of zero".into()));
    }
    let mut rest = e.clone();
    let mut t = 0;
    while let Ok(q) = rest.divide_exact(prime) {
        rest = q;
        t += 1;
    }
    Ok(t)
}

/// A usable prime: nonzero, not a unit, and over the proper rationals only
/// the (unique) prime `1/z` up to units.
fn check_prime(prime: &RingElem) -> Result<()> {
    if prime.is_zero() || prime.is_unit() {
        return Err(Error::BadPrime);
    }
    if prime.tag() == RingTag::Rpr
        && prime.canonical() != RingElem::Proper(ProperRat::inv_z_pow(1))
    {
        return Err(Error::BadPrime);
    }
    Ok(())
}

/// Positive partial multiplicities of a divisibility chain of invariant
/// factors at `prime`. Empty exactly when the prime divides no factor.
pub fn partial_multiplicities(factors: &[RingElem], prime: &RingElem) -> Result<PartialMults> {
    check_prime(prime)?;
    for w in factors.windows(2) {
        if w[0].tag() != w[1].tag() || !w[0].divides(&w[1])? {
            return Err(Error::Hypothesis(
                "factors must form a divisibility chain".into(),
            ));
        }
    }
    let mut mults = Vec::new();
    for f in factors {
        if f.tag() != prime.tag() {
            return Err(Error::RingMismatch);
        }
        let t = prime_exponent(f, prime)?;
        if t > 0 {
            mults.push(t);
        }
    }
    Ok(PartialMults {
        prime: prime.clone(),
        mults,
    })
}
