//! Matrix coprimeness over the ring, with checkable certificates either way.
//!
//! Two matrices `g1` (p x m) and `g2` (q x m) are right coprime when the
//! stacked matrix `[g1; g2]` has Smith form `[I_m; 0]` — equivalently, when
//! a Bezout identity `x*g1 + y*g2 = I_m` has a ring-valued solution. When
//! they are not coprime, a common right divisor with non-unit determinant
//! exists, and both outcomes are returned with the matrices that prove
//! them. Left coprimeness is the transposed notion; with fewer stacked rows
//! than columns (`p + q < m`) right coprimeness is impossible.

use crate::error::{Error, Result};
use crate::matrix::{MatF, MatR};
use crate::ring::RingElem;
use crate::smith::smith;

/// Which side a coprimeness question (or divisor) refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A common divisor certificate for non-coprime matrices: `d` has non-unit
/// determinant and, for the right-hand side, `g1 = cof1 * d` and
/// `g2 = cof2 * d` (reversed order on the left).
#[derive(Clone, Debug)]
pub struct CommonDivisor {
    pub d: MatR,
    pub cof1: MatR,
    pub cof2: MatR,
}

/// Outcome of a coprimeness test. Exactly one of `witness` and
/// `common_divisor` is present: the Bezout witness `(x, y)` with
/// `x*g1 + y*g2 = I` (right) or `g1*x + g2*y = I` (left) when coprime, the
/// divisor certificate otherwise.
#[derive(Clone, Debug)]
pub struct CoprimeReport {
    pub side: Side,
    pub coprime: bool,
    pub witness: Option<(MatR, MatR)>,
    pub common_divisor: Option<CommonDivisor>,
}

/// Unimodular completion of a left-coprime pair: `[a b] * u = [I 0]`.
#[derive(Clone, Debug)]
pub struct CompletionI0 {
    pub u: MatR,
    n: usize,
    m: usize,
}

impl CompletionI0 {
    pub fn y11(&self) -> MatR {
        self.u.block(0, 0, self.n, self.n).expect("block in range")
    }

    pub fn y12(&self) -> MatR {
        self.u.block(0, self.n, self.n, self.m).expect("block in range")
    }

    pub fn y21(&self) -> MatR {
        self.u.block(self.n, 0, self.m, self.n).expect("block in range")
    }

    pub fn y22(&self) -> MatR {
        self.u
            .block(self.n, self.n, self.m, self.m)
            .expect("block in range")
    }
}

/// Tests right coprimeness of vertically conformal `g1`, `g2`.
fn coprime_right(g1: &MatR, g2: &MatR) -> Result<CoprimeReport> {
    if g1.ring() != g2.ring() {
        return Err(Error::RingMismatch);
    }
    if g1.cols() != g2.cols() {
        return Err(Error::ShapeMismatch);
    }
    let ring = g1.ring();
    let (p, q, m) = (g1.rows(), g2.rows(), g1.cols());
    let stacked = g1.vstack(g2)?;
    let sd = smith(&stacked)?;
    let coprime = sd.rank == m && sd.inv_factors.iter().all(RingElem::is_unit);

    if coprime {
        // From u*[g1; g2]*v = [I; 0]: the first m rows of u, premultiplied
        // by v, give the Bezout witness.
        let head = sd.u.block(0, 0, m, p + q)?;
        let xy = sd.v.mul(&head)?;
        let x = xy.block(0, 0, m, p)?;
        let y = xy.block(0, p, m, q)?;
        let idn = x.mul(g1)?.add(&y.mul(g2)?)?;
        if !idn.is_identity() {
            return Err(Error::Internal("Bezout witness must recombine to I"));
        }
        return Ok(CoprimeReport {
            side: Side::Right,
            coprime: true,
            witness: Some((x, y)),
            common_divisor: None,
        });
    }

    // stacked = (u^-1 * embed) * (s_m * v^-1) where embed stacks I_m over
    // zeros (or pads right, in the wide case) and s_m is the m x m diagonal
    // of invariant factors padded with zeros. The right factor is a common
    // right divisor with non-unit (possibly zero) determinant.
    let u_inv = sd.u.inverse_unimodular()?;
    let v_inv = sd.v.inverse_unimodular()?;
    let s_m = MatR::diag(ring, &sd.inv_factors, m, m)?;
    let d = s_m.mul(&v_inv)?;
    let embed = MatR::from_fn(ring, p + q, m, |i, j| {
        if i == j {
            RingElem::one(ring)
        } else {
            RingElem::zero(ring)
        }
    });
    let cof = u_inv.mul(&embed)?;
    let cof1 = cof.block(0, 0, p, m)?;
    let cof2 = cof.block(p, 0, q, m)?;
    if cof1.mul(&d)? != *g1 || cof2.mul(&d)? != *g2 {
        return Err(Error::Internal("common divisor must recombine"));
    }
    if d.det()?.is_unit() {
        return Err(Error::Internal("common divisor of a non-coprime pair is non-unit"));
    }
    Ok(CoprimeReport {
        side: Side::Right,
        coprime: false,
        witness: None,
        common_divisor: Some(CommonDivisor { d, cof1, cof2 }),
    })
}

/// Tests coprimeness of a pair of matrices on the requested side.
///
/// Right: `g1`, `g2` share their column count and a divisor acts on the
/// right. Left: they share their row count and a divisor acts on the left.
pub fn coprime_check(g1: &MatR, g2: &MatR, side: Side) -> Result<CoprimeReport> {
    match side {
        Side::Right => coprime_right(g1, g2),
        Side::Left => {
            let rep = coprime_right(&g1.transpose(), &g2.transpose())?;
            Ok(CoprimeReport {
                side: Side::Left,
                coprime: rep.coprime,
                witness: rep.witness.map(|(x, y)| (x.transpose(), y.transpose())),
                common_divisor: rep.common_divisor.map(|cd| CommonDivisor {
                    d: cd.d.transpose(),
                    cof1: cd.cof1.transpose(),
                    cof2: cd.cof2.transpose(),
                }),
            })
        }
    }
}

/// Coprimeness of fraction-valued matrices: each factor is cleared by its
/// least common denominator and the ring-valued results are tested.
pub fn fraction_coprime(t1: &MatF, t2: &MatF, side: Side) -> Result<CoprimeReport> {
    let tau1 = t1.lcd();
    let tau2 = t2.lcd();
    let c1 = t1.scale_elem(&tau1)?.to_ring()?;
    let c2 = t2.scale_elem(&tau2)?.to_ring()?;
    coprime_check(&c1, &c2, side)
}

/// For a left-coprime pair with `a` square nonsingular, builds a unimodular
/// `u` with `[a b] * u = [I 0]`, partitioned for later use. The lower-right
/// block always has nonzero determinant.
pub fn completion_i0(a: &MatR, b: &MatR) -> Result<CompletionI0> {
    if !a.is_square() {
        return Err(Error::NotSquare);
    }
    if a.rows() != b.rows() || a.ring() != b.ring() {
        return Err(Error::ShapeMismatch);
    }
    if a.det()?.is_zero() {
        return Err(Error::Singular);
    }
    let rep = coprime_check(a, b, Side::Left)?;
    if !rep.coprime {
        return Err(Error::NotCoprime("left"));
    }
    let (n, m) = (a.rows(), b.cols());
    let ab = a.hstack(b)?;
    let sd = smith(&ab)?;
    if !sd.s.block(0, 0, n, n)?.is_identity() {
        return Err(Error::Internal("coprime pair must have Smith form [I 0]"));
    }
    // From w*[a b]*z = [I 0]: u = z * (w (+) I_m).
    let u = sd.v.mul(&sd.u.direct_sum(&MatR::identity(a.ring(), m)))?;
    let completion = CompletionI0 { u, n, m };
    let check = ab.mul(&completion.u)?;
    let expect = MatR::identity(a.ring(), n).hstack(&MatR::zero(a.ring(), n, m))?;
    if check != expect {
        return Err(Error::Internal("completion must satisfy [a b]u = [I 0]"));
    }
    if completion.y22().det()?.is_zero() {
        return Err(Error::Internal("trailing completion block must be nonsingular"));
    }
    Ok(completion)
}
