//! System matrices, transfer functions, and the correspondence between
//! their canonical forms.
//!
//! A system matrix couples a nonsingular square block `A` with input and
//! output blocks `B`, `C` and a feedthrough `D`:
//!
//! ```text
//!     P = [ A  B ]          G = D - C A^{-1} B.
//!         [ C  D ],
//! ```
//!
//! All computations are exact.  When the pair `(A, B)` is left coprime and
//! `(A, C)` is right coprime, the Smith forms of `P` and of `A` are
//! completely determined by the Smith–McMillan form of `G`, and conversely
//! those two Smith forms recover the Smith–McMillan form of `G`.  This
//! module implements both directions of that correspondence, a reduction
//! procedure that extracts one-sided common divisors from a reducible
//! system, diagnostics that quantify how far a reducible system deviates
//! from the predicted canonical forms, local structure at a prime, and
//! minimal realizations built directly from Smith–McMillan data.

use crate::coprime::{coprime_check, CoprimeReport, Side};
use crate::error::{Error, Result};
use crate::frac::Frac;
use crate::matrix::{IndexSet, Mat, MatF, MatR};
use crate::mcmillan::{smith_mcmillan, SmDecomp};
use crate::ring::{RingElem, RingTag};
use crate::smith::{partial_multiplicities, smith, PartialMults};

/// A block system matrix `[[A, B], [C, D]]` over one of the supported rings.
///
/// `A` is `n x n` with nonzero determinant, `B` is `n x m`, `C` is `p x n`,
/// and `D` is `p x m`.  The struct owns its blocks; [`SystemMatrix::assembled`]
/// stacks them back into the full `(n + p) x (n + m)` matrix.
#[derive(Clone, Debug)]
pub struct SystemMatrix {
    a: MatR,
    b: MatR,
    c: MatR,
    d: MatR,
}

impl SystemMatrix {
    /// Build a system matrix from its four blocks, validating shapes, ring
    /// agreement, and the nonsingularity of `A`.
    pub fn new(a: MatR, b: MatR, c: MatR, d: MatR) -> Result<Self> {
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
        Ok(SystemMatrix { a, b, c, d })
    }

    /// Split a stacked `(n + p) x (n + m)` matrix into a system matrix with
    /// state dimension `n`.
    pub fn from_stacked(p: &MatR, n: usize) -> Result<Self> {
        if n > p.rows() || n > p.cols() {
            return Err(Error::ShapeMismatch);
        }
        let a = p.block(0, 0, n, n)?;
        let b = p.block(0, n, n, p.cols() - n)?;
        let c = p.block(n, 0, p.rows() - n, n)?;
        let d = p.block(n, n, p.rows() - n, p.cols() - n)?;
        SystemMatrix::new(a, b, c, d)
    }

    /// The full `(n + p) x (n + m)` matrix `[[A, B], [C, D]]`.
    pub fn assembled(&self) -> MatR {
        Mat::from_blocks(&self.a, &self.b, &self.c, &self.d).expect("blocks conform")
    }

    /// State dimension `n`.
    pub fn n(&self) -> usize {
        self.a.rows()
    }

    /// Number of inputs `m` (columns of `B`).
    pub fn m(&self) -> usize {
        self.b.cols()
    }

    /// Number of outputs `p` (rows of `C`).
    pub fn p(&self) -> usize {
        self.c.rows()
    }

    /// The nonsingular block `A`.
    pub fn a(&self) -> &MatR {
        &self.a
    }

    /// The input block `B`.
    pub fn b(&self) -> &MatR {
        &self.b
    }

    /// The output block `C`.
    pub fn c(&self) -> &MatR {
        &self.c
    }

    /// The feedthrough block `D`.
    pub fn d(&self) -> &MatR {
        &self.d
    }

    /// The coefficient ring of all four blocks.
    pub fn ring(&self) -> RingTag {
        self.a.ring()
    }
}

/// Transfer matrix of a system together with the rank bookkeeping that ties
/// it to the system matrix.
#[derive(Clone, Debug)]
pub struct SchurResult {
    /// The transfer matrix `G = D - C A^{-1} B` over the field of fractions.
    pub g: MatF,
    /// Rank of `G`.
    pub rank_g: usize,
    /// Rank of the assembled system matrix; always `n + rank_g`.
    pub rank_p: usize,
}

/// Compute the transfer matrix `G = D - C A^{-1} B` as a Schur complement.
///
/// The returned record also carries the ranks of `G` and of the assembled
/// system matrix, which always satisfy `rank P = n + rank G`.
pub fn schur_complement(sys: &SystemMatrix) -> Result<SchurResult> {
    let a_inv = sys.a.to_frac().inverse()?;
    let correction = sys.c.to_frac().mul(&a_inv)?.mul(&sys.b.to_frac())?;
    let g = sys.d.to_frac().sub(&correction)?;
    let rank_g = g.rank();
    let rank_p = sys.assembled().to_frac().rank();
    if rank_p != sys.n() + rank_g {
        return Err(Error::Internal("rank of P must be n plus rank of G"));
    }
    Ok(SchurResult { g, rank_g, rank_p })
}

/// Both sides of the two minor identities linking `P`, `A`, and `G`, as
/// evaluated by [`schur_minor_identity`].
#[derive(Clone, Debug)]
pub struct SchurMinorIdentity {
    /// `det P[{1..n} + I', {1..n} + J']` and `det A * det G[I, J]`.
    pub plain: (Frac, Frac),
    /// The same pair after every matrix is scaled by the chosen element.
    pub scaled: (Frac, Frac),
}

impl SchurMinorIdentity {
    /// Whether both evaluated identities hold.
    pub fn holds(&self) -> bool {
        self.plain.0 == self.plain.1 && self.scaled.0 == self.scaled.1
    }
}

/// Evaluate the minor identities relating a system matrix to its transfer
/// matrix on one choice of index sets.
///
/// For row indices `I` into `G` and column indices `J` of the same size,
/// the minor of `P` on the first `n` rows and columns together with the
/// shifted copies of `I` and `J` equals `det A` times the `(I, J)` minor of
/// `G`.  The identity survives scaling every matrix by a fixed ring element
/// `e`, which is the form needed when clearing denominators; both variants
/// are evaluated and returned.
pub fn schur_minor_identity(
    sys: &SystemMatrix,
    rows: &IndexSet,
    cols: &IndexSet,
    e: &RingElem,
) -> Result<SchurMinorIdentity> {
    if rows.len() != cols.len() {
        return Err(Error::ShapeMismatch);
    }
    if e.tag() != sys.ring() {
        return Err(Error::RingMismatch);
    }
    let n = sys.n();
    let g = schur_complement(sys)?.g;
    let p = sys.assembled().to_frac();
    let a = sys.a.to_frac();
    let p_rows = rows.prepend_full(n);
    let p_cols = cols.prepend_full(n);

    let plain_lhs = p.minor(&p_rows, &p_cols)?;
    let plain_rhs = a.det()?.mul(&g.minor(rows, cols)?);

    let ef = Frac::from_ring(e.clone());
    let scaled_lhs = p.scale(&ef)?.minor(&p_rows, &p_cols)?;
    let scaled_rhs = a.scale(&ef)?.det()?.mul(&g.scale(&ef)?.minor(rows, cols)?);

    Ok(SchurMinorIdentity {
        plain: (plain_lhs, plain_rhs),
        scaled: (scaled_lhs, scaled_rhs),
    })
}

/// Check left coprimeness of `(A, B)` and right coprimeness of `(A, C)`.
///
/// The system is irreducible exactly when both reports come back coprime.
pub fn is_irreducible(sys: &SystemMatrix) -> Result<(CoprimeReport, CoprimeReport)> {
    let left = coprime_check(&sys.a, &sys.b, Side::Left)?;
    let right = coprime_check(&sys.a, &sys.c, Side::Right)?;
    Ok((left, right))
}

/// Invariant-factor predictions shared by the forward direction and the
/// verification report.
fn predictions_from_sm(
    sm: &SmDecomp,
    n: usize,
    p: usize,
    m: usize,
) -> Result<(Vec<RingElem>, Vec<RingElem>)> {
    let tag = sm.lcd.tag();
    let g = sm.pole_count();
    if n < g {
        return Err(Error::Hypothesis(format!(
            "a degree-{n} system cannot realize a transfer matrix with {g} poles"
        )));
    }
    let r = sm.rank;
    let diag_len = (n + p).min(n + m);
    let mut sp = Vec::with_capacity(diag_len);
    sp.resize(n, RingElem::one(tag));
    sp.extend(sm.numerators.iter().cloned());
    sp.resize(diag_len, RingElem::zero(tag));
    if n + r > diag_len {
        return Err(Error::Internal("rank of G exceeds the transfer shape"));
    }
    let mut sa = Vec::with_capacity(n);
    sa.resize(n - g, RingElem::one(tag));
    sa.extend(sm.denominators[..g].iter().rev().cloned());
    Ok((sp, sa))
}

/// Predict the Smith forms of an irreducible degree-`n` system matrix and of
/// its `A` block from a transfer matrix alone.
///
/// Writing the Smith–McMillan form of `G` as `diag(eps_i / psi_i)` with `g`
/// non-unit denominators, any irreducible system of state dimension `n`
/// realizing `G` has Smith diagonal `(1, ..., 1, eps_1, ..., eps_r, 0, ...)`
/// with `n` leading ones, and its `A` block has Smith diagonal
/// `(1, ..., 1, psi_g, ..., psi_1)`.  Returns the pair
/// `(diagonal of P, diagonal of A)`; fails if `n` is smaller than `g`, since
/// no such realization exists.
pub fn rosenbrock_forward(g: &MatF, n: usize) -> Result<(Vec<RingElem>, Vec<RingElem>)> {
    let sm = smith_mcmillan(g)?;
    predictions_from_sm(&sm, n, g.rows(), g.cols())
}

/// Everything produced while checking a system against the canonical-form
/// predictions of its transfer matrix.
#[derive(Clone, Debug)]
pub struct RosenbrockReport {
    /// Smith–McMillan decomposition of the transfer matrix.
    pub sm: SmDecomp,
    /// Predicted Smith diagonal of the assembled system matrix.
    pub predicted_sp: Vec<RingElem>,
    /// Predicted Smith diagonal of `A`.
    pub predicted_sa: Vec<RingElem>,
    /// Actual Smith diagonal of the assembled system matrix.
    pub computed_sp: Vec<RingElem>,
    /// Actual Smith diagonal of `A`.
    pub computed_sa: Vec<RingElem>,
    /// Number of non-unit Smith–McMillan denominators of the transfer matrix.
    pub g: usize,
    /// Whether `(A, B)` is left coprime and `(A, C)` is right coprime.
    pub irreducible: bool,
    /// Whether both computed diagonals equal the predictions.
    pub matched: bool,
    /// Full coprimeness report for `(A, B)`.
    pub left: CoprimeReport,
    /// Full coprimeness report for `(A, C)`.
    pub right: CoprimeReport,
}

/// Compare the Smith forms of a system matrix and of its `A` block against
/// the predictions derived from the transfer matrix.
///
/// The predictions hold exactly for irreducible systems, and fail for
/// reducible ones; the report records both the coprimeness verdicts and the
/// diagonal comparison, whose agreement is asserted internally.
pub fn verify_rosenbrock(sys: &SystemMatrix) -> Result<RosenbrockReport> {
    let schur = schur_complement(sys)?;
    let sm = smith_mcmillan(&schur.g)?;
    let n = sys.n();
    let (predicted_sp, predicted_sa) = predictions_from_sm(&sm, n, sys.p(), sys.m())?;

    let tag = sys.ring();
    let sp = smith(&sys.assembled())?;
    let mut computed_sp = sp.inv_factors.clone();
    computed_sp.resize((n + sys.p()).min(n + sys.m()), RingElem::zero(tag));
    let sa = smith(&sys.a)?;
    let mut computed_sa = sa.inv_factors.clone();
    computed_sa.resize(n, RingElem::zero(tag));

    let (left, right) = is_irreducible(sys)?;
    let irreducible = left.coprime && right.coprime;
    let matched = computed_sp == predicted_sp && computed_sa == predicted_sa;
    if matched != irreducible {
        return Err(Error::Internal(
            "canonical-form agreement must coincide with coprimeness",
        ));
    }
    Ok(RosenbrockReport {
        g: sm.pole_count(),
        sm,
        predicted_sp,
        predicted_sa,
        computed_sp,
        computed_sa,
        irreducible,
        matched,
        left,
        right,
    })
}

/// Recover the Smith–McMillan fractions of the transfer matrix from the
/// Smith diagonals of an irreducible system matrix and of its `A` block.
///
/// `s_a` lists the `n` invariant factors of `A` in ascending divisibility
/// order and `s_p` the `n + r` nonzero invariant factors of the assembled
/// system matrix, where `r` is the rank of the transfer matrix.  The factors
/// must satisfy the consistency conditions forced on irreducible systems:
/// both lists are divisibility chains, the first `n` entries of `s_p` are
/// units, the first `n - r` entries of `s_a` are units when `n >= r`, and
/// each recovered numerator is coprime to its denominator.  Returns the `r`
/// nonzero Smith–McMillan fractions in canonical order.
pub fn rosenbrock_converse(
    s_a: &[RingElem],
    s_p: &[RingElem],
    n: usize,
    r: usize,
) -> Result<Vec<Frac>> {
    if s_a.len() != n || s_p.len() != n + r {
        return Err(Error::ShapeMismatch);
    }
    if r == 0 {
        return Ok(Vec::new());
    }
    let tag = s_p[0].tag();
    if s_a.iter().chain(s_p.iter()).any(|e| e.tag() != tag) {
        return Err(Error::RingMismatch);
    }
    if s_a.iter().chain(s_p.iter()).any(|e| e.is_zero()) {
        return Err(Error::Hypothesis(
            "invariant factors must be nonzero".into(),
        ));
    }
    let s_a: Vec<RingElem> = s_a.iter().map(|e| e.canonical()).collect();
    let s_p: Vec<RingElem> = s_p.iter().map(|e| e.canonical()).collect();
    for chain in [&s_a, &s_p] {
        for w in chain.windows(2) {
            if !w[0].divides(&w[1])? {
                return Err(Error::Hypothesis(
                    "invariant factors must form a divisibility chain".into(),
                ));
            }
        }
    }
    if s_p[..n].iter().any(|e| !e.is_unit()) {
        return Err(Error::Hypothesis(
            "the first n invariant factors of P must be units".into(),
        ));
    }
    if n >= r && s_a[..n - r].iter().any(|e| !e.is_unit()) {
        return Err(Error::Hypothesis(
            "all but the last r invariant factors of A must be units".into(),
        ));
    }
    let mut fractions = Vec::with_capacity(r);
    for i in 1..=r {
        let eps = s_p[n + i - 1].clone();
        let psi = if i <= n {
            s_a[n - i].clone()
        } else {
            RingElem::one(tag)
        };
        if !eps.gcd(&psi)?.is_unit() {
            return Err(Error::Hypothesis(
                "recovered numerators and denominators must be coprime".into(),
            ));
        }
        fractions.push(Frac::new(eps, psi)?);
    }
    Ok(fractions)
}

/// Which one-sided extraction happens first when reducing a system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionOrder {
    /// Extract the left factor `E` from `(A, B)` first, then the right
    /// factor `F` from the updated `(A, C)`.
    EFirst,
    /// Extract the right factor `F` from `(A, C)` first, then the left
    /// factor `E` from the updated `(A, B)`.
    FFirst,
}

/// Outcome of reducing a system matrix to an irreducible one.
///
/// The factors satisfy `P = (E + I_p) P0 (F + I_m)` (direct sums), both
/// determinants are nonzero, and the reduced system `P0` has `(A, B)` left
/// coprime and `(A, C)` right coprime with the same transfer matrix as the
/// input.
#[derive(Clone, Debug)]
pub struct ReductionResult {
    /// Left factor; unimodular (chosen as the identity) when `(A, B)` was
    /// already left coprime.
    pub e: MatR,
    /// Right factor; unimodular (chosen as the identity) when `(A, C)` was
    /// already right coprime.
    pub f: MatR,
    /// The irreducible reduced system.
    pub p0: SystemMatrix,
    /// The extraction order that produced the factors.
    pub order: ReductionOrder,
}

/// Extract a full common left divisor: returns `(e, w, b0)` with `a = e w`,
/// `b = e b0`, and `(w, b0)` left coprime.  When `(a, b)` is already left
/// coprime the factor is the identity.
fn left_extract(a: &MatR, b: &MatR) -> Result<(MatR, MatR, MatR)> {
    let n = a.rows();
    let tag = a.ring();
    let sd = smith(&a.hstack(b)?)?;
    if sd.rank < n {
        return Err(Error::Internal("left pencil lost rank during reduction"));
    }
    if sd.inv_factors.iter().all(|f| f.is_unit()) {
        return Ok((Mat::identity(tag, n), a.clone(), b.clone()));
    }
    let s = Mat::diag(tag, &sd.inv_factors, n, n)?;
    let e = sd.u.inverse_unimodular()?.mul(&s)?;
    let v_inv = sd.v.inverse_unimodular()?;
    let w = v_inv.block(0, 0, n, n)?;
    let b0 = v_inv.block(0, n, n, b.cols())?;
    Ok((e, w, b0))
}

/// Extract a full common right divisor: returns `(f, w, c0)` with `a = w f`,
/// `c = c0 f`, and `(w, c0)` right coprime.  When `(a, c)` is already right
/// coprime the factor is the identity.
fn right_extract(a: &MatR, c: &MatR) -> Result<(MatR, MatR, MatR)> {
    let n = a.cols();
    let tag = a.ring();
    let sd = smith(&a.vstack(c)?)?;
    if sd.rank < n {
        return Err(Error::Internal("right pencil lost rank during reduction"));
    }
    if sd.inv_factors.iter().all(|f| f.is_unit()) {
        return Ok((Mat::identity(tag, n), a.clone(), c.clone()));
    }
    let t = Mat::diag(tag, &sd.inv_factors, n, n)?;
    let f = t.mul(&sd.v.inverse_unimodular()?)?;
    let u_inv = sd.u.inverse_unimodular()?;
    let w = u_inv.block(0, 0, n, n)?;
    let c0 = u_inv.block(n, 0, c.rows(), n)?;
    Ok((f, w, c0))
}

/// Reduce a system matrix to an irreducible one by extracting a common left
/// divisor of `(A, B)` and a common right divisor of `(A, C)`.
///
/// The two extractions commute in effect but not in detail: the order
/// determines which factor absorbs divisors shared between the sides, so a
/// system whose `A` has a prime determinant places the whole defect in `E`
/// under [`ReductionOrder::EFirst`] and in `F` under
/// [`ReductionOrder::FFirst`].  An already irreducible system yields
/// identity factors and an unchanged `P0`.
pub fn reduce_system(sys: &SystemMatrix, order: ReductionOrder) -> Result<ReductionResult> {
    let (e, f, a0, b0, c0) = match order {
        ReductionOrder::EFirst => {
            let (e, w, b0) = left_extract(&sys.a, &sys.b)?;
            let (f, a0, c0) = right_extract(&w, &sys.c)?;
            (e, f, a0, b0, c0)
        }
        ReductionOrder::FFirst => {
            let (f, w, c0) = right_extract(&sys.a, &sys.c)?;
            let (e, a0, b0) = left_extract(&w, &sys.b)?;
            (e, f, a0, b0, c0)
        }
    };
    let p0 = SystemMatrix::new(a0, b0, c0, sys.d.clone())?;
    let result = ReductionResult { e, f, p0, order };
    check_reduction(sys, &result)
        .map_err(|_| Error::Internal("reduction produced an invalid factorization"))?;
    Ok(result)
}

/// Verify that a claimed reduction is a genuine one.
///
/// Checks the factorization `P = (E + I_p) P0 (F + I_m)`, the
/// nonsingularity of both factors, the coprimeness of the reduced pairs,
/// and the preservation of the transfer matrix.  Accepts factorizations
/// from any source, not only [`reduce_system`]; a hand-picked split of a
/// composite divisor passes exactly when it satisfies all the invariants.
pub fn check_reduction(sys: &SystemMatrix, red: &ReductionResult) -> Result<()> {
    let tag = sys.ring();
    if red.e.ring() != tag || red.f.ring() != tag || red.p0.ring() != tag {
        return Err(Error::RingMismatch);
    }
    let (n, m, p) = (sys.n(), sys.m(), sys.p());
    if red.e.rows() != n
        || red.e.cols() != n
        || red.f.rows() != n
        || red.f.cols() != n
        || red.p0.n() != n
        || red.p0.m() != m
        || red.p0.p() != p
    {
        return Err(Error::ShapeMismatch);
    }
    if red.e.det()?.is_zero() {
        return Err(Error::Hypothesis("the left factor is singular".into()));
    }
    if red.f.det()?.is_zero() {
        return Err(Error::Hypothesis("the right factor is singular".into()));
    }
    let lhs = red.e.direct_sum(&Mat::identity(tag, p));
    let rhs = red.f.direct_sum(&Mat::identity(tag, m));
    let product = lhs.mul(&red.p0.assembled())?.mul(&rhs)?;
    if product != sys.assembled() {
        return Err(Error::Hypothesis(
            "the factors do not reproduce the system matrix".into(),
        ));
    }
    let (left, right) = is_irreducible(&red.p0)?;
    if !left.coprime {
        return Err(Error::Hypothesis(
            "the reduced pair (A, B) is not left coprime".into(),
        ));
    }
    if !right.coprime {
        return Err(Error::Hypothesis(
            "the reduced pair (A, C) is not right coprime".into(),
        ));
    }
    if schur_complement(sys)?.g != schur_complement(&red.p0)?.g {
        return Err(Error::Hypothesis(
            "the reduction changed the transfer matrix".into(),
        ));
    }
    Ok(())
}

/// One divisibility comparison per chain position, with witness quotients.
#[derive(Clone, Debug)]
pub struct DivisibilityItem {
    /// Whether every position divides as required.
    pub holds: bool,
    /// Position-by-position quotients; `None` where divisibility fails.
    pub quotients: Vec<Option<RingElem>>,
}

/// A single quotient comparison with its witness.
#[derive(Clone, Debug)]
pub struct QuotientItem {
    /// Whether the comparison holds.
    pub holds: bool,
    /// The witness quotient; `None` when the division is not exact.
    pub quotient: Option<RingElem>,
}

/// Structured account of how a reducible system deviates from the
/// canonical forms an irreducible realization would have.
///
/// Chains are stored with explicit orientations: `eps` ascends
/// (each entry divides the next) and `eps_tilde` is the ascending Smith
/// chain of the assembled system matrix, while `psi` and `psi_tilde`
/// descend (each entry is divided by the next), `psi` being padded with
/// units to length `n`.
#[derive(Clone, Debug)]
pub struct DiagnoseReport {
    /// State dimension.
    pub n: usize,
    /// Rank of the transfer matrix.
    pub r: usize,
    /// Number of non-unit Smith–McMillan denominators.
    pub g: usize,
    /// Smith–McMillan numerators of the transfer matrix, ascending.
    pub eps: Vec<RingElem>,
    /// Smith–McMillan denominators padded with units to length `n`,
    /// descending.
    pub psi: Vec<RingElem>,
    /// Invariant factors of the assembled system matrix, ascending.
    pub eps_tilde: Vec<RingElem>,
    /// Invariant factors of `A`, descending (largest first) to align with
    /// `psi`.
    pub psi_tilde: Vec<RingElem>,
    /// Each denominator divides the matching invariant factor of `A`.
    pub item_denominators: DivisibilityItem,
    /// The excess of `det A` over the product of the non-unit denominators
    /// is a non-unit.
    pub item_pole_excess: QuotientItem,
    /// Each numerator divides the matching trailing invariant factor of the
    /// system matrix.
    pub item_numerators: DivisibilityItem,
    /// The excess of the invariant factors of `P` over the numerators
    /// divides the excess of item two.
    pub item_zero_excess: QuotientItem,
    /// When the transfer matrix has full row and column rank, the two
    /// excesses agree; absent otherwise.
    pub item_full_rank: Option<QuotientItem>,
    /// When `(A, B)` is not left coprime and the transfer matrix has full
    /// row rank, the zero excess is a non-unit; absent otherwise.
    pub left_defect: Option<QuotientItem>,
    /// When `(A, C)` is not right coprime and the transfer matrix has full
    /// column rank, the zero excess is a non-unit; absent otherwise.
    pub right_defect: Option<QuotientItem>,
    /// Coprimeness report for `(A, B)`.
    pub left: CoprimeReport,
    /// Coprimeness report for `(A, C)`.
    pub right: CoprimeReport,
}

/// Product of a slice of ring elements, canonicalized.
fn product(tag: RingTag, items: &[RingElem]) -> RingElem {
    items
        .iter()
        .fold(RingElem::one(tag), |acc, x| acc.mul(x))
        .canonical()
}

/// Exact quotient as an option, for witness reporting.
fn try_quotient(num: &RingElem, den: &RingElem) -> Option<RingElem> {
    num.divide_exact(den).ok()
}

/// Measure how the canonical forms of a reducible system deviate from the
/// irreducible predictions.
///
/// Fails with [`Error::IrreducibleInput`] when both pairs are coprime,
/// since there is no deviation to measure.  Otherwise returns divisibility
/// comparisons between the Smith–McMillan chains of the transfer matrix and
/// the actual Smith chains of `A` and of the assembled system matrix,
/// together with the excess quotients that locate the lost divisors.
pub fn diagnose_reducible(sys: &SystemMatrix) -> Result<DiagnoseReport> {
    let (left, right) = is_irreducible(sys)?;
    if left.coprime && right.coprime {
        return Err(Error::IrreducibleInput);
    }
    let tag = sys.ring();
    let n = sys.n();
    let schur = schur_complement(sys)?;
    let sm = smith_mcmillan(&schur.g)?;
    let r = sm.rank;
    let g = sm.pole_count();

    let mut psi = sm.denominators.clone();
    psi.resize(n.max(r), RingElem::one(tag));
    let eps = sm.numerators.clone();

    let sa = smith(&sys.a)?;
    let psi_tilde: Vec<RingElem> = sa.inv_factors.iter().rev().cloned().collect();
    let sp = smith(&sys.assembled())?;
    if sp.rank != n + r {
        return Err(Error::Internal("rank of P must be n plus rank of G"));
    }
    let eps_tilde = sp.inv_factors.clone();

    let quotients: Vec<Option<RingElem>> = (0..n)
        .map(|i| try_quotient(&psi_tilde[i], &psi[i]))
        .collect();
    let item_denominators = DivisibilityItem {
        holds: quotients.iter().all(|q| q.is_some()),
        quotients,
    };

    let det_a_assoc = product(tag, &psi_tilde);
    let pole_part = product(tag, &psi[..g]);
    let q_psi = try_quotient(&det_a_assoc, &pole_part);
    let item_pole_excess = QuotientItem {
        holds: q_psi.as_ref().map_or(false, |q| !q.is_unit()),
        quotient: q_psi.clone(),
    };

    let quotients: Vec<Option<RingElem>> = (0..r)
        .map(|i| try_quotient(&eps_tilde[n + i], &eps[i]))
        .collect();
    let item_numerators = DivisibilityItem {
        holds: quotients.iter().all(|q| q.is_some()),
        quotients,
    };

    let q_eps = try_quotient(&product(tag, &eps_tilde), &product(tag, &eps));
    let zero_divides_pole = match (&q_eps, &q_psi) {
        (Some(qe), Some(qp)) => qe.divides(qp)?,
        _ => false,
    };
    let item_zero_excess = QuotientItem {
        holds: zero_divides_pole,
        quotient: q_eps.clone(),
    };

    let item_full_rank = if r == sys.p() && r == sys.m() {
        Some(QuotientItem {
            holds: q_eps == q_psi && q_eps.as_ref().map_or(false, |q| !q.is_unit()),
            quotient: q_eps.clone(),
        })
    } else {
        None
    };
    let left_defect = if !left.coprime && r == sys.p() {
        Some(QuotientItem {
            holds: q_eps.as_ref().map_or(false, |q| !q.is_unit()),
            quotient: q_eps.clone(),
        })
    } else {
        None
    };
    let right_defect = if !right.coprime && r == sys.m() {
        Some(QuotientItem {
            holds: q_eps.as_ref().map_or(false, |q| !q.is_unit()),
            quotient: q_eps.clone(),
        })
    } else {
        None
    };

    Ok(DiagnoseReport {
        n,
        r,
        g,
        eps,
        psi,
        eps_tilde,
        psi_tilde,
        item_denominators,
        item_pole_excess,
        item_numerators,
        item_zero_excess,
        item_full_rank,
        left_defect,
        right_defect,
        left,
        right,
    })
}

/// Partial multiplicities of the system matrix and of the transfer-matrix
/// numerators at a prime away from the surplus of `det A`.
///
/// Over a principal ideal domain, if the prime shares no factor with
/// `det A` divided by the product of the non-unit Smith–McMillan
/// denominators, the local structure of the system matrix at the prime
/// agrees with that of the numerator chain — whether or not the system is
/// irreducible.  Both multiplicity lists are computed and their equality is
/// asserted before they are returned.
pub fn local_zero_structure(
    sys: &SystemMatrix,
    prime: &RingElem,
) -> Result<(PartialMults, PartialMults)> {
    match sys.ring() {
        RingTag::Z | RingTag::Qz => {}
        RingTag::Rpr => return Err(Error::UnsupportedRing),
    }
    if prime.tag() != sys.ring() {
        return Err(Error::RingMismatch);
    }
    if prime.is_zero() || prime.is_unit() {
        return Err(Error::BadPrime);
    }
    let schur = schur_complement(sys)?;
    let sm = smith_mcmillan(&schur.g)?;
    let g = sm.pole_count();
    let det_a = sys.a.det()?.canonical();
    let pole_part = product(sys.ring(), &sm.denominators[..g]);
    let surplus = det_a
        .divide_exact(&pole_part)
        .map_err(|_| Error::Internal("pole denominators must divide det A"))?;
    if !prime.gcd(&surplus)?.is_unit() {
        return Err(Error::Hypothesis(format!(
            "the prime {prime} shares a factor with the surplus {surplus} of det A"
        )));
    }
    let sp = smith(&sys.assembled())?;
    let p_mults = partial_multiplicities(&sp.inv_factors, prime)?;
    let eps_mults = partial_multiplicities(&sm.numerators, prime)?;
    if p_mults != eps_mults {
        return Err(Error::Internal(
            "local structures disagree despite the coprimeness hypothesis",
        ));
    }
    Ok((p_mults, eps_mults))
}

/// An irreducible realization of minimal state dimension, together with the
/// data that certifies it.
#[derive(Clone, Debug)]
pub struct Realization {
    /// The realized system; its transfer matrix equals the input exactly.
    pub sys: SystemMatrix,
    /// Smith–McMillan decomposition the construction is read from.
    pub sm: SmDecomp,
    /// Left-coprimeness certificate for `(A, B)`.
    pub left: CoprimeReport,
    /// Right-coprimeness certificate for `(A, C)`.
    pub right: CoprimeReport,
}

/// Build a minimal irreducible realization of a transfer matrix from its
/// Smith–McMillan decomposition.
///
/// With `u G v = diag(eps_i / psi_i)` and `g` non-unit denominators, the
/// realization takes `A = diag(psi_1, ..., psi_g)`, `B` the first `g` rows
/// of `v^{-1}`, `C = -u^{-1}` applied to the embedded numerator block, and
/// `D` the image of the pole-free part.  The state dimension `g` meets the
/// lower bound every realization of the transfer matrix must satisfy, and
/// both coprimeness certificates are verified before returning.  A
/// ring-valued transfer matrix yields an empty `A` and `D` equal to the
/// input.
pub fn minimal_realization(g: &MatF) -> Result<Realization> {
    let tag = g.ring();
    let sm = smith_mcmillan(g)?;
    let (rank, poles) = (sm.rank, sm.pole_count());
    let (p, m) = (g.rows(), g.cols());
    let u_inv = sm.u.inverse_unimodular()?;
    let v_inv = sm.v.inverse_unimodular()?;

    let a = Mat::diag(tag, &sm.denominators[..poles], poles, poles)?;
    let b = v_inv.block(0, 0, poles, m)?;
    let embed = Mat::diag(tag, &sm.numerators[..poles], p, poles)?;
    let c = u_inv.mul(&embed)?.neg();
    let mut mid = Mat::zero(tag, p, m);
    for i in poles..rank {
        mid.set(i, i, sm.numerators[i].clone());
    }
    let d = u_inv.mul(&mid)?.mul(&v_inv)?;

    let sys = SystemMatrix::new(a, b, c, d)?;
    if schur_complement(&sys)?.g != *g {
        return Err(Error::Internal("realization transfer mismatch"));
    }
    let (left, right) = is_irreducible(&sys)?;
    if !left.coprime || !right.coprime {
        return Err(Error::Internal("realization must be irreducible"));
    }
    Ok(Realization {
        sys,
        sm,
        left,
        right,
    })
}

/// The least possible state dimension of any realization of a transfer
/// matrix: the number of non-unit Smith–McMillan denominators.
pub fn realization_dimension(g: &MatF) -> Result<usize> {
    Ok(smith_mcmillan(g)?.pole_count())
}
