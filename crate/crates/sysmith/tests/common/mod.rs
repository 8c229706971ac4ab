//! Shared deterministic generators for the integration suites.
//!
//! Every generator draws from a caller-seeded ChaCha8 stream, so a failing
//! case reproduces from the seed alone.  Coefficients stay deliberately
//! small: all downstream checks are exact, and entry growth inside minor
//! expansions is exponential in the matrix size.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sysmith::fof::{fof_assemble, FofSystem};
use sysmith::system::{minimal_realization, Realization, SystemMatrix};
use sysmith::{Frac, Mat, MatF, MatR, Poly, ProperRat, RingElem, RingTag};

pub const RINGS: [RingTag; 3] = [RingTag::Z, RingTag::Qz, RingTag::Rpr];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// A random polynomial of the given degree with integer coefficients of
/// magnitude at most 4 and a nonzero leading coefficient (degree 0 may give
/// the zero polynomial).
fn poly_of_degree(rng: &mut ChaCha8Rng, deg: usize) -> Poly {
    let mut coeffs: Vec<BigRational> = (0..=deg).map(|_| rat(rng.gen_range(-4..=4))).collect();
    if deg > 0 && coeffs[deg] == rat(0) {
        coeffs[deg] = rat(*[-2, -1, 1, 2].choose(rng).unwrap());
    }
    Poly::new(coeffs)
}

/// A random element with magnitude, degree, or valuation denominator degree
/// at most 4; the zero element is included.
pub fn elem(rng: &mut ChaCha8Rng, tag: RingTag) -> RingElem {
    match tag {
        RingTag::Z => RingElem::from_i64(RingTag::Z, rng.gen_range(-4..=4)),
        RingTag::Qz => {
            let deg = *[0, 0, 0, 1, 1, 2, 2, 3, 4].choose(rng).unwrap();
            RingElem::Poly(poly_of_degree(rng, deg))
        }
        RingTag::Rpr => {
            let num_deg = rng.gen_range(0..=2usize);
            let num = poly_of_degree(rng, num_deg);
            if num.is_zero() {
                return RingElem::zero(RingTag::Rpr);
            }
            let den_deg = rng.gen_range(num.degree().unwrap()..=4);
            let den = Poly::monomial(rat(1), den_deg);
            RingElem::Proper(ProperRat::new(num, den).expect("proper by construction"))
        }
    }
}

/// A random element kept small enough for repeated products: magnitude at
/// most 3, degree at most 1, valuation at most 2.
pub fn small_elem(rng: &mut ChaCha8Rng, tag: RingTag) -> RingElem {
    match tag {
        RingTag::Z => RingElem::from_i64(RingTag::Z, rng.gen_range(-3..=3)),
        RingTag::Qz => {
            let deg = rng.gen_range(0..=1usize);
            RingElem::Poly(poly_of_degree(rng, deg))
        }
        RingTag::Rpr => {
            let num_deg = rng.gen_range(0..=1usize);
            let num = poly_of_degree(rng, num_deg);
            if num.is_zero() {
                return RingElem::zero(RingTag::Rpr);
            }
            let den_deg = rng.gen_range(num.degree().unwrap()..=2);
            let den = Poly::monomial(rat(1), den_deg);
            RingElem::Proper(ProperRat::new(num, den).expect("proper by construction"))
        }
    }
}

pub fn nonzero_elem(rng: &mut ChaCha8Rng, tag: RingTag) -> RingElem {
    loop {
        let e = elem(rng, tag);
        if !e.is_zero() {
            return e;
        }
    }
}

pub fn small_nonzero(rng: &mut ChaCha8Rng, tag: RingTag) -> RingElem {
    loop {
        let e = small_elem(rng, tag);
        if !e.is_zero() {
            return e;
        }
    }
}

/// A random unit of the ring.
pub fn unit(rng: &mut ChaCha8Rng, tag: RingTag) -> RingElem {
    match tag {
        RingTag::Z => RingElem::from_i64(RingTag::Z, *[-1, 1].choose(rng).unwrap()),
        RingTag::Qz => {
            let c = *[-3, -2, -1, 1, 2, 3].choose(rng).unwrap();
            RingElem::Poly(Poly::constant(rat(c)))
        }
        RingTag::Rpr => {
            // Biproper: constant, or a degree-one quotient with nonzero
            // leading coefficients.
            if rng.gen_bool(0.5) {
                let c = *[-2, -1, 1, 2].choose(rng).unwrap();
                RingElem::Proper(ProperRat::new(Poly::from_int(c), Poly::one()).unwrap())
            } else {
                let a = *[-2, -1, 1, 2].choose(rng).unwrap();
                let b = rng.gen_range(-2..=2);
                let d = rng.gen_range(-2..=2);
                let num = Poly::new(vec![rat(b), rat(a)]);
                let den = Poly::new(vec![rat(d), rat(1)]);
                RingElem::Proper(ProperRat::new(num, den).unwrap())
            }
        }
    }
}

/// A small nonzero non-unit, used to spoil coprimality on purpose.
pub fn non_unit(rng: &mut ChaCha8Rng, tag: RingTag) -> RingElem {
    match tag {
        RingTag::Z => RingElem::from_i64(RingTag::Z, *[2, 3, 4, 6].choose(rng).unwrap()),
        RingTag::Qz => {
            let c = rng.gen_range(-2..=2);
            RingElem::Poly(Poly::new(vec![rat(c), rat(1)]))
        }
        RingTag::Rpr => {
            RingElem::Proper(ProperRat::inv_z_pow(rng.gen_range(1..=2usize)))
        }
    }
}

/// The small primes used to assemble divisibility chains.
pub fn prime_pool(tag: RingTag) -> Vec<RingElem> {
    match tag {
        RingTag::Z => [2, 3, 5, 7]
            .iter()
            .map(|&p| RingElem::from_i64(RingTag::Z, p))
            .collect(),
        RingTag::Qz => [0, 1, -1, 2]
            .iter()
            .map(|&c| RingElem::Poly(Poly::new(vec![rat(-c), rat(1)])))
            .collect(),
        RingTag::Rpr => vec![RingElem::Proper(ProperRat::inv_z_pow(1))],
    }
}

pub fn mat(rng: &mut ChaCha8Rng, tag: RingTag, rows: usize, cols: usize) -> MatR {
    Mat::from_fn(tag, rows, cols, |_, _| elem(rng, tag))
}

pub fn small_mat(rng: &mut ChaCha8Rng, tag: RingTag, rows: usize, cols: usize) -> MatR {
    Mat::from_fn(tag, rows, cols, |_, _| small_elem(rng, tag))
}

/// A random fraction-valued matrix with small numerators and denominators.
pub fn frac_mat(rng: &mut ChaCha8Rng, tag: RingTag, rows: usize, cols: usize) -> MatF {
    Mat::from_fn(tag, rows, cols, |_, _| {
        let num = small_elem(rng, tag);
        let den = small_nonzero(rng, tag);
        Frac::new(num, den).expect("nonzero denominator")
    })
}

/// A tiny element used as an elementary-operation multiplier: keeps entry
/// growth under control when many operations compound.
fn tiny_elem(rng: &mut ChaCha8Rng, tag: RingTag) -> RingElem {
    match tag {
        RingTag::Z => RingElem::from_i64(RingTag::Z, rng.gen_range(-2..=2)),
        RingTag::Qz => {
            let c0 = rat(rng.gen_range(-1..=1));
            let c1 = rat(rng.gen_range(-1..=1));
            RingElem::Poly(Poly::new(vec![c0, c1]))
        }
        RingTag::Rpr => {
            let num = Poly::new(vec![rat(rng.gen_range(-1..=1)), rat(rng.gen_range(-1..=1))]);
            if num.is_zero() {
                return RingElem::zero(RingTag::Rpr);
            }
            let den = Poly::monomial(rat(1), rng.gen_range(num.degree().unwrap()..=1));
            RingElem::Proper(ProperRat::new(num, den).expect("proper by construction"))
        }
    }
}

fn stirred_identity(rng: &mut ChaCha8Rng, tag: RingTag, n: usize, ops: usize) -> MatR {
    let mut u = MatR::identity(tag, n);
    if n == 0 {
        return u;
    }
    for _ in 0..ops {
        match rng.gen_range(0..4u8) {
            0 => {
                let i = rng.gen_range(0..n);
                let j = rng.gen_range(0..n);
                u.swap_rows(i, j);
            }
            1 => {
                let i = rng.gen_range(0..n);
                let c = unit(rng, tag);
                u.row_scale(i, &c);
            }
            _ => {
                let t = rng.gen_range(0..n);
                let mut s = rng.gen_range(0..n);
                if n > 1 {
                    while s == t {
                        s = rng.gen_range(0..n);
                    }
                    let c = tiny_elem(rng, tag);
                    u.row_axpy(t, s, &c);
                }
            }
        }
    }
    debug_assert!(u.is_unimodular().unwrap());
    u
}

/// A random unimodular matrix: the identity stirred by elementary row
/// operations with small multipliers.
pub fn unimodular(rng: &mut ChaCha8Rng, tag: RingTag, n: usize) -> MatR {
    stirred_identity(rng, tag, n, 2 * n + 2)
}

/// A mildly stirred unimodular matrix, for places where two of them
/// sandwich a third factor and growth compounds.
pub fn gentle_unimodular(rng: &mut ChaCha8Rng, tag: RingTag, n: usize) -> MatR {
    stirred_identity(rng, tag, n, n + 1)
}

/// A pair of nonzero elements with unit gcd.
pub fn coprime_pair(rng: &mut ChaCha8Rng, tag: RingTag) -> (RingElem, RingElem) {
    for _ in 0..200 {
        let a = nonzero_elem(rng, tag);
        let b = nonzero_elem(rng, tag);
        if a.gcd(&b).expect("same ring").is_unit() {
            return (a, b);
        }
    }
    (RingElem::one(tag), RingElem::one(tag))
}

/// Random Smith–McMillan data: `r` coprime invariant fractions with the
/// numerators ascending and the denominators descending under divisibility.
///
/// Each prime of the pool is assigned to the numerator side, the denominator
/// side, or left out, so every `eps_i`/`psi_i` pair is coprime by
/// construction.  With `force_pole` the first denominator is a non-unit.
pub fn sm_chain(
    rng: &mut ChaCha8Rng,
    tag: RingTag,
    r: usize,
    force_pole: bool,
) -> (Vec<RingElem>, Vec<RingElem>) {
    assert!(r > 0, "a chain needs at least one fraction");
    let pool = prime_pool(tag);
    for _ in 0..100 {
        let mut eps = vec![RingElem::one(tag); r];
        let mut psi = vec![RingElem::one(tag); r];
        for prime in &pool {
            let mut exps: Vec<u32> = (0..r).map(|_| rng.gen_range(0..=2)).collect();
            exps.sort_unstable();
            match rng.gen_range(0..3u8) {
                0 => {
                    for i in 0..r {
                        eps[i] = eps[i].mul(&prime.pow(exps[i]));
                    }
                }
                1 => {
                    exps.reverse();
                    for i in 0..r {
                        psi[i] = psi[i].mul(&prime.pow(exps[i]));
                    }
                }
                _ => {}
            }
        }
        if force_pole && psi[0].is_unit() {
            continue;
        }
        return (eps, psi);
    }
    // Deterministic fallback: a single pole, everything else trivial.
    let mut eps = vec![RingElem::one(tag); r];
    let mut psi = vec![RingElem::one(tag); r];
    psi[0] = pool[0].clone();
    if r > 1 {
        eps[r - 1] = pool[pool.len() - 1].clone();
    }
    (eps, psi)
}

/// A fraction-valued matrix whose Smith–McMillan data equals the given
/// chain: the diagonal form stirred by unimodular ring matrices.
pub fn frac_from_chain(
    rng: &mut ChaCha8Rng,
    tag: RingTag,
    eps: &[RingElem],
    psi: &[RingElem],
    rows: usize,
    cols: usize,
) -> MatF {
    let fracs: Vec<Frac> = eps
        .iter()
        .zip(psi)
        .map(|(e, p)| Frac::new(e.clone(), p.clone()).expect("nonzero denominator"))
        .collect();
    let g0 = MatF::diag(tag, &fracs, rows, cols).expect("rank bounded by shape");
    let wl = gentle_unimodular(rng, tag, rows).to_frac();
    let wr = gentle_unimodular(rng, tag, cols).to_frac();
    wl.mul(&g0).expect("shape").mul(&wr).expect("shape")
}

/// A random transfer matrix together with its generating chain.
pub struct ChainInstance {
    pub eps: Vec<RingElem>,
    pub psi: Vec<RingElem>,
    pub g: MatF,
    pub rows: usize,
    pub cols: usize,
}

pub fn chain_instance(rng: &mut ChaCha8Rng, tag: RingTag, force_pole: bool) -> ChainInstance {
    let r = rng.gen_range(1..=3usize);
    let (eps, psi) = sm_chain(rng, tag, r, force_pole);
    let rows = r + rng.gen_range(0..=1usize);
    let cols = r + rng.gen_range(0..=1usize);
    let g = frac_from_chain(rng, tag, &eps, &psi, rows, cols);
    ChainInstance {
        eps,
        psi,
        g,
        rows,
        cols,
    }
}

/// A minimal (hence irreducible) realization of a random transfer matrix
/// with at least one pole.
pub fn irreducible_system(rng: &mut ChaCha8Rng, tag: RingTag) -> (ChainInstance, Realization) {
    let inst = chain_instance(rng, tag, true);
    let real = minimal_realization(&inst.g).expect("realization of a random chain");
    (inst, real)
}

/// How a system matrix gets corrupted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Corruption {
    Left,
    Right,
    Both,
}

/// Destroys coprimality by multiplying `[A B]` on the left and/or `[A; C]`
/// on the right by a non-unimodular diagonal factor.  Returns the corrupted
/// system and the product of the determinants of the injected factors.
pub fn corrupt(
    rng: &mut ChaCha8Rng,
    sys: &SystemMatrix,
    mode: Corruption,
) -> (SystemMatrix, RingElem) {
    let tag = sys.ring();
    let n = sys.n();
    assert!(n > 0, "corruption needs a nonempty state");
    let mut growth = RingElem::one(tag);
    let (mut a, mut b, mut c) = (sys.a().clone(), sys.b().clone(), sys.c().clone());
    if mode != Corruption::Right {
        let d = non_unit(rng, tag);
        let mut diag = vec![RingElem::one(tag); n];
        diag[rng.gen_range(0..n)] = d.clone();
        let e = MatR::diag(tag, &diag, n, n).expect("square diagonal");
        a = e.mul(&a).expect("shape");
        b = e.mul(&b).expect("shape");
        growth = growth.mul(&d);
    }
    if mode != Corruption::Left {
        let d = non_unit(rng, tag);
        let mut diag = vec![RingElem::one(tag); n];
        diag[rng.gen_range(0..n)] = d.clone();
        let f = MatR::diag(tag, &diag, n, n).expect("square diagonal");
        a = a.mul(&f).expect("shape");
        c = c.mul(&f).expect("shape");
        growth = growth.mul(&d);
    }
    let corrupted =
        SystemMatrix::new(a, b, c, sys.d().clone()).expect("corruption keeps A nonsingular");
    (corrupted, growth)
}

/// A nonzero polynomial matrix over `Q[z]` with entry degrees at most
/// `max_deg`.
pub fn poly_mat(rng: &mut ChaCha8Rng, rows: usize, cols: usize, max_deg: usize) -> MatR {
    loop {
        let m = Mat::from_fn(RingTag::Qz, rows, cols, |_, _| {
            let deg = rng.gen_range(0..=max_deg);
            RingElem::Poly(poly_of_degree(rng, deg))
        });
        if !m.is_zero() {
            return m;
        }
    }
}

/// The prime of the proper rationals, `1/z`.
pub fn rpr_prime() -> RingElem {
    RingElem::Proper(ProperRat::inv_z_pow(1))
}

/// Divide every entry of a ring matrix by `(1/z)^k`.
pub fn shrink(m: &MatR, k: u32) -> MatF {
    let f = Frac::new(RingElem::one(m.ring()), rpr_prime().pow(k)).unwrap();
    m.to_frac().scale(&f).unwrap()
}

/// A fraction-valued system over the proper rationals whose cleared pairs
/// are coprime on both sides: an irreducible ring-valued realization with
/// the `A`, `B`, `C` blocks divided by small powers of the prime.  The `D`
/// gate and the coprimality of the cleared pairs are re-checked after
/// scaling, so incompatible draws are rejected.
pub fn scaled_system(r: &mut ChaCha8Rng) -> FofSystem {
    for _ in 0..100 {
        let (_, real) = irreducible_system(r, RingTag::Rpr);
        let a_val = r.gen_range(0..=1);
        let b_val = r.gen_range(0..=2);
        let c_val = r.gen_range(0..=2);
        let a = shrink(real.sys.a(), a_val);
        let b = shrink(real.sys.b(), b_val);
        let c = shrink(real.sys.c(), c_val);
        let d = real.sys.d().to_frac();
        match fof_assemble(a, b, c, d) {
            Ok(sys) if sys.left().coprime && sys.right().coprime => return sys,
            _ => continue,
        }
    }
    panic!("no scaled system found in 100 draws");
}

/// The divisibility lemmas of the scalar layer, written as predicates so
/// that the property suites and the acceptance run share one source of
/// truth.
///
/// Conditional lemmas return `None` when their hypotheses are not met, so
/// callers can count how often a sample actually exercised the claim.
pub mod lemmas {
    use sysmith::RingElem;

    /// `gcd(ac, bc)` is an associate of `c * gcd(a, b)`.
    pub fn gcd_scales(a: &RingElem, b: &RingElem, c: &RingElem) -> bool {
        let lhs = a.mul(c).gcd(&b.mul(c)).expect("same ring");
        let rhs = c.mul(&a.gcd(b).expect("same ring"));
        lhs.associates(&rhs).expect("same ring")
    }

    /// `lcm(ac, bc)` is an associate of `c * lcm(a, b)`.
    pub fn lcm_scales(a: &RingElem, b: &RingElem, c: &RingElem) -> bool {
        let lhs = a.mul(c).lcm(&b.mul(c)).expect("same ring");
        let rhs = c.mul(&a.lcm(b).expect("same ring"));
        lhs.associates(&rhs).expect("same ring")
    }

    /// `a * b` is an associate of `gcd(a, b) * lcm(a, b)`.
    pub fn product_splits(a: &RingElem, b: &RingElem) -> bool {
        let lhs = a.mul(b);
        let rhs = a.gcd(b).expect("same ring").mul(&a.lcm(b).expect("same ring"));
        lhs.associates(&rhs).expect("same ring")
    }

    /// Euclid: if `gcd(a, b)` is a unit and `a | bc` then `a | c`.
    pub fn euclid(a: &RingElem, b: &RingElem, c: &RingElem) -> Option<bool> {
        if a.is_zero() || !a.gcd(b).expect("same ring").is_unit() {
            return None;
        }
        if !a.divides(&b.mul(c)).expect("same ring") {
            return None;
        }
        Some(a.divides(c).expect("same ring"))
    }

    /// If `a1 | a2` and `b2 | b1` then the reduced parts divide:
    /// `a1/gcd(a1,b1) | a2/gcd(a2,b2)` and `b2/gcd(a2,b2) | b1/gcd(a1,b1)`.
    pub fn reduced_parts_divide(
        a1: &RingElem,
        b1: &RingElem,
        a2: &RingElem,
        b2: &RingElem,
    ) -> Option<bool> {
        if a1.is_zero() || b2.is_zero() {
            return None;
        }
        if !a1.divides(a2).expect("same ring") || !b2.divides(b1).expect("same ring") {
            return None;
        }
        let g1 = a1.gcd(b1).expect("same ring");
        let g2 = a2.gcd(b2).expect("same ring");
        let a1r = a1.divide_exact(&g1).expect("gcd divides");
        let b1r = b1.divide_exact(&g1).expect("gcd divides");
        let a2r = a2.divide_exact(&g2).expect("gcd divides");
        let b2r = b2.divide_exact(&g2).expect("gcd divides");
        Some(a1r.divides(&a2r).expect("same ring") && b2r.divides(&b1r).expect("same ring"))
    }

    /// If `gcd(a,b)` and `gcd(c,d)` are units then `gcd(ac, bd)` is an
    /// associate of `gcd(a, d) * gcd(b, c)`.
    pub fn gcd_of_products(
        a: &RingElem,
        b: &RingElem,
        c: &RingElem,
        d: &RingElem,
    ) -> Option<bool> {
        if !a.gcd(b).expect("same ring").is_unit() || !c.gcd(d).expect("same ring").is_unit() {
            return None;
        }
        let lhs = a.mul(c).gcd(&b.mul(d)).expect("same ring");
        let rhs = a.gcd(d).expect("same ring").mul(&b.gcd(c).expect("same ring"));
        Some(lhs.associates(&rhs).expect("same ring"))
    }

    /// If `gcd(a, b)` is a unit then `gcd(a, bc)` is an associate of
    /// `gcd(a, c)`.
    pub fn gcd_absorbs_coprime(a: &RingElem, b: &RingElem, c: &RingElem) -> Option<bool> {
        if !a.gcd(b).expect("same ring").is_unit() {
            return None;
        }
        let lhs = a.gcd(&b.mul(c)).expect("same ring");
        let rhs = a.gcd(c).expect("same ring");
        Some(lhs.associates(&rhs).expect("same ring"))
    }

    /// `gcd(a, b)` and `gcd(a, c)` are units if and only if `gcd(a, bc)`
    /// is.
    pub fn coprime_to_product(a: &RingElem, b: &RingElem, c: &RingElem) -> bool {
        let both = a.gcd(b).expect("same ring").is_unit() && a.gcd(c).expect("same ring").is_unit();
        let joint = a.gcd(&b.mul(c)).expect("same ring").is_unit();
        both == joint
    }
}
