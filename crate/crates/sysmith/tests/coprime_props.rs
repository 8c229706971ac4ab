//! Coprimeness certificates, unimodular completions, and the matrix
//! fraction facts that ride on them.

mod common;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use common::{irreducible_system, non_unit, rng, small_mat, unimodular, RINGS};
use sysmith::coprime::{completion_i0, coprime_check, fraction_coprime, Side};
use sysmith::smith::smith;
use sysmith::{MatR, RingElem, RingTag};

fn non_unit_factors(a: &MatR) -> Vec<RingElem> {
    smith(a)
        .expect("smith always succeeds")
        .inv_factors
        .into_iter()
        .filter(|f| !f.is_unit())
        .collect()
}

/// A random left-coprime pair with a nonsingular square first member.
fn left_coprime_pair(r: &mut ChaCha8Rng, tag: RingTag) -> (MatR, MatR) {
    let (_, real) = irreducible_system(r, tag);
    (real.sys.a().clone(), real.sys.b().clone())
}

/// A random right-coprime pair `(A, C)` with `A` nonsingular.
fn right_coprime_pair(r: &mut ChaCha8Rng, tag: RingTag) -> (MatR, MatR) {
    let (_, real) = irreducible_system(r, tag);
    (real.sys.a().clone(), real.sys.c().clone())
}

#[test]
fn coprime_pairs_carry_verifying_bezout_witnesses() {
    let mut r = rng(0x60u64);
    for tag in RINGS {
        for _ in 0..6 {
            let (a, b) = left_coprime_pair(&mut r, tag);
            let n = a.rows();
            let rep = coprime_check(&a, &b, Side::Left).unwrap();
            assert!(rep.coprime);
            let (x, y) = rep.witness.expect("coprime pairs get a witness");
            let combo = a.mul(&x).unwrap().add(&b.mul(&y).unwrap()).unwrap();
            assert_eq!(combo, MatR::identity(tag, n));

            let (a2, c2) = right_coprime_pair(&mut r, tag);
            let rep = coprime_check(&a2, &c2, Side::Right).unwrap();
            assert!(rep.coprime);
            let (x, y) = rep.witness.expect("coprime pairs get a witness");
            let combo = x.mul(&a2).unwrap().add(&y.mul(&c2).unwrap()).unwrap();
            assert_eq!(combo, MatR::identity(tag, a2.cols()));
        }
    }
}

#[test]
fn spoiled_pairs_return_a_dividing_certificate() {
    let mut r = rng(0x61u64);
    for tag in RINGS {
        for _ in 0..5 {
            let (a, c) = right_coprime_pair(&mut r, tag);
            let n = a.cols();
            let mut diag = vec![RingElem::one(tag); n];
            diag[r.gen_range(0..n)] = non_unit(&mut r, tag);
            let d0 = MatR::diag(tag, &diag, n, n).unwrap();
            let (ad, cd) = (a.mul(&d0).unwrap(), c.mul(&d0).unwrap());

            let rep = coprime_check(&ad, &cd, Side::Right).unwrap();
            assert!(!rep.coprime);
            let cert = rep.common_divisor.expect("non-coprime pairs get a divisor");
            assert!(!cert.d.det().unwrap().is_unit());
            assert_eq!(cert.cof1.mul(&cert.d).unwrap(), ad);
            assert_eq!(cert.cof2.mul(&cert.d).unwrap(), cd);
        }
    }
}

#[test]
fn stacking_too_few_rows_is_never_right_coprime() {
    let mut r = rng(0x62u64);
    for tag in RINGS {
        let g1 = small_mat(&mut r, tag, 1, 3);
        let g2 = small_mat(&mut r, tag, 1, 3);
        let rep = coprime_check(&g1, &g2, Side::Right).unwrap();
        assert!(!rep.coprime);
    }
}

#[test]
fn completions_reduce_the_pair_to_identity_and_zero() {
    let mut r = rng(0x63u64);
    for tag in RINGS {
        for _ in 0..5 {
            let (a, b) = left_coprime_pair(&mut r, tag);
            let (n, m) = (a.rows(), b.cols());
            let comp = completion_i0(&a, &b).unwrap();
            assert!(comp.u.is_unimodular().unwrap());
            let reduced = a.hstack(&b).unwrap().mul(&comp.u).unwrap();
            let expect = MatR::identity(tag, n)
                .hstack(&MatR::zero(tag, n, m))
                .unwrap();
            assert_eq!(reduced, expect);
            assert!(!comp.y22().det().unwrap().is_zero());
        }
    }
}

#[test]
fn completion_blocks_inherit_the_invariant_factors() {
    let mut r = rng(0x64u64);
    for tag in RINGS {
        for _ in 0..5 {
            let (a, b) = left_coprime_pair(&mut r, tag);
            let comp = completion_i0(&a, &b).unwrap();
            assert_eq!(non_unit_factors(&comp.y22()), non_unit_factors(&a));
            assert_eq!(smith(&comp.y12()).unwrap().s, smith(&b).unwrap().s);
        }
    }
}

#[test]
fn ring_valued_denominator_pullback() {
    // For a right-coprime pair (A, C) with R = C * A^-1: whenever R * Y is
    // ring-valued, so is A^-1 * Y.
    let mut r = rng(0x65u64);
    let mut hits = 0usize;
    for round in 0..30 {
        let tag = RINGS[round % 3];
        let (a, c) = right_coprime_pair(&mut r, tag);
        let n = a.rows();
        let a_inv = a.to_frac().inverse().unwrap();
        let rr = c.to_frac().mul(&a_inv).unwrap();

        // Constructed positive: Y = A * X clears both products.
        let x = small_mat(&mut r, tag, n, 2);
        let y = a.mul(&x).unwrap().to_frac();
        assert!(rr.mul(&y).unwrap().to_ring().is_ok());
        assert_eq!(a_inv.mul(&y).unwrap().to_ring().unwrap(), x);

        // Random probe: the implication must hold whenever the premise
        // happens to fire.
        let y = small_mat(&mut r, tag, n, 2).to_frac();
        if rr.mul(&y).unwrap().to_ring().is_ok() {
            hits += 1;
            assert!(a_inv.mul(&y).unwrap().to_ring().is_ok());
        }
    }
    assert!(hits > 0, "no random probe ever fired");
}

#[test]
fn coprime_factorizations_differ_by_a_unimodular_factor() {
    let mut r = rng(0x66u64);
    for tag in RINGS {
        for _ in 0..4 {
            let (a, c) = right_coprime_pair(&mut r, tag);
            let n = a.rows();
            let h0 = unimodular(&mut r, tag, n);
            let a2 = a.mul(&h0).unwrap();
            let c2 = c.mul(&h0).unwrap();
            // Same fraction R = C A^-1 = C2 A2^-1, both factorizations
            // coprime; the connecting factor must be ring-valued and
            // unimodular.
            let h = a
                .to_frac()
                .inverse()
                .unwrap()
                .mul(&a2.to_frac())
                .unwrap()
                .to_ring()
                .unwrap();
            assert!(h.is_unimodular().unwrap());
            assert_eq!(a.mul(&h).unwrap(), a2);
            assert_eq!(c.mul(&h).unwrap(), c2);
        }
    }
}

#[test]
fn fraction_coprimeness_degenerates_to_the_ring_test() {
    let mut r = rng(0x67u64);
    for tag in RINGS {
        let (a, b) = left_coprime_pair(&mut r, tag);
        let by_ring = coprime_check(&a, &b, Side::Left).unwrap();
        let by_frac = fraction_coprime(&a.to_frac(), &b.to_frac(), Side::Left).unwrap();
        assert_eq!(by_ring.coprime, by_frac.coprime);
        assert!(by_frac.coprime);
    }
}

#[test]
fn irreducibility_is_exactly_two_sided_coprimeness() {
    let mut r = rng(0x68u64);
    for tag in RINGS {
        let (_, real) = irreducible_system(&mut r, tag);
        let left = coprime_check(real.sys.a(), real.sys.b(), Side::Left).unwrap();
        let right = coprime_check(real.sys.a(), real.sys.c(), Side::Right).unwrap();
        assert!(left.coprime && right.coprime);
        let via_system = sysmith::system::is_irreducible(&real.sys).unwrap();
        assert_eq!(via_system.0.coprime, left.coprime);
        assert_eq!(via_system.1.coprime, right.coprime);
    }
}

#[test]
fn corruption_spoils_the_targeted_side() {
    // The untouched side may or may not survive — the injected prime can
    // interact with it — but the side carrying the new divisor always
    // fails.
    let mut r = rng(0x69u64);
    for tag in RINGS {
        let (_, real) = irreducible_system(&mut r, tag);
        let (bad, _) = common::corrupt(&mut r, &real.sys, common::Corruption::Left);
        let (left, _) = sysmith::system::is_irreducible(&bad).unwrap();
        assert!(!left.coprime);

        let (bad, _) = common::corrupt(&mut r, &real.sys, common::Corruption::Right);
        let (_, right) = sysmith::system::is_irreducible(&bad).unwrap();
        assert!(!right.coprime);

        let (bad, _) = common::corrupt(&mut r, &real.sys, common::Corruption::Both);
        let (left, right) = sysmith::system::is_irreducible(&bad).unwrap();
        assert!(!left.coprime && !right.coprime);
    }
}
