//! Release gate: every published claim of the library exercised end to end,
//! one printed line per criterion.
//!
//! The target runs without the libtest harness so that the pass/fail lines
//! always reach stdout in order, each with its wall-clock cost against the
//! budget the criterion has to meet.  A criterion fails by returning an
//! error, by panicking, or by exceeding its budget; any failure makes the
//! whole run exit nonzero.

#[path = "../../sysmith/tests/common/mod.rs"]
mod common;

use std::panic;
use std::process::Command;
use std::time::Instant;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use common::{lemmas, Corruption, RINGS};
use sysmith::fof::{fof_converse, fof_forward, infinity_structure};
use sysmith::mcmillan::{smith_mcmillan, SmDecomp};
use sysmith::smith::{smith, smith_oracle};
use sysmith::system::{
    check_reduction, diagnose_reducible, is_irreducible, local_zero_structure,
    minimal_realization, reduce_system, verify_rosenbrock, ReductionOrder, ReductionResult,
    SystemMatrix,
};
use sysmith::{Mat, MatR, RingElem, RingTag};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(format!($($arg)*));
        }
    };
}

/// Lift a library result into the criterion error channel.
fn lib<T>(r: Result<T, sysmith::Error>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn int(n: i64) -> RingElem {
    RingElem::from_i64(RingTag::Z, n)
}

fn int_mat(rows: &[&[i64]]) -> MatR {
    let data = rows
        .iter()
        .map(|r| r.iter().map(|&v| int(v)).collect())
        .collect();
    Mat::from_rows(RingTag::Z, data).expect("rectangular literal")
}

/// Non-unit Smith-McMillan denominators, canonical.
fn pole_chain(sm: &SmDecomp) -> Vec<RingElem> {
    sm.denominators
        .iter()
        .filter(|d| !d.is_unit())
        .map(|d| d.canonical())
        .collect()
}

/// Criterion 1: the elimination Smith form against the exhaustive minor
/// oracle, with exact transformation bookkeeping.
fn smith_against_oracle() -> Outcome {
    let mut total = 0usize;
    for (k, &tag) in RINGS.iter().enumerate() {
        let mut r = common::rng(0x201 + k as u64);
        for _ in 0..200 {
            let rows = r.gen_range(1..=5);
            let cols = r.gen_range(1..=5);
            let a = common::mat(&mut r, tag, rows, cols);
            let d = lib(smith(&a), "smith")?;
            let uav = lib(
                lib(d.u.mul(&a), "U*A")?.mul(&d.v),
                "U*A*V",
            )?;
            ensure!(uav == d.s, "U*A*V differs from S over {tag:?}");
            ensure!(
                lib(d.u.det(), "det U")?.is_unit() && lib(d.v.det(), "det V")?.is_unit(),
                "a transformation is not unimodular over {tag:?}"
            );
            let oracle = lib(smith_oracle(&a), "minor oracle")?;
            ensure!(
                d.inv_factors == oracle,
                "invariant factors disagree with the minor oracle over {tag:?}"
            );
            total += 1;
        }
    }
    Ok(format!("{total} matrices up to 5x5 across 3 rings"))
}

/// Criterion 2: realize a random Smith-McMillan chain minimally, then read
/// the chain back from the system matrix.
fn realization_round_trip() -> Outcome {
    let mut total = 0usize;
    for (k, &tag) in RINGS.iter().enumerate() {
        let mut r = common::rng(0x210 + k as u64);
        for _ in 0..100 {
            let inst = common::chain_instance(&mut r, tag, true);
            let real = lib(minimal_realization(&inst.g), "realization")?;
            let report = lib(verify_rosenbrock(&real.sys), "verification")?;
            ensure!(
                report.matched && report.irreducible,
                "a minimal realization failed its own predictions over {tag:?}"
            );
            let n = real.sys.n();
            let poles: Vec<RingElem> = inst
                .psi
                .iter()
                .filter(|p| !p.is_unit())
                .map(|p| p.canonical())
                .collect();
            ensure!(
                n == poles.len(),
                "dimension {n} differs from the pole count {} over {tag:?}",
                poles.len()
            );
            let mut expected = vec![RingElem::one(tag); n - poles.len()];
            expected.extend(poles.into_iter().rev());
            let got: Vec<RingElem> = report.computed_sa.iter().map(|x| x.canonical()).collect();
            ensure!(
                got == expected,
                "Smith of A is not the reversed denominator chain over {tag:?}"
            );
            total += 1;
        }
    }
    Ok(format!("{total} chains realized and verified across 3 rings"))
}

/// The shared corrupted batch for criteria 3 and 4: original and broken
/// system side by side, rings and corruption modes cycling.
fn corrupted_batch() -> Vec<(SystemMatrix, SystemMatrix)> {
    let mut r = common::rng(0x230);
    let modes = [Corruption::Left, Corruption::Right, Corruption::Both];
    (0..50)
        .map(|i| {
            let tag = RINGS[i % 3];
            let (_, real) = common::irreducible_system(&mut r, tag);
            let (bad, _) = common::corrupt(&mut r, &real.sys, modes[(i / 3) % 3]);
            (real.sys, bad)
        })
        .collect()
}

/// Criterion 3: the match verdict and the coprimality test agree on fifty
/// irreducible and fifty corrupted systems.
fn strong_biconditional() -> Outcome {
    for (good, bad) in corrupted_batch() {
        for (sys, expect_irreducible) in [(&good, true), (&bad, false)] {
            let report = lib(verify_rosenbrock(sys), "verification")?;
            let (left, right) = lib(is_irreducible(sys), "coprimality")?;
            let irreducible = left.coprime && right.coprime;
            ensure!(
                report.matched == irreducible,
                "match verdict and coprimality disagree over {:?}",
                sys.ring()
            );
            ensure!(
                irreducible == expect_irreducible,
                "a generated system has the wrong reducibility over {:?}",
                sys.ring()
            );
        }
    }
    Ok("50 irreducible + 50 corrupted, verdicts agree in all 100".into())
}

/// Criterion 4: reduce every corrupted system, check the factorization,
/// the determinant bookkeeping, and the reducibility diagnosis.
fn reduction_theorem() -> Outcome {
    for (i, (_, bad)) in corrupted_batch().into_iter().enumerate() {
        let order = if i % 2 == 0 {
            ReductionOrder::EFirst
        } else {
            ReductionOrder::FFirst
        };
        let red = lib(reduce_system(&bad, order), "reduction")?;
        lib(check_reduction(&bad, &red), "reduction check")?;
        let det_a = lib(bad.a().det(), "det A")?;
        let det_a0 = lib(red.p0.a().det(), "det A0")?;
        let ratio = lib(det_a.divide_exact(&det_a0), "det A / det A0")?;
        let extracted = lib(red.e.det(), "det E")?.mul(&lib(red.f.det(), "det F")?);
        ensure!(
            lib(extracted.associates(&ratio), "associate test")?,
            "det E * det F is not det A / det A0 over {:?}",
            bad.ring()
        );
        let diag = lib(diagnose_reducible(&bad), "diagnosis")?;
        ensure!(diag.item_denominators.holds, "denominator divisibility fails");
        ensure!(diag.item_pole_excess.holds, "pole excess is a unit");
        ensure!(diag.item_numerators.holds, "numerator divisibility fails");
        ensure!(diag.item_zero_excess.holds, "zero excess does not divide");
        if let Some(full) = &diag.item_full_rank {
            ensure!(full.holds, "full-rank excess comparison fails");
        }
    }
    Ok("50 reductions checked with determinant bookkeeping and diagnosis".into())
}

/// Criterion 5: the worked 6x6 example and the p = 2 / p = 6 reductions,
/// with the documented composite split checked verbatim.
fn worked_examples() -> Outcome {
    // diag(-psi1, alpha2, alpha3) bordered so that the transfer matrix is
    // already the Smith-McMillan form diag(eps1/psi1, 0, 0).
    let p6 = int_mat(&[
        &[-2, 0, 0, 1, 0, 0],
        &[0, 2, 0, 0, 1, 0],
        &[0, 0, 5, 0, 0, 0],
        &[3, 0, 0, 0, 0, 0],
        &[0, 0, 0, 0, 0, 0],
        &[0, 0, 1, 0, 0, 0],
    ]);
    let d = lib(smith(&p6), "smith of the 6x6 example")?;
    let expected: Vec<RingElem> = [1, 1, 1, 3].iter().map(|&v| int(v)).collect();
    ensure!(
        d.rank == 4 && d.inv_factors == expected,
        "the 6x6 example does not have invariant factors 1,1,1,3"
    );
    let sys6 = lib(SystemMatrix::from_stacked(&p6, 3), "6x6 as a system")?;
    let (left, right) = lib(is_irreducible(&sys6), "6x6 coprimality")?;
    ensure!(
        !left.coprime && !right.coprime,
        "the 6x6 example should be reducible on both sides"
    );

    // The prime-determinant system: at most one side can absorb a factor.
    let stacked = |p: i64| {
        int_mat(&[&[p, 0, p, 0], &[0, 1, 0, 1], &[p, 1, 0, 0]])
    };
    let sys2 = lib(SystemMatrix::from_stacked(&stacked(2), 2), "p = 2 system")?;
    for order in [ReductionOrder::EFirst, ReductionOrder::FFirst] {
        let red = lib(reduce_system(&sys2, order), "p = 2 reduction")?;
        lib(check_reduction(&sys2, &red), "p = 2 reduction check")?;
        let non_units = [&red.e, &red.f]
            .iter()
            .filter(|m| !m.det().expect("square").is_unit())
            .count();
        ensure!(
            non_units == 1,
            "the prime case must put the whole factor on one side, got {non_units}"
        );
    }

    // The composite determinant splits across both sides.
    let sys6x = lib(SystemMatrix::from_stacked(&stacked(6), 2), "p = 6 system")?;
    let split = ReductionResult {
        e: lib(Mat::diag(RingTag::Z, &[int(2), int(1)], 2, 2), "E")?,
        f: lib(Mat::diag(RingTag::Z, &[int(3), int(1)], 2, 2), "F")?,
        p0: lib(
            SystemMatrix::from_stacked(
                &int_mat(&[&[1, 0, 3, 0], &[0, 1, 0, 1], &[2, 1, 0, 0]]),
                2,
            ),
            "reduced p = 6 system",
        )?,
        order: ReductionOrder::EFirst,
    };
    lib(check_reduction(&sys6x, &split), "the documented composite split")?;
    let non_units = [&split.e, &split.f]
        .iter()
        .filter(|m| !m.det().expect("square").is_unit())
        .count();
    ensure!(non_units == 2, "the composite split must use both sides");
    Ok("6x6 invariant factors 1,1,1,3; prime and composite splits behave".into())
}

/// Criterion 6: partial multiplicities of the system matrix at a prime
/// that avoids det A agree with those of the numerator chain.
fn local_structure() -> Outcome {
    let cases = [
        (RingTag::Z, 2usize),  // pi = 5
        (RingTag::Qz, 1usize), // pi = z - 1
    ];
    let modes = [Corruption::Left, Corruption::Right, Corruption::Both];
    let mut total = 0usize;
    for (k, (tag, prime_index)) in cases.into_iter().enumerate() {
        let prime = common::prime_pool(tag)[prime_index].clone();
        let mut r = common::rng(0x260 + k as u64);
        let mut done = 0usize;
        let mut attempts = 0usize;
        while done < 25 {
            attempts += 1;
            ensure!(attempts <= 5000, "the generator starved over {tag:?}");
            let (_, real) = common::irreducible_system(&mut r, tag);
            let sys = if done % 2 == 0 {
                real.sys
            } else {
                common::corrupt(&mut r, &real.sys, modes[done % 3]).0
            };
            let det = lib(sys.a().det(), "det A")?;
            if !lib(det.gcd(&prime), "gcd with the prime")?.is_unit() {
                continue;
            }
            let (p_mults, e_mults) = lib(local_zero_structure(&sys, &prime), "local structure")?;
            ensure!(
                p_mults.mults == e_mults.mults,
                "multiplicity sequences differ at {prime} over {tag:?}"
            );
            done += 1;
            total += 1;
        }
    }
    Ok(format!("{total} instances at fixed primes over Z and Q[z]"))
}

/// Criterion 7: the scalar divisibility lemmas on fresh random samples,
/// with hit counting so no conditional lemma passes vacuously.
fn scalar_lemmas() -> Outcome {
    let mut checked = 0usize;
    for (k, &tag) in RINGS.iter().enumerate() {
        let mut r = common::rng(0x270 + k as u64);
        let draw = |r: &mut ChaCha8Rng| common::elem(r, tag);
        let mut hits = [0usize; 4];
        for _ in 0..500 {
            let (a, b, c, d) = (draw(&mut r), draw(&mut r), draw(&mut r), draw(&mut r));
            ensure!(lemmas::gcd_scales(&a, &b, &c), "gcd scaling fails over {tag:?}");
            ensure!(lemmas::lcm_scales(&a, &b, &c), "lcm scaling fails over {tag:?}");
            ensure!(lemmas::product_splits(&a, &b), "gcd*lcm splitting fails over {tag:?}");
            ensure!(
                lemmas::coprime_to_product(&a, &b, &c),
                "coprime-to-product fails over {tag:?}"
            );
            match lemmas::euclid(&a, &b, &c) {
                Some(false) => return Err(format!("Euclid's lemma fails over {tag:?}")),
                Some(true) => hits[0] += 1,
                None => {}
            }
            match lemmas::gcd_of_products(&a, &b, &c, &d) {
                Some(false) => return Err(format!("gcd of products fails over {tag:?}")),
                Some(true) => hits[1] += 1,
                None => {}
            }
            match lemmas::gcd_absorbs_coprime(&a, &b, &c) {
                Some(false) => return Err(format!("gcd absorption fails over {tag:?}")),
                Some(true) => hits[2] += 1,
                None => {}
            }
            // Constructive inputs for the reduced-part lemma: a1 | a2 and
            // b2 | b1 by construction, so only zero draws miss.
            let (a1, s, b2, t) = (draw(&mut r), draw(&mut r), draw(&mut r), draw(&mut r));
            let a2 = a1.mul(&s);
            let b1 = b2.mul(&t);
            match lemmas::reduced_parts_divide(&a1, &b1, &a2, &b2) {
                Some(false) => return Err(format!("reduced parts fail over {tag:?}")),
                Some(true) => hits[3] += 1,
                None => {}
            }
            checked += 1;
        }
        ensure!(
            hits.iter().all(|&h| h > 0),
            "a conditional lemma was never exercised over {tag:?}: {hits:?}"
        );
    }
    Ok(format!("{checked} samples x 8 lemmas across 3 rings, none vacuous"))
}

/// Criterion 8: forward predictions on scaled proper-rational systems with
/// the converse reconstruction, and the two routes to the structure at
/// infinity on polynomial matrices.
fn fraction_field_suite() -> Outcome {
    let mut r = common::rng(0x280);
    for _ in 0..50 {
        let sys = common::scaled_system(&mut r);
        let report = lib(fof_forward(&sys), "forward prediction")?;
        ensure!(report.matched_a, "the prediction for A missed");
        ensure!(report.matched_p, "the prediction for P missed");
        ensure!(report.chains_ok, "a predicted chain is out of order");
        ensure!(report.leading_block_ok, "the leading block is not (1/bg) I");
        let n = sys.n();
        let rank = report.sm_g.rank;
        let nonzero = &report.computed_sm_p[..n + rank];
        let back = lib(
            fof_converse(&report.computed_sm_a, nonzero, n, rank),
            "converse reconstruction",
        )?;
        ensure!(
            back.predicted_sm_g == report.sm_g.fractions(),
            "the converse does not recover the transfer form"
        );
    }
    let mut r = common::rng(0x281);
    for _ in 0..50 {
        let rows = r.gen_range(1..=4);
        let cols = r.gen_range(1..=4);
        let m = common::poly_mat(&mut r, rows, cols, 3);
        // The report cross-checks the reversal route against the proper
        // rational Smith-McMillan route before returning.
        let report = lib(infinity_structure(&m), "structure at infinity")?;
        ensure!(
            report.orders.windows(2).all(|w| w[0] <= w[1]),
            "invariant orders at infinity are not nondecreasing"
        );
        ensure!(
            report.orders.first() == Some(&-(report.degree as i64)),
            "the first order at infinity is not minus the degree"
        );
    }
    Ok("50 scaled systems round-tripped; 50 polynomial matrices at infinity".into())
}

/// Criterion 9: pole chains survive the addition of a ring matrix and
/// bordering by ring blocks.
fn pole_chain_corollaries() -> Outcome {
    let mut r = common::rng(0x290);
    for round in 0..100 {
        let tag = RINGS[round % 3];
        let rows = r.gen_range(1..=3);
        let cols = r.gen_range(1..=3);
        let g1 = common::frac_mat(&mut r, tag, rows, cols);
        let p2 = common::mat(&mut r, tag, rows, cols);
        let sum = lib(g1.add(&p2.to_frac()), "sum")?;
        let before = pole_chain(&lib(smith_mcmillan(&g1), "SM of G1")?);
        let after = pole_chain(&lib(smith_mcmillan(&sum), "SM of G1 + P2")?);
        ensure!(
            before == after,
            "adding a ring matrix changed the pole chain over {tag:?}"
        );
    }
    let mut r = common::rng(0x291);
    for round in 0..100 {
        let tag = RINGS[round % 3];
        let t = r.gen_range(1..=2);
        let (wp, wm) = (r.gen_range(1..=2), r.gen_range(1..=2));
        let tt = common::small_mat(&mut r, tag, t, t).to_frac();
        let u = common::small_mat(&mut r, tag, t, wm).to_frac();
        let v = common::small_mat(&mut r, tag, wp, t).to_frac();
        let w = common::frac_mat(&mut r, tag, wp, wm);
        let big = lib(Mat::from_blocks(&tt, &u, &v, &w), "bordered block")?;
        let inner = pole_chain(&lib(smith_mcmillan(&w), "SM of W")?);
        let outer = pole_chain(&lib(smith_mcmillan(&big), "SM of R")?);
        ensure!(
            inner == outer,
            "bordering by ring blocks changed the pole chain over {tag:?}"
        );
    }
    Ok("100 sums and 100 bordered blocks preserve the denominator chain".into())
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_sysmith"))
        .args(args)
        .output()
        .map_err(|e| format!("spawning the binary: {e}"))?;
    if !out.status.success() {
        return Err(format!(
            "the binary failed on {:?}: {}",
            args,
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    Ok(out.stdout)
}

/// Criterion 10: the Schur route through the binary agrees with the direct
/// Smith form, and every emitted document is a stable, reusable input.
fn cli_round_trip() -> Outcome {
    let dir = std::env::temp_dir().join(format!("sysmith-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| format!("temp dir: {e}"))?;
    let mut r = common::rng(0x2a0);
    for i in 0..25 {
        let (_, real) = common::irreducible_system(&mut r, RingTag::Z);
        let stacked = real.sys.assembled();
        let doc = json!({
            "ring": "Z",
            "rows": stacked.rows(),
            "cols": stacked.cols(),
            "entries": stacked.entries().map(|e| e.to_string()).collect::<Vec<_>>(),
        });
        let path = dir.join(format!("sys-{i}.json"));
        std::fs::write(&path, serde_json::to_vec(&doc).unwrap())
            .map_err(|e| format!("writing a document: {e}"))?;
        let path = path.to_str().expect("utf-8 temp path");
        let n = real.sys.n().to_string();

        let schur_args = ["schur-smith", "--n", &n, path];
        let smith_args = ["smith", path];
        let schur_bytes = run_cli(&schur_args)?;
        let smith_bytes = run_cli(&smith_args)?;
        ensure!(
            run_cli(&schur_args)? == schur_bytes && run_cli(&smith_args)? == smith_bytes,
            "a repeated run changed its output bytes"
        );

        let schur: Value =
            serde_json::from_slice(&schur_bytes).map_err(|e| format!("schur JSON: {e}"))?;
        let direct: Value =
            serde_json::from_slice(&smith_bytes).map_err(|e| format!("smith JSON: {e}"))?;
        ensure!(
            schur["via"] == "schur",
            "an irreducible document fell back to the direct route"
        );
        ensure!(
            schur["inv_factors"] == direct["inv_factors"],
            "the Schur route disagrees with the direct Smith form"
        );

        // The emitted Smith form document must feed back in unchanged.
        let s_path = dir.join(format!("s-{i}.json"));
        std::fs::write(&s_path, serde_json::to_vec(&direct["s"]).unwrap())
            .map_err(|e| format!("writing the form: {e}"))?;
        let again: Value = serde_json::from_slice(&run_cli(&[
            "smith",
            s_path.to_str().expect("utf-8 temp path"),
        ])?)
        .map_err(|e| format!("re-run JSON: {e}"))?;
        ensure!(
            again["inv_factors"] == direct["inv_factors"] && again["s"] == direct["s"],
            "the emitted form is not a fixed point of the tool"
        );
    }
    Ok("25 documents: Schur route = direct route, outputs byte-stable".into())
}

struct Criterion {
    name: &'static str,
    budget_s: u64,
    run: fn() -> Outcome,
}

const CRITERIA: &[Criterion] = &[
    Criterion { name: "smith vs minor oracle", budget_s: 60, run: smith_against_oracle },
    Criterion { name: "realization round trip", budget_s: 60, run: realization_round_trip },
    Criterion { name: "strong biconditional", budget_s: 60, run: strong_biconditional },
    Criterion { name: "reduction theorem", budget_s: 120, run: reduction_theorem },
    Criterion { name: "worked examples", budget_s: 5, run: worked_examples },
    Criterion { name: "local structure", budget_s: 30, run: local_structure },
    Criterion { name: "scalar lemmas", budget_s: 30, run: scalar_lemmas },
    Criterion { name: "fraction-field suite", budget_s: 120, run: fraction_field_suite },
    Criterion { name: "pole-chain corollaries", budget_s: 60, run: pole_chain_corollaries },
    Criterion { name: "cli round trip", budget_s: 30, run: cli_round_trip },
];

fn panic_text(payload: &(dyn std::any::Any + Send)) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        (*s).into()
    } else if let Some(s) = payload.downcast_ref::<String>() {
        s.clone()
    } else {
        "opaque panic payload".into()
    }
}

fn main() {
    // Keep the report readable: panics are turned into FAIL lines instead
    // of backtraces.
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0usize;
    for (i, c) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(c.run);
        let dt = start.elapsed().as_secs_f64();
        let verdict = match outcome {
            Ok(Ok(stats)) if dt <= c.budget_s as f64 => format!("pass  {stats}"),
            Ok(Ok(stats)) => {
                failed += 1;
                format!("FAIL  over the {}s budget ({stats})", c.budget_s)
            }
            Ok(Err(why)) => {
                failed += 1;
                format!("FAIL  {why}")
            }
            Err(payload) => {
                failed += 1;
                format!("FAIL  panic: {}", panic_text(payload.as_ref()))
            }
        };
        println!(
            "criterion {:2}  {:<24} [{:6.1}s]  {verdict}",
            i + 1,
            c.name,
            dt
        );
    }
    let _ = panic::take_hook();
    if failed > 0 {
        eprintln!("acceptance: {failed} of {} criteria failed", CRITERIA.len());
        std::process::exit(1);
    }
    println!("acceptance: all {} criteria passed", CRITERIA.len());
}
