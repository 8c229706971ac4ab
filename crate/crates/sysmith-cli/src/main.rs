//! Command-line front end for exact canonical forms: Smith and
//! Smith–McMillan decompositions, coprimeness certificates, system-matrix
//! analysis and reduction, minimal realizations, fraction-valued systems,
//! structure at infinity, and the Smith-via-Schur pipeline for system
//! matrices.  Matrices travel as JSON documents with string entries; all
//! output is deterministic and lands on standard output.

mod doc;
mod expr;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use doc::{elem_strings, frac_strings, ChainsDoc, LoadedMat, MatrixDoc};
use expr::{parse_entry, ParsedEntry};
use sysmith::coprime::{completion_i0, coprime_check, fraction_coprime};
use sysmith::fof::{fof_assemble, fof_converse, fof_forward, infinity_structure};
use sysmith::mcmillan::smith_mcmillan;
use sysmith::smith::smith;
use sysmith::system::{
    diagnose_reducible, is_irreducible, local_zero_structure, minimal_realization,
    realization_dimension, reduce_system, schur_complement, verify_rosenbrock,
    DivisibilityItem, QuotientItem, ReductionOrder, SystemMatrix,
};
use sysmith::{CoprimeReport, MatR, RingElem, Side};

#[derive(Parser)]
#[command(
    name = "sysmith",
    version,
    about = "Exact Smith and Smith-McMillan forms for system matrices over Z, Q[z], and proper rationals"
)]
struct Cli {
    /// Leave the unimodular transformation matrices out of the output.
    #[arg(long, global = true)]
    no_transforms: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Smith decomposition of a ring-valued matrix.
    Smith { file: PathBuf },
    /// Smith-McMillan decomposition over the fraction field.
    SmithMcmillan { file: PathBuf },
    /// Determinantal divisors (gcds of the k-by-k minors).
    Detdiv { file: PathBuf },
    /// Coprimeness check with Bezout witness or common-divisor certificate.
    Coprime {
        #[arg(long, value_enum)]
        side: SideArg,
        first: PathBuf,
        second: PathBuf,
    },
    /// Complete a left-coprime pair to [A B]U = [I 0].
    CompleteI0 { first: PathBuf, second: PathBuf },
    /// Transfer matrix of a stacked system document.
    Transfer {
        #[arg(long)]
        n: usize,
        file: PathBuf,
    },
    /// Compare the Smith data of a system against the transfer predictions.
    Rosenbrock {
        #[arg(long)]
        n: usize,
        file: PathBuf,
    },
    /// Extract non-coprime factors to reach an irreducible system.
    Reduce {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = OrderArg::Ef)]
        order: OrderArg,
        file: PathBuf,
    },
    /// Quantify every deviation of a system from irreducibility.
    Diagnose {
        #[arg(long)]
        n: usize,
        file: PathBuf,
    },
    /// Partial multiplicities at a prime away from the pole surplus.
    Local {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        prime: String,
        file: PathBuf,
    },
    /// Minimal irreducible realization of a transfer matrix.
    Realize { file: PathBuf },
    /// Dimension every realization of a transfer matrix must reach.
    RealizeDim { file: PathBuf },
    /// Assemble a fraction-valued system and report its cleared data.
    FofAssemble {
        a: PathBuf,
        b: PathBuf,
        c: PathBuf,
        d: PathBuf,
    },
    /// Predict and verify the canonical forms of a fraction-valued system.
    FofForward {
        a: PathBuf,
        b: PathBuf,
        c: PathBuf,
        d: PathBuf,
    },
    /// Rebuild the transfer form from the forms of the system and of A.
    FofConverse { file: PathBuf },
    /// Structure at infinity of a polynomial matrix.
    Infinity { file: PathBuf },
    /// Smith form of a system matrix through its Schur complement.
    SchurSmith {
        #[arg(long)]
        n: usize,
        file: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrderArg {
    /// Left factor first.
    Ef,
    /// Right factor first.
    Fe,
}

/// Failures split by exit code: domain errors exit 1, anything wrong with
/// the input text or files exits 2.
enum CliError {
    Domain(String),
    Input(String),
}

impl From<sysmith::Error> for CliError {
    fn from(e: sysmith::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(json) => {
            // A reader that hangs up early (head, a closed pager) is not an
            // error worth a panic or a message; stay quiet and leave.
            let mut out = io::stdout();
            match writeln!(out, "{json}").and_then(|_| out.flush()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: writing output: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_source(path: &PathBuf) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Input(format!("reading standard input: {e}")))?;
        Ok(text)
    } else {
        fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("reading {}: {e}", path.display())))
    }
}

fn load_doc(path: &PathBuf) -> Result<LoadedMat, CliError> {
    let text = read_source(path)?;
    let doc: MatrixDoc = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    doc.load()
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_ring_doc(path: &PathBuf, what: &str) -> Result<MatR, CliError> {
    let loaded = load_doc(path)?;
    loaded
        .require_ring(what)
        .map(MatR::clone)
        .map_err(CliError::Domain)
}

fn load_system(path: &PathBuf, n: usize) -> Result<SystemMatrix, CliError> {
    let p = load_ring_doc(path, "a system matrix")?;
    Ok(SystemMatrix::from_stacked(&p, n)?)
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Input(format!("serializing output: {e}")))
}

fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.cmd {
        Cmd::Smith { file } => cmd_smith(file, cli.no_transforms),
        Cmd::SmithMcmillan { file } => cmd_smith_mcmillan(file, cli.no_transforms),
        Cmd::Detdiv { file } => cmd_detdiv(file),
        Cmd::Coprime {
            side,
            first,
            second,
        } => cmd_coprime(*side, first, second, cli.no_transforms),
        Cmd::CompleteI0 { first, second } => cmd_complete_i0(first, second),
        Cmd::Transfer { n, file } => cmd_transfer(file, *n),
        Cmd::Rosenbrock { n, file } => cmd_rosenbrock(file, *n),
        Cmd::Reduce { n, order, file } => cmd_reduce(file, *n, *order),
        Cmd::Diagnose { n, file } => cmd_diagnose(file, *n),
        Cmd::Local { n, prime, file } => cmd_local(file, *n, prime),
        Cmd::Realize { file } => cmd_realize(file),
        Cmd::RealizeDim { file } => cmd_realize_dim(file),
        Cmd::FofAssemble { a, b, c, d } => cmd_fof_assemble(a, b, c, d),
        Cmd::FofForward { a, b, c, d } => cmd_fof_forward(a, b, c, d),
        Cmd::FofConverse { file } => cmd_fof_converse(file),
        Cmd::Infinity { file } => cmd_infinity(file),
        Cmd::SchurSmith { n, file } => cmd_schur_smith(file, *n),
    }
}

#[derive(Serialize)]
struct SmithOut {
    ring: String,
    rank: usize,
    inv_factors: Vec<String>,
    det_divisors: Vec<String>,
    s: MatrixDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    u: Option<MatrixDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    v: Option<MatrixDoc>,
}

fn smith_out(m: &MatR, no_transforms: bool) -> Result<SmithOut, CliError> {
    let sd = smith(m)?;
    Ok(SmithOut {
        ring: m.ring().to_string(),
        rank: sd.rank,
        inv_factors: elem_strings(&sd.inv_factors),
        det_divisors: elem_strings(&sd.det_divisors),
        s: MatrixDoc::from_ring(&sd.s),
        u: (!no_transforms).then(|| MatrixDoc::from_ring(&sd.u)),
        v: (!no_transforms).then(|| MatrixDoc::from_ring(&sd.v)),
    })
}

fn cmd_smith(file: &PathBuf, no_transforms: bool) -> Result<String, CliError> {
    let m = load_ring_doc(file, "smith")?;
    to_json(&smith_out(&m, no_transforms)?)
}

#[derive(Serialize)]
struct SmOut {
    ring: String,
    rank: usize,
    lcd: String,
    numerators: Vec<String>,
    denominators: Vec<String>,
    fractions: Vec<String>,
    form: MatrixDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    u: Option<MatrixDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    v: Option<MatrixDoc>,
}

fn cmd_smith_mcmillan(file: &PathBuf, no_transforms: bool) -> Result<String, CliError> {
    let g = load_doc(file)?.to_frac();
    let sm = smith_mcmillan(&g)?;
    to_json(&SmOut {
        ring: g.ring().to_string(),
        rank: sm.rank,
        lcd: sm.lcd.to_string(),
        numerators: elem_strings(&sm.numerators),
        denominators: elem_strings(&sm.denominators),
        fractions: frac_strings(&sm.fractions()),
        form: MatrixDoc::from_frac(&sm.form()),
        u: (!no_transforms).then(|| MatrixDoc::from_ring(&sm.u)),
        v: (!no_transforms).then(|| MatrixDoc::from_ring(&sm.v)),
    })
}

#[derive(Serialize)]
struct DetdivOut {
    ring: String,
    rank: usize,
    det_divisors: Vec<String>,
}

fn cmd_detdiv(file: &PathBuf) -> Result<String, CliError> {
    let m = load_ring_doc(file, "detdiv")?;
    let sd = smith(&m)?;
    to_json(&DetdivOut {
        ring: m.ring().to_string(),
        rank: sd.rank,
        det_divisors: elem_strings(&sd.det_divisors),
    })
}

#[derive(Serialize)]
struct WitnessOut {
    x: MatrixDoc,
    y: MatrixDoc,
}

#[derive(Serialize)]
struct CommonDivisorOut {
    d: MatrixDoc,
    cof1: MatrixDoc,
    cof2: MatrixDoc,
}

#[derive(Serialize)]
struct CoprimeOut {
    side: String,
    coprime: bool,
    fraction_valued: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    common_divisor: Option<CommonDivisorOut>,
}

fn coprime_out(report: &CoprimeReport, fraction_valued: bool, no_transforms: bool) -> CoprimeOut {
    let side = match report.side {
        Side::Left => "left",
        Side::Right => "right",
    };
    CoprimeOut {
        side: side.to_string(),
        coprime: report.coprime,
        fraction_valued,
        witness: report.witness.as_ref().and_then(|(x, y)| {
            (!no_transforms).then(|| WitnessOut {
                x: MatrixDoc::from_ring(x),
                y: MatrixDoc::from_ring(y),
            })
        }),
        common_divisor: report.common_divisor.as_ref().map(|cd| CommonDivisorOut {
            d: MatrixDoc::from_ring(&cd.d),
            cof1: MatrixDoc::from_ring(&cd.cof1),
            cof2: MatrixDoc::from_ring(&cd.cof2),
        }),
    }
}

fn cmd_coprime(
    side: SideArg,
    first: &PathBuf,
    second: &PathBuf,
    no_transforms: bool,
) -> Result<String, CliError> {
    let side = match side {
        SideArg::Left => Side::Left,
        SideArg::Right => Side::Right,
    };
    let m1 = load_doc(first)?;
    let m2 = load_doc(second)?;
    let report = match (&m1, &m2) {
        (LoadedMat::Ring(a), LoadedMat::Ring(b)) => coprime_check(a, b, side)?,
        _ => fraction_coprime(&m1.to_frac(), &m2.to_frac(), side)?,
    };
    let fraction_valued =
        matches!(m1, LoadedMat::Frac(_)) || matches!(m2, LoadedMat::Frac(_));
    to_json(&coprime_out(&report, fraction_valued, no_transforms))
}

#[derive(Serialize)]
struct CompleteI0Out {
    u: MatrixDoc,
    y11: MatrixDoc,
    y12: MatrixDoc,
    y21: MatrixDoc,
    y22: MatrixDoc,
}

fn cmd_complete_i0(first: &PathBuf, second: &PathBuf) -> Result<String, CliError> {
    let a = load_ring_doc(first, "complete-i0")?;
    let b = load_ring_doc(second, "complete-i0")?;
    let comp = completion_i0(&a, &b)?;
    to_json(&CompleteI0Out {
        u: MatrixDoc::from_ring(&comp.u),
        y11: MatrixDoc::from_ring(&comp.y11()),
        y12: MatrixDoc::from_ring(&comp.y12()),
        y21: MatrixDoc::from_ring(&comp.y21()),
        y22: MatrixDoc::from_ring(&comp.y22()),
    })
}

#[derive(Serialize)]
struct TransferOut {
    g: MatrixDoc,
    rank_g: usize,
    rank_p: usize,
}

fn cmd_transfer(file: &PathBuf, n: usize) -> Result<String, CliError> {
    let sys = load_system(file, n)?;
    let schur = schur_complement(&sys)?;
    to_json(&TransferOut {
        g: MatrixDoc::from_frac(&schur.g),
        rank_g: schur.rank_g,
        rank_p: schur.rank_p,
    })
}

#[derive(Serialize)]
struct RosenbrockOut {
    n: usize,
    g: usize,
    irreducible: bool,
    matched: bool,
    sm_fractions: Vec<String>,
    predicted_sa: Vec<String>,
    computed_sa: Vec<String>,
    predicted_sp: Vec<String>,
    computed_sp: Vec<String>,
}

fn cmd_rosenbrock(file: &PathBuf, n: usize) -> Result<String, CliError> {
    let sys = load_system(file, n)?;
    let report = verify_rosenbrock(&sys)?;
    to_json(&RosenbrockOut {
        n,
        g: report.g,
        irreducible: report.irreducible,
        matched: report.matched,
        sm_fractions: frac_strings(&report.sm.fractions()),
        predicted_sa: elem_strings(&report.predicted_sa),
        computed_sa: elem_strings(&report.computed_sa),
        predicted_sp: elem_strings(&report.predicted_sp),
        computed_sp: elem_strings(&report.computed_sp),
    })
}

#[derive(Serialize)]
struct ReduceOut {
    order: String,
    n0: usize,
    e: MatrixDoc,
    f: MatrixDoc,
    reduced: MatrixDoc,
}

fn cmd_reduce(file: &PathBuf, n: usize, order: OrderArg) -> Result<String, CliError> {
    let sys = load_system(file, n)?;
    let order = match order {
        OrderArg::Ef => ReductionOrder::EFirst,
        OrderArg::Fe => ReductionOrder::FFirst,
    };
    let red = reduce_system(&sys, order)?;
    to_json(&ReduceOut {
        order: match red.order {
            ReductionOrder::EFirst => "ef".to_string(),
            ReductionOrder::FFirst => "fe".to_string(),
        },
        n0: red.p0.n(),
        e: MatrixDoc::from_ring(&red.e),
        f: MatrixDoc::from_ring(&red.f),
        reduced: MatrixDoc::from_ring(&red.p0.assembled()),
    })
}

#[derive(Serialize)]
struct DivisibilityOut {
    holds: bool,
    quotients: Vec<Option<String>>,
}

impl DivisibilityOut {
    fn new(item: &DivisibilityItem) -> Self {
        DivisibilityOut {
            holds: item.holds,
            quotients: item
                .quotients
                .iter()
                .map(|q| q.as_ref().map(RingElem::to_string))
                .collect(),
        }
    }
}

#[derive(Serialize)]
struct QuotientOut {
    holds: bool,
    quotient: Option<String>,
}

impl QuotientOut {
    fn new(item: &QuotientItem) -> Self {
        QuotientOut {
            holds: item.holds,
            quotient: item.quotient.as_ref().map(RingElem::to_string),
        }
    }
}

#[derive(Serialize)]
struct DiagnoseOut {
    n: usize,
    r: usize,
    g: usize,
    eps: Vec<String>,
    psi: Vec<String>,
    eps_tilde: Vec<String>,
    psi_tilde: Vec<String>,
    item_denominators: DivisibilityOut,
    item_pole_excess: QuotientOut,
    item_numerators: DivisibilityOut,
    item_zero_excess: QuotientOut,
    #[serde(skip_serializing_if = "Option::is_none")]
    item_full_rank: Option<QuotientOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    left_defect: Option<QuotientOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    right_defect: Option<QuotientOut>,
    left_coprime: bool,
    right_coprime: bool,
}

fn cmd_diagnose(file: &PathBuf, n: usize) -> Result<String, CliError> {
    let sys = load_system(file, n)?;
    let d = diagnose_reducible(&sys)?;
    to_json(&DiagnoseOut {
        n: d.n,
        r: d.r,
        g: d.g,
        eps: elem_strings(&d.eps),
        psi: elem_strings(&d.psi),
        eps_tilde: elem_strings(&d.eps_tilde),
        psi_tilde: elem_strings(&d.psi_tilde),
        item_denominators: DivisibilityOut::new(&d.item_denominators),
        item_pole_excess: QuotientOut::new(&d.item_pole_excess),
        item_numerators: DivisibilityOut::new(&d.item_numerators),
        item_zero_excess: QuotientOut::new(&d.item_zero_excess),
        item_full_rank: d.item_full_rank.as_ref().map(QuotientOut::new),
        left_defect: d.left_defect.as_ref().map(QuotientOut::new),
        right_defect: d.right_defect.as_ref().map(QuotientOut::new),
        left_coprime: d.left.coprime,
        right_coprime: d.right.coprime,
    })
}

#[derive(Serialize)]
struct MultsOut {
    prime: String,
    mults: Vec<u32>,
}

#[derive(Serialize)]
struct LocalOut {
    system: MultsOut,
    numerators: MultsOut,
}

fn cmd_local(file: &PathBuf, n: usize, prime: &str) -> Result<String, CliError> {
    let sys = load_system(file, n)?;
    let parsed = parse_entry(prime, sys.ring())
        .map_err(|e| CliError::Input(format!("--prime {prime:?}: {e}")))?;
    let prime = match parsed {
        ParsedEntry::Ring(e) => e,
        ParsedEntry::Frac(_) => {
            return Err(CliError::Domain(
                "--prime must evaluate into the ring, not the fraction field".to_string(),
            ))
        }
    };
    let (from_system, from_numerators) = local_zero_structure(&sys, &prime)?;
    to_json(&LocalOut {
        system: MultsOut {
            prime: from_system.prime.to_string(),
            mults: from_system.mults.clone(),
        },
        numerators: MultsOut {
            prime: from_numerators.prime.to_string(),
            mults: from_numerators.mults.clone(),
        },
    })
}

#[derive(Serialize)]
struct RealizeOut {
    n: usize,
    left_coprime: bool,
    right_coprime: bool,
    fractions: Vec<String>,
    a: MatrixDoc,
    b: MatrixDoc,
    c: MatrixDoc,
    d: MatrixDoc,
}

fn cmd_realize(file: &PathBuf) -> Result<String, CliError> {
    let g = load_doc(file)?.to_frac();
    let real = minimal_realization(&g)?;
    to_json(&RealizeOut {
        n: real.sys.n(),
        left_coprime: real.left.coprime,
        right_coprime: real.right.coprime,
        fractions: frac_strings(&real.sm.fractions()),
        a: MatrixDoc::from_ring(real.sys.a()),
        b: MatrixDoc::from_ring(real.sys.b()),
        c: MatrixDoc::from_ring(real.sys.c()),
        d: MatrixDoc::from_ring(real.sys.d()),
    })
}

#[derive(Serialize)]
struct RealizeDimOut {
    dimension: usize,
}

fn cmd_realize_dim(file: &PathBuf) -> Result<String, CliError> {
    let g = load_doc(file)?.to_frac();
    let dimension = realization_dimension(&g)?;
    to_json(&RealizeDimOut { dimension })
}

#[derive(Serialize)]
struct FofAssembleOut {
    n: usize,
    m: usize,
    p: usize,
    alpha: String,
    beta: String,
    gamma: String,
    left_coprime: bool,
    right_coprime: bool,
    assembled: MatrixDoc,
}

fn load_fof(
    a: &PathBuf,
    b: &PathBuf,
    c: &PathBuf,
    d: &PathBuf,
) -> Result<sysmith::fof::FofSystem, CliError> {
    let a = load_doc(a)?.to_frac();
    let b = load_doc(b)?.to_frac();
    let c = load_doc(c)?.to_frac();
    let d = load_doc(d)?.to_frac();
    Ok(fof_assemble(a, b, c, d)?)
}

fn cmd_fof_assemble(
    a: &PathBuf,
    b: &PathBuf,
    c: &PathBuf,
    d: &PathBuf,
) -> Result<String, CliError> {
    let sys = load_fof(a, b, c, d)?;
    to_json(&FofAssembleOut {
        n: sys.n(),
        m: sys.m(),
        p: sys.p(),
        alpha: sys.alpha().to_string(),
        beta: sys.beta().to_string(),
        gamma: sys.gamma().to_string(),
        left_coprime: sys.left().coprime,
        right_coprime: sys.right().coprime,
        assembled: MatrixDoc::from_frac(&sys.assembled()),
    })
}

#[derive(Serialize)]
struct FofForwardOut {
    alpha: String,
    beta_gamma: String,
    g: usize,
    matched_a: bool,
    matched_p: bool,
    chains_ok: bool,
    leading_block_ok: bool,
    delta: Vec<String>,
    nu: Vec<String>,
    chi: Vec<String>,
    eps_tilde: Vec<String>,
    psi_tilde: Vec<String>,
    transfer_fractions: Vec<String>,
    predicted_sm_a: Vec<String>,
    computed_sm_a: Vec<String>,
    predicted_sm_p: Vec<String>,
    computed_sm_p: Vec<String>,
}

fn cmd_fof_forward(
    a: &PathBuf,
    b: &PathBuf,
    c: &PathBuf,
    d: &PathBuf,
) -> Result<String, CliError> {
    let sys = load_fof(a, b, c, d)?;
    let report = fof_forward(&sys)?;
    to_json(&FofForwardOut {
        alpha: sys.alpha().to_string(),
        beta_gamma: sys.beta().mul(sys.gamma()).canonical().to_string(),
        g: report.g,
        matched_a: report.matched_a,
        matched_p: report.matched_p,
        chains_ok: report.chains_ok,
        leading_block_ok: report.leading_block_ok,
        delta: elem_strings(&report.delta),
        nu: elem_strings(&report.nu),
        chi: elem_strings(&report.chi),
        eps_tilde: elem_strings(&report.eps_tilde),
        psi_tilde: elem_strings(&report.psi_tilde),
        transfer_fractions: frac_strings(&report.sm_g.fractions()),
        predicted_sm_a: frac_strings(&report.predicted_sm_a),
        computed_sm_a: frac_strings(&report.computed_sm_a),
        predicted_sm_p: frac_strings(&report.predicted_sm_p),
        computed_sm_p: frac_strings(&report.computed_sm_p),
    })
}

#[derive(Serialize)]
struct FofConverseOut {
    n: usize,
    r: usize,
    mu: Vec<String>,
    sigma: Vec<String>,
    alpha_tilde: Vec<String>,
    beta_tilde: Vec<String>,
    delta_tilde: Vec<String>,
    nu_tilde: Vec<String>,
    predicted_sm_g: Vec<String>,
}

fn cmd_fof_converse(file: &PathBuf) -> Result<String, CliError> {
    let text = read_source(file)?;
    let doc: ChainsDoc = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", file.display())))?;
    let (sm_a, sm_p, _) = doc
        .load()
        .map_err(|e| CliError::Input(format!("{}: {e}", file.display())))?;
    let n = sm_a.len();
    let r = sm_p.len() - n;
    let report = fof_converse(&sm_a, &sm_p, n, r)?;
    to_json(&FofConverseOut {
        n,
        r,
        mu: elem_strings(&report.mu),
        sigma: elem_strings(&report.sigma),
        alpha_tilde: elem_strings(&report.alpha_tilde),
        beta_tilde: elem_strings(&report.beta_tilde),
        delta_tilde: elem_strings(&report.delta_tilde),
        nu_tilde: elem_strings(&report.nu_tilde),
        predicted_sm_g: frac_strings(&report.predicted_sm_g),
    })
}

#[derive(Serialize)]
struct InfinityOut {
    degree: usize,
    exponents: Vec<u32>,
    orders: Vec<i64>,
}

fn cmd_infinity(file: &PathBuf) -> Result<String, CliError> {
    let m = load_ring_doc(file, "infinity")?;
    let report = infinity_structure(&m)?;
    to_json(&InfinityOut {
        degree: report.degree,
        exponents: report.exponents,
        orders: report.orders,
    })
}

#[derive(Serialize)]
struct SchurSmithOut {
    via: String,
    n: usize,
    rank: usize,
    left_coprime: bool,
    right_coprime: bool,
    inv_factors: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    warning: Option<String>,
}

/// Smith form of a stacked system matrix computed through the transfer
/// matrix: when the system is irreducible the invariant factors are `n`
/// ones followed by the Smith-McMillan numerators, so only the (smaller)
/// Schur complement ever goes through a Smith computation.  On a reducible
/// system this shortcut is unavailable and the form is computed directly,
/// with a warning.
fn cmd_schur_smith(file: &PathBuf, n: usize) -> Result<String, CliError> {
    let sys = load_system(file, n)?;
    let (left, right) = is_irreducible(&sys)?;
    if left.coprime && right.coprime {
        let schur = schur_complement(&sys)?;
        let sm = smith_mcmillan(&schur.g)?;
        let mut inv_factors = vec![RingElem::one(sys.ring()); n];
        inv_factors.extend(sm.numerators.iter().cloned());
        to_json(&SchurSmithOut {
            via: "schur".to_string(),
            n,
            rank: n + sm.rank,
            left_coprime: true,
            right_coprime: true,
            inv_factors: elem_strings(&inv_factors),
            warning: None,
        })
    } else {
        let warning =
            "system is not irreducible; falling back to a direct Smith computation".to_string();
        eprintln!("warning: {warning}");
        let sd = smith(&sys.assembled())?;
        to_json(&SchurSmithOut {
            via: "direct".to_string(),
            n,
            rank: sd.rank,
            left_coprime: left.coprime,
            right_coprime: right.coprime,
            inv_factors: elem_strings(&sd.inv_factors),
            warning: Some(warning),
        })
    }
}
