//! Exact computer algebra for canonical forms of matrices over elementary
//! divisor domains, and for the polynomial/rational system matrices built on
//! top of them.
//!
//! The crate ships three concrete domains:
//!
//! * [`RingTag::Z`] — arbitrary-precision integers,
//! * [`RingTag::Qz`] — univariate polynomials with rational coefficients,
//! * [`RingTag::Rpr`] — proper rational functions (a discrete valuation
//!   ring; the valuation is the order at infinity).
//!
//! On top of the scalar layer sit exact matrices ([`MatR`] over a ring,
//! [`MatF`] over its field of fractions), the Smith and Smith–McMillan
//! decompositions, matrix coprimeness certificates, system-matrix analysis
//! (irreducibility, reduction to an irreducible core, pole/zero diagnostics,
//! minimal realizations) and the fraction-valued extension of that theory,
//! including the structure at infinity of polynomial matrices.
//!
//! All arithmetic is exact; every decomposition returns the transformation
//! matrices that witness it, and the invariants claimed by the API are
//! checked, not assumed.

pub mod coprime;
pub mod error;
pub mod fof;
pub mod frac;
pub mod matrix;
pub mod mcmillan;
pub mod poly;
pub mod proper;
pub mod ring;
pub mod smith;
pub mod system;

pub use error::{Error, Result};
pub use frac::Frac;
pub use matrix::{IndexSet, Mat, MatF, MatR};
pub use poly::Poly;
pub use proper::ProperRat;
pub use ring::{ExtGcd, RingElem, RingTag};
pub use smith::{PartialMults, SmithDecomp};
pub use mcmillan::SmDecomp;
pub use coprime::{CompletionI0, CoprimeReport, Side};
pub use system::{
    DiagnoseReport, Realization, ReductionOrder, ReductionResult, RosenbrockReport, SchurResult,
    SystemMatrix,
};
pub use fof::{FofConverseReport, FofForwardReport, FofSystem, InfinityReport};
