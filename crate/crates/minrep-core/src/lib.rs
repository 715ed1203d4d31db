//! Exact-arithmetic engines for the Fock and Schrödinger models of minimal
//! representations built from complex Jordan algebras.
//!
//! Everything is computed over `Q(i)[pi^(1/2), s]` with `s^2 = r - 1`, so
//! the operator identities, norm constants, reproducing kernels and the
//! Bargmann transform are verified by structural equality, never by floats
//! (floating point appears only in Monte-Carlo oracles).
//!
//! Module map:
//!
//! * [`scalar`], [`poly`], [`textfmt`], [`linalg`] — the exact ring, sparse
//!   polynomials, text format and `Q(i)` linear algebra everything else
//!   rests on;
//! * [`jordan`] — rank-1 and `Sym(r,C)` Jordan arithmetic plus the
//!   classification table;
//! * [`pspace`] — the module of translates of `Q`, its grading and the
//!   inversion action;
//! * [`fock`] — the Fock-model operators and sl(2) bracket verification;
//! * [`norms`] — exact Bergman/Gaussian moment engines, norm constants,
//!   kernels and skew-adjointness;
//! * [`schrodinger`] — the Schrödinger model, `L^2` pairing and the
//!   Bargmann transform with its kernel solver;
//! * [`report`], [`suites`] — machine-readable reports and the named
//!   verification suites behind the CLI.

pub mod fock;
pub mod jordan;
pub mod linalg;
pub mod norms;
pub mod poly;
pub mod pspace;
pub mod report;
pub mod scalar;
pub mod schrodinger;
pub mod suites;
pub mod textfmt;

pub use fock::ModelParams;
pub use jordan::{AlgebraDescriptor, AlgebraFamily, JordanElement};
pub use poly::{LaurentPoly, MultiPoly};
pub use scalar::{GaussRational, Rational, Scalar};
