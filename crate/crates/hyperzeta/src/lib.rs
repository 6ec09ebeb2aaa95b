//! Exact-arithmetic toolkit for hypergeometric character sums over finite
//! fields and the zeta-type generating series built from them.
//!
//! The crate is organized around a small tower of exact structures:
//!
//! - [`ffield`]: finite fields `F_{p^k}` with discrete-log tables, extension
//!   embeddings, Frobenius, relative trace and norm.
//! - [`cyclochar`]: the cyclotomic field `Q(zeta_m)` in canonical reduced
//!   form, and the additive/multiplicative characters of a finite field with
//!   values there.
//! - [`laurent`]: sparse Laurent polynomials over a finite field, their
//!   evaluation on torus points, base change, and the Cayley construction
//!   `lambda_1 P_1 + ... + lambda_k P_k`.
//! - [`hsums`]: the character sums `Phi_q` and `Psi_q`, torus point counting,
//!   and the three-way Cayley identity check.
//! - [`zeta`]: truncated zeta series (from point counts and from character
//!   sums), the Euler-type product over closed points of the torus, the
//!   shifted-zeta factorization, and Pade/weight probes for rationality.
//! - [`classical`]: the contour-integral root formula for complex
//!   polynomials, and the noncommutative 2x2 inverse over exact rational
//!   quaternions with its chart identity.
//! - [`cli`]: the job-file driven front end behind the `hyperzeta` binary.
//!
//! Every verification operation computes both sides of its identity by
//! independent routes and compares them exactly; floating point only enters
//! in the explicitly approximate probes (complex embeddings, Pade fits,
//! root finding).
//!
//! See the `examples/` directory for one runnable walkthrough per major
//! capability.

pub mod classical;
pub mod cli;
pub mod cyclochar;
pub mod ffield;
pub mod hsums;
pub mod laurent;
pub mod zeta;

pub use cyclochar::CycloNumber;
pub use ffield::{FieldCtx, FieldElement};
pub use laurent::LaurentPoly;

/// Default cap on the number of tuples any brute-force enumeration may visit.
pub const DEFAULT_BUDGET: u64 = 100_000_000;
