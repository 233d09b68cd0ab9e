//! Exact arithmetic and executable checks for the mod-p congruence between
//! squared Frobenius traces of elliptic curves and truncated
//! `3F2(1/2, 1/6, 5/6; 1, 1 | 1728/j)` sums.
//!
//! The crate is split bottom-up:
//!
//! - [`arith`]: rationals, prime fields, quadratic extensions, valuated
//!   residues and dense polynomials.
//! - [`hyperseries`]: Pochhammer symbols, truncated hypergeometric sums and
//!   the polynomial congruences between them.
//! - [`curves`]: Weierstrass models, twists, point counting and trace checks.
//! - [`verify`]: the end-to-end congruence, sweeps, lemma suites and the
//!   mod-p² probe.
//!
//! Every check produces a [`report::CongruenceReport`]; failures are data, not
//! errors.

pub mod arith;
pub mod curves;
pub mod error;
pub mod hyperseries;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
pub use report::{Branch, CongruenceReport, Verdict};
