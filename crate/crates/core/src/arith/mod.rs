//! Exact arithmetic foundations.

mod field;
mod fp;
mod fp2;
mod poly;
mod primes;
mod rational;
mod valres;

pub use field::FieldElement;
pub use fp::{find_nonresidue, legendre_symbol, sqrt_mod_p, Fp, PrimeField};
pub use fp2::{Fp2, QuadField};
pub use poly::DensePolynomial;
pub use primes::{is_prime, primes_in_range};
pub use rational::{rational_p_valuation, Rational};
pub use valres::{factorial_valres, int_valuation, ValuatedResidue};
