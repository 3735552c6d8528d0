//! Exact census of s-plateaued quadratic functions over prime fields.
//!
//! A quadratic function Q in one of the coefficient-restricted families
//! (C1 and C2 in characteristic 2, D in odd characteristic) is s-plateaued
//! exactly when s = deg gcd(x^n - 1, A(x)) for its associate polynomial A.
//! This crate computes the full distribution of s over each family two
//! independent ways: by assembling the family generating polynomial from
//! the prime self-reciprocal factorization of x^n - 1, and by brute force
//! over the coefficient tuples (gcd criterion and exact Walsh spectra).
//!
//! Modules, bottom up:
//!
//! - [`fieldpoly`]: F_p and F_{p^d} arithmetic, polynomial gcd, traces.
//! - [`factorization`]: cyclotomic cosets, factoring x^n - 1, grouping
//!   into prime self-reciprocal polynomials.
//! - [`counting`]: the divisor-counting machinery phi_p, mu_p, N(f;t)
//!   and the generating polynomial G(f;z) over big integers.
//! - [`census`]: family-level generating polynomials and plateau
//!   distributions, via theorem products and via proposition sums.
//! - [`rmcode`]: weight enumerators of the Reed-Muller subcodes spanned
//!   by C1/C2 plus affine functions.
//! - [`oracle`]: independent ground truth by exhaustive enumeration and
//!   exact Walsh transforms (integer FWHT, cyclotomic integers).
//!
//! The crate is no_std (alloc only); everything is deterministic and
//! exact, with no floating point anywhere.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod census;
pub mod counting;
pub mod factorization;
pub mod fieldpoly;
pub mod oracle;
pub mod rmcode;

use core::fmt;

/// Usage errors: precondition violations a caller can provoke with bad
/// arguments. Internal inconsistencies (failed re-multiplication checks,
/// non-rational Walsh magnitudes, ...) are bugs and panic instead.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Error {
    /// The modulus is not prime (or is < 2).
    NotPrime(u64),
    /// Two polynomials from different prime fields were combined.
    ModulusMismatch,
    /// A zero polynomial where a nonzero one is required.
    ZeroPolynomial,
    /// A constant polynomial where positive degree is required.
    ConstantPolynomial,
    /// Irreducibility test requires a monic polynomial.
    NotMonic,
    /// Relative trace target degree does not divide the field degree.
    BadTraceTarget { from: usize, to: usize },
    /// cyclotomic_cosets requires gcd(m, p) = 1.
    NotCoprime { m: u64, p: u64 },
    /// Family constraints violated (parity of p or n).
    BadFamily(&'static str),
    /// Coefficient tuple length does not match the family.
    TupleLength { expected: usize, got: usize },
    /// Enumeration would exceed the configured budget.
    BudgetExceeded { required: u64, budget: u64 },
    /// Operation is defined only for other parameters.
    Unsupported(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not a prime"),
            Error::ModulusMismatch => write!(f, "polynomials have different moduli"),
            Error::ZeroPolynomial => write!(f, "zero polynomial not allowed here"),
            Error::ConstantPolynomial => write!(f, "constant polynomial not allowed here"),
            Error::NotMonic => write!(f, "polynomial must be monic"),
            Error::BadTraceTarget { from, to } => {
                write!(f, "trace target degree {to} does not divide {from}")
            }
            Error::NotCoprime { m, p } => write!(f, "m = {m} is not coprime to p = {p}"),
            Error::BadFamily(msg) => write!(f, "{msg}"),
            Error::TupleLength { expected, got } => {
                write!(f, "coefficient tuple has length {got}, family needs {expected}")
            }
            Error::BudgetExceeded { required, budget } => write!(
                f,
                "enumeration needs {required} evaluations, over the budget of {budget}; \
                 raise the budget to at least {required}"
            ),
            Error::Unsupported(msg) => write!(f, "{msg}"),
        }
    }
}
