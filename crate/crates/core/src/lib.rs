//! Euler's totient character and the reduced-fraction counts built on it.
//!
//! The crate is split by concern:
//!
//! * [`arith`] holds gcd, trial-division factorization and the totient
//!   computed from a factorization, from the product formula and by direct
//!   counting.
//! * [`sieve`] tabulates the totient over `1..=N` and produces cumulative
//!   fraction counts.
//! * [`farey`] counts reduced fractions in `(0, 1)` three ways and
//!   enumerates them in order.
//! * [`series`] looks at the coefficients `φ(n)` and `φ(n)/n` of the
//!   totient generating series and groups equal coefficients by radical.
//! * [`bench`] times the independent totient methods against each other.
//!
//! All arithmetic is on `u64`; anything that would overflow returns
//! [`Error::Overflow`] instead of wrapping.

pub mod arith;
pub mod bench;
mod error;
pub mod farey;
pub mod rational;
pub mod series;
pub mod sieve;

pub use arith::{
    coprime_numerators, factorize, gcd, numbers_with_prime_support, totient, totient_bruteforce,
    totient_from_factorization, Convention, Factorization, PrimePower,
};
pub use bench::{bench_totient_methods, BenchReport, MethodResult, MethodStatus, TotientMethod};
pub use error::{Error, Result};
pub use farey::{
    count_by_enumeration, count_by_exclusion, count_by_totient_sum, count_reducible, farey_iter,
    farey_sequence, FareyCountReport, FareyIter, ReducedFraction,
};
pub use rational::ExactRational;
pub use series::{
    group_by_coefficient, integrated_series_coefficients, phi_over_n, radical, series_coefficients,
    CoefficientGroup,
};
pub use sieve::{
    cumulative_counts, totient_sieve, totient_sieve_with, CumulativeCountRow, SieveMode,
    TotientTable,
};
