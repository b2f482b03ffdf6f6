//! Coefficients of the totient generating series `Σ φ(n) xⁿ` and of its
//! companion `Σ (φ(n)/n) xⁿ`.
//!
//! `φ(n)/n = ∏_{p | n} (p-1)/p` depends only on which primes divide `n`, so
//! every `n` with the same radical carries the same coefficient.
//! [`group_by_coefficient`] collects those classes.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::{factorize, Convention};
use crate::error::{domain, Error, Result};
use crate::rational::ExactRational;
use crate::sieve::{totient_sieve, SIEVE_LIMIT};

/// Coefficients of `xⁿ` in `Σ φ(n) xⁿ` for `n = 1..=max_n` (Euler convention,
/// so the `x¹` coefficient is 0).
pub fn series_coefficients(max_n: u64) -> Result<Vec<u64>> {
    if max_n < 2 {
        return Err(domain(format!(
            "series length must be at least 2, got {max_n}"
        )));
    }
    Ok(totient_sieve(max_n, Convention::Euler)?.values().to_vec())
}

/// `φ(n)/n` in lowest terms.
pub fn phi_over_n(n: u64) -> Result<ExactRational> {
    if n < 2 {
        return Err(domain(format!(
            "φ(n)/n is only defined here for n >= 2, got {n}"
        )));
    }
    let f = factorize(n)?;
    let rad = f.radical();
    let phi_rad: u64 = f.primes().map(|p| p - 1).product();
    ExactRational::new(phi_rad, rad)
}

/// Product of the distinct primes dividing `n`; `radical(1) = 1`.
pub fn radical(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(domain("radical of 0 is undefined"));
    }
    Ok(factorize(n)?.radical())
}

/// All exponents `n <= max_n` sharing one radical, hence one coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoefficientGroup {
    pub radical: u64,
    pub coefficient: ExactRational,
    pub members: Vec<u64>,
}

fn radicals_up_to(max_n: u64) -> Result<Vec<u64>> {
    if max_n > SIEVE_LIMIT {
        return Err(Error::Resource { entries: max_n });
    }
    let n = max_n as usize;
    let mut rad = vec![1u64; n + 1];
    for p in 2..=n {
        // still 1 means no smaller prime divides p
        if rad[p] == 1 {
            for m in (p..=n).step_by(p) {
                rad[m] *= p as u64;
            }
        }
    }
    Ok(rad)
}

/// Partitions `2..=max_n` by radical, groups ascending by radical.
pub fn group_by_coefficient(max_n: u64) -> Result<Vec<CoefficientGroup>> {
    if max_n < 2 {
        return Err(domain(format!(
            "grouping bound must be at least 2, got {max_n}"
        )));
    }
    let rad = radicals_up_to(max_n)?;
    let mut groups: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for n in 2..=max_n {
        groups.entry(rad[n as usize]).or_default().push(n);
    }
    groups
        .into_iter()
        .map(|(radical, members)| {
            Ok(CoefficientGroup {
                radical,
                coefficient: phi_over_n(radical)?,
                members,
            })
        })
        .collect()
}

/// Coefficients `φ(n)/n` for `n = 2..=max_n`.
pub fn integrated_series_coefficients(max_n: u64) -> Result<Vec<ExactRational>> {
    if max_n < 2 {
        return Err(domain(format!(
            "series length must be at least 2, got {max_n}"
        )));
    }
    let table = totient_sieve(max_n, Convention::Euler)?;
    table
        .iter()
        .skip(1)
        .map(|(n, phi)| ExactRational::new(phi, n))
        .collect()
}
