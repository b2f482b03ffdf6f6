//! Bulk totient tables and the cumulative fraction counts derived from them.

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::Convention;
use crate::error::{domain, Error, Result};

/// Largest table the sieve will build. At this size the table and the
/// smallest-prime-factor scratch array take about 1.2 GB.
pub const SIEVE_LIMIT: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SieveMode {
    #[default]
    Sequential,
    /// Runs the per-entry totient step on the current rayon pool. Produces a
    /// table identical to `Sequential`.
    Parallel,
}

/// `φ(n)` for every `1 <= n <= max_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotientTable {
    max_n: u64,
    convention: Convention,
    values: Vec<u64>,
}

impl TotientTable {
    pub fn max_n(&self) -> u64 {
        self.max_n
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    /// Values for `n = 1..=max_n`; `values()[0]` is the entry for `n = 1`.
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn get(&self, n: u64) -> Option<u64> {
        if n == 0 {
            return None;
        }
        self.values.get((n - 1) as usize).copied()
    }

    /// `(n, φ(n))` pairs in ascending `n`.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(i, &v)| (i as u64 + 1, v))
    }

    /// Sum of all entries modulo 2^64.
    pub fn checksum(&self) -> u64 {
        self.values.iter().fold(0u64, |acc, &v| acc.wrapping_add(v))
    }

    /// `Σ_{k=2}^{d} φ(k)`, the number of reduced fractions in `(0, 1)` with
    /// denominator at most `d`.
    pub fn fraction_count(&self, d: u64) -> Result<u64> {
        if d == 0 || d > self.max_n {
            return Err(domain(format!(
                "denominator bound {d} outside table range 1..={}",
                self.max_n
            )));
        }
        self.values[1..d as usize]
            .iter()
            .try_fold(0u64, |acc, &v| acc.checked_add(v))
            .ok_or_else(|| Error::Overflow(format!("fraction count up to {d} exceeds u64")))
    }
}

/// One row of the cumulative fraction-count table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CumulativeCountRow {
    pub max_denominator: u64,
    pub fraction_count: u64,
}

fn alloc<T: Clone>(len: usize, fill: T) -> Result<Vec<T>> {
    let mut v = Vec::new();
    v.try_reserve_exact(len).map_err(|_| Error::Resource {
        entries: len as u64,
    })?;
    v.resize(len, fill);
    Ok(v)
}

fn check_size(max_n: u64) -> Result<()> {
    if max_n == 0 {
        return Err(domain("table size must be at least 1"));
    }
    if max_n > SIEVE_LIMIT {
        return Err(Error::Resource { entries: max_n });
    }
    Ok(())
}

pub fn totient_sieve(max_n: u64, convention: Convention) -> Result<TotientTable> {
    totient_sieve_with(max_n, convention, SieveMode::Sequential)
}

/// Builds the table with a linear smallest-prime-factor sieve.
///
/// Sequential mode fills `φ` inside the sieve loop using
/// `φ(ip) = φ(i)·p` when `p | i` and `φ(i)·(p-1)` otherwise. Parallel mode
/// runs the sieve for smallest prime factors only, then computes each entry
/// independently from its factor chain.
pub fn totient_sieve_with(
    max_n: u64,
    convention: Convention,
    mode: SieveMode,
) -> Result<TotientTable> {
    check_size(max_n)?;
    let n = max_n as usize;
    let mut values = match mode {
        SieveMode::Sequential => linear_sieve_totient(n)?,
        SieveMode::Parallel => {
            let spf = smallest_prime_factors(n)?;
            let mut values = alloc(n + 1, 0u64)?;
            values
                .par_chunks_mut(1 << 16)
                .enumerate()
                .for_each(|(chunk, out)| {
                    let start = chunk << 16;
                    for (i, slot) in out.iter_mut().enumerate() {
                        *slot = totient_from_spf(&spf, start + i);
                    }
                });
            values
        }
    };
    values.remove(0);
    values[0] = convention.value_at_one();
    Ok(TotientTable {
        max_n,
        convention,
        values,
    })
}

/// Returns `φ` over `0..=n` (index 0 unused).
fn linear_sieve_totient(n: usize) -> Result<Vec<u64>> {
    let mut phi = alloc(n + 1, 0u64)?;
    let mut spf = alloc(n + 1, 0u32)?;
    let mut primes: Vec<u32> = Vec::new();
    if n >= 1 {
        phi[1] = 1;
    }
    for i in 2..=n {
        if spf[i] == 0 {
            spf[i] = i as u32;
            phi[i] = i as u64 - 1;
            primes.push(i as u32);
        }
        let spf_i = spf[i];
        let phi_i = phi[i];
        for &p in &primes {
            let m = i * p as usize;
            if p > spf_i || m > n {
                break;
            }
            spf[m] = p;
            phi[m] = if p == spf_i {
                phi_i * p as u64
            } else {
                phi_i * (p as u64 - 1)
            };
        }
    }
    Ok(phi)
}

fn smallest_prime_factors(n: usize) -> Result<Vec<u32>> {
    let mut spf = alloc(n + 1, 0u32)?;
    let mut primes: Vec<u32> = Vec::new();
    for i in 2..=n {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u32);
        }
        let spf_i = spf[i];
        for &p in &primes {
            let m = i * p as usize;
            if p > spf_i || m > n {
                break;
            }
            spf[m] = p;
        }
    }
    Ok(spf)
}

fn totient_from_spf(spf: &[u32], n: usize) -> u64 {
    if n < 2 {
        return n as u64;
    }
    let mut rest = n;
    let mut phi = 1u64;
    while rest > 1 {
        let p = spf[rest] as usize;
        rest /= p;
        let mut pk = 1u64;
        while rest.is_multiple_of(p) {
            rest /= p;
            pk *= p as u64;
        }
        phi *= pk * (p as u64 - 1);
    }
    phi
}

/// Cumulative reduced-fraction counts `Σ_{k=2}^{D} φ(k)` at each checkpoint `D`.
pub fn cumulative_counts(checkpoints: &[u64]) -> Result<Vec<CumulativeCountRow>> {
    let Some(&last) = checkpoints.last() else {
        return Err(domain("checkpoint list is empty"));
    };
    if checkpoints.windows(2).any(|w| w[0] > w[1]) {
        return Err(domain("checkpoints must be ascending"));
    }
    if checkpoints[0] == 0 {
        return Err(domain("checkpoints must be positive"));
    }
    let table = totient_sieve(last, Convention::Euler)?;

    let mut rows = Vec::with_capacity(checkpoints.len());
    let mut running = 0u64;
    let mut next_k = 2u64;
    for &d in checkpoints {
        while next_k <= d {
            running = running
                .checked_add(table.values[(next_k - 1) as usize])
                .ok_or_else(|| Error::Overflow(format!("fraction count up to {d} exceeds u64")))?;
            next_k += 1;
        }
        rows.push(CumulativeCountRow {
            max_denominator: d,
            fraction_count: running,
        });
    }
    Ok(rows)
}
