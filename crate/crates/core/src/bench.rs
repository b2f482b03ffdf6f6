//! Timing harness that runs independent totient methods over `1..=N` and
//! checks that their checksums agree.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{totient, totient_bruteforce, Convention};
use crate::error::Result;
use crate::sieve::{totient_sieve_with, SieveMode, SIEVE_LIMIT};

/// Above this `N` the gcd-counting oracle (quadratic overall) is skipped.
pub const BENCH_BRUTEFORCE_LIMIT: u64 = 20_000;

/// Above this `N` per-n trial-division factorization is skipped.
pub const BENCH_FACTORIZATION_LIMIT: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TotientMethod {
    BruteforceOracle,
    PerNFactorization,
    Sieve,
}

impl TotientMethod {
    pub const ALL: [TotientMethod; 3] = [
        TotientMethod::BruteforceOracle,
        TotientMethod::PerNFactorization,
        TotientMethod::Sieve,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TotientMethod::BruteforceOracle => "bruteforce-oracle",
            TotientMethod::PerNFactorization => "per-n-factorization",
            TotientMethod::Sieve => "sieve",
        }
    }

    pub fn limit(self) -> u64 {
        match self {
            TotientMethod::BruteforceOracle => BENCH_BRUTEFORCE_LIMIT,
            TotientMethod::PerNFactorization => BENCH_FACTORIZATION_LIMIT,
            TotientMethod::Sieve => SIEVE_LIMIT,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum MethodStatus {
    Ran { elapsed: Duration, checksum: u64 },
    Skipped { limit: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MethodResult {
    pub method: TotientMethod,
    #[serde(flatten)]
    pub status: MethodStatus,
}

impl MethodResult {
    pub fn checksum(&self) -> Option<u64> {
        match self.status {
            MethodStatus::Ran { checksum, .. } => Some(checksum),
            MethodStatus::Skipped { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BenchReport {
    pub max_n: u64,
    pub convention: Convention,
    pub methods: Vec<MethodResult>,
}

impl BenchReport {
    /// True when every method that ran produced the same checksum.
    pub fn checksums_agree(&self) -> bool {
        let mut sums = self.methods.iter().filter_map(MethodResult::checksum);
        match sums.next() {
            Some(first) => sums.all(|s| s == first),
            None => true,
        }
    }
}

fn wrapping_sum(values: impl Iterator<Item = u64>) -> u64 {
    values.fold(0u64, u64::wrapping_add)
}

fn run(method: TotientMethod, max_n: u64, convention: Convention, mode: SieveMode) -> Result<u64> {
    // the oracle counts below n, so it is Euler at n = 1 whatever is asked
    let at_one = convention.value_at_one();
    match method {
        TotientMethod::BruteforceOracle => {
            let rest = (2..=max_n)
                .map(totient_bruteforce)
                .try_fold(0u64, |acc, v| v.map(|v| acc.wrapping_add(v)))?;
            Ok(rest.wrapping_add(at_one))
        }
        TotientMethod::PerNFactorization => {
            let phi = |n| totient(n, convention).expect("n >= 1");
            Ok(match mode {
                SieveMode::Sequential => wrapping_sum((1..=max_n).map(phi)),
                SieveMode::Parallel => (1..=max_n)
                    .into_par_iter()
                    .map(phi)
                    .reduce(|| 0, u64::wrapping_add),
            })
        }
        TotientMethod::Sieve => Ok(totient_sieve_with(max_n, convention, mode)?.checksum()),
    }
}

/// Runs every method whose limit admits `max_n`, timing each and recording
/// `Σ φ(n) mod 2^64`. Methods over their limit are reported as skipped.
pub fn bench_totient_methods(
    max_n: u64,
    convention: Convention,
    mode: SieveMode,
) -> Result<BenchReport> {
    let mut methods = Vec::with_capacity(TotientMethod::ALL.len());
    for method in TotientMethod::ALL {
        let status = if max_n == 0 || max_n > method.limit() {
            MethodStatus::Skipped {
                limit: method.limit(),
            }
        } else {
            let start = Instant::now();
            let checksum = run(method, max_n, convention, mode)?;
            MethodStatus::Ran {
                elapsed: start.elapsed(),
                checksum,
            }
        };
        methods.push(MethodResult { method, status });
    }
    Ok(BenchReport {
        max_n,
        convention,
        methods,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_run() {
        for c in [Convention::Euler, Convention::Modern] {
            let report = bench_totient_methods(1, c, SieveMode::Sequential).unwrap();
            assert!(report.checksums_agree());
            for m in &report.methods {
                assert_eq!(m.checksum(), Some(c.value_at_one()));
            }
        }
    }

    #[test]
    fn all_methods_agree_at_ten_thousand() {
        let report =
            bench_totient_methods(10_000, Convention::Modern, SieveMode::Sequential).unwrap();
        assert!(report.methods.iter().all(|m| m.checksum().is_some()));
        assert!(report.checksums_agree());
        // Σ_{n<=10^4} φ(n), independently: 30397486
        assert_eq!(report.methods[2].checksum(), Some(30_397_486));
    }

    #[test]
    fn oracle_skipped_past_limit() {
        let report = bench_totient_methods(
            BENCH_BRUTEFORCE_LIMIT + 1,
            Convention::Euler,
            SieveMode::Sequential,
        )
        .unwrap();
        assert!(matches!(
            report.methods[0].status,
            MethodStatus::Skipped { .. }
        ));
        assert!(report.methods[1].checksum().is_some());
        assert!(report.checksums_agree());
    }
}
