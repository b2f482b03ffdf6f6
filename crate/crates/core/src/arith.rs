//! Exact integer arithmetic: gcd, trial-division factorization and the
//! totient character.

use serde::Serialize;

use crate::error::{domain, Error, Result};

/// Largest `n` accepted by [`totient_bruteforce`].
pub const BRUTEFORCE_LIMIT: u64 = 1_000_000;

/// Which value the totient takes at `n = 1`.
///
/// `Euler` counts the numbers strictly below `n` that are prime to it, so it
/// is `0` at `n = 1`. `Modern` is the usual `φ(1) = 1`. They agree for every
/// `n >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    #[default]
    Modern,
    Euler,
}

impl Convention {
    pub fn value_at_one(self) -> u64 {
        match self {
            Convention::Modern => 1,
            Convention::Euler => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Convention::Modern => "modern",
            Convention::Euler => "euler",
        }
    }
}

/// Greatest common divisor. `gcd(0, 0)` is rejected.
pub fn gcd(a: u64, b: u64) -> Result<u64> {
    if a == 0 && b == 0 {
        return Err(domain("gcd(0, 0) is undefined"));
    }
    Ok(gcd_unchecked(a, b))
}

/// Binary gcd; `gcd_unchecked(0, 0)` is 0.
#[inline]
pub(crate) fn gcd_unchecked(mut a: u64, mut b: u64) -> u64 {
    if a == 0 || b == 0 {
        return a | b;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d <= n / d {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PrimePower {
    pub prime: u64,
    pub exponent: u32,
}

/// Prime-power decomposition of a positive integer, primes ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Factorization {
    n: u64,
    factors: Vec<PrimePower>,
}

impl Factorization {
    /// Builds a factorization from `(prime, exponent)` pairs, checking that the
    /// primes are prime and strictly increasing, that every exponent is
    /// positive, and that the product fits in a `u64`.
    pub fn from_factors(pairs: &[(u64, u32)]) -> Result<Self> {
        let mut n: u64 = 1;
        let mut factors = Vec::with_capacity(pairs.len());
        let mut last = 1;
        for &(prime, exponent) in pairs {
            if !is_prime(prime) {
                return Err(domain(format!("{prime} is not prime")));
            }
            if prime <= last {
                return Err(domain("primes must be strictly increasing"));
            }
            if exponent == 0 {
                return Err(domain(format!("exponent of {prime} must be at least 1")));
            }
            let power = prime
                .checked_pow(exponent)
                .ok_or_else(|| Error::Overflow(format!("{prime}^{exponent} exceeds u64")))?;
            n = n
                .checked_mul(power)
                .ok_or_else(|| Error::Overflow("product of prime powers exceeds u64".into()))?;
            factors.push(PrimePower { prime, exponent });
            last = prime;
        }
        Ok(Factorization { n, factors })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[PrimePower] {
        &self.factors
    }

    /// Distinct primes dividing `n`, ascending.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|f| f.prime)
    }

    /// Product of the distinct primes.
    pub fn radical(&self) -> u64 {
        self.primes().product()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }
}

/// Factorizes `n` by trial division: 2 first, then odd candidates up to `√n`.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(domain("cannot factorize 0"));
    }
    let mut factors = Vec::new();
    let mut rest = n;

    let twos = rest.trailing_zeros();
    if twos > 0 {
        factors.push(PrimePower {
            prime: 2,
            exponent: twos,
        });
        rest >>= twos;
    }

    let mut d: u64 = 3;
    while d <= rest / d {
        if rest.is_multiple_of(d) {
            let mut exponent = 0;
            while rest.is_multiple_of(d) {
                rest /= d;
                exponent += 1;
            }
            factors.push(PrimePower { prime: d, exponent });
        }
        d += 2;
    }
    if rest > 1 {
        factors.push(PrimePower {
            prime: rest,
            exponent: 1,
        });
    }
    Ok(Factorization { n, factors })
}

/// `∏ p^(e-1) (p-1)` over the factorization, or the convention's value at 1.
pub fn totient_from_factorization(f: &Factorization, convention: Convention) -> u64 {
    if f.is_one() {
        return convention.value_at_one();
    }
    f.factors
        .iter()
        .map(|pp| pp.prime.pow(pp.exponent - 1) * (pp.prime - 1))
        .product()
}

/// Totient by the product formula `N ∏ (p-1)/p` over the distinct primes of `N`.
///
/// The running value is divided by `p` before multiplying by `p - 1`, so no
/// intermediate exceeds `n`.
pub fn totient(n: u64, convention: Convention) -> Result<u64> {
    if n == 0 {
        return Err(domain("totient of 0 is undefined"));
    }
    if n == 1 {
        return Ok(convention.value_at_one());
    }
    let f = factorize(n)?;
    Ok(apply_product_formula(n, f.primes()))
}

pub(crate) fn apply_product_formula(n: u64, primes: impl Iterator<Item = u64>) -> u64 {
    primes.fold(n, |acc, p| acc / p * (p - 1))
}

/// Counts `1 <= k < n` with `gcd(k, n) = 1` directly. Euler convention by
/// construction.
pub fn totient_bruteforce(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(domain("totient of 0 is undefined"));
    }
    if n > BRUTEFORCE_LIMIT {
        return Err(Error::BoundExceeded {
            operation: "totient_bruteforce",
            value: n,
            limit: BRUTEFORCE_LIMIT,
        });
    }
    Ok((1..n).filter(|&k| gcd_unchecked(k, n) == 1).count() as u64)
}

/// All numerators `1 <= k < d` prime to `d`, ascending.
pub fn coprime_numerators(d: u64) -> Result<Vec<u64>> {
    if d < 2 {
        return Err(domain(format!("denominator must be at least 2, got {d}")));
    }
    Ok((1..d).filter(|&k| gcd_unchecked(k, d) == 1).collect())
}

/// Every `n <= limit` whose set of distinct prime divisors is exactly `primes`.
pub fn numbers_with_prime_support(primes: &[u64], limit: u64) -> Result<Vec<u64>> {
    if primes.is_empty() {
        return Err(domain("prime set must be nonempty"));
    }
    if limit == 0 {
        return Err(domain("limit must be at least 1"));
    }
    if let Some(&bad) = primes.iter().find(|&&p| !is_prime(p)) {
        return Err(domain(format!("{bad} is not prime")));
    }
    let mut support = primes.to_vec();
    support.sort_unstable();
    support.dedup();

    let base = support
        .iter()
        .try_fold(1u64, |acc, &p| acc.checked_mul(p).filter(|&v| v <= limit));
    let Some(base) = base else {
        return Ok(Vec::new());
    };

    let mut out = Vec::new();
    extend_with_powers(base, &support, limit, &mut out);
    out.sort_unstable();
    Ok(out)
}

fn extend_with_powers(value: u64, primes: &[u64], limit: u64, out: &mut Vec<u64>) {
    let Some((&p, rest)) = primes.split_first() else {
        out.push(value);
        return;
    };
    let mut v = value;
    loop {
        extend_with_powers(v, rest, limit, out);
        match v.checked_mul(p) {
            Some(next) if next <= limit => v = next,
            _ => break,
        }
    }
}
