//! Reduced fractions strictly between 0 and 1 with bounded denominator.
//!
//! The count is available three ways: summing the totient table, the
//! exclusion identity
//!
//! ```text
//! D(D-1)/2 - Σ_{k>=2} (⌊D/k⌋ - 1) φ(k)
//! ```
//!
//! which removes every unreduced `a/b` whose value was already counted with
//! the smaller denominator `k`, and plain enumeration of all pairs. The
//! fractions themselves are enumerated in increasing order with the
//! next-term recurrence of the Farey sequence.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::arith::{gcd_unchecked, Convention};
use crate::error::{domain, Error, Result};
use crate::sieve::{totient_sieve, TotientTable, SIEVE_LIMIT};

/// Largest `D` accepted by [`count_by_enumeration`].
pub const ENUMERATION_LIMIT: u64 = 10_000;

/// Largest `D` for which [`farey_sequence`] materializes the whole list
/// (about 30 million fractions).
pub const FAREY_MATERIALIZE_LIMIT: u64 = 10_000;

/// Largest `D` accepted by [`farey_iter`].
pub const FAREY_STREAM_LIMIT: u64 = 100_000;

/// A fraction `numerator/denominator` in lowest terms with
/// `0 < numerator < denominator`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ReducedFraction {
    numerator: u64,
    denominator: u64,
}

impl ReducedFraction {
    pub fn new(numerator: u64, denominator: u64) -> Result<Self> {
        if numerator == 0 || numerator >= denominator {
            return Err(domain(format!(
                "{numerator}/{denominator} is not strictly between 0 and 1"
            )));
        }
        if gcd_unchecked(numerator, denominator) != 1 {
            return Err(domain(format!(
                "{numerator}/{denominator} is not in lowest terms"
            )));
        }
        Ok(ReducedFraction {
            numerator,
            denominator,
        })
    }

    pub fn numerator(&self) -> u64 {
        self.numerator
    }

    pub fn denominator(&self) -> u64 {
        self.denominator
    }
}

impl Ord for ReducedFraction {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.numerator as u128 * other.denominator as u128;
        let rhs = other.numerator as u128 * self.denominator as u128;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for ReducedFraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ReducedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

/// Fraction counts for one maximum denominator, from each counting route.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FareyCountReport {
    pub max_denominator: u64,
    /// `D(D-1)/2`, every `a/b` with `1 <= a < b <= D`.
    pub total_unreduced: u64,
    pub excluded: u64,
    pub count_by_exclusion: u64,
    pub count_by_totient_sum: u64,
    pub count_by_enumeration: Option<u64>,
}

impl FareyCountReport {
    /// Fills in the enumeration count. Fails past [`ENUMERATION_LIMIT`].
    pub fn with_enumeration(mut self) -> Result<Self> {
        self.count_by_enumeration = Some(count_by_enumeration(self.max_denominator)?);
        Ok(self)
    }

    /// True when every count that was computed agrees.
    pub fn is_consistent(&self) -> bool {
        self.total_unreduced.checked_sub(self.excluded) == Some(self.count_by_exclusion)
            && self.count_by_exclusion == self.count_by_totient_sum
            && self
                .count_by_enumeration
                .is_none_or(|c| c == self.count_by_exclusion)
    }
}

/// One term `(⌊D/k⌋ - 1) φ(k)` of the exclusion sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExclusionTerm {
    pub k: u64,
    pub quotient: u64,
    pub totient: u64,
    pub excluded: u64,
}

fn check_denominator(d: u64) -> Result<()> {
    if d < 2 {
        return Err(domain(format!(
            "maximum denominator must be at least 2, got {d}"
        )));
    }
    if d > SIEVE_LIMIT {
        return Err(Error::BoundExceeded {
            operation: "fraction count",
            value: d,
            limit: SIEVE_LIMIT,
        });
    }
    Ok(())
}

fn total_unreduced(d: u64) -> Result<u64> {
    d.checked_mul(d - 1)
        .map(|v| v / 2)
        .ok_or_else(|| Error::Overflow(format!("{d}({d}-1)/2 exceeds u64")))
}

/// `Σ_{k=2}^{D} φ(k)`.
pub fn count_by_totient_sum(d: u64) -> Result<u64> {
    check_denominator(d)?;
    totient_sieve(d, Convention::Euler)?.fraction_count(d)
}

/// Nonzero terms of the exclusion sum for `D`, read from `table`.
///
/// `k` runs from 2 while `⌊D/k⌋ >= 2`; later terms are all zero. `table`
/// must cover `1..=⌊D/2⌋`.
pub fn exclusion_terms(d: u64, table: &TotientTable) -> Result<Vec<ExclusionTerm>> {
    check_denominator(d)?;
    let mut terms = Vec::new();
    let mut k = 2u64;
    while d / k >= 2 {
        let quotient = d / k;
        let totient = table
            .get(k)
            .ok_or_else(|| domain(format!("totient table does not reach {k}")))?;
        let excluded = (quotient - 1)
            .checked_mul(totient)
            .ok_or_else(|| Error::Overflow(format!("exclusion term at k={k} exceeds u64")))?;
        terms.push(ExclusionTerm {
            k,
            quotient,
            totient,
            excluded,
        });
        k += 1;
    }
    Ok(terms)
}

/// Counts reduced fractions up to `D` by excluding the reducible ones from
/// `D(D-1)/2`, and cross-fills the totient-sum count.
pub fn count_by_exclusion(d: u64) -> Result<FareyCountReport> {
    check_denominator(d)?;
    let table = totient_sieve(d, Convention::Euler)?;
    let total_unreduced = total_unreduced(d)?;
    let excluded = exclusion_terms(d, &table)?
        .iter()
        .try_fold(0u64, |acc, t| acc.checked_add(t.excluded))
        .ok_or_else(|| Error::Overflow(format!("excluded count for D={d} exceeds u64")))?;
    let count_by_exclusion = total_unreduced
        .checked_sub(excluded)
        .ok_or_else(|| domain(format!("excluded count exceeds total for D={d}")))?;
    Ok(FareyCountReport {
        max_denominator: d,
        total_unreduced,
        excluded,
        count_by_exclusion,
        count_by_totient_sum: table.fraction_count(d)?,
        count_by_enumeration: None,
    })
}

/// Number of `a/b` with `1 <= a < b <= D` that are not in lowest terms.
pub fn count_reducible(d: u64) -> Result<u64> {
    let reduced = count_by_totient_sum(d)?;
    Ok(total_unreduced(d)? - reduced)
}

/// Counts coprime pairs `1 <= a < b <= D` one by one.
pub fn count_by_enumeration(d: u64) -> Result<u64> {
    if d < 2 {
        return Err(domain(format!(
            "maximum denominator must be at least 2, got {d}"
        )));
    }
    if d > ENUMERATION_LIMIT {
        return Err(Error::BoundExceeded {
            operation: "count_by_enumeration",
            value: d,
            limit: ENUMERATION_LIMIT,
        });
    }
    let mut count = 0u64;
    for b in 2..=d {
        for a in 1..b {
            if gcd_unchecked(a, b) == 1 {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Lazy Farey sequence of order `D` without the endpoints `0/1` and `1/1`.
#[derive(Debug, Clone)]
pub struct FareyIter {
    order: u64,
    prev: (u64, u64),
    cur: (u64, u64),
}

impl Iterator for FareyIter {
    type Item = ReducedFraction;

    fn next(&mut self) -> Option<ReducedFraction> {
        let (a, b) = self.prev;
        let (c, d) = self.cur;
        if c >= d {
            return None;
        }
        let k = (self.order + b) / d;
        self.prev = (c, d);
        self.cur = (k * c - a, k * d - b);
        Some(ReducedFraction {
            numerator: c,
            denominator: d,
        })
    }
}

pub fn farey_iter(d: u64) -> Result<FareyIter> {
    if d < 2 {
        return Err(domain(format!("order must be at least 2, got {d}")));
    }
    if d > FAREY_STREAM_LIMIT {
        return Err(Error::BoundExceeded {
            operation: "farey_iter",
            value: d,
            limit: FAREY_STREAM_LIMIT,
        });
    }
    Ok(FareyIter {
        order: d,
        prev: (0, 1),
        cur: (1, d),
    })
}

/// All reduced fractions in `(0, 1)` with denominator at most `D`, ascending.
pub fn farey_sequence(d: u64) -> Result<Vec<ReducedFraction>> {
    if d > FAREY_MATERIALIZE_LIMIT {
        return Err(Error::BoundExceeded {
            operation: "farey_sequence",
            value: d,
            limit: FAREY_MATERIALIZE_LIMIT,
        });
    }
    Ok(farey_iter(d)?.collect())
}
