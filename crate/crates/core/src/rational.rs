use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::arith::gcd_unchecked;
use crate::error::{domain, Error, Result};

/// A nonnegative rational, always stored in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ExactRational {
    num: u64,
    den: u64,
}

impl ExactRational {
    pub const ZERO: ExactRational = ExactRational { num: 0, den: 1 };
    pub const ONE: ExactRational = ExactRational { num: 1, den: 1 };

    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(domain("denominator must be positive"));
        }
        let g = gcd_unchecked(num, den);
        Ok(ExactRational {
            num: num / g,
            den: den / g,
        })
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    /// Exact product, cross-reducing first so the result overflows only when
    /// the reduced product itself does not fit.
    pub fn checked_mul(self, rhs: ExactRational) -> Result<ExactRational> {
        let g1 = gcd_unchecked(self.num, rhs.den);
        let g2 = gcd_unchecked(rhs.num, self.den);
        let (g1, g2) = (g1.max(1), g2.max(1));
        let overflow = || Error::Overflow(format!("{self} * {rhs} exceeds u64"));
        let num = (self.num / g1)
            .checked_mul(rhs.num / g2)
            .ok_or_else(overflow)?;
        let den = (self.den / g2)
            .checked_mul(rhs.den / g1)
            .ok_or_else(overflow)?;
        ExactRational::new(num, den)
    }
}

impl Ord for ExactRational {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for ExactRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_on_construction() {
        let r = ExactRational::new(2160, 9450).unwrap();
        assert_eq!((r.numer(), r.denom()), (8, 35));
        assert_eq!(ExactRational::new(0, 7).unwrap(), ExactRational::ZERO);
        assert!(ExactRational::new(1, 0).is_err());
    }

    #[test]
    fn product_and_order() {
        let half = ExactRational::new(1, 2).unwrap();
        let two_thirds = ExactRational::new(2, 3).unwrap();
        assert_eq!(
            half.checked_mul(two_thirds).unwrap(),
            ExactRational::new(1, 3).unwrap()
        );
        assert!(half < two_thirds);
        assert_eq!(half.to_string(), "1/2");
        let big = ExactRational::new(u64::MAX, 1).unwrap();
        assert!(matches!(big.checked_mul(big), Err(Error::Overflow(_))));
        assert_eq!(
            big.checked_mul(ExactRational::new(1, u64::MAX).unwrap())
                .unwrap(),
            ExactRational::ONE
        );
    }
}
