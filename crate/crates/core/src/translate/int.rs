use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

/// Unbounded integer that stays on the machine word while it fits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Int {
    Small(i64),
    Big(BigInt),
}

impl Int {
    pub fn zero() -> Int {
        Int::Small(0)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    fn big(&self) -> BigInt {
        match self {
            Int::Small(n) => BigInt::from(*n),
            Int::Big(b) => b.clone(),
        }
    }

    fn norm(b: BigInt) -> Int {
        match b.to_i64() {
            Some(n) => Int::Small(n),
            None => Int::Big(b),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Int::Small(n) => *n < 0,
            Int::Big(b) => b.sign() == num_bigint::Sign::Minus,
        }
    }
}

impl From<i64> for Int {
    fn from(n: i64) -> Int {
        Int::Small(n)
    }
}

impl From<BigInt> for Int {
    fn from(b: BigInt) -> Int {
        Int::norm(b)
    }
}

impl std::str::FromStr for Int {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> Result<Int, Self::Err> {
        s.parse::<BigInt>().map(Int::norm)
    }
}

impl Add for &Int {
    type Output = Int;

    fn add(self, o: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if let Some(c) = a.checked_add(*b) {
                return Int::Small(c);
            }
        }
        Int::norm(self.big() + o.big())
    }
}

impl Sub for &Int {
    type Output = Int;

    fn sub(self, o: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if let Some(c) = a.checked_sub(*b) {
                return Int::Small(c);
            }
        }
        Int::norm(self.big() - o.big())
    }
}

impl Mul for &Int {
    type Output = Int;

    fn mul(self, o: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if let Some(c) = a.checked_mul(*b) {
                return Int::Small(c);
            }
        }
        Int::norm(self.big() * o.big())
    }
}

impl Neg for &Int {
    type Output = Int;

    fn neg(self) -> Int {
        &Int::zero() - self
    }
}

impl Ord for Int {
    fn cmp(&self, o: &Int) -> Ordering {
        match (self, o) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.big().cmp(&o.big()),
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, o: &Int) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(n) => write!(f, "{n}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn reference(a: i64, b: i64) -> BigInt {
        BigInt::from(a) + BigInt::from(b)
    }

    #[test]
    fn overflow_promotes() {
        let max = Int::from(i64::MAX);
        let sum = &max + &Int::from(1);
        assert!(matches!(sum, Int::Big(_)));
        assert_eq!(sum.to_string(), "9223372036854775808");
        assert_eq!(&sum - &Int::from(1), max);
        assert!(sum > max);
    }

    proptest! {
        #[test]
        fn matches_bigint(a in any::<i64>(), b in any::<i64>()) {
            let (x, y) = (Int::from(a), Int::from(b));
            prop_assert_eq!((&x + &y).to_string(), reference(a, b).to_string());
            prop_assert_eq!((&x - &y).to_string(), (BigInt::from(a) - BigInt::from(b)).to_string());
            prop_assert_eq!((&x * &y).to_string(), (BigInt::from(a) * BigInt::from(b)).to_string());
            prop_assert_eq!(x.cmp(&y), a.cmp(&b));
        }
    }
}
