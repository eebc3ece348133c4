//! Scalar rings: the integers, localizations of the integers at a finite
//! set of primes, and the rationals. All three carry the order inherited
//! from `Q`, so a scalar is nonnegative iff its numerator is.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact scalar: a reduced fraction with positive denominator.
pub type Scalar = BigRational;

/// The ordered scalar ring a matrix lives over.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingSpec {
    Integers,
    /// `Z[1/p : p in primes]`; the set is nonempty and every member is prime.
    LocalizedIntegers(BTreeSet<u64>),
    Rationals,
}

impl RingSpec {
    pub fn localized<I: IntoIterator<Item = u64>>(primes: I) -> Result<Self> {
        let primes: BTreeSet<u64> = primes.into_iter().collect();
        if primes.is_empty() {
            return Err(Error::InvalidRing(
                "localization needs at least one inverted prime".into(),
            ));
        }
        if let Some(p) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        Ok(RingSpec::LocalizedIntegers(primes))
    }

    pub fn inverted_primes(&self) -> Option<&BTreeSet<u64>> {
        match self {
            RingSpec::LocalizedIntegers(p) => Some(p),
            _ => None,
        }
    }

    /// Membership of a scalar in the ring.
    pub fn contains(&self, x: &Scalar) -> bool {
        match self {
            RingSpec::Integers => x.denom().is_one(),
            RingSpec::Rationals => true,
            RingSpec::LocalizedIntegers(primes) => is_smooth(x.denom(), primes),
        }
    }

    pub fn check(&self, x: &Scalar) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::NotInRing {
                value: x.to_string(),
                ring: self.to_string(),
            })
        }
    }

    /// Whether every element of `self` is an element of `other`.
    pub fn is_subring_of(&self, other: &RingSpec) -> bool {
        match (self, other) {
            (_, RingSpec::Rationals) => true,
            (RingSpec::Integers, _) => true,
            (RingSpec::LocalizedIntegers(a), RingSpec::LocalizedIntegers(b)) => a.is_subset(b),
            _ => false,
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => f.write_str("Z"),
            RingSpec::Rationals => f.write_str("Q"),
            RingSpec::LocalizedIntegers(p) => {
                let list: Vec<String> = p.iter().map(|q| q.to_string()).collect();
                write!(f, "Z[1/{}]", list.join(","))
            }
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// True when every prime factor of `n` lies in `primes`.
pub fn is_smooth(n: &BigInt, primes: &BTreeSet<u64>) -> bool {
    let mut rest = n.abs();
    if rest.is_zero() {
        return false;
    }
    for &p in primes {
        let p = BigInt::from(p);
        while (&rest % &p).is_zero() {
            rest /= &p;
        }
    }
    rest.is_one()
}

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Least common multiple of the denominators (1 for an empty slice).
pub fn common_denominator<'a, I: IntoIterator<Item = &'a Scalar>>(xs: I) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Scale a rational vector to a primitive integer vector with the same
/// orientation. Returns `None` for the zero vector.
pub fn primitive_integer(v: &[Scalar]) -> Option<Vec<BigInt>> {
    let d = common_denominator(v);
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Scalar::from_integer(d.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return None;
    }
    Some(ints.into_iter().map(|x| x / &g).collect())
}

/// Divide an integer vector by the gcd of its entries (sign kept).
pub fn primitive_bigint(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
}

pub fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or(Error::Overflow("conversion to machine integer"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn localized_ring_validation() {
        assert!(RingSpec::localized([2, 3]).is_ok());
        assert!(RingSpec::localized([]).is_err());
        assert!(RingSpec::localized([4]).is_err());
    }

    #[test]
    fn membership_by_denominator() {
        let z2 = RingSpec::localized([2]).unwrap();
        assert!(z2.contains(&frac(3, 8)));
        assert!(!z2.contains(&frac(1, 3)));
        assert!(RingSpec::Integers.contains(&int(-7)));
        assert!(!RingSpec::Integers.contains(&frac(1, 2)));
        assert!(RingSpec::Rationals.contains(&frac(5, 9)));
    }

    #[test]
    fn primitive_vectors() {
        assert_eq!(
            primitive_integer(&[frac(1, 2), frac(1, 3)]).unwrap(),
            vec![BigInt::from(3), BigInt::from(2)]
        );
        assert_eq!(
            primitive_integer(&[int(-2), int(0)]).unwrap(),
            vec![BigInt::from(-1), BigInt::from(0)]
        );
        assert!(primitive_integer(&[int(0), int(0)]).is_none());
    }
}
