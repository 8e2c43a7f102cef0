use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ExactError;

/// The coefficient ring of every computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientRing {
    Rationals,
    Integers,
    /// Integers modulo a prime `p`.
    ModPrime(u64),
}

impl CoefficientRing {
    /// Checked constructor for `ℤ/p`.
    pub fn mod_prime(p: u64) -> Result<Self, ExactError> {
        if is_prime(p) {
            Ok(CoefficientRing::ModPrime(p))
        } else {
            Err(ExactError::NotPrime(p))
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, CoefficientRing::Integers)
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            CoefficientRing::ModPrime(p) => *p,
            _ => 0,
        }
    }

    pub fn two_is_invertible(&self) -> bool {
        match self {
            CoefficientRing::Rationals => true,
            CoefficientRing::Integers => false,
            CoefficientRing::ModPrime(p) => *p != 2,
        }
    }

    /// Brings a rational number into the canonical form used for this ring:
    /// integers for `ℤ`, representatives in `[0, p)` for `ℤ/p`.
    ///
    /// Fails if the value does not live in the ring (a proper fraction over
    /// `ℤ`, or a denominator divisible by `p`).
    pub fn try_normalize(&self, x: &BigRational) -> Result<BigRational, ExactError> {
        match self {
            CoefficientRing::Rationals => Ok(x.clone()),
            CoefficientRing::Integers => {
                if x.is_integer() {
                    Ok(x.clone())
                } else {
                    Err(ExactError::NotInRing(x.to_string(), *self))
                }
            }
            CoefficientRing::ModPrime(p) => {
                let p = BigInt::from(*p);
                let num = x.numer().mod_floor(&p);
                let den = x.denom().mod_floor(&p);
                if den.is_zero() {
                    return Err(ExactError::NotInRing(x.to_string(), *self));
                }
                let inv = mod_inverse(&den, &p).expect("nonzero residue modulo a prime");
                Ok(BigRational::from_integer((num * inv).mod_floor(&p)))
            }
        }
    }

    /// Like [`try_normalize`](Self::try_normalize) but panics on values
    /// outside the ring. Used on values produced by integral formulas.
    pub fn normalize(&self, x: &BigRational) -> BigRational {
        self.try_normalize(x).unwrap_or_else(|e| panic!("scalar outside coefficient ring: {e}"))
    }

    pub fn from_int(&self, x: impl Into<BigInt>) -> BigRational {
        self.normalize(&BigRational::from_integer(x.into()))
    }

    /// `1/2` in the ring, if it exists.
    pub fn half(&self) -> Option<BigRational> {
        if !self.two_is_invertible() {
            return None;
        }
        Some(self.normalize(&BigRational::new(BigInt::one(), BigInt::from(2))))
    }

    pub fn symbol(&self) -> String {
        match self {
            CoefficientRing::Rationals => "Q".to_string(),
            CoefficientRing::Integers => "Z".to_string(),
            CoefficientRing::ModPrime(p) => format!("F{p}"),
        }
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Rationals => write!(f, "Q"),
            CoefficientRing::Integers => write!(f, "Z"),
            CoefficientRing::ModPrime(p) => write!(f, "Z/{p}"),
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

pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.abs().is_one() {
        Some((e.x * e.gcd.signum()).mod_floor(m))
    } else {
        None
    }
}
