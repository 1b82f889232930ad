use core::fmt;

use alloc::string::ToString;

use super::rational::Rational;
use crate::error::Error;

/// Coefficient field: the rationals or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u32),
}

/// A field element. Entries of one matrix always share a [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(Rational),
    Residue(u32),
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a != 0 mod p.
    pow_mod(a % p, p - 2, p)
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut i = 2u64;
    while i * i <= p {
        if p % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

impl Field {
    /// The prime field of order `p`; rejects non-primes.
    pub fn prime(p: u32) -> Result<Self, Error> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(Rational::ZERO),
            Field::Prime(_) => Scalar::Residue(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(Rational::ONE),
            Field::Prime(_) => Scalar::Residue(1),
        }
    }

    /// Image of an integer.
    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(Rational::from_integer(n)),
            Field::Prime(p) => Scalar::Residue(n.rem_euclid(*p as i64) as u32),
        }
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (Field::Rational, Scalar::Rational(_)) => true,
            (Field::Prime(p), Scalar::Residue(r)) => r < p,
            _ => false,
        }
    }

    #[inline]
    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(((*x as u64 + *y as u64) % *p as u64) as u32)
            }
            (_, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            _ => panic!("scalars from different fields"),
        }
    }

    #[inline]
    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(((*x as u64 * *y as u64) % *p as u64) as u32)
            }
            (_, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            _ => panic!("scalars from different fields"),
        }
    }

    #[inline]
    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Prime(p), Scalar::Residue(x)) => Scalar::Residue((*p - *x) % *p),
            (_, Scalar::Rational(x)) => Scalar::Rational(-x),
            _ => panic!("scalars from different fields"),
        }
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        match (self, a) {
            (Field::Prime(_), Scalar::Residue(0)) => None,
            (Field::Prime(p), Scalar::Residue(x)) => {
                Some(Scalar::Residue(inv_mod(*x as u64, *p as u64) as u32))
            }
            (_, Scalar::Rational(x)) => x.recip().map(Scalar::Rational),
            _ => panic!("scalars from different fields"),
        }
    }

    /// Parses the string form used in JSON: `"n"`/`"n/d"` over the rationals,
    /// `"r"` with `0 <= r < p` over a prime field.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar, Error> {
        match self {
            Field::Rational => Ok(Scalar::Rational(s.parse()?)),
            Field::Prime(p) => {
                let r: u32 = s.parse().map_err(|_| Error::Parse(s.to_string()))?;
                if s.starts_with('+') || (s.len() > 1 && s.starts_with('0')) || r >= *p {
                    return Err(Error::Parse(s.to_string()));
                }
                Ok(Scalar::Residue(r))
            }
        }
    }

    /// Maps a rational into this field; `None` if its denominator is not invertible.
    pub fn from_rational(&self, r: &Rational) -> Option<Scalar> {
        match self {
            Field::Rational => Some(Scalar::Rational(r.clone())),
            Field::Prime(p) => r.reduce_mod(*p).map(Scalar::Residue),
        }
    }
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue(r) => *r == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue(r) => *r == 1,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => fmt::Display::fmt(r, f),
            Scalar::Residue(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => f.write_str("Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_check() {
        assert!(Field::prime(2).is_ok());
        assert!(Field::prime(7919).is_ok());
        assert!(matches!(Field::prime(1), Err(Error::NotPrime(1))));
        assert!(matches!(Field::prime(9), Err(Error::NotPrime(9))));
    }

    #[test]
    fn residue_arithmetic() {
        let f = Field::Prime(7);
        let a = f.from_i64(-3);
        assert_eq!(a, Scalar::Residue(4));
        assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
        assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
        assert_eq!(f.inv(&f.zero()), None);
    }

    #[test]
    fn scalar_strings() {
        let f = Field::Prime(5);
        assert_eq!(f.parse_scalar("4").unwrap(), Scalar::Residue(4));
        assert!(f.parse_scalar("5").is_err());
        assert!(f.parse_scalar("-1").is_err());
        assert!(f.parse_scalar("04").is_err());
        let q = Field::Rational;
        assert_eq!(q.parse_scalar("-6/4").unwrap().to_string(), "-3/2");
    }
}
