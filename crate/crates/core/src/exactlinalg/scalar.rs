//! Exact scalars: arbitrary-precision rationals, lazily extended by a single
//! square root `√d` with `d` a squarefree integer. A value is `a + b·√d`; the
//! rational case is `b = 0`, `d = 0`. Mixing two distinct nonzero `d`s is a
//! programming error and panics; matrix-level entry points validate fields up
//! front and report [`Error::FieldMismatch`](crate::error::Error) instead.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
    d: BigInt,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::from_rational(BigRational::one())
    }

    pub fn from_rational(a: BigRational) -> Self {
        Scalar { a, b: BigRational::zero(), d: BigInt::zero() }
    }

    pub fn from_integer(n: i64) -> Self {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `p/q` with `q != 0`.
    pub fn from_ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Scalar::from_rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// `a + b√d`. Normalizes `b = 0` and folds square factors of `d` into `b`.
    pub fn quadratic(a: BigRational, b: BigRational, d: BigInt) -> Self {
        if b.is_zero() || d.is_zero() {
            return Scalar::from_rational(a);
        }
        let (s, core) = squarefree_core(&d);
        if core.is_one() {
            return Scalar::from_rational(a + b * BigRational::from_integer(s));
        }
        Scalar { a, b: b * BigRational::from_integer(s), d: core }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.b.is_zero() && self.a.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The rational part `a`; the whole value when rational.
    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.b
    }

    /// Squarefree discriminant tag; zero for rationals.
    pub fn discriminant(&self) -> &BigInt {
        &self.d
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn conjugate(&self) -> Self {
        Scalar { a: self.a.clone(), b: -self.b.clone(), d: self.d.clone() }
    }

    /// `a² − b²·d`, the product with the conjugate. Rational, and zero only
    /// for the zero scalar (d is squarefree, so √d is irrational).
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(self.d.clone())
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero scalar");
        if self.is_rational() {
            return Scalar::from_rational(self.a.recip());
        }
        let n = self.norm();
        assert!(!n.is_zero(), "non-invertible quadratic scalar (d not squarefree?)");
        let conj = self.conjugate();
        let inv_n = Scalar::from_rational(n.recip());
        &conj * &inv_n
    }

    /// True for a rational value strictly greater than zero.
    pub fn is_positive_rational(&self) -> bool {
        self.is_rational() && self.a.is_positive()
    }

    fn merged_d(&self, other: &Scalar) -> BigInt {
        if self.d.is_zero() {
            other.d.clone()
        } else if other.d.is_zero() || other.d == self.d {
            self.d.clone()
        } else {
            panic!("field mismatch: √{} vs √{}", self.d, other.d);
        }
    }

    /// Checks that `self` and `other` live in a common quadratic field.
    pub fn same_field(&self, other: &Scalar) -> bool {
        self.d.is_zero() || other.d.is_zero() || self.d == other.d
    }

    fn normalized(a: BigRational, b: BigRational, d: BigInt) -> Scalar {
        if b.is_zero() {
            Scalar::from_rational(a)
        } else {
            Scalar { a, b, d }
        }
    }
}

/// Exact square root of a rational: `sqrt_extend(c) = s·√d` with `s` rational
/// and `d` the squarefree core of `c`'s numerator times denominator. Negative
/// inputs produce a negative discriminant; perfect squares collapse to a
/// rational. Zero is rejected.
pub fn sqrt_extend(c: &BigRational) -> Result<Scalar> {
    if c.is_zero() {
        return Err(Error::InvalidArgument("sqrt of zero has no canonical field".into()));
    }
    let p = c.numer().clone();
    let q = c.denom().clone();
    // √(p/q) = √(pq)/q
    let (s, d) = squarefree_core(&(&p * &q));
    let coeff = BigRational::new(s, q);
    if d.is_one() {
        Ok(Scalar::from_rational(coeff))
    } else {
        Ok(Scalar { a: BigRational::zero(), b: coeff, d })
    }
}

/// Writes `m = s²·d` with `d` squarefree (carrying the sign of `m`).
pub fn squarefree_core(m: &BigInt) -> (BigInt, BigInt) {
    assert!(!m.is_zero(), "squarefree core of zero");
    let negative = m.is_negative();
    let mut rest = m.abs();
    let mut s = BigInt::one();
    let mut d = BigInt::one();
    let mut p = BigInt::from(2);
    // Trial-divide until p³ > rest; the remainder then has at most two prime
    // factors, so squarefreeness is decided by a perfect-square test.
    while &p * &p * &p <= rest {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            s *= p.pow(e / 2);
            if e % 2 == 1 {
                d *= &p;
            }
        }
        p += if p == BigInt::from(2) { BigInt::one() } else { BigInt::from(2) };
    }
    if !rest.is_one() {
        let r = rest.sqrt();
        if &r * &r == rest {
            s *= r;
        } else {
            d *= rest;
        }
    }
    if negative {
        d = -d;
    }
    (s, d)
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let d = self.merged_d(rhs);
        Scalar::normalized(&self.a + &rhs.a, &self.b + &rhs.b, d)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let d = self.merged_d(rhs);
        Scalar::normalized(&self.a - &rhs.a, &self.b - &rhs.b, d)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.b.is_zero() && rhs.b.is_zero() {
            return Scalar::from_rational(&self.a * &rhs.a);
        }
        let d = self.merged_d(rhs);
        let dr = BigRational::from_integer(d.clone());
        let a = &self.a * &rhs.a + &self.b * &rhs.b * dr;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Scalar::normalized(a, b, d)
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: -self.a.clone(), b: -self.b.clone(), d: self.d.clone() }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $trait::$method(&self, rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", fmt_rational(&self.a));
        }
        let root = if self.b.abs().is_one() {
            format!("√{}", self.d)
        } else {
            format!("{}√{}", fmt_rational(&self.b.abs()), self.d)
        };
        let signed_root = if self.b.is_negative() { format!("-{root}") } else { root };
        if self.a.is_zero() {
            write!(f, "{signed_root}")
        } else if self.b.is_negative() {
            write!(f, "{}{signed_root}", fmt_rational(&self.a))
        } else {
            write!(f, "{}+{signed_root}", fmt_rational(&self.a))
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    BigRational::from_str(s).map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let Some(root_at) = s.find('√') else {
            return Ok(Scalar::from_rational(parse_rational(s)?));
        };
        let d: BigInt = s[root_at + '√'.len_utf8()..]
            .parse()
            .map_err(|e| Error::Parse(format!("bad discriminant in {s:?}: {e}")))?;
        let head = &s[..root_at];
        // head is "", "-", "b", or "a+b"/"a-b" where the split sign is the
        // last +/- that follows a digit.
        let split = head
            .char_indices()
            .filter(|&(i, c)| {
                (c == '+' || c == '-')
                    && i > 0
                    && head[..i].chars().last().is_some_and(|p| p.is_ascii_digit())
            })
            .map(|(i, _)| i)
            .next_back();
        let (a, b) = match split {
            Some(i) => {
                let a = parse_rational(&head[..i])?;
                let tail = &head[i..];
                let b = if tail == "+" {
                    BigRational::one()
                } else if tail == "-" {
                    -BigRational::one()
                } else {
                    parse_rational(tail)?
                };
                (a, b)
            }
            None => {
                let b = if head.is_empty() {
                    BigRational::one()
                } else if head == "-" {
                    -BigRational::one()
                } else {
                    parse_rational(head)?
                };
                (BigRational::zero(), b)
            }
        };
        Ok(Scalar::quadratic(a, b, d))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_integer(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn squarefree_cores() {
        let cases = [(4, 2, 1), (18, 3, 2), (-12, 2, -3), (1, 1, 1), (7, 1, 7), (360, 6, 10)];
        for (m, s, d) in cases {
            let (cs, cd) = squarefree_core(&BigInt::from(m));
            assert_eq!((cs, cd), (BigInt::from(s), BigInt::from(d)), "core of {m}");
        }
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(sqrt_extend(&rat(4, 1)).unwrap(), Scalar::from_integer(2));
        let r = sqrt_extend(&rat(-3, 4)).unwrap();
        assert_eq!(r, Scalar::quadratic(BigRational::zero(), rat(1, 2), BigInt::from(-3)));
        let five = sqrt_extend(&rat(5, 1)).unwrap();
        assert_eq!(five.discriminant(), &BigInt::from(5));
        assert_eq!(&five * &five, Scalar::from_integer(5));
        assert!(sqrt_extend(&BigRational::zero()).is_err());
        // negative perfect square keeps d = -1
        let i2 = sqrt_extend(&rat(-4, 1)).unwrap();
        assert_eq!(&i2 * &i2, Scalar::from_integer(-4));
        assert_eq!(i2.discriminant(), &BigInt::from(-1));
    }

    #[test]
    fn quadratic_arithmetic() {
        let x = Scalar::quadratic(rat(1, 2), rat(3, 4), BigInt::from(5));
        let y = Scalar::quadratic(rat(-2, 1), rat(1, 3), BigInt::from(5));
        let sum = &x + &y;
        assert_eq!(sum, Scalar::quadratic(rat(-3, 2), rat(13, 12), BigInt::from(5)));
        let prod = &x * &y;
        // (1/2 + 3/4 √5)(-2 + 1/3 √5) = -1 + 5/4 + (1/6 - 3/2)√5
        assert_eq!(prod, Scalar::quadratic(rat(1, 4), rat(-4, 3), BigInt::from(5)));
        let inv = x.inv();
        assert!((&x * &inv).is_one());
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn mixing_fields_panics() {
        let x = Scalar::quadratic(rat(0, 1), rat(1, 1), BigInt::from(2));
        let y = Scalar::quadratic(rat(0, 1), rat(1, 1), BigInt::from(3));
        let _ = &x + &y;
    }

    #[test]
    fn display_and_parse() {
        let cases = [
            Scalar::from_integer(7),
            Scalar::from_ratio(-1, 2),
            Scalar::quadratic(rat(1, 2), rat(-3, 4), BigInt::from(-3)),
            Scalar::quadratic(BigRational::zero(), rat(1, 1), BigInt::from(5)),
            Scalar::quadratic(rat(2, 1), rat(-1, 1), BigInt::from(7)),
        ];
        for c in cases {
            let s = c.to_string();
            let back: Scalar = s.parse().unwrap();
            assert_eq!(back, c, "round-trip of {s}");
        }
        assert_eq!(Scalar::from_ratio(-1, 2).to_string(), "-1/2");
        assert_eq!(
            Scalar::quadratic(rat(1, 2), rat(-3, 4), BigInt::from(-3)).to_string(),
            "1/2-3/4√-3"
        );
    }
}
