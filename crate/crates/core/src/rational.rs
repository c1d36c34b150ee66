//! Exact rational scalars.
//!
//! A `Rational` is kept in lowest terms with a positive denominator. Values
//! whose numerator and denominator fit in an `i64` are stored inline and
//! combined with `i128` intermediates; anything larger falls back to
//! [`BigRational`]. The representation is canonical (a value that fits inline
//! is never stored as a big fraction), so derived equality and hashing are
//! exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// `num / den` with `den > 0` and `gcd(num, den) = 1`.
    Small(i64, i64),
    Big(BigRational),
}

impl Rational {
    /// `num / den`, reduced. Panics if `den` is zero.
    pub fn new(num: BigInt, den: BigInt) -> Self {
        Self::from_big(BigRational::new(num, den))
    }

    pub fn from_integer(value: BigInt) -> Self {
        Self::from_big(BigRational::from_integer(value))
    }

    fn from_big(value: BigRational) -> Self {
        match (value.numer().to_i64(), value.denom().to_i64()) {
            (Some(n), Some(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(value)),
        }
    }

    /// Reduces `num / den` computed in `i128` and stores it canonically.
    fn from_wide(num: i128, den: i128) -> Self {
        assert!(den != 0, "rational with zero denominator");
        if den == 1 {
            if let Ok(n) = i64::try_from(num) {
                return Rational(Repr::Small(n, 1));
            }
        }
        let g = match (u64::try_from(num.unsigned_abs()), u64::try_from(den.unsigned_abs())) {
            (Ok(a), Ok(b)) => a.gcd(&b) as i128,
            _ => num.gcd(&den),
        };
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(BigRational::new(n.into(), d.into()))),
        }
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw((*n).into(), (*d).into()),
            Repr::Big(b) => b.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => (*n).into(),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => (*d).into(),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    /// `1 / self`. Panics on zero.
    pub fn recip(&self) -> Self {
        match &self.0 {
            Repr::Small(n, d) => Self::from_wide(*d as i128, *n as i128),
            Repr::Big(b) => Self::from_big(b.recip()),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational(Repr::Small(value, 1))
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational(Repr::Small(0, 1))
    }

    fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational(Repr::Small(1, 1))
    }

    fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn add(x: &Rational, y: &Rational) -> Rational {
    match (&x.0, &y.0) {
        (Repr::Small(a, b), Repr::Small(c, d)) => {
            if b == d {
                Rational::from_wide(*a as i128 + *c as i128, *b as i128)
            } else {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Rational::from_wide(a * d + c * b, b * d)
            }
        }
        _ => Rational::from_big(x.to_big() + y.to_big()),
    }
}

fn mul(x: &Rational, y: &Rational) -> Rational {
    match (&x.0, &y.0) {
        (Repr::Small(a, b), Repr::Small(c, d)) => {
            Rational::from_wide(*a as i128 * *c as i128, *b as i128 * *d as i128)
        }
        _ => Rational::from_big(x.to_big() * y.to_big()),
    }
}

fn neg(x: &Rational) -> Rational {
    match &x.0 {
        Repr::Small(n, d) if *n != i64::MIN => Rational(Repr::Small(-n, *d)),
        _ => Rational::from_big(-x.to_big()),
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                $body(self, rhs)
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                $body(self, &rhs)
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                $body(&self, rhs)
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                $body(&self, &rhs)
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, |x: &Rational, y: &Rational| add(x, &neg(y)));
binop!(Mul, mul, mul);
binop!(Div, div, |x: &Rational, y: &Rational| mul(x, &y.recip()));

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        neg(&self)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        neg(self)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        *self = add(self, rhs);
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        *self = add(self, &neg(rhs));
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        *self = mul(self, rhs);
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        *self = add(self, &rhs);
    }
}

impl MulAssign for Rational {
    fn mul_assign(&mut self, rhs: Rational) {
        *self = mul(self, &rhs);
    }
}

/// `num / den` as a reduced rational. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::from_wide(num as i128, den as i128)
}

pub fn int(value: i64) -> Rational {
    Rational::from(value)
}

/// Parses `"p/q"` or `"p"` (optional sign, surrounding whitespace ignored).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational numerator `{num}`")))?;
    let den: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational denominator `{d}`")))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{text}`")));
    }
    Ok(Rational::new(num, den))
}

/// Canonical text: `p/q`, or `p` when `q = 1`.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

pub(crate) fn is_unit_magnitude(value: &Rational) -> bool {
    matches!(value.0, Repr::Small(1 | -1, 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_reduces() {
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rational(" -3 ").unwrap(), int(-3));
        assert_eq!(parse_rational("2/-4").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a").is_err());
    }

    #[test]
    fn canonical_form() {
        assert_eq!(format_rational(&rat(3, 2)), "3/2");
        assert_eq!(format_rational(&rat(4, 2)), "2");
        assert_eq!(format_rational(&rat(0, 5)), "0");
        assert_eq!(format_rational(&rat(-1, 3)), "-1/3");
        assert_eq!(rat(0, 7).denom(), BigInt::one());
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = int(i64::MAX);
        let sq = &big * &big;
        assert_eq!(sq.to_string(), "85070591730234615847396907784232501249");
        let back = &sq / &big;
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Small(..)));
        let parsed = parse_rational("85070591730234615847396907784232501249").unwrap();
        assert_eq!(parsed, sq);
        assert_eq!(-&int(i64::MIN), &int(i64::MAX) + &int(1));
        assert!(int(i64::MIN) < int(i64::MAX));
        assert!(&sq > &big);
    }

    #[test]
    fn agrees_with_big_rational() {
        let vals = [rat(3, 7), rat(-5, 2), int(0), int(1), rat(i64::MAX, 3), rat(-1, i64::MAX)];
        for a in &vals {
            for b in &vals {
                let (ba, bb) = (a.to_big(), b.to_big());
                assert_eq!((a + b).to_big(), &ba + &bb);
                assert_eq!((a - b).to_big(), &ba - &bb);
                assert_eq!((a * b).to_big(), &ba * &bb);
                if !b.is_zero() {
                    assert_eq!((a / b).to_big(), &ba / &bb);
                }
                assert_eq!(a.cmp(b), ba.cmp(&bb));
            }
        }
    }
}
