//! Exact rational scalars.
//!
//! Values whose reduced numerator and denominator fit in an `i64` are kept
//! inline; everything else spills into a heap `BigRational`. The
//! representation is canonical (a value never lives in the big variant when
//! it fits the small one), so equality and hashing are structural.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Clone)]
enum Repr {
    /// Reduced, denominator strictly positive.
    Small(i64, i64),
    Big(BigRational),
}

/// An exact rational number, always reduced with a positive denominator.
#[derive(Clone)]
pub struct Rat(Repr);

/// Error from [`Rat::from_str`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRatError {
    #[error("empty rational literal")]
    Empty,
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("invalid rational literal {0:?}")]
    Invalid(String),
}

impl Rat {
    #[inline]
    pub fn zero() -> Self {
        Rat(Repr::Small(0, 1))
    }

    #[inline]
    pub fn one() -> Self {
        Rat(Repr::Small(1, 1))
    }

    #[inline]
    pub fn from_int(n: i64) -> Self {
        Rat(Repr::Small(n, 1))
    }

    /// `num / den`; panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_big(BigRational::from_integer(n))
    }

    pub fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rat(Repr::Small(n, d)),
            _ => Rat(Repr::Big(r)),
        }
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let g = num.gcd(&den);
        let (mut n, mut d) = if g > 1 {
            (num / g, den / g)
        } else {
            (num, den)
        };
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rat(Repr::Small(n, d)),
            _ => Rat(Repr::Big(BigRational::new_raw(
                BigInt::from(n),
                BigInt::from(d),
            ))),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(r) => r.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(r) => r.is_integer(),
        }
    }

    /// -1, 0 or 1.
    #[inline]
    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(n, _) => n.signum() as i32,
            Repr::Big(r) => {
                if r.is_positive() {
                    1
                } else if r.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    #[inline]
    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    #[inline]
    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Rat {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Rat {
        assert!(!self.is_zero(), "reciprocal of zero");
        match &self.0 {
            Repr::Small(n, d) => Self::from_i128(*d as i128, *n as i128),
            Repr::Big(r) => Self::from_big(r.recip()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small(n, d) => *n as f64 / *d as f64,
            Repr::Big(r) => r.to_f64().unwrap_or(f64::NAN),
        }
    }

    /// Largest integer not above `self`.
    pub fn floor(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, d) => BigInt::from(n.div_floor(d)),
            Repr::Big(r) => r.floor().to_integer(),
        }
    }

    /// Decimal rendering rounded half away from zero to `digits` places.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = num_traits::pow(BigInt::from(10), digits);
        let num = self.numer() * &scale;
        let den = self.denom();
        let neg = num.is_negative();
        let num = num.abs();
        let (q, r) = num.div_rem(&den);
        let q = if r * 2 >= den { q + 1 } else { q };
        let s = q.to_string();
        let s = if digits == 0 {
            s
        } else {
            let padded = format!("{s:0>width$}", width = digits + 1);
            let (int, frac) = padded.split_at(padded.len() - digits);
            format!("{int}.{frac}")
        };
        if neg && s.chars().any(|c| c != '0' && c != '.') {
            format!("-{s}")
        } else {
            s
        }
    }
}

impl Default for Rat {
    fn default() -> Self {
        Rat::zero()
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

impl From<i32> for Rat {
    fn from(n: i32) -> Self {
        Rat::from_int(n as i64)
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Self {
        Rat::from_bigint(n)
    }
}

impl PartialEq for Rat {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            (Repr::Big(x), Repr::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Rat {}

impl Hash for Rat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Repr::Big(r) => {
                1u8.hash(state);
                r.hash(state);
            }
        }
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = ParseRatError;

    /// Accepts `"p"`, `"p/q"` and plain decimals such as `"-0.25"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseRatError::Empty);
        }
        let invalid = || ParseRatError::Invalid(s.to_string());
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| invalid())?;
            let d: BigInt = d.trim().parse().map_err(|_| invalid())?;
            if d.is_zero() {
                return Err(ParseRatError::ZeroDenominator(s.to_string()));
            }
            return Ok(Rat::from_big(BigRational::new(n, d)));
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
                return Err(invalid());
            }
            let neg = int.trim_start().starts_with('-');
            let int_part: BigInt = match int.trim() {
                "" | "-" | "+" => BigInt::zero(),
                t => t.parse().map_err(|_| invalid())?,
            };
            let frac_part: BigInt = frac.parse().map_err(|_| invalid())?;
            let scale = num_traits::pow(BigInt::from(10), frac.len());
            let mag = int_part.abs() * &scale + frac_part;
            let num = if neg { -mag } else { mag };
            return Ok(Rat::from_big(BigRational::new(num, scale)));
        }
        let n: BigInt = s.parse().map_err(|_| invalid())?;
        Ok(Rat::from_bigint(n))
    }
}

fn add_impl(x: &Rat, y: &Rat) -> Rat {
    match (&x.0, &y.0) {
        (Repr::Small(a, b), Repr::Small(c, d)) => {
            if *b == 1 && *d == 1 {
                return match a.checked_add(*c) {
                    Some(s) => Rat(Repr::Small(s, 1)),
                    None => Rat::from_i128(*a as i128 + *c as i128, 1),
                };
            }
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            Rat::from_i128(a * d + c * b, b * d)
        }
        _ => Rat::from_big(x.to_big() + y.to_big()),
    }
}

fn mul_impl(x: &Rat, y: &Rat) -> Rat {
    match (&x.0, &y.0) {
        (Repr::Small(a, b), Repr::Small(c, d)) => {
            if *b == 1 && *d == 1 {
                return Rat::from_i128(*a as i128 * *c as i128, 1);
            }
            Rat::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
        }
        _ => Rat::from_big(x.to_big() * y.to_big()),
    }
}

fn neg_impl(x: &Rat) -> Rat {
    match &x.0 {
        Repr::Small(n, d) => match n.checked_neg() {
            Some(m) => Rat(Repr::Small(m, *d)),
            None => Rat::from_i128(-(*n as i128), *d as i128),
        },
        Repr::Big(r) => Rat::from_big(-r),
    }
}

fn sub_impl(x: &Rat, y: &Rat) -> Rat {
    add_impl(x, &neg_impl(y))
}

fn div_impl(x: &Rat, y: &Rat) -> Rat {
    mul_impl(x, &y.recip())
}

macro_rules! binop {
    ($trait:ident, $method:ident, $impl_fn:ident, $assign_trait:ident, $assign_method:ident) => {
        impl $trait<&Rat> for &Rat {
            type Output = Rat;
            #[inline]
            fn $method(self, rhs: &Rat) -> Rat {
                $impl_fn(self, rhs)
            }
        }
        impl $trait<Rat> for &Rat {
            type Output = Rat;
            #[inline]
            fn $method(self, rhs: Rat) -> Rat {
                $impl_fn(self, &rhs)
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            #[inline]
            fn $method(self, rhs: &Rat) -> Rat {
                $impl_fn(&self, rhs)
            }
        }
        impl $trait<Rat> for Rat {
            type Output = Rat;
            #[inline]
            fn $method(self, rhs: Rat) -> Rat {
                $impl_fn(&self, &rhs)
            }
        }
        impl $assign_trait<&Rat> for Rat {
            #[inline]
            fn $assign_method(&mut self, rhs: &Rat) {
                *self = $impl_fn(self, rhs);
            }
        }
        impl $assign_trait<Rat> for Rat {
            #[inline]
            fn $assign_method(&mut self, rhs: Rat) {
                *self = $impl_fn(self, &rhs);
            }
        }
    };
}

binop!(Add, add, add_impl, AddAssign, add_assign);
binop!(Sub, sub, sub_impl, SubAssign, sub_assign);
binop!(Mul, mul, mul_impl, MulAssign, mul_assign);
binop!(Div, div, div_impl, DivAssign, div_assign);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        neg_impl(&self)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        neg_impl(self)
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rat> for Rat {
    fn sum<I: Iterator<Item = &'a Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl Product for Rat {
    fn product<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::one(), |acc, x| acc * x)
    }
}

/// Shorthand for `Rat::new(n, d)`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_normalizes_sign() {
        let r = rat(6, -4);
        assert_eq!(r, rat(-3, 2));
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(rat(0, -7), Rat::zero());
    }

    #[test]
    fn spills_to_big_and_back() {
        let big = Rat::from_int(i64::MAX) + Rat::from_int(i64::MAX);
        assert!(matches!(big.0, Repr::Big(_)));
        let back = &big - Rat::from_int(i64::MAX);
        assert!(matches!(back.0, Repr::Small(..)));
        assert_eq!(back, Rat::from_int(i64::MAX));
        let tiny = rat(1, i64::MAX) * rat(1, i64::MAX);
        assert_eq!(tiny.clone() * Rat::from_int(i64::MAX), rat(1, i64::MAX));
        assert!(tiny.is_positive());
    }

    #[test]
    fn ordering_matches_floats_on_small_values() {
        let xs = [rat(-3, 2), rat(1, 3), rat(2, 7), Rat::zero(), rat(5, 1)];
        for a in &xs {
            for b in &xs {
                assert_eq!(a.cmp(b), a.to_f64().partial_cmp(&b.to_f64()).unwrap());
            }
        }
    }

    #[test]
    fn parses_literals() {
        assert_eq!("3/6".parse::<Rat>().unwrap(), rat(1, 2));
        assert_eq!("-4".parse::<Rat>().unwrap(), Rat::from_int(-4));
        assert_eq!("-0.25".parse::<Rat>().unwrap(), rat(-1, 4));
        assert!(matches!(
            "1/0".parse::<Rat>(),
            Err(ParseRatError::ZeroDenominator(_))
        ));
        assert!("x".parse::<Rat>().is_err());
        assert!("".parse::<Rat>().is_err());
    }

    #[test]
    fn decimal_rendering_rounds() {
        assert_eq!(rat(1, 3).to_decimal(4), "0.3333");
        assert_eq!(rat(2, 3).to_decimal(2), "0.67");
        assert_eq!(rat(-1, 8).to_decimal(2), "-0.13");
        assert_eq!(rat(7, 2).to_decimal(0), "4");
        assert_eq!(rat(-1, 1000).to_decimal(2), "0.00");
    }

    #[test]
    fn floor_handles_negatives() {
        assert_eq!(rat(-1, 2).floor(), BigInt::from(-1));
        assert_eq!(rat(7, 2).floor(), BigInt::from(3));
    }
}
