//! Arbitrary-precision integers with an inline `i64` fast path.
//!
//! Values that fit in an `i64` are stored inline and operated on with checked
//! machine arithmetic; anything larger is promoted to a [`BigInt`]. The
//! representation is normalized: a `Big` value never holds something that fits
//! in an `i64`, so derived equality and hashing are structural.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Int {
    Small(i64),
    Big(BigInt),
}

impl Int {
    pub const ZERO: Int = Int::Small(0);
    pub const ONE: Int = Int::Small(1);

    fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Big(b),
        }
    }

    fn to_big(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => b.clone(),
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        matches!(self, Int::Small(1))
    }

    pub fn signum(&self) -> i32 {
        match self {
            Int::Small(v) => v.signum() as i32,
            Int::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn abs(&self) -> Int {
        match self {
            Int::Small(v) => match v.checked_abs() {
                Some(a) => Int::Small(a),
                None => Int::from_big(BigInt::from(*v).abs()),
            },
            Int::Big(b) => Int::from_big(b.abs()),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Int::Small(v) => Some(*v),
            Int::Big(_) => None,
        }
    }

    /// Floor division; panics on a zero divisor.
    pub fn div_floor(&self, d: &Int) -> Int {
        match (self, d) {
            (Int::Small(a), Int::Small(b)) if !(*a == i64::MIN && *b == -1) => {
                Int::Small(Integer::div_floor(a, b))
            }
            _ => Int::from_big(Integer::div_floor(&self.to_big(), &d.to_big())),
        }
    }

    /// Remainder with the sign of the divisor (pairs with [`Int::div_floor`]).
    pub fn mod_floor(&self, d: &Int) -> Int {
        match (self, d) {
            (Int::Small(a), Int::Small(b)) if !(*a == i64::MIN && *b == -1) => {
                Int::Small(Integer::mod_floor(a, b))
            }
            _ => Int::from_big(Integer::mod_floor(&self.to_big(), &d.to_big())),
        }
    }

    /// Truncating division.
    pub fn div_trunc(&self, d: &Int) -> Int {
        match (self, d) {
            (Int::Small(a), Int::Small(b)) if !(*a == i64::MIN && *b == -1) => Int::Small(a / b),
            _ => Int::from_big(self.to_big() / d.to_big()),
        }
    }

    /// Exact division; `None` when `d` does not divide `self` (or `d == 0`).
    pub fn div_exact(&self, d: &Int) -> Option<Int> {
        if d.is_zero() {
            return if self.is_zero() { Some(Int::ZERO) } else { None };
        }
        if self.mod_floor(d).is_zero() {
            Some(self.div_trunc(d))
        } else {
            None
        }
    }

    pub fn divides(&self, n: &Int) -> bool {
        if self.is_zero() {
            n.is_zero()
        } else {
            n.mod_floor(self).is_zero()
        }
    }

    /// Non-negative gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Int) -> Int {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => {
                let (mut x, mut y) = (a.unsigned_abs(), b.unsigned_abs());
                while y != 0 {
                    let t = x % y;
                    x = y;
                    y = t;
                }
                match i64::try_from(x) {
                    Ok(v) => Int::Small(v),
                    Err(_) => Int::Big(BigInt::from(x)),
                }
            }
            _ => Int::from_big(self.to_big().gcd(&other.to_big())),
        }
    }

    /// Non-negative lcm; zero if either argument is zero.
    pub fn lcm(&self, other: &Int) -> Int {
        if self.is_zero() || other.is_zero() {
            return Int::ZERO;
        }
        let g = self.gcd(other);
        (&self.div_trunc(&g) * other).abs()
    }

    pub fn pow(&self, exp: u32) -> Int {
        let mut acc = Int::ONE;
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// `self += a * b`
    #[inline]
    pub fn add_mul(&mut self, a: &Int, b: &Int) {
        if let (Int::Small(s), Int::Small(x), Int::Small(y)) = (&*self, a, b) {
            if let Some(p) = x.checked_mul(*y) {
                if let Some(r) = s.checked_add(p) {
                    *self = Int::Small(r);
                    return;
                }
            }
        }
        *self = &*self + &(a * b);
    }

    /// `self -= a * b`
    #[inline]
    pub fn sub_mul(&mut self, a: &Int, b: &Int) {
        if let (Int::Small(s), Int::Small(x), Int::Small(y)) = (&*self, a, b) {
            if let Some(p) = x.checked_mul(*y) {
                if let Some(r) = s.checked_sub(p) {
                    *self = Int::Small(r);
                    return;
                }
            }
        }
        *self = &*self - &(a * b);
    }

    pub fn binomial(n: &Int, k: u32) -> Int {
        // n may be negative: generalized binomial n(n-1)...(n-k+1)/k!
        let mut num = Int::ONE;
        let mut den = Int::ONE;
        for i in 0..k {
            num = &num * &(n - &Int::from(i as i64));
            den = &den * &Int::from((i + 1) as i64);
        }
        num.div_exact(&den).expect("binomial coefficient is integral")
    }
}

impl Default for Int {
    fn default() -> Self {
        Int::ZERO
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int::Small(v)
    }
}

impl From<i32> for Int {
    fn from(v: i32) -> Self {
        Int::Small(v as i64)
    }
}

impl From<usize> for Int {
    fn from(v: usize) -> Self {
        match i64::try_from(v) {
            Ok(x) => Int::Small(x),
            Err(_) => Int::Big(BigInt::from(v)),
        }
    }
}

impl From<BigInt> for Int {
    fn from(b: BigInt) -> Self {
        Int::from_big(b)
    }
}

impl Zero for Int {
    fn zero() -> Self {
        Int::ZERO
    }
    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }
}

impl One for Int {
    fn one() -> Self {
        Int::ONE
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Int {
    type Err = num_bigint::ParseBigIntError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Ok(v) = s.parse::<i64>() {
            return Ok(Int::Small(v));
        }
        Ok(Int::from_big(s.parse::<BigInt>()?))
    }
}

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Int::Small(v) => s.serialize_i64(*v),
            Int::Big(b) => s.serialize_str(&b.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(i64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(Int::Small(v)),
            Repr::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident, $bigop:tt) => {
        impl<'a> $tr<&'a Int> for &'a Int {
            type Output = Int;
            #[inline]
            fn $method(self, rhs: &'a Int) -> Int {
                if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
                    if let Some(r) = a.$checked(*b) {
                        return Int::Small(r);
                    }
                }
                Int::from_big(self.to_big() $bigop rhs.to_big())
            }
        }
        impl $tr<Int> for Int {
            type Output = Int;
            #[inline]
            fn $method(self, rhs: Int) -> Int {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Int> for Int {
            type Output = Int;
            #[inline]
            fn $method(self, rhs: &'a Int) -> Int {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add, +);
binop!(Sub, sub, checked_sub, -);
binop!(Mul, mul, checked_mul, *);

impl AddAssign<&Int> for Int {
    #[inline]
    fn add_assign(&mut self, rhs: &Int) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Int> for Int {
    #[inline]
    fn sub_assign(&mut self, rhs: &Int) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Int> for Int {
    #[inline]
    fn mul_assign(&mut self, rhs: &Int) {
        *self = &*self * rhs;
    }
}

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        match self {
            Int::Small(v) => match v.checked_neg() {
                Some(n) => Int::Small(n),
                None => Int::from_big(-BigInt::from(*v)),
            },
            Int::Big(b) => Int::from_big(-b.clone()),
        }
    }
}

impl Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        -&self
    }
}

impl std::iter::Sum for Int {
    fn sum<I: Iterator<Item = Int>>(iter: I) -> Int {
        iter.fold(Int::ZERO, |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn promotes_on_overflow_and_demotes_back() {
        let big = Int::from(i64::MAX) + Int::from(1);
        assert!(matches!(big, Int::Big(_)));
        let back = &big - &Int::from(1);
        assert_eq!(back, Int::Small(i64::MAX));
        let sq = &big * &big;
        assert_eq!(sq.to_string(), "85070591730234615865843651857942052864");
    }

    #[test]
    fn floor_division_semantics() {
        let a = Int::from(-7);
        let b = Int::from(2);
        assert_eq!(a.div_floor(&b), Int::from(-4));
        assert_eq!(a.mod_floor(&b), Int::from(1));
        assert_eq!(Int::from(6).div_exact(&Int::from(4)), None);
        assert_eq!(Int::from(0).gcd(&Int::from(-6)), Int::from(6));
        assert_eq!(Int::from(4).lcm(&Int::from(6)), Int::from(12));
        assert_eq!(Int::from(0).lcm(&Int::from(6)), Int::from(0));
    }

    #[test]
    fn min_value_edge() {
        let m = Int::from(i64::MIN);
        assert_eq!(m.abs().to_string(), "9223372036854775808");
        assert_eq!((-&m).to_string(), "9223372036854775808");
        assert_eq!(m.div_floor(&Int::from(-1)).to_string(), "9223372036854775808");
    }

    #[test]
    fn binomials() {
        assert_eq!(Int::binomial(&Int::from(5), 2), Int::from(10));
        assert_eq!(Int::binomial(&Int::from(-1), 3), Int::from(-1));
        assert_eq!(Int::binomial(&Int::from(7), 0), Int::from(1));
    }
}
