//! Exact rational scalars and the two surd comparisons the metric layer needs.
//!
//! Square roots never appear as values. Every norm or metric comparison is
//! rewritten into a rational comparison through [`sqrt_leq`] or
//! [`sqrt_sum_leq`]; [`approx_sqrt`] exists only for display and cross-checks.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational in lowest terms with a positive denominator.
///
/// Canonical form is enforced on every construction path, so `==` is
/// structural equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Rat> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::Domain("zero denominator"));
        }
        Ok(Rat(BigRational::new(numer.into(), denom)))
    }

    pub fn integer(n: impl Into<BigInt>) -> Rat {
        Rat(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self.0.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn checked_div(&self, rhs: &Rat) -> Result<Rat> {
        if rhs.is_zero() {
            return Err(Error::Domain("division by zero"));
        }
        Ok(Rat(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Rat> {
        Rat::one().checked_div(self)
    }

    pub fn square(&self) -> Rat {
        Rat(&self.0 * &self.0)
    }

    /// `2^exp` for any integer exponent.
    pub fn pow2(exp: i64) -> Rat {
        let mag = BigInt::one() << exp.unsigned_abs();
        if exp >= 0 {
            Rat::integer(mag)
        } else {
            Rat(BigRational::new(BigInt::one(), mag))
        }
    }

    /// Nearest `f64`, for display and approximate oracles only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::integer(n)
    }
}

impl From<i32> for Rat {
    fn from(n: i32) -> Rat {
        Rat::integer(n)
    }
}

impl From<BigRational> for Rat {
    fn from(r: BigRational) -> Rat {
        Rat(r)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0.$method(rhs.0))
            }
        }

        impl<'a> $trait<&'a Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Error returned when a rational literal cannot be parsed.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRatError(pub String);

impl FromStr for Rat {
    type Err = ParseRatError;

    /// Accepts `p`, `p/q` and exact decimals such as `-1.25`.
    fn from_str(s: &str) -> std::result::Result<Rat, ParseRatError> {
        let bad = || ParseRatError(s.to_string());
        let t = s.trim();
        if let Some((p, q)) = t.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            return Rat::new(p, q).map_err(|_| bad());
        }
        if let Some((int, frac)) = t.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let negative = int.starts_with('-');
            let int_part: BigInt = match int {
                "" | "-" | "+" => BigInt::zero(),
                _ => int.parse().map_err(|_| bad())?,
            };
            let frac_digits: BigInt = frac.parse().map_err(|_| bad())?;
            let scale = num_traits::pow(BigInt::from(10), frac.len());
            let mag = int_part.abs() * &scale + frac_digits;
            let numer = if negative { -mag } else { mag };
            return Rat::new(numer, scale).map_err(|_| bad());
        }
        let n: BigInt = t.parse().map_err(|_| bad())?;
        Ok(Rat::integer(n))
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Rat, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Int(i64),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Text(s) => s.parse().map_err(serde::de::Error::custom),
            Repr::Int(n) => Ok(Rat::from(n)),
        }
    }
}

/// Decides `√a ≤ b` without forming `√a`.
pub fn sqrt_leq(a: &Rat, b: &Rat) -> Result<bool> {
    if a.is_negative() {
        return Err(Error::Domain("square root of a negative rational"));
    }
    Ok(!b.is_negative() && *a <= b.square())
}

/// Decides `√c ≤ √a + √b` exactly.
pub fn sqrt_sum_leq(c: &Rat, a: &Rat, b: &Rat) -> Result<bool> {
    Ok(sqrt_sum_cmp(c, a, b)? != Ordering::Greater)
}

/// Three-way comparison of `√c` against `√a + √b`.
///
/// Squaring once gives `c - a - b` against `2√(ab)`. A negative left side is
/// settled immediately; otherwise both sides are nonnegative and squaring
/// again compares `(c - a - b)²` with `4ab`.
pub fn sqrt_sum_cmp(c: &Rat, a: &Rat, b: &Rat) -> Result<Ordering> {
    if a.is_negative() || b.is_negative() || c.is_negative() {
        return Err(Error::Domain("square root of a negative rational"));
    }
    let t = &(c - a) - b;
    if t.is_negative() {
        return Ok(Ordering::Less);
    }
    Ok(t.square().cmp(&(Rat::from(4) * (a * b))))
}

/// Returns `r ≥ 0` with `|r - √a| ≤ 2^-p`.
///
/// Computes `⌊√⌊a·4^(p+1)⌋⌋ / 2^(p+1)`; the two floors together lose less
/// than one unit at scale `2^(p+1)`.
pub fn approx_sqrt(a: &Rat, p: u32) -> Result<Rat> {
    if a.is_negative() {
        return Err(Error::Domain("square root of a negative rational"));
    }
    if p == 0 {
        return Err(Error::Domain("precision must be at least 1"));
    }
    let shift = 2 * (u64::from(p) + 1);
    let scaled: BigInt = (a.numer() << shift) / a.denom();
    let scaled = scaled.to_biguint().unwrap_or_else(BigUint::zero);
    let root = scaled.sqrt();
    Rat::new(BigInt::from(root), BigInt::one() << (u64::from(p) + 1))
}
