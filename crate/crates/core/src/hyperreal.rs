//! Levi-Civita hyperreals: finitely supported sums `Σ cₖ·εᵏ` over integer
//! exponents, with `ε` a fixed positive infinitesimal and `ε⁻¹` an infinite
//! element.
//!
//! Every classification (`i-small`, `i-large`, `i-limited`, standard part)
//! is a single read of the valuation. Nothing here recurses on one of those
//! predicates.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Rat;

/// Truncation order used when callers have no better choice.
pub const DEFAULT_INVERSE_TERMS: u32 = 16;

/// A Levi-Civita number. Stored coefficients are never zero; the empty map is 0.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Lc {
    terms: BTreeMap<i64, Rat>,
}

/// Minimal exponent and its coefficient, or `Infinite` for zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Valuation {
    Infinite,
    Finite { exponent: i64, leading: Rat },
}

impl Lc {
    pub fn zero() -> Lc {
        Lc::default()
    }

    /// `c·εᵏ`.
    pub fn monomial(coeff: Rat, exponent: i64) -> Lc {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exponent, coeff);
        }
        Lc { terms }
    }

    /// The infinitesimal `ε`.
    pub fn epsilon() -> Lc {
        Lc::monomial(Rat::one(), 1)
    }

    /// The infinite element `ε⁻¹`.
    pub fn omega() -> Lc {
        Lc::monomial(Rat::one(), -1)
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rat)>>(iter: I) -> Lc {
        let mut out = Lc::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }

    fn add_term(&mut self, exponent: i64, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&exponent) {
            Some(existing) => existing + coeff,
            None => coeff,
        };
        if !sum.is_zero() {
            self.terms.insert(exponent, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, exponent: i64) -> Rat {
        self.terms.get(&exponent).cloned().unwrap_or_default()
    }

    pub fn valuation(&self) -> Valuation {
        match self.terms.iter().next() {
            None => Valuation::Infinite,
            Some((k, c)) => Valuation::Finite {
                exponent: *k,
                leading: c.clone(),
            },
        }
    }

    /// Minimal exponent, `None` for zero.
    pub fn val(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// True when the value has support only at exponent 0 (or is zero).
    pub fn is_standard(&self) -> bool {
        self.terms.keys().all(|k| *k == 0)
    }

    /// Sign of the leading coefficient: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        self.terms.values().next().map_or(0, Rat::signum)
    }

    pub fn scale(&self, factor: &Rat) -> Lc {
        if factor.is_zero() {
            return Lc::zero();
        }
        Lc {
            terms: self.terms.iter().map(|(k, c)| (*k, c * factor)).collect(),
        }
    }

    /// Multiplies by `εᵏ`.
    pub fn shift(&self, by: i64) -> Lc {
        Lc {
            terms: self.terms.iter().map(|(k, c)| (k + by, c.clone())).collect(),
        }
    }

    pub fn is_i_small(&self) -> bool {
        self.val().is_none_or(|v| v >= 1)
    }

    pub fn is_i_large(&self) -> bool {
        self.val().is_some_and(|v| v <= -1)
    }

    pub fn is_i_limited(&self) -> bool {
        !self.is_i_large()
    }

    /// The `ε⁰` coefficient of a limited value.
    pub fn standard_part(&self) -> Result<Rat> {
        if self.is_i_large() {
            return Err(Error::Domain("standard part of an i-large hyperreal"));
        }
        Ok(self.coeff(0))
    }

    /// Truncated inverse with `terms` correction terms.
    ///
    /// Writing `x = c·εᵐ·(1 + δ)` with `val(δ) ≥ 1`, returns
    /// `c⁻¹·ε⁻ᵐ·Σ_{j=0..=terms} (-δ)ʲ`. Then `x·y = 1 + (-1)^terms·δ^(terms+1)`,
    /// whose residual has valuation above `terms`.
    pub fn inv(&self, terms: u32) -> Result<Lc> {
        let (exponent, leading) = match self.valuation() {
            Valuation::Infinite => return Err(Error::Domain("inverse of zero")),
            Valuation::Finite { exponent, leading } => (exponent, leading),
        };
        let leading_inv = leading.recip()?;
        let normalized = self.shift(-exponent).scale(&leading_inv);
        let neg_delta = Lc::from(Rat::one()) - normalized;
        let mut sum = Lc::from(Rat::one());
        if !neg_delta.is_zero() {
            let mut power = Lc::from(Rat::one());
            for _ in 0..terms {
                power = &power * &neg_delta;
                sum = sum + power.clone();
            }
        }
        Ok(sum.scale(&leading_inv).shift(-exponent))
    }
}

impl From<Rat> for Lc {
    fn from(r: Rat) -> Lc {
        Lc::monomial(r, 0)
    }
}

impl From<i64> for Lc {
    fn from(n: i64) -> Lc {
        Lc::from(Rat::from(n))
    }
}

impl Add for &Lc {
    type Output = Lc;
    fn add(self, rhs: &Lc) -> Lc {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Add for Lc {
    type Output = Lc;
    fn add(self, rhs: Lc) -> Lc {
        &self + &rhs
    }
}

impl Neg for &Lc {
    type Output = Lc;
    fn neg(self) -> Lc {
        Lc {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Neg for Lc {
    type Output = Lc;
    fn neg(self) -> Lc {
        -&self
    }
}

impl Sub for &Lc {
    type Output = Lc;
    fn sub(self, rhs: &Lc) -> Lc {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c);
        }
        out
    }
}

impl Sub for Lc {
    type Output = Lc;
    fn sub(self, rhs: Lc) -> Lc {
        &self - &rhs
    }
}

impl Mul for &Lc {
    type Output = Lc;
    fn mul(self, rhs: &Lc) -> Lc {
        let mut out = Lc::zero();
        for (i, a) in &self.terms {
            for (j, b) in &rhs.terms {
                out.add_term(i + j, a * b);
            }
        }
        out
    }
}

impl Mul for Lc {
    type Output = Lc;
    fn mul(self, rhs: Lc) -> Lc {
        &self * &rhs
    }
}

impl Ord for Lc {
    /// Leading-term order: `x < y` iff the leading coefficient of `y - x` is positive.
    fn cmp(&self, other: &Lc) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl PartialOrd for Lc {
    fn partial_cmp(&self, other: &Lc) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Lc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = mag == Rat::one();
            match *k {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "ε")?,
                1 => write!(f, "{mag}ε")?,
                _ if unit => write!(f, "ε^{k}")?,
                _ => write!(f, "{mag}ε^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Lc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lc({self})")
    }
}

impl Serialize for Lc {
    /// `[[exponent, "p/q"], ...]` sorted by exponent.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.terms.iter())
    }
}

impl<'de> Deserialize<'de> for Lc {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Lc, D::Error> {
        let pairs: Vec<(i64, Rat)> = Vec::deserialize(deserializer)?;
        Ok(Lc::from_terms(pairs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rat {
        s.parse().unwrap()
    }

    fn lc(pairs: &[(i64, &str)]) -> Lc {
        Lc::from_terms(pairs.iter().map(|(k, c)| (*k, q(c))))
    }

    #[test]
    fn arithmetic_examples() {
        let eps = Lc::epsilon();
        assert_eq!(&eps * &eps, Lc::monomial(Rat::one(), 2));
        assert_eq!(lc(&[(0, "3"), (1, "1")]) + lc(&[(0, "2"), (1, "-1")]), Lc::from(5));
        for s in ["1", "1/1000000", "7/3", "123456789/2"] {
            assert_eq!(eps.cmp(&Lc::from(q(s))), Ordering::Less);
        }
        assert!(Lc::omega() > Lc::from(q("1000000000")));
        assert!(-Lc::epsilon() < Lc::zero());
        assert_eq!(lc(&[(0, "0")]), Lc::zero());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Lc::from(2).inv(5).unwrap(), Lc::from(q("1/2")));
        assert_eq!(Lc::epsilon().inv(3).unwrap(), Lc::omega());
        let x = lc(&[(0, "1"), (1, "1")]);
        let y = x.inv(2).unwrap();
        assert_eq!(y, lc(&[(0, "1"), (1, "-1"), (2, "1")]));
        // (1 + ε)(1 - ε + ε²) = 1 + ε³
        assert_eq!(&(&x * &y) - &Lc::from(1), lc(&[(3, "1")]));
        assert_eq!(Lc::zero().inv(4), Err(Error::Domain("inverse of zero")));
    }

    #[test]
    fn classification_examples() {
        assert!(Lc::zero().is_i_small());
        assert!(Lc::omega().is_i_large());
        let x = lc(&[(0, "3"), (1, "1")]);
        assert!(!x.is_i_small());
        assert!(x.is_i_limited());
        assert_eq!(lc(&[(0, "3"), (1, "5"), (2, "-1")]).standard_part().unwrap(), q("3"));
        assert_eq!(Lc::epsilon().standard_part().unwrap(), Rat::zero());
        assert!(Lc::omega().standard_part().is_err());
        assert_eq!(Lc::zero().valuation(), Valuation::Infinite);
    }

    #[test]
    fn display_and_serde() {
        let x = lc(&[(-1, "2"), (0, "3"), (1, "-1"), (2, "1/2")]);
        assert_eq!(x.to_string(), "2ε^-1 + 3 - ε + 1/2ε^2");
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"[[-1,"2"],[0,"3"],[1,"-1"],[2,"1/2"]]"#);
        assert_eq!(serde_json::from_str::<Lc>(&json).unwrap(), x);
        assert_eq!(serde_json::from_str::<Lc>(r#"[[1,"1"],[1,"-1"]]"#).unwrap(), Lc::zero());
    }
}
