//! ℝⁿ as a vector space and inner product space, generic over the scalar field.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::OrderedField;

/// Fixed-length vector over an ordered field. The length is the dimension.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector<S> {
    entries: Vec<S>,
}

impl<S: OrderedField> Vector<S> {
    pub fn new(entries: Vec<S>) -> Self {
        Vector { entries }
    }

    pub fn zero(dim: usize) -> Self {
        Vector {
            entries: vec![S::zero(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<S> {
        self.entries
    }

    pub fn get(&self, i: usize) -> Option<&S> {
        self.entries.get(i)
    }

    /// Applies `f` to each entry.
    pub fn map<T: OrderedField>(&self, f: impl Fn(&S) -> T) -> Vector<T> {
        Vector::new(self.entries.iter().map(f).collect())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Result<Self> {
        check_dims(self.dim(), other.dim())?;
        Ok(Vector::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        ))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn scale(&self, a: &S) -> Self {
        self.map(|x| a.clone() * x.clone())
    }

    /// `u - v` defined as `u + (-1)·v`.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-S::one()))
    }

    /// Componentwise `u - v`; extensionally equal to [`Vector::sub`].
    pub fn sub_direct(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    /// True iff every entry is zero. The empty vector is zero.
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(S::is_zero)
    }

    pub fn dot(&self, other: &Self) -> Result<S> {
        check_dims(self.dim(), other.dim())?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
    }

    pub fn norm_sq(&self) -> S {
        self.entries
            .iter()
            .fold(S::zero(), |acc, a| acc + a.clone() * a.clone())
    }

    /// Largest absolute entry, 0 for the empty vector.
    pub fn max_abs(&self) -> S {
        self.entries
            .iter()
            .map(S::abs)
            .max()
            .unwrap_or_else(S::zero)
    }
}

/// Squared Euclidean distance `‖x - y‖²`.
pub fn metric_sq<S: OrderedField>(x: &Vector<S>, y: &Vector<S>) -> Result<S> {
    Ok(x.sub(y)?.norm_sq())
}

pub(crate) fn check_dims(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left, right })
    }
}

impl<S> From<Vec<S>> for Vector<S> {
    fn from(entries: Vec<S>) -> Self {
        Vector { entries }
    }
}

impl<S: fmt::Display> fmt::Display for Vector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

impl<S: fmt::Debug> fmt::Debug for Vector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.entries).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperreal::Lc;
    use crate::scalar::Rat;

    fn v(xs: &[&str]) -> Vector<Rat> {
        Vector::new(xs.iter().map(|s| s.parse().unwrap()).collect())
    }

    #[test]
    fn addition_and_scaling() {
        assert_eq!(v(&["1", "2"]).add(&v(&["3", "4"])).unwrap(), v(&["4", "6"]));
        let x = v(&["1/2", "-7", "3"]);
        assert_eq!(x.add(&Vector::zero(3)).unwrap(), x);
        assert_eq!(
            v(&["1"]).add(&v(&["1", "2"])),
            Err(Error::DimensionMismatch { left: 1, right: 2 })
        );
        assert_eq!(x.scale(&Rat::one()), x);
        assert_eq!(x.scale(&Rat::zero()), Vector::zero(3));
        assert_eq!(v(&["1/2", "3"]).scale(&Rat::from(2)), v(&["1", "6"]));
    }

    #[test]
    fn subtraction() {
        let x = v(&["1/2", "-7", "3"]);
        assert_eq!(x.sub(&x).unwrap(), Vector::zero(3));
        assert_eq!(v(&["3", "1"]).sub(&v(&["1", "2"])).unwrap(), v(&["2", "-1"]));
        assert_eq!(v(&["3", "1"]).sub_direct(&v(&["1", "2"])).unwrap(), v(&["2", "-1"]));
        assert!(x.sub(&v(&["1"])).is_err());
        assert!(x.sub_direct(&v(&["1"])).is_err());
    }

    #[test]
    fn zero_recognizer() {
        assert!(v(&["0", "0", "0"]).is_zero());
        assert!(!v(&["0", "1"]).is_zero());
        assert!(v(&[]).is_zero());
    }

    #[test]
    fn dot_and_norms() {
        assert_eq!(v(&["1", "2"]).dot(&v(&["3", "4"])).unwrap(), Rat::from(11));
        assert_eq!(v(&["1", "2"]).dot(&Vector::zero(2)).unwrap(), Rat::zero());
        assert_eq!(v(&[]).dot(&v(&[])).unwrap(), Rat::zero());
        assert!(v(&["1"]).dot(&v(&[])).is_err());
        assert_eq!(v(&["3", "4"]).norm_sq(), Rat::from(25));
        let x = v(&["1/3", "5"]);
        assert_eq!(metric_sq(&x, &x).unwrap(), Rat::zero());
        assert!(metric_sq(&x, &v(&["1"])).is_err());
        assert_eq!(v(&["1", "-5", "2"]).max_abs(), Rat::from(5));
        assert_eq!(v(&[]).max_abs(), Rat::zero());
    }

    #[test]
    fn hyperreal_entries() {
        let eps = Lc::epsilon();
        let x = Vector::new(vec![eps.clone(), Lc::from(2) * eps.clone()]);
        assert_eq!(x.norm_sq(), Lc::from(5) * (&eps * &eps));
        let y = Vector::new(vec![-Lc::omega(), eps.clone()]);
        assert_eq!(y.max_abs(), Lc::omega());
    }

    #[test]
    fn serializes_as_array() {
        let x = v(&["1/2", "-3"]);
        assert_eq!(serde_json::to_string(&x).unwrap(), r#"["1/2","-3"]"#);
    }
}
