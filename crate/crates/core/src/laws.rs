//! Algebraic laws as executable checks on concrete samples.
//!
//! Each law is a theorem; a `false` result (or error) on valid input is a bug.
//! The batch runner and the property tests both draw from these catalogues.

use crate::error::Result;
use crate::field::OrderedField;
use crate::hyperreal::Lc;
use crate::vector::Vector;

/// Two scalars and three vectors of one dimension.
#[derive(Debug, Clone)]
pub struct VectorSample<S> {
    pub a: S,
    pub b: S,
    pub u: Vector<S>,
    pub v: Vector<S>,
    pub w: Vector<S>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VectorLaw {
    AddAssociative,
    AddCommutative,
    AddIdentity,
    AddInverse,
    ScalarCompatible,
    ScalarIdentity,
    DistributeOverVectors,
    DistributeOverScalars,
    DotLinearFirst,
    DotCommutative,
    DotLinearSecond,
    DotLinearSecondViaCommutativity,
    DotPositiveDefinite,
    SubEquivalence,
    SubAnticommutative,
    MaxAbsChain,
}

impl VectorLaw {
    pub const ALL: [VectorLaw; 16] = [
        VectorLaw::AddAssociative,
        VectorLaw::AddCommutative,
        VectorLaw::AddIdentity,
        VectorLaw::AddInverse,
        VectorLaw::ScalarCompatible,
        VectorLaw::ScalarIdentity,
        VectorLaw::DistributeOverVectors,
        VectorLaw::DistributeOverScalars,
        VectorLaw::DotLinearFirst,
        VectorLaw::DotCommutative,
        VectorLaw::DotLinearSecond,
        VectorLaw::DotLinearSecondViaCommutativity,
        VectorLaw::DotPositiveDefinite,
        VectorLaw::SubEquivalence,
        VectorLaw::SubAnticommutative,
        VectorLaw::MaxAbsChain,
    ];

    pub fn name(self) -> &'static str {
        match self {
            VectorLaw::AddAssociative => "add-associative",
            VectorLaw::AddCommutative => "add-commutative",
            VectorLaw::AddIdentity => "add-identity",
            VectorLaw::AddInverse => "add-inverse",
            VectorLaw::ScalarCompatible => "scalar-compatible",
            VectorLaw::ScalarIdentity => "scalar-identity",
            VectorLaw::DistributeOverVectors => "distribute-over-vectors",
            VectorLaw::DistributeOverScalars => "distribute-over-scalars",
            VectorLaw::DotLinearFirst => "dot-linear-first",
            VectorLaw::DotCommutative => "dot-commutative",
            VectorLaw::DotLinearSecond => "dot-linear-second",
            VectorLaw::DotLinearSecondViaCommutativity => "dot-linear-second-via-commutativity",
            VectorLaw::DotPositiveDefinite => "dot-positive-definite",
            VectorLaw::SubEquivalence => "sub-equivalence",
            VectorLaw::SubAnticommutative => "sub-anticommutative",
            VectorLaw::MaxAbsChain => "max-abs-chain",
        }
    }

    pub fn check<S: OrderedField>(self, s: &VectorSample<S>) -> Result<bool> {
        let VectorSample { a, b, u, v, w } = s;
        let dim = u.dim();
        Ok(match self {
            VectorLaw::AddAssociative => u.add(v)?.add(w)? == u.add(&v.add(w)?)?,
            VectorLaw::AddCommutative => u.add(v)? == v.add(u)?,
            VectorLaw::AddIdentity => u.add(&Vector::zero(dim))? == *u,
            VectorLaw::AddInverse => u.add(&u.scale(&-S::one()))? == Vector::zero(dim),
            VectorLaw::ScalarCompatible => u.scale(b).scale(a) == u.scale(&(a.clone() * b.clone())),
            VectorLaw::ScalarIdentity => u.scale(&S::one()) == *u,
            VectorLaw::DistributeOverVectors => u.add(v)?.scale(a) == u.scale(a).add(&v.scale(a))?,
            VectorLaw::DistributeOverScalars => {
                u.scale(&(a.clone() + b.clone())) == u.scale(a).add(&u.scale(b))?
            }
            VectorLaw::DotLinearFirst => {
                u.scale(a).add(v)?.dot(w)? == a.clone() * u.dot(w)? + v.dot(w)?
            }
            VectorLaw::DotCommutative => u.dot(v)? == v.dot(u)?,
            VectorLaw::DotLinearSecond => u.dot(&v.scale(a))? == a.clone() * u.dot(v)?,
            VectorLaw::DotLinearSecondViaCommutativity => {
                // ⟨u,av⟩ = ⟨av,u⟩ = a⟨v,u⟩ = a⟨u,v⟩
                let av = v.scale(a);
                let chain = [
                    u.dot(&av)?,
                    av.dot(u)?,
                    a.clone() * v.dot(u)?,
                    a.clone() * u.dot(v)?,
                ];
                chain.windows(2).all(|p| p[0] == p[1])
            }
            VectorLaw::DotPositiveDefinite => {
                let uu = u.dot(u)?;
                uu >= S::zero() && (uu.is_zero() == u.is_zero())
            }
            VectorLaw::SubEquivalence => u.sub(v)? == u.sub_direct(v)?,
            VectorLaw::SubAnticommutative => u.sub(v)? == v.sub(u)?.scale(&-S::one()),
            VectorLaw::MaxAbsChain => {
                let m = u.max_abs();
                m.clone() * m.clone() <= u.norm_sq() && u.entries().iter().all(|x| x.abs() <= m)
            }
        })
    }
}

/// Three scalars.
#[derive(Debug, Clone)]
pub struct FieldSample<S> {
    pub x: S,
    pub y: S,
    pub z: S,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldLaw {
    AddAssociative,
    AddCommutative,
    AddIdentity,
    AddInverse,
    MulAssociative,
    MulCommutative,
    MulIdentity,
    Distributive,
    OrderTotal,
    OrderTransitive,
    OrderAddMonotone,
    OrderMulPositive,
}

impl FieldLaw {
    pub const ALL: [FieldLaw; 12] = [
        FieldLaw::AddAssociative,
        FieldLaw::AddCommutative,
        FieldLaw::AddIdentity,
        FieldLaw::AddInverse,
        FieldLaw::MulAssociative,
        FieldLaw::MulCommutative,
        FieldLaw::MulIdentity,
        FieldLaw::Distributive,
        FieldLaw::OrderTotal,
        FieldLaw::OrderTransitive,
        FieldLaw::OrderAddMonotone,
        FieldLaw::OrderMulPositive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FieldLaw::AddAssociative => "field-add-associative",
            FieldLaw::AddCommutative => "field-add-commutative",
            FieldLaw::AddIdentity => "field-add-identity",
            FieldLaw::AddInverse => "field-add-inverse",
            FieldLaw::MulAssociative => "field-mul-associative",
            FieldLaw::MulCommutative => "field-mul-commutative",
            FieldLaw::MulIdentity => "field-mul-identity",
            FieldLaw::Distributive => "field-distributive",
            FieldLaw::OrderTotal => "order-total",
            FieldLaw::OrderTransitive => "order-transitive",
            FieldLaw::OrderAddMonotone => "order-add-monotone",
            FieldLaw::OrderMulPositive => "order-mul-positive",
        }
    }

    pub fn check<S: OrderedField>(self, s: &FieldSample<S>) -> bool {
        let (x, y, z) = (s.x.clone(), s.y.clone(), s.z.clone());
        match self {
            FieldLaw::AddAssociative => (x.clone() + y.clone()) + z.clone() == x + (y + z),
            FieldLaw::AddCommutative => x.clone() + y.clone() == y + x,
            FieldLaw::AddIdentity => x.clone() + S::zero() == x,
            FieldLaw::AddInverse => (x.clone() + -x).is_zero(),
            FieldLaw::MulAssociative => (x.clone() * y.clone()) * z.clone() == x * (y * z),
            FieldLaw::MulCommutative => x.clone() * y.clone() == y * x,
            FieldLaw::MulIdentity => x.clone() * S::one() == x,
            FieldLaw::Distributive => {
                x.clone() * (y.clone() + z.clone()) == x.clone() * y + x * z
            }
            FieldLaw::OrderTotal => {
                let d = x.clone() - y.clone();
                [x < y, x == y, x > y].iter().filter(|b| **b).count() == 1
                    && (x < y) == (d < S::zero())
            }
            FieldLaw::OrderTransitive => !(x <= y && y <= z) || x <= z,
            FieldLaw::OrderAddMonotone => !(x <= y) || x + z.clone() <= y + z,
            FieldLaw::OrderMulPositive => {
                !(x >= S::zero() && y >= S::zero()) || x * y >= S::zero()
            }
        }
    }
}

/// Two hyperreals.
#[derive(Debug, Clone)]
pub struct HyperrealSample {
    pub x: Lc,
    pub y: Lc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HyperrealLaw {
    SmallClosedUnderAdd,
    SmallClosedUnderMul,
    SmallTimesLimitedIsSmall,
    StandardPartAdditive,
    StandardPartMultiplicative,
    SmallIffSquareSmall,
    ClassificationPartition,
}

impl HyperrealLaw {
    pub const ALL: [HyperrealLaw; 7] = [
        HyperrealLaw::SmallClosedUnderAdd,
        HyperrealLaw::SmallClosedUnderMul,
        HyperrealLaw::SmallTimesLimitedIsSmall,
        HyperrealLaw::StandardPartAdditive,
        HyperrealLaw::StandardPartMultiplicative,
        HyperrealLaw::SmallIffSquareSmall,
        HyperrealLaw::ClassificationPartition,
    ];

    pub fn name(self) -> &'static str {
        match self {
            HyperrealLaw::SmallClosedUnderAdd => "small-closed-under-add",
            HyperrealLaw::SmallClosedUnderMul => "small-closed-under-mul",
            HyperrealLaw::SmallTimesLimitedIsSmall => "small-times-limited-is-small",
            HyperrealLaw::StandardPartAdditive => "standard-part-additive",
            HyperrealLaw::StandardPartMultiplicative => "standard-part-multiplicative",
            HyperrealLaw::SmallIffSquareSmall => "nonnegative-small-iff-square-small",
            HyperrealLaw::ClassificationPartition => "classification-partition",
        }
    }

    /// Checks the law; samples outside its hypotheses pass vacuously.
    pub fn check(self, s: &HyperrealSample) -> Result<bool> {
        let (x, y) = (&s.x, &s.y);
        Ok(match self {
            HyperrealLaw::SmallClosedUnderAdd => {
                !(x.is_i_small() && y.is_i_small()) || (x + y).is_i_small()
            }
            HyperrealLaw::SmallClosedUnderMul => {
                !(x.is_i_small() && y.is_i_small()) || (x * y).is_i_small()
            }
            HyperrealLaw::SmallTimesLimitedIsSmall => {
                !(x.is_i_small() && y.is_i_limited()) || (x * y).is_i_small()
            }
            HyperrealLaw::StandardPartAdditive => {
                !(x.is_i_limited() && y.is_i_limited())
                    || (x + y).standard_part()? == &x.standard_part()? + &y.standard_part()?
            }
            HyperrealLaw::StandardPartMultiplicative => {
                !(x.is_i_limited() && y.is_i_limited())
                    || (x * y).standard_part()? == &x.standard_part()? * &y.standard_part()?
            }
            HyperrealLaw::SmallIffSquareSmall => {
                let nonneg = x.abs();
                nonneg.is_i_small() == (&nonneg * &nonneg).is_i_small()
            }
            HyperrealLaw::ClassificationPartition => {
                x.is_i_limited() != x.is_i_large()
                    && (!x.is_i_small() || x.is_i_limited())
                    && (x.is_i_small() == (x.is_i_limited() && x.standard_part()?.is_zero()))
            }
        })
    }
}

/// `x·inv(x) - 1` for the truncated inverse, and whether its valuation exceeds `terms`.
pub fn inverse_residual(x: &Lc, terms: u32) -> Result<(Lc, bool)> {
    let y = x.inv(terms)?;
    let residual = &(x * &y) - &Lc::from(1);
    let ok = residual.val().is_none_or(|v| v > i64::from(terms));
    Ok((residual, ok))
}

/// `x ≠ 0 ⟹ x·x⁻¹ = 1` over the rationals.
pub fn rat_mul_inverse(x: &crate::scalar::Rat) -> Result<bool> {
    if x.is_zero() {
        return Ok(true);
    }
    Ok((x * &x.recip()?) == crate::scalar::Rat::one())
}
