//! Exact Cauchy–Schwarz decisions over rational vectors, equality
//! certificates, step-by-step replay of the algebraic proof, and the metric
//! axioms for the Euclidean distance.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{sqrt_leq, sqrt_sum_cmp, Rat};
use crate::vector::{check_dims, metric_sq, Vector};

pub type RatVec = Vector<Rat>;

/// Witness for the outcome of Cauchy–Schwarz on a pair `(u, v)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CsCertificate {
    ZeroU,
    ZeroV,
    /// `u = witness · v`.
    Dependent { witness: Rat },
    /// `gap = ⟨u,u⟩⟨v,v⟩ - ⟨u,v⟩² > 0`.
    Strict { gap: Rat },
}

impl CsCertificate {
    /// True for every certificate that places the pair in the equality case.
    pub fn is_equality(&self) -> bool {
        !matches!(self, CsCertificate::Strict { .. })
    }

    /// A coefficient `a` with `u = a·v`, when the certificate yields one.
    pub fn witness(&self) -> Option<Rat> {
        match self {
            CsCertificate::ZeroU => Some(Rat::zero()),
            CsCertificate::Dependent { witness } => Some(witness.clone()),
            CsCertificate::ZeroV | CsCertificate::Strict { .. } => None,
        }
    }
}

/// `⟨u,u⟩⟨v,v⟩ - ⟨u,v⟩²`, which is never negative.
pub fn cs1_gap(u: &RatVec, v: &RatVec) -> Result<Rat> {
    let uv = u.dot(v)?;
    let gap = &(u.norm_sq() * v.norm_sq()) - &uv.square();
    if gap.is_negative() {
        return Err(Error::LogicFault(format!("negative Cauchy-Schwarz gap {gap}")));
    }
    Ok(gap)
}

/// Outcome of the norm form `|⟨u,v⟩| ≤ ‖u‖·‖v‖`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cs2Outcome {
    pub holds: bool,
    /// `|⟨u,v⟩| = ‖u‖·‖v‖`.
    pub tight: bool,
    /// `(‖u‖·‖v‖)² - ⟨u,v⟩²`.
    pub squared_margin: Rat,
}

/// Decides the norm form of Cauchy–Schwarz in the squared domain.
///
/// `‖u‖·‖v‖ = √(⟨u,u⟩⟨v,v⟩)`, so `|⟨u,v⟩| ≤ √P` is `⟨u,v⟩² ≤ P` and
/// tightness is `√P ≤ |⟨u,v⟩|`.
pub fn cs2(u: &RatVec, v: &RatVec) -> Result<Cs2Outcome> {
    let uv = u.dot(v)?;
    let product = u.norm_sq() * v.norm_sq();
    let holds = uv.square() <= product;
    if !holds {
        return Err(Error::LogicFault(format!(
            "|<u,v>| exceeds |u||v| for u = {u}, v = {v}"
        )));
    }
    let tight = sqrt_leq(&product, &uv.abs())?;
    Ok(Cs2Outcome {
        holds,
        tight,
        squared_margin: &product - &uv.square(),
    })
}

pub fn cs2_holds(u: &RatVec, v: &RatVec) -> Result<bool> {
    Ok(cs2(u, v)?.holds)
}

/// Places `(u, v)` in exactly one case of the equality characterization.
///
/// A zero `u` takes priority over a zero `v`. In the dependent case the
/// witness is `⟨u,v⟩/⟨v,v⟩` and `u = a·v` is verified before returning.
pub fn classify(u: &RatVec, v: &RatVec) -> Result<CsCertificate> {
    check_dims(u.dim(), v.dim())?;
    if u.is_zero() {
        return Ok(CsCertificate::ZeroU);
    }
    if v.is_zero() {
        return Ok(CsCertificate::ZeroV);
    }
    let gap = cs1_gap(u, v)?;
    if gap.is_positive() {
        return Ok(CsCertificate::Strict { gap });
    }
    let witness = u.dot(v)?.checked_div(&v.norm_sq())?;
    if v.scale(&witness) != *u {
        return Err(Error::LogicFault(format!(
            "zero gap without dependence for u = {u}, v = {v}"
        )));
    }
    Ok(CsCertificate::Dependent { witness })
}

/// Witness from the first nonzero entry of `v`: `uᵢ / vᵢ`.
///
/// Independent of [`classify`]; meaningful only when `u` is a multiple of `v`.
pub fn first_ratio_witness(u: &RatVec, v: &RatVec) -> Result<Option<Rat>> {
    check_dims(u.dim(), v.dim())?;
    let Some(i) = v.entries().iter().position(|x| !x.is_zero()) else {
        return Ok(None);
    };
    Ok(Some(u.entries()[i].checked_div(&v.entries()[i])?))
}

/// Re-derives the facts claimed by `cert` from `u` and `v` alone.
pub fn verify_certificate(u: &RatVec, v: &RatVec, cert: &CsCertificate) -> Result<bool> {
    check_dims(u.dim(), v.dim())?;
    Ok(match cert {
        CsCertificate::ZeroU => u.is_zero(),
        CsCertificate::ZeroV => v.is_zero(),
        CsCertificate::Dependent { witness } => v.scale(witness) == *u,
        CsCertificate::Strict { gap } => {
            let uv = u.dot(v)?;
            let actual = &(u.norm_sq() * v.norm_sq()) - &uv.square();
            gap.is_positive() && *gap == actual
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Eq,
    Le,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StepValue {
    Scalar(Rat),
    Vector(RatVec),
}

impl StepValue {
    fn relate(&self, relation: Relation, other: &StepValue) -> bool {
        match (self, other, relation) {
            (StepValue::Scalar(a), StepValue::Scalar(b), Relation::Le) => a <= b,
            (a, b, Relation::Eq) => a == b,
            _ => false,
        }
    }
}

impl std::fmt::Display for StepValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StepValue::Scalar(r) => write!(f, "{r}"),
            StepValue::Vector(v) => write!(f, "{v}"),
        }
    }
}

/// One identity or inequality in the replayed chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayStep {
    pub name: String,
    pub lhs: StepValue,
    pub rhs: StepValue,
    pub relation: Relation,
    pub holds: bool,
}

impl ReplayStep {
    fn new(name: &str, lhs: StepValue, relation: Relation, rhs: StepValue) -> ReplayStep {
        let holds = lhs.relate(relation, &rhs);
        ReplayStep {
            name: name.to_string(),
            lhs,
            rhs,
            relation,
            holds,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReplayBranch {
    /// `v ≠ 0`: substitute `a = ⟨u,v⟩/⟨v,v⟩`.
    Projection,
    /// `v = 0`: both sides vanish.
    ZeroV,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayReport {
    pub branch: ReplayBranch,
    /// `⟨u,v⟩/⟨v,v⟩` on the projection branch.
    pub coefficient: Option<Rat>,
    pub steps: Vec<ReplayStep>,
}

impl ReplayReport {
    pub fn all_hold(&self) -> bool {
        self.steps.iter().all(|s| s.holds)
    }

    pub fn step(&self, name: &str) -> Option<&ReplayStep> {
        self.steps.iter().find(|s| s.name == name)
    }
}

pub const STEP_EXPANSION: &str = "expansion";
pub const STEP_PROJECTION_NONNEG: &str = "projection-nonnegative";
pub const STEP_PROJECTION_CLOSED_FORM: &str = "projection-closed-form";
pub const STEP_CS1: &str = "cs1";
pub const STEP_DEPENDENCE: &str = "equality-dependence";
pub const STEP_TRIVIAL: &str = "zero-v";

/// Replays the chain from the bilinear expansion of `‖u - v‖²` to
/// `⟨u,v⟩² ≤ ⟨u,u⟩⟨v,v⟩`, recording each step's values.
///
/// On the projection branch the residual `‖u - a·v‖²` is checked against
/// `⟨u,u⟩ - ⟨u,v⟩²/⟨v,v⟩`. When the final inequality is tight the chain
/// runs backwards to `u = a·v`.
pub fn replay_proof(u: &RatVec, v: &RatVec) -> Result<ReplayReport> {
    let uu = u.norm_sq();
    let uv = u.dot(v)?;
    let vv = v.norm_sq();
    let scalar = StepValue::Scalar;

    let mut steps = vec![ReplayStep::new(
        STEP_EXPANSION,
        scalar(u.sub(v)?.norm_sq()),
        Relation::Eq,
        scalar(&(&uu - &(Rat::from(2) * uv.clone())) + &vv),
    )];

    if v.is_zero() {
        steps.push(ReplayStep::new(
            STEP_TRIVIAL,
            scalar(uv.square()),
            Relation::Le,
            scalar(&uu * &vv),
        ));
        return Ok(ReplayReport {
            branch: ReplayBranch::ZeroV,
            coefficient: None,
            steps,
        });
    }

    let a = uv.checked_div(&vv)?;
    let av = v.scale(&a);
    let residual = u.sub(&av)?.norm_sq();
    steps.push(ReplayStep::new(
        STEP_PROJECTION_NONNEG,
        scalar(Rat::zero()),
        Relation::Le,
        scalar(residual.clone()),
    ));
    steps.push(ReplayStep::new(
        STEP_PROJECTION_CLOSED_FORM,
        scalar(residual),
        Relation::Eq,
        scalar(&uu - &uv.square().checked_div(&vv)?),
    ));
    let cs1 = ReplayStep::new(STEP_CS1, scalar(uv.square()), Relation::Le, scalar(&uu * &vv));
    let tight = cs1.lhs == cs1.rhs;
    steps.push(cs1);
    if tight {
        steps.push(ReplayStep::new(
            STEP_DEPENDENCE,
            StepValue::Vector(u.clone()),
            Relation::Eq,
            StepValue::Vector(av),
        ));
    }
    Ok(ReplayReport {
        branch: ReplayBranch::Projection,
        coefficient: Some(a),
        steps,
    })
}

/// `d(x,y) ≤ d(x,z) + d(z,y)` decided exactly, with tightness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangleOutcome {
    pub holds: bool,
    pub tight: bool,
}

pub fn triangle(x: &RatVec, y: &RatVec, z: &RatVec) -> Result<TriangleOutcome> {
    check_dims(x.dim(), y.dim())?;
    check_dims(x.dim(), z.dim())?;
    let order = sqrt_sum_cmp(&metric_sq(x, y)?, &metric_sq(x, z)?, &metric_sq(z, y)?)?;
    if order == Ordering::Greater {
        return Err(Error::LogicFault(format!(
            "triangle inequality fails for x = {x}, y = {y}, z = {z}"
        )));
    }
    Ok(TriangleOutcome {
        holds: true,
        tight: order == Ordering::Equal,
    })
}

pub fn triangle_holds(x: &RatVec, y: &RatVec, z: &RatVec) -> Result<bool> {
    Ok(triangle(x, y, z)?.holds)
}

/// Outcome of checking the three metric axioms on one triple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MetricAxioms {
    pub commutative: bool,
    pub positive_definite: bool,
    pub triangle: bool,
    /// `x = y`, so positive definiteness was checked on its equality branch.
    pub identical: bool,
    pub triangle_tight: bool,
}

impl MetricAxioms {
    pub fn all_hold(&self) -> bool {
        self.commutative && self.positive_definite && self.triangle
    }
}

pub fn metric_axioms_report(x: &RatVec, y: &RatVec, z: &RatVec) -> Result<MetricAxioms> {
    let dxy = metric_sq(x, y)?;
    let dyx = metric_sq(y, x)?;
    let identical = x == y;
    let positive_definite = !dxy.is_negative() && (dxy.is_zero() == identical);
    let tri = triangle(x, y, z)?;
    Ok(MetricAxioms {
        commutative: dxy == dyx,
        positive_definite,
        triangle: tri.holds,
        identical,
        triangle_tight: tri.tight,
    })
}
