//! Exact verification kernel for ℝⁿ as an inner product space and metric
//! space.
//!
//! * [`scalar`]: rationals and exact surd comparisons.
//! * [`hyperreal`]: the Levi-Civita field, a computable model of infinitesimals.
//! * [`vector`]: vectors, dot product, squared norm and metric over either field.
//! * [`cauchy_schwarz`]: decisions, equality certificates, proof replay, metric axioms.
//! * [`continuity`]: expressions `ℝⁿ → ℝ` and infinitesimal continuity probes.
//! * [`laws`]: the algebraic laws as executable checks.
//! * [`gen`]: seeded sample generation.

pub mod cauchy_schwarz;
pub mod continuity;
pub mod error;
pub mod field;
pub mod gen;
pub mod hyperreal;
pub mod laws;
pub mod scalar;
pub mod vector;

pub use cauchy_schwarz::{CsCertificate, ReplayReport};
pub use continuity::{Builtin, Expr, Function, ProbeResult};
pub use error::{Error, Result};
pub use field::OrderedField;
pub use hyperreal::Lc;
pub use scalar::Rat;
pub use vector::Vector;
