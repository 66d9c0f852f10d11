//! Seed-deterministic sample generation.
//!
//! The stream is ChaCha8 seeded through `SeedableRng::seed_from_u64`, and
//! every draw goes through `Rng::random_range` on inclusive integer ranges:
//!
//! * rational of magnitude `m`: numerator in `[-m, m]`, then denominator in `[1, m]`;
//! * vector of dimension `n`: `n` rationals in order;
//! * hyperreal: a term count in `[0, 3]`, then per term an exponent in the
//!   requested range followed by a rational coefficient (repeated exponents add).
//!
//! Changing any of these steps changes every seeded report.

use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hyperreal::Lc;
use crate::scalar::Rat;
use crate::vector::Vector;

pub const MAX_LC_TERMS: usize = 3;

#[derive(Debug, Clone)]
pub struct SampleGen {
    rng: ChaCha8Rng,
    magnitude: i64,
}

impl SampleGen {
    /// `magnitude` is clamped to at least 1.
    pub fn new(seed: u64, magnitude: i64) -> SampleGen {
        SampleGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            magnitude: magnitude.max(1),
        }
    }

    pub fn magnitude(&self) -> i64 {
        self.magnitude
    }

    pub fn int(&mut self, range: RangeInclusive<i64>) -> i64 {
        self.rng.random_range(range)
    }

    pub fn index(&mut self, range: RangeInclusive<usize>) -> usize {
        self.rng.random_range(range)
    }

    pub fn coin(&mut self) -> bool {
        self.int(0..=1) == 1
    }

    pub fn rat(&mut self) -> Rat {
        let m = self.magnitude;
        let numer = self.int(-m..=m);
        let denom = self.int(1..=m);
        Rat::new(numer, denom).expect("denominator is at least 1")
    }

    pub fn nonzero_rat(&mut self) -> Rat {
        loop {
            let r = self.rat();
            if !r.is_zero() {
                return r;
            }
        }
    }

    pub fn rat_vector(&mut self, dim: usize) -> Vector<Rat> {
        Vector::new((0..dim).map(|_| self.rat()).collect())
    }

    pub fn nonzero_rat_vector(&mut self, dim: usize) -> Vector<Rat> {
        assert!(dim > 0, "no nonzero vector of dimension 0");
        loop {
            let v = self.rat_vector(dim);
            if !v.is_zero() {
                return v;
            }
        }
    }

    pub fn lc(&mut self, exponents: RangeInclusive<i64>) -> Lc {
        let count = self.index(0..=MAX_LC_TERMS);
        let terms: Vec<(i64, Rat)> = (0..count)
            .map(|_| {
                let k = self.int(exponents.clone());
                (k, self.rat())
            })
            .collect();
        Lc::from_terms(terms)
    }

    pub fn lc_vector(&mut self, dim: usize, exponents: RangeInclusive<i64>) -> Vector<Lc> {
        Vector::new((0..dim).map(|_| self.lc(exponents.clone())).collect())
    }
}
