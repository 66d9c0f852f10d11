use std::ops::RangeInclusive;
use std::str::FromStr;

use serde::Serialize;

use crate::error::CliError;

/// Parameters shared by every seeded run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub cases: usize,
    pub dims: DimRange,
    /// Bound on `|numerator|` and on the denominator of generated rationals.
    pub magnitude: i64,
    pub probe_orders: Vec<u32>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 42,
            cases: 1000,
            dims: DimRange { lo: 0, hi: 8 },
            magnitude: 100,
            probe_orders: vec![1, 2],
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.cases == 0 {
            return Err(CliError::Usage("--cases must be positive".into()));
        }
        if self.magnitude < 1 {
            return Err(CliError::Usage("--magnitude must be at least 1".into()));
        }
        if self.probe_orders.is_empty() || self.probe_orders.contains(&0) {
            return Err(CliError::Usage("--orders must be a nonempty list of positive integers".into()));
        }
        Ok(())
    }
}

/// Inclusive dimension range written `LO..HI` (or a single `N`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DimRange {
    pub lo: usize,
    pub hi: usize,
}

impl DimRange {
    pub fn range(self) -> RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

impl FromStr for DimRange {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let bad = || CliError::Usage(format!("invalid dimension range {s:?}, expected LO..HI"));
        let (lo, hi) = match s.split_once("..") {
            Some((lo, hi)) => (lo, hi.strip_prefix('=').unwrap_or(hi)),
            None => (s, s),
        };
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        Ok(DimRange { lo, hi })
    }
}

/// Parses `1,2` into probe orders.
pub fn parse_orders(s: &str) -> Result<Vec<u32>, CliError> {
    s.split(',')
        .map(|k| {
            k.trim()
                .parse::<u32>()
                .map_err(|_| CliError::Usage(format!("invalid probe order {k:?}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dim_ranges() {
        assert_eq!("0..8".parse::<DimRange>().unwrap(), DimRange { lo: 0, hi: 8 });
        assert_eq!("2..=3".parse::<DimRange>().unwrap(), DimRange { lo: 2, hi: 3 });
        assert_eq!("4".parse::<DimRange>().unwrap(), DimRange { lo: 4, hi: 4 });
        assert!("5..2".parse::<DimRange>().is_err());
        assert!("-1..2".parse::<DimRange>().is_err());
    }

    #[test]
    fn validation() {
        assert!(RunConfig::default().validate().is_ok());
        let c = RunConfig { magnitude: 0, ..RunConfig::default() };
        assert!(c.validate().is_err());
        let c = RunConfig { probe_orders: vec![0], ..RunConfig::default() };
        assert!(c.validate().is_err());
        assert_eq!(parse_orders("1, 2").unwrap(), vec![1, 2]);
        assert!(parse_orders("1,x").is_err());
    }
}
