//! Run configuration shared by the subcommands.

use std::fmt;
use std::str::FromStr;

use zdspec_core::spectra::{Limits, Tolerances};

/// Environment variable consulted for the default vertex cap.
pub const SIZE_CAP_ENV: &str = "ZDSPEC_SIZE_CAP";
/// Environment variable consulted for the default dense-spectrum cap.
pub const DENSE_CAP_ENV: &str = "ZDSPEC_DENSE_CAP";

/// Inclusive integer interval written `a..b`, or a single value `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntRange {
    pub lo: u64,
    pub hi: u64,
}

impl IntRange {
    pub fn single(v: u64) -> Self {
        IntRange { lo: v, hi: v }
    }

    pub fn iter(self) -> impl Iterator<Item = u64> {
        self.lo..=self.hi
    }
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| format!("`{t}` is not a non-negative integer"))
        };
        let range = match s.split_once("..") {
            Some((a, b)) => {
                let b = b.strip_prefix('=').unwrap_or(b);
                IntRange {
                    lo: parse(a)?,
                    hi: parse(b)?,
                }
            }
            None => IntRange::single(parse(s)?),
        };
        if range.lo > range.hi {
            return Err(format!("range {s} is empty"));
        }
        if range.lo < 2 {
            return Err(format!("range {s} starts below 2"));
        }
        Ok(range)
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
    Dot,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub m: IntRange,
    pub n: IntRange,
    pub limits: Limits,
    pub tolerances: Tolerances,
    pub format: Format,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.m.lo < 2 || self.n.lo < 2 {
            return Err("m and n must be at least 2".into());
        }
        if self.n.hi > 63 {
            return Err("n is limited to 63".into());
        }
        if self.limits.size_cap == 0 || self.limits.dense_cap == 0 {
            return Err("caps must be positive".into());
        }
        if self.limits.dense_cap > self.limits.size_cap {
            return Err(format!(
                "dense cap {} exceeds size cap {}",
                self.limits.dense_cap, self.limits.size_cap
            ));
        }
        let t = &self.tolerances;
        for (name, v) in [
            ("grouping gap", t.grouping_gap),
            ("projection threshold", t.projection_threshold),
            ("eigen convergence", t.eigen_convergence),
            ("match tolerance", t.match_tolerance),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(format!("{name} must be a positive number, got {v}"));
            }
        }
        Ok(())
    }

    /// All `(m, n)` cells in row-major order.
    pub fn cells(&self) -> Vec<(u64, usize)> {
        self.m
            .iter()
            .flat_map(|m| self.n.iter().map(move |n| (m, n as usize)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_ranges() {
        assert_eq!("2..4".parse::<IntRange>().unwrap(), IntRange { lo: 2, hi: 4 });
        assert_eq!("3".parse::<IntRange>().unwrap(), IntRange::single(3));
        assert_eq!("2..=5".parse::<IntRange>().unwrap(), IntRange { lo: 2, hi: 5 });
        assert!("1..3".parse::<IntRange>().is_err());
        assert!("5..3".parse::<IntRange>().is_err());
        assert!("x..3".parse::<IntRange>().is_err());
        assert_eq!(IntRange { lo: 2, hi: 6 }.to_string(), "2..6");
    }

    #[test]
    fn rejects_inverted_caps() {
        let cfg = RunConfig {
            m: IntRange::single(2),
            n: IntRange::single(2),
            limits: Limits {
                size_cap: 10,
                dense_cap: 20,
            },
            tolerances: Tolerances::default(),
            format: Format::Text,
        };
        assert!(cfg.validate().is_err());
        assert_eq!(cfg.cells(), vec![(2, 2)]);
    }
}
