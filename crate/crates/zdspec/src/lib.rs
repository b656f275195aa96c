//! Reports, verification sweeps and exports for the zero-divisor graphs of
//! `𝔽ₘⁿ`, on top of [`zdspec_core`].

pub use zdspec_core as core;

pub mod checks;
pub mod config;
pub mod export;
pub mod report;
pub mod sweep;

/// Process exit statuses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Success = 0,
    CheckFailure = 1,
    Usage = 2,
    ResourceCap = 3,
}

impl Status {
    pub fn code(self) -> u8 {
        self as u8
    }
}
