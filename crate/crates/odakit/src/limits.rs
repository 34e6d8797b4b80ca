use odakit_core::completion::DEFAULT_ANTICHAIN_LIMIT;
use odakit_core::oda::DEFAULT_ALGEBRA_LIMIT;
use odakit_core::poset::{DEFAULT_PRODUCT_LIMIT, DEFAULT_UPSET_LIMIT};

use crate::error::{CliError, Result};

pub const GUARD_VAR: &str = "ODAKIT_GUARD";

/// Enumeration ceilings. `ODAKIT_GUARD=N` replaces every one of them with `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub upsets: usize,
    pub algebra: usize,
    pub product: usize,
    pub antichain: usize,
    /// Steps of the isomorphism search.
    pub search: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            upsets: DEFAULT_UPSET_LIMIT,
            algebra: DEFAULT_ALGEBRA_LIMIT,
            product: DEFAULT_PRODUCT_LIMIT,
            antichain: DEFAULT_ANTICHAIN_LIMIT,
            search: 1 << 20,
        }
    }
}

impl Limits {
    pub fn uniform(n: usize) -> Self {
        Limits { upsets: n, algebra: n, product: n, antichain: n, search: n }
    }

    pub fn from_env() -> Result<Self> {
        match std::env::var(GUARD_VAR) {
            Ok(v) => v
                .trim()
                .parse()
                .map(Limits::uniform)
                .map_err(|_| CliError::input(format!("{GUARD_VAR} must be a non-negative integer, got `{v}`"))),
            Err(std::env::VarError::NotPresent) => Ok(Limits::default()),
            Err(e) => Err(CliError::input(format!("{GUARD_VAR}: {e}"))),
        }
    }
}
