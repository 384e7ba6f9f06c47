use crate::error::{Error, Result};

/// Resource limits for enumeration and complex construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of F_p-points enumerated in the odd part.
    pub points: u64,
    /// Maximum dimension of a single cochain space.
    pub cochains: u64,
}

pub const BUDGET_ENV: &str = "SUPERVARIETY_BUDGET";

impl Default for Budget {
    fn default() -> Self {
        Self {
            points: 10_000_000,
            cochains: 2_000_000,
        }
    }
}

impl Budget {
    /// Default budget with the point limit overridden by `SUPERVARIETY_BUDGET`.
    pub fn from_env() -> Result<Self> {
        let mut b = Self::default();
        if let Ok(raw) = std::env::var(BUDGET_ENV) {
            b.points = raw.trim().parse().map_err(|_| {
                Error::input(format!("{BUDGET_ENV} must be a decimal integer, got {raw:?}"))
            })?;
        }
        Ok(b)
    }

    pub(crate) fn check_cochains(&self, what: &str, dim: u64) -> Result<()> {
        if dim > self.cochains {
            return Err(Error::Budget(format!(
                "{what} has dimension {dim}, above the cochain budget {}",
                self.cochains
            )));
        }
        Ok(())
    }
}
