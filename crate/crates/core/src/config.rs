//! Size limits shared by the homology engines.

use crate::error::{Error, Result};

/// Default cap on group orders accepted by the constructors.
pub const DEFAULT_ORDER_CAP: usize = 512;

/// Explicit size budgets. Computations that would exceed a budget fail with
/// [`Error::Budget`] instead of truncating.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Max dense entries of a single boundary matrix over F_p.
    pub fp_entries: u128,
    /// Max stored entries of an integral (or mod-p bar) boundary matrix.
    pub int_entries: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            fp_entries: 200_000_000,
            int_entries: 10_000_000,
        }
    }
}

impl Budget {
    /// Reads `PGPH_BUDGET`, either a single number applied to both budgets or
    /// `fp,int`.
    pub fn from_env() -> Budget {
        match std::env::var("PGPH_BUDGET") {
            Ok(s) => Budget::parse(&s).unwrap_or_default(),
            Err(_) => Budget::default(),
        }
    }

    pub fn parse(s: &str) -> Option<Budget> {
        let parse = |t: &str| t.trim().replace('_', "").parse::<f64>().ok().map(|v| v as u128);
        match s.split_once(',') {
            Some((a, b)) => Some(Budget {
                fp_entries: parse(a)?,
                int_entries: parse(b)?,
            }),
            None => {
                let v = parse(s)?;
                Some(Budget {
                    fp_entries: v,
                    int_entries: v,
                })
            }
        }
    }

    pub(crate) fn check_fp(&self, what: impl FnOnce() -> String, needed: u128) -> Result<()> {
        if needed > self.fp_entries {
            return Err(Error::Budget {
                what: what(),
                needed,
                budget: self.fp_entries,
            });
        }
        Ok(())
    }

    pub(crate) fn check_int(&self, what: impl FnOnce() -> String, needed: u128) -> Result<()> {
        if needed > self.int_entries {
            return Err(Error::Budget {
                what: what(),
                needed,
                budget: self.int_entries,
            });
        }
        Ok(())
    }
}
