//! Exact linear algebra over the two-branch algebra `k((t)) × k((s))`.
//!
//! Submodules are stored exactly (see [`WindowSubmodule`]); the window
//! `[−D, N)` only bounds which degrees a result may touch, and an operation
//! whose result leaves it fails with [`WindowError::PrecisionExhausted`].

mod echelon;
mod element;
mod invariants;
mod module;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{FieldMode, FieldModeError};
use crate::semigroup::NumericalSemigroup;

pub use echelon::{kernel, Echelon};
pub use element::{Element, Mono};
pub use invariants::{iso_test, ring_invariants, IsoOutcome, Obstruction, RingInvariants};
pub use module::{BranchWindow, WindowSubmodule};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WindowError {
    #[error("bad override: {0}")]
    BadOverride(String),
    #[error("result needs degrees {order:?}..{tail:?}, outside the window [-{neg_offset}, {bound})")]
    PrecisionExhausted { order: [i64; 2], tail: [i64; 2], bound: i64, neg_offset: i64 },
    #[error("submodule is not contained in the other")]
    NotContained,
    #[error("generators vanish on a whole branch")]
    NotFaithful,
}

impl From<FieldModeError> for WindowError {
    fn from(e: FieldModeError) -> Self {
        WindowError::BadOverride(e.to_string())
    }
}

/// User-supplied window bounds; `None` means auto-size.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowOverrides {
    pub bound: Option<i64>,
    pub neg_offset: Option<i64>,
}

/// Field-independent description of a window: the two semigroups, the
/// degree range `[−D, N)` per branch and the coefficient field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowConfig {
    pub left: NumericalSemigroup,
    pub right: NumericalSemigroup,
    pub bound: i64,
    pub neg_offset: i64,
    pub field: FieldMode,
}

impl WindowConfig {
    /// `2·(max F + 2) + max generator + 8`
    pub fn min_bound(h1: &NumericalSemigroup, h2: &NumericalSemigroup) -> i64 {
        let f = h1.frobenius().max(h2.frobenius());
        let g = h1.max_generator().max(h2.max_generator()) as i64;
        2 * (f + 2) + g + 8
    }

    /// `max F + 2`
    pub fn min_neg_offset(h1: &NumericalSemigroup, h2: &NumericalSemigroup) -> i64 {
        h1.frobenius().max(h2.frobenius()) + 2
    }

    pub fn enlarged(&self, dn: i64, dd: i64) -> Self {
        WindowConfig { bound: self.bound + dn, neg_offset: self.neg_offset + dd, ..self.clone() }
    }

    pub fn with_field(&self, field: FieldMode) -> Self {
        WindowConfig { field, ..self.clone() }
    }
}

pub fn build_window(
    h1: &NumericalSemigroup,
    h2: &NumericalSemigroup,
    field: FieldMode,
    overrides: WindowOverrides,
) -> Result<WindowConfig, WindowError> {
    let field = field.validate()?;
    let n_min = WindowConfig::min_bound(h1, h2);
    let d_min = WindowConfig::min_neg_offset(h1, h2);
    let bound = match overrides.bound {
        Some(n) if n < n_min => {
            return Err(WindowError::BadOverride(format!("window N = {n} is below the minimum {n_min}")))
        }
        Some(n) => n,
        None => n_min,
    };
    let neg_offset = match overrides.neg_offset {
        Some(d) if d < d_min => {
            return Err(WindowError::BadOverride(format!("negative offset D = {d} is below the minimum {d_min}")))
        }
        Some(d) => d,
        None => d_min,
    };
    Ok(WindowConfig { left: h1.clone(), right: h2.clone(), bound, neg_offset, field })
}
