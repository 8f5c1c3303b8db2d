//! Enumeration of numerical semigroups by genus, the per-pair battery of
//! identities and theorem checks, and campaigns over all ordered pairs.

mod campaign;
mod check;
mod report;

use thiserror::Error;

use crate::semigroup::NumericalSemigroup;

pub use campaign::{run_campaign, write_csv, CampaignConfig, CampaignMeta, CampaignReport, CampaignSummary, Counterexample};
pub use check::{broken_predicted_flags, check_pair, pair_seed, PairConfig};
pub use report::{CanonicalInfo, Identity, Observation, TheoremCheck, TheoremReport, WindowInfo};

/// Largest genus the enumerator accepts.
pub const MAX_GENUS: usize = 20;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("max genus {0} exceeds the guard {MAX_GENUS}")]
    GuardExceeded(usize),
    #[error("jobs must be at least 1")]
    NoJobs,
    #[error(transparent)]
    Field(#[from] crate::scalar::FieldModeError),
    #[error(transparent)]
    Window(#[from] crate::window::WindowError),
    #[error("thread pool: {0}")]
    Pool(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

/// All numerical semigroups of genus `≤ max_genus`, sorted by genus and then
/// by minimal generators.
///
/// Walks the tree in which the children of `H` are `H ∖ {g}` for the minimal
/// generators `g > F(H)`.
///
/// ```
/// use agfiber::verify::enumerate_semigroups;
/// let hs = enumerate_semigroups(2).unwrap();
/// let names: Vec<String> = hs.iter().map(|h| h.to_string()).collect();
/// assert_eq!(names, ["⟨1⟩", "⟨2,3⟩", "⟨2,5⟩", "⟨3,4,5⟩"]);
/// ```
pub fn enumerate_semigroups(max_genus: usize) -> Result<Vec<NumericalSemigroup>, VerifyError> {
    if max_genus > MAX_GENUS {
        return Err(VerifyError::GuardExceeded(max_genus));
    }
    let mut level = vec![NumericalSemigroup::naturals()];
    let mut out = level.clone();
    for _ in 0..max_genus {
        let mut next = Vec::new();
        for h in &level {
            for &g in h.generators() {
                if i64::from(g) <= h.frobenius() {
                    continue;
                }
                let mut gaps = h.gaps().to_vec();
                gaps.push(g);
                next.push(NumericalSemigroup::from_gaps(&gaps).expect("removing a generator keeps closure"));
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out.sort();
    Ok(out)
}
