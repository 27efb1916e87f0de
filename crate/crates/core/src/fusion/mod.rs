//! Weighted multimodal fusion.
//!
//! Each evidence item carries one categorical annotation from one capture
//! source. The fused score of a category is
//!
//! ```text
//! score(c) = Σ_{m : category_m = c} w_m · p_m · i_m  /  Σ_m w_m
//! ```
//!
//! where `w_m` is the source weight (override or base weight), and missing
//! probability or intensity count as 1.0. Sources that drop out are
//! predicted from their last observation with exponentially decaying
//! probability.

mod complex;
mod config;
mod evidence;
mod instant;
mod temporal;

pub use complex::to_complex_emotion;
pub use config::{ConfigError, FusionConfig};
pub use evidence::{parse_evidence_stream, EvidenceStreamError, MarkerEvidence};
pub use instant::{fuse_instant, Carried, Contributor, FusedEstimate};
pub use temporal::{fill_missing, update_temporal, TemporalState};

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum FusionError {
    #[error("evidence item {index} is marked unavailable")]
    UnavailableEvidence { index: usize },
    #[error("evidence item {index} has no category")]
    MissingCategory { index: usize },
    #[error("evidence at t={timestamp} is older than the state clock {clock}")]
    TimeRegression { clock: f64, timestamp: f64 },
    #[error("no category reaches the constituent threshold")]
    NoSignal,
}

impl FusionError {
    pub fn code(&self) -> &'static str {
        match self {
            FusionError::UnavailableEvidence { .. } => "UNAVAILABLE_EVIDENCE",
            FusionError::MissingCategory { .. } => "MISSING_CATEGORY",
            FusionError::TimeRegression { .. } => "TIME_REGRESSION",
            FusionError::NoSignal => "NO_SIGNAL",
        }
    }
}
