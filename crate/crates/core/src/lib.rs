//! EARL emotion annotation toolkit.
//!
//! - [`model`] and [`validate`]: annotation types and profile-relative checks.
//! - [`earl`]: canonical EARL XML reading/writing and stand-off scope resolution.
//! - [`kb`]: marker knowledge base (basic emotions, lexicon, voice and
//!   movement patterns, capture-source weights).
//! - [`fusion`]: weighted multimodal fusion with temporal decay.
//! - [`needs`]: motivated-behaviour inference and access decisions.

pub mod earl;
pub mod fusion;
pub mod kb;
pub mod model;
pub mod needs;
pub mod validate;

pub use earl::{parse_document, parse_document_with, serialize_document, ParseError, ParseOutcome};
pub use fusion::{FusedEstimate, FusionConfig, FusionError, MarkerEvidence, TemporalState};
pub use kb::{Behavior, CaptureSource, Lexicon, RankedEmotions};
pub use model::{
    dominant_constituent, AnnotationDocument, AnnotationItem, ComplexEmotion, EmotionAnnotation,
    Regulation, Scope, VocabularyProfile,
};
pub use needs::{decide_access, infer_needs, AccessPolicy, Decision, NeedProfile, Verdict};
pub use validate::{
    validate_annotation, validate_complex, validate_document, validate_item, Finding, FindingCode,
    Severity, ValidationReport,
};
