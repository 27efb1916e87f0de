//! Marker knowledge base: basic emotions and their motivated behaviours,
//! a linguistic-marker lexicon, voice and movement pattern classifiers, and
//! capture-source weights.

mod behavior;
mod features;
mod lexicon;
mod movement;
mod ranked;
mod sources;
mod voice;

pub use behavior::{behavior_for_emotion, canonical_basic_emotion, Behavior, BASIC_EMOTIONS};
pub use features::FeatureFileError;
pub use lexicon::{load_lexicon, tag_lexical, LexicalTag, Lexicon, LexiconError, DEFAULT_LEXICON};
pub use movement::{
    classify_movement, Duration, MovementDescriptor, SpatialExtent, StopLength, TempoChanges,
    Tension,
};
pub use ranked::{RankedEmotion, RankedEmotions};
pub use sources::{base_weight_for_source, CaptureSource, Convenience, UnknownSource};
pub use voice::{classify_voice, Contour, Direction, VoiceFeatureDelta};
