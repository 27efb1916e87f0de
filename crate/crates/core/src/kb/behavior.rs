use std::fmt;
use std::str::FromStr;

/// Adaptive action orientation linked to a basic emotion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Behavior {
    Searching,
    Aggressive,
    Protective,
    Dejected,
    /// Triumphant.
    Gratulant,
    Caressive,
}

impl Behavior {
    pub const ALL: [Behavior; 6] = [
        Behavior::Searching,
        Behavior::Aggressive,
        Behavior::Protective,
        Behavior::Dejected,
        Behavior::Gratulant,
        Behavior::Caressive,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Behavior::Searching => "searching",
            Behavior::Aggressive => "aggressive",
            Behavior::Protective => "protective",
            Behavior::Dejected => "dejected",
            Behavior::Gratulant => "gratulant",
            Behavior::Caressive => "caressive",
        }
    }
}

impl fmt::Display for Behavior {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("`{0}` is not a basic emotion")]
pub struct UnknownEmotion(pub String);

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown behaviour `{0}`")]
pub struct UnknownBehavior(pub String);

impl FromStr for Behavior {
    type Err = UnknownBehavior;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        Behavior::ALL
            .into_iter()
            .find(|b| b.as_str() == lower || (lower == "triumphant" && *b == Behavior::Gratulant))
            .ok_or_else(|| UnknownBehavior(s.to_string()))
    }
}

/// The six basic emotions and the behaviour each one motivates.
pub const BASIC_EMOTIONS: [(&str, Behavior); 6] = [
    ("desire", Behavior::Searching),
    ("anger", Behavior::Aggressive),
    ("fear", Behavior::Protective),
    ("sadness", Behavior::Dejected),
    ("joy", Behavior::Gratulant),
    ("affection", Behavior::Caressive),
];

/// Case-insensitive lookup of a basic emotion; `sensuality` is read as
/// `desire` so lexicon output connects to the behaviour table.
pub fn canonical_basic_emotion(label: &str) -> Option<&'static str> {
    let lower = label.trim().to_ascii_lowercase();
    let lower = if lower == "sensuality" {
        "desire"
    } else {
        lower.as_str()
    };
    BASIC_EMOTIONS
        .iter()
        .find(|(e, _)| *e == lower)
        .map(|(e, _)| *e)
}

pub fn behavior_for_emotion(emotion: &str) -> Result<Behavior, UnknownEmotion> {
    let canonical =
        canonical_basic_emotion(emotion).ok_or_else(|| UnknownEmotion(emotion.to_string()))?;
    Ok(BASIC_EMOTIONS
        .iter()
        .find(|(e, _)| *e == canonical)
        .map(|(_, b)| *b)
        .expect("canonical label is in the table"))
}
