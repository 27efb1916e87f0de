use std::fmt;
use std::str::FromStr;

/// Channel through which an emotional marker is captured.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaptureSource {
    Face,
    LanguageVoice,
    /// Hand gesture and body movement from optical kinematic coding.
    MovementKinematic,
    /// Hand gesture and body movement from force devices and EMG.
    MovementKinetic,
}

/// How convenient a source is to capture in everyday settings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convenience {
    Good,
    Middle,
    Bad,
}

impl Convenience {
    pub fn weight(self) -> f64 {
        match self {
            Convenience::Good => 1.0,
            Convenience::Middle => 0.6,
            Convenience::Bad => 0.2,
        }
    }
}

impl CaptureSource {
    pub const ALL: [CaptureSource; 4] = [
        CaptureSource::Face,
        CaptureSource::LanguageVoice,
        CaptureSource::MovementKinematic,
        CaptureSource::MovementKinetic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaptureSource::Face => "face",
            CaptureSource::LanguageVoice => "language_voice",
            CaptureSource::MovementKinematic => "movement_kinematic",
            CaptureSource::MovementKinetic => "movement_kinetic",
        }
    }

    /// Kinetic capture ranges from good (small load cells) to bad (force
    /// platforms); the worst listed condition governs.
    pub fn convenience(self) -> Convenience {
        match self {
            CaptureSource::Face | CaptureSource::LanguageVoice => Convenience::Good,
            CaptureSource::MovementKinematic => Convenience::Middle,
            CaptureSource::MovementKinetic => Convenience::Bad,
        }
    }

    pub fn base_weight(self) -> f64 {
        self.convenience().weight()
    }

    /// Modality label used on annotations coming from this source.
    pub fn modality(self) -> &'static str {
        match self {
            CaptureSource::Face => "face",
            CaptureSource::LanguageVoice => "voice",
            CaptureSource::MovementKinematic | CaptureSource::MovementKinetic => "movement",
        }
    }
}

impl fmt::Display for CaptureSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown capture source `{0}`")]
pub struct UnknownSource(pub String);

impl FromStr for CaptureSource {
    type Err = UnknownSource;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CaptureSource::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| UnknownSource(s.to_string()))
    }
}

pub fn base_weight_for_source(source: &str) -> Result<f64, UnknownSource> {
    source
        .parse::<CaptureSource>()
        .map(CaptureSource::base_weight)
}
