use std::str::FromStr;

use super::features::{parse_feature_lines, FeatureFileError};
use super::ranked::{score_pattern, Agreement, RankedEmotions};

/// Direction of change of an acoustic feature relative to the speaker's
/// baseline. `Flat` is neutral.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Direction {
    Up,
    Down,
    #[default]
    Flat,
}

/// Shape of the F0 contour. `Flat` is neutral.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Contour {
    Downward,
    Upward,
    #[default]
    Flat,
}

impl Direction {
    pub const ALL: [Direction; 3] = [Direction::Up, Direction::Down, Direction::Flat];

    fn against(self, expected: Direction) -> Agreement {
        match (expected, self) {
            (_, Direction::Flat) | (Direction::Flat, _) => Agreement::Neutral,
            (e, o) if e == o => Agreement::Match,
            _ => Agreement::Contradict,
        }
    }
}

impl Contour {
    pub const ALL: [Contour; 3] = [Contour::Downward, Contour::Upward, Contour::Flat];

    fn against(self, expected: Contour) -> Agreement {
        match (expected, self) {
            (_, Contour::Flat) | (Contour::Flat, _) => Agreement::Neutral,
            (e, o) if e == o => Agreement::Match,
            _ => Agreement::Contradict,
        }
    }
}

impl FromStr for Direction {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "up" => Ok(Direction::Up),
            "down" => Ok(Direction::Down),
            "flat" => Ok(Direction::Flat),
            _ => Err(()),
        }
    }
}

impl FromStr for Contour {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "downward" => Ok(Contour::Downward),
            "upward" => Ok(Contour::Upward),
            "flat" => Ok(Contour::Flat),
            _ => Err(()),
        }
    }
}

/// Categorical changes in seven vocal features.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct VoiceFeatureDelta {
    pub mean_f0: Direction,
    pub f0_range: Direction,
    pub f0_variability: Direction,
    pub mean_energy: Direction,
    pub high_freq_energy: Direction,
    pub f0_contour: Contour,
    pub articulation_rate: Direction,
}

pub(crate) const VOICE_FIELDS: [&str; 7] = [
    "mean_f0",
    "f0_range",
    "f0_variability",
    "mean_energy",
    "high_freq_energy",
    "f0_contour",
    "articulation_rate",
];

impl VoiceFeatureDelta {
    /// Reads `field=value` lines; absent fields stay `flat`.
    pub fn from_feature_file(input: &str) -> Result<Self, FeatureFileError> {
        let mut v = VoiceFeatureDelta::default();
        for (line, field, value) in parse_feature_lines(input, &VOICE_FIELDS)? {
            let bad = || FeatureFileError::BadValue {
                line,
                field: field.to_string(),
                value: value.to_string(),
            };
            if field == "f0_contour" {
                v.f0_contour = value.parse().map_err(|_| bad())?;
                continue;
            }
            let d: Direction = value.parse().map_err(|_| bad())?;
            match field {
                "mean_f0" => v.mean_f0 = d,
                "f0_range" => v.f0_range = d,
                "f0_variability" => v.f0_variability = d,
                "mean_energy" => v.mean_energy = d,
                "high_freq_energy" => v.high_freq_energy = d,
                _ => v.articulation_rate = d,
            }
        }
        Ok(v)
    }

    /// Every one of the 3^7 possible inputs.
    pub fn enumerate() -> impl Iterator<Item = VoiceFeatureDelta> {
        (0..3usize.pow(7)).map(|mut n| {
            let mut next = || {
                let d = Direction::ALL[n % 3];
                n /= 3;
                d
            };
            let mean_f0 = next();
            let f0_range = next();
            let f0_variability = next();
            let mean_energy = next();
            let high_freq_energy = next();
            let articulation_rate = next();
            let f0_contour = Contour::ALL[n % 3];
            VoiceFeatureDelta {
                mean_f0,
                f0_range,
                f0_variability,
                mean_energy,
                high_freq_energy,
                f0_contour,
                articulation_rate,
            }
        })
    }
}

enum Expect {
    Dir(&'static str, Direction),
    Contour(Contour),
}

use Direction::{Down, Up};

const ANGER: &[Expect] = &[
    Expect::Dir("mean_f0", Up),
    Expect::Dir("mean_energy", Up),
    Expect::Dir("f0_variability", Up),
    Expect::Dir("f0_range", Up),
    Expect::Dir("high_freq_energy", Up),
    Expect::Contour(Contour::Downward),
    Expect::Dir("articulation_rate", Up),
];
const FEAR: &[Expect] = &[
    Expect::Dir("mean_f0", Up),
    Expect::Dir("f0_range", Up),
    Expect::Dir("high_freq_energy", Up),
    Expect::Dir("articulation_rate", Up),
];
const JOY: &[Expect] = &[
    Expect::Dir("mean_f0", Up),
    Expect::Dir("f0_range", Up),
    Expect::Dir("f0_variability", Up),
    Expect::Dir("mean_energy", Up),
];
const SADNESS: &[Expect] = &[
    Expect::Dir("mean_f0", Down),
    Expect::Dir("f0_range", Down),
    Expect::Dir("mean_energy", Down),
    Expect::Contour(Contour::Downward),
];
// Disgust has no reliable vocal characteristic.
const DISGUST: &[Expect] = &[];

const VOICE_PATTERNS: [(&str, &[Expect]); 5] = [
    ("anger", ANGER),
    ("disgust", DISGUST),
    ("fear", FEAR),
    ("joy", JOY),
    ("sadness", SADNESS),
];

impl VoiceFeatureDelta {
    fn get(&self, field: &str) -> Direction {
        match field {
            "mean_f0" => self.mean_f0,
            "f0_range" => self.f0_range,
            "f0_variability" => self.f0_variability,
            "mean_energy" => self.mean_energy,
            "high_freq_energy" => self.high_freq_energy,
            "articulation_rate" => self.articulation_rate,
            other => unreachable!("not a direction field: {other}"),
        }
    }
}

pub fn classify_voice(v: &VoiceFeatureDelta) -> RankedEmotions {
    RankedEmotions::new(
        VOICE_PATTERNS
            .iter()
            .map(|(label, pattern)| {
                score_pattern(
                    label,
                    pattern.iter().map(|e| match e {
                        Expect::Dir(field, d) => (*field, v.get(field).against(*d)),
                        Expect::Contour(c) => ("f0_contour", v.f0_contour.against(*c)),
                    }),
                )
            })
            .collect(),
    )
}
