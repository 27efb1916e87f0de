use super::features::{parse_feature_lines, FeatureFileError};
use super::ranked::{score_pattern, Agreement, RankedEmotions};

/// Overall duration of the movement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Duration {
    Short,
    #[default]
    Mid,
    Long,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum TempoChanges {
    Frequent,
    Few,
    #[default]
    Neutral,
}

/// Length of the stops between tempo changes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum StopLength {
    Short,
    #[default]
    Mid,
    Long,
}

/// Extent relative to the body centre.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum SpatialExtent {
    OutwardFromCentre,
    CloseToCentre,
    #[default]
    Neutral,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Tension {
    /// Builds up and then explodes.
    DynamicHigh,
    SustainedHigh,
    ContinuouslyLow,
    /// Alternates between high and low.
    DynamicVarying,
    #[default]
    Neutral,
}

impl Duration {
    pub const ALL: [Duration; 3] = [Duration::Short, Duration::Mid, Duration::Long];
}
impl TempoChanges {
    pub const ALL: [TempoChanges; 3] = [
        TempoChanges::Frequent,
        TempoChanges::Few,
        TempoChanges::Neutral,
    ];
}
impl StopLength {
    pub const ALL: [StopLength; 3] = [StopLength::Short, StopLength::Mid, StopLength::Long];
}
impl SpatialExtent {
    pub const ALL: [SpatialExtent; 3] = [
        SpatialExtent::OutwardFromCentre,
        SpatialExtent::CloseToCentre,
        SpatialExtent::Neutral,
    ];
}
impl Tension {
    pub const ALL: [Tension; 5] = [
        Tension::DynamicHigh,
        Tension::SustainedHigh,
        Tension::ContinuouslyLow,
        Tension::DynamicVarying,
        Tension::Neutral,
    ];

    /// +1 high, -1 low, `None` for mixed or neutral.
    fn level(self) -> Option<i8> {
        match self {
            Tension::DynamicHigh | Tension::SustainedHigh => Some(1),
            Tension::ContinuouslyLow => Some(-1),
            Tension::DynamicVarying | Tension::Neutral => None,
        }
    }
}

/// Positions on a two-pole scale: `Some(±1)` at a pole, `None` in the middle.
trait Polar: Copy + PartialEq {
    fn pole(self) -> Option<i8>;

    fn against(self, expected: Self) -> Agreement {
        match (expected.pole(), self.pole()) {
            (Some(e), Some(o)) if e == o && self == expected => Agreement::Match,
            (Some(e), Some(o)) if e != o => Agreement::Contradict,
            _ => Agreement::Neutral,
        }
    }
}

impl Polar for Duration {
    fn pole(self) -> Option<i8> {
        match self {
            Duration::Short => Some(-1),
            Duration::Mid => None,
            Duration::Long => Some(1),
        }
    }
}

impl Polar for TempoChanges {
    fn pole(self) -> Option<i8> {
        match self {
            TempoChanges::Frequent => Some(1),
            TempoChanges::Few => Some(-1),
            TempoChanges::Neutral => None,
        }
    }
}

impl Polar for StopLength {
    fn pole(self) -> Option<i8> {
        match self {
            StopLength::Short => Some(-1),
            StopLength::Mid => None,
            StopLength::Long => Some(1),
        }
    }
}

impl Polar for SpatialExtent {
    fn pole(self) -> Option<i8> {
        match self {
            SpatialExtent::OutwardFromCentre => Some(1),
            SpatialExtent::CloseToCentre => Some(-1),
            SpatialExtent::Neutral => None,
        }
    }
}

// High-tension variants share a pole but only an exact variant matches.
impl Polar for Tension {
    fn pole(self) -> Option<i8> {
        self.level()
    }

    fn against(self, expected: Self) -> Agreement {
        if self == expected && self != Tension::Neutral {
            return Agreement::Match;
        }
        match (expected.level(), self.level()) {
            (Some(e), Some(o)) if e != o => Agreement::Contradict,
            _ => Agreement::Neutral,
        }
    }
}

/// Time, space, flow and weight qualities of a body movement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct MovementDescriptor {
    pub duration: Duration,
    pub tempo_changes: TempoChanges,
    pub stop_length: StopLength,
    pub spatial_extent: SpatialExtent,
    pub tension: Tension,
}

const MOVEMENT_FIELDS: [&str; 5] = [
    "duration",
    "tempo_changes",
    "stop_length",
    "spatial_extent",
    "tension",
];

impl MovementDescriptor {
    /// Reads `field=value` lines; absent fields stay neutral (`mid` for the
    /// time scales).
    pub fn from_feature_file(input: &str) -> Result<Self, FeatureFileError> {
        let mut m = MovementDescriptor::default();
        for (line, field, value) in parse_feature_lines(input, &MOVEMENT_FIELDS)? {
            let bad = || FeatureFileError::BadValue {
                line,
                field: field.to_string(),
                value: value.clone(),
            };
            match field {
                "duration" => {
                    m.duration = match value.as_str() {
                        "short" => Duration::Short,
                        "mid" => Duration::Mid,
                        "long" => Duration::Long,
                        _ => return Err(bad()),
                    }
                }
                "tempo_changes" => {
                    m.tempo_changes = match value.as_str() {
                        "frequent" => TempoChanges::Frequent,
                        "few" => TempoChanges::Few,
                        "neutral" => TempoChanges::Neutral,
                        _ => return Err(bad()),
                    }
                }
                "stop_length" => {
                    m.stop_length = match value.as_str() {
                        "short" => StopLength::Short,
                        "mid" => StopLength::Mid,
                        "long" => StopLength::Long,
                        _ => return Err(bad()),
                    }
                }
                "spatial_extent" => {
                    m.spatial_extent = match value.as_str() {
                        "outward_from_centre" => SpatialExtent::OutwardFromCentre,
                        "close_to_centre" => SpatialExtent::CloseToCentre,
                        "neutral" => SpatialExtent::Neutral,
                        _ => return Err(bad()),
                    }
                }
                _ => {
                    m.tension = match value.as_str() {
                        "dynamic_high" => Tension::DynamicHigh,
                        "sustained_high" => Tension::SustainedHigh,
                        "continuously_low" => Tension::ContinuouslyLow,
                        "dynamic_varying" => Tension::DynamicVarying,
                        "neutral" => Tension::Neutral,
                        _ => return Err(bad()),
                    }
                }
            }
        }
        Ok(m)
    }

    /// Every one of the 3^4 × 5 possible descriptors.
    pub fn enumerate() -> impl Iterator<Item = MovementDescriptor> {
        Duration::ALL.into_iter().flat_map(|duration| {
            TempoChanges::ALL
                .into_iter()
                .flat_map(move |tempo_changes| {
                    StopLength::ALL.into_iter().flat_map(move |stop_length| {
                        SpatialExtent::ALL
                            .into_iter()
                            .flat_map(move |spatial_extent| {
                                Tension::ALL
                                    .into_iter()
                                    .map(move |tension| MovementDescriptor {
                                        duration,
                                        tempo_changes,
                                        stop_length,
                                        spatial_extent,
                                        tension,
                                    })
                            })
                    })
                })
        })
    }
}

#[derive(Clone, Copy)]
enum Expect {
    Duration(Duration),
    Tempo(TempoChanges),
    Stops(StopLength),
    Space(SpatialExtent),
    Tension(Tension),
}

impl Expect {
    fn check(self, m: &MovementDescriptor) -> (&'static str, Agreement) {
        match self {
            Expect::Duration(e) => ("duration", m.duration.against(e)),
            Expect::Tempo(e) => ("tempo_changes", m.tempo_changes.against(e)),
            Expect::Stops(e) => ("stop_length", m.stop_length.against(e)),
            Expect::Space(e) => ("spatial_extent", m.spatial_extent.against(e)),
            Expect::Tension(e) => ("tension", m.tension.against(e)),
        }
    }
}

const ANGER: &[Expect] = &[
    Expect::Duration(Duration::Short),
    Expect::Tempo(TempoChanges::Frequent),
    Expect::Stops(StopLength::Short),
    Expect::Space(SpatialExtent::OutwardFromCentre),
    Expect::Tension(Tension::DynamicHigh),
];
const FEAR: &[Expect] = &[
    Expect::Tempo(TempoChanges::Frequent),
    Expect::Stops(StopLength::Long),
    Expect::Space(SpatialExtent::CloseToCentre),
    Expect::Tension(Tension::SustainedHigh),
];
const GRIEF: &[Expect] = &[
    Expect::Duration(Duration::Long),
    Expect::Tempo(TempoChanges::Few),
    Expect::Tension(Tension::ContinuouslyLow),
];
const JOY: &[Expect] = &[
    Expect::Tempo(TempoChanges::Frequent),
    Expect::Stops(StopLength::Long),
    Expect::Space(SpatialExtent::OutwardFromCentre),
    Expect::Tension(Tension::DynamicVarying),
];

const MOVEMENT_PATTERNS: [(&str, &[Expect]); 4] = [
    ("anger", ANGER),
    ("fear", FEAR),
    ("grief", GRIEF),
    ("joy", JOY),
];

pub fn classify_movement(m: &MovementDescriptor) -> RankedEmotions {
    RankedEmotions::new(
        MOVEMENT_PATTERNS
            .iter()
            .map(|(label, pattern)| score_pattern(label, pattern.iter().map(|e| e.check(m))))
            .collect(),
    )
}
