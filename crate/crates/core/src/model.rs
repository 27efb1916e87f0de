//! Domain types for EARL emotion annotations.
//!
//! An [`EmotionAnnotation`] mirrors a single `<emotion>` element and a
//! [`ComplexEmotion`] mirrors a `<complex-emotion>` holding several
//! co-occurring constituents. Values are plain data; range and vocabulary
//! checks live in [`crate::validate`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

/// Closed interval accepted for dimension and appraisal values.
pub const SIGNED_UNIT: (f64, f64) = (-1.0, 1.0);
/// Closed interval accepted for intensity, probability and regulation values.
pub const UNIT: (f64, f64) = (0.0, 1.0);

/// A person's attempt to modulate the expression of an emotion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Regulation {
    Amplify,
    Attenuate,
    Simulate,
    Suppress,
}

impl Regulation {
    /// All regulation types in canonical (alphabetical) order.
    pub const ALL: [Regulation; 4] = [
        Regulation::Amplify,
        Regulation::Attenuate,
        Regulation::Simulate,
        Regulation::Suppress,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Regulation::Amplify => "amplify",
            Regulation::Attenuate => "attenuate",
            Regulation::Simulate => "simulate",
            Regulation::Suppress => "suppress",
        }
    }
}

impl fmt::Display for Regulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Regulation {
    type Err = UnknownRegulation;

    /// `hide` is accepted as an alias of `suppress`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "amplify" => Ok(Regulation::Amplify),
            "attenuate" => Ok(Regulation::Attenuate),
            "simulate" => Ok(Regulation::Simulate),
            "suppress" | "hide" => Ok(Regulation::Suppress),
            other => Err(UnknownRegulation(other.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown regulation type `{0}`")]
pub struct UnknownRegulation(pub String);

/// What an annotation is about.
#[derive(Clone, Debug, PartialEq, Default)]
pub enum Scope {
    /// Character data enclosed by the element.
    InlineText(String),
    /// Stand-off link to a media object or XML node.
    Reference(String),
    /// Interval of the current clip, in seconds.
    TimeSpan { start: f64, end: f64 },
    /// Interval of a referenced clip, in seconds.
    ReferencedTimeSpan { uri: String, start: f64, end: f64 },
    #[default]
    Unscoped,
}

impl Scope {
    pub fn is_unscoped(&self) -> bool {
        matches!(self, Scope::Unscoped)
    }

    pub fn uri(&self) -> Option<&str> {
        match self {
            Scope::Reference(uri) | Scope::ReferencedTimeSpan { uri, .. } => Some(uri),
            _ => None,
        }
    }

    pub fn span(&self) -> Option<(f64, f64)> {
        match *self {
            Scope::TimeSpan { start, end } | Scope::ReferencedTimeSpan { start, end, .. } => {
                Some((start, end))
            }
            _ => None,
        }
    }
}

/// One `<emotion>` element.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct EmotionAnnotation {
    pub category: Option<String>,
    pub dimensions: BTreeMap<String, f64>,
    pub appraisals: BTreeMap<String, f64>,
    pub intensity: Option<f64>,
    pub probability: Option<f64>,
    pub regulation: BTreeMap<Regulation, f64>,
    pub modality: Option<String>,
    pub scope: Scope,
}

impl EmotionAnnotation {
    /// An annotation carrying only a category label.
    pub fn categorical(category: impl Into<String>) -> Self {
        EmotionAnnotation {
            category: Some(category.into()),
            ..Default::default()
        }
    }

    pub fn with_intensity(mut self, intensity: f64) -> Self {
        self.intensity = Some(intensity);
        self
    }

    pub fn with_probability(mut self, probability: f64) -> Self {
        self.probability = Some(probability);
        self
    }

    pub fn with_regulation(mut self, kind: Regulation, value: f64) -> Self {
        self.regulation.insert(kind, value);
        self
    }

    pub fn with_modality(mut self, modality: impl Into<String>) -> Self {
        self.modality = Some(modality.into());
        self
    }

    pub fn with_scope(mut self, scope: Scope) -> Self {
        self.scope = scope;
        self
    }

    pub fn has_descriptor(&self) -> bool {
        self.category.is_some() || !self.dimensions.is_empty() || !self.appraisals.is_empty()
    }

    /// Intensity with the unqualified default of 1.0 applied.
    pub fn effective_intensity(&self) -> f64 {
        self.intensity.unwrap_or(1.0)
    }

    /// Probability with the unqualified default of 1.0 applied.
    pub fn effective_probability(&self) -> f64 {
        self.probability.unwrap_or(1.0)
    }
}

/// One `<complex-emotion>` element: a single state made of several
/// co-occurring or regulated constituents sharing one scope.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ComplexEmotion {
    pub constituents: Vec<EmotionAnnotation>,
    pub scope: Scope,
}

impl ComplexEmotion {
    pub fn new(constituents: Vec<EmotionAnnotation>, scope: Scope) -> Self {
        ComplexEmotion {
            constituents,
            scope,
        }
    }
}

/// The constituent with the highest intensity, missing intensity counting
/// as 1.0. Ties go to the earliest constituent. Returns `None` only for a
/// complex emotion without constituents.
pub fn dominant_constituent(complex: &ComplexEmotion) -> Option<&EmotionAnnotation> {
    let mut best: Option<&EmotionAnnotation> = None;
    for c in &complex.constituents {
        match best {
            Some(b) if c.effective_intensity() <= b.effective_intensity() => {}
            _ => best = Some(c),
        }
    }
    best
}

/// A top-level entry of an annotation document.
#[derive(Clone, Debug, PartialEq)]
pub enum AnnotationItem {
    Simple(EmotionAnnotation),
    Complex(ComplexEmotion),
}

impl AnnotationItem {
    pub fn scope(&self) -> &Scope {
        match self {
            AnnotationItem::Simple(a) => &a.scope,
            AnnotationItem::Complex(c) => &c.scope,
        }
    }

    /// Every `<emotion>` in the item, constituents included.
    pub fn emotions(&self) -> impl Iterator<Item = &EmotionAnnotation> {
        let slice: &[EmotionAnnotation] = match self {
            AnnotationItem::Simple(a) => std::slice::from_ref(a),
            AnnotationItem::Complex(c) => &c.constituents,
        };
        slice.iter()
    }
}

impl From<EmotionAnnotation> for AnnotationItem {
    fn from(a: EmotionAnnotation) -> Self {
        AnnotationItem::Simple(a)
    }
}

impl From<ComplexEmotion> for AnnotationItem {
    fn from(c: ComplexEmotion) -> Self {
        AnnotationItem::Complex(c)
    }
}

/// An ordered collection of annotations, as read from one EARL file.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct AnnotationDocument {
    pub items: Vec<AnnotationItem>,
    pub source_uri: Option<String>,
}

impl AnnotationDocument {
    pub fn new(items: Vec<AnnotationItem>) -> Self {
        AnnotationDocument {
            items,
            source_uri: None,
        }
    }
}

/// User-defined vocabulary: which category labels, dimension names,
/// appraisal names and modalities an application accepts.
///
/// An empty set accepts any label unless the profile is strict, in which
/// case an empty set accepts nothing.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VocabularyProfile {
    pub categories: BTreeSet<String>,
    pub dimension_names: BTreeSet<String>,
    pub appraisal_names: BTreeSet<String>,
    pub modalities: BTreeSet<String>,
    pub strict: bool,
}

/// Dimension names used by the stock EARL examples.
pub const DEFAULT_DIMENSIONS: [&str; 3] = ["arousal", "power", "valence"];
/// Appraisal names used by the stock EARL examples.
pub const DEFAULT_APPRAISALS: [&str; 4] = [
    "goal_conduciveness",
    "intrinsic_pleasantness",
    "relevance_self_concerns",
    "suddenness",
];

impl VocabularyProfile {
    /// Accepts every label; dimensions are unknown, so unrecognised numeric
    /// attributes are read as appraisals.
    pub fn permissive() -> Self {
        Self::default()
    }

    /// Any category or modality, plus the dimension and appraisal names of
    /// the stock EARL examples.
    pub fn earl_default() -> Self {
        VocabularyProfile {
            dimension_names: DEFAULT_DIMENSIONS.iter().map(|s| s.to_string()).collect(),
            appraisal_names: DEFAULT_APPRAISALS.iter().map(|s| s.to_string()).collect(),
            ..Default::default()
        }
    }

    pub fn strict(mut self, strict: bool) -> Self {
        self.strict = strict;
        self
    }

    pub fn accepts_category(&self, label: &str) -> bool {
        Self::accepts(&self.categories, label, self.strict)
    }

    pub fn accepts_dimension(&self, name: &str) -> bool {
        Self::accepts(&self.dimension_names, name, self.strict)
    }

    pub fn accepts_appraisal(&self, name: &str) -> bool {
        Self::accepts(&self.appraisal_names, name, self.strict)
    }

    pub fn accepts_modality(&self, label: &str) -> bool {
        Self::accepts(&self.modalities, label, self.strict)
    }

    fn accepts(set: &BTreeSet<String>, label: &str, strict: bool) -> bool {
        if set.is_empty() {
            !strict
        } else {
            set.contains(label)
        }
    }
}
