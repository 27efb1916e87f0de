//! Profile-relative structural validation.
//!
//! Problems are collected into a [`ValidationReport`] rather than returned as
//! errors, so a single pass reports everything wrong with a document.

use std::fmt;

use crate::model::{
    AnnotationDocument, AnnotationItem, ComplexEmotion, EmotionAnnotation, Scope,
    VocabularyProfile, SIGNED_UNIT, UNIT,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        })
    }
}

/// Machine-readable finding code. `Display` renders the stable code string,
/// e.g. `RANGE(intensity)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FindingCode {
    MissingDescriptor,
    Range(String),
    UnknownCategory,
    UnknownDimension,
    UnknownAppraisal,
    UnknownModality,
    /// The same name is used both as a dimension and as an appraisal.
    DuplicateDescriptor,
    /// A name the profile knows, filed under the other descriptor kind.
    CrossListedDescriptor,
    MalformedScope,
    TooFewConstituents,
    ConstituentScope,
    /// Attribute the parser did not map to a field.
    UnknownAttribute,
    /// Element the parser skipped over.
    UnknownElement,
}

impl fmt::Display for FindingCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FindingCode::MissingDescriptor => f.write_str("MISSING_DESCRIPTOR"),
            FindingCode::Range(field) => write!(f, "RANGE({field})"),
            FindingCode::UnknownCategory => f.write_str("UNKNOWN_CATEGORY"),
            FindingCode::UnknownDimension => f.write_str("UNKNOWN_DIMENSION"),
            FindingCode::UnknownAppraisal => f.write_str("UNKNOWN_APPRAISAL"),
            FindingCode::UnknownModality => f.write_str("UNKNOWN_MODALITY"),
            FindingCode::DuplicateDescriptor => f.write_str("DUPLICATE_DESCRIPTOR"),
            FindingCode::CrossListedDescriptor => f.write_str("CROSS_LISTED_DESCRIPTOR"),
            FindingCode::MalformedScope => f.write_str("MALFORMED_SCOPE"),
            FindingCode::TooFewConstituents => f.write_str("TOO_FEW_CONSTITUENTS"),
            FindingCode::ConstituentScope => f.write_str("CONSTITUENT_SCOPE"),
            FindingCode::UnknownAttribute => f.write_str("UNKNOWN_ATTRIBUTE"),
            FindingCode::UnknownElement => f.write_str("UNKNOWN_ELEMENT"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub severity: Severity,
    pub code: FindingCode,
    pub message: String,
    /// Path such as `item[1].constituent[0]`.
    pub location: String,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{}",
            self.severity, self.code, self.location, self.message
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    /// True when no finding has error severity.
    pub fn ok(&self) -> bool {
        !self.findings.iter().any(|f| f.severity == Severity::Error)
    }

    pub fn errors(&self) -> impl Iterator<Item = &Finding> {
        self.findings
            .iter()
            .filter(|f| f.severity == Severity::Error)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Finding> {
        self.findings
            .iter()
            .filter(|f| f.severity == Severity::Warning)
    }

    pub fn has_code(&self, code: &FindingCode) -> bool {
        self.findings.iter().any(|f| &f.code == code)
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.findings.extend(other.findings);
    }

    fn push(&mut self, severity: Severity, code: FindingCode, location: &str, message: String) {
        self.findings.push(Finding {
            severity,
            code,
            message,
            location: location.to_string(),
        });
    }

    fn error(&mut self, code: FindingCode, location: &str, message: String) {
        self.push(Severity::Error, code, location, message);
    }
}

pub fn validate_annotation(
    annotation: &EmotionAnnotation,
    profile: &VocabularyProfile,
) -> ValidationReport {
    let mut report = ValidationReport::default();
    check_emotion(annotation, profile, "emotion", &mut report);
    report
}

pub fn validate_complex(complex: &ComplexEmotion, profile: &VocabularyProfile) -> ValidationReport {
    let mut report = ValidationReport::default();
    check_complex(complex, profile, "complex-emotion", &mut report);
    report
}

pub fn validate_item(item: &AnnotationItem, profile: &VocabularyProfile) -> ValidationReport {
    match item {
        AnnotationItem::Simple(a) => validate_annotation(a, profile),
        AnnotationItem::Complex(c) => validate_complex(c, profile),
    }
}

/// Validates every item, locating findings as `item[i]...`.
pub fn validate_document(
    doc: &AnnotationDocument,
    profile: &VocabularyProfile,
) -> ValidationReport {
    let mut report = ValidationReport::default();
    for (i, item) in doc.items.iter().enumerate() {
        let location = format!("item[{i}]");
        match item {
            AnnotationItem::Simple(a) => check_emotion(a, profile, &location, &mut report),
            AnnotationItem::Complex(c) => check_complex(c, profile, &location, &mut report),
        }
    }
    report
}

fn check_complex(
    complex: &ComplexEmotion,
    profile: &VocabularyProfile,
    location: &str,
    report: &mut ValidationReport,
) {
    if complex.constituents.len() < 2 {
        report.error(
            FindingCode::TooFewConstituents,
            location,
            format!(
                "complex emotion needs at least two constituents, found {}",
                complex.constituents.len()
            ),
        );
    }
    check_scope(&complex.scope, location, report);
    for (i, c) in complex.constituents.iter().enumerate() {
        let loc = format!("{location}.constituent[{i}]");
        if !c.scope.is_unscoped() {
            report.error(
                FindingCode::ConstituentScope,
                &loc,
                "constituent carries its own scope; scope belongs on the complex emotion".into(),
            );
        }
        check_fields(c, profile, &loc, report);
    }
}

fn check_emotion(
    a: &EmotionAnnotation,
    profile: &VocabularyProfile,
    location: &str,
    report: &mut ValidationReport,
) {
    check_fields(a, profile, location, report);
    check_scope(&a.scope, location, report);
}

// Findings follow canonical attribute order so reports are stable.
fn check_fields(
    a: &EmotionAnnotation,
    profile: &VocabularyProfile,
    location: &str,
    report: &mut ValidationReport,
) {
    if !a.has_descriptor() {
        report.error(
            FindingCode::MissingDescriptor,
            location,
            "no category, dimension or appraisal given".into(),
        );
    }
    if let Some(category) = &a.category {
        if !profile.accepts_category(category) {
            report.error(
                FindingCode::UnknownCategory,
                location,
                format!("category `{category}` is not in the profile"),
            );
        }
    }

    for (name, &value) in &a.dimensions {
        if a.appraisals.contains_key(name) {
            report.error(
                FindingCode::DuplicateDescriptor,
                location,
                format!("`{name}` is given both as a dimension and as an appraisal"),
            );
        }
        check_range(name, value, SIGNED_UNIT, location, report);
        if !profile.accepts_dimension(name) {
            if profile.appraisal_names.contains(name) {
                report.push(
                    Severity::Warning,
                    FindingCode::CrossListedDescriptor,
                    location,
                    format!("`{name}` is a known appraisal used as a dimension"),
                );
            } else {
                report.error(
                    FindingCode::UnknownDimension,
                    location,
                    format!("dimension `{name}` is not in the profile"),
                );
            }
        }
    }
    for (name, &value) in &a.appraisals {
        check_range(name, value, SIGNED_UNIT, location, report);
        if !profile.accepts_appraisal(name) {
            if profile.dimension_names.contains(name) {
                report.push(
                    Severity::Warning,
                    FindingCode::CrossListedDescriptor,
                    location,
                    format!("`{name}` is a known dimension used as an appraisal"),
                );
            } else {
                report.error(
                    FindingCode::UnknownAppraisal,
                    location,
                    format!("appraisal `{name}` is not in the profile"),
                );
            }
        }
    }

    if let Some(v) = a.intensity {
        check_range("intensity", v, UNIT, location, report);
    }
    if let Some(v) = a.probability {
        check_range("probability", v, UNIT, location, report);
    }
    for (kind, &v) in &a.regulation {
        check_range(kind.as_str(), v, UNIT, location, report);
    }
    if let Some(modality) = &a.modality {
        if !profile.accepts_modality(modality) {
            report.error(
                FindingCode::UnknownModality,
                location,
                format!("modality `{modality}` is not in the profile"),
            );
        }
    }
}

fn check_range(
    field: &str,
    value: f64,
    (lo, hi): (f64, f64),
    location: &str,
    report: &mut ValidationReport,
) {
    // NaN fails both comparisons and lands here too.
    if !(lo..=hi).contains(&value) {
        report.error(
            FindingCode::Range(field.to_string()),
            location,
            format!("{field}={value} outside [{lo}, {hi}]"),
        );
    }
}

fn check_scope(scope: &Scope, location: &str, report: &mut ValidationReport) {
    let problem = match scope {
        Scope::Unscoped => None,
        Scope::InlineText(text) if text.trim().is_empty() => {
            Some("inline text is blank".to_string())
        }
        Scope::InlineText(_) => None,
        Scope::Reference(uri) if uri.is_empty() => Some("reference URI is empty".into()),
        Scope::Reference(_) => None,
        Scope::ReferencedTimeSpan { uri, .. } if uri.is_empty() => {
            Some("reference URI is empty".into())
        }
        Scope::TimeSpan { start, end } | Scope::ReferencedTimeSpan { start, end, .. } => {
            if !(start.is_finite() && end.is_finite()) {
                Some("time span bounds must be finite".into())
            } else if *start < 0.0 {
                Some(format!("time span starts before zero ({start})"))
            } else if end <= start {
                Some(format!("time span end {end} is not after start {start}"))
            } else {
                None
            }
        }
    };
    if let Some(message) = problem {
        report.error(FindingCode::MalformedScope, location, message);
    }
}
