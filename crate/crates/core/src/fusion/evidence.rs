use crate::kb::{CaptureSource, UnknownSource};
use crate::model::EmotionAnnotation;

/// One categorical observation from one capture source.
#[derive(Clone, Debug, PartialEq)]
pub struct MarkerEvidence {
    /// Carries the category, plus optional probability and intensity.
    pub annotation: EmotionAnnotation,
    pub source: CaptureSource,
    /// Seconds.
    pub timestamp: f64,
    /// False when the source could not observe the person at `timestamp`.
    pub available: bool,
    /// True for evidence predicted from an earlier observation.
    pub synthetic: bool,
}

impl MarkerEvidence {
    /// Observed evidence; the annotation's modality is filled from the
    /// source when absent.
    pub fn observed(
        mut annotation: EmotionAnnotation,
        source: CaptureSource,
        timestamp: f64,
    ) -> Self {
        if annotation.modality.is_none() {
            annotation.modality = Some(source.modality().to_string());
        }
        MarkerEvidence {
            annotation,
            source,
            timestamp,
            available: true,
            synthetic: false,
        }
    }

    /// A source reporting that it has lost track of the person.
    pub fn unavailable(source: CaptureSource, timestamp: f64) -> Self {
        MarkerEvidence {
            annotation: EmotionAnnotation::default(),
            source,
            timestamp,
            available: false,
            synthetic: false,
        }
    }

    pub fn category(&self) -> Option<&str> {
        self.annotation.category.as_deref()
    }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum EvidenceStreamError {
    #[error("line {line}: expected `t source category p i`")]
    MalformedLine { line: usize },
    #[error("line {line}: {source}")]
    UnknownSource { line: usize, source: UnknownSource },
    #[error("line {line}: `{value}` is not a valid {field}")]
    BadNumber {
        line: usize,
        field: &'static str,
        value: String,
    },
}

/// Reads an evidence stream: one `t source category p i` item per line,
/// `#` comments and blank lines ignored. `p` or `i` may be `-` when
/// unknown; a category of `-` records that the source was unavailable at
/// `t`.
pub fn parse_evidence_stream(input: &str) -> Result<Vec<MarkerEvidence>, EvidenceStreamError> {
    let mut out = Vec::new();
    for (i, raw) in input.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let [t, source, category, p, intensity] = fields[..] else {
            return Err(EvidenceStreamError::MalformedLine { line });
        };
        let timestamp = number(line, "timestamp", t)?
            .filter(|t| *t >= 0.0)
            .ok_or_else(|| EvidenceStreamError::BadNumber {
                line,
                field: "timestamp",
                value: t.to_string(),
            })?;
        let source: CaptureSource = source
            .parse()
            .map_err(|source| EvidenceStreamError::UnknownSource { line, source })?;
        if category == "-" {
            out.push(MarkerEvidence::unavailable(source, timestamp));
            continue;
        }
        let mut annotation = EmotionAnnotation::categorical(category);
        annotation.probability = unit(line, "probability", p)?;
        annotation.intensity = unit(line, "intensity", intensity)?;
        out.push(MarkerEvidence::observed(annotation, source, timestamp));
    }
    Ok(out)
}

fn number(
    line: usize,
    field: &'static str,
    value: &str,
) -> Result<Option<f64>, EvidenceStreamError> {
    if value == "-" {
        return Ok(None);
    }
    value
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .map(Some)
        .ok_or_else(|| EvidenceStreamError::BadNumber {
            line,
            field,
            value: value.to_string(),
        })
}

fn unit(line: usize, field: &'static str, value: &str) -> Result<Option<f64>, EvidenceStreamError> {
    match number(line, field, value)? {
        Some(v) if !(0.0..=1.0).contains(&v) => Err(EvidenceStreamError::BadNumber {
            line,
            field,
            value: value.to_string(),
        }),
        other => Ok(other),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_items() {
        let items = parse_evidence_stream(
            "# jack\n0.0 language_voice anger 1 -\n0.5 movement_kinematic anger 0.8 0.9\n1.0 face - - -\n",
        )
        .unwrap();
        assert_eq!(items.len(), 3);
        assert_eq!(items[0].category(), Some("anger"));
        assert_eq!(items[0].annotation.probability, Some(1.0));
        assert_eq!(items[0].annotation.intensity, None);
        assert_eq!(items[0].annotation.modality.as_deref(), Some("voice"));
        assert_eq!(items[1].source, CaptureSource::MovementKinematic);
        assert_eq!(items[1].annotation.intensity, Some(0.9));
        assert!(!items[2].available);
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(matches!(
            parse_evidence_stream("0 face anger 1"),
            Err(EvidenceStreamError::MalformedLine { line: 1 })
        ));
        assert!(matches!(
            parse_evidence_stream("\n0 eeg anger 1 1"),
            Err(EvidenceStreamError::UnknownSource { line: 2, .. })
        ));
        assert!(matches!(
            parse_evidence_stream("0 face anger 1.5 1"),
            Err(EvidenceStreamError::BadNumber {
                field: "probability",
                ..
            })
        ));
        assert!(matches!(
            parse_evidence_stream("-1 face anger 1 1"),
            Err(EvidenceStreamError::BadNumber {
                field: "timestamp",
                ..
            })
        ));
        assert!(matches!(
            parse_evidence_stream("x face anger 1 1"),
            Err(EvidenceStreamError::BadNumber {
                field: "timestamp",
                ..
            })
        ));
    }
}
