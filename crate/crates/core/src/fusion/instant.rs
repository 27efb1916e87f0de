use std::collections::BTreeMap;

use crate::kb::CaptureSource;
use crate::model::Regulation;

use super::{FusionConfig, FusionError, MarkerEvidence};

/// One evidence item's share in a fused estimate.
#[derive(Clone, Debug, PartialEq)]
pub struct Contributor {
    pub source: CaptureSource,
    pub weight: f64,
    pub synthetic: bool,
}

/// Non-category descriptors carried from evidence to output constituents.
/// They never influence scores.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Carried {
    pub dimensions: BTreeMap<String, f64>,
    pub appraisals: BTreeMap<String, f64>,
    pub regulation: BTreeMap<Regulation, f64>,
    /// Set only when every contributing item agrees.
    pub modality: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct FusedEstimate {
    /// Category → score in [0, 1].
    pub scores: BTreeMap<String, f64>,
    /// Highest-scoring category; ties go to the alphabetically first.
    pub dominant: Option<String>,
    /// True when the top two scores differ by less than the ambiguity
    /// epsilon.
    pub ambiguous: bool,
    /// Sorted by source, then weight.
    pub contributors: Vec<Contributor>,
    pub carried: BTreeMap<String, Carried>,
}

impl FusedEstimate {
    pub fn score(&self, category: &str) -> f64 {
        self.scores.get(category).copied().unwrap_or(0.0)
    }

    /// Categories by score descending, ties alphabetical.
    pub fn ranked(&self) -> Vec<(&str, f64)> {
        let mut v: Vec<(&str, f64)> = self.scores.iter().map(|(c, s)| (c.as_str(), *s)).collect();
        v.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(b.0)));
        v
    }

    pub fn has_signal(&self) -> bool {
        self.scores.values().any(|s| *s > 0.0)
    }
}

/// Fuses simultaneous evidence into one estimate.
///
/// The result does not depend on the order of `evidence`: partial sums are
/// accumulated in sorted order, so permuted input gives bit-identical
/// scores.
pub fn fuse_instant(
    evidence: &[MarkerEvidence],
    cfg: &FusionConfig,
) -> Result<FusedEstimate, FusionError> {
    let mut weights = Vec::with_capacity(evidence.len());
    let mut terms: BTreeMap<&str, Vec<(f64, &MarkerEvidence)>> = BTreeMap::new();
    for (index, e) in evidence.iter().enumerate() {
        if !e.available {
            return Err(FusionError::UnavailableEvidence { index });
        }
        let category = e.category().ok_or(FusionError::MissingCategory { index })?;
        let w = cfg.weight(e.source);
        weights.push(w);
        let term = w * e.annotation.effective_probability() * e.annotation.effective_intensity();
        terms.entry(category).or_default().push((term, e));
    }

    let total_weight = sorted_sum(weights.iter().copied());
    let mut scores = BTreeMap::new();
    let mut carried = BTreeMap::new();
    for (category, mut items) in terms {
        let numerator = sorted_sum(items.iter().map(|(t, _)| *t));
        scores.insert(category.to_string(), (numerator / total_weight).min(1.0));
        items.sort_by(|a, b| {
            b.0.total_cmp(&a.0)
                .then_with(|| a.1.source.cmp(&b.1.source))
                .then_with(|| format!("{:?}", a.1.annotation).cmp(&format!("{:?}", b.1.annotation)))
        });
        carried.insert(category.to_string(), carry(items.iter().map(|(_, e)| *e)));
    }

    let (dominant, ambiguous) = dominance(&scores, cfg.ambiguity_epsilon);
    let mut contributors: Vec<Contributor> = evidence
        .iter()
        .map(|e| Contributor {
            source: e.source,
            weight: cfg.weight(e.source),
            synthetic: e.synthetic,
        })
        .collect();
    contributors.sort_by(|a, b| {
        a.source
            .cmp(&b.source)
            .then_with(|| a.weight.total_cmp(&b.weight))
            .then_with(|| a.synthetic.cmp(&b.synthetic))
    });

    Ok(FusedEstimate {
        scores,
        dominant,
        ambiguous,
        contributors,
        carried,
    })
}

fn sorted_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut v: Vec<f64> = values.collect();
    v.sort_by(f64::total_cmp);
    v.into_iter().sum()
}

/// Argmax (first alphabetically on ties) and the ambiguity flag.
pub(crate) fn dominance(scores: &BTreeMap<String, f64>, epsilon: f64) -> (Option<String>, bool) {
    let mut best: Option<(&String, f64)> = None;
    let mut second: Option<f64> = None;
    for (c, &s) in scores {
        match best {
            Some((_, b)) if s <= b => {
                if second.is_none_or(|x| s > x) {
                    second = Some(s);
                }
            }
            _ => {
                if let Some((_, b)) = best {
                    second = Some(b);
                }
                best = Some((c, s));
            }
        }
    }
    let ambiguous = match (best, second) {
        (Some((_, b)), Some(s)) => b - s < epsilon,
        _ => false,
    };
    (best.map(|(c, _)| c.clone()), ambiguous)
}

// Items arrive strongest first; the first value seen for a key wins.
fn carry<'a>(items: impl Iterator<Item = &'a MarkerEvidence>) -> Carried {
    let mut out = Carried::default();
    let mut modality: Option<Option<&str>> = None;
    for e in items {
        let a = &e.annotation;
        for (k, v) in &a.dimensions {
            out.dimensions.entry(k.clone()).or_insert(*v);
        }
        for (k, v) in &a.appraisals {
            out.appraisals.entry(k.clone()).or_insert(*v);
        }
        for (k, v) in &a.regulation {
            out.regulation.entry(*k).or_insert(*v);
        }
        let m = a.modality.as_deref();
        modality = match modality {
            None => Some(m),
            Some(prev) if prev == m => Some(prev),
            Some(_) => Some(None),
        };
    }
    out.modality = modality.flatten().map(str::to_string);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::EmotionAnnotation;

    fn ev(category: &str, p: f64, i: Option<f64>, source: CaptureSource) -> MarkerEvidence {
        let mut a = EmotionAnnotation::categorical(category).with_probability(p);
        a.intensity = i;
        MarkerEvidence::observed(a, source, 0.0)
    }

    #[test]
    fn single_item_identity() {
        let f = fuse_instant(
            &[ev("anger", 0.7, Some(1.0), CaptureSource::Face)],
            &FusionConfig::default(),
        )
        .unwrap();
        assert_eq!(f.score("anger"), 0.7);
        assert_eq!(f.dominant.as_deref(), Some("anger"));
        assert!(!f.ambiguous);
    }

    #[test]
    fn either_or_is_ambiguous() {
        let f = fuse_instant(
            &[
                ev("pleasure", 0.5, None, CaptureSource::Face),
                ev("friendliness", 0.5, None, CaptureSource::LanguageVoice),
            ],
            &FusionConfig::default(),
        )
        .unwrap();
        assert_eq!(f.score("pleasure"), 0.25);
        assert_eq!(f.score("friendliness"), 0.25);
        assert!(f.ambiguous);
        assert_eq!(f.dominant.as_deref(), Some("friendliness"));
    }

    #[test]
    fn weighted_voice_and_movement() {
        // (1.0·0.8·1.0 + 0.6·0.6·1.0) / (1.0 + 0.6) = 1.16 / 1.6 = 0.725
        let f = fuse_instant(
            &[
                ev("anger", 0.8, Some(1.0), CaptureSource::LanguageVoice),
                ev("anger", 0.6, Some(1.0), CaptureSource::MovementKinematic),
            ],
            &FusionConfig::default(),
        )
        .unwrap();
        assert!((f.score("anger") - 0.725).abs() < 1e-12);
        assert_eq!(f.contributors.len(), 2);
        assert_eq!(f.contributors[1].weight, 0.6);
    }

    #[test]
    fn empty_evidence() {
        let f = fuse_instant(&[], &FusionConfig::default()).unwrap();
        assert!(f.scores.is_empty());
        assert!(f.dominant.is_none());
        assert!(!f.ambiguous);
    }

    #[test]
    fn rejects_unavailable_and_uncategorised() {
        let cfg = FusionConfig::default();
        let err = fuse_instant(
            &[MarkerEvidence::unavailable(CaptureSource::Face, 0.0)],
            &cfg,
        );
        assert_eq!(err, Err(FusionError::UnavailableEvidence { index: 0 }));
        let mut e = ev("x", 1.0, None, CaptureSource::Face);
        e.annotation.category = None;
        assert_eq!(
            fuse_instant(&[e], &cfg),
            Err(FusionError::MissingCategory { index: 0 })
        );
    }

    #[test]
    fn dominance_rules() {
        let scores = |v: &[(&str, f64)]| -> BTreeMap<String, f64> {
            v.iter().map(|(c, s)| (c.to_string(), *s)).collect()
        };
        assert_eq!(
            dominance(&scores(&[("a", 0.3), ("b", 0.7), ("c", 0.65)]), 0.1),
            (Some("b".into()), true)
        );
        assert_eq!(
            dominance(&scores(&[("a", 0.3), ("b", 0.7), ("c", 0.5)]), 0.1),
            (Some("b".into()), false)
        );
        assert_eq!(
            dominance(&scores(&[("b", 0.4), ("a", 0.4)]), 0.0),
            (Some("a".into()), false)
        );
        assert_eq!(
            dominance(&scores(&[("z", 0.9)]), 0.1),
            (Some("z".into()), false)
        );
    }

    #[test]
    fn carried_descriptors_follow_strongest() {
        let mut strong = ev("pleasure", 0.9, None, CaptureSource::Face)
            .annotation
            .with_regulation(Regulation::Simulate, 0.8);
        strong.dimensions.insert("arousal".into(), 0.4);
        let mut weak = EmotionAnnotation::categorical("pleasure")
            .with_probability(0.2)
            .with_regulation(Regulation::Simulate, 0.1)
            .with_regulation(Regulation::Suppress, 0.3);
        weak.dimensions.insert("valence".into(), 0.5);
        let items = [
            MarkerEvidence::observed(weak, CaptureSource::LanguageVoice, 0.0),
            MarkerEvidence::observed(strong, CaptureSource::Face, 0.0),
        ];
        let f = fuse_instant(&items, &FusionConfig::default()).unwrap();
        let c = &f.carried["pleasure"];
        assert_eq!(c.regulation[&Regulation::Simulate], 0.8);
        assert_eq!(c.regulation[&Regulation::Suppress], 0.3);
        assert_eq!(c.dimensions.len(), 2);
        // face vs voice disagree
        assert_eq!(c.modality, None);
    }
}
