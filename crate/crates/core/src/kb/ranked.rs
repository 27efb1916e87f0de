use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq)]
pub struct RankedEmotion {
    pub label: &'static str,
    /// In [0, 1].
    pub score: f64,
    pub matched_features: Vec<&'static str>,
}

/// Classifier output ordered best first: score descending, then number of
/// matched features descending (a fully matched larger pattern outranks a
/// fully matched subset of it), then label ascending.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct RankedEmotions {
    pub entries: Vec<RankedEmotion>,
}

impl RankedEmotions {
    pub(crate) fn new(mut entries: Vec<RankedEmotion>) -> Self {
        entries.sort_by(rank_order);
        RankedEmotions { entries }
    }

    pub fn top(&self) -> Option<&RankedEmotion> {
        self.entries.first()
    }

    pub fn score(&self, label: &str) -> Option<f64> {
        self.entries
            .iter()
            .find(|e| e.label == label)
            .map(|e| e.score)
    }

    pub fn labels(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.label).collect()
    }
}

pub(crate) fn rank_order(a: &RankedEmotion, b: &RankedEmotion) -> Ordering {
    b.score
        .total_cmp(&a.score)
        .then_with(|| b.matched_features.len().cmp(&a.matched_features.len()))
        .then_with(|| a.label.cmp(b.label))
}

/// Result of comparing one observed feature with a pattern's expectation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Agreement {
    Match,
    Contradict,
    Neutral,
}

/// `(matched − contradicted) / pattern size`, clamped to [0, 1]. An empty
/// pattern scores 0.
pub(crate) fn score_pattern(
    label: &'static str,
    checks: impl IntoIterator<Item = (&'static str, Agreement)>,
) -> RankedEmotion {
    let mut size = 0usize;
    let mut contradicted = 0usize;
    let mut matched = Vec::new();
    for (feature, agreement) in checks {
        size += 1;
        match agreement {
            Agreement::Match => matched.push(feature),
            Agreement::Contradict => contradicted += 1,
            Agreement::Neutral => {}
        }
    }
    let score = if size == 0 {
        0.0
    } else {
        ((matched.len() as f64 - contradicted as f64) / size as f64).clamp(0.0, 1.0)
    };
    RankedEmotion {
        label,
        score,
        matched_features: matched,
    }
}
