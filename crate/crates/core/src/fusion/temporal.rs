use std::collections::BTreeMap;

use crate::kb::CaptureSource;

use super::{FusionConfig, FusionError, MarkerEvidence};

/// Latest observation per source and the stream clock. One state per
/// evidence stream.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct TemporalState {
    pub last_evidence: BTreeMap<CaptureSource, MarkerEvidence>,
    /// Seconds; never behind any stored timestamp.
    pub clock: f64,
}

impl TemporalState {
    pub fn new() -> Self {
        Self::default()
    }

    /// In-place form of [`update_temporal`].
    pub fn observe(&mut self, evidence: MarkerEvidence) -> Result<(), FusionError> {
        if evidence.timestamp < self.clock {
            return Err(FusionError::TimeRegression {
                clock: self.clock,
                timestamp: evidence.timestamp,
            });
        }
        self.clock = evidence.timestamp;
        // A dropout advances the clock but keeps the last real observation
        // so it can be predicted forward.
        if evidence.available {
            self.last_evidence.insert(evidence.source, evidence);
        }
        Ok(())
    }
}

/// Records `evidence` under its source, replacing the previous item, and
/// advances the clock to its timestamp.
pub fn update_temporal(
    mut state: TemporalState,
    evidence: MarkerEvidence,
) -> Result<TemporalState, FusionError> {
    state.observe(evidence)?;
    Ok(state)
}

/// Current evidence for every known source at time `now`.
///
/// Items observed exactly at `now` come back unchanged. Older items come
/// back as predicted copies (`synthetic = true`) whose probability is
/// scaled by `exp(-λ·(now − t))`; copies falling below the drop floor are
/// omitted. Output is ordered by source.
pub fn fill_missing(
    state: &TemporalState,
    now: f64,
    cfg: &FusionConfig,
) -> Result<Vec<MarkerEvidence>, FusionError> {
    if now < state.clock {
        return Err(FusionError::TimeRegression {
            clock: state.clock,
            timestamp: now,
        });
    }
    let mut out = Vec::with_capacity(state.last_evidence.len());
    for e in state.last_evidence.values() {
        let elapsed = now - e.timestamp;
        if elapsed == 0.0 {
            out.push(e.clone());
            continue;
        }
        let p = e.annotation.effective_probability() * (-cfg.decay_lambda * elapsed).exp();
        if p < cfg.drop_floor {
            continue;
        }
        let mut predicted = e.clone();
        predicted.annotation.probability = Some(p);
        predicted.synthetic = true;
        out.push(predicted);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::EmotionAnnotation;

    fn ev(source: CaptureSource, category: &str, p: f64, t: f64) -> MarkerEvidence {
        MarkerEvidence::observed(
            EmotionAnnotation::categorical(category).with_probability(p),
            source,
            t,
        )
    }

    #[test]
    fn first_update() {
        let s = update_temporal(
            TemporalState::new(),
            ev(CaptureSource::Face, "joy", 0.8, 1.0),
        )
        .unwrap();
        assert_eq!(s.clock, 1.0);
        assert_eq!(s.last_evidence.len(), 1);
    }

    #[test]
    fn same_source_is_replaced() {
        let s = update_temporal(
            TemporalState::new(),
            ev(CaptureSource::Face, "joy", 0.8, 1.0),
        )
        .unwrap();
        let s = update_temporal(s, ev(CaptureSource::Face, "fear", 0.4, 2.0)).unwrap();
        assert_eq!(s.last_evidence.len(), 1);
        assert_eq!(s.last_evidence[&CaptureSource::Face].timestamp, 2.0);
        assert_eq!(
            s.last_evidence[&CaptureSource::Face].category(),
            Some("fear")
        );
    }

    #[test]
    fn regression_is_rejected() {
        let s = update_temporal(
            TemporalState::new(),
            ev(CaptureSource::Face, "joy", 0.8, 2.0),
        )
        .unwrap();
        let err = update_temporal(s.clone(), ev(CaptureSource::Face, "joy", 0.8, 1.0)).unwrap_err();
        assert_eq!(err.code(), "TIME_REGRESSION");
        assert!(fill_missing(&s, 1.5, &FusionConfig::default()).is_err());
    }

    #[test]
    fn dropout_keeps_last_observation() {
        let s = update_temporal(
            TemporalState::new(),
            ev(CaptureSource::Face, "joy", 0.8, 0.0),
        )
        .unwrap();
        let s = update_temporal(s, MarkerEvidence::unavailable(CaptureSource::Face, 3.0)).unwrap();
        assert_eq!(s.clock, 3.0);
        assert_eq!(s.last_evidence[&CaptureSource::Face].timestamp, 0.0);
    }

    #[test]
    fn zero_elapsed_is_identity() {
        let e = ev(CaptureSource::Face, "joy", 0.8, 0.0);
        let s = update_temporal(TemporalState::new(), e.clone()).unwrap();
        assert_eq!(
            fill_missing(&s, 0.0, &FusionConfig::default()).unwrap(),
            [e]
        );
    }

    #[test]
    fn decay_after_five_seconds() {
        // 0.8 · e^(−0.2·5) = 0.8 · e^(−1) ≈ 0.29430
        let s = update_temporal(
            TemporalState::new(),
            ev(CaptureSource::Face, "joy", 0.8, 0.0),
        )
        .unwrap();
        let got = fill_missing(&s, 5.0, &FusionConfig::default()).unwrap();
        assert_eq!(got.len(), 1);
        let p = got[0].annotation.probability.unwrap();
        assert!((p - 0.294_303_552_937_153_9).abs() < 1e-12, "{p}");
        assert!(got[0].synthetic);
        assert_eq!(got[0].timestamp, 0.0);
    }

    #[test]
    fn decayed_below_floor_is_dropped() {
        // 0.8 · e^(−4) ≈ 0.01465 < 0.05
        let s = update_temporal(
            TemporalState::new(),
            ev(CaptureSource::Face, "joy", 0.8, 0.0),
        )
        .unwrap();
        assert!(fill_missing(&s, 20.0, &FusionConfig::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn missing_probability_decays_from_one() {
        let e = MarkerEvidence::observed(
            EmotionAnnotation::categorical("joy"),
            CaptureSource::Face,
            0.0,
        );
        let s = update_temporal(TemporalState::new(), e).unwrap();
        let got = fill_missing(&s, 5.0, &FusionConfig::default()).unwrap();
        assert!((got[0].annotation.probability.unwrap() - (-1.0f64).exp()).abs() < 1e-15);
    }
}
