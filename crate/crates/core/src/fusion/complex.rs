use crate::model::{AnnotationItem, ComplexEmotion, EmotionAnnotation, Scope};

use super::{FusedEstimate, FusionConfig, FusionError};

/// Renders a fused estimate as EARL.
///
/// Every category scoring at least the constituent threshold becomes an
/// emotion whose probability is its score. One qualifying category gives a
/// simple `<emotion>` carrying `scope`; several give a `<complex-emotion>`
/// with the dominant category first and scores descending.
pub fn to_complex_emotion(
    estimate: &FusedEstimate,
    scope: Scope,
    cfg: &FusionConfig,
) -> Result<AnnotationItem, FusionError> {
    let mut constituents: Vec<EmotionAnnotation> = estimate
        .ranked()
        .into_iter()
        .filter(|(_, score)| *score > 0.0 && *score >= cfg.constituent_threshold)
        .map(|(category, score)| {
            let mut a = EmotionAnnotation::categorical(category).with_probability(score);
            if let Some(carried) = estimate.carried.get(category) {
                a.dimensions = carried.dimensions.clone();
                a.appraisals = carried.appraisals.clone();
                a.regulation = carried.regulation.clone();
                a.modality = carried.modality.clone();
            }
            a
        })
        .collect();
    match constituents.len() {
        0 => Err(FusionError::NoSignal),
        1 => Ok(AnnotationItem::Simple(
            constituents.remove(0).with_scope(scope),
        )),
        _ => Ok(AnnotationItem::Complex(ComplexEmotion::new(
            constituents,
            scope,
        ))),
    }
}
