use std::path::Path;

use earl_core::earl::{format_number, load_profile, serialize_to_string};
use earl_core::fusion::{
    fill_missing, fuse_instant, parse_evidence_stream, to_complex_emotion, FusionError,
};
use earl_core::kb::{
    classify_movement, classify_voice, load_lexicon, tag_lexical, MovementDescriptor,
    RankedEmotions, VoiceFeatureDelta,
};
use earl_core::{
    decide_access, AccessPolicy, AnnotationDocument, AnnotationItem, FusedEstimate, FusionConfig,
    Lexicon, Scope, Severity, TemporalState, Verdict, VocabularyProfile,
};

use crate::corpus::{check_file, xml_files, Checked, CorpusReport};
use crate::{CliError, EXIT_DENY};

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::input(path, e))
}

pub fn validate(path: &Path, profile: Option<&Path>, strict: bool) -> Result<u8, CliError> {
    let mut vocabulary = match profile {
        Some(p) => load_profile(read(p)?.as_bytes()).map_err(|e| CliError::input(p, e))?,
        None => VocabularyProfile::earl_default(),
    };
    vocabulary.strict |= strict;

    let files = xml_files(path)?;
    let (mut errors, mut warnings) = (0usize, 0usize);
    for file in &files {
        let shown = file.display();
        match check_file(file, &vocabulary) {
            Checked::Parsed { findings, .. } => {
                for f in findings {
                    let fatal = f.severity == Severity::Error || strict;
                    if fatal {
                        errors += 1;
                    } else {
                        warnings += 1;
                    }
                    eprintln!("{shown}\t{f}");
                }
            }
            Checked::Failed(e) => {
                errors += 1;
                eprintln!("{shown}\terror\t{}\tdocument\t{e}", e.code());
            }
            Checked::Unreadable(e) => {
                errors += 1;
                eprintln!("{shown}\terror\tUNREADABLE\tdocument\t{e}");
            }
        }
    }
    eprintln!(
        "{} file(s) checked: {errors} error(s), {warnings} warning(s)",
        files.len()
    );
    Ok(if errors > 0 { 2 } else { 0 })
}

pub fn annotate(text: &str, lexicon: Option<&Path>) -> Result<u8, CliError> {
    let lexicon = match lexicon {
        Some(p) => load_lexicon(read(p)?.as_bytes()).map_err(|e| CliError::input(p, e))?,
        None => Lexicon::bundled(),
    };
    let items = tag_lexical(text, &lexicon)
        .into_iter()
        .map(|t| AnnotationItem::Simple(t.annotation))
        .collect();
    print!("{}", serialize_to_string(&AnnotationDocument::new(items)));
    Ok(0)
}

pub fn classify(voice: Option<&Path>, movement: Option<&Path>) -> Result<u8, CliError> {
    let ranked = match (voice, movement) {
        (Some(p), None) => {
            let v = VoiceFeatureDelta::from_feature_file(&read(p)?)
                .map_err(|e| CliError::input(p, e))?;
            classify_voice(&v)
        }
        (None, Some(p)) => {
            let m = MovementDescriptor::from_feature_file(&read(p)?)
                .map_err(|e| CliError::input(p, e))?;
            classify_movement(&m)
        }
        _ => {
            return Err(CliError::Usage(
                "give exactly one of --voice or --movement".into(),
            ))
        }
    };
    print!("{}", ranked_rows(&ranked));
    Ok(0)
}

/// `label<TAB>score<TAB>matched,features` per row; `-` when nothing matched.
fn ranked_rows(ranked: &RankedEmotions) -> String {
    let mut out = String::new();
    for e in &ranked.entries {
        let features = if e.matched_features.is_empty() {
            "-".to_string()
        } else {
            e.matched_features.join(",")
        };
        out.push_str(&format!(
            "{}\t{}\t{}\n",
            e.label,
            format_number(e.score),
            features
        ));
    }
    out
}

/// Replays a stream into a temporal state and fuses what is known at `at`.
fn fuse_stream(
    evidence: &Path,
    config: Option<&Path>,
    at: Option<f64>,
) -> Result<(FusedEstimate, FusionConfig), CliError> {
    let cfg = match config {
        Some(p) => FusionConfig::from_key_values(&read(p)?).map_err(|e| CliError::input(p, e))?,
        None => FusionConfig::default(),
    };
    let items =
        parse_evidence_stream(&read(evidence)?).map_err(|e| CliError::input(evidence, e))?;
    let mut state = TemporalState::new();
    for item in items {
        state
            .observe(item)
            .map_err(|e| CliError::input(evidence, e))?;
    }
    let now = match at {
        Some(t) if !t.is_finite() => {
            return Err(CliError::Usage(format!("--at {t} is not a finite time")))
        }
        Some(t) => t,
        None => state.clock,
    };
    let current = fill_missing(&state, now, &cfg).map_err(|e| match e {
        FusionError::TimeRegression { clock, .. } => CliError::Usage(format!(
            "--at {now} is before the last evidence at t={clock}"
        )),
        other => CliError::input(evidence, other),
    })?;
    let estimate = fuse_instant(&current, &cfg).map_err(|e| CliError::input(evidence, e))?;
    Ok((estimate, cfg))
}

fn describe(estimate: &FusedEstimate) {
    for (category, score) in estimate.ranked() {
        eprintln!("score\t{category}\t{}", format_number(score));
    }
    eprintln!("dominant\t{}", estimate.dominant.as_deref().unwrap_or("-"));
    eprintln!("ambiguous\t{}", estimate.ambiguous);
}

pub fn fuse(evidence: &Path, config: Option<&Path>, at: Option<f64>) -> Result<u8, CliError> {
    let (estimate, cfg) = fuse_stream(evidence, config, at)?;
    describe(&estimate);
    let doc = match to_complex_emotion(&estimate, Scope::Unscoped, &cfg) {
        Ok(item) => AnnotationDocument::new(vec![item]),
        Err(FusionError::NoSignal) => {
            eprintln!("no category reaches the constituent threshold");
            AnnotationDocument::default()
        }
        Err(e) => return Err(CliError::input(evidence, e)),
    };
    print!("{}", serialize_to_string(&doc));
    Ok(0)
}

pub fn decide(
    evidence: &Path,
    resource: &str,
    policy: &Path,
    config: Option<&Path>,
    at: Option<f64>,
) -> Result<u8, CliError> {
    let rules = AccessPolicy::parse(&read(policy)?).map_err(|e| CliError::input(policy, e))?;
    let (estimate, _) = fuse_stream(evidence, config, at)?;
    let decision = decide_access(&estimate, resource, &rules);
    eprintln!("{decision}");
    Ok(match decision.verdict {
        Verdict::Allow => 0,
        Verdict::Deny => EXIT_DENY,
    })
}

pub fn stats(path: &Path, json: bool) -> Result<u8, CliError> {
    let files = xml_files(path)?;
    let report = CorpusReport::build(&files, &VocabularyProfile::earl_default());
    if json {
        let s = serde_json::to_string(&report).expect("report serialises");
        println!("{s}");
    } else {
        print!("{}", report.to_lines());
    }
    Ok(0)
}
