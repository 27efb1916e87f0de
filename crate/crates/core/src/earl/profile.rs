use std::collections::BTreeSet;

use quick_xml::events::Event;
use quick_xml::Reader;

use crate::model::VocabularyProfile;

use super::is_reserved_attribute;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProfileError {
    #[error("malformed profile XML: {0}")]
    MalformedXml(String),
    #[error("unexpected element `{0}` in profile")]
    UnexpectedElement(String),
    #[error("empty `{0}` label")]
    EmptyLabel(String),
    #[error("`{label}` listed twice as {kind}")]
    DuplicateLabel { kind: String, label: String },
    #[error("`{0}` is an EARL attribute and cannot name a dimension or appraisal")]
    ReservedName(String),
    #[error("`{0}` is listed both as a dimension and as an appraisal")]
    DimensionAppraisalClash(String),
}

/// Reads a vocabulary profile:
///
/// ```xml
/// <profile strict="true">
///   <category>pleasure</category>
///   <dimension>arousal</dimension>
///   <appraisal>suddenness</appraisal>
///   <modality>face</modality>
/// </profile>
/// ```
pub fn load_profile(input: &[u8]) -> Result<VocabularyProfile, ProfileError> {
    let text = std::str::from_utf8(input)
        .map_err(|_| ProfileError::MalformedXml("input is not valid UTF-8".into()))?;
    let mut reader = Reader::from_str(text);
    let mut profile = VocabularyProfile::default();
    let mut open: Option<String> = None;
    let mut label = String::new();
    let mut depth = 0usize;

    loop {
        let event = reader
            .read_event()
            .map_err(|e| ProfileError::MalformedXml(e.to_string()))?;
        match event {
            Event::Start(ref e) | Event::Empty(ref e) if depth == 0 => {
                if e.name().as_ref() != b"profile" {
                    return Err(ProfileError::UnexpectedElement(
                        String::from_utf8_lossy(e.name().as_ref()).into_owned(),
                    ));
                }
                for attr in e.attributes() {
                    let attr = attr.map_err(|e| ProfileError::MalformedXml(e.to_string()))?;
                    if attr.key.as_ref() == b"strict" {
                        let v = attr
                            .unescape_value()
                            .map_err(|e| ProfileError::MalformedXml(e.to_string()))?;
                        profile.strict = matches!(v.trim(), "true" | "1" | "yes");
                    }
                }
                if matches!(event, Event::Start(_)) {
                    depth = 1;
                }
            }
            Event::Start(e) if depth == 1 => {
                let name = String::from_utf8_lossy(e.name().as_ref()).into_owned();
                if !matches!(
                    name.as_str(),
                    "category" | "dimension" | "appraisal" | "modality"
                ) {
                    return Err(ProfileError::UnexpectedElement(name));
                }
                open = Some(name);
                label.clear();
                depth = 2;
            }
            Event::Empty(e) if depth == 1 => {
                let name = String::from_utf8_lossy(e.name().as_ref()).into_owned();
                return Err(ProfileError::EmptyLabel(name));
            }
            Event::Start(e) | Event::Empty(e) => {
                return Err(ProfileError::UnexpectedElement(
                    String::from_utf8_lossy(e.name().as_ref()).into_owned(),
                ))
            }
            Event::Text(t) if depth == 2 => {
                let s = t
                    .unescape()
                    .map_err(|e| ProfileError::MalformedXml(e.to_string()))?;
                label.push_str(&s);
            }
            Event::End(_) if depth == 2 => {
                let kind = open.take().expect("label element is open");
                add_label(&mut profile, &kind, label.trim())?;
                depth = 1;
            }
            Event::End(_) => depth = depth.saturating_sub(1),
            Event::Eof if depth == 0 => break,
            Event::Eof => return Err(ProfileError::MalformedXml("unclosed element".into())),
            _ => {}
        }
    }
    if let Some(name) = profile
        .dimension_names
        .intersection(&profile.appraisal_names)
        .next()
    {
        return Err(ProfileError::DimensionAppraisalClash(name.clone()));
    }
    Ok(profile)
}

fn add_label(profile: &mut VocabularyProfile, kind: &str, label: &str) -> Result<(), ProfileError> {
    if label.is_empty() {
        return Err(ProfileError::EmptyLabel(kind.to_string()));
    }
    let set: &mut BTreeSet<String> = match kind {
        "category" => &mut profile.categories,
        "dimension" => &mut profile.dimension_names,
        "appraisal" => &mut profile.appraisal_names,
        _ => &mut profile.modalities,
    };
    if matches!(kind, "dimension" | "appraisal") && is_reserved_attribute(label) {
        return Err(ProfileError::ReservedName(label.to_string()));
    }
    if !set.insert(label.to_string()) {
        return Err(ProfileError::DuplicateLabel {
            kind: kind.to_string(),
            label: label.to_string(),
        });
    }
    Ok(())
}
