#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FeatureFileError {
    #[error("line {line}: expected `field=value`")]
    MalformedLine { line: usize },
    #[error("line {line}: unknown field `{field}`")]
    UnknownField { line: usize, field: String },
    #[error("line {line}: `{value}` is not a valid value for `{field}`")]
    BadValue {
        line: usize,
        field: String,
        value: String,
    },
    #[error("line {line}: field `{field}` given twice")]
    DuplicateField { line: usize, field: String },
}

/// Splits `field=value` lines, skipping blanks and `#` comments. Fields must
/// be drawn from `known`; values are lowercased.
pub(crate) fn parse_feature_lines(
    input: &str,
    known: &[&'static str],
) -> Result<Vec<(usize, &'static str, String)>, FeatureFileError> {
    let mut out: Vec<(usize, &'static str, String)> = Vec::new();
    for (i, raw) in input.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (field, value) = content
            .split_once('=')
            .ok_or(FeatureFileError::MalformedLine { line })?;
        let field = field.trim();
        let known_field = known.iter().copied().find(|k| *k == field).ok_or_else(|| {
            FeatureFileError::UnknownField {
                line,
                field: field.to_string(),
            }
        })?;
        if out.iter().any(|(_, f, _)| *f == known_field) {
            return Err(FeatureFileError::DuplicateField {
                line,
                field: field.to_string(),
            });
        }
        out.push((line, known_field, value.trim().to_ascii_lowercase()));
    }
    Ok(out)
}
