use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use earl_core::earl::{parse_document_with, ParseError, ParseOutcome};
use earl_core::{validate_document, AnnotationItem, Finding, VocabularyProfile};
use serde::Serialize;
use walkdir::WalkDir;

use crate::CliError;

/// `.xml` files under `path` in sorted order; a file path is returned as is.
pub fn xml_files(path: &Path) -> Result<Vec<PathBuf>, CliError> {
    if !path.exists() {
        return Err(CliError::input(path, "no such file or directory"));
    }
    if path.is_file() {
        return Ok(vec![path.to_path_buf()]);
    }
    let mut files = Vec::new();
    for entry in WalkDir::new(path).sort_by_file_name() {
        let entry = entry.map_err(|e| CliError::input(path, e))?;
        if entry.file_type().is_file() && entry.path().extension().is_some_and(|x| x == "xml") {
            files.push(entry.into_path());
        }
    }
    Ok(files)
}

/// Outcome of reading and validating one corpus file.
pub enum Checked {
    Parsed {
        outcome: ParseOutcome,
        findings: Vec<Finding>,
    },
    Failed(ParseError),
    Unreadable(std::io::Error),
}

pub fn check_file(path: &Path, profile: &VocabularyProfile) -> Checked {
    let bytes = match std::fs::read(path) {
        Ok(b) => b,
        Err(e) => return Checked::Unreadable(e),
    };
    match parse_document_with(&bytes, profile) {
        Ok(outcome) => {
            let mut findings = outcome.warnings.clone();
            findings.extend(validate_document(&outcome.document, profile).findings);
            Checked::Parsed { outcome, findings }
        }
        Err(e) => Checked::Failed(e),
    }
}

#[derive(Debug, Default, Serialize, PartialEq, Eq)]
pub struct CorpusReport {
    pub files_scanned: usize,
    /// Every `<emotion>`, constituents included.
    pub annotations_count: usize,
    pub complex_count: usize,
    /// Unreadable or unparseable files plus error-severity findings.
    pub error_count: usize,
    /// Category → annotation count; uncategorised annotations under `(none)`.
    pub categories: BTreeMap<String, usize>,
}

pub const UNCATEGORISED: &str = "(none)";

impl CorpusReport {
    pub fn build(files: &[PathBuf], profile: &VocabularyProfile) -> Self {
        let mut report = CorpusReport::default();
        for path in files {
            report.files_scanned += 1;
            match check_file(path, profile) {
                Checked::Parsed { outcome, findings } => {
                    report.error_count += findings
                        .iter()
                        .filter(|f| f.severity == earl_core::Severity::Error)
                        .count();
                    for item in &outcome.document.items {
                        if matches!(item, AnnotationItem::Complex(_)) {
                            report.complex_count += 1;
                        }
                        for e in item.emotions() {
                            report.annotations_count += 1;
                            let key = e.category.as_deref().unwrap_or(UNCATEGORISED);
                            *report.categories.entry(key.to_string()).or_default() += 1;
                        }
                    }
                }
                Checked::Failed(_) | Checked::Unreadable(_) => report.error_count += 1,
            }
        }
        report
    }

    pub fn to_lines(&self) -> String {
        let mut out = format!(
            "files_scanned\t{}\nannotations_count\t{}\ncomplex_count\t{}\nerror_count\t{}\n",
            self.files_scanned, self.annotations_count, self.complex_count, self.error_count
        );
        for (category, n) in &self.categories {
            out.push_str(&format!("category.{category}\t{n}\n"));
        }
        out
    }
}
