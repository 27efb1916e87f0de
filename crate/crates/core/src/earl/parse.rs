use std::borrow::Cow;

use quick_xml::events::{BytesStart, Event};
use quick_xml::Reader;

use crate::model::{
    AnnotationDocument, AnnotationItem, ComplexEmotion, EmotionAnnotation, Regulation, Scope,
    VocabularyProfile,
};
use crate::validate::{Finding, FindingCode, Severity};

use super::ROOT_ELEMENT;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParseError {
    #[error("malformed XML at byte {position}: {message}")]
    MalformedXml { position: u64, message: String },
    #[error("attribute `{attribute}` has unparseable number `{value}`")]
    UnparseableNumber { attribute: String, value: String },
    #[error("time span end {end} is not after start {start}")]
    StartAfterEnd { start: f64, end: f64 },
    #[error("complex-emotion nested inside complex-emotion")]
    NestedComplex,
    #[error("time span needs both `start` and `end`")]
    IncompleteSpan,
    #[error("element carries enclosed text and a reference or time span")]
    ConflictingScope,
    #[error("`{element}` is not allowed inside `{parent}`")]
    UnexpectedElement { element: String, parent: String },
}

impl ParseError {
    /// Stable code string, e.g. `UNPARSEABLE_NUMBER(intensity)`.
    pub fn code(&self) -> String {
        match self {
            ParseError::MalformedXml { .. } => "MALFORMED_XML".into(),
            ParseError::UnparseableNumber { attribute, .. } => {
                format!("UNPARSEABLE_NUMBER({attribute})")
            }
            ParseError::StartAfterEnd { .. } => "START_AFTER_END".into(),
            ParseError::NestedComplex => "NESTED_COMPLEX".into(),
            ParseError::IncompleteSpan => "INCOMPLETE_SPAN".into(),
            ParseError::ConflictingScope => "CONFLICTING_SCOPE".into(),
            ParseError::UnexpectedElement { .. } => "UNEXPECTED_ELEMENT".into(),
        }
    }
}

/// A parsed document together with the non-fatal findings raised while
/// reading it (unmapped attributes, skipped elements).
#[derive(Debug, Clone, PartialEq)]
pub struct ParseOutcome {
    pub document: AnnotationDocument,
    pub warnings: Vec<Finding>,
}

/// Parses EARL XML using the stock EARL vocabulary.
pub fn parse_document(input: &[u8]) -> Result<ParseOutcome, ParseError> {
    parse_document_with(input, &VocabularyProfile::earl_default())
}

/// Parses EARL XML. The profile decides which numeric attributes are
/// dimensions and which are appraisals; unlisted numeric attributes are
/// kept as appraisals with a warning.
///
/// Accepts an `<earl>` root, bare `<emotion>`/`<complex-emotion>` fragments,
/// or EARL elements embedded in other markup.
pub fn parse_document_with(
    input: &[u8],
    profile: &VocabularyProfile,
) -> Result<ParseOutcome, ParseError> {
    let text = std::str::from_utf8(input).map_err(|e| ParseError::MalformedXml {
        position: e.valid_up_to() as u64,
        message: "input is not valid UTF-8".into(),
    })?;
    let mut parser = Parser {
        profile,
        reader: Reader::from_str(text),
        stack: Vec::new(),
        document: AnnotationDocument::default(),
        warnings: Vec::new(),
    };
    parser.run()?;
    Ok(ParseOutcome {
        document: parser.document,
        warnings: parser.warnings,
    })
}

enum Frame {
    Other(String),
    Emotion(OpenEmotion),
    Complex(OpenComplex),
}

struct OpenEmotion {
    annotation: EmotionAnnotation,
    scope: ScopeParts,
    location: String,
}

struct OpenComplex {
    constituents: Vec<EmotionAnnotation>,
    scope: ScopeParts,
    location: String,
}

#[derive(Default)]
struct ScopeParts {
    href: Option<String>,
    start: Option<f64>,
    end: Option<f64>,
    text: String,
}

impl ScopeParts {
    fn finish(self) -> Result<Scope, ParseError> {
        let span = match (self.start, self.end) {
            (None, None) => None,
            (Some(start), Some(end)) if end > start => Some((start, end)),
            (Some(start), Some(end)) => return Err(ParseError::StartAfterEnd { start, end }),
            _ => return Err(ParseError::IncompleteSpan),
        };
        let has_text = !self.text.trim().is_empty();
        if has_text && (self.href.is_some() || span.is_some()) {
            return Err(ParseError::ConflictingScope);
        }
        Ok(match (self.href, span) {
            (Some(uri), Some((start, end))) => Scope::ReferencedTimeSpan { uri, start, end },
            (Some(uri), None) => Scope::Reference(uri),
            (None, Some((start, end))) => Scope::TimeSpan { start, end },
            (None, None) if has_text => Scope::InlineText(self.text),
            (None, None) => Scope::Unscoped,
        })
    }
}

struct Parser<'a, 'p> {
    profile: &'p VocabularyProfile,
    reader: Reader<&'a [u8]>,
    stack: Vec<Frame>,
    document: AnnotationDocument,
    warnings: Vec<Finding>,
}

impl<'a> Parser<'a, '_> {
    fn run(&mut self) -> Result<(), ParseError> {
        loop {
            let event = self.reader.read_event().map_err(|e| self.malformed(e))?;
            match event {
                Event::Start(e) => self.open(&e, false)?,
                Event::Empty(e) => self.open(&e, true)?,
                Event::End(_) => self.close()?,
                Event::Text(t) => {
                    let text = t.unescape().map_err(|e| self.malformed(e))?;
                    self.push_text(&text);
                }
                Event::CData(c) => {
                    let raw = c.into_inner();
                    let text = String::from_utf8_lossy(&raw).into_owned();
                    self.push_text(&text);
                }
                Event::Eof => break,
                // declarations, comments, processing instructions, doctype
                _ => {}
            }
        }
        if let Some(frame) = self.stack.last() {
            let name = match frame {
                Frame::Other(n) => n.as_str(),
                Frame::Emotion(_) => "emotion",
                Frame::Complex(_) => "complex-emotion",
            };
            return Err(ParseError::MalformedXml {
                position: self.reader.buffer_position(),
                message: format!("unclosed element `{name}`"),
            });
        }
        Ok(())
    }

    fn malformed(&self, e: impl std::fmt::Display) -> ParseError {
        ParseError::MalformedXml {
            position: self.reader.error_position(),
            message: e.to_string(),
        }
    }

    fn open(&mut self, e: &BytesStart<'_>, empty: bool) -> Result<(), ParseError> {
        let name = String::from_utf8_lossy(e.name().as_ref()).into_owned();
        let attrs = self.attributes(e)?;
        let frame = match name.as_str() {
            "emotion" => {
                let location = match self.innermost_earl() {
                    Some(Frame::Emotion(_)) => {
                        return Err(ParseError::UnexpectedElement {
                            element: name,
                            parent: "emotion".into(),
                        })
                    }
                    Some(Frame::Complex(c)) => {
                        format!("{}.constituent[{}]", c.location, c.constituents.len())
                    }
                    _ => format!("item[{}]", self.document.items.len()),
                };
                Frame::Emotion(self.open_emotion(attrs, location)?)
            }
            "complex-emotion" => {
                match self.innermost_earl() {
                    Some(Frame::Complex(_)) => return Err(ParseError::NestedComplex),
                    Some(Frame::Emotion(_)) => {
                        return Err(ParseError::UnexpectedElement {
                            element: name,
                            parent: "emotion".into(),
                        })
                    }
                    _ => {}
                }
                let location = format!("item[{}]", self.document.items.len());
                Frame::Complex(self.open_complex(attrs, location)?)
            }
            _ => {
                if name == ROOT_ELEMENT && self.stack.is_empty() {
                    for (key, value) in attrs {
                        if key == "xml:base" {
                            self.document.source_uri = Some(value.into_owned());
                        }
                    }
                } else {
                    let location = self.current_location();
                    self.warn(
                        FindingCode::UnknownElement,
                        location,
                        format!("element `{name}` is not EARL; its content is scanned"),
                    );
                }
                Frame::Other(name)
            }
        };
        self.stack.push(frame);
        if empty {
            self.close()?;
        }
        Ok(())
    }

    fn attributes<'e>(
        &self,
        e: &'e BytesStart<'_>,
    ) -> Result<Vec<(String, Cow<'e, str>)>, ParseError> {
        let mut out = Vec::new();
        for attr in e.attributes() {
            let attr = attr.map_err(|err| self.malformed(err))?;
            let key = String::from_utf8_lossy(attr.key.as_ref()).into_owned();
            let value = attr.unescape_value().map_err(|err| self.malformed(err))?;
            out.push((key, value));
        }
        Ok(out)
    }

    fn open_emotion(
        &mut self,
        attrs: Vec<(String, Cow<'_, str>)>,
        location: String,
    ) -> Result<OpenEmotion, ParseError> {
        let mut a = EmotionAnnotation::default();
        let mut scope = ScopeParts::default();
        for (key, value) in attrs {
            if self.scope_attribute(&mut scope, &key, &value, &location)? {
                continue;
            }
            match key.as_str() {
                "category" => a.category = Some(value.into_owned()),
                "modality" => a.modality = Some(value.into_owned()),
                "intensity" => a.intensity = Some(number(&key, &value)?),
                "probability" => a.probability = Some(number(&key, &value)?),
                "amplify" | "attenuate" | "simulate" | "suppress" | "hide" => {
                    let kind: Regulation = key.parse().expect("regulation attribute names");
                    if key == "hide" {
                        self.warn(
                            FindingCode::UnknownAttribute,
                            location.clone(),
                            "`hide` read as `suppress`".into(),
                        );
                    }
                    let v = number(&key, &value)?;
                    if a.regulation.insert(kind, v).is_some() {
                        self.warn(
                            FindingCode::UnknownAttribute,
                            location.clone(),
                            format!("`{key}` repeats an earlier `{kind}` value; last one kept"),
                        );
                    }
                }
                k if self.profile.dimension_names.contains(k) => {
                    a.dimensions.insert(key.clone(), number(&key, &value)?);
                }
                k if self.profile.appraisal_names.contains(k) => {
                    a.appraisals.insert(key.clone(), number(&key, &value)?);
                }
                _ => match parse_number(&value) {
                    Some(v) => {
                        self.warn(
                            FindingCode::UnknownAttribute,
                            location.clone(),
                            format!("`{key}` is not in the profile; kept as an appraisal"),
                        );
                        a.appraisals.insert(key, v);
                    }
                    None => self.warn(
                        FindingCode::UnknownAttribute,
                        location.clone(),
                        format!("attribute `{key}=\"{value}\"` ignored"),
                    ),
                },
            }
        }
        Ok(OpenEmotion {
            annotation: a,
            scope,
            location,
        })
    }

    fn open_complex(
        &mut self,
        attrs: Vec<(String, Cow<'_, str>)>,
        location: String,
    ) -> Result<OpenComplex, ParseError> {
        let mut scope = ScopeParts::default();
        for (key, value) in attrs {
            if !self.scope_attribute(&mut scope, &key, &value, &location)? {
                self.warn(
                    FindingCode::UnknownAttribute,
                    location.clone(),
                    format!("attribute `{key}=\"{value}\"` ignored on complex-emotion"),
                );
            }
        }
        Ok(OpenComplex {
            constituents: Vec::new(),
            scope,
            location,
        })
    }

    /// Consumes scope and namespace attributes; returns false for anything else.
    fn scope_attribute(
        &mut self,
        scope: &mut ScopeParts,
        key: &str,
        value: &str,
        location: &str,
    ) -> Result<bool, ParseError> {
        match key {
            "xlink:href" | "href" => {
                if scope.href.is_some() {
                    self.warn(
                        FindingCode::UnknownAttribute,
                        location.to_string(),
                        format!("second reference `{key}` ignored"),
                    );
                } else {
                    scope.href = Some(value.to_string());
                }
            }
            "start" => scope.start = Some(number(key, value)?),
            "end" => scope.end = Some(number(key, value)?),
            k if k == "xmlns" || k.starts_with("xmlns:") => {}
            _ => return Ok(false),
        }
        Ok(true)
    }

    fn close(&mut self) -> Result<(), ParseError> {
        let frame = self.stack.pop().ok_or_else(|| ParseError::MalformedXml {
            position: self.reader.buffer_position(),
            message: "unexpected closing tag".into(),
        })?;
        match frame {
            Frame::Other(_) => {}
            Frame::Emotion(open) => {
                let mut annotation = open.annotation;
                annotation.scope = open.scope.finish()?;
                match self.innermost_earl_mut() {
                    Some(Frame::Complex(c)) => c.constituents.push(annotation),
                    _ => self.document.items.push(AnnotationItem::Simple(annotation)),
                }
            }
            Frame::Complex(open) => {
                let complex = ComplexEmotion::new(open.constituents, open.scope.finish()?);
                self.document.items.push(AnnotationItem::Complex(complex));
            }
        }
        Ok(())
    }

    fn push_text(&mut self, text: &str) {
        match self.innermost_earl_mut() {
            Some(Frame::Emotion(e)) => e.scope.text.push_str(text),
            Some(Frame::Complex(c)) => c.scope.text.push_str(text),
            _ => {}
        }
    }

    fn innermost_earl(&self) -> Option<&Frame> {
        self.stack
            .iter()
            .rev()
            .find(|f| !matches!(f, Frame::Other(_)))
    }

    fn innermost_earl_mut(&mut self) -> Option<&mut Frame> {
        self.stack
            .iter_mut()
            .rev()
            .find(|f| !matches!(f, Frame::Other(_)))
    }

    fn current_location(&self) -> String {
        match self.innermost_earl() {
            Some(Frame::Emotion(e)) => e.location.clone(),
            Some(Frame::Complex(c)) => c.location.clone(),
            _ => "document".into(),
        }
    }

    fn warn(&mut self, code: FindingCode, location: String, message: String) {
        self.warnings.push(Finding {
            severity: Severity::Warning,
            code,
            message,
            location,
        });
    }
}

fn parse_number(value: &str) -> Option<f64> {
    value.trim().parse::<f64>().ok().filter(|v| v.is_finite())
}

fn number(attribute: &str, value: &str) -> Result<f64, ParseError> {
    parse_number(value).ok_or_else(|| ParseError::UnparseableNumber {
        attribute: attribute.to_string(),
        value: value.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> ParseOutcome {
        parse_document(s.as_bytes()).unwrap()
    }

    fn single(s: &str) -> EmotionAnnotation {
        let doc = parse(s).document;
        assert_eq!(doc.items.len(), 1);
        match &doc.items[0] {
            AnnotationItem::Simple(a) => a.clone(),
            other => panic!("expected simple emotion, got {other:?}"),
        }
    }

    #[test]
    fn inline_text() {
        let a = single(r#"<emotion category="pleasure">Hello!</emotion>"#);
        assert_eq!(a.category.as_deref(), Some("pleasure"));
        assert_eq!(a.scope, Scope::InlineText("Hello!".into()));
    }

    #[test]
    fn standoff_reference() {
        let a = single(r#"<emotion xlink:href="face12.jpg" category="pleasure"/>"#);
        assert_eq!(a.scope, Scope::Reference("face12.jpg".into()));
        let b = single(r#"<emotion href="face12.jpg" category="pleasure"/>"#);
        assert_eq!(a, b);
    }

    #[test]
    fn time_span() {
        let a = single(r#"<emotion start="0.4" end="1.3" category="pleasure"/>"#);
        assert_eq!(
            a.scope,
            Scope::TimeSpan {
                start: 0.4,
                end: 1.3
            }
        );
    }

    #[test]
    fn referenced_time_span() {
        let a = single(r#"<emotion xlink:href="talk.wav" start="2" end="3.5" category="anger"/>"#);
        assert_eq!(
            a.scope,
            Scope::ReferencedTimeSpan {
                uri: "talk.wav".into(),
                start: 2.0,
                end: 3.5
            }
        );
    }

    #[test]
    fn masking_complex() {
        let doc = parse(
            r#"<complex-emotion xlink:href="face12.jpg">
<emotion category="pleasure" simulate="0.8"/>
<emotion category="annoyance" suppress="0.5"/>
</complex-emotion>"#,
        )
        .document;
        let AnnotationItem::Complex(c) = &doc.items[0] else {
            panic!("expected complex")
        };
        assert_eq!(c.scope, Scope::Reference("face12.jpg".into()));
        assert_eq!(c.constituents.len(), 2);
        assert_eq!(c.constituents[0].regulation[&Regulation::Simulate], 0.8);
        assert_eq!(c.constituents[1].regulation[&Regulation::Suppress], 0.5);
        assert!(c.constituents.iter().all(|k| k.scope.is_unscoped()));
    }

    #[test]
    fn dimensions_and_appraisals_follow_profile() {
        let out = parse(
            r#"<emotion xlink:href="face12.jpg" arousal="-0.2" valence="0.5" power="0.2"/>
<emotion xlink:href="face12.jpg" suddenness="-0.8" intrinsic_pleasantness="0.7"
goal_conduciveness="0.3" relevance_self_concerns="0.7"/>"#,
        );
        assert!(out.warnings.is_empty());
        let items = out.document.items;
        let AnnotationItem::Simple(dims) = &items[0] else {
            panic!()
        };
        assert_eq!(dims.dimensions["arousal"], -0.2);
        assert_eq!(dims.dimensions["valence"], 0.5);
        assert_eq!(dims.dimensions["power"], 0.2);
        let AnnotationItem::Simple(apps) = &items[1] else {
            panic!()
        };
        assert_eq!(apps.appraisals.len(), 4);
        assert_eq!(apps.appraisals["suddenness"], -0.8);
    }

    #[test]
    fn unknown_numeric_attribute_kept_with_warning() {
        let out = parse(r#"<emotion category="x" novelty="0.3" colour="red"/>"#);
        let AnnotationItem::Simple(a) = &out.document.items[0] else {
            panic!()
        };
        assert_eq!(a.appraisals["novelty"], 0.3);
        assert_eq!(out.warnings.len(), 2);
        assert!(out
            .warnings
            .iter()
            .all(|w| w.code == FindingCode::UnknownAttribute));
        assert!(out.warnings[1].message.contains("colour"));
    }

    #[test]
    fn errors_carry_codes() {
        let cases = [
            (
                r#"<emotion category="x" intensity="high"/>"#,
                "UNPARSEABLE_NUMBER(intensity)",
            ),
            (
                r#"<emotion category="x" intensity="NaN"/>"#,
                "UNPARSEABLE_NUMBER(intensity)",
            ),
            (
                r#"<emotion start="1.3" end="0.4" category="x"/>"#,
                "START_AFTER_END",
            ),
            (
                r#"<emotion start="1" end="1" category="x"/>"#,
                "START_AFTER_END",
            ),
            (r#"<emotion start="1" category="x"/>"#, "INCOMPLETE_SPAN"),
            (
                "<complex-emotion><complex-emotion/></complex-emotion>",
                "NESTED_COMPLEX",
            ),
            ("<emotion><emotion/></emotion>", "UNEXPECTED_ELEMENT"),
            (
                r#"<emotion href="a.jpg">text</emotion>"#,
                "CONFLICTING_SCOPE",
            ),
            ("<emotion category='x'>", "MALFORMED_XML"),
            ("<emotion></emotio>", "MALFORMED_XML"),
            (r#"<emotion category="x" category="y"/>"#, "MALFORMED_XML"),
        ];
        for (input, code) in cases {
            let err = parse_document(input.as_bytes()).unwrap_err();
            assert_eq!(err.code(), code, "{input}");
        }
        let err = parse_document(b"<emotion category=\"\xff\"/>").unwrap_err();
        assert_eq!(err.code(), "MALFORMED_XML");
    }

    #[test]
    fn root_and_wrappers() {
        let out = parse(
            r#"<?xml version="1.0"?>
<earl xmlns:xlink="http://www.w3.org/1999/xlink" xml:base="corpus/a.xml">
  <!-- comment -->
  <turn><emotion category="anger">Go away</emotion></turn>
</earl>"#,
        );
        assert_eq!(out.document.source_uri.as_deref(), Some("corpus/a.xml"));
        assert_eq!(out.document.items.len(), 1);
        assert_eq!(out.warnings.len(), 1);
        assert_eq!(out.warnings[0].code, FindingCode::UnknownElement);
    }

    #[test]
    fn escaped_text_and_cdata() {
        let a = single("<emotion category=\"x\">a &amp; b<![CDATA[ <c>]]></emotion>");
        assert_eq!(a.scope, Scope::InlineText("a & b <c>".into()));
    }

    #[test]
    fn hide_alias_is_reported() {
        let out = parse(r#"<emotion category="x" hide="0.4"/>"#);
        let AnnotationItem::Simple(a) = &out.document.items[0] else {
            panic!()
        };
        assert_eq!(a.regulation[&Regulation::Suppress], 0.4);
        assert_eq!(out.warnings.len(), 1);
    }

    #[test]
    fn out_of_range_values_parse_for_validation() {
        let a = single(r#"<emotion category="x" intensity="1.7"/>"#);
        assert_eq!(a.intensity, Some(1.7));
    }
}
