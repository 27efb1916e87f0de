use quick_xml::escape::escape;

use crate::model::{AnnotationDocument, AnnotationItem, EmotionAnnotation, Scope};

use super::{ROOT_ELEMENT, XLINK_NS};

/// Writes a document in canonical form.
///
/// Attribute order on `<emotion>`: `category`, dimension and appraisal
/// attributes merged alphabetically, `intensity`, `probability`, regulation
/// attributes alphabetically, `modality`, then scope (`xlink:href`, `start`,
/// `end`). Numbers use the shortest decimal that reads back to the same
/// value. Output is UTF-8 and ends with a newline.
pub fn serialize_document(doc: &AnnotationDocument) -> Vec<u8> {
    serialize_to_string(doc).into_bytes()
}

pub fn serialize_to_string(doc: &AnnotationDocument) -> String {
    let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push('<');
    out.push_str(ROOT_ELEMENT);
    push_attr(&mut out, "xmlns:xlink", XLINK_NS);
    if let Some(base) = &doc.source_uri {
        push_attr(&mut out, "xml:base", base);
    }
    if doc.items.is_empty() {
        out.push_str("/>\n");
        return out;
    }
    out.push_str(">\n");
    for item in &doc.items {
        out.push_str("  ");
        match item {
            AnnotationItem::Simple(a) => write_emotion(&mut out, a),
            AnnotationItem::Complex(c) => {
                out.push_str("<complex-emotion");
                push_scope_attrs(&mut out, &c.scope);
                out.push('>');
                // Enclosed text and constituents share one line so the
                // text reads back without indentation whitespace.
                if let Scope::InlineText(text) = &c.scope {
                    out.push_str(&escape(text.as_str()));
                    for k in &c.constituents {
                        write_emotion(&mut out, k);
                    }
                } else {
                    out.push('\n');
                    for k in &c.constituents {
                        out.push_str("    ");
                        write_emotion(&mut out, k);
                        out.push('\n');
                    }
                    out.push_str("  ");
                }
                out.push_str("</complex-emotion>");
            }
        }
        out.push('\n');
    }
    out.push_str("</");
    out.push_str(ROOT_ELEMENT);
    out.push_str(">\n");
    out
}

fn write_emotion(out: &mut String, a: &EmotionAnnotation) {
    out.push_str("<emotion");
    if let Some(category) = &a.category {
        push_attr(out, "category", category);
    }
    let mut descriptors: Vec<(&str, f64)> = a
        .dimensions
        .iter()
        .chain(a.appraisals.iter())
        .map(|(k, v)| (k.as_str(), *v))
        .collect();
    descriptors.sort_by(|x, y| x.0.cmp(y.0));
    for (name, value) in descriptors {
        push_attr(out, name, &format_number(value));
    }
    if let Some(v) = a.intensity {
        push_attr(out, "intensity", &format_number(v));
    }
    if let Some(v) = a.probability {
        push_attr(out, "probability", &format_number(v));
    }
    // BTreeMap order over the enum is alphabetical by name.
    for (kind, v) in &a.regulation {
        push_attr(out, kind.as_str(), &format_number(*v));
    }
    if let Some(modality) = &a.modality {
        push_attr(out, "modality", modality);
    }
    push_scope_attrs(out, &a.scope);
    match &a.scope {
        Scope::InlineText(text) => {
            out.push('>');
            out.push_str(&escape(text.as_str()));
            out.push_str("</emotion>");
        }
        _ => out.push_str("/>"),
    }
}

fn push_scope_attrs(out: &mut String, scope: &Scope) {
    if let Some(uri) = scope.uri() {
        push_attr(out, "xlink:href", uri);
    }
    if let Some((start, end)) = scope.span() {
        push_attr(out, "start", &format_number(start));
        push_attr(out, "end", &format_number(end));
    }
}

fn push_attr(out: &mut String, name: &str, value: &str) {
    out.push(' ');
    out.push_str(name);
    out.push_str("=\"");
    out.push_str(&escape(value));
    out.push('"');
}

/// Shortest round-tripping decimal: `0.50` → `0.5`, `1.0` → `1`, `-0.0` → `0`.
pub fn format_number(value: f64) -> String {
    if value == 0.0 {
        "0".to_string()
    } else {
        format!("{value}")
    }
}
