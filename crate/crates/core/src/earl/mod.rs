//! Reading and writing EARL XML, vocabulary profile files, and stand-off
//! scope resolution.

mod parse;
mod profile;
mod scope;
mod serialize;

pub use parse::{parse_document, parse_document_with, ParseError, ParseOutcome};
pub use profile::{load_profile, ProfileError};
pub use scope::{resolve_scope, ScopeError, ScopeTarget};
pub use serialize::{format_number, serialize_document, serialize_to_string};

pub(crate) const ROOT_ELEMENT: &str = "earl";
pub const XLINK_NS: &str = "http://www.w3.org/1999/xlink";

/// Attribute names with fixed EARL meaning.
pub fn is_reserved_attribute(name: &str) -> bool {
    matches!(
        name,
        "category"
            | "xlink:href"
            | "href"
            | "start"
            | "end"
            | "intensity"
            | "probability"
            | "modality"
            | "simulate"
            | "suppress"
            | "amplify"
            | "attenuate"
            | "hide"
            | "xmlns"
    ) || name.starts_with("xmlns:")
        || name.starts_with("xml:")
}
