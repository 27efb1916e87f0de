use std::path::{Component, Path, PathBuf};

use crate::model::{AnnotationItem, Scope};

/// What a scope points at once resolved against a corpus directory.
#[derive(Clone, Debug, PartialEq)]
pub enum ScopeTarget {
    TextSegment(String),
    MediaObject {
        uri: String,
        exists: bool,
    },
    /// `uri` is `None` for a span over the annotated clip itself.
    ClipSegment {
        uri: Option<String>,
        start: f64,
        end: f64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ScopeError {
    #[error("annotation has no scope")]
    Unscoped,
    #[error("reference `{0}` resolves outside the corpus root")]
    PathEscape(String),
}

impl ScopeError {
    pub fn code(&self) -> &'static str {
        match self {
            ScopeError::Unscoped => "UNSCOPED",
            ScopeError::PathEscape(_) => "PATH_ESCAPE",
        }
    }
}

/// Resolves the scope of an item against `corpus_root`.
///
/// References must stay inside the corpus root, both lexically and after
/// following symlinks. URIs with a scheme (`http:` and the like) and
/// same-document fragments are never looked up on disk and report
/// `exists: false`.
pub fn resolve_scope(item: &AnnotationItem, corpus_root: &Path) -> Result<ScopeTarget, ScopeError> {
    match item.scope() {
        Scope::Unscoped => Err(ScopeError::Unscoped),
        Scope::InlineText(text) => Ok(ScopeTarget::TextSegment(text.clone())),
        Scope::Reference(uri) => {
            let exists = locate(uri, corpus_root)?.is_some_and(|p| p.exists());
            Ok(ScopeTarget::MediaObject {
                uri: uri.clone(),
                exists,
            })
        }
        Scope::TimeSpan { start, end } => Ok(ScopeTarget::ClipSegment {
            uri: None,
            start: *start,
            end: *end,
        }),
        Scope::ReferencedTimeSpan { uri, start, end } => {
            locate(uri, corpus_root)?;
            Ok(ScopeTarget::ClipSegment {
                uri: Some(uri.clone()),
                start: *start,
                end: *end,
            })
        }
    }
}

/// Maps a reference to a path under `root`, or `None` when it does not
/// name a local file.
fn locate(uri: &str, root: &Path) -> Result<Option<PathBuf>, ScopeError> {
    let escape = || ScopeError::PathEscape(uri.to_string());
    let path_part = uri.split('#').next().unwrap_or("");
    if path_part.is_empty() || has_scheme(path_part) {
        return Ok(None);
    }
    let mut relative = PathBuf::new();
    for component in Path::new(path_part).components() {
        match component {
            Component::Normal(part) => relative.push(part),
            Component::CurDir => {}
            Component::ParentDir => {
                if !relative.pop() {
                    return Err(escape());
                }
            }
            Component::RootDir | Component::Prefix(_) => return Err(escape()),
        }
    }
    let full = root.join(&relative);
    if let (Ok(real), Ok(real_root)) = (full.canonicalize(), root.canonicalize()) {
        if !real.starts_with(&real_root) {
            return Err(escape());
        }
    }
    Ok(Some(full))
}

fn has_scheme(s: &str) -> bool {
    match s.find(':') {
        Some(i) if i > 1 => s[..i]
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.')),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ComplexEmotion, EmotionAnnotation};

    fn item(scope: Scope) -> AnnotationItem {
        EmotionAnnotation::categorical("pleasure")
            .with_scope(scope)
            .into()
    }

    #[test]
    fn media_object_existence() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("face12.jpg"), b"jpg").unwrap();
        let present = resolve_scope(&item(Scope::Reference("face12.jpg".into())), dir.path());
        assert_eq!(
            present,
            Ok(ScopeTarget::MediaObject {
                uri: "face12.jpg".into(),
                exists: true
            })
        );
        let missing = resolve_scope(
            &item(Scope::Reference("sub/../face13.jpg".into())),
            dir.path(),
        );
        assert_eq!(
            missing,
            Ok(ScopeTarget::MediaObject {
                uri: "sub/../face13.jpg".into(),
                exists: false
            })
        );
    }

    #[test]
    fn text_and_clips() {
        let root = Path::new(".");
        assert_eq!(
            resolve_scope(&item(Scope::InlineText("Hello!".into())), root),
            Ok(ScopeTarget::TextSegment("Hello!".into()))
        );
        assert_eq!(
            resolve_scope(
                &item(Scope::TimeSpan {
                    start: 0.4,
                    end: 1.3
                }),
                root
            ),
            Ok(ScopeTarget::ClipSegment {
                uri: None,
                start: 0.4,
                end: 1.3
            })
        );
    }

    #[test]
    fn complex_uses_its_own_scope() {
        let c = ComplexEmotion::new(
            vec![
                EmotionAnnotation::categorical("a"),
                EmotionAnnotation::categorical("b"),
            ],
            Scope::Reference("face12.jpg".into()),
        );
        let got = resolve_scope(&c.into(), Path::new("/nonexistent-root"));
        assert!(matches!(
            got,
            Ok(ScopeTarget::MediaObject { exists: false, .. })
        ));
    }

    #[test]
    fn escapes_are_rejected() {
        let root = Path::new("/srv/corpus");
        for uri in ["../secret", "a/../../secret", "/etc/passwd"] {
            let err = resolve_scope(&item(Scope::Reference(uri.into())), root).unwrap_err();
            assert_eq!(err.code(), "PATH_ESCAPE", "{uri}");
        }
        let span = Scope::ReferencedTimeSpan {
            uri: "../x.wav".into(),
            start: 0.0,
            end: 1.0,
        };
        assert_eq!(
            resolve_scope(&item(span), root),
            Err(ScopeError::PathEscape("../x.wav".into()))
        );
    }

    #[cfg(unix)]
    #[test]
    fn symlink_out_of_root_is_an_escape() {
        let outside = tempfile::tempdir().unwrap();
        std::fs::write(outside.path().join("secret"), b"x").unwrap();
        let root = tempfile::tempdir().unwrap();
        std::os::unix::fs::symlink(outside.path().join("secret"), root.path().join("link"))
            .unwrap();
        let err = resolve_scope(&item(Scope::Reference("link".into())), root.path()).unwrap_err();
        assert_eq!(err, ScopeError::PathEscape("link".into()));
    }

    #[test]
    fn non_file_references() {
        let root = Path::new(".");
        for uri in ["http://example.org/face.jpg", "#node12"] {
            let got = resolve_scope(&item(Scope::Reference(uri.into())), root).unwrap();
            assert_eq!(
                got,
                ScopeTarget::MediaObject {
                    uri: uri.into(),
                    exists: false
                }
            );
        }
        assert_eq!(
            resolve_scope(&item(Scope::Unscoped), root),
            Err(ScopeError::Unscoped)
        );
    }
}
