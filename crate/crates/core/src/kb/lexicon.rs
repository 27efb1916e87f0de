use std::collections::{BTreeMap, HashMap};

use crate::model::{EmotionAnnotation, Scope};

/// Bundled linguistic-marker lexicon.
pub const DEFAULT_LEXICON: &str = include_str!("../../data/markers.lex");

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LexiconError {
    #[error("line {line}: expected `emotion: marker, marker, ...`")]
    MalformedLine { line: usize },
    #[error("line {line}: marker `{marker}` already belongs to `{first}`")]
    DuplicateMarker {
        line: usize,
        marker: String,
        first: String,
    },
    #[error("line {line}: emotion `{emotion}` has no markers")]
    EmptyEmotion { line: usize, emotion: String },
    #[error("line {line}: emotion `{emotion}` defined twice")]
    DuplicateEmotion { line: usize, emotion: String },
    #[error("lexicon defines no emotions")]
    Empty,
}

impl LexiconError {
    pub fn code(&self) -> &'static str {
        match self {
            LexiconError::MalformedLine { .. } => "MALFORMED_LINE",
            LexiconError::DuplicateMarker { .. } => "DUPLICATE_MARKER",
            LexiconError::EmptyEmotion { .. } => "EMPTY_EMOTION",
            LexiconError::DuplicateEmotion { .. } => "DUPLICATE_EMOTION",
            LexiconError::Empty => "EMPTY_LEXICON",
        }
    }
}

/// Emotion label → lowercase lexical markers. A marker belongs to exactly
/// one emotion. Multi-word markers (`goose bumps`) are stored with single
/// spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lexicon {
    entries: BTreeMap<String, Vec<String>>,
    aliases: BTreeMap<String, String>,
    // first token → (marker tokens, emotion), longest markers first
    index: HashMap<String, Vec<(Vec<String>, String)>>,
}

impl Lexicon {
    pub fn bundled() -> Self {
        load_lexicon(DEFAULT_LEXICON.as_bytes()).expect("bundled lexicon is valid")
    }

    pub fn emotions(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn markers(&self, emotion: &str) -> Option<&[String]> {
        self.entries.get(emotion).map(Vec::as_slice)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &[String])> {
        self.entries.iter().map(|(e, m)| (e.as_str(), m.as_slice()))
    }

    /// Alias → emotion label, e.g. `desire` → `sensuality`.
    pub fn aliases(&self) -> &BTreeMap<String, String> {
        &self.aliases
    }

    /// Resolves an emotion label or alias to the stored label.
    pub fn canonical<'a>(&'a self, label: &'a str) -> Option<&'a str> {
        if self.entries.contains_key(label) {
            Some(label)
        } else {
            self.aliases.get(label).map(String::as_str)
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn build_index(&mut self) {
        self.index.clear();
        for (emotion, markers) in &self.entries {
            for marker in markers {
                let words: Vec<String> = tokenize(marker).collect();
                self.index
                    .entry(words[0].clone())
                    .or_default()
                    .push((words, emotion.clone()));
            }
        }
        for candidates in self.index.values_mut() {
            candidates.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0.cmp(&b.0)));
        }
    }
}

/// Parses the lexicon format: one `emotion: marker, marker, ...` per line,
/// optional `emotion (alias):` heading, `#` comments and blank lines.
pub fn load_lexicon(input: &[u8]) -> Result<Lexicon, LexiconError> {
    let text = String::from_utf8_lossy(input);
    let mut entries: BTreeMap<String, Vec<String>> = BTreeMap::new();
    let mut aliases = BTreeMap::new();
    let mut owner: HashMap<String, String> = HashMap::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (head, tail) = content
            .split_once(':')
            .ok_or(LexiconError::MalformedLine { line })?;
        let (emotion, alias) = parse_head(head).ok_or(LexiconError::MalformedLine { line })?;
        if entries.contains_key(&emotion) {
            return Err(LexiconError::DuplicateEmotion { line, emotion });
        }
        let mut markers = Vec::new();
        for m in tail.split(',') {
            let words: Vec<String> = tokenize(m).collect();
            if words.is_empty() {
                if m.trim().is_empty() {
                    continue;
                }
                return Err(LexiconError::MalformedLine { line });
            }
            let marker = words.join(" ");
            if let Some(first) = owner.get(&marker) {
                return Err(LexiconError::DuplicateMarker {
                    line,
                    marker,
                    first: first.clone(),
                });
            }
            owner.insert(marker.clone(), emotion.clone());
            markers.push(marker);
        }
        if markers.is_empty() {
            return Err(LexiconError::EmptyEmotion { line, emotion });
        }
        if let Some(alias) = alias {
            aliases.insert(alias, emotion.clone());
        }
        entries.insert(emotion, markers);
    }
    if entries.is_empty() {
        return Err(LexiconError::Empty);
    }
    let mut lexicon = Lexicon {
        entries,
        aliases,
        index: HashMap::new(),
    };
    lexicon.build_index();
    Ok(lexicon)
}

fn parse_head(head: &str) -> Option<(String, Option<String>)> {
    let head = head.trim().to_lowercase();
    let (name, alias) = match head.split_once('(') {
        Some((name, rest)) => {
            let alias = rest.strip_suffix(')')?.trim();
            if alias.is_empty() {
                return None;
            }
            (name.trim().to_string(), Some(alias.to_string()))
        }
        None => (head, None),
    };
    if name.is_empty() || name.contains(char::is_whitespace) {
        return None;
    }
    Some((name, alias))
}

/// Lowercase runs of letters.
fn tokenize(text: &str) -> impl Iterator<Item = String> + '_ {
    text.split(|c: char| !c.is_alphabetic())
        .filter(|t| !t.is_empty())
        .map(str::to_lowercase)
}

/// One emotion found in a text, with the markers that fired.
#[derive(Clone, Debug, PartialEq)]
pub struct LexicalTag {
    pub annotation: EmotionAnnotation,
    pub matched: Vec<String>,
}

/// Tags `text` with every lexicon emotion whose markers occur in it.
///
/// Per emotion: `intensity = min(1, matches / 3)` and
/// `probability = matches / all matches in the text`, modality `language`,
/// scope the whole text. A multi-word marker counts as one match. Output is
/// ordered by emotion label.
pub fn tag_lexical(text: &str, lexicon: &Lexicon) -> Vec<LexicalTag> {
    let tokens: Vec<String> = tokenize(text).collect();
    let mut hits: BTreeMap<&str, Vec<String>> = BTreeMap::new();
    let mut total = 0usize;
    let mut i = 0;
    while i < tokens.len() {
        let found = lexicon.index.get(&tokens[i]).and_then(|candidates| {
            candidates
                .iter()
                .find(|(words, _)| tokens[i..].starts_with(words))
        });
        match found {
            Some((words, emotion)) => {
                hits.entry(emotion.as_str())
                    .or_default()
                    .push(words.join(" "));
                total += 1;
                i += words.len();
            }
            None => i += 1,
        }
    }
    hits.into_iter()
        .map(|(emotion, matched)| {
            let n = matched.len() as f64;
            let annotation = EmotionAnnotation::categorical(emotion)
                .with_intensity((n / 3.0).min(1.0))
                .with_probability(n / total as f64)
                .with_modality("language")
                .with_scope(Scope::InlineText(text.to_string()));
            LexicalTag {
                annotation,
                matched,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_has_seven_emotions() {
        let lex = Lexicon::bundled();
        let emotions: Vec<&str> = lex.emotions().collect();
        assert_eq!(
            emotions,
            [
                "activation",
                "amazement",
                "dysphoria",
                "joy",
                "power",
                "sadness",
                "sensuality"
            ]
        );
        assert_eq!(lex.canonical("desire"), Some("sensuality"));
        assert_eq!(
            lex.markers("sadness").unwrap(),
            ["sorrowful", "depressed", "sad"]
        );
        assert!(lex
            .markers("amazement")
            .unwrap()
            .contains(&"goose bumps".to_string()));
    }

    #[test]
    fn joy_row() {
        let tags = tag_lexical("joyful, happy, radiant", &Lexicon::bundled());
        assert_eq!(tags.len(), 1);
        assert_eq!(tags[0].annotation.category.as_deref(), Some("joy"));
        assert_eq!(tags[0].matched, ["joyful", "happy", "radiant"]);
        assert_eq!(tags[0].annotation.intensity, Some(1.0));
        assert_eq!(tags[0].annotation.probability, Some(1.0));
        assert_eq!(tags[0].annotation.modality.as_deref(), Some("language"));
    }

    #[test]
    fn empty_text() {
        assert!(tag_lexical("", &Lexicon::bundled()).is_empty());
        assert!(tag_lexical("nothing to see", &Lexicon::bundled()).is_empty());
    }

    #[test]
    fn anxious_but_proud() {
        // anxious → dysphoria, proud → power; two matches in total
        let tags = tag_lexical("anxious but proud", &Lexicon::bundled());
        let got: Vec<(&str, f64, f64, usize)> = tags
            .iter()
            .map(|t| {
                (
                    t.annotation.category.as_deref().unwrap(),
                    t.annotation.probability.unwrap(),
                    t.annotation.intensity.unwrap(),
                    t.matched.len(),
                )
            })
            .collect();
        assert_eq!(
            got,
            [
                ("dysphoria", 0.5, 1.0 / 3.0, 1),
                ("power", 0.5, 1.0 / 3.0, 1)
            ]
        );
    }

    #[test]
    fn multi_word_marker() {
        let tags = tag_lexical("Goose-bumps everywhere!", &Lexicon::bundled());
        assert_eq!(tags.len(), 1);
        assert_eq!(tags[0].annotation.category.as_deref(), Some("amazement"));
        assert_eq!(tags[0].matched, ["goose bumps"]);
        // a lone half of the marker does not fire
        assert!(tag_lexical("a goose", &Lexicon::bundled()).is_empty());
    }

    #[test]
    fn case_and_punctuation() {
        let tags = tag_lexical("SAD!!sad...Sad", &Lexicon::bundled());
        assert_eq!(tags[0].matched.len(), 3);
        assert_eq!(tags[0].annotation.intensity, Some(1.0));
    }

    #[test]
    fn load_errors() {
        let dup = load_lexicon(b"joy: happy\nsadness: sad, happy\n").unwrap_err();
        assert_eq!(dup.code(), "DUPLICATE_MARKER");
        assert_eq!(
            dup,
            LexiconError::DuplicateMarker {
                line: 2,
                marker: "happy".into(),
                first: "joy".into()
            }
        );
        assert_eq!(load_lexicon(b"joy:\n").unwrap_err().code(), "EMPTY_EMOTION");
        assert_eq!(
            load_lexicon(b"joy: , ,\n").unwrap_err().code(),
            "EMPTY_EMOTION"
        );
        assert_eq!(
            load_lexicon(b"joy happy\n").unwrap_err().code(),
            "MALFORMED_LINE"
        );
        assert_eq!(
            load_lexicon(b"joy: a\njoy: b\n").unwrap_err().code(),
            "DUPLICATE_EMOTION"
        );
        assert_eq!(
            load_lexicon(b"# nothing\n").unwrap_err().code(),
            "EMPTY_LEXICON"
        );
    }
}
