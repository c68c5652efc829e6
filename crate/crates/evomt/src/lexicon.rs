//! Bilingual dictionary: source-word lookup to ordered English glosses.
//!
//! The file format is UTF-8, tab-separated, one row per sense:
//! `source<TAB>gloss<TAB>POS`. Lines starting with `#` are comments; LF
//! and CRLF both work. Gloss order follows file order, so the first row
//! for a word is its default sense. Lookups are case-insensitive; tokens
//! the dictionary cannot translate pass through verbatim.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use crate::tagger::PosTag;
use crate::tokenizer::{Token, TokenKind};

/// One English sense of a source word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GlossEntry {
    pub gloss: String,
    pub pos: PosTag,
}

impl GlossEntry {
    pub fn new(gloss: impl Into<String>, pos: PosTag) -> Self {
        GlossEntry { gloss: gloss.into(), pos }
    }
}

/// Errors from loading a dictionary file.
#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("line {line}: {reason}")]
    MalformedRow { line: usize, reason: String },
    #[error("cannot read lexicon: {0}")]
    IoFailure(#[from] io::Error),
}

/// Result of looking a token up in the dictionary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LookupResult<'a> {
    /// Known word: its senses in file order, never empty.
    Glosses(&'a [GlossEntry]),
    /// Digit, sign, or unknown word: kept verbatim.
    Passthrough(Token),
}

/// The loaded dictionary, immutable after construction.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BilingualLexicon {
    entries: BTreeMap<String, Vec<GlossEntry>>,
}

impl BilingualLexicon {
    pub fn new() -> Self {
        BilingualLexicon::default()
    }

    /// Number of distinct source words.
    pub fn entry_count(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Appends a sense for a source word, keeping only the first
    /// occurrence of a duplicate (source, gloss) pair.
    pub fn insert(&mut self, source: impl AsRef<str>, entry: GlossEntry) {
        let senses = self
            .entries
            .entry(source.as_ref().to_lowercase())
            .or_default();
        if !senses.iter().any(|e| e.gloss == entry.gloss) {
            senses.push(entry);
        }
    }

    pub fn glosses(&self, source: &str) -> Option<&[GlossEntry]> {
        self.entries
            .get(&source.to_lowercase())
            .map(Vec::as_slice)
    }

    /// Iterates `(source word, senses)` in sorted source order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &[GlossEntry])> {
        self.entries
            .iter()
            .map(|(source, senses)| (source.as_str(), senses.as_slice()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, LexiconError> {
        let text = fs::read_to_string(path)?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, LexiconError> {
        let mut lexicon = BilingualLexicon::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let row = raw.strip_suffix('\r').unwrap_or(raw);
            if row.is_empty() || row.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = row.split('\t').collect();
            if fields.len() != 3 {
                return Err(LexiconError::MalformedRow {
                    line,
                    reason: format!("expected 3 tab-separated fields, found {}", fields.len()),
                });
            }
            let (source, gloss, tag) = (fields[0], fields[1], fields[2]);
            if source.is_empty() || gloss.is_empty() {
                return Err(LexiconError::MalformedRow {
                    line,
                    reason: "empty source or gloss field".to_string(),
                });
            }
            if gloss.chars().any(char::is_whitespace) {
                return Err(LexiconError::MalformedRow {
                    line,
                    reason: format!("gloss `{gloss}` contains whitespace; hyphenate phrases"),
                });
            }
            let pos = tag.parse::<PosTag>().map_err(|e| LexiconError::MalformedRow {
                line,
                reason: e.to_string(),
            })?;
            lexicon.insert(source, GlossEntry::new(gloss, pos));
        }
        Ok(lexicon)
    }

    /// Looks a token up: word tokens found in the dictionary return their
    /// senses in stored order; digits, signs, and unknown words pass
    /// through verbatim.
    pub fn lookup(&self, token: &Token) -> LookupResult<'_> {
        match token.kind {
            TokenKind::Word => match self.glosses(&token.text) {
                Some(senses) => LookupResult::Glosses(senses),
                None => LookupResult::Passthrough(token.clone()),
            },
            TokenKind::Digit | TokenKind::Sign => LookupResult::Passthrough(token.clone()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIXTURE: &str = "mama\tI\tPRP\ngedara\thome\tNN\nyami\tgo\tVB\n";

    #[test]
    fn parse_counts_distinct_source_words() {
        let lex = BilingualLexicon::parse(FIXTURE).unwrap();
        assert_eq!(lex.entry_count(), 3);
        assert_eq!(
            lex.glosses("mama").unwrap(),
            &[GlossEntry::new("I", PosTag::Prp)]
        );
    }

    #[test]
    fn comments_and_blank_lines_give_empty_lexicon() {
        let lex = BilingualLexicon::parse("# header\n\n# more\n").unwrap();
        assert_eq!(lex.entry_count(), 0);
    }

    #[test]
    fn malformed_row_names_the_line() {
        let err = BilingualLexicon::parse("mama\tI\tPRP\nbad\trow\n").unwrap_err();
        match err {
            LexiconError::MalformedRow { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn unknown_pos_tag_is_malformed() {
        let err = BilingualLexicon::parse("mama\tI\tQQQ\n").unwrap_err();
        assert!(matches!(err, LexiconError::MalformedRow { line: 1, .. }));
    }

    #[test]
    fn senses_accumulate_in_file_order() {
        let text = "ivura\tbank\tNN\nivura\tshore\tNN\n";
        let lex = BilingualLexicon::parse(text).unwrap();
        let senses = lex.glosses("ivura").unwrap();
        assert_eq!(senses.len(), 2);
        assert_eq!(senses[0].gloss, "bank");
        assert_eq!(senses[1].gloss, "shore");
    }

    #[test]
    fn duplicate_source_gloss_rows_collapse_to_first() {
        let text = "w\ta\tNN\nw\ta\tVB\nw\tb\tNN\n";
        let lex = BilingualLexicon::parse(text).unwrap();
        let senses = lex.glosses("w").unwrap();
        assert_eq!(senses.len(), 2);
        assert_eq!(senses[0], GlossEntry::new("a", PosTag::Nn));
        assert_eq!(senses[1], GlossEntry::new("b", PosTag::Nn));
    }

    #[test]
    fn lookup_is_case_insensitive() {
        let lex = BilingualLexicon::parse(FIXTURE).unwrap();
        let result = lex.lookup(&Token::word("MAMA"));
        assert!(matches!(result, LookupResult::Glosses(g) if g[0].gloss == "I"));
    }

    #[test]
    fn digits_and_signs_pass_through() {
        let lex = BilingualLexicon::parse(FIXTURE).unwrap();
        assert_eq!(
            lex.lookup(&Token::digit("42")),
            LookupResult::Passthrough(Token::digit("42"))
        );
        assert_eq!(
            lex.lookup(&Token::sign(".")),
            LookupResult::Passthrough(Token::sign("."))
        );
    }

    #[test]
    fn unknown_word_passes_through() {
        let lex = BilingualLexicon::parse(FIXTURE).unwrap();
        assert_eq!(
            lex.lookup(&Token::word("blarg")),
            LookupResult::Passthrough(Token::word("blarg"))
        );
    }

    #[test]
    fn crlf_rows_parse() {
        let lex = BilingualLexicon::parse("mama\tI\tPRP\r\nyami\tgo\tVB\r\n").unwrap();
        assert_eq!(lex.entry_count(), 2);
    }

    #[test]
    fn fixture_file_roundtrips_every_row_in_order() {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/lexicon.tsv");
        let lex = BilingualLexicon::load(path).unwrap();
        let text = std::fs::read_to_string(path).unwrap();

        // Re-collect expected gloss lists straight from the rows.
        let mut expected: std::collections::BTreeMap<String, Vec<String>> =
            std::collections::BTreeMap::new();
        for row in text.lines().filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let fields: Vec<&str> = row.split('\t').collect();
            expected
                .entry(fields[0].to_lowercase())
                .or_default()
                .push(fields[1].to_string());
        }
        assert_eq!(lex.entry_count(), expected.len());
        for (source, glosses) in expected {
            let senses: Vec<&str> = lex
                .glosses(&source)
                .expect("row source must resolve")
                .iter()
                .map(|s| s.gloss.as_str())
                .collect();
            assert_eq!(senses, glosses, "gloss order for {source}");
        }
    }

    #[test]
    fn glosses_are_never_empty() {
        let lex = BilingualLexicon::parse(FIXTURE).unwrap();
        for (_, senses) in lex.iter() {
            assert!(!senses.is_empty());
        }
    }
}
