//! POS tagging of the direct translation.
//!
//! Every token receives exactly one tag, resolved in priority order:
//! the dictionary tag carried by a gloss, then a tag-lexicon entry, then
//! the token class (digits are CD, signs are SYM), then word suffix rules,
//! and finally NN as the default. The tagset is the 18-tag subset the
//! chunk grammar can consume.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::tokenizer::{Token, TokenKind};

/// Supported part-of-speech tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum PosTag {
    Prp,
    Dt,
    Jj,
    Jjr,
    Jjs,
    Nn,
    Nns,
    Nnp,
    Vb,
    Vbd,
    Vbz,
    Vbg,
    Vbn,
    Vbp,
    Rb,
    In,
    Cd,
    Sym,
}

impl PosTag {
    pub const ALL: [PosTag; 18] = [
        PosTag::Prp,
        PosTag::Dt,
        PosTag::Jj,
        PosTag::Jjr,
        PosTag::Jjs,
        PosTag::Nn,
        PosTag::Nns,
        PosTag::Nnp,
        PosTag::Vb,
        PosTag::Vbd,
        PosTag::Vbz,
        PosTag::Vbg,
        PosTag::Vbn,
        PosTag::Vbp,
        PosTag::Rb,
        PosTag::In,
        PosTag::Cd,
        PosTag::Sym,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PosTag::Prp => "PRP",
            PosTag::Dt => "DT",
            PosTag::Jj => "JJ",
            PosTag::Jjr => "JJR",
            PosTag::Jjs => "JJS",
            PosTag::Nn => "NN",
            PosTag::Nns => "NNS",
            PosTag::Nnp => "NNP",
            PosTag::Vb => "VB",
            PosTag::Vbd => "VBD",
            PosTag::Vbz => "VBZ",
            PosTag::Vbg => "VBG",
            PosTag::Vbn => "VBN",
            PosTag::Vbp => "VBP",
            PosTag::Rb => "RB",
            PosTag::In => "IN",
            PosTag::Cd => "CD",
            PosTag::Sym => "SYM",
        }
    }

    /// True for verb tags (the `VB` family).
    pub fn is_verb(self) -> bool {
        self.as_str().starts_with("VB")
    }

    /// True for nominal tags: pronouns and the `NN` family.
    pub fn is_nominal(self) -> bool {
        self == PosTag::Prp || self.as_str().starts_with("NN")
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Error for tag names outside the supported tagset.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown POS tag `{0}`")]
pub struct UnknownTag(pub String);

impl FromStr for PosTag {
    type Err = UnknownTag;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PosTag::ALL
            .iter()
            .copied()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| UnknownTag(s.to_string()))
    }
}

/// A token with its resolved POS tag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TaggedToken {
    pub text: String,
    pub tag: PosTag,
}

impl TaggedToken {
    pub fn new(text: impl Into<String>, tag: PosTag) -> Self {
        TaggedToken { text: text.into(), tag }
    }
}

impl fmt::Display for TaggedToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.text, self.tag)
    }
}

/// Fallback word-to-tag table consulted when no dictionary tag is present.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TagLexicon {
    entries: BTreeMap<String, PosTag>,
}

/// Errors from loading a tag lexicon file.
#[derive(Debug, Error)]
pub enum TagLexiconError {
    #[error("line {line}: {reason}")]
    MalformedRow { line: usize, reason: String },
    #[error("cannot read tag lexicon: {0}")]
    IoFailure(#[from] io::Error),
}

impl TagLexicon {
    pub fn new() -> Self {
        TagLexicon::default()
    }

    pub fn insert(&mut self, word: impl AsRef<str>, tag: PosTag) {
        self.entries.insert(word.as_ref().to_lowercase(), tag);
    }

    pub fn get(&self, word: &str) -> Option<PosTag> {
        self.entries.get(&word.to_lowercase()).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Loads `word<TAB>TAG` rows; `#` starts a comment line, blank lines
    /// are skipped, CRLF is accepted.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, TagLexiconError> {
        let text = fs::read_to_string(path)?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, TagLexiconError> {
        let mut lex = TagLexicon::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let row = raw.strip_suffix('\r').unwrap_or(raw);
            if row.is_empty() || row.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = row.split('\t').collect();
            if fields.len() != 2 {
                return Err(TagLexiconError::MalformedRow {
                    line,
                    reason: format!("expected 2 tab-separated fields, found {}", fields.len()),
                });
            }
            let tag = fields[1].parse::<PosTag>().map_err(|e| {
                TagLexiconError::MalformedRow { line, reason: e.to_string() }
            })?;
            lex.insert(fields[0], tag);
        }
        Ok(lex)
    }
}

/// Suffix fallback rules, applied in order; first match wins. A suffix only
/// matches as a proper suffix, so "ed" itself does not trigger the -ed rule.
const SUFFIX_RULES: [(&str, PosTag); 6] = [
    ("ly", PosTag::Rb),
    ("ing", PosTag::Vbg),
    ("ed", PosTag::Vbd),
    ("est", PosTag::Jjs),
    ("er", PosTag::Jjr),
    ("s", PosTag::Nns),
];

fn suffix_tag(word: &str) -> Option<PosTag> {
    let lower = word.to_lowercase();
    SUFFIX_RULES
        .iter()
        .find(|(suffix, _)| lower.len() > suffix.len() && lower.ends_with(suffix))
        .map(|&(_, tag)| tag)
}

/// Tags every token. `items` pairs each token with the dictionary tag of
/// its gloss, when one exists; output order and length equal the input.
pub fn tag_tokens(taglex: &TagLexicon, items: &[(Token, Option<PosTag>)]) -> Vec<TaggedToken> {
    items
        .iter()
        .map(|(token, dict_tag)| {
            let tag = dict_tag
                .or_else(|| taglex.get(&token.text))
                .or_else(|| match token.kind {
                    TokenKind::Digit => Some(PosTag::Cd),
                    TokenKind::Sign => Some(PosTag::Sym),
                    TokenKind::Word => suffix_tag(&token.text),
                })
                .unwrap_or(PosTag::Nn);
            TaggedToken::new(token.text.clone(), tag)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn word(text: &str) -> (Token, Option<PosTag>) {
        (Token::word(text), None)
    }

    #[test]
    fn dictionary_tag_wins() {
        let taglex = TagLexicon::new();
        let tagged = tag_tokens(&taglex, &[(Token::word("go"), Some(PosTag::Vb))]);
        assert_eq!(tagged, vec![TaggedToken::new("go", PosTag::Vb)]);
    }

    #[test]
    fn dictionary_tag_beats_conflicting_taglex_entry() {
        let mut taglex = TagLexicon::new();
        taglex.insert("go", PosTag::Nn);
        let tagged = tag_tokens(&taglex, &[(Token::word("go"), Some(PosTag::Vb))]);
        assert_eq!(tagged[0].tag, PosTag::Vb);
    }

    #[test]
    fn taglex_applies_case_insensitively() {
        let mut taglex = TagLexicon::new();
        taglex.insert("I", PosTag::Prp);
        let tagged = tag_tokens(&taglex, &[word("i"), word("I")]);
        assert_eq!(tagged[0].tag, PosTag::Prp);
        assert_eq!(tagged[1].tag, PosTag::Prp);
    }

    #[test]
    fn digits_and_signs_get_class_tags() {
        let taglex = TagLexicon::new();
        let tagged = tag_tokens(
            &taglex,
            &[(Token::digit("42"), None), (Token::sign("."), None)],
        );
        assert_eq!(tagged[0].tag, PosTag::Cd);
        assert_eq!(tagged[1].tag, PosTag::Sym);
    }

    #[test]
    fn suffix_rules_fire_in_order() {
        let taglex = TagLexicon::new();
        let cases = [
            ("quickly", PosTag::Rb),
            ("running", PosTag::Vbg),
            ("walked", PosTag::Vbd),
            ("biggest", PosTag::Jjs),
            ("bigger", PosTag::Jjr),
            ("cats", PosTag::Nns),
        ];
        for (text, expected) in cases {
            let tagged = tag_tokens(&taglex, &[word(text)]);
            assert_eq!(tagged[0].tag, expected, "word {text}");
        }
    }

    #[test]
    fn suffix_needs_a_proper_stem() {
        let taglex = TagLexicon::new();
        // The whole word equals the suffix: no rule fires, NN default.
        for text in ["ed", "s", "ing"] {
            let tagged = tag_tokens(&taglex, &[word(text)]);
            assert_eq!(tagged[0].tag, PosTag::Nn, "word {text}");
        }
    }

    #[test]
    fn unknown_word_defaults_to_nn() {
        let taglex = TagLexicon::new();
        let tagged = tag_tokens(&taglex, &[word("blarg")]);
        assert_eq!(tagged[0].tag, PosTag::Nn);
    }

    #[test]
    fn taglex_parse_rejects_bad_rows() {
        let err = TagLexicon::parse("I\tPRP\nbroken row\n").unwrap_err();
        match err {
            TagLexiconError::MalformedRow { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error: {other}"),
        }
        let err = TagLexicon::parse("word\tZZZ\n").unwrap_err();
        assert!(matches!(err, TagLexiconError::MalformedRow { line: 1, .. }));
    }

    #[test]
    fn taglex_parse_accepts_comments_and_crlf() {
        let lex = TagLexicon::parse("# words\r\nI\tPRP\r\n\r\ngo\tVB\n").unwrap();
        assert_eq!(lex.len(), 2);
        assert_eq!(lex.get("i"), Some(PosTag::Prp));
        assert_eq!(lex.get("GO"), Some(PosTag::Vb));
    }

    #[test]
    fn tag_roundtrip_via_str() {
        for tag in PosTag::ALL {
            assert_eq!(tag.as_str().parse::<PosTag>().unwrap(), tag);
        }
        assert!("XYZ".parse::<PosTag>().is_err());
    }

    proptest! {
        #[test]
        fn every_token_gets_exactly_one_tag(words in proptest::collection::vec("[a-z]{1,10}", 0..12)) {
            let taglex = TagLexicon::new();
            let items: Vec<(Token, Option<PosTag>)> =
                words.iter().map(|w| word(w)).collect();
            let tagged = tag_tokens(&taglex, &items);
            prop_assert_eq!(tagged.len(), items.len());
            for (tagged, (token, _)) in tagged.iter().zip(&items) {
                prop_assert_eq!(&tagged.text, &token.text);
            }
        }
    }
}
