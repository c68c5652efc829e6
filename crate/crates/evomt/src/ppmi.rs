//! Co-occurrence statistics and pointwise mutual information.
//!
//! The model counts every word-token occurrence and, per sentence, one
//! co-occurrence for each unordered pair of distinct word types. From the
//! counts it scores association between two words in bits:
//!
//! ```text
//! pmi(x, y) = log2( P(x,y) / (P(x) * P(y)) )
//! ```
//!
//! where `P(x) = unigram[x] / total_tokens` and `P(x,y) = pair{x,y} /
//! total_pairs`. PPMI clips negative values to zero, and a pair that never
//! co-occurs scores zero as well (its PMI would be negative infinity).
//!
//! Models persist to a versioned, checksummed, byte-deterministic text
//! file so two saves of the same model compare equal.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use thiserror::Error;

use crate::tokenizer::{self, TokenKind};

const FILE_VERSION: &str = "ppmi-model v1";

/// Co-occurrence counting span.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CooccurrenceWindow {
    /// Pair every two distinct word types of a sentence.
    #[default]
    Sentence,
    /// Pair distinct word types no further than `n` word positions apart.
    Fixed(usize),
}

/// Unigram and pair counts over a corpus, immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CooccurrenceModel {
    unigram: BTreeMap<String, u64>,
    // Keys are ordered (low, high) so {x,y} and {y,x} share one entry.
    pair: BTreeMap<(String, String), u64>,
    total_tokens: u64,
    total_pairs: u64,
}

/// Corpus rejected at build time.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("corpus contains no word tokens")]
    EmptyCorpus,
}

/// PMI/PPMI query failures.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum PmiError {
    #[error("word `{0}` is not in the model")]
    UnknownWord(String),
    #[error("no co-occurrence data for `{0}` and `{1}`")]
    NoPairData(String, String),
}

/// Save/load failures.
#[derive(Debug, Error)]
pub enum ModelFileError {
    #[error("model io: {0}")]
    IoFailure(#[from] io::Error),
    #[error("unsupported model format `{found}`")]
    FormatVersionMismatch { found: String },
    #[error("model file checksum mismatch (truncated or corrupted)")]
    ChecksumMismatch,
    #[error("model file line {line}: {reason}")]
    Malformed { line: usize, reason: String },
}

fn pair_key(x: &str, y: &str) -> (String, String) {
    if x <= y {
        (x.to_string(), y.to_string())
    } else {
        (y.to_string(), x.to_string())
    }
}

impl CooccurrenceModel {
    /// A model with no statistics: every query reports `UnknownWord`.
    /// Useful as a stand-in when no corpus is available; sense selection
    /// then degrades to the dictionary's first sense.
    pub fn empty() -> Self {
        CooccurrenceModel::default()
    }

    /// Builds counts from sentences. Each input string may hold several
    /// sentences; co-occurrence never crosses a sentence boundary. Word
    /// tokens are case-normalized; digits and signs are ignored.
    pub fn build(corpus: &[impl AsRef<str>]) -> Result<Self, BuildError> {
        Self::build_with_window(corpus, CooccurrenceWindow::Sentence)
    }

    pub fn build_with_window(
        corpus: &[impl AsRef<str>],
        window: CooccurrenceWindow,
    ) -> Result<Self, BuildError> {
        let mut model = CooccurrenceModel::default();
        for text in corpus {
            for sentence in tokenizer::split_sentences(text.as_ref()) {
                let words: Vec<String> = tokenizer::tokenize(&sentence)
                    .into_iter()
                    .filter(|t| t.kind == TokenKind::Word)
                    .map(|t| t.text.to_lowercase())
                    .collect();
                for word in &words {
                    *model.unigram.entry(word.clone()).or_insert(0) += 1;
                }
                // One co-occurrence per unordered pair of distinct types,
                // however often the tokens repeat within the sentence.
                let mut pairs: BTreeSet<(String, String)> = BTreeSet::new();
                for (i, a) in words.iter().enumerate() {
                    for (j, b) in words.iter().enumerate().skip(i + 1) {
                        if a == b {
                            continue;
                        }
                        if let CooccurrenceWindow::Fixed(n) = window {
                            if j - i > n {
                                continue;
                            }
                        }
                        pairs.insert(pair_key(a, b));
                    }
                }
                for key in pairs {
                    *model.pair.entry(key).or_insert(0) += 1;
                }
            }
        }
        if model.unigram.is_empty() {
            return Err(BuildError::EmptyCorpus);
        }
        model.total_tokens = model.unigram.values().sum();
        model.total_pairs = model.pair.values().sum();
        Ok(model)
    }

    /// Assembles a model directly from counts, validating the invariants
    /// the builder would guarantee.
    pub fn from_counts(
        unigram: BTreeMap<String, u64>,
        pair: BTreeMap<(String, String), u64>,
    ) -> Result<Self, String> {
        for ((a, b), &count) in &pair {
            if a >= b {
                return Err(format!("pair key ({a}, {b}) is not ordered"));
            }
            if count == 0 {
                return Err(format!("pair ({a}, {b}) has zero count"));
            }
            if !unigram.contains_key(a) || !unigram.contains_key(b) {
                return Err(format!("pair ({a}, {b}) references missing unigram"));
            }
        }
        if unigram.values().any(|&c| c == 0) {
            return Err("zero unigram count".to_string());
        }
        let total_tokens = unigram.values().sum();
        let total_pairs = pair.values().sum();
        Ok(CooccurrenceModel { unigram, pair, total_tokens, total_pairs })
    }

    pub fn total_tokens(&self) -> u64 {
        self.total_tokens
    }

    pub fn total_pairs(&self) -> u64 {
        self.total_pairs
    }

    pub fn word_count(&self) -> usize {
        self.unigram.len()
    }

    pub fn pair_type_count(&self) -> usize {
        self.pair.len()
    }

    pub fn unigram_count(&self, word: &str) -> Option<u64> {
        self.unigram.get(&word.to_lowercase()).copied()
    }

    pub fn pair_count(&self, x: &str, y: &str) -> u64 {
        let key = pair_key(&x.to_lowercase(), &y.to_lowercase());
        self.pair.get(&key).copied().unwrap_or(0)
    }

    pub fn contains(&self, word: &str) -> bool {
        self.unigram.contains_key(&word.to_lowercase())
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.unigram.keys().map(String::as_str)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&str, &str, u64)> {
        self.pair
            .iter()
            .map(|((a, b), &c)| (a.as_str(), b.as_str(), c))
    }

    fn require_word(&self, word: &str) -> Result<u64, PmiError> {
        self.unigram_count(word)
            .ok_or_else(|| PmiError::UnknownWord(word.to_string()))
    }

    /// Pointwise mutual information between two stored words, in bits.
    pub fn pmi(&self, x: &str, y: &str) -> Result<f64, PmiError> {
        let cx = self.require_word(x)?;
        let cy = self.require_word(y)?;
        let cxy = self.pair_count(x, y);
        if cxy == 0 {
            return Err(PmiError::NoPairData(x.to_string(), y.to_string()));
        }
        let px = cx as f64 / self.total_tokens as f64;
        let py = cy as f64 / self.total_tokens as f64;
        let pxy = cxy as f64 / self.total_pairs as f64;
        Ok((pxy / (px * py)).log2())
    }

    /// Positive PMI: negative associations clip to zero, and a pair count
    /// of zero scores zero rather than erroring.
    pub fn ppmi(&self, x: &str, y: &str) -> Result<f64, PmiError> {
        self.require_word(x)?;
        self.require_word(y)?;
        if self.pair_count(x, y) == 0 {
            return Ok(0.0);
        }
        match self.pmi(x, y) {
            Ok(value) => Ok(value.max(0.0)),
            Err(e) => Err(e),
        }
    }

    /// Renders the model file: version and totals header, sorted unigram
    /// rows, sorted pair rows, then a crc32 trailer over everything above.
    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{FILE_VERSION}");
        let _ = writeln!(out, "tokens {}", self.total_tokens);
        let _ = writeln!(out, "pairs {}", self.total_pairs);
        for (word, count) in &self.unigram {
            let _ = writeln!(out, "u {word} {count}");
        }
        for ((a, b), count) in &self.pair {
            let _ = writeln!(out, "p {a} {b} {count}");
        }
        let crc = crc32fast::hash(out.as_bytes());
        let _ = writeln!(out, "crc32 {crc:08x}");
        out
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), ModelFileError> {
        fs::write(path, self.to_file_string())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ModelFileError> {
        let text = fs::read_to_string(path)?;
        Self::from_file_string(&text)
    }

    pub fn from_file_string(text: &str) -> Result<Self, ModelFileError> {
        let malformed = |line: usize, reason: &str| ModelFileError::Malformed {
            line,
            reason: reason.to_string(),
        };

        // Checksum first: the crc line covers every byte before it.
        let body_end = text
            .rfind("crc32 ")
            .ok_or(ModelFileError::ChecksumMismatch)?;
        let crc_line = text[body_end..].trim_end();
        let stated = crc_line
            .strip_prefix("crc32 ")
            .and_then(|hex| u32::from_str_radix(hex, 16).ok())
            .ok_or(ModelFileError::ChecksumMismatch)?;
        let body = &text[..body_end];
        if crc32fast::hash(body.as_bytes()) != stated {
            return Err(ModelFileError::ChecksumMismatch);
        }

        let mut lines = body.lines().enumerate();
        let (_, version) = lines.next().ok_or(ModelFileError::ChecksumMismatch)?;
        if version != FILE_VERSION {
            return Err(ModelFileError::FormatVersionMismatch {
                found: version.to_string(),
            });
        }

        let parse_total = |entry: Option<(usize, &str)>, key: &str| -> Result<u64, ModelFileError> {
            let (idx, row) = entry.ok_or(malformed(0, "missing totals header"))?;
            row.strip_prefix(key)
                .and_then(|v| v.trim().parse::<u64>().ok())
                .ok_or(malformed(idx + 1, &format!("expected `{key} <count>`")))
        };
        let total_tokens = parse_total(lines.next(), "tokens ")?;
        let total_pairs = parse_total(lines.next(), "pairs ")?;

        let mut unigram = BTreeMap::new();
        let mut pair = BTreeMap::new();
        for (idx, row) in lines {
            let line = idx + 1;
            let fields: Vec<&str> = row.split(' ').collect();
            match fields.as_slice() {
                ["u", word, count] => {
                    let count: u64 = count
                        .parse()
                        .map_err(|_| malformed(line, "bad unigram count"))?;
                    if unigram.insert(word.to_string(), count).is_some() {
                        return Err(malformed(line, "duplicate unigram row"));
                    }
                }
                ["p", a, b, count] => {
                    let count: u64 = count
                        .parse()
                        .map_err(|_| malformed(line, "bad pair count"))?;
                    if a >= b {
                        return Err(malformed(line, "pair words out of order"));
                    }
                    if pair.insert((a.to_string(), b.to_string()), count).is_some() {
                        return Err(malformed(line, "duplicate pair row"));
                    }
                }
                _ => return Err(malformed(line, "unrecognized row")),
            }
        }

        let model = CooccurrenceModel::from_counts(unigram, pair)
            .map_err(|reason| malformed(0, &reason))?;
        if model.total_tokens != total_tokens || model.total_pairs != total_pairs {
            return Err(malformed(0, "totals do not match rows"));
        }
        Ok(model)
    }
}
