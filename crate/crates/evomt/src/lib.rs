//! Sinhala-to-English translation for low-digital-footprint languages.
//!
//! The pipeline translates word by word through a bilingual dictionary,
//! disambiguates senses with PPMI association scores from a co-occurrence
//! model, and then repairs the resulting subject-object-verb word order
//! into grammatical subject-verb-object English with an evolutionary
//! search guided by a POS chunk grammar.
//!
//! Stages, each usable on its own:
//!
//! - [`tokenizer`]: sentence splitting and word/digit/sign tokenization
//! - [`lexicon`]: bilingual dictionary loading and gloss lookup
//! - [`ppmi`]: co-occurrence model with PMI/PPMI scoring and persistence
//! - [`disambig`]: PPMI-driven gloss selection against sentence context
//! - [`tagger`]: POS tagging by dictionary tag, tag lexicon, suffix rules
//! - [`grammar`]: chunk-grammar parsing and cascaded chunking of tag runs
//! - [`reorder`]: evolutionary word-order search toward an SVO tag target
//! - [`pipeline`]: the end-to-end composition
//!
//! ```
//! use evomt::{
//!     translate_sentence, BilingualLexicon, ChunkGrammar, CooccurrenceModel,
//!     EaConfig, TagLexicon,
//! };
//!
//! let lexicon =
//!     BilingualLexicon::parse("mama\tI\tPRP\ngedara\thome\tNN\nyami\tgo\tVB\n").unwrap();
//! let taglex = TagLexicon::parse("I\tPRP\ngo\tVB\nhome\tNN\n").unwrap();
//! let grammar = ChunkGrammar::parse(evomt::DEFAULT_GRAMMAR).unwrap();
//! let model = CooccurrenceModel::empty(); // no corpus: first-sense selection
//! let config = EaConfig { seed: 1, ..EaConfig::default() };
//!
//! let result =
//!     translate_sentence(&lexicon, &model, &taglex, &grammar, &config, "mama gedara yami.");
//! assert_eq!(result.rendered, "I go home .");
//! ```

pub mod disambig;
pub mod grammar;
pub mod lexicon;
pub mod pipeline;
pub mod ppmi;
pub mod reorder;
pub mod rng;
pub mod tagger;
pub mod tokenizer;

pub use disambig::{disambiguate_sentence, score_gloss, ResolvedToken, SenseChoice};
pub use grammar::{Chunk, ChunkGrammar, ChunkItem, ChunkSequence, GrammarError};
pub use lexicon::{BilingualLexicon, GlossEntry, LexiconError, LookupResult};
pub use pipeline::{translate_sentence, translate_text, TranslationResult};
pub use ppmi::{CooccurrenceModel, CooccurrenceWindow, ModelFileError, PmiError};
pub use reorder::{
    derive_target, evolve, fitness, mutate, Candidate, EaConfig, EvolutionReport,
    TerminationReason,
};
pub use tagger::{tag_tokens, PosTag, TagLexicon, TaggedToken};
pub use tokenizer::{split_sentences, tokenize, Token, TokenKind};

/// Default chunk grammar shipped with the toolkit: noun phrases, comparative
/// adjectives, verbs, comparison markers, and full comparative clauses.
pub const DEFAULT_GRAMMAR: &str = include_str!("../fixtures/grammar.cg");
