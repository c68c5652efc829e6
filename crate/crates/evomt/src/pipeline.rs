//! End-to-end translation: tokenize, disambiguate, translate word for
//! word, tag, derive the SVO target, and evolve the word order.
//!
//! Sentences with no verb skip the evolutionary stage entirely; their
//! direct translation is already the best available order.

use serde::Serialize;

use crate::disambig::{disambiguate_sentence, ResolvedToken};
use crate::grammar::ChunkGrammar;
use crate::lexicon::BilingualLexicon;
use crate::ppmi::CooccurrenceModel;
use crate::reorder::{derive_target, evolve, EaConfig, EvolutionReport};
use crate::tagger::{tag_tokens, PosTag, TagLexicon, TaggedToken};
use crate::tokenizer::{split_sentences, tokenize, Token};

/// Everything one sentence produced on its way through the pipeline.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TranslationResult {
    pub source_tokens: Vec<Token>,
    pub glossed: Vec<ResolvedToken>,
    /// Word-for-word translation in source (SOV) order.
    pub direct: Vec<TaggedToken>,
    /// The evolved word order; a permutation of `direct`.
    #[serde(rename = "final")]
    pub final_tokens: Vec<TaggedToken>,
    /// Evolution trace; `None` when the sentence had no verb to reorder
    /// toward or was empty.
    pub report: Option<EvolutionReport>,
    /// Final token texts joined by single spaces.
    pub rendered: String,
}

fn render(tokens: &[TaggedToken]) -> String {
    tokens
        .iter()
        .map(|t| t.text.as_str())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Translates one sentence. Total: unknown words pass through, verbless
/// sentences keep their direct order.
pub fn translate_sentence(
    lexicon: &BilingualLexicon,
    model: &CooccurrenceModel,
    taglex: &TagLexicon,
    grammar: &ChunkGrammar,
    config: &EaConfig,
    sentence: &str,
) -> TranslationResult {
    let source_tokens = tokenize(sentence);
    let glossed = disambiguate_sentence(model, lexicon, &source_tokens);

    // Word-for-word translation: glosses carry their dictionary tag,
    // passthrough tokens are tagged by the fallback chain.
    let items: Vec<(Token, Option<PosTag>)> = glossed
        .iter()
        .map(|resolved| match resolved {
            ResolvedToken::Sense(choice) => (
                Token::word(choice.chosen.gloss.clone()),
                Some(choice.chosen.pos),
            ),
            ResolvedToken::Passthrough(token) => (token.clone(), None),
        })
        .collect();
    let direct = tag_tokens(taglex, &items);

    let (final_tokens, report) =
        match derive_target(&direct, grammar, config.anchor_trailing_sign) {
            Ok(target) if !direct.is_empty() => {
                let report = evolve(&direct, &target, config);
                let reordered = report
                    .best
                    .order
                    .iter()
                    .map(|&i| direct[i].clone())
                    .collect();
                (reordered, Some(report))
            }
            _ => (direct.clone(), None),
        };

    let rendered = render(&final_tokens);
    TranslationResult {
        source_tokens,
        glossed,
        direct,
        final_tokens,
        report,
        rendered,
    }
}

/// Translates a paragraph or document sentence by sentence.
pub fn translate_text(
    lexicon: &BilingualLexicon,
    model: &CooccurrenceModel,
    taglex: &TagLexicon,
    grammar: &ChunkGrammar,
    config: &EaConfig,
    text: &str,
) -> Vec<TranslationResult> {
    split_sentences(text)
        .iter()
        .map(|sentence| {
            translate_sentence(lexicon, model, taglex, grammar, config, sentence)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reorder::TerminationReason;
    use std::collections::BTreeMap;

    fn fixture_path(name: &str) -> String {
        format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
    }

    struct Fixture {
        lexicon: BilingualLexicon,
        model: CooccurrenceModel,
        taglex: TagLexicon,
        grammar: ChunkGrammar,
    }

    fn fixture() -> Fixture {
        let corpus =
            std::fs::read_to_string(fixture_path("corpus_wsd.txt")).unwrap();
        let lines: Vec<&str> = corpus.lines().collect();
        Fixture {
            lexicon: BilingualLexicon::load(fixture_path("lexicon.tsv")).unwrap(),
            model: CooccurrenceModel::build(&lines).unwrap(),
            taglex: TagLexicon::load(fixture_path("taglex.tsv")).unwrap(),
            grammar: ChunkGrammar::load(fixture_path("grammar.cg")).unwrap(),
        }
    }

    fn translate(fx: &Fixture, config: &EaConfig, sentence: &str) -> TranslationResult {
        translate_sentence(&fx.lexicon, &fx.model, &fx.taglex, &fx.grammar, config, sentence)
    }

    #[test]
    fn fixture_sentence_translates_to_svo() {
        let fx = fixture();
        let config = EaConfig { seed: 1, ..EaConfig::default() };
        let result = translate(&fx, &config, "mama gedara yami.");
        assert_eq!(render(&result.direct), "I home go .");
        assert_eq!(result.rendered, "I go home .");
        let report = result.report.expect("reordering ran");
        assert_eq!(report.terminated_by, TerminationReason::FitnessZero);
    }

    #[test]
    fn unknown_words_pass_through_without_reordering() {
        let fx = fixture();
        let result = translate(&fx, &EaConfig::default(), "xqz wvb.");
        assert_eq!(result.rendered, "xqz wvb .");
        assert_eq!(result.direct, result.final_tokens);
        assert!(result.report.is_none(), "no verb, so no evolution");
    }

    #[test]
    fn empty_sentence_gives_empty_result() {
        let fx = fixture();
        let result = translate(&fx, &EaConfig::default(), "");
        assert!(result.source_tokens.is_empty());
        assert!(result.glossed.is_empty());
        assert!(result.direct.is_empty());
        assert!(result.final_tokens.is_empty());
        assert!(result.report.is_none());
        assert_eq!(result.rendered, "");
    }

    #[test]
    fn final_is_a_permutation_of_direct() {
        let fx = fixture();
        let config = EaConfig { seed: 7, ..EaConfig::default() };
        for sentence in [
            "mama gedara yami.",
            "oya ivura.",
            "kanda oya ivura.",
            "mama kanawa, oyaa yanawa!",
            "balla 42 pusa?",
        ] {
            let result = translate(&fx, &config, sentence);
            let count = |tokens: &[TaggedToken]| -> BTreeMap<String, usize> {
                let mut map = BTreeMap::new();
                for t in tokens {
                    *map.entry(t.text.clone()).or_insert(0) += 1;
                }
                map
            };
            assert_eq!(
                count(&result.direct),
                count(&result.final_tokens),
                "word conservation violated on `{sentence}`"
            );
        }
    }

    #[test]
    fn rendering_is_idempotent_under_retagging() {
        let fx = fixture();
        let config = EaConfig { seed: 1, ..EaConfig::default() };
        let result = translate(&fx, &config, "mama gedara yami.");
        let retokenized = tokenize(&result.rendered);
        let items: Vec<(Token, Option<PosTag>)> =
            retokenized.into_iter().map(|t| (t, None)).collect();
        let retagged = tag_tokens(&fx.taglex, &items);
        let final_tags: Vec<PosTag> = result.final_tokens.iter().map(|t| t.tag).collect();
        let re_tags: Vec<PosTag> = retagged.iter().map(|t| t.tag).collect();
        assert_eq!(final_tags, re_tags);
    }

    #[test]
    fn pipeline_is_deterministic_under_fixed_seed() {
        let fx = fixture();
        let config = EaConfig { seed: 9, ..EaConfig::default() };
        let a = translate(&fx, &config, "mama gedara yami.");
        let b = translate(&fx, &config, "mama gedara yami.");
        assert_eq!(a, b);
    }

    #[test]
    fn paragraphs_map_over_sentences() {
        let fx = fixture();
        let config = EaConfig { seed: 1, ..EaConfig::default() };
        let results = translate_text(
            &fx.lexicon,
            &fx.model,
            &fx.taglex,
            &fx.grammar,
            &config,
            "mama gedara yami. oya ivura.",
        );
        assert_eq!(results.len(), 2);
        assert_eq!(results[0].rendered, "I go home .");
        assert_eq!(results[1].rendered, "river shore .");
    }

    #[test]
    fn wsd_feeds_the_direct_translation() {
        let fx = fixture();
        let result = translate(&fx, &EaConfig::default(), "oya ivura.");
        assert_eq!(render(&result.direct), "river shore .");
    }

    #[test]
    fn long_mixed_sentence_terminates_and_conserves_words() {
        let fx = fixture();
        let config = EaConfig { seed: 4, ..EaConfig::default() };
        let sentence =
            "mama oya ivura kanda salli balla pusa potha 7 gedara blarg yami, api kanawa!";
        let result = translate(&fx, &config, sentence);
        assert_eq!(result.final_tokens.len(), result.direct.len());
        let multiset = |tokens: &[TaggedToken]| {
            let mut counts = BTreeMap::new();
            for t in tokens {
                *counts.entry(t.text.clone()).or_insert(0usize) += 1;
            }
            counts
        };
        assert_eq!(multiset(&result.direct), multiset(&result.final_tokens));
        let report = result.report.expect("verbs present, so the search ran");
        assert!(report.generations_run <= 1000);
    }
}
