//! Gloss selection by PPMI association with the rest of the sentence.
//!
//! A word with several dictionary senses takes the gloss that scores the
//! highest summed PPMI against its context. Resolution is greedy left to
//! right: positions already resolved contribute their chosen gloss,
//! positions still ahead contribute their whole candidate set, and the
//! best candidate at each position is taken as each context slot's
//! contribution. Words the model has never seen contribute zero, so a
//! sparse model degrades to first-sense translation.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::lexicon::{BilingualLexicon, GlossEntry, LookupResult};
use crate::ppmi::CooccurrenceModel;
use crate::tokenizer::{Token, TokenKind};

/// A resolved sense: the winning gloss, its score, and the losing senses.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SenseChoice {
    pub source: Token,
    pub chosen: GlossEntry,
    pub score: f64,
    pub alternatives: Vec<(GlossEntry, f64)>,
}

/// One output slot of sentence disambiguation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum ResolvedToken {
    Sense(SenseChoice),
    Passthrough(Token),
}

impl ResolvedToken {
    /// The English surface text this slot contributes to the translation.
    pub fn surface(&self) -> &str {
        match self {
            ResolvedToken::Sense(choice) => &choice.chosen.gloss,
            ResolvedToken::Passthrough(token) => &token.text,
        }
    }
}

/// Sums, over every context position, the best PPMI between `gloss` and
/// that position's candidate gloss words. Unknown words contribute zero.
pub fn score_gloss(
    model: &CooccurrenceModel,
    gloss: &str,
    context: &[BTreeSet<String>],
) -> f64 {
    context
        .iter()
        .map(|candidates| {
            candidates
                .iter()
                .map(|other| model.ppmi(gloss, other).unwrap_or(0.0))
                .fold(0.0, f64::max)
        })
        .sum()
}

/// The gloss words a position offers as context: every candidate sense for
/// dictionary words, the word itself for unknown passthroughs, and nothing
/// for digits and signs.
fn candidate_set(lexicon: &BilingualLexicon, token: &Token) -> BTreeSet<String> {
    match lexicon.lookup(token) {
        LookupResult::Glosses(senses) => {
            senses.iter().map(|s| s.gloss.to_lowercase()).collect()
        }
        LookupResult::Passthrough(t) if t.kind == TokenKind::Word => {
            BTreeSet::from([t.text.to_lowercase()])
        }
        LookupResult::Passthrough(_) => BTreeSet::new(),
    }
}

/// Resolves every token of a sentence. Ambiguous words take the highest
/// scoring gloss, ties break toward the dictionary's first-listed sense;
/// single-gloss words and passthrough tokens are returned unchanged.
pub fn disambiguate_sentence(
    model: &CooccurrenceModel,
    lexicon: &BilingualLexicon,
    tokens: &[Token],
) -> Vec<ResolvedToken> {
    let candidate_sets: Vec<BTreeSet<String>> = tokens
        .iter()
        .map(|t| candidate_set(lexicon, t))
        .collect();

    let mut resolved: Vec<ResolvedToken> = Vec::with_capacity(tokens.len());
    for (i, token) in tokens.iter().enumerate() {
        let senses = match lexicon.lookup(token) {
            LookupResult::Glosses(senses) => senses,
            LookupResult::Passthrough(t) => {
                resolved.push(ResolvedToken::Passthrough(t));
                continue;
            }
        };

        if senses.len() == 1 {
            resolved.push(ResolvedToken::Sense(SenseChoice {
                source: token.clone(),
                chosen: senses[0].clone(),
                score: 0.0,
                alternatives: Vec::new(),
            }));
            continue;
        }

        // Context: already-chosen glosses behind, full candidate sets ahead.
        let context: Vec<BTreeSet<String>> = (0..tokens.len())
            .filter(|&j| j != i)
            .map(|j| {
                if j < i {
                    match &resolved[j] {
                        ResolvedToken::Sense(choice) => {
                            BTreeSet::from([choice.chosen.gloss.to_lowercase()])
                        }
                        ResolvedToken::Passthrough(t) if t.kind == TokenKind::Word => {
                            BTreeSet::from([t.text.to_lowercase()])
                        }
                        ResolvedToken::Passthrough(_) => BTreeSet::new(),
                    }
                } else {
                    candidate_sets[j].clone()
                }
            })
            .collect();

        let scored: Vec<(GlossEntry, f64)> = senses
            .iter()
            .map(|sense| {
                let score = score_gloss(model, &sense.gloss.to_lowercase(), &context);
                (sense.clone(), score)
            })
            .collect();

        // Strict comparison keeps the earliest sense on ties.
        let mut best = 0;
        for (idx, (_, score)) in scored.iter().enumerate().skip(1) {
            if *score > scored[best].1 {
                best = idx;
            }
        }

        let (chosen, score) = scored[best].clone();
        let alternatives = scored
            .into_iter()
            .enumerate()
            .filter(|(idx, _)| *idx != best)
            .map(|(_, pair)| pair)
            .collect();
        resolved.push(ResolvedToken::Sense(SenseChoice {
            source: token.clone(),
            chosen,
            score,
            alternatives,
        }));
    }
    resolved
}
