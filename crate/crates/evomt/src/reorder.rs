//! Evolutionary word-order search.
//!
//! The direct translation keeps the source language's subject-object-verb
//! order. This module searches permutations of it: a target tag sequence
//! is derived from the chunked sentence by an SVO template, fitness is
//! the edit distance between a candidate's tag sequence and that target,
//! and a single-parent elitist loop with paste mutation descends until
//! fitness reaches zero or the generation cap is hit. The defaults of 100
//! children per generation and a cap of 1000 generations bound the search.

use serde::Serialize;
use thiserror::Error;

use crate::grammar::{ChunkGrammar, ChunkItem};
use crate::rng::Lcg;
use crate::tagger::{PosTag, TaggedToken};

/// One word-order permutation under evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Candidate {
    /// Permutation of token indices `0..n`.
    pub order: Vec<usize>,
    /// Edit distance to the target, `None` until evaluated.
    pub fitness: Option<usize>,
}

/// Why the evolution loop stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TerminationReason {
    FitnessZero,
    GenerationCap,
}

/// Per-generation record: the surviving parent and its fitness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    pub best_fitness: usize,
    pub order: Vec<usize>,
}

/// Full account of one evolution run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvolutionReport {
    pub best: Candidate,
    pub generations_run: usize,
    pub trace: Vec<TraceEntry>,
    pub terminated_by: TerminationReason,
}

impl EvolutionReport {
    /// Line-oriented trace: `gen <k> best <fitness> order <indices>`.
    pub fn trace_lines(&self) -> String {
        let mut out = String::new();
        for (k, entry) in self.trace.iter().enumerate() {
            let indices: Vec<String> =
                entry.order.iter().map(usize::to_string).collect();
            out.push_str(&format!(
                "gen {} best {} order {}\n",
                k + 1,
                entry.best_fitness,
                indices.join(" ")
            ));
        }
        out
    }
}

/// Evolution parameters; defaults bound the search at 100 children per
/// generation and 1000 generations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EaConfig {
    pub children_per_generation: usize,
    pub max_generations: usize,
    pub seed: u64,
    /// Keep a sentence-final sign token pinned in place during mutation.
    pub anchor_trailing_sign: bool,
}

impl Default for EaConfig {
    fn default() -> Self {
        EaConfig {
            children_per_generation: 100,
            max_generations: 1000,
            seed: 0,
            anchor_trailing_sign: true,
        }
    }
}

/// The sentence has no verb to anchor an SVO template on.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("no verb found; target equals the input order")]
pub struct NoVerbFound {
    /// The fallback target: the input tag sequence unchanged.
    pub target: Vec<PosTag>,
}

/// Edit distance with unit insert/delete/substitute costs. Zero exactly
/// when the sequences are equal. Generic so reference mode can compare
/// word sequences with the same kernel.
pub fn fitness<T: PartialEq>(candidate: &[T], target: &[T]) -> usize {
    let n = candidate.len();
    let m = target.len();
    if n == 0 {
        return m;
    }
    let mut row: Vec<usize> = (0..=m).collect();
    for i in 1..=n {
        let mut diagonal = row[0];
        row[0] = i;
        for j in 1..=m {
            let previous = row[j];
            let substitute = diagonal + usize::from(candidate[i - 1] != target[j - 1]);
            row[j] = substitute.min(previous + 1).min(row[j - 1] + 1);
            diagonal = previous;
        }
    }
    row[m]
}

/// Derives the SVO target tag sequence from a chunked sentence.
///
/// Template: the first nominal item (an NP chunk, or an unchunked
/// pronoun/noun token), with an immediately preceding unchunked DT, moves
/// to the front as the subject; all VERB chunks and unchunked verb tokens
/// follow in original relative order; everything else keeps its relative
/// order after the verbs. When the direct translation's source order has
/// merged a pronoun subject and the following noun into one NP chunk, the
/// pronoun alone is the subject and the noun part stays with the rest.
/// With `anchor_trailing_sign`, a sentence-final SYM stays last.
pub fn derive_target(
    tagged: &[TaggedToken],
    grammar: &ChunkGrammar,
    anchor_trailing_sign: bool,
) -> Result<Vec<PosTag>, NoVerbFound> {
    let sequence = grammar.chunk(tagged);
    let mut items: Vec<ChunkItem> = sequence.items;

    // Hold a sentence-final sign aside so it stays anchored.
    let mut anchored_sign: Option<PosTag> = None;
    if anchor_trailing_sign {
        if let Some(ChunkItem::Token(t)) = items.last() {
            if t.tag == PosTag::Sym {
                anchored_sign = Some(t.tag);
                items.pop();
            }
        }
    }

    let item_tags = |item: &ChunkItem| -> Vec<PosTag> {
        item.tokens().iter().map(|t| t.tag).collect()
    };

    // Locate the subject: the first NP chunk or unchunked nominal token.
    let mut subject_tags: Vec<PosTag> = Vec::new();
    let mut subject_slot: Option<usize> = None;
    let mut split_np_rest: Option<Vec<PosTag>> = None;
    for (i, item) in items.iter().enumerate() {
        match item {
            ChunkItem::Chunk(c) if c.label == "NP" => {
                let tokens = c.tokens();
                // A pronoun fused with a following noun is the source
                // order's artifact: split the subject pronoun out.
                if tokens.len() > 1 && tokens[0].tag == PosTag::Prp {
                    subject_tags = vec![PosTag::Prp];
                    split_np_rest =
                        Some(tokens[1..].iter().map(|t| t.tag).collect());
                } else {
                    subject_tags = item_tags(item);
                }
                subject_slot = Some(i);
                break;
            }
            ChunkItem::Token(t) if t.tag.is_nominal() => {
                subject_tags = vec![t.tag];
                subject_slot = Some(i);
                break;
            }
            _ => {}
        }
    }

    // A determiner directly before the subject moves with it.
    let mut determiner_slot: Option<usize> = None;
    if let Some(slot) = subject_slot {
        if slot > 0 {
            if let ChunkItem::Token(t) = &items[slot - 1] {
                if t.tag == PosTag::Dt {
                    determiner_slot = Some(slot - 1);
                    subject_tags.insert(0, PosTag::Dt);
                }
            }
        }
    }

    let is_verb_item = |item: &ChunkItem| match item {
        ChunkItem::Chunk(c) => c.label == "VERB",
        ChunkItem::Token(t) => t.tag.is_verb(),
    };

    let has_verb = items.iter().any(is_verb_item)
        || tagged.iter().any(|t| t.tag.is_verb());
    if !has_verb {
        return Err(NoVerbFound { target: tagged.iter().map(|t| t.tag).collect() });
    }

    let mut verb_tags: Vec<PosTag> = Vec::new();
    let mut rest_tags: Vec<PosTag> = Vec::new();
    for (i, item) in items.iter().enumerate() {
        if Some(i) == subject_slot {
            if let Some(rest) = &split_np_rest {
                rest_tags.extend(rest.iter().copied());
            }
            continue;
        }
        if Some(i) == determiner_slot {
            continue;
        }
        if is_verb_item(item) {
            verb_tags.extend(item_tags(item));
        } else {
            rest_tags.extend(item_tags(item));
        }
    }

    let mut target = subject_tags;
    target.extend(verb_tags);
    target.extend(rest_tags);
    target.extend(anchored_sign);
    Ok(target)
}

/// Paste mutation: removes the element at a random index and reinserts it
/// a random distance away, wrapping around. With `anchor_last`, the final
/// slot neither moves nor receives insertions. A single movable element
/// returns the order unchanged.
pub fn mutate(rng: &mut Lcg, order: &[usize], anchor_last: bool) -> Vec<usize> {
    let mut out = order.to_vec();
    let movable = if anchor_last && !out.is_empty() {
        out.len() - 1
    } else {
        out.len()
    };
    if movable < 2 {
        return out;
    }
    let index = rng.next_below(movable as u32) as usize;
    let distance = 1 + rng.next_below(movable as u32 - 1) as usize;
    let slot = (index + distance) % movable;
    let element = out.remove(index);
    out.insert(slot, element);
    out
}

/// Runs the evolution loop: the identity order seeds the search, each
/// generation breeds mutated children of the parent, and the minimum
/// fitness individual among parent and children survives. Ties prefer the
/// earliest-generated child over the incumbent, so the search can drift
/// along equal-fitness plateaus instead of pinning to the first order
/// that reaches them; fitness still never worsens. Stops at fitness zero
/// or at the generation cap.
pub fn evolve(
    tagged: &[TaggedToken],
    target_tags: &[PosTag],
    config: &EaConfig,
) -> EvolutionReport {
    let tags: Vec<PosTag> = tagged.iter().map(|t| t.tag).collect();
    let order_tags = |order: &[usize]| -> Vec<PosTag> {
        order.iter().map(|&i| tags[i]).collect()
    };

    let anchor_last = config.anchor_trailing_sign
        && tags.last().copied() == Some(PosTag::Sym);

    let mut rng = Lcg::new(config.seed);
    let mut parent: Vec<usize> = (0..tagged.len()).collect();
    let mut parent_fitness = fitness(&order_tags(&parent), target_tags);

    let mut trace = Vec::new();
    let mut generations = 0;
    while parent_fitness > 0 && generations < config.max_generations {
        generations += 1;
        let mut best = parent.clone();
        let mut best_fitness = parent_fitness;
        let mut best_is_incumbent = true;
        for _ in 0..config.children_per_generation {
            let child = mutate(&mut rng, &parent, anchor_last);
            let child_fitness = fitness(&order_tags(&child), target_tags);
            if child_fitness < best_fitness
                || (child_fitness == best_fitness && best_is_incumbent)
            {
                best = child;
                best_fitness = child_fitness;
                best_is_incumbent = false;
            }
        }
        parent = best;
        parent_fitness = best_fitness;
        trace.push(TraceEntry { best_fitness, order: parent.clone() });
    }

    let terminated_by = if parent_fitness == 0 {
        TerminationReason::FitnessZero
    } else {
        TerminationReason::GenerationCap
    };
    EvolutionReport {
        best: Candidate { order: parent, fitness: Some(parent_fitness) },
        generations_run: generations,
        trace,
        terminated_by,
    }
}
