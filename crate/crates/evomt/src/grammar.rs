//! Chunk grammar over POS tag sequences.
//!
//! A grammar is an ordered list of rules, each `NAME: {<ATOM>...}`. An
//! atom matches one item and may carry a quantifier (`?`, `*`, `+`).
//! Atom forms: a literal tag `<NN>`, a tag-prefix wildcard `<JJ.*>`, an
//! alternation of literal tags `<JJR|JJS>`, or a reference to a rule
//! defined earlier `<NP>`. Rules apply in order to a mixed sequence of
//! tagged tokens and chunks produced by earlier rules, scanning left to
//! right and taking the longest match at each start position without
//! overlap. Matching runs on a small NFA per rule, so no input can
//! trigger pathological backtracking.

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::io;
use std::path::Path;
use std::str::FromStr;

use thiserror::Error;

use crate::tagger::{PosTag, TaggedToken};

/// How an atom matches one item of the working sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Matcher {
    /// Exact tag, e.g. `<IN>`.
    Tag(PosTag),
    /// Any tag whose name starts with the prefix, e.g. `<JJ.*>`.
    TagPrefix(String),
    /// Any of the listed tags, e.g. `<JJR|JJS>`.
    Alternation(Vec<PosTag>),
    /// A chunk produced by an earlier rule, e.g. `<NP>`.
    ChunkRef(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantifier {
    One,
    Optional,
    Star,
    Plus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    pub matcher: Matcher,
    pub quantifier: Quantifier,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChunkRule {
    pub name: String,
    pub atoms: Vec<Atom>,
}

/// An ordered chunk grammar; rules cascade in definition order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChunkGrammar {
    rules: Vec<ChunkRule>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GrammarError {
    #[error("syntax error at line {line}, column {column}: expected {expected}")]
    SyntaxError {
        line: usize,
        column: usize,
        expected: String,
    },
    #[error("atom `{0}` references a rule that is not defined yet")]
    ForwardReference(String),
    #[error("rule `{0}` is defined twice")]
    DuplicateRule(String),
    #[error("cannot read grammar: {0}")]
    IoFailure(String),
}

/// One element of a chunked sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChunkItem {
    Chunk(Chunk),
    Token(TaggedToken),
}

/// A labeled span. `parts` keeps the matched sub-structure (inner chunks
/// stay visible for traces); `tokens` flattens to the covered tokens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chunk {
    pub label: String,
    pub parts: Vec<ChunkItem>,
}

impl Chunk {
    pub fn tokens(&self) -> Vec<&TaggedToken> {
        let mut out = Vec::new();
        for part in &self.parts {
            match part {
                ChunkItem::Token(t) => out.push(t),
                ChunkItem::Chunk(c) => out.extend(c.tokens()),
            }
        }
        out
    }
}

impl ChunkItem {
    pub fn tokens(&self) -> Vec<&TaggedToken> {
        match self {
            ChunkItem::Token(t) => vec![t],
            ChunkItem::Chunk(c) => c.tokens(),
        }
    }

    /// Label a rule pattern sees for this item: chunk label or tag name.
    pub fn symbol(&self) -> &str {
        match self {
            ChunkItem::Token(t) => t.tag.as_str(),
            ChunkItem::Chunk(c) => &c.label,
        }
    }
}

/// Result of cascaded chunking: chunks and unchunked tokens in order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChunkSequence {
    pub items: Vec<ChunkItem>,
}

impl ChunkSequence {
    pub fn tokens(&self) -> Vec<&TaggedToken> {
        self.items.iter().flat_map(|i| i.tokens()).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

impl fmt::Display for ChunkItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChunkItem::Token(t) => write!(f, "{t}"),
            ChunkItem::Chunk(c) => {
                write!(f, "{}[", c.label)?;
                for (i, part) in c.parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{part}")?;
                }
                f.write_str("]")
            }
        }
    }
}

impl fmt::Display for ChunkSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, item) in self.items.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{item}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Matcher {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Matcher::Tag(t) => f.write_str(t.as_str()),
            Matcher::TagPrefix(p) => write!(f, "{p}.*"),
            Matcher::Alternation(tags) => {
                let names: Vec<&str> = tags.iter().map(|t| t.as_str()).collect();
                f.write_str(&names.join("|"))
            }
            Matcher::ChunkRef(name) => f.write_str(name),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let quant = match self.quantifier {
            Quantifier::One => "",
            Quantifier::Optional => "?",
            Quantifier::Star => "*",
            Quantifier::Plus => "+",
        };
        write!(f, "<{}>{quant}", self.matcher)
    }
}

impl fmt::Display for ChunkRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {{", self.name)?;
        for atom in &self.atoms {
            write!(f, "{atom}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Display for ChunkGrammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for rule in &self.rules {
            writeln!(f, "{rule}")?;
        }
        Ok(())
    }
}

struct Scanner<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner { chars: text.chars().peekable(), line: 1, column: 1 }
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_whitespace(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn error(&self, expected: &str) -> GrammarError {
        GrammarError::SyntaxError {
            line: self.line,
            column: self.column,
            expected: expected.to_string(),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), GrammarError> {
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&format!("`{c}`")))
        }
    }

    fn symbol(&mut self) -> Result<String, GrammarError> {
        let mut out = String::new();
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            out.push(self.bump().unwrap());
        }
        if out.is_empty() {
            return Err(self.error("a rule or tag name"));
        }
        Ok(out)
    }
}

fn is_quantifier(c: char) -> bool {
    matches!(c, '?' | '*' | '+')
}

impl ChunkGrammar {
    pub fn rules(&self) -> &[ChunkRule] {
        &self.rules
    }

    pub fn rule(&self, name: &str) -> Option<&ChunkRule> {
        self.rules.iter().find(|r| r.name == name)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, GrammarError> {
        let text = fs::read_to_string(path).map_err(|e: io::Error| {
            GrammarError::IoFailure(e.to_string())
        })?;
        Self::parse(&text)
    }

    /// Parses grammar source. Whitespace and newlines between atoms are
    /// not significant, so a rule may wrap across lines.
    pub fn parse(text: &str) -> Result<Self, GrammarError> {
        let mut scanner = Scanner::new(text);
        let mut rules: Vec<ChunkRule> = Vec::new();

        loop {
            scanner.skip_whitespace();
            if scanner.peek().is_none() {
                break;
            }
            let name = scanner.symbol()?;
            if rules.iter().any(|r| r.name == name) {
                return Err(GrammarError::DuplicateRule(name));
            }
            scanner.skip_whitespace();
            scanner.expect(':')?;
            scanner.skip_whitespace();
            scanner.expect('{')?;

            let mut atoms = Vec::new();
            loop {
                scanner.skip_whitespace();
                match scanner.peek() {
                    Some('}') => {
                        scanner.bump();
                        break;
                    }
                    Some('<') => {
                        scanner.bump();
                        let matcher = parse_atom_body(&mut scanner, &rules)?;
                        scanner.expect('>')?;
                        let quantifier = match scanner.peek() {
                            Some(c) if is_quantifier(c) => {
                                scanner.bump();
                                match c {
                                    '?' => Quantifier::Optional,
                                    '*' => Quantifier::Star,
                                    _ => Quantifier::Plus,
                                }
                            }
                            _ => Quantifier::One,
                        };
                        atoms.push(Atom { matcher, quantifier });
                    }
                    _ => return Err(scanner.error("`<` or `}`")),
                }
            }
            if atoms.is_empty() {
                return Err(scanner.error("at least one atom per rule"));
            }
            rules.push(ChunkRule { name, atoms });
        }
        Ok(ChunkGrammar { rules })
    }

    /// Cascaded chunking: applies each rule in order over the working
    /// sequence, replacing matched spans with labeled chunks; unmatched
    /// tokens stay unchunked.
    pub fn chunk(&self, tagged: &[TaggedToken]) -> ChunkSequence {
        let mut items: Vec<ChunkItem> = tagged
            .iter()
            .map(|t| ChunkItem::Token(t.clone()))
            .collect();
        for rule in &self.rules {
            items = apply_rule(rule, items);
        }
        ChunkSequence { items }
    }
}

fn parse_atom_body(
    scanner: &mut Scanner<'_>,
    rules: &[ChunkRule],
) -> Result<Matcher, GrammarError> {
    let first = scanner.symbol()?;

    // Prefix wildcard: NAME followed by `.*`.
    if scanner.peek() == Some('.') {
        scanner.bump();
        scanner.expect('*')?;
        return Ok(Matcher::TagPrefix(first));
    }

    // Alternation of literal tags.
    if scanner.peek() == Some('|') {
        let mut names = vec![first];
        while scanner.peek() == Some('|') {
            scanner.bump();
            names.push(scanner.symbol()?);
        }
        let mut tags = Vec::with_capacity(names.len());
        for name in names {
            let tag = PosTag::from_str(&name)
                .map_err(|_| GrammarError::ForwardReference(name.clone()))?;
            tags.push(tag);
        }
        return Ok(Matcher::Alternation(tags));
    }

    // Bare symbol: an earlier rule's label wins over a tag of the same
    // name; otherwise it must be a known tag.
    if rules.iter().any(|r| r.name == first) {
        return Ok(Matcher::ChunkRef(first));
    }
    match PosTag::from_str(&first) {
        Ok(tag) => Ok(Matcher::Tag(tag)),
        Err(_) => Err(GrammarError::ForwardReference(first)),
    }
}

fn matches(matcher: &Matcher, item: &ChunkItem) -> bool {
    match (matcher, item) {
        (Matcher::Tag(t), ChunkItem::Token(tok)) => tok.tag == *t,
        (Matcher::TagPrefix(p), ChunkItem::Token(tok)) => tok.tag.as_str().starts_with(p.as_str()),
        (Matcher::Alternation(tags), ChunkItem::Token(tok)) => tags.contains(&tok.tag),
        (Matcher::ChunkRef(name), ChunkItem::Chunk(c)) => c.label == *name,
        _ => false,
    }
}

/// Adds every position reachable by skipping optional and star atoms.
fn closure(atoms: &[Atom], states: &mut BTreeSet<usize>) {
    let mut frontier: Vec<usize> = states.iter().copied().collect();
    while let Some(j) = frontier.pop() {
        if j < atoms.len()
            && matches!(
                atoms[j].quantifier,
                Quantifier::Optional | Quantifier::Star
            )
            && states.insert(j + 1)
        {
            frontier.push(j + 1);
        }
    }
}

/// Longest non-empty match of the rule's pattern starting at `start`,
/// by NFA simulation with subset tracking.
fn longest_match(rule: &ChunkRule, items: &[ChunkItem], start: usize) -> Option<usize> {
    let atoms = &rule.atoms;
    let accept = atoms.len();
    let mut states = BTreeSet::from([0usize]);
    closure(atoms, &mut states);

    let mut longest = None;
    let mut len = 0;
    for item in &items[start..] {
        let mut next = BTreeSet::new();
        for &j in states.iter().filter(|&&j| j < accept) {
            if matches(&atoms[j].matcher, item) {
                match atoms[j].quantifier {
                    Quantifier::One | Quantifier::Optional => {
                        next.insert(j + 1);
                    }
                    Quantifier::Star | Quantifier::Plus => {
                        next.insert(j);
                        next.insert(j + 1);
                    }
                }
            }
        }
        closure(atoms, &mut next);
        if next.is_empty() {
            break;
        }
        states = next;
        len += 1;
        if states.contains(&accept) {
            longest = Some(len);
        }
    }
    longest
}

fn apply_rule(rule: &ChunkRule, items: Vec<ChunkItem>) -> Vec<ChunkItem> {
    let mut out = Vec::with_capacity(items.len());
    let mut i = 0;
    while i < items.len() {
        match longest_match(rule, &items, i) {
            Some(len) => {
                out.push(ChunkItem::Chunk(Chunk {
                    label: rule.name.clone(),
                    parts: items[i..i + len].to_vec(),
                }));
                i += len;
            }
            None => {
                out.push(items[i].clone());
                i += 1;
            }
        }
    }
    out
}
