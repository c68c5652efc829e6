//! Sentence splitting and tokenization.
//!
//! Sentences end at a full stop, question mark, or exclamation mark that is
//! followed by whitespace or end of input; the terminator stays attached to
//! its sentence. Tokenization is lossless and total: every non-whitespace
//! character lands in exactly one token, classified by character class.
//! Sinhala script letters count as word characters, so both native and
//! romanized source text tokenize the same way.

use serde::Serialize;

/// Classification of a token by the character class it is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TokenKind {
    /// A maximal run of letters.
    Word,
    /// A maximal run of numeric characters.
    Digit,
    /// A single non-alphanumeric, non-whitespace character.
    Sign,
}

/// One token of a sentence: the text plus its class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Token {
    pub text: String,
    pub kind: TokenKind,
}

impl Token {
    pub fn word(text: impl Into<String>) -> Self {
        Token { text: text.into(), kind: TokenKind::Word }
    }

    pub fn digit(text: impl Into<String>) -> Self {
        Token { text: text.into(), kind: TokenKind::Digit }
    }

    pub fn sign(text: impl Into<String>) -> Self {
        Token { text: text.into(), kind: TokenKind::Sign }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CharClass {
    Whitespace,
    Letter,
    Digit,
    Sign,
}

fn classify(c: char) -> CharClass {
    if c.is_whitespace() {
        CharClass::Whitespace
    } else if c.is_numeric() {
        CharClass::Digit
    } else if c.is_alphabetic() {
        CharClass::Letter
    } else {
        CharClass::Sign
    }
}

fn is_terminator(c: char) -> bool {
    matches!(c, '.' | '?' | '!')
}

/// Splits text into sentences at terminators followed by whitespace or end
/// of input. Each sentence is trimmed; a trailing fragment without a
/// terminator is still returned as a sentence of its own.
pub fn split_sentences(text: &str) -> Vec<String> {
    let mut sentences = Vec::new();
    let mut current = String::new();
    let mut chars = text.chars().peekable();

    while let Some(c) = chars.next() {
        current.push(c);
        if is_terminator(c) {
            let at_boundary = match chars.peek() {
                Some(&next) => next.is_whitespace(),
                None => true,
            };
            if at_boundary {
                let sentence = current.trim();
                if !sentence.is_empty() {
                    sentences.push(sentence.to_string());
                }
                current.clear();
            }
        }
    }

    let tail = current.trim();
    if !tail.is_empty() {
        sentences.push(tail.to_string());
    }
    sentences
}

/// Splits a sentence into tokens: whitespace separates, letter and digit
/// runs become `Word` and `Digit` tokens, and every sign character is
/// emitted as its own `Sign` token.
pub fn tokenize(sentence: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut run = String::new();
    let mut run_class = CharClass::Whitespace;

    let flush = |run: &mut String, class: CharClass, tokens: &mut Vec<Token>| {
        if run.is_empty() {
            return;
        }
        let kind = match class {
            CharClass::Letter => TokenKind::Word,
            CharClass::Digit => TokenKind::Digit,
            CharClass::Sign => TokenKind::Sign,
            CharClass::Whitespace => unreachable!("whitespace is never accumulated"),
        };
        tokens.push(Token { text: std::mem::take(run), kind });
    };

    for c in sentence.chars() {
        let class = classify(c);
        if class != run_class {
            flush(&mut run, run_class, &mut tokens);
            run_class = class;
        }
        match class {
            CharClass::Whitespace => {}
            // Signs never merge into runs: one token per character.
            CharClass::Sign => {
                run.push(c);
                flush(&mut run, CharClass::Sign, &mut tokens);
            }
            _ => run.push(c),
        }
    }
    flush(&mut run, run_class, &mut tokens);
    tokens
}
