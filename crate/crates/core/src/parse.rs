//! Recursive-descent parser for the word grammar.
//!
//! ```text
//! word  := term*
//! term  := atom ('^' INT)?
//! atom  := IDENT | '1' | '(' word ')' | '[' word (',' word)+ ']'
//! ```
//!
//! Identifiers match `[a-z][a-z0-9]*`, `1` denotes the empty word, and
//! whitespace between tokens is insignificant. Powers are expanded at parse
//! time.

use crate::words::{comm, Alphabet, Word};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Int(i64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Caret,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '(' => {
                tokens.push(Token::LParen);
                i += 1;
            }
            ')' => {
                tokens.push(Token::RParen);
                i += 1;
            }
            '[' => {
                tokens.push(Token::LBracket);
                i += 1;
            }
            ']' => {
                tokens.push(Token::RBracket);
                i += 1;
            }
            ',' => {
                tokens.push(Token::Comma);
                i += 1;
            }
            '^' => {
                tokens.push(Token::Caret);
                i += 1;
            }
            '+' | '-' | '0'..='9' => {
                let start = i;
                if c == '+' || c == '-' {
                    i += 1;
                }
                let digits_start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i == digits_start {
                    return Err(Error::Parse(format!("sign {c:?} not followed by digits")));
                }
                let text: String = chars[start..i].iter().collect();
                let value = text
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("integer {text:?} out of range")))?;
                tokens.push(Token::Int(value));
            }
            'a'..='z' => {
                let start = i;
                i += 1;
                while i < chars.len() && (chars[i].is_ascii_lowercase() || chars[i].is_ascii_digit())
                {
                    i += 1;
                }
                tokens.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn word(&mut self) -> Result<Word> {
        let mut acc = Word::identity(self.alphabet);
        while let Some(tok) = self.peek() {
            match tok {
                Token::RParen | Token::RBracket | Token::Comma => break,
                _ => {
                    let term = self.term()?;
                    acc = acc.mul(&term)?;
                }
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Word> {
        let atom = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.next();
            match self.next() {
                Some(Token::Int(k)) => Ok(atom.pow(k)),
                other => Err(Error::Parse(format!("expected integer exponent, got {other:?}"))),
            }
        } else {
            Ok(atom)
        }
    }

    fn atom(&mut self) -> Result<Word> {
        match self.next() {
            Some(Token::Ident(name)) => {
                let index = self.alphabet.index_of(&name).ok_or_else(|| {
                    Error::Parse(format!(
                        "unknown generator {name:?} for alphabet {:?}",
                        self.alphabet.names()
                    ))
                })?;
                Word::generator(self.alphabet, index)
            }
            Some(Token::Int(1)) => Ok(Word::identity(self.alphabet)),
            Some(Token::Int(k)) => {
                Err(Error::Parse(format!("unexpected integer {k}; only the literal 1 is a word")))
            }
            Some(Token::LParen) => {
                let inner = self.word()?;
                match self.next() {
                    Some(Token::RParen) => Ok(inner),
                    other => Err(Error::Parse(format!("expected ')', got {other:?}"))),
                }
            }
            Some(Token::LBracket) => {
                let mut parts = vec![self.word()?];
                while self.peek() == Some(&Token::Comma) {
                    self.next();
                    parts.push(self.word()?);
                }
                match self.next() {
                    Some(Token::RBracket) => {}
                    other => return Err(Error::Parse(format!("expected ']', got {other:?}"))),
                }
                if parts.len() < 2 {
                    return Err(Error::Parse(
                        "commutator bracket needs at least two parts".into(),
                    ));
                }
                comm(&parts)
            }
            other => Err(Error::Parse(format!("expected a word atom, got {other:?}"))),
        }
    }
}

pub(crate) fn parse_word(text: &str, alphabet: &Alphabet) -> Result<Word> {
    let tokens = tokenize(text)?;
    let mut parser = Parser { tokens, pos: 0, alphabet };
    let word = parser.word()?;
    if let Some(tok) = parser.peek() {
        return Err(Error::Parse(format!("trailing input at token {tok:?}")));
    }
    Ok(word)
}

/// Parses a word whose alphabet is inferred from the identifiers in the
/// text, taken in order of first appearance.
pub fn parse_word_inferred(text: &str) -> Result<(Word, Alphabet)> {
    let tokens = tokenize(text)?;
    let mut names: Vec<String> = Vec::new();
    for tok in &tokens {
        if let Token::Ident(name) = tok {
            if !names.contains(name) {
                names.push(name.clone());
            }
        }
    }
    let alphabet = Alphabet::new(&names)?;
    let word = parse_word(text, &alphabet)?;
    Ok((word, alphabet))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::ab()
    }

    #[test]
    fn parses_powers_and_grouping() {
        // reduction happens eagerly: a^2 a^-1 b^-1 b = a
        let w = parse_word("a^2 (b a)^-1 b", &ab()).unwrap();
        assert_eq!(w, parse_word("a", &ab()).unwrap());
        let neg = parse_word("(a b)^-2", &ab()).unwrap();
        assert_eq!(format!("{neg}"), "b^-1 a^-1 b^-1 a^-1");
    }

    #[test]
    fn parses_commutator_brackets() {
        let w = parse_word("[a, b]", &ab()).unwrap();
        assert_eq!(format!("{w}"), "a^-1 b^-1 a b");
        let nested = parse_word("[[a,b],a]", &ab()).unwrap();
        assert_eq!(nested.len(), 8);
        let multi = parse_word("[a,b,a]", &ab()).unwrap();
        assert_eq!(multi, nested);
    }

    #[test]
    fn literal_one_is_empty() {
        assert!(parse_word("1", &ab()).unwrap().is_identity());
        assert!(parse_word("a 1 a^-1", &ab()).unwrap().is_identity());
    }

    #[test]
    fn whitespace_is_insignificant() {
        assert_eq!(
            parse_word("a b^-1", &ab()).unwrap(),
            parse_word("  a   b ^ -1 ", &ab()).unwrap()
        );
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_word("c", &ab()).is_err());
        assert!(parse_word("a^", &ab()).is_err());
        assert!(parse_word("(a", &ab()).is_err());
        assert!(parse_word("[a]", &ab()).is_err());
        assert!(parse_word("a)", &ab()).is_err());
        assert!(parse_word("2", &ab()).is_err());
        assert!(parse_word("a^2^3", &ab()).is_err());
    }

    #[test]
    fn inferred_alphabet_keeps_first_appearance_order() {
        let (word, alphabet) = parse_word_inferred("q p q^-1").unwrap();
        assert_eq!(alphabet.names(), &["q".to_string(), "p".to_string()]);
        assert_eq!(format!("{word}"), "q p q^-1");
    }
}
