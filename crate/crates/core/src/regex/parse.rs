use std::sync::Arc;

use thiserror::Error;

use super::{Regex, Symbol};

const MAX_NESTING: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: {message}")]
    SyntaxError { offset: usize, message: String },
    #[error("symbol {symbol} at byte {offset} is outside the alphabet 1..={n}")]
    SymbolOutOfRange {
        symbol: String,
        offset: usize,
        n: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Sym(Symbol),
    Plus,
    Star,
    Open,
    Close,
    Empty,
    Eps,
}

fn syntax(offset: usize, message: impl Into<String>) -> ParseError {
    ParseError::SyntaxError {
        offset,
        message: message.into(),
    }
}

/// Splits `text` into tokens. For alphabets of at most nine symbols every
/// digit is its own symbol, so compact and spaced text tokenize alike; for
/// larger alphabets a run of digits is one symbol.
fn tokenize(text: &str, n: u32) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                let start = i;
                i += 1;
                if n > 9 {
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                let digits = &text[start..i];
                let id = digits
                    .parse::<u32>()
                    .ok()
                    .filter(|&id| (1..=n).contains(&id))
                    .and_then(Symbol::new)
                    .ok_or_else(|| ParseError::SymbolOutOfRange {
                        symbol: digits.to_string(),
                        offset: start,
                        n,
                    })?;
                out.push((Tok::Sym(id), start));
                continue;
            }
            b'+' => Tok::Plus,
            b'*' => Tok::Star,
            b'(' => Tok::Open,
            b')' => Tok::Close,
            b'&' => Tok::Empty,
            b'e' => Tok::Eps,
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(syntax(i, format!("unexpected character `{ch}`")));
            }
        };
        out.push((tok, i));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.pos).map(|t| t.0)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }

    fn union(&mut self) -> Result<Arc<Regex>, ParseError> {
        let mut acc = self.concat()?;
        while self.peek() == Some(Tok::Plus) {
            self.pos += 1;
            let rhs = self.concat()?;
            acc = Regex::union(acc, rhs);
        }
        Ok(acc)
    }

    fn concat(&mut self) -> Result<Arc<Regex>, ParseError> {
        let mut acc = self.postfix()?;
        while matches!(
            self.peek(),
            Some(Tok::Sym(_) | Tok::Open | Tok::Empty | Tok::Eps)
        ) {
            let rhs = self.postfix()?;
            acc = Regex::concat(acc, rhs);
        }
        Ok(acc)
    }

    fn postfix(&mut self) -> Result<Arc<Regex>, ParseError> {
        let mut acc = self.atom()?;
        while self.peek() == Some(Tok::Star) {
            self.pos += 1;
            acc = Regex::star(acc);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Arc<Regex>, ParseError> {
        let at = self.offset();
        let tok = self
            .peek()
            .ok_or_else(|| syntax(at, "unexpected end of input"))?;
        self.pos += 1;
        match tok {
            Tok::Sym(s) => Ok(Arc::new(Regex::Sym(s))),
            Tok::Empty => Ok(Arc::new(Regex::EmptySet)),
            Tok::Eps => Ok(Arc::new(Regex::Epsilon)),
            Tok::Open => {
                self.depth += 1;
                if self.depth > MAX_NESTING {
                    return Err(syntax(at, "parentheses nested too deeply"));
                }
                let inner = self.union()?;
                if self.peek() != Some(Tok::Close) {
                    return Err(syntax(self.offset(), "expected `)`"));
                }
                self.pos += 1;
                self.depth -= 1;
                Ok(inner)
            }
            Tok::Plus | Tok::Star | Tok::Close => {
                Err(syntax(at, "expected a symbol, `e`, `&` or `(`"))
            }
        }
    }
}

/// Parses compact or spaced text over the alphabet `1..=n`.
///
/// Union binds loosest, then concatenation, then postfix star; both binary
/// operators associate to the left.
pub fn parse(text: &str, n: u32) -> Result<Arc<Regex>, ParseError> {
    if n == 0 {
        return Err(syntax(0, "alphabet size must be at least 1"));
    }
    let toks = tokenize(text, n)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        depth: 0,
    };
    let expr = p.union()?;
    if p.pos != p.toks.len() {
        return Err(syntax(p.offset(), "unexpected trailing input"));
    }
    Ok(expr)
}
