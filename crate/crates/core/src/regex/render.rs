use std::io::{self, Write};
use std::str::FromStr;

use thiserror::Error;

use super::Regex;

/// Textual forms of an expression.
///
/// `Compact` writes each symbol as a single digit and juxtaposes
/// concatenated factors (`(12+21)(34+43)`); it only exists for alphabets of
/// at most nine symbols. `Spaced` writes every token, symbols included, as a
/// separate whitespace-delimited word (`( 1 2 + 2 1 )`) and works for any
/// alphabet size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Compact,
    Spaced,
}

impl FromStr for RenderFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "compact" => Ok(RenderFormat::Compact),
            "spaced" => Ok(RenderFormat::Spaced),
            other => Err(format!("unknown render format `{other}`")),
        }
    }
}

#[derive(Debug, Error)]
pub enum RenderError {
    #[error(
        "compact format cannot represent symbol {symbol} (ids above 9 need the spaced format)"
    )]
    CompactOverflow { symbol: u32 },
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub fn render(expr: &Regex, format: RenderFormat) -> Result<String, RenderError> {
    let mut out = Vec::new();
    render_to(expr, format, &mut out)?;
    Ok(String::from_utf8(out).expect("rendered text is ASCII"))
}

enum Item<'a> {
    Node(&'a Regex, bool),
    Token(&'static str),
}

/// Streams the rendering of `expr` into `sink`.
///
/// Parentheses are inserted when a child binds looser than its parent, and
/// additionally around a right operand of the same binary operator, so that
/// the left-leaning chains produced by the parser render back unchanged.
/// Nothing is written if the compact format is requested for an alphabet it
/// cannot represent.
pub fn render_to<W: Write>(expr: &Regex, format: RenderFormat, sink: W) -> Result<(), RenderError> {
    if format == RenderFormat::Compact {
        let max = expr.max_symbol();
        if max > 9 {
            return Err(RenderError::CompactOverflow { symbol: max });
        }
    }
    let mut sink = io::BufWriter::new(sink);
    let mut first = true;
    let mut emit = |sink: &mut io::BufWriter<W>, tok: &dyn std::fmt::Display| -> io::Result<()> {
        if format == RenderFormat::Spaced && !first {
            sink.write_all(b" ")?;
        }
        first = false;
        write!(sink, "{tok}")
    };

    let mut stack = vec![Item::Node(expr, false)];
    while let Some(item) = stack.pop() {
        match item {
            Item::Token(t) => emit(&mut sink, &t)?,
            Item::Node(node, true) => {
                stack.push(Item::Token(")"));
                stack.push(Item::Node(node, false));
                stack.push(Item::Token("("));
            }
            Item::Node(node, false) => match node {
                Regex::EmptySet => emit(&mut sink, &"&")?,
                Regex::Epsilon => emit(&mut sink, &"e")?,
                Regex::Sym(s) => emit(&mut sink, s)?,
                Regex::Union(a, b) => {
                    stack.push(Item::Node(b, b.binding() == 0));
                    stack.push(Item::Token("+"));
                    stack.push(Item::Node(a, false));
                }
                Regex::Concat(a, b) => {
                    stack.push(Item::Node(b, b.binding() <= 1));
                    stack.push(Item::Node(a, a.binding() < 1));
                }
                Regex::Star(a) => {
                    stack.push(Item::Token("*"));
                    stack.push(Item::Node(a, a.binding() < 2));
                }
            },
        }
    }
    sink.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn pair(a: u32, b: u32) -> Arc<Regex> {
        Regex::concat(Regex::sym(a), Regex::sym(b))
    }

    #[test]
    fn first_term_of_r4() {
        let e = Regex::concat(
            Regex::union(pair(1, 2), pair(2, 1)),
            Regex::union(pair(3, 4), pair(4, 3)),
        );
        assert_eq!(render(&e, RenderFormat::Compact).unwrap(), "(12+21)(34+43)");
        assert_eq!(
            render(&e, RenderFormat::Spaced).unwrap(),
            "( 1 2 + 2 1 ) ( 3 4 + 4 3 )"
        );
    }

    #[test]
    fn leaves_and_literals() {
        assert_eq!(render(&Regex::sym(1), RenderFormat::Compact).unwrap(), "1");
        let e = Regex::union(Arc::new(Regex::Epsilon), Arc::new(Regex::EmptySet));
        assert_eq!(render(&e, RenderFormat::Compact).unwrap(), "e+&");
    }

    #[test]
    fn star_parenthesization() {
        let e = Regex::star(Regex::star(pair(1, 2)));
        assert_eq!(render(&e, RenderFormat::Compact).unwrap(), "(12)**");
        let e = Regex::concat(Regex::star(Regex::sym(1)), Regex::sym(2));
        assert_eq!(render(&e, RenderFormat::Compact).unwrap(), "1*2");
    }

    #[test]
    fn right_nested_operands_keep_parentheses() {
        let e = Regex::union(Regex::sym(1), Regex::union(Regex::sym(2), Regex::sym(3)));
        assert_eq!(render(&e, RenderFormat::Compact).unwrap(), "1+(2+3)");
        let e = Regex::concat(Regex::sym(1), pair(2, 3));
        assert_eq!(render(&e, RenderFormat::Compact).unwrap(), "1(23)");
    }

    #[test]
    fn compact_rejects_large_symbols() {
        let e = Regex::union(Regex::sym(3), Regex::sym(10));
        assert!(matches!(
            render(&e, RenderFormat::Compact),
            Err(RenderError::CompactOverflow { symbol: 10 })
        ));
        assert_eq!(render(&e, RenderFormat::Spaced).unwrap(), "3 + 10");
    }
}
