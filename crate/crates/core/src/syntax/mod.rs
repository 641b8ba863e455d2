//! Surface syntax: quiver files and element/form expressions.
//!
//! Quiver file:
//!
//! ```text
//! # comments run to end of line
//! vertices: [1, 2]
//! arrows: [{a, 1, 2}, {name: b, tail: 2, head: 1}]
//! double: true
//! ```
//!
//! Statements are separated by newlines or `;`. Arrow records are either
//! positional `{name, tail, head}` or keyed. An optional `suffix: "~"` sets the
//! doubling suffix.
//!
//! Expressions are sums of products of rational literals `p/q`, trivial paths
//! `e_<vertex>`, arrow names, `d(<expr>)` and parenthesized expressions, with
//! `*` or juxtaposition for products.

mod expr;
mod quiver_file;

pub use expr::{parse_expr, Parsed};
pub use quiver_file::parse_quiver;

use crate::Error;

/// Character cursor tracking 1-based line and column.
#[derive(Clone)]
struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        }
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

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            column: self.column,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

impl Pos {
    fn error(self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }
}

fn is_identifier(s: &str) -> bool {
    let mut c = s.chars();
    c.next().is_some_and(|f| f.is_ascii_alphabetic() || f == '_') && c.all(|x| x.is_ascii_alphanumeric() || x == '_')
}
