use std::fmt;
use std::sync::Arc;

use num::{BigInt, Zero};

use super::{Cursor, Pos};
use crate::algebra::{AlgebraElement, Quiver};
use crate::forms::NcForm;
use crate::{Rational, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    Eof,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(n) => format!("`{n}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Eof => "end of input".into(),
    }
}

fn lex(text: &str, suffix: char) -> Result<Vec<(Tok, Pos)>> {
    let mut c = Cursor::new(text);
    let mut out = Vec::new();
    while let Some(ch) = c.peek() {
        let pos = c.pos();
        if ch.is_whitespace() {
            c.bump();
            continue;
        }
        let tok = if ch.is_ascii_digit() {
            let mut s = String::new();
            while let Some(d) = c.peek().filter(char::is_ascii_digit) {
                s.push(d);
                c.bump();
            }
            if c.peek() == Some('.') {
                return Err(pos.error(format!("malformed rational `{s}.`: write fractions as p/q")));
            }
            Tok::Num(s.parse().expect("digits"))
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let mut s = String::new();
            while let Some(x) = c.peek().filter(|x| x.is_ascii_alphanumeric() || *x == '_') {
                s.push(x);
                c.bump();
            }
            while c.peek() == Some(suffix) {
                s.push(suffix);
                c.bump();
            }
            Tok::Ident(s)
        } else {
            c.bump();
            match ch {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => return Err(pos.error(format!("unexpected character `{ch}`"))),
            }
        };
        out.push((tok, pos));
    }
    out.push((Tok::Eof, c.pos()));
    Ok(out)
}

/// Result of parsing an expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parsed {
    Element(AlgebraElement),
    Form(NcForm),
}

impl Parsed {
    /// The value as a form; elements become 0-forms.
    pub fn into_form(self) -> NcForm {
        match self {
            Parsed::Element(x) => NcForm::from_element(&x),
            Parsed::Form(u) => u,
        }
    }
}

impl fmt::Display for Parsed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parsed::Element(x) => x.fmt(f),
            Parsed::Form(u) => u.fmt(f),
        }
    }
}

struct Parser<'q> {
    q: &'q Arc<Quiver>,
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if t.0 != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        let (t, pos) = self.next();
        if t == want {
            Ok(())
        } else {
            Err(pos.error(format!("expected {}, found {}", describe(&want), describe(&t))))
        }
    }

    fn sum(&mut self) -> Result<NcForm> {
        let mut acc = self.product()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.next();
                    acc = &acc + &self.product()?;
                }
                Tok::Minus => {
                    self.next();
                    acc = &acc - &self.product()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<NcForm> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.next();
                }
                Tok::Num(_) | Tok::Ident(_) | Tok::LParen => {}
                _ => return Ok(acc),
            }
            acc = &acc * &self.factor()?;
        }
    }

    fn factor(&mut self) -> Result<NcForm> {
        let q = self.q;
        let (t, pos) = self.next();
        match t {
            Tok::Minus => Ok(-&self.factor()?),
            Tok::Plus => self.factor(),
            Tok::Num(n) => {
                let mut value = Rational::from_integer(n);
                if *self.peek() == Tok::Slash {
                    self.next();
                    match self.next() {
                        (Tok::Num(d), _) if !d.is_zero() => value /= Rational::from_integer(d),
                        (Tok::Num(_), dpos) => return Err(dpos.error("malformed rational: zero denominator")),
                        (t, dpos) => return Err(dpos.error(format!("malformed rational: expected a denominator, found {}", describe(&t)))),
                    }
                }
                Ok(NcForm::from_element(&AlgebraElement::scalar(q, value)))
            }
            Tok::LParen => {
                let u = self.sum()?;
                self.expect(Tok::RParen).map_err(|_| pos.error("unbalanced parentheses: `(` is never closed"))?;
                Ok(u)
            }
            Tok::Ident(name) if name == "d" => {
                if *self.peek() != Tok::LParen {
                    return Err(pos.error("`d` must be applied to a parenthesized expression"));
                }
                self.next();
                let u = self.sum()?;
                self.expect(Tok::RParen).map_err(|_| pos.error("unbalanced parentheses: `d(` is never closed"))?;
                u.d().map_err(|e| pos.error(e.to_string()))
            }
            Tok::Ident(name) => {
                if let Some(a) = q.arrow_by_name(&name) {
                    return Ok(NcForm::from_element(&AlgebraElement::arrow(q, a)));
                }
                if let Some(v) = name.strip_prefix("e_").and_then(|v| q.vertex_by_name(v)) {
                    return Ok(NcForm::from_element(&AlgebraElement::vertex(q, v)));
                }
                Err(pos.error(format!("undefined symbol `{name}`")))
            }
            Tok::RParen => Err(pos.error("unbalanced parentheses: unexpected `)`")),
            t => Err(pos.error(format!("expected a term, found {}", describe(&t)))),
        }
    }
}

/// Parses an expression over `q`. Degree-0 results are algebra elements; any
/// `d(...)` makes the result a form, with every differential expanded.
pub fn parse_expr(text: &str, q: &Arc<Quiver>) -> Result<Parsed> {
    let mut p = Parser {
        q,
        toks: lex(text, q.suffix())?,
        at: 0,
    };
    if *p.peek() == Tok::Eof {
        return Err(p.pos().error("empty expression"));
    }
    let u = p.sum()?;
    match p.next() {
        (Tok::Eof, _) => {}
        (Tok::RParen, pos) => return Err(pos.error("unbalanced parentheses: unexpected `)`")),
        (t, pos) => return Err(pos.error(format!("unexpected {}", describe(&t)))),
    }
    if u.is_homogeneous() && u.degree()? == 0 {
        Ok(Parsed::Element(u.to_element()?))
    } else {
        Ok(Parsed::Form(u))
    }
}
