use std::collections::HashSet;

use super::{is_identifier, Cursor, Pos};
use crate::algebra::{double_quiver, Quiver, DEFAULT_SUFFIX};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Str(String),
    Colon,
    Comma,
    Semi,
    Newline,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Eof,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Word(w) => format!("`{w}`"),
        Tok::Str(s) => format!("string \"{s}\""),
        Tok::Colon => "`:`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Semi => "`;`".into(),
        Tok::Newline => "end of line".into(),
        Tok::LBracket => "`[`".into(),
        Tok::RBracket => "`]`".into(),
        Tok::LBrace => "`{`".into(),
        Tok::RBrace => "`}`".into(),
        Tok::Eof => "end of input".into(),
    }
}

const STRUCTURAL: &str = "[]{}:,;#\"";

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>> {
    let mut c = Cursor::new(text);
    let mut out = Vec::new();
    while let Some(ch) = c.peek() {
        let pos = c.pos();
        let tok = match ch {
            '#' => {
                while c.peek().is_some_and(|x| x != '\n') {
                    c.bump();
                }
                continue;
            }
            '\n' => Tok::Newline,
            x if x.is_whitespace() => {
                c.bump();
                continue;
            }
            ':' => Tok::Colon,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '"' => {
                c.bump();
                let mut s = String::new();
                loop {
                    match c.bump() {
                        Some('"') => break,
                        Some('\n') | None => return Err(pos.error("unterminated string")),
                        Some(x) => s.push(x),
                    }
                }
                out.push((Tok::Str(s), pos));
                continue;
            }
            _ => {
                let mut w = String::new();
                while let Some(x) = c.peek() {
                    if x.is_whitespace() || STRUCTURAL.contains(x) {
                        break;
                    }
                    w.push(x);
                    c.bump();
                }
                out.push((Tok::Word(w), pos));
                continue;
            }
        };
        c.bump();
        out.push((tok, pos));
    }
    out.push((Tok::Eof, c.pos()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    depth: usize,
}

impl Parser {
    /// Next token; newlines are insignificant inside brackets.
    fn peek(&mut self) -> &(Tok, Pos) {
        if self.depth > 0 {
            while self.toks[self.at].0 == Tok::Newline {
                self.at += 1;
            }
        }
        &self.toks[self.at]
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.peek().clone();
        if t.0 != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<Pos> {
        let (t, pos) = self.next();
        if t == want {
            Ok(pos)
        } else {
            Err(pos.error(format!("expected {}, found {}", describe(&want), describe(&t))))
        }
    }

    fn word(&mut self, what: &str) -> Result<(String, Pos)> {
        match self.next() {
            (Tok::Word(w), pos) => Ok((w, pos)),
            (t, pos) => Err(pos.error(format!("expected {what}, found {}", describe(&t)))),
        }
    }

    fn open(&mut self, t: Tok) -> Result<Pos> {
        let p = self.expect(t)?;
        self.depth += 1;
        Ok(p)
    }

    fn close(&mut self, t: Tok) -> Result<Pos> {
        let p = self.expect(t)?;
        self.depth -= 1;
        Ok(p)
    }

    /// `[item, item, ...]` with an optional trailing comma.
    fn list<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T>) -> Result<Vec<T>> {
        self.open(Tok::LBracket)?;
        let mut out = Vec::new();
        loop {
            if self.peek().0 == Tok::RBracket {
                break;
            }
            out.push(item(self)?);
            match self.peek().0 {
                Tok::Comma => {
                    self.next();
                }
                Tok::RBracket => break,
                _ => {
                    let (t, pos) = self.next();
                    return Err(pos.error(format!("expected `,` or `]`, found {}", describe(&t))));
                }
            }
        }
        self.close(Tok::RBracket)?;
        Ok(out)
    }
}

struct ArrowRec {
    name: (String, Pos),
    tail: (String, Pos),
    head: (String, Pos),
}

fn arrow_record(p: &mut Parser) -> Result<ArrowRec> {
    let open = p.open(Tok::LBrace)?;
    let first = p.word("arrow name or field")?;
    let rec = if p.peek().0 == Tok::Colon {
        let mut fields: [Option<(String, Pos)>; 3] = [None, None, None];
        let mut key = first;
        loop {
            p.expect(Tok::Colon)?;
            let slot = match key.0.as_str() {
                "name" => 0,
                "tail" => 1,
                "head" => 2,
                other => return Err(key.1.error(format!("unknown field `{other}`, expected name, tail or head"))),
            };
            if fields[slot].is_some() {
                return Err(key.1.error(format!("field `{}` given twice", key.0)));
            }
            fields[slot] = Some(p.word("a name")?);
            if p.peek().0 != Tok::Comma {
                break;
            }
            p.next();
            key = p.word("field name")?;
        }
        let [name, tail, head] = fields;
        let missing = |f: &str| open.error(format!("arrow record is missing `{f}`"));
        ArrowRec {
            name: name.ok_or_else(|| missing("name"))?,
            tail: tail.ok_or_else(|| missing("tail"))?,
            head: head.ok_or_else(|| missing("head"))?,
        }
    } else {
        p.expect(Tok::Comma)?;
        let tail = p.word("tail vertex")?;
        p.expect(Tok::Comma)?;
        let head = p.word("head vertex")?;
        ArrowRec { name: first, tail, head }
    };
    p.close(Tok::RBrace)?;
    Ok(rec)
}

/// Parses the quiver-file syntax, doubling the quiver when `double: true`.
pub fn parse_quiver(text: &str) -> Result<Quiver> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        depth: 0,
    };
    let mut vertices: Option<Vec<(String, Pos)>> = None;
    let mut arrows: Option<Vec<ArrowRec>> = None;
    let mut double = None;
    let mut suffix = None;
    loop {
        while matches!(p.peek().0, Tok::Newline | Tok::Semi) {
            p.next();
        }
        if p.peek().0 == Tok::Eof {
            break;
        }
        let (key, kpos) = p.word("a key")?;
        p.expect(Tok::Colon)?;
        let dup = || kpos.error(format!("key `{key}` given twice"));
        match key.as_str() {
            "vertices" if vertices.is_some() => return Err(dup()),
            "vertices" => vertices = Some(p.list(|p| p.word("vertex name"))?),
            "arrows" if arrows.is_some() => return Err(dup()),
            "arrows" => arrows = Some(p.list(arrow_record)?),
            "double" if double.is_some() => return Err(dup()),
            "double" => {
                let (w, pos) = p.word("true or false")?;
                double = Some(match w.as_str() {
                    "true" => true,
                    "false" => false,
                    _ => return Err(pos.error(format!("expected true or false, found `{w}`"))),
                });
            }
            "suffix" if suffix.is_some() => return Err(dup()),
            "suffix" => {
                let (t, pos) = p.next();
                let s = match t {
                    Tok::Str(s) => s,
                    t => return Err(pos.error(format!("expected a quoted character, found {}", describe(&t)))),
                };
                let mut chars = s.chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) if !c.is_alphanumeric() && c != '_' && !c.is_whitespace() => suffix = Some(c),
                    _ => return Err(pos.error("suffix must be a single punctuation character")),
                }
            }
            other => return Err(kpos.error(format!("unknown key `{other}`"))),
        }
        match p.peek().clone() {
            (Tok::Newline | Tok::Semi | Tok::Eof, _) => {}
            (t, pos) => return Err(pos.error(format!("expected end of statement, found {}", describe(&t)))),
        }
    }

    let vertices = vertices.ok_or_else(|| Pos { line: 1, column: 1 }.error("missing `vertices`"))?;
    let arrows = arrows.unwrap_or_default();
    let suffix = suffix.unwrap_or(DEFAULT_SUFFIX);

    let mut seen = HashSet::new();
    for (v, pos) in &vertices {
        if !v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(pos.error(format!("vertex name `{v}` may only contain letters, digits and `_`")));
        }
        if !seen.insert(v.as_str()) {
            return Err(pos.error(Error::DuplicateVertex(v.clone()).to_string()));
        }
    }
    let mut names = HashSet::new();
    for a in &arrows {
        let (name, pos) = &a.name;
        if !name.contains(suffix) && !is_identifier(name) {
            return Err(pos.error(format!("arrow name `{name}` is not an identifier")));
        }
        for (v, vpos) in [&a.tail, &a.head] {
            if !seen.contains(v.as_str()) {
                return Err(vpos.error(Error::UnknownVertex(v.clone()).to_string()));
            }
        }
        if !names.insert(name.as_str()) {
            return Err(pos.error(Error::DuplicateArrow(name.clone()).to_string()));
        }
    }
    let triples = arrows.iter().map(|a| (a.name.0.clone(), a.tail.0.clone(), a.head.0.clone()));
    let q = Quiver::with_suffix(vertices.iter().map(|v| v.0.clone()), triples, suffix).map_err(|e| locate(e, &arrows))?;
    if double == Some(true) {
        double_quiver(&q).map_err(|e| locate(e, &arrows))
    } else {
        Ok(q)
    }
}

/// Attaches the position of the offending arrow record, when there is one.
fn locate(e: Error, arrows: &[ArrowRec]) -> Error {
    let name = match &e {
        Error::ReservedName { name, .. } | Error::DuplicateArrow(name) => name.clone(),
        Error::NameCollision(name) => name.clone(),
        _ => return e,
    };
    let pos = arrows
        .iter()
        .find(|a| a.name.0 == name)
        .or_else(|| arrows.iter().find(|a| name.starts_with(&a.name.0)))
        .map_or(Pos { line: 1, column: 1 }, |a| a.name.1);
    pos.error(e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err(text: &str) -> (usize, usize, String) {
        match parse_quiver(text).unwrap_err() {
            Error::Parse { line, column, message } => (line, column, message),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn jordan_forms() {
        let q = parse_quiver("vertices:[v]; arrows:[{x,v,v}]").unwrap();
        assert_eq!(q, Quiver::jordan());
        let keyed = parse_quiver("vertices: [v]\narrows: [\n  {name: x, head: v, tail: v},\n]\n").unwrap();
        assert_eq!(keyed, q);
        let d = parse_quiver("# doubled\nvertices: [v]\narrows: [{x, v, v}]\ndouble: true\n").unwrap();
        let names: Vec<_> = d.arrows().iter().map(|a| a.name.as_str()).collect();
        assert_eq!(names, ["x", "x~"]);
        assert!(d.is_double());
    }

    #[test]
    fn diagnostics() {
        let (l, c, m) = err("vertices: [v]\narrows: [{x, v, w}]");
        assert_eq!((l, c), (2, 17));
        assert!(m.contains("`w`"), "{m}");
        let (l, c, m) = err("vertices: [1, 2]\narrows: [{a, 1, 2},\n {a, 2, 1}]");
        assert_eq!((l, c), (3, 3));
        assert!(m.contains("duplicate arrow"), "{m}");
        let (l, c, _) = err("vertices: [v, v]");
        assert_eq!((l, c), (1, 15));
        let (l, _, m) = err("vertices: [v]\narrows: [{x~, v, v}]");
        assert_eq!(l, 2);
        assert!(m.contains("reserved"), "{m}");
        let (_, _, m) = err("vertices: [v]\narrows: [{x, v, v}, {x~, v, v}]\n");
        assert!(m.contains("reserved"), "{m}");
        let (l, c, _) = err("vertices: [v\narrows: []");
        assert_eq!((l, c), (2, 1));
        assert!(err("arrows: []").2.contains("vertices"));
        assert!(err("vertices: [v]\nvertices: [w]").2.contains("twice"));
        assert!(err("vertices: [v]\ndouble: maybe").2.contains("true or false"));
    }

    #[test]
    fn printing_round_trips() {
        for text in [
            "vertices: [v]\narrows: [{x, v, v}]\ndouble: true",
            "vertices: [1, 2, 3]\narrows: [{a, 1, 2}, {b, 2, 3}, {c, 3, 1}]",
            "vertices: [p]\narrows: []\nsuffix: \"'\"\ndouble: true",
        ] {
            let q = parse_quiver(text).unwrap();
            assert_eq!(parse_quiver(&q.to_string()).unwrap(), q, "{text}");
        }
    }
}
