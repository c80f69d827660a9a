//! Text format for bound quivers.
//!
//! ```text
//! quiver square
//! vertices: 1 2 3 4
//! arrows:
//!   a: 1 -> 2
//!   b: 2 -> 4
//!   c: 1 -> 3
//!   d: 3 -> 4
//! relations:
//!   b.a - d.c;
//! ```
//!
//! Paths are written right to left with `.`; coefficients are integers or
//! fractions followed by `*`. `#` starts a comment. Optional `n:` and `tau:`
//! sections attach a translation (`tau: x -> y` means tau(x) = y).
//! Names may contain brackets, and anything goes inside brackets, so window
//! vertices such as `(1,2)[-1]` are valid names.

use num_bigint::BigInt;

use crate::error::{Error, ParseError, Result};
use crate::quiver::{format_combination, Arrow, BoundQuiver, Path, Quiver, Translation};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Name(String),
    Colon,
    Semi,
    To,
    Star,
    Plus,
    Minus,
    Dot,
    Slash,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

const SECTIONS: [&str; 5] = ["vertices", "arrows", "relations", "n", "tau"];

fn lex(src: &str) -> std::result::Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let push = |tok: Tok, out: &mut Vec<Token>| {
            out.push(Token {
                tok,
                line: l0,
                column: c0,
            })
        };
        match c {
            '\n' => {
                line += 1;
                col = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => {}
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            ':' => push(Tok::Colon, &mut out),
            ';' => push(Tok::Semi, &mut out),
            '*' => push(Tok::Star, &mut out),
            '+' => push(Tok::Plus, &mut out),
            '.' => push(Tok::Dot, &mut out),
            '/' => push(Tok::Slash, &mut out),
            '-' => {
                if chars.get(i + 1) == Some(&'>') {
                    push(Tok::To, &mut out);
                    i += 2;
                    col += 2;
                    continue;
                }
                push(Tok::Minus, &mut out);
            }
            _ => {
                let mut depth: i32 = 0;
                let mut name = String::new();
                while i < chars.len() {
                    let d = chars[i];
                    if d.is_whitespace() || d == '#' {
                        break;
                    }
                    if depth == 0 && ":;*+-./".contains(d) {
                        break;
                    }
                    match d {
                        '(' | '[' | '{' => depth += 1,
                        ')' | ']' | '}' => depth -= 1,
                        _ => {}
                    }
                    if depth < 0 {
                        return Err(ParseError {
                            line,
                            column: col,
                            message: format!("unbalanced `{d}`"),
                        });
                    }
                    name.push(d);
                    i += 1;
                    col += 1;
                }
                if depth != 0 {
                    return Err(ParseError {
                        line: l0,
                        column: c0,
                        message: format!("unclosed bracket in `{name}`"),
                    });
                }
                out.push(Token {
                    tok: Tok::Name(name),
                    line: l0,
                    column: c0,
                });
                continue;
            }
        }
        i += 1;
        col += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    eof: (usize, usize),
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }
    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1).map(|t| &t.tok)
    }
    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map_or(self.eof, |t| (t.line, t.column))
    }
    fn err<T>(&self, msg: impl Into<String>) -> std::result::Result<T, ParseError> {
        let (line, column) = self.here();
        Err(ParseError {
            line,
            column,
            message: msg.into(),
        })
    }
    fn bump(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.pos).map(|t| &t.tok);
        self.pos += 1;
        t
    }
    fn expect(&mut self, want: Tok, what: &str) -> std::result::Result<(), ParseError> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }
    fn name(&mut self, what: &str) -> std::result::Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Name(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.err(format!("expected {what}")),
        }
    }
    fn at_section(&self) -> bool {
        matches!((self.peek(), self.peek2()), (Some(Tok::Name(s)), Some(Tok::Colon)) if SECTIONS.contains(&s.as_str()))
    }
    fn at_end_of_list(&self) -> bool {
        self.peek().is_none() || self.at_section()
    }
}

/// Raw parse result before names are resolved.
struct Raw {
    name: String,
    vertices: Vec<String>,
    arrows: Vec<(String, String, String, (usize, usize))>,
    relations: Vec<(Vec<RawTerm>, (usize, usize))>,
    n: Option<usize>,
    tau: Vec<(String, String, (usize, usize))>,
}

struct RawTerm {
    num: BigInt,
    den: BigInt,
    path: Vec<(String, (usize, usize))>,
}

fn parse_raw(src: &str) -> std::result::Result<Raw, ParseError> {
    let toks = lex(src)?;
    let last_line = src.lines().count().max(1);
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        eof: (last_line, 1),
    };
    match p.peek() {
        Some(Tok::Name(s)) if s == "quiver" => {
            p.pos += 1;
        }
        _ => return p.err("expected `quiver <name>` header"),
    }
    let name = p.name("quiver name")?;
    let mut raw = Raw {
        name,
        vertices: Vec::new(),
        arrows: Vec::new(),
        relations: Vec::new(),
        n: None,
        tau: Vec::new(),
    };
    let mut seen: Vec<String> = Vec::new();
    while p.peek().is_some() {
        if !p.at_section() {
            return p
                .err("expected a section (`vertices:`, `arrows:`, `relations:`, `n:` or `tau:`)");
        }
        let sec = p.name("section")?;
        if seen.contains(&sec) {
            return Err(ParseError {
                line: p.toks[p.pos - 1].line,
                column: p.toks[p.pos - 1].column,
                message: format!("duplicate section `{sec}`"),
            });
        }
        seen.push(sec.clone());
        p.pos += 1; // colon
        match sec.as_str() {
            "vertices" => {
                while !p.at_end_of_list() {
                    match p.peek() {
                        Some(Tok::Semi) => {
                            p.pos += 1;
                        }
                        Some(Tok::Name(_)) => raw.vertices.push(p.name("vertex")?),
                        _ => return p.err("expected a vertex name"),
                    }
                }
            }
            "arrows" => {
                while !p.at_end_of_list() {
                    if p.peek() == Some(&Tok::Semi) {
                        p.pos += 1;
                        continue;
                    }
                    let at = p.here();
                    let a = p.name("arrow name")?;
                    p.expect(Tok::Colon, "`:` after arrow name")?;
                    let s = p.name("source vertex")?;
                    p.expect(Tok::To, "`->`")?;
                    let t = p.name("target vertex")?;
                    raw.arrows.push((a, s, t, at));
                }
            }
            "relations" => {
                while !p.at_end_of_list() {
                    let at = p.here();
                    let terms = parse_relation(&mut p)?;
                    if !terms.is_empty() {
                        raw.relations.push((terms, at));
                    }
                }
            }
            "n" => {
                let s = p.name("an integer")?;
                raw.n = Some(s.parse().map_err(|_| ParseError {
                    line: p.toks[p.pos - 1].line,
                    column: p.toks[p.pos - 1].column,
                    message: format!("`{s}` is not a nonnegative integer"),
                })?);
                if p.peek() == Some(&Tok::Semi) {
                    p.pos += 1;
                }
            }
            "tau" => {
                while !p.at_end_of_list() {
                    if p.peek() == Some(&Tok::Semi) {
                        p.pos += 1;
                        continue;
                    }
                    let at = p.here();
                    let x = p.name("vertex")?;
                    p.expect(Tok::To, "`->`")?;
                    let y = p.name("vertex")?;
                    raw.tau.push((x, y, at));
                }
            }
            _ => unreachable!(),
        }
    }
    Ok(raw)
}

fn is_digits(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_digit())
}

fn parse_relation(p: &mut Parser) -> std::result::Result<Vec<RawTerm>, ParseError> {
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        match p.peek() {
            Some(Tok::Semi) => {
                p.pos += 1;
                return Ok(terms);
            }
            None => return p.err("relation must end with `;`"),
            _ => {}
        }
        let mut negative = false;
        match p.peek() {
            Some(Tok::Plus) => {
                p.pos += 1;
            }
            Some(Tok::Minus) => {
                negative = true;
                p.pos += 1;
            }
            _ if !first => return p.err("expected `+`, `-` or `;`"),
            _ => {}
        }
        first = false;
        let (mut num, mut den) = (BigInt::from(1), BigInt::from(1));
        if let (Some(Tok::Name(s)), Some(Tok::Star | Tok::Slash)) = (p.peek(), p.peek2()) {
            if is_digits(s) {
                num = s.parse().unwrap();
                p.pos += 1;
                if p.peek() == Some(&Tok::Slash) {
                    p.pos += 1;
                    let d = p.name("denominator")?;
                    if !is_digits(&d) {
                        return Err(ParseError {
                            line: p.toks[p.pos - 1].line,
                            column: p.toks[p.pos - 1].column,
                            message: format!("bad denominator `{d}`"),
                        });
                    }
                    den = d.parse().unwrap();
                }
                p.expect(Tok::Star, "`*` after coefficient")?;
            }
        }
        if negative {
            num = -num;
        }
        let mut path = Vec::new();
        loop {
            let at = p.here();
            let a = p.name("arrow name")?;
            path.push((a, at));
            if p.peek() == Some(&Tok::Dot) {
                p.bump();
            } else {
                break;
            }
        }
        terms.push(RawTerm { num, den, path });
    }
}

fn located(at: (usize, usize), e: Error) -> Error {
    Error::Parse(ParseError {
        line: at.0,
        column: at.1,
        message: e.to_string(),
    })
}

/// Parses the text format over the given field.
pub fn parse(src: &str, field: Field) -> Result<BoundQuiver> {
    let raw = parse_raw(src)?;
    let mut arrows = Vec::new();
    let lookup = |v: &str, at| {
        raw.vertices
            .iter()
            .position(|x| x == v)
            .ok_or_else(|| located(at, Error::UnknownVertex(v.to_string())))
    };
    for (a, s, t, at) in &raw.arrows {
        arrows.push(Arrow {
            name: a.clone(),
            source: lookup(s, *at)?,
            target: lookup(t, *at)?,
        });
    }
    let q = Quiver::new(raw.name.clone(), raw.vertices.clone(), arrows)
        .map_err(|e| located((1, 1), e))?;
    let mut rels = Vec::new();
    for (terms, at) in &raw.relations {
        let mut combo: Vec<(Path, Scalar)> = Vec::new();
        for t in terms {
            let c = field.from_ratio(&t.num, &t.den).ok_or_else(|| {
                located(
                    *at,
                    Error::FieldMismatch(format!("{}/{} in {field}", t.num, t.den)),
                )
            })?;
            let mut ids = Vec::new();
            for (name, pos) in t.path.iter().rev() {
                ids.push(q.arrow_id(name).map_err(|e| located(*pos, e))?);
            }
            combo.push((q.path(&ids).map_err(|e| located(t.path[0].1, e))?, c));
        }
        if let Some(r) = crate::quiver::Relation::new(&q, combo).map_err(|e| located(*at, e))? {
            rels.push(r);
        }
    }
    let mut bq = BoundQuiver::new(q, field, rels)?;
    if raw.n.is_some() || !raw.tau.is_empty() {
        let mut pairs = Vec::new();
        for (x, y, at) in &raw.tau {
            pairs.push((lookup(x, *at)?, lookup(y, *at)?));
        }
        let t = Translation::new(raw.n.unwrap_or(0), pairs).map_err(|e| located((1, 1), e))?;
        bq = bq.with_translation(t)?;
    }
    Ok(bq)
}

/// Canonical text form; `parse(serialize(q)) == q` and the output is byte stable.
pub fn serialize(bq: &BoundQuiver) -> String {
    let q = &bq.quiver;
    let mut s = format!("quiver {}\n", q.name);
    s.push_str("vertices:");
    for v in q.vertices() {
        s.push(' ');
        s.push_str(v);
    }
    s.push('\n');
    s.push_str("arrows:\n");
    for a in q.arrows() {
        s.push_str(&format!(
            "  {}: {} -> {}\n",
            a.name,
            q.vertex_name(a.source),
            q.vertex_name(a.target)
        ));
    }
    s.push_str("relations:\n");
    for r in bq.relations() {
        s.push_str(&format!("  {};\n", format_combination(q, r.terms())));
    }
    if let Some(t) = &bq.translation {
        s.push_str(&format!("n: {}\n", t.n));
        s.push_str("tau:\n");
        for (x, y) in &t.tau {
            s.push_str(&format!(
                "  {} -> {}\n",
                q.vertex_name(*x),
                q.vertex_name(*y)
            ));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQUARE: &str = "quiver square\nvertices: 1 2 3 4\narrows:\n  a: 1 -> 2\n  b: 2 -> 4\n  c: 1 -> 3\n  d: 3 -> 4\nrelations:\n  b.a - d.c;\n";

    #[test]
    fn square_roundtrip() {
        let q = parse(SQUARE, Field::Rational).unwrap();
        assert_eq!(q.relations().len(), 1);
        assert_eq!(serialize(&q), SQUARE);
    }

    #[test]
    fn one_line_form() {
        let q = parse(
            "quiver A2 vertices: 1 2; arrows: a: 1 -> 2; relations: ;",
            Field::Rational,
        )
        .unwrap();
        assert_eq!(q.quiver.num_arrows(), 1);
        assert!(q.relations().is_empty());
    }

    #[test]
    fn unknown_arrow_reports_position() {
        let src =
            "quiver x\nvertices: 1 2 3\narrows:\n  a: 1 -> 2\n  b: 2 -> 3\nrelations:\n  b.z;\n";
        match parse(src, Field::Rational) {
            Err(Error::Parse(p)) => {
                assert_eq!(p.line, 7);
                assert!(p.message.contains("unknown arrow `z`"), "{}", p.message);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn fractions_and_signs() {
        let src = "quiver s vertices: 1 2 3 4 arrows: a: 1 -> 2 b: 2 -> 4 c: 1 -> 3 d: 3 -> 4 relations: -2 * b.a + 3/4 * d.c;";
        let q = parse(src, Field::Rational).unwrap();
        assert_eq!(
            format_combination(&q.quiver, q.relations()[0].terms()),
            "b.a - 3/8 * d.c"
        );
    }

    #[test]
    fn bracket_names() {
        let src =
            "quiver w vertices: (1,1)[-1] (2,1)[0] arrows: x[-1]: (1,1)[-1] -> (2,1)[0] relations:";
        let q = parse(src, Field::Rational).unwrap();
        assert_eq!(q.quiver.vertex_name(0), "(1,1)[-1]");
        let again = parse(&serialize(&q), Field::Rational).unwrap();
        assert_eq!(again, q);
    }

    #[test]
    fn translation_section() {
        let src = "quiver t vertices: a b arrows: relations: n: 1 tau: b -> a";
        let q = parse(src, Field::Rational).unwrap();
        let t = q.translation.as_ref().unwrap();
        assert_eq!(t.tau(1), Some(0));
        assert_eq!(parse(&serialize(&q), Field::Rational).unwrap(), q);
    }

    #[test]
    fn missing_semicolon() {
        let src = "quiver x vertices: 1 2 3 arrows: a: 1 -> 2 b: 2 -> 3 relations: b.a";
        assert!(matches!(parse(src, Field::Rational), Err(Error::Parse(_))));
    }

    #[test]
    fn zero_denominator_in_prime_field() {
        let src = "quiver s vertices: 1 2 3 arrows: a: 1 -> 2 b: 2 -> 3 relations: 1/5 * b.a;";
        assert!(parse(src, Field::prime(5).unwrap()).is_err());
        assert!(parse(src, Field::prime(7).unwrap()).is_ok());
    }
}
