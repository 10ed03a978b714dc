//! Line-oriented grammar text: `Name <- expr`, one production per line.

use super::{Grammar, PegExpr, Symbol, START};
use crate::charset::Alphabet;
use crate::error::{Error, Result};
use crate::syntax::{parse_class, parse_escape, write_class, write_symbol};

const LITERAL_META: &[u8] = b"'\\";

/// Renders `g`. The start production comes first: the start non-terminal's
/// own production when the start expression is a bare non-terminal,
/// otherwise a `START` pseudo-production.
pub fn serialize_grammar(g: &Grammar) -> String {
    let mut out = String::new();
    let first = match &g.start {
        PegExpr::NonTerminal(name) if g.productions.contains_key(name) => Some(name),
        _ => None,
    };
    match first {
        Some(name) => write_production(&mut out, name.as_str(), &g.productions[name], g),
        None => write_production(&mut out, START, &g.start, g),
    }
    for (name, body) in &g.productions {
        if Some(name) != first {
            write_production(&mut out, name.as_str(), body, g);
        }
    }
    out
}

fn write_production(out: &mut String, name: &str, body: &PegExpr, g: &Grammar) {
    out.push_str(name);
    out.push_str(" <- ");
    write_expr(out, body, g);
    out.push('\n');
}

fn write_expr(out: &mut String, e: &PegExpr, g: &Grammar) {
    match e {
        PegExpr::Empty => out.push_str("()"),
        PegExpr::Any => out.push('.'),
        PegExpr::Class(set) => match set.as_single() {
            Some(b) => {
                out.push('\'');
                write_symbol(out, b, LITERAL_META);
                out.push('\'');
            }
            None => write_class(out, set, &g.alphabet),
        },
        PegExpr::NonTerminal(name) => out.push_str(name.as_str()),
        PegExpr::Choice(l, r) => {
            write_expr(out, l, g);
            out.push_str(" / ");
            wrapped(out, r, g, matches!(**r, PegExpr::Choice(..)));
        }
        PegExpr::Concat(l, r) => {
            wrapped(out, l, g, matches!(**l, PegExpr::Choice(..) | PegExpr::Concat(..)));
            out.push(' ');
            wrapped(out, r, g, matches!(**r, PegExpr::Choice(..)));
        }
        PegExpr::Star(body) => {
            let parens = matches!(**body, PegExpr::Choice(..) | PegExpr::Concat(..) | PegExpr::Not(..));
            wrapped(out, body, g, parens);
            out.push('*');
        }
        PegExpr::Not(body) => {
            out.push('!');
            wrapped(out, body, g, matches!(**body, PegExpr::Choice(..) | PegExpr::Concat(..)));
        }
    }
}

fn wrapped(out: &mut String, e: &PegExpr, g: &Grammar, parens: bool) {
    if parens {
        out.push('(');
        write_expr(out, e, g);
        out.push(')');
    } else {
        write_expr(out, e, g);
    }
}

/// Parses grammar text over `alphabet`. Blank lines are ignored.
pub fn parse_grammar(text: &str, alphabet: &Alphabet) -> Result<Grammar> {
    let src = text.as_bytes();
    let mut grammar = Grammar::epsilon(*alphabet);
    let mut start: Option<PegExpr> = None;
    let mut line_start = 0;
    while line_start < src.len() {
        let line_end = src[line_start..]
            .iter()
            .position(|&b| b == b'\n')
            .map_or(src.len(), |i| line_start + i);
        let mut p = Parser {
            src: &src[..line_end],
            pos: line_start,
            alphabet,
        };
        p.skip_space();
        if p.pos < line_end {
            let name_at = p.pos;
            let name = p.ident().ok_or_else(|| Error::syntax(name_at, "expected a non-terminal name"))?;
            p.skip_space();
            if !p.eat_str(b"<-") {
                return Err(Error::syntax(p.pos, "expected `<-`"));
            }
            let body = p.choice()?;
            if p.pos < line_end {
                return Err(Error::syntax(p.pos, "unexpected input"));
            }
            if name == START {
                if start.is_some() || !grammar.productions.is_empty() {
                    return Err(Error::syntax(name_at, "`START` must be the first production"));
                }
                start = Some(body);
            } else {
                let symbol = Symbol::new(&name);
                if start.is_none() {
                    start = Some(PegExpr::nt(&symbol));
                }
                grammar.add_production(symbol, body)?;
            }
        }
        line_start = line_end + 1;
    }
    grammar.start = start.ok_or_else(|| Error::syntax(src.len(), "grammar has no productions"))?;
    grammar.validate()?;
    Ok(grammar)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_space(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\r')) {
            self.pos += 1;
        }
    }

    fn eat_str(&mut self, s: &[u8]) -> bool {
        if self.src[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Option<String> {
        let start = self.pos;
        if !matches!(self.peek(), Some(b) if b.is_ascii_alphabetic() || b == b'_') {
            return None;
        }
        while matches!(self.peek(), Some(b) if b.is_ascii_alphanumeric() || b == b'_') {
            self.pos += 1;
        }
        Some(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn choice(&mut self) -> Result<PegExpr> {
        let mut e = self.sequence()?;
        loop {
            self.skip_space();
            if self.peek() != Some(b'/') {
                return Ok(e);
            }
            self.pos += 1;
            let rhs = self.sequence()?;
            e = PegExpr::choice(e, rhs);
        }
    }

    fn sequence(&mut self) -> Result<PegExpr> {
        let mut items = Vec::new();
        loop {
            self.skip_space();
            match self.peek() {
                None | Some(b'/' | b')') => break,
                Some(_) => items.push(self.prefix()?),
            }
        }
        match items.pop() {
            None => Err(Error::syntax(self.pos, "expected an expression")),
            Some(last) => Ok(items.into_iter().rev().fold(last, |acc, e| PegExpr::concat(e, acc))),
        }
    }

    fn prefix(&mut self) -> Result<PegExpr> {
        if self.peek() == Some(b'!') {
            self.pos += 1;
            self.skip_space();
            return Ok(PegExpr::not(self.prefix()?));
        }
        let mut e = self.primary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            e = PegExpr::star(e);
        }
        Ok(e)
    }

    fn primary(&mut self) -> Result<PegExpr> {
        let start = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                self.skip_space();
                if self.peek() == Some(b')') {
                    self.pos += 1;
                    return Ok(PegExpr::Empty);
                }
                let e = self.choice()?;
                self.skip_space();
                if self.peek() != Some(b')') {
                    return Err(Error::syntax(start, "unclosed `(`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'.') => {
                self.pos += 1;
                Ok(PegExpr::Any)
            }
            Some(b'[') => Ok(PegExpr::class(parse_class(self.src, &mut self.pos, self.alphabet)?)),
            Some(b'\'') => self.literal(),
            _ => match self.ident() {
                Some(name) => Ok(PegExpr::nt(&Symbol::new(&name))),
                None => Err(Error::syntax(start, "expected an expression")),
            },
        }
    }

    fn literal(&mut self) -> Result<PegExpr> {
        let open = self.pos;
        self.pos += 1;
        let mut bytes = Vec::new();
        loop {
            let at = self.pos;
            match self.peek() {
                None => return Err(Error::syntax(open, "unterminated literal")),
                Some(b'\'') => {
                    self.pos += 1;
                    break;
                }
                Some(b'\\') => {
                    self.pos += 1;
                    bytes.push((at, parse_escape(self.src, &mut self.pos)?));
                }
                Some(b) => {
                    self.pos += 1;
                    bytes.push((at, b));
                }
            }
        }
        if bytes.is_empty() {
            return Err(Error::syntax(open, "empty literal"));
        }
        for &(offset, symbol) in &bytes {
            if !self.alphabet.contains(symbol) {
                return Err(Error::OutsideAlphabet { offset, symbol });
            }
        }
        let symbols: Vec<u8> = bytes.into_iter().map(|(_, b)| b).collect();
        Ok(PegExpr::literal(&symbols))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma() -> Alphabet {
        Alphabet::bytes()
    }

    #[test]
    fn serializes_start_production_first() {
        let a = Symbol::new("A");
        let mut g = Grammar::epsilon(sigma());
        g.add_production(
            a.clone(),
            PegExpr::choice(
                PegExpr::concat(PegExpr::sym(b'b'), PegExpr::nt(&a)),
                PegExpr::concat(PegExpr::sym(b'b'), PegExpr::sym(b'$')),
            ),
        )
        .unwrap();
        g.start = PegExpr::nt(&a);
        let text = serialize_grammar(&g);
        assert_eq!(text, "A <- 'b' A / 'b' '$'\n");
        assert_eq!(parse_grammar(&text, &sigma()).unwrap(), g);
    }

    #[test]
    fn epsilon_grammar() {
        let g = Grammar::epsilon(sigma());
        assert_eq!(serialize_grammar(&g), "START <- ()\n");
        assert_eq!(parse_grammar("START <- ()\n", &sigma()).unwrap(), g);
    }

    #[test]
    fn precedence_round_trip() {
        let text = "START <- (!'a' .)* ('x' / 'y' 'z') / !('a' 'b')* [^a] / ('q' / 'r') / ('s' 't') 'u'\n";
        let g = parse_grammar(text, &sigma()).unwrap();
        assert_eq!(serialize_grammar(&g), text);
    }

    #[test]
    fn escapes() {
        let g = parse_grammar(r"START <- '\'' '\\' '\x00'", &sigma()).unwrap();
        assert_eq!(serialize_grammar(&g), "START <- '\\'' '\\\\' '\\x00'\n");
        let g = parse_grammar("START <- 'ab'", &sigma()).unwrap();
        assert_eq!(g.start, PegExpr::literal(b"ab"));
    }

    #[test]
    fn errors() {
        assert_eq!(
            parse_grammar("S <- X", &sigma()),
            Err(Error::UndefinedNonTerminal("X".into()))
        );
        assert_eq!(
            parse_grammar("S <- 'a'\nS <- 'b'", &sigma()),
            Err(Error::DuplicateNonTerminal("S".into()))
        );
        assert!(matches!(
            parse_grammar("S <- ('a'", &sigma()),
            Err(Error::Syntax { offset: 5, .. })
        ));
        assert!(matches!(
            parse_grammar("S 'a'", &sigma()),
            Err(Error::Syntax { offset: 2, .. })
        ));
        let ab = Alphabet::from_symbols(b"ab").unwrap();
        assert_eq!(
            parse_grammar("S <- 'abc'", &ab),
            Err(Error::OutsideAlphabet { offset: 8, symbol: b'c' })
        );
    }
}
