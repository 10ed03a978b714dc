use super::Regex;
use crate::charset::Alphabet;
use crate::error::{Error, Result};
use crate::syntax::{parse_class, parse_escape};

/// Parses the concrete regex syntax over `alphabet`.
///
/// Juxtaposition nests to the right, `|` to the left. An empty source,
/// empty branch, or `()` is ε.
pub fn parse_regex(source: &str, alphabet: &Alphabet) -> Result<Regex> {
    let mut parser = Parser {
        src: source.as_bytes(),
        pos: 0,
        alphabet,
    };
    let e = parser.alternation()?;
    match parser.peek() {
        None => Ok(e),
        Some(b')') => Err(Error::syntax(parser.pos, "unbalanced `)`")),
        Some(c) => Err(Error::syntax(parser.pos, format!("unexpected `{}`", c as char))),
    }
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

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
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

    fn alternation(&mut self) -> Result<Regex> {
        let mut e = self.sequence()?;
        while self.eat(b'|') {
            let rhs = self.sequence()?;
            e = Regex::choice(e, rhs);
        }
        Ok(e)
    }

    fn sequence(&mut self) -> Result<Regex> {
        let mut items = Vec::new();
        while !matches!(self.peek(), None | Some(b'|') | Some(b')')) {
            items.push(self.postfix()?);
        }
        Ok(match items.pop() {
            None => Regex::Empty,
            Some(last) => items
                .into_iter()
                .rev()
                .fold(last, |acc, item| Regex::concat(item, acc)),
        })
    }

    fn postfix(&mut self) -> Result<Regex> {
        let mut e = self.atom()?;
        loop {
            if self.eat_str(b"*+") {
                e = Regex::possessive(e);
            } else if self.eat_str(b"*?") {
                e = Regex::lazy(e);
            } else if self.eat(b'*') {
                e = Regex::star(e);
            } else if self.eat_str(b"++") {
                e = Regex::atomic(Regex::concat(e.clone(), Regex::star(e)));
            } else if self.eat_str(b"+?") {
                e = Regex::concat(e.clone(), Regex::lazy(e));
            } else if self.eat(b'+') {
                e = Regex::concat(e.clone(), Regex::star(e));
            } else if self.eat(b'?') {
                e = Regex::choice(e, Regex::Empty);
            } else {
                return Ok(e);
            }
        }
    }

    fn symbol(&self, b: u8, offset: usize) -> Result<Regex> {
        if self.alphabet.contains(b) {
            Ok(Regex::sym(b))
        } else {
            Err(Error::OutsideAlphabet { offset, symbol: b })
        }
    }

    fn atom(&mut self) -> Result<Regex> {
        let start = self.pos;
        let c = self.peek().expect("caller checked for input");
        match c {
            b'(' => self.group(),
            b'[' => {
                let set = parse_class(self.src, &mut self.pos, self.alphabet)?;
                Ok(Regex::class(set))
            }
            b'.' => {
                self.pos += 1;
                Ok(Regex::class(*self.alphabet.symbols()))
            }
            b'$' => {
                self.pos += 1;
                Ok(Regex::neg_lookahead(Regex::class(*self.alphabet.symbols())))
            }
            b'\\' => {
                self.pos += 1;
                let b = parse_escape(self.src, &mut self.pos)?;
                self.symbol(b, start)
            }
            b'*' | b'+' | b'?' => Err(Error::syntax(start, "repetition operator without operand")),
            b']' => Err(Error::syntax(start, "unbalanced `]`")),
            _ => {
                self.pos += 1;
                self.symbol(c, start)
            }
        }
    }

    fn group(&mut self) -> Result<Regex> {
        let open = self.pos;
        self.pos += 1;
        let wrap: fn(Regex) -> Regex = if self.eat_str(b"?>") {
            Regex::atomic
        } else if self.eat_str(b"?!") {
            Regex::neg_lookahead
        } else if self.eat_str(b"?=") {
            Regex::pos_lookahead
        } else if self.peek() == Some(b'?') {
            return Err(Error::syntax(self.pos, "unknown group kind"));
        } else {
            |e| e
        };
        let body = self.alternation()?;
        if !self.eat(b')') {
            return Err(Error::syntax(open, "unclosed `(`"));
        }
        Ok(wrap(body))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charset::CharSet;

    fn p(s: &str) -> Regex {
        parse_regex(s, &Alphabet::bytes()).unwrap()
    }

    #[test]
    fn precedence() {
        let a = Regex::sym(b'a');
        let b = Regex::sym(b'b');
        assert_eq!(p("a|ab"), Regex::choice(a.clone(), Regex::concat(a.clone(), b.clone())));
        assert_eq!(
            p("a|b|a"),
            Regex::choice(Regex::choice(a.clone(), b.clone()), a.clone())
        );
        assert_eq!(p("ab*"), Regex::concat(a, Regex::star(b)));
    }

    #[test]
    fn dollar_and_right_nesting() {
        let b = Regex::sym(b'b');
        let any = Regex::class(CharSet::full());
        assert_eq!(
            p("b*b$"),
            Regex::concat(
                Regex::star(b.clone()),
                Regex::concat(b, Regex::neg_lookahead(any))
            )
        );
    }

    #[test]
    fn extensions_and_epsilon() {
        assert_eq!(
            p("(?>()|a)*"),
            Regex::star(Regex::atomic(Regex::choice(Regex::Empty, Regex::sym(b'a'))))
        );
        assert_eq!(p(""), Regex::Empty);
        assert_eq!(p("()"), Regex::Empty);
        let a = Regex::sym(b'a');
        assert_eq!(p("a*+"), Regex::possessive(a.clone()));
        assert_eq!(p("a*?"), Regex::lazy(a.clone()));
        assert_eq!(p("a+?"), Regex::concat(a.clone(), Regex::lazy(a.clone())));
        assert_eq!(
            p("a++"),
            Regex::atomic(Regex::concat(a.clone(), Regex::star(a.clone())))
        );
        assert_eq!(p("a?"), Regex::choice(a.clone(), Regex::Empty));
        assert_eq!(p("(?=a)"), Regex::pos_lookahead(a.clone()));
        assert_eq!(p("(?!a)"), Regex::neg_lookahead(a));
    }

    #[test]
    fn escapes_and_classes() {
        assert_eq!(p(r"\*"), Regex::sym(b'*'));
        assert_eq!(p(r"\x00"), Regex::sym(0));
        assert_eq!(p("[a-c]"), Regex::class(CharSet::range(b'a', b'c')));
        assert_eq!(p("^"), Regex::sym(b'^'));
    }

    #[test]
    fn errors_carry_offsets() {
        let sigma = Alphabet::bytes();
        assert_eq!(
            parse_regex("ab)", &sigma),
            Err(Error::syntax(2, "unbalanced `)`"))
        );
        assert!(matches!(
            parse_regex("(ab", &sigma),
            Err(Error::Syntax { offset: 0, .. })
        ));
        assert!(matches!(
            parse_regex("a|*", &sigma),
            Err(Error::Syntax { offset: 2, .. })
        ));
        let ab = Alphabet::from_symbols(b"ab").unwrap();
        assert_eq!(
            parse_regex("abc", &ab),
            Err(Error::OutsideAlphabet { offset: 2, symbol: b'c' })
        );
        assert!(matches!(
            parse_regex("[", &sigma),
            Err(Error::Syntax { offset: 0, .. })
        ));
    }
}
