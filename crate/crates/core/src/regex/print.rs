use super::Regex;
use crate::charset::Alphabet;
use crate::syntax::{write_class, write_symbol};

const META: &[u8] = b"()|*+?.[]$\\";

/// Renders `e` in the concrete syntax with as few parentheses as the
/// parser needs to rebuild the same tree.
pub fn print_regex(e: &Regex, alphabet: &Alphabet) -> String {
    let mut out = String::new();
    write(&mut out, e, alphabet);
    out
}

fn write(out: &mut String, e: &Regex, alphabet: &Alphabet) {
    match e {
        Regex::Empty => out.push_str("()"),
        Regex::Class(set) => {
            if set == alphabet.symbols() {
                out.push('.');
            } else if let Some(b) = set.as_single() {
                write_symbol(out, b, META);
            } else {
                write_class(out, set, alphabet);
            }
        }
        Regex::Choice(l, r) => {
            write(out, l, alphabet);
            out.push('|');
            write_wrapped(out, r, alphabet, matches!(**r, Regex::Choice(..)));
        }
        Regex::Concat(l, r) => {
            write_wrapped(out, l, alphabet, matches!(**l, Regex::Choice(..) | Regex::Concat(..)));
            write_wrapped(out, r, alphabet, matches!(**r, Regex::Choice(..)));
        }
        Regex::Star(b) => write_postfix(out, b, "*", alphabet),
        Regex::Possessive(b) => write_postfix(out, b, "*+", alphabet),
        Regex::Lazy(b) => write_postfix(out, b, "*?", alphabet),
        Regex::Atomic(b) => write_group(out, "(?>", b, alphabet),
        Regex::NegLookahead(b) => {
            if matches!(&**b, Regex::Class(s) if s == alphabet.symbols()) {
                out.push('$');
            } else {
                write_group(out, "(?!", b, alphabet);
            }
        }
        Regex::PosLookahead(b) => write_group(out, "(?=", b, alphabet),
    }
}

fn write_wrapped(out: &mut String, e: &Regex, alphabet: &Alphabet, parens: bool) {
    if parens {
        out.push('(');
        write(out, e, alphabet);
        out.push(')');
    } else {
        write(out, e, alphabet);
    }
}

fn write_postfix(out: &mut String, body: &Regex, op: &str, alphabet: &Alphabet) {
    let parens = matches!(body, Regex::Choice(..) | Regex::Concat(..));
    write_wrapped(out, body, alphabet, parens);
    out.push_str(op);
}

fn write_group(out: &mut String, open: &str, body: &Regex, alphabet: &Alphabet) {
    out.push_str(open);
    write(out, body, alphabet);
    out.push(')');
}

#[cfg(test)]
mod tests {
    use super::super::parse_regex;
    use super::*;

    fn round(s: &str) -> String {
        let sigma = Alphabet::bytes();
        print_regex(&parse_regex(s, &sigma).unwrap(), &sigma)
    }

    #[test]
    fn minimal_parentheses() {
        assert_eq!(round("((a|b)|c)"), "a|b|c");
        assert_eq!(round("a|(b|c)"), "a|(b|c)");
        assert_eq!(round("(ab)c"), "(ab)c");
        assert_eq!(round("a(bc)"), "abc");
        assert_eq!(round("(ab|c)*d"), "(ab|c)*d");
        assert_eq!(round("b*b$"), "b*b$");
        assert_eq!(round("(?>a|())*"), "(?>a|())*");
    }

    #[test]
    fn symbols_are_escaped() {
        assert_eq!(round(r"\*\x00\\"), r"\*\x00\\");
        assert_eq!(round("[abc]"), "[a-c]");
        assert_eq!(round("[ab]"), "[ab]");
    }

    #[test]
    fn complement_class_when_shorter() {
        let sigma = Alphabet::from_symbols(b"abcdefgh").unwrap();
        let e = parse_regex("[^d]", &sigma).unwrap();
        assert_eq!(print_regex(&e, &sigma), "[^d]");
        assert_eq!(print_regex(&parse_regex(".", &sigma).unwrap(), &sigma), ".");
    }

    #[test]
    fn postfix_chains_reparse() {
        let sigma = Alphabet::bytes();
        for s in ["a**", "a*+*", "a**+", "a*?*", "(a*)*?", "a*\\+"] {
            let e = parse_regex(s, &sigma).unwrap();
            let printed = print_regex(&e, &sigma);
            assert_eq!(parse_regex(&printed, &sigma).unwrap(), e, "{s}");
        }
    }
}
