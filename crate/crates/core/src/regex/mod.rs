//! Regex abstract syntax, concrete syntax, and the syntactic predicates
//! `empty`, `null`, FIRST and length-one.

mod parse;
mod print;

pub use parse::parse_regex;
pub use print::print_regex;

use crate::charset::CharSet;

/// A regular expression plus the five backtracking extensions.
///
/// `e+`, `e?` and friends are desugared by the parser, so only these
/// constructors ever reach the rewriter and the transformation.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Regex {
    Empty,
    /// A single-symbol terminal or a character class. Never empty.
    Class(CharSet),
    Concat(Box<Regex>, Box<Regex>),
    Choice(Box<Regex>, Box<Regex>),
    Star(Box<Regex>),
    /// `(?>e)`
    Atomic(Box<Regex>),
    /// `e*+`
    Possessive(Box<Regex>),
    /// `e*?`
    Lazy(Box<Regex>),
    /// `(?!e)`
    NegLookahead(Box<Regex>),
    /// `(?=e)`
    PosLookahead(Box<Regex>),
}

impl Regex {
    pub fn class(set: CharSet) -> Regex {
        assert!(!set.is_empty(), "character classes must be non-empty");
        Regex::Class(set)
    }

    pub fn sym(b: u8) -> Regex {
        Regex::Class(CharSet::single(b))
    }

    /// Right-nested concatenation of the literal bytes.
    pub fn literal(bytes: &[u8]) -> Regex {
        match bytes.split_first() {
            None => Regex::Empty,
            Some((&b, [])) => Regex::sym(b),
            Some((&b, rest)) => Regex::concat(Regex::sym(b), Regex::literal(rest)),
        }
    }

    pub fn concat(l: Regex, r: Regex) -> Regex {
        Regex::Concat(Box::new(l), Box::new(r))
    }

    pub fn choice(l: Regex, r: Regex) -> Regex {
        Regex::Choice(Box::new(l), Box::new(r))
    }

    pub fn star(e: Regex) -> Regex {
        Regex::Star(Box::new(e))
    }

    pub fn atomic(e: Regex) -> Regex {
        Regex::Atomic(Box::new(e))
    }

    pub fn possessive(e: Regex) -> Regex {
        Regex::Possessive(Box::new(e))
    }

    pub fn lazy(e: Regex) -> Regex {
        Regex::Lazy(Box::new(e))
    }

    pub fn neg_lookahead(e: Regex) -> Regex {
        Regex::NegLookahead(Box::new(e))
    }

    pub fn pos_lookahead(e: Regex) -> Regex {
        Regex::PosLookahead(Box::new(e))
    }

    /// True iff no extension node occurs anywhere in the tree.
    pub fn is_extension_free(&self) -> bool {
        match self {
            Regex::Empty | Regex::Class(_) => true,
            Regex::Concat(l, r) | Regex::Choice(l, r) => {
                l.is_extension_free() && r.is_extension_free()
            }
            Regex::Star(e) => e.is_extension_free(),
            Regex::Atomic(_)
            | Regex::Possessive(_)
            | Regex::Lazy(_)
            | Regex::NegLookahead(_)
            | Regex::PosLookahead(_) => false,
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Regex::Empty | Regex::Class(_) => 1,
            Regex::Concat(l, r) | Regex::Choice(l, r) => 1 + l.size() + r.size(),
            Regex::Star(e)
            | Regex::Atomic(e)
            | Regex::Possessive(e)
            | Regex::Lazy(e)
            | Regex::NegLookahead(e)
            | Regex::PosLookahead(e) => 1 + e.size(),
        }
    }

    /// Union of every class used in the tree.
    pub fn symbols(&self) -> CharSet {
        match self {
            Regex::Empty => CharSet::empty(),
            Regex::Class(s) => *s,
            Regex::Concat(l, r) | Regex::Choice(l, r) => l.symbols().union(&r.symbols()),
            Regex::Star(e)
            | Regex::Atomic(e)
            | Regex::Possessive(e)
            | Regex::Lazy(e)
            | Regex::NegLookahead(e)
            | Regex::PosLookahead(e) => e.symbols(),
        }
    }
}

/// True iff the language of `e` is exactly `{ε}` (conservative for extensions).
pub fn empty_pred(e: &Regex) -> bool {
    match e {
        Regex::Empty => true,
        Regex::Class(_) => false,
        Regex::Star(b) => empty_pred(b),
        Regex::Concat(l, r) | Regex::Choice(l, r) => empty_pred(l) && empty_pred(r),
        Regex::NegLookahead(_) | Regex::PosLookahead(_) => true,
        Regex::Atomic(b) | Regex::Possessive(b) | Regex::Lazy(b) => empty_pred(b),
    }
}

/// True iff `e` can match the empty string.
pub fn null_pred(e: &Regex) -> bool {
    match e {
        Regex::Empty => true,
        Regex::Class(_) => false,
        Regex::Star(_) => true,
        Regex::Concat(l, r) => null_pred(l) && null_pred(r),
        Regex::Choice(l, r) => null_pred(l) || null_pred(r),
        Regex::Atomic(b) => null_pred(b),
        Regex::Possessive(_) | Regex::Lazy(_) | Regex::NegLookahead(_) | Regex::PosLookahead(_) => {
            true
        }
    }
}

/// Symbols that can begin a non-empty match of `e`.
///
/// Exact for extension-free regexes; a superset when atomic groups are
/// involved.
pub fn first_set(e: &Regex) -> CharSet {
    match e {
        Regex::Empty => CharSet::empty(),
        Regex::Class(s) => *s,
        Regex::Concat(l, r) => {
            if null_pred(l) {
                first_set(l).union(&first_set(r))
            } else {
                first_set(l)
            }
        }
        Regex::Choice(l, r) => first_set(l).union(&first_set(r)),
        Regex::Star(b) | Regex::Atomic(b) | Regex::Possessive(b) | Regex::Lazy(b) => first_set(b),
        Regex::NegLookahead(_) | Regex::PosLookahead(_) => CharSet::empty(),
    }
}

/// Conservative check that every string matched by `e` has length one.
pub fn is_length_one(e: &Regex) -> bool {
    match e {
        Regex::Class(_) => true,
        Regex::Choice(l, r) => is_length_one(l) && is_length_one(r),
        _ => false,
    }
}

/// True iff no repetition node has a body that can match the empty string.
pub fn is_well_formed(e: &Regex) -> bool {
    match e {
        Regex::Empty | Regex::Class(_) => true,
        Regex::Concat(l, r) | Regex::Choice(l, r) => is_well_formed(l) && is_well_formed(r),
        Regex::Star(b) | Regex::Possessive(b) | Regex::Lazy(b) => {
            !null_pred(b) && is_well_formed(b)
        }
        Regex::Atomic(b) | Regex::NegLookahead(b) | Regex::PosLookahead(b) => is_well_formed(b),
    }
}
