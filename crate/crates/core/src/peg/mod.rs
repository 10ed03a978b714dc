//! Parsing expression grammars: data model, matcher, completeness check
//! and text format.

mod complete;
mod matcher;
mod text;

pub use complete::check_complete;
pub use matcher::{peg_match, Matcher, Run};
pub use text::{parse_grammar, serialize_grammar};

use std::fmt;
use std::sync::Arc;

use indexmap::IndexMap;

use crate::charset::{Alphabet, CharSet};
use crate::error::{Error, Result};

/// Name of a non-terminal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: &str) -> Symbol {
        Symbol(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Pseudo non-terminal that introduces a start expression in grammar text.
pub const START: &str = "START";

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum PegExpr {
    Empty,
    /// Matches one symbol of the set. Never empty.
    Class(CharSet),
    /// Matches any one symbol.
    Any,
    NonTerminal(Symbol),
    Concat(Arc<PegExpr>, Arc<PegExpr>),
    /// Ordered choice.
    Choice(Arc<PegExpr>, Arc<PegExpr>),
    Star(Arc<PegExpr>),
    Not(Arc<PegExpr>),
}

impl PegExpr {
    pub fn sym(b: u8) -> PegExpr {
        PegExpr::Class(CharSet::single(b))
    }

    pub fn class(set: CharSet) -> PegExpr {
        assert!(!set.is_empty(), "character classes must be non-empty");
        PegExpr::Class(set)
    }

    pub fn nt(name: &Symbol) -> PegExpr {
        PegExpr::NonTerminal(name.clone())
    }

    /// Concatenation exactly as given.
    pub fn concat(l: PegExpr, r: PegExpr) -> PegExpr {
        PegExpr::Concat(Arc::new(l), Arc::new(r))
    }

    /// Concatenation that drops an `Empty` on either side.
    pub fn seq(l: PegExpr, r: PegExpr) -> PegExpr {
        match (l, r) {
            (PegExpr::Empty, e) | (e, PegExpr::Empty) => e,
            (l, r) => PegExpr::concat(l, r),
        }
    }

    pub fn choice(l: PegExpr, r: PegExpr) -> PegExpr {
        PegExpr::Choice(Arc::new(l), Arc::new(r))
    }

    pub fn star(e: PegExpr) -> PegExpr {
        PegExpr::Star(Arc::new(e))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: PegExpr) -> PegExpr {
        PegExpr::Not(Arc::new(e))
    }

    /// The and-predicate `&e`, spelled `!!e`.
    pub fn and(e: PegExpr) -> PegExpr {
        PegExpr::not(PegExpr::not(e))
    }

    /// Right-nested concatenation of single-symbol terminals.
    pub fn literal(bytes: &[u8]) -> PegExpr {
        match bytes.split_first() {
            None => PegExpr::Empty,
            Some((&b, [])) => PegExpr::sym(b),
            Some((&b, rest)) => PegExpr::concat(PegExpr::sym(b), PegExpr::literal(rest)),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            PegExpr::Empty | PegExpr::Class(_) | PegExpr::Any | PegExpr::NonTerminal(_) => 1,
            PegExpr::Concat(l, r) | PegExpr::Choice(l, r) => 1 + l.size() + r.size(),
            PegExpr::Star(e) | PegExpr::Not(e) => 1 + e.size(),
        }
    }

    /// Calls `f` on every non-terminal referenced in the expression.
    pub fn for_each_nonterminal(&self, f: &mut impl FnMut(&Symbol)) {
        match self {
            PegExpr::NonTerminal(name) => f(name),
            PegExpr::Empty | PegExpr::Class(_) | PegExpr::Any => {}
            PegExpr::Concat(l, r) | PegExpr::Choice(l, r) => {
                l.for_each_nonterminal(f);
                r.for_each_nonterminal(f);
            }
            PegExpr::Star(e) | PegExpr::Not(e) => e.for_each_nonterminal(f),
        }
    }
}

/// A PEG: non-terminals with their productions (in insertion order), the
/// alphabet, and a start expression.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Grammar {
    pub alphabet: Alphabet,
    pub productions: IndexMap<Symbol, PegExpr>,
    pub start: PegExpr,
}

impl Grammar {
    /// The grammar with no productions whose start expression is ε.
    pub fn epsilon(alphabet: Alphabet) -> Grammar {
        Grammar {
            alphabet,
            productions: IndexMap::new(),
            start: PegExpr::Empty,
        }
    }

    /// Same productions, different start expression.
    pub fn with_start(&self, start: PegExpr) -> Grammar {
        Grammar {
            alphabet: self.alphabet,
            productions: self.productions.clone(),
            start,
        }
    }

    pub fn nonterminals(&self) -> impl Iterator<Item = &Symbol> {
        self.productions.keys()
    }

    pub fn production(&self, name: &Symbol) -> Option<&PegExpr> {
        self.productions.get(name)
    }

    /// Adds a production; fails if the name is already defined.
    pub fn add_production(&mut self, name: Symbol, body: PegExpr) -> Result<()> {
        if self.productions.contains_key(&name) {
            return Err(Error::DuplicateNonTerminal(name.to_string()));
        }
        self.productions.insert(name, body);
        Ok(())
    }

    /// Total node count of the start expression and all productions.
    pub fn size(&self) -> usize {
        self.start.size() + self.productions.values().map(PegExpr::size).sum::<usize>()
    }

    /// Checks that every referenced non-terminal has a production.
    pub fn validate(&self) -> Result<()> {
        let mut missing = None;
        let mut check = |name: &Symbol| {
            if missing.is_none() && !self.productions.contains_key(name) {
                missing = Some(name.clone());
            }
        };
        self.start.for_each_nonterminal(&mut check);
        for body in self.productions.values() {
            body.for_each_nonterminal(&mut check);
        }
        match missing {
            Some(name) => Err(Error::UndefinedNonTerminal(name.to_string())),
            None => Ok(()),
        }
    }
}
