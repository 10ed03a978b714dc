//! Regex to PEG transformation in continuation-passing style: each regex
//! is translated against the PEG for whatever follows it.

use std::collections::HashSet;

use crate::charset::{Alphabet, CharSet};
use crate::error::{Error, Result};
use crate::peg::{check_complete, Grammar, PegExpr, Symbol, START};
use crate::regex::{first_set, is_length_one, is_well_formed, null_pred, Regex};
use crate::rewrite::f_out;

/// Source of fresh non-terminal names `A0`, `A1`, ...
#[derive(Clone, Debug)]
pub struct NameSupply {
    next: usize,
    taken: HashSet<String>,
}

impl Default for NameSupply {
    fn default() -> Self {
        NameSupply::new()
    }
}

impl NameSupply {
    pub fn new() -> NameSupply {
        NameSupply {
            next: 0,
            taken: HashSet::from([START.to_string()]),
        }
    }

    /// Marks the non-terminals of `g` as taken.
    pub fn avoid(&mut self, g: &Grammar) {
        self.taken.extend(g.nonterminals().map(|s| s.as_str().to_string()));
    }

    pub fn fresh(&mut self) -> Symbol {
        loop {
            let name = format!("A{}", self.next);
            self.next += 1;
            if self.taken.insert(name.clone()) {
                return Symbol::new(&name);
            }
        }
    }

    /// `base` itself if free, else `base` with the smallest free suffix.
    pub fn fresh_named(&mut self, base: &str) -> Symbol {
        if self.taken.insert(base.to_string()) {
            return Symbol::new(base);
        }
        (1..)
            .map(|i| format!("{base}{i}"))
            .find(|name| self.taken.insert(name.clone()))
            .map(|name| Symbol::new(&name))
            .expect("unbounded suffixes")
    }
}

/// Pipeline switches for [`compile`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompileOptions {
    /// Rewrite into well-formed form first.
    pub rewrite: bool,
    /// Use the possessive/predicated repetition rules where they are safe.
    pub optimize: bool,
}

impl Default for CompileOptions {
    fn default() -> Self {
        CompileOptions {
            rewrite: true,
            optimize: true,
        }
    }
}

pub(crate) struct Transformer<'n> {
    alphabet: Alphabet,
    productions: indexmap::IndexMap<Symbol, PegExpr>,
    names: &'n mut NameSupply,
    optimize: bool,
}

impl<'n> Transformer<'n> {
    pub(crate) fn new(k: &Grammar, names: &'n mut NameSupply, optimize: bool) -> Self {
        names.avoid(k);
        Transformer {
            alphabet: k.alphabet,
            productions: k.productions.clone(),
            names,
            optimize,
        }
    }

    pub(crate) fn finish(self, start: PegExpr) -> Grammar {
        Grammar {
            alphabet: self.alphabet,
            productions: self.productions,
            start,
        }
    }

    pub(crate) fn define(&mut self, name: Symbol, body: PegExpr) {
        let previous = self.productions.insert(name, body);
        debug_assert!(previous.is_none(), "fresh names never collide");
    }

    pub(crate) fn terminal(&self, set: &CharSet) -> PegExpr {
        if set == self.alphabet.symbols() {
            PegExpr::Any
        } else {
            PegExpr::class(*set)
        }
    }

    /// The PEG for `e` followed by the continuation `pk`.
    pub(crate) fn go(&mut self, e: &Regex, pk: PegExpr) -> PegExpr {
        match e {
            Regex::Empty => pk,
            Regex::Class(set) => PegExpr::seq(self.terminal(set), pk),
            Regex::Concat(l, r) => match &**l {
                Regex::Star(body) if self.optimize => self.repetition(body, r, pk),
                _ => {
                    let p2 = self.go(r, pk);
                    self.go(l, p2)
                }
            },
            Regex::Choice(l, r) => {
                let p1 = self.go(l, pk.clone());
                let p2 = self.go(r, pk);
                PegExpr::choice(p1, p2)
            }
            Regex::Star(body) => {
                if self.optimize {
                    self.repetition(body, &Regex::Empty, pk)
                } else {
                    self.star(body, pk)
                }
            }
            Regex::Lazy(body) => {
                let a = self.names.fresh();
                let p1 = self.go(body, PegExpr::nt(&a));
                self.define(a.clone(), PegExpr::choice(pk, p1));
                PegExpr::nt(&a)
            }
            Regex::Atomic(body) => {
                let p1 = self.go(body, PegExpr::Empty);
                PegExpr::seq(p1, pk)
            }
            Regex::Possessive(body) => {
                let p1 = self.go(&Regex::star((**body).clone()), PegExpr::Empty);
                PegExpr::seq(p1, pk)
            }
            Regex::NegLookahead(body) => {
                let p1 = self.go(body, PegExpr::Empty);
                PegExpr::seq(PegExpr::not(p1), pk)
            }
            Regex::PosLookahead(body) => {
                let p1 = self.go(body, PegExpr::Empty);
                PegExpr::seq(PegExpr::and(p1), pk)
            }
        }
    }

    /// `A <- p1 / pk` with `p1` the body translated against `A`.
    fn star(&mut self, body: &Regex, pk: PegExpr) -> PegExpr {
        let a = self.names.fresh();
        let p1 = self.go(body, PegExpr::nt(&a));
        self.define(a.clone(), PegExpr::choice(p1, pk));
        PegExpr::nt(&a)
    }

    /// `e1* e2` followed by `pk`, using possessive or predicated repetition
    /// when that cannot change the outcome, plain translation otherwise.
    fn repetition(&mut self, e1: &Regex, e2: &Regex, pk: PegExpr) -> PegExpr {
        if is_length_one(e1) && !null_pred(e2) {
            let follow = first_set(e2);
            let p2 = self.go(e2, pk);
            let p1 = self.go(e1, PegExpr::Empty);
            if first_set(e1).is_disjoint(&follow) {
                PegExpr::seq(PegExpr::star(p1), p2)
            } else {
                let a = self.names.fresh();
                let skip = PegExpr::star(PegExpr::seq(PegExpr::not(PegExpr::class(follow)), p1.clone()));
                let rest = PegExpr::choice(PegExpr::seq(p1, PegExpr::nt(&a)), p2);
                self.define(a.clone(), PegExpr::seq(skip, rest));
                PegExpr::nt(&a)
            }
        } else if null_pred(e2) && e2.is_extension_free() && pk == PegExpr::Empty {
            let p2 = self.go(e2, PegExpr::Empty);
            let p1 = self.go(e1, PegExpr::Empty);
            PegExpr::seq(PegExpr::star(p1), p2)
        } else {
            let p2 = self.go(e2, pk);
            self.star(e1, p2)
        }
    }
}

/// Translates `e` against the continuation grammar `k`.
///
/// Fails with [`Error::NotWellFormed`] when a repetition body of `e` can
/// match ε.
pub fn pi(e: &Regex, k: &Grammar, names: &mut NameSupply) -> Result<Grammar> {
    translate(e, k, names, false)
}

/// Like [`pi`], with the repetition optimizations enabled at every
/// `e1* e2` node.
pub fn pi_optimized(e: &Regex, k: &Grammar, names: &mut NameSupply) -> Result<Grammar> {
    translate(e, k, names, true)
}

/// Translates `e1* e2` against `k` with the optimized repetition rule,
/// falling back to the plain rule when its preconditions do not hold.
pub fn pi_opt_repetition(e1: &Regex, e2: &Regex, k: &Grammar, names: &mut NameSupply) -> Result<Grammar> {
    if !is_well_formed(&Regex::concat(Regex::star(e1.clone()), e2.clone())) {
        return Err(Error::NotWellFormed);
    }
    let mut t = Transformer::new(k, names, true);
    let start = t.repetition(e1, e2, k.start.clone());
    Ok(t.finish(start))
}

fn translate(e: &Regex, k: &Grammar, names: &mut NameSupply, optimize: bool) -> Result<Grammar> {
    if !is_well_formed(e) {
        return Err(Error::NotWellFormed);
    }
    let mut t = Transformer::new(k, names, optimize);
    let start = t.go(e, k.start.clone());
    Ok(t.finish(start))
}

/// Full pipeline: optional rewriting, translation against the ε-grammar,
/// and a completeness check of the result.
pub fn compile(e: &Regex, alphabet: &Alphabet, options: CompileOptions) -> Result<Grammar> {
    let e = if options.rewrite { f_out(e) } else { e.clone() };
    let k = Grammar::epsilon(*alphabet);
    let g = translate(&e, &k, &mut NameSupply::new(), options.optimize)?;
    if !check_complete(&g) {
        return Err(Error::IncompleteGrammar);
    }
    Ok(g)
}

/// Reads `e` directly as a parsing expression, operator by operator.
///
/// Atomic groups lose their marker (a PEG never backtracks into a
/// subexpression anyway) and possessive stars become PEG stars; lazy
/// repetition has no direct counterpart.
pub fn direct_peg(e: &Regex, alphabet: &Alphabet) -> Result<Grammar> {
    fn read(e: &Regex, alphabet: &Alphabet) -> Result<PegExpr> {
        Ok(match e {
            Regex::Empty => PegExpr::Empty,
            Regex::Class(set) if set == alphabet.symbols() => PegExpr::Any,
            Regex::Class(set) => PegExpr::class(*set),
            Regex::Concat(l, r) => PegExpr::concat(read(l, alphabet)?, read(r, alphabet)?),
            Regex::Choice(l, r) => PegExpr::choice(read(l, alphabet)?, read(r, alphabet)?),
            Regex::Star(b) | Regex::Possessive(b) => PegExpr::star(read(b, alphabet)?),
            Regex::Atomic(b) => read(b, alphabet)?,
            Regex::NegLookahead(b) => PegExpr::not(read(b, alphabet)?),
            Regex::PosLookahead(b) => PegExpr::and(read(b, alphabet)?),
            Regex::Lazy(_) => return Err(Error::ExtensionNotSupported),
        })
    }
    Ok(Grammar::epsilon(*alphabet).with_start(read(e, alphabet)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::peg::{peg_match, serialize_grammar};
    use crate::regex::parse_regex;
    use crate::MatchOutcome::*;

    fn sigma() -> Alphabet {
        Alphabet::bytes()
    }

    fn plain(s: &str) -> String {
        let e = parse_regex(s, &sigma()).unwrap();
        serialize_grammar(&pi(&e, &Grammar::epsilon(sigma()), &mut NameSupply::new()).unwrap())
    }

    fn opt(s: &str) -> String {
        let e = parse_regex(s, &sigma()).unwrap();
        serialize_grammar(&compile(&e, &sigma(), CompileOptions::default()).unwrap())
    }

    #[test]
    fn worked_translations() {
        assert_eq!(
            plain("(a|b|c)*a(a|b|c)*"),
            "A1 <- 'a' A1 / 'b' A1 / 'c' A1 / 'a' A0\nA0 <- 'a' A0 / 'b' A0 / 'c' A0 / ()\n"
        );
        assert_eq!(
            plain("(b|c)*a(a|b|c)*"),
            "A1 <- 'b' A1 / 'c' A1 / 'a' A0\nA0 <- 'a' A0 / 'b' A0 / 'c' A0 / ()\n"
        );
        assert_eq!(plain(r"b*b\$"), "A0 <- 'b' A0 / 'b' '$'\n");
        assert_eq!(plain("()"), "START <- ()\n");
        assert_eq!(plain("a"), "START <- 'a'\n");
    }

    #[test]
    fn extension_translations() {
        assert_eq!(plain("(?>a|ab)c"), "START <- ('a' / 'a' 'b') 'c'\n");
        assert_eq!(plain("a*?b"), "A0 <- 'b' / 'a' A0\n");
        assert_eq!(plain("(?!a)b"), "START <- !'a' 'b'\n");
        assert_eq!(plain("(?=a)."), "START <- !!'a' .\n");
        assert_eq!(plain("a*+a"), "START <- A0 'a'\nA0 <- 'a' A0 / ()\n");
    }

    #[test]
    fn optimized_repetition() {
        assert_eq!(opt("[bc]*a"), "START <- [bc]* 'a'\n");
        assert_eq!(opt("a*"), "START <- 'a'*\n");
        assert_eq!(
            opt("[a-z ]*the"),
            "A0 <- (!'t' [ a-z])* ([ a-z] A0 / 't' 'h' 'e')\n"
        );
        // Multi-symbol bodies keep backtracking.
        assert_eq!(opt("(a|ab)*c"), "A0 <- 'a' A0 / 'a' 'b' A0 / 'c'\n");
    }

    #[test]
    fn compile_rejects_or_rewrites_nullable_stars() {
        let e = parse_regex("(a|())*b", &sigma()).unwrap();
        let off = CompileOptions {
            rewrite: false,
            optimize: false,
        };
        assert_eq!(compile(&e, &sigma(), off), Err(Error::NotWellFormed));
        let on = CompileOptions {
            rewrite: true,
            optimize: false,
        };
        let ab = parse_regex("a*b", &sigma()).unwrap();
        assert_eq!(compile(&e, &sigma(), on), compile(&ab, &sigma(), on));
    }

    #[test]
    fn direct_reading_commits() {
        let e = parse_regex("(a|aa)b", &sigma()).unwrap();
        let g = direct_peg(&e, &sigma()).unwrap();
        assert_eq!(peg_match(&g, b"aab", 1000), Ok(Fail));
        let g = compile(&e, &sigma(), CompileOptions::default()).unwrap();
        assert_eq!(peg_match(&g, b"aab", 1000), Ok(Consumed(3)));
    }

    #[test]
    fn names_avoid_continuation() {
        let mut k = Grammar::epsilon(sigma());
        k.add_production(Symbol::new("A0"), PegExpr::sym(b'z')).unwrap();
        k.start = PegExpr::nt(&Symbol::new("A0"));
        let e = parse_regex("a*", &sigma()).unwrap();
        let g = pi(&e, &k, &mut NameSupply::new()).unwrap();
        assert_eq!(serialize_grammar(&g), "A1 <- 'a' A1 / A0\nA0 <- 'z'\n");
    }
}
