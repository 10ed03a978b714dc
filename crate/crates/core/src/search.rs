//! Unanchored search: grammars that find the leftmost position where a
//! compiled pattern matches, with FIRST-set skipping and run skipping.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::charset::Alphabet;
use crate::error::{Error, Result};
use crate::oracle::MatchOutcome;
use crate::peg::{Grammar, Matcher, PegExpr};
use crate::regex::{first_set, is_length_one, is_well_formed, null_pred, Regex};
use crate::rewrite::f_out;
use crate::transform::{CompileOptions, NameSupply, Transformer};
use crate::DEFAULT_FUEL;

/// Search strategies, weakest first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    /// `S <- P / . S`
    Naive,
    /// `S <- (![F] .)* (P / . S)`
    FirstSkip,
    /// `S <- (![F] .)* (P / p1* . S)` for `e1* e2` with one-symbol `e1`.
    Combined,
    /// `S <- (![F] .)* M`, `M <- p1* (p2 / . S)` when `e1` and `e2` start
    /// with different symbols.
    CombinedDisjoint,
}

impl SearchMode {
    pub const ALL: [SearchMode; 4] = [
        SearchMode::Naive,
        SearchMode::FirstSkip,
        SearchMode::Combined,
        SearchMode::CombinedDisjoint,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SearchMode::Naive => "naive",
            SearchMode::FirstSkip => "first",
            SearchMode::Combined => "combined",
            SearchMode::CombinedDisjoint => "disjoint",
        }
    }

    fn weaker(self) -> Option<SearchMode> {
        match self {
            SearchMode::Naive => None,
            SearchMode::FirstSkip => Some(SearchMode::Naive),
            SearchMode::Combined => Some(SearchMode::FirstSkip),
            SearchMode::CombinedDisjoint => Some(SearchMode::Combined),
        }
    }
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<SearchMode> {
        SearchMode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown search mode `{s}`")))
    }
}

/// A match located by search: `subject[start..end]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SearchHit {
    pub start: usize,
    pub end: usize,
}

impl SearchHit {
    /// One-based line and column of `start` in `subject`.
    pub fn line_col(&self, subject: &[u8]) -> (usize, usize) {
        let before = &subject[..self.start];
        let line = 1 + before.iter().filter(|&&b| b == b'\n').count();
        let col = 1 + before.iter().rev().take_while(|&&b| b != b'\n').count();
        (line, col)
    }
}

/// `e1* e2` (or `e1 e1* e2` when `plus`) with a one-symbol `e1`.
struct Split<'a> {
    e1: &'a Regex,
    e2: &'a Regex,
    plus: bool,
}

fn split(e: &Regex) -> Option<Split<'_>> {
    const EMPTY: &Regex = &Regex::Empty;
    let found = match e {
        Regex::Concat(l, r) => match (&**l, &**r) {
            (Regex::Star(e1), e2) => Split { e1, e2, plus: false },
            (e1, Regex::Star(again)) if e1 == &**again => Split { e1, e2: EMPTY, plus: true },
            (e1, Regex::Concat(star, e2)) if matches!(&**star, Regex::Star(again) if **again == *e1) => {
                Split { e1, e2, plus: true }
            }
            (Regex::Concat(e1, star), e2) if matches!(&**star, Regex::Star(again) if **again == **e1) => {
                Split { e1, e2, plus: true }
            }
            _ => return None,
        },
        _ => return None,
    };
    is_length_one(found.e1).then_some(found)
}

fn applicable(e: &Regex, mode: SearchMode) -> bool {
    match mode {
        SearchMode::Naive => true,
        SearchMode::FirstSkip => !null_pred(e) && !first_set(e).is_empty(),
        SearchMode::Combined => applicable(e, SearchMode::FirstSkip) && split(e).is_some(),
        SearchMode::CombinedDisjoint => {
            applicable(e, SearchMode::FirstSkip)
                && split(e).is_some_and(|s| {
                    first_set(s.e1).is_disjoint(&first_set(s.e2))
                        && (!null_pred(s.e2) || s.e2.is_extension_free())
                })
        }
    }
}

/// A search grammar ready to run.
#[derive(Clone, Debug)]
pub struct SearchGrammar {
    pub grammar: Grammar,
    /// Mode asked for; `None` means the strongest applicable one.
    pub requested: Option<SearchMode>,
    /// Mode actually built.
    pub mode: SearchMode,
    matcher: Matcher,
}

/// Builds the search grammar for `e` in the requested mode, falling back
/// to weaker modes whose preconditions hold.
pub fn build_search_grammar(
    e: &Regex,
    alphabet: &Alphabet,
    requested: Option<SearchMode>,
    options: CompileOptions,
) -> Result<SearchGrammar> {
    let e = if options.rewrite { f_out(e) } else { e.clone() };
    if !is_well_formed(&e) {
        return Err(Error::NotWellFormed);
    }
    let mut mode = requested.unwrap_or(SearchMode::CombinedDisjoint);
    while !applicable(&e, mode) {
        mode = mode.weaker().expect("naive search always applies");
    }

    let mut names = NameSupply::new();
    let s = names.fresh_named("S");
    let p = names.fresh_named("P");
    let m = names.fresh_named("M");
    let mut t = Transformer::new(&Grammar::epsilon(*alphabet), &mut names, options.optimize);
    if mode != SearchMode::CombinedDisjoint {
        let pattern = t.go(&e, PegExpr::Empty);
        t.define(p.clone(), pattern);
    }

    let skip = || PegExpr::star(PegExpr::seq(PegExpr::not(PegExpr::class(first_set(&e))), PegExpr::Any));
    let again = PegExpr::seq(PegExpr::Any, PegExpr::nt(&s));
    let probe = match mode {
        SearchMode::Naive => {
            t.define(s.clone(), PegExpr::choice(PegExpr::nt(&p), again));
            p
        }
        SearchMode::FirstSkip => {
            t.define(s.clone(), PegExpr::seq(skip(), PegExpr::choice(PegExpr::nt(&p), again)));
            p
        }
        SearchMode::Combined => {
            let parts = split(&e).expect("checked applicable");
            let p1 = t.go(parts.e1, PegExpr::Empty);
            let run = PegExpr::seq(PegExpr::star(p1), again);
            t.define(s.clone(), PegExpr::seq(skip(), PegExpr::choice(PegExpr::nt(&p), run)));
            p
        }
        SearchMode::CombinedDisjoint => {
            let parts = split(&e).expect("checked applicable");
            let p2 = t.go(parts.e2, PegExpr::Empty);
            let p1 = t.go(parts.e1, PegExpr::Empty);
            let run = if parts.plus {
                PegExpr::seq(p1.clone(), PegExpr::star(p1))
            } else {
                PegExpr::star(p1)
            };
            t.define(m.clone(), PegExpr::seq(run, PegExpr::choice(p2, again)));
            t.define(s.clone(), PegExpr::seq(skip(), PegExpr::nt(&m)));
            m
        }
    };
    let grammar = t.finish(PegExpr::nt(&s));
    let matcher = Matcher::with_probe(&grammar, &probe)?;
    Ok(SearchGrammar {
        grammar,
        requested,
        mode,
        matcher,
    })
}

impl SearchGrammar {
    /// Default budget: the matcher budget plus 1000 steps per subject symbol.
    pub fn default_fuel(subject: &[u8]) -> u64 {
        DEFAULT_FUEL.saturating_add(1000u64.saturating_mul(subject.len() as u64))
    }

    /// Leftmost hit in `subject`.
    pub fn search(&self, subject: &[u8]) -> Result<Option<SearchHit>> {
        self.search_with_fuel(subject, SearchGrammar::default_fuel(subject))
    }

    pub fn search_with_fuel(&self, subject: &[u8], fuel: u64) -> Result<Option<SearchHit>> {
        let run = self.matcher.run_detailed(subject, fuel)?;
        Ok(match run.outcome {
            MatchOutcome::Consumed(end) => {
                let start = run.probe_start.expect("a successful search passes through the probe");
                Some(SearchHit { start, end })
            }
            MatchOutcome::Fail => None,
        })
    }
}
