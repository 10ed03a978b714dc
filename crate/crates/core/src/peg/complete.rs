//! Syntactic well-formedness analysis: a grammar passes when no repetition
//! body can succeed without consuming input and no non-terminal can reach
//! itself without consuming input. Passing grammars are complete.

use std::collections::HashMap;

use super::{Grammar, PegExpr, Symbol};

/// Possible outcomes of an expression, over-approximated.
#[derive(Clone, Copy, Default, PartialEq, Eq, Debug)]
struct Props {
    /// May succeed without consuming.
    empty: bool,
    /// May succeed consuming at least one symbol.
    consumes: bool,
    /// May fail.
    fails: bool,
}

struct Analysis<'g> {
    grammar: &'g Grammar,
    props: HashMap<&'g Symbol, Props>,
    wf: HashMap<&'g Symbol, bool>,
}

impl<'g> Analysis<'g> {
    fn props(&self, e: &PegExpr) -> Props {
        match e {
            PegExpr::Empty => Props {
                empty: true,
                ..Props::default()
            },
            PegExpr::Class(_) | PegExpr::Any => Props {
                consumes: true,
                fails: true,
                ..Props::default()
            },
            PegExpr::NonTerminal(name) => self.props.get(name).copied().unwrap_or_default(),
            PegExpr::Concat(l, r) => {
                let (a, b) = (self.props(l), self.props(r));
                Props {
                    empty: a.empty && b.empty,
                    consumes: (a.consumes && (b.empty || b.consumes)) || (a.empty && b.consumes),
                    fails: a.fails || ((a.empty || a.consumes) && b.fails),
                }
            }
            PegExpr::Choice(l, r) => {
                let (a, b) = (self.props(l), self.props(r));
                Props {
                    empty: a.empty || (a.fails && b.empty),
                    consumes: a.consumes || (a.fails && b.consumes),
                    fails: a.fails && b.fails,
                }
            }
            PegExpr::Star(body) => {
                let a = self.props(body);
                Props {
                    empty: a.fails,
                    consumes: a.consumes,
                    fails: false,
                }
            }
            PegExpr::Not(body) => {
                let a = self.props(body);
                Props {
                    empty: a.fails,
                    consumes: false,
                    fails: a.empty || a.consumes,
                }
            }
        }
    }

    /// Well-formedness of `e` itself given the current verdicts for
    /// non-terminals; the right side of a concatenation only matters when
    /// the left side may succeed without consuming.
    fn wf(&self, e: &PegExpr) -> bool {
        match e {
            PegExpr::Empty | PegExpr::Class(_) | PegExpr::Any => true,
            PegExpr::NonTerminal(name) => self.wf.get(name).copied().unwrap_or(false),
            PegExpr::Concat(l, r) => self.wf(l) && (!self.props(l).empty || self.wf(r)),
            PegExpr::Choice(l, r) => self.wf(l) && self.wf(r),
            PegExpr::Star(body) => self.wf(body) && !self.props(body).empty,
            PegExpr::Not(body) => self.wf(body),
        }
    }

    /// `e` and every subexpression of it are well-formed.
    fn all_wf(&self, e: &PegExpr) -> bool {
        self.wf(e)
            && match e {
                PegExpr::Concat(l, r) | PegExpr::Choice(l, r) => self.all_wf(l) && self.all_wf(r),
                PegExpr::Star(body) | PegExpr::Not(body) => self.all_wf(body),
                _ => true,
            }
    }
}

/// True iff `g` passes the well-formedness analysis, which guarantees that
/// matching terminates on every input.
pub fn check_complete(g: &Grammar) -> bool {
    if g.validate().is_err() {
        return false;
    }
    let mut a = Analysis {
        grammar: g,
        props: HashMap::new(),
        wf: HashMap::new(),
    };
    loop {
        let mut changed = false;
        for (name, body) in &a.grammar.productions {
            let new = a.props(body);
            if a.props.get(name) != Some(&new) {
                a.props.insert(name, new);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    loop {
        let mut changed = false;
        for (name, body) in &a.grammar.productions {
            if !a.wf.get(name).copied().unwrap_or(false) && a.wf(body) {
                a.wf.insert(name, true);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    a.grammar.productions.values().all(|body| a.all_wf(body)) && a.all_wf(&g.start)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charset::Alphabet;
    use crate::peg::parse_grammar;

    fn complete(text: &str) -> bool {
        check_complete(&parse_grammar(text, &Alphabet::bytes()).unwrap())
    }

    #[test]
    fn examples() {
        assert!(!complete("A <- 'a' A / A / 'b'"));
        assert!(complete("A <- 'b' A / 'b' '$'"));
        assert!(complete("START <- ()"));
    }

    #[test]
    fn nullable_star_and_indirect_recursion() {
        assert!(!complete("START <- ('a' / ())*"));
        assert!(complete("START <- ('a' / 'b')*"));
        assert!(!complete("A <- B 'a'\nB <- () A / 'b'"));
        assert!(complete("A <- 'x' B / ()\nB <- A 'y'"));
        assert!(!complete("START <- (!'a')*"));
        assert!(!complete("A <- 'a' A / ()\nB <- A*"));
    }
}
