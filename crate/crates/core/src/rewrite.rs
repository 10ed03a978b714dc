//! Rewriting into well-formed regexes: no repetition may have a body that
//! matches the empty string.

use crate::regex::{empty_pred, null_pred, Regex};

/// Rewrites every repetition whose body can match ε.
///
/// Extension-free inputs keep their language; for extensions the result
/// matches at least what the original matched.
pub fn f_out(e: &Regex) -> Regex {
    match e {
        Regex::Empty | Regex::Class(_) => e.clone(),
        Regex::Concat(l, r) => Regex::concat(f_out(l), f_out(r)),
        Regex::Choice(l, r) => Regex::choice(f_out(l), f_out(r)),
        Regex::Star(b) => repetition(b, Regex::star),
        Regex::Possessive(b) => repetition(b, Regex::possessive),
        Regex::Lazy(b) => repetition(b, Regex::lazy),
        Regex::Atomic(b) => Regex::atomic(f_out(b)),
        Regex::NegLookahead(b) => Regex::neg_lookahead(f_out(b)),
        Regex::PosLookahead(b) => Regex::pos_lookahead(f_out(b)),
    }
}

fn repetition(body: &Regex, wrap: fn(Regex) -> Regex) -> Regex {
    if !null_pred(body) {
        wrap(f_out(body))
    } else if empty_pred(body) {
        Regex::Empty
    } else {
        wrap(f_in(body))
    }
}

/// Rewrites the body of a repetition so that it no longer matches ε while
/// the repetition as a whole keeps its language.
///
/// # Panics
///
/// When `e` does not match ε, or matches only ε.
pub fn f_in(e: &Regex) -> Regex {
    assert!(
        null_pred(e) && !empty_pred(e),
        "f_in requires a nullable, non-empty expression"
    );
    match e {
        Regex::Concat(l, r) | Regex::Choice(l, r) => f_in_choice(l, r),
        Regex::Star(b) | Regex::Possessive(b) | Regex::Lazy(b) => {
            if null_pred(b) {
                f_in(b)
            } else {
                f_out(b)
            }
        }
        Regex::Atomic(b) => Regex::atomic(f_in(b)),
        Regex::Empty | Regex::Class(_) | Regex::NegLookahead(_) | Regex::PosLookahead(_) => {
            unreachable!("excluded by the precondition")
        }
    }
}

fn f_in_choice(l: &Regex, r: &Regex) -> Regex {
    let (empty_l, null_l) = (empty_pred(l), null_pred(l));
    let (empty_r, null_r) = (empty_pred(r), null_pred(r));
    if empty_l && null_r {
        f_in(r)
    } else if empty_l && !null_r {
        f_out(r)
    } else if null_l && empty_r {
        f_in(l)
    } else if !null_l && empty_r {
        f_out(l)
    } else if !null_l && !empty_r {
        Regex::choice(f_out(l), f_in(r))
    } else if !empty_l && !null_r {
        Regex::choice(f_in(l), f_out(r))
    } else {
        Regex::choice(f_in(l), f_in(r))
    }
}
