//! Independent reference implementations and generators shared by the
//! integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use repeg::{Alphabet, CharSet, MatchOutcome, Regex};

pub fn alphabet(symbols: &str) -> Alphabet {
    Alphabet::from_symbols(symbols.as_bytes()).unwrap()
}

/// All strings over `symbols` of length at most `maxlen`.
pub fn inputs(symbols: &[u8], maxlen: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    let mut i = 0;
    while i < out.len() {
        if out[i].len() < maxlen {
            for &b in symbols {
                let mut s = out[i].clone();
                s.push(b);
                out.push(s);
            }
        }
        i += 1;
    }
    out
}

/// Strings of the language of an extension-free `e`, restricted to
/// `symbols` and to length at most `maxlen`.
pub fn language(e: &Regex, symbols: &[u8], maxlen: usize) -> BTreeSet<Vec<u8>> {
    match e {
        Regex::Empty => BTreeSet::from([Vec::new()]),
        Regex::Class(set) => symbols
            .iter()
            .filter(|&&b| set.contains(b) && maxlen >= 1)
            .map(|&b| vec![b])
            .collect(),
        Regex::Choice(l, r) => {
            let mut out = language(l, symbols, maxlen);
            out.extend(language(r, symbols, maxlen));
            out
        }
        Regex::Concat(l, r) => product(&language(l, symbols, maxlen), &language(r, symbols, maxlen), maxlen),
        Regex::Star(body) => {
            let step = language(body, symbols, maxlen);
            let mut out = BTreeSet::from([Vec::new()]);
            loop {
                let next: BTreeSet<_> = out.union(&product(&out, &step, maxlen)).cloned().collect();
                if next == out {
                    return out;
                }
                out = next;
            }
        }
        _ => panic!("language enumeration covers extension-free regexes only"),
    }
}

fn product(a: &BTreeSet<Vec<u8>>, b: &BTreeSet<Vec<u8>>, maxlen: usize) -> BTreeSet<Vec<u8>> {
    let mut out = BTreeSet::new();
    for x in a {
        for y in b {
            if x.len() + y.len() <= maxlen {
                out.insert([x.as_slice(), y.as_slice()].concat());
            }
        }
    }
    out
}

/// Prefix lengths of `input` that belong to `lang`.
pub fn prefixes_in(lang: &BTreeSet<Vec<u8>>, input: &[u8]) -> BTreeSet<usize> {
    (0..=input.len()).filter(|&i| lang.contains(&input[..i])).collect()
}

/// Leftmost-first backtracking written in continuation-passing style.
/// Only meaningful for well-formed regexes.
pub fn backtrack(e: &Regex, input: &[u8]) -> MatchOutcome {
    match bt(e, input, 0, &mut |j| Some(j)) {
        Some(n) => MatchOutcome::Consumed(n),
        None => MatchOutcome::Fail,
    }
}

fn bt(e: &Regex, s: &[u8], i: usize, k: &mut dyn FnMut(usize) -> Option<usize>) -> Option<usize> {
    match e {
        Regex::Empty => k(i),
        Regex::Class(set) => match s.get(i) {
            Some(&b) if set.contains(b) => k(i + 1),
            _ => None,
        },
        Regex::Concat(l, r) => bt(l, s, i, &mut |j| bt(r, s, j, k)),
        Regex::Choice(l, r) => bt(l, s, i, k).or_else(|| bt(r, s, i, k)),
        Regex::Star(body) => star(body, s, i, k),
        Regex::Lazy(body) => lazy(body, s, i, k),
        Regex::Atomic(body) => bt(body, s, i, &mut Some).and_then(k),
        Regex::Possessive(body) => star(body, s, i, &mut Some).and_then(k),
        Regex::NegLookahead(body) => match bt(body, s, i, &mut Some) {
            Some(_) => None,
            None => k(i),
        },
        Regex::PosLookahead(body) => bt(body, s, i, &mut Some).and_then(|_| k(i)),
    }
}

fn star(body: &Regex, s: &[u8], i: usize, k: &mut dyn FnMut(usize) -> Option<usize>) -> Option<usize> {
    bt(body, s, i, &mut |j| if j > i { star(body, s, j, k) } else { None }).or_else(|| k(i))
}

fn lazy(body: &Regex, s: &[u8], i: usize, k: &mut dyn FnMut(usize) -> Option<usize>) -> Option<usize> {
    k(i).or_else(|| bt(body, s, i, &mut |j| if j > i { lazy(body, s, j, k) } else { None }))
}

/// Random regexes over `symbols`; `extensions` adds the five backtracking
/// constructs.
pub fn regex_strategy(symbols: &'static [u8], extensions: bool, depth: u32) -> BoxedStrategy<Regex> {
    let leaf = prop_oneof![
        1 => Just(Regex::Empty),
        4 => proptest::sample::select(symbols).prop_map(Regex::sym),
        1 => proptest::sample::subsequence(symbols, 1..=symbols.len())
            .prop_map(|bs| Regex::class(CharSet::from_bytes(&bs))),
    ];
    leaf.prop_recursive(depth, 32, 2, move |inner| {
        let base = prop_oneof![
            2 => (inner.clone(), inner.clone()).prop_map(|(l, r)| Regex::concat(l, r)),
            2 => (inner.clone(), inner.clone()).prop_map(|(l, r)| Regex::choice(l, r)),
            1 => inner.clone().prop_map(Regex::star),
        ];
        if extensions {
            prop_oneof![
                5 => base,
                1 => inner.clone().prop_map(Regex::atomic),
                1 => inner.clone().prop_map(Regex::possessive),
                1 => inner.clone().prop_map(Regex::lazy),
                1 => inner.clone().prop_map(Regex::neg_lookahead),
                1 => inner.prop_map(Regex::pos_lookahead),
            ]
            .boxed()
        } else {
            base.boxed()
        }
    })
    .boxed()
}
