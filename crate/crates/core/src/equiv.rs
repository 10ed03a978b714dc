//! Brute-force equivalence checking of compiled grammars against the
//! reference semantics over every input up to a length bound.

use rayon::prelude::*;
use serde::Serialize;

use crate::charset::Alphabet;
use crate::error::{Error, Result};
use crate::gen::gen_regex;
use crate::oracle::{re_prefix_set, regex_backtrack_match_with_fuel, MatchOutcome};
use crate::peg::{Grammar, Matcher};
use crate::regex::{parse_regex, print_regex, Regex};
use crate::transform::{compile, direct_peg, CompileOptions};

pub const MAX_ALPHABET: usize = 4;
pub const MAX_LEN: usize = 10;

/// Step budget per matcher run during checking.
pub const EQUIV_FUEL: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ViolationKind {
    /// The grammar consumed a prefix the regex does not match.
    Eq12,
    /// The regex matches some prefix but the grammar failed.
    Eq13,
    /// The grammar and the backtracking reference chose different prefixes.
    Ordering,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub input: String,
    pub kind: ViolationKind,
    pub peg: String,
    pub oracle: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivReport {
    pub regex: String,
    pub violations: Vec<Violation>,
    pub tested_inputs: usize,
    /// Inputs on which the backtracking reference ran out of fuel.
    pub oracle_skips: usize,
}

impl EquivReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// How the grammar under test is obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reading {
    Compiled(CompileOptions),
    /// Each operator read as its PEG counterpart, no transformation.
    Direct,
}

/// Every string over `alphabet` of length at most `maxlen`, shortest first.
pub fn all_strings(alphabet: &Alphabet, maxlen: usize) -> Vec<Vec<u8>> {
    let symbols = alphabet.to_vec();
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..maxlen {
        layer = layer
            .iter()
            .flat_map(|s: &Vec<u8>| {
                symbols.iter().map(move |&b| {
                    let mut t = s.clone();
                    t.push(b);
                    t
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn describe(outcome: &Result<MatchOutcome>) -> String {
    match outcome {
        Ok(MatchOutcome::Consumed(n)) => format!("consumed {n}"),
        Ok(MatchOutcome::Fail) => "fail".to_string(),
        Err(e) => e.to_string(),
    }
}

pub fn grammar_for(e: &Regex, alphabet: &Alphabet, reading: Reading) -> Result<Grammar> {
    match reading {
        Reading::Compiled(options) => compile(e, alphabet, options),
        Reading::Direct => direct_peg(e, alphabet),
    }
}

/// Checks `e` on every input up to `maxlen` symbols.
pub fn check_regex(e: &Regex, alphabet: &Alphabet, maxlen: usize, reading: Reading) -> Result<EquivReport> {
    if alphabet.len() > MAX_ALPHABET || maxlen > MAX_LEN {
        return Err(Error::Usage(format!(
            "equivalence checking is limited to {MAX_ALPHABET} symbols and length {MAX_LEN}"
        )));
    }
    let matcher = Matcher::new(&grammar_for(e, alphabet, reading)?)?;
    let inputs = all_strings(alphabet, maxlen);
    let mut report = EquivReport {
        regex: print_regex(e, alphabet),
        violations: Vec::new(),
        tested_inputs: inputs.len(),
        oracle_skips: 0,
    };
    for input in &inputs {
        let peg = matcher.run(input, EQUIV_FUEL);
        let mut violation = |kind, oracle: String| {
            report.violations.push(Violation {
                input: String::from_utf8_lossy(input).into_owned(),
                kind,
                peg: describe(&peg),
                oracle,
            })
        };
        if e.is_extension_free() {
            let prefixes = re_prefix_set(e, input)?;
            let evidence = || format!("prefix lengths {:?}", prefixes.iter().collect::<Vec<_>>());
            match peg {
                Ok(MatchOutcome::Consumed(n)) if !prefixes.contains(n) => violation(ViolationKind::Eq12, evidence()),
                Ok(MatchOutcome::Fail) | Err(_) if !prefixes.is_empty() => violation(ViolationKind::Eq13, evidence()),
                _ => {}
            }
        }
        match regex_backtrack_match_with_fuel(e, input, EQUIV_FUEL) {
            Ok(reference) => {
                if peg.as_ref().ok() != Some(&reference) {
                    violation(ViolationKind::Ordering, format!("backtracking {}", describe(&Ok(reference))));
                }
            }
            Err(Error::FuelExhausted) => report.oracle_skips += 1,
            Err(other) => return Err(other),
        }
    }
    Ok(report)
}

/// Parses `alphabet` as a list of symbols and checks `regex` over it.
pub fn cmd_equiv(regex: &str, alphabet: &str, maxlen: usize, reading: Reading) -> Result<EquivReport> {
    let alphabet = Alphabet::from_symbols(alphabet.as_bytes())
        .ok_or_else(|| Error::Usage("alphabet must not be empty".to_string()))?;
    let e = parse_regex(regex, &alphabet)?;
    check_regex(&e, &alphabet, maxlen, reading)
}

/// Parameters of a random campaign.
#[derive(Clone, Copy, Debug)]
pub struct FuzzConfig {
    pub count: usize,
    pub seed: u64,
    pub depth: u32,
    pub maxlen: usize,
    pub extensions: bool,
    pub reading: Reading,
}

/// Checks `count` generated regexes with seeds `seed..seed+count`, in
/// parallel. Reports come back in seed order.
pub fn fuzz(config: &FuzzConfig, alphabet: &Alphabet) -> Result<Vec<EquivReport>> {
    (0..config.count as u64)
        .into_par_iter()
        .map(|i| {
            let e = gen_regex(config.seed.wrapping_add(i), config.depth, alphabet, config.extensions);
            check_regex(&e, alphabet, config.maxlen, config.reading)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn compiled() -> Reading {
        Reading::Compiled(CompileOptions::default())
    }

    #[test]
    fn enumerates_inputs() {
        let ab = Alphabet::from_symbols(b"ab").unwrap();
        assert_eq!(all_strings(&ab, 0), vec![Vec::<u8>::new()]);
        assert_eq!(all_strings(&ab, 3).len(), 1 + 2 + 4 + 8);
    }

    #[test]
    fn distributing_fixes_direct_reading() {
        let direct = cmd_equiv("(a|ab)m", "abm", 4, Reading::Direct).unwrap();
        assert!(direct
            .violations
            .iter()
            .any(|v| v.kind == ViolationKind::Eq13 && v.input == "abm"));
        assert!(cmd_equiv("(a|ab)m", "abm", 4, compiled()).unwrap().passed());
    }

    #[test]
    fn prefix_free_choice_reads_directly() {
        assert!(cmd_equiv("ab|aab", "ab", 6, Reading::Direct).unwrap().passed());
        assert!(cmd_equiv("ab|aab", "ab", 6, compiled()).unwrap().passed());
    }

    #[test]
    fn empty_regex() {
        let report = cmd_equiv("", "ab", 3, compiled()).unwrap();
        assert!(report.passed());
        assert_eq!(report.tested_inputs, 15);
    }

    #[test]
    fn budget_guard() {
        assert!(matches!(cmd_equiv("a", "abcde", 2, compiled()), Err(Error::Usage(_))));
        assert!(matches!(cmd_equiv("a", "ab", 11, compiled()), Err(Error::Usage(_))));
    }

    #[test]
    fn small_campaign() {
        let ab = Alphabet::from_symbols(b"ab").unwrap();
        for extensions in [false, true] {
            let config = FuzzConfig {
                count: 300,
                seed: 7,
                depth: 5,
                maxlen: 5,
                extensions,
                reading: compiled(),
            };
            for report in fuzz(&config, &ab).unwrap() {
                assert!(report.passed(), "{report:?}");
            }
        }
    }
}
