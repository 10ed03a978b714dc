mod common;

use common::{alphabet, backtrack, inputs, language, regex_strategy};
use proptest::prelude::*;
use repeg::regex::{empty_pred, first_set, is_well_formed, null_pred};
use repeg::{f_out, parse_regex, print_regex, re_prefix_set, CharSet, Regex};

const AB: &[u8] = b"ab";
const ABC: &[u8] = b"abc";

fn leaves(e: &Regex) -> usize {
    match e {
        Regex::Empty | Regex::Class(_) => 1,
        Regex::Concat(l, r) | Regex::Choice(l, r) => leaves(l) + leaves(r),
        Regex::Star(b)
        | Regex::Atomic(b)
        | Regex::Possessive(b)
        | Regex::Lazy(b)
        | Regex::NegLookahead(b)
        | Regex::PosLookahead(b) => leaves(b),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn rewriting_is_well_formed_and_idempotent(e in regex_strategy(ABC, true, 6)) {
        let once = f_out(&e);
        prop_assert!(is_well_formed(&once));
        prop_assert_eq!(f_out(&once), once.clone());
        if is_well_formed(&e) && e.is_extension_free() {
            prop_assert_eq!(once, e);
        }
    }

    #[test]
    fn rewriting_preserves_matched_prefixes(e in regex_strategy(AB, false, 6)) {
        let r = f_out(&e);
        for input in inputs(AB, 6) {
            prop_assert_eq!(re_prefix_set(&e, &input).unwrap(), re_prefix_set(&r, &input).unwrap());
        }
    }

    /// On regexes that are already well-formed, rewriting never changes
    /// what a backtracking engine picks.
    #[test]
    fn rewriting_keeps_backtracking_choice(e in regex_strategy(ABC, true, 5)) {
        prop_assume!(is_well_formed(&e));
        let r = f_out(&e);
        for input in inputs(ABC, 4) {
            prop_assert_eq!(backtrack(&e, &input), backtrack(&r, &input));
        }
    }

    #[test]
    fn predicates_agree_with_the_language(e in regex_strategy(AB, false, 5)) {
        let lang = language(&e, AB, 4);
        prop_assert_eq!(null_pred(&e), lang.contains(&Vec::new()));
        if empty_pred(&e) {
            prop_assert!(lang.iter().all(|s| s.is_empty()));
        }
        if leaves(&e) <= 4 {
            prop_assert!(!empty_pred(&e) || lang.len() == 1 || lang.is_empty());
            let firsts = CharSet::from_bytes(&lang.iter().filter_map(|s| s.first().copied()).collect::<Vec<_>>());
            prop_assert_eq!(first_set(&e).intersection(&CharSet::from_bytes(AB)), firsts);
        }
    }

    #[test]
    fn printing_then_parsing_is_identity(e in regex_strategy(ABC, true, 6)) {
        let sigma = alphabet("abc");
        let text = print_regex(&e, &sigma);
        let back = parse_regex(&text, &sigma).unwrap();
        prop_assert_eq!(print_regex(&back, &sigma), text.clone());
        for input in inputs(ABC, 3) {
            if is_well_formed(&e) {
                prop_assert_eq!(backtrack(&e, &input), backtrack(&back, &input), "{}", text);
            }
        }
    }
}

#[test]
fn worked_rewrites() {
    let sigma = alphabet("abcd");
    let cases = [
        ("(bc|a*(d|()))*", "(bc|(a|d))*"),
        ("(?>(()|a))*", "(?>a)*"),
        ("(?>(a|()|b))*", "(?>a|b)*"),
    ];
    for (input, want) in cases {
        let e = parse_regex(input, &sigma).unwrap();
        assert_eq!(print_regex(&f_out(&e), &sigma), want, "{input}");
    }
}
