//! Regex to PEG compilation: parsing, well-formedness rewriting, the
//! continuation-passing transformation, FIRST-set optimizations, a PEG
//! matcher and the reference semantics used to test them.

pub mod bench;
pub mod charset;
pub mod equiv;
pub mod error;
pub mod gen;
pub mod oracle;
pub mod peg;
pub mod regex;
pub mod rewrite;
pub mod search;
mod syntax;
pub mod transform;

pub use charset::{Alphabet, CharSet};
pub use error::{Error, Result};
pub use oracle::{re_prefix_set, regex_backtrack_match, MatchOutcome, PrefixSet};
pub use peg::{check_complete, parse_grammar, peg_match, serialize_grammar, Grammar, PegExpr, Symbol};
pub use regex::{parse_regex, print_regex, Regex};
pub use rewrite::{f_in, f_out};
pub use search::{build_search_grammar, SearchGrammar, SearchHit, SearchMode};
pub use transform::{compile, direct_peg, pi, CompileOptions, NameSupply};

/// Default step budget for the backtracking matchers.
pub const DEFAULT_FUEL: u64 = 10_000_000;
