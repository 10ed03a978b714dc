//! Search benchmarks and the deterministic synthetic text corpus.

use std::path::Path;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::charset::Alphabet;
use crate::error::{Error, Result};
use crate::regex::parse_regex;
use crate::search::{build_search_grammar, SearchHit, SearchMode};
use crate::transform::CompileOptions;

/// Size of the default synthetic corpus.
pub const CORPUS_BYTES: usize = 4 << 20;
pub const CORPUS_SEED: u64 = 1611;

/// Words planted once each, at 25%, 50%, 75% and 95% of the corpus.
pub const TARGET_WORDS: [&str; 4] = ["Geshurites", "worshippeth", "blotteth", "sprang"];
const TARGET_AT: [f64; 4] = [0.25, 0.50, 0.75, 0.95];

/// Word pairs planted in one sentence each, at 30%, 60% and 90%.
pub const WORD_PAIRS: [(&str, &str); 3] = [("Adam", "Eve"), ("Israel", "Samaria"), ("Jesus", "John")];
const PAIR_AT: [f64; 3] = [0.30, 0.60, 0.90];

const VOCABULARY: usize = 6000;
const LINE_WIDTH: usize = 70;

/// Seeded word salad of at least `bytes` bytes: sentences of lowercase
/// words with commas and periods, wrapped into lines of about 70 columns.
pub fn synthetic_corpus(seed: u64, bytes: usize) -> Vec<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vocabulary = vocabulary(&mut rng);
    let mut planted: Vec<(usize, Vec<String>)> = TARGET_AT
        .iter()
        .zip(TARGET_WORDS)
        .map(|(&at, w)| ((at * bytes as f64) as usize, vec![w.to_string()]))
        .chain(PAIR_AT.iter().zip(WORD_PAIRS).map(|(&at, (a, b))| {
            let filler = (0..rng.gen_range(2..6)).map(|_| pick(&mut rng, &vocabulary).to_string());
            let mut words = vec![a.to_string()];
            words.extend(filler);
            words.push(b.to_string());
            ((at * bytes as f64) as usize, words)
        }))
        .collect();
    planted.sort_by_key(|(at, _)| *at);
    planted.reverse();

    let mut text = Text::default();
    while text.len() < bytes {
        let mut words: Vec<String> = (0..rng.gen_range(5..20))
            .map(|_| pick(&mut rng, &vocabulary).to_string())
            .collect();
        if planted.last().is_some_and(|(at, _)| text.len() >= *at) {
            let (_, special) = planted.pop().unwrap();
            let at = rng.gen_range(1..words.len());
            words.splice(at..at, special);
        }
        text.sentence(&mut rng, &mut words);
    }
    text.finish()
}

fn vocabulary(rng: &mut ChaCha8Rng) -> Vec<String> {
    let banned: Vec<String> = TARGET_WORDS
        .iter()
        .chain(WORD_PAIRS.iter().flat_map(|(a, b)| [a, b]))
        .map(|w| w.to_lowercase())
        .collect();
    let mut words = Vec::with_capacity(VOCABULARY);
    while words.len() < VOCABULARY {
        let len = 1 + rng.gen_range(0..4) + rng.gen_range(0..4) + rng.gen_range(0..4);
        let word: String = (0..len).map(|_| rng.gen_range(b'a'..=b'z') as char).collect();
        if !banned.iter().any(|b| word.contains(b.as_str())) {
            words.push(word);
        }
    }
    words
}

/// Skewed toward the front of the vocabulary.
fn pick<'v>(rng: &mut ChaCha8Rng, vocabulary: &'v [String]) -> &'v str {
    let u: f64 = rng.gen();
    &vocabulary[(u * u * u * vocabulary.len() as f64) as usize]
}

#[derive(Default)]
struct Text {
    out: Vec<u8>,
    column: usize,
}

impl Text {
    fn len(&self) -> usize {
        self.out.len()
    }

    fn sentence(&mut self, rng: &mut ChaCha8Rng, words: &mut [String]) {
        if let Some(first) = words.first_mut() {
            if let Some(c) = first.get_mut(..1) {
                c.make_ascii_uppercase();
            }
        }
        let last = words.len() - 1;
        for (i, word) in words.iter().enumerate() {
            let punct = if i == last {
                "."
            } else if rng.gen_ratio(1, 8) {
                ","
            } else {
                ""
            };
            self.word(&format!("{word}{punct}"));
        }
    }

    fn word(&mut self, w: &str) {
        if self.column > 0 && self.column + 1 + w.len() > LINE_WIDTH {
            self.out.push(b'\n');
            self.column = 0;
        } else if self.column > 0 {
            self.out.push(b' ');
            self.column += 1;
        }
        self.out.extend_from_slice(w.as_bytes());
        self.column += w.len();
    }

    fn finish(mut self) -> Vec<u8> {
        self.out.push(b'\n');
        self.out
    }
}

/// Patterns modelled on the four classic search tasks: a single word,
/// two words within a sentence, a word after any word, and a sentence
/// containing a word.
pub fn default_patterns() -> Vec<String> {
    let mut patterns: Vec<String> = TARGET_WORDS.iter().map(|w| w.to_string()).collect();
    patterns.extend(WORD_PAIRS.iter().map(|(a, b)| format!("{a}[^.]*{b}")));
    patterns.extend(TARGET_WORDS.iter().map(|w| format!("[a-zA-Z]+ {w}")));
    patterns.extend(WORD_PAIRS.iter().map(|(a, _)| format!("[A-Z][^.]*{a}[^.]*\\.")));
    patterns
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BenchRow {
    pub pattern: String,
    /// Mode asked for; `auto` when the strongest applicable one was used.
    pub mode: String,
    /// Mode actually run.
    pub effective: SearchMode,
    pub subject: String,
    #[serde(rename = "elapsed_ns", serialize_with = "nanos")]
    pub elapsed: Duration,
    pub start: Option<usize>,
    pub end: Option<usize>,
}

impl BenchRow {
    pub fn hit(&self) -> Option<SearchHit> {
        Some(SearchHit {
            start: self.start?,
            end: self.end?,
        })
    }
}

fn nanos<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u128(d.as_nanos())
}

pub fn mode_label(mode: Option<SearchMode>) -> String {
    mode.map_or_else(|| "auto".to_string(), |m| m.name().to_string())
}

/// Times every pattern in every mode on `subject`; `None` is the
/// strongest applicable mode. Each row holds the median of `reps` runs.
pub fn bench_subject(
    patterns: &[String],
    subject: &[u8],
    subject_id: &str,
    modes: &[Option<SearchMode>],
    reps: usize,
) -> Result<Vec<BenchRow>> {
    if reps < 3 {
        return Err(Error::Usage("at least 3 repetitions are required".to_string()));
    }
    let sigma = Alphabet::bytes();
    let mut rows = Vec::new();
    for pattern in patterns {
        let e = parse_regex(pattern, &sigma)?;
        let first_row = rows.len();
        for &mode in modes {
            let grammar = build_search_grammar(&e, &sigma, mode, CompileOptions::default())?;
            let mut times = Vec::with_capacity(reps);
            let mut hit = None;
            for _ in 0..reps {
                let clock = Instant::now();
                hit = grammar.search(subject)?;
                times.push(clock.elapsed());
            }
            times.sort();
            rows.push(BenchRow {
                pattern: pattern.clone(),
                mode: mode_label(mode),
                effective: grammar.mode,
                subject: subject_id.to_string(),
                elapsed: times[reps / 2],
                start: hit.map(|h| h.start),
                end: hit.map(|h| h.end),
            });
        }
        if rows[first_row..].iter().any(|r| r.hit() != rows[first_row].hit()) {
            return Err(Error::ModeMismatch {
                pattern: pattern.clone(),
            });
        }
    }
    Ok(rows)
}

pub fn cmd_bench(patterns: &[String], corpus: &Path, modes: &[Option<SearchMode>], reps: usize) -> Result<Vec<BenchRow>> {
    let subject = std::fs::read(corpus)?;
    bench_subject(patterns, &subject, &corpus.display().to_string(), modes, reps)
}
