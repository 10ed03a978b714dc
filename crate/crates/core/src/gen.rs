//! Seeded random regex generator for differential testing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::charset::Alphabet;
use crate::regex::Regex;

const LEAF: u32 = 40;
const CONCAT: u32 = 20;
const CHOICE: u32 = 20;
const STAR: u32 = 10;
const EXTENSION: u32 = 10;

/// Deterministic random regex of at most `depth` nested constructors.
///
/// Leaves are drawn uniformly from the alphabet symbols plus ε.
pub fn gen_regex(seed: u64, depth: u32, alphabet: &Alphabet, extensions: bool) -> Regex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let symbols = alphabet.to_vec();
    gen(&mut rng, depth, &symbols, extensions)
}

fn gen(rng: &mut ChaCha8Rng, depth: u32, symbols: &[u8], extensions: bool) -> Regex {
    if depth == 0 {
        return leaf(rng, symbols);
    }
    let total = LEAF + CONCAT + CHOICE + STAR + if extensions { EXTENSION } else { 0 };
    let mut roll = rng.gen_range(0..total);
    if roll < LEAF {
        return leaf(rng, symbols);
    }
    roll -= LEAF;
    let sub = |rng: &mut ChaCha8Rng| gen(rng, depth - 1, symbols, extensions);
    if roll < CONCAT {
        let l = sub(rng);
        return Regex::concat(l, sub(rng));
    }
    roll -= CONCAT;
    if roll < CHOICE {
        let l = sub(rng);
        return Regex::choice(l, sub(rng));
    }
    roll -= CHOICE;
    if roll < STAR {
        return Regex::star(sub(rng));
    }
    let body = sub(rng);
    match rng.gen_range(0..5) {
        0 => Regex::atomic(body),
        1 => Regex::possessive(body),
        2 => Regex::lazy(body),
        3 => Regex::neg_lookahead(body),
        _ => Regex::pos_lookahead(body),
    }
}

fn leaf(rng: &mut ChaCha8Rng, symbols: &[u8]) -> Regex {
    let i = rng.gen_range(0..=symbols.len());
    match symbols.get(i) {
        Some(&b) => Regex::sym(b),
        None => Regex::Empty,
    }
}
