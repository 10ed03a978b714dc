//! Lexical pieces shared by the regex syntax and the grammar text format:
//! escapes and bracketed character classes.

use crate::charset::{Alphabet, CharSet};
use crate::error::{Error, Result};

const CLASS_META: &[u8] = b"[]\\^-";

/// Reads one escaped symbol; `*pos` points just past the backslash.
///
/// `\xHH` is a hex byte, anything else stands for itself.
pub(crate) fn parse_escape(src: &[u8], pos: &mut usize) -> Result<u8> {
    let start = *pos;
    let Some(&c) = src.get(start) else {
        return Err(Error::syntax(start.saturating_sub(1), "dangling escape"));
    };
    if c == b'x' && src.len() >= start + 3 {
        let hex = &src[start + 1..start + 3];
        if hex.iter().all(u8::is_ascii_hexdigit) {
            let text = std::str::from_utf8(hex).expect("hex digits are ascii");
            *pos = start + 3;
            return Ok(u8::from_str_radix(text, 16).expect("validated hex"));
        }
    }
    *pos = start + 1;
    Ok(c)
}

fn check_alphabet(b: u8, offset: usize, alphabet: &Alphabet) -> Result<u8> {
    if alphabet.contains(b) {
        Ok(b)
    } else {
        Err(Error::OutsideAlphabet { offset, symbol: b })
    }
}

fn class_symbol(src: &[u8], pos: &mut usize, alphabet: &Alphabet) -> Result<u8> {
    let offset = *pos;
    let b = src[*pos];
    *pos += 1;
    let b = if b == b'\\' { parse_escape(src, pos)? } else { b };
    check_alphabet(b, offset, alphabet)
}

/// Parses `[...]` with `*pos` on the opening bracket. A leading `^`
/// complements within the alphabet.
pub(crate) fn parse_class(src: &[u8], pos: &mut usize, alphabet: &Alphabet) -> Result<CharSet> {
    let open = *pos;
    debug_assert_eq!(src[open], b'[');
    *pos += 1;
    let negated = src.get(*pos) == Some(&b'^');
    if negated {
        *pos += 1;
    }
    let mut set = CharSet::empty();
    loop {
        match src.get(*pos) {
            None => return Err(Error::syntax(open, "unterminated character class")),
            Some(b']') => {
                *pos += 1;
                break;
            }
            Some(_) => {
                let lo_offset = *pos;
                let lo = class_symbol(src, pos, alphabet)?;
                if src.get(*pos) == Some(&b'-') && !matches!(src.get(*pos + 1), Some(b']') | None) {
                    *pos += 1;
                    let hi = class_symbol(src, pos, alphabet)?;
                    if hi < lo {
                        return Err(Error::syntax(lo_offset, "reversed range in class"));
                    }
                    for b in lo..=hi {
                        set.insert(check_alphabet(b, lo_offset, alphabet)?);
                    }
                } else {
                    set.insert(lo);
                }
            }
        }
    }
    let set = if negated { alphabet.complement(&set) } else { set };
    if set.is_empty() {
        return Err(Error::syntax(open, "character class matches nothing"));
    }
    Ok(set)
}

/// Appends `b`, escaped if it is in `meta` or not printable ASCII.
pub(crate) fn write_symbol(out: &mut String, b: u8, meta: &[u8]) {
    if meta.contains(&b) {
        out.push('\\');
        out.push(b as char);
    } else if (0x20..0x7f).contains(&b) {
        out.push(b as char);
    } else {
        out.push_str(&format!("\\x{b:02x}"));
    }
}

fn write_class_body(out: &mut String, set: &CharSet) {
    for (lo, hi) in set.ranges() {
        write_symbol(out, lo, CLASS_META);
        match hi as u16 - lo as u16 {
            0 => {}
            1 => write_symbol(out, hi, CLASS_META),
            _ => {
                out.push('-');
                write_symbol(out, hi, CLASS_META);
            }
        }
    }
}

/// Appends the bracketed form of `set`, complemented when that is shorter.
pub(crate) fn write_class(out: &mut String, set: &CharSet, alphabet: &Alphabet) {
    let mut direct = String::from("[");
    write_class_body(&mut direct, set);
    direct.push(']');
    let complement = alphabet.complement(set);
    if !complement.is_empty() {
        let mut negated = String::from("[^");
        write_class_body(&mut negated, &complement);
        negated.push(']');
        if negated.len() < direct.len() {
            out.push_str(&negated);
            return;
        }
    }
    out.push_str(&direct);
}
