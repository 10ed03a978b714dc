//! Byte sets and alphabets.

use std::fmt;

/// A set of byte symbols, stored as a 256-bit bitmap.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct CharSet {
    bits: [u64; 4],
}

impl CharSet {
    pub const fn empty() -> CharSet {
        CharSet { bits: [0; 4] }
    }

    pub const fn full() -> CharSet {
        CharSet { bits: [u64::MAX; 4] }
    }

    pub fn single(b: u8) -> CharSet {
        let mut set = CharSet::empty();
        set.insert(b);
        set
    }

    pub fn range(lo: u8, hi: u8) -> CharSet {
        let mut set = CharSet::empty();
        for b in lo..=hi {
            set.insert(b);
        }
        set
    }

    pub fn from_bytes(bytes: &[u8]) -> CharSet {
        let mut set = CharSet::empty();
        for &b in bytes {
            set.insert(b);
        }
        set
    }

    #[inline]
    pub fn contains(&self, b: u8) -> bool {
        self.bits[(b >> 6) as usize] & (1u64 << (b & 63)) != 0
    }

    #[inline]
    pub fn insert(&mut self, b: u8) {
        self.bits[(b >> 6) as usize] |= 1u64 << (b & 63);
    }

    pub fn remove(&mut self, b: u8) {
        self.bits[(b >> 6) as usize] &= !(1u64 << (b & 63));
    }

    pub fn union(&self, other: &CharSet) -> CharSet {
        let mut bits = self.bits;
        for (x, y) in bits.iter_mut().zip(other.bits.iter()) {
            *x |= *y;
        }
        CharSet { bits }
    }

    pub fn intersection(&self, other: &CharSet) -> CharSet {
        let mut bits = self.bits;
        for (x, y) in bits.iter_mut().zip(other.bits.iter()) {
            *x &= *y;
        }
        CharSet { bits }
    }

    /// Symbols of `self` that are not in `other`.
    pub fn difference(&self, other: &CharSet) -> CharSet {
        let mut bits = self.bits;
        for (x, y) in bits.iter_mut().zip(other.bits.iter()) {
            *x &= !*y;
        }
        CharSet { bits }
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &CharSet) -> bool {
        self.difference(other).is_empty()
    }

    pub fn is_disjoint(&self, other: &CharSet) -> bool {
        self.intersection(other).is_empty()
    }

    /// The single member, if the set has exactly one.
    pub fn as_single(&self) -> Option<u8> {
        if self.len() == 1 {
            self.iter().next()
        } else {
            None
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = u8> + '_ {
        (0..=255u8).filter(move |&b| self.contains(b))
    }

    /// Maximal runs of consecutive members, as inclusive ranges.
    pub fn ranges(&self) -> Vec<(u8, u8)> {
        let mut out: Vec<(u8, u8)> = Vec::new();
        for b in self.iter() {
            match out.last_mut() {
                Some((_, hi)) if *hi as u16 + 1 == b as u16 => *hi = b,
                _ => out.push((b, b)),
            }
        }
        out
    }
}

impl fmt::Debug for CharSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (lo, hi)) in self.ranges().into_iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", std::ascii::escape_default(lo))?;
            if hi != lo {
                write!(f, "-{}", std::ascii::escape_default(hi))?;
            }
        }
        f.write_str("}")
    }
}

impl FromIterator<u8> for CharSet {
    fn from_iter<I: IntoIterator<Item = u8>>(iter: I) -> Self {
        let mut set = CharSet::empty();
        for b in iter {
            set.insert(b);
        }
        set
    }
}

/// The finite, non-empty set of symbols a regex or grammar works over.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Alphabet {
    symbols: CharSet,
}

impl Alphabet {
    /// All 256 byte values.
    pub fn bytes() -> Alphabet {
        Alphabet {
            symbols: CharSet::full(),
        }
    }

    /// Returns `None` when `symbols` is empty.
    pub fn new(symbols: CharSet) -> Option<Alphabet> {
        if symbols.is_empty() {
            None
        } else {
            Some(Alphabet { symbols })
        }
    }

    /// Alphabet made of the distinct bytes of `text`, e.g. `"ab"`.
    pub fn from_symbols(text: &[u8]) -> Option<Alphabet> {
        Alphabet::new(CharSet::from_bytes(text))
    }

    pub fn symbols(&self) -> &CharSet {
        &self.symbols
    }

    pub fn contains(&self, b: u8) -> bool {
        self.symbols.contains(b)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Ordered list of symbols.
    pub fn to_vec(&self) -> Vec<u8> {
        self.symbols.iter().collect()
    }

    /// Complement of `set` within this alphabet.
    pub fn complement(&self, set: &CharSet) -> CharSet {
        self.symbols.difference(set)
    }
}

impl Default for Alphabet {
    fn default() -> Self {
        Alphabet::bytes()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra() {
        let ab = CharSet::from_bytes(b"ab");
        let bc = CharSet::from_bytes(b"bc");
        assert_eq!(ab.union(&bc), CharSet::from_bytes(b"abc"));
        assert_eq!(ab.intersection(&bc), CharSet::single(b'b'));
        assert_eq!(ab.difference(&bc), CharSet::single(b'a'));
        assert!(ab.is_disjoint(&CharSet::single(b'z')));
        assert_eq!(CharSet::full().len(), 256);
        assert!(CharSet::full().contains(255) && CharSet::full().contains(0));
    }

    #[test]
    fn ranges_are_maximal() {
        let set: CharSet = b"abcxz".iter().copied().collect();
        assert_eq!(set.ranges(), vec![(b'a', b'c'), (b'x', b'x'), (b'z', b'z')]);
        assert_eq!(CharSet::full().ranges(), vec![(0, 255)]);
    }

    #[test]
    fn alphabet_complement() {
        let sigma = Alphabet::from_symbols(b"abc").unwrap();
        assert_eq!(sigma.complement(&CharSet::single(b'a')), CharSet::from_bytes(b"bc"));
        assert!(Alphabet::new(CharSet::empty()).is_none());
    }
}
