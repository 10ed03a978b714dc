//! Reference semantics: the set of prefixes a regex can match, and the
//! prefix a leftmost-first backtracking engine picks.

use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::regex::Regex;
use crate::DEFAULT_FUEL;

/// Lengths of every prefix of the input that a regex can match.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PrefixSet {
    lengths: BTreeSet<usize>,
}

impl PrefixSet {
    pub fn contains(&self, n: usize) -> bool {
        self.lengths.contains(&n)
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn longest(&self) -> Option<usize> {
        self.lengths.last().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.lengths.iter().copied()
    }
}

impl FromIterator<usize> for PrefixSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        PrefixSet {
            lengths: iter.into_iter().collect(),
        }
    }
}

/// Result of running a deterministic matcher on an input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum MatchOutcome {
    /// Number of input symbols consumed.
    Consumed(usize),
    Fail,
}

impl MatchOutcome {
    pub fn consumed(self) -> Option<usize> {
        match self {
            MatchOutcome::Consumed(n) => Some(n),
            MatchOutcome::Fail => None,
        }
    }
}

/// Every prefix length `n` such that `e` can match `input[..n]`.
///
/// Fails with [`Error::ExtensionNotSupported`] when `e` uses extensions.
pub fn re_prefix_set(e: &Regex, input: &[u8]) -> Result<PrefixSet> {
    if !e.is_extension_free() {
        return Err(Error::ExtensionNotSupported);
    }
    let mut ends = PrefixEnds {
        input,
        memo: HashMap::new(),
    };
    Ok(PrefixSet {
        lengths: ends.ends(e, 0).as_ref().clone(),
    })
}

struct PrefixEnds<'a> {
    input: &'a [u8],
    memo: HashMap<(*const Regex, usize), Rc<BTreeSet<usize>>>,
}

impl PrefixEnds<'_> {
    fn ends(&mut self, e: &Regex, pos: usize) -> Rc<BTreeSet<usize>> {
        let key = (e as *const Regex, pos);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let mut out = BTreeSet::new();
        match e {
            Regex::Empty => {
                out.insert(pos);
            }
            Regex::Class(set) => {
                if self.input.get(pos).is_some_and(|&b| set.contains(b)) {
                    out.insert(pos + 1);
                }
            }
            Regex::Concat(l, r) => {
                for &mid in self.ends(l, pos).iter() {
                    out.extend(self.ends(r, mid).iter().copied());
                }
            }
            Regex::Choice(l, r) => {
                out.extend(self.ends(l, pos).iter().copied());
                out.extend(self.ends(r, pos).iter().copied());
            }
            Regex::Star(body) => {
                out.insert(pos);
                for &mid in self.ends(body, pos).iter() {
                    if mid > pos {
                        out.extend(self.ends(e, mid).iter().copied());
                    }
                }
            }
            _ => unreachable!("extensions rejected up front"),
        }
        let out = Rc::new(out);
        self.memo.insert(key, out.clone());
        out
    }
}

/// Leftmost-first backtracking match with the default step budget.
pub fn regex_backtrack_match(e: &Regex, input: &[u8]) -> Result<MatchOutcome> {
    regex_backtrack_match_with_fuel(e, input, DEFAULT_FUEL)
}

/// Leftmost-first backtracking match.
///
/// A repetition whose body succeeds without consuming input would loop
/// forever in a real engine; that case is reported as
/// [`Error::FuelExhausted`] unless an earlier alternative already matched.
pub fn regex_backtrack_match_with_fuel(e: &Regex, input: &[u8], fuel: u64) -> Result<MatchOutcome> {
    let mut bt = Backtracker {
        input,
        fuel,
        memo: HashMap::new(),
    };
    let stream = bt.stream(e, Kind::Plain, 0)?;
    match stream.items.first() {
        Some(&n) => Ok(MatchOutcome::Consumed(n)),
        None if stream.diverges => Err(Error::FuelExhausted),
        None => Ok(MatchOutcome::Fail),
    }
}

/// End positions in the order a backtracking engine would try them,
/// without repeats. `diverges` marks an infinite loop after the last item.
#[derive(Default)]
struct Stream {
    items: Vec<usize>,
    diverges: bool,
}

impl Stream {
    fn push(&mut self, n: usize) {
        if !self.items.contains(&n) {
            self.items.push(n);
        }
    }

    fn single(n: usize) -> Stream {
        Stream {
            items: vec![n],
            diverges: false,
        }
    }

    fn first_only(&self) -> Stream {
        match self.items.first() {
            Some(&n) => Stream::single(n),
            None => Stream {
                items: Vec::new(),
                diverges: self.diverges,
            },
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Kind {
    Plain,
    /// The star underlying a possessive repetition.
    PossessiveStar,
}

struct Backtracker<'a> {
    input: &'a [u8],
    fuel: u64,
    memo: HashMap<(*const Regex, Kind, usize), Rc<Stream>>,
}

impl Backtracker<'_> {
    fn burn(&mut self, n: usize) -> Result<()> {
        let n = n as u64 + 1;
        if self.fuel < n {
            return Err(Error::FuelExhausted);
        }
        self.fuel -= n;
        Ok(())
    }

    fn stream(&mut self, e: &Regex, kind: Kind, pos: usize) -> Result<Rc<Stream>> {
        let key = (e as *const Regex, kind, pos);
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        self.burn(0)?;
        let mut out = Stream::default();
        match (e, kind) {
            (Regex::Empty, _) => out.push(pos),
            (Regex::Class(set), _) => {
                if self.input.get(pos).is_some_and(|&b| set.contains(b)) {
                    out.push(pos + 1);
                }
            }
            (Regex::Concat(l, r), _) => {
                let left = self.stream(l, Kind::Plain, pos)?;
                self.burn(left.items.len())?;
                out.diverges = left.diverges;
                for &mid in &left.items {
                    let right = self.stream(r, Kind::Plain, mid)?;
                    self.burn(right.items.len())?;
                    right.items.iter().for_each(|&n| out.push(n));
                    if right.diverges {
                        out.diverges = true;
                        break;
                    }
                }
            }
            (Regex::Choice(l, r), _) => {
                let left = self.stream(l, Kind::Plain, pos)?;
                left.items.iter().for_each(|&n| out.push(n));
                if left.diverges {
                    out.diverges = true;
                } else {
                    let right = self.stream(r, Kind::Plain, pos)?;
                    right.items.iter().for_each(|&n| out.push(n));
                    out.diverges = right.diverges;
                }
            }
            (Regex::Star(body), _) | (Regex::Possessive(body), Kind::PossessiveStar) => {
                let iter = self.stream(body, Kind::Plain, pos)?;
                self.burn(iter.items.len())?;
                let mut looped = iter.diverges;
                for &mid in &iter.items {
                    if mid == pos {
                        looped = true;
                        break;
                    }
                    let rest = self.stream(e, kind, mid)?;
                    rest.items.iter().for_each(|&n| out.push(n));
                    if rest.diverges {
                        looped = true;
                        break;
                    }
                }
                if looped {
                    out.diverges = true;
                } else {
                    out.push(pos);
                }
            }
            (Regex::Possessive(_), Kind::Plain) => {
                out = self.stream(e, Kind::PossessiveStar, pos)?.first_only();
            }
            (Regex::Lazy(body), _) => {
                out.push(pos);
                let iter = self.stream(body, Kind::Plain, pos)?;
                self.burn(iter.items.len())?;
                out.diverges = iter.diverges;
                for &mid in &iter.items {
                    if mid == pos {
                        out.diverges = true;
                        break;
                    }
                    let rest = self.stream(e, Kind::Plain, mid)?;
                    rest.items.iter().for_each(|&n| out.push(n));
                    if rest.diverges {
                        out.diverges = true;
                        break;
                    }
                }
            }
            (Regex::Atomic(body), _) => {
                out = self.stream(body, Kind::Plain, pos)?.first_only();
            }
            (Regex::NegLookahead(body), _) => {
                let inner = self.stream(body, Kind::Plain, pos)?;
                if inner.items.is_empty() {
                    if inner.diverges {
                        out.diverges = true;
                    } else {
                        out.push(pos);
                    }
                }
            }
            (Regex::PosLookahead(body), _) => {
                let inner = self.stream(body, Kind::Plain, pos)?;
                if !inner.items.is_empty() {
                    out.push(pos);
                } else {
                    out.diverges = inner.diverges;
                }
            }
        }
        let out = Rc::new(out);
        self.memo.insert(key, out.clone());
        Ok(out)
    }
}
