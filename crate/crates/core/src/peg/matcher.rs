//! PEG interpreter with an explicit backtrack stack.
//!
//! Grammars are compiled into a node arena first. Expressions that always
//! test exactly one symbol (classes, choices of classes, `!c d`) collapse
//! into a single set test, and a star over such a test becomes a scan.

use std::collections::HashMap;

use super::{Grammar, PegExpr, Symbol};
use crate::charset::CharSet;
use crate::error::{Error, Result};
use crate::oracle::MatchOutcome;

type NodeId = u32;

#[derive(Clone, Copy, Debug)]
enum Node {
    Empty,
    Test(CharSet),
    /// Longest run of symbols from the set.
    Span(CharSet),
    Call(u32),
    Concat(NodeId, NodeId),
    Choice(NodeId, NodeId),
    Star(NodeId),
    Not(NodeId),
}

/// A grammar compiled for matching. Immutable and shareable across threads.
#[derive(Clone, Debug)]
pub struct Matcher {
    nodes: Vec<Node>,
    /// Root node of each production, by production index.
    roots: Vec<NodeId>,
    start: NodeId,
    probe: Option<u32>,
}

/// Outcome of one run plus bookkeeping.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Run {
    pub outcome: MatchOutcome,
    /// Interpreter steps taken.
    pub steps: u64,
    /// Where the probe non-terminal was entered on its first success.
    pub probe_start: Option<usize>,
}

struct Compiler<'g> {
    grammar: &'g Grammar,
    nodes: Vec<Node>,
    memo: HashMap<*const PegExpr, NodeId>,
}

impl Compiler<'_> {
    fn push(&mut self, node: Node) -> NodeId {
        self.nodes.push(node);
        (self.nodes.len() - 1) as NodeId
    }

    /// The set of symbols `e` accepts if it always consumes exactly one.
    fn single_test(&self, e: &PegExpr) -> Option<CharSet> {
        match e {
            PegExpr::Class(set) => Some(*set),
            PegExpr::Any => Some(*self.grammar.alphabet.symbols()),
            PegExpr::Choice(l, r) => Some(self.single_test(l)?.union(&self.single_test(r)?)),
            PegExpr::Concat(l, r) => match &**l {
                PegExpr::Not(guard) => Some(self.single_test(r)?.difference(&self.single_test(guard)?)),
                _ => None,
            },
            _ => None,
        }
    }

    fn compile(&mut self, e: &PegExpr) -> NodeId {
        let key = e as *const PegExpr;
        if let Some(&id) = self.memo.get(&key) {
            return id;
        }
        let node = if let Some(set) = self.single_test(e) {
            Node::Test(set)
        } else {
            match e {
                PegExpr::Empty => Node::Empty,
                PegExpr::Class(_) | PegExpr::Any => unreachable!("handled as tests"),
                PegExpr::NonTerminal(name) => {
                    let index = self
                        .grammar
                        .productions
                        .get_index_of(name)
                        .expect("grammar validated before compiling");
                    Node::Call(index as u32)
                }
                PegExpr::Concat(l, r) => Node::Concat(self.compile(l), self.compile(r)),
                PegExpr::Choice(l, r) => Node::Choice(self.compile(l), self.compile(r)),
                PegExpr::Star(body) => match self.single_test(body) {
                    Some(set) => Node::Span(set),
                    None => Node::Star(self.compile(body)),
                },
                PegExpr::Not(body) => Node::Not(self.compile(body)),
            }
        };
        let id = self.push(node);
        self.memo.insert(key, id);
        id
    }
}

enum Frame {
    Eval(NodeId),
    /// The left side of a choice succeeded.
    Commit,
    /// One iteration of a star succeeded.
    StarNext(NodeId),
    /// The body of a not-predicate succeeded.
    NotMatched,
    /// The probe non-terminal entered at this position succeeded.
    ProbeEnd(usize),
}

#[derive(Clone, Copy)]
enum Resume {
    Alt(NodeId),
    StarStop,
    NotFailed,
}

struct Entry {
    resume: Resume,
    pos: usize,
    frames: usize,
}

impl Matcher {
    /// Compiles `g`; fails if a non-terminal has no production.
    pub fn new(g: &Grammar) -> Result<Matcher> {
        g.validate()?;
        let mut c = Compiler {
            grammar: g,
            nodes: Vec::new(),
            memo: HashMap::new(),
        };
        let roots = g.productions.values().map(|body| c.compile(body)).collect();
        let start = c.compile(&g.start);
        Ok(Matcher {
            nodes: c.nodes,
            roots,
            start,
            probe: None,
        })
    }

    /// Like [`Matcher::new`], recording where `probe` starts matching.
    pub fn with_probe(g: &Grammar, probe: &Symbol) -> Result<Matcher> {
        let mut m = Matcher::new(g)?;
        let index = g
            .productions
            .get_index_of(probe)
            .ok_or_else(|| Error::UndefinedNonTerminal(probe.to_string()))?;
        m.probe = Some(index as u32);
        Ok(m)
    }

    pub fn run(&self, input: &[u8], fuel: u64) -> Result<MatchOutcome> {
        Ok(self.run_detailed(input, fuel)?.outcome)
    }

    /// Runs the start expression on `input`; every step costs one unit of
    /// fuel and a scan costs one per symbol.
    pub fn run_detailed(&self, input: &[u8], fuel: u64) -> Result<Run> {
        let mut frames: Vec<Frame> = Vec::new();
        let mut stack: Vec<Entry> = Vec::new();
        let mut pos = 0usize;
        let mut steps = 0u64;
        let mut probe_start = None;
        let mut step = Step::Eval(self.start);

        loop {
            step = match step {
                Step::Eval(id) => {
                    steps += 1;
                    if steps > fuel {
                        return Err(Error::FuelExhausted);
                    }
                    match self.nodes[id as usize] {
                        Node::Empty => Step::Succeed,
                        Node::Test(set) => {
                            if input.get(pos).is_some_and(|&b| set.contains(b)) {
                                pos += 1;
                                Step::Succeed
                            } else {
                                Step::Fail
                            }
                        }
                        Node::Span(set) => {
                            let run = input[pos..].iter().take_while(|&&b| set.contains(b)).count();
                            steps += run as u64;
                            if steps > fuel {
                                return Err(Error::FuelExhausted);
                            }
                            pos += run;
                            Step::Succeed
                        }
                        Node::Call(index) => {
                            if self.probe == Some(index) && probe_start.is_none() {
                                frames.push(Frame::ProbeEnd(pos));
                            }
                            Step::Eval(self.roots[index as usize])
                        }
                        Node::Concat(l, r) => {
                            frames.push(Frame::Eval(r));
                            Step::Eval(l)
                        }
                        Node::Choice(l, r) => {
                            stack.push(Entry {
                                resume: Resume::Alt(r),
                                pos,
                                frames: frames.len(),
                            });
                            frames.push(Frame::Commit);
                            Step::Eval(l)
                        }
                        Node::Star(body) => {
                            stack.push(Entry {
                                resume: Resume::StarStop,
                                pos,
                                frames: frames.len(),
                            });
                            frames.push(Frame::StarNext(id));
                            Step::Eval(body)
                        }
                        Node::Not(body) => {
                            stack.push(Entry {
                                resume: Resume::NotFailed,
                                pos,
                                frames: frames.len(),
                            });
                            frames.push(Frame::NotMatched);
                            Step::Eval(body)
                        }
                    }
                }
                Step::Succeed => match frames.pop() {
                    None => {
                        return Ok(Run {
                            outcome: MatchOutcome::Consumed(pos),
                            steps,
                            probe_start,
                        })
                    }
                    Some(Frame::Eval(id)) => Step::Eval(id),
                    Some(Frame::Commit) => {
                        stack.pop();
                        Step::Succeed
                    }
                    Some(Frame::StarNext(id)) => {
                        stack.pop();
                        Step::Eval(id)
                    }
                    Some(Frame::NotMatched) => {
                        stack.pop();
                        Step::Fail
                    }
                    Some(Frame::ProbeEnd(start)) => {
                        probe_start.get_or_insert(start);
                        Step::Succeed
                    }
                },
                Step::Fail => match stack.pop() {
                    None => {
                        return Ok(Run {
                            outcome: MatchOutcome::Fail,
                            steps,
                            probe_start: None,
                        })
                    }
                    Some(entry) => {
                        pos = entry.pos;
                        frames.truncate(entry.frames);
                        match entry.resume {
                            Resume::Alt(id) => Step::Eval(id),
                            Resume::StarStop | Resume::NotFailed => Step::Succeed,
                        }
                    }
                },
            };
        }
    }
}

#[derive(Clone, Copy)]
enum Step {
    Eval(NodeId),
    Succeed,
    Fail,
}

/// Matches `input` against the start expression of `g`.
pub fn peg_match(g: &Grammar, input: &[u8], fuel: u64) -> Result<MatchOutcome> {
    Matcher::new(g)?.run(input, fuel)
}
