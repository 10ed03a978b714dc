use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use repeg::bench::{self, BenchRow};
use repeg::equiv::{self, EquivReport, FuzzConfig, Reading};
use repeg::{
    build_search_grammar, compile, f_out, parse_regex, peg_match, print_regex, serialize_grammar, Alphabet,
    CompileOptions, Error, Result, SearchGrammar, SearchMode, DEFAULT_FUEL,
};

const EXIT_NO_MATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_VIOLATIONS: u8 = 3;

#[derive(Parser)]
#[command(name = "repeg", version, about = "Compile regexes into parsing expression grammars")]
struct Cli {
    /// Emit one JSON object per result line.
    #[arg(long, global = true)]
    json: bool,
    /// Matcher step budget.
    #[arg(long, global = true)]
    fuel: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the grammar for a regex.
    Compile {
        regex: String,
        /// Reject regexes that are not well-formed instead of rewriting them.
        #[arg(long)]
        no_rewrite: bool,
        /// Disable the repetition optimizations.
        #[arg(long)]
        no_opt: bool,
        /// Also print the rewritten regex.
        #[arg(long)]
        show_rewrite: bool,
        #[command(flatten)]
        alphabet: AlphabetArg,
    },
    /// Match a regex against the start of a string.
    Match {
        regex: String,
        string: String,
        #[command(flatten)]
        alphabet: AlphabetArg,
    },
    /// Report the leftmost match in a file.
    Search {
        regex: String,
        file: PathBuf,
        /// naive, first, combined, disjoint or auto.
        #[arg(long, default_value = "auto")]
        mode: String,
    },
    /// Check a compiled regex against the reference semantics on all short inputs.
    Equiv {
        /// Regex to check; omit with --fuzz.
        #[arg(required_unless_present = "fuzz", conflicts_with = "fuzz")]
        regex: Option<String>,
        /// Check this many generated regexes instead.
        #[arg(long)]
        fuzz: Option<usize>,
        #[arg(long, default_value = "ab")]
        alphabet: String,
        #[arg(long, default_value_t = 6)]
        maxlen: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        depth: u32,
        /// Generate regexes with atomic groups, possessive and lazy stars and lookaheads.
        #[arg(long)]
        extensions: bool,
        /// Read the regex directly as a grammar instead of compiling it.
        #[arg(long)]
        direct: bool,
    },
    /// Time searches in each mode.
    Bench {
        /// File with one pattern per line; defaults to the built-in set.
        #[arg(long)]
        patterns: Option<PathBuf>,
        /// Subject file; defaults to the synthetic corpus.
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Comma-separated modes.
        #[arg(long, default_value = "naive,first,combined,disjoint", value_delimiter = ',')]
        modes: Vec<String>,
        #[arg(long, default_value_t = 5)]
        reps: usize,
    },
    /// Write the synthetic benchmark corpus.
    GenCorpus {
        output: PathBuf,
        #[arg(long, default_value_t = bench::CORPUS_BYTES)]
        bytes: usize,
        #[arg(long, default_value_t = bench::CORPUS_SEED)]
        seed: u64,
    },
}

#[derive(Args)]
struct AlphabetArg {
    /// Symbols of the alphabet, e.g. `abc`; defaults to all bytes.
    #[arg(long)]
    alphabet: Option<String>,
}

impl AlphabetArg {
    fn resolve(&self) -> Result<Alphabet> {
        match &self.alphabet {
            None => Ok(Alphabet::bytes()),
            Some(s) => parse_alphabet(s),
        }
    }
}

fn parse_alphabet(s: &str) -> Result<Alphabet> {
    Alphabet::from_symbols(s.as_bytes()).ok_or_else(|| Error::Usage("alphabet must not be empty".to_string()))
}

fn parse_mode(s: &str) -> Result<Option<SearchMode>> {
    if s == "auto" {
        Ok(None)
    } else {
        s.parse().map(Some)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("repeg: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    let mut out = std::io::stdout().lock();
    match &cli.command {
        Command::Compile {
            regex,
            no_rewrite,
            no_opt,
            show_rewrite,
            alphabet,
        } => {
            let sigma = alphabet.resolve()?;
            let e = parse_regex(regex, &sigma)?;
            let options = CompileOptions {
                rewrite: !no_rewrite,
                optimize: !no_opt,
            };
            let g = compile(&e, &sigma, options)?;
            let rewritten = show_rewrite.then(|| print_regex(&f_out(&e), &sigma));
            if cli.json {
                let line = json!({"pattern": regex, "rewritten": rewritten, "grammar": serialize_grammar(&g)});
                writeln!(out, "{line}")?;
            } else {
                if let Some(r) = rewritten {
                    writeln!(out, "rewritten: {r}")?;
                }
                write!(out, "{}", serialize_grammar(&g))?;
            }
            Ok(0)
        }
        Command::Match {
            regex,
            string,
            alphabet,
        } => {
            let sigma = alphabet.resolve()?;
            let g = compile(&parse_regex(regex, &sigma)?, &sigma, CompileOptions::default())?;
            let end = peg_match(&g, string.as_bytes(), cli.fuel.unwrap_or(DEFAULT_FUEL))?.consumed();
            if cli.json {
                let line = json!({"pattern": regex, "start": end.map(|_| 0), "end": end});
                writeln!(out, "{line}")?;
            } else {
                match end {
                    Some(n) => writeln!(out, "match 0..{n} {:?}", String::from_utf8_lossy(&string.as_bytes()[..n]))?,
                    None => writeln!(out, "no match")?,
                }
            }
            Ok(if end.is_some() { 0 } else { EXIT_NO_MATCH })
        }
        Command::Search { regex, file, mode } => {
            let sigma = Alphabet::bytes();
            let requested = parse_mode(mode)?;
            let subject = std::fs::read(file)?;
            let g = build_search_grammar(&parse_regex(regex, &sigma)?, &sigma, requested, CompileOptions::default())?;
            let fuel = cli.fuel.unwrap_or_else(|| SearchGrammar::default_fuel(&subject));
            let hit = g.search_with_fuel(&subject, fuel)?;
            let position = hit.map(|h| h.line_col(&subject));
            if cli.json {
                let line = json!({
                    "pattern": regex,
                    "mode": g.mode,
                    "start": hit.map(|h| h.start),
                    "end": hit.map(|h| h.end),
                    "line": position.map(|p| p.0),
                    "col": position.map(|p| p.1),
                });
                writeln!(out, "{line}")?;
            } else {
                match (hit, position) {
                    (Some(h), Some((line, col))) => writeln!(
                        out,
                        "{line}:{col} bytes {}..{} {}",
                        h.start,
                        h.end,
                        String::from_utf8_lossy(&subject[h.start..h.end])
                    )?,
                    _ => writeln!(out, "no match")?,
                }
            }
            Ok(if hit.is_some() { 0 } else { EXIT_NO_MATCH })
        }
        Command::Equiv {
            regex,
            fuzz,
            alphabet,
            maxlen,
            seed,
            depth,
            extensions,
            direct,
        } => {
            let reading = if *direct {
                Reading::Direct
            } else {
                Reading::Compiled(CompileOptions::default())
            };
            let reports = match (regex, fuzz) {
                (Some(r), _) => vec![equiv::cmd_equiv(r, alphabet, *maxlen, reading)?],
                (None, Some(count)) => {
                    let config = FuzzConfig {
                        count: *count,
                        seed: *seed,
                        depth: *depth,
                        maxlen: *maxlen,
                        extensions: *extensions,
                        reading,
                    };
                    equiv::fuzz(&config, &parse_alphabet(alphabet)?)?
                }
                (None, None) => unreachable!("clap requires a regex or --fuzz"),
            };
            for report in &reports {
                print_report(&mut out, report, cli.json, fuzz.is_some())?;
            }
            let failed = reports.iter().filter(|r| !r.passed()).count();
            if !cli.json && fuzz.is_some() {
                writeln!(out, "{} regexes checked, {failed} with violations", reports.len())?;
            }
            Ok(if failed == 0 { 0 } else { EXIT_VIOLATIONS })
        }
        Command::Bench {
            patterns,
            corpus,
            modes,
            reps,
        } => {
            let patterns = match patterns {
                Some(path) => std::fs::read_to_string(path)?
                    .lines()
                    .filter(|l| !l.is_empty())
                    .map(str::to_string)
                    .collect(),
                None => bench::default_patterns(),
            };
            let modes = modes.iter().map(|m| parse_mode(m)).collect::<Result<Vec<_>>>()?;
            let rows = match corpus {
                Some(path) => bench::cmd_bench(&patterns, path, &modes, *reps)?,
                None => {
                    let text = bench::synthetic_corpus(bench::CORPUS_SEED, bench::CORPUS_BYTES);
                    bench::bench_subject(&patterns, &text, "synthetic", &modes, *reps)?
                }
            };
            for row in &rows {
                print_row(&mut out, row, cli.json)?;
            }
            Ok(0)
        }
        Command::GenCorpus { output, bytes, seed } => {
            std::fs::write(output, bench::synthetic_corpus(*seed, *bytes))?;
            Ok(0)
        }
    }
}

fn print_report(out: &mut impl Write, report: &EquivReport, as_json: bool, quiet_passes: bool) -> Result<()> {
    if as_json {
        let line = json!({
            "pattern": report.regex,
            "tested_inputs": report.tested_inputs,
            "oracle_skips": report.oracle_skips,
            "violations": report.violations,
        });
        writeln!(out, "{line}")?;
        return Ok(());
    }
    if quiet_passes && report.passed() {
        return Ok(());
    }
    writeln!(
        out,
        "{}: {} inputs, {} violations, {} reference runs out of fuel",
        report.regex,
        report.tested_inputs,
        report.violations.len(),
        report.oracle_skips
    )?;
    for v in &report.violations {
        writeln!(out, "  {:?} on {:?}: grammar {}, reference {}", v.kind, v.input, v.peg, v.oracle)?;
    }
    Ok(())
}

fn print_row(out: &mut impl Write, row: &BenchRow, as_json: bool) -> Result<()> {
    if as_json {
        writeln!(out, "{}", serde_json::to_string(row).expect("rows serialize"))?;
        return Ok(());
    }
    let hit = row
        .hit()
        .map_or_else(|| "no match".to_string(), |h| format!("{}..{}", h.start, h.end));
    writeln!(
        out,
        "{:<28} {:<8} {:<8} {:>10.3} ms  {hit}",
        row.pattern,
        row.mode,
        row.effective.name(),
        row.elapsed.as_secs_f64() * 1e3
    )?;
    Ok(())
}
