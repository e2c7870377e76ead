//! The `qtsg` command line.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use qtsg_core::grammars::Expected;
use qtsg_core::tag::encode_tag;
use qtsg_core::{BoundExceeded, Grammar, Judgment, Recognizer, DEFAULT_MAX_PAIRINGS};

use crate::data;
use crate::format::corpus::parse_corpus;
use crate::format::grammar::parse_grammar;
use crate::format::tag::{looks_like_tag, parse_tag_grammar};
use crate::render;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BOUND: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "qtsg", version, about = "Quasi-tree substitution grammar recognizer")]
pub struct Cli {
    /// Give up after this many complete pairings per sentence.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_PAIRINGS)]
    pub max_pairings: u64,
    /// Print only verdicts and summaries.
    #[arg(long, short, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Judge one sentence.
    Check {
        #[arg(short, long)]
        grammar: PathBuf,
        #[arg(short, long)]
        sentence: String,
        /// Exit with status 1 when the sentence is rejected.
        #[arg(long)]
        expect_accept: bool,
    },
    /// Write one Graphviz file per derivation of a sentence.
    Derive {
        #[arg(short, long)]
        grammar: PathBuf,
        #[arg(short, long)]
        sentence: String,
        #[arg(long)]
        dot: PathBuf,
    },
    /// Judge every sentence of a corpus file.
    Corpus {
        #[arg(short, long)]
        grammar: PathBuf,
        #[arg(short, long)]
        corpus: PathBuf,
    },
    /// Write a built-in grammar and its corpus to disk.
    Demo {
        #[arg(long, value_enum)]
        name: DemoName,
        /// Target directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DemoName {
    German,
    English,
    Tagcount,
}

impl DemoName {
    fn as_str(self) -> &'static str {
        match self {
            DemoName::German => "german",
            DemoName::English => "english",
            DemoName::Tagcount => "tagcount",
        }
    }
}

/// A failure that ends the command with a given exit status.
struct Exit(i32, String);

impl From<BoundExceeded> for Exit {
    fn from(e: BoundExceeded) -> Self {
        Exit(EXIT_BOUND, e.to_string())
    }
}

/// Reads a `.qtg` grammar, or a `.tag` grammar which is encoded first.
pub fn load_grammar(path: &Path) -> Result<Grammar, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let located = |e: crate::format::ParseError| format!("{}:{e}", path.display());
    if looks_like_tag(&text) {
        let tag = parse_tag_grammar(&text).map_err(located)?;
        encode_tag(&tag).map_err(|e| format!("{}: {e}", path.display()))
    } else {
        parse_grammar(&text).map_err(located)
    }
}

fn verdict(j: &Judgment) -> String {
    let n = j.derivations.len();
    format!(
        "{} ({n} derivation{})",
        if j.accepted { "ACCEPT" } else { "REJECT" },
        if n == 1 { "" } else { "s" }
    )
}

fn judge(cli: &Cli, g: &Grammar, sentence: &str, err: &mut dyn Write) -> Result<Judgment, Exit> {
    let words: Vec<&str> = sentence.split_whitespace().collect();
    if words.is_empty() {
        return Err(Exit(EXIT_USAGE, "empty sentence".into()));
    }
    let j = Recognizer::with_cap(cli.max_pairings).recognize(g, &words)?;
    for w in &j.unknown_tokens {
        let _ = writeln!(err, "warning: unknown word `{w}`");
    }
    Ok(j)
}

fn check(cli: &Cli, g: &Grammar, sentence: &str, expect: bool, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Exit> {
    let j = judge(cli, g, sentence, err)?;
    let _ = writeln!(out, "{}", verdict(&j));
    if !cli.quiet {
        for (i, d) in j.derivations.iter().enumerate() {
            let _ = writeln!(out, "\nderivation {} using {}", i + 1, d.trees_used().join(", "));
            let _ = write!(out, "{}", render::ascii(&d.tree, &d.workspace));
            for (t, b) in d.cross_matches() {
                let _ = writeln!(out, "  match {t} = {b}");
            }
        }
    }
    Ok(if expect && !j.accepted { EXIT_MISMATCH } else { EXIT_OK })
}

fn derive(cli: &Cli, g: &Grammar, sentence: &str, dir: &Path, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Exit> {
    let j = judge(cli, g, sentence, err)?;
    let _ = writeln!(out, "{}", verdict(&j));
    fs::create_dir_all(dir).map_err(|e| Exit(EXIT_USAGE, format!("{}: {e}", dir.display())))?;
    for (i, d) in j.derivations.iter().enumerate() {
        let path = dir.join(format!("derivation-{}.dot", i + 1));
        let text = render::dot(&d.tree, &d.workspace, &format!("derivation {}", i + 1));
        fs::write(&path, text).map_err(|e| Exit(EXIT_USAGE, format!("{}: {e}", path.display())))?;
        if !cli.quiet {
            let _ = writeln!(out, "wrote {}", path.display());
        }
    }
    Ok(EXIT_OK)
}

fn corpus(cli: &Cli, g: &Grammar, path: &Path, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Exit> {
    let text = fs::read_to_string(path).map_err(|e| Exit(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    let cases = parse_corpus(&text).map_err(|e| Exit(EXIT_USAGE, format!("{}:{e}", path.display())))?;
    let width = cases.iter().map(|c| c.source.chars().count()).max().unwrap_or(0).max(6);
    if !cli.quiet {
        let _ = writeln!(out, "{:<6} {:<8} {:<8} {:>5}  {:<width$}  SENTENCE", "RESULT", "EXPECTED", "GOT", "DERIV", "SOURCE");
    }
    let (mut passed, mut failed) = (0, 0);
    let label = |b: bool| if b { "ACCEPT" } else { "REJECT" };
    for c in &cases {
        let j = Recognizer::with_cap(cli.max_pairings).recognize(g, &c.tokens)?;
        for w in &j.unknown_tokens {
            let _ = writeln!(err, "warning: {}: unknown word `{w}`", c.source);
        }
        let want = c.expected == Expected::Grammatical;
        let ok = j.accepted == want;
        if ok {
            passed += 1;
        } else {
            failed += 1;
        }
        if !cli.quiet || !ok {
            let _ = writeln!(
                out,
                "{:<6} {:<8} {:<8} {:>5}  {:<width$}  {}",
                if ok { "pass" } else { "FAIL" },
                label(want),
                label(j.accepted),
                j.derivations.len(),
                c.source,
                c.sentence()
            );
        }
    }
    let _ = writeln!(out, "summary: {} cases, {passed} passed, {failed} failed", cases.len());
    Ok(if failed == 0 { EXIT_OK } else { EXIT_MISMATCH })
}

fn demo(cli: &Cli, name: DemoName, dir: &Path, out: &mut dyn Write) -> Result<i32, Exit> {
    fs::create_dir_all(dir).map_err(|e| Exit(EXIT_USAGE, format!("{}: {e}", dir.display())))?;
    for (file, text) in data::files(name.as_str()) {
        let path = dir.join(file);
        fs::write(&path, text).map_err(|e| Exit(EXIT_USAGE, format!("{}: {e}", path.display())))?;
        if !cli.quiet {
            let _ = writeln!(out, "wrote {}", path.display());
        }
    }
    Ok(EXIT_OK)
}

/// Runs the tool on `args` (program name first) and returns the exit
/// status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    let grammar = |p: &Path| load_grammar(p).map_err(|m| Exit(EXIT_USAGE, m));
    let result = match &cli.command {
        Command::Check { grammar: g, sentence, expect_accept } => {
            grammar(g).and_then(|g| check(&cli, &g, sentence, *expect_accept, out, err))
        }
        Command::Derive { grammar: g, sentence, dot } => {
            grammar(g).and_then(|g| derive(&cli, &g, sentence, dot, out, err))
        }
        Command::Corpus { grammar: g, corpus: c } => grammar(g).and_then(|g| corpus(&cli, &g, c, out, err)),
        Command::Demo { name, out: dir } => demo(&cli, *name, dir, out),
    };
    match result {
        Ok(code) => code,
        Err(Exit(code, message)) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}
