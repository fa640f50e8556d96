//! Command-line front end for `surfclass`.
//!
//! Exit codes: 0 success (and "equivalent" for `equiv`), 1 invalid word or
//! unreadable input, 2 usage error, 3 "not equivalent".

use std::io::{self, BufRead, BufReader, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};
use surfclass::oracle::{invariants, random_word};
use surfclass::{normalize, parse, Word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_EQUIVALENT: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "surfclass",
    version,
    about = "Classify surfaces given as edge words"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Emit JSON instead of text
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the normal form of a word
    Classify {
        word: String,
        /// Include the rewrite trace
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Decide whether two words describe the same surface (exit 0 or 3)
    Equiv {
        left: String,
        right: String,
        #[command(flatten)]
        output: Output,
    },
    /// Print every rewrite step of the normalization
    Trace {
        word: String,
        #[command(flatten)]
        output: Output,
    },
    /// Print Euler characteristic, orientability and boundary count
    Invariants {
        word: String,
        #[command(flatten)]
        output: Output,
    },
    /// Generate a reproducible random word
    Gen {
        #[arg(long, default_value_t = 3)]
        pairs: usize,
        #[arg(long, default_value_t = 0)]
        singles: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Classify one word per line of a file (`-` for stdin)
    Batch {
        file: PathBuf,
        #[command(flatten)]
        output: Output,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli, out, err),
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 {
                write!(out, "{}", e.render())
            } else {
                write!(err, "{}", e.render())
            };
            if code == 0 {
                EXIT_OK
            } else {
                EXIT_USAGE
            }
        }
    }
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Invalid(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INVALID
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
    }
}

enum Failure {
    Invalid(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn read_word(text: &str) -> Result<Word, Failure> {
    parse(text).map_err(|e| Failure::Invalid(format!("invalid word {text:?}: {e}")))
}

fn print_json(out: &mut dyn Write, v: &Value) -> io::Result<()> {
    writeln!(
        out,
        "{}",
        serde_json::to_string(v).expect("json values serialize")
    )
}

fn classification(word: &Word) -> Value {
    json!({
        "word": word.to_string(),
        "normal_form": normalize(word).0,
        "invariants": invariants(word),
    })
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Classify {
            word,
            trace,
            output,
        } => {
            let w = read_word(&word)?;
            let (form, steps) = normalize(&w);
            if output.json {
                let mut doc = json!({
                    "word": w.to_string(),
                    "normal_form": form,
                    "invariants": invariants(&w),
                });
                if trace {
                    doc["trace"] = serde_json::to_value(&steps).expect("trace serializes");
                }
                print_json(out, &doc)?;
            } else {
                if trace {
                    for step in steps.steps() {
                        writeln!(out, "{step}")?;
                    }
                }
                writeln!(out, "{form}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Equiv {
            left,
            right,
            output,
        } => {
            let (u, v) = (read_word(&left)?, read_word(&right)?);
            let (fu, fv) = (normalize(&u).0, normalize(&v).0);
            let same = fu == fv;
            if output.json {
                print_json(
                    out,
                    &json!({
                        "equivalent": same,
                        "left": {"word": u.to_string(), "normal_form": fu},
                        "right": {"word": v.to_string(), "normal_form": fv},
                    }),
                )?;
            } else {
                writeln!(
                    out,
                    "{}",
                    if same { "equivalent" } else { "not equivalent" }
                )?;
            }
            Ok(if same { EXIT_OK } else { EXIT_NOT_EQUIVALENT })
        }
        Command::Trace { word, output } => {
            let w = read_word(&word)?;
            let (form, steps) = normalize(&w);
            if output.json {
                print_json(
                    out,
                    &json!({"word": w.to_string(), "normal_form": form, "trace": steps}),
                )?;
            } else {
                for step in steps.steps() {
                    writeln!(out, "{step}")?;
                }
                writeln!(out, "result: {form}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Invariants { word, output } => {
            let w = read_word(&word)?;
            let inv = invariants(&w);
            if output.json {
                print_json(out, &json!({"word": w.to_string(), "invariants": inv}))?;
            } else {
                writeln!(
                    out,
                    "chi={} orientable={} boundary={} vertices={} edges={}",
                    inv.chi, inv.orientable, inv.boundary, inv.vertices, inv.edges
                )?;
            }
            Ok(EXIT_OK)
        }
        Command::Gen {
            pairs,
            singles,
            seed,
            output,
        } => {
            let w = random_word(pairs, singles, seed);
            if output.json {
                print_json(out, &json!({"word": w.to_string()}))?;
            } else {
                writeln!(out, "{w}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Batch { file, output } => batch(&file, output.json, out),
    }
}

fn batch(file: &PathBuf, json_out: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let reader: Box<dyn BufRead> = if file.as_os_str() == "-" {
        Box::new(BufReader::new(io::stdin()))
    } else {
        Box::new(BufReader::new(std::fs::File::open(file)?))
    };
    let mut lines = Vec::new();
    for line in reader.lines() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        lines.push(trimmed.to_string());
    }
    let results: Vec<(String, bool)> = lines
        .par_iter()
        .map(|line| match parse(line) {
            Ok(w) => {
                let text = if json_out {
                    serde_json::to_string(&classification(&w)).expect("json values serialize")
                } else {
                    format!("{line}: {}", normalize(&w).0)
                };
                (text, true)
            }
            Err(e) => {
                let text = if json_out {
                    json!({"word": line, "error": e.to_string()}).to_string()
                } else {
                    format!("{line}: error: {e}")
                };
                (text, false)
            }
        })
        .collect();
    let mut all_ok = true;
    for (text, ok) in results {
        writeln!(out, "{text}")?;
        all_ok &= ok;
    }
    Ok(if all_ok { EXIT_OK } else { EXIT_INVALID })
}
