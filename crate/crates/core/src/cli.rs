//! Command-line driver.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::arity::infer_arity;
use crate::checker::{rt_convertible, Checker};
use crate::config::{parse_sorts, Config, ConfigError};
use crate::domain::ApplicabilityDomain;
use crate::error::{default_fuel, KernelError};
use crate::eta::eta_expand_closure;
use crate::normal::{rt_normal_form, whnf_rt};
use crate::reduction::reachable_rt;
use crate::syntax::{parse_closure_named, print_closure, print_term_at, ParsedClosure, SyntaxError};
use crate::term::BoundCount;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_FUEL: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "lambdadelta", version, about = "Reduce, normalize and check lambda-delta closures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Reduction budget per normalization call (default 10 * size^2)
    #[arg(long, global = true)]
    fuel: Option<u64>,
    /// Sort policy: `succ` or `table:FILE`
    #[arg(long, global = true)]
    sorts: Option<String>,
    /// Flat key=value config file
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Read the closure from a file instead of the argument or stdin
    #[arg(long, global = true)]
    file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and print a closure
    Parse { closure: Option<String> },
    /// List the rt-reducts reachable in at most N steps
    Reduce {
        /// Maximum number of steps
        #[arg(long, default_value_t = 1)]
        steps: usize,
        closure: Option<String>,
    },
    /// Weak head rt-normal form
    Whnf { closure: Option<String> },
    /// Full r-normal form of the n-th canonical type
    Nf {
        /// Number of t-steps taken before normalizing
        #[arg(long = "rt-bound", default_value_t = 0)]
        rt_bound: u64,
        closure: Option<String>,
    },
    /// Arity of the subject
    Arity { closure: Option<String> },
    /// Validity of the subject
    Check {
        /// Applicability domain: `omega`, `empty` or `set:N,M,...`
        #[arg(long)]
        domain: Option<String>,
        closure: Option<String>,
    },
    /// Inferred type of a valid subject
    Type {
        /// Applicability domain: `omega`, `empty` or `set:N,M,...`
        #[arg(long)]
        domain: Option<String>,
        closure: Option<String>,
    },
    /// Check the subject against a type
    Typecheck {
        /// Applicability domain: `omega`, `empty` or `set:N,M,...`
        #[arg(long)]
        domain: Option<String>,
        /// Term to compare with, read in the closure's environment
        #[arg(long)]
        against: String,
        closure: Option<String>,
    },
    /// rt-conversion of the subject (bound n1) with another term (bound n2)
    Convert {
        /// Bounds of the subject and of the other term
        #[arg(long, default_value = "0,0")]
        bounds: String,
        /// Term to compare with, read in the closure's environment
        #[arg(long)]
        against: String,
        closure: Option<String>,
    },
    /// η-expand the closure
    Eta { closure: Option<String> },
}

impl Command {
    fn closure_arg(&self) -> Option<&str> {
        match self {
            Command::Parse { closure }
            | Command::Reduce { closure, .. }
            | Command::Whnf { closure }
            | Command::Nf { closure, .. }
            | Command::Arity { closure }
            | Command::Check { closure, .. }
            | Command::Type { closure, .. }
            | Command::Typecheck { closure, .. }
            | Command::Convert { closure, .. }
            | Command::Eta { closure } => closure.as_deref(),
        }
    }
}

enum Failure {
    Usage(String),
    Syntax(SyntaxError),
    Config(ConfigError),
    Kernel(KernelError),
}

impl From<SyntaxError> for Failure {
    fn from(e: SyntaxError) -> Failure {
        Failure::Syntax(e)
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Failure {
        Failure::Config(e)
    }
}

impl From<KernelError> for Failure {
    fn from(e: KernelError) -> Failure {
        Failure::Kernel(e)
    }
}

/// Runs the driver on `args` (including the program name) and returns the
/// exit code.
pub fn run(args: &[String], stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    EXIT_PARSE
                }
            };
        }
    };
    match execute(&cli, stdin, stdout) {
        Ok(code) => code,
        Err(f) => {
            let (msg, code) = match f {
                Failure::Usage(m) => (m, EXIT_PARSE),
                Failure::Syntax(e) => (format!("parse error: {e}"), EXIT_PARSE),
                Failure::Config(e) => (format!("config error: {e}"), EXIT_PARSE),
                Failure::Kernel(KernelError::FuelExhausted) => ("error: fuel exhausted".to_string(), EXIT_FUEL),
                Failure::Kernel(e) => (format!("error: {e}"), EXIT_PRECONDITION),
            };
            let _ = writeln!(stderr, "{msg}");
            code
        }
    }
}

fn read_input(cli: &Cli, stdin: &mut dyn Read) -> Result<String, Failure> {
    if let Some(text) = cli.command.closure_arg() {
        return Ok(text.to_string());
    }
    let mut text = String::new();
    match &cli.file {
        Some(path) => {
            text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
        }
        None => {
            stdin.read_to_string(&mut text).map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        }
    }
    Ok(text)
}

fn domain(config: &Config, flag: &Option<String>) -> Result<ApplicabilityDomain, Failure> {
    match flag {
        Some(d) => d.parse().map_err(|e| Failure::Usage(format!("{e}"))),
        None => Ok(config.domain.clone()),
    }
}

fn execute(cli: &Cli, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    if let Some(s) = &cli.sorts {
        config.sorts = parse_sorts(s, Path::new("."))?;
    }
    if cli.fuel.is_some() {
        config.fuel = cli.fuel;
    }
    let parsed: ParsedClosure = parse_closure_named(&read_input(cli, stdin)?)?;
    let c = &parsed.closure;
    let fuel = config.fuel.unwrap_or_else(|| default_fuel(c.size()));
    let level = c.env.len();
    let show = |t: &crate::term::Term| print_term_at(t, level);
    let checker = |d| {
        let ch = Checker::new(d).with_sorts(config.sorts.clone());
        match config.fuel {
            Some(f) => ch.with_fuel(f),
            None => ch,
        }
    };
    let mut lines: Vec<String> = Vec::new();
    let code = match &cli.command {
        Command::Parse { .. } => {
            lines.push(format!("closure: {}", print_closure(c)));
            lines.push(format!("term: {}", show(&c.subject)));
            EXIT_OK
        }
        Command::Reduce { steps, .. } => {
            for (n, t) in reachable_rt(&c.env, &c.subject, *steps, &config.sorts) {
                lines.push(format!("reduct: {n} {}", show(&t)));
            }
            EXIT_OK
        }
        Command::Whnf { .. } => {
            let r = whnf_rt(&c.env, &c.subject, fuel)?;
            lines.push(format!("bound: {}", r.t_steps));
            lines.push(format!("term: {}", show(&r.form)));
            EXIT_OK
        }
        Command::Nf { rt_bound, .. } => {
            let t = rt_normal_form(&c.env, &c.subject, BoundCount(*rt_bound), &config.sorts, fuel)?;
            lines.push(format!("term: {}", show(&t)));
            EXIT_OK
        }
        Command::Arity { .. } => match infer_arity(&c.env, &c.subject) {
            Some(a) => {
                lines.push(format!("arity: {a}"));
                EXIT_OK
            }
            None => {
                lines.push("arity: none".to_string());
                EXIT_NO
            }
        },
        Command::Check { domain: d, .. } => {
            let report = checker(domain(&config, d)?).check_closure(c)?;
            lines.push(format!("verdict: {report}"));
            if let Some(f) = &report.failure {
                if !f.path.is_empty() {
                    let path: Vec<String> = f.path.iter().map(|s| s.to_string()).collect();
                    lines.push(format!("cause: {} at {}", f.cause, path.join("/")));
                }
            }
            if report.is_valid() {
                EXIT_OK
            } else {
                EXIT_NO
            }
        }
        Command::Type { domain: d, .. } => {
            let ch = checker(domain(&config, d)?);
            let report = ch.check_closure(c)?;
            if report.is_valid() {
                lines.push(format!("term: {}", show(&ch.infer_type(&c.env, &c.subject)?)));
                EXIT_OK
            } else {
                lines.push(format!("verdict: {report}"));
                EXIT_NO
            }
        }
        Command::Typecheck { domain: d, against, .. } => {
            let u = parsed.parse_term(against)?;
            let ok = checker(domain(&config, d)?).typecheck(&c.env, &c.subject, &u)?;
            lines.push(format!("result: {ok}"));
            if ok {
                EXIT_OK
            } else {
                EXIT_NO
            }
        }
        Command::Convert { bounds, against, .. } => {
            let (n1, n2) = parse_bounds(bounds)?;
            let u = parsed.parse_term(against)?;
            let ok = rt_convertible(&c.env, &c.subject, n1, &u, n2, &config.sorts, fuel)?;
            lines.push(format!("result: {ok}"));
            if ok {
                EXIT_OK
            } else {
                EXIT_NO
            }
        }
        Command::Eta { .. } => {
            let e = eta_expand_closure(c, fuel)?;
            lines.push(format!("closure: {}", print_closure(&e)));
            EXIT_OK
        }
    };
    for line in lines {
        writeln!(out, "{line}").map_err(|e| Failure::Usage(format!("stdout: {e}")))?;
    }
    Ok(code)
}

fn parse_bounds(text: &str) -> Result<(BoundCount, BoundCount), Failure> {
    let bad = || Failure::Usage(format!("bad bounds `{text}`: expected n1,n2"));
    let (a, b) = text.split_once(',').ok_or_else(bad)?;
    let a = a.trim().parse().map_err(|_| bad())?;
    let b = b.trim().parse().map_err(|_| bad())?;
    Ok((BoundCount(a), BoundCount(b)))
}
