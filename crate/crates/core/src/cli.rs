//! The `gbproof` command-line tool.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::certificate::{check_all, deserialize_all, serialize_all, Verdict};
use crate::error::{Error, Result};
use crate::frontend::{parse_goal, prove_goal, ProveOptions};
use crate::nullstellensatz::{Method, NotFound, Outcome};
use crate::poly::{print_polynomial, MonomialOrder};
use crate::reduction::{buchberger_untraced, DEFAULT_MAX_POWER};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "gbproof", version, about = "Prove polynomial goals with checkable certificates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Prove a goal file and write its certificate.
    Prove {
        /// Goal file, or `-` for stdin.
        input: String,
        #[arg(long, value_enum, default_value_t = OrderArg::Grevlex)]
        order: OrderArg,
        #[arg(long, default_value_t = DEFAULT_MAX_POWER, value_parser = clap::value_parser!(u32).range(1..))]
        max_power: u32,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// Write the certificate here instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Do not print the identity.
        #[arg(long, short)]
        quiet: bool,
    },
    /// Check a certificate file by expansion.
    Check {
        /// Certificate file, or `-` for stdin.
        input: String,
        #[arg(long, short)]
        quiet: bool,
    },
    /// Print the reduced Gröbner basis of a goal file's hypotheses.
    Gb {
        /// Goal file, or `-` for stdin.
        input: String,
        #[arg(long, value_enum, default_value_t = OrderArg::Grevlex)]
        order: OrderArg,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Lex,
    Grevlex,
}

impl OrderArg {
    fn order(self) -> MonomialOrder {
        match self {
            OrderArg::Lex => MonomialOrder::Lex,
            OrderArg::Grevlex => MonomialOrder::GrevLex,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Fast,
    Fallback,
}

impl MethodArg {
    fn method(self) -> Method {
        match self {
            MethodArg::Auto => Method::Auto,
            MethodArg::Fast => Method::FastPath,
            MethodArg::Fallback => Method::Fallback,
        }
    }
}

/// Standard streams, swappable for tests.
pub struct Io<'a> {
    pub stdin: &'a mut dyn Read,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, io: &mut Io<'_>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(io.stderr, "{}", e.render())
            } else {
                write!(io.stdout, "{}", e.render())
            };
            return code;
        }
    };
    match execute(&cli.command, io) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(io.stderr, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn read_input(path: &str, stdin: &mut dyn Read) -> Result<String> {
    let mut text = String::new();
    if path == "-" {
        stdin
            .read_to_string(&mut text)
            .map_err(|e| Error::InvalidArgument(format!("reading stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{path}: {e}")))?;
    }
    Ok(text)
}

fn io_err(e: std::io::Error) -> Error {
    Error::InvalidArgument(format!("write failed: {e}"))
}

fn execute(cmd: &Command, io: &mut Io<'_>) -> Result<i32> {
    match cmd {
        Command::Prove {
            input,
            order,
            max_power,
            method,
            output,
            quiet,
        } => {
            let goal = parse_goal(&read_input(input, io.stdin)?)?;
            let opts = ProveOptions {
                max_power: *max_power,
                method: method.method(),
                order: order.order(),
            };
            let proved = match prove_goal(&goal, &opts)? {
                Outcome::Found(g) => g,
                Outcome::NotFound(why) => {
                    writeln!(io.stderr, "not proved: {why}").map_err(io_err)?;
                    writeln!(io.stderr, "{}", diagnosis(&why)).map_err(io_err)?;
                    return Ok(EXIT_FAILED);
                }
            };
            let text = serialize_all(&proved.certificates()?);
            let mut summary = proved.rendered_identity();
            summary.push('\n');
            for (name, w) in proved.witnesses() {
                summary.push_str(&format!("{name} = {}\n", print_polynomial(&w)));
            }
            match output {
                Some(path) => {
                    std::fs::write(path, &text)
                        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
                    if !quiet {
                        io.stdout.write_all(summary.as_bytes()).map_err(io_err)?;
                    }
                }
                None => {
                    io.stdout.write_all(text.as_bytes()).map_err(io_err)?;
                    if !quiet {
                        io.stderr.write_all(summary.as_bytes()).map_err(io_err)?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Check { input, quiet } => {
            let certs = deserialize_all(&read_input(input, io.stdin)?)?;
            match check_all(&certs)? {
                Verdict::Valid => {
                    if !quiet {
                        writeln!(io.stdout, "valid").map_err(io_err)?;
                    }
                    Ok(EXIT_OK)
                }
                Verdict::Invalid(why) => {
                    if !quiet {
                        writeln!(io.stdout, "invalid: {why}").map_err(io_err)?;
                    }
                    Ok(EXIT_FAILED)
                }
            }
        }
        Command::Gb { input, order } => {
            let goal = parse_goal(&read_input(input, io.stdin)?)?.with_order(&order.order())?;
            let basis = buchberger_untraced(&goal.hypothesis_polynomials()?)?;
            for p in basis.polynomials() {
                writeln!(io.stdout, "{}", print_polynomial(&p)).map_err(io_err)?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn diagnosis(why: &NotFound) -> &'static str {
    match why {
        NotFound::NotInIdeal | NotFound::NotInRadical => "definitive: the search completed without finding a certificate",
        NotFound::PowerCap { .. } => "gave up at the power cap; a larger --max-power or --method fallback may succeed",
        NotFound::WitnessExtractionFailed { .. } => "the identity holds over the rationals only; no integer witnesses",
    }
}
