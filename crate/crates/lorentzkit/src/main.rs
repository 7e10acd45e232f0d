use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::builder::PossibleValuesParser;
use clap::error::{ContextKind, ContextValue, ErrorKind};
use clap::Parser;
use lorentzkit::{
    error_document, render_document, run, word_cap_from_env, CliError, Command, Request,
    EXIT_INPUT_ERROR,
};

/// Exact certificates for hyperbolic lattices built from quadratic forms.
///
/// Reads one JSON document and writes one JSON document. Exit status:
/// 0 certified, 1 refuted, 2 inconclusive, 3 input error.
#[derive(Parser, Debug)]
#[command(name = "lorentzkit", version)]
struct Args {
    /// Operation to run.
    #[arg(value_parser = PossibleValuesParser::new(Command::names()))]
    subcommand: String,

    /// Input file, `-` for stdin (the default), or an inline JSON object.
    #[arg(long, short, value_name = "FILE|-|JSON")]
    input: Option<String>,

    /// Working precision of certified enclosures, in bits.
    #[arg(long, default_value_t = 128)]
    precision_bits: u32,

    /// Write the document here instead of stdout.
    #[arg(long, short, value_name = "FILE")]
    output: Option<PathBuf>,
}

fn read_input(source: Option<&str>) -> Result<Vec<u8>, CliError> {
    match source {
        None | Some("-") => {
            let mut buf = Vec::new();
            std::io::stdin()
                .read_to_end(&mut buf)
                .map_err(|e| CliError::new("IO_ERROR", e.to_string(), "input"))?;
            Ok(buf)
        }
        Some(s) if s.trim_start().starts_with('{') => Ok(s.as_bytes().to_vec()),
        Some(path) => std::fs::read(path)
            .map_err(|e| CliError::new("IO_ERROR", format!("{path}: {e}"), "input")),
    }
}

fn emit(bytes: &[u8], output: Option<&PathBuf>) -> std::io::Result<()> {
    match output {
        Some(path) => std::fs::write(path, bytes),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()
        }
    }
}

fn fail(
    command: Option<Command>,
    input: &[u8],
    err: CliError,
    output: Option<&PathBuf>,
) -> ExitCode {
    let doc = error_document(command, input, &err);
    if emit(&render_document(&doc), output).is_err() {
        eprintln!("lorentzkit: {err}");
    }
    ExitCode::from(EXIT_INPUT_ERROR as u8)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => {
                    let field = match e.get(ContextKind::InvalidArg) {
                        Some(ContextValue::String(arg)) => arg.clone(),
                        _ => String::from("argv"),
                    };
                    fail(
                        None,
                        &[],
                        CliError::new("USAGE_ERROR", e.kind().to_string(), field),
                        None,
                    )
                }
            };
        }
    };
    let command: Command = args.subcommand.parse().expect("clap restricts the values");
    let output = args.output.as_ref();

    let input = match read_input(args.input.as_deref()) {
        Ok(bytes) => bytes,
        Err(err) => return fail(Some(command), &[], err, output),
    };
    let word_cap = match word_cap_from_env(std::env::var("LORENTZKIT_WORD_CAP").ok().as_deref()) {
        Ok(n) => n,
        Err(err) => return fail(Some(command), &input, err, output),
    };

    let outcome = run(&Request {
        command,
        input,
        precision_bits: args.precision_bits,
        word_cap,
    });
    if let Err(e) = emit(&outcome.to_bytes(), output) {
        eprintln!("lorentzkit: cannot write output: {e}");
        return ExitCode::from(EXIT_INPUT_ERROR as u8);
    }
    ExitCode::from(outcome.exit_code as u8)
}
