//! Command-line front end of `kpaths-core`: computes paths, simulates the
//! limiting series, compares the two and writes CSV, JSON or SVG artifacts.
//!
//! Exit codes: 0 on success, 1 when the computation rejects its input
//! (composite modulus, zero parameter, ...) or IO fails, 2 on usage errors.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod exec;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::Parser;

use args::{Cli, Command};
use commands::Artifact;
pub use error::CliError;
pub use exec::RayonExecutor;

/// Parses `argv` (program name first), runs the command and returns the
/// process exit code. Written artifact paths go to standard output.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let argv = match config::expand(argv.into_iter().map(Into::into).collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    let workers = match cli.run.workers {
        Some(w) => w as usize,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let exec = RayonExecutor::new(workers)?;
    let seed = cli.run.seed;
    let artifact = match &cli.command {
        Command::Path(a) => commands::path(a, seed)?,
        Command::Simulate(a) => commands::simulate(a, seed)?,
        Command::Moments(a) => commands::moments(&exec, a, seed)?,
        Command::Dist(a) => commands::dist(&exec, a, seed)?,
        Command::Tails(a) => commands::tails(&exec, a, seed)?,
        Command::Shortsum(a) => commands::shortsum(&exec, a, seed)?,
        Command::Sweep(a) => commands::sweep(&exec, a, seed)?,
    };
    write(&artifact, cli.run.output.as_ref(), &cli.run.output_dir)
}

fn write(
    artifact: &Artifact,
    output: Option<&PathBuf>,
    dir: &std::path::Path,
) -> Result<(), CliError> {
    match commands::destination(artifact, output, dir) {
        None => std::io::stdout()
            .write_all(&artifact.bytes)
            .map_err(|source| CliError::Io {
                path: "-".into(),
                source,
            }),
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent).map_err(|source| CliError::Io {
                    path: parent.to_path_buf(),
                    source,
                })?;
            }
            std::fs::write(&path, &artifact.bytes).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            println!("{}", path.display());
            Ok(())
        }
    }
}
