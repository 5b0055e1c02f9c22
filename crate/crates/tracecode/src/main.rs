use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use tracecode::config::{parse_coalition, parse_modulus};
use tracecode::export::{export, Target};
use tracecode::shares::{build_scheme, render_access, render_secret, ShareFile};
use tracecode::{report, verify, Format, RunConfig, UsageError};

/// Two-Lee-weight trace codes over F_{2^m}[u_1..u_k]/(u_i^2): parameters,
/// exhaustive verification, exports and Massey secret sharing.
#[derive(Parser)]
#[command(name = "tracecode", version)]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CodeArgs {
    #[arg(long)]
    m: u32,
    #[arg(long)]
    k: u32,
    /// Field modulus as a hex mask (`0x13`) or polynomial (`x^4+x+1`).
    #[arg(long)]
    modulus: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form parameters and bound checks; no enumeration.
    Info(CodeArgs),
    /// Enumerate the code and check every structural claim.
    Verify(CodeArgs),
    /// Export the generator matrix, all codewords or the weight table.
    Export {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, value_enum)]
        what: Target,
    },
    /// Secret sharing on the binary image.
    Sss {
        #[command(subcommand)]
        command: SssCommand,
    },
}

#[derive(Subcommand)]
enum SssCommand {
    /// Minimal access sets and dictators.
    Access {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = 0)]
        secret_position: usize,
    },
    /// Deal a secret bit and write the share file.
    Deal {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        secret: u8,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        secret_position: usize,
    },
    /// Recover the secret from a coalition's shares.
    Reconstruct {
        #[arg(long)]
        shares: PathBuf,
        /// Participant ids, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        coalition: String,
    },
}

enum Failure {
    /// Bad input or I/O; exit status 2.
    Usage(anyhow::Error),
    /// Some check failed; exit status 1.
    Claims,
}

impl From<UsageError> for Failure {
    fn from(e: UsageError) -> Self {
        Failure::Usage(e.into())
    }
}

fn config(args: &CodeArgs, cli: &Cli) -> Result<RunConfig, UsageError> {
    Ok(RunConfig {
        m: args.m,
        k: args.k,
        modulus: args.modulus.as_deref().map(parse_modulus).transpose()?,
        threads: cli.threads,
        format: cli.format,
        seed: None,
    })
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(Failure::Usage),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .context("writing to stdout")
                .map_err(Failure::Usage)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(UsageError("--threads must be positive".into()).into());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Failure::Usage(e.into()))?;
    }
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Info(args) => {
            let r = report::info(&config(args, cli)?)?;
            emit(out, &report::render_info(&r, cli.format))
        }
        Command::Verify(args) => {
            let r = verify::run(&config(args, cli)?)?;
            emit(out, &verify::render(&r, cli.format))?;
            if r.all_verified {
                Ok(())
            } else {
                Err(Failure::Claims)
            }
        }
        Command::Export { code, what } => emit(out, &export(&config(code, cli)?, *what)?),
        Command::Sss { command } => match command {
            SssCommand::Access {
                code,
                secret_position,
            } => {
                let scheme = build_scheme(&config(code, cli)?, *secret_position)?;
                let access = scheme
                    .minimal_access_sets()
                    .map_err(|e| Failure::Usage(e.into()))?;
                emit(out, &render_access(&access, cli.format))
            }
            SssCommand::Deal {
                code,
                secret,
                seed,
                secret_position,
            } => {
                if *secret > 1 {
                    return Err(UsageError(format!("secret must be 0 or 1, got {secret}")).into());
                }
                let cfg = RunConfig {
                    seed: Some(*seed),
                    ..config(code, cli)?
                };
                let scheme = build_scheme(&cfg, *secret_position)?;
                let file = ShareFile::new(&cfg, &scheme.deal(*secret))?;
                emit(out, &file.to_json())
            }
            SssCommand::Reconstruct { shares, coalition } => {
                let file = ShareFile::read(shares).map_err(Failure::Usage)?;
                let cfg = RunConfig {
                    seed: Some(file.seed),
                    format: cli.format,
                    ..file.config()?
                };
                let scheme = build_scheme(&cfg, file.secret_position)?;
                let members = parse_coalition(coalition)?;
                let secret = scheme
                    .reconstruct(&members, &file.shares())
                    .map_err(|e| Failure::Usage(e.into()))?;
                emit(out, &render_secret(secret, cli.format))
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Claims) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
