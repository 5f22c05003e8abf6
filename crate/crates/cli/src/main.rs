use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use pact_cli::{emit, Format};

#[derive(Parser)]
#[command(name = "pact", version, about = "Partial actions, partial crossed products and partial representations")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run every `cmd` line of a spec file.
    Run {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parse and resolve names only.
    Check { file: PathBuf },
}

fn read(path: &PathBuf) -> Result<String, ExitCode> {
    std::fs::read_to_string(path).map_err(|e| {
        eprintln!("pact: {}: {e}", path.display());
        ExitCode::from(2)
    })
}

fn configure_threads() {
    if let Some(n) = std::env::var("PACT_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // a failure means the pool already exists, which is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match cli.command {
        Cmd::Check { file } => {
            let text = match read(&file) {
                Ok(t) => t,
                Err(code) => return code,
            };
            match pact_cli::check(&text) {
                Ok(doc) => {
                    println!("{}: ok, {} declaration(s)", file.display(), doc.items.len());
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("{}:{e}", file.display());
                    ExitCode::from(2)
                }
            }
        }
        Cmd::Run { file, format, out } => {
            let text = match read(&file) {
                Ok(t) => t,
                Err(code) => return code,
            };
            let report = match pact_cli::parse_spec(&text).and_then(|doc| pact_cli::run(&doc)) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("{}:{e}", file.display());
                    return ExitCode::from(2);
                }
            };
            let mut bytes = emit(&report, format);
            if format == Format::Json {
                bytes.push(b'\n');
            }
            let written = match &out {
                Some(path) => std::fs::write(path, &bytes).map_err(|e| format!("{}: {e}", path.display())),
                None => {
                    use std::io::Write;
                    std::io::stdout().write_all(&bytes).map_err(|e| e.to_string())
                }
            };
            if let Err(e) = written {
                eprintln!("pact: {e}");
                return ExitCode::from(2);
            }
            if report.all_ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
