use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use povm_cli::{
    cmd_check_extremal, cmd_decompose, cmd_enumerate, cmd_verify, CliError, DecomposeArgs,
};
use povm_decomp::ordered::DEFAULT_ENUM_CAP;
use povm_decomp::Strategy;

/// Decompose POVMs into convex combinations of extremal rank-1 POVMs.
#[derive(Debug, Parser)]
#[command(name = "povm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decompose a POVM file and write the result as JSON.
    Decompose {
        input: PathBuf,
        /// Vertex choice: first, fewest or maxq.
        #[arg(long, default_value = "first")]
        strategy: Strategy,
        /// Validation tolerance for positivity and completeness.
        #[arg(long)]
        tol: Option<f64>,
        /// Largest column count the ranked strategies will enumerate.
        #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
        enum_cap: usize,
        /// Output path, `<input stem>.decomposition.json` by default.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check that a decomposition reproduces the original POVM.
    Verify {
        original: PathBuf,
        decomposition: PathBuf,
        /// Largest accepted elementwise residual.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Report whether a POVM is extremal.
    CheckExtremal {
        input: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// List every vertex of the feasibility polytope with its Q value.
    Enumerate {
        input: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
        enum_cap: usize,
        /// Also write the catalog as JSON.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or_default();
            let message = first.strip_prefix("error: ").unwrap_or(first);
            let err = CliError::parse("Usage", message, None);
            eprintln!("{}", err.line());
            return err.exit_code();
        }
    };
    let result = match cli.command {
        Command::Decompose {
            input,
            strategy,
            tol,
            enum_cap,
            output,
        } => cmd_decompose(&DecomposeArgs {
            input,
            strategy,
            tol,
            enum_cap,
            output,
        }),
        Command::Verify {
            original,
            decomposition,
            tol,
        } => cmd_verify(&original, &decomposition, tol),
        Command::CheckExtremal { input, tol } => cmd_check_extremal(&input, tol),
        Command::Enumerate {
            input,
            tol,
            enum_cap,
            output,
        } => cmd_enumerate(&input, tol, enum_cap, output.as_deref()),
    };
    match result {
        Ok(report) => {
            print!("{}", report.text);
            report.exit_code()
        }
        Err(err) => {
            eprintln!("{}", err.line());
            err.exit_code()
        }
    }
}
