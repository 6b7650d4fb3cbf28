use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use magicpath_cli::report::HistogramSpec;
use magicpath_cli::{CliError, cmd_analyze, cmd_enumerate, cmd_render, cmd_report, cmd_sweep};
use magicpath_core::symmetry::ClassifierParams;

/// Magic-square trajectory toolkit: enumerate catalogs, analyze tour
/// distance patterns, and emit reports and figures.
#[derive(Parser)]
#[command(name = "magicpath", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the canonical catalog of an order and write a squares file.
    Enumerate {
        /// Square order (3 or 4).
        #[arg(long)]
        order: usize,
        /// Output squares file.
        #[arg(long)]
        out: PathBuf,
    },
    /// Analyze a squares file into JSON-line records.
    Analyze {
        /// Input squares file.
        #[arg(long)]
        squares: PathBuf,
        /// Output analysis file.
        #[arg(long)]
        out: PathBuf,
        /// Minimum palindromic run length for the Local class.
        #[arg(long, default_value_t = 9)]
        local_min_length: usize,
        /// Maximum mirror-pair mismatches for the Partial class.
        #[arg(long, default_value_t = 3)]
        partial_max_mismatch: usize,
    },
    /// Build the markdown report and CSV sidecars from an analysis file.
    Report {
        /// Input analysis file.
        #[arg(long)]
        analysis: PathBuf,
        /// Output markdown report; sidecars are written next to it.
        #[arg(long)]
        out: PathBuf,
        /// Histogram bin width.
        #[arg(long, default_value_t = 1.0)]
        hist_bin_width: f64,
        /// Histogram range as two values: start end.
        #[arg(long, num_args = 2, value_names = ["START", "END"],
              default_values_t = [20.0, 43.0])]
        hist_range: Vec<f64>,
    },
    /// Render one square as an SVG figure.
    Render {
        /// Input squares file.
        #[arg(long)]
        squares: PathBuf,
        /// 1-based index into the squares file.
        #[arg(long)]
        index: usize,
        /// Figure type.
        #[arg(long)]
        mode: Mode,
        /// Output SVG file.
        #[arg(long)]
        out: PathBuf,
    },
    /// Sweep the local-symmetry threshold and write the census CSV.
    Sweep {
        /// Input analysis file.
        #[arg(long)]
        analysis: PathBuf,
        /// Output CSV file.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Trajectory,
    Pattern,
}

impl From<Mode> for magicpath_cli::RenderMode {
    fn from(mode: Mode) -> Self {
        match mode {
            Mode::Trajectory => magicpath_cli::RenderMode::Trajectory,
            Mode::Pattern => magicpath_cli::RenderMode::Pattern,
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Enumerate { order, out } => cmd_enumerate(order, &out),
        Command::Analyze {
            squares,
            out,
            local_min_length,
            partial_max_mismatch,
        } => {
            let params = ClassifierParams::new(local_min_length, partial_max_mismatch)
                .map_err(|e| CliError::validation(e.to_string()))?;
            cmd_analyze(&squares, &out, &params)
        }
        Command::Report {
            analysis,
            out,
            hist_bin_width,
            hist_range,
        } => {
            let spec = HistogramSpec::new(hist_bin_width, hist_range[0], hist_range[1])?;
            cmd_report(&analysis, &out, &spec)
        }
        Command::Render {
            squares,
            index,
            mode,
            out,
        } => cmd_render(&squares, index, mode.into(), &out),
        Command::Sweep { analysis, out } => cmd_sweep(&analysis, &out),
    }
}

fn main() -> ExitCode {
    // All argument problems are validation failures (exit 1); --help and
    // --version exit 0.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
