//! The five pipeline commands, shared by the binary and the test suites.
//! Each writes plain-text artifacts; identical inputs produce byte-identical
//! outputs.

use std::fs;
use std::path::{Path, PathBuf};

use magicpath_core::enumerate::enumerate_canonical;
use magicpath_core::symmetry::ClassifierParams;

use crate::analysis::analyze_squares;
use crate::formats::{
    ParsedSquares, analysis_file_string, parse_analysis_file, parse_squares_file,
    squares_file_string,
};
use crate::render::{RenderMode, render_svg};
use crate::report::{HistogramSpec, build_report};
use crate::sweep::{sweep_csv, sweep_rows};
use crate::CliError;

/// Writes the canonical catalog of the order as a squares file.
pub fn cmd_enumerate(order: usize, out: &Path) -> Result<(), CliError> {
    let catalog = enumerate_canonical(order).map_err(|e| CliError::validation(e.to_string()))?;
    let content = squares_file_string(order, catalog.squares());
    write_file(out, &content)
}

/// Runs the full analysis over a squares file and writes one record per
/// square as JSON lines.
pub fn cmd_analyze(squares: &Path, out: &Path, params: &ClassifierParams) -> Result<(), CliError> {
    let parsed = read_squares(squares)?;
    let records = analyze_squares(parsed.order, &parsed.squares, params)?;
    write_file(out, &analysis_file_string(&records))
}

/// Builds the markdown report plus CSV sidecars (`<out>.histogram.csv`, and
/// `<out>.dudeney.csv` for order-4 analyses).
pub fn cmd_report(analysis: &Path, out: &Path, spec: &HistogramSpec) -> Result<(), CliError> {
    let records = read_analysis(analysis)?;
    let bundle = build_report(&records, spec)?;
    write_file(out, &bundle.markdown)?;
    write_file(&sidecar(out, "histogram.csv"), &bundle.histogram_csv)?;
    if let Some(csv) = &bundle.dudeney_csv {
        write_file(&sidecar(out, "dudeney.csv"), csv)?;
    }
    Ok(())
}

/// Renders one square of a squares file (1-based index) as SVG.
pub fn cmd_render(
    squares: &Path,
    index: usize,
    mode: RenderMode,
    out: &Path,
) -> Result<(), CliError> {
    let parsed = read_squares(squares)?;
    if index == 0 || index > parsed.squares.len() {
        return Err(CliError::validation(format!(
            "index {index} out of range 1..={}",
            parsed.squares.len()
        )));
    }
    let svg = render_svg(&parsed.squares[index - 1], mode);
    write_file(out, &svg)
}

/// Writes the local-symmetry threshold sweep CSV.
pub fn cmd_sweep(analysis: &Path, out: &Path) -> Result<(), CliError> {
    let records = read_analysis(analysis)?;
    let rows = sweep_rows(&records);
    write_file(out, &sweep_csv(&rows))
}

fn read_squares(path: &Path) -> Result<ParsedSquares, CliError> {
    let content = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_squares_file(&content)
        .map_err(|e| CliError::validation(format!("{}: {e}", path.display())))
}

fn read_analysis(path: &Path) -> Result<Vec<crate::analysis::AnalysisRecord>, CliError> {
    let content = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_analysis_file(&content)
        .map_err(|e| CliError::validation(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, content: &str) -> Result<(), CliError> {
    fs::write(path, content).map_err(|e| CliError::io(path, e))
}

/// `report.md` -> `report.histogram.csv`
fn sidecar(out: &Path, suffix: &str) -> PathBuf {
    out.with_extension(suffix)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sidecar_replaces_extension() {
        assert_eq!(
            sidecar(Path::new("/tmp/report.md"), "histogram.csv"),
            PathBuf::from("/tmp/report.histogram.csv")
        );
    }
}
