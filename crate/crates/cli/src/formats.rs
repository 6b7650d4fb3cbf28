//! Plain-text data formats.
//!
//! Squares file: a header `# magicpath squares order=N count=M` followed by
//! one square per line, `N²` space-separated integers in row-major order.
//! Parsing and re-emitting a valid file is byte-identical.
//!
//! Analysis file: one JSON object per line with the `AnalysisRecord` fields
//! in a fixed order; floats carry 17 significant digits so values round-trip
//! exactly.

use std::fmt::Write as _;

use magicpath_core::Square;
use thiserror::Error;

use crate::analysis::AnalysisRecord;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line 1: expected header `# magicpath squares order=N count=M`, got {0:?}")]
    BadHeader(String),
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: square {index} is not magic")]
    NotMagic { line: usize, index: usize },
    #[error("header promises {expected} squares, file has {got}")]
    CountMismatch { expected: usize, got: usize },
    #[error("unsupported order {0}: only orders 3 and 4 are handled")]
    UnsupportedOrder(usize),
    #[error("file has no records")]
    Empty,
}

/// Parsed squares file: the declared order plus the squares in file order.
/// Line order is meaningful; 1-based positions serve as indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedSquares {
    pub order: usize,
    pub squares: Vec<Square>,
}

pub fn squares_file_string(order: usize, squares: &[Square]) -> String {
    let mut out = format!("# magicpath squares order={order} count={}\n", squares.len());
    for square in squares {
        let mut line = String::new();
        for (i, v) in square.cells().iter().enumerate() {
            if i > 0 {
                line.push(' ');
            }
            write!(line, "{v}").unwrap();
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub fn parse_squares_file(content: &str) -> Result<ParsedSquares, FormatError> {
    let mut lines = content.lines();
    let header = lines.next().unwrap_or("");
    let (order, count) = parse_header(header)?;
    if order != 3 && order != 4 {
        return Err(FormatError::UnsupportedOrder(order));
    }

    let mut squares = Vec::with_capacity(count);
    for (i, line) in lines.enumerate() {
        let line_no = i + 2;
        if line.trim().is_empty() {
            return Err(FormatError::Malformed {
                line: line_no,
                reason: "blank line".to_string(),
            });
        }
        let cells: Vec<u8> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u8>().map_err(|_| FormatError::Malformed {
                    line: line_no,
                    reason: format!("invalid value {tok:?}"),
                })
            })
            .collect::<Result<_, _>>()?;
        if cells.len() != order * order {
            return Err(FormatError::Malformed {
                line: line_no,
                reason: format!("expected {} values, got {}", order * order, cells.len()),
            });
        }
        let square = Square::new(order, cells).map_err(|_| FormatError::NotMagic {
            line: line_no,
            index: i + 1,
        })?;
        squares.push(square);
    }

    if squares.len() != count {
        return Err(FormatError::CountMismatch {
            expected: count,
            got: squares.len(),
        });
    }
    Ok(ParsedSquares { order, squares })
}

fn parse_header(header: &str) -> Result<(usize, usize), FormatError> {
    let bad = || FormatError::BadHeader(header.to_string());
    let rest = header.strip_prefix("# magicpath squares ").ok_or_else(bad)?;
    let mut order = None;
    let mut count = None;
    for field in rest.split(' ') {
        if let Some(v) = field.strip_prefix("order=") {
            order = v.parse::<usize>().ok();
        } else if let Some(v) = field.strip_prefix("count=") {
            count = v.parse::<usize>().ok();
        } else {
            return Err(bad());
        }
    }
    match (order, count) {
        (Some(order), Some(count)) => Ok((order, count)),
        _ => Err(bad()),
    }
}

/// Serializes records as JSON lines with a fixed field order.
pub fn analysis_file_string(records: &[AnalysisRecord]) -> String {
    let mut out = String::new();
    for record in records {
        out.push_str(&record.to_json_line());
        out.push('\n');
    }
    out
}

pub fn parse_analysis_file(content: &str) -> Result<Vec<AnalysisRecord>, FormatError> {
    let mut records = Vec::new();
    for (i, line) in content.lines().enumerate() {
        let line_no = i + 1;
        let record: AnalysisRecord =
            serde_json::from_str(line).map_err(|e| FormatError::Malformed {
                line: line_no,
                reason: e.to_string(),
            })?;
        record.validate().map_err(|reason| FormatError::Malformed {
            line: line_no,
            reason,
        })?;
        records.push(record);
    }
    if records.is_empty() {
        return Err(FormatError::Empty);
    }
    Ok(records)
}
