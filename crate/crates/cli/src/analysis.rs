//! Per-square analysis records: the full pipeline output persisted to disk,
//! one record per input square.

use serde::Deserialize;

use magicpath_core::dudeney::build_group_table;
use magicpath_core::enumerate::{CanonicalCatalog, enumerate_canonical};
use magicpath_core::symmetry::{ClassifierParams, SymmetryClass, classify, duplicate_census};
use magicpath_core::trajectory::{LegSequence, leg_squares, trajectory_stats};
use magicpath_core::Square;

use crate::CliError;

/// Everything the pipeline knows about one square. `index` is the 1-based
/// position in the analyzed file; for a catalog file this is the catalog
/// index. `dudeney_group` is present for order 4 only.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct AnalysisRecord {
    pub index: usize,
    pub cells: Vec<u8>,
    pub legs_squared: Vec<u32>,
    pub total: f64,
    pub per_city_average: f64,
    pub reflexive: bool,
    pub mismatch_pairs: usize,
    pub longest_local_palindrome_length: usize,
    pub period: Option<usize>,
    pub assigned_class: String,
    pub dudeney_group: Option<u8>,
    pub duplicate_group_id: usize,
    pub is_associative: bool,
    pub is_pandiagonal: bool,
}

impl AnalysisRecord {
    /// Order of the underlying square, from the cell count.
    pub fn order(&self) -> usize {
        if self.cells.len() == 9 { 3 } else { 4 }
    }

    pub fn symmetry_class(&self) -> Option<SymmetryClass> {
        self.assigned_class.parse().ok()
    }

    /// One JSON object, fixed field order, floats with 17 significant
    /// digits so re-parsing reproduces the exact bit pattern.
    pub fn to_json_line(&self) -> String {
        let period = match self.period {
            Some(p) => p.to_string(),
            None => "null".to_string(),
        };
        let dudeney = match self.dudeney_group {
            Some(g) => g.to_string(),
            None => "null".to_string(),
        };
        format!(
            "{{\"index\":{},\"cells\":{},\"legs_squared\":{},\"total\":{},\
             \"per_city_average\":{},\"reflexive\":{},\"mismatch_pairs\":{},\
             \"longest_local_palindrome_length\":{},\"period\":{},\
             \"assigned_class\":\"{}\",\"dudeney_group\":{},\
             \"duplicate_group_id\":{},\"is_associative\":{},\"is_pandiagonal\":{}}}",
            self.index,
            json_array(&self.cells),
            json_array(&self.legs_squared),
            json_float(self.total),
            json_float(self.per_city_average),
            self.reflexive,
            self.mismatch_pairs,
            self.longest_local_palindrome_length,
            period,
            self.assigned_class,
            dudeney,
            self.duplicate_group_id,
            self.is_associative,
            self.is_pandiagonal,
        )
    }

    /// Structural consistency checks applied when reading records back.
    pub fn validate(&self) -> Result<(), String> {
        if self.cells.len() != 9 && self.cells.len() != 16 {
            return Err(format!("record has {} cells, expected 9 or 16", self.cells.len()));
        }
        if self.legs_squared.len() != self.cells.len() - 1 {
            return Err(format!(
                "record has {} legs for {} cells",
                self.legs_squared.len(),
                self.cells.len()
            ));
        }
        if self.index == 0 {
            return Err("record index must be 1-based".to_string());
        }
        if self.symmetry_class().is_none() {
            return Err(format!("unknown symmetry class {:?}", self.assigned_class));
        }
        if self.reflexive != (self.mismatch_pairs == 0) {
            return Err("reflexive flag disagrees with mismatch_pairs".to_string());
        }
        if let Some(g) = self.dudeney_group
            && !(1..=12).contains(&g)
        {
            return Err(format!("dudeney group {g} out of range 1..=12"));
        }
        Ok(())
    }
}

/// 17 significant digits, enough for an exact f64 round trip.
fn json_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn json_array<T: std::fmt::Display>(values: &[T]) -> String {
    let mut out = String::from("[");
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&v.to_string());
    }
    out.push(']');
    out
}

/// Runs the full per-square pipeline over a parsed squares file.
///
/// Dudeney groups are classified against the table built from the complete
/// order-4 catalog; when the input itself is that catalog it is reused,
/// otherwise the catalog is enumerated on the fly.
pub fn analyze_squares(
    order: usize,
    squares: &[Square],
    params: &ClassifierParams,
) -> Result<Vec<AnalysisRecord>, CliError> {
    let legs: Vec<LegSequence> = squares.iter().map(leg_squares).collect();
    let census = duplicate_census(&legs);

    let dudeney_groups: Option<Vec<u8>> = if order == 4 {
        let catalog = order_4_catalog(squares)?;
        let table = build_group_table(&catalog)
            .map_err(|e| CliError::validation(format!("dudeney classification failed: {e}")))?;
        let groups = squares
            .iter()
            .map(|s| table.classify(s))
            .collect::<Result<Vec<u8>, _>>()
            .map_err(|e| CliError::validation(format!("dudeney classification failed: {e}")))?;
        Some(groups)
    } else {
        None
    };

    let records = squares
        .iter()
        .enumerate()
        .map(|(i, square)| {
            let stats = trajectory_stats(&legs[i]);
            let symmetry = classify(legs[i].legs_squared(), params);
            AnalysisRecord {
                index: i + 1,
                cells: square.cells().to_vec(),
                legs_squared: legs[i].legs_squared().to_vec(),
                total: stats.total_distance,
                per_city_average: stats.per_city_average,
                reflexive: symmetry.reflexive,
                mismatch_pairs: symmetry.mismatch_pairs,
                longest_local_palindrome_length: symmetry.longest_local_palindrome_length,
                period: symmetry.period,
                assigned_class: symmetry.assigned_class.label().to_string(),
                dudeney_group: dudeney_groups.as_ref().map(|g| g[i]),
                duplicate_group_id: census.group_ids[i],
                is_associative: square.is_associative(),
                is_pandiagonal: square.is_pandiagonal(),
            }
        })
        .collect();
    Ok(records)
}

fn order_4_catalog(squares: &[Square]) -> Result<CanonicalCatalog, CliError> {
    let is_full_catalog = squares.len() == 880
        && squares.windows(2).all(|w| w[0].cells() < w[1].cells())
        && squares.iter().all(Square::is_canonical);
    let catalog = if is_full_catalog {
        CanonicalCatalog::from_canonical_squares(4, squares.to_vec())
    } else {
        enumerate_canonical(4)
    };
    catalog.map_err(|e: magicpath_core::EnumerateError| CliError::validation(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use magicpath_core::enumerate::enumerate_canonical;

    #[test]
    fn order_3_records() {
        let catalog = enumerate_canonical(3).unwrap();
        let records =
            analyze_squares(3, catalog.squares(), &ClassifierParams::default()).unwrap();
        assert_eq!(records.len(), 1);
        let r = &records[0];
        assert_eq!(r.index, 1);
        assert_eq!(r.legs_squared, vec![5, 5, 1, 2, 2, 1, 5, 5]);
        assert!(r.reflexive);
        assert_eq!(r.assigned_class, "Reflexive");
        assert_eq!(r.dudeney_group, None);
        assert_eq!(r.duplicate_group_id, 1);
        assert!(r.is_associative);
        assert!(!r.is_pandiagonal);
        let closed_form = 4.0 * 5f64.sqrt() + 2.0 * 2f64.sqrt() + 2.0;
        assert!((r.total - closed_form).abs() < 1e-12);
        assert!((r.per_city_average - closed_form / 8.0).abs() < 1e-12);
    }

    #[test]
    fn json_line_round_trips_exactly() {
        let catalog = enumerate_canonical(3).unwrap();
        let records =
            analyze_squares(3, catalog.squares(), &ClassifierParams::default()).unwrap();
        let line = records[0].to_json_line();
        let parsed: AnalysisRecord = serde_json::from_str(&line).unwrap();
        assert_eq!(parsed, records[0]);
        assert_eq!(parsed.total.to_bits(), records[0].total.to_bits());
    }

    #[test]
    fn validate_rejects_inconsistent_records() {
        let catalog = enumerate_canonical(3).unwrap();
        let mut record = analyze_squares(3, catalog.squares(), &ClassifierParams::default())
            .unwrap()
            .remove(0);
        record.mismatch_pairs = 1;
        assert!(record.validate().is_err());
    }
}
