//! Threshold sweep: re-classifies the non-reflexive patterns for every
//! `local_min_length` in 2..=15 (other parameters at defaults) from the raw
//! metrics already present in analysis records.

use std::fmt::Write as _;

use magicpath_core::symmetry::ClassifierParams;

use crate::analysis::AnalysisRecord;

/// Local-symmetry census the sweep tries to reproduce when calibrating
/// `local_min_length`.
pub const LOCAL_TARGET: usize = 252;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepRow {
    pub local_min_length: usize,
    pub local: usize,
    pub periodic: usize,
    pub partial: usize,
    pub other: usize,
    pub matches_target: bool,
}

/// One row per threshold. Classification priority matches the analyzer:
/// local, then periodic, then partial (at the default mismatch bound), then
/// other; reflexive records are excluded up front.
pub fn sweep_rows(records: &[AnalysisRecord]) -> Vec<SweepRow> {
    let partial_max_mismatch = ClassifierParams::default().partial_max_mismatch;
    (2..=15)
        .map(|local_min_length| {
            let mut row = SweepRow {
                local_min_length,
                local: 0,
                periodic: 0,
                partial: 0,
                other: 0,
                matches_target: false,
            };
            for r in records.iter().filter(|r| !r.reflexive) {
                if r.longest_local_palindrome_length >= local_min_length {
                    row.local += 1;
                } else if r.period.is_some() {
                    row.periodic += 1;
                } else if r.mismatch_pairs <= partial_max_mismatch {
                    row.partial += 1;
                } else {
                    row.other += 1;
                }
            }
            row.matches_target = row.local == LOCAL_TARGET;
            row
        })
        .collect()
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("local_min_length,local,periodic,partial,other,matches_target\n");
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.local_min_length, r.local, r.periodic, r.partial, r.other, r.matches_target
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(reflexive: bool, longest: usize, period: Option<usize>, mismatch: usize) -> AnalysisRecord {
        AnalysisRecord {
            index: 1,
            cells: vec![0; 16],
            legs_squared: vec![1; 15],
            total: 15.0,
            per_city_average: 1.0,
            reflexive,
            mismatch_pairs: mismatch,
            longest_local_palindrome_length: longest,
            period,
            assigned_class: "Other".to_string(),
            dudeney_group: Some(1),
            duplicate_group_id: 1,
            is_associative: false,
            is_pandiagonal: false,
        }
    }

    #[test]
    fn has_one_row_per_threshold() {
        let rows = sweep_rows(&[record(false, 5, None, 2)]);
        assert_eq!(rows.len(), 14);
        assert_eq!(rows[0].local_min_length, 2);
        assert_eq!(rows[13].local_min_length, 15);
    }

    #[test]
    fn local_counts_are_monotone_non_increasing() {
        let records = [
            record(false, 3, None, 2),
            record(false, 7, Some(3), 5),
            record(false, 12, None, 1),
            record(true, 15, None, 0),
        ];
        let rows = sweep_rows(&records);
        for w in rows.windows(2) {
            assert!(w[0].local >= w[1].local);
        }
        // reflexive records never contribute
        assert_eq!(rows[0].local + rows[0].periodic + rows[0].partial + rows[0].other, 3);
    }

    #[test]
    fn priority_is_local_periodic_partial_other() {
        let records = [record(false, 7, Some(3), 5)];
        let rows = sweep_rows(&records);
        // threshold 2..=7: local; 8..: periodic wins over partial/other
        assert_eq!(rows[5].local_min_length, 7);
        assert_eq!(rows[5].local, 1);
        assert_eq!(rows[6].local_min_length, 8);
        assert_eq!(rows[6].periodic, 1);
        assert_eq!(rows[6].local, 0);
    }

    #[test]
    fn csv_shape() {
        let rows = sweep_rows(&[record(false, 5, None, 2)]);
        let csv = sweep_csv(&rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 15);
        assert_eq!(
            lines[0],
            "local_min_length,local,periodic,partial,other,matches_target"
        );
        assert!(lines[1].starts_with("2,"));
    }
}
