//! Census report generation: totals, symmetry and Dudeney censuses as
//! markdown, plus histogram and Dudeney-census CSV sidecars.
//!
//! Everything here is recomputed from analysis records alone, so any number
//! in the report can be re-derived from the analysis file.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use magicpath_core::symmetry::SymmetryClass;

use crate::CliError;
use crate::analysis::AnalysisRecord;
use crate::sweep::{LOCAL_TARGET, sweep_rows};

/// Right-open histogram bins `[start + i·w, start + (i+1)·w)` covering
/// `[range_start, range_end)`. The defaults cover all order-4 totals with
/// unit bins.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistogramSpec {
    pub bin_width: f64,
    pub range_start: f64,
    pub range_end: f64,
}

impl Default for HistogramSpec {
    fn default() -> Self {
        HistogramSpec {
            bin_width: 1.0,
            range_start: 20.0,
            range_end: 43.0,
        }
    }
}

impl HistogramSpec {
    pub fn new(bin_width: f64, range_start: f64, range_end: f64) -> Result<Self, CliError> {
        if !bin_width.is_finite() || bin_width <= 0.0 {
            return Err(CliError::validation(format!(
                "histogram bin width must be positive, got {bin_width}"
            )));
        }
        if !range_start.is_finite() || !range_end.is_finite() || range_start >= range_end {
            return Err(CliError::validation(format!(
                "histogram range start {range_start} must be below end {range_end}"
            )));
        }
        Ok(HistogramSpec {
            bin_width,
            range_start,
            range_end,
        })
    }

    fn bin_count(&self) -> usize {
        ((self.range_end - self.range_start) / self.bin_width).ceil() as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistogramBin {
    pub start: f64,
    pub end: f64,
    pub count: usize,
}

/// Bins the totals; every value must fall inside the configured range.
pub fn histogram(totals: &[f64], spec: &HistogramSpec) -> Result<Vec<HistogramBin>, CliError> {
    let bins = spec.bin_count();
    let mut counts = vec![0usize; bins];
    for &t in totals {
        if t < spec.range_start {
            return Err(CliError::validation(format!(
                "total {t} below histogram range start {}",
                spec.range_start
            )));
        }
        let i = ((t - spec.range_start) / spec.bin_width) as usize;
        if i >= bins {
            return Err(CliError::validation(format!(
                "total {t} beyond histogram range end {}",
                spec.range_end
            )));
        }
        counts[i] += 1;
    }
    Ok(counts
        .into_iter()
        .enumerate()
        .map(|(i, count)| HistogramBin {
            start: spec.range_start + i as f64 * spec.bin_width,
            end: spec.range_start + (i + 1) as f64 * spec.bin_width,
            count,
        })
        .collect())
}

pub fn histogram_csv(bins: &[HistogramBin]) -> String {
    let mut out = String::from("bin_start,bin_end,count\n");
    for b in bins {
        writeln!(out, "{},{},{}", b.start, b.end, b.count).unwrap();
    }
    out
}

/// The markdown report plus its two CSV sidecars.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportBundle {
    pub markdown: String,
    pub histogram_csv: String,
    pub dudeney_csv: Option<String>,
}

pub fn build_report(
    records: &[AnalysisRecord],
    spec: &HistogramSpec,
) -> Result<ReportBundle, CliError> {
    if records.is_empty() {
        return Err(CliError::validation("analysis file has no records"));
    }
    let n = records.len();
    let order = records[0].order();

    // extremes; ties share the same bit pattern because records round-trip
    // exactly
    let min_total = records.iter().map(|r| r.total).fold(f64::INFINITY, f64::min);
    let max_total = records
        .iter()
        .map(|r| r.total)
        .fold(f64::NEG_INFINITY, f64::max);
    let mean_total = records.iter().map(|r| r.total).sum::<f64>() / n as f64;
    let argmin: Vec<usize> = records
        .iter()
        .filter(|r| r.total == min_total)
        .map(|r| r.index)
        .collect();
    let argmax: Vec<usize> = records
        .iter()
        .filter(|r| r.total == max_total)
        .map(|r| r.index)
        .collect();
    let per_city_of = |index: usize| {
        records
            .iter()
            .find(|r| r.index == index)
            .expect("argmin/argmax indices come from the records")
            .per_city_average
    };
    let min_per_city = per_city_of(argmin[0]);
    let max_per_city = per_city_of(argmax[0]);

    // symmetry census
    let reflexive = records.iter().filter(|r| r.reflexive).count();
    let mut class_census: BTreeMap<SymmetryClass, usize> = BTreeMap::new();
    for r in records {
        let class = r
            .symmetry_class()
            .ok_or_else(|| CliError::validation(format!("record {}: bad class", r.index)))?;
        *class_census.entry(class).or_insert(0) += 1;
    }

    // duplicate census from group ids
    let mut group_sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for r in records {
        *group_sizes.entry(r.duplicate_group_id).or_insert(0) += 1;
    }
    let distinct = group_sizes.len();
    let repeated_patterns = group_sizes.values().filter(|&&s| s >= 2).count();
    let duplicate_occurrences = n - distinct;
    let mut multiplicity_histogram: BTreeMap<usize, usize> = BTreeMap::new();
    for &size in group_sizes.values() {
        *multiplicity_histogram.entry(size).or_insert(0) += 1;
    }

    // histogram sidecar
    let totals: Vec<f64> = records.iter().map(|r| r.total).collect();
    let bins = histogram(&totals, spec)?;
    let histogram_csv = histogram_csv(&bins);

    // dudeney census (order 4)
    let dudeney = dudeney_census(records)?;
    let dudeney_csv = dudeney.as_ref().map(|census| {
        let mut out = String::from("group_id,member_count,anchor\n");
        for (id, count) in census {
            writeln!(out, "{},{},{}", id, count, anchor_label(*id)).unwrap();
        }
        out
    });

    // markdown
    let mut md = String::new();
    writeln!(md, "# Magic square trajectory report").unwrap();
    writeln!(md).unwrap();
    writeln!(
        md,
        "{n} records, order {order}. Indices are 1-based positions in the \
         lexicographically sorted catalog of canonical squares (this \
         toolkit's own ordering convention)."
    )
    .unwrap();
    writeln!(md).unwrap();
    writeln!(md, "## Total distances").unwrap();
    writeln!(md).unwrap();
    writeln!(
        md,
        "- min total: {min_total:.2} (index {})",
        join_indices(&argmin)
    )
    .unwrap();
    writeln!(
        md,
        "- max total: {max_total:.2} (index {})",
        join_indices(&argmax)
    )
    .unwrap();
    writeln!(md, "- mean total: {mean_total:.2}").unwrap();
    writeln!(md, "- per-city average of shortest tour: {min_per_city:.2}").unwrap();
    writeln!(md, "- per-city average of longest tour: {max_per_city:.2}").unwrap();
    writeln!(md).unwrap();
    writeln!(md, "## Distance-pattern census").unwrap();
    writeln!(md).unwrap();
    writeln!(md, "- reflexive: {reflexive} / {n}").unwrap();
    writeln!(
        md,
        "- distinct patterns: {distinct}, repeated: {duplicate_occurrences}"
    )
    .unwrap();
    writeln!(
        md,
        "  (repeated counts duplicate occurrences, {n} - {distinct}; \
         {repeated_patterns} distinct patterns occur more than once)"
    )
    .unwrap();
    write!(md, "- multiplicity histogram:").unwrap();
    for (mult, count) in &multiplicity_histogram {
        write!(md, " {mult}×{count}").unwrap();
    }
    writeln!(md).unwrap();
    write!(md, "- class census:").unwrap();
    for class in SymmetryClass::ALL {
        let count = class_census.get(&class).copied().unwrap_or(0);
        write!(md, " {} {count}", class.label()).unwrap();
    }
    writeln!(md).unwrap();

    if order == 4 {
        let non_reflexive = n - reflexive;
        let rows = sweep_rows(records);
        let best = rows
            .iter()
            .min_by_key(|row| row.local.abs_diff(LOCAL_TARGET))
            .expect("sweep always has rows");
        writeln!(md).unwrap();
        writeln!(md, "## Local-symmetry threshold sweep").unwrap();
        writeln!(md).unwrap();
        if best.local == LOCAL_TARGET {
            writeln!(
                md,
                "- local census hits the target {LOCAL_TARGET} over the {non_reflexive} \
                 non-reflexive patterns at local_min_length={}",
                best.local_min_length
            )
            .unwrap();
        } else {
            writeln!(
                md,
                "- no threshold reproduces a local census of {LOCAL_TARGET} over the \
                 {non_reflexive} non-reflexive patterns; closest is {} at \
                 local_min_length={}",
                best.local, best.local_min_length
            )
            .unwrap();
        }
    }

    if let Some(census) = &dudeney {
        writeln!(md).unwrap();
        writeln!(md, "## Dudeney groups").unwrap();
        writeln!(md).unwrap();
        writeln!(md, "| group | members | anchor |").unwrap();
        writeln!(md, "|------:|--------:|--------|").unwrap();
        for (id, count) in census {
            writeln!(md, "| {id} | {count} | {} |", anchor_label(*id)).unwrap();
        }
        writeln!(md).unwrap();
        for &id in &[3u8, 6u8] {
            let members = records.iter().filter(|r| r.dudeney_group == Some(id));
            let total = members.clone().count();
            let palindromic = members.filter(|r| r.reflexive).count();
            writeln!(
                md,
                "- group {id} palindromic leg sequences: {palindromic} / {total}"
            )
            .unwrap();
        }
        let outside = records
            .iter()
            .filter(|r| r.reflexive && r.dudeney_group != Some(3) && r.dudeney_group != Some(6))
            .count();
        writeln!(
            md,
            "- reflexive patterns outside groups 3 and 6: {outside}"
        )
        .unwrap();
    }

    writeln!(md).unwrap();
    writeln!(md, "## Sidecars").unwrap();
    writeln!(md).unwrap();
    writeln!(
        md,
        "- histogram CSV: right-open bins of width {}, range [{}, {})",
        spec.bin_width, spec.range_start, spec.range_end
    )
    .unwrap();
    if dudeney.is_some() {
        writeln!(md, "- Dudeney census CSV: group_id,member_count,anchor").unwrap();
    }

    Ok(ReportBundle {
        markdown: md,
        histogram_csv,
        dudeney_csv,
    })
}

/// Group id -> member count, when records carry Dudeney groups.
fn dudeney_census(records: &[AnalysisRecord]) -> Result<Option<Vec<(u8, usize)>>, CliError> {
    if records.iter().all(|r| r.dudeney_group.is_none()) {
        return Ok(None);
    }
    let mut census: BTreeMap<u8, usize> = BTreeMap::new();
    for r in records {
        let group = r.dudeney_group.ok_or_else(|| {
            CliError::validation(format!("record {} is missing its Dudeney group", r.index))
        })?;
        *census.entry(group).or_insert(0) += 1;
    }
    Ok(Some(census.into_iter().collect()))
}

/// The anchors are a fixed convention: group 1 holds the pandiagonal
/// squares, group 3 the associative ones, group 6 is the size-304 class.
fn anchor_label(id: u8) -> &'static str {
    match id {
        1 => "pandiagonal",
        3 => "associative",
        6 => "size304",
        _ => "derived",
    }
}

fn join_indices(indices: &[usize]) -> String {
    indices
        .iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}
