//! Distance-pattern symmetry classification: reflexive (palindromic), local,
//! periodic, and partial symmetry, plus the duplicate-pattern census.
//!
//! All comparisons are exact integer comparisons on squared leg lengths;
//! `√a = √b` iff `a = b` for nonnegative integers, so no tolerance is needed
//! anywhere. The classification functions accept plain slices so arbitrary
//! integer sequences can be analyzed, not only sequences arising from a
//! square.

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::trajectory::LegSequence;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error("local_min_length {0} out of range 2..=15")]
    LocalMinLengthOutOfRange(usize),
    #[error("partial_max_mismatch {0} out of range 1..=7")]
    PartialMaxMismatchOutOfRange(usize),
    #[error("unknown symmetry class label {0:?}")]
    UnknownClassLabel(String),
}

/// Thresholds for the priority classifier. The defaults are calibration
/// starting points; `local_min_length` is meant to be swept.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifierParams {
    /// Minimum length of a contiguous palindromic run to count as local
    /// symmetry.
    pub local_min_length: usize,
    /// Maximum number of mismatched mirror pairs to count as partial
    /// symmetry.
    pub partial_max_mismatch: usize,
}

impl ClassifierParams {
    pub fn new(
        local_min_length: usize,
        partial_max_mismatch: usize,
    ) -> Result<ClassifierParams, SymmetryError> {
        if !(2..=15).contains(&local_min_length) {
            return Err(SymmetryError::LocalMinLengthOutOfRange(local_min_length));
        }
        if !(1..=7).contains(&partial_max_mismatch) {
            return Err(SymmetryError::PartialMaxMismatchOutOfRange(
                partial_max_mismatch,
            ));
        }
        Ok(ClassifierParams {
            local_min_length,
            partial_max_mismatch,
        })
    }
}

impl Default for ClassifierParams {
    fn default() -> Self {
        ClassifierParams {
            local_min_length: 9,
            partial_max_mismatch: 3,
        }
    }
}

/// Single label assigned by the priority classifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymmetryClass {
    Reflexive,
    Local,
    Periodic,
    Partial,
    Other,
}

impl SymmetryClass {
    pub const ALL: [SymmetryClass; 5] = [
        SymmetryClass::Reflexive,
        SymmetryClass::Local,
        SymmetryClass::Periodic,
        SymmetryClass::Partial,
        SymmetryClass::Other,
    ];

    pub fn label(self) -> &'static str {
        match self {
            SymmetryClass::Reflexive => "Reflexive",
            SymmetryClass::Local => "Local",
            SymmetryClass::Periodic => "Periodic",
            SymmetryClass::Partial => "Partial",
            SymmetryClass::Other => "Other",
        }
    }
}

impl fmt::Display for SymmetryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for SymmetryClass {
    type Err = SymmetryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SymmetryClass::ALL
            .into_iter()
            .find(|c| c.label() == s)
            .ok_or_else(|| SymmetryError::UnknownClassLabel(s.to_string()))
    }
}

/// Per-sequence classification result: the assigned class plus every raw
/// metric, so the taxonomy can be re-cut with different thresholds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryRecord {
    pub reflexive: bool,
    pub mismatch_pairs: usize,
    pub longest_local_palindrome_length: usize,
    pub period: Option<usize>,
    pub assigned_class: SymmetryClass,
}

/// True iff the sequence equals its own reversal.
pub fn is_palindrome(legs: &[u32]) -> bool {
    legs.iter().eq(legs.iter().rev())
}

/// Number of mirror pairs `(i, L+1-i)` that disagree; 0 iff palindrome.
/// A center entry (odd length) is unconstrained.
pub fn mismatch_pairs(legs: &[u32]) -> usize {
    let l = legs.len();
    (0..l / 2).filter(|&i| legs[i] != legs[l - 1 - i]).count()
}

/// A contiguous palindromic run; `start` is 1-based to match leg indexing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalPalindrome {
    pub start: usize,
    pub len: usize,
}

/// The leftmost longest contiguous palindromic run. A single element is a
/// palindrome, so the result length is at least 1 for non-empty input.
pub fn longest_local_palindrome(legs: &[u32]) -> LocalPalindrome {
    let l = legs.len();
    for len in (1..=l).rev() {
        for start in 0..=l - len {
            if is_palindrome(&legs[start..start + len]) {
                return LocalPalindrome {
                    start: start + 1,
                    len,
                };
            }
        }
    }
    LocalPalindrome { start: 1, len: 0 }
}

/// The least period `p ≥ 2` with `legs[i] = legs[i+p]` for all valid `i`,
/// provided the motif repeats at least twice in full (`2p ≤ L`). `None` if
/// there is no such period.
pub fn detect_period(legs: &[u32]) -> Option<usize> {
    let l = legs.len();
    (2..=l / 2).find(|&p| (0..l - p).all(|i| legs[i] == legs[i + p]))
}

/// Priority classification: Reflexive, then Local, then Periodic, then
/// Partial, then Other. All metrics are populated regardless of the class.
pub fn classify(legs: &[u32], params: &ClassifierParams) -> SymmetryRecord {
    let mismatch = mismatch_pairs(legs);
    let reflexive = mismatch == 0;
    let longest = longest_local_palindrome(legs).len;
    let period = detect_period(legs);

    let assigned_class = if reflexive {
        SymmetryClass::Reflexive
    } else if longest >= params.local_min_length {
        SymmetryClass::Local
    } else if period.is_some() {
        SymmetryClass::Periodic
    } else if mismatch <= params.partial_max_mismatch {
        SymmetryClass::Partial
    } else {
        SymmetryClass::Other
    };

    SymmetryRecord {
        reflexive,
        mismatch_pairs: mismatch,
        longest_local_palindrome_length: longest,
        period,
        assigned_class,
    }
}

/// Duplicate-pattern census over a catalog of leg sequences.
///
/// Group ids are stable and content-derived: the id of a group is the
/// smallest 1-based catalog index among its members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DuplicateCensus {
    /// Number of distinct sequences.
    pub distinct_count: usize,
    /// Number of distinct sequences occurring at least twice.
    pub repeated_pattern_count: usize,
    /// multiplicity -> number of distinct sequences with that multiplicity.
    pub multiplicity_histogram: BTreeMap<usize, usize>,
    /// Group id per catalog position (parallel to the input).
    pub group_ids: Vec<usize>,
}

impl DuplicateCensus {
    /// Number of sequences that repeat an earlier one: Σ (multiplicity - 1)
    /// over all groups, equal to catalog size minus `distinct_count`.
    pub fn duplicate_occurrences(&self) -> usize {
        self.multiplicity_histogram
            .iter()
            .map(|(&m, &count)| (m - 1) * count)
            .sum()
    }

    /// Number of sequences occurring exactly once.
    pub fn singleton_count(&self) -> usize {
        self.multiplicity_histogram.get(&1).copied().unwrap_or(0)
    }
}

pub fn duplicate_census(catalog_legs: &[LegSequence]) -> DuplicateCensus {
    let mut groups: HashMap<&[u32], Vec<usize>> = HashMap::new();
    for (i, legs) in catalog_legs.iter().enumerate() {
        groups.entry(legs.legs_squared()).or_default().push(i);
    }

    let mut multiplicity_histogram = BTreeMap::new();
    let mut repeated_pattern_count = 0;
    let mut group_ids = vec![0; catalog_legs.len()];
    for members in groups.values() {
        *multiplicity_histogram.entry(members.len()).or_insert(0) += 1;
        if members.len() >= 2 {
            repeated_pattern_count += 1;
        }
        let id = members[0] + 1;
        for &m in members {
            group_ids[m] = id;
        }
    }

    DuplicateCensus {
        distinct_count: groups.len(),
        repeated_pattern_count,
        multiplicity_histogram,
        group_ids,
    }
}
