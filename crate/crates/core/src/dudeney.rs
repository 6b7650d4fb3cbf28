//! Dudeney classification of order-4 magic squares by the geometry of their
//! complement-pair chords.
//!
//! For each value `k` in 1..=8, the chord of `k` is the unordered cell pair
//! `{pos(k), pos(17-k)}`. The 8 chords cover the grid exactly, and their
//! shape up to rotation/reflection is the classification key: the 880
//! canonical squares fall into 12 chord classes, the Dudeney groups.
//!
//! Group ids follow anchor rules: the class holding the pandiagonal squares
//! is group 1, the class of associative squares is group 3, and the unique
//! class of size 304 is group 6. The remaining classes are ordered by
//! descending size, then by canonical encoding, and assigned the remaining
//! ids in ascending order. The numbering of the non-anchored groups is this
//! crate's own stable convention.

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::enumerate::CanonicalCatalog;
use crate::square::{Cell, Square, Transform};

/// Canonical count of order-4 magic squares; a full catalog is required to
/// build the group table.
const ORDER_4_CANONICAL_COUNT: usize = 880;
const DUDENEY_GROUP_COUNT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DudeneyError {
    #[error("Dudeney classification requires order 4, got order {0}")]
    UnsupportedOrder(usize),
    #[error("catalog has {0} squares; the full order-4 catalog of 880 is required")]
    IncompleteCatalog(usize),
    #[error(
        "chord pattern is not in the group table; the catalog used to build \
         the table did not cover this square's class"
    )]
    UnknownChordPattern,
    #[error("anchor classes are not distinct or not unique: {0}")]
    AmbiguousAnchors(String),
    #[error("expected 12 chord classes, found {primary}{}", diagnostic_suffix(.fallback))]
    UnexpectedClassCount {
        primary: usize,
        fallback: Option<usize>,
        /// Sizes of the classes found, descending: the diagnostic census.
        primary_sizes: Vec<usize>,
        fallback_sizes: Vec<usize>,
    },
}

fn diagnostic_suffix(fallback: &Option<usize>) -> String {
    match fallback {
        Some(n) => format!(" (orientation-sensitive fallback found {n})"),
        None => String::new(),
    }
}

/// The 8 complement chords of a square together with a transform-invariant
/// canonical encoding.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChordPattern {
    chords: Vec<(Cell, Cell)>,
    canonical_encoding: Vec<u8>,
}

impl ChordPattern {
    /// Chords as cell pairs, each pair ordered and the list sorted.
    pub fn chords(&self) -> &[(Cell, Cell)] {
        &self.chords
    }

    /// Lexicographically least serialization of the chord set over all 8
    /// dihedral transforms. Identical for a square and all its transforms,
    /// and for a square and its complement.
    pub fn canonical_encoding(&self) -> &[u8] {
        &self.canonical_encoding
    }
}

/// Computes the complement-pair chords of an order-4 square.
///
/// Panics if the square is not order 4.
pub fn chord_pattern(square: &Square) -> ChordPattern {
    assert_eq!(square.order(), 4, "chord patterns are an order-4 notion");
    let pos = square.value_positions();
    let chords: Vec<(Cell, Cell)> = (1..=8)
        .map(|k| order_pair(pos[k - 1], pos[16 - k]))
        .collect();

    let canonical_encoding = Transform::ALL
        .into_iter()
        .map(|t| {
            let mapped: Vec<(Cell, Cell)> = chords
                .iter()
                .map(|&(a, b)| order_pair(t.map(a, 4), t.map(b, 4)))
                .collect();
            encode_chords(&mapped)
        })
        .min()
        .expect("transform list is non-empty");

    let mut chords = chords;
    chords.sort_unstable();
    ChordPattern {
        chords,
        canonical_encoding,
    }
}

/// Orientation-sensitive encoding of a square's chords (no minimization over
/// transforms). Used by the fallback partition when the transform-invariant
/// encoding merges classes.
fn oriented_encoding(square: &Square) -> Vec<u8> {
    let pos = square.value_positions();
    let chords: Vec<(Cell, Cell)> = (1..=8)
        .map(|k| order_pair(pos[k - 1], pos[16 - k]))
        .collect();
    encode_chords(&chords)
}

fn order_pair(a: Cell, b: Cell) -> (Cell, Cell) {
    if a <= b { (a, b) } else { (b, a) }
}

/// Fixed-width byte serialization: each chord as two cell indices 0..16,
/// pairs sorted.
fn encode_chords(chords: &[(Cell, Cell)]) -> Vec<u8> {
    let mut pairs: Vec<[u8; 2]> = chords
        .iter()
        .map(|&(a, b)| {
            let (a, b) = order_pair(a, b);
            [a.index(4) as u8, b.index(4) as u8]
        })
        .collect();
    pairs.sort_unstable();
    pairs.into_iter().flatten().collect()
}

/// How a group id was pinned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupAnchor {
    /// Group 1: the class containing every pandiagonal square.
    Pandiagonal,
    /// Group 3: the class containing every associative square.
    Associative,
    /// Group 6: the unique class with 304 members.
    Size304,
    /// Remaining ids, assigned by descending size then encoding.
    Derived,
}

impl GroupAnchor {
    pub fn label(self) -> &'static str {
        match self {
            GroupAnchor::Pandiagonal => "pandiagonal",
            GroupAnchor::Associative => "associative",
            GroupAnchor::Size304 => "size304",
            GroupAnchor::Derived => "derived",
        }
    }
}

/// One Dudeney group in the census.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DudeneyGroup {
    pub id: u8,
    pub member_count: usize,
    pub anchor: GroupAnchor,
}

/// Mapping from canonical chord encodings to group ids 1..=12, with the
/// group census.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    groups: Vec<DudeneyGroup>,
    by_encoding: HashMap<Vec<u8>, u8>,
}

impl GroupTable {
    /// Groups in ascending id order.
    pub fn groups(&self) -> &[DudeneyGroup] {
        &self.groups
    }

    /// Group id of a square's chord class.
    pub fn classify(&self, square: &Square) -> Result<u8, DudeneyError> {
        if square.order() != 4 {
            return Err(DudeneyError::UnsupportedOrder(square.order()));
        }
        let pattern = chord_pattern(square);
        self.by_encoding
            .get(pattern.canonical_encoding())
            .copied()
            .ok_or(DudeneyError::UnknownChordPattern)
    }

    /// Census as CSV with header `group_id,member_count,anchor`.
    pub fn census_csv(&self) -> String {
        let mut out = String::from("group_id,member_count,anchor\n");
        for g in &self.groups {
            writeln!(out, "{},{},{}", g.id, g.member_count, g.anchor.label()).unwrap();
        }
        out
    }
}

/// Partitions the full order-4 catalog into its 12 chord classes and
/// assigns group ids by the anchor rules.
pub fn build_group_table(catalog: &CanonicalCatalog) -> Result<GroupTable, DudeneyError> {
    if catalog.order() != 4 {
        return Err(DudeneyError::UnsupportedOrder(catalog.order()));
    }
    if catalog.len() != ORDER_4_CANONICAL_COUNT {
        return Err(DudeneyError::IncompleteCatalog(catalog.len()));
    }
    build_group_table_from_squares(catalog.squares())
}

/// Table construction without the completeness check, so the diagnostic
/// path is reachable in tests with partial inputs.
pub(crate) fn build_group_table_from_squares(
    squares: &[Square],
) -> Result<GroupTable, DudeneyError> {
    // encoding -> member indices, deterministic order
    let mut classes: BTreeMap<Vec<u8>, Vec<usize>> = BTreeMap::new();
    for (i, square) in squares.iter().enumerate() {
        classes
            .entry(chord_pattern(square).canonical_encoding.clone())
            .or_default()
            .push(i);
    }

    if classes.len() != DUDENEY_GROUP_COUNT {
        // Fallback: orientation-sensitive encodings of the canonical squares.
        let mut fallback: BTreeMap<Vec<u8>, Vec<usize>> = BTreeMap::new();
        for (i, square) in squares.iter().enumerate() {
            fallback
                .entry(oriented_encoding(&square.frenicle_canonical()))
                .or_default()
                .push(i);
        }
        if fallback.len() == DUDENEY_GROUP_COUNT {
            return assign_ids(squares, fallback);
        }
        return Err(DudeneyError::UnexpectedClassCount {
            primary: classes.len(),
            fallback: Some(fallback.len()),
            primary_sizes: descending_sizes(&classes),
            fallback_sizes: descending_sizes(&fallback),
        });
    }

    assign_ids(squares, classes)
}

fn descending_sizes(classes: &BTreeMap<Vec<u8>, Vec<usize>>) -> Vec<usize> {
    let mut sizes: Vec<usize> = classes.values().map(Vec::len).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

fn assign_ids(
    squares: &[Square],
    classes: BTreeMap<Vec<u8>, Vec<usize>>,
) -> Result<GroupTable, DudeneyError> {
    let find_class_of = |pred: &dyn Fn(&Square) -> bool, name: &str| -> Result<Vec<u8>, DudeneyError> {
        let mut found: Option<&Vec<u8>> = None;
        for (encoding, members) in &classes {
            if members.iter().any(|&i| pred(&squares[i])) {
                match found {
                    None => found = Some(encoding),
                    Some(prev) if prev == encoding => {}
                    Some(_) => {
                        return Err(DudeneyError::AmbiguousAnchors(format!(
                            "{name} squares span multiple chord classes"
                        )));
                    }
                }
            }
        }
        found.cloned().ok_or_else(|| {
            DudeneyError::AmbiguousAnchors(format!("no {name} square in catalog"))
        })
    };

    let pandiagonal = find_class_of(&|s: &Square| s.is_pandiagonal(), "pandiagonal")?;
    let associative = find_class_of(&|s: &Square| s.is_associative(), "associative")?;

    let size_304: Vec<&Vec<u8>> = classes
        .iter()
        .filter(|(_, m)| m.len() == 304)
        .map(|(e, _)| e)
        .collect();
    if size_304.len() != 1 {
        return Err(DudeneyError::AmbiguousAnchors(format!(
            "expected exactly one class of size 304, found {}",
            size_304.len()
        )));
    }
    let size_304 = size_304[0].clone();

    let anchored = [&pandiagonal, &associative, &size_304];
    if anchored[0] == anchored[1] || anchored[0] == anchored[2] || anchored[1] == anchored[2] {
        return Err(DudeneyError::AmbiguousAnchors(
            "anchor classes coincide".to_string(),
        ));
    }

    // Remaining ids in ascending order for the non-anchored classes,
    // ordered by descending size then by encoding.
    let mut rest: Vec<(&Vec<u8>, usize)> = classes
        .iter()
        .filter(|(e, _)| !anchored.contains(e))
        .map(|(e, m)| (e, m.len()))
        .collect();
    rest.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    let free_ids: Vec<u8> = (1..=DUDENEY_GROUP_COUNT as u8)
        .filter(|id| ![1, 3, 6].contains(id))
        .collect();

    let mut by_encoding: HashMap<Vec<u8>, u8> = HashMap::new();
    by_encoding.insert(pandiagonal, 1);
    by_encoding.insert(associative, 3);
    by_encoding.insert(size_304, 6);
    for ((encoding, _), id) in rest.into_iter().zip(free_ids) {
        by_encoding.insert(encoding.clone(), id);
    }

    let mut groups: Vec<DudeneyGroup> = classes
        .iter()
        .map(|(encoding, members)| {
            let id = by_encoding[encoding];
            let anchor = match id {
                1 => GroupAnchor::Pandiagonal,
                3 => GroupAnchor::Associative,
                6 => GroupAnchor::Size304,
                _ => GroupAnchor::Derived,
            };
            DudeneyGroup {
                id,
                member_count: members.len(),
                anchor,
            }
        })
        .collect();
    groups.sort_by_key(|g| g.id);

    Ok(GroupTable {
        groups,
        by_encoding,
    })
}
