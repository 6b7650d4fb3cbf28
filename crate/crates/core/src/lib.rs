//! Enumeration and trajectory analysis of order-3 and order-4 magic squares.
//!
//! The values of a magic square define a tour over its grid: a traveler
//! visits the cell holding 1, then 2, and so on up to n². This crate
//! enumerates all magic squares of orders 3 and 4 up to rotation and
//! reflection, computes the squared leg lengths of each tour, classifies the
//! resulting distance patterns by their symmetries, and partitions order-4
//! squares into Dudeney groups by the geometry of their complement-pair
//! chords.

pub mod dudeney;
pub mod enumerate;
pub mod square;
pub mod symmetry;
pub mod trajectory;

pub use dudeney::{ChordPattern, DudeneyError, DudeneyGroup, GroupAnchor, GroupTable};
pub use enumerate::{CanonicalCatalog, EnumerateError};
pub use square::{Cell, Square, SquareError, Transform, is_magic, magic_constant};
pub use symmetry::{ClassifierParams, DuplicateCensus, SymmetryClass, SymmetryRecord};
pub use trajectory::{CatalogExtremes, LegSequence, TrajectoryError, TrajectoryStats};
