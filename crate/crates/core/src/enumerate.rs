//! Exhaustive enumeration of magic squares by constraint-pruned
//! backtracking, reduced to the catalog of Frénicle canonical forms.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::square::{Square, Transform, magic_constant};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    /// Enumeration is implemented for orders 3 and 4 only.
    #[error("unsupported order {0}: enumeration covers orders 3 and 4")]
    UnsupportedOrder(usize),
}

/// The complete, duplicate-free list of canonical magic squares of one
/// order, in ascending row-major lexicographic order.
///
/// Catalog indices are 1-based positions in this order. The ordering is this
/// crate's own convention; it fixes a deterministic index for every square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalCatalog {
    order: usize,
    squares: Vec<Square>,
}

impl CanonicalCatalog {
    /// Rebuilds a catalog from squares parsed back from a catalog file.
    /// Inputs that are not already canonical and strictly ascending are
    /// canonicalized, deduplicated, and sorted. Completeness is the
    /// caller's responsibility.
    pub fn from_canonical_squares(
        order: usize,
        squares: Vec<Square>,
    ) -> Result<CanonicalCatalog, EnumerateError> {
        if order != 3 && order != 4 {
            return Err(EnumerateError::UnsupportedOrder(order));
        }
        let sorted = squares.windows(2).all(|w| w[0].cells() < w[1].cells());
        let canonical = squares
            .iter()
            .all(|s| s.order() == order && s.is_canonical());
        if !sorted || !canonical {
            // Not a catalog prefix; normalize the hard way.
            let set: BTreeSet<Vec<u8>> = squares
                .into_iter()
                .map(|s| s.frenicle_canonical().into_cells())
                .collect();
            return Ok(CanonicalCatalog {
                order,
                squares: set
                    .into_iter()
                    .map(|cells| Square::from_cells_unchecked(order, cells))
                    .collect(),
            });
        }
        Ok(CanonicalCatalog { order, squares })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }

    pub fn squares(&self) -> &[Square] {
        &self.squares
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Square> {
        self.squares.iter()
    }

    /// Square at a 1-based catalog index.
    pub fn by_index(&self, index: usize) -> Option<&Square> {
        if index == 0 {
            return None;
        }
        self.squares.get(index - 1)
    }

    /// 1-based catalog index of a square's canonical form.
    pub fn index_of(&self, square: &Square) -> Option<usize> {
        let canon = square.frenicle_canonical();
        self.squares
            .binary_search_by(|s| s.cells().cmp(canon.cells()))
            .ok()
            .map(|i| i + 1)
    }

    pub fn contains(&self, square: &Square) -> bool {
        self.index_of(square).is_some()
    }
}

impl<'a> IntoIterator for &'a CanonicalCatalog {
    type Item = &'a Square;
    type IntoIter = std::slice::Iter<'a, Square>;

    fn into_iter(self) -> Self::IntoIter {
        self.squares.iter()
    }
}

/// Enumerates the complete catalog of canonical magic squares: 1 square for
/// order 3, 880 for order 4. Deterministic: the result is the sorted set of
/// canonical forms regardless of search order.
pub fn enumerate_canonical(order: usize) -> Result<CanonicalCatalog, EnumerateError> {
    if order != 3 && order != 4 {
        return Err(EnumerateError::UnsupportedOrder(order));
    }
    let mut canon: BTreeSet<Vec<u8>> = BTreeSet::new();
    search_magic(order, &mut |cells| {
        let square = Square::from_cells_unchecked(order, cells.to_vec());
        canon.insert(square.frenicle_canonical().into_cells());
    });
    let squares = canon
        .into_iter()
        .map(|cells| Square::from_cells_unchecked(order, cells))
        .collect();
    Ok(CanonicalCatalog { order, squares })
}

/// Enumerates every magic square of the order, including all 8 symmetry
/// variants of each canonical form, in ascending lexicographic order.
/// No order-3 or order-4 magic square is fixed by a nontrivial transform,
/// so the count is exactly 8 times the canonical count.
pub fn enumerate_all(order: usize) -> Result<Vec<Square>, EnumerateError> {
    let catalog = enumerate_canonical(order)?;
    let mut all: BTreeSet<Square> = BTreeSet::new();
    for square in &catalog {
        for t in Transform::ALL {
            all.insert(square.transformed(t));
        }
    }
    Ok(all.into_iter().collect())
}

/// Backtracking over row-major cell positions. The last cell of each row and
/// column is forced by the magic constant; partial line sums are pruned as
/// soon as they can no longer reach it with distinct unused values.
fn search_magic(order: usize, emit: &mut impl FnMut(&[u8])) {
    let mut search = Search {
        n: order,
        total: order * order,
        magic: magic_constant(order).expect("order validated by caller"),
        cells: vec![0u8; order * order],
        used: 0,
        row_sum: vec![0u32; order],
        col_sum: vec![0u32; order],
        diag_sum: 0,
        anti_sum: 0,
    };
    search.fill(0, emit);
}

struct Search {
    n: usize,
    total: usize,
    magic: u32,
    cells: Vec<u8>,
    used: u32,
    row_sum: Vec<u32>,
    col_sum: Vec<u32>,
    diag_sum: u32,
    anti_sum: u32,
}

impl Search {
    fn fill(&mut self, i: usize, emit: &mut impl FnMut(&[u8])) {
        if i == self.total {
            emit(&self.cells);
            return;
        }
        let r = i / self.n;
        let c = i % self.n;
        let row_end = c == self.n - 1;
        let col_end = r == self.n - 1;

        if row_end || col_end {
            let row_value = self.magic.checked_sub(self.row_sum[r]);
            let col_value = self.magic.checked_sub(self.col_sum[c]);
            let forced = match (row_end, col_end) {
                (true, true) if row_value == col_value => row_value,
                (true, true) => None,
                (true, false) => row_value,
                (false, true) => col_value,
                (false, false) => unreachable!(),
            };
            if let Some(v) = forced {
                self.try_place(i, r, c, v, emit);
            }
        } else {
            for v in 1..=self.total as u32 {
                self.try_place(i, r, c, v, emit);
            }
        }
    }

    fn try_place(&mut self, i: usize, r: usize, c: usize, v: u32, emit: &mut impl FnMut(&[u8])) {
        if v == 0 || v > self.total as u32 || self.used & (1 << v) != 0 {
            return;
        }
        let n = self.n;
        if !self.line_feasible(self.row_sum[r] + v, n - 1 - c, v)
            || !self.line_feasible(self.col_sum[c] + v, n - 1 - r, v)
            || (r == c && !self.line_feasible(self.diag_sum + v, n - 1 - r, v))
            || (r + c == n - 1 && !self.line_feasible(self.anti_sum + v, n - 1 - r, v))
        {
            return;
        }

        self.cells[i] = v as u8;
        self.used |= 1 << v;
        self.row_sum[r] += v;
        self.col_sum[c] += v;
        if r == c {
            self.diag_sum += v;
        }
        if r + c == n - 1 {
            self.anti_sum += v;
        }

        self.fill(i + 1, emit);

        self.cells[i] = 0;
        self.used &= !(1 << v);
        self.row_sum[r] -= v;
        self.col_sum[c] -= v;
        if r == c {
            self.diag_sum -= v;
        }
        if r + c == n - 1 {
            self.anti_sum -= v;
        }
    }

    /// Can a line with partial sum `sum` (including the candidate `v`) and
    /// `remaining` open cells still reach the magic constant exactly, using
    /// distinct unused values `1..=n²`? With `remaining == 0` this demands
    /// the sum be exact; with one open cell the needed completion value must
    /// still be available.
    fn line_feasible(&self, sum: u32, remaining: usize, v: u32) -> bool {
        let total = self.total as u32;
        match remaining {
            0 => sum == self.magic,
            1 => match self.magic.checked_sub(sum) {
                Some(need) => {
                    need >= 1 && need <= total && need != v && self.used & (1 << need) == 0
                }
                None => false,
            },
            _ => {
                let k = remaining as u32;
                let min_rest = k * (k + 1) / 2;
                let max_rest = k * total - (k - 1) * k / 2;
                sum + min_rest <= self.magic && sum + max_rest >= self.magic
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_3_has_one_canonical_square() {
        let catalog = enumerate_canonical(3).unwrap();
        assert_eq!(catalog.len(), 1);
        assert_eq!(catalog.squares()[0].cells(), &[2, 7, 6, 9, 5, 1, 4, 3, 8]);
    }

    #[test]
    fn order_3_orbit_has_eight_members() {
        let all = enumerate_all(3).unwrap();
        assert_eq!(all.len(), 8);
        let catalog = enumerate_canonical(3).unwrap();
        for s in &all {
            assert_eq!(catalog.index_of(s), Some(1));
        }
    }

    #[test]
    fn unsupported_orders_are_rejected() {
        assert_eq!(
            enumerate_canonical(5),
            Err(EnumerateError::UnsupportedOrder(5))
        );
        assert_eq!(enumerate_all(2), Err(EnumerateError::UnsupportedOrder(2)));
    }

    #[test]
    fn order_4_catalog_has_880_squares() {
        let catalog = enumerate_canonical(4).unwrap();
        assert_eq!(catalog.len(), 880);
        // strictly ascending, canonical, magic: all enforced by construction
        assert!(
            catalog
                .squares()
                .windows(2)
                .all(|w| w[0].cells() < w[1].cells())
        );
        let durer = Square::new(
            4,
            vec![16, 3, 2, 13, 5, 10, 11, 8, 9, 6, 7, 12, 4, 15, 14, 1],
        )
        .unwrap();
        assert!(catalog.contains(&durer));
    }

    #[test]
    fn by_index_is_one_based() {
        let catalog = enumerate_canonical(3).unwrap();
        assert!(catalog.by_index(0).is_none());
        assert!(catalog.by_index(1).is_some());
        assert!(catalog.by_index(2).is_none());
    }
}
