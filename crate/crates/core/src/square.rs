//! Grid squares, the magic predicate, the dihedral symmetry group, and
//! structural predicates (associative, pandiagonal, axis-complement).

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SquareError {
    /// Order 0 has no cells; the magic constant is undefined.
    #[error("invalid order {0}")]
    InvalidOrder(usize),
    /// The cell list length does not match `order * order`.
    #[error("expected {expected} cells for order {order}, got {got}")]
    InvalidShape {
        order: usize,
        expected: usize,
        got: usize,
    },
    /// The cells are not a magic arrangement of `1..=order²`.
    #[error("cells do not form a magic square of order {0}")]
    NotMagic(usize),
    /// The operation is only defined for a specific order.
    #[error("{op} requires order {required}, got order {got}")]
    UnsupportedOrder {
        op: &'static str,
        required: usize,
        got: usize,
    },
}

/// The common row/column/diagonal sum `n(n² + 1)/2` of an order-`n` magic
/// square: 15 for order 3, 34 for order 4. Order 0 and orders whose
/// constant does not fit in 32 bits (2048 and up) are rejected.
pub fn magic_constant(order: usize) -> Result<u32, SquareError> {
    if order == 0 || order > 2047 {
        return Err(SquareError::InvalidOrder(order));
    }
    let n = order as u64;
    u32::try_from(n * (n * n + 1) / 2).map_err(|_| SquareError::InvalidOrder(order))
}

/// A grid coordinate, row-major with `(0, 0)` in the top-left corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }

    /// Row-major index of this cell on an order-`n` grid.
    pub fn index(self, order: usize) -> usize {
        self.row * order + self.col
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.row, self.col)
    }
}

/// One of the 8 rotations/reflections of the square grid (the dihedral
/// group D4).
///
/// `FlipH` mirrors across the vertical center line (left/right swap),
/// `FlipV` across the horizontal center line (top/bottom swap).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Transform {
    Identity,
    Rotate90,
    Rotate180,
    Rotate270,
    FlipH,
    FlipV,
    FlipMainDiag,
    FlipAntiDiag,
}

impl Transform {
    pub const ALL: [Transform; 8] = [
        Transform::Identity,
        Transform::Rotate90,
        Transform::Rotate180,
        Transform::Rotate270,
        Transform::FlipH,
        Transform::FlipV,
        Transform::FlipMainDiag,
        Transform::FlipAntiDiag,
    ];

    /// Image of `cell` under this transform on an order-`order` grid.
    /// Rotations are clockwise.
    pub fn map(self, cell: Cell, order: usize) -> Cell {
        let n = order - 1;
        let Cell { row: r, col: c } = cell;
        match self {
            Transform::Identity => Cell::new(r, c),
            Transform::Rotate90 => Cell::new(c, n - r),
            Transform::Rotate180 => Cell::new(n - r, n - c),
            Transform::Rotate270 => Cell::new(n - c, r),
            Transform::FlipH => Cell::new(r, n - c),
            Transform::FlipV => Cell::new(n - r, c),
            Transform::FlipMainDiag => Cell::new(c, r),
            Transform::FlipAntiDiag => Cell::new(n - c, n - r),
        }
    }

    pub fn inverse(self) -> Transform {
        match self {
            Transform::Rotate90 => Transform::Rotate270,
            Transform::Rotate270 => Transform::Rotate90,
            t => t,
        }
    }

    /// Composition: `self` followed by `other`.
    pub fn then(self, other: Transform) -> Transform {
        // D4 composition does not depend on the grid size, so probe on a
        // 4x4 grid. The action on ((0,0), (0,1)) is faithful.
        let probes = [Cell::new(0, 0), Cell::new(0, 1)];
        Transform::ALL
            .into_iter()
            .find(|t| {
                probes
                    .iter()
                    .all(|&p| t.map(p, 4) == other.map(self.map(p, 4), 4))
            })
            .expect("dihedral group is closed under composition")
    }
}

/// Checks whether `cells` (row-major) is a normal magic square of the given
/// order: a permutation of `1..=order²` whose rows, columns, and both main
/// diagonals all sum to the magic constant.
///
/// A wrong-length slice is an error; a well-shaped non-magic grid is `Ok(false)`.
pub fn is_magic(cells: &[u8], order: usize) -> Result<bool, SquareError> {
    let magic = magic_constant(order)?;
    let total = order * order;
    if cells.len() != total {
        return Err(SquareError::InvalidShape {
            order,
            expected: total,
            got: cells.len(),
        });
    }

    let mut seen = vec![false; total + 1];
    for &v in cells {
        let v = v as usize;
        if v == 0 || v > total || seen[v] {
            return Ok(false);
        }
        seen[v] = true;
    }

    let at = |r: usize, c: usize| cells[r * order + c] as u32;
    for i in 0..order {
        let row: u32 = (0..order).map(|c| at(i, c)).sum();
        let col: u32 = (0..order).map(|r| at(r, i)).sum();
        if row != magic || col != magic {
            return Ok(false);
        }
    }
    let main: u32 = (0..order).map(|i| at(i, i)).sum();
    let anti: u32 = (0..order).map(|i| at(i, order - 1 - i)).sum();
    Ok(main == magic && anti == magic)
}

/// A normal magic square: an `order`×`order` grid holding a permutation of
/// `1..=order²` with all rows, columns, and both main diagonals summing to
/// the magic constant. The magic property is enforced at construction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Square {
    order: usize,
    cells: Vec<u8>,
}

impl Square {
    /// Validates `cells` and wraps it in a `Square`.
    pub fn new(order: usize, cells: Vec<u8>) -> Result<Square, SquareError> {
        if is_magic(&cells, order)? {
            Ok(Square { order, cells })
        } else {
            Err(SquareError::NotMagic(order))
        }
    }

    /// Construction bypassing validation, for squares produced by
    /// operations that preserve the magic property.
    pub(crate) fn from_cells_unchecked(order: usize, cells: Vec<u8>) -> Square {
        debug_assert_eq!(is_magic(&cells, order), Ok(true));
        Square { order, cells }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn into_cells(self) -> Vec<u8> {
        self.cells
    }

    pub fn value_at(&self, cell: Cell) -> u8 {
        self.cells[cell.index(self.order)]
    }

    pub fn magic_sum(&self) -> u32 {
        magic_constant(self.order).expect("constructed squares have a valid order")
    }

    /// Cell of each value: entry `v - 1` is the cell containing `v`.
    pub(crate) fn value_positions(&self) -> Vec<Cell> {
        let n = self.order;
        let mut pos = vec![Cell::new(0, 0); n * n];
        for r in 0..n {
            for c in 0..n {
                pos[self.cells[r * n + c] as usize - 1] = Cell::new(r, c);
            }
        }
        pos
    }

    /// The rotated/reflected square; the result is again magic.
    pub fn transformed(&self, t: Transform) -> Square {
        let n = self.order;
        let mut cells = vec![0u8; n * n];
        for r in 0..n {
            for c in 0..n {
                let src = Cell::new(r, c);
                cells[t.map(src, n).index(n)] = self.cells[src.index(n)];
            }
        }
        Square::from_cells_unchecked(n, cells)
    }

    /// Frénicle canonical form: the lexicographically least (row-major)
    /// square among the 8 rotations/reflections of `self`. Idempotent, and
    /// identical for every member of the same symmetry orbit.
    pub fn frenicle_canonical(&self) -> Square {
        Transform::ALL
            .into_iter()
            .map(|t| self.transformed(t))
            .min_by(|a, b| a.cells.cmp(&b.cells))
            .expect("orbit is non-empty")
    }

    /// True iff `self` equals its own Frénicle canonical form.
    pub fn is_canonical(&self) -> bool {
        Transform::ALL
            .into_iter()
            .all(|t| self.cells <= self.transformed(t).cells)
    }

    /// Replaces every value `v` by `17 - v`. Only order 4 is supported; the
    /// result is again magic, and the map is an involution.
    pub fn complement(&self) -> Result<Square, SquareError> {
        if self.order != 4 {
            return Err(SquareError::UnsupportedOrder {
                op: "complement",
                required: 4,
                got: self.order,
            });
        }
        let cells = self.cells.iter().map(|&v| 17 - v).collect();
        Ok(Square::from_cells_unchecked(4, cells))
    }

    /// True iff complementary values sit at point reflections through the
    /// grid center: `pos(k) + pos(n²+1-k) = (n-1, n-1)` for every `k`.
    pub fn is_associative(&self) -> bool {
        let n = self.order;
        let total = n * n;
        let pos = self.value_positions();
        (1..=total).all(|k| {
            let a = pos[k - 1];
            let b = pos[total - k];
            a.row + b.row == n - 1 && a.col + b.col == n - 1
        })
    }

    /// True iff every broken (wrap-around) diagonal in both directions also
    /// sums to the magic constant.
    pub fn is_pandiagonal(&self) -> bool {
        let n = self.order;
        let magic = self.magic_sum();
        let at = |r: usize, c: usize| self.cells[r * n + c] as u32;
        (0..n).all(|off| {
            let main: u32 = (0..n).map(|r| at(r, (r + off) % n)).sum();
            let anti: u32 = (0..n).map(|r| at(r, (off + n - r) % n)).sum();
            main == magic && anti == magic
        })
    }

    /// True iff there is one fixed center line (horizontal or vertical) such
    /// that every pair of complementary values mirrors across it.
    pub fn is_axis_complement(&self) -> bool {
        let n = self.order;
        let total = n * n;
        let pos = self.value_positions();
        let horizontal = (1..=total).all(|k| {
            let a = pos[k - 1];
            let b = pos[total - k];
            b.row == n - 1 - a.row && b.col == a.col
        });
        let vertical = (1..=total).all(|k| {
            let a = pos[k - 1];
            let b = pos[total - k];
            b.row == a.row && b.col == n - 1 - a.col
        });
        horizontal || vertical
    }

    /// True iff the pair of opposite two-cell short diagonals parallel to
    /// each main diagonal sums to the magic constant; each pair is the
    /// main diagonal's wrap-around shifted by 2. Only meaningful for
    /// order 4; other orders return false.
    pub fn is_semi_pandiagonal(&self) -> bool {
        if self.order != 4 {
            return false;
        }
        let at = |r: usize, c: usize| self.cells[r * 4 + c] as u32;
        let main: u32 = (0..4).map(|r| at(r, (r + 2) % 4)).sum();
        let anti: u32 = (0..4).map(|r| at(r, (5 - r) % 4)).sum();
        main == 34 && anti == 34
    }
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.order;
        for r in 0..n {
            for c in 0..n {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:2}", self.cells[r * n + c])?;
            }
            if r + 1 < n {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}
