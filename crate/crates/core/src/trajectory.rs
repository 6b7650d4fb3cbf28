//! The traveler's tour through a magic square: city positions, squared leg
//! lengths, and distance totals.
//!
//! The traveler visits cell centers in value order 1, 2, ..., n². Leg `i`
//! joins the cells holding `i` and `i + 1`; its squared length on the unit
//! grid is the integer `(Δrow)² + (Δcol)²`. All pattern analysis works on
//! these exact integers; floating point appears only in the final totals.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::enumerate::CanonicalCatalog;
use crate::square::{Cell, Square};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrajectoryError {
    #[error("unsupported order {0}: leg sequences cover orders 3 and 4")]
    UnsupportedOrder(usize),
    #[error("expected {expected} legs for order {order}, got {got}")]
    WrongLegCount {
        order: usize,
        expected: usize,
        got: usize,
    },
    #[error("leg {index} has squared length {value}, impossible on an order-{order} grid")]
    ImpossibleLeg {
        order: usize,
        index: usize,
        value: u32,
    },
    #[error("catalog is empty")]
    EmptyCatalog,
}

/// The ordered squared distances between consecutive cities: `n² - 1`
/// positive integers (8 for order 3, 15 for order 4).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LegSequence {
    order: usize,
    legs_squared: Vec<u32>,
}

impl LegSequence {
    /// Validates a raw sequence: correct length and every entry achievable
    /// as a squared cell-center distance on the order's grid.
    pub fn new(order: usize, legs_squared: Vec<u32>) -> Result<LegSequence, TrajectoryError> {
        if order != 3 && order != 4 {
            return Err(TrajectoryError::UnsupportedOrder(order));
        }
        let expected = order * order - 1;
        if legs_squared.len() != expected {
            return Err(TrajectoryError::WrongLegCount {
                order,
                expected,
                got: legs_squared.len(),
            });
        }
        for (i, &v) in legs_squared.iter().enumerate() {
            if !achievable_leg(order, v) {
                return Err(TrajectoryError::ImpossibleLeg {
                    order,
                    index: i + 1,
                    value: v,
                });
            }
        }
        Ok(LegSequence {
            order,
            legs_squared,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn legs_squared(&self) -> &[u32] {
        &self.legs_squared
    }

    pub fn len(&self) -> usize {
        self.legs_squared.len()
    }

    pub fn is_empty(&self) -> bool {
        self.legs_squared.is_empty()
    }

    /// Euclidean leg lengths, `sqrt` of each squared entry.
    pub fn lengths(&self) -> impl Iterator<Item = f64> + '_ {
        self.legs_squared.iter().map(|&d| f64::from(d).sqrt())
    }
}

/// Squared distances achievable between two distinct cell centers of an
/// order-`n` grid: `{1, 2, 4, 5, 8}` for order 3 and
/// `{1, 2, 4, 5, 8, 9, 10, 13, 18}` for order 4.
fn achievable_leg(order: usize, value: u32) -> bool {
    if value == 0 {
        return false;
    }
    (0..order as u32).any(|dr| {
        (0..order as u32).any(|dc| (dr, dc) != (0, 0) && dr * dr + dc * dc == value)
    })
}

/// The value-to-cell bijection: entry `v - 1` is the cell containing `v`.
pub fn city_positions(square: &Square) -> Vec<Cell> {
    square.value_positions()
}

/// Squared distances between consecutive cities. Invariant under all 8
/// dihedral transforms of the square.
pub fn leg_squares(square: &Square) -> LegSequence {
    let pos = city_positions(square);
    let legs_squared = pos
        .windows(2)
        .map(|w| {
            let dr = w[0].row.abs_diff(w[1].row) as u32;
            let dc = w[0].col.abs_diff(w[1].col) as u32;
            dr * dr + dc * dc
        })
        .collect();
    LegSequence {
        order: square.order(),
        legs_squared,
    }
}

/// Total tour distance and its per-leg average, in units of one cell side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryStats {
    pub total_distance: f64,
    /// Total divided by the leg count (`n² - 1`), not the city count.
    pub per_city_average: f64,
}

pub fn trajectory_stats(legs: &LegSequence) -> TrajectoryStats {
    let total_distance: f64 = legs.lengths().sum();
    TrajectoryStats {
        total_distance,
        per_city_average: total_distance / legs.len() as f64,
    }
}

/// Exact value key for a total distance Σ√dᵢ: integer coefficients over √q
/// for squarefree q. Two leg sequences have equal totals as real numbers iff
/// their keys are equal, which makes tie detection exact.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RadicalSum(BTreeMap<u32, u32>);

impl RadicalSum {
    pub fn from_legs(legs_squared: &[u32]) -> RadicalSum {
        let mut coefficients = BTreeMap::new();
        for &d in legs_squared {
            let (scale, squarefree) = squarefree_split(d);
            *coefficients.entry(squarefree).or_insert(0) += scale;
        }
        RadicalSum(coefficients)
    }

    pub fn value(&self) -> f64 {
        self.0
            .iter()
            .map(|(&q, &coeff)| coeff as f64 * f64::from(q).sqrt())
            .sum()
    }
}

/// Writes `d = s² · q` with q squarefree and returns `(s, q)`.
fn squarefree_split(d: u32) -> (u32, u32) {
    let mut s = 1;
    let mut k = 1;
    while k * k <= d {
        if d.is_multiple_of(k * k) {
            s = k;
        }
        k += 1;
    }
    (s, d / (s * s))
}

/// Catalog-wide total-distance statistics. `argmin`/`argmax` are ascending
/// 1-based catalog indices; ties are detected by exact `RadicalSum` equality
/// and all reported.
#[derive(Debug, Clone, PartialEq)]
pub struct CatalogExtremes {
    pub min_total: f64,
    pub max_total: f64,
    pub mean_total: f64,
    pub argmin: Vec<usize>,
    pub argmax: Vec<usize>,
}

pub fn catalog_extremes(catalog: &CanonicalCatalog) -> Result<CatalogExtremes, TrajectoryError> {
    if catalog.is_empty() {
        return Err(TrajectoryError::EmptyCatalog);
    }
    let keys: Vec<RadicalSum> = catalog
        .iter()
        .map(|s| RadicalSum::from_legs(leg_squares(s).legs_squared()))
        .collect();
    let totals: Vec<f64> = catalog
        .iter()
        .map(|s| trajectory_stats(&leg_squares(s)).total_distance)
        .collect();

    let min_total = totals.iter().copied().fold(f64::INFINITY, f64::min);
    let max_total = totals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mean_total = totals.iter().sum::<f64>() / totals.len() as f64;

    let min_key = &keys[totals.iter().position(|&t| t == min_total).unwrap()];
    let max_key = &keys[totals.iter().position(|&t| t == max_total).unwrap()];
    let argmin = (0..keys.len())
        .filter(|&i| &keys[i] == min_key)
        .map(|i| i + 1)
        .collect();
    let argmax = (0..keys.len())
        .filter(|&i| &keys[i] == max_key)
        .map(|i| i + 1)
        .collect();

    Ok(CatalogExtremes {
        min_total,
        max_total,
        mean_total,
        argmin,
        argmax,
    })
}
