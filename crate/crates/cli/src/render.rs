//! SVG figures: the traveler's trajectory over the grid, and the
//! distance-pattern line chart.
//!
//! Layout constants are fixed: 64-unit grid cells with a 32-unit margin for
//! trajectories; a 36-unit leg spacing and 44 units per distance unit for
//! pattern charts. Output is deterministic for identical inputs.

use std::fmt::Write as _;

use magicpath_core::Square;
use magicpath_core::trajectory::{city_positions, leg_squares};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderMode {
    /// Grid with numbered cells and the tour polyline through cell centers.
    Trajectory,
    /// Leg length (√ of the squared leg) versus leg index, with a dashed
    /// vertical line at the sequence center.
    Pattern,
}

const CELL: f64 = 64.0;
const GRID_MARGIN: f64 = 32.0;

const CHART_MARGIN: f64 = 40.0;
const LEG_STEP: f64 = 36.0;
const UNIT_RISE: f64 = 44.0;
const CHART_CEILING: f64 = 4.5; // tallest achievable leg is √18 ≈ 4.24

pub fn render_svg(square: &Square, mode: RenderMode) -> String {
    match mode {
        RenderMode::Trajectory => render_trajectory(square),
        RenderMode::Pattern => render_pattern(square),
    }
}

fn render_trajectory(square: &Square) -> String {
    let n = square.order();
    let size = 2.0 * GRID_MARGIN + n as f64 * CELL;
    let at = |i: usize| GRID_MARGIN + i as f64 * CELL;
    let center = |i: usize| GRID_MARGIN + (i as f64 + 0.5) * CELL;

    let mut svg = svg_open(size, size);
    writeln!(
        svg,
        r##"<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>"##
    )
    .unwrap();

    for i in 0..=n {
        writeln!(
            svg,
            r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#888" stroke-width="1"/>"##,
            at(i),
            at(0),
            at(i),
            at(n)
        )
        .unwrap();
        writeln!(
            svg,
            r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#888" stroke-width="1"/>"##,
            at(0),
            at(i),
            at(n),
            at(i)
        )
        .unwrap();
    }

    for r in 0..n {
        for c in 0..n {
            let v = square.cells()[r * n + c];
            writeln!(
                svg,
                r##"<text x="{}" y="{}" font-family="sans-serif" font-size="12" fill="#555">{v}</text>"##,
                at(c) + 4.0,
                at(r) + 14.0
            )
            .unwrap();
        }
    }

    let positions = city_positions(square);
    let points: Vec<String> = positions
        .iter()
        .map(|p| format!("{},{}", center(p.col), center(p.row)))
        .collect();
    writeln!(
        svg,
        r##"<polyline points="{}" fill="none" stroke="#1f6fb2" stroke-width="2"/>"##,
        points.join(" ")
    )
    .unwrap();

    for p in &positions {
        writeln!(
            svg,
            r##"<circle cx="{}" cy="{}" r="3.5" fill="#222"/>"##,
            center(p.col),
            center(p.row)
        )
        .unwrap();
    }

    // start marker: ring around city 1; end marker: square around city n²
    let start = positions[0];
    let end = positions[positions.len() - 1];
    writeln!(
        svg,
        r##"<circle cx="{}" cy="{}" r="8" fill="none" stroke="#2a9d3a" stroke-width="2.5"/>"##,
        center(start.col),
        center(start.row)
    )
    .unwrap();
    writeln!(
        svg,
        r##"<rect x="{}" y="{}" width="16" height="16" fill="none" stroke="#c23b3b" stroke-width="2.5"/>"##,
        center(end.col) - 8.0,
        center(end.row) - 8.0
    )
    .unwrap();

    svg.push_str("</svg>\n");
    svg
}

fn render_pattern(square: &Square) -> String {
    let legs = leg_squares(square);
    let lengths: Vec<f64> = legs.lengths().collect();
    let count = lengths.len();

    let width = 2.0 * CHART_MARGIN + (count - 1) as f64 * LEG_STEP;
    let height = 2.0 * CHART_MARGIN + CHART_CEILING * UNIT_RISE;
    let baseline = height - CHART_MARGIN;
    let x = |i: usize| CHART_MARGIN + i as f64 * LEG_STEP;
    let y = |len: f64| baseline - len * UNIT_RISE;

    let mut svg = svg_open(width, height);
    writeln!(
        svg,
        r##"<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>"##
    )
    .unwrap();

    // axes and unit gridlines
    for unit in 0..=4u32 {
        let gy = y(unit as f64);
        writeln!(
            svg,
            r##"<line x1="{}" y1="{gy}" x2="{}" y2="{gy}" stroke="#ddd" stroke-width="1"/>"##,
            x(0),
            x(count - 1)
        )
        .unwrap();
        writeln!(
            svg,
            r##"<text x="{}" y="{}" font-family="sans-serif" font-size="11" fill="#555" text-anchor="end">{unit}</text>"##,
            x(0) - 8.0,
            gy + 4.0
        )
        .unwrap();
    }
    writeln!(
        svg,
        r##"<line x1="{}" y1="{baseline}" x2="{}" y2="{baseline}" stroke="#444" stroke-width="1"/>"##,
        x(0),
        x(count - 1)
    )
    .unwrap();
    writeln!(
        svg,
        r##"<line x1="{}" y1="{}" x2="{}" y2="{baseline}" stroke="#444" stroke-width="1"/>"##,
        x(0),
        y(CHART_CEILING),
        x(0)
    )
    .unwrap();

    for i in 0..count {
        writeln!(
            svg,
            r##"<text x="{}" y="{}" font-family="sans-serif" font-size="11" fill="#555" text-anchor="middle">{}</text>"##,
            x(i),
            baseline + 16.0,
            i + 1
        )
        .unwrap();
    }

    // the hypothetical vertical center line of the pattern
    let center_x = x(0) + (count - 1) as f64 / 2.0 * LEG_STEP;
    writeln!(
        svg,
        r##"<line x1="{center_x}" y1="{}" x2="{center_x}" y2="{baseline}" stroke="#999" stroke-width="1.5" stroke-dasharray="6 4"/>"##,
        y(CHART_CEILING)
    )
    .unwrap();

    let points: Vec<String> = lengths
        .iter()
        .enumerate()
        .map(|(i, &len)| format!("{},{:.3}", x(i), y(len)))
        .collect();
    writeln!(
        svg,
        r##"<polyline points="{}" fill="none" stroke="#1f6fb2" stroke-width="2"/>"##,
        points.join(" ")
    )
    .unwrap();
    for (i, &len) in lengths.iter().enumerate() {
        writeln!(
            svg,
            r##"<circle cx="{}" cy="{:.3}" r="3" fill="#1f6fb2"/>"##,
            x(i),
            y(len)
        )
        .unwrap();
    }

    svg.push_str("</svg>\n");
    svg
}

fn svg_open(width: f64, height: f64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">\n"
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lo_shu() -> Square {
        Square::new(3, vec![2, 7, 6, 9, 5, 1, 4, 3, 8]).unwrap()
    }

    fn durer() -> Square {
        Square::new(
            4,
            vec![16, 3, 2, 13, 5, 10, 11, 8, 9, 6, 7, 12, 4, 15, 14, 1],
        )
        .unwrap()
    }

    #[test]
    fn trajectory_polyline_visits_every_city() {
        let svg = render_svg(&lo_shu(), RenderMode::Trajectory);
        let polyline = svg
            .lines()
            .find(|l| l.starts_with("<polyline"))
            .expect("trajectory has a polyline");
        // 9 points -> 8 segments
        assert_eq!(polyline.matches(',').count(), 9);
        assert!(svg.contains("</svg>"));
    }

    #[test]
    fn pattern_chart_has_center_line_and_all_legs() {
        let svg = render_svg(&durer(), RenderMode::Pattern);
        assert!(svg.contains("stroke-dasharray"));
        // center of 15 legs is leg index 8: x = 40 + 7*36 = 292
        assert!(svg.contains(r##"x1="292""##));
        let polyline = svg
            .lines()
            .find(|l| l.starts_with("<polyline"))
            .expect("pattern has a polyline");
        assert_eq!(polyline.matches(',').count(), 15);
    }

    #[test]
    fn output_is_deterministic() {
        let a = render_svg(&durer(), RenderMode::Pattern);
        let b = render_svg(&durer(), RenderMode::Pattern);
        assert_eq!(a, b);
    }
}
