//! The canonical convex-polyomino model.
//!
//! A polyomino is stored as one half-open row interval `[lo, hi)` per column.
//! The clockwise boundary walk, the start parameter `a` and the corner flags
//! are all derived from the columns.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::Point;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyominoError {
    #[error("width and height must be at least 1, got {width}x{height}")]
    EmptyBox { width: usize, height: usize },
    #[error("expected {expected} columns, got {got}")]
    ColumnCount { expected: usize, got: usize },
    #[error("column {column} has interval [{lo},{hi}) outside 0 <= lo < hi <= {height}")]
    BadInterval { column: usize, lo: usize, hi: usize, height: usize },
    #[error("bounding box is not tight")]
    BoxNotTight,
    #[error("columns {column} and {} do not share an edge", column + 1)]
    NotConnected { column: usize },
    #[error("row {row} is not a contiguous run of columns")]
    NotConvex { row: usize },
    #[error("vertex sequence is not the clockwise boundary of a convex polyomino")]
    NotABoundary,
}

/// Half-open interval of rows occupied by one column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

impl Interval {
    pub fn contains(&self, row: usize) -> bool {
        self.lo <= row && row < self.hi
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPolyomino", into = "RawPolyomino")]
pub struct ConvexPolyomino {
    width: usize,
    height: usize,
    columns: Vec<Interval>,
}

/// JSON interchange shape: `{"width": w, "height": h, "columns": [[lo, hi], ...]}`.
#[derive(Serialize, Deserialize)]
struct RawPolyomino {
    width: usize,
    height: usize,
    columns: Vec<[usize; 2]>,
}

impl TryFrom<RawPolyomino> for ConvexPolyomino {
    type Error = PolyominoError;

    fn try_from(raw: RawPolyomino) -> Result<Self, Self::Error> {
        let cols: Vec<(usize, usize)> = raw.columns.iter().map(|c| (c[0], c[1])).collect();
        validate(&cols, raw.width, raw.height)
    }
}

impl From<ConvexPolyomino> for RawPolyomino {
    fn from(p: ConvexPolyomino) -> Self {
        RawPolyomino {
            width: p.width,
            height: p.height,
            columns: p.columns.iter().map(|c| [c.lo, c.hi]).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PolyominoFlags {
    /// Contains the lower-left cell of the bounding box.
    pub directed: bool,
    /// Contains the upper-right cell of the bounding box.
    pub antidirected: bool,
    pub parallelogram: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Svg,
}

/// Checks raw column data and builds the polyomino.
pub fn validate(
    columns: &[(usize, usize)],
    width: usize,
    height: usize,
) -> Result<ConvexPolyomino, PolyominoError> {
    if width == 0 || height == 0 {
        return Err(PolyominoError::EmptyBox { width, height });
    }
    if columns.len() != width {
        return Err(PolyominoError::ColumnCount { expected: width, got: columns.len() });
    }
    for (column, &(lo, hi)) in columns.iter().enumerate() {
        if lo >= hi || hi > height {
            return Err(PolyominoError::BadInterval { column, lo, hi, height });
        }
    }
    let min_lo = columns.iter().map(|c| c.0).min().unwrap_or(0);
    let max_hi = columns.iter().map(|c| c.1).max().unwrap_or(0);
    if min_lo != 0 || max_hi != height {
        return Err(PolyominoError::BoxNotTight);
    }
    for (column, pair) in columns.windows(2).enumerate() {
        let ((lo0, hi0), (lo1, hi1)) = (pair[0], pair[1]);
        if lo0.max(lo1) >= hi0.min(hi1) {
            return Err(PolyominoError::NotConnected { column });
        }
    }
    for row in 0..height {
        let occupied: Vec<usize> = columns
            .iter()
            .enumerate()
            .filter(|(_, &(lo, hi))| lo <= row && row < hi)
            .map(|(i, _)| i)
            .collect();
        let contiguous = occupied.windows(2).all(|w| w[1] == w[0] + 1);
        if occupied.is_empty() || !contiguous {
            return Err(PolyominoError::NotConvex { row });
        }
    }
    Ok(ConvexPolyomino {
        width,
        height,
        columns: columns.iter().map(|&(lo, hi)| Interval { lo, hi }).collect(),
    })
}

impl ConvexPolyomino {
    /// The full `width × height` rectangle.
    pub fn rectangle(width: usize, height: usize) -> Result<Self, PolyominoError> {
        validate(&vec![(0, height); width], width, height)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn semi_perimeter(&self) -> usize {
        self.width + self.height
    }

    pub fn columns(&self) -> &[Interval] {
        &self.columns
    }

    pub fn column_pairs(&self) -> Vec<(usize, usize)> {
        self.columns.iter().map(|c| (c.lo, c.hi)).collect()
    }

    /// Whether the unit cell with lower-left corner `(x, y)` belongs to the
    /// polyomino. Coordinates outside the box are simply absent.
    pub fn contains(&self, x: i64, y: i64) -> bool {
        if x < 0 || y < 0 {
            return false;
        }
        self.columns
            .get(x as usize)
            .is_some_and(|c| c.contains(y as usize))
    }

    pub fn area(&self) -> usize {
        self.columns.iter().map(|c| c.hi - c.lo).sum()
    }

    /// Index of the leftmost column touching the bottom side; the boundary
    /// walk starts at `(a, 0)`.
    pub fn start_offset(&self) -> usize {
        self.columns
            .iter()
            .position(|c| c.lo == 0)
            .expect("tight box has a column on row 0")
    }

    /// The clockwise boundary, starting and ending at `(a, 0)` with an
    /// upward first step. Has `2(w + h) + 1` entries.
    pub fn boundary_walk(&self) -> Vec<Point> {
        let len = 2 * self.semi_perimeter();
        let start = Point::new(self.start_offset() as i64, 0);
        let mut walk = Vec::with_capacity(len + 1);
        walk.push(start);
        let mut at = start;
        for _ in 0..len {
            at = self.next_boundary_vertex(at);
            walk.push(at);
        }
        debug_assert_eq!(at, start, "boundary failed to close");
        walk
    }

    /// Follows the unique boundary edge leaving `v` with the interior on the
    /// right-hand side.
    fn next_boundary_vertex(&self, v: Point) -> Point {
        let (x, y) = (v.x, v.y);
        let cell = |cx, cy| self.contains(cx, cy);
        let candidates = [
            (cell(x, y) && !cell(x - 1, y), Point::new(x, y + 1)),
            (cell(x, y - 1) && !cell(x, y), Point::new(x + 1, y)),
            (cell(x - 1, y - 1) && !cell(x, y - 1), Point::new(x, y - 1)),
            (cell(x - 1, y) && !cell(x - 1, y - 1), Point::new(x - 1, y)),
        ];
        let mut outgoing = candidates.iter().filter(|c| c.0).map(|c| c.1);
        let next = outgoing.next().expect("vertex lies on the boundary");
        debug_assert!(outgoing.next().is_none(), "convex boundary has no pinch points");
        next
    }

    /// Rebuilds a polyomino from its clockwise boundary, as produced by
    /// [`boundary_walk`](Self::boundary_walk).
    pub fn from_boundary(walk: &[Point]) -> Result<Self, PolyominoError> {
        let (first, last) = match (walk.first(), walk.last()) {
            (Some(f), Some(l)) if f == l && walk.len() > 1 => (*f, *l),
            _ => return Err(PolyominoError::NotABoundary),
        };
        debug_assert_eq!(first, last);
        let min_x = walk.iter().map(|p| p.x).min().unwrap_or(0);
        let min_y = walk.iter().map(|p| p.y).min().unwrap_or(0);
        let width = walk.iter().map(|p| p.x).max().unwrap_or(0);
        let height = walk.iter().map(|p| p.y).max().unwrap_or(0);
        if min_x != 0 || min_y != 0 || width < 1 || height < 1 {
            return Err(PolyominoError::NotABoundary);
        }
        let mut lo = vec![None; width as usize];
        let mut hi = vec![None; width as usize];
        for e in walk.windows(2) {
            let (p, q) = (e[0], e[1]);
            let slot = match (q.x - p.x, q.y - p.y) {
                (1, 0) => &mut hi[p.x as usize],
                (-1, 0) => &mut lo[q.x as usize],
                (0, 1) | (0, -1) => continue,
                _ => return Err(PolyominoError::NotABoundary),
            };
            if slot.replace(p.y as usize).is_some() {
                return Err(PolyominoError::NotABoundary);
            }
        }
        let columns = lo
            .into_iter()
            .zip(hi)
            .map(|pair| match pair {
                (Some(l), Some(h)) => Ok((l, h)),
                _ => Err(PolyominoError::NotABoundary),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let poly = validate(&columns, width as usize, height as usize)
            .map_err(|_| PolyominoError::NotABoundary)?;
        if poly.boundary_walk() != walk {
            return Err(PolyominoError::NotABoundary);
        }
        Ok(poly)
    }

    pub fn flags(&self) -> PolyominoFlags {
        let directed = self.columns[0].lo == 0;
        let antidirected = self.columns[self.width - 1].hi == self.height;
        let monotone = self
            .columns
            .windows(2)
            .all(|w| w[0].lo <= w[1].lo && w[0].hi <= w[1].hi);
        PolyominoFlags {
            directed,
            antidirected,
            parallelogram: directed && antidirected && monotone,
        }
    }

    pub fn render(&self, format: RenderFormat) -> String {
        match format {
            RenderFormat::Ascii => self.render_ascii(),
            RenderFormat::Svg => self.render_svg(),
        }
    }

    /// `#` for cells and `.` for empty box cells, top row first, rows joined
    /// by newlines without a trailing one.
    pub fn render_ascii(&self) -> String {
        (0..self.height)
            .rev()
            .map(|row| {
                self.columns
                    .iter()
                    .map(|c| if c.contains(row) { '#' } else { '.' })
                    .collect::<String>()
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn render_svg(&self) -> String {
        const UNIT: usize = 20;
        const MARGIN: usize = 2;
        let w = self.width * UNIT + 2 * MARGIN;
        let h = self.height * UNIT + 2 * MARGIN;
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
        );
        let _ = writeln!(
            out,
            r##"  <rect x="{MARGIN}" y="{MARGIN}" width="{}" height="{}" fill="none" stroke="#888" stroke-dasharray="4 2"/>"##,
            self.width * UNIT,
            self.height * UNIT
        );
        for (x, col) in self.columns.iter().enumerate() {
            for row in col.lo..col.hi {
                let px = MARGIN + x * UNIT;
                let py = MARGIN + (self.height - 1 - row) * UNIT;
                let _ = writeln!(
                    out,
                    r##"  <rect x="{px}" y="{py}" width="{UNIT}" height="{UNIT}" fill="#4a7ebb" stroke="#1d3557"/>"##
                );
            }
        }
        out.push_str("</svg>\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i64, i64)]) -> Vec<Point> {
        v.iter().map(|&(x, y)| Point::new(x, y)).collect()
    }

    #[test]
    fn rectangle_is_valid_with_all_flags() {
        let p = ConvexPolyomino::rectangle(3, 2).unwrap();
        let f = p.flags();
        assert!(f.directed && f.antidirected && f.parallelogram);
        assert_eq!(p.area(), 6);
    }

    #[test]
    fn rejects_non_convex_row() {
        let err = validate(&[(0, 2), (1, 3), (0, 2)], 3, 3).unwrap_err();
        assert_eq!(err, PolyominoError::NotConvex { row: 0 });
    }

    #[test]
    fn rejects_disconnected_and_loose_boxes() {
        assert_eq!(
            validate(&[(0, 1), (1, 2)], 2, 2).unwrap_err(),
            PolyominoError::NotConnected { column: 0 }
        );
        assert_eq!(validate(&[(0, 1), (0, 1)], 2, 2).unwrap_err(), PolyominoError::BoxNotTight);
        assert_eq!(validate(&[(1, 2), (1, 2)], 2, 2).unwrap_err(), PolyominoError::BoxNotTight);
        assert!(matches!(
            validate(&[(1, 1)], 1, 1).unwrap_err(),
            PolyominoError::BadInterval { .. }
        ));
        assert!(matches!(
            validate(&[(0, 1)], 2, 1).unwrap_err(),
            PolyominoError::ColumnCount { .. }
        ));
    }

    #[test]
    fn large_staircase_is_valid() {
        // A 10 x 8 convex polyomino whose bottom row starts at column 4.
        let cols = [(3, 5), (2, 6), (1, 7), (1, 8), (0, 8), (0, 7), (0, 7), (1, 6), (2, 5), (3, 4)];
        let p = validate(&cols, 10, 8).unwrap();
        assert_eq!((p.width(), p.height()), (10, 8));
        assert_eq!(p.start_offset(), 4);
        let walk = p.boundary_walk();
        assert_eq!(walk.len(), 2 * 18 + 1);
        assert_eq!(walk[0], Point::new(4, 0));
        assert_eq!(walk[1], Point::new(4, 1));
        assert_eq!(ConvexPolyomino::from_boundary(&walk).unwrap(), p);
    }

    #[test]
    fn unit_square_boundary() {
        let p = ConvexPolyomino::rectangle(1, 1).unwrap();
        assert_eq!(p.boundary_walk(), pts(&[(0, 0), (0, 1), (1, 1), (1, 0), (0, 0)]));
    }

    #[test]
    fn bar_boundary() {
        let p = ConvexPolyomino::rectangle(4, 1).unwrap();
        let walk = p.boundary_walk();
        assert_eq!(walk.len() - 1, 10);
        assert_eq!(p.start_offset(), 0);
    }

    #[test]
    fn boundary_is_simple_and_clockwise() {
        let p = validate(&[(1, 2), (0, 3), (0, 1)], 3, 3).unwrap();
        let walk = p.boundary_walk();
        let mut seen = std::collections::HashSet::new();
        assert!(walk[..walk.len() - 1].iter().all(|v| seen.insert(*v)));
        // Shoelace: clockwise ⇒ negative signed area equal to the cell count.
        let twice_area: i64 = walk.windows(2).map(|e| e[0].x * e[1].y - e[1].x * e[0].y).sum();
        assert_eq!(-twice_area, 2 * p.area() as i64);
    }

    #[test]
    fn from_boundary_rejects_garbage() {
        assert_eq!(
            ConvexPolyomino::from_boundary(&pts(&[(0, 0), (0, 1), (1, 1), (1, 0)])),
            Err(PolyominoError::NotABoundary)
        );
        // Counter-clockwise square.
        assert_eq!(
            ConvexPolyomino::from_boundary(&pts(&[(0, 0), (1, 0), (1, 1), (0, 1), (0, 0)])),
            Err(PolyominoError::NotABoundary)
        );
    }

    #[test]
    fn flags_of_l_shape() {
        let l = validate(&[(0, 2), (0, 1)], 2, 2).unwrap();
        let f = l.flags();
        assert!(f.directed && !f.antidirected && !f.parallelogram);
        let mirrored = validate(&[(0, 1), (0, 2)], 2, 2).unwrap();
        assert!(mirrored.flags().parallelogram);
    }

    #[test]
    fn ascii_rendering() {
        assert_eq!(ConvexPolyomino::rectangle(1, 1).unwrap().render_ascii(), "#");
        let l = validate(&[(0, 2), (0, 1)], 2, 2).unwrap();
        assert_eq!(l.render(RenderFormat::Ascii), "#.\n##");
    }

    #[test]
    fn svg_rendering_is_deterministic() {
        let l = validate(&[(0, 2), (0, 1)], 2, 2).unwrap();
        let a = l.render(RenderFormat::Svg);
        assert_eq!(a, l.clone().render(RenderFormat::Svg));
        assert_eq!(a.matches("fill=\"#4a7ebb\"").count(), 3);
        assert!(a.starts_with("<svg") && a.ends_with("</svg>\n"));
    }

    #[test]
    fn json_interchange() {
        let l = validate(&[(0, 2), (0, 1)], 2, 2).unwrap();
        let text = serde_json::to_string(&l).unwrap();
        assert_eq!(text, r#"{"width":2,"height":2,"columns":[[0,2],[0,1]]}"#);
        let back: ConvexPolyomino = serde_json::from_str(&text).unwrap();
        assert_eq!(back, l);
        let bad = r#"{"width":3,"height":3,"columns":[[0,2],[1,3],[0,2]]}"#;
        assert!(serde_json::from_str::<ConvexPolyomino>(bad).is_err());
    }
}
