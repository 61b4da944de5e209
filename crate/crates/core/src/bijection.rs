//! Directed convex polyominoes from ordered pairs of monotone paths.
//!
//! A directed convex polyomino of width `w` and height `h` corresponds to a
//! pair of monotone paths from `(0,0)` to `(w−1, h−1)`. The construction:
//!
//! 1. Turn the grid by 45° with `(x, y) ↦ (x + y, y − x)`. The two paths
//!    become step functions `f, g` on `{1, …, s−1}` with `f(1) = 1`,
//!    `g(1) = −1` and `f(s−1) − g(s−1) = 2`.
//! 2. [`untangle`] them into a non-crossing pair `F ≥ G + 2` whose endpoint
//!    gap is `2 + 4i`.
//! 3. Turn back: `F` and `G` are non-intersecting paths from `(0,1)` to
//!    `(w−i−1, h+i)` and from `(1,0)` to `(w+i, h−i−1)`.
//! 4. Re-insert the implicit edges on the four sides, reflect the parts
//!    beyond the N and E sides back into the rectangle, and join them at
//!    `X = (w−i, h−i)`; see [`assemble_boundary`].
//!
//! Every step is invertible, which gives [`directed_to_pair`].
//!
//! The Grand-Motzkin variant ([`motzkin_untangle`]) replaces step 2 by a
//! left-to-right procedure that never swaps parts of `f` and `g`.
//!
//! Step functions are indexed from 1 like their domain; [`StepFunctionPair::f`]
//! takes `z ∈ 1..=s−1`.

use serde::Serialize;
use thiserror::Error;

use crate::lattice::{MonotonePath, Point, Step};
use crate::polyomino::ConvexPolyomino;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BijectionError {
    #[error("polyomino does not contain the lower-left corner of its box")]
    NotDirected,
    #[error("invalid step functions: {0}")]
    InvalidStepFunctions(&'static str),
    #[error("endpoint gap {gap} is not of the form 2 + 4i")]
    InvalidEndpoints { gap: i64 },
    #[error("invalid path pair: {0}")]
    BadPaths(&'static str),
    #[error("start heights {0} and {1} differ by an odd amount")]
    ParityError(i64, i64),
}

fn unit_steps(xs: &[i64]) -> bool {
    xs.windows(2).all(|w| (w[1] - w[0]).abs() == 1)
}

/// Two ±1 step functions on `{1, …, s−1}` starting at `+1` and `−1` and
/// ending two apart; the rotated form of a pair of monotone paths.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct StepFunctionPair {
    f: Vec<i64>,
    g: Vec<i64>,
}

impl StepFunctionPair {
    pub fn new(f: Vec<i64>, g: Vec<i64>) -> Result<Self, BijectionError> {
        let err = BijectionError::InvalidStepFunctions;
        if f.is_empty() || f.len() != g.len() {
            return Err(err("f and g need the same non-empty domain"));
        }
        if f[0] != 1 || g[0] != -1 {
            return Err(err("f must start at 1 and g at -1"));
        }
        if !unit_steps(&f) || !unit_steps(&g) {
            return Err(err("steps must be +1 or -1"));
        }
        if f[f.len() - 1] - g[g.len() - 1] != 2 {
            return Err(err("f and g must end two apart"));
        }
        Ok(StepFunctionPair { f, g })
    }

    /// Rotates two monotone paths from a common start to a common end.
    pub fn from_paths(u: &MonotonePath, v: &MonotonePath) -> Result<Self, BijectionError> {
        if u.start != v.start || u.end() != v.end() {
            return Err(BijectionError::BadPaths("paths must have the same displacement"));
        }
        StepFunctionPair::new(rotate(u, 1), rotate(v, -1))
    }

    /// The two paths from `(0,0)` that rotate to this pair.
    pub fn to_paths(&self) -> (MonotonePath, MonotonePath) {
        (unrotate(&self.f, Point::ORIGIN), unrotate(&self.g, Point::ORIGIN))
    }

    pub fn s(&self) -> usize {
        self.f.len() + 1
    }

    pub fn f(&self, z: usize) -> i64 {
        self.f[z - 1]
    }

    pub fn g(&self, z: usize) -> i64 {
        self.g[z - 1]
    }

    /// `δ(z) = f(z) − g(z)`.
    pub fn delta(&self, z: usize) -> i64 {
        self.f(z) - self.g(z)
    }

    pub fn width(&self) -> usize {
        shape(self.s(), self.f(self.s() - 1) - 1).0
    }

    pub fn height(&self) -> usize {
        shape(self.s(), self.f(self.s() - 1) - 1).1
    }
}

/// `(w, h)` from `s = w + h` and `h − w`.
fn shape(s: usize, h_minus_w: i64) -> (usize, usize) {
    let s = s as i64;
    (((s - h_minus_w) / 2) as usize, ((s + h_minus_w) / 2) as usize)
}

fn rotate(path: &MonotonePath, start: i64) -> Vec<i64> {
    std::iter::once(start)
        .chain(path.steps.iter().scan(start, |y, s| {
            *y += if *s == Step::N { 1 } else { -1 };
            Some(*y)
        }))
        .collect()
}

fn unrotate(values: &[i64], start: Point) -> MonotonePath {
    let steps = values
        .windows(2)
        .map(|w| if w[1] > w[0] { Step::N } else { Step::E })
        .collect();
    MonotonePath::new(start, steps)
}

/// A pair `F ≥ G + 2` with `F(1) = 1`, `G(1) = −1` and endpoint gap `2 + 4i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct NoncrossingPair {
    upper: Vec<i64>,
    lower: Vec<i64>,
    shift_index: usize,
}

impl NoncrossingPair {
    pub fn new(upper: Vec<i64>, lower: Vec<i64>) -> Result<Self, BijectionError> {
        let err = BijectionError::InvalidStepFunctions;
        if upper.is_empty() || upper.len() != lower.len() {
            return Err(err("F and G need the same non-empty domain"));
        }
        if upper[0] != 1 || lower[0] != -1 {
            return Err(err("F must start at 1 and G at -1"));
        }
        if !unit_steps(&upper) || !unit_steps(&lower) {
            return Err(err("steps must be +1 or -1"));
        }
        if upper.iter().zip(&lower).any(|(f, g)| f - g < 2) {
            return Err(err("F must stay at least 2 above G"));
        }
        let gap = upper[upper.len() - 1] - lower[lower.len() - 1];
        if (gap - 2) % 4 != 0 {
            return Err(BijectionError::InvalidEndpoints { gap });
        }
        Ok(NoncrossingPair { upper, lower, shift_index: ((gap - 2) / 4) as usize })
    }

    pub fn s(&self) -> usize {
        self.upper.len() + 1
    }

    #[allow(non_snake_case)]
    pub fn F(&self, z: usize) -> i64 {
        self.upper[z - 1]
    }

    #[allow(non_snake_case)]
    pub fn G(&self, z: usize) -> i64 {
        self.lower[z - 1]
    }

    /// The `i` in the endpoint gap `2 + 4i`.
    pub fn shift_index(&self) -> usize {
        self.shift_index
    }

    pub fn width(&self) -> usize {
        let end = self.s() - 1;
        shape(self.s(), (self.F(end) + self.G(end)) / 2).0
    }

    pub fn height(&self) -> usize {
        let end = self.s() - 1;
        shape(self.s(), (self.F(end) + self.G(end)) / 2).1
    }

    /// The upper function as a path from `(0,1)` and the lower one as a path
    /// from `(1,0)`, back in axis-parallel coordinates.
    pub fn to_paths(&self) -> (MonotonePath, MonotonePath) {
        (unrotate(&self.upper, Point::new(0, 1)), unrotate(&self.lower, Point::new(1, 0)))
    }
}

/// Right-to-left sweep: the positions where the repeated crossover happens,
/// from right to left. Targets alternate between `δ = 0` and `δ = 4`.
pub fn untangle_marks(p: &StepFunctionPair) -> Vec<usize> {
    let mut target = 0;
    let mut marks = Vec::new();
    for z in (1..p.s()).rev() {
        if p.f(z) - p.g(z) == target {
            marks.push(z);
            target = 4 - target;
        }
    }
    marks
}

/// Untangles `f, g` by repeatedly crossing over at the rightmost
/// intersection and pulling the paths 2 apart, done in one sweep each way.
pub fn untangle(p: &StepFunctionPair) -> NoncrossingPair {
    let marks = untangle_marks(p);
    let mut intersection = vec![false; p.s()];
    for &z in &marks {
        intersection[z] = true;
    }
    let mut swapped = marks.len() % 2 == 1;
    let mut shift = if swapped { 2 } else { 0 };
    let mut upper = Vec::with_capacity(p.s() - 1);
    let mut lower = Vec::with_capacity(p.s() - 1);
    for z in 1..p.s() {
        if swapped {
            upper.push(p.g(z) + shift);
            lower.push(p.f(z) - shift);
        } else {
            upper.push(p.f(z) + shift);
            lower.push(p.g(z) - shift);
        }
        if intersection[z] {
            swapped = !swapped;
            // Segments pair up from the right: (0,1), (2,3), ... share a shift.
            if swapped {
                shift += 4;
            }
        }
    }
    NoncrossingPair::new(upper, lower).expect("untangling yields a non-crossing pair")
}

/// Inverse of [`untangle`].
pub fn retangle(q: &NoncrossingPair) -> StepFunctionPair {
    let m = q.shift_index() as i64;
    let mut marked = vec![false; q.s()];
    let mut target = 4 * m;
    for z in (1..q.s()).rev() {
        if target > 0 && q.F(z) - q.G(z) == target {
            marked[z] = true;
            target -= 4;
        }
    }
    debug_assert_eq!(target, 0, "gap 2+4i passes every multiple of 4 below it");
    // Segment k counts marks strictly to the right of z, read left to right.
    let mut k = m;
    let mut f = Vec::with_capacity(q.s() - 1);
    let mut g = Vec::with_capacity(q.s() - 1);
    for z in 1..q.s() {
        let shift = 2 * m - 4 * (k / 2);
        if k % 2 == 1 {
            g.push(q.F(z) - shift);
            f.push(q.G(z) + shift);
        } else {
            f.push(q.F(z) - shift);
            g.push(q.G(z) + shift);
        }
        if marked[z] {
            k -= 1;
        }
    }
    StepFunctionPair::new(f, g).expect("retangling yields a valid pair")
}

/// Left-to-right alternative: at the leftmost point where `δ` first reaches
/// 0, then −2, then −4, … flip `f`'s down-step to an up-step and `g`'s up-step
/// to a down-step, shifting everything to the right by ±2.
pub fn motzkin_untangle(p: &StepFunctionPair) -> NoncrossingPair {
    let mut next_target = 0;
    let mut lift = 0;
    let mut upper = Vec::with_capacity(p.s() - 1);
    let mut lower = Vec::with_capacity(p.s() - 1);
    for z in 1..p.s() {
        if p.delta(z) == next_target {
            lift += 2;
            next_target -= 2;
        }
        upper.push(p.f(z) + lift);
        lower.push(p.g(z) - lift);
    }
    NoncrossingPair::new(upper, lower).expect("lifting yields a non-crossing pair")
}

/// Inverse of [`motzkin_untangle`]: right-to-left, the points just after the
/// rightmost positions where `F − G` equals `2i, 2i − 2, …, 2`.
pub fn motzkin_retangle(q: &NoncrossingPair) -> StepFunctionPair {
    let m = q.shift_index() as i64;
    let mut flips = vec![false; q.s() + 1];
    let mut target = 2 * m;
    for z in (1..q.s()).rev() {
        if target > 0 && q.F(z) - q.G(z) == target {
            flips[z + 1] = true;
            target -= 2;
        }
    }
    debug_assert_eq!(target, 0);
    let mut lift = 0;
    let mut f = Vec::with_capacity(q.s() - 1);
    let mut g = Vec::with_capacity(q.s() - 1);
    for z in 1..q.s() {
        if flips[z] {
            lift += 2;
        }
        f.push(q.F(z) - lift);
        g.push(q.G(z) + lift);
    }
    StepFunctionPair::new(f, g).expect("un-lifting yields a valid pair")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum MotzkinStep {
    /// `f` up, `g` down.
    Up,
    /// `f` down, `g` up.
    Down,
    /// Both up.
    FlatU,
    /// Both down.
    FlatD,
}

/// A two-coloured Grand-Motzkin path: the steps of `δ / 2`, with flat steps
/// coloured by whether both functions rise or both fall.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GrandMotzkinPath {
    pub steps: Vec<MotzkinStep>,
}

impl GrandMotzkinPath {
    pub fn is_balanced(&self) -> bool {
        let ups = self.steps.iter().filter(|&&s| s == MotzkinStep::Up).count();
        let downs = self.steps.iter().filter(|&&s| s == MotzkinStep::Down).count();
        ups == downs
    }
}

pub fn to_grand_motzkin(p: &StepFunctionPair) -> GrandMotzkinPath {
    let steps = (1..p.s() - 1)
        .map(|z| {
            let df = p.f(z + 1) - p.f(z);
            let dg = p.g(z + 1) - p.g(z);
            match (df, dg) {
                (1, -1) => MotzkinStep::Up,
                (-1, 1) => MotzkinStep::Down,
                (1, 1) => MotzkinStep::FlatU,
                _ => MotzkinStep::FlatD,
            }
        })
        .collect();
    GrandMotzkinPath { steps }
}

pub fn from_grand_motzkin(
    m: &GrandMotzkinPath,
    f_start: i64,
    g_start: i64,
) -> Result<StepFunctionPair, BijectionError> {
    if (f_start - g_start).rem_euclid(2) != 0 {
        return Err(BijectionError::ParityError(f_start, g_start));
    }
    let mut f = vec![f_start];
    let mut g = vec![g_start];
    for step in &m.steps {
        let (df, dg) = match step {
            MotzkinStep::Up => (1, -1),
            MotzkinStep::Down => (-1, 1),
            MotzkinStep::FlatU => (1, 1),
            MotzkinStep::FlatD => (-1, -1),
        };
        f.push(f[f.len() - 1] + df);
        g.push(g[g.len() - 1] + dg);
    }
    StepFunctionPair::new(f, g)
}

fn walk_points(start: Point, steps: &[Step]) -> Vec<Point> {
    MonotonePath::new(start, steps.to_vec()).vertex_list()
}

/// Re-inserts the implicit edges, reflects and joins two non-intersecting
/// paths `(0,1) → (w−i−1, h+i)` and `(1,0) → (w+i, h−i−1)` into a closed
/// clockwise walk from the origin. Works for any such pair; the walk is
/// simple exactly when the two paths do not meet.
pub fn assemble_boundary(upper: &MonotonePath, lower: &MonotonePath, w: usize, h: usize) -> Vec<Point> {
    let (w, h) = (w as i64, h as i64);
    // Upper: W-side implicit up-step, then the path with one extra E step on
    // first reaching the N side; everything above y = h is folded back.
    let mut up = vec![Point::ORIGIN];
    up.extend(walk_points(upper.start, &upper.steps));
    let up = insert_after_first(up, |p| p.y == h, Point::new(1, 0));
    let up: Vec<Point> = up
        .into_iter()
        .map(|p| if p.y > h { Point::new(p.x, 2 * h - p.y) } else { p })
        .collect();
    let mut low = vec![Point::ORIGIN];
    low.extend(walk_points(lower.start, &lower.steps));
    let low = insert_after_first(low, |p| p.x == w, Point::new(0, 1));
    let low: Vec<Point> = low
        .into_iter()
        .map(|p| if p.x > w { Point::new(2 * w - p.x, p.y) } else { p })
        .collect();
    let mut boundary = up;
    boundary.extend(low.into_iter().rev().skip(1));
    boundary
}

/// Inserts a unit step `(dx, dy)` right after the first vertex satisfying
/// `pred`, translating the rest of the path.
fn insert_after_first(points: Vec<Point>, pred: impl Fn(&Point) -> bool, d: Point) -> Vec<Point> {
    let Some(at) = points.iter().position(pred) else {
        return points;
    };
    let mut out = points[..=at].to_vec();
    out.extend(points[at..].iter().map(|p| Point::new(p.x + d.x, p.y + d.y)));
    out
}

/// Maps an ordered pair of monotone paths `(0,0) → (w−1, h−1)` to a
/// directed convex polyomino of width `w` and height `h`.
pub fn pair_to_directed(
    u: &MonotonePath,
    v: &MonotonePath,
    w: usize,
    h: usize,
) -> Result<ConvexPolyomino, BijectionError> {
    let target = Point::new(w as i64 - 1, h as i64 - 1);
    if w < 1 || h < 1 {
        return Err(BijectionError::BadPaths("width and height must be at least 1"));
    }
    if u.start != Point::ORIGIN || v.start != Point::ORIGIN || u.end() != target || v.end() != target {
        return Err(BijectionError::BadPaths("paths must run from (0,0) to (w-1,h-1)"));
    }
    let pair = StepFunctionPair::from_paths(u, v)?;
    Ok(noncrossing_to_directed(&untangle(&pair)))
}

/// The polyomino whose boundary is assembled from a non-crossing pair.
pub fn noncrossing_to_directed(q: &NoncrossingPair) -> ConvexPolyomino {
    let (upper, lower) = q.to_paths();
    let boundary = assemble_boundary(&upper, &lower, q.width(), q.height());
    ConvexPolyomino::from_boundary(&boundary).expect("non-crossing pairs bound directed polyominoes")
}

/// Splits the boundary of a directed polyomino back into the non-crossing
/// pair it was assembled from.
pub fn directed_to_noncrossing(p: &ConvexPolyomino) -> Result<NoncrossingPair, BijectionError> {
    if !p.flags().directed {
        return Err(BijectionError::NotDirected);
    }
    let (w, h) = (p.width() as i64, p.height() as i64);
    let walk = p.boundary_walk();
    debug_assert_eq!(walk[0], Point::ORIGIN);
    let north = walk.iter().position(|q| q.y == h).expect("boundary reaches the N side");
    let cut = north
        + walk[north..]
            .iter()
            .position(|q| q.y - q.x == h - w)
            .expect("boundary crosses the NE diagonal between the N and E sides");
    let up: Vec<Point> = walk[..=cut]
        .iter()
        .enumerate()
        .map(|(k, q)| if k > north { Point::new(q.x, 2 * h - q.y) } else { *q })
        .collect();
    let low: Vec<Point> = walk[cut..].iter().rev().copied().collect();
    let east = low.iter().position(|q| q.x == w).expect("boundary reaches the E side");
    let low: Vec<Point> = low
        .iter()
        .enumerate()
        .map(|(k, q)| if k > east { Point::new(2 * w - q.x, q.y) } else { *q })
        .collect();
    let upper = strip_implicit(&up, north)?;
    let lower = strip_implicit(&low, east)?;
    NoncrossingPair::new(rotate(&upper, 1), rotate(&lower, -1))
}

/// Drops the first step and the step leaving vertex `side`, returning the
/// remaining monotone path.
fn strip_implicit(points: &[Point], side: usize) -> Result<MonotonePath, BijectionError> {
    let steps = points
        .windows(2)
        .map(|e| match (e[1].x - e[0].x, e[1].y - e[0].y) {
            (1, 0) => Ok(Step::E),
            (0, 1) => Ok(Step::N),
            _ => Err(BijectionError::BadPaths("boundary piece is not monotone")),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let kept: Vec<Step> = steps
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != 0 && k != side)
        .map(|(_, s)| *s)
        .collect();
    Ok(MonotonePath::new(points[1], kept))
}

/// Inverse of [`pair_to_directed`].
pub fn directed_to_pair(p: &ConvexPolyomino) -> Result<(MonotonePath, MonotonePath), BijectionError> {
    let q = directed_to_noncrossing(p)?;
    Ok(retangle(&q).to_paths())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::enumerate_paths;
    use std::collections::HashSet;

    fn pairs(w: usize, h: usize) -> Vec<(MonotonePath, MonotonePath)> {
        let end = Point::new(w as i64 - 1, h as i64 - 1);
        let paths: Vec<_> = enumerate_paths(Point::ORIGIN, end).collect();
        paths
            .iter()
            .flat_map(|u| paths.iter().map(move |v| (u.clone(), v.clone())))
            .collect()
    }

    fn sfp(u: &MonotonePath, v: &MonotonePath) -> StepFunctionPair {
        StepFunctionPair::from_paths(u, v).unwrap()
    }

    #[test]
    fn rotation_endpoints() {
        for (u, v) in pairs(3, 4) {
            let p = sfp(&u, &v);
            assert_eq!(p.s(), 7);
            assert_eq!(p.f(6), 4 - 3 + 1);
            assert_eq!(p.g(6), 4 - 3 - 1);
            assert_eq!((p.width(), p.height()), (3, 4));
            assert_eq!(p.to_paths(), (u, v));
        }
    }

    #[test]
    fn untangle_fixes_non_crossing_input() {
        let u = MonotonePath::from_steps(Point::ORIGIN, "NNEE").unwrap();
        let v = MonotonePath::from_steps(Point::ORIGIN, "EENN").unwrap();
        let p = sfp(&u, &v);
        assert!(untangle_marks(&p).is_empty());
        let q = untangle(&p);
        assert_eq!(q.shift_index(), 0);
        assert_eq!((1..p.s()).map(|z| q.F(z)).collect::<Vec<_>>(), (1..p.s()).map(|z| p.f(z)).collect::<Vec<_>>());
        assert_eq!(retangle(&q), p);
    }

    #[test]
    fn single_crossing_by_hand() {
        // f = (1,0,1), g = (-1,0,-1): one mark at z = 2.
        let p = StepFunctionPair::new(vec![1, 0, 1], vec![-1, 0, -1]).unwrap();
        assert_eq!(untangle_marks(&p), vec![2]);
        let q = untangle(&p);
        assert_eq!(q.shift_index(), 1);
        assert_eq!((q.F(1), q.F(2), q.F(3)), (1, 2, 3));
        assert_eq!((q.G(1), q.G(2), q.G(3)), (-1, -2, -3));
        assert_eq!(retangle(&q), p);
    }

    #[test]
    fn two_crossings_by_hand() {
        // δ = 2,4,2,0,2: marks at z = 4 (δ=0) and z = 2 (δ=4).
        let p = StepFunctionPair::new(vec![1, 2, 1, 0, 1], vec![-1, -2, -1, 0, -1]).unwrap();
        assert_eq!(untangle_marks(&p), vec![4, 2]);
        let q = untangle(&p);
        assert_eq!(q.shift_index(), 2);
        let upper: Vec<i64> = (1..6).map(|z| q.F(z)).collect();
        let lower: Vec<i64> = (1..6).map(|z| q.G(z)).collect();
        assert_eq!(upper, vec![1, 2, 3, 4, 5]);
        assert_eq!(lower, vec![-1, -2, -3, -4, -5]);
        assert_eq!(retangle(&q), p);
    }

    #[test]
    fn noncrossing_validation() {
        assert!(matches!(
            NoncrossingPair::new(vec![1, 2], vec![-1, -2]),
            Err(BijectionError::InvalidEndpoints { gap: 4 })
        ));
        assert!(NoncrossingPair::new(vec![1, 0], vec![-1, 0]).is_err());
        assert!(NoncrossingPair::new(vec![1, 2, 3], vec![-1, -2, -3]).is_ok());
    }

    #[test]
    fn untangle_is_bijective_for_small_boxes() {
        for s in 2..=7 {
            for w in 1..s {
                let h = s - w;
                let mut seen = HashSet::new();
                for (u, v) in pairs(w, h) {
                    let p = sfp(&u, &v);
                    let q = untangle(&p);
                    assert_eq!((q.width(), q.height()), (w, h));
                    assert_eq!(retangle(&q), p);
                    assert!(seen.insert(q));
                }
            }
        }
    }

    #[test]
    fn motzkin_matches_untangle_partition() {
        for s in 2..=7 {
            for w in 1..s {
                let mut by_untangle = std::collections::BTreeMap::new();
                let mut by_motzkin = std::collections::BTreeMap::new();
                let mut seen = HashSet::new();
                for (u, v) in pairs(w, s - w) {
                    let p = sfp(&u, &v);
                    let q = motzkin_untangle(&p);
                    assert_eq!(motzkin_retangle(&q), p);
                    *by_motzkin.entry(q.shift_index()).or_insert(0) += 1;
                    *by_untangle.entry(untangle(&p).shift_index()).or_insert(0) += 1;
                    assert!(seen.insert(q));
                }
                assert_eq!(by_motzkin, by_untangle);
            }
        }
    }

    #[test]
    fn motzkin_lifts_at_new_minima() {
        // δ = 2,0,-2,0,2 lifts twice; the right-to-left sweep marks once.
        let p = StepFunctionPair::new(vec![1, 0, -1, 0, 1], vec![-1, 0, 1, 0, -1]).unwrap();
        assert_eq!(motzkin_untangle(&p).shift_index(), 2);
        assert_eq!(untangle(&p).shift_index(), 1);
    }

    #[test]
    fn unit_square_and_two_by_two() {
        let empty = MonotonePath::new(Point::ORIGIN, vec![]);
        let p = pair_to_directed(&empty, &empty, 1, 1).unwrap();
        assert_eq!(p, ConvexPolyomino::rectangle(1, 1).unwrap());
        assert_eq!(directed_to_pair(&p).unwrap(), (empty.clone(), empty));
        let images: HashSet<_> = pairs(2, 2)
            .iter()
            .map(|(u, v)| pair_to_directed(u, v, 2, 2).unwrap())
            .collect();
        assert_eq!(images.len(), 4);
        assert!(images.iter().all(|p| p.flags().directed));
    }

    #[test]
    fn pair_to_directed_is_bijective_for_small_boxes() {
        for s in 2..=7 {
            for w in 1..s {
                let h = s - w;
                let mut image = HashSet::new();
                for (u, v) in pairs(w, h) {
                    let p = pair_to_directed(&u, &v, w, h).unwrap();
                    assert_eq!((p.width(), p.height()), (w, h));
                    assert!(p.flags().directed);
                    assert_eq!(directed_to_pair(&p).unwrap(), (u, v));
                    image.insert(p);
                }
                let expected = crate::counting::count(crate::CountClass::Directed, w as u64, h as u64).unwrap();
                assert_eq!(num_bigint::BigUint::from(image.len()), expected);
            }
        }
    }

    #[test]
    fn reflection_preserves_intersections() {
        for (w, h) in [(2, 2), (3, 2), (2, 3), (3, 3), (4, 2)] {
            for i in 0..=1i64 {
                let (w_, h_) = (w as i64, h as i64);
                if w_ - i < 1 || h_ - i < 1 {
                    continue;
                }
                let uppers: Vec<_> = enumerate_paths(Point::new(0, 1), Point::new(w_ - i - 1, h_ + i)).collect();
                let lowers: Vec<_> = enumerate_paths(Point::new(1, 0), Point::new(w_ + i, h_ - i - 1)).collect();
                for u in &uppers {
                    for l in &lowers {
                        let meet = crate::lattice::intersection_count(u, l) > 0;
                        let boundary = assemble_boundary(u, l, w, h);
                        assert_eq!(boundary.first(), boundary.last());
                        let distinct: HashSet<_> = boundary[1..].iter().collect();
                        assert_eq!(distinct.len() < boundary.len() - 1, meet, "{u} {l}");
                    }
                }
            }
        }
    }

    #[test]
    fn rectangle_round_trip() {
        let r = ConvexPolyomino::rectangle(3, 2).unwrap();
        let (u, v) = directed_to_pair(&r).unwrap();
        assert_eq!(pair_to_directed(&u, &v, 3, 2).unwrap(), r);
    }

    #[test]
    fn not_directed_is_rejected() {
        let p = crate::polyomino::validate(&[(1, 2), (0, 2)], 2, 2).unwrap();
        assert_eq!(directed_to_pair(&p), Err(BijectionError::NotDirected));
    }

    #[test]
    fn grand_motzkin_round_trip() {
        let up = StepFunctionPair::new(vec![1, 2, 3], vec![-1, 0, 1]).unwrap();
        let m = to_grand_motzkin(&up);
        assert_eq!(m.steps, vec![MotzkinStep::FlatU, MotzkinStep::FlatU]);
        for (u, v) in pairs(3, 3) {
            let p = sfp(&u, &v);
            let m = to_grand_motzkin(&p);
            assert!(m.is_balanced());
            assert_eq!(from_grand_motzkin(&m, 1, -1).unwrap(), p);
        }
        assert_eq!(from_grand_motzkin(&m, 1, 0), Err(BijectionError::ParityError(1, 0)));
    }
}
