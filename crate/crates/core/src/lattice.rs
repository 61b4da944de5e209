//! Monotone lattice paths and the two-path uncrossing machinery.
//!
//! A [`MonotonePath`] stores a start point and a sequence of unit steps,
//! each either east (`E`) or north (`N`). Vertices are derived on demand; the
//! vertex at index `k` is the start plus the first `k` steps, so vertices are
//! strictly ordered by `x + y`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::counting::binomial;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("the two paths have no common vertex")]
    NoIntersection,
    #[error("malformed path `{0}`: expected steps over {{E,N}} followed by @(x,y)")]
    Parse(String),
}

/// An integer lattice point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    /// Position along the anti-diagonal direction; strictly increases along a
    /// monotone path.
    pub fn rank(self) -> i64 {
        self.x + self.y
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    E,
    N,
}

impl Step {
    pub fn delta(self) -> (i64, i64) {
        match self {
            Step::E => (1, 0),
            Step::N => (0, 1),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Step::E => 'E',
            Step::N => 'N',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'E' => Some(Step::E),
            'N' => Some(Step::N),
            _ => None,
        }
    }
}

/// A lattice path made of unit east and north steps.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct MonotonePath {
    pub start: Point,
    pub steps: Vec<Step>,
}

impl MonotonePath {
    pub fn new(start: Point, steps: Vec<Step>) -> Self {
        MonotonePath { start, steps }
    }

    /// Parses a bare step string such as `"ENNE"` starting at `start`.
    pub fn from_steps(start: Point, steps: &str) -> Result<Self, LatticeError> {
        let steps = steps
            .chars()
            .map(|c| Step::from_char(c).ok_or_else(|| LatticeError::Parse(steps.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MonotonePath { start, steps })
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn end(&self) -> Point {
        let (dx, dy) = self.steps.iter().fold((0, 0), |(x, y), s| {
            let (a, b) = s.delta();
            (x + a, y + b)
        });
        Point::new(self.start.x + dx, self.start.y + dy)
    }

    /// All `len() + 1` vertices, start first.
    pub fn vertices(&self) -> impl Iterator<Item = Point> + '_ {
        std::iter::once(self.start).chain(self.steps.iter().scan(self.start, |p, s| {
            let (dx, dy) = s.delta();
            p.x += dx;
            p.y += dy;
            Some(*p)
        }))
    }

    pub fn vertex_list(&self) -> Vec<Point> {
        self.vertices().collect()
    }

    pub fn count(&self, step: Step) -> usize {
        self.steps.iter().filter(|&&s| s == step).count()
    }
}

impl fmt::Display for MonotonePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}", s.as_char())?;
        }
        write!(f, "@{}", self.start)
    }
}

impl FromStr for MonotonePath {
    type Err = LatticeError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = || LatticeError::Parse(text.to_string());
        let (steps, point) = text.split_once('@').ok_or_else(err)?;
        let inner = point
            .trim()
            .strip_prefix('(')
            .and_then(|p| p.strip_suffix(')'))
            .ok_or_else(err)?;
        let (x, y) = inner.split_once(',').ok_or_else(err)?;
        let x = x.trim().parse().map_err(|_| err())?;
        let y = y.trim().parse().map_err(|_| err())?;
        MonotonePath::from_steps(Point::new(x, y), steps.trim()).map_err(|_| err())
    }
}

impl From<MonotonePath> for String {
    fn from(p: MonotonePath) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for MonotonePath {
    type Error = LatticeError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// An ordered pair of monotone paths; the paths may intersect.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PathPair {
    pub first: MonotonePath,
    pub second: MonotonePath,
}

impl PathPair {
    pub fn new(first: MonotonePath, second: MonotonePath) -> Self {
        PathPair { first, second }
    }
}

/// Number of E/N paths from `p` to `u`: `C(dx + dy, dx)`, zero when either
/// displacement is negative.
pub fn path_count(p: Point, u: Point) -> BigUint {
    let dx = u.x - p.x;
    let dy = u.y - p.y;
    if dy < 0 {
        return BigUint::default();
    }
    binomial(dx + dy, dx)
}

/// Walks the vertex lists of both paths in rank order and returns the
/// positions `(i, j)` of every common vertex.
fn common_vertices(a: &MonotonePath, b: &MonotonePath) -> Vec<(usize, usize)> {
    let va = a.vertex_list();
    let vb = b.vertex_list();
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < va.len() && j < vb.len() {
        match va[i].rank().cmp(&vb[j].rank()) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                if va[i] == vb[j] {
                    out.push((i, j));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Number of lattice points lying on both paths, endpoints included.
pub fn intersection_count(a: &MonotonePath, b: &MonotonePath) -> usize {
    common_vertices(a, b).len()
}

/// Swaps the suffixes of the two paths at their first common vertex (the one
/// of minimal `x + y`). The result shares that vertex, so applying the
/// operation again restores the input.
pub fn crossover_at_first_intersection(pair: &PathPair) -> Result<PathPair, LatticeError> {
    let (i, j) = *common_vertices(&pair.first, &pair.second)
        .first()
        .ok_or(LatticeError::NoIntersection)?;
    let a = &pair.first.steps;
    let b = &pair.second.steps;
    let first = a[..i].iter().chain(&b[j..]).copied().collect();
    let second = b[..j].iter().chain(&a[i..]).copied().collect();
    Ok(PathPair {
        first: MonotonePath::new(pair.first.start, first),
        second: MonotonePath::new(pair.second.start, second),
    })
}

/// Intersecting pairs `p → u`, `q → v`, valid when every pair `p → v`,
/// `q → u` must intersect: `N(p,v) · N(q,u)`.
pub fn intersecting_pair_count(p: Point, q: Point, u: Point, v: Point) -> BigInt {
    BigInt::from(path_count(p, v) * path_count(q, u))
}

/// Non-intersecting pairs `p → u`, `q → v` under the same hypothesis:
/// `N(p,u) · N(q,v) − N(p,v) · N(q,u)`.
pub fn nonintersecting_pair_count(p: Point, q: Point, u: Point, v: Point) -> BigInt {
    BigInt::from(path_count(p, u) * path_count(q, v)) - intersecting_pair_count(p, q, u, v)
}

/// Every monotone path from `p` to `u`, in lexicographic step order with
/// `E < N`. Yields nothing when the displacement is negative.
pub fn enumerate_paths(p: Point, u: Point) -> PathIter {
    let dx = u.x - p.x;
    let dy = u.y - p.y;
    let next = (dx >= 0 && dy >= 0).then(|| {
        let mut steps = vec![Step::E; dx as usize];
        steps.extend(std::iter::repeat_n(Step::N, dy as usize));
        steps
    });
    PathIter { start: p, next }
}

pub struct PathIter {
    start: Point,
    next: Option<Vec<Step>>,
}

impl Iterator for PathIter {
    type Item = MonotonePath;

    fn next(&mut self) -> Option<MonotonePath> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(MonotonePath::new(self.start, current))
    }
}

/// Advances to the lexicographically next arrangement; `false` at the last.
pub(crate) fn next_permutation<T: Ord>(xs: &mut [T]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}
