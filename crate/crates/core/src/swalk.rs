//! S-walks: shortest closed grid walks that span their enclosing rectangle.
//!
//! An S-walk in a `w × h` rectangle has length `2(w + h)` and at least one
//! edge on each side. It is oriented so that the edges on the bottom (S)
//! side run westwards and starts at the leftmost point `(a, 0)` of that side,
//! leaving it with an up-step. Simple S-walks are exactly the clockwise
//! boundaries of convex polyominoes.
//!
//! # Code
//!
//! A walk is coded by its start offset `a` and a word over `{V, H}` telling
//! whether each step is vertical or horizontal. The sign of each step is not
//! recorded: the walk keeps moving in its current horizontal and vertical
//! directions and reverses one of them only when the step would leave the
//! rectangle. Five steps are never coded:
//!
//! * the first up-step out of `(a, 0)`;
//! * one *implicit* step per side, taken immediately on the first arrival
//!   at that side (the bottom side counts on the walk's return to it).
//!
//! When `a = 0` the first up-step already runs along the W side and doubles
//! as its implicit step. So the code has `2w − 2` H's and `2h − 2` V's when
//! `a = 0`, and `2w − 2` H's and `2h − 3` V's when `1 ≤ a ≤ w − 1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::Point;
use crate::polyomino::ConvexPolyomino;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SWalkError {
    #[error("malformed S-walk code: {0}")]
    MalformedCode(String),
    #[error("traced walk for code `{0}` is not a closed S-walk")]
    InternalError(String),
    #[error("not an S-walk: {0}")]
    NotAnSWalk(&'static str),
    #[error("walk intersects itself")]
    SelfIntersecting,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    V,
    H,
}

impl Symbol {
    fn as_char(self) -> char {
        match self {
            Symbol::V => 'V',
            Symbol::H => 'H',
        }
    }

    fn axis(self) -> Axis {
        match self {
            Symbol::V => Axis::Vertical,
            Symbol::H => Axis::Horizontal,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Axis {
    Horizontal,
    Vertical,
}

/// Start offset plus {V,H} word; see the module docs for the invariants.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct SWalkCode {
    w: usize,
    h: usize,
    a: usize,
    symbols: Vec<Symbol>,
}

impl SWalkCode {
    pub fn new(w: usize, h: usize, a: usize, symbols: Vec<Symbol>) -> Result<Self, SWalkError> {
        let bad = |m: String| Err(SWalkError::MalformedCode(m));
        if w < 1 || h < 1 {
            return bad(format!("w={w} h={h}: sides must be at least 1"));
        }
        if a >= w {
            return bad(format!("a={a} must be below w={w}"));
        }
        let hs = symbols.iter().filter(|&&s| s == Symbol::H).count();
        let vs = symbols.len() - hs;
        let want_v = if a == 0 { 2 * h - 2 } else { (2 * h).checked_sub(3).unwrap_or(usize::MAX) };
        if hs != 2 * w - 2 || vs != want_v {
            return bad(format!(
                "w={w} h={h} a={a} needs {} H and {} V, got {hs} H and {vs} V",
                2 * w - 2,
                if want_v == usize::MAX { "-1".to_string() } else { want_v.to_string() }
            ));
        }
        Ok(SWalkCode { w, h, a, symbols })
    }

    /// Parses a bare symbol word, e.g. `"VHH"`.
    pub fn from_word(w: usize, h: usize, a: usize, word: &str) -> Result<Self, SWalkError> {
        let symbols = word
            .chars()
            .map(|c| match c {
                'V' => Ok(Symbol::V),
                'H' => Ok(Symbol::H),
                _ => Err(SWalkError::MalformedCode(format!("unexpected symbol `{c}`"))),
            })
            .collect::<Result<_, _>>()?;
        SWalkCode::new(w, h, a, symbols)
    }

    pub fn width(&self) -> usize {
        self.w
    }

    pub fn height(&self) -> usize {
        self.h
    }

    pub fn offset(&self) -> usize {
        self.a
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn word(&self) -> String {
        self.symbols.iter().map(|s| s.as_char()).collect()
    }
}

impl fmt::Display for SWalkCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w={} h={} a={}", self.w, self.h, self.a)?;
        if !self.symbols.is_empty() {
            write!(f, " {}", self.word())?;
        }
        Ok(())
    }
}

impl FromStr for SWalkCode {
    type Err = SWalkError;

    /// Accepts `"w=4 h=4 a=2 VHHVHVVHHVH"`; the word may be absent when empty.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || SWalkError::MalformedCode(format!("cannot parse `{text}`"));
        let mut parts = text.split_whitespace();
        let mut field = |name: &str| -> Result<usize, SWalkError> {
            parts
                .next()
                .and_then(|p| p.strip_prefix(name))
                .and_then(|p| p.strip_prefix('='))
                .and_then(|v| v.parse().ok())
                .ok_or_else(bad)
        };
        let w = field("w")?;
        let h = field("h")?;
        let a = field("a")?;
        let word = parts.next().unwrap_or("");
        if parts.next().is_some() {
            return Err(bad());
        }
        SWalkCode::from_word(w, h, a, word)
    }
}

impl From<SWalkCode> for String {
    fn from(c: SWalkCode) -> String {
        c.to_string()
    }
}

impl TryFrom<String> for SWalkCode {
    type Error = SWalkError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// A closed walk of length `2(w + h)` spanning `[0,w] × [0,h]`. The vertex
/// list repeats the start at the end.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClosedWalk {
    w: usize,
    h: usize,
    vertices: Vec<Point>,
}

/// The order in which the walk first reaches the W, N and E sides after
/// starting on the S side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SideOrder {
    SWNE,
    SNWE,
    SWEN,
}

impl fmt::Display for SideOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl ClosedWalk {
    /// Checks closure, unit steps, the step budget (`w` steps each way
    /// horizontally, `h` each way vertically) and that every side of the
    /// bounding rectangle carries an edge.
    pub fn new(vertices: Vec<Point>) -> Result<Self, SWalkError> {
        let err = SWalkError::NotAnSWalk;
        if vertices.len() < 5 || vertices.first() != vertices.last() {
            return Err(err("walk is not closed"));
        }
        if vertices.iter().any(|p| p.x < 0 || p.y < 0) {
            return Err(err("walk leaves the first quadrant"));
        }
        let w = vertices.iter().map(|p| p.x).max().unwrap_or(0) as usize;
        let h = vertices.iter().map(|p| p.y).max().unwrap_or(0) as usize;
        let min_x = vertices.iter().map(|p| p.x).min().unwrap_or(0);
        let min_y = vertices.iter().map(|p| p.y).min().unwrap_or(0);
        if min_x != 0 || min_y != 0 || w == 0 || h == 0 {
            return Err(err("bounding box is not anchored at the origin"));
        }
        let mut tally = [0usize; 4];
        let mut sides = [false; 4];
        for e in vertices.windows(2) {
            let (p, q) = (e[0], e[1]);
            let k = match (q.x - p.x, q.y - p.y) {
                (1, 0) => 0,
                (-1, 0) => 1,
                (0, 1) => 2,
                (0, -1) => 3,
                _ => return Err(err("non-unit step")),
            };
            tally[k] += 1;
            if p.y == q.y && p.y == 0 {
                sides[0] = true;
            }
            if p.x == q.x && p.x == 0 {
                sides[1] = true;
            }
            if p.y == q.y && p.y == h as i64 {
                sides[2] = true;
            }
            if p.x == q.x && p.x == w as i64 {
                sides[3] = true;
            }
        }
        if tally != [w, w, h, h] {
            return Err(err("walk is not a shortest closed walk of its rectangle"));
        }
        if !sides.iter().all(|&s| s) {
            return Err(err("walk does not have an edge on every side"));
        }
        Ok(ClosedWalk { w, h, vertices })
    }

    pub fn width(&self) -> usize {
        self.w
    }

    pub fn height(&self) -> usize {
        self.h
    }

    /// Vertices including the repeated start at the end.
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn cycle(&self) -> &[Point] {
        &self.vertices[..self.vertices.len() - 1]
    }

    /// The same cycle started at its leftmost bottom point.
    fn normalized(&self) -> ClosedWalk {
        let cycle = self.cycle();
        let start = (0..cycle.len())
            .filter(|&i| cycle[i].y == 0)
            .min_by_key(|&i| cycle[i].x)
            .expect("spanning walk touches the bottom side");
        let mut vertices: Vec<Point> = cycle[start..].iter().chain(&cycle[..start]).copied().collect();
        vertices.push(vertices[0]);
        ClosedWalk { w: self.w, h: self.h, vertices }
    }
}

/// Replays the sign rule and implicit-side-step rule shared by [`decode`]
/// and [`encode`].
struct Tracer {
    w: i64,
    h: i64,
    at: Point,
    h_sign: i64,
    v_sign: i64,
    touched_w: bool,
    touched_n: bool,
    touched_e: bool,
    returned_s: bool,
    vertices: Vec<Point>,
}

impl Tracer {
    fn new(w: usize, h: usize, a: usize) -> Self {
        let at = Point::new(a as i64, 0);
        Tracer {
            w: w as i64,
            h: h as i64,
            at,
            h_sign: -1,
            v_sign: 1,
            touched_w: a == 0,
            touched_n: false,
            touched_e: false,
            returned_s: false,
            vertices: vec![at],
        }
    }

    fn advance(&mut self, axis: Axis) -> Point {
        match axis {
            Axis::Horizontal => {
                if !(0..=self.w).contains(&(self.at.x + self.h_sign)) {
                    self.h_sign = -self.h_sign;
                }
                self.at.x += self.h_sign;
            }
            Axis::Vertical => {
                if !(0..=self.h).contains(&(self.at.y + self.v_sign)) {
                    self.v_sign = -self.v_sign;
                }
                self.at.y += self.v_sign;
            }
        }
        self.vertices.push(self.at);
        self.at
    }

    /// The axis of the implicit step owed for a side reached for the first
    /// time, if any; marks that side as served.
    fn owed_implicit(&mut self) -> Option<Axis> {
        if !self.touched_w && self.at.x == 0 {
            self.touched_w = true;
            Some(Axis::Vertical)
        } else if !self.touched_n && self.at.y == self.h {
            self.touched_n = true;
            Some(Axis::Horizontal)
        } else if !self.touched_e && self.at.x == self.w {
            self.touched_e = true;
            Some(Axis::Vertical)
        } else if !self.returned_s && self.at.y == 0 && self.vertices.len() > 1 {
            self.returned_s = true;
            Some(Axis::Horizontal)
        } else {
            None
        }
    }
}

/// Traces the walk described by `code`.
pub fn decode(code: &SWalkCode) -> Result<ClosedWalk, SWalkError> {
    let mut t = Tracer::new(code.w, code.h, code.a);
    t.advance(Axis::Vertical);
    let mut symbols = code.symbols.iter();
    loop {
        while let Some(axis) = t.owed_implicit() {
            t.advance(axis);
        }
        match symbols.next() {
            Some(s) => {
                t.advance(s.axis());
            }
            None => break,
        }
    }
    let start = Point::new(code.a as i64, 0);
    let internal = || SWalkError::InternalError(code.to_string());
    if t.at != start || t.vertices.len() != 2 * (code.w + code.h) + 1 {
        return Err(internal());
    }
    let walk = ClosedWalk::new(t.vertices).map_err(|_| internal())?;
    if walk.w != code.w || walk.h != code.h {
        return Err(internal());
    }
    Ok(walk)
}

/// Recovers the code of an S-walk given in canonical orientation, starting at
/// the leftmost point of its bottom side.
pub fn encode(walk: &ClosedWalk) -> Result<SWalkCode, SWalkError> {
    let err = SWalkError::NotAnSWalk;
    let vs = walk.vertices();
    let start = vs[0];
    if start.y != 0 {
        return Err(err("walk does not start on the bottom side"));
    }
    if walk.cycle().iter().any(|p| p.y == 0 && p.x < start.x) {
        return Err(err("walk does not start at the leftmost bottom point"));
    }
    let a = start.x as usize;
    if a >= walk.w {
        return Err(err("start offset out of range"));
    }
    let mut t = Tracer::new(walk.w, walk.h, a);
    if t.advance(Axis::Vertical) != vs[1] {
        return Err(err("walk does not leave its start upwards"));
    }
    let mut symbols = Vec::with_capacity(vs.len());
    for &next in &vs[2..] {
        let (axis, coded) = match t.owed_implicit() {
            Some(axis) => (axis, false),
            None if next.x != t.at.x => (Axis::Horizontal, true),
            None => (Axis::Vertical, true),
        };
        if t.advance(axis) != next {
            return Err(err("walk violates the S-walk orientation"));
        }
        if coded {
            symbols.push(match axis {
                Axis::Horizontal => Symbol::H,
                Axis::Vertical => Symbol::V,
            });
        }
    }
    let code = SWalkCode::new(walk.w, walk.h, a, symbols)
        .map_err(|_| err("implicit side steps are missing"))?;
    match decode(&code) {
        Ok(ref back) if back == walk => Ok(code),
        _ => Err(err("walk is not reproduced by its code")),
    }
}

/// Order of first contact with the W, N and E sides.
pub fn classify(walk: &ClosedWalk) -> SideOrder {
    let cycle = walk.cycle();
    let first = |pred: &dyn Fn(&Point) -> bool| cycle.iter().position(pred).unwrap_or(usize::MAX);
    let west = first(&|p| p.x == 0);
    let north = first(&|p| p.y == walk.h as i64);
    let east = first(&|p| p.x == walk.w as i64);
    debug_assert!(west < east, "S-walks reach the W side before the E side");
    if north < west {
        SideOrder::SNWE
    } else if north > east {
        SideOrder::SWEN
    } else {
        SideOrder::SWNE
    }
}

/// Whether some lattice point is visited twice (the closing return to the
/// start does not count).
pub fn self_intersects(walk: &ClosedWalk) -> bool {
    let mut seen = std::collections::HashSet::with_capacity(walk.len());
    !walk.cycle().iter().all(|p| seen.insert(*p))
}

/// The convex polyomino bounded by a simple S-walk.
pub fn to_polyomino(walk: &ClosedWalk) -> Result<ConvexPolyomino, SWalkError> {
    if self_intersects(walk) {
        return Err(SWalkError::SelfIntersecting);
    }
    let walk = walk.normalized();
    ConvexPolyomino::from_boundary(walk.vertices())
        .map_err(|_| SWalkError::NotAnSWalk("simple walk is not a clockwise boundary"))
}

/// The boundary walk of a convex polyomino, as an S-walk.
pub fn from_polyomino(p: &ConvexPolyomino) -> ClosedWalk {
    ClosedWalk::new(p.boundary_walk()).expect("polyomino boundaries are S-walks")
}

/// Which of the walk's monotone pieces share a lattice point.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub(crate) struct Crossings {
    /// The two rising pieces meet.
    pub rising: bool,
    /// The two falling pieces meet.
    pub falling: bool,
    /// A rising piece meets a falling piece.
    pub mixed: bool,
}

/// Splits the walk into the pieces between its side runs and reports which
/// kinds of pieces meet. A piece is rising when it moves in the same sense
/// horizontally and vertically; the walk moves west until it has reached the
/// W side, east until the E side, then west again, and north until it has
/// reached the N side.
pub(crate) fn crossings(walk: &ClosedWalk) -> Crossings {
    let (w, h) = (walk.w as i64, walk.h as i64);
    let cycle = walk.normalized();
    let cycle = cycle.cycle();
    let reach = |pred: &dyn Fn(&Point) -> bool| cycle.iter().position(pred).unwrap_or(usize::MAX);
    let west = reach(&|p| p.x == 0);
    let north = reach(&|p| p.y == h);
    let east = reach(&|p| p.x == w);
    let mut rising_at = std::collections::HashMap::new();
    let mut out = Crossings::default();
    for (t, p) in cycle.iter().enumerate() {
        if p.x == 0 || p.y == 0 || p.x == w || p.y == h {
            continue;
        }
        let h_dir = if t > west && t < east { 1 } else { -1 };
        let v_dir = if t < north { 1 } else { -1 };
        let rising = h_dir == v_dir;
        if let Some(other) = rising_at.insert(*p, rising) {
            match (other, rising) {
                (true, true) => out.rising = true,
                (false, false) => out.falling = true,
                _ => out.mixed = true,
            }
        }
    }
    out
}
