//! Brute-force ground truth.
//!
//! Nothing here uses the closed forms of [`crate::counting`]; every count
//! comes from exhaustive enumeration, so the two can be compared.
//!
//! Enumerations are capped by a [`Budget`] on the semi-perimeter, so a
//! careless call fails fast instead of running for hours.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigUint;
use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};
use thiserror::Error;

use crate::counting::CountClass;
use crate::lattice::{enumerate_paths, next_permutation, MonotonePath, Point};
use crate::polyomino::{validate, ConvexPolyomino};
use crate::swalk::{classify, crossings, decode, self_intersects, ClosedWalk, SWalkCode, SideOrder, Symbol};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("{what} with semi-perimeter {requested} exceeds the budget of {limit}")]
    BudgetExceeded { what: &'static str, requested: usize, limit: usize },
    #[error("width and height must be at least 1, got {w}x{h}")]
    Domain { w: usize, h: usize },
    #[error("no brute-force enumeration for class `{0}`")]
    Unsupported(CountClass),
    #[error("draw {0} is not in the support")]
    UnknownObject(String),
    #[error("{got} draws are too few for a support of {support}; need at least {needed}")]
    InsufficientDraws { got: u64, needed: u64, support: usize },
    #[error("probabilities must be positive and sum to 1")]
    BadProbabilities,
}

/// Largest semi-perimeters the enumerations accept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// For polyomino and S-walk enumerations.
    pub max_semi_perimeter: usize,
    /// For the double loop over path pairs in [`brute_moments`].
    pub max_path_semi_perimeter: usize,
}

impl Budget {
    pub const DEFAULT_SEMI_PERIMETER: usize = 10;
    pub const DEFAULT_PATH_SEMI_PERIMETER: usize = 12;

    pub fn with_semi_perimeter(max: usize) -> Self {
        Budget { max_semi_perimeter: max, max_path_semi_perimeter: max.max(Self::DEFAULT_PATH_SEMI_PERIMETER) }
    }

    fn check(&self, what: &'static str, s: usize) -> Result<(), OracleError> {
        if s > self.max_semi_perimeter {
            return Err(OracleError::BudgetExceeded { what, requested: s, limit: self.max_semi_perimeter });
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_semi_perimeter: Self::DEFAULT_SEMI_PERIMETER,
            max_path_semi_perimeter: Self::DEFAULT_PATH_SEMI_PERIMETER,
        }
    }
}

fn check_box(w: usize, h: usize) -> Result<(), OracleError> {
    if w == 0 || h == 0 {
        Err(OracleError::Domain { w, h })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumerationReport {
    pub class: CountClass,
    pub width: usize,
    pub height: usize,
    #[serde(serialize_with = "crate::counting::serialize_decimal")]
    pub count: BigUint,
    /// Every object, when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub objects: Option<Vec<ConvexPolyomino>>,
}

/// Every polyomino of the class with a `w × h` box, found by trying all
/// `w`-tuples of column intervals. Supports the convex, directed and
/// parallelogram classes.
pub fn enumerate_polyominoes(
    class: CountClass,
    w: usize,
    h: usize,
    budget: &Budget,
    keep: bool,
) -> Result<EnumerationReport, OracleError> {
    check_box(w, h)?;
    budget.check("polyomino enumeration", w + h)?;
    let wanted: fn(&ConvexPolyomino) -> bool = match class {
        CountClass::Convex => |_| true,
        CountClass::Directed => |p| p.flags().directed,
        CountClass::Parallelogram => |p| p.flags().parallelogram,
        other => return Err(OracleError::Unsupported(other)),
    };
    let intervals: Vec<(usize, usize)> =
        (0..h).flat_map(|lo| (lo + 1..=h).map(move |hi| (lo, hi))).collect();
    let mut choice = vec![0usize; w];
    let mut objects = Vec::new();
    let mut count = 0u64;
    loop {
        let columns: Vec<(usize, usize)> = choice.iter().map(|&i| intervals[i]).collect();
        if let Ok(p) = validate(&columns, w, h) {
            if wanted(&p) {
                count += 1;
                if keep {
                    objects.push(p);
                }
            }
        }
        // Odometer over the column choices.
        let mut col = 0;
        while col < w && choice[col] + 1 == intervals.len() {
            choice[col] = 0;
            col += 1;
        }
        if col == w {
            break;
        }
        choice[col] += 1;
    }
    Ok(EnumerationReport { class, width: w, height: h, count: count.into(), objects: keep.then_some(objects) })
}

pub fn enumerate_convex(w: usize, h: usize, budget: &Budget) -> Result<EnumerationReport, OracleError> {
    enumerate_polyominoes(CountClass::Convex, w, h, budget, false)
}

/// Number of polyominoes of the class with semi-perimeter `s`.
pub fn enumerate_perimeter(class: CountClass, s: usize, budget: &Budget) -> Result<BigUint, OracleError> {
    budget.check("polyomino enumeration", s)?;
    let mut total = BigUint::default();
    for w in 1..s {
        total += enumerate_polyominoes(class, w, s - w, budget, false)?.count;
    }
    Ok(total)
}

/// Tallies over every S-walk code of a `w × h` box.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SWalkTally {
    pub width: usize,
    pub height: usize,
    pub total: u64,
    pub simple: u64,
    /// Self-intersecting walks whose rising pieces meet.
    pub rising: u64,
    /// Self-intersecting walks whose falling pieces meet.
    pub falling: u64,
    /// Walks where a rising piece meets a falling one.
    pub mixed: u64,
    pub side_orders: BTreeMap<SideOrder, u64>,
    /// Side orders of the simple walks alone.
    pub simple_side_orders: BTreeMap<SideOrder, u64>,
    #[serde(skip)]
    pub codes: Option<Vec<SWalkCode>>,
}

impl SWalkTally {
    pub fn self_intersecting(&self) -> u64 {
        self.total - self.simple
    }
}

/// All codes of a `w × h` box, ordered by offset, then lexicographically.
pub fn swalk_codes(w: usize, h: usize) -> Vec<SWalkCode> {
    let mut out = Vec::new();
    for a in 0..w {
        let vs = if a == 0 { 2 * h - 2 } else if h >= 2 { 2 * h - 3 } else { continue };
        let mut word: Vec<Symbol> = std::iter::repeat_n(Symbol::V, vs)
            .chain(std::iter::repeat_n(Symbol::H, 2 * w - 2))
            .collect();
        loop {
            out.push(SWalkCode::new(w, h, a, word.clone()).expect("counts match"));
            if !next_permutation(&mut word) {
                break;
            }
        }
    }
    out
}

/// Decodes every code of a `w × h` box and tallies the walks.
pub fn enumerate_swalks(w: usize, h: usize, budget: &Budget, keep: bool) -> Result<SWalkTally, OracleError> {
    check_box(w, h)?;
    budget.check("S-walk enumeration", w + h)?;
    let codes = swalk_codes(w, h);
    let mut t = SWalkTally { width: w, height: h, ..Default::default() };
    for code in &codes {
        let walk = decode(code).expect("every code decodes");
        let order = classify(&walk);
        t.total += 1;
        *t.side_orders.entry(order).or_default() += 1;
        if self_intersects(&walk) {
            let c = crossings(&walk);
            t.rising += u64::from(c.rising);
            t.falling += u64::from(c.falling);
            t.mixed += u64::from(c.mixed);
        } else {
            t.simple += 1;
            *t.simple_side_orders.entry(order).or_default() += 1;
        }
    }
    if keep {
        t.codes = Some(codes);
    }
    Ok(t)
}

/// Every S-walk of a `w × h` box built directly as a closed walk: the
/// horizontal steps run west to `x = 0`, east to `x = w` and west back, the
/// vertical ones north to `y = h` and south back, and every interleaving
/// that starts north and runs along all four sides is kept.
pub fn direct_swalks(w: usize, h: usize, budget: &Budget) -> Result<Vec<ClosedWalk>, OracleError> {
    check_box(w, h)?;
    budget.check("S-walk enumeration", w + h)?;
    let (wi, hi) = (w as i64, h as i64);
    let mut out = Vec::new();
    for a in 0..wi {
        let horizontal: Vec<i64> = std::iter::repeat_n(-1, a as usize)
            .chain(std::iter::repeat_n(1, w))
            .chain(std::iter::repeat_n(-1, (wi - a) as usize))
            .collect();
        let mut walk = vec![Point::new(a, 0)];
        interleave(&horizontal, 0, 0, hi, wi, &mut walk, &mut out);
    }
    Ok(out)
}

fn interleave(
    horizontal: &[i64],
    hx: usize,
    vy: usize,
    h: i64,
    w: i64,
    walk: &mut Vec<Point>,
    out: &mut Vec<ClosedWalk>,
) {
    let len = horizontal.len() + 2 * h as usize;
    if walk.len() == len + 1 {
        if spans_all_sides(walk, w, h) {
            out.push(ClosedWalk::new(walk.clone()).expect("interleavings are closed walks"));
        }
        return;
    }
    let at = walk[walk.len() - 1];
    if vy < 2 * h as usize {
        let dy = if (vy as i64) < h { 1 } else { -1 };
        walk.push(Point::new(at.x, at.y + dy));
        interleave(horizontal, hx, vy + 1, h, w, walk, out);
        walk.pop();
    }
    // The walk leaves its start upwards.
    if hx < horizontal.len() && walk.len() > 1 {
        walk.push(Point::new(at.x + horizontal[hx], at.y));
        interleave(horizontal, hx + 1, vy, h, w, walk, out);
        walk.pop();
    }
}

fn spans_all_sides(walk: &[Point], w: i64, h: i64) -> bool {
    let edges = || walk.windows(2).map(|e| (e[0], e[1]));
    let vertical_on = |x: i64| edges().any(|(p, q)| p.x == x && q.x == x);
    let horizontal_on = |y: i64| edges().any(|(p, q)| p.y == y && q.y == y);
    vertical_on(0) && vertical_on(w) && horizontal_on(0) && horizontal_on(h)
}

fn paths(w: usize, h: usize) -> Vec<HashSet<Point>> {
    enumerate_paths(Point::ORIGIN, Point::new(w as i64, h as i64))
        .map(|p: MonotonePath| p.vertices().collect())
        .collect()
}

/// Multiplicities of `|U ∩ V|` over all ordered pairs of monotone paths
/// `(0,0) → (w,h)`.
pub fn intersection_histogram(w: usize, h: usize, budget: &Budget) -> Result<BTreeMap<usize, u64>, OracleError> {
    if w + h > budget.max_path_semi_perimeter {
        return Err(OracleError::BudgetExceeded {
            what: "path-pair enumeration",
            requested: w + h,
            limit: budget.max_path_semi_perimeter,
        });
    }
    let all = paths(w, h);
    let mut hist = BTreeMap::new();
    for u in &all {
        for v in &all {
            *hist.entry(u.intersection(v).count()).or_default() += 1;
        }
    }
    Ok(hist)
}

/// `Σ |U ∩ V|^order` over all ordered pairs of paths `(0,0) → (w,h)`.
pub fn brute_moments(w: usize, h: usize, order: u32, budget: &Budget) -> Result<BigUint, OracleError> {
    Ok(intersection_histogram(w, h, budget)?
        .into_iter()
        .map(|(k, n)| BigUint::from(k).pow(order) * n)
        .sum())
}

/// `Σ C(|U ∩ V| + 1, 2)` over all ordered pairs of paths `(0,0) → (w,h)`.
pub fn brute_binomial_pair_sum(w: usize, h: usize, budget: &Budget) -> Result<BigUint, OracleError> {
    Ok(intersection_histogram(w, h, budget)?
        .into_iter()
        .map(|(k, n)| BigUint::from(k * (k + 1) / 2) * n)
        .sum())
}

/// Outcome of a chi-square goodness-of-fit test.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChiSquare {
    pub statistic: f64,
    pub degrees_of_freedom: usize,
    pub p_value: f64,
    pub draws: u64,
}

/// Pearson's test of observed counts against cell probabilities.
pub fn goodness_of_fit(observed: &[u64], probabilities: &[f64]) -> Result<ChiSquare, OracleError> {
    let total_p: f64 = probabilities.iter().sum();
    if observed.len() != probabilities.len()
        || probabilities.iter().any(|&p| p <= 0.0)
        || (total_p - 1.0).abs() > 1e-9
    {
        return Err(OracleError::BadProbabilities);
    }
    let draws: u64 = observed.iter().sum();
    let n = draws as f64;
    let statistic = observed
        .iter()
        .zip(probabilities)
        .map(|(&o, &p)| {
            let e = n * p;
            (o as f64 - e).powi(2) / e
        })
        .sum();
    let dof = observed.len().saturating_sub(1);
    let p_value = if dof == 0 {
        1.0
    } else {
        ChiSquared::new(dof as f64).expect("positive degrees of freedom").sf(statistic)
    };
    Ok(ChiSquare { statistic, degrees_of_freedom: dof, p_value, draws })
}

/// Chi-square test of `draws` against the uniform distribution on
/// `support`. Needs at least ten draws per support element.
pub fn uniformity_test<T, I>(support: &[T], draws: I) -> Result<ChiSquare, OracleError>
where
    T: Eq + Hash + Debug,
    I: IntoIterator<Item = T>,
{
    let index: HashMap<&T, usize> = support.iter().enumerate().map(|(i, t)| (t, i)).collect();
    assert_eq!(index.len(), support.len(), "support must be distinct");
    let mut observed = vec![0u64; support.len()];
    for d in draws {
        match index.get(&d) {
            Some(&i) => observed[i] += 1,
            None => return Err(OracleError::UnknownObject(format!("{d:?}"))),
        }
    }
    let got: u64 = observed.iter().sum();
    let needed = 10 * support.len() as u64;
    if got < needed {
        return Err(OracleError::InsufficientDraws { got, needed, support: support.len() });
    }
    let p = 1.0 / support.len() as f64;
    goodness_of_fit(&observed, &vec![p; support.len()])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_convex_counts() {
        let b = Budget::default();
        assert_eq!(enumerate_convex(2, 2, &b).unwrap().count, 5u32.into());
        assert_eq!(enumerate_convex(1, 6, &b).unwrap().count, 1u32.into());
        assert_eq!(enumerate_convex(3, 3, &b).unwrap().count, 68u32.into());
        let directed = enumerate_polyominoes(CountClass::Directed, 2, 2, &b, true).unwrap();
        assert_eq!(directed.objects.unwrap().len(), 4);
        assert_eq!(enumerate_perimeter(CountClass::Convex, 3, &b).unwrap(), 2u32.into());
    }

    #[test]
    fn budget_and_domain() {
        let b = Budget::with_semi_perimeter(6);
        assert!(matches!(enumerate_convex(4, 3, &b), Err(OracleError::BudgetExceeded { requested: 7, .. })));
        assert_eq!(enumerate_convex(0, 3, &b), Err(OracleError::Domain { w: 0, h: 3 }));
        assert_eq!(
            enumerate_polyominoes(CountClass::SWalk, 2, 2, &b, false),
            Err(OracleError::Unsupported(CountClass::SWalk))
        );
    }

    #[test]
    fn two_by_two_swalks() {
        let t = enumerate_swalks(2, 2, &Budget::default(), false).unwrap();
        assert_eq!((t.total, t.simple, t.self_intersecting()), (9, 5, 4));
        assert_eq!((t.rising, t.falling, t.mixed), (2, 2, 0));
        assert_eq!(t.simple_side_orders.get(&SideOrder::SWNE), Some(&5));
    }

    #[test]
    fn direct_walks_match_codes() {
        let b = Budget::default();
        for (w, h) in [(1, 1), (1, 3), (3, 1), (2, 2), (2, 3), (3, 3), (4, 2)] {
            let direct: HashSet<_> = direct_swalks(w, h, &b).unwrap().into_iter().collect();
            let decoded: HashSet<_> = swalk_codes(w, h).iter().map(|c| decode(c).unwrap()).collect();
            assert_eq!(direct, decoded, "{w}x{h}");
        }
    }

    #[test]
    fn hand_checked_moments() {
        let b = Budget::default();
        assert_eq!(brute_moments(1, 1, 1, &b).unwrap(), 10u32.into());
        assert_eq!(brute_moments(2, 1, 2, &b).unwrap(), 92u32.into());
        assert_eq!(brute_moments(3, 2, 0, &b).unwrap(), 100u32.into());
        assert_eq!(brute_binomial_pair_sum(1, 1, &b).unwrap(), BigUint::from(2u32 * 6 + 2 * 3));
    }

    #[test]
    fn chi_square_controls() {
        let support = [0u8, 1, 2, 3];
        let fair = (0..4000).map(|i| (i % 4) as u8);
        assert!(uniformity_test(&support, fair).unwrap().p_value > 0.99);
        let biased = (0..4000).map(|i| if i % 5 == 0 { 0 } else { (i % 4) as u8 });
        assert!(uniformity_test(&support, biased).unwrap().p_value < 1e-6);
        assert_eq!(uniformity_test(&support, [7u8]), Err(OracleError::UnknownObject("7".into())));
        assert!(matches!(uniformity_test(&support, [0u8; 5]), Err(OracleError::InsufficientDraws { .. })));
        assert_eq!(goodness_of_fit(&[1], &[0.5]), Err(OracleError::BadProbabilities));
    }
}
