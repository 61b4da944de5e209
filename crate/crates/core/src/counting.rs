//! Closed-form counts, all in exact big-integer arithmetic.
//!
//! Every formula is evaluated under the convention that `C(n, k) = 0`
//! whenever `n < 0`, `k < 0` or `k > n`; the boundary cases `w = 1` or
//! `h = 1` rely on it.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

pub type BigCount = BigUint;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CountError {
    #[error("{class} is not defined for width {w}, height {h}")]
    Domain { class: CountClass, w: u64, h: u64 },
    #[error("{class} is not defined for semi-perimeter {s}")]
    PerimeterDomain { class: CountClass, s: u64 },
    #[error("moment order must be 1 or 2, got {0}")]
    Order(u32),
    #[error("unknown class `{0}`")]
    UnknownClass(String),
}

/// The object families with a closed-form count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CountClass {
    /// Convex polyominoes with a `w × h` enclosing rectangle.
    Convex,
    /// Convex polyominoes containing the lower-left corner of the rectangle.
    Directed,
    /// Convex polyominoes containing the lower-left and upper-right corners.
    Parallelogram,
    /// All S-walks (shortest spanning closed walks) of the rectangle.
    SWalk,
    /// S-walks whose two rising pieces intersect.
    SelfIntersectingSWalk,
    /// Closed walks from the origin that need not touch the S- and W-sides,
    /// in a `(w+1) × (h+1)` rectangle.
    WeakDirectedSWalk,
}

impl CountClass {
    pub const ALL: [CountClass; 6] = [
        CountClass::Convex,
        CountClass::Directed,
        CountClass::Parallelogram,
        CountClass::SWalk,
        CountClass::SelfIntersectingSWalk,
        CountClass::WeakDirectedSWalk,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CountClass::Convex => "convex",
            CountClass::Directed => "directed",
            CountClass::Parallelogram => "parallelogram",
            CountClass::SWalk => "swalk",
            CountClass::SelfIntersectingSWalk => "self-intersecting",
            CountClass::WeakDirectedSWalk => "weak-directed",
        }
    }

    /// Smallest admissible width (and height).
    fn min_side(self) -> u64 {
        match self {
            CountClass::WeakDirectedSWalk => 0,
            _ => 1,
        }
    }
}

impl fmt::Display for CountClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl serde::Serialize for CountClass {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(self.name())
    }
}

/// Serializes a count as a decimal string, so no consumer rounds it.
pub fn serialize_decimal<S: serde::Serializer>(n: &BigUint, ser: S) -> Result<S::Ok, S::Error> {
    ser.collect_str(n)
}

impl FromStr for CountClass {
    type Err = CountError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CountClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| CountError::UnknownClass(s.to_string()))
    }
}

/// `C(n, k)` with the zero convention for out-of-range arguments.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn signed_binomial(n: i64, k: i64) -> BigInt {
    BigInt::from(binomial(n, k))
}

fn into_count(value: BigInt) -> BigUint {
    match value.sign() {
        Sign::Minus => panic!("closed form evaluated to a negative count: {value}"),
        _ => value.magnitude().clone(),
    }
}

fn halve_exact(value: BigUint) -> BigUint {
    let (q, r) = value.div_rem(&BigUint::from(2u32));
    assert!(r.is_zero(), "numerator must be even");
    q
}

/// `C(2s-4, 2w-2) + (w-1) C(2s-5, 2w-2)`: all S-walk codes.
fn swalk_count(w: i64, s: i64) -> BigInt {
    signed_binomial(2 * s - 4, 2 * w - 2) + (w - 1) * signed_binomial(2 * s - 5, 2 * w - 2)
}

/// `(s-3) C(s-2, w-1) C(s-4, w-2)`: S-walks whose rising pieces intersect.
fn self_intersecting_count(w: i64, s: i64) -> BigInt {
    (s - 3) * signed_binomial(s - 2, w - 1) * signed_binomial(s - 4, w - 2)
}

/// Exact count of the objects of `class` with width `w` and height `h`.
pub fn count(class: CountClass, w: u64, h: u64) -> Result<BigCount, CountError> {
    let min = class.min_side();
    if w < min || h < min {
        return Err(CountError::Domain { class, w, h });
    }
    let (wi, hi) = (w as i64, h as i64);
    let s = wi + hi;
    let value = match class {
        CountClass::Convex => into_count(swalk_count(wi, s) - 2 * self_intersecting_count(wi, s)),
        CountClass::Directed => binomial(s - 2, wi - 1).pow(2),
        CountClass::Parallelogram => {
            let numerator = binomial(s - 1, wi) * binomial(s - 1, hi);
            let (q, r) = numerator.div_rem(&BigUint::from((s - 1) as u64));
            debug_assert!(r.is_zero());
            q
        }
        CountClass::SWalk => into_count(swalk_count(wi, s)),
        CountClass::SelfIntersectingSWalk => into_count(self_intersecting_count(wi, s)),
        CountClass::WeakDirectedSWalk => halve_exact(binomial(2 * s + 2, 2 * wi + 1)),
    };
    Ok(value)
}

fn row_sum(class: CountClass, s: u64) -> Result<BigCount, CountError> {
    let min = class.min_side();
    (min..=s - min).try_fold(BigUint::zero(), |acc, w| Ok(acc + count(class, w, s - w)?))
}

/// Number of objects of `class` with semi-perimeter `s = w + h`, summed over
/// all admissible shapes.
pub fn count_perimeter(class: CountClass, s: u64) -> Result<BigCount, CountError> {
    if s < 2 * class.min_side().max(1) && class != CountClass::WeakDirectedSWalk {
        return Err(CountError::PerimeterDomain { class, s });
    }
    let si = s as i64;
    let four_pow = |e: i64| BigUint::from(4u32).pow(e as u32);
    let value = match class {
        CountClass::Convex if s >= 4 => into_count(
            BigInt::from(four_pow(si - 4) * (2 * s + 3))
                - (2 * si - 6) * signed_binomial(2 * si - 6, si - 3),
        ),
        CountClass::SWalk if s >= 4 => four_pow(si - 4) * (2 * s + 3),
        CountClass::SelfIntersectingSWalk if s >= 4 => {
            binomial(2 * si - 6, si - 3) * (s - 3)
        }
        CountClass::Convex | CountClass::SWalk | CountClass::SelfIntersectingSWalk => {
            row_sum(class, s)?
        }
        CountClass::Directed => binomial(2 * si - 4, si - 2),
        CountClass::Parallelogram => binomial(2 * si - 2, si - 1) / s,
        CountClass::WeakDirectedSWalk => four_pow(si),
    };
    Ok(value)
}

/// Sum over all ordered pairs `(U, V)` of monotone paths `(0,0) → (w,h)` of
/// `|U ∩ V|^order`, for `order ∈ {1, 2}`.
pub fn moment(order: u32, w: u64, h: u64) -> Result<BigCount, CountError> {
    let (wi, s) = (w as i64, (w + h) as i64);
    let first = halve_exact(binomial(2 * s + 2, 2 * wi + 1));
    match order {
        1 => Ok(first),
        2 => {
            let twice_pairs = binomial(s + 2, wi + 1) * binomial(s, wi) * (w + h + 1);
            Ok(twice_pairs - first)
        }
        other => Err(CountError::Order(other)),
    }
}

/// Sum over all ordered path pairs `(0,0) → (w,h)` of `C(|U ∩ V| + 1, 2)`,
/// i.e. pairs carrying two indistinguishable marks on common points.
pub fn binomial_pair_sum(w: u64, h: u64) -> BigCount {
    let (wi, s) = (w as i64, (w + h) as i64);
    halve_exact(binomial(s + 2, wi + 1) * binomial(s, wi) * (w + h + 1))
}
