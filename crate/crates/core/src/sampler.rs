//! Uniform random generation.
//!
//! * [`sample_convex`]: uniform S-walk codes for a fixed `w × h` box,
//!   rejecting self-intersecting walks.
//! * [`sample_perimeter`]: the same for a fixed semi-perimeter `s`, from a
//!   random bit string and one small random integer per attempt.
//! * [`sample_directed`]: two uniform monotone paths pushed through the
//!   untangling bijection; never rejects.
//!
//! All randomness comes from [`SeededRng`], a ChaCha8 stream cipher keyed by
//! a 64-bit seed and a 64-bit stream number. Its output is fixed across
//! platforms and releases, so a `(seed, stream)` pair pins every sample.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::bijection::pair_to_directed;
use crate::counting::{binomial, count, count_perimeter, CountClass};
use crate::lattice::{MonotonePath, Point, Step};
use crate::polyomino::ConvexPolyomino;
use crate::swalk::{decode, self_intersects, to_polyomino, SWalkCode, Symbol};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SampleError {
    #[error("width and height must be at least 1, got {w}x{h}")]
    Domain { w: usize, h: usize },
    #[error("perimeter sampling needs semi-perimeter at least 4, got {0}")]
    PerimeterDomain(usize),
}

/// Position of a [`SeededRng`]: enough to resume it exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RngState {
    pub seed: u64,
    pub stream: u64,
    /// Number of 32-bit words consumed so far.
    pub word_pos: u128,
}

/// ChaCha8 keyed by `seed` (via `seed_from_u64`) on stream `stream`.
#[derive(Debug, Clone)]
pub struct SeededRng {
    inner: ChaCha8Rng,
    seed: u64,
    stream: u64,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self::with_stream(seed, 0)
    }

    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        SeededRng { inner, seed, stream }
    }

    pub fn from_state(state: RngState) -> Self {
        let mut rng = Self::with_stream(state.seed, state.stream);
        rng.inner.set_word_pos(state.word_pos);
        rng
    }

    pub fn state(&self) -> RngState {
        RngState { seed: self.seed, stream: self.stream, word_pos: self.inner.get_word_pos() }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform in `0..n` without modulo bias. `n` must be positive.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "empty range");
        // Values below `threshold` would make the low residues more likely.
        let threshold = n.wrapping_neg() % n;
        loop {
            let x = self.next_u64();
            if x >= threshold {
                return x % n;
            }
        }
    }

    /// Uniform in `0..n` for a big bound. `n` must be positive.
    pub fn below_big(&mut self, n: &BigUint) -> BigUint {
        assert!(!n.is_zero(), "empty range");
        let bits = n.bits();
        let words = bits.div_ceil(64) as usize;
        let top_bits = bits - 64 * (words as u64 - 1);
        let mask = if top_bits == 64 { u64::MAX } else { (1u64 << top_bits) - 1 };
        loop {
            let mut digits: Vec<u64> = (0..words).map(|_| self.next_u64()).collect();
            digits[words - 1] &= mask;
            let candidate = BigUint::from_slice(
                &digits.iter().flat_map(|d| [*d as u32, (*d >> 32) as u32]).collect::<Vec<_>>(),
            );
            if &candidate < n {
                return candidate;
            }
        }
    }

    /// A uniform `k`-subset of `0..n` as a membership mask.
    pub fn subset_mask(&mut self, n: usize, k: usize) -> Vec<bool> {
        assert!(k <= n);
        let mut idx: Vec<usize> = (0..n).collect();
        for i in 0..k {
            let j = i + self.below((n - i) as u64) as usize;
            idx.swap(i, j);
        }
        let mut mask = vec![false; n];
        for &i in &idx[..k] {
            mask[i] = true;
        }
        mask
    }
}

/// An accepted sample and the number of proposals it took.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampleReport {
    pub polyomino: ConvexPolyomino,
    /// `1 +` the number of rejected proposals.
    pub attempts: u64,
    pub seed: u64,
    pub stream: u64,
}

fn check_box(w: usize, h: usize) -> Result<(), SampleError> {
    if w == 0 || h == 0 {
        Err(SampleError::Domain { w, h })
    } else {
        Ok(())
    }
}

fn word(mask: &[bool]) -> Vec<Symbol> {
    mask.iter().map(|&m| if m { Symbol::H } else { Symbol::V }).collect()
}

/// A uniform code among all `P̃_wh` S-walk codes of a `w × h` box.
pub fn sample_swalk(w: usize, h: usize, rng: &mut SeededRng) -> Result<SWalkCode, SampleError> {
    check_box(w, h)?;
    let s = (w + h) as i64;
    let hs = 2 * w - 2;
    let zero_offset = binomial(2 * s - 4, hs as i64);
    let per_offset = binomial(2 * s - 5, hs as i64);
    let total = &zero_offset + &per_offset * BigUint::from(w - 1);
    let r = rng.below_big(&total);
    let (a, len) = if r < zero_offset {
        (0, 2 * (w + h) - 4)
    } else {
        let a = ((r - &zero_offset) / &per_offset).to_usize().expect("offset below w") + 1;
        (a, 2 * (w + h) - 5)
    };
    let symbols = word(&rng.subset_mask(len, hs));
    Ok(SWalkCode::new(w, h, a, symbols).expect("sampled code has valid symbol counts"))
}

/// The polyomino bounded by the walk of `code`, if that walk is simple.
fn accept(code: &SWalkCode) -> Option<ConvexPolyomino> {
    let walk = decode(code).expect("every code decodes");
    if self_intersects(&walk) {
        None
    } else {
        Some(to_polyomino(&walk).expect("simple S-walks bound convex polyominoes"))
    }
}

/// A uniform convex polyomino with a `w × h` bounding box.
pub fn sample_convex(w: usize, h: usize, rng: &mut SeededRng) -> Result<SampleReport, SampleError> {
    sample_convex_observed(w, h, rng, &mut |_, _| {})
}

/// [`sample_convex`], calling `observe(code, accepted)` on every proposal.
pub fn sample_convex_observed(
    w: usize,
    h: usize,
    rng: &mut SeededRng,
    observe: &mut dyn FnMut(&SWalkCode, bool),
) -> Result<SampleReport, SampleError> {
    check_box(w, h)?;
    let mut attempts = 0;
    loop {
        attempts += 1;
        let code = sample_swalk(w, h, rng)?;
        let outcome = accept(&code);
        observe(&code, outcome.is_some());
        if let Some(polyomino) = outcome {
            return Ok(SampleReport { polyomino, attempts, seed: rng.seed(), stream: rng.stream() });
        }
    }
}

fn monotone_path(w: usize, h: usize, rng: &mut SeededRng) -> MonotonePath {
    let steps = rng
        .subset_mask(w + h - 2, w - 1)
        .into_iter()
        .map(|east| if east { Step::E } else { Step::N })
        .collect();
    MonotonePath::new(Point::ORIGIN, steps)
}

/// Two independent uniform monotone paths `(0,0) → (w−1, h−1)`.
pub fn sample_path_pair(w: usize, h: usize, rng: &mut SeededRng) -> Result<(MonotonePath, MonotonePath), SampleError> {
    check_box(w, h)?;
    let u = monotone_path(w, h, rng);
    let v = monotone_path(w, h, rng);
    Ok((u, v))
}

/// A uniform directed convex polyomino with a `w × h` bounding box.
pub fn sample_directed(w: usize, h: usize, rng: &mut SeededRng) -> Result<ConvexPolyomino, SampleError> {
    let (u, v) = sample_path_pair(w, h, rng)?;
    Ok(pair_to_directed(&u, &v, w, h).expect("paths span the box"))
}

/// The code proposed by the raw outcome `(x, q)` of one perimeter round,
/// where `x` has length `2s − 7` and `1 ≤ q ≤ 2s + 3`.
///
/// For `q > 2s − 5`, bits 0 and 1 of `q − (2s − 4)` extend `x` (0 is `V`,
/// 1 is `H`) and bit 2 is ignored; a final parity symbol makes the number
/// of `H`s even, giving an `a = 0` code. Otherwise a parity symbol makes the
/// number of `H`s odd and an `H` is inserted as the `q`-th symbol; if it is
/// the `ā`-th `H`, the offset is `a = ((ā − 1) mod (w − 1)) + 1`.
///
/// Every code of semi-perimeter `s` is proposed by exactly two outcomes.
pub fn perimeter_proposal(x: &[Symbol], q: usize, s: usize) -> SWalkCode {
    assert!(s >= 4 && x.len() == 2 * s - 7 && (1..=2 * s + 3).contains(&q));
    let mut symbols = x.to_vec();
    let count_h = |v: &[Symbol]| v.iter().filter(|&&c| c == Symbol::H).count();
    let bit = |b: bool| if b { Symbol::H } else { Symbol::V };
    if q > 2 * s - 5 {
        let bits = q - (2 * s - 4);
        symbols.push(bit(bits & 1 == 1));
        symbols.push(bit(bits & 2 == 2));
        symbols.push(bit(count_h(&symbols) % 2 == 1));
        let hs = count_h(&symbols);
        let (w, h) = (hs / 2 + 1, (symbols.len() - hs) / 2 + 1);
        return SWalkCode::new(w, h, 0, symbols).expect("balanced a=0 code");
    }
    symbols.push(bit(count_h(&symbols) % 2 == 0));
    symbols.insert(q - 1, Symbol::H);
    let hs = count_h(&symbols);
    let (w, h) = (hs / 2 + 1, (symbols.len() - hs + 3) / 2);
    let rank = count_h(&symbols[..q]);
    let a = (rank - 1) % (w - 1) + 1;
    SWalkCode::new(w, h, a, symbols).expect("balanced a>0 code")
}

fn perimeter_round(s: usize, rng: &mut SeededRng) -> SWalkCode {
    let x: Vec<Symbol> = (0..2 * s - 7)
        .map(|_| if rng.below(2) == 1 { Symbol::H } else { Symbol::V })
        .collect();
    let q = 1 + rng.below(2 * s as u64 + 3) as usize;
    perimeter_proposal(&x, q, s)
}

/// A uniform convex polyomino of semi-perimeter `s ≥ 4`.
pub fn sample_perimeter(s: usize, rng: &mut SeededRng) -> Result<SampleReport, SampleError> {
    sample_perimeter_observed(s, rng, &mut |_, _| {})
}

/// [`sample_perimeter`], calling `observe(code, accepted)` on every proposal.
pub fn sample_perimeter_observed(
    s: usize,
    rng: &mut SeededRng,
    observe: &mut dyn FnMut(&SWalkCode, bool),
) -> Result<SampleReport, SampleError> {
    if s < 4 {
        return Err(SampleError::PerimeterDomain(s));
    }
    let mut attempts = 0;
    loop {
        attempts += 1;
        let code = perimeter_round(s, rng);
        let outcome = accept(&code);
        observe(&code, outcome.is_some());
        if let Some(polyomino) = outcome {
            return Ok(SampleReport { polyomino, attempts, seed: rng.seed(), stream: rng.stream() });
        }
    }
}

fn serialize_ratio<S: Serializer>(r: &BigRational, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_str(&r.to_string())
}

/// Acceptance probability of the rejection sampler, exact and observed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EfficiencyStats {
    /// `P / P̃` in lowest terms.
    #[serde(serialize_with = "serialize_ratio")]
    pub exact: BigRational,
    pub exact_decimal: f64,
    pub accepted: u64,
    pub trials: u64,
}

impl EfficiencyStats {
    fn new(exact: BigRational, accepted: u64, trials: u64) -> Self {
        let exact_decimal = ratio_to_f64(&exact);
        EfficiencyStats { exact, exact_decimal, accepted, trials }
    }

    /// `accepted / trials`, or `None` without trials.
    pub fn empirical(&self) -> Option<f64> {
        (self.trials > 0).then(|| self.accepted as f64 / self.trials as f64)
    }
}

/// Nearest `f64`, also for numerators and denominators beyond `f64` range.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(60);
    let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Exact `P_wh / P̃_wh`.
pub fn exact_efficiency(w: usize, h: usize) -> Result<BigRational, SampleError> {
    check_box(w, h)?;
    let (w, h) = (w as u64, h as u64);
    let good = count(CountClass::Convex, w, h).expect("positive box");
    let all = count(CountClass::SWalk, w, h).expect("positive box");
    Ok(ratio(good, all))
}

/// Exact `P_s / P̃_s`.
pub fn exact_perimeter_efficiency(s: usize) -> Result<BigRational, SampleError> {
    if s < 4 {
        return Err(SampleError::PerimeterDomain(s));
    }
    let good = count_perimeter(CountClass::Convex, s as u64).expect("s >= 4");
    let all = count_perimeter(CountClass::SWalk, s as u64).expect("s >= 4");
    Ok(ratio(good, all))
}

/// Exact efficiency for a `w × h` box plus `trials` Monte-Carlo proposals.
pub fn efficiency(w: usize, h: usize, trials: u64, rng: &mut SeededRng) -> Result<EfficiencyStats, SampleError> {
    let exact = exact_efficiency(w, h)?;
    let mut accepted = 0;
    for _ in 0..trials {
        if accept(&sample_swalk(w, h, rng)?).is_some() {
            accepted += 1;
        }
    }
    Ok(EfficiencyStats::new(exact, accepted, trials))
}

/// Exact efficiency for semi-perimeter `s` plus `trials` perimeter proposals.
pub fn perimeter_efficiency(s: usize, trials: u64, rng: &mut SeededRng) -> Result<EfficiencyStats, SampleError> {
    let exact = exact_perimeter_efficiency(s)?;
    let mut accepted = 0;
    for _ in 0..trials {
        if accept(&perimeter_round(s, rng)).is_some() {
            accepted += 1;
        }
    }
    Ok(EfficiencyStats::new(exact, accepted, trials))
}
