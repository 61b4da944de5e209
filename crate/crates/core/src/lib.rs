//! Exact counting and uniform random generation of convex polyominoes.
//!
//! The crate is organised bottom-up:
//!
//! * [`lattice`]: monotone E/N lattice paths, path counts and the two-path
//!   uncrossing lemma.
//! * [`counting`]: closed-form, arbitrary-precision counts for every
//!   polyomino class, plus the intersection-moment formulas.
//! * [`polyomino`]: the canonical column-interval model of a convex
//!   polyomino, its clockwise boundary walk, flags and rendering.
//! * [`swalk`]: the {V,H} code of closed "S-walks", decoding with implicit
//!   side edges, and self-intersection analysis.
//! * [`bijection`]: the untangling bijection between pairs of monotone paths
//!   and directed convex polyominoes, and the Grand-Motzkin alternative.
//! * [`sampler`]: rejection samplers for fixed width/height and for fixed
//!   perimeter, and the exact sampler for directed polyominoes.
//! * [`oracle`]: brute-force enumerations and statistical tests used to
//!   cross-check everything above.
//!
//! ```
//! use convex_polyominoes::counting::{count, CountClass};
//!
//! assert_eq!(count(CountClass::Convex, 4, 4).unwrap().to_string(), "1110");
//! ```

pub mod bijection;
pub mod counting;
pub mod lattice;
pub mod oracle;
pub mod polyomino;
pub mod sampler;
pub mod swalk;

pub use counting::{BigCount, CountClass};
pub use lattice::{MonotonePath, PathPair, Point, Step};
pub use polyomino::ConvexPolyomino;
pub use swalk::{ClosedWalk, SWalkCode, SideOrder};
