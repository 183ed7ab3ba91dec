//! Exact enumeration of pattern-avoiding shrub forests.
//!
//! A k-ary shrub forest on `n` shrubs is a labeling of `n` rooted shrubs (a
//! root plus `k` leaves each) by `1..=(k+1)n` in which every root is smaller
//! than its leaves. Reading the labels shrub by shrub, root first, gives a
//! permutation, and the forest avoids a pattern when that permutation does.
//!
//! The crate provides
//!
//! * [`perm`]: permutations, classical containment and the last-inversion-foot
//!   statistic,
//! * [`forest`]: shrub forests and a pruned brute-force enumerator,
//! * [`paths`]: lattice paths in a wedge and the affine path transform,
//! * [`formulas`]: closed-form counts as exact big integers,
//! * [`bijections`]: forest/path bijections for 123, 132, 213, 312 and 231,
//! * [`av321`]: the catalytic-variable series engine for 321-avoiders,
//! * [`oeis`]: b-file parsing, emission and cross-checking.
//!
//! Data-parallel loops run on rayon when the `parallel` feature is enabled
//! (the default) and fall back to plain iterators otherwise.

pub mod av321;
pub mod bijections;
pub mod error;
pub mod forest;
pub mod formulas;
pub mod oeis;
pub mod par;
pub mod paths;
pub mod perm;

pub use error::{Error, Result};
pub use forest::ShrubForest;
pub use paths::{LatticePath, Step, StepAlphabet, WedgeBound};
pub use perm::{PatternSet, Permutation};

pub use num_bigint::{BigInt, BigUint};
