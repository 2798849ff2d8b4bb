//! Finite independence systems on at most 24 elements: greedy with explicit
//! tie-breaking, the rank quotient, matroid recognition, and approximation
//! of a system from inside by matroids.
//!
//! Subsets are [`Mask`] bitmasks where bit `i` is the element labelled
//! `i + 1`. All ratios are exact [`Rational`]s. The crate is `no_std` and
//! needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod approx;
pub mod error;
pub mod greedy;
pub mod instances;
pub mod mask;
pub mod matroid;
pub mod quotient;
pub mod rational;
pub mod setfamily;

pub use approx::{rho, rho_matroid, AcceptableSet, RhoReport};
pub use error::{Error, Result};
pub use greedy::{greedy, greedy_ratio, optimal_basis, Selection, TieBreak, Weights};
pub use mask::{Mask, MAX_ELEMENTS};
pub use matroid::{Matroid, RankTable};
pub use quotient::{rank_quotient, QuotientReport};
pub use rational::Rational;
pub use setfamily::{GroundSet, IndependenceSystem, SetFamily};
