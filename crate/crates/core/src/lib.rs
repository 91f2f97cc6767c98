//! Cosine products, point-mass measures and random-sign series.
//!
//! The crate evaluates the factorizations of `sin x / x` into products of
//! cosine sums, represents the spectra of those products as exact discrete
//! measures, builds the Cantor measure as a limit of such measures, and
//! studies the distribution of `Σ ±c_k` for coefficient sequences such as
//! `1/k`, including a quadrature pipeline for the density of the random
//! harmonic series.

// `!(x > 0.0)` is used on purpose so that NaN arguments are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cantor;
pub mod cli;
pub mod error;
pub mod format;
pub mod measure;
pub mod products;
pub mod randseries;
pub mod rational;
pub mod spectra;

pub use error::{Error, Result};
pub use measure::{Atom, DiscreteMeasure};
pub use rational::RationalLoc;
