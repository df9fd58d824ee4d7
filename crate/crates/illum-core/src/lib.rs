//! Certified upper bounds for Hadwiger covering numbers.
//!
//! This crate computes rigorous upper bounds on the Hadwiger covering numbers
//! `H_n` (the worst case over convex bodies in dimension `n` of how many
//! translates of the interior are needed to cover the body) and their
//! centrally-symmetric counterparts `H_n^s`, together with the supporting
//! quantities: covering densities of the Euclidean ball, mean widths of
//! regular simplices, and quermassintegral bounds in John position.
//!
//! Every real-valued quantity is carried as an [`enclosure::Enclosure`] — a
//! closed interval of extended-precision floats, produced exclusively by
//! outward-rounded operations, so that the true mathematical value is
//! guaranteed to lie inside. An integer bound extracted from an enclosure
//! (always `floor` of an upper endpoint) is therefore certified.
//!
//! The pipeline, bottom to top:
//!
//! * [`enclosure`] — directed-rounding interval arithmetic on MPFR floats,
//!   plus certified `erf` and the standard normal CDF.
//! * [`geometry`] — exact combinatorics (factorials, binomials), Γ at
//!   half-integers as exact rationals times √π, unit-ball volumes, the
//!   closed-form quermassintegrals of the regular simplex and the cube, and
//!   Steiner-formula evaluation.
//! * [`meanwidth`] — the mean width `w(Tⁿ)` of the unit-edge regular simplex
//!   via a certified Riemann sandwich of `∫₀^∞ 1 − F(x)^{n+1} − (1−F(x))^{n+1} dx`
//!   with an explicit tail bound.
//! * [`covering`] — upper bounds on covering densities: the `Aₙ*` lattice
//!   formula, the Schürmann–Vallentin record catalog, and the optimized
//!   Rogers bound `r_n` with its direct Hadwiger corollaries.
//! * [`hadwiger`] — per-dimension quermassintegral bound plans (hand-tuned
//!   and automatic), the Bokowski–Heil inequality, and the final assembly
//!   `θ(B₂ⁿ)/|B₂ⁿ| · Σ binom(n,j) W_j(K)` whose floor is the integer bound.

pub mod covering;
pub mod enclosure;
pub mod error;
pub mod geometry;
pub mod hadwiger;
pub mod meanwidth;

pub use enclosure::{Enclosure, Precision};
pub use error::{Error, Result};
pub use geometry::{BodyClass, Dimension};
