//! Exact computation with the coordinate rings R = C[t^{±1}, u : u² = p(t)]
//! of punctured hyperelliptic curves: automorphism groups, the induced action
//! on Kähler differentials modulo exact forms, and its decomposition into
//! irreducible representations — all over cyclotomic fields with no floating
//! point in any equality decision.
//!
//! The crate is organized bottom-up:
//!
//! - [`rational`] / [`cyclo`]: exact arithmetic in Q and Q(ζ_M);
//! - [`linalg`]: dense exact linear algebra over cyclotomic fields;
//! - [`curve`]: the polynomial p(t) = t(t−α₁)⋯(t−α_{2n}) and its root data;
//! - [`reduction`]: classes in Ω_R/dR over the basis ω₀, …, ω_{2n}, via both
//!   recursion tables and an independent Gaussian-elimination oracle;
//! - [`groups`]: the finite groups ℤ_m, dihedral, dicyclic, 𝕌_n with exact
//!   character tables;
//! - [`automorphisms`]: twist/flip detection and classification of Aut(R);
//! - [`action`]: matrices of automorphisms acting on Ω_R/dR;
//! - [`decomposition`]: multiplicities of irreducible summands and the
//!   closed-form comparisons;
//! - [`cli`]: the command-line front end (also exercised by `examples/`).

pub mod action;
pub mod automorphisms;
pub mod cli;
pub mod curve;
pub mod cyclo;
pub mod decomposition;
pub mod groups;
pub mod linalg;
pub mod rational;
pub mod reduction;
pub mod selftest;

pub use curve::{HyperellipticCurve, NormalFormSpec};
pub use cyclo::{context, imaginary_unit, root_of_unity, CycloElem, FieldContext};
pub use rational::Rational;
