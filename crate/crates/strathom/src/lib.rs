//! Exact computations with pointed braided fusion categories and their
//! surface invariants.
//!
//! The crate is organised in layers:
//!
//! - [`exactnum`]: exact arithmetic in cyclotomic fields `Q(zeta_N)` and
//!   rationals mod 1. Every phase, Gauss sum and S/T entry in the crate is
//!   compared exactly, never through floating point.
//! - [`metricgrp`]: finite abelian metric groups `(G, q)` — the skeletal
//!   model of pointed braided fusion categories — with subgroup lattices,
//!   orthogonal complements, isotropic subgroups, condensation, direct sums
//!   and isometry testing.
//! - [`moddata`]: the decategorified layer of general (pre)modular data:
//!   labels, fusion coefficients, S/T matrices, Mueger centralizers,
//!   Deligne products, group-like condensation and a Verlinde-type
//!   dimension oracle.
//! - [`braidedmod`]: module braidings over a symmetric pointed base, axiom
//!   checking, and the relative tensor product computed by condensation.
//! - [`mext`]: the modular-extension group of a symmetric pointed base:
//!   verification, multiplication, unit, inverses and brute-force
//!   enumeration into equivalence classes with a Cayley table.
//! - [`centerfun`]: Drinfeld centers of pointed fusion categories, centers
//!   over a base, monoidality and Morita tests, and rank-level functor
//!   category computations.
//! - [`stratsurf`]: combinatorial closed oriented stratified surfaces with
//!   labelled cells, the excision moves, anomaly-free checking, a
//!   deterministic reduction strategy and evaluation to a pair
//!   `(E, u_Sigma)`.
//!
//! When the `parallel` feature is enabled (the default) the embarrassingly
//! parallel searches use rayon; results are merged canonically so output is
//! identical across thread counts. Without the feature everything runs
//! sequentially with the same observable behaviour.

pub mod braidedmod;
pub mod centerfun;
pub mod exactnum;
pub mod limits;
pub mod metricgrp;
pub mod mext;
pub mod moddata;
pub(crate) mod par;
pub mod stratsurf;

pub use exactnum::{CyclotomicNumber, Rational, RationalMod1};

