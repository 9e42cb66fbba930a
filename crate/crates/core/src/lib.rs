//! Exact kinematics of two-dimensional noncommutative quantum mechanics.
//!
//! An NCQM sector is labelled by `(hbar, theta, b_in)` and fixes the
//! commutators
//!
//! ```text
//! [X, Pi_x] = [Y, Pi_y] = i hbar,   [X, Y] = i theta,   [Pi_x, Pi_y] = i hbar b_in
//! ```
//!
//! The crate works with the finite-dimensional invariants of such sectors:
//! commutator matrices and Pfaffians ([`sector`]), the generalized Bopp-shift
//! family ([`bopp`]), Darboux canonicalization and quadratic spectra
//! ([`darboux`]), the step-two nilpotent kinematical group with its
//! coadjoint orbits and equivalence decision ([`group`]), and constant-`Omega`
//! Moyal products on polynomial symbols ([`starprod`]).
//!
//! All scalars are exact rationals; only the normal-mode frequencies are
//! computed in floating point.

pub mod bopp;
pub mod darboux;
pub mod error;
pub mod group;
pub mod matrix;
pub mod rational;
pub mod sector;
pub mod starprod;

pub use bopp::{a_coefficient, bopp_matrix, realization_transfer, verify_sector_invariance, BoppParams, BoppRealization};
pub use darboux::{
    canonicalize, intrinsic_canonicalization, is_darboux_map, quadratic_spectrum, reduction_verdict,
    transform_quadratic, williamson_frequencies, DarbouxMap, QuadraticForm, ReductionVerdict, SpectrumResult,
};
pub use error::{Error, Result};
pub use group::{
    bch_multiply, bracket, coadjoint_act, decide_equivalence, factors_through_quotient, orbit_data,
    quotient_project, EquivalenceStatus, EquivalenceVerdict, Functional, GroupElement, LieElement, OrbitData,
    OrbitLabel, WeylHeisenbergElement,
};
pub use matrix::Matrix;
pub use rational::{format_rational, parse_rational, Rational};
pub use sector::{
    central_character, conjugation_compatible, omega_ccr, omega_nc, pfaffian, push_commutators,
    CentralCharacterVector, CommutatorMatrix, RealizationMatrix, SectorLabel,
};
pub use starprod::{moyal_star, pullback_linear, shadow_report, star_commutator, GaussianRational, PolySymbol};
