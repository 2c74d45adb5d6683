//! Construction and verification of abelian extensions of the rational
//! function field F_q(x) that have no places of degree below a target n.
//!
//! The crate models the ray class group of F_q(x) of conductor m as
//! H x Z, where H = (F_q[x]/m)^* / F_q^*; a finite abelian extension with
//! constant field F_q is encoded by a subgroup B_0 of H together with a coset
//! u of H/B_0 (the image of a degree-1 class). On top of that sit exact genus
//! computation through characters and conductors, splitting and inertia
//! queries for every place (including ramified ones and infinity), and the
//! search tooling that reconstructs a published table of pointless curves
//! over F_2 and selects parameters for the asymptotic construction.
//!
//! All arithmetic is exact: polynomials over small finite fields, `u128`
//! group orders with deterministic factorization, and big-integer comparisons
//! where formulas outgrow machine words.

pub mod abelian;
pub mod arith;
pub mod error;
pub mod gfpoly;
pub mod rayclass;
pub mod search;
pub mod unitgroup;

pub use error::{Error, Result};
