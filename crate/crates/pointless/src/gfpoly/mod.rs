//! Arithmetic for small finite fields F_q and polynomials over them, plus
//! enumeration and counting of monic irreducibles -- the finite places of the
//! rational function field F_q(x).

pub mod field;
pub mod irred;
pub mod parse;
pub mod poly;

pub use field::{Field, MAX_FIELD_ORDER};
pub use irred::{
    count_irreducibles, count_irreducibles_big, enumerate_monic_irreducibles, is_irreducible,
    monic_irreducibles, verify_place_count_bound,
};
pub use poly::Poly;

use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A place of F_q(x): either a monic irreducible polynomial or the place at
/// infinity (degree 1).
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Place {
    Finite(Poly),
    Infinity,
}

impl Place {
    /// Wrap a finite place, validating that the polynomial is monic and
    /// irreducible.
    pub fn finite(p: Poly) -> Result<Place> {
        if !p.is_monic() {
            return Err(Error::InvalidInput(format!("place polynomial must be monic: {p}")));
        }
        if !irred::is_irreducible(&p)? {
            return Err(Error::NotIrreducible(format!("{p}")));
        }
        Ok(Place::Finite(p))
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree().expect("finite places are nonconstant"),
            Place::Infinity => 1,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Place::Infinity)
    }

    /// Parse either `inf` or a polynomial in the standard grammar.
    pub fn parse(field: &Arc<Field>, s: &str) -> Result<Place> {
        let t = s.trim();
        if t == "inf" || t == "infinity" || t == "oo" {
            return Ok(Place::Infinity);
        }
        Place::finite(Poly::parse(field, t)?)
    }
}

/// Places are ordered by degree, with the infinite place sorting before the
/// finite places of degree 1, and finite places in enumeration order. Since
/// every finite place has degree >= 1 this makes the infinite place the
/// minimum. This is the canonical scan order used when reporting a minimal
/// witness.
impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Place::Infinity, Place::Infinity) => Ordering::Equal,
            (Place::Infinity, Place::Finite(_)) => Ordering::Less,
            (Place::Finite(_), Place::Infinity) => Ordering::Greater,
            (Place::Finite(a), Place::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Display for Place {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

impl std::fmt::Debug for Place {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Place({self})")
    }
}
