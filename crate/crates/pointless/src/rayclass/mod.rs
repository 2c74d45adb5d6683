//! Finite model of the ray class group of the rational function field
//! K = F_q(x) with conductor supported on finite places.
//!
//! With class number 1 and a modulus m (an effective divisor avoiding the
//! infinite place), the ray class group of conductor m splits as G = H x Z
//! where H = (F_q[x]/m)^* / F_q^* carries the finite part and the Z
//! coordinate tracks divisor degree. A place P coprime to m maps to the
//! Artin class (P mod m, deg P); the infinite place maps to (1, 1). The
//! abelian extensions of K with conductor dividing m and constant field F_q
//! correspond to the pairs (B_0, u): a subgroup B_0 of H together with a
//! coset u of H/B_0, encoding the index-d subgroup generated by B_0 x {0}
//! and (u, 1).
//!
//! [`RayClassGroup`] builds the explicit H for a modulus (through the unit
//! group machinery), computes Artin classes, and caches the images in H of
//! the local unit filtration, which drive every conductor and genus
//! computation downstream.

pub mod census;
pub mod extension;

pub use census::{split_count_census, CensusRecord, DivisibilityRow, PlaceCensus, TowerCensus};
pub use extension::{
    enumerate_extensions, find_table_extension, full_field_extension, ExtensionIter,
    ExtensionRecord, GeometricExtension,
};

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::abelian::{CyclicDecomp, QuotientMap};
use crate::error::{Error, Result};
use crate::gfpoly::{Field, Place, Poly};
use crate::unitgroup::{Modulus, UnitElement, UnitGroup};

/// The class of a place in the ray class model G = H x Z: the component in
/// H = (F_q[x]/m)^*/F_q^* (coordinates on the cyclic decomposition of H)
/// together with the degree of the place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArtinClass {
    /// Coordinates of the H-component on [`RayClassGroup::h`].
    pub h: Vec<u128>,
    /// Degree of the place, the Z-coordinate of the class.
    pub deg: usize,
}

/// A distinguished place S required to split completely, i.e. the place
/// whose Frobenius is forced into the extension's subgroup. S must avoid
/// the support of the modulus; the overlap check happens where the two
/// meet, since the spec of the place itself is modulus-independent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitPlaceSpec {
    place: Place,
}

impl SplitPlaceSpec {
    pub fn new(place: Place) -> SplitPlaceSpec {
        SplitPlaceSpec { place }
    }

    pub fn place(&self) -> &Place {
        &self.place
    }

    pub fn degree(&self) -> usize {
        self.place.degree()
    }

    /// Error unless S avoids the support of m.
    pub fn check_disjoint(&self, m: &Modulus) -> Result<()> {
        if m.contains_place(&self.place) {
            return Err(Error::PlaceInSupport(format!(
                "split place {} lies in the support of {}",
                self.place, m
            )));
        }
        Ok(())
    }
}

/// The finite part H = (F_q[x]/m)^*/F_q^* of the ray class group of
/// conductor m, with the degree coordinate handled separately (the full
/// group is H x Z; the base field has class number 1).
///
/// Elements of H are represented by coordinates on a cyclic decomposition
/// obtained by quotienting the unit group of the modulus by the diagonal
/// image of the nonzero constants. Canonical residue representatives are
/// normalized to be monic, which is the identity map when q = 2.
pub struct RayClassGroup {
    units: UnitGroup,
    h_map: QuotientMap,
    h_order: u128,
    /// Images in H of the local unit filtration: entry `[i][j]` generates
    /// the image of the level-j units at the i-th modulus factor
    /// (j = 0 is the full local factor, j = multiplicity is trivial).
    filtration_images: Vec<Vec<Vec<Vec<u128>>>>,
}

impl RayClassGroup {
    /// Build the group for a modulus. The seed feeds the unit group's
    /// Teichmueller sampling and is recorded for reproducibility.
    pub fn new(modulus: Modulus, seed: u64) -> Result<RayClassGroup> {
        let units = UnitGroup::new(modulus, seed)?;
        let const_coords = units.coords(&units.const_gen())?;
        let h_map = QuotientMap::new(units.decomp(), &[const_coords]);
        let h_order = h_map.group.size();
        let q = units.field().q() as u128;
        // |H| = Phi(m)/(q-1) for a nonempty modulus; the empty modulus has
        // trivial units, so the constants contribute nothing to quotient by.
        if units.modulus().is_unit_ideal() {
            debug_assert_eq!(h_order, 1);
        } else {
            debug_assert_eq!(h_order * (q - 1), units.order());
        }
        let mut filtration_images = Vec::with_capacity(units.locals().len());
        for (i, lf) in units.locals().iter().enumerate() {
            let mut per_level = Vec::with_capacity(lf.multiplicity() + 1);
            for level in 0..=lf.multiplicity() {
                let gens: Vec<Vec<u128>> = units
                    .filtration_gens(i, level)
                    .iter()
                    .map(|g| h_map.project(g))
                    .collect();
                per_level.push(gens);
            }
            filtration_images.push(per_level);
        }
        Ok(RayClassGroup { units, h_map, h_order, filtration_images })
    }

    pub fn modulus(&self) -> &Modulus {
        self.units.modulus()
    }

    pub fn field(&self) -> &Arc<Field> {
        self.units.field()
    }

    pub fn units(&self) -> &UnitGroup {
        &self.units
    }

    pub fn seed(&self) -> u64 {
        self.units.seed()
    }

    /// Cyclic decomposition of H (invariant-factor form).
    pub fn h(&self) -> &CyclicDecomp {
        &self.h_map.group
    }

    /// |H| = Phi(m)/(q-1).
    pub fn h_order(&self) -> u128 {
        self.h_order
    }

    /// Generators of the image in H of the level-`level` unit filtration
    /// subgroup at modulus factor `factor` (level 0 is the whole local
    /// factor; level equal to the multiplicity gives the empty list).
    pub fn filtration_image(&self, factor: usize, level: usize) -> &[Vec<u128>] {
        &self.filtration_images[factor][level]
    }

    /// Class in H of a unit element.
    pub fn h_class(&self, e: &UnitElement) -> Result<Vec<u128>> {
        Ok(self.h_map.project(&self.units.coords(e)?))
    }

    /// Class in H of a polynomial coprime to the modulus.
    pub fn class_of_poly(&self, p: &Poly) -> Result<Vec<u128>> {
        self.h_class(&self.units.reduce(p)?)
    }

    /// A unit-group representative of a class of H.
    pub fn unit_rep(&self, h: &[u128]) -> Result<UnitElement> {
        self.units.from_coords(&self.h_map.lift(h))
    }

    /// The canonical residue representative of a class of H: the unique
    /// monic polynomial in the coset modulo nonzero constants.
    pub fn h_rep(&self, h: &[u128]) -> Result<Poly> {
        Ok(self.unit_rep(h)?.residue().monic())
    }

    /// The Artin class of a place coprime to the modulus. Finite places map
    /// to (residue class, degree); the infinite place maps to (1, 1).
    pub fn artin_class(&self, place: &Place) -> Result<ArtinClass> {
        match place {
            Place::Infinity => Ok(ArtinClass { h: self.h_map.group.zero(), deg: 1 }),
            Place::Finite(p) => {
                if self.modulus().contains_place(place) {
                    return Err(Error::PlaceInSupport(format!(
                        "{} divides the modulus {}; restrict the modulus first",
                        p,
                        self.modulus()
                    )));
                }
                Ok(ArtinClass { h: self.class_of_poly(p)?, deg: place.degree() })
            }
        }
    }
}

fn bigint_pow(base: &BigInt, exp: usize) -> BigInt {
    num_traits::pow(base.clone(), exp)
}

fn biguint_pow(base: &BigUint, exp: usize) -> BigUint {
    num_traits::pow(base.clone(), exp)
}

/// Degree [K^m_S : K] of the full ray class field of conductor m in which S
/// splits completely: deg(S) * Phi(m) / (q - 1), exactly (class number 1).
pub fn full_rayclass_degree(m: &Modulus, s: &SplitPlaceSpec) -> Result<BigUint> {
    s.check_disjoint(m)?;
    let q = BigUint::from(m.field().q());
    let mut phi = BigUint::one();
    for (p, e) in m.factors() {
        let n = p.degree().expect("modulus factors are nonconstant");
        let t = biguint_pow(&q, n) - BigUint::one();
        phi *= t * biguint_pow(&q, (e - 1) * n);
    }
    let h_part = if m.is_unit_ideal() {
        BigUint::one()
    } else {
        // q - 1 divides q^{n_1} - 1, so this split of the division is exact.
        phi / (q - BigUint::one())
    };
    Ok(BigUint::from(s.degree()) * h_part)
}

/// Exact genus of the full ray class field of conductor m with split place
/// S, by the closed form of the conductor-discriminant sum:
///
///   2g - 2 = |H| * (deg m - 2 - sum_i n_i / (q^{n_i} - 1))
///
/// evaluated in exact rational arithmetic (|H| = Phi(m)/(q-1); n_i are the
/// degrees of the modulus factors). The per-level character counts of the
/// unit filtration telescope to the 1/(q^{n_i}-1) terms, which is valid
/// whenever the constants meet each local factor trivially; that always
/// holds for q = 2, and for q > 2 with a single-factor modulus the tame
/// correction makes the rational value non-integral, reported as an error
/// rather than rounded. The empty modulus gives genus 0.
pub fn genus_full_rayclass(m: &Modulus, s: &SplitPlaceSpec) -> Result<BigUint> {
    s.check_disjoint(m)?;
    if m.is_unit_ideal() {
        return Ok(BigUint::zero());
    }
    let q = BigInt::from(m.field().q());
    let mut a = BigInt::one(); // prod_i (q^{n_i} - 1)
    let mut w = BigInt::one(); // q^{sum_i (m_i - 1) n_i}
    let mut deg_m = 0i64;
    for (p, e) in m.factors() {
        let n = p.degree().expect("modulus factors are nonconstant");
        a *= bigint_pow(&q, n) - BigInt::one();
        w *= bigint_pow(&q, (e - 1) * n);
        deg_m += (e * n) as i64;
    }
    let mut cross = BigInt::zero(); // sum_i n_i * prod_{j != i} (q^{n_j} - 1)
    for (p, _) in m.factors() {
        let n = p.degree().expect("modulus factors are nonconstant");
        let t = bigint_pow(&q, n) - BigInt::one();
        cross += BigInt::from(n) * (&a / &t);
    }
    let numer: BigInt = &w * ((BigInt::from(deg_m) - 2) * &a - cross);
    let denom = BigInt::from(2) * (&q - BigInt::one());
    let (quot, rem) = numer.div_rem(&denom);
    if !rem.is_zero() {
        return Err(Error::NonIntegerGenus(format!(
            "closed form gives 1 + {numer}/{denom} for modulus {m}"
        )));
    }
    let g = quot + BigInt::one();
    if g.is_negative() {
        return Err(Error::NonIntegerGenus(format!(
            "closed form gives negative genus {g} for modulus {m}"
        )));
    }
    Ok(g.to_biguint().expect("checked non-negative"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfpoly::monic_irreducibles;

    fn f2() -> Arc<Field> {
        Field::get(2, 1).unwrap()
    }

    fn f3() -> Arc<Field> {
        Field::get(3, 1).unwrap()
    }

    fn group(field: &Arc<Field>, m: &str) -> Arc<RayClassGroup> {
        let modulus = Modulus::parse(field, m).unwrap();
        Arc::new(RayClassGroup::new(modulus, 7).unwrap())
    }

    fn split_spec(field: &Arc<Field>, s: &str) -> SplitPlaceSpec {
        SplitPlaceSpec::new(Place::parse(field, s).unwrap())
    }

    #[test]
    fn infinity_maps_to_identity_with_degree_one() {
        for m in ["x^3+x+1", "(x^3+x+1)^2", "x,(x+1)^2"] {
            let g = group(&f2(), m);
            let c = g.artin_class(&Place::Infinity).unwrap();
            assert!(g.h().is_zero(&c.h));
            assert_eq!(c.deg, 1);
        }
    }

    #[test]
    fn artin_class_rejects_support_places() {
        let g = group(&f2(), "(x^3+x+1)^2");
        let p = Place::parse(&f2(), "x^3+x+1").unwrap();
        assert!(matches!(g.artin_class(&p), Err(Error::PlaceInSupport(_))));
    }

    #[test]
    fn artin_class_is_multiplicative_on_residues() {
        for (field, m) in [(f2(), "x^5+x^2+1"), (f3(), "(x+1)^2,x^2+1")] {
            let g = group(&field, m);
            let irreds: Vec<Poly> = (1..=3)
                .flat_map(|t| monic_irreducibles(&field, t).iter().cloned().collect::<Vec<_>>())
                .filter(|p| {
                    let pl = Place::Finite(p.clone());
                    !g.modulus().contains_place(&pl)
                })
                .collect();
            for p1 in &irreds {
                for p2 in &irreds {
                    let prod = p1.mul(p2);
                    let lhs = g.class_of_poly(&prod).unwrap();
                    let rhs = g
                        .h()
                        .add(&g.class_of_poly(p1).unwrap(), &g.class_of_poly(p2).unwrap());
                    assert_eq!(lhs, rhs, "m={m} p1={p1} p2={p2}");
                }
            }
        }
    }

    #[test]
    fn class_of_x_has_order_seven_mod_cubic() {
        let g = group(&f2(), "x^3+x+1");
        assert_eq!(g.h_order(), 7);
        let c = g.class_of_poly(&Poly::x(&f2())).unwrap();
        assert_eq!(g.h().order_of(&c), 7);
    }

    #[test]
    fn h_order_is_phi_over_constants() {
        let cases = [
            (f2(), "x^3+x+1", 7u128),
            (f2(), "(x^3+x+1)^2", 56),
            (f2(), "x^3+x^2+1,x^3+x+1", 49),
            (f3(), "x,x+1", 2),
            (f3(), "(x+1)^2", 3),
            (Field::get(2, 2).unwrap(), "x^2+x+a", 5),
        ];
        for (field, m, want) in cases {
            let g = group(&field, m);
            assert_eq!(g.h_order(), want, "modulus {m}");
        }
    }

    #[test]
    fn h_reps_are_monic_and_roundtrip() {
        let g = group(&f3(), "(x+1)^2,x^2+1");
        // Phi = 6 * 8 = 48, divided by q - 1 = 2.
        assert_eq!(g.h_order(), 24);
        for h in g.h().elements() {
            let rep = g.h_rep(&h).unwrap();
            assert!(rep.is_monic(), "rep {rep} not monic");
            assert_eq!(g.class_of_poly(&rep).unwrap(), h);
        }
    }

    #[test]
    fn full_degree_examples() {
        let f = f2();
        let d = full_rayclass_degree(
            &Modulus::parse(&f, "x^3+x+1").unwrap(),
            &split_spec(&f, "x+1"),
        )
        .unwrap();
        assert_eq!(d, BigUint::from(7u32));
        let d = full_rayclass_degree(
            &Modulus::parse(&f, "x^3+x^2+1,x^3+x+1").unwrap(),
            &split_spec(&f, "x^9+x^7+x^2+x+1"),
        )
        .unwrap();
        assert_eq!(d, BigUint::from(441u32));
        let d = full_rayclass_degree(&Modulus::unit(&f), &split_spec(&f, "x")).unwrap();
        assert_eq!(d, BigUint::one());
    }

    #[test]
    fn full_degree_matches_h_order_times_split_degree() {
        for (field, moduli) in [
            (f2(), vec!["x", "(x)^2", "(x+1)^3", "x^2+x+1", "x,x+1", "x^4+x+1"]),
            (f3(), vec!["x", "(x+1)^2", "x,x+1,x+2", "x^2+1"]),
        ] {
            for m in moduli {
                let g = group(&field, m);
                for s in ["inf", "x^5+x^2+1", "x^5+x^4+x^3+x+1"] {
                    let spec = match Place::parse(&field, s) {
                        Ok(pl) => SplitPlaceSpec::new(pl),
                        Err(_) => continue,
                    };
                    if spec.check_disjoint(g.modulus()).is_err() {
                        continue;
                    }
                    let want = BigUint::from(spec.degree()) * BigUint::from(g.h_order());
                    assert_eq!(
                        full_rayclass_degree(g.modulus(), &spec).unwrap(),
                        want,
                        "m={m} s={s}"
                    );
                }
            }
        }
    }

    #[test]
    fn full_degree_rejects_overlapping_split_place() {
        let f = f2();
        let m = Modulus::parse(&f, "x^3+x+1").unwrap();
        let s = split_spec(&f, "x^3+x+1");
        assert!(matches!(full_rayclass_degree(&m, &s), Err(Error::PlaceInSupport(_))));
    }

    #[test]
    fn closed_form_genus_examples() {
        let f = f2();
        let inf = SplitPlaceSpec::new(Place::Infinity);
        let cases = [
            ("x^3+x+1", 3u32),
            ("x", 0),
            ("(x)^2", 0),
            ("(x)^3", 1),
            ("(x^3+x+1)^2", 101),
            ("x^4+x+1", 14),
        ];
        for (m, want) in cases {
            let m = Modulus::parse(&f, m).unwrap();
            assert_eq!(genus_full_rayclass(&m, &inf).unwrap(), BigUint::from(want), "m={m}");
        }
        assert_eq!(genus_full_rayclass(&Modulus::unit(&f), &inf).unwrap(), BigUint::zero());
    }

    #[test]
    fn closed_form_genus_single_factor_large_q_is_non_integral() {
        let f = f3();
        let m = Modulus::parse(&f, "x^2+1").unwrap();
        let s = SplitPlaceSpec::new(Place::Infinity);
        assert!(matches!(genus_full_rayclass(&m, &s), Err(Error::NonIntegerGenus(_))));
    }
}
