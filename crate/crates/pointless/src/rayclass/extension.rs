//! Geometric abelian extensions of F_q(x) inside a ray class field:
//! enumeration, inertia degrees, conductor exponents, and exact genus via
//! the conductor-discriminant formula.
//!
//! An extension is encoded by a subgroup B_0 of H and a coset u of H/B_0,
//! standing for the subgroup generated by B_0 x {0} and (u, 1) inside
//! G = H x Z. Such subgroups surject onto the degree coordinate, so the
//! constant field stays F_q and the extension degree is d = [H : B_0].

use std::sync::Arc;

use serde::Serialize;

use crate::abelian::{
    char_annihilates, characters, subgroups_of_index, CyclicDecomp, QuotientMap, Subgroup,
    MAX_ENUMERABLE_ORDER,
};
use crate::error::{Error, Result};
use crate::gfpoly::{Place, Poly};
use crate::unitgroup::Modulus;

use super::{ArtinClass, RayClassGroup, SplitPlaceSpec};

/// A degree-d abelian extension of F_q(x) with constant field F_q and
/// conductor dividing the group's modulus, determined by (B_0, u).
#[derive(Clone)]
pub struct GeometricExtension {
    group: Arc<RayClassGroup>,
    b0: Subgroup,
    q_map: Arc<QuotientMap>,
    /// Coordinates of u on the Galois quotient H/B_0.
    u: Vec<u128>,
    degree: u128,
}

/// Serialization record for reports and fixtures: residue polynomials for
/// the subgroup generators and the twist coset, plus degree and genus.
#[derive(Clone, Debug, Serialize)]
pub struct ExtensionRecord {
    pub q: u64,
    pub modulus: String,
    pub b0: Vec<String>,
    pub u: String,
    pub degree: u64,
    pub genus: u64,
}

impl GeometricExtension {
    /// Build the extension for a subgroup of H given by generator
    /// coordinate vectors and a twist element of H (taken mod B_0).
    pub fn new(group: &Arc<RayClassGroup>, b0_gens: &[Vec<u128>], u_in_h: &[u128]) -> Self {
        let b0 = Subgroup::from_gens(group.h(), b0_gens);
        let q_map = Arc::new(QuotientMap::new(group.h(), b0.gens()));
        let u = q_map.project(u_in_h);
        Self::from_parts(group.clone(), b0, q_map, u)
    }

    pub(crate) fn from_parts(
        group: Arc<RayClassGroup>,
        b0: Subgroup,
        q_map: Arc<QuotientMap>,
        u: Vec<u128>,
    ) -> Self {
        let degree = q_map.group.size();
        debug_assert_eq!(degree, b0.index);
        GeometricExtension { group, b0, q_map, u, degree }
    }

    pub fn group(&self) -> &Arc<RayClassGroup> {
        &self.group
    }

    pub fn degree(&self) -> u128 {
        self.degree
    }

    /// Cyclic decomposition of the Galois group H/B_0.
    pub fn galois(&self) -> &CyclicDecomp {
        &self.q_map.group
    }

    pub fn b0(&self) -> &Subgroup {
        &self.b0
    }

    /// Coordinates of the twist coset on [`Self::galois`].
    pub fn u_coords(&self) -> &[u128] {
        &self.u
    }

    /// Canonical residue representative of the twist coset.
    pub fn u_residue(&self) -> Result<Poly> {
        self.group.h_rep(&self.q_map.lift(&self.u))
    }

    /// Canonical residues of the nontrivial subgroup generators.
    pub fn b0_residues(&self) -> Result<Vec<Poly>> {
        let h = self.group.h();
        let mut out = Vec::new();
        for row in self.b0.gens() {
            let e = h.reduce(row);
            if h.is_zero(&e) {
                continue;
            }
            let rep = self.group.h_rep(&e)?;
            if !out.contains(&rep) {
                out.push(rep);
            }
        }
        Ok(out)
    }

    /// Image in the Galois group of class * u^{-deg}: its order is the
    /// inertia degree of an unramified place with the given Artin class.
    pub fn twisted_class(&self, class: &ArtinClass) -> Vec<u128> {
        let g = self.galois();
        g.sub(&self.q_map.project(&class.h), &g.scale(class.deg as u128, &self.u))
    }

    /// Inertia degree f of a place. Unramified places (including infinity)
    /// use the order of the twisted Artin class in H/B_0; places dividing
    /// the modulus are measured in the restricted extension with that place
    /// deleted, so every place of the extension above P has degree
    /// f * deg(P).
    pub fn inertia_degree(&self, place: &Place) -> Result<u128> {
        if self.group.modulus().contains_place(place) {
            return self.restrict(place)?.inertia_degree(place);
        }
        let class = self.group.artin_class(place)?;
        Ok(self.galois().order_of(&self.twisted_class(&class)))
    }

    /// Whether the place splits completely (f = 1).
    pub fn splits_completely(&self, place: &Place) -> Result<bool> {
        Ok(self.inertia_degree(place)? == 1)
    }

    /// The extension's image over the modulus with `place` deleted
    /// entirely: B_0 and u push forward along H -> H'. The resulting
    /// degree divides d.
    pub fn restrict(&self, place: &Place) -> Result<GeometricExtension> {
        if !self.group.modulus().contains_place(place) {
            return Err(Error::PlaceNotInSupport(format!(
                "{place} does not divide the modulus {}",
                self.group.modulus()
            )));
        }
        let Place::Finite(p) = place else {
            unreachable!("the infinite place never divides a modulus");
        };
        let field = self.group.field().clone();
        let remaining: Vec<(Poly, usize)> = self
            .group
            .modulus()
            .factors()
            .iter()
            .filter(|(f, _)| f != p)
            .cloned()
            .collect();
        let target = Arc::new(RayClassGroup::new(
            Modulus::new(&field, remaining)?,
            self.group.seed(),
        )?);
        let h = self.group.h();
        let mut gens = Vec::new();
        for row in self.b0.gens() {
            let e = h.reduce(row);
            gens.push(self.push_class(&target, &e)?);
        }
        let u = self.push_class(&target, &self.q_map.lift(&self.u))?;
        Ok(GeometricExtension::new(&target, &gens, &u))
    }

    /// Image of a class of H in the H of a smaller modulus, via a residue
    /// representative (well defined: constants map to constants).
    fn push_class(&self, target: &Arc<RayClassGroup>, h: &[u128]) -> Result<Vec<u128>> {
        let rep = self.group.unit_rep(h)?;
        target.class_of_poly(rep.residue())
    }

    /// Conductor exponent at each modulus factor: the least level j whose
    /// unit filtration image becomes trivial in H/B_0. The extension's
    /// conductor is the product of the factors to these exponents.
    pub fn conductor_exponents(&self) -> Vec<usize> {
        conductor_exponents_for(&self.group, &self.q_map)
    }

    /// Whether the conductor is exactly the group's modulus.
    pub fn conductor_is_exact(&self) -> bool {
        self.conductor_exponents()
            .iter()
            .zip(self.group.modulus().factors())
            .all(|(e, (_, m))| e == m)
    }

    /// Exact genus by the conductor-discriminant formula:
    /// 2g - 2 = -2d + sum over nontrivial characters of H/B_0 of deg f(chi),
    /// where the conductor exponent of chi at a factor is the least
    /// filtration level on whose image chi vanishes.
    pub fn genus(&self) -> Result<u128> {
        let galois = self.galois();
        if galois.size() > MAX_ENUMERABLE_ORDER {
            return Err(Error::GroupTooLarge(format!(
                "character enumeration needs quotient order <= {MAX_ENUMERABLE_ORDER}, got {}",
                galois.size()
            )));
        }
        // Projected filtration images, zero generators dropped.
        let factors = self.group.modulus().factors();
        let mut filt: Vec<Vec<Vec<Vec<u128>>>> = Vec::with_capacity(factors.len());
        let mut degs: Vec<i128> = Vec::with_capacity(factors.len());
        for (i, (p, e)) in factors.iter().enumerate() {
            degs.push(p.degree().expect("modulus factors are nonconstant") as i128);
            let mut levels = Vec::with_capacity(e + 1);
            for j in 0..=*e {
                let gens: Vec<Vec<u128>> = self
                    .group
                    .filtration_image(i, j)
                    .iter()
                    .map(|g| self.q_map.project(g))
                    .filter(|g| !galois.is_zero(g))
                    .collect();
                levels.push(gens);
            }
            filt.push(levels);
        }
        let mut total: i128 = -2 * self.degree as i128;
        for chi in characters(galois) {
            if galois.is_zero(&chi) {
                continue;
            }
            for (levels, deg) in filt.iter().zip(&degs) {
                let a = levels
                    .iter()
                    .position(|gens| gens.iter().all(|g| char_annihilates(galois, &chi, g)))
                    .expect("the level at full multiplicity is always trivial");
                total += a as i128 * deg;
            }
        }
        if total % 2 != 0 || total < -2 {
            return Err(Error::NonIntegerGenus(format!(
                "conductor-discriminant sum gave 2g-2 = {total}"
            )));
        }
        Ok(((total + 2) / 2) as u128)
    }

    /// Serialization record; the genus is passed in so callers decide when
    /// to pay for it.
    pub fn record(&self, genus: u128) -> Result<ExtensionRecord> {
        Ok(ExtensionRecord {
            q: self.group.field().q(),
            modulus: self.group.modulus().to_string(),
            b0: self.b0_residues()?.iter().map(|p| p.to_string()).collect(),
            u: self.u_residue()?.to_string(),
            degree: u64::try_from(self.degree).expect("degree fits u64"),
            genus: u64::try_from(genus).expect("genus fits u64"),
        })
    }
}

/// Conductor exponents determined by B_0 alone.
fn conductor_exponents_for(group: &RayClassGroup, q_map: &QuotientMap) -> Vec<usize> {
    let galois = &q_map.group;
    group
        .modulus()
        .factors()
        .iter()
        .enumerate()
        .map(|(i, (_, e))| {
            (0..=*e)
                .position(|j| {
                    group
                        .filtration_image(i, j)
                        .iter()
                        .all(|g| galois.is_zero(&q_map.project(g)))
                })
                .expect("the level at full multiplicity is always trivial")
        })
        .collect()
}

/// Lazy stream over all degree-d extensions: every pair of an index-d
/// subgroup B_0 of H and a coset u of H/B_0, in deterministic order.
pub struct ExtensionIter {
    group: Arc<RayClassGroup>,
    subs: std::vec::IntoIter<Subgroup>,
    current: Option<(Subgroup, Arc<QuotientMap>, std::vec::IntoIter<Vec<u128>>)>,
}

impl Iterator for ExtensionIter {
    type Item = GeometricExtension;

    fn next(&mut self) -> Option<GeometricExtension> {
        loop {
            if let Some((sub, q_map, us)) = &mut self.current {
                if let Some(u) = us.next() {
                    return Some(GeometricExtension::from_parts(
                        self.group.clone(),
                        sub.clone(),
                        q_map.clone(),
                        u,
                    ));
                }
            }
            let sub = self.subs.next()?;
            let q_map = Arc::new(QuotientMap::new(self.group.h(), sub.gens()));
            let us: Vec<Vec<u128>> = q_map.group.elements().collect();
            self.current = Some((sub, q_map, us.into_iter()));
        }
    }
}

/// All abelian extensions of degree d with conductor dividing the modulus
/// and constant field F_q, one per pair (B_0 of index d, u in H/B_0). When
/// d = |H| the subgroup is forced trivial and the count is exactly d.
pub fn enumerate_extensions(group: &Arc<RayClassGroup>, d: u128) -> Result<ExtensionIter> {
    let order = group.h_order();
    if d == 0 || order % d != 0 {
        return Err(Error::DegreeNotDividing(d, order));
    }
    let subs = subgroups_of_index(group.h(), d)?;
    Ok(ExtensionIter { group: group.clone(), subs: subs.into_iter(), current: None })
}

/// All degree-d extensions with conductor dividing the modulus in which
/// the place S splits completely: every pair (B_0 of index d, u) whose
/// twist solves deg(S) * u = class(S) in H/B_0. Candidates come back in
/// deterministic order; [`GeometricExtension::conductor_is_exact`] tells
/// which ones use the full modulus. Errors if no extension qualifies.
pub fn find_table_extension(
    group: &Arc<RayClassGroup>,
    d: u128,
    s: &SplitPlaceSpec,
) -> Result<Vec<GeometricExtension>> {
    s.check_disjoint(group.modulus())?;
    let order = group.h_order();
    if d == 0 || order % d != 0 {
        return Err(Error::DegreeNotDividing(d, order));
    }
    let class = group.artin_class(s.place())?;
    let mut out = Vec::new();
    for sub in subgroups_of_index(group.h(), d)? {
        let q_map = Arc::new(QuotientMap::new(group.h(), sub.gens()));
        let target = q_map.project(&class.h);
        for u in q_map.group.solve_scale(class.deg as u128, &target) {
            out.push(GeometricExtension::from_parts(
                group.clone(),
                sub.clone(),
                q_map.clone(),
                u,
            ));
        }
    }
    if out.is_empty() {
        return Err(Error::NoExtensionFound(format!(
            "no degree-{d} extension of conductor {} splits {}",
            group.modulus(),
            s.place()
        )));
    }
    Ok(out)
}

/// The geometric extension with B_0 trivial in which S splits completely:
/// the geometric part of the full ray class field for this modulus and
/// split place. Unique when gcd(deg S, |H|) = 1, in particular for
/// deg S = 1; otherwise the first solution in coordinate order is taken.
pub fn full_field_extension(
    group: &Arc<RayClassGroup>,
    s: &SplitPlaceSpec,
) -> Result<GeometricExtension> {
    s.check_disjoint(group.modulus())?;
    let class = group.artin_class(s.place())?;
    let h = group.h();
    let sols = h.solve_scale(class.deg as u128, &class.h);
    let u = sols.into_iter().next().ok_or_else(|| {
        Error::NoExtensionFound(format!(
            "no geometric extension with trivial subgroup splits {} over {}",
            s.place(),
            group.modulus()
        ))
    })?;
    Ok(GeometricExtension::new(group, &[], &u))
}
