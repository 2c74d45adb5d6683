//! Units of F_q[x] modulo a squarefree-factored modulus m = prod P_i^{m_i}.
//!
//! The group (F_q[x]/m)^* splits by the Chinese remainder theorem into the
//! local unit groups at each P_i; [`LocalFactor`] handles one prime power and
//! this module glues them into a single product-of-cyclics presentation with
//! exact coordinates both ways (discrete log and rebuild).

pub mod local;

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::abelian::CyclicDecomp;
use crate::arith;
use crate::error::{Error, Result};
use crate::gfpoly::{irred, Field, Place, Poly};

pub use local::LocalFactor;

/// A modulus for ray class constructions: a monic polynomial given by its
/// distinct irreducible factors with multiplicities. May be empty (the unit
/// ideal), in which case the modulus polynomial is 1.
#[derive(Clone, Debug)]
pub struct Modulus {
    field: Arc<Field>,
    factors: Vec<(Poly, usize)>,
    poly: Poly,
}

impl Modulus {
    /// Validates that every factor is irreducible (normalizing to monic),
    /// multiplicities are positive, and factors are distinct; factors are
    /// stored sorted.
    pub fn new(field: &Arc<Field>, factors: Vec<(Poly, usize)>) -> Result<Modulus> {
        let mut norm: Vec<(Poly, usize)> = Vec::with_capacity(factors.len());
        for (p, e) in factors {
            if e == 0 {
                return Err(Error::InvalidInput(
                    "modulus factor multiplicity must be positive".into(),
                ));
            }
            if p.field().q() != field.q() {
                return Err(Error::FieldMismatch(p.field().q(), field.q()));
            }
            let p = p.monic();
            if !irred::is_irreducible(&p)? {
                return Err(Error::NotIrreducible(p.to_string()));
            }
            norm.push((p, e));
        }
        norm.sort_by(|a, b| a.0.cmp(&b.0));
        for w in norm.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::DuplicateFactor(w[0].0.to_string()));
            }
        }
        let mut poly = Poly::one(field);
        for (p, e) in &norm {
            for _ in 0..*e {
                poly = poly.mul(p);
            }
        }
        Ok(Modulus { field: field.clone(), factors: norm, poly })
    }

    pub fn unit(field: &Arc<Field>) -> Modulus {
        Modulus { field: field.clone(), factors: Vec::new(), poly: Poly::one(field) }
    }

    /// Parse a comma-separated factor list. Each factor is either a plain
    /// polynomial (multiplicity 1) or `(poly)^e`. The strings `1` and ``
    /// denote the empty modulus.
    pub fn parse(field: &Arc<Field>, s: &str) -> Result<Modulus> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Modulus::unit(field));
        }
        let mut factors = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            if let Some(rest) = part.strip_prefix('(') {
                let close = rest.rfind(')').ok_or_else(|| {
                    Error::InvalidInput(format!("unbalanced parentheses in modulus factor {part:?}"))
                })?;
                let inner = &rest[..close];
                let tail = rest[close + 1..].trim();
                let exp = if tail.is_empty() {
                    1
                } else {
                    let digits = tail.strip_prefix('^').ok_or_else(|| {
                        Error::InvalidInput(format!("expected ^exponent after ) in {part:?}"))
                    })?;
                    digits.trim().parse::<usize>().map_err(|_| {
                        Error::InvalidInput(format!("bad exponent in modulus factor {part:?}"))
                    })?
                };
                factors.push((Poly::parse(field, inner)?, exp));
            } else {
                factors.push((Poly::parse(field, part)?, 1));
            }
        }
        Modulus::new(field, factors)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn factors(&self) -> &[(Poly, usize)] {
        &self.factors
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.factors.is_empty()
    }

    /// Total degree, counted with multiplicity.
    pub fn degree(&self) -> usize {
        self.factors
            .iter()
            .map(|(p, e)| p.degree().expect("irreducible factors are nonconstant") * e)
            .sum()
    }

    pub fn support(&self) -> impl Iterator<Item = &Poly> {
        self.factors.iter().map(|(p, _)| p)
    }

    /// Is the place in the support? The infinite place never is: these
    /// moduli are supported away from infinity by construction.
    pub fn contains_place(&self, place: &Place) -> bool {
        match place {
            Place::Infinity => false,
            Place::Finite(p) => self.factors.iter().any(|(f, _)| f == p),
        }
    }
}

impl PartialEq for Modulus {
    fn eq(&self, other: &Modulus) -> bool {
        self.field.q() == other.field.q() && self.factors == other.factors
    }
}

impl Eq for Modulus {}

impl std::fmt::Display for Modulus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (p, e) in &self.factors {
            if !first {
                write!(f, ",")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "({p})^{e}")?;
            }
        }
        Ok(())
    }
}

/// A unit residue modulo the modulus polynomial, always stored reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitElement {
    residue: Poly,
}

impl UnitElement {
    pub fn residue(&self) -> &Poly {
        &self.residue
    }
}

impl std::fmt::Display for UnitElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.residue)
    }
}

/// (F_q[x]/m)^* with a fixed product-of-cyclics presentation.
pub struct UnitGroup {
    modulus: Modulus,
    locals: Vec<LocalFactor>,
    decomp: CyclicDecomp,
    /// Start of each local factor's coordinate block.
    offsets: Vec<usize>,
    /// CRT idempotents, one per local factor.
    idempotents: Vec<Poly>,
    order: u128,
    order_factored: Vec<(u128, u32)>,
    seed: u64,
}

impl UnitGroup {
    /// Build the unit group presentation. The seed drives Teichmueller
    /// generator sampling inside each local factor, so equal seeds give
    /// identical coordinates.
    pub fn new(modulus: Modulus, seed: u64) -> Result<UnitGroup> {
        let field = modulus.field().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut locals = Vec::with_capacity(modulus.factors().len());
        for (p, e) in modulus.factors() {
            locals.push(LocalFactor::build(&field, p, *e, &mut rng)?);
        }
        let mut orders = Vec::new();
        let mut offsets = Vec::with_capacity(locals.len());
        for lf in &locals {
            offsets.push(orders.len());
            orders.extend(lf.orders());
        }
        let decomp = CyclicDecomp::new(orders);
        let mut order = 1u128;
        for lf in &locals {
            order = order.checked_mul(lf.order()?).ok_or_else(|| {
                Error::GroupTooLarge("unit group order overflows u128".into())
            })?;
        }
        let mut factored: std::collections::BTreeMap<u128, u32> = Default::default();
        for lf in &locals {
            for part in lf.orders() {
                if part > 1 {
                    for (prime, exp) in arith::factor(part)? {
                        *factored.entry(prime).or_insert(0) += exp;
                    }
                }
            }
        }
        let mut idempotents = Vec::with_capacity(locals.len());
        for lf in &locals {
            let cofactor = modulus.poly().divrem(lf.modulus())?.0;
            let inv = cofactor.rem(lf.modulus())?.inv_mod(lf.modulus())?;
            idempotents.push(cofactor.mul(&inv).rem(modulus.poly())?);
        }
        Ok(UnitGroup {
            modulus,
            locals,
            decomp,
            offsets,
            idempotents,
            order,
            order_factored: factored.into_iter().collect(),
            seed,
        })
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn field(&self) -> &Arc<Field> {
        self.modulus.field()
    }

    pub fn locals(&self) -> &[LocalFactor] {
        &self.locals
    }

    pub fn decomp(&self) -> &CyclicDecomp {
        &self.decomp
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn order_factored(&self) -> &[(u128, u32)] {
        &self.order_factored
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn one(&self) -> UnitElement {
        UnitElement {
            residue: Poly::one(self.field())
                .rem(self.modulus.poly())
                .expect("modulus is nonzero"),
        }
    }

    /// Reduce a polynomial to a unit residue; errors if it shares a factor
    /// with the modulus.
    pub fn reduce(&self, p: &Poly) -> Result<UnitElement> {
        let residue = p.rem(self.modulus.poly())?;
        if !self.modulus.is_unit_ideal() {
            let g = residue.gcd(self.modulus.poly());
            if !g.is_one() {
                return Err(Error::NotCoprime(format!(
                    "{p} shares the factor {g} with the modulus"
                )));
            }
        }
        Ok(UnitElement { residue })
    }

    pub fn is_identity(&self, e: &UnitElement) -> bool {
        e == &self.one()
    }

    pub fn mul(&self, a: &UnitElement, b: &UnitElement) -> UnitElement {
        UnitElement {
            residue: a
                .residue
                .mul_mod(&b.residue, self.modulus.poly())
                .expect("modulus is nonzero"),
        }
    }

    pub fn inv(&self, a: &UnitElement) -> UnitElement {
        if self.modulus.is_unit_ideal() {
            return self.one();
        }
        UnitElement {
            residue: a
                .residue
                .inv_mod(self.modulus.poly())
                .expect("stored residues are units"),
        }
    }

    pub fn pow(&self, a: &UnitElement, e: u128) -> UnitElement {
        UnitElement {
            residue: a
                .residue
                .powmod(e, self.modulus.poly())
                .expect("modulus is nonzero"),
        }
    }

    /// Coordinates in the fixed cyclic decomposition (per-local discrete
    /// logs, concatenated).
    pub fn coords(&self, e: &UnitElement) -> Result<Vec<u128>> {
        let mut out = Vec::with_capacity(self.decomp.rank());
        for lf in &self.locals {
            let local_res = e.residue.rem(lf.modulus())?;
            out.extend(lf.dlog(&local_res)?);
        }
        Ok(out)
    }

    /// Rebuild the unit from coordinates (inverse of [`Self::coords`]).
    pub fn from_coords(&self, coords: &[u128]) -> Result<UnitElement> {
        assert_eq!(coords.len(), self.decomp.rank());
        if self.locals.is_empty() {
            return Ok(self.one());
        }
        let mut acc = Poly::zero(self.field());
        for (i, lf) in self.locals.iter().enumerate() {
            let lo = self.offsets[i];
            let hi = lo + lf.orders().len();
            let local = lf.element(&coords[lo..hi])?;
            acc = acc.add(&local.mul_mod(&self.idempotents[i], self.modulus.poly())?);
        }
        Ok(UnitElement { residue: acc.rem(self.modulus.poly())? })
    }

    /// Multiplicative order, via the coordinate decomposition.
    pub fn element_order(&self, e: &UnitElement) -> Result<u128> {
        Ok(self.decomp.order_of(&self.coords(e)?))
    }

    /// All k-th roots of the element, sorted by residue.
    pub fn kth_roots(&self, e: &UnitElement, k: u128) -> Result<Vec<UnitElement>> {
        let target = self.coords(e)?;
        let mut out = Vec::new();
        for sol in self.decomp.solve_scale(k, &target) {
            out.push(self.from_coords(&sol)?);
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Generator of the constant subgroup F_q^* (trivial over F_2).
    pub fn const_gen(&self) -> UnitElement {
        let field = self.field().clone();
        self.reduce(&Poly::constant(&field, field.mult_generator()))
            .expect("nonzero constants are units")
    }

    /// Coordinate vectors generating the image of the level-`level` unit
    /// filtration subgroup at local factor `local_idx`:
    /// level 0 is the full local unit group, level 1 the one-units, level j
    /// the units congruent to 1 mod P^j. Entries are sparse scalar multiples
    /// of coordinate unit vectors, no discrete logs required.
    pub fn filtration_gens(&self, local_idx: usize, level: usize) -> Vec<Vec<u128>> {
        let lf = &self.locals[local_idx];
        let base = self.offsets[local_idx];
        let p = self.field().p() as u128;
        let rank = self.decomp.rank();
        let mut out = Vec::new();
        if level == 0 {
            let mut v = vec![0u128; rank];
            v[base] = 1;
            out.push(v);
        }
        for (i, g) in lf.one_units().iter().enumerate() {
            // Smallest p-power scale with g.level * scale >= level: the
            // generator to that power is 1 + w^scale * P^{level'} with
            // level' >= level, exactly the part of <g> inside the filtration
            // step. A scale reaching the generator order contributes nothing.
            let mut scale = 1u128;
            while (g.level as u128) * scale < level as u128 {
                scale *= p;
            }
            if scale < g.order {
                let mut v = vec![0u128; rank];
                v[base + 1 + i] = scale;
                out.push(v);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Arc<Field> {
        Field::get(2, 1).unwrap()
    }

    fn f3() -> Arc<Field> {
        Field::get(3, 1).unwrap()
    }

    #[test]
    fn modulus_parse_and_display() {
        let field = f2();
        let m = Modulus::parse(&field, "(x^3+x+1)^2").unwrap();
        assert_eq!(m.to_string(), "(x^3+x+1)^2");
        assert_eq!(m.degree(), 6);
        assert_eq!(m.poly().degree(), Some(6));

        let m = Modulus::parse(&field, "x^3+x^2+1,x^3+x+1").unwrap();
        // Factors are stored sorted, so display canonicalizes the order.
        assert_eq!(m.to_string(), "x^3+x+1,x^3+x^2+1");
        assert_eq!(m.degree(), 6);

        let m = Modulus::parse(&field, "1").unwrap();
        assert!(m.is_unit_ideal());
        assert_eq!(m.to_string(), "1");
        assert_eq!(m.degree(), 0);

        let m = Modulus::parse(&field, " ( x+1 )^3 , x ").unwrap();
        assert_eq!(m.to_string(), "x,(x+1)^3");
    }

    #[test]
    fn modulus_validation_errors() {
        let field = f2();
        assert!(matches!(
            Modulus::parse(&field, "x^2+1"),
            Err(Error::NotIrreducible(_))
        ));
        assert!(matches!(
            Modulus::parse(&field, "x+1,x+1"),
            Err(Error::DuplicateFactor(_))
        ));
        assert!(matches!(
            Modulus::parse(&field, "(x)^0"),
            Err(Error::InvalidInput(_))
        ));
        assert!(Modulus::parse(&field, "(x+1").is_err());
    }

    fn exhaustive_units(group: &UnitGroup) -> Vec<UnitElement> {
        let field = group.field().clone();
        let d = group.modulus().poly().degree().unwrap();
        let q = field.q() as u128;
        let mut out = Vec::new();
        for idx in 0..q.pow(d as u32) {
            let mut digs = Vec::with_capacity(d);
            let mut v = idx;
            for _ in 0..d {
                digs.push((v % q) as u16);
                v /= q;
            }
            let p = Poly::from_coeffs(&field, &digs);
            if let Ok(u) = group.reduce(&p) {
                out.push(u);
            }
        }
        out
    }

    #[test]
    fn group_order_matches_unit_count() {
        let field = f2();
        let m = Modulus::parse(&field, "(x^3+x+1)^2").unwrap();
        let g = UnitGroup::new(m, 0).unwrap();
        assert_eq!(g.order(), 56);
        assert_eq!(exhaustive_units(&g).len(), 56);
        assert_eq!(g.order_factored(), &[(2, 3), (7, 1)]);

        let m = Modulus::parse(&field, "(x)^2,x+1").unwrap();
        let g = UnitGroup::new(m, 0).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(exhaustive_units(&g).len(), 2);
    }

    #[test]
    fn empty_modulus_group_is_trivial() {
        let field = f2();
        let g = UnitGroup::new(Modulus::unit(&field), 0).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.decomp().rank(), 0);
        let u = g.reduce(&Poly::parse(&field, "x^5+x").unwrap()).unwrap();
        assert!(g.is_identity(&u));
        assert_eq!(g.coords(&u).unwrap(), Vec::<u128>::new());
        assert_eq!(g.from_coords(&[]).unwrap(), g.one());
        assert_eq!(g.element_order(&u).unwrap(), 1);
    }

    #[test]
    fn coords_roundtrip_and_homomorphism() {
        for (field, spec) in [
            (f2(), "(x^3+x+1)^2"),
            (f2(), "(x)^3,(x+1)^2"),
            (f3(), "(x+1)^2,x"),
            (f3(), "x^2+1,x+2"),
        ] {
            let m = Modulus::parse(&field, spec).unwrap();
            let g = UnitGroup::new(m, 5).unwrap();
            let units = exhaustive_units(&g);
            assert_eq!(units.len() as u128, g.order(), "{spec}");
            for u in &units {
                let c = g.coords(u).unwrap();
                assert_eq!(&g.from_coords(&c).unwrap(), u, "{spec} unit {u}");
            }
            // Homomorphism on a sample of pairs.
            for (i, a) in units.iter().enumerate().step_by(3) {
                let b = &units[(i * 7 + 1) % units.len()];
                let ca = g.coords(a).unwrap();
                let cb = g.coords(b).unwrap();
                let cab = g.coords(&g.mul(a, b)).unwrap();
                assert_eq!(g.decomp().add(&ca, &cb), cab, "{spec}");
            }
        }
    }

    #[test]
    fn element_order_matches_brute_force() {
        let field = f2();
        let m = Modulus::parse(&field, "(x^3+x+1)^2").unwrap();
        let g = UnitGroup::new(m, 1).unwrap();
        for u in exhaustive_units(&g) {
            let claimed = g.element_order(&u).unwrap();
            let mut cur = u.clone();
            let mut n = 1u128;
            while !g.is_identity(&cur) {
                cur = g.mul(&cur, &u);
                n += 1;
                assert!(n <= g.order());
            }
            assert_eq!(claimed, n, "unit {u}");
            assert_eq!(g.order() % claimed, 0);
        }
    }

    #[test]
    fn kth_roots_match_exhaustive_search() {
        let field = f3();
        let m = Modulus::parse(&field, "(x+1)^2").unwrap();
        let g = UnitGroup::new(m, 2).unwrap();
        assert_eq!(g.order(), 6);
        let units = exhaustive_units(&g);
        for k in 1..=7u128 {
            for target in &units {
                let mut expect: Vec<UnitElement> = units
                    .iter()
                    .filter(|u| &g.pow(u, k) == target)
                    .cloned()
                    .collect();
                expect.sort();
                let got = g.kth_roots(target, k).unwrap();
                assert_eq!(got, expect, "k={k} target={target}");
            }
        }
    }

    #[test]
    fn inverse_and_pow_agree() {
        let field = f2();
        let m = Modulus::parse(&field, "x^4+x+1").unwrap();
        let g = UnitGroup::new(m, 3).unwrap();
        assert_eq!(g.order(), 15);
        for u in exhaustive_units(&g) {
            assert!(g.is_identity(&g.mul(&u, &g.inv(&u))));
            assert_eq!(g.pow(&u, g.order()), g.one());
            assert_eq!(g.pow(&u, 16), g.mul(&u, &g.one()));
        }
    }

    #[test]
    fn const_gen_generates_scalar_subgroup() {
        let field = f3();
        let m = Modulus::parse(&field, "x^2+1").unwrap();
        let g = UnitGroup::new(m, 4).unwrap();
        let c = g.const_gen();
        assert_eq!(g.element_order(&c).unwrap(), 2);
        // Over F_2 the constant subgroup is trivial.
        let m2 = Modulus::parse(&f2(), "x^3+x+1").unwrap();
        let g2 = UnitGroup::new(m2, 4).unwrap();
        assert!(g2.is_identity(&g2.const_gen()));
    }

    fn subgroup_size(g: &UnitGroup, gens: &[Vec<u128>]) -> usize {
        let decomp = g.decomp();
        let mut set: std::collections::BTreeSet<Vec<u128>> = Default::default();
        set.insert(decomp.zero());
        let mut frontier = vec![decomp.zero()];
        while let Some(e) = frontier.pop() {
            for gv in gens {
                let next = decomp.add(&e, &decomp.reduce(gv));
                if set.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
        set.len()
    }

    #[test]
    fn filtration_subgroups_have_expected_orders() {
        // (x+1)^4 over F_3: local orders |U^(j)| = q^{m-j} for j >= 1.
        let field = f3();
        let m = Modulus::parse(&field, "(x+1)^4").unwrap();
        let g = UnitGroup::new(m, 6).unwrap();
        assert_eq!(g.order(), 2 * 27);
        let sizes: Vec<usize> = (0..=4)
            .map(|lvl| subgroup_size(&g, &g.filtration_gens(0, lvl)))
            .collect();
        assert_eq!(sizes, vec![54, 27, 9, 3, 1]);

        // The filtration actually consists of units congruent to 1 mod P^j.
        let p = Poly::parse(&field, "x+1").unwrap();
        for lvl in 1..=4usize {
            let pl = (0..lvl).fold(Poly::one(&field), |acc, _| acc.mul(&p));
            for gens in g.filtration_gens(0, lvl) {
                let u = g.from_coords(&gens).unwrap();
                let diff = u.residue().sub(&Poly::one(&field));
                assert!(diff.rem(&pl).unwrap().is_zero(), "level {lvl}");
            }
        }

        // Two-prime modulus: filtration at one factor leaves the other alone.
        let m = Modulus::parse(&f2(), "(x)^2,(x+1)^3").unwrap();
        let g = UnitGroup::new(m, 6).unwrap();
        assert_eq!(g.order(), 2 * 4);
        assert_eq!(subgroup_size(&g, &g.filtration_gens(0, 1)), 2);
        assert_eq!(subgroup_size(&g, &g.filtration_gens(1, 1)), 4);
        assert_eq!(subgroup_size(&g, &g.filtration_gens(1, 2)), 2);
        assert_eq!(subgroup_size(&g, &g.filtration_gens(1, 3)), 1);
    }
}
