//! Splitting statistics across the family of same-conductor abelian
//! extensions, with the provable bounds they must satisfy.
//!
//! For a modulus m whose H = (F_q[x]/m)^*/F_q^* is cyclic of order d, the d
//! extensions of degree d and conductor m are the twists (B_0 trivial,
//! u in H). For a place P of degree d' outside the support of m and
//! l = gcd(d, d'), at most l of the d twists split P completely. Refining
//! along a prime s dividing d with s-part t: among the t degree-t
//! subextensions (B_0 the unique index-t subgroup), writing l = gcd(d', t)
//! and t/l = s^c with c >= 1, the inertia degree is divisible by s^j in at
//! least l(s^c - s^{j-1}) of them, for each j = 1..c.
//!
//! [`split_count_census`] measures the observed counts exhaustively and
//! reports them next to the bounds. Places inside the support of m are
//! included for completeness (their inertia is measured in the restricted
//! extension) but the bounds do not claim anything about them, so they are
//! flagged and excluded from the verdict.

use std::sync::Arc;

use serde::Serialize;

use crate::abelian::MAX_ENUMERABLE_ORDER;
use crate::arith;
use crate::error::{Error, Result};
use crate::gfpoly::{monic_irreducibles, Place};

use super::RayClassGroup;

/// Observed divisibility count for one exponent step of the prime-power
/// refinement: in how many of the t subextensions s^j divides f, against
/// the guaranteed minimum.
#[derive(Clone, Debug, Serialize)]
pub struct DivisibilityRow {
    pub j: u32,
    pub observed: u64,
    pub lower_bound: u64,
}

/// Prime-power refinement of the census at one prime s dividing d.
#[derive(Clone, Debug, Serialize)]
pub struct TowerCensus {
    /// The prime s.
    pub s: u64,
    /// The s-part t of d: the subextension family has degree t.
    pub t: u64,
    /// gcd(d', t).
    pub l: u64,
    /// t/l = s^c; rows exist only when c >= 1.
    pub c: u32,
    pub rows: Vec<DivisibilityRow>,
}

/// Census for a single place of the requested degree.
#[derive(Clone, Debug, Serialize)]
pub struct PlaceCensus {
    pub place: String,
    pub degree: usize,
    /// True when the place divides the modulus; the bounds then do not
    /// apply and the towers are omitted.
    pub in_support: bool,
    /// gcd(d, d'), the ceiling on completely-split twists.
    pub split_bound: u64,
    /// Number of the d twists in which f = 1.
    pub split_observed: u64,
    pub towers: Vec<TowerCensus>,
}

/// Full census over every place of one degree for a cyclic-H modulus.
#[derive(Clone, Debug, Serialize)]
pub struct CensusRecord {
    pub q: u64,
    pub modulus: String,
    pub dprime: usize,
    /// |H|, the number of twists in the family.
    pub d: u64,
    pub places: Vec<PlaceCensus>,
    /// True when every out-of-support place respects both the split
    /// ceiling and every tower floor.
    pub all_within_bounds: bool,
}

/// Order of a in Z/n.
fn ord_mod(n: u128, a: u128) -> u128 {
    n / arith::gcd(n, a % n)
}

/// Exhaustive splitting census over all places of degree `dprime` for a
/// modulus whose H is cyclic. Errors if H is not cyclic or too large to
/// sweep.
pub fn split_count_census(group: &Arc<RayClassGroup>, dprime: usize) -> Result<CensusRecord> {
    if dprime == 0 {
        return Err(Error::InvalidInput("place degree must be positive".into()));
    }
    let h = group.h();
    if h.rank() > 1 {
        return Err(Error::NotCyclic(format!(
            "H of {} has invariant factors {:?}",
            group.modulus(),
            h.orders
        )));
    }
    let d = h.size();
    if d > MAX_ENUMERABLE_ORDER {
        return Err(Error::GroupTooLarge(format!(
            "census sweeps all {d} twists; the cap is {MAX_ENUMERABLE_ORDER}"
        )));
    }
    let field = group.field();
    let mut places = Vec::new();
    if dprime == 1 {
        places.push(Place::Infinity);
    }
    for p in monic_irreducibles(field, dprime).iter() {
        places.push(Place::Finite(p.clone()));
    }

    let class_coord = |g: &RayClassGroup, place: &Place| -> Result<u128> {
        let c = g.artin_class(place)?;
        Ok(if c.h.is_empty() { 0 } else { c.h[0] })
    };

    let towers_shape: Vec<(u128, u32)> = if d == 1 { Vec::new() } else { arith::factor(d)? };
    let mut out_places = Vec::new();
    let mut all_within = true;
    for place in &places {
        let in_support = group.modulus().contains_place(place);
        let census = if !in_support {
            let hp = class_coord(group, place)?;
            let split_observed = (0..d)
                .filter(|&u| {
                    let a = (hp + d - (dprime as u128 * u) % d) % d;
                    ord_mod(d, a) == 1
                })
                .count() as u64;
            let mut towers = Vec::new();
            for &(s, v) in &towers_shape {
                let t = s.pow(v);
                let l = arith::gcd(dprime as u128, t);
                let c = arith::valuation(t / l, s);
                let hp_t = hp % t;
                let mut rows = Vec::new();
                for j in 1..=c {
                    let sj = s.pow(j);
                    let observed = (0..t)
                        .filter(|&u| {
                            let a = (hp_t + t - (dprime as u128 * u) % t) % t;
                            ord_mod(t, a) % sj == 0
                        })
                        .count() as u64;
                    let lower_bound =
                        u64::try_from(l * (s.pow(c) - s.pow(j - 1))).expect("bound fits u64");
                    rows.push(DivisibilityRow { j, observed, lower_bound });
                }
                towers.push(TowerCensus {
                    s: u64::try_from(s).expect("prime fits u64"),
                    t: u64::try_from(t).expect("s-part fits u64"),
                    l: u64::try_from(l).expect("gcd fits u64"),
                    c,
                    rows,
                });
            }
            PlaceCensus {
                place: place.to_string(),
                degree: dprime,
                in_support: false,
                split_bound: u64::try_from(arith::gcd(d, dprime as u128))
                    .expect("gcd fits u64"),
                split_observed,
                towers,
            }
        } else {
            // Inertia of a support place lives in the restricted extension:
            // push every twist forward along H -> H' once and measure there.
            let Place::Finite(p) = place else {
                unreachable!("the infinite place never divides a modulus");
            };
            let remaining: Vec<_> = group
                .modulus()
                .factors()
                .iter()
                .filter(|(f, _)| f != p)
                .cloned()
                .collect();
            let restricted = Arc::new(RayClassGroup::new(
                crate::unitgroup::Modulus::new(field, remaining)?,
                group.seed(),
            )?);
            let hr = restricted.h();
            let hp = restricted.artin_class(place)?.h;
            let split_observed = (0..d)
                .filter(|&u| {
                    let rep = group.unit_rep(&h.reduce(&[u])).expect("lift stays a unit");
                    let phi_u = restricted
                        .class_of_poly(rep.residue())
                        .expect("unit residues stay coprime after deletion");
                    let twisted = hr.sub(&hp, &hr.scale(dprime as u128, &phi_u));
                    hr.order_of(&twisted) == 1
                })
                .count() as u64;
            PlaceCensus {
                place: place.to_string(),
                degree: dprime,
                in_support: true,
                split_bound: u64::try_from(arith::gcd(d, dprime as u128))
                    .expect("gcd fits u64"),
                split_observed,
                towers: Vec::new(),
            }
        };
        if !census.in_support {
            if census.split_observed > census.split_bound {
                all_within = false;
            }
            for tower in &census.towers {
                for row in &tower.rows {
                    if row.observed < row.lower_bound {
                        all_within = false;
                    }
                }
            }
        }
        out_places.push(census);
    }

    Ok(CensusRecord {
        q: field.q(),
        modulus: group.modulus().to_string(),
        dprime,
        d: u64::try_from(d).expect("|H| fits u64"),
        places: out_places,
        all_within_bounds: all_within,
    })
}
