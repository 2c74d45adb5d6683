//! Irreducibility testing, exact counting, and cached enumeration of monic
//! irreducible polynomials (the finite places of F_q(x)).

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use super::field::Field;
use super::poly::Poly;
use crate::arith;
use crate::error::{Error, Result};

/// Deterministic irreducibility test: f of degree t is irreducible over F_q
/// iff x^(q^t) = x (mod f) and, for every maximal proper divisor t/l of t,
/// gcd(x^(q^(t/l)) - x, f) = 1. Input must be nonconstant.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    let d = f.degree().ok_or_else(|| Error::ConstantInput("zero polynomial".into()))?;
    if d == 0 {
        return Err(Error::ConstantInput(format!("{f}")));
    }
    let f = f.monic();
    let field = f.field().clone();
    let q = field.q() as u128;
    let t = d as u32;
    let x = Poly::x(&field);
    // Frobenius chain: frob[i] = x^(q^i) mod f.
    let mut cur = x.rem(&f)?;
    let mut chain = vec![cur.clone()];
    for _ in 0..t {
        cur = cur.powmod(q, &f)?;
        chain.push(cur.clone());
    }
    if chain[t as usize] != chain[0] {
        return Ok(false);
    }
    let primes: Vec<u32> = arith::factor(t as u128)
        .expect("degree fits in u32")
        .into_iter()
        .map(|(p, _)| p as u32)
        .collect();
    for l in primes {
        let h = &chain[(t / l) as usize];
        let g = h.sub(&chain[0]).gcd(&f);
        if !g.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn mobius(n: u32) -> i64 {
    let f = arith::factor(n as u128).expect("u32 factorization");
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Number of monic irreducibles of degree t over F_q, by Mobius inversion of
/// sum_{d | t} d * a_d = q^t. Panics if q^t overflows 127 bits; use
/// [`count_irreducibles_big`] beyond that.
pub fn count_irreducibles(field: &Arc<Field>, t: u32) -> u128 {
    assert!(t >= 1);
    let q = field.q() as i128;
    let mut acc: i128 = 0;
    for d in 1..=t {
        if t % d != 0 {
            continue;
        }
        let mu = mobius(t / d) as i128;
        if mu == 0 {
            continue;
        }
        let mut qd: i128 = 1;
        for _ in 0..d {
            qd = qd.checked_mul(q).expect("q^t overflows; use count_irreducibles_big");
        }
        acc = acc.checked_add(mu * qd).expect("overflow in Mobius sum");
    }
    debug_assert!(acc > 0 && acc % t as i128 == 0);
    (acc / t as i128) as u128
}

/// Arbitrary-precision variant of [`count_irreducibles`].
pub fn count_irreducibles_big(field: &Arc<Field>, t: u32) -> BigUint {
    assert!(t >= 1);
    let q = BigInt::from(field.q());
    let mut acc = BigInt::zero();
    for d in 1..=t {
        if t % d != 0 {
            continue;
        }
        let mu = mobius(t / d);
        if mu != 0 {
            acc += BigInt::from(mu) * q.pow(d);
        }
    }
    debug_assert!(acc.is_positive() && (&acc % t).is_zero());
    (acc / t).magnitude().clone()
}

type CacheKey = (u64, u32, usize);

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<Vec<Poly>>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<Vec<Poly>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// All monic irreducibles of degree t, in ascending enumeration order
/// (constant term least significant). Lists are computed once per (field, t)
/// and shared process-wide; the scan sieves by trial division against the
/// cached lists of degree <= t/2, which is exact.
pub fn monic_irreducibles(field: &Arc<Field>, t: usize) -> Arc<Vec<Poly>> {
    assert!(t >= 1);
    let key = (field.p(), field.c(), t);
    if let Some(hit) = cache().lock().unwrap().get(&key) {
        return hit.clone();
    }
    let q = field.q() as u128;
    let list: Vec<Poly> = if t == 1 {
        (0..q).map(|idx| Poly::from_index(field, 1, idx)).collect()
    } else {
        let divisors: Vec<Arc<Vec<Poly>>> =
            (1..=t / 2).map(|d| monic_irreducibles(field, d)).collect();
        let total = q.checked_pow(t as u32).expect("enumeration range overflows u128");
        let mut out = Vec::new();
        'cand: for idx in 0..total {
            if idx % q == 0 {
                continue; // divisible by x
            }
            let p = Poly::from_index(field, t, idx);
            for list in &divisors {
                for g in list.iter() {
                    if p.rem(g).expect("nonzero divisor").is_zero() {
                        continue 'cand;
                    }
                }
            }
            out.push(p);
        }
        out
    };
    let arc = Arc::new(list);
    cache().lock().unwrap().entry(key).or_insert_with(|| arc.clone());
    arc
}

/// Restartable enumeration stream over monic irreducibles of degree t.
pub fn enumerate_monic_irreducibles(
    field: &Arc<Field>,
    t: usize,
) -> impl Iterator<Item = Poly> {
    let list = monic_irreducibles(field, t);
    (0..list.len()).map(move |i| list[i].clone())
}

/// Exact check of n * sum_{d < n} a_d <= q^(n+1), the place-count inequality
/// used by the degree scans. Evaluated in arbitrary precision; no rounding.
pub fn verify_place_count_bound(field: &Arc<Field>, n: u32) -> bool {
    assert!(n >= 1);
    let mut sum = BigUint::zero();
    for d in 1..n {
        sum += count_irreducibles_big(field, d);
    }
    let lhs = sum * BigUint::from(n);
    let rhs = BigUint::from(field.q()).pow(n + 1);
    lhs <= rhs
}
