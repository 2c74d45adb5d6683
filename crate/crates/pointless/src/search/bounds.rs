//! Genus bounds and the prime-factor shape of (q^m - 1)/(q - 1).
//!
//! A curve over F_q with no places of degree below n has no rational points
//! over F_{q^t} for any t < n, and the Weil inequality at t = n - 1 then
//! forces g >= (q^(n-1) - 1) / (2 q^((n-1)/2)). The floor is computed
//! exactly: the condition is equivalent to 4 g^2 q^(n-1) >= (q^(n-1) - 1)^2,
//! which avoids the irrational square root when n - 1 is odd.
//!
//! The repunit check factors (q^m - 1)/(q - 1) for an odd prime m and
//! verifies that every prime factor either divides q - 1 or is congruent to
//! 1 mod 2m, and that the number of distinct primes stays at or below m.
//! These are the facts that make the degrees in the verified-curve fixture
//! (31, 127, 23*89, ...) products of large primes.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::arith::{checked_pow, factor, is_prime};
use crate::error::{Error, Result};

fn ser_biguint<S: Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ser_u128<S: Serializer>(x: &u128, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Genus bounds for a curve over F_q with no places of degree below n.
#[derive(Debug, Clone, Serialize)]
pub struct BoundsReport {
    pub q: u64,
    pub n: usize,
    pub genus: u64,
    /// Smallest genus compatible with having no points over F_{q^(n-1)}.
    #[serde(serialize_with = "ser_biguint")]
    pub weil_floor: BigUint,
    pub passes_floor: bool,
    /// Soft cap n * q^n; informational, never asserted.
    #[serde(serialize_with = "ser_biguint")]
    pub soft_cap: BigUint,
    pub within_soft_cap: bool,
    /// g / q^n, truncated to six decimal places.
    pub ratio_qn: String,
    /// g / (n * q^n), truncated to six decimal places.
    pub ratio_nqn: String,
}

/// Truncated decimal expansion of num/den with six places.
fn format_ratio(num: &BigUint, den: &BigUint) -> String {
    let scaled = num * BigUint::from(1_000_000u64) / den;
    let int = (&scaled / BigUint::from(1_000_000u64)).to_string();
    let frac = (&scaled % BigUint::from(1_000_000u64))
        .to_u64()
        .expect("remainder below 10^6");
    format!("{int}.{frac:06}")
}

/// True iff 4 g^2 q^(n-1) >= (q^(n-1) - 1)^2, the exact form of
/// g >= (q^(n-1) - 1) / (2 q^((n-1)/2)).
fn floor_holds(g: &BigUint, p: &BigUint) -> bool {
    let lhs = BigUint::from(4u32) * g * g * p;
    let ones = p - 1u32;
    lhs >= &ones * &ones
}

/// Smallest genus a curve with no places of degree below n can have.
pub fn weil_floor(q: u64, n: usize) -> Result<BigUint> {
    if q < 2 || n == 0 {
        return Err(Error::InvalidInput(format!(
            "weil_floor needs q >= 2 and n >= 1, got q={q} n={n}"
        )));
    }
    let p = BigUint::from(q).pow(n as u32 - 1);
    // Start from floor(sqrt((p-1)^2 / 4p)) and walk up; at most two steps.
    let ones = &p - 1u32;
    let mut g = (&ones * &ones / (BigUint::from(4u32) * &p)).sqrt();
    while !floor_holds(&g, &p) {
        g += 1u32;
    }
    Ok(g)
}

/// Evaluates the Weil floor and the informational soft cap for (q, n, g).
pub fn bounds(q: u64, n: usize, genus: u64) -> Result<BoundsReport> {
    let floor = weil_floor(q, n)?;
    let p = BigUint::from(q).pow(n as u32 - 1);
    let g = BigUint::from(genus);
    let qn = BigUint::from(q).pow(n as u32);
    let soft_cap = BigUint::from(n as u64) * &qn;
    Ok(BoundsReport {
        q,
        n,
        genus,
        passes_floor: floor_holds(&g, &p),
        weil_floor: floor,
        within_soft_cap: g <= soft_cap,
        ratio_qn: format_ratio(&g, &qn),
        ratio_nqn: format_ratio(&g, &soft_cap),
        soft_cap,
    })
}

/// One prime in the factorization of (q^m - 1)/(q - 1).
#[derive(Debug, Clone, Serialize)]
pub struct RepunitFactor {
    #[serde(serialize_with = "ser_u128")]
    pub prime: u128,
    pub exponent: u32,
    /// Whether the prime divides q - 1 (exempt from the congruence).
    pub divides_q_minus_one: bool,
    /// Whether prime = 2am + 1 for some a >= 1.
    pub congruent_one_mod_2m: bool,
    /// The witness a when the congruence holds.
    #[serde(serialize_with = "ser_opt_u128")]
    pub a: Option<u128>,
}

fn ser_opt_u128<S: Serializer>(x: &Option<u128>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&v.to_string()),
        None => s.serialize_none(),
    }
}

/// Factor shape of (q^m - 1)/(q - 1) for an odd prime exponent m.
#[derive(Debug, Clone, Serialize)]
pub struct EulerLemmaReport {
    pub q: u64,
    pub m: u64,
    #[serde(serialize_with = "ser_u128")]
    pub repunit: u128,
    pub factors: Vec<RepunitFactor>,
    pub distinct_primes: usize,
    /// Every factor divides q - 1 or is 1 mod 2m.
    pub congruences_hold: bool,
    /// Whether the omega bound (<= m distinct primes) is being asserted,
    /// i.e. m exceeds the configured threshold c_q.
    pub omega_bound_applies: bool,
    pub omega_within_bound: bool,
    pub pass: bool,
}

/// Factors (q^m - 1)/(q - 1) and checks the congruence and omega claims.
///
/// `c_q` is the threshold above which the distinct-prime count is asserted
/// to be at most m; pass 1 to assert it for every odd prime m.
pub fn euler_lemma_check(q: u64, m: u64, c_q: u64) -> Result<EulerLemmaReport> {
    if q < 2 {
        return Err(Error::InvalidInput(format!("field size {q} below 2")));
    }
    if m < 3 || m % 2 == 0 || !is_prime(m as u128) {
        return Err(Error::InvalidInput(format!("exponent {m} is not an odd prime")));
    }
    let qm = checked_pow(q as u128, m as u32)
        .ok_or_else(|| Error::InvalidInput(format!("{q}^{m} exceeds 128 bits")))?;
    let repunit = (qm - 1) / (q as u128 - 1);
    let two_m = 2 * m as u128;
    let mut factors = Vec::new();
    let mut congruences_hold = true;
    for (prime, exponent) in factor(repunit)? {
        let divides_q_minus_one = (q as u128 - 1) % prime == 0;
        let congruent_one_mod_2m = prime % two_m == 1;
        if !divides_q_minus_one && !congruent_one_mod_2m {
            congruences_hold = false;
        }
        factors.push(RepunitFactor {
            prime,
            exponent,
            divides_q_minus_one,
            congruent_one_mod_2m,
            a: congruent_one_mod_2m.then(|| (prime - 1) / two_m),
        });
    }
    let distinct_primes = factors.len();
    let omega_bound_applies = m > c_q;
    let omega_within_bound = distinct_primes as u64 <= m;
    Ok(EulerLemmaReport {
        q,
        m,
        repunit,
        factors,
        distinct_primes,
        congruences_hold,
        omega_bound_applies,
        omega_within_bound,
        pass: congruences_hold && (!omega_bound_applies || omega_within_bound),
    })
}
