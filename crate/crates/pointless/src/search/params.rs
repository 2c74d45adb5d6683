//! Selection of asymptotic search parameters (l, m, alpha, beta).
//!
//! The driver wants a cover degree d = (q^m - 1)^alpha (q^l - 1)^beta / (q - 1)
//! landing in the window (r, rq) with r = 4q * q^n / n, for two primes
//! l < m < 2l a bit above 3 log_q(n). Taking logs, alpha and beta must put
//! alpha*q_m + beta*q_l in a unit interval (R-1, R], where q_m = log_q(q^m - 1)
//! sits just below m. Three methods are tried in order:
//!
//! 1. `walk-beta0`: c = floor(R / q_m) already lands, take (c, 0);
//! 2. `walk-direct`: add multiples of v = k*q_l - h*q_m, with h/k the Farey
//!    predecessor of l/m, so each step moves forward by v < 1; the step
//!    count is hard-capped by the bound j < c/h and never loops;
//! 3. `farey-solve`: solve alpha*m + beta*l = N exactly for N near R using
//!    the same Farey pair as a Bezout certificate (k*l - h*m = 1), sweeping
//!    the finitely many nonnegative solutions.
//!
//! Floating point only steers the candidate generation. Every candidate is
//! accepted or rejected by the exact big-integer inequality
//! 4 q^(n+1) (q-1) < n * (q^m-1)^alpha (q^l-1)^beta < 4 q^(n+2) (q-1),
//! so the outcome never depends on rounding.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Serialize, Serializer};

use crate::arith::{gcd, inv_mod, primes_upto};
use crate::error::{Error, Result};

/// Tunables for parameter selection and the asymptotic driver.
#[derive(Debug, Clone, Serialize)]
pub struct SearchConfig {
    pub q: u64,
    pub n: usize,
    /// Threshold constant for the "alpha or beta is large" report:
    /// compares against c1 * n / log_q(n).
    pub c1: f64,
    /// Density constant used by the driver's budget heuristics; must lie
    /// strictly between 0 and 1.
    pub c2: f64,
    /// Prime window (window_lo * log_q(n), window_hi * log_q(n)].
    pub window_lo: f64,
    pub window_hi: f64,
    /// Enumeration caps: prime pairs tried, and (alpha, beta) candidates
    /// examined per pair.
    pub max_pairs: usize,
    pub max_candidates: usize,
}

impl SearchConfig {
    pub fn new(q: u64, n: usize) -> SearchConfig {
        SearchConfig {
            q,
            n,
            c1: 1.0 / 48.0,
            c2: 0.5,
            window_lo: 3.0,
            window_hi: 12.0,
            max_pairs: 64,
            max_candidates: 4096,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.q < 2 {
            return Err(Error::InvalidInput(format!("q must be at least 2, got {}", self.q)));
        }
        if self.n < 2 {
            return Err(Error::InvalidInput(format!("n must be at least 2, got {}", self.n)));
        }
        if !(self.c1 > 0.0) {
            return Err(Error::InvalidInput(format!("c1 must be positive, got {}", self.c1)));
        }
        if !(self.c2 > 0.0 && self.c2 < 1.0) {
            return Err(Error::InvalidInput(format!(
                "c2 must lie strictly between 0 and 1, got {}",
                self.c2
            )));
        }
        if !(self.window_lo > 0.0 && self.window_lo < self.window_hi) {
            return Err(Error::InvalidInput(format!(
                "window multipliers must satisfy 0 < lo < hi, got ({}, {})",
                self.window_lo, self.window_hi
            )));
        }
        if self.max_pairs == 0 || self.max_candidates == 0 {
            return Err(Error::InvalidInput("enumeration caps must be positive".into()));
        }
        Ok(())
    }
}

fn ser_biguint<S: Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// A verified parameter tuple together with how it was found.
#[derive(Debug, Clone, Serialize)]
pub struct ParameterSelection {
    pub q: u64,
    pub n: usize,
    pub l: u64,
    pub m: u64,
    pub alpha: u64,
    pub beta: u64,
    /// Which method produced the tuple: walk-beta0, walk-direct, or
    /// farey-solve.
    pub method: String,
    /// Steps taken by the walk (0 for the other methods).
    pub walk_steps: u64,
    /// The walk's hard cap floor(c/h); walks never exceed it.
    pub step_bound: u64,
    /// Cover degree d = (q^m-1)^alpha (q^l-1)^beta / (q-1), exact.
    #[serde(serialize_with = "ser_biguint")]
    pub d: BigUint,
    pub d_bits: u64,
    /// m*alpha + l*beta, the conductor degree the driver will use.
    pub weight: u64,
    /// Whether (weight/2) * d stays below 2q * q^(n+1), the genus budget
    /// of the construction (exact comparison).
    pub genus_bound_ok: bool,
    /// Whether alpha or beta exceeds c1 * n / log_q(n).
    pub exceeds_c1: bool,
    pub primes_in_window: Vec<u64>,
    pub pairs_tried: u64,
    /// Pairs on which the capped walk failed before a method succeeded.
    pub walk_failures: u64,
}

/// Farey predecessor h/k of the reduced fraction l/m: the unique fraction
/// with 0 <= h < k <= m-1 (h < l) satisfying k*l - h*m = 1.
pub fn farey_neighbor(l: u128, m: u128) -> Result<(u128, u128)> {
    if l == 0 || l >= m {
        return Err(Error::InvalidInput(format!(
            "farey_neighbor needs 0 < l < m, got {l}/{m}"
        )));
    }
    if gcd(l, m) != 1 {
        return Err(Error::NotCoprime(format!("{l}/{m} is not reduced")));
    }
    let k = inv_mod(l, m).expect("l is invertible mod m");
    let h = (k * l - 1) / m;
    Ok((h, k))
}

/// Exact acceptance test for a candidate pair of exponents: whether
/// d = (q^m-1)^alpha (q^l-1)^beta / (q-1) satisfies r < d < rq for
/// r = 4q * q^n / n, cross-multiplied so only integers are compared.
fn candidate_passes(q: u64, n: usize, l: u64, m: u64, alpha: u64, beta: u64) -> (bool, BigUint) {
    let big_q = BigUint::from(q);
    let qm = big_q.pow(m as u32) - BigUint::one();
    let ql = big_q.pow(l as u32) - BigUint::one();
    let d_num = qm.pow(alpha as u32) * ql.pow(beta as u32);
    let scaled = BigUint::from(n as u64) * &d_num;
    let lo = BigUint::from(4u32) * (&big_q - BigUint::one()) * big_q.pow(n as u32 + 1);
    let hi = &lo * &big_q;
    (scaled > lo && scaled < hi, d_num)
}

struct PairAttempt {
    selection: Option<(u64, u64, String, u64, BigUint)>,
    step_bound: u64,
    walk_failed: bool,
}

fn try_pair(cfg: &SearchConfig, l: u64, m: u64) -> PairAttempt {
    let q = cfg.q as f64;
    let ln_q = q.ln();
    // log_q(q^e - 1) = e + ln(1 - q^-e) / ln(q), without forming q^e.
    let log_q_minus = |e: u64| e as f64 + (-q.powi(-(e as i32))).ln_1p() / ln_q;
    let q_m = log_q_minus(m);
    let q_l = log_q_minus(l);
    // R = log_q(r * q * (q-1)) with r = 4q * q^n / n.
    let r_log = (4.0f64).ln() / ln_q + (cfg.n as f64 + 2.0) + (q - 1.0).ln() / ln_q
        - (cfg.n as f64).ln() / ln_q;

    let c = (r_log / q_m).floor().max(0.0) as u64;
    let (h, k) = farey_neighbor(l as u128, m as u128).expect("primes l < m are coprime");
    let (h, k) = (h as u64, k as u64);
    let step_bound = c / h.max(1);

    // Method 1: beta = 0 already lands in the window.
    if c >= 1 {
        let (ok, d_num) = candidate_passes(cfg.q, cfg.n, l, m, c, 0);
        if ok {
            return PairAttempt {
                selection: Some((c, 0, "walk-beta0".into(), 0, d_num)),
                step_bound,
                walk_failed: false,
            };
        }
    }

    // Method 2: the capped predecessor walk z_j = c*q_m + j*v.
    let v = k as f64 * q_l - h as f64 * q_m;
    let walk_failed = true;
    if v > 0.0 {
        let z = c as f64 * q_m;
        let j_guess = ((r_log - 1.0 - z) / v).ceil().max(1.0) as u64;
        for j in j_guess.saturating_sub(1)..=j_guess + 1 {
            if j == 0 || j * h >= c {
                // Past the hard cap j < c/h: stop rather than loop.
                continue;
            }
            let alpha = c - j * h;
            let beta = j * k;
            let (ok, d_num) = candidate_passes(cfg.q, cfg.n, l, m, alpha, beta);
            if ok {
                return PairAttempt {
                    selection: Some((alpha, beta, "walk-direct".into(), j, d_num)),
                    step_bound,
                    walk_failed: false,
                };
            }
        }
    }

    // Method 3: exact Bezout sweep of alpha*m + beta*l = N for N near R.
    let n0 = r_log.round().max(1.0) as u64;
    let mut tried = 0usize;
    for nn in [n0, n0.saturating_sub(1), n0 + 1] {
        if nn == 0 {
            continue;
        }
        let t_lo = (nn * h).div_ceil(l);
        let t_hi = (nn * k) / m;
        for t in t_lo..=t_hi {
            if tried >= cfg.max_candidates {
                break;
            }
            tried += 1;
            let alpha = t * l - nn * h;
            let beta = nn * k - t * m;
            if alpha == 0 && beta == 0 {
                continue;
            }
            let (ok, d_num) = candidate_passes(cfg.q, cfg.n, l, m, alpha, beta);
            if ok {
                return PairAttempt {
                    selection: Some((alpha, beta, "farey-solve".into(), 0, d_num)),
                    step_bound,
                    walk_failed,
                };
            }
        }
    }
    PairAttempt { selection: None, step_bound, walk_failed }
}

/// Choose primes l < m < 2l in the window and exponents (alpha, beta)
/// putting the cover degree in the target range, deterministically. Errors
/// if the window contains no admissible prime pair, or if every pair's
/// capped walk and exact sweep come up empty.
pub fn select_parameters(cfg: &SearchConfig) -> Result<ParameterSelection> {
    cfg.validate()?;
    let logq_n = (cfg.n as f64).ln() / (cfg.q as f64).ln();
    let lo = cfg.window_lo * logq_n;
    let hi = cfg.window_hi * logq_n;
    let primes: Vec<u64> = primes_upto(hi.floor() as u64)
        .into_iter()
        .filter(|&p| p as f64 > lo)
        .collect();
    let mut pairs = Vec::new();
    for (i, &l) in primes.iter().enumerate() {
        for &m in &primes[i + 1..] {
            if m < 2 * l {
                pairs.push((l, m));
            }
        }
    }
    if pairs.is_empty() {
        return Err(Error::NoPrimePair(format!(
            "no primes l < m < 2l in ({lo:.2}, {hi:.2}] for q={} n={}",
            cfg.q, cfg.n
        )));
    }

    let mut pairs_tried = 0u64;
    let mut walk_failures = 0u64;
    for &(l, m) in pairs.iter().take(cfg.max_pairs) {
        pairs_tried += 1;
        let attempt = try_pair(cfg, l, m);
        if attempt.walk_failed {
            walk_failures += 1;
        }
        if let Some((alpha, beta, method, walk_steps, d_num)) = attempt.selection {
            let q_minus = BigUint::from(cfg.q - 1);
            let d = &d_num / &q_minus;
            let d_bits = d.bits();
            let weight = m * alpha + l * beta;
            // (weight/2) * d < 2q * q^(n+1), compared as weight * d_num
            // < 4 q^(n+2) (q-1) to stay in integers.
            let genus_lhs = BigUint::from(weight) * &d_num;
            let genus_rhs =
                BigUint::from(4u32) * &q_minus * BigUint::from(cfg.q).pow(cfg.n as u32 + 2);
            let genus_bound_ok = genus_lhs < genus_rhs;
            let c1_threshold = cfg.c1 * cfg.n as f64 / logq_n;
            return Ok(ParameterSelection {
                q: cfg.q,
                n: cfg.n,
                l,
                m,
                alpha,
                beta,
                method,
                walk_steps,
                step_bound: attempt.step_bound,
                d,
                d_bits,
                weight,
                genus_bound_ok,
                exceeds_c1: alpha as f64 > c1_threshold || beta as f64 > c1_threshold,
                primes_in_window: primes,
                pairs_tried,
                walk_failures,
            });
        }
    }
    Err(Error::ParameterSearchFailed(format!(
        "no (alpha, beta) verified for q={} n={} over {} prime pairs ({} capped walks failed)",
        cfg.q, cfg.n, pairs_tried, walk_failures
    )))
}
