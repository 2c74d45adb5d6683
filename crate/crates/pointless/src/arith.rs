//! Integer utilities: modular arithmetic on `u128`, deterministic primality
//! testing, and factorization of the group orders that appear throughout the
//! crate. Orders here are products of numbers of the form q^a - 1 and q^b,
//! which stay far below the deterministic Miller-Rabin bound.

use crate::error::{Error, Result};

/// Largest value for which the 12-witness Miller-Rabin test below is a proven
/// deterministic primality test (3.317e24, Sorenson-Webster).
const MR_DETERMINISTIC_BOUND: u128 = 3_317_044_064_679_887_385_961_981;

const MR_WITNESSES: [u128; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// a * b mod m without overflow. Uses the native 128-bit product when the
/// modulus fits in 64 bits, and shift-and-add otherwise (requires m < 2^127).
pub fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    debug_assert!(m > 0);
    let (a, b) = (a % m, b % m);
    if m <= u64::MAX as u128 {
        return a * b % m;
    }
    debug_assert!(m < 1u128 << 127, "modulus too large for shift-and-add");
    let (mut a, mut b, mut acc) = (a, b, 0u128);
    while b > 0 {
        if b & 1 == 1 {
            acc += a;
            if acc >= m {
                acc -= m;
            }
        }
        a += a;
        if a >= m {
            a -= m;
        }
        b >>= 1;
    }
    acc
}

/// b^e mod m by square-and-multiply.
pub fn pow_mod(b: u128, mut e: u128, m: u128) -> u128 {
    debug_assert!(m > 0);
    if m == 1 {
        return 0;
    }
    let mut base = b % m;
    let mut acc = 1u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

pub fn gcd(a: u128, b: u128) -> u128 {
    num_integer::gcd(a, b)
}

pub fn lcm(a: u128, b: u128) -> u128 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

fn mr_round(n: u128, a: u128, d: u128, s: u32) -> bool {
    let a = a % n;
    if a == 0 {
        return true;
    }
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Deterministic primality test, valid for every n below 3.317e24; inputs at
/// or above that bound report a factorization failure through [`factor`]
/// instead of silently guessing.
pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    MR_WITNESSES.iter().all(|&a| mr_round(n, a, d, s))
}

/// Brent's cycle variant of Pollard rho with a deterministic sequence of
/// polynomial offsets; n must be composite and odd.
fn pollard_brent(n: u128) -> u128 {
    for c in 1u128.. {
        let f = |x: u128| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut q) = (2u128, 1u128);
        let (mut g, mut ys, mut y) = (1u128, 0u128, 2u128);
        let m = 128u128;
        let mut r = 1u128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0u128;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += m;
            }
            r <<= 1;
        }
        if g == n {
            g = 1;
            while g == 1 {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("offset loop always finds a factor for composite odd n")
}

const TRIAL_DIVISION_BOUND: u128 = 1_000_000;

/// Complete prime factorization, sorted by prime. Trial division up to 10^6,
/// then deterministic Miller-Rabin plus Brent rho on the remaining cofactor.
/// Fails only when a cofactor is too large for the deterministic primality
/// bound, in which case the unfactored cofactor is reported.
pub fn factor(mut n: u128) -> Result<Vec<(u128, u32)>> {
    if n == 0 {
        return Err(Error::FactorizationFailure("cannot factor 0".into()));
    }
    let mut out: Vec<(u128, u32)> = Vec::new();
    let push = |p: u128, out: &mut Vec<(u128, u32)>| {
        if let Some(last) = out.iter_mut().find(|(q, _)| *q == p) {
            last.1 += 1;
        } else {
            out.push((p, 1));
        }
    };
    for p in [2u128, 3, 5] {
        while n % p == 0 {
            push(p, &mut out);
            n /= p;
        }
    }
    let mut d = 7u128;
    let wheel = [4u128, 2, 4, 2, 4, 6, 2, 6];
    let mut wi = 0;
    while d <= TRIAL_DIVISION_BOUND && d * d <= n {
        while n % d == 0 {
            push(d, &mut out);
            n /= d;
        }
        d += wheel[wi];
        wi = (wi + 1) % wheel.len();
    }
    let mut stack = vec![n];
    while let Some(v) = stack.pop() {
        if v == 1 {
            continue;
        }
        if v >= MR_DETERMINISTIC_BOUND {
            // Composites this size still split fine; only a *prime* this size
            // cannot be certified. Try to split first, give up if it is a
            // probable prime.
            if MR_WITNESSES
                .iter()
                .all(|&a| mr_round(v, a, (v - 1) >> (v - 1).trailing_zeros(), (v - 1).trailing_zeros()))
            {
                return Err(Error::FactorizationFailure(format!(
                    "cofactor {v} exceeds the deterministic primality bound"
                )));
            }
            let g = pollard_brent(v);
            stack.push(g);
            stack.push(v / g);
            continue;
        }
        if is_prime(v) {
            push(v, &mut out);
            continue;
        }
        let g = if v % 2 == 0 { 2 } else { pollard_brent(v) };
        stack.push(g);
        stack.push(v / g);
    }
    out.sort_unstable();
    Ok(out)
}

/// Multiplicity of the prime p in n.
pub fn valuation(mut n: u128, p: u128) -> u32 {
    debug_assert!(p >= 2 && n > 0);
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Extended gcd over signed 128-bit integers: returns (g, x, y) with
/// a*x + b*y = g and g >= 0.
pub fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = egcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Modular inverse of a mod m, when it exists.
pub fn inv_mod(a: u128, m: u128) -> Option<u128> {
    debug_assert!(m > 0);
    if m == 1 {
        return Some(0);
    }
    let (g, x, _) = egcd((a % m) as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m as i128) as u128)
}

/// Solve k*x = s (mod c). Returns (x0, step, count): the solution set is
/// {x0 + t*step : 0 <= t < count}, empty when count == 0.
pub fn solve_linear_congruence(k: u128, s: u128, c: u128) -> (u128, u128, u128) {
    debug_assert!(c > 0);
    if c == 1 {
        return (0, 1, 1);
    }
    let g = gcd(k % c, c);
    if s % g != 0 {
        return (0, 0, 0);
    }
    let c1 = c / g;
    let k1 = (k % c) / g;
    let s1 = (s % c) / g;
    let inv = inv_mod(k1, c1).expect("k1 and c1 are coprime by construction");
    (mul_mod(inv, s1, c1), c1, g)
}

/// All primes <= n by sieve of Eratosthenes.
pub fn primes_upto(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let mut sieve = vec![true; (n + 1) as usize];
    sieve[0] = false;
    sieve[1] = false;
    let mut p = 2u64;
    while p * p <= n {
        if sieve[p as usize] {
            let mut q = p * p;
            while q <= n {
                sieve[q as usize] = false;
                q += p;
            }
        }
        p += 1;
    }
    (2..=n).filter(|&i| sieve[i as usize]).collect()
}

/// Checked q^e in u128.
pub fn checked_pow(q: u128, e: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..e {
        acc = acc.checked_mul(q)?;
    }
    Some(acc)
}
