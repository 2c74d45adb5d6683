//! Small finite fields F_q, q = p^c, with log/antilog tables for extension
//! fields. Elements are stored as integer codes in 0..q: for prime fields the
//! code is the value itself; for extension fields the code is the base-p digit
//! string of the element written in the power basis of a fixed root `a` of the
//! defining polynomial.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::arith;
use crate::error::{Error, Result};

/// Hard ceiling on q so the multiplication tables stay small.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

/// A finite field of order q = p^c. Construct through [`Field::get`], which
/// caches one instance per (p, c); all polynomials over the same field share
/// that instance.
pub struct Field {
    p: u64,
    c: u32,
    q: u64,
    /// Defining polynomial coefficients (constant first, length c+1, monic)
    /// over F_p; empty for prime fields. Chosen as the first monic primitive
    /// polynomial of degree c in the crate's enumeration order (ascending
    /// coefficient index, constant term least significant), so `a` always
    /// generates the multiplicative group.
    defining: Vec<u16>,
    /// exp[i] = code of a^i for 0 <= i < 2(q-1) (doubled to skip a reduction).
    exp: Vec<u16>,
    /// log[code] = discrete log of code base a; log[0] is unused.
    log: Vec<u32>,
}

impl std::fmt::Debug for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Field(q={})", self.q)
    }
}

fn registry() -> &'static Mutex<HashMap<(u64, u32), Arc<Field>>> {
    static REG: OnceLock<Mutex<HashMap<(u64, u32), Arc<Field>>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Field {
    /// The field F_{p^c}. Cached: repeated calls return the same instance.
    pub fn get(p: u64, c: u32) -> Result<Arc<Field>> {
        if c == 0 {
            return Err(Error::UnsupportedField("extension degree must be >= 1".into()));
        }
        if !arith::is_prime(p as u128) {
            return Err(Error::UnsupportedField(format!("{p} is not prime")));
        }
        let q = arith::checked_pow(p as u128, c)
            .filter(|&q| q <= MAX_FIELD_ORDER as u128)
            .ok_or_else(|| {
                Error::UnsupportedField(format!("p^c = {p}^{c} exceeds the ceiling {MAX_FIELD_ORDER}"))
            })? as u64;
        let mut reg = registry().lock().unwrap();
        if let Some(f) = reg.get(&(p, c)) {
            return Ok(f.clone());
        }
        let field = Arc::new(Self::build(p, c, q)?);
        reg.insert((p, c), field.clone());
        Ok(field)
    }

    /// The field of the given order, which must be a prime power.
    pub fn with_order(q: u64) -> Result<Arc<Field>> {
        if q < 2 {
            return Err(Error::UnsupportedField(format!("{q} is not a prime power")));
        }
        let f = arith::factor(q as u128)
            .map_err(|e| Error::UnsupportedField(e.to_string()))?;
        if f.len() != 1 {
            return Err(Error::UnsupportedField(format!("{q} is not a prime power")));
        }
        Field::get(f[0].0 as u64, f[0].1)
    }

    fn build(p: u64, c: u32, q: u64) -> Result<Field> {
        if c == 1 {
            return Ok(Field { p, c, q, defining: Vec::new(), exp: Vec::new(), log: Vec::new() });
        }
        // Find the first primitive monic polynomial of degree c over F_p in
        // enumeration order: y has multiplicative order q-1 in F_p[y]/(f)
        // exactly when f is primitive (and in particular irreducible).
        let mut defining: Option<Vec<u16>> = None;
        'cand: for idx in 0..q {
            let mut coeffs: Vec<u16> = Vec::with_capacity(c as usize + 1);
            let mut rest = idx;
            for _ in 0..c {
                coeffs.push((rest % p) as u16);
                rest /= p;
            }
            coeffs.push(1); // monic
            if coeffs[0] == 0 {
                continue; // y would not be invertible
            }
            // Walk the orbit of 1 under multiplication by y.
            let mut cur = Self::one_code();
            for step in 1..q {
                cur = mul_by_y(cur, p, c, &coeffs);
                if cur == Self::one_code() {
                    if step == q - 1 {
                        defining = Some(coeffs);
                        break 'cand;
                    }
                    continue 'cand; // order too small
                }
            }
            // Orbit of length >= q without returning: impossible for a unit.
        }
        let defining = defining.ok_or_else(|| {
            Error::UnsupportedField(format!("no primitive polynomial found for p={p}, c={c}"))
        })?;
        let mut exp = vec![0u16; 2 * (q as usize - 1)];
        let mut log = vec![0u32; q as usize];
        let mut cur = Self::one_code();
        for i in 0..(q - 1) as usize {
            exp[i] = cur;
            exp[i + (q as usize - 1)] = cur;
            log[cur as usize] = i as u32;
            cur = mul_by_y(cur, p, c, &defining);
        }
        debug_assert_eq!(cur, Self::one_code());
        Ok(Field { p, c, q, defining, exp, log })
    }

    fn one_code() -> u16 {
        1
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Coefficients of the defining polynomial (constant first), empty for
    /// prime fields.
    pub fn defining_poly(&self) -> &[u16] {
        &self.defining
    }

    /// Code of the fixed multiplicative generator `a` used in element
    /// notation (only meaningful for c > 1, where it is the class of y).
    pub fn generator(&self) -> u16 {
        debug_assert!(self.c > 1);
        self.p as u16
    }

    /// A generator of the multiplicative group F_q^*: the notation generator
    /// for extension fields (primitive by construction), the smallest
    /// primitive root for prime fields, and 1 for F_2.
    pub fn mult_generator(&self) -> u16 {
        if self.c > 1 {
            return self.generator();
        }
        if self.p == 2 {
            return 1;
        }
        let ord = self.p - 1;
        'cand: for g in 2..self.p {
            // g generates iff no proper divisor d of p-1 has g^d = 1; it is
            // enough to check maximal proper divisors (p-1)/s over primes s.
            let mut rest = ord;
            let mut s = 2u64;
            while s * s <= rest {
                if rest % s == 0 {
                    if self.pow_elem(g as u16, ord / s) == 1 {
                        continue 'cand;
                    }
                    while rest % s == 0 {
                        rest /= s;
                    }
                }
                s += 1;
            }
            if rest > 1 && self.pow_elem(g as u16, ord / rest) == 1 {
                continue 'cand;
            }
            return g as u16;
        }
        unreachable!("every prime field has a primitive root")
    }

    #[inline]
    pub fn add(&self, x: u16, y: u16) -> u16 {
        if self.c == 1 {
            return ((x as u64 + y as u64) % self.p) as u16;
        }
        // Digitwise addition base p; for p = 2 this is xor.
        if self.p == 2 {
            return x ^ y;
        }
        let (mut x, mut y) = (x as u64, y as u64);
        let mut out = 0u64;
        let mut mult = 1u64;
        while x > 0 || y > 0 {
            out += (x % self.p + y % self.p) % self.p * mult;
            x /= self.p;
            y /= self.p;
            mult *= self.p;
        }
        out as u16
    }

    #[inline]
    pub fn neg(&self, x: u16) -> u16 {
        if self.c == 1 {
            return if x == 0 { 0 } else { (self.p - x as u64) as u16 };
        }
        if self.p == 2 {
            return x;
        }
        let mut v = x as u64;
        let mut out = 0u64;
        let mut mult = 1u64;
        while v > 0 {
            let d = v % self.p;
            out += if d == 0 { 0 } else { self.p - d } * mult;
            v /= self.p;
            mult *= self.p;
        }
        out as u16
    }

    #[inline]
    pub fn sub(&self, x: u16, y: u16) -> u16 {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: u16, y: u16) -> u16 {
        if x == 0 || y == 0 {
            return 0;
        }
        if self.c == 1 {
            return ((x as u64 * y as u64) % self.p) as u16;
        }
        self.exp[(self.log[x as usize] + self.log[y as usize]) as usize]
    }

    pub fn inv(&self, x: u16) -> u16 {
        assert!(x != 0, "inverse of zero field element");
        if self.c == 1 {
            return arith::inv_mod(x as u128, self.p as u128).expect("prime modulus") as u16;
        }
        let l = self.log[x as usize];
        if l == 0 {
            return x; // x = 1
        }
        self.exp[(self.q as u32 - 1 - l) as usize]
    }

    pub fn div(&self, x: u16, y: u16) -> u16 {
        self.mul(x, self.inv(y))
    }

    pub fn pow_elem(&self, x: u16, e: u64) -> u16 {
        if e == 0 {
            return 1;
        }
        if x == 0 {
            return 0;
        }
        if self.c == 1 {
            return arith::pow_mod(x as u128, e as u128, self.p as u128) as u16;
        }
        let l = self.log[x as usize] as u64;
        self.exp[((l * (e % (self.q - 1))) % (self.q - 1)) as usize]
    }

    /// a^e for the notation generator (requires c > 1, or e = 0).
    pub fn generator_pow(&self, e: u64) -> u16 {
        if self.c == 1 {
            assert!(e == 0, "prime fields have no notation generator");
            return 1;
        }
        self.exp[(e % (self.q as u64 - 1)) as usize]
    }

    /// Discrete log of a nonzero code w.r.t. the notation generator.
    pub fn elem_log(&self, x: u16) -> u64 {
        assert!(x != 0);
        if self.c == 1 {
            panic!("prime fields have no notation generator");
        }
        self.log[x as usize] as u64
    }

    /// Base-p digits of a code, least significant first, padded to c digits.
    /// These are the coordinates of the element in the power basis of `a`.
    pub fn digits(&self, x: u16) -> Vec<u16> {
        let mut v = x as u64;
        let mut out = Vec::with_capacity(self.c as usize);
        for _ in 0..self.c {
            out.push((v % self.p) as u16);
            v /= self.p;
        }
        out
    }

    pub fn from_digits(&self, digits: &[u16]) -> u16 {
        let mut out = 0u64;
        for &d in digits.iter().rev() {
            debug_assert!((d as u64) < self.p);
            out = out * self.p + d as u64;
        }
        out as u16
    }

    /// Frobenius x -> x^p.
    pub fn frobenius(&self, x: u16) -> u16 {
        self.pow_elem(x, self.p)
    }
}

/// Multiply the element with the given code by y and reduce modulo the
/// (candidate) defining polynomial, all in base-p digit encoding.
fn mul_by_y(code: u16, p: u64, c: u32, defining: &[u16]) -> u16 {
    // Shift digits up by one position.
    let mut digits = vec![0u16; c as usize + 1];
    let mut v = code as u64;
    for i in 0..c as usize {
        digits[i + 1] = (v % p) as u16;
        v /= p;
    }
    // Reduce: subtract top * defining.
    let top = digits[c as usize] as u64;
    if top != 0 {
        for i in 0..c as usize {
            let d = digits[i] as u64;
            let sub = top * defining[i] as u64 % p;
            digits[i] = ((d + p - sub) % p) as u16;
        }
    }
    let mut out = 0u64;
    for i in (0..c as usize).rev() {
        out = out * p + digits[i] as u64;
    }
    out as u16
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.c == other.c
    }
}

impl Eq for Field {}
