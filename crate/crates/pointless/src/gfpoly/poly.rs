//! Dense univariate polynomials over a small finite field. Coefficients are
//! stored lowest degree first; polynomials over F_2 are bit-packed, one
//! coefficient per bit, because the place scans iterate over hundreds of
//! thousands of them.

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::field::Field;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// Bit-packed coefficients over F_2, least significant bit = constant
    /// term; no trailing zero limbs.
    F2(Vec<u64>),
    /// Coefficient codes, constant term first; no trailing zeros.
    Gen(Vec<u16>),
}

/// A polynomial in canonical form: no trailing zero coefficients, the zero
/// polynomial has an empty coefficient list and `degree() == None`.
#[derive(Clone)]
pub struct Poly {
    field: Arc<Field>,
    repr: Repr,
}

// ---------------------------------------------------------------------------
// F_2 helpers on bit-packed limbs
// ---------------------------------------------------------------------------

fn f2_norm(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn f2_deg(v: &[u64]) -> i64 {
    // Scan past zero limbs so intermediate (unnormalized) values from
    // xor-shift updates still report the true degree.
    for (i, &limb) in v.iter().enumerate().rev() {
        if limb != 0 {
            return i as i64 * 64 + (63 - limb.leading_zeros() as i64);
        }
    }
    -1
}

fn f2_get(v: &[u64], i: usize) -> bool {
    let limb = i / 64;
    limb < v.len() && (v[limb] >> (i % 64)) & 1 == 1
}

/// dst ^= src << shift (in bits).
fn f2_xor_shifted(dst: &mut Vec<u64>, src: &[u64], shift: usize) {
    let (limb_shift, bit_shift) = (shift / 64, shift % 64);
    let need = src.len() + limb_shift + 1;
    if dst.len() < need {
        dst.resize(need, 0);
    }
    if bit_shift == 0 {
        for (i, &s) in src.iter().enumerate() {
            dst[i + limb_shift] ^= s;
        }
    } else {
        let mut carry = 0u64;
        for (i, &s) in src.iter().enumerate() {
            dst[i + limb_shift] ^= (s << bit_shift) | carry;
            carry = s >> (64 - bit_shift);
        }
        dst[src.len() + limb_shift] ^= carry;
    }
}

fn f2_mul(a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len()];
    for (i, &limb) in a.iter().enumerate() {
        let mut l = limb;
        while l != 0 {
            let j = l.trailing_zeros() as usize;
            f2_xor_shifted(&mut out, b, i * 64 + j);
            l &= l - 1;
        }
    }
    f2_norm(&mut out);
    out
}

fn f2_divrem(a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let db = f2_deg(b);
    debug_assert!(db >= 0, "division by zero");
    let mut r = a.to_vec();
    let mut q: Vec<u64> = Vec::new();
    loop {
        let dr = f2_deg(&r);
        if dr < db {
            break;
        }
        let shift = (dr - db) as usize;
        f2_xor_shifted(&mut r, b, shift);
        let limb = shift / 64;
        if q.len() <= limb {
            q.resize(limb + 1, 0);
        }
        q[limb] |= 1u64 << (shift % 64);
    }
    f2_norm(&mut q);
    f2_norm(&mut r);
    (q, r)
}

// ---------------------------------------------------------------------------
// General-q helpers on coefficient codes
// ---------------------------------------------------------------------------

fn gen_norm(v: &mut Vec<u16>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn gen_mul(f: &Field, a: &[u16], b: &[u16]) -> Vec<u16> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u16; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
    }
    gen_norm(&mut out);
    out
}

fn gen_divrem(f: &Field, a: &[u16], b: &[u16]) -> (Vec<u16>, Vec<u16>) {
    debug_assert!(!b.is_empty(), "division by zero");
    let db = b.len() - 1;
    let lead_inv = f.inv(b[db]);
    let mut r = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u16; r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let coef = f.mul(r[dr], lead_inv);
        if coef != 0 {
            q[dr - db] = coef;
            for i in 0..=db {
                r[dr - db + i] = f.sub(r[dr - db + i], f.mul(coef, b[i]));
            }
        }
        r.pop();
        gen_norm(&mut r);
        if r.len() <= db {
            break;
        }
    }
    gen_norm(&mut q);
    gen_norm(&mut r);
    (q, r)
}

// ---------------------------------------------------------------------------

impl Poly {
    fn make(field: Arc<Field>, mut codes: Vec<u16>) -> Poly {
        gen_norm(&mut codes);
        if field.q() == 2 {
            let mut limbs = vec![0u64; codes.len().div_ceil(64)];
            for (i, &c) in codes.iter().enumerate() {
                if c == 1 {
                    limbs[i / 64] |= 1u64 << (i % 64);
                }
            }
            f2_norm(&mut limbs);
            Poly { field, repr: Repr::F2(limbs) }
        } else {
            Poly { field, repr: Repr::Gen(codes) }
        }
    }

    pub fn zero(field: &Arc<Field>) -> Poly {
        Poly::make(field.clone(), Vec::new())
    }

    pub fn one(field: &Arc<Field>) -> Poly {
        Poly::constant(field, 1)
    }

    pub fn x(field: &Arc<Field>) -> Poly {
        Poly::monomial(field, 1)
    }

    pub fn constant(field: &Arc<Field>, code: u16) -> Poly {
        assert!((code as u64) < field.q(), "coefficient code out of range");
        Poly::make(field.clone(), vec![code])
    }

    /// x^k.
    pub fn monomial(field: &Arc<Field>, k: usize) -> Poly {
        let mut codes = vec![0u16; k + 1];
        codes[k] = 1;
        Poly::make(field.clone(), codes)
    }

    /// Build from coefficient codes, constant term first.
    pub fn from_coeffs(field: &Arc<Field>, codes: &[u16]) -> Poly {
        for &c in codes {
            assert!((c as u64) < field.q(), "coefficient code out of range");
        }
        Poly::make(field.clone(), codes.to_vec())
    }

    /// The monic polynomial of degree t whose lower coefficients are the
    /// base-q digits of idx (constant term least significant). This is the
    /// crate's canonical enumeration order for monic polynomials.
    pub fn from_index(field: &Arc<Field>, t: usize, idx: u128) -> Poly {
        let q = field.q() as u128;
        let mut codes = Vec::with_capacity(t + 1);
        let mut rest = idx;
        for _ in 0..t {
            codes.push((rest % q) as u16);
            rest /= q;
        }
        assert!(rest == 0, "index out of range for degree");
        codes.push(1);
        Poly::make(field.clone(), codes)
    }

    /// Position of a monic polynomial in the enumeration order of its degree;
    /// None for non-monic input or when the index overflows u128.
    pub fn index(&self) -> Option<u128> {
        if !self.is_monic() {
            return None;
        }
        let t = self.deg() as usize;
        let q = self.field.q() as u128;
        let mut acc: u128 = 0;
        for i in (0..t).rev() {
            acc = acc.checked_mul(q)?.checked_add(self.coeff(i) as u128)?;
        }
        Some(acc)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub(crate) fn deg(&self) -> i64 {
        match &self.repr {
            Repr::F2(v) => f2_deg(v),
            Repr::Gen(v) => v.len() as i64 - 1,
        }
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let d = self.deg();
        if d < 0 {
            None
        } else {
            Some(d as usize)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.deg() < 0
    }

    pub fn is_one(&self) -> bool {
        self.deg() == 0 && self.coeff(0) == 1
    }

    pub fn coeff(&self, i: usize) -> u16 {
        match &self.repr {
            Repr::F2(v) => f2_get(v, i) as u16,
            Repr::Gen(v) => v.get(i).copied().unwrap_or(0),
        }
    }

    /// Coefficient codes, constant term first, in canonical form.
    pub fn coeffs(&self) -> Vec<u16> {
        let d = self.deg();
        (0..=d.max(-1))
            .filter(|_| d >= 0)
            .map(|i| self.coeff(i as usize))
            .collect()
    }

    pub fn leading_coeff(&self) -> u16 {
        if self.is_zero() {
            0
        } else {
            self.coeff(self.deg() as usize)
        }
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == 1
    }

    fn assert_same_field(&self, rhs: &Poly) {
        assert!(
            self.field.q() == rhs.field.q(),
            "mismatched coefficient fields: F_{} vs F_{}",
            self.field.q(),
            rhs.field.q()
        );
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        self.assert_same_field(rhs);
        match (&self.repr, &rhs.repr) {
            (Repr::F2(a), Repr::F2(b)) => {
                let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
                let mut out = long.clone();
                for (i, &s) in short.iter().enumerate() {
                    out[i] ^= s;
                }
                f2_norm(&mut out);
                Poly { field: self.field.clone(), repr: Repr::F2(out) }
            }
            (Repr::Gen(a), Repr::Gen(b)) => {
                let f = &self.field;
                let n = a.len().max(b.len());
                let mut out = vec![0u16; n];
                for (i, slot) in out.iter_mut().enumerate() {
                    *slot = f.add(
                        a.get(i).copied().unwrap_or(0),
                        b.get(i).copied().unwrap_or(0),
                    );
                }
                gen_norm(&mut out);
                Poly { field: self.field.clone(), repr: Repr::Gen(out) }
            }
            _ => unreachable!("representation fixed by field"),
        }
    }

    pub fn neg(&self) -> Poly {
        match &self.repr {
            Repr::F2(_) => self.clone(),
            Repr::Gen(v) => {
                let out: Vec<u16> = v.iter().map(|&c| self.field.neg(c)).collect();
                Poly { field: self.field.clone(), repr: Repr::Gen(out) }
            }
        }
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        self.assert_same_field(rhs);
        match (&self.repr, &rhs.repr) {
            (Repr::F2(a), Repr::F2(b)) => {
                Poly { field: self.field.clone(), repr: Repr::F2(f2_mul(a, b)) }
            }
            (Repr::Gen(a), Repr::Gen(b)) => {
                Poly { field: self.field.clone(), repr: Repr::Gen(gen_mul(&self.field, a, b)) }
            }
            _ => unreachable!("representation fixed by field"),
        }
    }

    /// Multiply by the scalar with the given code.
    pub fn scale(&self, code: u16) -> Poly {
        match &self.repr {
            Repr::F2(v) => {
                if code == 0 {
                    Poly::zero(&self.field)
                } else {
                    Poly { field: self.field.clone(), repr: Repr::F2(v.clone()) }
                }
            }
            Repr::Gen(v) => {
                let f = &self.field;
                let mut out: Vec<u16> = v.iter().map(|&c| f.mul(c, code)).collect();
                gen_norm(&mut out);
                Poly { field: self.field.clone(), repr: Repr::Gen(out) }
            }
        }
    }

    /// Multiply by x^k.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.mul(&Poly::monomial(&self.field, k))
    }

    /// Quotient and remainder; deg(remainder) < deg(divisor).
    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        self.assert_same_field(d);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match (&self.repr, &d.repr) {
            (Repr::F2(a), Repr::F2(b)) => {
                let (q, r) = f2_divrem(a, b);
                Ok((
                    Poly { field: self.field.clone(), repr: Repr::F2(q) },
                    Poly { field: self.field.clone(), repr: Repr::F2(r) },
                ))
            }
            (Repr::Gen(a), Repr::Gen(b)) => {
                let (q, r) = gen_divrem(&self.field, a, b);
                Ok((
                    Poly { field: self.field.clone(), repr: Repr::Gen(q) },
                    Poly { field: self.field.clone(), repr: Repr::Gen(r) },
                ))
            }
            _ => unreachable!("representation fixed by field"),
        }
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.divrem(d)?.1)
    }

    pub fn mul_mod(&self, rhs: &Poly, m: &Poly) -> Result<Poly> {
        self.mul(rhs).rem(m)
    }

    /// Monic normalization (divide by the leading coefficient).
    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(self.field.inv(self.leading_coeff()))
    }

    /// Monic gcd; gcd(f, 0) is the monic normalization of f.
    pub fn gcd(&self, rhs: &Poly) -> Poly {
        self.assert_same_field(rhs);
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns (g, s, t) with s*self + t*rhs = g, g monic
    /// (or zero when both inputs are zero).
    pub fn egcd(&self, rhs: &Poly) -> (Poly, Poly, Poly) {
        self.assert_same_field(rhs);
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), rhs.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero divisor");
            (r0, r1) = (r1, r);
            (s0, s1) = (s1.clone(), s0.sub(&q.mul(&s1)));
            (t0, t1) = (t1.clone(), t0.sub(&q.mul(&t1)));
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let lc_inv = f.inv(r0.leading_coeff());
        (r0.scale(lc_inv), s0.scale(lc_inv), t0.scale(lc_inv))
    }

    /// Inverse modulo m, when self and m are coprime.
    pub fn inv_mod(&self, m: &Poly) -> Result<Poly> {
        let red = self.rem(m)?;
        let (g, s, _) = red.egcd(m);
        if !g.is_one() {
            return Err(Error::NotCoprime(format!("{self} has a common factor with {m}")));
        }
        s.rem(m)
    }

    /// self^e mod m by square-and-multiply.
    pub fn powmod(&self, mut e: u128, m: &Poly) -> Result<Poly> {
        let mut base = self.rem(m)?;
        let mut acc = Poly::one(&self.field).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m)?;
            }
            base = base.mul(&base).rem(m)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Evaluate at a field element given by its code.
    pub fn eval(&self, at: u16) -> u16 {
        let f = &self.field;
        let d = self.deg();
        if d < 0 {
            return 0;
        }
        let mut acc = 0u16;
        for i in (0..=d as usize).rev() {
            acc = f.add(f.mul(acc, at), self.coeff(i));
        }
        acc
    }

    /// Parse from the crate's ASCII grammar (see the module docs).
    pub fn parse(field: &Arc<Field>, s: &str) -> Result<Poly> {
        super::parse::parse_poly(field, s)
    }

    /// Compact hex form for F_2 polynomials (bitmask, constant term = bit 0).
    pub fn to_hex(&self) -> Result<String> {
        if self.field.q() != 2 {
            return Err(Error::InvalidInput("hex form is defined over F_2 only".into()));
        }
        match &self.repr {
            Repr::F2(v) => {
                if v.is_empty() {
                    return Ok("0x0".to_string());
                }
                let mut s = String::from("0x");
                let mut first = true;
                for limb in v.iter().rev() {
                    if first {
                        s.push_str(&format!("{limb:x}"));
                        first = false;
                    } else {
                        s.push_str(&format!("{limb:016x}"));
                    }
                }
                Ok(s)
            }
            Repr::Gen(_) => unreachable!("representation fixed by field"),
        }
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.field.q() == other.field.q() && self.repr == other.repr
    }
}

impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.q().hash(state);
        self.repr.hash(state);
    }
}

/// Total order: by degree, then lexicographically on coefficients from the
/// highest power down. For monic polynomials of equal degree this coincides
/// with comparing enumeration indices.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        let (da, db) = (self.deg(), other.deg());
        if da != db {
            return da.cmp(&db);
        }
        for i in (0..=da.max(0) as usize).rev() {
            let c = self.coeff(i).cmp(&other.coeff(i));
            if c != Ordering::Equal {
                return c;
            }
            if i == 0 {
                break;
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", super::parse::format_poly(self))
    }
}

impl std::fmt::Debug for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Poly[F_{}]({})", self.field.q(), self)
    }
}
