//! ASCII grammar for polynomials.
//!
//! A polynomial is a sum of terms separated by `+` (a leading or separating
//! `-` is also accepted and interpreted as adding the negated term; the
//! printer never emits it). Each term is one of
//!
//! ```text
//! c        a constant coefficient
//! c*x      c times x
//! c*x^k    c times x^k
//! x, x^k   unit coefficient
//! ```
//!
//! Coefficients over prime fields are decimal digit strings reduced mod p.
//! Over extension fields coefficients are written in the fixed generator
//! `a`: the forms `a`, `a^j`, and decimal constants are accepted, e.g.
//! `x^2+a*x+a^2`. Whitespace is ignored everywhere.
//!
//! Over F_2 a compact hex form `0x...` (bitmask, constant term = bit 0) is
//! also accepted, and emitted by [`format_poly_hex`].

use std::sync::Arc;

use super::field::Field;
use super::poly::Poly;
use crate::error::{Error, Result};

fn parse_hex(field: &Arc<Field>, s: &str) -> Result<Poly> {
    if field.q() != 2 {
        return Err(Error::Parse("hex polynomial form is only defined over F_2".into()));
    }
    let digits = &s[2..];
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_hexdigit()) {
        return Err(Error::Parse(format!("malformed hex polynomial: {s}")));
    }
    let mut codes: Vec<u16> = Vec::with_capacity(digits.len() * 4);
    for ch in digits.chars().rev() {
        let v = ch.to_digit(16).unwrap() as u16;
        for b in 0..4 {
            codes.push((v >> b) & 1);
        }
    }
    Ok(Poly::from_coeffs(field, &codes))
}

/// One parsed term: coefficient code and power of x.
fn parse_term(field: &Arc<Field>, term: &str) -> Result<(u16, usize)> {
    let t = term.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    let (coeff_str, x_str) = match t.split_once('*') {
        Some((c, x)) => (c.trim(), Some(x.trim())),
        None => {
            if t.starts_with('x') {
                ("", Some(t))
            } else {
                (t, None)
            }
        }
    };
    let power = match x_str {
        None => 0usize,
        Some(x) => {
            if x == "x" {
                1
            } else if let Some(rest) = x.strip_prefix("x^") {
                rest.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad exponent in term: {term}")))?
            } else {
                return Err(Error::Parse(format!("malformed term: {term}")));
            }
        }
    };
    let coeff = if coeff_str.is_empty() {
        1u16
    } else if let Some(rest) = coeff_str.strip_prefix('a') {
        if field.c() == 1 {
            return Err(Error::Parse(format!(
                "generator notation `a` is only valid over extension fields: {term}"
            )));
        }
        let j = if rest.is_empty() {
            1u64
        } else if let Some(e) = rest.strip_prefix('^') {
            e.trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad generator exponent: {term}")))?
        } else {
            return Err(Error::Parse(format!("malformed coefficient: {term}")));
        };
        field.generator_pow(j)
    } else {
        let v = coeff_str
            .parse::<u64>()
            .map_err(|_| Error::Parse(format!("bad coefficient in term: {term}")))?;
        (v % field.p()) as u16
    };
    Ok((coeff, power))
}

pub fn parse_poly(field: &Arc<Field>, s: &str) -> Result<Poly> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial string".into()));
    }
    if compact.starts_with("0x") || compact.starts_with("0X") {
        return parse_hex(field, &compact);
    }
    // Split into signed terms.
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for (i, ch) in compact.chars().enumerate() {
        match ch {
            '+' | '-' => {
                if i == 0 {
                    neg = ch == '-';
                    continue;
                }
                if cur.is_empty() {
                    return Err(Error::Parse(format!("dangling sign in: {s}")));
                }
                terms.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            }
            _ => cur.push(ch),
        }
    }
    if cur.is_empty() {
        return Err(Error::Parse(format!("dangling sign in: {s}")));
    }
    terms.push((neg, cur));

    let mut acc = Poly::zero(field);
    for (negate, term) in terms {
        let (mut coeff, power) = parse_term(field, &term)?;
        if negate {
            coeff = field.neg(coeff);
        }
        if coeff != 0 {
            acc = acc.add(&Poly::monomial(field, power).scale(coeff));
        }
    }
    Ok(acc)
}

fn format_coeff(field: &Field, code: u16, power: usize) -> String {
    let coeff_part = if code == 1 {
        String::new()
    } else if field.c() == 1 {
        code.to_string()
    } else {
        let j = field.elem_log(code);
        match j {
            0 => unreachable!("code 1 handled above"),
            1 => "a".to_string(),
            _ => format!("a^{j}"),
        }
    };
    match (coeff_part.as_str(), power) {
        ("", 0) => "1".to_string(),
        ("", 1) => "x".to_string(),
        ("", _) => format!("x^{power}"),
        (c, 0) => c.to_string(),
        (c, 1) => format!("{c}*x"),
        (c, _) => format!("{c}*x^{power}"),
    }
}

/// Canonical printer: descending powers, unit coefficients omitted, terms
/// joined by `+`; the zero polynomial prints as `0`.
pub fn format_poly(p: &Poly) -> String {
    let Some(d) = p.degree() else {
        return "0".to_string();
    };
    let field = p.field();
    let mut parts: Vec<String> = Vec::new();
    for i in (0..=d).rev() {
        let c = p.coeff(i);
        if c != 0 {
            parts.push(format_coeff(field, c, i));
        }
    }
    parts.join("+")
}

/// Hex printer for F_2 (errors over other fields).
pub fn format_poly_hex(p: &Poly) -> Result<String> {
    p.to_hex()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_exhaustive_f2_up_to_degree_12() {
        let field = Field::get(2, 1).unwrap();
        // All polynomials (not only monic) up to degree 12: iterate bitmasks.
        for mask in 0u32..(1 << 13) {
            let codes: Vec<u16> = (0..13).map(|i| ((mask >> i) & 1) as u16).collect();
            let p = Poly::from_coeffs(&field, &codes);
            let s = format_poly(&p);
            let back = parse_poly(&field, &s).unwrap();
            assert_eq!(p, back, "failed roundtrip for {s}");
        }
    }

    #[test]
    fn roundtrip_random_f3_f4_f5() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for (p, c) in [(3u64, 1u32), (2, 2), (5, 1), (3, 2)] {
            let field = Field::get(p, c).unwrap();
            let q = field.q();
            for _ in 0..500 {
                let len = rng.gen_range(0..10);
                let codes: Vec<u16> = (0..len).map(|_| rng.gen_range(0..q) as u16).collect();
                let poly = Poly::from_coeffs(&field, &codes);
                let s = format_poly(&poly);
                assert_eq!(parse_poly(&field, &s).unwrap(), poly, "roundtrip {s} over F_{q}");
            }
        }
    }

    #[test]
    fn printer_examples() {
        let f2 = Field::get(2, 1).unwrap();
        assert_eq!(format_poly(&Poly::from_coeffs(&f2, &[1, 1, 0, 1])), "x^3+x+1");
        assert_eq!(format_poly(&Poly::zero(&f2)), "0");
        assert_eq!(format_poly(&Poly::one(&f2)), "1");
        let f3 = Field::get(3, 1).unwrap();
        assert_eq!(format_poly(&Poly::from_coeffs(&f3, &[2, 0, 1])), "x^2+2");
        let f4 = Field::get(2, 2).unwrap();
        let a = f4.generator();
        let aa = f4.mul(a, a);
        assert_eq!(format_poly(&Poly::from_coeffs(&f4, &[aa, a, 1])), "x^2+a*x+a^2");
    }

    #[test]
    fn parser_accepts_whitespace_and_minus() {
        let f3 = Field::get(3, 1).unwrap();
        let a = parse_poly(&f3, " x^2 - 1 ").unwrap();
        let b = parse_poly(&f3, "x^2+2").unwrap();
        assert_eq!(a, b);
        let f2 = Field::get(2, 1).unwrap();
        assert_eq!(parse_poly(&f2, "x ^ 3 + x + 1").unwrap(), parse_poly(&f2, "x^3+x+1").unwrap());
    }

    #[test]
    fn parser_accumulates_repeated_powers() {
        let f3 = Field::get(3, 1).unwrap();
        assert_eq!(parse_poly(&f3, "x+x+x").unwrap(), Poly::zero(&f3));
        assert_eq!(parse_poly(&f3, "2*x+2*x").unwrap(), parse_poly(&f3, "x").unwrap());
    }

    #[test]
    fn parser_rejects_garbage() {
        let f2 = Field::get(2, 1).unwrap();
        assert!(parse_poly(&f2, "").is_err());
        assert!(parse_poly(&f2, "x+").is_err());
        assert!(parse_poly(&f2, "y^2").is_err());
        assert!(parse_poly(&f2, "x^").is_err());
        assert!(parse_poly(&f2, "a*x").is_err()); // no generator over a prime field
        assert!(parse_poly(&f2, "0xg").is_err());
    }
}
