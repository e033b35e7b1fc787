//! Exact rational helpers shared by the weight calculus, the LP and the file formats.

use std::sync::OnceLock;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = BigRational;

/// Pascal table is built up to this row.
pub const PASCAL_ROWS: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse rational from {0:?}")]
pub struct ParseRationalError(pub String);

fn pascal() -> &'static Vec<Vec<BigInt>> {
    static TABLE: OnceLock<Vec<Vec<BigInt>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(PASCAL_ROWS + 1);
        for n in 0..=PASCAL_ROWS {
            let mut row = vec![BigInt::one(); n + 1];
            for k in 1..n {
                row[k] = &rows[n - 1][k - 1] + &rows[n - 1][k];
            }
            rows.push(row);
        }
        rows
    })
}

/// Binomial coefficient `C(n, k)`; zero when `k > n` or either argument is negative.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let (n, k) = (n as usize, k as usize);
    if n <= PASCAL_ROWS {
        return pascal()[n][k].clone();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn binomial_q(n: i64, k: i64) -> Rational {
    Rational::from_integer(binomial(n, k))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// `2^e` for any integer exponent.
pub fn pow2(e: i64) -> Rational {
    let base = BigInt::one() << e.unsigned_abs() as usize;
    if e >= 0 {
        Rational::from_integer(base)
    } else {
        Rational::new(BigInt::one(), base)
    }
}

/// Parses `"p/q"`, `"p"`, or a decimal literal such as `"0.375"` (converted exactly).
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let t = s.trim();
    let err = || ParseRationalError(s.to_string());
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| err())?;
        let q: BigInt = q.trim().parse().map_err(|_| err())?;
        if q.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(p, q));
    }
    if let Ok(p) = t.parse::<BigInt>() {
        return Ok(Rational::from_integer(p));
    }
    let f: f64 = t.parse().map_err(|_| err())?;
    from_f64(f).ok_or_else(err)
}

/// Exact binary value of a finite float.
pub fn from_f64(f: f64) -> Option<Rational> {
    Rational::from_float(f)
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // numerator or denominator beyond f64 range
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Snaps `f` to `k / 2^bits` when it lies within `tol` of such a value.
pub fn snap_dyadic(f: f64, bits: u32, tol: f64) -> Option<Rational> {
    let scale = (2f64).powi(bits as i32);
    let k = (f * scale).round();
    if (f - k / scale).abs() <= tol {
        Some(Rational::new(
            BigInt::from(k as i128),
            BigInt::one() << bits as usize,
        ))
    } else {
        None
    }
}

pub fn is_integer(r: &Rational) -> bool {
    r.is_integer()
}

pub fn is_nonneg(r: &Rational) -> bool {
    !r.is_negative()
}

/// Renders a rational as `"p/q"` (or `"p"` for integers).
pub fn render(r: &Rational) -> String {
    r.to_string()
}

/// Serde adapter: a list of rationals as a list of strings.
pub mod serde_vec {
    use super::*;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(render))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw = Vec::<serde_json::Value>::deserialize(d)?;
        raw.iter()
            .map(|v| value_to_rational(v).map_err(D::Error::custom))
            .collect()
    }
}

/// Serde adapter: a single rational as a string.
pub mod serde_one {
    use super::*;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&render(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = serde_json::Value::deserialize(d)?;
        value_to_rational(&raw).map_err(D::Error::custom)
    }
}

/// Accepts JSON numbers (integers exactly, floats by exact binary value) or rational strings.
pub fn value_to_rational(v: &serde_json::Value) -> Result<Rational, ParseRationalError> {
    match v {
        serde_json::Value::String(s) => parse_rational(s),
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_integer(BigInt::from(i)))
            } else if let Some(u) = n.as_u64() {
                Ok(Rational::from_integer(BigInt::from(u)))
            } else {
                n.as_f64()
                    .and_then(from_f64)
                    .ok_or_else(|| ParseRationalError(n.to_string()))
            }
        }
        other => Err(ParseRationalError(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 4), BigInt::from(210));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(-1, 0), BigInt::zero());
        assert_eq!(binomial(70, 35).to_string(), "112186277816662845432");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/8").unwrap(), frac(3, 8));
        assert_eq!(parse_rational(" -6/4 ").unwrap(), frac(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("0.375").unwrap(), frac(3, 8));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn dyadic_snap() {
        assert_eq!(snap_dyadic(0.25 + 1e-12, 4, 1e-9), Some(frac(1, 4)));
        assert_eq!(snap_dyadic(0.1, 4, 1e-9), None);
    }

    #[test]
    fn powers_of_two() {
        assert_eq!(pow2(-3), frac(1, 8));
        assert_eq!(pow2(5), int(32));
    }
}
