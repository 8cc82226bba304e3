//! Exact rationals, dense polynomials over Q and certified real-root isolation.

mod poly;
mod roots;
mod sturm;

pub use poly::Poly;
pub use roots::{
    isolate_roots, rational_roots, refine_interval, resolve_root, simplest_rational_between, IsolatingInterval, RayCertificate,
};
pub use sturm::{cauchy_bound, sturm_count, SturmSequence};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{invalid, Result};

pub type Rat = BigRational;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn big(n: impl Into<BigInt>) -> Rat {
    Rat::from_integer(n.into())
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"0.25"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().or_else(|_| invalid(format!("bad rational '{s}'")))?;
        let d: BigInt = d.trim().parse().or_else(|_| invalid(format!("bad rational '{s}'")))?;
        if d.is_zero() {
            return invalid(format!("zero denominator in '{s}'"));
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.starts_with('-');
        let digits = format!("{}{}", ip.trim_start_matches(['-', '+']), fp);
        let n: BigInt = digits.parse().or_else(|_| invalid(format!("bad rational '{s}'")))?;
        let d = num_traits::pow(BigInt::from(10), fp.len());
        let v = Rat::new(n, d);
        return Ok(if neg { -v } else { v });
    }
    let n: BigInt = s.parse().or_else(|_| invalid(format!("bad rational '{s}'")))?;
    Ok(Rat::from_integer(n))
}

/// Canonical text form: `"p/q"`, or `"p"` when the denominator is 1.
pub fn fmt_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Decimal rendering truncated toward negative infinity to `digits` places.
pub fn fmt_decimal(x: &Rat, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = (x * Rat::from_integer(scale.clone())).floor().to_integer();
    let neg = scaled.is_negative();
    let mag = scaled.abs();
    let ip = &mag / &scale;
    let fp = &mag % &scale;
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{ip}")
    } else {
        format!("{sign}{ip}.{:0>width$}", fp.to_string(), width = digits)
    }
}

pub fn to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn pow(x: &Rat, e: usize) -> Rat {
    num_traits::pow(x.clone(), e)
}

/// Serde adapters storing rationals as `"p/q"` strings.
pub mod rat_str {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{fmt_rat, parse_rat, Rat};

    pub fn serialize<S: Serializer>(x: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rat(x))
    }

    /// Accepts `"p/q"` strings and plain JSON integers.
    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(super) enum RatIn {
        Text(String),
        Int(i64),
    }

    impl RatIn {
        pub(super) fn parse(self) -> crate::Result<Rat> {
            match self {
                RatIn::Text(s) => parse_rat(&s),
                RatIn::Int(n) => Ok(super::int(n)),
            }
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        RatIn::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }

    pub mod opt {
        use serde::{Deserialize, Deserializer, Serializer};

        use super::super::{fmt_rat, Rat};
        use super::RatIn;

        pub fn serialize<S: Serializer>(x: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
            match x {
                Some(x) => s.serialize_some(&fmt_rat(x)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rat>, D::Error> {
            match Option::<RatIn>::deserialize(d)? {
                Some(r) => r.parse().map(Some).map_err(serde::de::Error::custom),
                None => Ok(None),
            }
        }
    }
}

pub(crate) fn sign(x: &Rat) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rat("5/7").unwrap(), rat(5, 7));
        assert_eq!(parse_rat("-10/4").unwrap(), rat(-5, 2));
        assert_eq!(parse_rat("3").unwrap(), int(3));
        assert_eq!(parse_rat("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rat("-1.5").unwrap(), rat(-3, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn canonical_text() {
        assert_eq!(fmt_rat(&rat(70, 140)), "1/2");
        assert_eq!(fmt_rat(&rat(-6, 2)), "-3");
        assert_eq!(fmt_rat(&rat(0, 5)), "0");
    }

    #[test]
    fn decimals() {
        assert_eq!(fmt_decimal(&rat(1, 3), 4), "0.3333");
        assert_eq!(fmt_decimal(&rat(-1, 3), 2), "-0.34");
        assert_eq!(fmt_decimal(&rat(7, 1), 0), "7");
        assert_eq!(fmt_decimal(&rat(1, 20), 3), "0.050");
    }
}
