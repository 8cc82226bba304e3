//! Checked machine-integer helpers; overflow surfaces as an error.

use num_integer::Integer;

use crate::error::{Error, Result};

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> Result<u64> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    mul(a / gcd(a, b), b, "lcm")
}

pub fn mul(a: u64, b: u64, what: &'static str) -> Result<u64> {
    a.checked_mul(b).ok_or(Error::Overflow(what))
}

pub fn mul_all(xs: &[u64], what: &'static str) -> Result<u64> {
    xs.iter().try_fold(1u64, |acc, &x| mul(acc, x, what))
}

pub fn add(a: u64, b: u64, what: &'static str) -> Result<u64> {
    a.checked_add(b).ok_or(Error::Overflow(what))
}

pub fn to_i64(a: i128, what: &'static str) -> Result<i64> {
    i64::try_from(a).map_err(|_| Error::Overflow(what))
}

pub fn to_u64(a: i128, what: &'static str) -> Result<u64> {
    u64::try_from(a).map_err(|_| Error::Overflow(what))
}
