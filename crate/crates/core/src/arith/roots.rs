use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::IntPoly;
use super::{cauchy_bound, fmt_decimal, fmt_rat, parse_rat, Poly, Rat, SturmSequence};
use crate::error::{internal, invalid, Result};

/// A real root of `poly` certified to be the only one in `(lo, hi)`, or an
/// exact root when `lo == hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatingInterval {
    pub lo: Rat,
    pub hi: Rat,
    /// Square-free polynomial the certificate refers to.
    pub poly: Poly,
}

impl IsolatingInterval {
    pub fn exact(&self) -> Option<&Rat> {
        (self.lo == self.hi).then_some(&self.lo)
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    /// Re-derives the certificate from scratch.
    pub fn verify(&self) -> bool {
        if self.lo == self.hi {
            return self.poly.eval(&self.lo).is_zero();
        }
        if self.lo > self.hi {
            return false;
        }
        let Ok(s) = SturmSequence::new(&self.poly) else {
            return false;
        };
        let at_hi = usize::from(self.poly.eval(&self.hi).is_zero());
        s.count(&self.lo, &self.hi) - at_hi == 1
    }
}

/// Either an exact rational root or an isolating interval around an
/// irrational one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RayCertificate {
    Exact(Rat),
    Interval { lo: Rat, hi: Rat },
}

impl RayCertificate {
    pub fn exact(&self) -> Option<&Rat> {
        match self {
            RayCertificate::Exact(r) => Some(r),
            RayCertificate::Interval { .. } => None,
        }
    }

    pub fn bounds(&self) -> (Rat, Rat) {
        match self {
            RayCertificate::Exact(r) => (r.clone(), r.clone()),
            RayCertificate::Interval { lo, hi } => (lo.clone(), hi.clone()),
        }
    }

    pub fn midpoint(&self) -> Rat {
        let (lo, hi) = self.bounds();
        (lo + hi) / Rat::from_integer(BigInt::from(2))
    }

    /// `x -> c x` for `c > 0`.
    pub fn scaled(&self, c: &Rat) -> RayCertificate {
        match self {
            RayCertificate::Exact(r) => RayCertificate::Exact(r * c),
            RayCertificate::Interval { lo, hi } => RayCertificate::Interval { lo: lo * c, hi: hi * c },
        }
    }

    pub fn decimal(&self, digits: usize) -> String {
        match self {
            RayCertificate::Exact(r) => fmt_decimal(r, digits),
            RayCertificate::Interval { lo, hi } => {
                format!("[{}, {}]", fmt_decimal(lo, digits), fmt_decimal_up(hi, digits))
            }
        }
    }
}

/// Rounds upward by formatting the negation downward.
fn fmt_decimal_up(x: &Rat, digits: usize) -> String {
    let s = fmt_decimal(&-x.clone(), digits);
    match s.strip_prefix('-') {
        Some(rest) => rest.to_string(),
        None if s.chars().all(|c| c == '0' || c == '.') => s,
        None => format!("-{s}"),
    }
}

impl fmt::Display for RayCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RayCertificate::Exact(r) => write!(f, "{}", fmt_rat(r)),
            RayCertificate::Interval { lo, hi } => write!(f, "[{}, {}]", fmt_rat(lo), fmt_rat(hi)),
        }
    }
}

impl std::str::FromStr for RayCertificate {
    type Err = crate::Error;

    /// Inverse of `Display`: `"p/q"` or `"[lo, hi]"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let Some(inner) = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')) else {
            return Ok(RayCertificate::Exact(parse_rat(s)?));
        };
        let Some((lo, hi)) = inner.split_once(',') else {
            return invalid(format!("bad interval '{s}'"));
        };
        let (lo, hi) = (parse_rat(lo)?, parse_rat(hi)?);
        if lo >= hi {
            return invalid(format!("empty interval '{s}'"));
        }
        Ok(RayCertificate::Interval { lo, hi })
    }
}

impl<'de> Deserialize<'de> for RayCertificate {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Serialize for RayCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn half() -> Rat {
    Rat::new(BigInt::one(), BigInt::from(2))
}

/// Moves an endpoint that is itself a root of `p` inward, so both endpoint
/// signs are nonzero and opposite.
fn tighten(s: &SturmSequence, mut lo: Rat, mut hi: Rat) -> IsolatingInterval {
    let p = s.base();
    loop {
        let mid = (&lo + &hi) * half();
        if s.sign_at(&mid) == 0 {
            return IsolatingInterval { lo: mid.clone(), hi: mid, poly: p.clone() };
        }
        let hi_root = s.sign_at(&hi) == 0;
        if s.sign_at(&lo) != 0 && !hi_root {
            return IsolatingInterval { lo, hi, poly: p.clone() };
        }
        if s.count(&mid, &hi) - usize::from(hi_root) == 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

fn bisect(s: &SturmSequence, lo: Rat, hi: Rat, c: usize, out: &mut Vec<IsolatingInterval>) {
    if c == 0 {
        return;
    }
    if c == 1 {
        if s.sign_at(&hi) == 0 {
            out.push(IsolatingInterval { lo: hi.clone(), hi, poly: s.base().clone() });
        } else {
            out.push(tighten(s, lo, hi));
        }
        return;
    }
    let mid = (&lo + &hi) * half();
    let left = s.count(&lo, &mid);
    bisect(s, lo, mid.clone(), left, out);
    bisect(s, mid, hi, c - left, out);
}

/// One certificate per distinct real root in the open interval `(lo, hi)`,
/// sorted ascending. Rational roots come back as degenerate intervals.
pub fn isolate_roots(p: &Poly, lo: &Rat, hi: &Rat) -> Result<Vec<IsolatingInterval>> {
    if lo >= hi {
        return invalid("isolate_roots needs lo < hi");
    }
    let s = SturmSequence::new(p)?;
    let mut raw = Vec::new();
    let c = s.count(lo, hi);
    bisect(&s, lo.clone(), hi.clone(), c, &mut raw);
    if raw.last().is_some_and(|iv| iv.exact() == Some(hi)) {
        raw.pop();
    }
    raw.into_iter().map(|iv| separate(&iv)).collect()
}

/// Narrows `iv` until it either collapses onto a rational root or provably
/// contains none; see [`resolve_root`].
fn separate(iv: &IsolatingInterval) -> Result<IsolatingInterval> {
    if iv.exact().is_some() {
        return Ok(iv.clone());
    }
    let ints = iv.poly.primitive_ints();
    let lead = ints.last().cloned().unwrap_or_else(BigInt::one).abs();
    let sep = Rat::new(BigInt::one(), BigInt::from(2) * &lead * &lead);
    let tight = refine_interval(iv, &sep)?;
    if tight.exact().is_some() {
        return Ok(tight);
    }
    let cand = simplest_rational_between(&tight.lo, &tight.hi);
    if iv.poly.eval(&cand).is_zero() {
        return Ok(IsolatingInterval { lo: cand.clone(), hi: cand, poly: iv.poly.clone() });
    }
    Ok(tight)
}

/// Bisects until `hi - lo <= width`; an exact hit collapses the interval.
pub fn refine_interval(iv: &IsolatingInterval, width: &Rat) -> Result<IsolatingInterval> {
    if !width.is_positive() {
        return invalid("refinement width must be positive");
    }
    if iv.exact().is_some() {
        return Ok(iv.clone());
    }
    let p = &iv.poly;
    let ip = IntPoly::new(p);
    let (mut lo, mut hi) = (iv.lo.clone(), iv.hi.clone());
    let s_lo = ip.sign_at(&lo);
    if s_lo == 0 || ip.sign_at(&hi) != -s_lo {
        return internal("isolating interval without a sign change");
    }
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) * half();
        let sm = ip.sign_at(&mid);
        if sm == 0 {
            return Ok(IsolatingInterval { lo: mid.clone(), hi: mid, poly: p.clone() });
        }
        if sm == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(IsolatingInterval { lo, hi, poly: p.clone() })
}

/// The fraction with the smallest denominator in the closed interval
/// `[lo, hi]` (ties broken toward the smaller numerator magnitude).
pub fn simplest_rational_between(lo: &Rat, hi: &Rat) -> Rat {
    debug_assert!(lo <= hi);
    if !lo.is_positive() && !hi.is_negative() {
        return Rat::zero();
    }
    if hi.is_negative() {
        return -simplest_rational_between(&-hi.clone(), &-lo.clone());
    }
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    if fl < hi.floor() {
        return fl + Rat::one();
    }
    let inner = simplest_rational_between(&(Rat::one() / (hi - &fl)), &(Rat::one() / (lo - &fl)));
    fl + Rat::one() / inner
}

/// Decides whether the root inside `iv` is rational and, if not, refines the
/// interval to `width`.
///
/// A rational root `a/q` of a primitive integer polynomial has `q | a_n`,
/// and two distinct fractions with denominators at most `a_n` are at least
/// `1/a_n^2` apart, so once the interval is narrower than that the simplest
/// fraction inside it is the only possible rational root.
pub fn resolve_root(iv: &IsolatingInterval, width: &Rat) -> Result<RayCertificate> {
    let tight = separate(iv)?;
    if let Some(r) = tight.exact() {
        return Ok(RayCertificate::Exact(r.clone()));
    }
    let fine = if &tight.width() <= width { tight } else { refine_interval(&tight, width)? };
    match fine.exact() {
        Some(r) => internal(format!("irrational certificate collapsed to {}", fmt_rat(r))),
        None => Ok(RayCertificate::Interval { lo: fine.lo, hi: fine.hi }),
    }
}

/// All rational roots, ascending, each confirmed by exact evaluation.
pub fn rational_roots(p: &Poly) -> Result<Vec<Rat>> {
    if p.is_zero() {
        return invalid("rational_roots of the zero polynomial");
    }
    let base = p.square_free().primitive();
    if base.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let b = cauchy_bound(&base);
    let mut out = Vec::new();
    for iv in isolate_roots(&base, &-b.clone(), &b)? {
        if let Some(r) = iv.exact() {
            if !p.eval(r).is_zero() {
                return internal(format!("rational root {} failed evaluation", fmt_rat(r)));
            }
            out.push(r.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, sturm_count};

    #[test]
    fn certificate_parse_round_trip() {
        for c in [
            RayCertificate::Exact(rat(5, 7)),
            RayCertificate::Exact(int(3)),
            RayCertificate::Interval { lo: rat(157445, 2097152), hi: rat(629785, 8388608) },
        ] {
            assert_eq!(c.to_string().parse::<RayCertificate>().unwrap(), c);
        }
        assert!("[2, 1]".parse::<RayCertificate>().is_err());
        assert!("[1/2]".parse::<RayCertificate>().is_err());
        assert!("x".parse::<RayCertificate>().is_err());
    }

    #[test]
    fn rational_root_examples() {
        assert_eq!(rational_roots(&Poly::from_ints(&[-42, -16, 10])).unwrap(), vec![rat(-7, 5), int(3)]);
        assert_eq!(rational_roots(&Poly::from_ints(&[-34, -19, -4, 11])).unwrap(), vec![int(2)]);
        assert!(rational_roots(&Poly::from_ints(&[-2, 0, 1])).unwrap().is_empty());
    }

    #[test]
    fn isolate_sqrt2() {
        let p = Poly::from_ints(&[-2, 0, 1]);
        let ivs = isolate_roots(&p, &int(0), &int(2)).unwrap();
        assert_eq!(ivs.len(), 1);
        assert!(ivs[0].lo < rat(1414, 1000) && ivs[0].hi > rat(1415, 1000));
        assert!(ivs[0].verify());
    }

    #[test]
    fn isolate_quadratic_formula_root() {
        let p = Poly::from_ints(&[-4, -1, 2]);
        let ivs = isolate_roots(&p, &int(1), &int(4)).unwrap();
        assert_eq!(ivs.len(), 1);
        let r = refine_interval(&ivs[0], &rat(1, 1_000_000)).unwrap();
        assert!(r.width() <= rat(1, 1_000_000));
        assert!(r.lo < rat(1_686_141, 1_000_000) && r.hi > rat(1_686_140, 1_000_000));
    }

    #[test]
    fn exact_root_becomes_degenerate() {
        let p = &Poly::from_ints(&[-3, 1]) * &Poly::from_ints(&[7, 5]);
        let ivs = isolate_roots(&p, &int(1), &int(10)).unwrap();
        assert_eq!(ivs.len(), 1);
        assert_eq!(ivs[0].exact(), Some(&int(3)));
        assert_eq!(refine_interval(&ivs[0], &rat(1, 1000)).unwrap(), ivs[0]);
    }

    #[test]
    fn open_interval_excludes_endpoints() {
        let p = &Poly::from_ints(&[-1, 1]) * &Poly::from_ints(&[-3, 1]);
        assert!(isolate_roots(&p, &int(1), &int(3)).unwrap().is_empty());
        assert_eq!(isolate_roots(&p, &int(0), &int(4)).unwrap().len(), 2);
    }

    #[test]
    fn endpoint_root_is_pushed_inward() {
        let p = &Poly::from_ints(&[0, 1]) * &Poly::from_ints(&[-2, 0, 1]);
        let ivs = isolate_roots(&p, &int(-4), &int(4)).unwrap();
        assert_eq!(ivs.len(), 3);
        for iv in &ivs {
            assert!(iv.verify());
            if iv.exact().is_none() {
                assert!(!iv.poly.eval(&iv.lo).is_zero() && !iv.poly.eval(&iv.hi).is_zero());
            }
        }
        assert_eq!(ivs[1].exact(), Some(&int(0)));
    }

    #[test]
    fn refine_sqrt2() {
        let p = Poly::from_ints(&[-2, 0, 1]);
        let iv = IsolatingInterval { lo: int(1), hi: int(2), poly: p.clone() };
        let r = refine_interval(&iv, &rat(1, 1000)).unwrap();
        assert!(r.width() <= rat(1, 1000));
        assert_eq!(sturm_count(&p, &r.lo, &r.hi).unwrap(), 1);
    }

    #[test]
    fn simplest_fraction() {
        assert_eq!(simplest_rational_between(&rat(2, 3), &rat(3, 4)), rat(2, 3));
        assert_eq!(simplest_rational_between(&rat(31, 100), &rat(34, 100)), rat(1, 3));
        assert_eq!(simplest_rational_between(&rat(-34, 100), &rat(-31, 100)), rat(-1, 3));
        assert_eq!(simplest_rational_between(&rat(-1, 2), &rat(1, 3)), int(0));
        assert_eq!(simplest_rational_between(&rat(5, 2), &rat(7, 2)), int(3));
    }

    #[test]
    fn resolve_distinguishes_rational_from_irrational() {
        let p = &Poly::from_ints(&[-5, 7]) * &Poly::from_ints(&[-2, 0, 1]);
        let ivs = isolate_roots(&p, &int(0), &int(3)).unwrap();
        let certs: Vec<_> = ivs.iter().map(|iv| resolve_root(iv, &rat(1, 10_000)).unwrap()).collect();
        assert_eq!(certs[0], RayCertificate::Exact(rat(5, 7)));
        assert!(certs[1].exact().is_none());
        assert_eq!(certs[0].to_string(), "5/7");
        assert!(certs[1].decimal(3).starts_with("[1.414, 1.415"));
    }
}
