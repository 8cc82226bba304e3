//! The join calculus: validation, smoothness, quotient orbifold data, Kähler
//! class coefficients, Chern and Fano data, and seed iteration.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::{int, rat_str, Rat};
use crate::error::{internal, invalid, Result};
use crate::ints::{self, gcd};

pub type Pair = (u64, u64);

/// Base Sasaki manifold (or orbifold) data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SasakiSeed {
    /// Complex dimension of the quotient `N`.
    #[serde(rename = "d_N")]
    pub d: u32,
    /// Scalar-curvature constant; `None` when not known (e.g. after iterating
    /// along a non-KE ray).
    #[serde(rename = "A_N", with = "rat_str::opt", default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Rat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fano_index: Option<u64>,
    /// Orbifold order of `N`.
    pub order: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi2_rank: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b3_zero: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simply_connected: Option<bool>,
    /// Set to `2r+1` when the seed is a (homotopy) sphere `S^{2r+1}`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sphere_dim: Option<u32>,
    #[serde(default)]
    pub label: String,
}

impl SasakiSeed {
    /// Kähler-Einstein base with index `fano_index`, so `A_N = I_N`.
    pub fn ke(d: u32, fano_index: u64, order: u64, label: &str) -> Self {
        SasakiSeed {
            d,
            a: Some(int(fano_index as i64)),
            fano_index: Some(fano_index),
            order,
            pi2_rank: None,
            b3_zero: None,
            simply_connected: None,
            sphere_dim: None,
            label: label.to_string(),
        }
    }

    /// Round sphere `S^{2r+1}` over `CP^r`.
    pub fn sphere(r: u32) -> Self {
        SasakiSeed {
            pi2_rank: Some(0),
            b3_zero: Some(r != 1),
            simply_connected: Some(true),
            sphere_dim: Some(2 * r + 1),
            ..SasakiSeed::ke(r, u64::from(r) + 1, 1, &format!("S{}", 2 * r + 1))
        }
    }

    pub fn s3() -> Self {
        SasakiSeed::sphere(1)
    }

    pub fn s5() -> Self {
        SasakiSeed::sphere(2)
    }

    pub fn validate(&self) -> Result<()> {
        if self.d < 1 {
            return invalid("seed d_N must be at least 1");
        }
        if self.order < 1 {
            return invalid("seed order must be at least 1");
        }
        if let Some(i) = self.fano_index {
            if i == 0 {
                return invalid("seed fano_index must be positive");
            }
            match &self.a {
                Some(a) if *a == int(i as i64) => {}
                Some(_) => return invalid("seed A_N must equal fano_index for a KE base"),
                None => return invalid("seed with fano_index needs A_N"),
            }
        }
        if let Some(n) = self.sphere_dim {
            if n % 2 == 0 || n != 2 * self.d + 1 {
                return invalid("seed sphere_dim must equal 2 d_N + 1");
            }
        }
        Ok(())
    }

    pub fn a(&self) -> Result<&Rat> {
        self.a.as_ref().map_or_else(|| invalid("seed A_N unknown"), Ok)
    }

    pub fn fano(&self) -> Result<u64> {
        self.fano_index.map_or_else(|| invalid("base not Fano/KE: fano_index missing"), Ok)
    }
}

/// The pairs `l` and `w` of a join. `w0 >= w_inf` after [`validate_join`];
/// `perp_applied` records that the input `w` was swapped to get there.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JoinSpec {
    pub l0: u64,
    pub l_inf: u64,
    pub w0: u64,
    pub w_inf: u64,
    pub perp_applied: bool,
}

impl JoinSpec {
    /// Checks positivity and coprimality but keeps the orientation of `w`.
    pub fn oriented(l: Pair, w: Pair) -> Result<Self> {
        if l.0 == 0 || l.1 == 0 || w.0 == 0 || w.1 == 0 {
            return invalid("l and w entries must be positive");
        }
        if gcd(l.0, l.1) != 1 {
            return invalid(format!("l not coprime: ({},{})", l.0, l.1));
        }
        if gcd(w.0, w.1) != 1 {
            return invalid(format!("w not coprime: ({},{})", w.0, w.1));
        }
        Ok(JoinSpec { l0: l.0, l_inf: l.1, w0: w.0, w_inf: w.1, perp_applied: false })
    }

    pub fn l(&self) -> Pair {
        (self.l0, self.l_inf)
    }

    pub fn w(&self) -> Pair {
        (self.w0, self.w_inf)
    }

    /// `|w| = w0 + w_inf`
    pub fn w_norm(&self) -> u64 {
        self.w0 + self.w_inf
    }
}

/// A lattice point `v` of the w-cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Pair", try_from = "Pair")]
pub struct ReebLattice {
    pub v0: u64,
    pub v_inf: u64,
}

impl ReebLattice {
    pub fn new(v0: u64, v_inf: u64) -> Result<Self> {
        if v0 == 0 || v_inf == 0 {
            return invalid("v entries must be positive");
        }
        if gcd(v0, v_inf) != 1 {
            return invalid(format!("v not coprime: ({v0},{v_inf})"));
        }
        Ok(ReebLattice { v0, v_inf })
    }

    /// Reduces an arbitrary positive pair.
    pub fn reduced(a: u64, b: u64) -> Result<Self> {
        let g = gcd(a, b);
        if g == 0 {
            return invalid("v entries must be positive");
        }
        ReebLattice::new(a / g, b / g)
    }

    pub fn pair(&self) -> Pair {
        (self.v0, self.v_inf)
    }

    /// `b = v_inf / v0`
    pub fn b(&self) -> Rat {
        Rat::new(self.v_inf.into(), self.v0.into())
    }
}

impl From<ReebLattice> for Pair {
    fn from(v: ReebLattice) -> Pair {
        v.pair()
    }
}

impl TryFrom<Pair> for ReebLattice {
    type Error = crate::Error;
    fn try_from(p: Pair) -> Result<Self> {
        ReebLattice::new(p.0, p.1)
    }
}

/// Quotient orbifold data of the quasi-regular ray `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientData {
    pub s: u64,
    pub m: u64,
    pub n: i64,
    pub m0: u64,
    pub m_inf: u64,
    pub order: u64,
    pub reducible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassCoefficients {
    pub k1: u64,
    pub k2: u64,
    pub denom: u64,
    #[serde(with = "rat_str")]
    pub admissible_scale_num: Rat,
    pub admissible_scale_has_4pi: bool,
    /// Coefficient `m g` of the transverse Kähler form.
    pub transverse_factor: u64,
    /// Common factor removed from `(k1, k2)` after division by `g`; always 1.
    pub extra_factor: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibleParams {
    #[serde(with = "rat_str")]
    pub r: Rat,
    pub n: i64,
    pub m0: u64,
    pub m_inf: u64,
    pub d: u32,
    #[serde(rename = "A", with = "rat_str")]
    pub a: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularReeb {
    pub exists: bool,
    pub certificate: String,
}

/// How the quotient data transforms under the involution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PerpNote {
    pub n_before: i64,
    pub n_after: i64,
    pub m_before: Pair,
    pub m_after: Pair,
}

pub fn validate_join(seed: &SasakiSeed, l: Pair, w: Pair) -> Result<JoinSpec> {
    seed.validate()?;
    let j = JoinSpec::oriented(l, w)?;
    if j.w0 < j.w_inf {
        return Ok(JoinSpec { w0: j.w_inf, w_inf: j.w0, perp_applied: true, ..j });
    }
    Ok(j)
}

/// `gcd(l_inf * order, l0 * w0 * w_inf)`; the join is smooth iff this is 1.
pub fn smoothness_gcd(order: u64, l: Pair, w: Pair) -> u128 {
    let a = u128::from(l.1) * u128::from(order);
    let b = u128::from(l.0) * u128::from(w.0) * u128::from(w.1);
    a.gcd(&b)
}

pub fn is_smooth(seed: &SasakiSeed, j: &JoinSpec) -> bool {
    smoothness_gcd(seed.order, j.l(), j.w()) == 1
}

fn delta(j: &JoinSpec, v: &ReebLattice) -> i128 {
    i128::from(j.w0) * i128::from(v.v_inf) - i128::from(j.w_inf) * i128::from(v.v0)
}

/// `(s, m, n, m0, m_inf)`; independent of the seed.
fn quotient_core(j: &JoinSpec, v: &ReebLattice) -> Result<(u64, u64, i64, u64, u64)> {
    let dl = delta(j, v);
    let s = (j.l_inf as u128).gcd(&dl.unsigned_abs()) as u64;
    let m = j.l_inf / s;
    let n = ints::to_i64(i128::from(j.l0) * dl / i128::from(s), "n")?;
    let m0 = ints::mul(m, v.v0, "m0")?;
    let m_inf = ints::mul(m, v.v_inf, "m_inf")?;
    if n != 0 && gcd(m, n.unsigned_abs()) != 1 {
        return internal(format!("gcd(m, n) != 1 for m={m}, n={n}"));
    }
    Ok((s, m, n, m0, m_inf))
}

pub fn quotient_data(seed: &SasakiSeed, j: &JoinSpec, v: &ReebLattice) -> Result<QuotientData> {
    let (s, m, n, m0, m_inf) = quotient_core(j, v)?;
    let order = ints::mul_all(&[m, v.v0, v.v_inf, seed.order], "quotient order")?;
    Ok(QuotientData { s, m, n, m0, m_inf, order, reducible: n == 0 })
}

pub fn admissible_params(seed: &SasakiSeed, j: &JoinSpec, v: &ReebLattice) -> Result<AdmissibleParams> {
    let (_, _, n, m0, m_inf) = quotient_core(j, v)?;
    if n == 0 {
        return invalid("product case: r undefined (r=0)");
    }
    let dl = delta(j, v);
    let sum = i128::from(j.w0) * i128::from(v.v_inf) + i128::from(j.w_inf) * i128::from(v.v0);
    let r = Rat::new(dl.into(), sum.into());
    let a = seed.a()?.clone();
    Ok(AdmissibleParams { r, n, m0, m_inf, d: seed.d, a })
}

pub fn kahler_class(seed: &SasakiSeed, j: &JoinSpec, v: &ReebLattice) -> Result<ClassCoefficients> {
    let q = quotient_data(seed, j, v)?;
    if q.reducible {
        return invalid("product case: Kähler class needs a non-reducible ray");
    }
    let s_ups = ints::mul(q.s, seed.order, "s * order")?;
    let top = ints::mul_all(&[j.l0, j.w0, v.v_inf], "l0 w0 v_inf")?;
    let g = gcd(s_ups, top);
    let (k1, k2) = (top / g, s_ups / g);
    let extra = gcd(k1, k2);
    let denom = ints::mul_all(&[g, q.m, v.v0, v.v_inf, seed.order], "class denominator")?;
    let scale_den = ints::mul_all(&[g, q.m, v.v0, v.v_inf], "scale denominator")?;
    Ok(ClassCoefficients {
        k1: k1 / extra,
        k2: k2 / extra,
        denom,
        admissible_scale_num: Rat::new(q.s.into(), scale_den.into()),
        admissible_scale_has_4pi: true,
        transverse_factor: ints::mul(q.m, g, "transverse factor")?,
        extra_factor: extra,
    })
}

/// Coefficient of `c1(D)`: `l_inf I_N - l0 |w|`. Zero means Gorenstein.
pub fn c1_contact(seed: &SasakiSeed, j: &JoinSpec) -> Result<i64> {
    let i = i128::from(seed.fano()?);
    ints::to_i64(i128::from(j.l_inf) * i - i128::from(j.l0) * i128::from(j.w_norm()), "c1")
}

/// The relative Fano indices of `(I_N, |w|)`.
pub fn relative_fano(seed: &SasakiSeed, w: Pair) -> Result<JoinSpec> {
    let i = seed.fano()?;
    let norm = ints::add(w.0, w.1, "|w|")?;
    let g = gcd(norm, i);
    validate_join(seed, (i / g, norm / g), w)
}

pub fn fano_index_quotient(seed: &SasakiSeed, j: &JoinSpec, v: &ReebLattice) -> Result<u64> {
    if c1_contact(seed, j)? != 0 {
        return invalid("fano index of the quotient needs a Gorenstein join (c1(D) = 0)");
    }
    let q = quotient_data(seed, j, v)?;
    if q.reducible {
        return invalid("product case: fano index needs a non-reducible ray");
    }
    let vs = v.v0 + v.v_inf;
    if !vs.is_multiple_of(q.s) {
        return internal(format!("s = {} does not divide v0 + v_inf = {vs}", q.s));
    }
    let top = ints::mul_all(&[j.l0, j.w0, v.v_inf], "l0 w0 v_inf")?;
    ints::mul(vs / q.s, gcd(top, seed.order), "fano index")
}

pub fn regular_reeb_check(seed: &SasakiSeed, j: &JoinSpec) -> RegularReeb {
    let gorenstein = seed.fano_index.is_some() && c1_contact(seed, j).ok() == Some(0);
    if gorenstein && j.l_inf > 2 {
        return RegularReeb {
            exists: false,
            certificate: format!("Gorenstein join with l_inf = {} > 2 has no regular Reeb field", j.l_inf),
        };
    }
    let diff = j.w0.abs_diff(j.w_inf);
    let exists = diff.is_multiple_of(j.l_inf);
    let mut certificate = if exists {
        format!("v=(1,1) gives s = l_inf = {}, so m = 1", j.l_inf)
    } else {
        format!("l_inf = {} does not divide w0 - w_inf = {diff}, so m > 1 at v=(1,1)", j.l_inf)
    };
    if seed.order > 1 {
        certificate.push_str(&format!("; base order {} > 1: m = 1 is necessary, not sufficient", seed.order));
    }
    RegularReeb { exists, certificate }
}

/// Swaps the two ends: `w -> (w_inf, w0)`, `v -> (v_inf, v0)`, `n -> -n`.
pub fn perp_involution(j: &JoinSpec, v: Option<&ReebLattice>) -> (JoinSpec, Option<ReebLattice>, Option<PerpNote>) {
    let jp = JoinSpec { w0: j.w_inf, w_inf: j.w0, perp_applied: !j.perp_applied, ..*j };
    let vp = v.map(|v| ReebLattice { v0: v.v_inf, v_inf: v.v0 });
    let note = match (v, &vp) {
        (Some(v), Some(vp)) => match (quotient_core(j, v), quotient_core(&jp, vp)) {
            (Ok(a), Ok(b)) => Some(PerpNote { n_before: a.2, n_after: b.2, m_before: (a.3, a.4), m_after: (b.3, b.4) }),
            _ => None,
        },
        _ => None,
    };
    (jp, vp, note)
}

/// The quotient along `v` as a new seed one complex dimension up.
pub fn iterate_seed(seed: &SasakiSeed, j: &JoinSpec, v: &ReebLattice, ray_is_ke: bool) -> Result<SasakiSeed> {
    let q = quotient_data(seed, j, v)?;
    if q.reducible {
        return invalid("product case: cannot iterate along the reducible ray");
    }
    let gorenstein = seed.fano_index.is_some() && c1_contact(seed, j)? == 0;
    let fano_index = if gorenstein && ray_is_ke { Some(fano_index_quotient(seed, j, v)?) } else { None };
    Ok(SasakiSeed {
        d: seed.d + 1,
        a: fano_index.map(|i| int(i as i64)),
        fano_index,
        order: q.order,
        pi2_rank: seed.pi2_rank.map(|k| k + 1),
        b3_zero: None,
        simply_connected: seed.simply_connected,
        sphere_dim: None,
        label: format!("{} *({},{}) S3({},{}) v=({},{})", seed.label, j.l0, j.l_inf, j.w0, j.w_inf, v.v0, v.v_inf),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn v(a: u64, b: u64) -> ReebLattice {
        ReebLattice::new(a, b).unwrap()
    }

    fn s3() -> SasakiSeed {
        SasakiSeed::s3()
    }

    fn seed455() -> SasakiSeed {
        SasakiSeed::ke(2, 12, 455, "Y13,8 quotient")
    }

    #[test]
    fn validation() {
        let j = validate_join(&s3(), (1, 13), (21, 5)).unwrap();
        assert!(!j.perp_applied);
        let e = validate_join(&s3(), (2, 4), (1, 1)).unwrap_err();
        assert!(e.to_string().contains("l not coprime"));
        let j = validate_join(&s3(), (1, 1), (5, 21)).unwrap();
        assert_eq!(j.w(), (21, 5));
        assert!(j.perp_applied);
    }

    #[test]
    fn smoothness() {
        let j = validate_join(&seed455(), (4, 15), (34, 11)).unwrap();
        assert!(is_smooth(&seed455(), &j));
        assert_eq!(smoothness_gcd(455, (4, 15), (34, 11)), 1);
        assert!(is_smooth(&s3(), &validate_join(&s3(), (1, 1), (1, 1)).unwrap()));
        let seed6 = SasakiSeed { order: 6, ..s3() };
        assert!(!is_smooth(&seed6, &validate_join(&seed6, (1, 2), (3, 1)).unwrap()));
    }

    #[test]
    fn quotient_examples() {
        let j = validate_join(&s3(), (1, 13), (21, 5)).unwrap();
        let q = quotient_data(&s3(), &j, &v(7, 5)).unwrap();
        assert_eq!((q.s, q.m, q.n, q.m0, q.m_inf, q.order), (1, 13, 70, 91, 65, 455));
        assert!(!q.reducible);
        let q = quotient_data(&s3(), &j, &v(21, 5)).unwrap();
        assert_eq!((q.s, q.m, q.n), (13, 1, 0));
        assert!(q.reducible);
        let j = validate_join(&seed455(), (4, 15), (34, 11)).unwrap();
        let q = quotient_data(&seed455(), &j, &v(17, 11)).unwrap();
        assert_eq!((q.s, q.m, q.n, q.order), (1, 15, 748, 15 * 17 * 11 * 455));
    }

    #[test]
    fn admissible_examples() {
        let j = validate_join(&s3(), (1, 13), (21, 5)).unwrap();
        assert_eq!(admissible_params(&s3(), &j, &v(7, 5)).unwrap().r, rat(1, 2));
        let e = admissible_params(&s3(), &j, &v(21, 5)).unwrap_err();
        assert!(e.to_string().contains("r=0"));
        let j = validate_join(&seed455(), (4, 15), (34, 11)).unwrap();
        assert_eq!(admissible_params(&seed455(), &j, &v(17, 11)).unwrap().r, rat(1, 3));
    }

    #[test]
    fn kahler_examples() {
        let j = validate_join(&s3(), (1, 13), (21, 5)).unwrap();
        let c = kahler_class(&s3(), &j, &v(7, 5)).unwrap();
        assert_eq!((c.k1, c.k2, c.denom, c.transverse_factor), (105, 1, 455, 13));
        assert_eq!(c.admissible_scale_num, rat(1, 455));
        let j = validate_join(&s3(), (1, 2), (1, 1)).unwrap();
        let c = kahler_class(&s3(), &j, &v(2, 1)).unwrap();
        assert_eq!((c.k1, c.k2), (1, 1));
    }

    #[test]
    fn c1_examples() {
        let seed = SasakiSeed::ke(2, 42, 1, "L13,8");
        let j = validate_join(&seed, (1, 13), (21, 5)).unwrap();
        assert_eq!(c1_contact(&seed, &j).unwrap(), 520);
        let j = validate_join(&s3(), (1, 1), (3, 1)).unwrap();
        assert_eq!(c1_contact(&s3(), &j).unwrap(), -2);
        let bare = SasakiSeed { fano_index: None, ..s3() };
        assert!(c1_contact(&bare, &j).unwrap_err().to_string().contains("not Fano"));
    }

    #[test]
    fn relative_fano_examples() {
        assert_eq!(relative_fano(&s3(), (21, 5)).unwrap().l(), (1, 13));
        assert_eq!(relative_fano(&seed455(), (34, 11)).unwrap().l(), (4, 15));
        let seed1 = SasakiSeed::ke(1, 1, 1, "I=1");
        assert_eq!(relative_fano(&seed1, (2, 1)).unwrap().l(), (1, 3));
    }

    #[test]
    fn fano_quotient_examples() {
        let j = relative_fano(&s3(), (21, 5)).unwrap();
        assert_eq!(fano_index_quotient(&s3(), &j, &v(7, 5)).unwrap(), 12);
        let j = relative_fano(&seed455(), (34, 11)).unwrap();
        assert_eq!(fano_index_quotient(&seed455(), &j, &v(17, 11)).unwrap(), 28);
        let seed4 = SasakiSeed::ke(1, 4, 1, "I=4");
        let j = validate_join(&seed4, (1, 1), (3, 1)).unwrap();
        assert_eq!(fano_index_quotient(&seed4, &j, &v(1, 1)).unwrap(), 2);
        let j = validate_join(&s3(), (1, 1), (3, 1)).unwrap();
        assert!(fano_index_quotient(&s3(), &j, &v(1, 1)).is_err());
    }

    #[test]
    fn regular_reeb_examples() {
        let j = relative_fano(&s3(), (21, 5)).unwrap();
        assert!(!regular_reeb_check(&s3(), &j).exists);
        let j = validate_join(&s3(), (1, 1), (2, 1)).unwrap();
        assert!(regular_reeb_check(&s3(), &j).exists);
        let j = validate_join(&s3(), (1, 4), (3, 1)).unwrap();
        assert!(!regular_reeb_check(&s3(), &j).exists);
        let j = validate_join(&seed455(), (1, 1), (2, 1)).unwrap();
        assert!(regular_reeb_check(&seed455(), &j).certificate.contains("not sufficient"));
    }

    #[test]
    fn perp_examples() {
        let j = validate_join(&s3(), (1, 13), (21, 5)).unwrap();
        let (jp, vp, note) = perp_involution(&j, Some(&v(7, 5)));
        assert_eq!(jp.w(), (5, 21));
        assert_eq!(vp.unwrap().pair(), (5, 7));
        let note = note.unwrap();
        assert_eq!((note.n_before, note.n_after), (70, -70));
        assert_eq!((note.m_before, note.m_after), ((91, 65), (65, 91)));
        let (jj, vv, _) = perp_involution(&jp, vp.as_ref());
        assert_eq!((jj, vv), (j, Some(v(7, 5))));
        let j = validate_join(&s3(), (1, 1), (1, 1)).unwrap();
        assert_eq!(perp_involution(&j, None).0.w(), j.w());
    }

    #[test]
    fn iteration_chain() {
        let j = relative_fano(&s3(), (21, 5)).unwrap();
        let next = iterate_seed(&s3(), &j, &v(7, 5), true).unwrap();
        assert_eq!((next.d, next.fano_index, next.order, next.pi2_rank), (2, Some(12), 455, Some(1)));
        assert_eq!(relative_fano(&next, (34, 11)).unwrap().l(), (4, 15));
        let other = iterate_seed(&s3(), &j, &v(1, 1), false).unwrap();
        assert_eq!(other.a, None);
        assert_eq!(other.fano_index, None);
    }

    #[test]
    fn seed_validation() {
        assert!(SasakiSeed::s5().validate().is_ok());
        let bad = SasakiSeed { a: Some(int(3)), ..s3() };
        assert!(bad.validate().is_err());
        let bad = SasakiSeed { order: 0, ..s3() };
        assert!(bad.validate().is_err());
    }
}
