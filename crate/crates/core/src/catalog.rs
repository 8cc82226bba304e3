//! Example families: `Y^{p,q}` joins over `S^3`, and joins with the Brieskorn
//! links `L_{p,q}` and `L_{k,p}`, plus catalog sweeps over them.

use serde::{Deserialize, Serialize};

use crate::admissible::is_gorenstein;
use crate::arith::{int, rat_str, Rat, RayCertificate};
use crate::error::{internal, invalid, Result};
use crate::ints::{self, gcd, lcm};
use crate::join::{is_smooth, quotient_data, relative_fano, smoothness_gcd, validate_join, JoinSpec, Pair, ReebLattice, SasakiSeed};
use crate::se::se_ray;
use crate::topology::{topology_summary, TopologySummary};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Ypq,
    BrieskornPq,
    BrieskornKp,
}

/// Existence of an SE metric on the quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeClaim {
    Exists,
    Unknown,
    /// The quadric `(p, q) = (2, 2)`.
    Excluded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Positive,
    Negative,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbifoldDescriptor {
    pub ambient: String,
    pub hypersurface_degree: Option<u64>,
    pub branch_divisors: Vec<(String, u64)>,
    pub singular_points: Vec<(String, u64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YpqQuotient {
    pub p: u64,
    pub q: i64,
    pub l: Pair,
    pub w: Pair,
    pub v: ReebLattice,
    pub m: u64,
    pub m0: u64,
    pub m_inf: u64,
    /// `n` of the join quotient.
    pub n_join: i64,
    /// `l0 (p (m_inf - m0) + |q| (m0 + m_inf)) / p`
    #[serde(with = "rat_str")]
    pub n_ypq: Rat,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BrieskornPQ {
    pub p: u64,
    pub q: u64,
    pub k: u64,
    pub degree: u64,
    pub weights: [u64; 4],
    pub fano_index: u64,
    pub csc_exists: bool,
    pub se_claim: SeClaim,
    #[serde(with = "rat_str")]
    pub cone_halfwidth_ratio: Rat,
    pub quotient: OrbifoldDescriptor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PqJoinReport {
    pub l: Pair,
    pub w: Pair,
    pub smooth: bool,
    /// `2 l_inf (p+q) - l0 |w|`
    pub c1_coefficient: i64,
    /// `l0 |w| mod 2`
    pub w2: u8,
    /// Decided for smooth joins only.
    pub spin: Option<bool>,
    /// `l` making the join Gorenstein for this `w`.
    pub relative_fano_l: Pair,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BrieskornKP {
    pub k: u64,
    pub p: u64,
    pub weights: [u64; 4],
    pub degree: u64,
    pub fano_index: i64,
    pub sign: Sign,
    pub link_order: u64,
    pub quotient: OrbifoldDescriptor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KpJoinReport {
    pub l: Pair,
    pub w: Pair,
    pub smooth: bool,
    /// `l_inf I - l0 |w|`
    pub c1_coefficient: i64,
    pub gorenstein: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub family: Family,
    /// `(p, q)` for `ypq` and `brieskorn_pq`, `(k, p)` for `brieskorn_kp`.
    pub params: (u64, i64),
    pub l: Pair,
    pub w: Pair,
    pub smooth: bool,
    pub gorenstein: bool,
    pub base_fano_index: i64,
    pub se_claim: Option<SeClaim>,
    pub se_b: Option<RayCertificate>,
    pub topology: TopologySummary,
}

impl CatalogRecord {
    /// Re-checks the invariants that do not need the base geometry.
    pub fn check(&self) -> Result<()> {
        for (name, x) in [("l", self.l), ("w", self.w)] {
            if x.0 == 0 || x.1 == 0 || gcd(x.0, x.1) != 1 {
                return invalid(format!("{name} not coprime: ({},{})", x.0, x.1));
            }
        }
        if self.w.0 < self.w.1 {
            return invalid("w must be oriented with w0 >= w_inf");
        }
        let j = JoinSpec::oriented(self.l, self.w)?;
        if let Some(t) = self.topology.h4_torsion_order {
            if t != crate::topology::h4_torsion(&j)? {
                return invalid(format!("h4 torsion {t} is not w0 w_inf l0^2"));
            }
        }
        if self.family == Family::Ypq {
            let (p, q) = self.params;
            if ypq_raw(p, q) != (self.l, self.w) {
                return invalid(format!("(l, w) is not the Y^{{p,q}} join of ({p},{q})"));
            }
        }
        Ok(())
    }
}

fn ypq_precondition(p: u64, q: i64) -> Result<()> {
    let qa = q.unsigned_abs();
    let ok = p > 0 && qa < p && if q == 0 { p == 1 } else { gcd(p, qa) == 1 };
    if !ok {
        return invalid(format!("Y^{{p,q}} needs p > 0, -p < q < p, gcd(p,|q|) = 1 when q != 0 and p = 1 when q = 0; got ({p},{q})"));
    }
    Ok(())
}

/// `l = (g, p)`, `w = (p+q, p-q)/g` with `g = gcd(p+q, p-q)`, unvalidated and
/// in the raw orientation.
pub fn ypq_raw(p: u64, q: i64) -> (Pair, Pair) {
    let (a, b) = ((p as i64 + q) as u64, (p as i64 - q) as u64);
    let g = gcd(a, b).max(1);
    ((g, p), (a / g, b / g))
}

/// The `S^3` join of `Y^{p,q}`; `q < 0` comes back with the involution applied.
pub fn ypq_to_join(p: u64, q: i64) -> Result<JoinSpec> {
    ypq_precondition(p, q)?;
    let (l, w) = ypq_raw(p, q);
    validate_join(&SasakiSeed::s3(), l, w)
}

/// Inverse of [`ypq_to_join`] on raw pairs; `None` when `(l, w)` is not a
/// `Y^{p,q}` join.
pub fn join_to_ypq(l: Pair, w: Pair) -> Option<(u64, i64)> {
    let p = l.1;
    let twice_p = u128::from(l.0) * (u128::from(w.0) + u128::from(w.1));
    if twice_p != 2 * u128::from(p) {
        return None;
    }
    let twice_q = i128::from(l.0) * (i128::from(w.0) - i128::from(w.1));
    if twice_q % 2 != 0 {
        return None;
    }
    let q = i64::try_from(twice_q / 2).ok()?;
    ypq_precondition(p, q).ok()?;
    (ypq_raw(p, q) == (l, w)).then_some((p, q))
}

/// Quotient along `v` (given in the oriented join), with `n` computed both
/// from the join and from the `Y^{p,q}` parameters.
pub fn ypq_quotient(p: u64, q: i64, v: &ReebLattice) -> Result<YpqQuotient> {
    let j = ypq_to_join(p, q)?;
    let qd = quotient_data(&SasakiSeed::s3(), &j, v)?;
    let qa = i128::from(q.unsigned_abs());
    let (m0, mi) = (i128::from(qd.m0), i128::from(qd.m_inf));
    let num = i128::from(j.l0) * (i128::from(p) * (mi - m0) + qa * (m0 + mi));
    let n_ypq = Rat::new(num.into(), p.into());
    Ok(YpqQuotient { p, q, l: j.l(), w: j.w(), v: *v, m: qd.m, m0: qd.m0, m_inf: qd.m_inf, n_join: qd.n, agree: n_ypq == int(qd.n), n_ypq })
}

fn pq_se_claim(p: u64, q: u64) -> SeClaim {
    if (p, q) == (2, 2) {
        SeClaim::Excluded
    } else if 2 * p > q && 2 * q > p {
        SeClaim::Exists
    } else {
        SeClaim::Unknown
    }
}

fn pq_quotient(p: u64, q: u64, k: u64) -> OrbifoldDescriptor {
    let kk = k + 1;
    let branch_divisors = [("z0=0", p), ("z1=0", q)].into_iter().filter(|&(_, m)| m >= 2).map(|(s, m)| (s.to_string(), m)).collect();
    let mut singular_points = Vec::new();
    if kk >= 2 {
        singular_points.push(("[0,0,1,i]".to_string(), kk));
        singular_points.push(("[0,0,1,-i]".to_string(), kk));
    }
    for m in 0..kk {
        singular_points.push((format!("[1,exp(iπ{}/{kk}),0,0]", 2 * m + 1), 2));
    }
    OrbifoldDescriptor { ambient: format!("CP^3[2,2,{kk},{kk}]"), hypersurface_degree: Some(2 * kk), branch_divisors, singular_points }
}

pub fn brieskorn_pq_link(p: u64, q: u64) -> Result<BrieskornPQ> {
    if p == 0 || q == 0 {
        return invalid("L_{p,q} needs p, q >= 1");
    }
    let pq = ints::mul(p, q, "pq")?;
    let degree = ints::mul(2, pq, "degree")?;
    let k = gcd(p, q) - 1;
    let se_claim = pq_se_claim(p, q);
    Ok(BrieskornPQ {
        p,
        q,
        k,
        degree,
        weights: [2 * q, 2 * p, pq, pq],
        fano_index: 2 * (p + q),
        csc_exists: se_claim == SeClaim::Exists,
        se_claim,
        cone_halfwidth_ratio: Rat::from_integer(pq.into()),
        quotient: pq_quotient(p, q, k),
    })
}

/// The quotient of `L_{p,q}` as a seed; `A_N` and the index are only set when
/// it carries a KE metric.
pub fn brieskorn_pq_seed(b: &BrieskornPQ) -> Result<SasakiSeed> {
    let order = lcm(lcm(2, b.p)?, b.q)?;
    let mut seed = SasakiSeed::ke(2, b.fano_index, order, &format!("L({},{})", b.p, b.q));
    if b.se_claim != SeClaim::Exists {
        seed.a = None;
        seed.fano_index = None;
    }
    let k = u32::try_from(b.k).map_err(|_| crate::Error::Overflow("pi2 rank"))?;
    seed.pi2_rank = Some(k);
    seed.b3_zero = Some(k == 0);
    seed.simply_connected = Some(true);
    seed.sphere_dim = (k == 0).then_some(5);
    Ok(seed)
}

pub fn brieskorn_pq(p: u64, q: u64, l: Pair, w: Pair) -> Result<(BrieskornPQ, PqJoinReport)> {
    let b = brieskorn_pq_link(p, q)?;
    let seed = brieskorn_pq_seed(&b)?;
    let j = validate_join(&seed, l, w)?;
    let a = u128::from(2 * j.l_inf) * u128::from(p) * u128::from(q);
    let c = u128::from(j.l0) * u128::from(j.w0) * u128::from(j.w_inf);
    let smooth = num_integer::Integer::gcd(&a, &c) == 1;
    if smooth != is_smooth(&seed, &j) {
        return internal(format!("smoothness criteria disagree for L({p},{q}) with l={l:?}, w={w:?}"));
    }
    let norm = j.w_norm();
    let c1 = i128::from(2 * j.l_inf) * i128::from(p + q) - i128::from(j.l0) * i128::from(norm);
    let w2 = ((u128::from(j.l0) * u128::from(norm)) % 2) as u8;
    let g = gcd(b.fano_index, norm);
    let report = PqJoinReport {
        l: j.l(),
        w: j.w(),
        smooth,
        c1_coefficient: ints::to_i64(c1, "c1")?,
        w2,
        spin: smooth.then_some(w2 == 0),
        relative_fano_l: (b.fano_index / g, norm / g),
    };
    Ok((b, report))
}

fn kp_negative(k: u64, p: u64) -> bool {
    (k > 3 && p > 3) || (k == 3 && p > 12) || (k >= 6 && (p == 2 || p == 3)) || (k, p) == (5, 3)
}

pub fn brieskorn_kp_link(k: u64, p: u64) -> Result<BrieskornKP> {
    if k < 3 || p < 2 {
        return invalid("L_{k,p} needs k >= 3 and p >= 2 (k = 2 belongs to L_{p,q})");
    }
    if gcd(k, p) != 1 || gcd(k + 1, p) != 1 {
        return invalid(format!("L_{{k,p}} needs gcd(k,p) = gcd(k+1,p) = 1; got ({k},{p})"));
    }
    let weights = [(k + 1) * p, (k + 1) * p, k * p, k * (k + 1)];
    let degree = ints::mul_all(&[p, k, k + 1], "degree")?;
    let (ki, pi) = (i128::from(k), i128::from(p));
    let fano_index = ints::to_i64(2 * pi * ki + 2 * pi + ki - (pi - 1) * ki * ki, "index")?;
    let mut singular_points = Vec::new();
    for m in 0..k {
        singular_points.push((format!("[1,exp(iπ{}/{k}),0,0]", 2 * m + 1), k));
    }
    Ok(BrieskornKP {
        k,
        p,
        weights,
        degree,
        fano_index,
        sign: if kp_negative(k, p) { Sign::Negative } else { Sign::Positive },
        link_order: lcm(lcm(k, k + 1)?, p)?,
        quotient: OrbifoldDescriptor {
            ambient: format!("CP^2[{k},1,1]"),
            hypersurface_degree: None,
            branch_divisors: vec![("z2=0".to_string(), k + 1), ("z3=0".to_string(), p)],
            singular_points,
        },
    })
}

/// The quotient of `L_{k,p}` (a homotopy `S^5`) as a seed; the index is only
/// set when positive.
pub fn brieskorn_kp_seed(b: &BrieskornKP) -> SasakiSeed {
    SasakiSeed {
        d: 2,
        a: Some(int(b.fano_index)),
        fano_index: u64::try_from(b.fano_index).ok().filter(|&i| i > 0),
        order: b.link_order,
        pi2_rank: Some(0),
        b3_zero: Some(true),
        simply_connected: Some(true),
        sphere_dim: Some(5),
        label: format!("L({},{})", b.k, b.p),
    }
}

pub fn brieskorn_kp(k: u64, p: u64, l: Pair, w: Pair) -> Result<(BrieskornKP, KpJoinReport)> {
    let b = brieskorn_kp_link(k, p)?;
    let seed = brieskorn_kp_seed(&b);
    let j = validate_join(&seed, l, w)?;
    let c1 = i128::from(j.l_inf) * i128::from(b.fano_index) - i128::from(j.l0) * i128::from(j.w_norm());
    let report = KpJoinReport {
        l: j.l(),
        w: j.w(),
        smooth: smoothness_gcd(b.link_order, j.l(), j.w()) == 1,
        c1_coefficient: ints::to_i64(c1, "c1")?,
        gorenstein: c1 == 0,
    };
    Ok((b, report))
}

fn coprime_weights(max_w: u64) -> Vec<Pair> {
    (2..=max_w).flat_map(|a| (1..a).filter(move |&b| gcd(a, b) == 1).map(move |b| (a, b))).collect()
}

fn se_b(seed: &SasakiSeed, j: &JoinSpec) -> Result<Option<RayCertificate>> {
    if !is_gorenstein(seed, j) || j.w0 == j.w_inf {
        return Ok(None);
    }
    Ok(Some(se_ray(seed.d, j.w(), &Rat::new(1.into(), 1_000_000_000_000u64.into()))?.b))
}

fn record(family: Family, params: (u64, i64), seed: &SasakiSeed, j: &JoinSpec, claim: Option<SeClaim>) -> Result<CatalogRecord> {
    let gorenstein = is_gorenstein(seed, j);
    Ok(CatalogRecord {
        family,
        params,
        l: j.l(),
        w: j.w(),
        smooth: is_smooth(seed, j),
        gorenstein,
        base_fano_index: seed.a.as_ref().map_or(0, |a| a.to_integer().try_into().unwrap_or(0)),
        se_claim: if gorenstein { claim } else { None },
        se_b: se_b(seed, j)?,
        topology: topology_summary(seed, j)?,
    })
}

/// `Y^{p,q}` for `1 <= p <= max_p` and `0 <= q < p` (negative `q` is the
/// image under the involution).
pub fn catalog_ypq(max_p: u64) -> Result<Vec<CatalogRecord>> {
    let grid: Vec<(u64, i64)> =
        (1..=max_p).flat_map(|p| (0..p as i64).map(move |q| (p, q))).filter(|&(p, q)| ypq_precondition(p, q).is_ok()).collect();
    let seed = SasakiSeed::s3();
    crate::par_map(&grid, |&(p, q)| {
        let j = ypq_to_join(p, q)?;
        record(Family::Ypq, (p, q), &seed, &j, Some(SeClaim::Exists))
    })
    .into_iter()
    .collect()
}

/// Gorenstein joins with `L_{p,q}`, `1 <= p <= q <= max_pq`, coprime
/// `w0 > w_inf`, `w0 <= max_w`.
pub fn catalog_brieskorn_pq(max_pq: u64, max_w: u64) -> Result<Vec<CatalogRecord>> {
    let ws = coprime_weights(max_w);
    let grid: Vec<(u64, u64, Pair)> =
        (1..=max_pq).flat_map(|p| (p..=max_pq).map(move |q| (p, q))).flat_map(|(p, q)| ws.iter().map(move |&w| (p, q, w))).collect();
    crate::par_map(&grid, |&(p, q, w)| {
        let link = brieskorn_pq_link(p, q)?;
        let g = gcd(link.fano_index, w.0 + w.1);
        let (_, rep) = brieskorn_pq(p, q, (link.fano_index / g, (w.0 + w.1) / g), w)?;
        let mut seed = brieskorn_pq_seed(&link)?;
        seed.fano_index = Some(link.fano_index);
        seed.a = Some(int(link.fano_index as i64));
        let j = validate_join(&seed, rep.l, w)?;
        let mut rec = record(Family::BrieskornPq, (p, q as i64), &seed, &j, Some(link.se_claim))?;
        if link.se_claim != SeClaim::Exists {
            rec.se_b = None;
            rec.topology.stability_flags.k_semistable = None;
            rec.topology.stability_flags.t_equivariant_k_stable = None;
        }
        rec.topology.spin = rep.spin;
        Ok(rec)
    })
    .into_iter()
    .collect()
}

/// Joins with `L_{k,p}`, `3 <= k <= max_k`, `2 <= p <= max_p`, coprime
/// `w0 > w_inf`, `w0 <= max_w`; `l` is the relative Fano pair when the index
/// is positive and `l_fallback` otherwise.
pub fn catalog_brieskorn_kp(max_k: u64, max_p: u64, max_w: u64, l_fallback: Pair) -> Result<Vec<CatalogRecord>> {
    let ws = coprime_weights(max_w);
    let grid: Vec<(u64, u64, Pair)> = (3..=max_k)
        .flat_map(|k| (2..=max_p).map(move |p| (k, p)))
        .filter(|&(k, p)| gcd(k, p) == 1 && gcd(k + 1, p) == 1)
        .flat_map(|(k, p)| ws.iter().map(move |&w| (k, p, w)))
        .collect();
    crate::par_map(&grid, |&(k, p, w)| {
        let link = brieskorn_kp_link(k, p)?;
        let seed = brieskorn_kp_seed(&link);
        let j = match seed.fano_index {
            Some(_) => relative_fano(&seed, w)?,
            None => validate_join(&seed, l_fallback, w)?,
        };
        record(Family::BrieskornKp, (k, p as i64), &seed, &j, Some(SeClaim::Exists))
    })
    .into_iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ypq_examples() {
        let j = ypq_to_join(13, 8).unwrap();
        assert_eq!((j.l(), j.w()), ((1, 13), (21, 5)));
        let j = ypq_to_join(1, 0).unwrap();
        assert_eq!((j.l(), j.w()), ((1, 1), (1, 1)));
        let j = ypq_to_join(2, 1).unwrap();
        assert_eq!((j.l(), j.w()), ((1, 2), (3, 1)));
        let j = ypq_to_join(13, -8).unwrap();
        assert!(j.perp_applied);
        assert_eq!(j.w(), (21, 5));
        assert!(ypq_to_join(4, 2).unwrap_err().to_string().contains("gcd(p,|q|) = 1"));
        assert!(ypq_to_join(2, 0).is_err());
    }

    #[test]
    fn ypq_inverse() {
        assert_eq!(join_to_ypq((1, 13), (21, 5)), Some((13, 8)));
        assert_eq!(join_to_ypq((1, 13), (5, 21)), Some((13, -8)));
        assert_eq!(join_to_ypq((3, 13), (21, 5)), None);
        assert_eq!(join_to_ypq((2, 3), (2, 1)), Some((3, 1)));
    }

    #[test]
    fn ypq_quotient_examples() {
        let r = ypq_quotient(13, 8, &ReebLattice::new(7, 5).unwrap()).unwrap();
        assert_eq!((r.m0, r.m_inf, r.n_join), (91, 65, 70));
        assert!(r.agree);
        let r = ypq_quotient(2, 1, &ReebLattice::new(1, 1).unwrap()).unwrap();
        assert_eq!((r.m, r.n_join), (1, 1));
        assert!(r.agree);
        let r = ypq_quotient(3, 1, &ReebLattice::new(1, 1).unwrap()).unwrap();
        assert_eq!((r.n_join, r.n_ypq.clone()), (2, int(4)));
        assert!(!r.agree);
    }

    #[test]
    fn brieskorn_pq_examples() {
        let (b, rep) = brieskorn_pq(13, 8, (1, 1), (3, 1)).unwrap();
        assert_eq!((b.k, b.fano_index, b.degree), (0, 42, 208));
        assert!(b.csc_exists);
        assert_eq!(b.weights.iter().sum::<u64>() - b.degree, b.fano_index);
        assert_eq!(rep.relative_fano_l, (21, 2));
        assert!(rep.smooth);
        assert_eq!(rep.spin, Some(true));
        let (_, rep) = brieskorn_pq(3, 5, (1, 1), (3, 1)).unwrap();
        assert!(!rep.smooth);
        assert_eq!(brieskorn_pq_link(2, 2).unwrap().se_claim, SeClaim::Excluded);
        assert_eq!(brieskorn_pq_link(1, 5).unwrap().se_claim, SeClaim::Unknown);
        let b = brieskorn_pq_link(6, 4).unwrap();
        assert_eq!(b.k, 1);
        assert_eq!(b.quotient.singular_points.len(), 4);
    }

    #[test]
    fn brieskorn_pq_smooth_is_spin() {
        let (_, rep) = brieskorn_pq(1, 1, (1, 1), (3, 1)).unwrap();
        assert!(rep.smooth);
        assert_eq!(rep.spin, Some(true));
    }

    #[test]
    fn brieskorn_kp_examples() {
        let b = brieskorn_kp_link(3, 5).unwrap();
        assert_eq!(b.weights, [20, 20, 15, 12]);
        assert_eq!((b.degree, b.fano_index, b.sign), (60, 7, Sign::Positive));
        assert_eq!(b.link_order, 60);
        assert_eq!(brieskorn_kp_link(4, 7).unwrap().sign, Sign::Negative);
        assert!(kp_negative(4, 5));
        assert!(brieskorn_kp_link(3, 4).is_err());
        assert!(brieskorn_kp_link(2, 3).is_err());
        let (_, rep) = brieskorn_kp(3, 5, (1, 2), (2, 1)).unwrap();
        assert!(!rep.gorenstein);
        let (_, rep) = brieskorn_kp(3, 5, (1, 1), (5, 2)).unwrap();
        assert!(rep.gorenstein);
    }

    #[test]
    fn catalogs() {
        let ypq = catalog_ypq(6).unwrap();
        assert!(ypq.iter().all(|r| r.gorenstein && (r.se_b.is_some() || r.w == (1, 1))));
        assert!(ypq.iter().any(|r| r.params == (5, 2)));
        let pq = catalog_brieskorn_pq(4, 4).unwrap();
        assert!(pq.iter().all(|r| r.gorenstein));
        assert!(pq.iter().filter(|r| r.smooth).all(|r| r.topology.spin == Some(true)));
        let kp = catalog_brieskorn_kp(4, 5, 3, (1, 1)).unwrap();
        assert!(kp.iter().all(|r| r.topology.pi2_rank == Some(1)));
    }
}
