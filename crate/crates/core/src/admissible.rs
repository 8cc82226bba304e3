//! Admissible extremal metrics on the quotient: the extremal polynomial, the
//! scalar curvature profile, CSC and KE conditions, and CSC rays from f(b).

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{cauchy_bound, int, isolate_roots, pow, rat_str, resolve_root, Poly, Rat, RayCertificate, SturmSequence};
use crate::error::{internal, invalid, Result};
use crate::join::{admissible_params, c1_contact, AdmissibleParams, JoinSpec, ReebLattice, SasakiSeed};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremalSolution {
    #[serde(rename = "F")]
    pub f: Poly,
    #[serde(with = "rat_str")]
    pub alpha: Rat,
    #[serde(with = "rat_str")]
    pub beta: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CscRay {
    pub b: RayCertificate,
    pub v: Option<ReebLattice>,
    pub quasi_regular: bool,
    /// Positivity of the extremal polynomial on (-1, 1); only decided for
    /// quasi-regular rays.
    pub positive: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CscBetaC {
    #[serde(with = "rat_str")]
    pub beta: Rat,
    #[serde(with = "rat_str")]
    pub c: Rat,
    /// `c` with the `r` factor dropped from the `2 r m0 m_inf A` term.
    #[serde(with = "rat_str")]
    pub c_as_displayed: Rat,
    pub csc_condition_holds: bool,
    pub csc_condition_as_displayed_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftReport {
    pub vanishes_at_ends: bool,
    #[serde(with = "rat_str")]
    pub slope_at_minus_one: Rat,
    #[serde(with = "rat_str")]
    pub slope_at_plus_one: Rat,
    pub slope_minus_ok: bool,
    pub slope_plus_ok: bool,
}

impl LiftReport {
    pub fn passes(&self) -> bool {
        self.vanishes_at_ends && self.slope_minus_ok && self.slope_plus_ok
    }
}

fn ri(n: impl Into<BigInt>) -> Rat {
    Rat::from_integer(n.into())
}

/// `1 + r z`
fn one_plus_rz(r: &Rat) -> Poly {
    Poly::linear(Rat::one(), r.clone())
}

fn check_params(p: &AdmissibleParams) -> Result<()> {
    if p.n == 0 {
        return invalid("product case: r undefined (r=0)");
    }
    if p.r.is_zero() || p.r.abs() >= Rat::one() {
        return invalid("admissible parameters need 0 < |r| < 1");
    }
    if p.m0 == 0 || p.m_inf == 0 || p.d == 0 {
        return invalid("admissible parameters need positive m0, m_inf and d");
    }
    Ok(())
}

/// Gauss-Jordan elimination over Q; `None` when singular.
fn solve_linear(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>) -> Option<Vec<Rat>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = Rat::one() / &a[col][col];
        for x in &mut a[col][col..] {
            *x = &*x * &inv;
        }
        b[col] = &b[col] * &inv;
        let pivot_row = a[col].clone();
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for (x, p) in a[r][col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= &f * p;
                }
                let t = &f * &b[col];
                b[r] -= t;
            }
        }
    }
    Some(b)
}

/// Endpoint data `F'(-1)` and `F'(1)`.
fn endpoint_slopes(p: &AdmissibleParams) -> (Rat, Rat) {
    let d = p.d as usize;
    let two = int(2);
    let minus = &two * pow(&(Rat::one() - &p.r), d) / ri(p.m_inf);
    let plus = -&two * pow(&(Rat::one() + &p.r), d) / ri(p.m0);
    (minus, plus)
}

/// Solves `F'' = (1+rz)^{d-1} (2dAr/n + (alpha z + beta)(1+rz))` with
/// `F(+-1) = 0` and the endpoint slopes fixed by `m0`, `m_inf`.
pub fn extremal_polynomial(p: &AdmissibleParams) -> Result<ExtremalSolution> {
    check_params(p)?;
    let d = p.d as usize;
    let q = one_plus_rz(&p.r);
    let qd1 = q.pow(d - 1);
    let c0 = int(2) * ri(p.d) * &p.a * &p.r / ri(p.n);
    let twice = |f: &Poly| f.antiderivative().antiderivative();
    let pc = twice(&qd1.scale(&c0));
    let pa = twice(&(&(&qd1 * &Poly::x()) * &q));
    let pb = twice(&(&qd1 * &q));
    let (dpc, dpa, dpb) = (pc.derivative(), pa.derivative(), pb.derivative());
    let (m1, p1) = (int(-1), int(1));
    let (s_minus, s_plus) = endpoint_slopes(p);
    let a = vec![
        vec![pa.eval(&m1), pb.eval(&m1), int(-1), int(1)],
        vec![pa.eval(&p1), pb.eval(&p1), int(1), int(1)],
        vec![dpa.eval(&m1), dpb.eval(&m1), int(1), int(0)],
        vec![dpa.eval(&p1), dpb.eval(&p1), int(1), int(0)],
    ];
    let b = vec![-pc.eval(&m1), -pc.eval(&p1), s_minus.clone() - dpc.eval(&m1), s_plus.clone() - dpc.eval(&p1)];
    let Some(x) = solve_linear(a, b) else {
        return internal("singular extremal boundary system");
    };
    let (alpha, beta) = (x[0].clone(), x[1].clone());
    let f = &(&(&pc + &pa.scale(&alpha)) + &pb.scale(&beta)) + &Poly::linear(x[3].clone(), x[2].clone());
    let df = f.derivative();
    if !f.eval(&m1).is_zero() || !f.eval(&p1).is_zero() || df.eval(&m1) != s_minus || df.eval(&p1) != s_plus {
        return internal("extremal polynomial misses its boundary conditions");
    }
    Ok(ExtremalSolution { f, alpha, beta })
}

/// `Scal = -(alpha z + beta)`, after checking the cleared identity
/// `2dAr/n (1+rz)^{d-1} - F'' = -(alpha z + beta)(1+rz)^d`.
pub fn scal_profile(p: &AdmissibleParams, sol: &ExtremalSolution) -> Result<Poly> {
    check_params(p)?;
    let d = p.d as usize;
    let q = one_plus_rz(&p.r);
    let c0 = int(2) * ri(p.d) * &p.a * &p.r / ri(p.n);
    let scal = -&Poly::linear(sol.beta.clone(), sol.alpha.clone());
    let lhs = &q.pow(d - 1).scale(&c0) - &sol.f.derivative().derivative();
    let rhs = &scal * &q.pow(d);
    if lhs != rhs {
        return internal("scalar curvature identity fails for the extremal polynomial");
    }
    Ok(scal)
}

/// No root of `F` in the open interval (-1, 1) and `F(0) > 0`.
pub fn check_positivity(sol: &ExtremalSolution) -> bool {
    let Ok(s) = SturmSequence::new(&sol.f) else {
        return false;
    };
    let (m1, p1) = (int(-1), int(1));
    let at_one = usize::from(sol.f.eval(&p1).is_zero());
    s.count(&m1, &p1) == at_one && sol.f.eval(&Rat::zero()).is_positive()
}

fn csc_combination(p: &AdmissibleParams, beta: &Rat, c: &Rat) -> Rat {
    let d = p.d as usize;
    let (r, a, n) = (&p.r, &p.a, ri(p.n));
    let (up, dn) = (Rat::one() + r, Rat::one() - r);
    let s1 = pow(&up, d + 1) - pow(&dn, d + 1);
    let s2 = pow(&up, d + 2) - pow(&dn, d + 2);
    int(2) * a * s1 / (n * r * ri(d + 1)) + beta * s2 / (r * r * ri((d + 1) * (d + 2))) + int(2) * c
}

/// Closed-form `beta`, `c` and the CSC balance condition.
pub fn csc_beta_c(p: &AdmissibleParams) -> Result<CscBetaC> {
    check_params(p)?;
    let d = p.d as usize;
    let (r, a, n, m0, mi) = (&p.r, &p.a, ri(p.n), ri(p.m0), ri(p.m_inf));
    let (up, dn) = (Rat::one() + r, Rat::one() - r);
    let den = &n * &m0 * &mi * (pow(&up, d + 1) - pow(&dn, d + 1));
    let beta = -int(2) * ri(d + 1) * r * (&mi * pow(&up, d) * (&n + &m0 * a) - &m0 * pow(&dn, d) * (-&n + &mi * a)) / &den;
    let pre = int(2) * pow(&(Rat::one() - r * r), d);
    let base = &n * &mi * &dn + &n * &m0 * &up;
    let c = &pre * (&base - int(2) * r * &m0 * &mi * a) / &den;
    let c_as_displayed = &pre * (&base - int(2) * &m0 * &mi * a) / &den;
    let holds = csc_combination(p, &beta, &c).is_zero();
    let holds_displayed = csc_combination(p, &beta, &c_as_displayed).is_zero();
    Ok(CscBetaC { beta, c, c_as_displayed, csc_condition_holds: holds, csc_condition_as_displayed_holds: holds_displayed })
}

/// The degree `2d+4` polynomial whose positive roots `b = v_inf/v0` are the
/// CSC rays of the w-cone, scaled by the denominator of `A`.
pub fn csc_polynomial(seed: &SasakiSeed, j: &JoinSpec) -> Result<Poly> {
    seed.validate()?;
    let a = seed.a()?;
    let d = seed.d as usize;
    let (l0, li, w0, wi) = (ri(j.l0), ri(j.l_inf), ri(j.w0), ri(j.w_inf));
    let d1 = ri(d + 1);
    let d2 = ri(d + 2);
    let b = Poly::x();
    let mono = |c: Rat, k: usize| Poly::monomial(c, k);
    let t1 = &mono(pow(&w0, 2 * (d + 1)), 2 * d + 3) * &Poly::linear(a * &li + &l0 * &d1 * &wi, -(&d1 * &l0 * &w0));
    let t2 = mono(-pow(&w0, d + 2) * pow(&wi, d) * &d1 * (a * &d1 * &li - &l0 * (&d1 * &w0 + &d2 * &wi)), d + 3);
    let t3 = mono(pow(&w0, d + 1) * pow(&wi, d + 1) * (int(2) * a * ri(d) * &d2 * &li - &d1 * ri(2 * d + 3) * &l0 * (&w0 + &wi)), d + 2);
    let t4 = mono(-pow(&w0, d) * pow(&wi, d + 2) * &d1 * (a * &d1 * &li - &l0 * (&d2 * &w0 + &d1 * &wi)), d + 1);
    let t5 = (&b.scale(&(a * &li + &l0 * &d1 * &w0)) - &Poly::constant(&d1 * &l0 * &wi)).scale(&pow(&wi, 2 * (d + 1)));
    let f = &(&(&(&t1 + &t2) + &t3) + &t4) + &t5;
    Ok(f.scale(&ri(a.denom().clone())))
}

/// `(w0 b - w_inf)^3`, the factor of `f` carried by the reducible ray.
fn reducible_factor(j: &JoinSpec) -> Poly {
    Poly::linear(-ri(j.w_inf), ri(j.w0)).pow(3)
}

fn ray_from_b(seed: &SasakiSeed, j: &JoinSpec, b: RayCertificate) -> CscRay {
    let Some(x) = b.exact() else {
        return CscRay { b, v: None, quasi_regular: false, positive: None };
    };
    let v = match (x.denom().to_u64(), x.numer().to_u64()) {
        (Some(v0), Some(vi)) => ReebLattice::new(v0, vi).ok(),
        _ => None,
    };
    let positive = v.and_then(|v| {
        let p = admissible_params(seed, j, &v).ok()?;
        extremal_polynomial(&p).ok().map(|s| check_positivity(&s))
    });
    CscRay { b, v, quasi_regular: true, positive }
}

/// Roots of `f` in `(0, B]` other than the reducible ray `b = w_inf/w0`. For
/// `w = (1,1)` the reducible ray is the regular product ray, which is CSC, and
/// it is reported with `positive` left undecided.
pub fn csc_rays(seed: &SasakiSeed, j: &JoinSpec, precision: &Rat) -> Result<Vec<CscRay>> {
    if !precision.is_positive() {
        return invalid("precision must be positive");
    }
    let f = csc_polynomial(seed, j)?;
    let (g, rem) = f.div_rem(&reducible_factor(j));
    if !rem.is_zero() {
        return internal("f(b) lacks the (w0 b - w_inf)^3 factor of the reducible ray");
    }
    let t = Rat::new(j.w_inf.into(), j.w0.into());
    let base = g.square_free().primitive();
    if base.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let bound = cauchy_bound(&base);
    let ivs = isolate_roots(&base, &Rat::zero(), &bound)?;
    let certs: Vec<Result<RayCertificate>> = crate::par_map(&ivs, |iv| resolve_root(iv, precision));
    let mut rays = Vec::with_capacity(certs.len());
    for c in certs {
        let c = c?;
        if c.exact() == Some(&t) {
            continue;
        }
        rays.push(c);
    }
    let mut out: Vec<CscRay> = crate::par_map(&rays, |c| ray_from_b(seed, j, c.clone()));
    if j.w0 == j.w_inf {
        out.push(CscRay { b: RayCertificate::Exact(t), v: Some(ReebLattice::new(1, 1)?), quasi_regular: true, positive: None });
    }
    out.sort_by(|a, b| a.b.bounds().0.cmp(&b.b.bounds().0));
    Ok(out)
}

/// Both KE conditions: the weighted integral vanishes and
/// `2 r I_N / n = (1+r)/m_inf + (1-r)/m0`.
pub fn ke_check(seed: &SasakiSeed, j: &JoinSpec, v: &ReebLattice) -> Result<bool> {
    let i = seed.fano()?;
    let p = admissible_params(seed, j, v)?;
    let d = p.d as usize;
    let (m0, mi) = (ri(p.m0), ri(p.m_inf));
    let w = &Poly::linear(Rat::one() / &mi, -(Rat::one() / &mi)) - &Poly::linear(Rat::one() / &m0, Rat::one() / &m0);
    let integral = (&w * &one_plus_rz(&p.r).pow(d)).integrate(&int(-1), &int(1));
    let lhs = int(2) * &p.r * ri(i) / ri(p.n);
    let rhs = (Rat::one() + &p.r) / &mi + (Rat::one() - &p.r) / &m0;
    Ok(integral.is_zero() && lhs == rhs)
}

/// Checks the lifted endpoint conditions for `m v0 v_inf F / (1+rz)^d`.
pub fn lift_profile(p: &AdmissibleParams, sol: &ExtremalSolution, v: &ReebLattice, m: u64) -> LiftReport {
    let d = p.d as usize;
    let q = one_plus_rz(&p.r).pow(d);
    let dq = q.derivative();
    let df = sol.f.derivative();
    let k = ri(m) * ri(v.v0) * ri(v.v_inf);
    let theta = |z: &Rat| &k * sol.f.eval(z) / q.eval(z);
    let slope = |z: &Rat| {
        let qz = q.eval(z);
        &k * (df.eval(z) * &qz - sol.f.eval(z) * dq.eval(z)) / (&qz * &qz)
    };
    let (m1, p1) = (int(-1), int(1));
    let slope_at_minus_one = slope(&m1);
    let slope_at_plus_one = slope(&p1);
    LiftReport {
        vanishes_at_ends: theta(&m1).is_zero() && theta(&p1).is_zero(),
        slope_minus_ok: slope_at_minus_one == int(2) * ri(v.v0),
        slope_plus_ok: slope_at_plus_one == -int(2) * ri(v.v_inf),
        slope_at_minus_one,
        slope_at_plus_one,
    }
}

/// True when `l` is Gorenstein for the seed (needs a Fano index).
pub fn is_gorenstein(seed: &SasakiSeed, j: &JoinSpec) -> bool {
    seed.fano_index.is_some() && c1_contact(seed, j).ok() == Some(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::join::{relative_fano, validate_join};

    fn se_params() -> AdmissibleParams {
        AdmissibleParams { r: rat(1, 2), n: 70, m0: 91, m_inf: 65, d: 1, a: int(2) }
    }

    fn y138() -> (SasakiSeed, JoinSpec) {
        let seed = SasakiSeed::s3();
        let j = relative_fano(&seed, (21, 5)).unwrap();
        (seed, j)
    }

    #[test]
    fn extremal_se_data_is_csc() {
        let sol = extremal_polynomial(&se_params()).unwrap();
        assert_eq!(sol.alpha, int(0));
        assert_eq!(sol.beta, rat(-24, 455));
        assert_eq!(sol.f.degree(), Some(3));
        assert_eq!(sol.f.coeff(1), rat(2, 455));
        assert_eq!(sol.f.coeff(0), rat(11, 910));
        assert!(sol.f.eval(&int(1)).is_zero() && sol.f.eval(&int(-1)).is_zero());
        assert_eq!(scal_profile(&se_params(), &sol).unwrap(), Poly::constant(rat(24, 455)));
        assert!(check_positivity(&sol));
    }

    #[test]
    fn extremal_non_fano_is_not_csc() {
        let seed = SasakiSeed::s3();
        let j = validate_join(&seed, (1, 1), (2, 1)).unwrap();
        let p = admissible_params(&seed, &j, &ReebLattice::new(1, 1).unwrap()).unwrap();
        let sol = extremal_polynomial(&p).unwrap();
        assert!(!sol.alpha.is_zero());
        scal_profile(&p, &sol).unwrap();
    }

    #[test]
    fn zero_a_drops_base_term() {
        let p = AdmissibleParams { a: int(0), ..se_params() };
        let sol = extremal_polynomial(&p).unwrap();
        let scal = scal_profile(&p, &sol).unwrap();
        let q = one_plus_rz(&p.r);
        assert_eq!(&scal * &q, -&sol.f.derivative().derivative());
    }

    #[test]
    fn beta_c_condition() {
        let bc = csc_beta_c(&se_params()).unwrap();
        assert!(bc.csc_condition_holds);
        assert!(!bc.csc_condition_as_displayed_holds);
        assert_eq!(bc.beta, rat(-24, 455));
        let swapped = AdmissibleParams { m0: 65, m_inf: 91, ..se_params() };
        assert!(!csc_beta_c(&swapped).unwrap().csc_condition_holds);
    }

    #[test]
    fn csc_polynomial_shape() {
        let (seed, j) = y138();
        let f = csc_polynomial(&seed, &j).unwrap();
        assert_eq!(f.degree(), Some(6));
        assert!(f.eval(&rat(5, 7)).is_zero());
        assert_eq!(f.leading(), ri(-2 * 21i64.pow(5)));
        assert_eq!(f.coeff(0), ri(-2 * 5i64.pow(5)));
    }

    #[test]
    fn csc_rays_gorenstein() {
        let (seed, j) = y138();
        let rays = csc_rays(&seed, &j, &rat(1, 1_000_000)).unwrap();
        assert_eq!(rays.len(), 1);
        assert_eq!(rays[0].b, RayCertificate::Exact(rat(5, 7)));
        assert_eq!(rays[0].v, Some(ReebLattice::new(7, 5).unwrap()));
        assert_eq!(rays[0].positive, Some(true));
    }

    #[test]
    fn csc_rays_include_product_ray() {
        let seed = SasakiSeed::s3();
        let j = validate_join(&seed, (1, 1), (1, 1)).unwrap();
        let rays = csc_rays(&seed, &j, &rat(1, 1000)).unwrap();
        assert!(rays.iter().any(|r| r.b == RayCertificate::Exact(int(1)) && r.positive.is_none()));
    }

    #[test]
    fn csc_rays_three_for_large_l_inf() {
        let seed = SasakiSeed::s3();
        let j = validate_join(&seed, (1, 20), (2, 1)).unwrap();
        assert_eq!(csc_rays(&seed, &j, &rat(1, 1000)).unwrap().len(), 3);
    }

    #[test]
    fn ke_examples() {
        let (seed, j) = y138();
        assert!(ke_check(&seed, &j, &ReebLattice::new(7, 5).unwrap()).unwrap());
        assert!(!ke_check(&seed, &j, &ReebLattice::new(1, 1).unwrap()).unwrap());
        let seed2 = SasakiSeed::ke(2, 12, 455, "");
        let j2 = relative_fano(&seed2, (34, 11)).unwrap();
        assert!(ke_check(&seed2, &j2, &ReebLattice::new(17, 11).unwrap()).unwrap());
    }

    #[test]
    fn lift_examples() {
        let sol = extremal_polynomial(&se_params()).unwrap();
        let v = ReebLattice::new(7, 5).unwrap();
        assert!(lift_profile(&se_params(), &sol, &v, 13).passes());
        let bad = AdmissibleParams { m_inf: 66, ..se_params() };
        let sol = extremal_polynomial(&bad).unwrap();
        let rep = lift_profile(&bad, &sol, &v, 13);
        assert!(rep.vanishes_at_ends && !rep.slope_minus_ok);
        let p = AdmissibleParams { m0: 1, m_inf: 1, ..se_params() };
        let sol = extremal_polynomial(&p).unwrap();
        assert!(lift_profile(&p, &sol, &ReebLattice::new(1, 1).unwrap(), 1).passes());
    }

    #[test]
    fn synthetic_positivity() {
        let one_minus_z2 = Poly::from_ints(&[1, 0, -1]);
        let good = ExtremalSolution { f: &one_minus_z2 * &Poly::from_ints(&[1, 0, 1]), alpha: int(0), beta: int(0) };
        assert!(check_positivity(&good));
        let bad = ExtremalSolution { f: &one_minus_z2 * &Poly::from_ints(&[-1, 0, 4]), alpha: int(0), beta: int(0) };
        assert!(!check_positivity(&bad));
    }
}
