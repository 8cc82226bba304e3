//! Sasaki-η-Einstein rays of Gorenstein joins: the polynomials `p±(k)` and
//! `P_w(k)`, the map `κ`, and the lattice search for quasi-regular SE joins.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{cauchy_bound, int, isolate_roots, rat_str, resolve_root, Poly, Rat, RayCertificate, SturmSequence};
use crate::error::{internal, invalid, Error, Result};
use crate::ints::gcd;
use crate::join::{fano_index_quotient, is_smooth, quotient_data, relative_fano, Pair, ReebLattice, SasakiSeed};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeRay {
    pub k: RayCertificate,
    /// `b = v_inf / v0 = p⁻(k) / p⁺(k)`
    pub b: RayCertificate,
    pub v: Option<ReebLattice>,
    pub quasi_regular: bool,
}

/// One quasi-regular SE join found by [`enumerate_quasiregular_se`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeSearchRecord {
    #[serde(with = "rat_str")]
    pub k: Rat,
    pub w: Pair,
    pub v: Pair,
    pub l: Pair,
    pub smooth: bool,
    pub fano_index: u64,
    pub order: u64,
}

impl SeSearchRecord {
    /// Checks coprimality, `v = κ(p, q)` and `w_inf/w0 = q v_inf/(p v0)`.
    pub fn check(&self, d: u32) -> Result<()> {
        let (p, q) = k_parts(&self.k)?;
        for (name, x) in [("w", self.w), ("v", self.v), ("l", self.l)] {
            if x.0 == 0 || x.1 == 0 || gcd(x.0, x.1) != 1 {
                return invalid(format!("{name} not coprime: ({},{})", x.0, x.1));
            }
        }
        if kappa(d, p, q)?.pair() != self.v {
            return invalid(format!("v = ({},{}) is not kappa({p},{q})", self.v.0, self.v.1));
        }
        let lhs = u128::from(self.w.1) * u128::from(p) * u128::from(self.v.0);
        let rhs = u128::from(self.w.0) * u128::from(q) * u128::from(self.v.1);
        if lhs != rhs {
            return invalid(format!("w = ({},{}) violates the SE constraint for k = {p}/{q}", self.w.0, self.w.1));
        }
        if self.fano_index == 0 || self.order == 0 {
            return invalid("fano_index and order must be positive");
        }
        Ok(())
    }
}

fn k_parts(k: &Rat) -> Result<(u64, u64)> {
    match (k.numer().to_u64(), k.denom().to_u64()) {
        (Some(p), Some(q)) if p > q => Ok((p, q)),
        _ => invalid(format!("k must be a fraction p/q with p > q > 0, got {k}")),
    }
}

fn ri(n: impl Into<BigInt>) -> Rat {
    Rat::from_integer(n.into())
}

/// `(p⁻(k), p⁺(k))` with the common positive prefactor dropped.
pub fn p_pm(d: u32, k: &Rat) -> (Rat, Rat) {
    let mut minus = Rat::zero();
    let mut plus = Rat::zero();
    let mut kj = Rat::one();
    for j in 0..=d {
        minus += ri(d + 1 - j) * &kj;
        plus += ri(j + 1) * &kj;
        kj *= k;
    }
    (minus, plus)
}

/// `P_w(k) = w_inf (d+1) k^{d+1} + Σ_{j≤d} (|w| j - w0 (d+1)) k^j`.
pub fn se_polynomial(d: u32, w: Pair) -> Result<Poly> {
    if w.0 == w.1 {
        return invalid("degenerate weight: w0 = w_inf");
    }
    if w.0 < w.1 {
        return invalid(format!("se polynomial needs w0 > w_inf, got ({},{})", w.0, w.1));
    }
    let (w0, wi) = (i128::from(w.0), i128::from(w.1));
    let d1 = i128::from(d) + 1;
    let mut c: Vec<Rat> = (0..=i128::from(d)).map(|j| ri((w0 + wi) * j - w0 * d1)).collect();
    c.push(ri(wi * d1));
    Ok(Poly::new(c))
}

/// The unique SE ray of the w-cone, from the root of `P_w` in `(1, ∞)`.
pub fn se_ray(d: u32, w: Pair, precision: &Rat) -> Result<SeRay> {
    if !precision.is_positive() {
        return invalid("precision must be positive");
    }
    if w.0 == 0 || w.1 == 0 || gcd(w.0, w.1) != 1 {
        return invalid(format!("w not coprime: ({},{})", w.0, w.1));
    }
    let pw = se_polynomial(d, w)?;
    let bound = cauchy_bound(&pw);
    let count = SturmSequence::new(&pw)?.count(&int(1), &bound);
    if count != 1 {
        return internal(format!("P_w has {count} roots in (1, ∞), expected exactly one"));
    }
    let ivs = isolate_roots(&pw, &int(1), &bound)?;
    let [iv] = ivs.as_slice() else {
        return internal("root isolation disagrees with the Sturm count");
    };
    let k = resolve_root(iv, precision)?;
    let t = Rat::new(w.1.into(), w.0.into());
    let b = k.scaled(&t);
    let Some(kx) = k.exact() else {
        return Ok(SeRay { k, b, v: None, quasi_regular: false });
    };
    let (p, q) = k_parts(kx)?;
    let v = kappa(d, p, q)?;
    let (pm, pp) = p_pm(d, kx);
    if v.b() != &pm / &pp || Some(&v.b()) != b.exact() {
        return internal(format!("SE ray at k = {p}/{q} fails the b = p⁻/p⁺ = k t consistency check"));
    }
    Ok(SeRay { k, b, v: Some(v), quasi_regular: true })
}

/// `F(a, b) = Σ_{j≤d} (d+1-j) b^{d-j} a^j`
fn f_ab(d: u32, a: u64, b: u64) -> BigInt {
    let (a, b) = (BigInt::from(a), BigInt::from(b));
    (0..=d).map(|j| BigInt::from(d + 1 - j) * b.pow(d - j) * a.pow(j)).sum()
}

fn reduce_pair(x: BigInt, y: BigInt, what: &'static str) -> Result<Pair> {
    let g = x.gcd(&y);
    match ((x / &g).to_u64(), (y / &g).to_u64()) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(Error::Overflow(what)),
    }
}

/// `κ(p, q) = (F(q, p), F(p, q))` reduced; the Reeb lattice point of `k = p/q`.
pub fn kappa(d: u32, p: u64, q: u64) -> Result<ReebLattice> {
    if p <= q || q == 0 {
        return invalid(format!("kappa needs p > q > 0, got ({p},{q})"));
    }
    let (a, b) = reduce_pair(f_ab(d, q, p), f_ab(d, p, q), "kappa")?;
    ReebLattice::new(a, b)
}

/// The weight `w` whose SE ray sits at `k = p/q`.
pub fn w_from_k(d: u32, p: u64, q: u64) -> Result<Pair> {
    if p <= q || q == 0 || gcd(p, q) != 1 {
        return invalid(format!("w_from_k needs coprime p > q > 0, got ({p},{q})"));
    }
    let w = reduce_pair(BigInt::from(p) * f_ab(d, q, p), BigInt::from(q) * f_ab(d, p, q), "w_from_k")?;
    if gcd(w.0, w.1) != 1 {
        return internal("w_from_k produced a non-coprime pair");
    }
    Ok(w)
}

/// True iff `v = κ(p, q)` for the SE root `k = p/q` of `P_w` and the
/// constraint `w_inf/w0 = q v_inf/(p v0)` holds.
pub fn is_se_ray(d: u32, w: Pair, v: &ReebLattice) -> Result<bool> {
    let (w, v) = if w.0 < w.1 { ((w.1, w.0), ReebLattice { v0: v.v_inf, v_inf: v.v0 }) } else { (w, *v) };
    let ray = se_ray(d, w, &Rat::new(1.into(), 1000.into()))?;
    let Some(k) = ray.k.exact() else {
        return Ok(false);
    };
    let (p, q) = k_parts(k)?;
    let in_image = kappa(d, p, q)? == v;
    let lhs = u128::from(w.1) * u128::from(p) * u128::from(v.v0);
    let rhs = u128::from(w.0) * u128::from(q) * u128::from(v.v_inf);
    Ok(in_image && lhs == rhs)
}

/// `∫_{-1}^{1} ((1-b) - (1+b) z) ((b+t) + (b-t) z)^d dz`
pub fn ke_integral(d: u32, b: &Rat, t: &Rat) -> Result<Rat> {
    if !t.is_positive() || t >= &Rat::one() {
        return invalid("ke_integral needs 0 < t < 1");
    }
    let one = Rat::one();
    let lin = Poly::linear(&one - b, -(&one + b));
    let base = Poly::linear(b + t, b - t);
    Ok((&lin * &base.pow(d as usize)).integrate(&int(-1), &int(1)))
}

/// All quasi-regular SE joins with `k = p/q`, `1 < k`, `p, q <= h`, ordered
/// by `(p, q)`.
pub fn enumerate_quasiregular_se(seed: &SasakiSeed, h: u64) -> Result<Vec<SeSearchRecord>> {
    seed.fano()?;
    if h < 2 {
        return invalid("search height must be at least 2");
    }
    let grid: Vec<Pair> = (2..=h).flat_map(|p| (1..p).filter(move |&q| gcd(p, q) == 1).map(move |q| (p, q))).collect();
    let records = crate::par_map(&grid, |&(p, q)| se_record(seed, p, q));
    records.into_iter().collect()
}

fn se_record(seed: &SasakiSeed, p: u64, q: u64) -> Result<SeSearchRecord> {
    let w = w_from_k(seed.d, p, q)?;
    let v = kappa(seed.d, p, q)?;
    let j = relative_fano(seed, w)?;
    let rec = SeSearchRecord {
        k: Rat::new(p.into(), q.into()),
        w,
        v: v.pair(),
        l: j.l(),
        smooth: is_smooth(seed, &j),
        fano_index: fano_index_quotient(seed, &j, &v)?,
        order: quotient_data(seed, &j, &v)?.order,
    };
    rec.check(seed.d)?;
    Ok(rec)
}
