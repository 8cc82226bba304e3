//! wasm-bindgen bindings for the browser demo. Every export returns a JSON
//! string; the plain `*_json` functions carry the logic and are tested natively.

use sasaki_join::admissible::{check_positivity, csc_polynomial, csc_rays, extremal_polynomial, scal_profile};
use sasaki_join::arith::{fmt_rat, int, parse_rat, rat, to_f64, Rat};
use sasaki_join::join::{admissible_params, fano_index_quotient, quotient_data, relative_fano, validate_join, ReebLattice, SasakiSeed};
use sasaki_join::se::{se_polynomial, se_ray};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

type Out = Result<String, String>;

fn e(x: impl std::fmt::Display) -> String {
    x.to_string()
}

fn seed(d: u32, a: &str) -> Result<SasakiSeed, String> {
    let a = parse_rat(a).map_err(e)?;
    let mut s = SasakiSeed::ke(d, 1, 1, "N");
    s.fano_index = None;
    s.a = Some(a);
    s.validate().map_err(e)?;
    Ok(s)
}

fn grid(lo: f64, hi: f64, samples: u32) -> impl Iterator<Item = Rat> {
    let n = samples.clamp(2, 2000);
    // Sample on a 1/10^6 grid so exact evaluation stays cheap.
    (0..n).map(move |i| {
        let x = lo + (hi - lo) * f64::from(i) / f64::from(n - 1);
        rat((x * 1e6).round() as i64, 1_000_000)
    })
}

/// `f(b)` sampled on `(0, b_max]` together with its certified CSC rays.
pub fn csc_curve_json(d: u32, a: &str, l: (u64, u64), w: (u64, u64), b_max: f64, samples: u32) -> Out {
    let s = seed(d, a)?;
    let j = validate_join(&s, l, w).map_err(e)?;
    let f = csc_polynomial(&s, &j).map_err(e)?;
    let rays = csc_rays(&s, &j, &rat(1, 1_000_000)).map_err(e)?;
    let b_max = if b_max.is_finite() && b_max > 0.0 { b_max } else { 3.0 };
    let points: Vec<Value> =
        grid(b_max / f64::from(samples.max(2)), b_max, samples).map(|b| json!([to_f64(&b), to_f64(&f.eval(&b))])).collect();
    let rays: Vec<Value> =
        rays.iter().map(|r| json!({ "b": r.b.to_string(), "approx": to_f64(&r.b.midpoint()), "v": r.v, "positive": r.positive })).collect();
    Ok(json!({ "l": j.l(), "w": j.w(), "f": f.to_string(), "points": points, "rays": rays }).to_string())
}

/// Extremal polynomial `F(z)` on `[-1, 1]` along the ray `v`.
pub fn extremal_profile_json(d: u32, a: &str, l: (u64, u64), w: (u64, u64), v: (u64, u64), samples: u32) -> Out {
    let s = seed(d, a)?;
    let j = validate_join(&s, l, w).map_err(e)?;
    let v = if j.perp_applied { (v.1, v.0) } else { v };
    let v = ReebLattice::new(v.0, v.1).map_err(e)?;
    let p = admissible_params(&s, &j, &v).map_err(e)?;
    let sol = extremal_polynomial(&p).map_err(e)?;
    let scal = scal_profile(&p, &sol).map_err(e)?;
    let points: Vec<Value> = grid(-1.0, 1.0, samples).map(|z| json!([to_f64(&z), to_f64(&sol.f.eval(&z))])).collect();
    Ok(json!({
        "r": fmt_rat(&p.r),
        "n": p.n,
        "m": [p.m0, p.m_inf],
        "F": sol.f.to_string(),
        "alpha": fmt_rat(&sol.alpha),
        "beta": fmt_rat(&sol.beta),
        "scal": scal.to_string(),
        "csc": sol.alpha == int(0),
        "positive": check_positivity(&sol),
        "points": points,
    })
    .to_string())
}

/// The SE ray of the w-cone over a KE base of dimension `d` and index `index`.
pub fn se_lookup_json(d: u32, index: u64, w: (u64, u64)) -> Out {
    let w = if w.0 < w.1 { (w.1, w.0) } else { w };
    let ray = se_ray(d, w, &rat(1, 1_000_000_000)).map_err(e)?;
    let s = SasakiSeed::ke(d, index, 1, "N");
    let j = relative_fano(&s, w).map_err(e)?;
    let (index_v, order) = match ray.v {
        Some(v) => (Some(fano_index_quotient(&s, &j, &v).map_err(e)?), Some(quotient_data(&s, &j, &v).map_err(e)?.order)),
        None => (None, None),
    };
    Ok(json!({
        "w": w,
        "P_w": se_polynomial(d, w).map_err(e)?.to_string(),
        "k": ray.k.to_string(),
        "k_approx": to_f64(&ray.k.midpoint()),
        "b": ray.b.to_string(),
        "v": ray.v,
        "quasi_regular": ray.quasi_regular,
        "l": j.l(),
        "fano_index": index_v,
        "order": order,
    })
    .to_string())
}

fn js(r: Out) -> Result<String, JsError> {
    r.map_err(|m| JsError::new(&m))
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn csc_curve(d: u32, a: &str, l0: u32, l_inf: u32, w0: u32, w_inf: u32, b_max: f64, samples: u32) -> Result<String, JsError> {
    js(csc_curve_json(d, a, (l0.into(), l_inf.into()), (w0.into(), w_inf.into()), b_max, samples))
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn extremal_profile(
    d: u32,
    a: &str,
    l0: u32,
    l_inf: u32,
    w0: u32,
    w_inf: u32,
    v0: u32,
    v_inf: u32,
    samples: u32,
) -> Result<String, JsError> {
    js(extremal_profile_json(d, a, (l0.into(), l_inf.into()), (w0.into(), w_inf.into()), (v0.into(), v_inf.into()), samples))
}

#[wasm_bindgen]
pub fn se_lookup(d: u32, index: u32, w0: u32, w_inf: u32) -> Result<String, JsError> {
    js(se_lookup_json(d, index.into(), (w0.into(), w_inf.into())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn curve_has_the_se_ray() {
        let v = parse(&csc_curve_json(1, "2", (1, 13), (21, 5), 3.0, 50).unwrap());
        assert_eq!(v["rays"][0]["b"], "5/7");
        assert_eq!(v["points"].as_array().unwrap().len(), 50);
    }

    #[test]
    fn profile_is_csc_on_the_se_ray() {
        let v = parse(&extremal_profile_json(1, "2", (1, 13), (21, 5), (7, 5), 21).unwrap());
        assert_eq!(v["alpha"], "0");
        assert_eq!(v["positive"], true);
        assert_eq!(v["points"][0][1], 0.0);
    }

    #[test]
    fn se_lookup_index_chain() {
        let v = parse(&se_lookup_json(1, 2, (21, 5)).unwrap());
        assert_eq!((v["k"].as_str(), v["fano_index"].as_u64(), v["order"].as_u64()), (Some("3"), Some(12), Some(455)));
        assert!(se_lookup_json(1, 2, (4, 2)).is_err());
    }
}
