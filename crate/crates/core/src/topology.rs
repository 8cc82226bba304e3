//! Topological invariants of joins and the derived stability flags.

use serde::{Deserialize, Serialize};

use crate::admissible::{csc_rays, is_gorenstein};
use crate::arith::Rat;
use crate::ints;
use crate::join::{is_smooth, JoinSpec, SasakiSeed};
use crate::se::se_ray;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityFlags {
    /// Some CSC ray exists in the w-cone.
    pub k_semistable: Option<bool>,
    /// Gorenstein join over a KE base with an SE ray.
    #[serde(rename = "T_equivariant_K_stable")]
    pub t_equivariant_k_stable: Option<bool>,
}

/// Fields are absent when the seed lacks the data they depend on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologySummary {
    pub simply_connected: Option<bool>,
    pub pi2_rank: Option<u32>,
    pub h4_torsion_order: Option<u64>,
    pub cohomology_ring: Option<String>,
    pub spin: Option<bool>,
    pub stability_flags: StabilityFlags,
}

/// `w0 w_inf l0^2`
pub fn h4_torsion(j: &JoinSpec) -> Result<u64> {
    ints::mul_all(&[j.w0, j.w_inf, j.l0, j.l0], "h4 torsion")
}

fn superscript(n: u32) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string().chars().map(|c| DIGITS[c.to_digit(10).unwrap_or(0) as usize]).collect()
}

/// `Z[x,y]/(N x², x^{r+1}, x²y, y²)` for a join with an `S^{2r+1}` seed.
pub fn sphere_join_ring(torsion: u64, r: u32) -> String {
    format!("Z[x,y]/({torsion}x², x{}, x²y, y²)", superscript(r + 1))
}

pub fn topology_summary(seed: &SasakiSeed, j: &JoinSpec) -> Result<TopologySummary> {
    seed.validate()?;
    let simply_connected = (seed.simply_connected == Some(true)).then_some(true);
    let pi2_rank = match (simply_connected, seed.pi2_rank) {
        (Some(true), Some(k)) => Some(k + 1),
        _ => None,
    };
    let torsion = h4_torsion(j)?;
    let h4_torsion_order = (simply_connected.is_some() && seed.b3_zero == Some(true) && seed.d >= 2).then_some(torsion);
    let cohomology_ring = match seed.sphere_dim {
        Some(n) if n % 2 == 1 && n >= 5 && is_smooth(seed, j) => Some(sphere_join_ring(torsion, (n - 1) / 2)),
        _ => None,
    };
    let k_semistable = match seed.a {
        Some(_) => Some(!csc_rays(seed, j, &Rat::new(1.into(), 1_000_000.into()))?.is_empty()),
        None => None,
    };
    let t_equivariant_k_stable = if seed.fano_index.is_some() && j.w0 != j.w_inf {
        Some(is_gorenstein(seed, j) && se_ray(seed.d, j.w(), &Rat::new(1.into(), 1_000_000.into())).is_ok())
    } else {
        None
    };
    Ok(TopologySummary {
        simply_connected,
        pi2_rank,
        h4_torsion_order,
        cohomology_ring,
        spin: None,
        stability_flags: StabilityFlags { k_semistable, t_equivariant_k_stable },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::join::validate_join;

    #[test]
    fn s5_join_ring() {
        let seed = SasakiSeed::s5();
        let j = validate_join(&seed, (1, 13), (21, 5)).unwrap();
        let t = topology_summary(&seed, &j).unwrap();
        assert_eq!(t.h4_torsion_order, Some(105));
        assert_eq!(t.cohomology_ring.as_deref(), Some("Z[x,y]/(105x², x³, x²y, y²)"));
        assert_eq!(t.pi2_rank, Some(1));
        assert_eq!(t.simply_connected, Some(true));
    }

    #[test]
    fn torsion_and_flags() {
        let seed = SasakiSeed::s5();
        let j = validate_join(&seed, (2, 1), (3, 1)).unwrap();
        assert_eq!(topology_summary(&seed, &j).unwrap().h4_torsion_order, Some(12));
        let s3 = SasakiSeed::s3();
        let j = validate_join(&s3, (1, 13), (21, 5)).unwrap();
        let t = topology_summary(&s3, &j).unwrap();
        assert_eq!(t.h4_torsion_order, None);
        assert_eq!(t.cohomology_ring, None);
        assert_eq!(t.stability_flags, StabilityFlags { k_semistable: Some(true), t_equivariant_k_stable: Some(true) });
        let j = validate_join(&s3, (1, 1), (2, 1)).unwrap();
        assert_eq!(topology_summary(&s3, &j).unwrap().stability_flags.t_equivariant_k_stable, Some(false));
    }

    #[test]
    fn superscripts() {
        assert_eq!(sphere_join_ring(7, 10), "Z[x,y]/(7x², x¹¹, x²y, y²)");
    }
}
