//! Structural facts about `H(F)`, `K(F)` and `G(F)`, checked one by one.

use serde::Serialize;

use super::ConstructionBundle;
use crate::error::Result;
use crate::group::Ambient;
use crate::verify::{is_camina_pair_fast, is_frobenius_kernel, spot_check_camina};

/// One entry per claim. `None` marks a claim that is vacuous or degenerate
/// for the field at hand (for GF(2) the unit group is trivial).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralReport {
    pub center_of_h_is_z: bool,
    pub derived_of_h_is_z: bool,
    pub h_over_z_camina: bool,
    pub k_over_z_camina: bool,
    /// `(a,b,c)` with `ab ≠ 0` is conjugate in `H` to all of `(a,b,c)Z`.
    pub coset_conjugacy: Option<bool>,
    pub t_frobenius_with_kernel_z: Option<bool>,
    pub b_units_frobenius_with_kernel_b: Option<bool>,
    pub k_not_frobenius_over_z: bool,
    pub units_centralizer_is_fixed_points: Option<bool>,
    pub commutator_with_units_is_b: Option<bool>,
    /// `O^p(K) = B F*` and `|K : O^p(K)| = p^n`.
    pub residual_is_b_units: Option<bool>,
    /// `O_p(G) = O_p(K) = H`.
    pub p_core_is_h: bool,
}

impl StructuralReport {
    /// Every applicable claim holds.
    pub fn all_pass(&self) -> bool {
        let opt = |v: Option<bool>| v.unwrap_or(true);
        self.center_of_h_is_z
            && self.derived_of_h_is_z
            && self.h_over_z_camina
            && self.k_over_z_camina
            && opt(self.coset_conjugacy)
            && opt(self.t_frobenius_with_kernel_z)
            && opt(self.b_units_frobenius_with_kernel_b)
            && self.k_not_frobenius_over_z
            && opt(self.units_centralizer_is_fixed_points)
            && opt(self.commutator_with_units_is_b)
            && opt(self.residual_is_b_units)
            && self.p_core_is_h
    }
}

const SPOT_CHECKS: usize = 16;
const COSET_CONJUGACY_MAX_Q: u32 = 27;

pub fn structural_checks(bundle: &ConstructionBundle) -> Result<StructuralReport> {
    let p = bundle.p();
    let f = bundle.field();
    let q = f.order();
    let amb = &bundle.ambient;
    let units_trivial = bundle.units.is_trivial();
    let applicable = |b: bool| (!units_trivial).then_some(b);

    let camina = |g, n| -> Result<bool> {
        Ok(is_camina_pair_fast(g, n)?.is_camina && spot_check_camina(g, n, SPOT_CHECKS, 0)?)
    };

    let coset_conjugacy = if q <= COSET_CONJUGACY_MAX_Q {
        let mut ok = true;
        for &x in bundle.h.elements() {
            let e = amb.decode(x);
            if e.a.is_zero() || e.b.is_zero() || !e.c.is_zero() {
                continue;
            }
            let orbit = bundle.h.conjugation_orbit(x);
            let coset: Vec<_> = {
                let mut v: Vec<_> = bundle.z.elements().iter().map(|&z| amb.mul(x, z)).collect();
                v.sort_unstable();
                v
            };
            if !coset.iter().all(|y| orbit.binary_search(y).is_ok()) {
                ok = false;
                break;
            }
        }
        Some(ok)
    } else {
        None
    };

    let t_frob = if units_trivial {
        None
    } else {
        Some(is_frobenius_kernel(&bundle.t, &bundle.z)?)
    };
    let bu_frob = if units_trivial {
        None
    } else {
        Some(is_frobenius_kernel(&bundle.b_units, &bundle.b)?)
    };

    let centralizer = bundle.h.centralizer_of(&bundle.units)?;
    let commutators = {
        let mut comms = Vec::new();
        for &h in bundle.h.generators() {
            for &u in bundle.units.generators() {
                comms.push(amb.commutator(h, u));
            }
        }
        bundle.k.normal_closure(&comms)?
    };

    let residual = bundle.k.residual_p(p)?;
    let p_to_n = (p as usize).pow(f.n());
    let residual_ok = residual == bundle.b_units && bundle.k.order() / residual.order() == p_to_n;

    let op_g = bundle.g.core_p(p)?;
    let op_k = bundle.k.core_p(p)?;

    Ok(StructuralReport {
        center_of_h_is_z: bundle.h.center()? == bundle.z,
        derived_of_h_is_z: bundle.h.derived_subgroup()? == bundle.z,
        h_over_z_camina: camina(&bundle.h, &bundle.z)?,
        k_over_z_camina: camina(&bundle.k, &bundle.z)?,
        coset_conjugacy,
        t_frobenius_with_kernel_z: t_frob,
        b_units_frobenius_with_kernel_b: bu_frob,
        k_not_frobenius_over_z: !is_frobenius_kernel(&bundle.k, &bundle.z)?,
        units_centralizer_is_fixed_points: applicable(centralizer == bundle.fixed_points),
        commutator_with_units_is_b: applicable(commutators == bundle.b),
        residual_is_b_units: applicable(residual_ok),
        p_core_is_h: op_g == bundle.h && op_k == bundle.h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_bundle;
    use crate::gf::FieldSpec;

    #[test]
    fn gf4_claims_hold() {
        let b = build_bundle(&FieldSpec::new(2, 2).unwrap()).unwrap();
        let r = structural_checks(&b).unwrap();
        assert!(r.all_pass(), "{r:?}");
        assert_eq!(r.t_frobenius_with_kernel_z, Some(true));
        assert_eq!(r.residual_is_b_units, Some(true));
    }

    #[test]
    fn gf2_marks_unit_claims_inapplicable() {
        let b = build_bundle(&FieldSpec::new(2, 1).unwrap()).unwrap();
        let r = structural_checks(&b).unwrap();
        assert!(r.all_pass(), "{r:?}");
        assert_eq!(r.t_frobenius_with_kernel_z, None);
        assert_eq!(r.commutator_with_units_is_b, None);
    }

    #[test]
    fn gf3_and_gf9_claims_hold() {
        for (p, n) in [(3, 1), (3, 2), (5, 1)] {
            let b = build_bundle(&FieldSpec::new(p, n).unwrap()).unwrap();
            let r = structural_checks(&b).unwrap();
            assert!(r.all_pass(), "({p},{n}): {r:?}");
        }
    }
}
