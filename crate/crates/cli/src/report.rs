//! The machine-readable verification report and its text rendering.

use std::fmt::Write as _;

use camina_core::chars::GagolaConsistency;
use camina_core::constructions::{
    fingerprint, Candidate, GagolaStatus, GroupKind, PipelineResult, StructuralReport,
};
use camina_core::Result;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
    pub field: FieldInfo,
    pub orders: Orders,
    pub structural: Structural,
    pub m: MInfo,
    pub stabilizer: Option<Stabilizer>,
    pub candidates: Vec<CandidateRecord>,
    pub successes: usize,
    pub expected_successes: usize,
    /// Exactly `p - 1` candidates pass.
    pub success: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldInfo {
    pub p: u32,
    pub n: u32,
    pub modulus: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orders {
    pub h: u64,
    pub k: u64,
    pub g: u64,
}

/// Structural claims; `null` marks a claim that does not apply to the field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Structural {
    pub center_of_h_is_z: bool,
    pub derived_of_h_is_z: bool,
    pub h_over_z_camina: bool,
    pub k_over_z_camina: bool,
    pub coset_conjugacy: Option<bool>,
    pub t_frobenius_with_kernel_z: Option<bool>,
    pub b_units_frobenius_with_kernel_b: Option<bool>,
    pub k_not_frobenius_over_z: bool,
    pub units_centralizer_is_fixed_points: Option<bool>,
    pub commutator_with_units_is_b: Option<bool>,
    pub residual_is_b_units: Option<bool>,
    pub p_core_is_h: bool,
    pub all_pass: bool,
}

impl From<&StructuralReport> for Structural {
    fn from(r: &StructuralReport) -> Self {
        Structural {
            center_of_h_is_z: r.center_of_h_is_z,
            derived_of_h_is_z: r.derived_of_h_is_z,
            h_over_z_camina: r.h_over_z_camina,
            k_over_z_camina: r.k_over_z_camina,
            coset_conjugacy: r.coset_conjugacy,
            t_frobenius_with_kernel_z: r.t_frobenius_with_kernel_z,
            b_units_frobenius_with_kernel_b: r.b_units_frobenius_with_kernel_b,
            k_not_frobenius_over_z: r.k_not_frobenius_over_z,
            units_centralizer_is_fixed_points: r.units_centralizer_is_fixed_points,
            commutator_with_units_is_b: r.commutator_with_units_is_b,
            residual_is_b_units: r.residual_is_b_units,
            p_core_is_h: r.p_core_is_h,
            all_pass: r.all_pass(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MInfo {
    pub fingerprint: Vec<String>,
    pub order: u64,
    pub choices: usize,
    pub quotient_elementary_abelian: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stabilizer {
    pub theta_degree: u64,
    pub constituent_degrees: Vec<u64>,
    pub fingerprint: Vec<String>,
    pub order: u64,
    pub normal_in_g: bool,
    pub independent_of_constituent: bool,
    pub induces_to_theta: bool,
}

/// A Gagola degree, or the reason none was computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GagolaField {
    Degree(u64),
    Label(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Consistency {
    pub transitive_on_kernel: bool,
    pub transitive_on_linear_characters: bool,
    pub stabilizer_is_sylow: bool,
    pub order_identity: bool,
    pub ramification: Option<u64>,
    pub degree_identity: bool,
    pub vanishes_off_kernel: bool,
}

impl From<&GagolaConsistency> for Consistency {
    fn from(c: &GagolaConsistency) -> Self {
        Consistency {
            transitive_on_kernel: c.transitive_on_kernel,
            transitive_on_linear_characters: c.transitive_on_linear_characters,
            stabilizer_is_sylow: c.stabilizer_is_sylow,
            order_identity: c.order_identity,
            ramification: c.ramification,
            degree_identity: c.degree_identity,
            vanishes_off_kernel: c.vanishes_off_kernel,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateRecord {
    pub fingerprint: Vec<String>,
    pub order: u64,
    pub is_k: bool,
    pub is_stabilizer: Option<bool>,
    pub camina: Option<bool>,
    pub spot_check: Option<bool>,
    pub p_closed: Option<bool>,
    pub p_length: Option<usize>,
    pub gagola_degree: Option<GagolaField>,
    pub consistency: Option<Consistency>,
    pub verdict: String,
}

impl From<&Candidate> for CandidateRecord {
    fn from(c: &Candidate) -> Self {
        let gagola_degree = if c.is_k {
            None
        } else {
            Some(match &c.gagola {
                GagolaStatus::Degree(d) => GagolaField::Degree(*d),
                other => GagolaField::Label(other.label()),
            })
        };
        let verdict = if c.is_k {
            "skipped: K"
        } else if c.success {
            "pass"
        } else {
            "fail"
        };
        CandidateRecord {
            fingerprint: c.fingerprint.clone(),
            order: c.group.order() as u64,
            is_k: c.is_k,
            is_stabilizer: c.is_stabilizer,
            camina: c.camina,
            spot_check: c.spot_check,
            p_closed: c.p_closed,
            p_length: c.p_length,
            gagola_degree,
            consistency: c.consistency.as_ref().map(Consistency::from),
            verdict: verdict.into(),
        }
    }
}

impl ReportDocument {
    pub fn build(
        result: &PipelineResult,
        structural: &StructuralReport,
        timestamp: Option<String>,
    ) -> Result<Self> {
        let f = result.bundle.field();
        let (p, n) = (f.p(), f.n());
        let stabilizer = match &result.stabilizer {
            Some(s) => Some(Stabilizer {
                theta_degree: s.theta_degree,
                constituent_degrees: s.constituent_degrees.clone(),
                fingerprint: fingerprint(&s.group)?,
                order: s.group.order() as u64,
                normal_in_g: s.normal_in_g,
                independent_of_constituent: s.independent_of_constituent,
                induces_to_theta: s.induces_to_theta,
            }),
            None => None,
        };
        let candidates: Vec<CandidateRecord> =
            result.candidates.iter().map(CandidateRecord::from).collect();
        let successes = result.successes().len();
        let expected_successes = p as usize - 1;
        Ok(ReportDocument {
            tool_version: env!("CARGO_PKG_VERSION").into(),
            timestamp,
            field: FieldInfo {
                p,
                n,
                modulus: f.modulus_digits(),
            },
            orders: Orders {
                h: GroupKind::H.order(p, n) as u64,
                k: GroupKind::K.order(p, n) as u64,
                g: GroupKind::G.order(p, n) as u64,
            },
            structural: Structural::from(structural),
            m: MInfo {
                fingerprint: result.m_fingerprint.clone(),
                order: result.m.order() as u64,
                choices: result.m_choices,
                quotient_elementary_abelian: result.quotient_elementary_abelian,
            },
            stabilizer,
            candidates,
            successes,
            expected_successes,
            success: successes == expected_successes,
        })
    }

    /// Structural claims hold and exactly `p - 1` candidates pass.
    pub fn verified(&self) -> bool {
        self.structural.all_pass && self.success
    }

    /// Text rendering with the same facts as the JSON form.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let opt = |v: Option<bool>| match v {
            Some(b) => b.to_string(),
            None => "n/a".into(),
        };
        let w = &mut s;
        writeln!(w, "camina {}", self.tool_version).unwrap();
        if let Some(t) = &self.timestamp {
            writeln!(w, "timestamp: {t}").unwrap();
        }
        writeln!(
            w,
            "field: GF({}^{}) modulus {}",
            self.field.p, self.field.n, self.field.modulus
        )
        .unwrap();
        writeln!(
            w,
            "orders: |H| = {}, |K| = {}, |G| = {}",
            self.orders.h, self.orders.k, self.orders.g
        )
        .unwrap();
        let st = &self.structural;
        writeln!(w, "structural checks:").unwrap();
        let rows: [(&str, String); 12] = [
            ("center(H) = Z", st.center_of_h_is_z.to_string()),
            ("derived(H) = Z", st.derived_of_h_is_z.to_string()),
            ("(H, Z) Camina", st.h_over_z_camina.to_string()),
            ("(K, Z) Camina", st.k_over_z_camina.to_string()),
            ("ab != 0 conjugate to its Z-coset", opt(st.coset_conjugacy)),
            ("T Frobenius with kernel Z", opt(st.t_frobenius_with_kernel_z)),
            ("BF* Frobenius with kernel B", opt(st.b_units_frobenius_with_kernel_b)),
            ("(K, Z) not Frobenius", st.k_not_frobenius_over_z.to_string()),
            ("C_H(F*) = {(a,0,0)}", opt(st.units_centralizer_is_fixed_points)),
            ("[H, F*] = B", opt(st.commutator_with_units_is_b)),
            ("O^p(K) = BF* of index p^n", opt(st.residual_is_b_units)),
            ("O_p(G) = O_p(K) = H", st.p_core_is_h.to_string()),
        ];
        for (name, v) in rows {
            writeln!(w, "  {name}: {v}").unwrap();
        }
        writeln!(w, "  all pass: {}", st.all_pass).unwrap();
        writeln!(
            w,
            "M: order {}, {} choice(s), G/M elementary abelian of order p^2: {}",
            self.m.order, self.m.choices, self.m.quotient_elementary_abelian
        )
        .unwrap();
        writeln!(w, "  generators: {}", self.m.fingerprint.join(" ")).unwrap();
        match &self.stabilizer {
            Some(st) => {
                writeln!(
                    w,
                    "Stab: order {}, theta degree {}, constituent degrees {:?}",
                    st.order, st.theta_degree, st.constituent_degrees
                )
                .unwrap();
                writeln!(
                    w,
                    "  normal in G: {}, same for every constituent: {}, constituents induce to theta: {}",
                    st.normal_in_g, st.independent_of_constituent, st.induces_to_theta
                )
                .unwrap();
                writeln!(w, "  generators: {}", st.fingerprint.join(" ")).unwrap();
            }
            None => writeln!(w, "Stab: not computed").unwrap(),
        }
        for (i, c) in self.candidates.iter().enumerate() {
            writeln!(w, "candidate {i}: {}", c.verdict).unwrap();
            writeln!(w, "  order: {}, is K: {}", c.order, c.is_k).unwrap();
            writeln!(w, "  generators: {}", c.fingerprint.join(" ")).unwrap();
            if let Some(b) = c.is_stabilizer {
                writeln!(w, "  equals Stab: {b}").unwrap();
            }
            if !c.is_k {
                writeln!(
                    w,
                    "  camina: {}, spot check: {}, p-closed: {}, p-length: {}",
                    opt(c.camina),
                    opt(c.spot_check),
                    opt(c.p_closed),
                    c.p_length.map_or("n/a".into(), |l| l.to_string())
                )
                .unwrap();
            }
            if let Some(g) = &c.gagola_degree {
                let label = match g {
                    GagolaField::Degree(d) => d.to_string(),
                    GagolaField::Label(l) => l.clone(),
                };
                writeln!(w, "  gagola degree: {label}").unwrap();
            }
            if let Some(k) = &c.consistency {
                writeln!(
                    w,
                    "  consistency: transitive on N: {}, transitive on Irr(N): {}, stabilizer Sylow: {}, order identity: {}, e: {}, degree identity: {}, vanishes off N: {}",
                    k.transitive_on_kernel,
                    k.transitive_on_linear_characters,
                    k.stabilizer_is_sylow,
                    k.order_identity,
                    k.ramification.map_or("n/a".into(), |e| e.to_string()),
                    k.degree_identity,
                    k.vanishes_off_kernel
                )
                .unwrap();
            }
        }
        writeln!(
            w,
            "successes: {} of {} expected; success: {}",
            self.successes, self.expected_successes, self.success
        )
        .unwrap();
        s
    }
}
