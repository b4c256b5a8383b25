//! Selection of `M` and of the index-p candidates `H` over `GF(p^p)`.
//!
//! `M` is an index-p subgroup of `K` containing `O^p(K)` and normal in `G`.
//! `G/M` is elementary abelian of order `p²`, so the subgroups of index p of
//! `G` containing `M` are the `p + 1` preimages of its subgroups of order p.
//! One of them is `K`; the others are tested for the Camina property over
//! `Z`, p-closedness, p-length and (when tables are feasible) for a Gagola
//! character.

use rayon::prelude::*;
use serde::Serialize;

use super::{build_bundle, fingerprint, ConstructionBundle, GroupKind, SemidirectAmbient};
use crate::chars::{
    constituent_stabilizer, constituents, dixon_table_with, gagola_characters, gagola_consistency,
    induce, restrict, GagolaConsistency, TableLimits,
};
use crate::error::{Error, Result};
use crate::gf::{is_prime, FieldSpec};
use crate::group::{max_enumeration, Group};
use crate::verify::{is_camina_pair_fast, is_p_closed, spot_check_camina};

type G = Group<SemidirectAmbient>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CharsMode {
    /// Character computations whenever the groups are within the table caps.
    #[default]
    Auto,
    On,
    Off,
}

#[derive(Clone, Debug)]
pub struct PipelineOptions {
    pub chars: CharsMode,
    pub table_limits: TableLimits,
    /// Number of cosets sampled for the definitional Camina spot check.
    pub spot_checks: usize,
    pub seed: u64,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            chars: CharsMode::Auto,
            table_limits: TableLimits::default(),
            spot_checks: 32,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "degree", rename_all = "kebab-case")]
pub enum GagolaStatus {
    Degree(u64),
    None,
    SkippedScale,
    SkippedDisabled,
}

impl GagolaStatus {
    pub fn label(&self) -> String {
        match self {
            GagolaStatus::Degree(d) => d.to_string(),
            GagolaStatus::None => "none".into(),
            GagolaStatus::SkippedScale => "skipped: scale".into(),
            GagolaStatus::SkippedDisabled => "skipped: disabled".into(),
        }
    }
}

/// The common stabilizer `Stab` in `G` of the irreducible constituents of `θ_M`,
/// where `θ` is the Gagola character of `K`.
#[derive(Clone, Debug)]
pub struct StabilizerInfo {
    pub theta_degree: u64,
    pub constituent_degrees: Vec<u64>,
    pub group: G,
    pub normal_in_g: bool,
    /// Every constituent has the same stabilizer.
    pub independent_of_constituent: bool,
    /// `μ^K = θ` for every constituent `μ`.
    pub induces_to_theta: bool,
}

#[derive(Clone, Debug)]
pub struct Candidate {
    pub group: G,
    pub fingerprint: Vec<String>,
    pub is_k: bool,
    pub is_stabilizer: Option<bool>,
    /// `None` for `K`, which is not tested.
    pub camina: Option<bool>,
    pub spot_check: Option<bool>,
    pub p_closed: Option<bool>,
    pub p_length: Option<usize>,
    pub gagola: GagolaStatus,
    pub consistency: Option<GagolaConsistency>,
    pub success: bool,
}

#[derive(Clone, Debug)]
pub struct PipelineResult {
    pub p: u64,
    pub bundle: ConstructionBundle,
    pub m: G,
    pub m_fingerprint: Vec<String>,
    /// Number of index-p subgroups of `K` over `O^p(K)` that are normal in `G`.
    pub m_choices: usize,
    pub quotient_elementary_abelian: bool,
    pub stabilizer: Option<StabilizerInfo>,
    pub candidates: Vec<Candidate>,
}

impl PipelineResult {
    pub fn successes(&self) -> Vec<&Candidate> {
        self.candidates.iter().filter(|c| c.success).collect()
    }
}

pub fn theorem_pipeline(p: u32, options: &PipelineOptions) -> Result<PipelineResult> {
    if !is_prime(p as u64) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let order = GroupKind::G.order(p, p);
    let cap = max_enumeration() as u128;
    if order > cap {
        return Err(Error::Capacity(format!(
            "desk-scale limit: |G({p},{p})| = {order} exceeds the enumeration cap {cap}"
        )));
    }
    let field = FieldSpec::new(p, p)?;
    let bundle = build_bundle(&field)?;
    let pp = p as u64;

    let (m, m_choices) = choose_m(&bundle, pp)?;
    let m_fingerprint = fingerprint(&m)?;

    let qg = bundle.g.quotient(&m)?;
    let quotient_elementary_abelian =
        qg.order() as u64 == pp * pp && qg.group.is_elementary_abelian(pp);
    let lines = qg.group.subgroups_of_prime_order(pp)?;
    let mut groups: Vec<(Vec<String>, G)> = lines
        .iter()
        .map(|l| {
            let h = qg.preimage(l);
            Ok((fingerprint(&h)?, h))
        })
        .collect::<Result<_>>()?;
    groups.sort_by(|a, b| a.0.cmp(&b.0));
    if groups.len() != p as usize + 1 || groups.iter().filter(|(_, h)| *h == bundle.k).count() != 1 {
        return Err(Error::Internal(format!(
            "expected {} candidates with exactly one equal to K, found {}",
            p + 1,
            groups.len()
        )));
    }

    // over-cap groups surface as scale errors, reported as skipped in auto mode
    let tables_wanted = options.chars != CharsMode::Off;
    let stabilizer = if tables_wanted {
        match stabilizer_info(&bundle, &m, options) {
            Ok(s) => Some(s),
            Err(Error::Scale(_)) if options.chars == CharsMode::Auto => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };

    let candidates = groups
        .into_par_iter()
        .map(|(fp, h)| examine(&bundle, h, fp, tables_wanted, stabilizer.as_ref(), options))
        .collect::<Result<Vec<_>>>()?;

    Ok(PipelineResult {
        p: pp,
        bundle,
        m,
        m_fingerprint,
        m_choices,
        quotient_elementary_abelian,
        stabilizer,
        candidates,
    })
}

/// Least-fingerprint index-p subgroup of `K` over `O^p(K)` that is normal in `G`.
fn choose_m(bundle: &ConstructionBundle, p: u64) -> Result<(G, usize)> {
    let residual = bundle.k.residual_p(p)?;
    let q = bundle.k.quotient(&residual)?;
    let mut valid = Vec::new();
    for hyperplane in q.group.maximal_subgroups_elementary_abelian(p)? {
        let m = q.preimage(&hyperplane);
        if m.is_normal_in(&bundle.g)? {
            valid.push((fingerprint(&m)?, m));
        }
    }
    let count = valid.len();
    valid
        .into_iter()
        .min_by(|a, b| a.0.cmp(&b.0))
        .map(|(_, m)| (m, count))
        .ok_or_else(|| Error::Internal("no index-p subgroup of K over O^p(K) is normal in G".into()))
}

fn stabilizer_info(bundle: &ConstructionBundle, m: &G, options: &PipelineOptions) -> Result<StabilizerInfo> {
    let limits = options.table_limits;
    let tk = dixon_table_with(&bundle.k, limits)?;
    let gagola = gagola_characters(&bundle.k, &tk)?;
    let [report] = gagola.as_slice() else {
        return Err(Error::Internal(format!(
            "K has {} Gagola characters, expected one",
            gagola.len()
        )));
    };
    let theta = &report.values;
    let tm = dixon_table_with(m, limits)?;
    let theta_m = restrict(theta, &bundle.k, m)?;
    let parts = constituents(&theta_m, m, &tm)?;
    let mut stabs = Vec::new();
    let mut induces_to_theta = true;
    for &(i, _) in &parts {
        let mu = tm.character(i);
        stabs.push(constituent_stabilizer(&bundle.g, m, &mu)?);
        induces_to_theta &= induce(&mu, m, &bundle.k)?.lifted_to(theta.field()) == *theta;
    }
    let group = stabs[0].clone();
    Ok(StabilizerInfo {
        theta_degree: report.degree,
        constituent_degrees: parts.iter().map(|&(i, _)| tm.degrees()[i]).collect(),
        normal_in_g: group.is_normal_in(&bundle.g)?,
        independent_of_constituent: stabs.iter().all(|s| *s == group),
        induces_to_theta,
        group,
    })
}

fn examine(
    bundle: &ConstructionBundle,
    h: G,
    fingerprint: Vec<String>,
    tables_wanted: bool,
    stabilizer: Option<&StabilizerInfo>,
    options: &PipelineOptions,
) -> Result<Candidate> {
    let p = bundle.p();
    let is_stabilizer = stabilizer.map(|s| s.group == h);
    if h == bundle.k {
        return Ok(Candidate {
            group: h,
            fingerprint,
            is_k: true,
            is_stabilizer,
            camina: None,
            spot_check: None,
            p_closed: None,
            p_length: None,
            gagola: GagolaStatus::None,
            consistency: None,
            success: false,
        });
    }
    let camina = is_camina_pair_fast(&h, &bundle.z)?.is_camina;
    let spot_check = spot_check_camina(&h, &bundle.z, options.spot_checks, options.seed)?;
    let p_closed = is_p_closed(&h, p)?;
    let p_length = h.p_length(p)?;
    let (gagola, consistency) = if !tables_wanted {
        // name the scale reason when the table would be refused anyway
        if h.order() > options.table_limits.max_order {
            (GagolaStatus::SkippedScale, None)
        } else {
            (GagolaStatus::SkippedDisabled, None)
        }
    } else {
        match dixon_table_with(&h, options.table_limits) {
            Ok(table) => {
                let reports = gagola_characters(&h, &table)?;
                match reports.first() {
                    Some(r) => (GagolaStatus::Degree(r.degree), Some(gagola_consistency(&h, r, p)?)),
                    None => (GagolaStatus::None, None),
                }
            }
            Err(Error::Scale(_)) if options.chars == CharsMode::Auto => (GagolaStatus::SkippedScale, None),
            Err(e) => return Err(e),
        }
    };
    let gagola_ok = !matches!(gagola, GagolaStatus::None);
    let success = camina && spot_check && !p_closed && gagola_ok;
    Ok(Candidate {
        group: h,
        fingerprint,
        is_k: false,
        is_stabilizer,
        camina: Some(camina),
        spot_check: Some(spot_check),
        p_closed: Some(p_closed),
        p_length: Some(p_length),
        gagola,
        consistency,
        success,
    })
}
