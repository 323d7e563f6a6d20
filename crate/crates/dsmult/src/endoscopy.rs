//! Endoscopic data as validated numeric invariants, and the closed-form
//! coefficient arithmetic built on them.
//!
//! Dual groups and Galois actions are collapsed to the orders and Tamagawa
//! numbers the assembled formulas actually consume; the entries are
//! authored, cross-validated, and never derived.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::catalog::{parse_bits, EndoDoc, RawEndoDatum, RawEndoGroup, StableClass};
use crate::error::{Error, Result};
use crate::exact::{format_q, parse_q, RatVec, Q};

#[derive(Clone, Debug)]
pub struct EndoDatum {
    pub label: String,
    pub quasi_split: bool,
    pub torus: bool,
    pub tamagawa: Q,
    pub out_group_order: u64,
    pub z_dual_center_order: u64,
    pub pi0_z_dual_order: u64,
    pub ker1_order: u64,
    pub levis: Vec<String>,
    pub mu_star: RatVec,
    pub lambda_star: RatVec,
    pub s_element: u32,
}

#[derive(Clone, Debug)]
pub struct EndoLevi {
    pub label: String,
    pub tamagawa: Q,
    pub dim_a_quot: usize,
    pub relative_weyl_order: u64,
    pub levi_of_group: Option<String>,
}

#[derive(Clone, Debug)]
pub struct EndoGroupData {
    pub group: String,
    pub data: Vec<EndoDatum>,
    pub levis: Vec<EndoLevi>,
    pub linked_pairs: Vec<(String, String, u64)>,
}

fn build_datum(raw: &RawEndoDatum) -> Result<EndoDatum> {
    let tamagawa = parse_q(&raw.tamagawa)?;
    if !tamagawa.is_positive() {
        return Err(Error::Schema(format!(
            "datum `{}` has non-positive Tamagawa number",
            raw.label
        )));
    }
    if raw.out_order == 0 {
        return Err(Error::Schema(format!(
            "datum `{}` has zero outer-group order",
            raw.label
        )));
    }
    // Tamagawa validator from the authored dual-center invariants.
    let expect = Q::new(
        BigInt::from(raw.pi0_z_dual_order),
        BigInt::from(raw.ker1_order),
    );
    if expect != tamagawa {
        return Err(Error::Schema(format!(
            "datum `{}`: Tamagawa number {} does not match pi0/ker1 = {}",
            raw.label,
            format_q(&tamagawa),
            format_q(&expect)
        )));
    }
    let mu_star: Result<RatVec> = raw
        .parameter_shift
        .mu_star
        .iter()
        .map(|s| parse_q(s))
        .collect();
    let lambda_star: Result<RatVec> = raw
        .parameter_shift
        .lambda_star
        .iter()
        .map(|s| parse_q(s))
        .collect();
    let mu_star = mu_star?;
    let lambda_star = lambda_star?;
    if mu_star.len() != lambda_star.len() {
        return Err(Error::Schema(format!(
            "datum `{}`: parameter shift components disagree in rank",
            raw.label
        )));
    }
    Ok(EndoDatum {
        label: raw.label.clone(),
        quasi_split: raw.quasi_split,
        torus: raw.torus,
        tamagawa,
        out_group_order: raw.out_order,
        z_dual_center_order: raw.z_dual_center_order,
        pi0_z_dual_order: raw.pi0_z_dual_order,
        ker1_order: raw.ker1_order,
        levis: raw.levis.clone(),
        mu_star,
        lambda_star,
        s_element: parse_bits(&raw.s_element)?,
    })
}

/// Load and validate the endoscopic data of one group, resolving the Levi
/// references.
pub fn load_endo_group(raw: &RawEndoGroup, rank: usize) -> Result<EndoGroupData> {
    let mut data = Vec::new();
    for d in &raw.data {
        let built = build_datum(d)?;
        if built.mu_star.len() != rank {
            return Err(Error::Schema(format!(
                "datum `{}`: parameter shift rank {} against group rank {rank}",
                built.label,
                built.mu_star.len()
            )));
        }
        data.push(built);
    }
    let mut levis = Vec::new();
    for l in &raw.levi_data {
        let tamagawa = parse_q(&l.tamagawa)?;
        if !tamagawa.is_positive() {
            return Err(Error::Schema(format!(
                "endoscopic Levi `{}` has non-positive Tamagawa number",
                l.label
            )));
        }
        levis.push(EndoLevi {
            label: l.label.clone(),
            tamagawa,
            dim_a_quot: l.dim_a_quot,
            relative_weyl_order: l.relative_weyl_order,
            levi_of_group: l.levi_of_group.clone(),
        });
    }
    for d in &data {
        for lv in &d.levis {
            if !levis.iter().any(|x| &x.label == lv) {
                return Err(Error::BrokenReference(format!(
                    "endoscopic Levi `{lv}` of `{}`",
                    d.label
                )));
            }
        }
    }
    Ok(EndoGroupData {
        group: raw.group.clone(),
        data,
        levis,
        linked_pairs: raw
            .linked_pairs
            .iter()
            .map(|p| (p.g_packet.clone(), p.gprime.clone(), p.s_phi_prime_order))
            .collect(),
    })
}

/// Schema-level validation of a whole document.
pub fn validate_endo_doc(doc: &EndoDoc) -> Result<()> {
    for g in &doc.groups {
        // rank cannot be resolved without the group catalog; validate the
        // internal consistency with the shift rank itself
        let rank = g
            .data
            .first()
            .map(|d| d.parameter_shift.mu_star.len())
            .unwrap_or(1);
        load_endo_group(g, rank)?;
    }
    Ok(())
}

impl EndoGroupData {
    pub fn datum(&self, label: &str) -> Result<&EndoDatum> {
        self.data
            .iter()
            .find(|d| d.label == label)
            .ok_or_else(|| Error::BrokenReference(format!("endoscopic datum `{label}`")))
    }

    pub fn levi(&self, label: &str) -> Result<&EndoLevi> {
        self.levis
            .iter()
            .find(|l| l.label == label)
            .ok_or_else(|| Error::BrokenReference(format!("endoscopic Levi `{label}`")))
    }

    /// The datum realizing the group itself.
    pub fn principal(&self) -> Result<&EndoDatum> {
        self.data
            .iter()
            .find(|d| d.s_element == 0)
            .ok_or_else(|| Error::IncompleteCatalog("principal endoscopic datum".into()))
    }

    pub fn datum_by_s(&self, s: u32) -> Option<&EndoDatum> {
        self.data.iter().find(|d| d.s_element == s)
    }
}

/// The global coefficient: Tamagawa ratio over the outer-group order.
pub fn iota(g: &EndoDatum, gprime: &EndoDatum) -> Q {
    &g.tamagawa / &gprime.tamagawa / Q::from(BigInt::from(gprime.out_group_order))
}

/// The stable spectral coefficient: reciprocal of the parameter-centralizer
/// order.
pub fn stable_spectral_coefficient(s_phi_prime_order: u64) -> Q {
    Q::new(BigInt::one(), BigInt::from(s_phi_prime_order.max(1)))
}

#[derive(Clone, Debug, Serialize)]
pub struct CoefficientBundle {
    pub iota: String,
    pub s_phi_prime_order: u64,
    pub stable_b: String,
}

/// Bundle recomputed from raw fields on every call; nothing derived is
/// stored.
pub fn coefficient_bundle(
    g: &EndoDatum,
    gprime: &EndoDatum,
    s_phi_prime_order: u64,
    levi: &EndoLevi,
) -> CoefficientBundle {
    CoefficientBundle {
        iota: format_q(&iota(g, gprime)),
        s_phi_prime_order,
        stable_b: format_q(&levi.tamagawa),
    }
}

/// The elliptic coefficient relation between centralizer orders and dual
/// center orders.
pub fn check_coefficient_relation(
    g: &EndoDatum,
    gprime: &EndoDatum,
    s_phi_order: u64,
    s_phi_prime_order: u64,
) -> Result<()> {
    let lhs = Q::new(BigInt::from(s_phi_order), BigInt::from(s_phi_prime_order));
    let rhs = Q::new(
        BigInt::from(gprime.z_dual_center_order),
        BigInt::from(g.z_dual_center_order),
    );
    if lhs != rhs {
        return Err(Error::CoefficientRelationFailure(format!(
            "{}/{} against {}/{} for `{}` inside `{}`",
            s_phi_order,
            s_phi_prime_order,
            gprime.z_dual_center_order,
            g.z_dual_center_order,
            gprime.label,
            g.label
        )));
    }
    Ok(())
}

/// The stable class coefficient: the Tamagawa number of the Levi for
/// semisimple elliptic classes, zero off the elliptic set, and an error on
/// unipotent-flagged input.
pub fn stable_b_coefficient(levi: &EndoLevi, class: &StableClass) -> Result<Q> {
    if class.unipotent || !class.semisimple {
        return Err(Error::RequiresSemisimple(class.label.clone()));
    }
    if !class.elliptic {
        return Ok(Q::zero());
    }
    Ok(levi.tamagawa.clone())
}
