//! Assembly of the geometric expansion into single-representation
//! multiplicities and L2-Lefschetz totals.
//!
//! Every term is the product of an endoscopic coefficient, a sign and Weyl
//! quotient, a spectral coefficient block, the stable averaged character of
//! the class, and the authored global orbital package. Terms are itemized
//! with full provenance; totals are exact rationals whenever every input is
//! exact.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::catalog::{ArithDataset, Catalog, GroupEntry, StableClass};
use crate::cbar::{build_cbar_table, build_cbar_table_cached, CbarTable};
use crate::characters::{stable_averaged_sphi, stable_fiber_density, HCParameter};
use crate::cyclotomic::Cyc;
use crate::endoscopy::{
    iota, load_endo_group, stable_spectral_coefficient, EndoDatum, EndoGroupData, EndoLevi,
};
use crate::error::{Error, Result};
use crate::exact::{format_q, vec_neg, RatVec, Q};
use crate::packets::{build_packet_from_raw, PacketDatum};
use crate::rootsys::contains_minus_one;
use crate::value::{Value, ValueRecord};

pub const INTEGRALITY_TOL: f64 = 1e-6;
pub const ROUTE_TOL: f64 = 1e-9;

/// Everything needed to evaluate the expansion for one group at one level.
pub struct AssemblyContext<'a> {
    pub catalog: &'a Catalog,
    pub group: &'a GroupEntry,
    pub endo: EndoGroupData,
    pub packet: PacketDatum,
    pub cbar: Option<CbarTable>,
    pub dataset: &'a ArithDataset,
    pub shifts: BTreeMap<u32, RatVec>,
}

impl<'a> AssemblyContext<'a> {
    pub fn new(
        catalog: &'a Catalog,
        group_name: &str,
        level: &str,
        cache_dir: Option<&std::path::Path>,
    ) -> Result<Self> {
        let group = catalog.group(group_name)?;
        let endo = load_endo_group(catalog.endo_group(group_name)?, group.datum.rank)?;
        let raw_packet = catalog
            .raw_packets
            .packets
            .iter()
            .find(|p| p.group == group_name && p.levi == "G")
            .ok_or_else(|| {
                Error::IncompleteCatalog(format!("discrete-series packet for `{group_name}`"))
            })?;
        let packet = build_packet_from_raw(raw_packet)?;
        let cbar = if contains_minus_one(&group.datum) {
            Some(match cache_dir {
                Some(dir) => build_cbar_table_cached(&group.datum, dir)?,
                None => build_cbar_table(&group.datum)?,
            })
        } else {
            None
        };
        let dataset = catalog.dataset(group_name, level)?;
        let mut shifts = BTreeMap::new();
        for d in &endo.data {
            shifts.insert(d.s_element, d.mu_star.clone());
        }
        Ok(AssemblyContext {
            catalog,
            group,
            endo,
            packet,
            cbar,
            dataset,
            shifts,
        })
    }

    /// The Harish-Chandra parameter of the weight-k series on a rank-one
    /// entry: the (k-1)-multiple of the fundamental weight, paired with the
    /// compatible component character.
    pub fn param_for_weight(&self, k: i64) -> Result<HCParameter<'a>> {
        if self.group.datum.rank != 1 {
            return Err(Error::InvalidInput(
                "weight shorthand only applies to rank-one entries".into(),
            ));
        }
        let n = k - 1;
        if n < 1 {
            return Err(Error::RegularityRequired(format!(
                "weight {k} is below the range"
            )));
        }
        let parity = (n % 2).unsigned_abs() as u8;
        let zeta = self
            .group
            .zeta_rules
            .iter()
            .find(|r| r.parity == parity)
            .map(|r| r.zeta.clone())
            .unwrap_or_else(|| "triv".to_string());
        HCParameter::from_fundamental(self.group, &[crate::exact::qi(n)], &zeta)
    }

    pub fn member_index(&self, label: &str) -> Result<usize> {
        self.packet
            .members
            .iter()
            .position(|m| m.label == label)
            .ok_or_else(|| Error::BrokenReference(format!("packet member `{label}`")))
    }

    fn s_phi_prime_order(&self, datum: &EndoDatum) -> Result<u64> {
        if datum.torus {
            Ok(1)
        } else if datum.s_element == 0 {
            Ok(self.packet.space_size() as u64)
        } else {
            Err(Error::IncompleteCatalog(format!(
                "parameter-centralizer order for `{}`",
                datum.label
            )))
        }
    }

    /// Stable averaged character of a class on a torus endoscopic group:
    /// the conjugated shifted character summed over the fiber.
    fn torus_sphi(
        &self,
        param: &HCParameter,
        datum: &EndoDatum,
        class: &StableClass,
    ) -> Result<Value> {
        let mu_prime: RatVec = param
            .lambda
            .iter()
            .zip(&datum.mu_star)
            .map(|(l, m)| l - m)
            .collect();
        let mut acc = Value::zero();
        for entry in &class.fiber {
            let chi = entry.gamma.exp_pairing(&self.group.datum, &mu_prime);
            acc = acc.add(&chi.conj().mul(&Value::from_cyc(entry.delta.clone())));
        }
        Ok(acc)
    }

    /// Stable averaged character of a class relative to an endoscopic datum.
    pub fn class_sphi(
        &self,
        param: &HCParameter,
        datum: &EndoDatum,
        levi: &EndoLevi,
        class: &StableClass,
    ) -> Result<Value> {
        if datum.torus {
            self.torus_sphi(param, datum, class)
        } else {
            let group_levi = levi
                .levi_of_group
                .as_deref()
                .ok_or_else(|| {
                    Error::IncompleteCatalog(format!("group Levi behind `{}`", levi.label))
                })
                .and_then(|l| self.group.levi(l))?;
            Ok(stable_averaged_sphi(
                param,
                &self.packet,
                group_levi,
                class,
                self.cbar.as_ref(),
                &self.shifts,
            )?
            .value)
        }
    }
}

// ---------------------------------------------------------------------------
// reports
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct GeometricTerm {
    pub endo: String,
    pub levi: String,
    pub class: String,
    pub sign: i32,
    pub weyl_quotient: String,
    pub coefficient: ValueRecord,
    pub sphi: ValueRecord,
    pub orbital: ValueRecord,
    pub product: ValueRecord,
    #[serde(skip)]
    pub product_value: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub fingerprint: String,
    pub exact: bool,
    pub total: ValueRecord,
    pub terms: Vec<GeometricTerm>,
    #[serde(skip)]
    pub total_value: Value,
}

fn fingerprint(ctx: &AssemblyContext, param: &HCParameter, what: &str) -> String {
    let lam: Vec<String> = param.lambda.iter().map(format_q).collect();
    format!(
        "{}|{}|{}|{}|{}",
        what,
        ctx.group.name,
        ctx.dataset.label,
        lam.join(","),
        param.zeta
    )
}

/// The spectral coefficient block of one term: the reciprocal centralizer
/// order times the spectral transfer factor times the Levi Tamagawa number.
pub fn p_mu_factors(s_phi_prime_order: u64, delta_spec: &Cyc, tamagawa: &Q) -> Value {
    Value::from_cyc(delta_spec.clone())
        .scale(&stable_spectral_coefficient(s_phi_prime_order))
        .scale(tamagawa)
}

/// The coefficient block for a member against an endoscopic datum and one
/// of its Levi entries. Requires a strongly regular parameter.
pub fn p_mu(
    ctx: &AssemblyContext,
    param: &HCParameter,
    endo_label: &str,
    levi_label: &str,
    member_idx: usize,
) -> Result<Value> {
    if !param.is_strongly_regular() {
        return Err(Error::RegularityRequired(
            "the shifted highest weight must be strictly dominant".into(),
        ));
    }
    let datum = ctx.endo.datum(endo_label)?;
    let levi = ctx.endo.levi(levi_label)?;
    let delta_spec = ctx.packet.delta_phi_pi(datum.s_element, member_idx);
    Ok(p_mu_factors(ctx.s_phi_prime_order(datum)?, &delta_spec, &levi.tamagawa))
}

// ---------------------------------------------------------------------------
// transfer descriptor of a pseudo-coefficient
// ---------------------------------------------------------------------------

/// Image of a single-series pseudo-coefficient on an endoscopic group: a
/// stable cuspidal descriptor supported on one shifted parameter.
#[derive(Clone, Debug)]
pub struct StableCuspidalDescriptor {
    pub endo: String,
    pub member: String,
    pub weight: Cyc,
}

impl StableCuspidalDescriptor {
    /// Evaluate at a parameter: the transfer weight on the supported one,
    /// zero elsewhere.
    pub fn eval(&self, at_supported_parameter: bool) -> Cyc {
        if at_supported_parameter {
            self.weight.clone()
        } else {
            Cyc::zero()
        }
    }
}

pub fn pseudo_coefficient_transfer(
    ctx: &AssemblyContext,
    member_idx: usize,
    endo_label: &str,
) -> Result<StableCuspidalDescriptor> {
    if ctx.packet.levi != "G" {
        return Err(Error::NotDiscreteSeries(ctx.packet.name.clone()));
    }
    let datum = ctx.endo.datum(endo_label)?;
    let weight = ctx.packet.delta_phi_pi(datum.s_element, member_idx);
    Ok(StableCuspidalDescriptor {
        endo: endo_label.to_string(),
        member: ctx.packet.members[member_idx].label.clone(),
        weight,
    })
}

// ---------------------------------------------------------------------------
// the stable distribution by both routes
// ---------------------------------------------------------------------------

/// The stable distribution at a class against a stable cuspidal descriptor,
/// computed through the spectral route and re-derived through the geometric
/// route; the two must agree. Non-semisimple classes return exactly zero.
pub fn stable_distribution_sgm(
    ctx: &AssemblyContext,
    param: &HCParameter,
    class: &StableClass,
    descriptor: &StableCuspidalDescriptor,
) -> Result<Value> {
    if !class.semisimple {
        return Ok(Value::zero());
    }
    let datum = ctx.endo.datum(&class.endo)?;
    if datum.label != descriptor.endo {
        return Err(Error::InvalidInput(
            "descriptor and class belong to different endoscopic data".into(),
        ));
    }
    let levi = ctx.endo.levi(&class.levi)?;
    let sign_exp = levi.dim_a_quot as u32;
    let sgp = stable_spectral_coefficient(ctx.s_phi_prime_order(datum)?);
    let w = Value::from_cyc(descriptor.weight.clone());

    // spectral route
    let sphi = ctx.class_sphi(param, datum, levi, class)?;
    let mut route_a = sphi.scale(&sgp).mul(&w);
    if sign_exp % 2 == 1 {
        route_a = route_a.neg();
    }

    // geometric route: fiber sum of transfer factor, Levi discriminant,
    // density constant and the conjugated averaged character
    let density = if datum.torus {
        Value::one()
    } else {
        Value::from_cyc(ctx.group.route_b_density.clone().ok_or_else(|| {
            Error::IncompleteCatalog(format!("density constant for `{}`", ctx.group.name))
        })?)
    };
    let mut route_b = Value::zero();
    for entry in &class.fiber {
        let geom = if datum.torus {
            let mu_prime: RatVec = param
                .lambda
                .iter()
                .zip(&datum.mu_star)
                .map(|(l, m)| l - m)
                .collect();
            entry.gamma.exp_pairing(&ctx.group.datum, &mu_prime).conj()
        } else {
            let group_levi = levi
                .levi_of_group
                .as_deref()
                .ok_or_else(|| {
                    Error::IncompleteCatalog(format!("group Levi behind `{}`", levi.label))
                })
                .and_then(|l| ctx.group.levi(l))?;
            // |D^M|^{1/2} Phi_M with the continuous extension, conjugated;
            // the q-parity sign is carried by the density constant
            let q_sign = if ctx.group.q.is_multiple_of(2) { 1 } else { -1 };
            let dens = stable_fiber_density(param, group_levi, &entry.gamma, ctx.cbar.as_ref())?;
            let phi_part = if q_sign > 0 { dens } else { dens.neg() };
            phi_part.conj()
        };
        route_b = route_b.add(
            &geom
                .mul(&Value::from_cyc(entry.delta.clone()))
                .mul(&density),
        );
    }
    route_b = route_b.mul(&w);
    if sign_exp % 2 == 1 {
        route_b = route_b.neg();
    }

    if !route_a.approx_eq(&route_b, ROUTE_TOL) {
        return Err(Error::RouteMismatch(format!(
            "class `{}`: spectral {} against geometric {}",
            class.label,
            route_a.display(),
            route_b.display()
        )));
    }
    Ok(route_a)
}

// ---------------------------------------------------------------------------
// multiplicity and Lefschetz assembly
// ---------------------------------------------------------------------------

/// The fully itemized geometric expansion of the trace of a Hecke operator
/// on the isotypic subspace of one packet member.
pub fn tr_rdisc(
    ctx: &AssemblyContext,
    param: &HCParameter,
    member_idx: usize,
    hecke: Option<&BTreeMap<String, Q>>,
) -> Result<Report> {
    if !param.is_strongly_regular() {
        return Err(Error::RegularityRequired(
            "the shifted highest weight must be strictly dominant".into(),
        ));
    }
    let principal = ctx.endo.principal()?;
    let mut terms: Vec<GeometricTerm> = Vec::new();
    let mut total = Value::zero();
    for datum in &ctx.endo.data {
        let iota_coeff = iota(principal, datum);
        let sgp = stable_spectral_coefficient(ctx.s_phi_prime_order(datum)?);
        let delta_spec = ctx.packet.delta_phi_pi(datum.s_element, member_idx);
        let w_gprime = datum
            .levis
            .iter()
            .filter_map(|l| ctx.endo.levi(l).ok())
            .find(|l| l.dim_a_quot == 0)
            .map(|l| l.relative_weyl_order)
            .unwrap_or(1);
        for levi_label in &datum.levis {
            let levi = ctx.endo.levi(levi_label)?;
            for class in ctx
                .dataset
                .stable_classes
                .iter()
                .filter(|c| c.endo == datum.label && &c.levi == levi_label)
            {
                let sign = if levi.dim_a_quot % 2 == 0 { 1 } else { -1 };
                let weyl_q = Q::new(
                    BigInt::from(levi.relative_weyl_order),
                    BigInt::from(w_gprime),
                );
                let hecke_factor = hecke
                    .and_then(|h| h.get(&class.label))
                    .cloned()
                    .unwrap_or_else(Q::one);
                let orbital = Value::from_cyc(class.orbital.clone()).scale(&hecke_factor);
                let (coefficient, sphi, product) = if !class.semisimple {
                    // vanishing filter: unipotent-flagged classes are kept
                    // in the report with an exactly zero product
                    (Value::zero(), Value::zero(), Value::zero())
                } else {
                    let b = crate::endoscopy::stable_b_coefficient(levi, class)?;
                    let p_mu = Value::from_cyc(delta_spec.clone())
                        .scale(&sgp)
                        .scale(&b);
                    let sphi = ctx.class_sphi(param, datum, levi, class)?;
                    let mut product = p_mu
                        .mul(&sphi)
                        .mul(&orbital)
                        .scale(&iota_coeff)
                        .scale(&weyl_q);
                    if sign < 0 {
                        product = product.neg();
                    }
                    (p_mu, sphi, product)
                };
                total = total.add(&product);
                terms.push(GeometricTerm {
                    endo: datum.label.clone(),
                    levi: levi_label.clone(),
                    class: class.label.clone(),
                    sign,
                    weyl_quotient: format_q(&weyl_q),
                    coefficient: ValueRecord::from(&coefficient),
                    sphi: ValueRecord::from(&sphi),
                    orbital: ValueRecord::from(&orbital),
                    product: ValueRecord::from(&product),
                    product_value: product,
                });
            }
        }
    }
    let exact = total.is_exact();
    Ok(Report {
        fingerprint: format!(
            "{}|{}",
            fingerprint(ctx, param, "trace"),
            ctx.packet.members[member_idx].label
        ),
        exact,
        total: ValueRecord::from(&total),
        terms,
        total_value: total,
    })
}

/// Snap an assembled total to a non-negative integer, exactly when the
/// total is exact and within tolerance otherwise.
fn snap_integer(total: &Value) -> Result<i64> {
    if let Some(r) = total.to_rat() {
        if !r.denom().is_one() || r.is_negative() {
            return Err(Error::NonIntegralMultiplicity(format_q(&r)));
        }
        use num_traits::ToPrimitive;
        return r
            .numer()
            .to_i64()
            .ok_or_else(|| Error::NonIntegralMultiplicity(format_q(&r)));
    }
    if total.is_exact() {
        return Err(Error::NonIntegralMultiplicity(total.display()));
    }
    let re = total.numeric.re;
    let rounded = re.round();
    if (re - rounded).abs() > INTEGRALITY_TOL
        || total.numeric.im.abs() > INTEGRALITY_TOL
        || rounded < 0.0
    {
        return Err(Error::NonIntegralMultiplicity(total.display()));
    }
    Ok(rounded as i64)
}

/// Multiplicity of one packet member at the level of the context's dataset.
pub fn multiplicity(
    ctx: &AssemblyContext,
    param: &HCParameter,
    member_idx: usize,
) -> Result<(i64, Report)> {
    let report = tr_rdisc(ctx, param, member_idx, None)?;
    let m = snap_integer(&report.total_value)?;
    Ok((m, report))
}

#[derive(Clone, Debug, Serialize)]
pub struct CrosscheckReport {
    pub fingerprint: String,
    pub stable_total: ValueRecord,
    pub invariant_total: ValueRecord,
    pub members: Vec<String>,
}

/// The invariant-side expansion at the packet level, from the authored
/// per-class data, against the sum of stable per-member totals.
pub fn packet_sum_crosscheck(
    ctx: &AssemblyContext,
    param: &HCParameter,
) -> Result<CrosscheckReport> {
    let mut stable_total = Value::zero();
    let mut members = Vec::new();
    for m in 0..ctx.packet.members.len() {
        let r = tr_rdisc(ctx, param, m, None)?;
        stable_total = stable_total.add(&r.total_value);
        members.push(ctx.packet.members[m].label.clone());
    }

    let packet_size = crate::exact::qi(ctx.packet.members.len() as i64);
    let mut invariant_total = Value::zero();
    for class in &ctx.dataset.invariant_classes {
        let levi = ctx.group.levi(&class.levi)?;
        let weyl_q = Q::new(
            BigInt::from(levi.relative_weyl_order),
            BigInt::from(ctx.group.relative_weyl_order),
        );
        let density = stable_fiber_density(param, levi, &class.point, ctx.cbar.as_ref())?;
        let mut term = density
            .scale(&weyl_q)
            .scale(&packet_size)
            .mul(&Value::from_cyc(class.coeff.clone()));
        if levi.dim_a_quot % 2 == 1 {
            term = term.neg();
        }
        invariant_total = invariant_total.add(&term);
    }

    if !stable_total.approx_eq(&invariant_total, ROUTE_TOL) {
        return Err(Error::StabilizationInconsistency(format!(
            "stable {} against invariant {}",
            stable_total.display(),
            invariant_total.display()
        )));
    }
    Ok(CrosscheckReport {
        fingerprint: fingerprint(ctx, param, "crosscheck"),
        stable_total: ValueRecord::from(&stable_total),
        invariant_total: ValueRecord::from(&invariant_total),
        members,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LefschetzReport {
    pub fingerprint: String,
    pub exact: bool,
    pub total: ValueRecord,
    pub per_member_identity: ValueRecord,
    pub terms: Vec<GeometricTerm>,
    #[serde(skip)]
    pub total_value: Value,
}

/// The stable L2-Lefschetz total, with the per-member identity asserted:
/// the total must equal the signed sum of the member traces.
pub fn lefschetz(
    ctx: &AssemblyContext,
    param: &HCParameter,
    hecke: Option<&BTreeMap<String, Q>>,
) -> Result<LefschetzReport> {
    if !param.is_strongly_regular() {
        return Err(Error::RegularityRequired(
            "the shifted highest weight must be strictly dominant".into(),
        ));
    }
    let principal = ctx.endo.principal()?;
    let q_sign: i32 = if ctx.group.q.is_multiple_of(2) { 1 } else { -1 };
    let mut total = Value::zero();
    let mut terms = Vec::new();
    for datum in &ctx.endo.data {
        let iota_coeff = iota(principal, datum);
        let sgp = stable_spectral_coefficient(ctx.s_phi_prime_order(datum)?);
        // packet trace of the transfer: sum of member factors
        let mut packet_sum = Cyc::zero();
        for m in 0..ctx.packet.members.len() {
            packet_sum = packet_sum.add(&ctx.packet.delta_phi_pi(datum.s_element, m));
        }
        let w_gprime = datum
            .levis
            .iter()
            .filter_map(|l| ctx.endo.levi(l).ok())
            .find(|l| l.dim_a_quot == 0)
            .map(|l| l.relative_weyl_order)
            .unwrap_or(1);
        for levi_label in &datum.levis {
            let levi = ctx.endo.levi(levi_label)?;
            for class in ctx
                .dataset
                .stable_classes
                .iter()
                .filter(|c| c.endo == datum.label && &c.levi == levi_label)
            {
                let weyl_q = Q::new(
                    BigInt::from(levi.relative_weyl_order),
                    BigInt::from(w_gprime),
                );
                let hecke_factor = hecke
                    .and_then(|h| h.get(&class.label))
                    .cloned()
                    .unwrap_or_else(Q::one);
                let orbital = Value::from_cyc(class.orbital.clone()).scale(&hecke_factor);
                let sign_exp = levi.dim_a_quot as u32 + ctx.group.q;
                let sign = if sign_exp.is_multiple_of(2) { 1 } else { -1 };
                let (coeff, sphi, product) = if !class.semisimple {
                    (Value::zero(), Value::zero(), Value::zero())
                } else {
                    let b = crate::endoscopy::stable_b_coefficient(levi, class)?;
                    let mut f_mu = Value::from_cyc(packet_sum.clone()).scale(&sgp).scale(&b);
                    if sign < 0 {
                        f_mu = f_mu.neg();
                    }
                    let sphi = ctx.class_sphi(param, datum, levi, class)?;
                    let product = f_mu
                        .mul(&sphi)
                        .mul(&orbital)
                        .scale(&iota_coeff)
                        .scale(&weyl_q);
                    (f_mu, sphi, product)
                };
                total = total.add(&product);
                terms.push(GeometricTerm {
                    endo: datum.label.clone(),
                    levi: levi_label.clone(),
                    class: class.label.clone(),
                    sign,
                    weyl_quotient: format_q(&weyl_q),
                    coefficient: ValueRecord::from(&coeff),
                    sphi: ValueRecord::from(&sphi),
                    orbital: ValueRecord::from(&orbital),
                    product: ValueRecord::from(&product),
                    product_value: product,
                });
            }
        }
    }

    // identity against the per-member traces
    let mut member_sum = Value::zero();
    for m in 0..ctx.packet.members.len() {
        let r = tr_rdisc(ctx, param, m, hecke)?;
        member_sum = member_sum.add(&r.total_value);
    }
    let signed = if q_sign > 0 {
        member_sum.clone()
    } else {
        member_sum.neg()
    };
    if !total.approx_eq(&signed, ROUTE_TOL) {
        return Err(Error::LefschetzInconsistency(format!(
            "total {} against signed member sum {}",
            total.display(),
            signed.display()
        )));
    }
    let exact = total.is_exact();
    Ok(LefschetzReport {
        fingerprint: fingerprint(ctx, param, "lefschetz"),
        exact,
        total: ValueRecord::from(&total),
        per_member_identity: ValueRecord::from(&signed),
        terms,
        total_value: total,
    })
}

/// Lefschetz entry point by raw weight data: a parameter outside the
/// catalog's packet rules contributes an empty packet and a zero total.
pub fn lefschetz_checked(
    ctx: &AssemblyContext,
    k: i64,
    zeta: Option<&str>,
    hecke: Option<&BTreeMap<String, Q>>,
) -> Result<LefschetzReport> {
    let param = match zeta {
        None => ctx.param_for_weight(k),
        Some(z) => HCParameter::from_fundamental(ctx.group, &[crate::exact::qi(k - 1)], z),
    };
    match param {
        Ok(param) => lefschetz(ctx, &param, hecke),
        Err(Error::InvalidInput(_)) => Ok(LefschetzReport {
            fingerprint: format!("lefschetz|{}|empty-packet|{k}", ctx.group.name),
            exact: true,
            total: ValueRecord::from(&Value::zero()),
            per_member_identity: ValueRecord::from(&Value::zero()),
            terms: vec![],
            total_value: Value::zero(),
        }),
        Err(e) => Err(e),
    }
}

/// Weight vector negation helper for parameter conventions that index the
/// antiholomorphic member by the opposite weight.
pub fn opposite_lambda(lambda: &RatVec) -> RatVec {
    vec_neg(lambda)
}
