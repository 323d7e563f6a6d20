//! Discrete-series character evaluation: the alternating Weyl sum on the
//! compact form, the averaged character on other maximal tori through the
//! positive-system pair table, continuous extensions at singular points,
//! and the stable averaged character over a class fiber.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::catalog::{FiberEntry, GroupEntry, LeviEntry, StableClass};
use crate::cbar::{cbar, CbarTable};
use crate::cyclotomic::Cyc;
use crate::error::{Error, Result};
use crate::exact::{mat_vec, q_to_f64, qi, vec_add, RatVec, Q};
use crate::packets::PacketDatum;
use crate::rootsys::{weyl_group, RootDatum, TorusPoint, WeylElement};
use crate::value::{Value, ValueRecord};

/// A Harish-Chandra pair: a regular weight vector together with a character
/// of the torus component group, subject to the catalog integrality rules.
#[derive(Clone, Debug)]
pub struct HCParameter<'a> {
    pub group: &'a GroupEntry,
    pub lambda: RatVec,
    pub zeta: String,
}

impl<'a> HCParameter<'a> {
    pub fn new(group: &'a GroupEntry, lambda: RatVec, zeta: &str) -> Result<Self> {
        let datum = &group.datum;
        if lambda.len() != datum.rank {
            return Err(Error::InvalidInput("weight vector has wrong rank".into()));
        }
        for (i, coroot) in datum.coroots.iter().enumerate() {
            if datum.pairing(&lambda, coroot).is_zero() {
                return Err(Error::RegularityRequired(format!(
                    "weight is singular against coroot {i}"
                )));
            }
        }
        for &si in &datum.simple_roots {
            let p = datum.pairing(&lambda, &datum.coroots[si]);
            if !p.denom().is_one() {
                return Err(Error::InvalidInput(format!(
                    "weight pairs non-integrally with simple coroot {si}"
                )));
            }
        }
        if !group
            .torus_components
            .characters
            .iter()
            .any(|(l, _)| l == zeta)
        {
            return Err(Error::BrokenReference(format!("torus character `{zeta}`")));
        }
        for rule in &group.zeta_rules {
            if rule.zeta == zeta {
                let si = datum.simple_roots[rule.coroot_index];
                let p = datum.pairing(&lambda, &datum.coroots[si]);
                let parity = p.numer() % num_bigint::BigInt::from(2);
                let want = num_bigint::BigInt::from(rule.parity as i64);
                if (parity.clone() + num_bigint::BigInt::from(2)) % num_bigint::BigInt::from(2)
                    != want
                {
                    return Err(Error::InvalidInput(format!(
                        "weight parity incompatible with torus character `{zeta}`"
                    )));
                }
            }
        }
        Ok(HCParameter {
            group,
            lambda,
            zeta: zeta.to_string(),
        })
    }

    /// Weight from fundamental-weight coefficients.
    pub fn from_fundamental(group: &'a GroupEntry, coeffs: &[Q], zeta: &str) -> Result<Self> {
        let datum = &group.datum;
        if coeffs.len() != datum.rank {
            return Err(Error::InvalidInput(
                "coefficient vector has wrong rank".into(),
            ));
        }
        let mut lambda = vec![Q::zero(); datum.rank];
        for (c, w) in coeffs.iter().zip(&datum.weight_lattice_basis) {
            lambda = vec_add(&lambda, &crate::exact::vec_scale(c, w));
        }
        HCParameter::new(group, lambda, zeta)
    }

    pub fn zeta_value(&self, z: &str) -> Result<Cyc> {
        self.group.torus_components.character_value(&self.zeta, z)
    }

    /// The assembly gate: the shifted weight must be strictly dominant, i.e.
    /// every simple-coroot pairing of lambda exceeds that of the half-sum.
    pub fn is_strongly_regular(&self) -> bool {
        let datum = &self.group.datum;
        let rho = datum.rho();
        datum.simple_roots.iter().all(|&si| {
            let lp = datum.pairing(&self.lambda, &datum.coroots[si]);
            let rp = datum.pairing(&rho, &datum.coroots[si]);
            lp > rp
        })
    }
}

/// Product of e^{a(H)/2} - e^{-a(H)/2} over the given roots.
fn half_difference_product(
    datum: &RootDatum,
    roots: &[usize],
    point: &TorusPoint,
) -> Result<Value> {
    let mut acc = Value::one();
    for &i in roots {
        let (p, re) = point.log_pairing(datum, &datum.roots[i]);
        let factor = if point.is_exact() {
            let h = &p / qi(2);
            Value::from_cyc(Cyc::half_turn(&h).sub(&Cyc::half_turn(&(-&h))))
        } else {
            let z = Complex64::new(re / 2.0, std::f64::consts::PI * q_to_f64(&p) / 2.0).exp();
            Value::from_complex(z - 1.0 / z)
        };
        if factor.is_zero() {
            return Err(Error::SingularPoint(format!("root {i} vanishes on point")));
        }
        acc = acc.mul(&factor);
    }
    Ok(acc)
}

/// |product of e^{a(H)/2} - e^{-a(H)/2}| over the given roots, exact at
/// torsion points.
pub fn abs_half_difference_product(
    datum: &RootDatum,
    roots: &[usize],
    point: &TorusPoint,
) -> Result<Value> {
    if point.is_exact() {
        let mut acc = Cyc::one();
        for &i in roots {
            let (p, _) = point.log_pairing(datum, &datum.roots[i]);
            let two = qi(2);
            let x = &p - (&p / &two).floor() * &two; // representative in [0, 2)
            if x.is_zero() {
                return Err(Error::SingularPoint(format!("root {i} vanishes on point")));
            }
            // 2 sin(pi x / 2) > 0 for x in (0, 2)
            let h = &x / qi(2);
            let diff = Cyc::half_turn(&h).sub(&Cyc::half_turn(&(-&h)));
            let factor = diff.mul(&Cyc::i().conj()); // -i * (2i sin) = 2 sin
            acc = acc.mul(&factor);
        }
        Ok(Value::from_cyc(acc))
    } else {
        let v = half_difference_product(datum, roots, point)?;
        Ok(Value::from_complex(Complex64::new(v.numeric.norm(), 0.0)))
    }
}

fn positive_of(datum: &RootDatum, subset: &[usize]) -> Vec<usize> {
    let std = datum.standard_positive();
    subset.iter().copied().filter(|i| std.contains(i)).collect()
}

/// Sign (-1)^{#{roots positive on H but negative for the reference system}}.
pub fn epsilon_r(
    datum: &RootDatum,
    real_roots: &[usize],
    real_positive_ref: &[usize],
    point: &TorusPoint,
) -> Result<i32> {
    let mut count = 0usize;
    for &i in real_roots {
        let s = point.real_sign(datum, i)?;
        if s > 0 && !real_positive_ref.contains(&i) {
            count += 1;
        }
    }
    Ok(if count.is_multiple_of(2) { 1 } else { -1 })
}

#[derive(Clone, Debug, Serialize)]
pub struct WeylSummand {
    pub word: Vec<usize>,
    pub sign: i32,
    pub cbar: i64,
    pub value: ValueRecord,
}

/// The character of the compact form at a regular point: the alternating
/// Weyl sum divided by the discriminant.
pub fn stable_ds_character(param: &HCParameter, gamma: &TorusPoint) -> Result<Value> {
    let datum = &param.group.datum;
    if !gamma.is_regular(datum) {
        return Err(Error::SingularPoint("character at a singular point".into()));
    }
    let group = weyl_group(datum);
    let mut num = Value::zero();
    for w in &group {
        let slam = mat_vec(&w.matrix, &param.lambda);
        let term = gamma.exp_pairing(datum, &slam);
        num = if w.sign > 0 {
            num.add(&term)
        } else {
            num.sub(&term)
        };
    }
    let den = half_difference_product(datum, &datum.standard_positive(), gamma)?;
    let zeta = Value::from_cyc(param.zeta_value(&gamma.z)?);
    num.div(&den).map(|v| v.mul(&zeta))
}

/// Averaged discrete-series character on the torus attached to a cuspidal
/// Levi, with full per-summand trace.
pub fn averaged_character_phim_traced(
    param: &HCParameter,
    levi_label: &str,
    gamma: &TorusPoint,
    table: Option<&CbarTable>,
) -> Result<(Value, Vec<WeylSummand>)> {
    let group = param.group;
    let datum = &group.datum;
    let levi = group.levi(levi_label)?;
    if !levi.cuspidal {
        return Ok((Value::zero(), vec![]));
    }
    if !gamma.in_elliptic_locus {
        return Ok((Value::zero(), vec![]));
    }
    if !gamma.is_regular(datum) {
        return Err(Error::SingularPoint(
            "averaged character at a singular point".into(),
        ));
    }

    let weyl = weyl_group(datum);
    let mut summands = Vec::with_capacity(weyl.len());
    let mut sum = Value::zero();

    if levi.real_roots.is_empty() {
        // no real roots: the pair table degenerates to the empty-system value
        for w in &weyl {
            let yslam = mat_vec(&levi.y, &mat_vec(&w.matrix, &param.lambda));
            let term = gamma.exp_pairing(datum, &yslam);
            let signed = if w.sign > 0 { term.clone() } else { term.neg() };
            sum = sum.add(&signed);
            summands.push(WeylSummand {
                word: w.word.clone(),
                sign: w.sign,
                cbar: 1,
                value: ValueRecord::from(&signed),
            });
        }
        let den = half_difference_product(datum, &positive_of(datum, &levi.m_roots), gamma)?;
        let zeta = Value::from_cyc(param.zeta_value(&gamma.z)?);
        return Ok((sum.div(&den)?.mul(&zeta), summands));
    }

    // real-root case: requires the full-system table
    if levi.real_roots.len() != datum.roots.len() {
        return Err(Error::IncompleteCatalog(
            "proper real subsystems are not present in the shipped catalog".into(),
        ));
    }
    let table = table.ok_or_else(|| {
        Error::IncompleteCatalog(format!("pair table required for Levi `{levi_label}`"))
    })?;
    if table.cartan_label != datum.cartan_type.label() {
        return Err(Error::DomainMismatch(format!(
            "table for {} used with {}",
            table.cartan_label,
            datum.cartan_type.label()
        )));
    }

    let r_plus_h: Vec<usize> = {
        let mut v = Vec::new();
        for &i in &levi.real_roots {
            if gamma.real_sign(datum, i)? > 0 {
                v.push(i);
            }
        }
        v
    };
    let eps = epsilon_r(datum, &levi.real_roots, &levi.real_positive, gamma)?;

    for w in &weyl {
        let yslam = mat_vec(&levi.y, &mat_vec(&w.matrix, &param.lambda));
        let qset: Vec<usize> = levi
            .real_roots
            .iter()
            .copied()
            .filter(|&i| datum.pairing(&yslam, &datum.coroots[i]).is_positive())
            .collect();
        let c = cbar(table, &qset, &r_plus_h)?;
        let term = gamma.exp_pairing(datum, &yslam).scale(&qi(c));
        let signed = if w.sign > 0 { term.clone() } else { term.neg() };
        sum = sum.add(&signed);
        summands.push(WeylSummand {
            word: w.word.clone(),
            sign: w.sign,
            cbar: c,
            value: ValueRecord::from(&signed),
        });
    }
    let den = half_difference_product(datum, &positive_of(datum, &levi.m_roots), gamma)?;
    let mut value = sum.div(&den)?;
    if eps < 0 {
        value = value.neg();
    }
    let zeta = Value::from_cyc(param.zeta_value(&gamma.z)?);
    Ok((value.mul(&zeta), summands))
}

pub fn averaged_character_phim(
    param: &HCParameter,
    levi_label: &str,
    gamma: &TorusPoint,
    table: Option<&CbarTable>,
) -> Result<Value> {
    averaged_character_phim_traced(param, levi_label, gamma, table).map(|(v, _)| v)
}

/// Weyl dimension: product of (lambda, a) / (rho, a) over positive roots.
pub fn weyl_dimension(datum: &RootDatum, lambda: &RatVec) -> Q {
    let rho = datum.rho();
    let mut acc = Q::one();
    for &i in &datum.standard_positive() {
        acc *= datum.pairing(lambda, &datum.roots[i]) / datum.pairing(&rho, &datum.roots[i]);
    }
    acc
}

fn is_central(datum: &RootDatum, point: &TorusPoint) -> bool {
    if !point.is_exact() {
        return false;
    }
    datum.roots.iter().all(|alpha| {
        let p = crate::exact::pair(&datum.form, alpha, &point.pi_coords);
        let two = qi(2);
        (&p - (&p / &two).floor() * &two).is_zero()
    })
}

/// Polynomial extrapolation of f(t) to t = 0 on nodes t0 / 2^k.
pub fn richardson_limit<F>(f: F, t0: f64, steps: usize) -> Result<Complex64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let mut ts = Vec::with_capacity(steps);
    let mut vals = Vec::with_capacity(steps);
    for k in 0..steps {
        let t = t0 / (1 << k) as f64;
        ts.push(t);
        vals.push(f(t)?);
    }
    // Neville's scheme toward t = 0
    let n = vals.len();
    let mut table = vals;
    for j in 1..n {
        for i in (j..n).rev() {
            let ti = ts[i];
            let tij = ts[i - j];
            let num = table[i] * tij - table[i - 1] * ti;
            table[i] = num / (tij - ti);
        }
    }
    Ok(table[n - 1])
}

/// Continuous extension of the averaged character at a singular elliptic
/// point. The central case has exact routes: the dimension polynomial when
/// the Levi is the whole group, and the chamber-directional limit of the
/// pair-table sum when the Levi is a torus. Other singular points fall back
/// to extrapolated numeric limits.
pub fn singular_character_limit(
    param: &HCParameter,
    gamma: &TorusPoint,
    levi_label: &str,
    table: Option<&CbarTable>,
) -> Result<Value> {
    let group = param.group;
    let datum = &group.datum;
    let levi = group.levi(levi_label)?;
    if gamma.is_regular(datum) {
        return Err(Error::InvalidInput(
            "point is regular; evaluate the character directly".into(),
        ));
    }
    if !gamma.in_elliptic_locus {
        return Err(Error::NotElliptic(
            "point flagged outside the elliptic locus".into(),
        ));
    }
    if !levi.cuspidal {
        return Ok(Value::zero());
    }
    let central = is_central(datum, gamma);

    if central && levi.real_roots.is_empty() && levi.m_roots.len() == datum.roots.len() {
        // whole-group Levi at a central point: character of the finite
        // dimensional representation
        let dim = weyl_dimension(datum, &param.lambda);
        let zeta = param.zeta_value(&gamma.z)?;
        return Ok(Value::from_cyc(zeta.scale(&dim)));
    }

    if central && levi.m_roots.is_empty() && levi.real_roots.len() == datum.roots.len() {
        // torus Levi at a central point: directional limit along the
        // reference chamber; the exponentials all tend to one
        let table = table.ok_or_else(|| {
            Error::IncompleteCatalog(format!("pair table required for Levi `{levi_label}`"))
        })?;
        let weyl = weyl_group(datum);
        let mut acc: i64 = 0;
        for w in &weyl {
            let yslam = mat_vec(&levi.y, &mat_vec(&w.matrix, &param.lambda));
            let qset: Vec<usize> = levi
                .real_roots
                .iter()
                .copied()
                .filter(|&i| datum.pairing(&yslam, &datum.coroots[i]).is_positive())
                .collect();
            let c = cbar(table, &qset, &levi.real_positive)?;
            acc += w.sign as i64 * c;
        }
        let zeta = param.zeta_value(&gamma.z)?;
        return Ok(Value::from_cyc(zeta.scale(&qi(acc))));
    }

    // generic fallback: extrapolate along the standard chamber direction
    let dir: Vec<f64> = {
        let binv = crate::exact::mat_inv(&datum.form).expect("invertible form");
        mat_vec(&binv, &vec![qi(1); datum.rank])
            .iter()
            .map(q_to_f64)
            .collect()
    };
    let f = |t: f64| -> Result<Complex64> {
        let mut pt = gamma.clone();
        pt.re_coords = pt
            .re_coords
            .iter()
            .zip(&dir)
            .map(|(r, d)| r + t * d)
            .collect();
        Ok(averaged_character_phim(param, levi_label, &pt, table)?.numeric)
    };
    Ok(Value::from_complex(richardson_limit(f, 0.25, 7)?))
}

// ---------------------------------------------------------------------------
// stable averaged character over a class fiber
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct Contribution {
    pub member: String,
    pub gamma_index: usize,
    pub transfer: ValueRecord,
    pub term: ValueRecord,
}

#[derive(Clone, Debug)]
pub struct StableCharacterValue {
    pub value: Value,
    pub contributions: Vec<Contribution>,
}

/// The packet-summed fiber density at one conjugacy class: the absolute
/// Levi discriminant times the signed averaged character, extended
/// continuously at singular points.
pub fn stable_fiber_density(
    param: &HCParameter,
    levi: &LeviEntry,
    gamma: &TorusPoint,
    table: Option<&CbarTable>,
) -> Result<Value> {
    let datum = &param.group.datum;
    let q_sign = if param.group.q.is_multiple_of(2) { 1 } else { -1 };
    let phi = if gamma.is_regular(datum) {
        let m_abs = abs_half_difference_product(datum, &positive_of(datum, &levi.m_roots), gamma)?;
        averaged_character_phim(param, &levi.label, gamma, table)?.mul(&m_abs)
    } else {
        singular_character_limit(param, gamma, &levi.label, table)?
    };
    Ok(if q_sign > 0 { phi } else { phi.neg() })
}

/// Twisted fiber density for a nontrivial spectral twist: the authored unit
/// factor times the matched endoscopic character and its conjugate.
fn twisted_fiber_density(
    param: &HCParameter,
    entry: &FiberEntry,
    s: u32,
    shifts: &BTreeMap<u32, RatVec>,
) -> Result<Option<Value>> {
    let Some(kappa) = entry.kappa.get(&s) else {
        return Ok(None);
    };
    let shift = shifts.get(&s).ok_or_else(|| {
        Error::IncompleteCatalog(format!("parameter shift for twist {s} missing"))
    })?;
    let datum = &param.group.datum;
    let mu_prime: RatVec = param.lambda.iter().zip(shift).map(|(l, m)| l - m).collect();
    let plus = entry.gamma.exp_pairing(datum, &mu_prime);
    let minus = entry
        .gamma
        .exp_pairing(datum, &crate::exact::vec_neg(&mu_prime));
    Ok(Some(plus.add(&minus).mul(&Value::from_cyc(kappa.clone()))))
}

/// The finite double sum over packet members and fiber classes defining the
/// stable averaged character of a stable class, with full provenance.
pub fn stable_averaged_sphi(
    param: &HCParameter,
    packet: &PacketDatum,
    levi: &LeviEntry,
    class: &StableClass,
    table: Option<&CbarTable>,
    shifts: &BTreeMap<u32, RatVec>,
) -> Result<StableCharacterValue> {
    let size = packet.space_size();
    let inv_size = Q::new(
        num_bigint::BigInt::one(),
        num_bigint::BigInt::from(size as i64),
    );
    let mut contributions = Vec::new();
    let mut total = Value::zero();
    for (gi, entry) in class.fiber.iter().enumerate() {
        if !entry.delta.mul(&entry.delta.conj()).eq(&Cyc::one()) {
            return Err(Error::IncompleteCatalog(format!(
                "transfer factor of `{}` fiber {gi} is not unit modulus",
                class.label
            )));
        }
        // base density and all authored twists at this class
        let base = stable_fiber_density(param, levi, &entry.gamma, table)?;
        let mut twisted: Vec<(u32, Value)> = Vec::new();
        for s in 1..size {
            if let Some(v) = twisted_fiber_density(param, entry, s, shifts)? {
                twisted.push((s, v));
            }
        }
        for (mi, member) in packet.members.iter().enumerate() {
            let mut psi = base.clone();
            for (s, v) in &twisted {
                let pairing = packet.pairing_sign(*s, mi);
                psi = if pairing > 0 { psi.add(v) } else { psi.sub(v) };
            }
            let psi = psi.scale(&inv_size);
            let term = psi.conj().mul(&Value::from_cyc(entry.delta.clone()));
            total = total.add(&term);
            contributions.push(Contribution {
                member: member.label.clone(),
                gamma_index: gi,
                transfer: ValueRecord::from(&Value::from_cyc(entry.delta.clone())),
                term: ValueRecord::from(&term),
            });
        }
    }
    Ok(StableCharacterValue {
        value: total,
        contributions,
    })
}

// ---------------------------------------------------------------------------
// Weyl integration residual on compact forms
// ---------------------------------------------------------------------------

/// Numeric alternating Weyl sum at the coordinate vector v (the numerator
/// of the character; no division, so singular grid points are harmless).
fn numeric_alternating_sum(
    datum: &RootDatum,
    weyl: &[WeylElement],
    lambda: &RatVec,
    v: &[f64],
) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for w in weyl {
        let slam = mat_vec(&w.matrix, lambda);
        // (slam, v) through the form, in floating point
        let mut p = 0.0;
        for (i, li) in slam.iter().enumerate() {
            for (j, fij) in datum.form[i].iter().enumerate() {
                p += q_to_f64(li) * q_to_f64(fij) * v[j];
            }
        }
        let z = Complex64::new(0.0, std::f64::consts::PI * p).exp();
        acc += if w.sign > 0 { z } else { -z };
    }
    acc
}

/// Both sides of the Weyl integral formula for the pairing of two
/// irreducible characters of a compact form: the orthogonality value against
/// trapezoidal torus quadrature. Returns the absolute residual.
///
/// `scale` multiplies the quadrature normalization; anything other than 1
/// is a deliberate mismatch for negative controls.
pub fn weyl_integration_check(
    group: &GroupEntry,
    lambda_pi: &RatVec,
    lambda_f: &RatVec,
    scale: f64,
    grid: usize,
) -> Result<f64> {
    if !group.is_compact() {
        return Err(Error::UnsupportedForQuadrature(group.name.clone()));
    }
    let datum = &group.datum;
    let weyl = weyl_group(datum);
    let exact: f64 = if crate::exact::vec_eq(lambda_pi, lambda_f) {
        1.0
    } else {
        0.0
    };

    let period = 4.0;
    let n = grid;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut point = vec![0.0; datum.rank];
    let total = n.pow(datum.rank as u32);
    for idx in 0..total {
        let mut rem = idx;
        for c in point.iter_mut() {
            *c = period * ((rem % n) as f64) / n as f64;
            rem /= n;
        }
        let a = numeric_alternating_sum(datum, &weyl, lambda_pi, &point);
        let b = numeric_alternating_sum(datum, &weyl, lambda_f, &point);
        acc += a * b.conj();
    }
    let quad = scale * (acc / total as f64).re / weyl.len() as f64;
    Ok((quad - exact).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;
    use crate::cbar::build_cbar_table;
    use crate::exact::q;

    fn catalog() -> Catalog {
        Catalog::shipped().unwrap()
    }

    fn su2_param(cat: &Catalog, n: i64) -> HCParameter<'_> {
        let group = cat.group("SU2").unwrap();
        let zeta = if n % 2 == 1 { "triv" } else { "sgn" };
        HCParameter::from_fundamental(group, &[q(n, 1)], zeta).unwrap()
    }

    #[test]
    fn trivial_representation_character_is_one() {
        let cat = catalog();
        let p = su2_param(&cat, 1);
        for t in [q(1, 3), q(2, 5), q(1, 7)] {
            let gamma = TorusPoint::exact("1", vec![t]);
            let v = stable_ds_character(&p, &gamma).unwrap();
            assert_eq!(v.to_rat().unwrap(), q(1, 1));
        }
    }

    #[test]
    fn sine_ratio_values() {
        let cat = catalog();
        // lambda = 2w at theta = pi/3: sin(2theta)/sin(theta) = 1
        let p = su2_param(&cat, 2);
        let gamma = TorusPoint::exact("1", vec![q(1, 3)]);
        let v = stable_ds_character(&p, &gamma).unwrap();
        assert_eq!(v.to_rat().unwrap(), q(1, 1));
        // lambda = 3w at theta = pi/2: sin(3theta)/sin(theta) = -1
        let p = su2_param(&cat, 3);
        let gamma = TorusPoint::exact("1", vec![q(1, 2)]);
        let v = stable_ds_character(&p, &gamma).unwrap();
        assert_eq!(v.to_rat().unwrap(), q(-1, 1));
    }

    #[test]
    fn dimension_at_central_points() {
        let cat = catalog();
        for n in [1i64, 4, 7] {
            let p = su2_param(&cat, n);
            let one = TorusPoint::exact("1", vec![q(0, 1)]);
            let v = singular_character_limit(&p, &one, "G", None).unwrap();
            assert_eq!(v.to_rat().unwrap(), q(n, 1));
            let minus = TorusPoint::exact("-1", vec![q(0, 1)]);
            let v = singular_character_limit(&p, &minus, "G", None).unwrap();
            // central character times dimension
            let sign = if n % 2 == 1 { 1 } else { -1 };
            assert_eq!(v.to_rat().unwrap(), q(sign * n, 1));
        }
    }

    #[test]
    fn singular_limit_rejects_regular_point() {
        let cat = catalog();
        let p = su2_param(&cat, 3);
        let gamma = TorusPoint::exact("1", vec![q(1, 2)]);
        assert!(singular_character_limit(&p, &gamma, "G", None).is_err());
    }

    #[test]
    fn split_torus_averaged_character_matches_closed_form() {
        // On the split torus the averaged character keeps only the decaying
        // exponential with coefficient two and the parity sign.
        let cat = catalog();
        let group = cat.group("SL2").unwrap();
        let table = build_cbar_table(&group.datum).unwrap();
        for k in [12i64, 16] {
            let n = k - 1;
            let p = HCParameter::from_fundamental(group, &[q(n, 1)], "triv").unwrap();
            for t in [0.35f64, 0.8, -0.6] {
                let gamma = TorusPoint::exact("1", vec![q(0, 1)]).with_real(vec![t]);
                let v = averaged_character_phim(&p, "T", &gamma, Some(&table)).unwrap();
                let expect = -2.0 * (-(n as f64) * t.abs()).exp();
                assert!(
                    (v.numeric.re - expect).abs() < 1e-9,
                    "k={k} t={t}: got {} want {expect}",
                    v.numeric.re
                );
                assert!(v.numeric.im.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn torus_levi_central_limit() {
        let cat = catalog();
        let group = cat.group("SL2").unwrap();
        let table = build_cbar_table(&group.datum).unwrap();
        let p = HCParameter::from_fundamental(group, &[q(11, 1)], "triv").unwrap();
        let one = TorusPoint::exact("1", vec![q(0, 1)]);
        let v = singular_character_limit(&p, &one, "T", Some(&table)).unwrap();
        assert_eq!(v.to_rat().unwrap(), q(-2, 1));
        // Richardson extrapolation along the split direction agrees
        let f = |t: f64| -> Result<Complex64> {
            let pt = TorusPoint::exact("1", vec![q(0, 1)]).with_real(vec![t]);
            Ok(averaged_character_phim(&p, "T", &pt, Some(&table))?.numeric)
        };
        let lim = richardson_limit(f, 0.25, 7).unwrap();
        assert!((lim.re + 2.0).abs() < 1e-6);
    }

    #[test]
    fn whole_group_path_matches_compact_character() {
        let cat = catalog();
        let group = cat.group("SU2").unwrap();
        let p = HCParameter::from_fundamental(group, &[q(5, 1)], "triv").unwrap();
        for t in [q(1, 5), q(3, 7)] {
            let gamma = TorusPoint::exact("1", vec![t]);
            let a = stable_ds_character(&p, &gamma).unwrap();
            let b = averaged_character_phim(&p, "G", &gamma, None).unwrap();
            assert!(a.exact.unwrap().eq(&b.exact.unwrap()));
        }
    }

    #[test]
    fn off_locus_points_vanish() {
        let cat = catalog();
        let group = cat.group("SL2").unwrap();
        let p = HCParameter::from_fundamental(group, &[q(11, 1)], "triv").unwrap();
        let mut gamma = TorusPoint::exact("1", vec![q(0, 1)]).with_real(vec![0.4]);
        gamma.in_elliptic_locus = false;
        let v = averaged_character_phim(&p, "T", &gamma, None).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn epsilon_sign_counts_flipped_roots() {
        let cat = catalog();
        let group = cat.group("SL2").unwrap();
        let levi = group.levi("T").unwrap();
        let plus = TorusPoint::exact("1", vec![q(0, 1)]).with_real(vec![0.5]);
        let minus = TorusPoint::exact("1", vec![q(0, 1)]).with_real(vec![-0.5]);
        assert_eq!(
            epsilon_r(&group.datum, &levi.real_roots, &levi.real_positive, &plus).unwrap(),
            1
        );
        assert_eq!(
            epsilon_r(&group.datum, &levi.real_roots, &levi.real_positive, &minus).unwrap(),
            -1
        );
        let singular = TorusPoint::exact("1", vec![q(0, 1)]);
        assert!(epsilon_r(
            &group.datum,
            &levi.real_roots,
            &levi.real_positive,
            &singular
        )
        .is_err());
    }

    #[test]
    fn quadrature_orthogonality() {
        let cat = catalog();
        let group = cat.group("SU2").unwrap();
        // trivial representation against itself: both sides equal one
        let lam = vec![q(1, 1)];
        let r = weyl_integration_check(group, &lam, &lam, 1.0, 64).unwrap();
        assert!(r < 1e-6, "residual {r}");
        // orthogonal pair: both sides vanish
        let lam2 = vec![q(3, 1)];
        let r = weyl_integration_check(group, &lam, &lam2, 1.0, 64).unwrap();
        assert!(r < 1e-6, "residual {r}");
        // corrupted normalization is detected
        let r = weyl_integration_check(group, &lam, &lam, 0.5, 64).unwrap();
        assert!(r > 0.1);
        // split entries are rejected
        let sl2 = cat.group("SL2").unwrap();
        assert!(matches!(
            weyl_integration_check(sl2, &lam, &lam, 1.0, 8),
            Err(Error::UnsupportedForQuadrature(_))
        ));
    }
}
