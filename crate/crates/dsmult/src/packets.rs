//! Tempered-packet linear algebra: two-group pairings, spectral transfer
//! factors for virtual characters, adjoint/inversion relations and spectral
//! coefficients.
//!
//! The component group is a vector space over the two-element field, stored
//! as bit patterns. Members carry base extensions of their Levi-packet
//! characters; all transfer-factor values live in the fourth cyclotomic
//! field so every identity is checked exactly.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::catalog::{parse_bits, RawAAction, RawPacket};
use crate::cyclotomic::Cyc;
use crate::error::{Error, Result};
use crate::exact::{det, mat_id, parse_q, RatMat, Q};

#[derive(Clone, Debug)]
pub struct PacketMember {
    pub label: String,
    pub component: String,
    pub base_char: u32,
}

#[derive(Clone, Debug)]
pub struct AAction {
    pub dim: usize,
    pub matrices: BTreeMap<u32, RatMat>,
}

/// A virtual-character triple: a packet member over the Levi and an element
/// of the quotient group, indexed by its bit pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VirtualCharacterIndex {
    pub member: usize,
    pub r: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralCoefficient {
    pub d_tau: String,
    pub r_centralizer_order: u64,
    pub value: String,
    #[serde(skip)]
    pub value_q: Q,
}

#[derive(Clone, Debug)]
pub struct PacketDatum {
    pub name: String,
    pub group: String,
    pub levi: String,
    dim: usize,
    e_elements: Vec<u32>,
    r_annihilator: Vec<u32>,
    r_reps: Vec<u32>,
    pub members: Vec<PacketMember>,
    rho: Vec<Cyc>,
    pub a_action: Option<AAction>,
    pairing_flip: Option<(u32, usize)>,
}

fn span(gens: &[u32], dim: usize) -> Vec<u32> {
    let mut set = vec![0u32];
    for &g in gens {
        let g = g & ((1u32 << dim) - 1);
        let current = set.clone();
        for x in current {
            let y = x ^ g;
            if !set.contains(&y) {
                set.push(y);
            }
        }
    }
    set.sort_unstable();
    set
}

pub fn build_packet_from_raw(raw: &RawPacket) -> Result<PacketDatum> {
    if raw.space_dim > 8 {
        return Err(Error::InvalidPacket(
            "component-group dimension too large".into(),
        ));
    }
    let dim = raw.space_dim;
    let size = 1u32 << dim;
    let gens: Result<Vec<u32>> = raw.e_subgroup.iter().map(|s| parse_bits(s)).collect();
    let e_elements = span(&gens?, dim);
    let r_order = (size as usize) / e_elements.len();

    // exact-sequence sizes: members biject with characters of the subgroup
    if raw.members.len() * r_order != size as usize {
        return Err(Error::InvalidPacket(format!(
            "{}: {} members with quotient order {} against group order {}",
            raw.name,
            raw.members.len(),
            r_order,
            size
        )));
    }
    let mut members = Vec::new();
    for m in &raw.members {
        members.push(PacketMember {
            label: m.label.clone(),
            component: m.component.clone(),
            base_char: parse_bits(&m.base_char)?,
        });
    }
    // restrictions to the subgroup must be pairwise distinct characters
    for i in 0..members.len() {
        for j in 0..i {
            let d = members[i].base_char ^ members[j].base_char;
            if e_elements.iter().all(|&e| (d & e).count_ones() % 2 == 0) {
                return Err(Error::InvalidPacket(format!(
                    "{}: members `{}` and `{}` restrict to the same character",
                    raw.name, members[i].label, members[j].label
                )));
            }
        }
    }
    let mut rho = vec![Cyc::zero(); size as usize];
    let mut seen = vec![false; size as usize];
    for r in &raw.rho {
        let s = parse_bits(&r.s)? as usize;
        if s >= size as usize {
            return Err(Error::InvalidPacket(format!(
                "{}: rho index out of range",
                raw.name
            )));
        }
        let v = r.value.to_cyc()?;
        if !v.mul(&v.conj()).eq(&Cyc::one()) {
            return Err(Error::InvalidPacket(format!(
                "{}: rho value at {s} is not unit modulus",
                raw.name
            )));
        }
        rho[s] = v;
        seen[s] = true;
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::InvalidPacket(format!(
            "{}: rho table incomplete",
            raw.name
        )));
    }

    // annihilator of the subgroup: the characters of the quotient
    let r_annihilator: Vec<u32> = (0..size)
        .filter(|&d| e_elements.iter().all(|&e| (d & e).count_ones() % 2 == 0))
        .collect();
    // canonical quotient representatives: minimal element of each coset
    let mut r_reps: Vec<u32> = Vec::new();
    for s in 0..size {
        let rep = e_elements.iter().map(|&e| s ^ e).min().unwrap();
        if rep == s {
            r_reps.push(s);
        }
    }

    let a_action = match &raw.a_action {
        None => None,
        Some(a) => Some(build_a_action(a)?),
    };

    Ok(PacketDatum {
        name: raw.name.clone(),
        group: raw.group.clone(),
        levi: raw.levi.clone(),
        dim,
        e_elements,
        r_annihilator,
        r_reps,
        members,
        rho,
        a_action,
        pairing_flip: None,
    })
}

fn build_a_action(raw: &RawAAction) -> Result<AAction> {
    let mut matrices = BTreeMap::new();
    for (k, rows) in &raw.matrices {
        let key = parse_bits(k)?;
        let mut m: RatMat = Vec::new();
        for r in rows {
            let row: Result<Vec<Q>> = r.iter().map(|s| parse_q(s)).collect();
            m.push(row?);
        }
        if m.len() != raw.dim || m.iter().any(|r| r.len() != raw.dim) {
            return Err(Error::Schema("split-component action matrix shape".into()));
        }
        matrices.insert(key, m);
    }
    Ok(AAction {
        dim: raw.dim,
        matrices,
    })
}

impl PacketDatum {
    pub fn space_size(&self) -> u32 {
        1u32 << self.dim
    }

    pub fn e_order(&self) -> u32 {
        self.e_elements.len() as u32
    }

    pub fn r_order(&self) -> u32 {
        self.space_size() / self.e_order()
    }

    pub fn r_reps(&self) -> &[u32] {
        &self.r_reps
    }

    fn r_rep(&self, s: u32) -> u32 {
        self.e_elements.iter().map(|&e| s ^ e).min().unwrap()
    }

    /// Whether a bit pattern names an element of the quotient group in
    /// canonical coordinates.
    pub fn is_r_element(&self, r: u32) -> bool {
        r < self.space_size() && self.r_rep(r) == r
    }

    /// The triples (member, quotient element) indexing virtual characters.
    pub fn tau_list(&self) -> Vec<VirtualCharacterIndex> {
        let mut out = Vec::new();
        for member in 0..self.members.len() {
            for &r in &self.r_reps {
                out.push(VirtualCharacterIndex { member, r });
            }
        }
        out
    }

    /// Sign pairing of a group element against a member's base extension.
    pub fn pairing_sign(&self, s: u32, member: usize) -> i32 {
        let mut sign = if (s & self.members[member].base_char).count_ones().is_multiple_of(2) {
            1
        } else {
            -1
        };
        if self.pairing_flip == Some((s, member)) {
            sign = -sign;
        }
        sign
    }

    /// Spectral transfer factor against a single member.
    pub fn delta_phi_pi(&self, s: u32, member: usize) -> Cyc {
        let v = self.rho[s as usize].clone();
        if self.pairing_sign(s, member) > 0 {
            v
        } else {
            v.neg()
        }
    }

    fn member_extension_sign(&self, member: usize, twist: u32, s: u32) -> i32 {
        let c = self.members[member].base_char ^ twist;
        let mut sign = if (s & c).count_ones().is_multiple_of(2) { 1 } else { -1 };
        if twist == 0 && self.pairing_flip == Some((s, member)) {
            sign = -sign;
        }
        sign
    }

    /// Transfer factor from a parameter twist to a virtual character: the
    /// normalized character sum over the quotient dual.
    pub fn delta_phi_tau(&self, s: u32, tau: VirtualCharacterIndex) -> Cyc {
        if tau.member >= self.members.len() || !self.is_r_element(tau.r) {
            return Cyc::zero();
        }
        let mut acc = Cyc::zero();
        for &d in &self.r_annihilator {
            let chi_r: i64 = if (d & tau.r).count_ones().is_multiple_of(2) {
                1
            } else {
                -1
            };
            let ext = self.member_extension_sign(tau.member, d, s) as i64;
            acc = acc.add(&Cyc::from_int(chi_r * ext));
        }
        let r_ord = Q::new(BigInt::one(), BigInt::from(self.r_annihilator.len() as i64));
        acc.scale(&r_ord).mul(&self.rho[s as usize])
    }

    /// Adjoint transfer factor from a virtual character to a parameter
    /// twist.
    pub fn delta_tau_phi(&self, tau: VirtualCharacterIndex, s: u32) -> Cyc {
        if tau.member >= self.members.len() || !self.is_r_element(tau.r) {
            return Cyc::zero();
        }
        let size = Q::new(BigInt::one(), BigInt::from(self.space_size() as i64));
        let mut acc = Cyc::zero();
        for &d in &self.r_annihilator {
            let chi_r: i64 = if (d & tau.r).count_ones().is_multiple_of(2) {
                1
            } else {
                -1
            };
            let ext = self.member_extension_sign(tau.member, d, s) as i64;
            let dpi = self.rho[s as usize].scale(&Q::from(BigInt::from(ext)));
            // inversion of the member factor carries 1/|S|
            acc = acc.add(&dpi.conj().scale(&size).scale(&Q::from(BigInt::from(chi_r))));
        }
        acc
    }

    /// Negative-control hook: flip one pairing sign.
    pub fn with_flipped_pairing(mut self, s: u32, member: usize) -> Self {
        self.pairing_flip = Some((s, member));
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AdjointReport {
    pub packet: String,
    pub parameter_identities: usize,
    pub character_identities: usize,
    pub scaling_identities: usize,
}

/// Both adjoint relations and the conjugation-scaling identity, exactly.
/// The two transfer matrices are materialized once and multiplied.
pub fn verify_adjoint_relations(packet: &PacketDatum) -> Result<AdjointReport> {
    let taus = packet.tau_list();
    let size = packet.space_size() as usize;
    let phi_tau: Vec<Vec<Cyc>> = (0..size)
        .map(|s| {
            taus.iter()
                .map(|&t| packet.delta_phi_tau(s as u32, t))
                .collect()
        })
        .collect();
    let tau_phi: Vec<Vec<Cyc>> = taus
        .iter()
        .map(|&t| {
            (0..size)
                .map(|s| packet.delta_tau_phi(t, s as u32))
                .collect()
        })
        .collect();

    let mut parameter_identities = 0usize;
    for s1 in 0..size {
        for s2 in 0..size {
            let mut acc = Cyc::zero();
            for ti in 0..taus.len() {
                acc = acc.add(&phi_tau[s1][ti].mul(&tau_phi[ti][s2]));
            }
            let want = if s1 == s2 { Cyc::one() } else { Cyc::zero() };
            if !acc.eq(&want) {
                return Err(Error::AdjointRelationFailure(format!(
                    "packet `{}`, twists ({s1},{s2})",
                    packet.name
                )));
            }
            parameter_identities += 1;
        }
    }
    let mut character_identities = 0usize;
    for (i, t1) in taus.iter().enumerate() {
        for (j, t2) in taus.iter().enumerate() {
            let mut acc = Cyc::zero();
            for s in 0..size {
                acc = acc.add(&tau_phi[i][s].mul(&phi_tau[s][j]));
            }
            let want = if i == j { Cyc::one() } else { Cyc::zero() };
            if !acc.eq(&want) {
                return Err(Error::AdjointRelationFailure(format!(
                    "packet `{}`, characters ({},{}) vs ({},{})",
                    packet.name, t1.member, t1.r, t2.member, t2.r
                )));
            }
            character_identities += 1;
        }
    }
    // scaling identity relating the two factors
    let ratio = Q::new(
        BigInt::from(packet.r_order() as i64),
        BigInt::from(packet.space_size() as i64),
    );
    let mut scaling_identities = 0usize;
    for (i, tau) in taus.iter().enumerate() {
        for s in 0..size {
            let rhs = phi_tau[s][i].conj().scale(&ratio);
            if !tau_phi[i][s].eq(&rhs) {
                return Err(Error::AdjointRelationFailure(format!(
                    "packet `{}`, scaling at ({}, {}, twist {s})",
                    packet.name, tau.member, tau.r
                )));
            }
            scaling_identities += 1;
        }
    }
    Ok(AdjointReport {
        packet: packet.name.clone(),
        parameter_identities,
        character_identities,
        scaling_identities,
    })
}

/// Spectral coefficient of a virtual character. In cuspidal mode this is
/// 1 / (|det(1 - r)| |R_{pi,r}|) on the split component; the general mode
/// averages the regular part of the coset against its signs.
pub fn spectral_coefficient(
    packet: &PacketDatum,
    tau: VirtualCharacterIndex,
    cuspidal: bool,
) -> Result<SpectralCoefficient> {
    if tau.member >= packet.members.len() || !packet.is_r_element(tau.r) {
        return Err(Error::InvalidPacket(
            "virtual character outside the packet".into(),
        ));
    }
    // the quotient group is abelian, so the centralizer is everything
    let r_centralizer_order = packet.r_order() as u64;
    let (adim, rmat) = match (&packet.a_action, tau.r) {
        (_, 0) => {
            let dim = packet.a_action.as_ref().map(|a| a.dim).unwrap_or(0);
            (dim, mat_id(dim))
        }
        (Some(a), r) => {
            let m = a
                .matrices
                .get(&r)
                .ok_or_else(|| {
                    Error::IncompleteCatalog(format!("split-component action of element {r}"))
                })?
                .clone();
            (a.dim, m)
        }
        (None, _) => {
            return Err(Error::IncompleteCatalog(
                "split-component action required for a nontrivial element".into(),
            ))
        }
    };
    let one_minus: RatMat = (0..adim)
        .map(|i| {
            (0..adim)
                .map(|j| {
                    let idm = if i == j { Q::one() } else { Q::zero() };
                    idm - rmat[i][j].clone()
                })
                .collect()
        })
        .collect();
    let d = det(&one_minus);
    if cuspidal {
        if d.is_zero() {
            return Err(Error::NotElliptic(
                "determinant of 1 - r vanishes on the split component".into(),
            ));
        }
        let d_abs = if d.is_negative() {
            -d.clone()
        } else {
            d.clone()
        };
        let value = Q::one() / (&d_abs * Q::from(BigInt::from(r_centralizer_order)));
        Ok(SpectralCoefficient {
            d_tau: crate::exact::format_q(&d_abs),
            r_centralizer_order,
            value: crate::exact::format_q(&value),
            value_q: value,
        })
    } else {
        // regular part of the coset of r; with a trivial inner Weyl group
        // this is the single element r when it is regular
        let mut total = Q::zero();
        if !d.is_zero() {
            let d_abs = if d.is_negative() {
                -d.clone()
            } else {
                d.clone()
            };
            total += Q::one() / d_abs;
        }
        let value = total / Q::from(BigInt::from(r_centralizer_order));
        let d_abs = if d.is_negative() { -d } else { d };
        Ok(SpectralCoefficient {
            d_tau: crate::exact::format_q(&d_abs),
            r_centralizer_order,
            value: crate::exact::format_q(&value),
            value_q: value,
        })
    }
}

// ---------------------------------------------------------------------------
// synthetic packets for randomized identity testing
// ---------------------------------------------------------------------------

/// Small deterministic generator (splitmix64), enough for test-case
/// synthesis without an external dependency.
pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        TestRng(seed)
    }
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }
    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n.max(1)
    }
}

/// A random packet over a two-group of dimension at most four: random
/// subgroup, random transversal of base extensions, random unit rho values.
pub fn random_packet(rng: &mut TestRng) -> PacketDatum {
    let dim = rng.below(5) as usize;
    let size = 1u32 << dim;
    let n_gens = rng.below(dim as u64 + 1) as usize;
    let gens: Vec<u32> = (0..n_gens)
        .map(|_| (rng.below(size as u64)) as u32)
        .collect();
    let e_elements = span(&gens, dim);
    let r_annihilator: Vec<u32> = (0..size)
        .filter(|&d| e_elements.iter().all(|&e| (d & e).count_ones() % 2 == 0))
        .collect();
    // one base extension per subgroup character: cosets of the annihilator
    let mut members = Vec::new();
    let mut seen_cosets: Vec<u32> = Vec::new();
    for c in 0..size {
        let rep = r_annihilator.iter().map(|&d| c ^ d).min().unwrap();
        if !seen_cosets.contains(&rep) {
            seen_cosets.push(rep);
            let twist = r_annihilator[rng.below(r_annihilator.len() as u64) as usize];
            members.push(PacketMember {
                label: format!("m{rep}"),
                component: "G0".into(),
                base_char: rep ^ twist,
            });
        }
    }
    let fourth = [Cyc::one(), Cyc::i(), Cyc::from_int(-1), Cyc::i().conj()];
    let rho: Vec<Cyc> = (0..size)
        .map(|_| fourth[rng.below(4) as usize].clone())
        .collect();
    let mut r_reps: Vec<u32> = Vec::new();
    for s in 0..size {
        let rep = e_elements.iter().map(|&e| s ^ e).min().unwrap();
        if rep == s {
            r_reps.push(s);
        }
    }
    PacketDatum {
        name: format!("synthetic-{dim}"),
        group: "synthetic".into(),
        levi: "G".into(),
        dim,
        e_elements,
        r_annihilator,
        r_reps,
        members,
        rho,
        a_action: None,
        pairing_flip: None,
    }
}
