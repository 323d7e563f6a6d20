//! Structured-text catalogs: group entries, tempered packets, endoscopic
//! data and arithmetic (orbital/volume) packages.
//!
//! Every document is JSON with an explicit `schema` field. Raw serde
//! structures mirror the files; `Catalog::build` resolves references and
//! validates invariants, producing the runtime types the computation
//! modules consume. Serialization of raw documents is deterministic, so
//! canonicalized files round-trip byte-for-byte.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::Cyc;
use crate::error::{Error, Result};
use crate::exact::{parse_q, RatMat, RatVec, Q};
use crate::rootsys::{build_root_datum, RootDatum, TorusPoint};

pub const GROUPS_SCHEMA: &str = "rootsys/1";
pub const PACKETS_SCHEMA: &str = "packets/1";
pub const ENDO_SCHEMA: &str = "endo/1";
pub const ARITH_SCHEMA: &str = "arith/1";

// ---------------------------------------------------------------------------
// exact value specifications
// ---------------------------------------------------------------------------

/// Product-form exact value: (rat) * sqrt(sqrt) * e^{2 pi i rot}.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct ExactSpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rat: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sqrt: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rot: Option<String>,
}

impl ExactSpec {
    pub fn to_cyc(&self) -> Result<Cyc> {
        let mut v = match &self.rat {
            Some(s) => Cyc::from_rat(parse_q(s)?),
            None => Cyc::one(),
        };
        if let Some(d) = self.sqrt {
            v = v.mul(&Cyc::sqrt_int(d)?);
        }
        if let Some(r) = &self.rot {
            v = v.mul(&Cyc::root_of_unity(&parse_q(r)?));
        }
        Ok(v)
    }
}

// ---------------------------------------------------------------------------
// group catalog (schema rootsys/1)
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupsDoc {
    pub schema: String,
    pub groups: Vec<RawGroup>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawGroup {
    pub name: String,
    pub cartan_type: String,
    pub real_form: String,
    pub q: u32,
    pub relative_weyl_order: u64,
    pub torus_component_group: RawComponentGroup,
    pub center_labels: Vec<String>,
    #[serde(default)]
    pub components: Vec<String>,
    #[serde(default)]
    pub zeta_rules: Vec<RawZetaRule>,
    pub levis: Vec<RawLevi>,
    #[serde(default)]
    pub endo: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub route_b_density: Option<ExactSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measure_note: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawComponentGroup {
    pub elements: Vec<String>,
    pub characters: Vec<RawCharacter>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawCharacter {
    pub label: String,
    pub values: Vec<ExactSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawZetaRule {
    pub zeta: String,
    pub coroot_index: usize,
    pub parity: u8,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawRootSet {
    Keyword(String),
    Indices(Vec<usize>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawLevi {
    pub label: String,
    pub cuspidal: bool,
    pub m_roots: RawRootSet,
    pub real_roots: RawRootSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub real_positive: Option<RawRootSet>,
    pub dim_a_quot: usize,
    pub relative_weyl_order: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<Vec<Vec<String>>>,
}

/// Finite component group of the torus with its character table.
#[derive(Clone, Debug)]
pub struct ComponentGroup {
    pub elements: Vec<String>,
    pub characters: Vec<(String, Vec<Cyc>)>,
}

impl ComponentGroup {
    pub fn element_index(&self, label: &str) -> Result<usize> {
        self.elements
            .iter()
            .position(|e| e == label)
            .ok_or_else(|| Error::BrokenReference(format!("torus component `{label}`")))
    }

    pub fn character_value(&self, zeta: &str, element: &str) -> Result<Cyc> {
        let idx = self.element_index(element)?;
        let row = self
            .characters
            .iter()
            .find(|(l, _)| l == zeta)
            .ok_or_else(|| Error::BrokenReference(format!("torus character `{zeta}`")))?;
        Ok(row.1[idx].clone())
    }
}

#[derive(Clone, Debug)]
pub struct LeviEntry {
    pub label: String,
    pub cuspidal: bool,
    pub m_roots: Vec<usize>,
    pub real_roots: Vec<usize>,
    pub real_positive: Vec<usize>,
    pub dim_a_quot: usize,
    pub relative_weyl_order: u64,
    pub y: RatMat,
}

#[derive(Clone, Debug)]
pub struct GroupEntry {
    pub name: String,
    pub datum: RootDatum,
    pub real_form: String,
    pub q: u32,
    pub relative_weyl_order: u64,
    pub torus_components: ComponentGroup,
    pub center_labels: Vec<String>,
    pub components: Vec<String>,
    pub zeta_rules: Vec<RawZetaRule>,
    pub levis: Vec<LeviEntry>,
    pub endo: Vec<String>,
    /// Combined volume/normalization constant used by the geometric route of
    /// the stable distribution; one per group, pinned by the level-one
    /// integrality checks.
    pub route_b_density: Option<Cyc>,
}

impl GroupEntry {
    pub fn levi(&self, label: &str) -> Result<&LeviEntry> {
        self.levis
            .iter()
            .find(|l| l.label == label)
            .ok_or_else(|| Error::UnknownLevi(label.to_string()))
    }

    pub fn is_compact(&self) -> bool {
        self.real_form == "compact"
    }
}

fn resolve_root_set(set: &RawRootSet, datum: &RootDatum, what: &str) -> Result<Vec<usize>> {
    match set {
        RawRootSet::Keyword(k) if k == "all" => Ok((0..datum.roots.len()).collect()),
        RawRootSet::Keyword(k) if k == "none" => Ok(vec![]),
        RawRootSet::Keyword(k) if k == "std" => Ok(datum.standard_positive()),
        RawRootSet::Keyword(k) => Err(Error::Schema(format!(
            "unknown root-set keyword `{k}` in {what}"
        ))),
        RawRootSet::Indices(v) => {
            for &i in v {
                if i >= datum.roots.len() {
                    return Err(Error::Schema(format!(
                        "root index {i} out of range in {what}"
                    )));
                }
            }
            Ok(v.clone())
        }
    }
}

fn build_group(raw: &RawGroup) -> Result<GroupEntry> {
    let datum = build_root_datum(&raw.cartan_type)?;
    let rank = datum.rank;
    let n_elem = raw.torus_component_group.elements.len();
    let mut characters = Vec::new();
    for ch in &raw.torus_component_group.characters {
        if ch.values.len() != n_elem {
            return Err(Error::Schema(format!(
                "character `{}` of `{}` has {} values for {} elements",
                ch.label,
                raw.name,
                ch.values.len(),
                n_elem
            )));
        }
        let vals: Result<Vec<Cyc>> = ch.values.iter().map(|v| v.to_cyc()).collect();
        characters.push((ch.label.clone(), vals?));
    }
    let mut levis = Vec::new();
    for lv in &raw.levis {
        let m_roots = resolve_root_set(&lv.m_roots, &datum, &lv.label)?;
        let real_roots = resolve_root_set(&lv.real_roots, &datum, &lv.label)?;
        let real_positive = match &lv.real_positive {
            Some(set) => resolve_root_set(set, &datum, &lv.label)?,
            None => datum
                .standard_positive()
                .into_iter()
                .filter(|i| real_roots.contains(i))
                .collect(),
        };
        let y = match &lv.y {
            None => crate::exact::mat_id(rank),
            Some(rows) => {
                let mut m: RatMat = Vec::new();
                for r in rows {
                    let row: Result<RatVec> = r.iter().map(|s| parse_q(s)).collect();
                    m.push(row?);
                }
                if m.len() != rank || m.iter().any(|r| r.len() != rank) {
                    return Err(Error::Schema(format!("y matrix shape in `{}`", lv.label)));
                }
                m
            }
        };
        levis.push(LeviEntry {
            label: lv.label.clone(),
            cuspidal: lv.cuspidal,
            m_roots,
            real_roots,
            real_positive,
            dim_a_quot: lv.dim_a_quot,
            relative_weyl_order: lv.relative_weyl_order,
            y,
        });
    }
    let route_b_density = match &raw.route_b_density {
        Some(s) => Some(s.to_cyc()?),
        None => None,
    };
    Ok(GroupEntry {
        name: raw.name.clone(),
        datum,
        real_form: raw.real_form.clone(),
        q: raw.q,
        relative_weyl_order: raw.relative_weyl_order,
        torus_components: ComponentGroup {
            elements: raw.torus_component_group.elements.clone(),
            characters,
        },
        center_labels: raw.center_labels.clone(),
        components: if raw.components.is_empty() {
            vec!["G0".to_string()]
        } else {
            raw.components.clone()
        },
        zeta_rules: raw.zeta_rules.clone(),
        levis,
        endo: raw.endo.clone(),
        route_b_density,
    })
}

// ---------------------------------------------------------------------------
// packet catalog (schema packets/1)
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PacketsDoc {
    pub schema: String,
    pub packets: Vec<RawPacket>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawPacket {
    pub name: String,
    pub group: String,
    pub space_dim: usize,
    pub e_subgroup: Vec<String>,
    pub levi: String,
    pub members: Vec<RawMember>,
    pub rho: Vec<RawRho>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_action: Option<RawAAction>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawMember {
    pub label: String,
    pub component: String,
    pub base_char: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawRho {
    pub s: String,
    pub value: ExactSpec,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawAAction {
    pub dim: usize,
    /// Matrix of each nontrivial quotient-group element on a_M / a_G,
    /// keyed by its bit pattern.
    pub matrices: BTreeMap<String, Vec<Vec<String>>>,
}

// ---------------------------------------------------------------------------
// endoscopic catalog (schema endo/1)
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EndoDoc {
    pub schema: String,
    pub groups: Vec<RawEndoGroup>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawEndoGroup {
    pub group: String,
    pub data: Vec<RawEndoDatum>,
    pub levi_data: Vec<RawEndoLevi>,
    #[serde(default)]
    pub linked_pairs: Vec<RawLinkedPair>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawEndoDatum {
    pub label: String,
    pub quasi_split: bool,
    pub torus: bool,
    pub tamagawa: String,
    pub out_order: u64,
    pub z_dual_center_order: u64,
    pub pi0_z_dual_order: u64,
    pub ker1_order: u64,
    pub levis: Vec<String>,
    pub parameter_shift: RawShift,
    /// Element of the packet two-group realizing this datum on the spectral
    /// side; bit pattern in the packet space.
    pub s_element: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawShift {
    pub mu_star: Vec<String>,
    pub lambda_star: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawEndoLevi {
    pub label: String,
    pub tamagawa: String,
    pub dim_a_quot: usize,
    pub relative_weyl_order: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub levi_of_group: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawLinkedPair {
    pub g_packet: String,
    pub gprime: String,
    pub s_phi_prime_order: u64,
}

// ---------------------------------------------------------------------------
// arithmetic catalog (schema arith/1)
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArithDoc {
    pub schema: String,
    pub datasets: Vec<RawDataset>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawDataset {
    pub label: String,
    pub group: String,
    pub level: String,
    pub stable_classes: Vec<RawStableClass>,
    pub invariant_classes: Vec<RawInvariantClass>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawStableClass {
    pub label: String,
    pub endo: String,
    pub levi: String,
    pub semisimple: bool,
    pub elliptic: bool,
    pub unipotent: bool,
    #[serde(default)]
    pub z: String,
    #[serde(default)]
    pub theta: Vec<String>,
    #[serde(default)]
    pub fiber: Vec<RawFiberEntry>,
    pub orbital: ExactSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawFiberEntry {
    pub z: String,
    pub theta: Vec<String>,
    pub delta: ExactSpec,
    /// Unit factors for the nontrivial spectral twists, keyed by bit
    /// pattern; absent entries are zero contributions.
    #[serde(default)]
    pub kappa: BTreeMap<String, ExactSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawInvariantClass {
    pub label: String,
    pub levi: String,
    pub z: String,
    pub theta: Vec<String>,
    pub coeff: ExactSpec,
}

/// A stable semisimple class with its archimedean fiber and global package.
#[derive(Clone, Debug)]
pub struct StableClass {
    pub label: String,
    pub endo: String,
    pub levi: String,
    pub semisimple: bool,
    pub elliptic: bool,
    pub unipotent: bool,
    pub point: TorusPoint,
    pub fiber: Vec<FiberEntry>,
    pub orbital: Cyc,
    pub note: Option<String>,
}

#[derive(Clone, Debug)]
pub struct FiberEntry {
    pub gamma: TorusPoint,
    pub delta: Cyc,
    pub kappa: BTreeMap<u32, Cyc>,
}

#[derive(Clone, Debug)]
pub struct InvariantClass {
    pub label: String,
    pub levi: String,
    pub point: TorusPoint,
    pub coeff: Cyc,
}

#[derive(Clone, Debug)]
pub struct ArithDataset {
    pub label: String,
    pub group: String,
    pub level: String,
    pub stable_classes: Vec<StableClass>,
    pub invariant_classes: Vec<InvariantClass>,
}

pub fn parse_bits(s: &str) -> Result<u32> {
    let mut v = 0u32;
    for (i, c) in s.chars().enumerate() {
        match c {
            '0' => {}
            '1' => v |= 1 << i,
            _ => return Err(Error::Schema(format!("bad bit pattern `{s}`"))),
        }
    }
    Ok(v)
}

fn torus_point(z: &str, theta: &[String], rank: usize) -> Result<TorusPoint> {
    let mut coords: RatVec = Vec::new();
    for t in theta {
        coords.push(parse_q(t)?);
    }
    if coords.is_empty() {
        coords = vec![Q::from(num_bigint::BigInt::from(0)); rank];
    }
    if coords.len() != rank {
        return Err(Error::Schema(format!(
            "torus point rank mismatch for `{z}`"
        )));
    }
    Ok(TorusPoint::exact(z, coords))
}

fn build_dataset(raw: &RawDataset, groups: &[GroupEntry]) -> Result<ArithDataset> {
    let group = groups.iter().find(|g| g.name == raw.group).ok_or_else(|| {
        Error::BrokenReference(format!("group `{}` in dataset `{}`", raw.group, raw.label))
    })?;
    let rank = group.datum.rank;
    let mut stable_classes = Vec::new();
    for c in &raw.stable_classes {
        if !c.semisimple && !c.unipotent {
            return Err(Error::Schema(format!(
                "class `{}` must be semisimple or flagged unipotent",
                c.label
            )));
        }
        if c.semisimple && !c.elliptic {
            return Err(Error::Schema(format!(
                "class `{}` is semisimple but not elliptic; rejected at load",
                c.label
            )));
        }
        let point = torus_point(&c.z, &c.theta, rank)?;
        let mut fiber = Vec::new();
        for f in &c.fiber {
            let mut kappa = BTreeMap::new();
            for (k, v) in &f.kappa {
                kappa.insert(parse_bits(k)?, v.to_cyc()?);
            }
            fiber.push(FiberEntry {
                gamma: torus_point(&f.z, &f.theta, rank)?,
                delta: f.delta.to_cyc()?,
                kappa,
            });
        }
        stable_classes.push(StableClass {
            label: c.label.clone(),
            endo: c.endo.clone(),
            levi: c.levi.clone(),
            semisimple: c.semisimple,
            elliptic: c.elliptic,
            unipotent: c.unipotent,
            point,
            fiber,
            orbital: c.orbital.to_cyc()?,
            note: c.note.clone(),
        });
    }
    let mut invariant_classes = Vec::new();
    for c in &raw.invariant_classes {
        invariant_classes.push(InvariantClass {
            label: c.label.clone(),
            levi: c.levi.clone(),
            point: torus_point(&c.z, &c.theta, rank)?,
            coeff: c.coeff.to_cyc()?,
        });
    }
    Ok(ArithDataset {
        label: raw.label.clone(),
        group: raw.group.clone(),
        level: raw.level.clone(),
        stable_classes,
        invariant_classes,
    })
}

// ---------------------------------------------------------------------------
// assembled catalog
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct Catalog {
    pub groups: Vec<GroupEntry>,
    pub raw_groups: GroupsDoc,
    pub raw_packets: PacketsDoc,
    pub raw_endo: EndoDoc,
    pub raw_arith: ArithDoc,
    pub datasets: Vec<ArithDataset>,
}

pub const SHIPPED_GROUPS: &str = include_str!("../catalogs/groups.json");
pub const SHIPPED_PACKETS: &str = include_str!("../catalogs/packets.json");
pub const SHIPPED_ENDO: &str = include_str!("../catalogs/endo.json");
pub const SHIPPED_ARITH: &str = include_str!("../catalogs/arith.json");

fn check_schema(found: &str, want: &str) -> Result<()> {
    if found != want {
        return Err(Error::Schema(format!(
            "schema `{found}`, expected `{want}`"
        )));
    }
    Ok(())
}

impl Catalog {
    pub fn from_strs(groups: &str, packets: &str, endo: &str, arith: &str) -> Result<Catalog> {
        let raw_groups: GroupsDoc = serde_json::from_str(groups)?;
        check_schema(&raw_groups.schema, GROUPS_SCHEMA)?;
        let raw_packets: PacketsDoc = serde_json::from_str(packets)?;
        check_schema(&raw_packets.schema, PACKETS_SCHEMA)?;
        let raw_endo: EndoDoc = serde_json::from_str(endo)?;
        check_schema(&raw_endo.schema, ENDO_SCHEMA)?;
        let raw_arith: ArithDoc = serde_json::from_str(arith)?;
        check_schema(&raw_arith.schema, ARITH_SCHEMA)?;

        let groups: Result<Vec<GroupEntry>> = raw_groups.groups.iter().map(build_group).collect();
        let groups = groups?;
        let datasets: Result<Vec<ArithDataset>> = raw_arith
            .datasets
            .iter()
            .map(|d| build_dataset(d, &groups))
            .collect();
        let cat = Catalog {
            groups,
            raw_groups,
            raw_packets,
            raw_endo,
            raw_arith,
            datasets: datasets?,
        };
        cat.check_references()?;
        Ok(cat)
    }

    pub fn shipped() -> Result<Catalog> {
        Catalog::from_strs(SHIPPED_GROUPS, SHIPPED_PACKETS, SHIPPED_ENDO, SHIPPED_ARITH)
    }

    pub fn group(&self, name: &str) -> Result<&GroupEntry> {
        self.groups
            .iter()
            .find(|g| g.name == name)
            .ok_or_else(|| Error::BrokenReference(format!("group `{name}`")))
    }

    pub fn raw_packet(&self, name: &str) -> Result<&RawPacket> {
        self.raw_packets
            .packets
            .iter()
            .find(|p| p.name == name)
            .ok_or_else(|| Error::BrokenReference(format!("packet `{name}`")))
    }

    pub fn endo_group(&self, group: &str) -> Result<&RawEndoGroup> {
        self.raw_endo
            .groups
            .iter()
            .find(|g| g.group == group)
            .ok_or_else(|| Error::BrokenReference(format!("endoscopic data for `{group}`")))
    }

    pub fn dataset(&self, group: &str, level: &str) -> Result<&ArithDataset> {
        self.datasets
            .iter()
            .find(|d| d.group == group && d.level == level)
            .ok_or_else(|| {
                Error::IncompleteArithmeticData(format!("group `{group}` at level `{level}`"))
            })
    }

    fn check_references(&self) -> Result<()> {
        for p in &self.raw_packets.packets {
            let g = self.group(&p.group)?;
            g.levi(&p.levi)?;
            for m in &p.members {
                if !g.components.contains(&m.component) {
                    return Err(Error::BrokenReference(format!(
                        "component `{}` of member `{}` in packet `{}`",
                        m.component, m.label, p.name
                    )));
                }
            }
        }
        for eg in &self.raw_endo.groups {
            self.group(&eg.group)?;
            for d in &eg.data {
                for lv in &d.levis {
                    if !eg.levi_data.iter().any(|x| &x.label == lv) {
                        return Err(Error::BrokenReference(format!(
                            "endoscopic Levi `{lv}` of `{}`",
                            d.label
                        )));
                    }
                }
            }
            for ld in &eg.levi_data {
                if let Some(lg) = &ld.levi_of_group {
                    self.group(&eg.group)?.levi(lg)?;
                }
            }
            for lp in &eg.linked_pairs {
                self.raw_packet(&lp.g_packet)?;
                if !eg.data.iter().any(|d| d.label == lp.gprime) {
                    return Err(Error::BrokenReference(format!(
                        "linked endoscopic datum `{}`",
                        lp.gprime
                    )));
                }
            }
        }
        for ds in &self.datasets {
            let g = self.group(&ds.group)?;
            let eg = self.endo_group(&ds.group)?;
            for c in &ds.stable_classes {
                if !eg.data.iter().any(|d| d.label == c.endo) {
                    return Err(Error::BrokenReference(format!(
                        "endoscopic datum `{}` in class `{}`",
                        c.endo, c.label
                    )));
                }
                if !eg.levi_data.iter().any(|l| l.label == c.levi) {
                    return Err(Error::BrokenReference(format!(
                        "endoscopic Levi `{}` in class `{}`",
                        c.levi, c.label
                    )));
                }
            }
            for c in &ds.invariant_classes {
                g.levi(&c.levi)?;
            }
        }
        Ok(())
    }
}

/// Canonical serialization: pretty JSON in declaration field order.
pub fn canonical_endo(doc: &EndoDoc) -> String {
    serde_json::to_string_pretty(doc).expect("serializable") + "\n"
}

/// Validate a document of any supported schema read from a file; returns the
/// schema label. Cross-file references resolve against the shipped catalog.
pub fn validate_document(path: &Path) -> Result<String> {
    let text = std::fs::read_to_string(path)?;
    let head: serde_json::Value = serde_json::from_str(&text)?;
    let schema = head
        .get("schema")
        .and_then(|s| s.as_str())
        .ok_or_else(|| Error::Schema("missing schema field".into()))?
        .to_string();
    let shipped = Catalog::shipped()?;
    match schema.as_str() {
        GROUPS_SCHEMA => {
            let doc: GroupsDoc = serde_json::from_str(&text)?;
            for g in &doc.groups {
                build_group(g)?;
            }
        }
        PACKETS_SCHEMA => {
            let doc: PacketsDoc = serde_json::from_str(&text)?;
            for p in &doc.packets {
                crate::packets::build_packet_from_raw(p)?;
                shipped.group(&p.group)?;
            }
        }
        ENDO_SCHEMA => {
            let doc: EndoDoc = serde_json::from_str(&text)?;
            crate::endoscopy::validate_endo_doc(&doc)?;
        }
        ARITH_SCHEMA => {
            let doc: ArithDoc = serde_json::from_str(&text)?;
            for d in &doc.datasets {
                build_dataset(d, &shipped.groups)?;
            }
        }
        other => return Err(Error::Schema(format!("unknown schema `{other}`"))),
    }
    Ok(schema)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_catalog_loads() {
        let cat = Catalog::shipped().unwrap();
        assert!(cat.group("SL2").is_ok());
        assert!(cat.group("SU2").is_ok());
        let sl2 = cat.group("SL2").unwrap();
        assert_eq!(sl2.q, 1);
        assert!(sl2.levi("T").unwrap().cuspidal);
        assert!(matches!(sl2.levi("X"), Err(Error::UnknownLevi(_))));
        assert!(cat.dataset("SL2", "1").is_ok());
    }

    #[test]
    fn canonical_roundtrip() {
        let cat = Catalog::shipped().unwrap();
        let text = canonical_endo(&cat.raw_endo);
        let doc: EndoDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(canonical_endo(&doc), text);
    }

    #[test]
    fn exact_spec_values() {
        let s = ExactSpec {
            rat: Some("1/18".into()),
            sqrt: Some(3),
            rot: None,
        };
        let v = s.to_cyc().unwrap().to_complex();
        assert!((v.re - 3f64.sqrt() / 18.0).abs() < 1e-12);
        let r = ExactSpec {
            rat: None,
            sqrt: None,
            rot: Some("1/4".into()),
        };
        assert!(r.to_cyc().unwrap().eq(&Cyc::i()));
    }
}
