//! The integer table on pairs of positive systems that drives the averaged
//! character formula.
//!
//! The table is pinned down by four axioms: Weyl invariance, a support
//! condition on chamber cones, a reflection identity relating a pair to the
//! orthogonal subsystem, and the value 1 on the empty system. Two
//! independent computations are provided: `build_cbar_table` propagates the
//! reflection identity outward from the support zeros, while
//! `solve_cbar_by_axioms` treats every entry as an unknown and solves the
//! axioms as one exact linear system, certifying uniqueness.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{
    mat_inv, mat_vec, qi, solve_linear, vec_add, vec_eq, vec_neg, RatVec, SolveOutcome, Q,
};
use crate::rootsys::{contains_minus_one, positive_systems, weyl_group, PositiveSystem, RootDatum};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AxiomReport {
    pub invariance_pairs_checked: usize,
    pub support_zero_entries: usize,
    pub reflection_identities_checked: usize,
    pub all_axioms_hold: bool,
    pub values_even_and_nonnegative: bool,
}

#[derive(Clone, Debug)]
pub struct CbarTable {
    pub cartan_label: String,
    pub systems: Vec<PositiveSystem>,
    /// values[q][r] with both indices into `systems`.
    pub values: Vec<Vec<i64>>,
    pub axiom_report: AxiomReport,
}

impl CbarTable {
    pub fn system_index(&self, positive: &[usize]) -> Option<usize> {
        let mut key = positive.to_vec();
        key.sort_unstable();
        self.systems.iter().position(|ps| ps.positive == key)
    }

    pub fn by_index(&self, q: usize, r: usize) -> i64 {
        self.values[q][r]
    }
}

/// Table lookup by explicit positive systems.
pub fn cbar(table: &CbarTable, qplus: &[usize], rplus: &[usize]) -> Result<i64> {
    let qi = table
        .system_index(qplus)
        .ok_or_else(|| Error::DomainMismatch(format!("not a positive system: {qplus:?}")))?;
    let ri = table
        .system_index(rplus)
        .ok_or_else(|| Error::DomainMismatch(format!("not a positive system: {rplus:?}")))?;
    Ok(table.values[qi][ri])
}

// ---------------------------------------------------------------------------
// geometry shared by both computations
// ---------------------------------------------------------------------------

/// Coordinates of the datum roots restricted to the span of a subsystem.
struct SpanFrame {
    basis: Vec<usize>,
}

impl SpanFrame {
    fn new(datum: &RootDatum, sub: &[usize]) -> SpanFrame {
        let mut basis: Vec<usize> = Vec::new();
        for &i in sub {
            if basis.is_empty() {
                basis.push(i);
            } else if basis.len() == 1 {
                // independent iff not collinear
                let a = &datum.roots[basis[0]];
                let b = &datum.roots[i];
                let cross = &a[0] * &b[1.min(b.len() - 1)] - &a[1.min(a.len() - 1)] * &b[0];
                if datum.rank == 2 && !cross.is_zero() {
                    basis.push(i);
                }
            }
        }
        SpanFrame { basis }
    }

    fn rank(&self) -> usize {
        self.basis.len()
    }
}

/// Extreme elements of a positive system: those not expressible as the sum
/// of two members.
fn simple_elements(vectors: &[RatVec]) -> Vec<usize> {
    (0..vectors.len())
        .filter(|&k| {
            !(0..vectors.len()).any(|i| {
                (0..vectors.len()).any(|j| {
                    i != k && j != k && vec_eq(&vec_add(&vectors[i], &vectors[j]), &vectors[k])
                })
            })
        })
        .collect()
}

/// Generators of {x in span : (v, x) > 0 for all v in the system}, one per
/// simple element.
fn chamber_generators(datum: &RootDatum, frame: &SpanFrame, vectors: &[RatVec]) -> Vec<RatVec> {
    let simples: Vec<RatVec> = simple_elements(vectors)
        .into_iter()
        .map(|k| vectors[k].clone())
        .collect();
    match frame.rank() {
        0 => vec![],
        1 => {
            let u = datum.roots[frame.basis[0]].clone();
            let s = &simples[0];
            if datum.pairing(s, &u).is_positive() {
                vec![u]
            } else {
                vec![vec_neg(&u)]
            }
        }
        _ => {
            // dual basis to the simple elements
            let m: Vec<Vec<Q>> = simples
                .iter()
                .map(|s| {
                    (0..datum.rank)
                        .map(|k| {
                            let mut e = vec![Q::zero(); datum.rank];
                            e[k] = qi(1);
                            datum.pairing(s, &e)
                        })
                        .collect()
                })
                .collect();
            let minv = mat_inv(&m).expect("simple elements independent");
            (0..simples.len())
                .map(|j| {
                    let mut e = vec![Q::zero(); simples.len()];
                    e[j] = qi(1);
                    mat_vec(&minv, &e)
                })
                .collect()
        }
    }
}

/// The support axiom: every functional in the coroot-side chamber must be
/// strictly negative on the root-side chamber.
fn support_holds(datum: &RootDatum, sub: &[usize], qplus: &[usize], rplus: &[usize]) -> bool {
    if sub.is_empty() {
        return true;
    }
    let frame = SpanFrame::new(datum, sub);
    let qvecs: Vec<RatVec> = qplus.iter().map(|&i| datum.coroots[i].clone()).collect();
    let rvecs: Vec<RatVec> = rplus.iter().map(|&i| datum.roots[i].clone()).collect();
    let gen_q = chamber_generators(datum, &frame, &qvecs);
    let gen_r = chamber_generators(datum, &frame, &rvecs);
    let mut saw_negative = false;
    for gq in &gen_q {
        for gr in &gen_r {
            let p = datum.pairing(gq, gr);
            if p.is_positive() {
                return false;
            }
            if p.is_negative() {
                saw_negative = true;
            }
        }
    }
    saw_negative
}

/// Positive systems of a subsystem, realized as intersections with the full
/// chambers. Sorted and deduplicated for determinism.
fn subsystem_positive_systems(datum: &RootDatum, sub: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for ps in positive_systems(datum) {
        let mut inter: Vec<usize> = ps
            .positive
            .iter()
            .copied()
            .filter(|i| sub.contains(i))
            .collect();
        inter.sort_unstable();
        if !out.contains(&inter) {
            out.push(inter);
        }
    }
    out.sort();
    out
}

/// Roots of the subsystem orthogonal to the given root.
fn orthogonal_subsystem(datum: &RootDatum, sub: &[usize], root: usize) -> Vec<usize> {
    sub.iter()
        .copied()
        .filter(|&j| datum.pairing(&datum.roots[j], &datum.roots[root]).is_zero())
        .collect()
}

/// Roots cutting out the walls of the chamber of a positive system: its
/// simple elements. The reflection identity is imposed along these walls;
/// together with Weyl invariance this reaches every reflection that can be
/// reached consistently.
fn wall_roots(datum: &RootDatum, rplus: &[usize]) -> Vec<usize> {
    let vecs: Vec<RatVec> = rplus.iter().map(|&i| datum.roots[i].clone()).collect();
    simple_elements(&vecs)
        .into_iter()
        .map(|k| rplus[k])
        .collect()
}

fn apply_reflection_to_set(datum: &RootDatum, root: usize, set: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = set
        .iter()
        .map(|&i| {
            let v = datum.reflect_vec(root, &datum.roots[i]);
            datum
                .root_index(&v)
                .expect("reflection preserves the root set")
        })
        .collect();
    out.sort_unstable();
    out
}

// ---------------------------------------------------------------------------
// construction by propagation of the reflection identity
// ---------------------------------------------------------------------------

type SubKey = (Vec<usize>, Vec<usize>, Vec<usize>);

struct Builder<'a> {
    datum: &'a RootDatum,
    memo: HashMap<SubKey, i64>,
}

impl<'a> Builder<'a> {
    /// Value for a (sub)system pair. Rank 0 is the base value 1; otherwise
    /// propagate the reflection identity from the support zeros across the
    /// reflection graph of the subsystem's positive systems.
    fn value(&mut self, sub: &[usize], qplus: &[usize], rplus: &[usize]) -> Result<i64> {
        if sub.is_empty() {
            return Ok(1);
        }
        let key = (sub.to_vec(), qplus.to_vec(), rplus.to_vec());
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        self.fill_subsystem(sub, rplus)?;
        self.memo.get(&key).copied().ok_or_else(|| {
            Error::InternalAxiomConflict(format!(
                "propagation left ({qplus:?},{rplus:?}) undetermined"
            ))
        })
    }

    /// Determine every entry with the given root-side system by walking
    /// reflection edges from the support-forced zeros.
    fn fill_subsystem(&mut self, sub: &[usize], rplus: &[usize]) -> Result<()> {
        let q_systems = subsystem_positive_systems(self.datum, sub);
        let pos_roots: Vec<usize> = wall_roots(self.datum, rplus);

        // resolve the orthogonal-subsystem right-hand sides first
        let mut rhs: HashMap<(usize, usize), i64> = HashMap::new();
        for (qi, q) in q_systems.iter().enumerate() {
            for (ai, &alpha) in pos_roots.iter().enumerate() {
                let ortho = orthogonal_subsystem(self.datum, sub, alpha);
                let q_sub: Vec<usize> = q.iter().copied().filter(|i| ortho.contains(i)).collect();
                let r_sub: Vec<usize> = rplus
                    .iter()
                    .copied()
                    .filter(|i| ortho.contains(i))
                    .collect();
                let v = self.value(&ortho, &q_sub, &r_sub)?;
                rhs.insert((qi, ai), 2 * v);
            }
        }

        let mut known: HashMap<usize, i64> = HashMap::new();
        for (qi, q) in q_systems.iter().enumerate() {
            if !support_holds(self.datum, sub, q, rplus) {
                known.insert(qi, 0);
            }
        }
        if known.is_empty() {
            return Err(Error::InternalAxiomConflict(
                "no support-forced zero to seed propagation".into(),
            ));
        }
        let mut queue: Vec<usize> = known.keys().copied().collect();
        queue.sort_unstable();
        while let Some(qi) = queue.pop() {
            let xq = known[&qi];
            for (ai, &alpha) in pos_roots.iter().enumerate() {
                let reflected = apply_reflection_to_set(self.datum, alpha, &q_systems[qi]);
                let qj = q_systems
                    .iter()
                    .position(|s| *s == reflected)
                    .expect("reflection permutes positive systems");
                let val = rhs[&(qi, ai)] - xq;
                match known.get(&qj) {
                    Some(&existing) => {
                        if existing != val {
                            return Err(Error::InternalAxiomConflict(format!(
                                "reflection identity inconsistent at q-system {qj}"
                            )));
                        }
                    }
                    None => {
                        known.insert(qj, val);
                        queue.push(qj);
                    }
                }
            }
        }
        if known.len() != q_systems.len() {
            return Err(Error::InternalAxiomConflict(
                "reflection graph failed to reach every positive system".into(),
            ));
        }
        for (qi, q) in q_systems.iter().enumerate() {
            self.memo
                .insert((sub.to_vec(), q.clone(), rplus.to_vec()), known[&qi]);
        }
        Ok(())
    }
}

fn full_root_indices(datum: &RootDatum) -> Vec<usize> {
    (0..datum.roots.len()).collect()
}

/// Build the full table for a datum whose Weyl group contains -1.
pub fn build_cbar_table(datum: &RootDatum) -> Result<CbarTable> {
    if !contains_minus_one(datum) {
        return Err(Error::MinusOneRequired(
            datum.cartan_type.label().to_string(),
        ));
    }
    let systems = positive_systems(datum);
    let all = full_root_indices(datum);
    let mut builder = Builder {
        datum,
        memo: HashMap::new(),
    };
    let n = systems.len();
    let mut values = vec![vec![0i64; n]; n];
    for (ri, r) in systems.iter().enumerate() {
        for (qi, q) in systems.iter().enumerate() {
            values[qi][ri] = builder.value(&all, &q.positive, &r.positive)?;
        }
    }
    let report = verify_axioms(datum, &systems, &values)?;
    Ok(CbarTable {
        cartan_label: datum.cartan_type.label().to_string(),
        systems,
        values,
        axiom_report: report,
    })
}

/// Re-verify all four axioms on a finished table, exhaustively.
pub fn verify_axioms(
    datum: &RootDatum,
    systems: &[PositiveSystem],
    values: &[Vec<i64>],
) -> Result<AxiomReport> {
    let all = full_root_indices(datum);
    let group = weyl_group(datum);
    let n = systems.len();
    let index_of = |set: &[usize]| -> usize {
        let mut key = set.to_vec();
        key.sort_unstable();
        systems
            .iter()
            .position(|ps| ps.positive == key)
            .expect("positive system")
    };

    let mut invariance = 0usize;
    for w in &group {
        for qi in 0..n {
            for ri in 0..n {
                let wq = apply_weyl_to_set(datum, w, &systems[qi].positive);
                let wr = apply_weyl_to_set(datum, w, &systems[ri].positive);
                if values[index_of(&wq)][index_of(&wr)] != values[qi][ri] {
                    return Err(Error::InternalAxiomConflict(format!(
                        "invariance fails at ({qi},{ri})"
                    )));
                }
                invariance += 1;
            }
        }
    }

    let mut zeros = 0usize;
    for qi in 0..n {
        for ri in 0..n {
            if !support_holds(datum, &all, &systems[qi].positive, &systems[ri].positive) {
                if values[qi][ri] != 0 {
                    return Err(Error::InternalAxiomConflict(format!(
                        "support axiom fails at ({qi},{ri})"
                    )));
                }
                zeros += 1;
            }
        }
    }

    let mut reflections = 0usize;
    let mut builder = Builder {
        datum,
        memo: HashMap::new(),
    };
    for qi in 0..n {
        for ri in 0..n {
            for &alpha in &wall_roots(datum, &systems[ri].positive) {
                let ortho = orthogonal_subsystem(datum, &all, alpha);
                let qsub: Vec<usize> = systems[qi]
                    .positive
                    .iter()
                    .copied()
                    .filter(|i| ortho.contains(i))
                    .collect();
                let rsub: Vec<usize> = systems[ri]
                    .positive
                    .iter()
                    .copied()
                    .filter(|i| ortho.contains(i))
                    .collect();
                let sub_val = builder.value(&ortho, &qsub, &rsub)?;
                let sq = apply_reflection_to_set(datum, alpha, &systems[qi].positive);
                let lhs = values[qi][ri] + values[index_of(&sq)][ri];
                if lhs != 2 * sub_val {
                    return Err(Error::InternalAxiomConflict(format!(
                        "reflection identity fails at ({qi},{ri},alpha={alpha})"
                    )));
                }
                reflections += 1;
            }
        }
    }

    let even_nonneg = values.iter().flatten().all(|&v| v >= 0 && v % 2 == 0);

    Ok(AxiomReport {
        invariance_pairs_checked: invariance,
        support_zero_entries: zeros,
        reflection_identities_checked: reflections,
        all_axioms_hold: true,
        values_even_and_nonnegative: even_nonneg,
    })
}

fn apply_weyl_to_set(
    datum: &RootDatum,
    w: &crate::rootsys::WeylElement,
    set: &[usize],
) -> Vec<usize> {
    let mut out: Vec<usize> = set
        .iter()
        .map(|&i| {
            let v = mat_vec(&w.matrix, &datum.roots[i]);
            datum.root_index(&v).expect("Weyl action preserves roots")
        })
        .collect();
    out.sort_unstable();
    out
}

// ---------------------------------------------------------------------------
// independent oracle: global exact linear solve of the axiom system
// ---------------------------------------------------------------------------

/// Solve the axioms as one linear system over all entries, asserting that
/// the solution exists and is unique. Subsystem values on the right-hand
/// side of the reflection identity are obtained by recursive solves, never
/// from the propagation builder.
pub fn solve_cbar_by_axioms(datum: &RootDatum) -> Result<CbarTable> {
    if !contains_minus_one(datum) {
        return Err(Error::MinusOneRequired(
            datum.cartan_type.label().to_string(),
        ));
    }
    let systems = positive_systems(datum);
    let all = full_root_indices(datum);
    let mut memo: HashMap<Vec<usize>, HashMap<(Vec<usize>, Vec<usize>), Q>> = HashMap::new();
    let table = solve_subsystem(datum, &all, &mut memo)?;

    let n = systems.len();
    let mut values = vec![vec![0i64; n]; n];
    for (qi, qs) in systems.iter().enumerate() {
        for (ri, rs) in systems.iter().enumerate() {
            let v = table
                .get(&(qs.positive.clone(), rs.positive.clone()))
                .ok_or_else(|| Error::UniquenessFailure("missing entry after solve".into()))?;
            if !v.denom().is_one() {
                return Err(Error::UniquenessFailure("non-integral solution".into()));
            }
            use num_traits::ToPrimitive;
            values[qi][ri] = v
                .numer()
                .to_i64()
                .ok_or_else(|| Error::UniquenessFailure("solution value out of range".into()))?;
        }
    }
    let report = verify_axioms(datum, &systems, &values)?;
    Ok(CbarTable {
        cartan_label: datum.cartan_type.label().to_string(),
        systems,
        values,
        axiom_report: report,
    })
}

use num_traits::One;

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let r = self.find(self.parent[i]);
            self.parent[i] = r;
        }
        self.parent[i]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn solve_subsystem(
    datum: &RootDatum,
    sub: &[usize],
    memo: &mut HashMap<Vec<usize>, HashMap<(Vec<usize>, Vec<usize>), Q>>,
) -> Result<HashMap<(Vec<usize>, Vec<usize>), Q>> {
    if let Some(t) = memo.get(sub) {
        return Ok(t.clone());
    }
    let mut table: HashMap<(Vec<usize>, Vec<usize>), Q> = HashMap::new();
    if sub.is_empty() {
        table.insert((vec![], vec![]), Q::one());
        memo.insert(sub.to_vec(), table.clone());
        return Ok(table);
    }
    let q_systems = subsystem_positive_systems(datum, sub);
    let pairs: Vec<(Vec<usize>, Vec<usize>)> = q_systems
        .iter()
        .flat_map(|q| q_systems.iter().map(move |r| (q.clone(), r.clone())))
        .collect();
    let index: HashMap<(Vec<usize>, Vec<usize>), usize> = pairs
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();

    // Reflections inside the subsystem: one representative per opposite
    // pair of roots.
    let sub_positive: Vec<usize> = {
        let std = datum.standard_positive();
        sub.iter().copied().filter(|i| std.contains(i)).collect()
    };

    // The invariance axiom is a family of equalities between unknowns;
    // collapse it with a union-find before the dense solve. Reflections
    // generate the Weyl group, so imposing it along reflections imposes it
    // for every group element.
    let mut uf = UnionFind::new(pairs.len());
    for &alpha in &sub_positive {
        for (p, &pi) in &index {
            let sq = apply_reflection_to_set(datum, alpha, &p.0);
            let sr = apply_reflection_to_set(datum, alpha, &p.1);
            uf.union(pi, index[&(sq, sr)]);
        }
    }
    let mut class_of = vec![0usize; pairs.len()];
    let mut classes: Vec<usize> = Vec::new();
    for i in 0..pairs.len() {
        let r = uf.find(i);
        class_of[i] = r;
    }
    for i in 0..pairs.len() {
        if class_of[i] == i {
            classes.push(i);
        }
    }
    let class_slot: HashMap<usize, usize> = classes
        .iter()
        .enumerate()
        .map(|(slot, &rep)| (rep, slot))
        .collect();
    let unknowns = classes.len();

    let mut rows: Vec<Vec<Q>> = Vec::new();
    let mut rhs: Vec<Q> = Vec::new();
    let mut seen: std::collections::HashSet<(Vec<String>, String)> =
        std::collections::HashSet::new();
    let mut push_row = |rows: &mut Vec<Vec<Q>>, rhs: &mut Vec<Q>, row: Vec<Q>, b: Q| {
        let key = (
            row.iter().map(crate::exact::format_q).collect::<Vec<_>>(),
            crate::exact::format_q(&b),
        );
        if seen.insert(key) {
            rows.push(row);
            rhs.push(b);
        }
    };

    // Axiom: support vanishing.
    for (p, &pi) in &index {
        if !support_holds(datum, sub, &p.0, &p.1) {
            let mut row = vec![Q::zero(); unknowns];
            row[class_slot[&class_of[pi]]] = qi(1);
            push_row(&mut rows, &mut rhs, row, Q::zero());
        }
    }

    // Axiom: reflection identity along the walls of the root-side chamber,
    // against the orthogonal subsystem.
    for (p, &pi) in &index {
        for &alpha in &wall_roots(datum, &p.1) {
            let ortho = orthogonal_subsystem(datum, sub, alpha);
            let sub_table = solve_subsystem(datum, &ortho, memo)?;
            let sq = apply_reflection_to_set(datum, alpha, &p.0);
            let pj = index[&(sq, p.1.clone())];
            let qsub: Vec<usize> = p.0.iter().copied().filter(|i| ortho.contains(i)).collect();
            let rsub: Vec<usize> = p.1.iter().copied().filter(|i| ortho.contains(i)).collect();
            let c = sub_table
                .get(&(qsub, rsub))
                .ok_or_else(|| Error::UniquenessFailure("missing subsystem value".into()))?;
            let mut row = vec![Q::zero(); unknowns];
            row[class_slot[&class_of[pi]]] += qi(1);
            row[class_slot[&class_of[pj]]] += qi(1);
            push_row(&mut rows, &mut rhs, row, c * qi(2));
        }
    }

    match solve_linear(&rows, &rhs, unknowns) {
        SolveOutcome::Unique(x) => {
            for (p, &pi) in &index {
                table.insert(p.clone(), x[class_slot[&class_of[pi]]].clone());
            }
            memo.insert(sub.to_vec(), table.clone());
            Ok(table)
        }
        SolveOutcome::Underdetermined => Err(Error::UniquenessFailure(format!(
            "axioms underdetermine a {}-root subsystem",
            sub.len()
        ))),
        SolveOutcome::Inconsistent => Err(Error::InternalAxiomConflict(
            "axiom system inconsistent in solver".into(),
        )),
    }
}

// ---------------------------------------------------------------------------
// disk cache
// ---------------------------------------------------------------------------

pub const CACHE_SCHEMA: &str = "cbar-cache/1";

#[derive(Serialize, Deserialize)]
struct CacheDoc {
    schema: String,
    cartan_type: String,
    size: usize,
    values: Vec<Vec<i64>>,
    axiom_report: AxiomReport,
}

/// Build the table, reading and writing a JSON cache keyed by schema version
/// and Cartan type.
pub fn build_cbar_table_cached(datum: &RootDatum, cache_dir: &Path) -> Result<CbarTable> {
    let file = cache_dir.join(format!("cbar-{}.json", datum.cartan_type.label()));
    if let Ok(text) = fs::read_to_string(&file) {
        if let Ok(doc) = serde_json::from_str::<CacheDoc>(&text) {
            let systems = positive_systems(datum);
            if doc.schema == CACHE_SCHEMA
                && doc.cartan_type == datum.cartan_type.label()
                && doc.size == systems.len()
                && doc.values.len() == systems.len()
            {
                return Ok(CbarTable {
                    cartan_label: doc.cartan_type,
                    systems,
                    values: doc.values,
                    axiom_report: doc.axiom_report,
                });
            }
        }
    }
    let table = build_cbar_table(datum)?;
    let doc = CacheDoc {
        schema: CACHE_SCHEMA.to_string(),
        cartan_type: table.cartan_label.clone(),
        size: table.systems.len(),
        values: table.values.clone(),
        axiom_report: table.axiom_report.clone(),
    };
    if fs::create_dir_all(cache_dir).is_ok() {
        let _ = fs::write(&file, serde_json::to_string_pretty(&doc)?);
    }
    Ok(table)
}
