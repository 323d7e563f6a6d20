//! Root systems of rank at most two, their Weyl groups, positive systems
//! and torus points, all in exact rational coordinates.
//!
//! Vectors are written in the basis of simple roots; the invariant bilinear
//! form is the Gram matrix of that basis. Weights, coweights and Lie-algebra
//! points share the coordinate space through the form, so every pairing in
//! the character formulas is a single exact bilinear evaluation.

use num_complex::Complex64;
use num_traits::{Signed, Zero};

use crate::cyclotomic::Cyc;
use crate::error::{Error, Result};
use crate::exact::{
    mat_id, mat_inv, mat_mul, mat_neg_id, mat_vec, pair, q, q_to_f64, qi, sign_q, vec_eq, vec_neg,
    vec_zero, RatMat, RatVec, Q,
};
use crate::value::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CartanType {
    A1,
    A1xA1,
    A2,
    B2,
    G2,
    /// Rank-one torus: empty root system. Used by catalog entries for
    /// one-dimensional endoscopic groups.
    T1,
}

impl CartanType {
    pub fn parse(label: &str) -> Result<Self> {
        match label.trim() {
            "A1" => Ok(CartanType::A1),
            "A1xA1" | "A1×A1" | "A1+A1" => Ok(CartanType::A1xA1),
            "A2" => Ok(CartanType::A2),
            "B2" | "C2" => Ok(CartanType::B2),
            "G2" => Ok(CartanType::G2),
            "T1" => Ok(CartanType::T1),
            other => Err(Error::UnsupportedCartanType(other.to_string())),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            CartanType::A1 => "A1",
            CartanType::A1xA1 => "A1xA1",
            CartanType::A2 => "A2",
            CartanType::B2 => "B2",
            CartanType::G2 => "G2",
            CartanType::T1 => "T1",
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            CartanType::A1 => 1,
            CartanType::T1 => 1,
            _ => 2,
        }
    }

    pub fn expected_root_count(&self) -> usize {
        match self {
            CartanType::A1 => 2,
            CartanType::A1xA1 => 4,
            CartanType::A2 => 6,
            CartanType::B2 => 8,
            CartanType::G2 => 12,
            CartanType::T1 => 0,
        }
    }

    /// Gram matrix of the simple roots.
    fn gram(&self) -> RatMat {
        match self {
            CartanType::A1 => vec![vec![qi(2)]],
            CartanType::T1 => vec![vec![qi(2)]],
            CartanType::A1xA1 => vec![vec![qi(2), qi(0)], vec![qi(0), qi(2)]],
            CartanType::A2 => vec![vec![qi(2), qi(-1)], vec![qi(-1), qi(2)]],
            CartanType::B2 => vec![vec![qi(2), qi(-1)], vec![qi(-1), qi(1)]],
            CartanType::G2 => vec![vec![qi(2), qi(-3)], vec![qi(-3), qi(6)]],
        }
    }
}

#[derive(Clone, Debug)]
pub struct WeylElement {
    pub matrix: RatMat,
    pub word: Vec<usize>,
    pub sign: i32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveSystem {
    /// Sorted indices into the datum's root list.
    pub positive: Vec<usize>,
    /// A rational point strictly positive against every positive root.
    pub chamber: RatVec,
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    pub cartan_type: CartanType,
    pub rank: usize,
    pub form: RatMat,
    pub roots: Vec<RatVec>,
    pub coroots: Vec<RatVec>,
    pub simple_roots: Vec<usize>,
    /// Fundamental weights as columns in simple-root coordinates.
    pub weight_lattice_basis: Vec<RatVec>,
}

/// Construct the root datum for a supported Cartan type.
///
/// Roots are generated by reflection closure from the simple roots and then
/// sorted lexicographically in simple-root coordinates, so orderings and
/// derived tables are reproducible.
pub fn build_root_datum(label: &str) -> Result<RootDatum> {
    let ct = CartanType::parse(label)?;
    Ok(build_root_datum_typed(ct))
}

pub fn build_root_datum_typed(ct: CartanType) -> RootDatum {
    let rank = ct.rank();
    let form = ct.gram();
    let simple_vecs: Vec<RatVec> = (0..rank)
        .map(|i| {
            let mut v = vec_zero(rank);
            v[i] = qi(1);
            v
        })
        .collect();

    let mut roots: Vec<RatVec> = Vec::new();
    if ct != CartanType::T1 {
        let mut frontier = simple_vecs.clone();
        while let Some(v) = frontier.pop() {
            if roots.iter().any(|r| vec_eq(r, &v)) {
                continue;
            }
            roots.push(v.clone());
            for s in &simple_vecs {
                frontier.push(reflect(&form, s, &v));
            }
            // closure under negation comes from the simple reflections, but
            // seed it anyway for the rank-one factors
            frontier.push(vec_neg(&v));
        }
    }
    roots.sort_by(cmp_vec);
    debug_assert_eq!(roots.len(), ct.expected_root_count());

    let coroots: Vec<RatVec> = roots
        .iter()
        .map(|r| {
            let norm = pair(&form, r, r);
            r.iter().map(|c| c * qi(2) / &norm).collect()
        })
        .collect();

    let simple_roots: Vec<usize> = simple_vecs
        .iter()
        .map(|s| {
            roots
                .iter()
                .position(|r| vec_eq(r, s))
                .unwrap_or(usize::MAX)
        })
        .collect();

    // Fundamental weights: vectors w_i with <w_i, a_j^v> = delta_ij.
    let weight_lattice_basis = if ct == CartanType::T1 {
        vec![vec![q(1, 2)]]
    } else {
        // Pairing matrix P_ij = <e_i, a_j^v>; weights are columns of P^{-T}.
        let p: RatMat = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| pair(&form, &simple_vecs[i], &coroots[simple_roots[j]]))
                    .collect()
            })
            .collect();
        let pinv = mat_inv(&p).expect("Cartan pairing is invertible");
        (0..rank)
            .map(|j| (0..rank).map(|i| pinv[j][i].clone()).collect())
            .collect()
    };

    RootDatum {
        cartan_type: ct,
        rank,
        form,
        roots,
        coroots,
        simple_roots,
        weight_lattice_basis,
    }
}

fn cmp_vec(a: &RatVec, b: &RatVec) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            std::cmp::Ordering::Equal => continue,
            o => return o,
        }
    }
    std::cmp::Ordering::Equal
}

fn reflect(form: &RatMat, root: &[Q], v: &[Q]) -> RatVec {
    let norm = pair(form, root, root);
    let coeff = pair(form, v, root) * qi(2) / norm;
    v.iter().zip(root).map(|(x, r)| x - &coeff * r).collect()
}

impl RootDatum {
    pub fn pairing(&self, x: &[Q], y: &[Q]) -> Q {
        pair(&self.form, x, y)
    }

    /// <v, alpha^vee> for the root with the given index.
    pub fn coroot_pairing(&self, v: &[Q], root_idx: usize) -> Q {
        self.pairing(v, &self.coroots[root_idx])
    }

    pub fn reflect_vec(&self, root_idx: usize, v: &[Q]) -> RatVec {
        reflect(&self.form, &self.roots[root_idx], v)
    }

    pub fn root_index(&self, v: &[Q]) -> Option<usize> {
        self.roots.iter().position(|r| vec_eq(r, v))
    }

    /// Reflection matrix for the root with the given index.
    pub fn reflection_matrix(&self, root_idx: usize) -> RatMat {
        let n = self.rank;
        let mut m = Vec::with_capacity(n);
        for i in 0..n {
            let mut e = vec_zero(n);
            e[i] = qi(1);
            m.push(self.reflect_vec(root_idx, &e));
        }
        // columns->rows transpose: build column-wise then transpose
        let mut t = vec![vec_zero(n); n];
        for (j, col) in m.iter().enumerate() {
            for i in 0..n {
                t[i][j] = col[i].clone();
            }
        }
        t
    }

    /// Half sum of the standard positive roots.
    pub fn rho(&self) -> RatVec {
        let std = self.standard_positive();
        let mut acc = vec_zero(self.rank);
        for i in std {
            acc = crate::exact::vec_add(&acc, &self.roots[i]);
        }
        acc.iter().map(|x| x / qi(2)).collect()
    }

    fn standard_chamber_point(&self) -> RatVec {
        if self.cartan_type == CartanType::T1 {
            return vec![qi(1)];
        }
        // x with (alpha_i, x) = 1 for all simple roots.
        let binv = mat_inv(&self.form).expect("positive definite form");
        mat_vec(&binv, &vec![qi(1); self.rank])
    }

    pub fn standard_positive(&self) -> Vec<usize> {
        let x = self.standard_chamber_point();
        (0..self.roots.len())
            .filter(|&i| self.pairing(&self.roots[i], &x).is_positive())
            .collect()
    }
}

/// Enumerate the full Weyl group: breadth-first closure over the simple
/// reflections, identity first, each element carrying a reduced word.
pub fn weyl_group(datum: &RootDatum) -> Vec<WeylElement> {
    let n = datum.rank;
    let gens: Vec<RatMat> = datum
        .simple_roots
        .iter()
        .map(|&i| datum.reflection_matrix(i))
        .collect();
    let mut elements: Vec<WeylElement> = vec![WeylElement {
        matrix: mat_id(n),
        word: vec![],
        sign: 1,
    }];
    let mut frontier = vec![0usize];
    while let Some(idx) = frontier.pop() {
        let base = elements[idx].clone();
        for (g, gen) in gens.iter().enumerate() {
            let m = mat_mul(gen, &base.matrix);
            if elements.iter().any(|e| crate::exact::mat_eq(&e.matrix, &m)) {
                continue;
            }
            let mut word = vec![g];
            word.extend(&base.word);
            let sign = -base.sign;
            elements.push(WeylElement {
                matrix: m,
                word,
                sign,
            });
            frontier.insert(0, elements.len() - 1);
        }
    }
    elements.sort_by(|a, b| (a.word.len(), &a.word).cmp(&(b.word.len(), &b.word)));
    for e in &elements {
        debug_assert_eq!(e.sign, sign_q(&crate::exact::det(&e.matrix)));
    }
    elements
}

/// True when -identity lies in the Weyl group.
pub fn contains_minus_one(datum: &RootDatum) -> bool {
    let minus = mat_neg_id(datum.rank);
    weyl_group(datum)
        .iter()
        .any(|e| crate::exact::mat_eq(&e.matrix, &minus))
}

/// One positive system per Weyl chamber, indexed in Weyl-group order.
pub fn positive_systems(datum: &RootDatum) -> Vec<PositiveSystem> {
    let x0 = datum.standard_chamber_point();
    let group = weyl_group(datum);
    let mut out = Vec::with_capacity(group.len());
    for w in &group {
        let xw = mat_vec(&w.matrix, &x0);
        let positive: Vec<usize> = (0..datum.roots.len())
            .filter(|&i| datum.pairing(&datum.roots[i], &xw).is_positive())
            .collect();
        let ps = PositiveSystem {
            positive,
            chamber: xw,
        };
        debug_assert!(!out.contains(&ps));
        out.push(ps);
    }
    out
}

/// A point z exp(H) on a maximal torus. `pi_coords` holds the coefficient
/// vector of the i*pi part of H (so exponentials of it are exact roots of
/// unity); `re_coords` holds a floating real part. The point is exact when
/// the real part vanishes.
#[derive(Clone, Debug)]
pub struct TorusPoint {
    pub z: String,
    pub pi_coords: RatVec,
    pub re_coords: Vec<f64>,
    pub in_elliptic_locus: bool,
}

impl TorusPoint {
    pub fn exact(z: &str, pi_coords: RatVec) -> Self {
        let n = pi_coords.len();
        TorusPoint {
            z: z.to_string(),
            pi_coords,
            re_coords: vec![0.0; n],
            in_elliptic_locus: true,
        }
    }

    pub fn with_real(mut self, re: Vec<f64>) -> Self {
        self.re_coords = re;
        self
    }

    pub fn is_exact(&self) -> bool {
        self.re_coords.iter().all(|x| *x == 0.0)
    }

    pub fn is_identity_coords(&self) -> bool {
        self.is_exact() && self.pi_coords.iter().all(|x| x.is_zero())
    }

    /// Pairing of a weight vector against H, split as (multiple of i*pi,
    /// real part).
    pub fn log_pairing(&self, datum: &RootDatum, weight: &[Q]) -> (Q, f64) {
        let p = pair(&datum.form, weight, &self.pi_coords);
        let mut re = 0.0;
        for (i, wi) in weight.iter().enumerate() {
            if !wi.is_zero() {
                // form contraction against the floating real part
                for (j, fij) in datum.form[i].iter().enumerate() {
                    if !fij.is_zero() {
                        re += q_to_f64(wi) * q_to_f64(fij) * self.re_coords[j];
                    }
                }
            }
        }
        (p, re)
    }

    /// e^{w(H)} as a value; exact when the point is exact.
    pub fn exp_pairing(&self, datum: &RootDatum, weight: &[Q]) -> Value {
        let (p, re) = self.log_pairing(datum, weight);
        if self.is_exact() {
            Value::from_cyc(Cyc::half_turn(&p))
        } else {
            let theta = std::f64::consts::PI * q_to_f64(&p);
            let z = Complex64::new(re, theta).exp();
            Value::from_complex(z)
        }
    }

    /// Sign of the real part of alpha(H) for a real root, used for chamber
    /// selection on split tori. Errors when the pairing vanishes.
    pub fn real_sign(&self, datum: &RootDatum, root_idx: usize) -> Result<i32> {
        let (p, re) = self.log_pairing(datum, &datum.roots[root_idx]);
        if re.abs() > 1e-12 {
            return Ok(if re > 0.0 { 1 } else { -1 });
        }
        // exact real direction: the i*pi coefficient contributes nothing
        // real, so fall back to its sign only if it encodes a real scaling
        if !p.is_zero() {
            return Ok(sign_q(&p));
        }
        Err(Error::SingularPoint(format!(
            "root {root_idx} vanishes on torus point"
        )))
    }

    pub fn is_regular(&self, datum: &RootDatum) -> bool {
        for alpha in &datum.roots {
            let (p, re) = self.log_pairing(datum, alpha);
            let exact_trivial = {
                // e^{alpha(H)} = 1 iff real part 0 and pi-coefficient even
                let two = qi(2);
                let r = &p - (&p / &two).floor() * &two;
                r.is_zero()
            };
            if re.abs() < 1e-12 && exact_trivial {
                return false;
            }
        }
        true
    }
}

/// Product of e^{alpha(H)/2} - e^{-alpha(H)/2} over the positive roots of
/// the given system.
pub fn weyl_discriminant(
    datum: &RootDatum,
    system: &PositiveSystem,
    point: &TorusPoint,
) -> Result<Value> {
    if !point.is_regular(datum) {
        return Err(Error::SingularPoint(
            "discriminant at a singular point".into(),
        ));
    }
    let mut acc = Value::one();
    for &i in &system.positive {
        let alpha = &datum.roots[i];
        let (p, re) = point.log_pairing(datum, alpha);
        let factor = if point.is_exact() {
            let h = &p / qi(2);
            Value::from_cyc(Cyc::half_turn(&h).sub(&Cyc::half_turn(&(-&h))))
        } else {
            let theta = std::f64::consts::PI * q_to_f64(&p) / 2.0;
            let z = Complex64::new(re / 2.0, theta).exp();
            Value::from_complex(z - 1.0 / z)
        };
        if factor.is_zero() {
            return Err(Error::SingularPoint(format!("root {i} singular on point")));
        }
        acc = acc.mul(&factor);
    }
    Ok(acc)
}
