//! Exact arithmetic in cyclotomic fields.
//!
//! A value is stored as a formal combination sum_i c[i] * zeta_n^i with
//! rational coefficients, where zeta_n = e^{2 pi i / n}. Canonical form
//! reduces the coefficient polynomial modulo the n-th cyclotomic polynomial,
//! which makes zero-testing and equality exact. Mixed orders are lifted to
//! the least common multiple before combining.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::Error;
use crate::exact::{format_q, q_to_f64, Q};

#[derive(Clone, Debug)]
pub struct Cyc {
    order: u64,
    /// Coefficient of zeta_order^i at index i; length == order.
    coeffs: Vec<Q>,
}

fn phi_cache() -> &'static Mutex<HashMap<u64, Vec<BigInt>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<BigInt>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Integer coefficients of the n-th cyclotomic polynomial, low degree first.
pub fn cyclotomic_poly(n: u64) -> Vec<BigInt> {
    if let Some(p) = phi_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let result = if n == 1 {
        vec![BigInt::from(-1), BigInt::from(1)]
    } else {
        // (x^n - 1) divided by the cyclotomic polynomials of all proper
        // divisors.
        let mut num = vec![BigInt::zero(); n as usize + 1];
        num[0] = BigInt::from(-1);
        num[n as usize] = BigInt::from(1);
        for d in 1..n {
            if n.is_multiple_of(d) {
                let phi_d = cyclotomic_poly(d);
                num = int_poly_div_exact(&num, &phi_d);
            }
        }
        num
    };
    phi_cache().lock().unwrap().insert(n, result.clone());
    result
}

fn int_poly_div_exact(dividend: &[BigInt], divisor: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = dividend.to_vec();
    let dd = divisor.len() - 1;
    let lead = divisor[dd].clone();
    debug_assert!(lead == BigInt::one() || lead == BigInt::from(-1));
    let mut quot = vec![BigInt::zero(); rem.len().saturating_sub(dd)];
    for i in (dd..rem.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let c = &rem[i] / &lead;
        quot[i - dd] = c.clone();
        for (j, dj) in divisor.iter().enumerate() {
            let t = &c * dj;
            rem[i - dd + j] -= t;
        }
    }
    debug_assert!(rem.iter().all(|x| x.is_zero()));
    quot
}

fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

impl Cyc {
    pub fn zero() -> Self {
        Cyc {
            order: 1,
            coeffs: vec![Q::zero()],
        }
    }

    pub fn one() -> Self {
        Cyc::from_rat(Q::one())
    }

    pub fn from_rat(x: Q) -> Self {
        Cyc {
            order: 1,
            coeffs: vec![x],
        }
    }

    pub fn from_int(x: i64) -> Self {
        Cyc::from_rat(Q::from(BigInt::from(x)))
    }

    /// e^{2 pi i q} for rational q.
    pub fn root_of_unity(q: &Q) -> Self {
        let den = q.denom().to_u64().expect("root-of-unity order overflow");
        let num = q.numer().mod_floor(q.denom()).to_u64().unwrap();
        let mut coeffs = vec![Q::zero(); den as usize];
        coeffs[num as usize] = Q::one();
        Cyc { order: den, coeffs }
    }

    /// e^{i pi q} for rational q (half-integral exponents are routine in the
    /// discriminant products).
    pub fn half_turn(q: &Q) -> Self {
        Cyc::root_of_unity(&(q / Q::from(BigInt::from(2))))
    }

    /// i as a cyclotomic value.
    pub fn i() -> Self {
        Cyc::root_of_unity(&BigRational::new(BigInt::one(), BigInt::from(4)))
    }

    /// Exact square root of a small squarefree positive integer,
    /// via Gauss sums: sqrt(2) = z8 + z8^-1, sqrt(3) = z12 + z12^-1,
    /// sqrt(5) = 1 + 2(z5 + z5^-1) ... actually 2(z5+z5^4)+1.
    pub fn sqrt_int(d: u64) -> Result<Self, Error> {
        match d {
            1 => Ok(Cyc::one()),
            2 => {
                let z = Cyc::root_of_unity(&BigRational::new(BigInt::one(), BigInt::from(8)));
                Ok(z.add(&z.conj()))
            }
            3 => {
                let z = Cyc::root_of_unity(&BigRational::new(BigInt::one(), BigInt::from(12)));
                Ok(z.add(&z.conj()))
            }
            5 => {
                let z = Cyc::root_of_unity(&BigRational::new(BigInt::one(), BigInt::from(5)));
                let t = z.add(&z.conj()).scale(&Q::from(BigInt::from(2)));
                Ok(t.add(&Cyc::one()))
            }
            _ => Err(Error::Schema(format!(
                "unsupported exact square root of {d}"
            ))),
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    fn lift(&self, n: u64) -> Cyc {
        debug_assert!(n.is_multiple_of(self.order));
        if n == self.order {
            return self.clone();
        }
        let k = (n / self.order) as usize;
        let mut coeffs = vec![Q::zero(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[i * k] += c;
            }
        }
        Cyc { order: n, coeffs }
    }

    pub fn add(&self, other: &Cyc) -> Cyc {
        let n = self.order.lcm(&other.order);
        let a = self.lift(n);
        let b = other.lift(n);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Cyc { order: n, coeffs }
    }

    pub fn sub(&self, other: &Cyc) -> Cyc {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Cyc {
        Cyc {
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| -x).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Cyc {
        Cyc {
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, other: &Cyc) -> Cyc {
        let n = self.order.lcm(&other.order);
        let a = self.lift(n);
        let b = other.lift(n);
        let sz = n as usize;
        let mut coeffs = vec![Q::zero(); sz];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    let k = (i + j) % sz;
                    coeffs[k] += x * y;
                }
            }
        }
        Cyc { order: n, coeffs }.reduced()
    }

    /// Complex conjugate; zeta^i maps to zeta^{n-i}.
    pub fn conj(&self) -> Cyc {
        let n = self.order as usize;
        let mut coeffs = vec![Q::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[(n - i) % n] += c;
            }
        }
        Cyc {
            order: self.order,
            coeffs,
        }
    }

    /// Canonical representative modulo the cyclotomic polynomial: the
    /// coefficient polynomial is reduced to degree < phi(order). The order
    /// itself is kept; zero tests read the reduced coefficients.
    fn reduced(&self) -> Cyc {
        let phi = cyclotomic_poly(self.order);
        let deg = phi.len() - 1;
        if self.coeffs.len() <= deg || self.coeffs[deg..].iter().all(|c| c.is_zero()) {
            let mut coeffs = self.coeffs.clone();
            coeffs.resize(self.order as usize, Q::zero());
            return Cyc {
                order: self.order,
                coeffs,
            };
        }
        let mut rem: Vec<Q> = self.coeffs.clone();
        for i in (deg..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let c = rem[i].clone();
            // phi is monic.
            for (j, pj) in phi.iter().enumerate() {
                if !pj.is_zero() {
                    let t = &c * Q::from(pj.clone());
                    rem[i - deg + j] -= t;
                }
            }
        }
        rem.resize(self.order as usize, Q::zero());
        Cyc {
            order: self.order,
            coeffs: rem,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.reduced().coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eq(&self, other: &Cyc) -> bool {
        self.sub(other).is_zero()
    }

    /// Exact rational content, if the value lies in the prime field.
    pub fn to_rat(&self) -> Option<Q> {
        let r = self.reduced();
        if r.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(r.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn is_real(&self) -> bool {
        self.eq(&self.conj())
    }

    pub fn to_complex(&self) -> Complex64 {
        let n = self.order as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let ang = 2.0 * std::f64::consts::PI * (i as f64) / n;
                acc += Complex64::new(ang.cos(), ang.sin()) * q_to_f64(c);
            }
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// the cyclotomic polynomial.
    pub fn inv(&self) -> Result<Cyc, Error> {
        let r = self.reduced();
        if r.coeffs.iter().all(|c| c.is_zero()) {
            return Err(Error::SingularPoint(
                "division by zero cyclotomic value".into(),
            ));
        }
        let deg = euler_phi(r.order) as usize;
        let a: Vec<Q> = r.coeffs[..deg.max(1)].to_vec();
        let phi: Vec<Q> = cyclotomic_poly(r.order)
            .iter()
            .map(|z| Q::from(z.clone()))
            .collect();
        let (g, _s, t) = poly_ext_gcd(&phi, &a);
        // gcd must be a nonzero constant since phi_n is irreducible.
        let g = poly_trim(&g);
        if g.len() != 1 || g[0].is_zero() {
            return Err(Error::InternalAxiomConflict(
                "cyclotomic inverse failed".into(),
            ));
        }
        let scale = g[0].clone();
        let mut coeffs: Vec<Q> = t.iter().map(|c| c / &scale).collect();
        coeffs.resize(r.order as usize, Q::zero());
        Ok(Cyc {
            order: r.order,
            coeffs,
        }
        .reduced())
    }

    pub fn div(&self, other: &Cyc) -> Result<Cyc, Error> {
        Ok(self.mul(&other.inv()?))
    }

    /// Human-readable form: rational if possible, otherwise a short
    /// polynomial in the root of unity.
    pub fn display(&self) -> String {
        if let Some(r) = self.to_rat() {
            return format_q(&r);
        }
        let r = self.reduced();
        let mut parts = Vec::new();
        for (i, c) in r.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let base = if i == 0 {
                format_q(c)
            } else if c.is_one() {
                format!("z{}^{}", r.order, i)
            } else {
                format!("{}*z{}^{}", format_q(c), r.order, i)
            };
            parts.push(base);
        }
        parts.join(" + ")
    }
}

fn poly_trim(p: &[Q]) -> Vec<Q> {
    let mut v = p.to_vec();
    while v.len() > 1 && v.last().unwrap().is_zero() {
        v.pop();
    }
    v
}

fn poly_divrem(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let b = poly_trim(b);
    let mut rem = poly_trim(a);
    let db = b.len() - 1;
    if rem.len() <= db && !(rem.len() == b.len())
        && rem.len() < b.len() {
            return (vec![Q::zero()], rem);
        }
    if rem.len() < b.len() {
        return (vec![Q::zero()], rem);
    }
    let mut quot = vec![Q::zero(); rem.len() - db];
    let lead = b[db].clone();
    for i in (db..rem.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let c = &rem[i] / &lead;
        quot[i - db] = c.clone();
        for (j, bj) in b.iter().enumerate() {
            let t = &c * bj;
            rem[i - db + j] -= t;
        }
    }
    (poly_trim(&quot), poly_trim(&rem))
}

fn poly_is_zero(p: &[Q]) -> bool {
    p.iter().all(|c| c.is_zero())
}

fn poly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len().max(b.len());
    let mut out = vec![Q::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    poly_trim(&out)
}

/// Returns (g, s, t) with g = gcd(a, b) = s*a + t*b.
fn poly_ext_gcd(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>, Vec<Q>) {
    let mut r0 = poly_trim(a);
    let mut r1 = poly_trim(b);
    let mut s0 = vec![Q::one()];
    let mut s1 = vec![Q::zero()];
    let mut t0 = vec![Q::zero()];
    let mut t1 = vec![Q::one()];
    while !poly_is_zero(&r1) {
        let (qt, rem) = poly_divrem(&r0, &r1);
        let new_s = poly_sub(&s0, &poly_mul(&qt, &s1));
        let new_t = poly_sub(&t0, &poly_mul(&qt, &t1));
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = new_s;
        t0 = t1;
        t1 = new_t;
    }
    (r0, s0, t0)
}
