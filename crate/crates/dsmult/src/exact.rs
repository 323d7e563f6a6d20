//! Exact rational scalars, vectors and small matrices.
//!
//! Everything geometric in this crate (roots, coroots, weights, chamber
//! points, reflection matrices) lives in a fixed-rank rational coordinate
//! space equipped with a symmetric bilinear form. Arbitrary-precision
//! rationals keep reflection closures, chamber tests and the positive-system
//! linear algebra exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

pub type Q = BigRational;

/// Rational from an integer pair.
pub fn q(num: i64, den: i64) -> Q {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(num: i64) -> Q {
    BigRational::from(BigInt::from(num))
}

/// Parse "p", "-p" or "p/q".
pub fn parse_q(s: &str) -> Result<Q, Error> {
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::Schema(format!("bad rational `{s}`")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::Schema(format!("bad rational `{s}`")))?;
    if d.is_zero() {
        return Err(Error::Schema(format!("zero denominator in `{s}`")));
    }
    Ok(BigRational::new(n, d))
}

pub fn format_q(x: &Q) -> String {
    if x.denom().is_one() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn q_to_f64(x: &Q) -> f64 {
    let n = x.numer();
    let d = x.denom();
    // Exact for the small values used here; falls back to a quotient of
    // lossy conversions for out-of-range magnitudes.
    use num_traits::ToPrimitive;
    match (n.to_f64(), d.to_f64()) {
        (Some(a), Some(b)) => a / b,
        _ => f64::NAN,
    }
}

pub type RatVec = Vec<Q>;
pub type RatMat = Vec<Vec<Q>>;

pub fn vec_zero(n: usize) -> RatVec {
    vec![Q::zero(); n]
}

pub fn vec_add(a: &[Q], b: &[Q]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Q], b: &[Q]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_neg(a: &[Q]) -> RatVec {
    a.iter().map(|x| -x).collect()
}

pub fn vec_scale(c: &Q, a: &[Q]) -> RatVec {
    a.iter().map(|x| c * x).collect()
}

pub fn vec_eq(a: &[Q], b: &[Q]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x == y)
}

pub fn vec_is_zero(a: &[Q]) -> bool {
    a.iter().all(|x| x.is_zero())
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Bilinear pairing x^T B y for a symmetric form B.
pub fn pair(form: &RatMat, x: &[Q], y: &[Q]) -> Q {
    let mut acc = Q::zero();
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if !yj.is_zero() {
                acc += xi * &form[i][j] * yj;
            }
        }
    }
    acc
}

pub fn mat_id(n: usize) -> RatMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Q::one() } else { Q::zero() })
                .collect()
        })
        .collect()
}

pub fn mat_neg_id(n: usize) -> RatMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { -Q::one() } else { Q::zero() })
                .collect()
        })
        .collect()
}

pub fn mat_vec(m: &RatMat, v: &[Q]) -> RatVec {
    m.iter().map(|row| dot(row, v)).collect()
}

pub fn mat_mul(a: &RatMat, b: &RatMat) -> RatMat {
    let n = a.len();
    let p = b[0].len();
    let mut out = vec![vec![Q::zero(); p]; n];
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..p {
                let t = aik * &b[k][j];
                out[i][j] += t;
            }
        }
    }
    out
}

pub fn mat_eq(a: &RatMat, b: &RatMat) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(r, s)| vec_eq(r, s))
}

/// Determinant by fraction-free expansion; ranks here never exceed 4.
pub fn det(m: &RatMat) -> Q {
    let n = m.len();
    match n {
        0 => Q::one(),
        1 => m[0][0].clone(),
        2 => &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0],
        _ => {
            let mut acc = Q::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: RatMat = (1..n)
                    .map(|i| {
                        (0..n)
                            .filter(|&k| k != j)
                            .map(|k| m[i][k].clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * det(&minor);
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
    }
}

/// Inverse via Gauss-Jordan. Errors on singular input.
pub fn mat_inv(m: &RatMat) -> Result<RatMat, Error> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::Schema("singular matrix".into()))?;
        a.swap(col, piv);
        let inv = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let t = &f * &a[col][c];
                    a[r][c] -= t;
                }
            }
        }
    }
    Ok(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Outcome of an exact dense solve of `A x = b`.
pub enum SolveOutcome {
    Unique(Vec<Q>),
    Underdetermined,
    Inconsistent,
}

/// Gaussian elimination over the rationals with full consistency and
/// uniqueness reporting. Used by the axiom-system solver, where both failure
/// modes carry meaning.
pub fn solve_linear(a: &[Vec<Q>], b: &[Q], unknowns: usize) -> SolveOutcome {
    let rows = a.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; unknowns];
    let mut rank = 0usize;
    for col in 0..unknowns {
        let Some(piv) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = m[rank][col].clone();
        for x in m[rank].iter_mut() {
            *x /= &inv;
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=unknowns {
                    let t = &f * &m[rank][c];
                    m[r][c] -= t;
                }
            }
        }
        pivot_of_col[col] = Some(rank);
        rank += 1;
        if rank == rows {
            break;
        }
    }
    for r in rank..rows {
        if m[r][..unknowns].iter().all(|x| x.is_zero()) && !m[r][unknowns].is_zero() {
            return SolveOutcome::Inconsistent;
        }
    }
    if pivot_of_col.iter().any(|p| p.is_none()) {
        return SolveOutcome::Underdetermined;
    }
    let mut x = vec![Q::zero(); unknowns];
    for (col, piv) in pivot_of_col.into_iter().enumerate() {
        x[col] = m[piv.unwrap()][unknowns].clone();
    }
    SolveOutcome::Unique(x)
}

/// Sign of a rational: -1, 0, +1.
pub fn sign_q(x: &Q) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}
