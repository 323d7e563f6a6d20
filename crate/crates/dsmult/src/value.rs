//! Character values carrying an exact cyclotomic part when available and a
//! complex floating image always.

use num_complex::Complex64;
use serde::Serialize;

use crate::cyclotomic::Cyc;
use crate::error::{Error, Result};
use crate::exact::{q_to_f64, Q};

pub const NUMERIC_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct Value {
    pub exact: Option<Cyc>,
    pub numeric: Complex64,
}

impl Value {
    pub fn from_cyc(c: Cyc) -> Self {
        let numeric = c.to_complex();
        Value {
            exact: Some(c),
            numeric,
        }
    }

    pub fn from_rat(q: &Q) -> Self {
        Value::from_cyc(Cyc::from_rat(q.clone()))
    }

    pub fn from_int(n: i64) -> Self {
        Value::from_cyc(Cyc::from_int(n))
    }

    pub fn from_complex(z: Complex64) -> Self {
        Value {
            exact: None,
            numeric: z,
        }
    }

    pub fn zero() -> Self {
        Value::from_cyc(Cyc::zero())
    }

    pub fn one() -> Self {
        Value::from_cyc(Cyc::one())
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    fn combine(
        &self,
        other: &Value,
        ex: impl FnOnce(&Cyc, &Cyc) -> Cyc,
        nu: impl FnOnce(Complex64, Complex64) -> Complex64,
    ) -> Value {
        let numeric = nu(self.numeric, other.numeric);
        let exact = match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => Some(ex(a, b)),
            _ => None,
        };
        Value { exact, numeric }
    }

    pub fn add(&self, other: &Value) -> Value {
        self.combine(other, |a, b| a.add(b), |a, b| a + b)
    }

    pub fn sub(&self, other: &Value) -> Value {
        self.combine(other, |a, b| a.sub(b), |a, b| a - b)
    }

    pub fn mul(&self, other: &Value) -> Value {
        self.combine(other, |a, b| a.mul(b), |a, b| a * b)
    }

    pub fn neg(&self) -> Value {
        Value {
            exact: self.exact.as_ref().map(|c| c.neg()),
            numeric: -self.numeric,
        }
    }

    pub fn conj(&self) -> Value {
        Value {
            exact: self.exact.as_ref().map(|c| c.conj()),
            numeric: self.numeric.conj(),
        }
    }

    pub fn scale(&self, c: &Q) -> Value {
        Value {
            exact: self.exact.as_ref().map(|e| e.scale(c)),
            numeric: self.numeric * q_to_f64(c),
        }
    }

    pub fn div(&self, other: &Value) -> Result<Value> {
        if other.numeric.norm() < 1e-300
            && other.exact.as_ref().map(|c| c.is_zero()).unwrap_or(true)
        {
            return Err(Error::SingularPoint("division by zero value".into()));
        }
        let numeric = self.numeric / other.numeric;
        let exact = match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => Some(a.div(b)?),
            _ => None,
        };
        Ok(Value { exact, numeric })
    }

    pub fn is_zero(&self) -> bool {
        match &self.exact {
            Some(c) => c.is_zero(),
            None => self.numeric.norm() < NUMERIC_TOL,
        }
    }

    /// Equality at the ambient precision: exact when both sides are exact.
    pub fn approx_eq(&self, other: &Value, tol: f64) -> bool {
        match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => a.eq(b),
            _ => (self.numeric - other.numeric).norm() <= tol,
        }
    }

    pub fn to_rat(&self) -> Option<Q> {
        self.exact.as_ref().and_then(|c| c.to_rat())
    }

    pub fn display(&self) -> String {
        match &self.exact {
            Some(c) => c.display(),
            None => format!("{:.12}+{:.12}i", self.numeric.re, self.numeric.im),
        }
    }
}

/// Serializable snapshot of a value for reports and the CLI.
#[derive(Clone, Debug, Serialize)]
pub struct ValueRecord {
    pub exact: Option<String>,
    pub re: f64,
    pub im: f64,
}

impl From<&Value> for ValueRecord {
    fn from(v: &Value) -> Self {
        ValueRecord {
            exact: v.exact.as_ref().map(|c| c.display()),
            re: v.numeric.re,
            im: v.numeric.im,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn exact_and_numeric_stay_in_step() {
        let a = Value::from_cyc(Cyc::root_of_unity(&q(1, 3)));
        let b = Value::from_cyc(Cyc::root_of_unity(&q(2, 3)));
        let s = a.add(&b);
        // z3 + z3^2 = -1
        assert_eq!(s.to_rat().unwrap(), q(-1, 1));
        assert!((s.numeric.re + 1.0).abs() < 1e-12);
        assert!(s.numeric.im.abs() < 1e-12);
    }

    #[test]
    fn numeric_contaminates_exactness() {
        let a = Value::from_int(2);
        let b = Value::from_complex(Complex64::new(0.5, 0.0));
        let p = a.mul(&b);
        assert!(!p.is_exact());
        assert!((p.numeric.re - 1.0).abs() < 1e-12);
    }
}
