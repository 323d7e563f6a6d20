//! Python bindings for the exact discrete-series kernel: root systems,
//! pair tables, character evaluation and the assembled multiplicity and
//! Lefschetz totals.

use std::sync::OnceLock;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use dsmult::assembly::{lefschetz_checked, multiplicity, AssemblyContext};
use dsmult::catalog::Catalog;
use dsmult::cbar::{build_cbar_table, CbarTable as CoreTable};
use dsmult::characters::{
    averaged_character_phim, singular_character_limit, stable_ds_character, HCParameter,
};
use dsmult::exact::parse_q;
use dsmult::packets::{build_packet_from_raw, verify_adjoint_relations};
use dsmult::rootsys::{
    build_root_datum, contains_minus_one, positive_systems, weyl_group, RootDatum, TorusPoint,
};

fn catalog() -> PyResult<&'static Catalog> {
    static CAT: OnceLock<Catalog> = OnceLock::new();
    if CAT.get().is_none() {
        let built = Catalog::shipped().map_err(to_py_err)?;
        let _ = CAT.set(built);
    }
    Ok(CAT.get().expect("catalog initialized"))
}

fn to_py_err(e: dsmult::Error) -> PyErr {
    match e.exit_code() {
        2 => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn parse_coords(values: Vec<String>) -> PyResult<Vec<dsmult::exact::Q>> {
    values
        .iter()
        .map(|s| parse_q(s).map_err(to_py_err))
        .collect()
}

/// An exact root system of one of the supported Cartan types.
#[pyclass]
struct RootSystem {
    datum: RootDatum,
}

#[pymethods]
impl RootSystem {
    #[new]
    fn new(cartan_type: &str) -> PyResult<Self> {
        Ok(RootSystem {
            datum: build_root_datum(cartan_type).map_err(to_py_err)?,
        })
    }

    fn rank(&self) -> usize {
        self.datum.rank
    }

    fn num_roots(&self) -> usize {
        self.datum.roots.len()
    }

    fn weyl_order(&self) -> usize {
        weyl_group(&self.datum).len()
    }

    fn contains_minus_one(&self) -> bool {
        contains_minus_one(&self.datum)
    }

    fn num_positive_systems(&self) -> usize {
        positive_systems(&self.datum).len()
    }

    /// Roots as lists of rational strings in simple-root coordinates.
    fn roots(&self) -> Vec<Vec<String>> {
        self.datum
            .roots
            .iter()
            .map(|r| r.iter().map(dsmult::exact::format_q).collect())
            .collect()
    }
}

/// The integer table on pairs of positive systems.
#[pyclass]
struct CbarTable {
    table: CoreTable,
}

#[pymethods]
impl CbarTable {
    #[new]
    fn new(cartan_type: &str) -> PyResult<Self> {
        let datum = build_root_datum(cartan_type).map_err(to_py_err)?;
        Ok(CbarTable {
            table: build_cbar_table(&datum).map_err(to_py_err)?,
        })
    }

    fn size(&self) -> usize {
        self.table.systems.len()
    }

    /// Every entry as (coroot-side positive set, root-side positive set,
    /// value).
    fn entries(&self) -> Vec<(Vec<usize>, Vec<usize>, i64)> {
        let mut out = Vec::new();
        for (qi, qs) in self.table.systems.iter().enumerate() {
            for (ri, rs) in self.table.systems.iter().enumerate() {
                out.push((
                    qs.positive.clone(),
                    rs.positive.clone(),
                    self.table.values[qi][ri],
                ));
            }
        }
        out
    }

    fn value(&self, qplus: Vec<usize>, rplus: Vec<usize>) -> PyResult<i64> {
        dsmult::cbar::cbar(&self.table, &qplus, &rplus).map_err(to_py_err)
    }
}

/// Character of the compact form at an exact torus point. The weight is
/// given by fundamental-weight coefficients and the point by rational
/// multiples of i*pi; returns (exact form or None, real part, imaginary
/// part).
#[pyfunction]
#[pyo3(signature = (group, lambda_coeffs, zeta, pi_coords, z = "1"))]
fn stable_character(
    group: &str,
    lambda_coeffs: Vec<String>,
    zeta: &str,
    pi_coords: Vec<String>,
    z: &str,
) -> PyResult<(Option<String>, f64, f64)> {
    let cat = catalog()?;
    let entry = cat.group(group).map_err(to_py_err)?;
    let coeffs = parse_coords(lambda_coeffs)?;
    let param = HCParameter::from_fundamental(entry, &coeffs, zeta).map_err(to_py_err)?;
    let point = TorusPoint::exact(z, parse_coords(pi_coords)?);
    let v = stable_ds_character(&param, &point).map_err(to_py_err)?;
    Ok((
        v.exact.as_ref().map(|c| c.display()),
        v.numeric.re,
        v.numeric.im,
    ))
}

/// Averaged character on the torus of a cuspidal Levi; the point may carry
/// a floating split part.
#[pyfunction]
#[pyo3(signature = (group, levi, lambda_coeffs, zeta, pi_coords, re_coords, z = "1"))]
#[allow(clippy::too_many_arguments)]
fn averaged_character(
    group: &str,
    levi: &str,
    lambda_coeffs: Vec<String>,
    zeta: &str,
    pi_coords: Vec<String>,
    re_coords: Vec<f64>,
    z: &str,
) -> PyResult<(Option<String>, f64, f64)> {
    let cat = catalog()?;
    let entry = cat.group(group).map_err(to_py_err)?;
    let coeffs = parse_coords(lambda_coeffs)?;
    let param = HCParameter::from_fundamental(entry, &coeffs, zeta).map_err(to_py_err)?;
    let point = TorusPoint::exact(z, parse_coords(pi_coords)?).with_real(re_coords);
    let table = if contains_minus_one(&entry.datum) {
        Some(build_cbar_table(&entry.datum).map_err(to_py_err)?)
    } else {
        None
    };
    let v = averaged_character_phim(&param, levi, &point, table.as_ref()).map_err(to_py_err)?;
    Ok((
        v.exact.as_ref().map(|c| c.display()),
        v.numeric.re,
        v.numeric.im,
    ))
}

/// Continuous extension of the averaged character at a central point.
#[pyfunction]
#[pyo3(signature = (group, levi, lambda_coeffs, zeta, z = "1"))]
fn central_character_limit(
    group: &str,
    levi: &str,
    lambda_coeffs: Vec<String>,
    zeta: &str,
    z: &str,
) -> PyResult<(Option<String>, f64, f64)> {
    let cat = catalog()?;
    let entry = cat.group(group).map_err(to_py_err)?;
    let coeffs = parse_coords(lambda_coeffs)?;
    let param = HCParameter::from_fundamental(entry, &coeffs, zeta).map_err(to_py_err)?;
    let point = TorusPoint::exact(z, vec![dsmult::exact::qi(0); entry.datum.rank]);
    let table = if contains_minus_one(&entry.datum) {
        Some(build_cbar_table(&entry.datum).map_err(to_py_err)?)
    } else {
        None
    };
    let v = singular_character_limit(&param, &point, levi, table.as_ref()).map_err(to_py_err)?;
    Ok((
        v.exact.as_ref().map(|c| c.display()),
        v.numeric.re,
        v.numeric.im,
    ))
}

/// Multiplicity of the weight-k series member at the given level.
#[pyfunction]
#[pyo3(signature = (group, weight, level, member = None))]
fn multiplicity_of(group: &str, weight: i64, level: &str, member: Option<String>) -> PyResult<i64> {
    let cat = catalog()?;
    let ctx = AssemblyContext::new(cat, group, level, None).map_err(to_py_err)?;
    let param = ctx.param_for_weight(weight).map_err(to_py_err)?;
    let idx = match member {
        Some(m) => ctx.member_index(&m).map_err(to_py_err)?,
        None => 0,
    };
    let (m, _) = multiplicity(&ctx, &param, idx).map_err(to_py_err)?;
    Ok(m)
}

/// Stable Lefschetz total for the weight-k parameter at the given level.
#[pyfunction]
fn lefschetz_of(group: &str, weight: i64, level: &str) -> PyResult<f64> {
    let cat = catalog()?;
    let ctx = AssemblyContext::new(cat, group, level, None).map_err(to_py_err)?;
    let report = lefschetz_checked(&ctx, weight, None, None).map_err(to_py_err)?;
    Ok(report.total.re)
}

/// Verify the adjoint relations of one shipped packet (or all of them).
#[pyfunction]
#[pyo3(signature = (name = None))]
fn packet_check(name: Option<String>) -> PyResult<bool> {
    let cat = catalog()?;
    for raw in &cat.raw_packets.packets {
        if let Some(ref want) = name {
            if &raw.name != want {
                continue;
            }
        }
        let packet = build_packet_from_raw(raw).map_err(to_py_err)?;
        verify_adjoint_relations(&packet).map_err(to_py_err)?;
    }
    Ok(true)
}

#[pymodule]
fn dsmult_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<RootSystem>()?;
    m.add_class::<CbarTable>()?;
    m.add_function(wrap_pyfunction!(stable_character, m)?)?;
    m.add_function(wrap_pyfunction!(averaged_character, m)?)?;
    m.add_function(wrap_pyfunction!(central_character_limit, m)?)?;
    m.add_function(wrap_pyfunction!(multiplicity_of, m)?)?;
    m.add_function(wrap_pyfunction!(lefschetz_of, m)?)?;
    m.add_function(wrap_pyfunction!(packet_check, m)?)?;
    Ok(())
}
