//! Stable JSON/CSV encodings for matrices, parameter points, factor chains,
//! rows, and check reports.
//!
//! JSON output is canonical: object keys are sorted (serde_json's default
//! map is ordered), rationals are fully reduced, and floats use the
//! shortest representation that round-trips. Scalars encode as `[re, im]`
//! number pairs on the float backend and as `"p/q+r/s*i"` strings (with
//! `"p/q"` shorthand for reals) on the exact backend.

use std::str::FromStr;

use num::complex::Complex64;
use num::BigRational;
use serde_json::{json, Map, Number, Value};

use crate::approx::ApproxReport;
use crate::complete::RowVector;
use crate::error::{Error, Result};
use crate::factorize::{FactorChain, PrimitiveFactor};
use crate::field::{Qi, Scalar, TolerancePolicy, C64};
use crate::laurent::{LaurentPoly, PolyMatrix};
use crate::mat::Mat;
use crate::parametrize::ParamPoint;
use crate::wavelet::{check_paraunitary, FlatWaveletRows, WaveletMatrix};

pub const SCHEMA_VERSION: u64 = 1;

/// Scalar <-> JSON encoding, one impl per backend.
pub trait ScalarCodec: Scalar {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
    /// Comma-free cell text for CSV export.
    fn to_csv_cell(&self) -> String;
}

impl ScalarCodec for C64 {
    fn to_json(&self) -> Value {
        Value::Array(vec![json_f64(self.re), json_f64(self.im)])
    }

    fn from_json(v: &Value) -> Result<Self> {
        let arr = v
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::Parse(format!("expected [re, im] pair, got {v}")))?;
        let re = arr[0]
            .as_f64()
            .ok_or_else(|| Error::Parse(format!("non-numeric real part: {}", arr[0])))?;
        let im = arr[1]
            .as_f64()
            .ok_or_else(|| Error::Parse(format!("non-numeric imaginary part: {}", arr[1])))?;
        Ok(Complex64::new(re, im))
    }

    fn to_csv_cell(&self) -> String {
        if self.im == 0.0 {
            format!("{}", self.re)
        } else if self.im < 0.0 {
            format!("{}-{}i", self.re, -self.im)
        } else {
            format!("{}+{}i", self.re, self.im)
        }
    }
}

impl ScalarCodec for Qi {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(v: &Value) -> Result<Self> {
        let s = v
            .as_str()
            .ok_or_else(|| Error::Parse(format!("expected rational string, got {v}")))?;
        parse_qi(s)
    }

    fn to_csv_cell(&self) -> String {
        self.to_string().replace("*i", "i")
    }
}

/// Parse the canonical Gaussian-rational encoding: "p/q", "p/q+r/s*i",
/// or "p/q-r/s*i" (the "/q" part optional for integers).
pub fn parse_qi(s: &str) -> Result<Qi> {
    let s = s.trim();
    let rat = |t: &str| -> Result<BigRational> {
        BigRational::from_str(t.trim())
            .map_err(|e| Error::Parse(format!("bad rational {t:?}: {e}")))
    };
    match s.strip_suffix("*i") {
        None => Ok(Qi::new(rat(s)?, BigRational::from_integer(0.into()))),
        Some(body) => {
            // split at the last '+' or '-' that separates re from im;
            // neither side contains interior signs in canonical form
            let split = body
                .char_indices()
                .rev()
                .find(|&(i, c)| i > 0 && (c == '+' || c == '-'))
                .ok_or_else(|| Error::Parse(format!("bad gaussian rational {s:?}")))?;
            let (re_part, rest) = body.split_at(split.0);
            let im = rat(&rest[1..])?;
            let im = if split.1 == '-' { -im } else { im };
            Ok(Qi::new(rat(re_part)?, im))
        }
    }
}

fn json_f64(x: f64) -> Value {
    Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

fn obj_get<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

fn as_object(v: &Value) -> Result<&Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::Parse("expected a JSON object".into()))
}

fn get_usize(obj: &Map<String, Value>, key: &str) -> Result<usize> {
    obj_get(obj, key)?
        .as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| Error::Parse(format!("field {key:?} must be a nonnegative integer")))
}

fn check_header(obj: &Map<String, Value>, tag: &str) -> Result<()> {
    if let Some(v) = obj.get("schema_version") {
        if v.as_u64() != Some(SCHEMA_VERSION) {
            return Err(Error::Parse(format!("unsupported schema_version {v}")));
        }
    }
    let field = obj_get(obj, "field")?
        .as_str()
        .ok_or_else(|| Error::Parse("field tag must be a string".into()))?;
    if field != tag {
        return Err(Error::Parse(format!(
            "document is for field {field:?} but backend is {tag:?}"
        )));
    }
    Ok(())
}

fn scalar_grid<S: ScalarCodec>(v: &Value, rows: usize, cols: usize, what: &str) -> Result<Vec<Vec<S>>> {
    let outer = v
        .as_array()
        .filter(|a| a.len() == rows)
        .ok_or_else(|| Error::Parse(format!("dimension mismatch: {what} must have {rows} rows")))?;
    outer
        .iter()
        .map(|row| {
            let inner = row.as_array().filter(|a| a.len() == cols).ok_or_else(|| {
                Error::Parse(format!("dimension mismatch: {what} rows must have {cols} entries"))
            })?;
            inner.iter().map(S::from_json).collect()
        })
        .collect()
}

// --- matrix documents -------------------------------------------------

pub fn matrix_to_json<S: ScalarCodec>(a: &WaveletMatrix<S>) -> Value {
    let m = a.rank();
    let coeffs: Vec<Value> = (0..=a.order() as i64)
        .map(|k| {
            let mk = a.coeff_mat(k);
            Value::Array(
                (0..m)
                    .map(|i| Value::Array((0..m).map(|j| mk[(i, j)].to_json()).collect()))
                    .collect(),
            )
        })
        .collect();
    json!({
        "schema_version": SCHEMA_VERSION,
        "field": S::TAG,
        "m": m,
        "n": a.order(),
        "coeffs": coeffs,
    })
}

pub fn matrix_from_json<S: ScalarCodec>(v: &Value, pol: &TolerancePolicy) -> Result<WaveletMatrix<S>> {
    let obj = as_object(v)?;
    check_header(obj, S::TAG)?;
    let m = get_usize(obj, "m")?;
    let n = get_usize(obj, "n")?;
    let coeffs = obj_get(obj, "coeffs")?
        .as_array()
        .filter(|a| a.len() == n + 1)
        .ok_or_else(|| Error::Parse(format!("dimension mismatch: coeffs must have {} slices", n + 1)))?;
    let mut mats = Vec::with_capacity(n + 1);
    for slice in coeffs {
        let grid = scalar_grid::<S>(slice, m, m, "coefficient slice")?;
        mats.push(Mat::from_rows(grid));
    }
    WaveletMatrix::certify(PolyMatrix::from_coeff_mats(0, &mats), n, pol)
}

// --- parameter documents ----------------------------------------------

pub fn params_to_json<S: ScalarCodec>(p: &ParamPoint<S>) -> Value {
    let gamma: Vec<Value> = p
        .gamma()
        .iter()
        .map(|row| Value::Array(row.iter().map(|g| g.to_json()).collect()))
        .collect();
    json!({
        "schema_version": SCHEMA_VERSION,
        "field": S::TAG,
        "m": p.rank(),
        "n": p.order(),
        "gamma": gamma,
    })
}

pub fn params_from_json<S: ScalarCodec>(v: &Value) -> Result<ParamPoint<S>> {
    let obj = as_object(v)?;
    check_header(obj, S::TAG)?;
    let m = get_usize(obj, "m")?;
    let n = get_usize(obj, "n")?;
    if m < 2 {
        return Err(Error::Parse("rank m must be at least 2".into()));
    }
    let gamma = scalar_grid::<S>(obj_get(obj, "gamma")?, m - 1, n, "gamma")?;
    ParamPoint::new(m, n, gamma).map_err(|e| Error::Parse(e.to_string()))
}

// --- factor chains -----------------------------------------------------

pub fn chain_to_json<S: ScalarCodec>(c: &FactorChain<S>) -> Value {
    let m = c.factors.first().map(|f| f.dim()).unwrap_or(0);
    let factors: Vec<Value> = c
        .factors
        .iter()
        .map(|f| Value::Array(f.direction().iter().map(|s| s.to_json()).collect()))
        .collect();
    json!({
        "schema_version": SCHEMA_VERSION,
        "field": S::TAG,
        "m": m,
        "factors": factors,
    })
}

pub fn chain_from_json<S: ScalarCodec>(v: &Value, pol: &TolerancePolicy) -> Result<FactorChain<S>> {
    let obj = as_object(v)?;
    check_header(obj, S::TAG)?;
    let m = get_usize(obj, "m")?;
    let raw = obj_get(obj, "factors")?
        .as_array()
        .ok_or_else(|| Error::Parse("factors must be an array".into()))?;
    let mut factors = Vec::with_capacity(raw.len());
    for f in raw {
        let dir = f
            .as_array()
            .filter(|a| a.len() == m)
            .ok_or_else(|| Error::Parse(format!("dimension mismatch: each factor needs {m} entries")))?
            .iter()
            .map(S::from_json)
            .collect::<Result<Vec<S>>>()?;
        factors.push(PrimitiveFactor::new(dir, pol)?);
    }
    Ok(FactorChain { factors })
}

// --- row and unitary documents ------------------------------------------

pub fn row_to_json<S: ScalarCodec>(row: &RowVector<S>) -> Value {
    let n = row.order;
    let entries: Vec<Value> = row
        .entries
        .iter()
        .map(|e| Value::Array((0..=n as i64).map(|k| e.coeff(k).to_json()).collect()))
        .collect();
    json!({
        "schema_version": SCHEMA_VERSION,
        "field": S::TAG,
        "m": row.len(),
        "n": n,
        "row": entries,
    })
}

pub fn row_from_json<S: ScalarCodec>(v: &Value) -> Result<RowVector<S>> {
    let obj = as_object(v)?;
    check_header(obj, S::TAG)?;
    let m = get_usize(obj, "m")?;
    let n = get_usize(obj, "n")?;
    let grid = scalar_grid::<S>(obj_get(obj, "row")?, m, n + 1, "row")?;
    let entries = grid
        .into_iter()
        .map(|coeffs| LaurentPoly::from_coeffs(0, coeffs))
        .collect();
    RowVector::new(n, entries).map_err(|e| Error::Parse(e.to_string()))
}

pub fn unitary_to_json<S: ScalarCodec>(v: &Mat<S>) -> Value {
    let m = v.nrows();
    let matrix: Vec<Value> = (0..m)
        .map(|i| Value::Array((0..v.ncols()).map(|j| v[(i, j)].to_json()).collect()))
        .collect();
    json!({
        "schema_version": SCHEMA_VERSION,
        "field": S::TAG,
        "m": m,
        "matrix": matrix,
    })
}

pub fn unitary_from_json<S: ScalarCodec>(v: &Value) -> Result<Mat<S>> {
    let obj = as_object(v)?;
    check_header(obj, S::TAG)?;
    let m = get_usize(obj, "m")?;
    let grid = scalar_grid::<S>(obj_get(obj, "matrix")?, m, m, "matrix")?;
    Ok(Mat::from_rows(grid))
}

// --- reports -------------------------------------------------------------

pub fn check_report_json<S: Scalar>(a: &WaveletMatrix<S>, pol: &TolerancePolicy) -> Result<Value> {
    let report = check_paraunitary(a.poly(), pol);
    let (order, degree, rank0) = a.order_degree(pol)?;
    Ok(json!({
        "class": a.classify(pol).as_str(),
        "degree": degree,
        "order": order,
        "rank0": rank0,
        "residual": json_f64(report.residual),
    }))
}

pub fn approx_report_json(r: &ApproxReport) -> Value {
    json!({
        "certificate": r.certificate,
        "distance": json_f64(r.distance),
        "max_denominator": r.max_denominator,
    })
}

// --- CSV -------------------------------------------------------------------

/// Flat-row CSV: one line per matrix row, m(N+1) scalar cells per line.
pub fn matrix_to_csv<S: ScalarCodec>(a: &WaveletMatrix<S>) -> String {
    let flat = FlatWaveletRows::from_wavelet(a);
    let mut out = String::new();
    for row in &flat.rows {
        let cells: Vec<String> = row.iter().map(|s| s.to_csv_cell()).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Canonical serialization: sorted keys, trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable value");
    s.push('\n');
    s
}
