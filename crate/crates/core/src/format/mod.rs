//! JSON documents for the inputs and outputs of the engine.
//!
//! Rationals are strings `"p/q"`. Generator, step and row numbers inside
//! documents count from 1.

mod expr;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::catalog::{Family, FamilyParams};
use crate::cauchon::{GKResult, LogEntry};
use crate::error::{Error, Result};
use crate::exactalg::{format_rational, parse_rational, ExponentVector, IntegerMatrix, LaurentPolynomial, Rational};
use crate::poisson::{IteratedPPASpec, Mode, QuadraticSpec};
use crate::skewfields::SkewMatrix;
use crate::torus::TorusData;

pub use expr::parse_scalar_expr;

/// Version stamped on every structured record.
pub const SCHEMA_VERSION: u32 = 1;

fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string()))
}

fn rational_at(s: &str, location: &str) -> Result<Rational> {
    parse_rational(s).map_err(|e| match e {
        Error::Parse { message, .. } => Error::parse(location, message),
        other => other,
    })
}

fn rational_row(row: &[String], location: &str) -> Result<Vec<Rational>> {
    row.iter().enumerate().map(|(j, s)| rational_at(s, &format!("{location}[{j}]"))).collect()
}

fn rational_matrix(m: &[Vec<String>], location: &str) -> Result<Vec<Vec<Rational>>> {
    m.iter().enumerate().map(|(i, r)| rational_row(r, &format!("{location}[{i}]"))).collect()
}

fn rational_strings(row: &[Rational]) -> Vec<String> {
    row.iter().map(format_rational).collect()
}

fn matrix_strings(m: &[Vec<Rational>]) -> Vec<Vec<String>> {
    m.iter().map(|r| rational_strings(r)).collect()
}

/// Integer as a JSON number when it fits in 64 bits, otherwise as a string.
pub fn integer_json(v: &BigInt) -> Value {
    v.to_i64().map_or_else(|| Value::String(v.to_string()), Value::from)
}

pub fn integer_matrix_json(m: &IntegerMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(integer_json).collect())).collect())
}

pub fn rational_json(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

pub fn quadratic_json(q: &QuadraticSpec) -> Value {
    json!(matrix_strings(q.matrix()))
}

// ---- Laurent polynomials ----

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub exponents: Vec<i64>,
    pub coefficient: String,
}

/// Terms in ascending exponent order.
pub type LaurentDoc = Vec<TermDoc>;

pub fn laurent_to_doc(p: &LaurentPolynomial) -> LaurentDoc {
    p.terms()
        .map(|(e, c)| TermDoc { exponents: (0..e.len()).map(|i| e[i]).collect(), coefficient: format_rational(c) })
        .collect()
}

/// Rejects repeated exponents and zero coefficients so that documents are
/// canonical.
pub fn laurent_from_doc(doc: &[TermDoc], nvars: usize, location: &str) -> Result<LaurentPolynomial> {
    let mut seen = BTreeMap::new();
    for (k, t) in doc.iter().enumerate() {
        let here = format!("{location}[{k}]");
        if t.exponents.len() != nvars {
            return Err(Error::parse(&here, format!("{} exponents for {nvars} variables", t.exponents.len())));
        }
        let c = rational_at(&t.coefficient, &format!("{here}.coefficient"))?;
        if num_traits::Zero::is_zero(&c) {
            return Err(Error::parse(&here, "zero coefficient"));
        }
        if seen.insert(ExponentVector::new(t.exponents.clone()), c).is_some() {
            return Err(Error::parse(&here, "repeated exponent vector"));
        }
    }
    LaurentPolynomial::from_terms(nvars, seen)
}

pub fn parse_laurent(text: &str, nvars: usize) -> Result<LaurentPolynomial> {
    let doc: LaurentDoc = from_json(text)?;
    laurent_from_doc(&doc, nvars, "terms")
}

pub fn laurent_to_json(p: &LaurentPolynomial) -> String {
    serde_json::to_string(&laurent_to_doc(p)).expect("plain data serializes")
}

// ---- torus data ----

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorusDoc {
    pub rank: usize,
    pub weights: Vec<Vec<i64>>,
    pub etas: Vec<Option<Vec<String>>>,
}

pub fn torus_to_doc(td: &TorusData) -> TorusDoc {
    TorusDoc {
        rank: td.rank(),
        weights: td.weights().to_vec(),
        etas: (0..td.n()).map(|i| td.eta(i).map(rational_strings)).collect(),
    }
}

pub fn torus_from_doc(doc: &TorusDoc) -> Result<TorusData> {
    let etas = doc
        .etas
        .iter()
        .enumerate()
        .map(|(i, e)| e.as_deref().map(|row| rational_row(row, &format!("etas[{i}]"))).transpose())
        .collect::<Result<Vec<_>>>()?;
    TorusData::new(doc.rank, doc.weights.clone(), etas)
}

pub fn parse_torus(text: &str) -> Result<TorusData> {
    torus_from_doc(&from_json(text)?)
}

// ---- algebra specs ----

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepDoc {
    /// Images of earlier generators, keyed by generator number.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub alpha: BTreeMap<usize, LaurentDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub delta: BTreeMap<usize, LaurentDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub n: usize,
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    pub steps: Vec<StepDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torus: Option<TorusDoc>,
}

pub fn spec_to_doc(spec: &IteratedPPASpec, torus: Option<&TorusData>) -> AlgebraDoc {
    let images = |v: &[LaurentPolynomial]| -> BTreeMap<usize, LaurentDoc> {
        v.iter().enumerate().filter(|(_, p)| !p.is_zero()).map(|(j, p)| (j + 1, laurent_to_doc(p))).collect()
    };
    let steps = (0..spec.n())
        .map(|i| {
            let st = spec.step(i);
            StepDoc { alpha: images(&st.alpha), delta: images(&st.delta), s: st.s.as_ref().map(format_rational) }
        })
        .collect();
    AlgebraDoc {
        n: spec.n(),
        mode: spec.mode(),
        names: Some(spec.names().to_vec()),
        steps,
        torus: torus.map(torus_to_doc),
    }
}

pub fn spec_from_doc(doc: &AlgebraDoc) -> Result<(IteratedPPASpec, Option<TorusData>)> {
    let n = doc.n;
    if doc.steps.len() != n {
        return Err(Error::parse("steps", format!("{} steps for n = {n}", doc.steps.len())));
    }
    let mut spec = IteratedPPASpec::new(n, doc.mode);
    if let Some(names) = &doc.names {
        spec = spec.with_names(names.clone()).map_err(|e| Error::parse("names", e.to_string()))?;
    }
    for (i, st) in doc.steps.iter().enumerate() {
        for (kind, map) in [("alpha", &st.alpha), ("delta", &st.delta)] {
            for (&j, terms) in map {
                let here = format!("steps[{i}].{kind}.{j}");
                if j == 0 || j > i {
                    return Err(Error::parse(&here, format!("step {} has images for generators 1..{} only", i + 1, i)));
                }
                let p = laurent_from_doc(terms, n, &here)?;
                let set = if kind == "alpha" { spec.set_alpha(i, j - 1, p) } else { spec.set_delta(i, j - 1, p) };
                set.map_err(|e| Error::parse(&here, e.to_string()))?;
            }
        }
        if let Some(s) = &st.s {
            spec.set_s(i, Some(rational_at(s, &format!("steps[{i}].s"))?))?;
        }
    }
    let torus = doc.torus.as_ref().map(torus_from_doc).transpose()?;
    if let Some(td) = &torus {
        if td.n() != n {
            return Err(Error::parse("torus.weights", format!("{} weights for n = {n}", td.n())));
        }
    }
    Ok((spec, torus))
}

pub fn parse_algebra_spec(text: &str) -> Result<(IteratedPPASpec, Option<TorusData>)> {
    spec_from_doc(&from_json(text)?)
}

pub fn spec_to_json(spec: &IteratedPPASpec, torus: Option<&TorusData>) -> String {
    serde_json::to_string(&spec_to_doc(spec, torus)).expect("plain data serializes")
}

// ---- skew matrices ----

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SkewDoc {
    pub n: usize,
    /// Scalar expressions, see [`parse_scalar_expr`].
    pub entries: Vec<Vec<String>>,
}

pub fn skew_to_doc(m: &SkewMatrix) -> SkewDoc {
    SkewDoc { n: m.n(), entries: m.entries().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect() }
}

pub fn skew_from_doc(doc: &SkewDoc) -> Result<SkewMatrix> {
    if doc.entries.len() != doc.n {
        return Err(Error::parse("entries", format!("{} rows for n = {}", doc.entries.len(), doc.n)));
    }
    let mut rows = Vec::with_capacity(doc.n);
    for (i, row) in doc.entries.iter().enumerate() {
        if row.len() != doc.n {
            return Err(Error::parse(format!("entries[{i}]"), format!("{} entries for n = {}", row.len(), doc.n)));
        }
        let parsed = row
            .iter()
            .enumerate()
            .map(|(j, s)| {
                parse_scalar_expr(s).map_err(|e| match e {
                    Error::Parse { location, message } => Error::parse(format!("entries[{i}][{j}], {location}"), message),
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(parsed);
    }
    SkewMatrix::new(rows).map_err(|e| Error::parse("entries", e.to_string()))
}

pub fn parse_skew_matrix(text: &str) -> Result<SkewMatrix> {
    skew_from_doc(&from_json(text)?)
}

// ---- catalog parameters ----

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilyParamsDoc {
    Affine { q: Vec<Vec<String>> },
    Matrices { lambda: String, p: Vec<Vec<String>> },
    SymplecticEuclidean { gamma: Vec<Vec<String>>, p: Vec<String>, q: Vec<String> },
    OddEuclidean { gamma: Vec<Vec<String>>, p: Vec<String>, q: Vec<String>, lambda: String },
    Symmetric { n: usize },
    Antisymmetric { n: usize },
}

pub fn params_to_doc(params: &FamilyParams) -> FamilyParamsDoc {
    match params {
        FamilyParams::Affine { q } => FamilyParamsDoc::Affine { q: matrix_strings(q) },
        FamilyParams::Matrices { lambda, p } => {
            FamilyParamsDoc::Matrices { lambda: format_rational(lambda), p: matrix_strings(p) }
        }
        FamilyParams::SymplecticEuclidean { gamma, p, q } => FamilyParamsDoc::SymplecticEuclidean {
            gamma: matrix_strings(gamma),
            p: rational_strings(p),
            q: rational_strings(q),
        },
        FamilyParams::OddEuclidean { gamma, p, q, lambda } => FamilyParamsDoc::OddEuclidean {
            gamma: matrix_strings(gamma),
            p: rational_strings(p),
            q: rational_strings(q),
            lambda: format_rational(lambda),
        },
        FamilyParams::Symmetric { n } => FamilyParamsDoc::Symmetric { n: *n },
        FamilyParams::Antisymmetric { n } => FamilyParamsDoc::Antisymmetric { n: *n },
    }
}

/// Converts and validates.
pub fn params_from_doc(doc: &FamilyParamsDoc) -> Result<FamilyParams> {
    let params = match doc {
        FamilyParamsDoc::Affine { q } => FamilyParams::Affine { q: rational_matrix(q, "q")? },
        FamilyParamsDoc::Matrices { lambda, p } => {
            FamilyParams::Matrices { lambda: rational_at(lambda, "lambda")?, p: rational_matrix(p, "p")? }
        }
        FamilyParamsDoc::SymplecticEuclidean { gamma, p, q } => FamilyParams::SymplecticEuclidean {
            gamma: rational_matrix(gamma, "gamma")?,
            p: rational_row(p, "p")?,
            q: rational_row(q, "q")?,
        },
        FamilyParamsDoc::OddEuclidean { gamma, p, q, lambda } => FamilyParams::OddEuclidean {
            gamma: rational_matrix(gamma, "gamma")?,
            p: rational_row(p, "p")?,
            q: rational_row(q, "q")?,
            lambda: rational_at(lambda, "lambda")?,
        },
        FamilyParamsDoc::Symmetric { n } => FamilyParams::Symmetric { n: *n },
        FamilyParamsDoc::Antisymmetric { n } => FamilyParams::Antisymmetric { n: *n },
    };
    params.validate()?;
    Ok(params)
}

pub fn parse_family_params(text: &str) -> Result<FamilyParams> {
    params_from_doc(&from_json(text)?)
}

pub fn params_json(params: &FamilyParams) -> Value {
    serde_json::to_value(params_to_doc(params)).expect("plain data serializes")
}

/// Family named in a parameter document, before conversion.
pub fn doc_family(doc: &FamilyParamsDoc) -> Family {
    match doc {
        FamilyParamsDoc::Affine { .. } => Family::Affine,
        FamilyParamsDoc::Matrices { .. } => Family::Matrices,
        FamilyParamsDoc::SymplecticEuclidean { .. } => Family::SymplecticEuclidean,
        FamilyParamsDoc::OddEuclidean { .. } => Family::OddEuclidean,
        FamilyParamsDoc::Symmetric { .. } => Family::Symmetric,
        FamilyParamsDoc::Antisymmetric { .. } => Family::Antisymmetric,
    }
}

// ---- normalization results ----

fn log_json(entry: &LogEntry) -> Value {
    match entry {
        LogEntry::Deletion { generator, position, s, certificate } => json!({
            "kind": "deletion",
            "generator": generator + 1,
            "position": position + 1,
            "s": rational_json(s),
            "certificate": certificate.as_ref().map(|c| json!({
                "identities": c.identities,
                "failures": c.failures,
            })),
        }),
        LogEntry::Reorder { generator, from, to, order } => json!({
            "kind": "reorder",
            "generator": generator + 1,
            "from": from + 1,
            "to": to + 1,
            "order": order.iter().map(|g| g + 1).collect::<Vec<_>>(),
        }),
    }
}

pub fn gk_result_json(r: &GKResult) -> Value {
    let steps: Vec<Value> = r
        .report
        .steps
        .iter()
        .map(|v| {
            json!({
                "step": v.step + 1,
                "nilpotency": v.nilpotency,
                "s": v.s.as_ref().map(rational_json),
                "s_source": v.s_source.to_string(),
                "lambda": rational_strings(&v.lambda),
            })
        })
        .collect();
    json!({
        "names": r.names,
        "lambda": quadratic_json(&r.lambda_out),
        "log": r.log.iter().map(log_json).collect::<Vec<_>>(),
        "report": { "steps": steps },
        "certified": r.certified(),
    })
}
