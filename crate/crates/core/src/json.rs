//! JSON wire formats.
//!
//! Polynomials travel as canonical strings (`"3/2 x1^2 xi1 - 1"`), matrices as
//! arrays of rows. Unknown fields are rejected, and every error carries the
//! path of the offending field.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::diffop::{DifferentialOperator, Order, Section};
use crate::error::{Error, Result};
use crate::gl::GlSymbol;
use crate::matrix::{MatrixPoly, RatMatrix};
use crate::morphism::MorphismSpec;
use crate::poly::{MultiIndex, PhasePolynomial, Poly, Polynomial, VarSpace};
use crate::rational::{format_rational, parse_rational};
use crate::symbol::SymbolElement;

/// Types with a JSON wire form.
pub trait Json: Sized {
    fn to_json_value(&self) -> Value;

    fn from_json_value(value: Value) -> Result<Self>;

    /// Compact canonical JSON text.
    fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("JSON values always serialize")
    }

    fn from_json(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json_value(value)
    }
}

fn decode<T: DeserializeOwned>(value: Value) -> Result<T> {
    serde_path_to_error::deserialize(value).map_err(|e| Error::Schema {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })
}

fn schema(path: impl Into<String>, message: impl std::fmt::Display) -> Error {
    Error::Schema {
        path: path.into(),
        message: message.to_string(),
    }
}

fn parse_poly<S: VarSpace>(m: usize, text: &str, path: &str) -> Result<Poly<S>> {
    Poly::parse(m, text).map_err(|e| schema(path, e))
}

pub(crate) fn matrix_to_rows<S: VarSpace>(a: &MatrixPoly<S>) -> Vec<Vec<String>> {
    a.rows()
        .map(|r| r.iter().map(|e| e.to_canonical_string()).collect())
        .collect()
}

fn rows_to_matrix<S: VarSpace>(
    m: usize,
    n: usize,
    rows: &[Vec<String>],
    path: &str,
) -> Result<MatrixPoly<S>> {
    if rows.len() != n {
        return Err(schema(path, format!("expected {n} rows, found {}", rows.len())));
    }
    let mut out = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(schema(
                format!("{path}[{i}]"),
                format!("expected {n} entries, found {}", row.len()),
            ));
        }
        let parsed = row
            .iter()
            .enumerate()
            .map(|(j, s)| parse_poly(m, s, &format!("{path}[{i}][{j}]")))
            .collect::<Result<Vec<_>>>()?;
        out.push(parsed);
    }
    MatrixPoly::from_rows(out).map_err(|e| schema(path, e))
}

fn check_bundle(m: usize, n: usize) -> Result<()> {
    if m == 0 {
        return Err(schema("m", "base dimension must be at least 1"));
    }
    if n == 0 {
        return Err(schema("n", "rank must be at least 1"));
    }
    Ok(())
}

impl<S: VarSpace> Json for Poly<S> {
    fn to_json_value(&self) -> Value {
        Value::String(self.to_canonical_string())
    }

    /// Needs the base dimension, so only `{"m": .., "poly": ..}` is accepted here.
    fn from_json_value(value: Value) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Wire {
            m: usize,
            poly: String,
        }
        let w: Wire = decode(value)?;
        parse_poly(w.m, &w.poly, "poly")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OperatorWire {
    m: usize,
    n: usize,
    terms: Vec<OperatorTermWire>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OperatorTermWire {
    alpha: Vec<u32>,
    coeff: Vec<Vec<String>>,
}

impl Json for DifferentialOperator {
    fn to_json_value(&self) -> Value {
        let wire = OperatorWire {
            m: self.base_dim(),
            n: self.rank(),
            terms: self
                .terms()
                .map(|(alpha, a)| OperatorTermWire {
                    alpha: alpha.exponents().to_vec(),
                    coeff: matrix_to_rows(a),
                })
                .collect(),
        };
        serde_json::to_value(wire).expect("serializable")
    }

    fn from_json_value(value: Value) -> Result<Self> {
        let w: OperatorWire = decode(value)?;
        check_bundle(w.m, w.n)?;
        let mut terms = Vec::with_capacity(w.terms.len());
        let mut seen = std::collections::BTreeSet::new();
        for (t, term) in w.terms.iter().enumerate() {
            if term.alpha.len() != w.m {
                return Err(schema(
                    format!("terms[{t}].alpha"),
                    format!("expected {} exponents, found {}", w.m, term.alpha.len()),
                ));
            }
            let alpha = MultiIndex::new(term.alpha.clone());
            if !seen.insert(alpha.clone()) {
                return Err(schema(format!("terms[{t}].alpha"), "duplicate multi-index"));
            }
            let coeff = rows_to_matrix(w.m, w.n, &term.coeff, &format!("terms[{t}].coeff"))?;
            terms.push((alpha, coeff));
        }
        Ok(DifferentialOperator::from_terms(w.m, w.n, terms))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SymbolWire {
    m: usize,
    n: usize,
    components: Vec<ComponentWire>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentWire {
    degree: u32,
    sl: Vec<Vec<String>>,
    scalar: String,
}

impl Json for SymbolElement {
    fn to_json_value(&self) -> Value {
        let wire = SymbolWire {
            m: self.base_dim(),
            n: self.rank(),
            components: self
                .components()
                .map(|(k, c)| ComponentWire {
                    degree: k,
                    sl: if k == 0 { Vec::new() } else { matrix_to_rows(c.sl()) },
                    scalar: c.scalar().to_canonical_string(),
                })
                .collect(),
        };
        serde_json::to_value(wire).expect("serializable")
    }

    fn from_json_value(value: Value) -> Result<Self> {
        let w: SymbolWire = decode(value)?;
        check_bundle(w.m, w.n)?;
        let mut out = SymbolElement::zero(w.m, w.n);
        let mut last: Option<u32> = None;
        for (i, c) in w.components.iter().enumerate() {
            let path = format!("components[{i}]");
            if last.is_some_and(|d| d >= c.degree) {
                return Err(schema(
                    format!("{path}.degree"),
                    "degrees must be strictly ascending",
                ));
            }
            last = Some(c.degree);
            let sl = if c.sl.is_empty() {
                MatrixPoly::zero(w.n, w.m)
            } else {
                rows_to_matrix(w.m, w.n, &c.sl, &format!("{path}.sl"))?
            };
            let scalar: PhasePolynomial = parse_poly(w.m, &c.scalar, &format!("{path}.scalar"))?;
            let part = SymbolElement::homogeneous(c.degree, sl, scalar).map_err(|e| match e {
                Error::NonzeroTrace => schema(format!("{path}.sl"), "sl-part must be traceless"),
                Error::NonHomogeneous { .. } => schema(
                    path.clone(),
                    format!(
                        "component of degree {} must have sl fiber degree {} and scalar fiber degree {}",
                        c.degree,
                        c.degree as i64 - 1,
                        c.degree
                    ),
                ),
                other => schema(path.clone(), other),
            })?;
            out = out.checked_add(&part)?;
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GlWire {
    m: usize,
    n: usize,
    #[serde(rename = "A")]
    a: Vec<Vec<String>>,
    u: String,
}

impl Json for GlSymbol {
    fn to_json_value(&self) -> Value {
        let wire = GlWire {
            m: self.base_dim(),
            n: self.rank(),
            a: matrix_to_rows(self.sl_part()),
            u: self.function_part().to_canonical_string(),
        };
        serde_json::to_value(wire).expect("serializable")
    }

    fn from_json_value(value: Value) -> Result<Self> {
        let w: GlWire = decode(value)?;
        check_bundle(w.m, w.n)?;
        let a = rows_to_matrix(w.m, w.n, &w.a, "A")?;
        let u: Polynomial = parse_poly(w.m, &w.u, "u")?;
        GlSymbol::new(a, u).map_err(|e| match e {
            Error::NonzeroTrace => schema("A", "matrix must be traceless"),
            other => schema("", other),
        })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismWire {
    #[serde(rename = "L")]
    l: Vec<Vec<String>>,
    c: Vec<String>,
    #[serde(rename = "G")]
    g: Vec<Vec<String>>,
}

fn rat_rows_to_json(a: &RatMatrix) -> Vec<Vec<String>> {
    (0..a.nrows())
        .map(|i| a.row(i).iter().map(format_rational).collect())
        .collect()
}

fn json_to_rat_matrix(rows: &[Vec<String>], path: &str) -> Result<RatMatrix> {
    let n = rows.len();
    let mut out = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(schema(
                format!("{path}[{i}]"),
                format!("expected {n} entries, found {}", row.len()),
            ));
        }
        out.push(
            row.iter()
                .enumerate()
                .map(|(j, s)| parse_rational(s).map_err(|e| schema(format!("{path}[{i}][{j}]"), e)))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    RatMatrix::from_rows(out).map_err(|e| schema(path, e))
}

impl Json for MorphismSpec {
    fn to_json_value(&self) -> Value {
        let wire = MorphismWire {
            l: rat_rows_to_json(self.base_map()),
            c: self.translation().iter().map(format_rational).collect(),
            g: rat_rows_to_json(self.gauge()),
        };
        serde_json::to_value(wire).expect("serializable")
    }

    fn from_json_value(value: Value) -> Result<Self> {
        let w: MorphismWire = decode(value)?;
        let l = json_to_rat_matrix(&w.l, "L")?;
        let g = json_to_rat_matrix(&w.g, "G")?;
        let c = w
            .c
            .iter()
            .enumerate()
            .map(|(i, s)| parse_rational(s).map_err(|e| schema(format!("c[{i}]"), e)))
            .collect::<Result<Vec<_>>>()?;
        MorphismSpec::new(l, c, g).map_err(|e| match e {
            Error::Singular(what) => schema(
                if what.contains("gauge") { "G" } else { "L" },
                what,
            ),
            Error::DimensionMismatch { .. } => schema("c", e),
            other => schema("", other),
        })
    }
}

impl Json for Section {
    fn to_json_value(&self) -> Value {
        Value::Array(self.components().iter().map(Json::to_json_value).collect())
    }

    fn from_json_value(value: Value) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Wire {
            m: usize,
            components: Vec<String>,
        }
        let w: Wire = decode(value)?;
        Ok(Section(
            w.components
                .iter()
                .enumerate()
                .map(|(i, s)| parse_poly(w.m, s, &format!("components[{i}]")))
                .collect::<Result<_>>()?,
        ))
    }
}

impl Order {
    pub fn to_json_value(&self) -> Value {
        match self {
            Order::NegInf => Value::String("-inf".into()),
            Order::Finite(k) => Value::from(*k),
        }
    }
}
