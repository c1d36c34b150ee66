//! Ad-hoc calculations on JSON-encoded values, as exposed by `opsymbol compute`.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::diffop::DifferentialOperator;
use crate::error::{Error, Result};
use crate::gl::GlSymbol;
use crate::json::Json;
use crate::symbol::SymbolElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Compose,
    Bracket,
    Sigma,
    Product,
    Invert,
    Delta,
    Decompose,
}

impl Op {
    pub const ALL: [Op; 7] = [
        Op::Compose,
        Op::Bracket,
        Op::Sigma,
        Op::Product,
        Op::Invert,
        Op::Delta,
        Op::Decompose,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Op::Compose => "compose",
            Op::Bracket => "bracket",
            Op::Sigma => "sigma",
            Op::Product => "product",
            Op::Invert => "invert",
            Op::Delta => "delta",
            Op::Decompose => "decompose",
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Op {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Op::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown operation `{s}`")))
    }
}

/// A decoded input value, recognised by its keys.
#[derive(Clone, Debug, PartialEq)]
pub enum Operand {
    Operator(DifferentialOperator),
    Symbol(SymbolElement),
    Gl(GlSymbol),
}

impl Operand {
    pub fn from_json_value(value: Value) -> Result<Self> {
        let keys = value
            .as_object()
            .ok_or_else(|| Error::Schema {
                path: String::new(),
                message: "expected an object".into(),
            })?;
        if keys.contains_key("terms") {
            DifferentialOperator::from_json_value(value).map(Operand::Operator)
        } else if keys.contains_key("components") {
            SymbolElement::from_json_value(value).map(Operand::Symbol)
        } else if keys.contains_key("A") {
            GlSymbol::from_json_value(value).map(Operand::Gl)
        } else {
            Err(Error::Schema {
                path: String::new(),
                message: "expected an operator (`terms`), symbol (`components`) or gl symbol (`A`)".into(),
            })
        }
    }

    pub fn to_json_value(&self) -> Value {
        match self {
            Operand::Operator(t) => t.to_json_value(),
            Operand::Symbol(p) => p.to_json_value(),
            Operand::Gl(p) => p.to_json_value(),
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Operand::Operator(_) => "operator",
            Operand::Symbol(_) => "symbol",
            Operand::Gl(_) => "gl symbol",
        }
    }
}

/// Decodes a single value or an array of values.
pub fn parse_operands(value: Value) -> Result<Vec<Operand>> {
    match value {
        Value::Array(items) => items
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                Operand::from_json_value(v).map_err(|e| match e {
                    Error::Schema { path, message } => Error::Schema {
                        path: if path.is_empty() { format!("[{i}]") } else { format!("[{i}].{path}") },
                        message,
                    },
                    other => other,
                })
            })
            .collect(),
        single => Ok(vec![Operand::from_json_value(single)?]),
    }
}

fn unsupported(op: Op, operands: &[Operand]) -> Error {
    let kinds: Vec<&str> = operands.iter().map(Operand::kind).collect();
    Error::Config(format!("`{op}` does not apply to [{}]", kinds.join(", ")))
}

fn fold<T: Clone>(items: &[T], f: impl Fn(&T, &T) -> Result<T>) -> Result<T> {
    let (first, rest) = items
        .split_first()
        .ok_or_else(|| Error::Config("no operands".into()))?;
    rest.iter().try_fold(first.clone(), |acc, x| f(&acc, x))
}

fn same_kind<T: Clone>(operands: &[Operand], pick: impl Fn(&Operand) -> Option<&T>) -> Option<Vec<T>> {
    operands.iter().map(|o| pick(o).cloned()).collect()
}

/// Applies `op` to the operands. Binary operations fold left over two or more inputs.
pub fn run(op: Op, operands: &[Operand], degree: Option<i64>) -> Result<Value> {
    let ops = same_kind(operands, |o| match o {
        Operand::Operator(t) => Some(t),
        _ => None,
    });
    let syms = same_kind(operands, |o| match o {
        Operand::Symbol(p) => Some(p),
        _ => None,
    });
    let gls = same_kind(operands, |o| match o {
        Operand::Gl(p) => Some(p),
        _ => None,
    });
    let binary = operands.len() >= 2;
    let unary = operands.len() == 1;
    match op {
        Op::Compose | Op::Product if binary => {
            if let Some(ts) = ops {
                return Ok(fold(&ts, |a, b| a.compose(b))?.to_json_value());
            }
            if op == Op::Product {
                if let Some(ps) = syms {
                    return Ok(fold(&ps, |a, b| a.product(b))?.to_json_value());
                }
                if let Some(ps) = gls {
                    return Ok(fold(&ps, |a, b| a.product(b))?.to_json_value());
                }
            }
        }
        Op::Bracket if binary => {
            if let Some(ts) = ops {
                return Ok(fold(&ts, |a, b| a.commutator(b))?.to_json_value());
            }
            if let Some(ps) = syms {
                return Ok(fold(&ps, |a, b| a.bracket(b))?.to_json_value());
            }
            if let Some(ps) = gls {
                return Ok(fold(&ps, |a, b| a.bracket(b))?.to_json_value());
            }
        }
        Op::Sigma if unary => {
            if let Some(ts) = ops {
                let s = match degree {
                    Some(k) => SymbolElement::sigma(&ts[0], k)?,
                    None => SymbolElement::sigma_pson(&ts[0])?,
                };
                return Ok(s.to_json_value());
            }
        }
        Op::Invert if unary => match &operands[0] {
            Operand::Symbol(p) => return Ok(p.invert()?.to_json_value()),
            Operand::Gl(p) => return Ok(p.invert()?.to_json_value()),
            Operand::Operator(_) => {}
        },
        Op::Delta if unary => {
            if let Some(ps) = syms {
                return Ok(ps[0].delta().to_json_value());
            }
        }
        Op::Decompose if unary => match &operands[0] {
            Operand::Symbol(p) => {
                let (j, pol) = p.decompose();
                return Ok(json!({ "j_part": j.to_json_value(), "pol_part": pol.to_json_value() }));
            }
            Operand::Gl(p) => {
                let (a, u) = p.j_decompose();
                return Ok(json!({ "j_part": a.to_json_value(), "function": u.to_json_value() }));
            }
            Operand::Operator(_) => {}
        },
        _ => {}
    }
    Err(unsupported(op, operands))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn operands(text: &str) -> Vec<Operand> {
        parse_operands(serde_json::from_str(text).unwrap()).unwrap()
    }

    const D1: &str = r#"{"m":1,"n":2,"terms":[{"alpha":[1],"coeff":[["1","0"],["0","1"]]}]}"#;
    const X1: &str = r#"{"m":1,"n":2,"terms":[{"alpha":[0],"coeff":[["x1","0"],["0","x1"]]}]}"#;

    #[test]
    fn bracket_of_derivative_and_coordinate_is_identity() {
        let out = run(Op::Bracket, &operands(&format!("[{D1},{X1}]")), None).unwrap();
        let id = DifferentialOperator::identity(1, 2);
        assert_eq!(DifferentialOperator::from_json_value(out).unwrap(), id);
    }

    #[test]
    fn sigma_of_derivative() {
        let out = run(Op::Sigma, &operands(D1), None).unwrap();
        let s = SymbolElement::from_json_value(out).unwrap();
        assert_eq!(s.delta().to_canonical_string(), "xi1");
        let zero = run(Op::Sigma, &operands(D1), Some(3)).unwrap();
        assert!(SymbolElement::from_json_value(zero).unwrap().is_zero());
        assert!(run(Op::Sigma, &operands(D1), Some(0)).is_err());
    }

    #[test]
    fn gl_inverse_and_decompose() {
        let p = r#"{"m":1,"n":2,"A":[["0","1"],["0","0"]],"u":"2"}"#;
        let inv = run(Op::Invert, &operands(p), None).unwrap();
        assert_eq!(inv["u"], "1/2");
        assert_eq!(inv["A"][0][1], "-1/4");
        let d = run(Op::Decompose, &operands(p), None).unwrap();
        assert_eq!(d["function"], "2");
    }

    #[test]
    fn mismatched_kinds_are_rejected() {
        let p = r#"{"m":1,"n":2,"A":[["0","1"],["0","0"]],"u":"2"}"#;
        assert!(run(Op::Compose, &operands(&format!("[{D1},{p}]")), None).is_err());
        assert!(run(Op::Delta, &operands(D1), None).is_err());
        assert!("frobnicate".parse::<Op>().is_err());
    }

    #[test]
    fn array_paths_are_prefixed() {
        let bad = r#"[{"m":1,"n":2,"terms":[]},{"m":1,"n":2,"terms":[{"alpha":[0],"coeff":[["x9","0"],["0","0"]]}]}]"#;
        match parse_operands(serde_json::from_str(bad).unwrap()) {
            Err(Error::Schema { path, .. }) => assert!(path.starts_with("[1]."), "{path}"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
