//! Exact evaluation of parsed expressions.

use std::fmt;

use matcomp::coalgebra::{antipode, coproduct_element, eulerian_idempotent};
use matcomp::cofree::{exp_map, log_map};
use matcomp::hoffman::{evaluate_map, phi, phi_inv};
use matcomp::{Alphabet, HElement, HTensor};
use serde::Serialize;

use crate::expr::{parse, Expr, ExprKind, Func, Pos};
use crate::CliError;

/// Result of an evaluation: an element of H or of H ⊗ H.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Element(HElement),
    Tensor(HTensor),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Element(_) => "element",
            Value::Tensor(_) => "tensor",
        }
    }

    /// Serializable mirror of the printed form, terms in print order.
    pub fn report(&self) -> ValueReport {
        let terms = match self {
            Value::Element(x) => x
                .sorted_terms()
                .into_iter()
                .map(|(a, k)| TermReport {
                    coefficient: k.to_string(),
                    composition: Some(a.to_string()),
                    left: None,
                    right: None,
                })
                .collect(),
            Value::Tensor(t) => t
                .sorted_terms()
                .into_iter()
                .map(|((a, b), k)| TermReport {
                    coefficient: k.to_string(),
                    composition: None,
                    left: Some(a.to_string()),
                    right: Some(b.to_string()),
                })
                .collect(),
        };
        ValueReport {
            kind: self.kind(),
            text: self.to_string(),
            terms,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Element(x) => write!(f, "{x}"),
            Value::Tensor(t) => write!(f, "{t}"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ValueReport {
    pub kind: &'static str,
    pub text: String,
    pub terms: Vec<TermReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TermReport {
    pub coefficient: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub composition: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub left: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub right: Option<String>,
}

/// Parses and evaluates `src`.
pub fn eval_str(src: &str, alphabet: Alphabet) -> Result<Value, CliError> {
    evaluate(&parse(src, alphabet)?)
}

/// Parses `src` and requires an element of H.
pub fn eval_element(src: &str, alphabet: Alphabet) -> Result<HElement, CliError> {
    let e = parse(src, alphabet)?;
    let pos = e.pos;
    element(evaluate(&e)?, pos, "this command")
}

fn element(v: Value, pos: Pos, context: &str) -> Result<HElement, CliError> {
    match v {
        Value::Element(x) => Ok(x),
        Value::Tensor(_) => Err(CliError::Type {
            pos,
            message: format!("{context} needs an element, found a tensor"),
        }),
    }
}

pub fn evaluate(e: &Expr) -> Result<Value, CliError> {
    let at = |source| CliError::Eval { pos: e.pos, source };
    let elem = |x: &Expr, context: &str| -> Result<HElement, CliError> { element(evaluate(x)?, x.pos, context) };
    Ok(match &e.kind {
        ExprKind::Zero => Value::Element(HElement::zero()),
        ExprKind::Literal(a) => Value::Element(HElement::basis(a.clone())),
        ExprKind::Neg(x) => match evaluate(x)? {
            Value::Element(x) => Value::Element(-x),
            Value::Tensor(t) => Value::Tensor(-t),
        },
        ExprKind::Scale(k, x) => match evaluate(x)? {
            Value::Element(x) => Value::Element(x.scale(k)),
            Value::Tensor(t) => Value::Tensor(t.scale(k)),
        },
        ExprKind::Add(l, r) | ExprKind::Sub(l, r) => {
            let sub = matches!(e.kind, ExprKind::Sub(..));
            match (evaluate(l)?, evaluate(r)?) {
                (Value::Element(x), Value::Element(y)) => Value::Element(if sub { x - y } else { x + y }),
                (Value::Tensor(x), Value::Tensor(y)) => Value::Tensor(if sub { x - y } else { x + y }),
                (x, y) => {
                    return Err(CliError::Type {
                        pos: e.pos,
                        message: format!("cannot combine {} and {} with '{}'", an(x.kind()), an(y.kind()), if sub { '-' } else { '+' }),
                    })
                }
            }
        }
        ExprKind::Mul(m, l, r) => {
            let context = format!("the product {m}");
            let (x, y) = (elem(l, &context)?, elem(r, &context)?);
            Value::Element(m.mul_elements(&x, &y).map_err(at)?)
        }
        ExprKind::Tensor(l, r) => {
            let (x, y) = (elem(l, "(x)")?, elem(r, "(x)")?);
            let mut t = HTensor::zero();
            for (a, ka) in x.iter() {
                for (b, kb) in y.iter() {
                    t.add_term((a.clone(), b.clone()), ka * kb);
                }
            }
            Value::Tensor(t)
        }
        ExprKind::Call(func, x) => {
            let x = elem(x, &func.to_string())?;
            match func {
                Func::Delta => Value::Tensor(coproduct_element(&x)),
                Func::Phi => Value::Element(phi(&x).map_err(at)?),
                Func::PhiInv => Value::Element(phi_inv(&x).map_err(at)?),
                Func::Eulerian(m) => Value::Element(eulerian_idempotent(*m, &x).map_err(at)?),
                Func::Antipode(m) => Value::Element(antipode(*m, &x).map_err(at)?),
                Func::Log(m) => Value::Element(log_map(*m, &x).map_err(at)?),
                Func::Exp(m) => Value::Element(exp_map(*m, &x).map_err(at)?),
            }
        }
        ExprKind::Ev(f, g, x) => {
            let x = elem(x, "ev")?;
            // Merges never exceed the larger side of a term.
            let order = x.iter().map(|(a, _)| a.rows().max(a.cols())).max().unwrap_or(0).max(1);
            Value::Element(evaluate_map(&f.coeffs(order), &g.coeffs(order), &x).map_err(at)?)
        }
    })
}

fn an(kind: &str) -> String {
    match kind {
        "element" => "an element".into(),
        other => format!("a {other}"),
    }
}
