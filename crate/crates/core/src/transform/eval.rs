use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use super::term::TransformSum;
use crate::error::{Error, Result};
use crate::kernel::rational::{dot, format_q, to_f64, Q};

/// `sum_e c_e exp(e)`, keyed by the exact exponent `e = <v, z>`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ExpValue {
    #[serde(serialize_with = "ser_map")]
    pub by_exponent: BTreeMap<Q, Q>,
}

fn ser_map<S: serde::Serializer>(m: &BTreeMap<Q, Q>, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(m.len()))?;
    for (e, c) in m {
        seq.serialize_element(&[format_q(e), format_q(c)])?;
    }
    seq.end()
}

impl ExpValue {
    pub fn to_f64(&self) -> f64 {
        self.by_exponent
            .iter()
            .map(|(e, c)| to_f64(c) * to_f64(e).exp())
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.by_exponent.is_empty()
    }
}

fn pole(w: &[Q]) -> Error {
    Error::PoleAt(w.iter().map(format_q).collect())
}

/// Exact value at a rational point.
pub fn evaluate_exact(s: &TransformSum, z: &[Q]) -> Result<ExpValue> {
    let mut by_exponent: BTreeMap<Q, Q> = BTreeMap::new();
    for t in &s.terms {
        if t.vertex.len() != z.len() {
            return Err(Error::DimensionMismatch {
                expected: t.vertex.len(),
                found: z.len(),
            });
        }
        let mut den = Q::from_integer(1.into());
        for w in &t.forms {
            let x = dot(w, z);
            if x.is_zero() {
                return Err(pole(w));
            }
            den *= x;
        }
        *by_exponent.entry(dot(&t.vertex, z)).or_insert_with(Q::zero) += &t.coeff / den;
    }
    by_exponent.retain(|_, c| !c.is_zero());
    Ok(ExpValue { by_exponent })
}

/// Floating-point value at a real point.
pub fn evaluate_numeric(s: &TransformSum, z: &[f64]) -> Result<f64> {
    let mut acc = 0.0;
    for t in &s.terms {
        if t.vertex.len() != z.len() {
            return Err(Error::DimensionMismatch {
                expected: t.vertex.len(),
                found: z.len(),
            });
        }
        let mut den = 1.0;
        for w in &t.forms {
            let x: f64 = w.iter().zip(z).map(|(a, b)| to_f64(a) * b).sum();
            if x == 0.0 {
                return Err(pole(w));
            }
            den *= x;
        }
        let e: f64 = t.vertex.iter().zip(z).map(|(a, b)| to_f64(a) * b).sum();
        acc += to_f64(&t.coeff) * e.exp() / den;
    }
    Ok(acc)
}

/// Twelve significant digits in scientific notation.
pub fn format_sci(x: f64) -> String {
    format!("{:.11e}", x)
}
