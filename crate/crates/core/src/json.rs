//! JSON encodings for sections, vectors, matrices and forms.
//!
//! A section is `{"open": ["a","b"], "values": {"a": "1/2", "b": 3}}`; a bare
//! rational (JSON integer or `"p/q"` string) stands for the constant section
//! over the open set in context. Matrices are arrays of rows of sections.

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::exterior::KForm;
use crate::free_module::{SectionMatrix, SectionVector};
use crate::scalar::{Polynomial, Rational};
use crate::sheaf::Section;
use crate::site::{FiniteSpace, OpenSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct FormatError(pub String);

impl FormatError {
    fn new(msg: impl Into<String>) -> Self {
        FormatError(msg.into())
    }
}

pub fn rational_from_json(value: &Value) -> Result<Rational, FormatError> {
    serde_json::from_value(value.clone()).map_err(|e| FormatError::new(format!("bad rational {value}: {e}")))
}

pub fn rational_to_json(r: &Rational) -> Value {
    serde_json::to_value(r).expect("rational serializes")
}

pub fn open_to_json(space: &FiniteSpace, u: OpenSet) -> Value {
    json!(space.labels(u))
}

pub fn open_from_json(space: &FiniteSpace, value: &Value) -> Result<OpenSet, FormatError> {
    let labels: Vec<String> =
        serde_json::from_value(value.clone()).map_err(|e| FormatError::new(format!("bad open set {value}: {e}")))?;
    space.open_set(&labels).map_err(|e| FormatError::new(e.to_string()))
}

pub fn section_to_json(space: &FiniteSpace, s: &Section) -> Value {
    let values: Map<String, Value> = s
        .iter()
        .map(|(p, v)| (space.label(p).to_string(), rational_to_json(v)))
        .collect();
    json!({ "open": open_to_json(space, s.domain()), "values": values })
}

/// Parses a section over `domain`: either a bare rational (constant section)
/// or a section object whose `open`, when given, must equal `domain`.
pub fn section_from_json(space: &FiniteSpace, domain: OpenSet, value: &Value) -> Result<Section, FormatError> {
    let Value::Object(obj) = value else {
        return Ok(Section::constant(domain, rational_from_json(value)?));
    };
    if let Some(open) = obj.get("open") {
        let u = open_from_json(space, open)?;
        if u != domain {
            return Err(FormatError::new(format!(
                "section over {:?} where {:?} was expected",
                space.labels(u),
                space.labels(domain)
            )));
        }
    }
    let values = obj
        .get("values")
        .and_then(Value::as_object)
        .ok_or_else(|| FormatError::new("section object needs a \"values\" map"))?;
    for key in values.keys() {
        let p = space.point_index(key).map_err(|e| FormatError::new(e.to_string()))?;
        if !domain.contains(p) {
            return Err(FormatError::new(format!("value given at {key:?} outside the open set")));
        }
    }
    let mut out = Vec::with_capacity(domain.len());
    for p in domain.points() {
        let label = space.label(p);
        let v = values
            .get(label)
            .ok_or_else(|| FormatError::new(format!("section has no value at {label:?}")))?;
        out.push(rational_from_json(v)?);
    }
    Section::new(domain, out).map_err(|e| FormatError::new(e.to_string()))
}

/// Sections as bare rationals when constant over a nonempty open, full
/// objects otherwise.
pub fn compact_section_json(space: &FiniteSpace, s: &Section) -> Value {
    match s.as_constant() {
        Some(c) => rational_to_json(c),
        None => section_to_json(space, s),
    }
}

pub fn vector_to_json(space: &FiniteSpace, v: &SectionVector) -> Value {
    Value::Array(v.entries().iter().map(|s| compact_section_json(space, s)).collect())
}

pub fn vector_from_json(space: &FiniteSpace, domain: OpenSet, value: &Value) -> Result<SectionVector, FormatError> {
    let items = value
        .as_array()
        .ok_or_else(|| FormatError::new("vector must be a JSON array"))?;
    let entries = items
        .iter()
        .map(|v| section_from_json(space, domain, v))
        .collect::<Result<Vec<_>, _>>()?;
    SectionVector::new(domain, entries).map_err(|e| FormatError::new(e.to_string()))
}

pub fn matrix_to_json(space: &FiniteSpace, m: &SectionMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array(
                    (0..m.cols())
                        .map(|j| compact_section_json(space, m.get(i, j)))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn matrix_from_json(space: &FiniteSpace, domain: OpenSet, value: &Value) -> Result<SectionMatrix, FormatError> {
    let rows = value
        .as_array()
        .ok_or_else(|| FormatError::new("matrix must be an array of rows"))?;
    let cols = rows.first().and_then(Value::as_array).map_or(0, Vec::len);
    let mut entries = Vec::with_capacity(rows.len() * cols);
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| FormatError::new(format!("matrix row {i} is not an array")))?;
        if row.len() != cols {
            return Err(FormatError::new(format!(
                "matrix row {i} has {} entries, expected {cols}",
                row.len()
            )));
        }
        for v in row {
            entries.push(section_from_json(space, domain, v)?);
        }
    }
    SectionMatrix::new(domain, rows.len(), cols, entries).map_err(|e| FormatError::new(e.to_string()))
}

pub fn polynomial_to_json(space: &FiniteSpace, p: &Polynomial<Section>) -> Value {
    Value::Array(p.coeffs().iter().map(|c| compact_section_json(space, c)).collect())
}

/// `{"degree": k, "rank": n, "coeffs": {"[1,3]": c, …}}` with 1-based
/// strictly increasing multi-indices; zero coefficients are omitted.
pub fn kform_to_json(space: &FiniteSpace, form: &KForm) -> Value {
    let coeffs: Map<String, Value> = form
        .terms()
        .filter(|(_, c)| !c.is_identically_zero())
        .map(|(idx, c)| {
            let key = format!(
                "[{}]",
                idx.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
            );
            (key, compact_section_json(space, c))
        })
        .collect();
    json!({ "degree": form.degree(), "rank": form.rank(), "coeffs": coeffs })
}

pub fn kform_from_json(space: &FiniteSpace, domain: OpenSet, value: &Value) -> Result<KForm, FormatError> {
    let field = |name: &str| {
        value
            .get(name)
            .and_then(Value::as_u64)
            .map(|v| v as usize)
            .ok_or_else(|| FormatError::new(format!("k-form needs a non-negative integer {name:?}")))
    };
    let degree = field("degree")?;
    let rank = field("rank")?;
    let coeffs = match value.get("coeffs") {
        None => Map::new(),
        Some(Value::Object(m)) => m.clone(),
        Some(other) => return Err(FormatError::new(format!("k-form coeffs must be an object, got {other}"))),
    };
    let mut form = KForm::zero(domain, rank, degree);
    for (key, c) in &coeffs {
        let index: Vec<usize> = serde_json::from_str(key)
            .map_err(|_| FormatError::new(format!("bad multi-index {key:?}")))?;
        if index.contains(&0) {
            return Err(FormatError::new(format!("multi-index {key:?} is not 1-based")));
        }
        let zero_based: Vec<usize> = index.iter().map(|i| i - 1).collect();
        let slot = form
            .coeff_mut(&zero_based)
            .map_err(|_| FormatError::new(format!("multi-index {key:?} is not strictly increasing within rank {rank}")))?;
        *slot = section_from_json(space, domain, c)?;
    }
    Ok(form)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn section_round_trip() {
        let space = FiniteSpace::sierpinski();
        let u = space.whole();
        let v = json!({"open": ["a", "b"], "values": {"a": "1/2", "b": 3}});
        let s = section_from_json(&space, u, &v).unwrap();
        assert_eq!(s.values(), &[Rational::new(1, 2), Rational::from(3)]);
        assert_eq!(section_to_json(&space, &s), v);
    }

    #[test]
    fn bare_rationals_promote_to_constants() {
        let space = FiniteSpace::sierpinski();
        let m = matrix_from_json(&space, space.whole(), &json!([[0, "1/2"], [-1, 0]])).unwrap();
        assert_eq!(m.get(0, 1), &Section::constant(space.whole(), Rational::new(1, 2)));
        assert_eq!(matrix_to_json(&space, &m), json!([[0, "1/2"], [-1, 0]]));
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        let space = FiniteSpace::sierpinski();
        let u = space.whole();
        assert!(matrix_from_json(&space, u, &json!([[1, 2], [3]])).is_err());
        assert!(section_from_json(&space, u, &json!({"values": {"a": 1}})).is_err());
        assert!(section_from_json(&space, u, &json!({"open": ["a"], "values": {"a": 1}})).is_err());
        assert!(section_from_json(&space, u, &json!({"values": {"a": 1, "b": 2, "z": 0}})).is_err());
        assert!(section_from_json(&space, u, &json!(0.25)).is_err());
        assert!(open_from_json(&space, &json!(["b"])).is_err());
    }

    #[test]
    fn kform_round_trip() {
        let space = FiniteSpace::sierpinski();
        let u = space.whole();
        let v = json!({"degree": 2, "rank": 4, "coeffs": {"[1,3]": 1, "[2,4]": "-1/2"}});
        let form = kform_from_json(&space, u, &v).unwrap();
        assert_eq!(form.coeff(&[0, 2]).unwrap(), &Section::one(u));
        assert!(form.coeff(&[0, 1]).unwrap().is_identically_zero());
        assert_eq!(kform_to_json(&space, &form), v);
        for bad in [
            json!({"degree": 2, "rank": 4, "coeffs": {"[3,1]": 1}}),
            json!({"degree": 2, "rank": 4, "coeffs": {"[0,1]": 1}}),
            json!({"degree": 2, "rank": 4, "coeffs": {"[1,5]": 1}}),
            json!({"degree": 2, "coeffs": {}}),
        ] {
            assert!(kform_from_json(&space, u, &bad).is_err(), "{bad}");
        }
    }
}
