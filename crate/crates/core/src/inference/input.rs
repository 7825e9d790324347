//! Measure and possibility files for a knowledge base.
//!
//! A measure file is either `{"atoms": [w, …]}` with one weight per joint
//! assignment, or `{"factors": {var: {value: w, …}, …}}` giving an
//! independent product measure. A possibility file is
//! `{"grades": {var: {value: g, …}, …}}`. Numbers may be JSON numbers or
//! strings such as `"1/3"`; a file containing any string is exact.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::Value;

use crate::error::InferenceError;
use crate::inference::kb::Grounding;
use crate::scalar::Scalar;
use crate::semantics::{PossibilityAssignment, ProbabilityMeasure};

#[derive(Deserialize)]
#[serde(deny_unknown_fields, rename_all = "lowercase")]
enum MeasureFile {
    Atoms(Vec<Value>),
    Factors(BTreeMap<String, BTreeMap<String, Value>>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PossibilityFile {
    grades: BTreeMap<String, BTreeMap<String, Value>>,
}

fn invalid(msg: String) -> InferenceError {
    InferenceError::SemanticsMismatch(msg)
}

fn number<S: Scalar>(value: &Value, context: &str) -> Result<S, InferenceError> {
    let text = match value {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => {
            return Err(invalid(format!(
                "{context}: expected a number, found {other}"
            )))
        }
    };
    S::parse_literal(&text).ok_or_else(|| invalid(format!("{context}: `{text}` is not a number")))
}

fn has_strings(value: &Value) -> bool {
    match value {
        Value::String(_) => true,
        Value::Array(items) => items.iter().any(has_strings),
        Value::Object(map) => map.values().any(has_strings),
        _ => false,
    }
}

/// True when the file writes some number as a string, asking for exact
/// arithmetic.
pub fn wants_exact(text: &str) -> Result<bool, InferenceError> {
    let value: Value = serde_json::from_str(text)?;
    Ok(has_strings(&value))
}

/// Reads a measure file against the joint space of `grounding`.
pub fn parse_measure<S: Scalar>(
    text: &str,
    grounding: &Grounding,
) -> Result<ProbabilityMeasure<S>, InferenceError> {
    let atoms = grounding.space().atom_count();
    let weights: Vec<S> = match serde_json::from_str::<MeasureFile>(text)? {
        MeasureFile::Atoms(values) => {
            if values.len() != atoms {
                return Err(invalid(format!(
                    "measure lists {} weights for {atoms} atoms",
                    values.len()
                )));
            }
            values
                .iter()
                .enumerate()
                .map(|(i, v)| number(v, &format!("weight of atom {i}")))
                .collect::<Result<_, _>>()?
        }
        MeasureFile::Factors(factors) => {
            let mut weights = vec![S::one(); atoms];
            for (var, table) in &factors {
                let domain = grounding.domain(var)?;
                let mut factor = Vec::with_capacity(domain.len());
                for value in domain {
                    let w = table.get(value).ok_or_else(|| {
                        invalid(format!("factor `{var}` has no weight for `{value}`"))
                    })?;
                    factor.push(number::<S>(w, &format!("factor {var}[{value}]"))?);
                }
                if let Some(extra) = table.keys().find(|k| !domain.contains(k)) {
                    return Err(InferenceError::UnknownValue {
                        var: var.clone(),
                        value: extra.clone(),
                    });
                }
                let total = factor.iter().cloned().fold(S::zero(), |acc, w| acc + w);
                if !total.approx_eq(&S::one()) {
                    return Err(invalid(format!("factor `{var}` sums to {total}, not 1")));
                }
                for (atom, w) in weights.iter_mut().enumerate() {
                    let value = grounding.value_at(atom, var)?;
                    let j = domain
                        .iter()
                        .position(|v| v == value)
                        .expect("value from the domain");
                    *w = w.clone() * factor[j].clone();
                }
            }
            for var in grounding.variables() {
                if !factors.contains_key(var) {
                    let n = grounding.domain(var)?.len() as u64;
                    for w in weights.iter_mut() {
                        *w = w.clone() * S::ratio(1, n);
                    }
                }
            }
            weights
        }
    };
    Ok(ProbabilityMeasure::new(weights)?)
}

/// Reads a possibility file; every graded value must be declared.
pub fn parse_possibility<S: Scalar>(
    text: &str,
    grounding: &Grounding,
) -> Result<PossibilityAssignment<S>, InferenceError> {
    let file: PossibilityFile = serde_json::from_str(text)?;
    let mut grades = Vec::new();
    for (var, table) in &file.grades {
        let domain = grounding.domain(var)?;
        for (value, g) in table {
            if !domain.contains(value) {
                return Err(InferenceError::UnknownValue {
                    var: var.clone(),
                    value: value.clone(),
                });
            }
            grades.push((
                (var.clone(), value.clone()),
                number::<S>(g, &format!("grade of {var}[{value}]"))?,
            ));
        }
    }
    Ok(PossibilityAssignment::new(grades)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inference::kb::{build_space, KnowledgeBase, DEFAULT_MAX_ATOMS};
    use crate::Exact;

    fn grounding() -> Grounding {
        build_space(&KnowledgeBase::bundled(), DEFAULT_MAX_ATOMS).unwrap()
    }

    #[test]
    fn factor_measures_multiply() {
        let g = grounding();
        let text = include_str!("../../data/measure_factors.json");
        assert!(wants_exact(text).unwrap());
        let p = parse_measure::<Exact>(text, &g).unwrap();
        let a1 = p.pl_eval(g.primitive("a1", "1").unwrap()).unwrap();
        assert_eq!(a1, Exact::parse_literal("1/2").unwrap());
        let both = g.primitive("a1", "3").unwrap() & g.primitive("theta1", "PROG").unwrap();
        assert_eq!(
            p.pl_eval(&both).unwrap(),
            Exact::parse_literal("1/30").unwrap()
        );
    }

    #[test]
    fn missing_factors_are_uniform() {
        let g = grounding();
        let p = parse_measure::<f64>(
            r#"{"factors":{"b1":{"106F-REDDISH":0.5,"98F-PALE":0.5}}}"#,
            &g,
        )
        .unwrap();
        let e = g.primitive("a2", "3").unwrap();
        assert!((p.pl_eval(e).unwrap() - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_measure_files() {
        let g = grounding();
        assert!(parse_measure::<f64>(r#"{"atoms":[1.0]}"#, &g).is_err());
        assert!(
            parse_measure::<f64>(r#"{"factors":{"a1":{"1":0.5,"2":0.5,"3":0.5}}}"#, &g).is_err()
        );
        assert!(parse_measure::<f64>(r#"{"factors":{"zz":{"1":1}}}"#, &g).is_err());
        assert!(parse_measure::<f64>(r#"{"weights":[]}"#, &g).is_err());
        assert!(parse_measure::<f64>(r#"{"atoms":"x"}"#, &g).is_err());
    }

    #[test]
    fn possibility_files() {
        let g = grounding();
        let poss =
            parse_possibility::<f64>(include_str!("../../data/possibility.json"), &g).unwrap();
        assert_eq!(poss.grade("theta1", "SOME"), Some(&0.9));
        assert!(parse_possibility::<f64>(r#"{"grades":{"a1":{"1":1.5}}}"#, &g).is_err());
        assert!(parse_possibility::<f64>(r#"{"grades":{"a1":{"9":0.5}}}"#, &g).is_err());
    }
}
