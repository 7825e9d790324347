//! Recorded values that were determined by computation rather than taken
//! from a closed form: the worked iterated-conditional example, counts of
//! distinct iterated conditionals, the candidate identities found not to hold
//! as written, and the conditional antecedents of the diagnosis example.
//!
//! [`GoldenRecord::compute`] rebuilds the record; comparing it with a stored
//! copy detects drift.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{implication_identities_check, AtomSpace};
use crate::calculus::{comparison_check, identity_check, law_check, order_check};
use crate::conditional::ConditionalObject;
use crate::error::InferenceError;
use crate::higher_order::IteratedConditional;
use crate::inference::{
    parse_possibility, Aldp, Engine, KnowledgeBase, Observation, SemanticInput,
    BUNDLED_POSSIBILITY, DEFAULT_MAX_ATOMS, EXAMPLE_QUERY,
};
use crate::report::{Outcome, Report, Sweep};
use crate::semantics::fuzzy_check;
use crate::Exact;

/// File name of the record inside a golden directory.
pub const GOLDEN_FILE: &str = "findings.json";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IteratedExample {
    pub numerator: String,
    pub denominator: String,
    pub normalized_numerator: String,
    pub members: Vec<String>,
    pub reduction: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagnosisValue {
    pub value: String,
    pub antecedent_atoms: usize,
    pub antecedent_complement: Vec<String>,
    pub fuzzy_grade: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenRecord {
    pub iterated_example: IteratedExample,
    /// Distinct iterated conditionals per atom count.
    pub iterated_class_counts: BTreeMap<String, usize>,
    /// Candidate identities that do not hold, with a witness each.
    pub rejected_forms: Vec<String>,
    pub diagnosis: Vec<DiagnosisValue>,
}

fn conditional(
    space: &AtomSpace,
    a: &[&str],
    b: &[&str],
) -> Result<ConditionalObject, InferenceError> {
    Ok(ConditionalObject::new(
        &space.event_from_labels(a.iter().copied())?,
        &space.event_from_labels(b.iter().copied())?,
    )?)
}

fn iterated_example() -> Result<IteratedExample, InferenceError> {
    let space = AtomSpace::with_labels(["1", "2", "3"])?;
    let numerator = conditional(&space, &["1"], &["1", "2"])?;
    let denominator = conditional(&space, &["2"], &["2", "3"])?;
    let it = IteratedConditional::new(&numerator, &denominator)?;
    Ok(IteratedExample {
        numerator: numerator.render(&space),
        denominator: denominator.render(&space),
        normalized_numerator: it.numerator().render(&space),
        members: it.members().iter().map(|m| m.render(&space)).collect(),
        reduction: it.reduce_u()?.render(&space),
    })
}

fn class_count(atoms: usize) -> Result<usize, InferenceError> {
    let space = AtomSpace::new(atoms)?;
    let all: Vec<ConditionalObject> = ConditionalObject::enumerate(&space).collect();
    let mut sets = BTreeSet::new();
    for x in &all {
        for y in &all {
            sets.insert(IteratedConditional::new(x, y)?.members().clone());
        }
    }
    Ok(sets.len())
}

fn notes(reports: &[Report]) -> Vec<String> {
    reports
        .iter()
        .flat_map(|r| {
            r.notes().map(move |c| match &c.outcome {
                Outcome::Note { detail } => format!("{}: {}: {detail}", r.title, c.name),
                _ => format!("{}: {}", r.title, c.name),
            })
        })
        .collect()
}

fn diagnosis() -> Result<Vec<DiagnosisValue>, InferenceError> {
    let engine = Engine::new(
        KnowledgeBase::bundled(),
        Observation::bundled(),
        DEFAULT_MAX_ATOMS,
    )?;
    let g = engine.grounding();
    let poss = parse_possibility::<Exact>(BUNDLED_POSSIBILITY, g)?;
    let fuzzy = engine.evaluate(Aldp::Fl, EXAMPLE_QUERY, &SemanticInput::Possibility(poss))?;
    fuzzy
        .into_iter()
        .map(|(value, grade)| {
            let c = engine.integrate_out(Aldp::Cpl, EXAMPLE_QUERY, &value)?;
            let antecedent = c
                .as_conditional()
                .expect("conditional logic")
                .antecedent()
                .clone();
            Ok(DiagnosisValue {
                antecedent_atoms: antecedent.len(),
                antecedent_complement: (!&antecedent)
                    .indices()
                    .map(|i| g.space().label(i).unwrap_or_default().to_string())
                    .collect(),
                fuzzy_grade: grade?.to_string(),
                value,
            })
        })
        .collect()
}

impl GoldenRecord {
    /// Recomputes every recorded value. The rejected forms come from
    /// the identity suites on three atoms.
    pub fn compute() -> Result<Self, InferenceError> {
        let space = AtomSpace::new(3)?;
        let sweep = Sweep::default();
        let reports = [
            implication_identities_check(&space, &sweep),
            law_check(&space, &sweep),
            order_check(&space, &sweep),
            identity_check(&space, &sweep),
            comparison_check(&space, &sweep),
            fuzzy_check::<Exact>("exact"),
        ];
        Ok(GoldenRecord {
            iterated_example: iterated_example()?,
            iterated_class_counts: [2, 3]
                .into_iter()
                .map(|n| Ok((n.to_string(), class_count(n)?)))
                .collect::<Result<_, InferenceError>>()?,
            rejected_forms: notes(&reports),
            diagnosis: diagnosis()?,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self, InferenceError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Top-level fields whose values differ from `stored`.
    pub fn diff(&self, stored: &GoldenRecord) -> Vec<String> {
        let (Ok(Value::Object(now)), Ok(Value::Object(then))) =
            (serde_json::to_value(self), serde_json::to_value(stored))
        else {
            return vec!["record".into()];
        };
        now.iter()
            .filter(|(k, v)| then.get(*k) != Some(v))
            .map(|(k, _)| k.clone())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_round_trips_and_matches_known_values() {
        let record = GoldenRecord::compute().unwrap();
        assert_eq!(record.iterated_class_counts["2"], 25);
        assert_eq!(record.iterated_class_counts["3"], 125);
        assert_eq!(record.iterated_example.members.len(), 6);
        assert_eq!(record.iterated_example.reduction, "({}|{2})");
        let back = GoldenRecord::from_json(&record.to_json()).unwrap();
        assert!(record.diff(&back).is_empty());
        let mut changed = back.clone();
        changed.diagnosis.clear();
        assert_eq!(record.diff(&changed), ["diagnosis"]);
    }
}
