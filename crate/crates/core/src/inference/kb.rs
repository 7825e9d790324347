//! Knowledge bases of typed event variables and implication-form rules,
//! observations, and the joint atom space they generate.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::algebra::{AtomSpace, Event};
use crate::error::InferenceError;
use crate::semantics::Formula;

/// Default bound on the number of joint assignments.
pub const DEFAULT_MAX_ATOMS: u128 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VariableKind {
    #[serde(alias = "data")]
    DataAttribute,
    #[serde(alias = "auxiliary")]
    AuxiliaryAttribute,
    Diagnosis,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariableDecl {
    pub name: String,
    pub kind: VariableKind,
    pub domain: Vec<String>,
}

/// An inference rule `if ⇒ then`. Leaves without values are placeholders
/// for the variable's domain value under the current assignment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Rule {
    pub id: String,
    #[serde(rename = "if")]
    pub antecedent: Formula,
    #[serde(rename = "then")]
    pub consequent: Formula,
}

impl Rule {
    pub fn variables(&self) -> BTreeSet<&str> {
        let mut vars: BTreeSet<&str> = self.antecedent.variables().into_iter().collect();
        vars.extend(self.consequent.variables());
        vars
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KnowledgeBase {
    pub variables: Vec<VariableDecl>,
    pub rules: Vec<Rule>,
}

const BUNDLED_KB: &str = include_str!("../../data/diagnosis_kb.json");
const BUNDLED_OBSERVATION: &str = include_str!("../../data/observation.json");

impl KnowledgeBase {
    pub fn from_json(text: &str) -> Result<Self, InferenceError> {
        let kb: KnowledgeBase = serde_json::from_str(text)?;
        kb.validate()?;
        Ok(kb)
    }

    /// The diagnosis example shipped with the crate: three auxiliary
    /// attributes, two data attributes and one diagnosis, with domains
    /// truncated to at most three values.
    pub fn bundled() -> Self {
        Self::from_json(BUNDLED_KB).expect("bundled knowledge base is valid")
    }

    pub fn variable(&self, name: &str) -> Option<&VariableDecl> {
        self.variables.iter().find(|v| v.name == name)
    }

    /// Number of joint assignments, saturating.
    pub fn joint_size(&self) -> u128 {
        self.variables
            .iter()
            .fold(1u128, |acc, v| acc.saturating_mul(v.domain.len() as u128))
    }

    pub fn validate(&self) -> Result<(), InferenceError> {
        let bad = |msg: String| Err(InferenceError::InvalidKb(msg));
        if self.variables.is_empty() {
            return bad("no variables declared".into());
        }
        let mut names = HashSet::new();
        for v in &self.variables {
            if v.name.is_empty() || v.name.contains([',', '=']) {
                return bad(format!(
                    "variable name `{}` must be nonempty without `,` or `=`",
                    v.name
                ));
            }
            if !names.insert(v.name.as_str()) {
                return bad(format!("variable `{}` declared twice", v.name));
            }
            if v.domain.is_empty() {
                return bad(format!("variable `{}` has an empty domain", v.name));
            }
            let mut values = HashSet::new();
            for value in &v.domain {
                if value.contains([',', '=']) {
                    return bad(format!(
                        "value `{value}` of `{}` contains `,` or `=`",
                        v.name
                    ));
                }
                if !values.insert(value) {
                    return bad(format!(
                        "value `{value}` repeated in the domain of `{}`",
                        v.name
                    ));
                }
            }
        }
        let mut ids = HashSet::new();
        for rule in &self.rules {
            if !ids.insert(rule.id.as_str()) {
                return bad(format!("rule id `{}` used twice", rule.id));
            }
            for formula in [&rule.antecedent, &rule.consequent] {
                let mut problem = None;
                formula.visit_leaves(&mut |var, vals| {
                    if problem.is_some() {
                        return;
                    }
                    match self.variable(var) {
                        None => {
                            problem = Some(format!(
                                "rule `{}` mentions unknown variable `{var}`",
                                rule.id
                            ))
                        }
                        Some(decl) => {
                            if let Some(value) = vals
                                .into_iter()
                                .flatten()
                                .find(|x| !decl.domain.contains(x))
                            {
                                problem = Some(format!(
                                    "rule `{}` uses value `{value}` outside the domain of `{var}`",
                                    rule.id
                                ));
                            }
                        }
                    }
                });
                if let Some(msg) = problem {
                    return bad(msg);
                }
            }
        }
        Ok(())
    }
}

/// Observed value sets for some data variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Observation {
    pub observe: BTreeMap<String, Vec<String>>,
}

impl Observation {
    pub fn from_json(text: &str) -> Result<Self, InferenceError> {
        Ok(serde_json::from_str(text)?)
    }

    /// The observation shipped with the bundled knowledge base.
    pub fn bundled() -> Self {
        Self::from_json(BUNDLED_OBSERVATION).expect("bundled observation is valid")
    }

    pub fn validate(&self, kb: &KnowledgeBase) -> Result<(), InferenceError> {
        if self.observe.is_empty() {
            return Err(InferenceError::InvalidObservation(
                "nothing observed".into(),
            ));
        }
        for (var, values) in &self.observe {
            let decl = kb
                .variable(var)
                .ok_or_else(|| InferenceError::UnknownVariable(var.clone()))?;
            if decl.kind == VariableKind::Diagnosis {
                return Err(InferenceError::InvalidObservation(format!(
                    "`{var}` is a diagnosis variable"
                )));
            }
            if values.is_empty() {
                return Err(InferenceError::InvalidObservation(format!(
                    "empty value set for `{var}`"
                )));
            }
            let mut seen = HashSet::new();
            for value in values {
                if !decl.domain.contains(value) {
                    return Err(InferenceError::UnknownValue {
                        var: var.clone(),
                        value: value.clone(),
                    });
                }
                if !seen.insert(value) {
                    return Err(InferenceError::InvalidObservation(format!(
                        "value `{value}` of `{var}` listed twice"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The joint atom space of a knowledge base: one atom per joint assignment,
/// with the first declared variable varying slowest. Atom labels read
/// `var=value,var=value,…` in declaration order.
#[derive(Debug, Clone)]
pub struct Grounding {
    space: AtomSpace,
    names: Vec<String>,
    domains: Vec<Vec<String>>,
    strides: Vec<usize>,
    primitives: Vec<Vec<Event>>,
}

/// Builds the joint space of `kb`, refusing more than `limit` atoms.
pub fn build_space(kb: &KnowledgeBase, limit: u128) -> Result<Grounding, InferenceError> {
    kb.validate()?;
    let atoms = kb.joint_size();
    if atoms > limit {
        return Err(InferenceError::SpaceTooLarge { atoms, limit });
    }
    let atoms = atoms as usize;
    let names: Vec<String> = kb.variables.iter().map(|v| v.name.clone()).collect();
    let domains: Vec<Vec<String>> = kb.variables.iter().map(|v| v.domain.clone()).collect();
    let mut strides = vec![1usize; domains.len()];
    for i in (0..domains.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * domains[i + 1].len();
    }
    let value_index = |atom: usize, var: usize| (atom / strides[var]) % domains[var].len();
    let labels = (0..atoms).map(|atom| {
        names
            .iter()
            .enumerate()
            .map(|(var, name)| format!("{name}={}", domains[var][value_index(atom, var)]))
            .collect::<Vec<_>>()
            .join(",")
    });
    let space = AtomSpace::with_labels(labels)?;
    let mut primitives: Vec<Vec<Event>> = domains
        .iter()
        .map(|d| vec![Event::empty(atoms); d.len()])
        .collect();
    for var in 0..domains.len() {
        let mut members = vec![Vec::new(); domains[var].len()];
        for atom in 0..atoms {
            members[value_index(atom, var)].push(atom);
        }
        for (value, atoms_with_value) in members.into_iter().enumerate() {
            primitives[var][value] = Event::from_indices(atoms, atoms_with_value)?;
        }
    }
    Ok(Grounding {
        space,
        names,
        domains,
        strides,
        primitives,
    })
}

impl Grounding {
    pub fn space(&self) -> &AtomSpace {
        &self.space
    }

    /// Variable names in declaration order.
    pub fn variables(&self) -> &[String] {
        &self.names
    }

    fn var_index(&self, var: &str) -> Result<usize, InferenceError> {
        self.names
            .iter()
            .position(|n| n == var)
            .ok_or_else(|| InferenceError::UnknownVariable(var.to_string()))
    }

    pub fn domain(&self, var: &str) -> Result<&[String], InferenceError> {
        Ok(&self.domains[self.var_index(var)?])
    }

    /// The event `var = value`.
    pub fn primitive(&self, var: &str, value: &str) -> Result<&Event, InferenceError> {
        let i = self.var_index(var)?;
        let j = self.domains[i]
            .iter()
            .position(|v| v == value)
            .ok_or_else(|| InferenceError::UnknownValue {
                var: var.to_string(),
                value: value.to_string(),
            })?;
        Ok(&self.primitives[i][j])
    }

    /// The event `var ∈ values`.
    pub fn leaf<'a, I: IntoIterator<Item = &'a String>>(
        &self,
        var: &str,
        values: I,
    ) -> Result<Event, InferenceError> {
        let mut e = self.space.empty();
        for value in values {
            e = e | self.primitive(var, value)?;
        }
        Ok(e)
    }

    /// Grounds a fully bound formula, reading `⇒` as `b′ ∨ a`.
    pub fn ground(&self, formula: &Formula) -> Result<Event, InferenceError> {
        match formula {
            Formula::Leaf { var, vals: None } => {
                Err(InferenceError::IncompleteAssignment(var.clone()))
            }
            Formula::Leaf {
                var,
                vals: Some(vals),
            } => self.leaf(var, vals),
            Formula::And(args) => args
                .iter()
                .try_fold(self.space.full(), |acc, g| Ok(acc & self.ground(g)?)),
            Formula::Or(args) => args
                .iter()
                .try_fold(self.space.empty(), |acc, g| Ok(acc | self.ground(g)?)),
            Formula::Not(g) => Ok(!self.ground(g)?),
            Formula::Implies(b, a) => Ok(self.ground(b)?.implies(&self.ground(a)?)),
        }
    }

    /// The value `var` takes at `atom`.
    pub fn value_at(&self, atom: usize, var: &str) -> Result<&str, InferenceError> {
        let i = self.var_index(var)?;
        Ok(&self.domains[i][(atom / self.strides[i]) % self.domains[i].len()])
    }

    /// Parses a joint assignment `var=value,…` naming every variable once,
    /// in any order.
    pub fn atom_of(&self, text: &str) -> Result<usize, InferenceError> {
        let mut index = 0;
        let mut seen = vec![false; self.names.len()];
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (var, value) = part.split_once('=').ok_or_else(|| {
                InferenceError::InvalidObservation(format!("`{part}` is not of the form var=value"))
            })?;
            let i = self.var_index(var.trim())?;
            if std::mem::replace(&mut seen[i], true) {
                return Err(InferenceError::InvalidObservation(format!(
                    "`{var}` assigned twice"
                )));
            }
            let j = self.domains[i]
                .iter()
                .position(|v| v == value.trim())
                .ok_or_else(|| InferenceError::UnknownValue {
                    var: var.trim().to_string(),
                    value: value.trim().to_string(),
                })?;
            index += j * self.strides[i];
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(InferenceError::IncompleteAssignment(self.names[i].clone()));
        }
        Ok(index)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> KnowledgeBase {
        KnowledgeBase::from_json(
            r#"{"variables":[{"name":"u","kind":"data","domain":["0","1"]},
                             {"name":"v","kind":"diagnosis","domain":["x","y"]}],
                "rules":[{"id":"r","if":{"var":"u"},"then":{"var":"v"}}]}"#,
        )
        .unwrap()
    }

    #[test]
    fn product_space_and_primitive_events() {
        let g = build_space(&tiny(), DEFAULT_MAX_ATOMS).unwrap();
        assert_eq!(g.space().atom_count(), 4);
        assert_eq!(g.primitive("u", "1").unwrap().len(), 2);
        assert_eq!(g.space().label(1), Some("u=0,v=y"));
        assert_eq!(g.atom_of("v=y, u=1").unwrap(), 3);
        assert_eq!(g.value_at(3, "u").unwrap(), "1");
        assert!(g.atom_of("u=1").is_err());
        assert!(g.atom_of("u=2,v=x").is_err());
    }

    #[test]
    fn grounding_respects_connectives() {
        let g = build_space(&tiny(), DEFAULT_MAX_ATOMS).unwrap();
        let u = Formula::leaf("u", &["1"]);
        let v = Formula::leaf("v", &["x"]);
        let (eu, ev) = (g.ground(&u).unwrap(), g.ground(&v).unwrap());
        assert_eq!(
            g.ground(&Formula::Or(vec![u.clone(), v.clone()])).unwrap(),
            &eu | &ev
        );
        assert_eq!(
            g.ground(&Formula::And(vec![u.clone(), v.clone()])).unwrap(),
            &eu & &ev
        );
        assert_eq!(g.ground(&Formula::negation(u.clone())).unwrap(), !&eu);
        assert_eq!(g.ground(&Formula::implies(u, v)).unwrap(), eu.implies(&ev));
        assert!(matches!(
            g.ground(&Formula::placeholder("u")),
            Err(InferenceError::IncompleteAssignment(_))
        ));
    }

    #[test]
    fn rejects_malformed_knowledge_bases() {
        let dup = r#"{"variables":[{"name":"u","kind":"data","domain":["0","0"]}],"rules":[]}"#;
        assert!(KnowledgeBase::from_json(dup).is_err());
        let unknown = r#"{"variables":[{"name":"u","kind":"data","domain":["0"]}],
                          "rules":[{"id":"r","if":{"var":"w"},"then":{"var":"u"}}]}"#;
        assert!(KnowledgeBase::from_json(unknown).is_err());
        let bad_value = r#"{"variables":[{"name":"u","kind":"data","domain":["0"]}],
                          "rules":[{"id":"r","if":{"var":"u","vals":["9"]},"then":{"var":"u"}}]}"#;
        assert!(KnowledgeBase::from_json(bad_value).is_err());
        assert!(KnowledgeBase::from_json("{").is_err());
    }

    #[test]
    fn refuses_oversized_spaces() {
        let kb = tiny();
        assert!(matches!(
            build_space(&kb, 3),
            Err(InferenceError::SpaceTooLarge { atoms: 4, limit: 3 })
        ));
    }

    #[test]
    fn bundled_example_sizes() {
        let kb = KnowledgeBase::bundled();
        assert_eq!(kb.joint_size(), 3 * 3 * 3 * 2 * 3 * 3);
        Observation::bundled().validate(&kb).unwrap();
    }
}
