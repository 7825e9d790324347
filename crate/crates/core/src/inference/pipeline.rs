//! Combination of evidence: select the rules connected to the observation,
//! conjoin them with the data for each assignment of the remaining
//! variables, disjoin over the auxiliary assignments, and evaluate.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::Event;
use crate::conditional::ConditionalObject;
use crate::error::{InferenceError, SemanticsError};
use crate::inference::kb::{
    build_space, Grounding, KnowledgeBase, Observation, Rule, VariableKind,
};
use crate::scalar::Scalar;
use crate::semantics::{cl_eval, Formula, PossibilityAssignment, ProbabilityMeasure};

/// Which logic interprets the rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Aldp {
    /// Classical: truth at a chosen atom.
    Cl,
    /// Fuzzy: MIN/MAX over possibility grades of primitive events.
    Fl,
    /// Probability of the grounded event, implication read as `b′ ∨ a`.
    Pl,
    /// Conditional probability, implication read as the conditional `(a|b)`.
    Cpl,
}

impl FromStr for Aldp {
    type Err = InferenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cl" => Ok(Aldp::Cl),
            "fl" => Ok(Aldp::Fl),
            "pl" => Ok(Aldp::Pl),
            "cpl" => Ok(Aldp::Cpl),
            _ => Err(InferenceError::SemanticsMismatch(format!(
                "unknown logic `{s}` (expected cl, fl, pl or cpl)"
            ))),
        }
    }
}

impl fmt::Display for Aldp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Aldp::Cl => "cl",
            Aldp::Fl => "fl",
            Aldp::Pl => "pl",
            Aldp::Cpl => "cpl",
        })
    }
}

/// A grounded term: an event for the Boolean logics, a conditional object
/// for conditional probability, a formula tree for fuzzy evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum Grounded {
    Event(Event),
    Conditional(ConditionalObject),
    Formula(Formula),
}

impl Grounded {
    pub fn as_event(&self) -> Option<&Event> {
        match self {
            Grounded::Event(e) => Some(e),
            _ => None,
        }
    }

    pub fn as_conditional(&self) -> Option<&ConditionalObject> {
        match self {
            Grounded::Conditional(c) => Some(c),
            _ => None,
        }
    }

    pub fn as_formula(&self) -> Option<&Formula> {
        match self {
            Grounded::Formula(f) => Some(f),
            _ => None,
        }
    }
}

/// What a logic evaluates against.
#[derive(Debug, Clone)]
pub enum SemanticInput<S> {
    Atom(usize),
    Possibility(PossibilityAssignment<S>),
    Measure(ProbabilityMeasure<S>),
}

impl<S> SemanticInput<S> {
    fn describe(&self) -> &'static str {
        match self {
            SemanticInput::Atom(_) => "an atom",
            SemanticInput::Possibility(_) => "possibility grades",
            SemanticInput::Measure(_) => "a probability measure",
        }
    }
}

/// Rules connected to the observed variables: start from the observed
/// variables, take every rule mentioning one of them, add that rule's
/// variables, and repeat until nothing changes. Declaration order is kept.
pub fn relevant_rules<'a>(kb: &'a KnowledgeBase, obs: &Observation) -> Vec<&'a Rule> {
    let mut reached: BTreeSet<&str> = obs.observe.keys().map(String::as_str).collect();
    let mut taken = vec![false; kb.rules.len()];
    loop {
        let mut grew = false;
        for (i, rule) in kb.rules.iter().enumerate() {
            let vars = rule.variables();
            if !taken[i] && vars.iter().any(|v| reached.contains(v)) {
                taken[i] = true;
                reached.extend(vars);
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    kb.rules
        .iter()
        .zip(taken)
        .filter(|(_, t)| *t)
        .map(|(r, _)| r)
        .collect()
}

/// Grade per diagnosis value, in domain order.
pub type Grades<S> = Vec<(String, Result<S, SemanticsError>)>;

/// The evidence-combination pipeline over one knowledge base and observation.
#[derive(Debug, Clone)]
pub struct Engine {
    kb: KnowledgeBase,
    obs: Observation,
    grounding: Grounding,
    data: Event,
}

impl Engine {
    pub fn new(kb: KnowledgeBase, obs: Observation, limit: u128) -> Result<Self, InferenceError> {
        obs.validate(&kb)?;
        let grounding = build_space(&kb, limit)?;
        let mut data = grounding.space().full();
        for (var, values) in &obs.observe {
            data = data & grounding.leaf(var, values)?;
        }
        Ok(Engine {
            kb,
            obs,
            grounding,
            data,
        })
    }

    pub fn kb(&self) -> &KnowledgeBase {
        &self.kb
    }

    pub fn observation(&self) -> &Observation {
        &self.obs
    }

    pub fn grounding(&self) -> &Grounding {
        &self.grounding
    }

    /// The observed data `y` as an event.
    pub fn data(&self) -> &Event {
        &self.data
    }

    fn data_formula(&self) -> Formula {
        let leaves: Vec<Formula> = self
            .obs
            .observe
            .iter()
            .map(|(var, values)| Formula::Leaf {
                var: var.clone(),
                vals: Some(values.clone()),
            })
            .collect();
        Formula::And(leaves)
    }

    pub fn relevant_rules(&self) -> Vec<&Rule> {
        relevant_rules(&self.kb, &self.obs)
    }

    /// Variables summed out for `query`: those mentioned by the relevant
    /// rules that are neither observed nor the query, in declaration order.
    pub fn integrated_variables(&self, query: &str) -> Vec<&str> {
        let mentioned: BTreeSet<&str> = self
            .relevant_rules()
            .iter()
            .flat_map(|r| r.variables())
            .collect();
        self.kb
            .variables
            .iter()
            .map(|v| v.name.as_str())
            .filter(|v| mentioned.contains(v) && *v != query && !self.obs.observe.contains_key(*v))
            .collect()
    }

    /// Conjunction of the data with every relevant rule under `assignment`,
    /// which must give a value to each unobserved variable the rules use.
    pub fn conjoin_f(
        &self,
        aldp: Aldp,
        assignment: &BTreeMap<String, String>,
    ) -> Result<Grounded, InferenceError> {
        let mut binding: BTreeMap<String, Vec<String>> = self.obs.observe.clone();
        for (var, value) in assignment {
            let decl = self
                .kb
                .variable(var)
                .ok_or_else(|| InferenceError::UnknownVariable(var.clone()))?;
            if !decl.domain.contains(value) {
                return Err(InferenceError::UnknownValue {
                    var: var.clone(),
                    value: value.clone(),
                });
            }
            binding
                .entry(var.clone())
                .or_insert_with(|| vec![value.clone()]);
        }
        let rules: Vec<(Formula, Formula)> = self
            .relevant_rules()
            .into_iter()
            .map(|r| (r.antecedent.bind(&binding), r.consequent.bind(&binding)))
            .collect();
        for (b, a) in &rules {
            for f in [b, a] {
                if let Some(var) = first_placeholder(f) {
                    return Err(InferenceError::IncompleteAssignment(var));
                }
            }
        }
        Ok(match aldp {
            Aldp::Cl | Aldp::Pl => {
                let mut f = self.data.clone();
                for (b, a) in &rules {
                    f = f & self
                        .grounding
                        .ground(b)?
                        .implies(&self.grounding.ground(a)?);
                }
                Grounded::Event(f)
            }
            Aldp::Cpl => {
                let mut terms = vec![ConditionalObject::embed(&self.data)];
                for (b, a) in &rules {
                    terms.push(ConditionalObject::new(
                        &self.grounding.ground(a)?,
                        &self.grounding.ground(b)?,
                    )?);
                }
                Grounded::Conditional(ConditionalObject::and_n(&terms)?)
            }
            Aldp::Fl => {
                let mut terms = vec![self.data_formula()];
                terms.extend(rules.into_iter().map(|(b, a)| Formula::implies(b, a)));
                Grounded::Formula(Formula::And(terms))
            }
        })
    }

    /// Every assignment of the integrated variables, with `query` fixed to
    /// `value`, in mixed-radix order (last variable fastest).
    pub fn assignments(
        &self,
        query: &str,
        value: &str,
    ) -> Result<Vec<BTreeMap<String, String>>, InferenceError> {
        let vars = self.integrated_variables(query);
        let domains: Vec<&[String]> = vars
            .iter()
            .map(|v| self.grounding.domain(v))
            .collect::<Result<_, _>>()?;
        let total: usize = domains.iter().map(|d| d.len()).product();
        Ok((0..total)
            .map(|mut k| {
                let mut assignment = BTreeMap::from([(query.to_string(), value.to_string())]);
                for (var, domain) in vars.iter().zip(&domains).rev() {
                    assignment.insert(var.to_string(), domain[k % domain.len()].clone());
                    k /= domain.len();
                }
                assignment
            })
            .collect())
    }

    fn check_query(&self, query: &str, value: &str) -> Result<(), InferenceError> {
        let decl = self
            .kb
            .variable(query)
            .ok_or_else(|| InferenceError::UnknownVariable(query.to_string()))?;
        if decl.kind != VariableKind::Diagnosis {
            return Err(InferenceError::NotADiagnosis(query.to_string()));
        }
        if !decl.domain.iter().any(|v| v == value) {
            return Err(InferenceError::UnknownValue {
                var: query.to_string(),
                value: value.to_string(),
            });
        }
        Ok(())
    }

    /// Disjunction of [`Engine::conjoin_f`] over the integrated variables,
    /// with the diagnosis `query` fixed at `value`.
    pub fn integrate_out(
        &self,
        aldp: Aldp,
        query: &str,
        value: &str,
    ) -> Result<Grounded, InferenceError> {
        self.check_query(query, value)?;
        let terms = self
            .assignments(query, value)?
            .iter()
            .map(|w| self.conjoin_f(aldp, w))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(match aldp {
            Aldp::Cl | Aldp::Pl => Grounded::Event(
                terms
                    .iter()
                    .filter_map(Grounded::as_event)
                    .fold(self.grounding.space().empty(), |acc, e| acc | e),
            ),
            Aldp::Cpl => {
                let conds: Vec<ConditionalObject> = terms
                    .iter()
                    .filter_map(Grounded::as_conditional)
                    .cloned()
                    .collect();
                Grounded::Conditional(ConditionalObject::or_n(&conds)?)
            }
            Aldp::Fl => Grounded::Formula(Formula::Or(
                terms
                    .into_iter()
                    .filter_map(|t| match t {
                        Grounded::Formula(f) => Some(f),
                        _ => None,
                    })
                    .collect(),
            )),
        })
    }

    /// Grade of every value of the diagnosis `query`. An undefined
    /// conditional probability is reported for its value only.
    pub fn evaluate<S: Scalar>(
        &self,
        aldp: Aldp,
        query: &str,
        input: &SemanticInput<S>,
    ) -> Result<Grades<S>, InferenceError> {
        let mismatch = || {
            InferenceError::SemanticsMismatch(format!(
                "logic `{aldp}` cannot be evaluated with {}",
                input.describe()
            ))
        };
        match (aldp, input) {
            (Aldp::Cl, SemanticInput::Atom(atom))
                if *atom >= self.grounding.space().atom_count() =>
            {
                return Err(InferenceError::Algebra(
                    crate::error::AlgebraError::AtomOutOfRange {
                        index: *atom,
                        atoms: self.grounding.space().atom_count(),
                    },
                ))
            }
            (Aldp::Pl | Aldp::Cpl, SemanticInput::Measure(p))
                if p.atom_count() != self.grounding.space().atom_count() =>
            {
                return Err(InferenceError::SemanticsMismatch(format!(
                    "measure has {} atoms, the knowledge base {}",
                    p.atom_count(),
                    self.grounding.space().atom_count()
                )))
            }
            (Aldp::Cl, SemanticInput::Atom(_))
            | (Aldp::Fl, SemanticInput::Possibility(_))
            | (Aldp::Pl | Aldp::Cpl, SemanticInput::Measure(_)) => {}
            _ => return Err(mismatch()),
        }
        let decl = self
            .kb
            .variable(query)
            .ok_or_else(|| InferenceError::UnknownVariable(query.to_string()))?;
        let mut rows = Vec::with_capacity(decl.domain.len());
        for value in &decl.domain {
            let term = self.integrate_out(aldp, query, value)?;
            let grade = match (&term, input) {
                (Grounded::Event(e), SemanticInput::Atom(atom)) => {
                    Ok(S::from_u8(cl_eval(*atom, e)).expect("0 and 1 fit every scalar"))
                }
                (Grounded::Event(e), SemanticInput::Measure(p)) => Ok(p.pl_eval(e)?),
                (Grounded::Conditional(c), SemanticInput::Measure(p)) => match p.cpl_eval(c) {
                    Err(SemanticsError::UndefinedConditional) => {
                        Err(SemanticsError::UndefinedConditional)
                    }
                    other => Ok(other?),
                },
                (Grounded::Formula(f), SemanticInput::Possibility(poss)) => Ok(poss.fl_eval(f)?),
                _ => return Err(mismatch()),
            };
            rows.push((value.clone(), grade));
        }
        Ok(rows)
    }
}

fn first_placeholder(f: &Formula) -> Option<String> {
    let mut found = None;
    f.visit_leaves(&mut |var, vals| {
        if found.is_none() && vals.is_none() {
            found = Some(var.to_string());
        }
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inference::kb::DEFAULT_MAX_ATOMS;

    fn bundled() -> Engine {
        Engine::new(
            KnowledgeBase::bundled(),
            Observation::bundled(),
            DEFAULT_MAX_ATOMS,
        )
        .unwrap()
    }

    #[test]
    fn connected_rules_are_selected() {
        let e = bundled();
        let ids: Vec<&str> = e.relevant_rules().iter().map(|r| r.id.as_str()).collect();
        assert_eq!(ids, ["r1", "r2", "r3", "r4"]);
        assert_eq!(e.integrated_variables("theta1"), ["a1", "a2", "a3", "b2"]);
    }

    #[test]
    fn unmentioned_observation_selects_nothing() {
        let kb = KnowledgeBase::from_json(
            r#"{"variables":[{"name":"u","kind":"data","domain":["0","1"]},
                             {"name":"w","kind":"data","domain":["0","1"]},
                             {"name":"v","kind":"diagnosis","domain":["x","y"]}],
                "rules":[{"id":"r","if":{"var":"u"},"then":{"var":"v"}}]}"#,
        )
        .unwrap();
        let obs = Observation::from_json(r#"{"observe":{"w":["1"]}}"#).unwrap();
        assert!(relevant_rules(&kb, &obs).is_empty());
    }

    #[test]
    fn single_rule_with_certain_antecedent_gives_data_times_consequent() {
        let kb = KnowledgeBase::from_json(
            r#"{"variables":[{"name":"u","kind":"data","domain":["0","1"]},
                             {"name":"v","kind":"diagnosis","domain":["x","y"]}],
                "rules":[{"id":"r","if":{"op":"or","args":[{"var":"u","vals":["0"]},{"var":"u","vals":["1"]}]},
                          "then":{"var":"v"}}]}"#,
        )
        .unwrap();
        let obs = Observation::from_json(r#"{"observe":{"u":["1"]}}"#).unwrap();
        let e = Engine::new(kb, obs, DEFAULT_MAX_ATOMS).unwrap();
        let w = BTreeMap::from([("v".to_string(), "x".to_string())]);
        let f = e.conjoin_f(Aldp::Pl, &w).unwrap();
        let expected = e.data() & e.grounding().primitive("v", "x").unwrap();
        assert_eq!(f.as_event(), Some(&expected));
        assert_eq!(e.integrate_out(Aldp::Pl, "v", "x").unwrap(), f);
    }

    #[test]
    fn incomplete_assignments_and_bad_queries_are_errors() {
        let e = bundled();
        let w = BTreeMap::from([("a1".to_string(), "1".to_string())]);
        assert!(matches!(
            e.conjoin_f(Aldp::Pl, &w),
            Err(InferenceError::IncompleteAssignment(_))
        ));
        assert!(matches!(
            e.integrate_out(Aldp::Pl, "a1", "1"),
            Err(InferenceError::NotADiagnosis(_))
        ));
        let p = SemanticInput::Measure(ProbabilityMeasure::<f64>::uniform(4).unwrap());
        assert!(e.evaluate(Aldp::Pl, "theta1", &p).is_err());
        assert!(e.evaluate(Aldp::Cl, "theta1", &p).is_err());
    }

    #[test]
    fn classical_grade_inside_the_result_is_one() {
        let e = bundled();
        let result = e.integrate_out(Aldp::Cl, "theta1", "SOME").unwrap();
        let atom = result.as_event().unwrap().indices().next().unwrap();
        let rows = e
            .evaluate::<f64>(Aldp::Cl, "theta1", &SemanticInput::Atom(atom))
            .unwrap();
        assert_eq!(rows[1].0, "SOME");
        assert_eq!(rows[1].1, Ok(1.0));
    }

    #[test]
    fn undefined_conditionals_are_reported_per_value() {
        let e = bundled();
        let elsewhere = (!e.data()).indices().next().unwrap();
        let p =
            ProbabilityMeasure::<f64>::point_mass(e.grounding().space().atom_count(), elsewhere)
                .unwrap();
        let rows = e
            .evaluate(Aldp::Cpl, "theta1", &SemanticInput::Measure(p))
            .unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows
            .iter()
            .all(|(_, g)| g.is_ok() || g == &Err(SemanticsError::UndefinedConditional)));
    }
}
