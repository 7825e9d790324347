//! Formulas over primitive events `var[value]`, and possibilistic (fuzzy)
//! evaluation of them.
//!
//! Fuzzy grades are attached to primitive events rather than to atoms, and
//! `x ∨ x′` need not evaluate to 1, so evaluation is defined on syntax.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::SemanticsError;
use crate::scalar::Scalar;

/// A formula tree. A leaf `var[v₁, …, vₖ]` stands for the disjunction of
/// the primitive events `var = vᵢ`; a leaf without values is a placeholder
/// filled in from an assignment by [`Formula::bind`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawFormula", into = "RawFormula")]
pub enum Formula {
    Leaf {
        var: String,
        vals: Option<Vec<String>>,
    },
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Not(Box<Formula>),
    /// `Implies(b, a)` is `b ⇒ a`.
    Implies(Box<Formula>, Box<Formula>),
}

/// The JSON shape: `{"var", "vals"}` or `{"op", "args"}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum RawFormula {
    Leaf {
        var: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        vals: Option<Vec<String>>,
    },
    Node {
        op: String,
        args: Vec<RawFormula>,
    },
}

impl TryFrom<RawFormula> for Formula {
    type Error = String;

    fn try_from(raw: RawFormula) -> Result<Self, String> {
        match raw {
            RawFormula::Leaf { var, vals } => {
                if vals.as_ref().is_some_and(Vec::is_empty) {
                    return Err(format!("leaf `{var}` lists no values"));
                }
                Ok(Formula::Leaf { var, vals })
            }
            RawFormula::Node { op, args } => {
                let mut args: Vec<Formula> = args
                    .into_iter()
                    .map(Formula::try_from)
                    .collect::<Result<_, _>>()?;
                match (op.as_str(), args.len()) {
                    ("and", n) if n > 0 => Ok(Formula::And(args)),
                    ("or", n) if n > 0 => Ok(Formula::Or(args)),
                    ("not", 1) => Ok(Formula::Not(Box::new(args.remove(0)))),
                    ("implies", 2) => {
                        let consequent = args.pop().expect("two arguments");
                        let antecedent = args.pop().expect("two arguments");
                        Ok(Formula::Implies(Box::new(antecedent), Box::new(consequent)))
                    }
                    ("and" | "or" | "not" | "implies", n) => {
                        Err(format!("operator `{op}` cannot take {n} arguments"))
                    }
                    _ => Err(format!("unknown operator `{op}`")),
                }
            }
        }
    }
}

impl From<Formula> for RawFormula {
    fn from(formula: Formula) -> Self {
        let node = |op: &str, args: Vec<Formula>| RawFormula::Node {
            op: op.into(),
            args: args.into_iter().map(RawFormula::from).collect(),
        };
        match formula {
            Formula::Leaf { var, vals } => RawFormula::Leaf { var, vals },
            Formula::And(args) => node("and", args),
            Formula::Or(args) => node("or", args),
            Formula::Not(arg) => node("not", vec![*arg]),
            Formula::Implies(b, a) => node("implies", vec![*b, *a]),
        }
    }
}

impl Formula {
    pub fn leaf(var: &str, vals: &[&str]) -> Self {
        Formula::Leaf {
            var: var.into(),
            vals: Some(vals.iter().map(|v| v.to_string()).collect()),
        }
    }

    /// A leaf whose value comes from an assignment.
    pub fn placeholder(var: &str) -> Self {
        Formula::Leaf {
            var: var.into(),
            vals: None,
        }
    }

    pub fn negation(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn implies(antecedent: Formula, consequent: Formula) -> Self {
        Formula::Implies(Box::new(antecedent), Box::new(consequent))
    }

    /// Every variable mentioned, in first-occurrence order.
    pub fn variables(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.visit_leaves(&mut |var, _| {
            if !out.contains(&var) {
                out.push(var);
            }
        });
        out
    }

    pub fn visit_leaves<'a>(&'a self, f: &mut impl FnMut(&'a str, Option<&'a [String]>)) {
        match self {
            Formula::Leaf { var, vals } => f(var, vals.as_deref()),
            Formula::And(args) | Formula::Or(args) => args.iter().for_each(|g| g.visit_leaves(f)),
            Formula::Not(g) => g.visit_leaves(f),
            Formula::Implies(b, a) => {
                b.visit_leaves(f);
                a.visit_leaves(f);
            }
        }
    }

    /// Fills each placeholder whose variable `binding` maps to a value set.
    /// Leaves with explicit values and unmapped placeholders are kept.
    pub fn bind(&self, binding: &BTreeMap<String, Vec<String>>) -> Formula {
        match self {
            Formula::Leaf { var, vals: None } => match binding.get(var) {
                Some(values) => Formula::Leaf {
                    var: var.clone(),
                    vals: Some(values.clone()),
                },
                None => self.clone(),
            },
            Formula::Leaf { .. } => self.clone(),
            Formula::And(args) => Formula::And(args.iter().map(|g| g.bind(binding)).collect()),
            Formula::Or(args) => Formula::Or(args.iter().map(|g| g.bind(binding)).collect()),
            Formula::Not(g) => Formula::negation(g.bind(binding)),
            Formula::Implies(b, a) => Formula::implies(b.bind(binding), a.bind(binding)),
        }
    }

    /// True when no placeholder is left.
    pub fn is_bound(&self) -> bool {
        let mut bound = true;
        self.visit_leaves(&mut |_, vals| bound &= vals.is_some());
        bound
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, args: &[Formula], sep: &str| {
            write!(f, "(")?;
            for (i, g) in args.iter().enumerate() {
                if i > 0 {
                    write!(f, "{sep}")?;
                }
                write!(f, "{g}")?;
            }
            write!(f, ")")
        };
        match self {
            Formula::Leaf {
                var,
                vals: Some(vals),
            } => write!(f, "{var}[{}]", vals.join(",")),
            Formula::Leaf { var, vals: None } => write!(f, "{var}[·]"),
            Formula::And(args) => join(f, args, " · "),
            Formula::Or(args) => join(f, args, " ∨ "),
            Formula::Not(g) => write!(f, "{g}′"),
            Formula::Implies(b, a) => write!(f, "({b} ⇒ {a})"),
        }
    }
}

/// Possibility grades in `[0, 1]` for primitive events `var[value]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PossibilityAssignment<S> {
    grades: BTreeMap<(String, String), S>,
}

impl<S: Scalar> PossibilityAssignment<S> {
    pub fn new<I>(grades: I) -> Result<Self, SemanticsError>
    where
        I: IntoIterator<Item = ((String, String), S)>,
    {
        let mut map = BTreeMap::new();
        for ((var, value), grade) in grades {
            if grade < S::zero() || grade > S::one() {
                return Err(SemanticsError::InvalidGrade {
                    var,
                    value,
                    reason: format!("{grade} is outside [0, 1]"),
                });
            }
            map.insert((var, value), grade);
        }
        Ok(PossibilityAssignment { grades: map })
    }

    pub fn grade(&self, var: &str, value: &str) -> Option<&S> {
        self.grades.get(&(var.to_string(), value.to_string()))
    }

    pub fn grades(&self) -> &BTreeMap<(String, String), S> {
        &self.grades
    }

    /// Evaluates with `MAX` for `∨`, `MIN` for `·`, `1 − x` for `′`, and
    /// `MAX(1 − ‖b‖, ‖a‖)` for `b ⇒ a`. A multi-valued leaf is the `MAX` of
    /// its values.
    pub fn fl_eval(&self, formula: &Formula) -> Result<S, SemanticsError> {
        match formula {
            Formula::Leaf { var, vals: None } => Err(SemanticsError::UnboundLeaf {
                var: var.clone(),
                value: "·".into(),
            }),
            Formula::Leaf {
                var,
                vals: Some(vals),
            } => {
                let mut best = S::zero();
                for value in vals {
                    let grade =
                        self.grade(var, value)
                            .ok_or_else(|| SemanticsError::UnboundLeaf {
                                var: var.clone(),
                                value: value.clone(),
                            })?;
                    best = best.max_of(grade.clone());
                }
                Ok(best)
            }
            Formula::And(args) => {
                let mut acc = S::one();
                for g in args {
                    acc = acc.min_of(self.fl_eval(g)?);
                }
                Ok(acc)
            }
            Formula::Or(args) => {
                let mut acc = S::zero();
                for g in args {
                    acc = acc.max_of(self.fl_eval(g)?);
                }
                Ok(acc)
            }
            Formula::Not(g) => Ok(S::one() - self.fl_eval(g)?),
            Formula::Implies(b, a) => Ok((S::one() - self.fl_eval(b)?).max_of(self.fl_eval(a)?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poss(pairs: &[(&str, f64)]) -> PossibilityAssignment<f64> {
        PossibilityAssignment::new(
            pairs
                .iter()
                .map(|(var, g)| ((var.to_string(), "t".to_string()), *g)),
        )
        .unwrap()
    }

    fn x(var: &str) -> Formula {
        Formula::leaf(var, &["t"])
    }

    #[test]
    fn evaluation_examples() {
        let p = poss(&[("x", 0.3), ("y", 0.8)]);
        assert_eq!(p.fl_eval(&Formula::Or(vec![x("x"), x("y")])).unwrap(), 0.8);
        let p = poss(&[("x", 0.3), ("y", 0.2)]);
        assert!((p.fl_eval(&Formula::implies(x("x"), x("y"))).unwrap() - 0.7).abs() < 1e-12);
        let middle = Formula::Or(vec![x("x"), Formula::negation(x("x"))]);
        assert!((p.fl_eval(&middle).unwrap() - 0.7).abs() < 1e-12);
    }

    #[test]
    fn unbound_leaves_and_bad_grades_are_errors() {
        let p = poss(&[("x", 0.3)]);
        assert!(matches!(
            p.fl_eval(&x("y")),
            Err(SemanticsError::UnboundLeaf { .. })
        ));
        assert!(matches!(
            p.fl_eval(&Formula::placeholder("x")),
            Err(SemanticsError::UnboundLeaf { .. })
        ));
        assert!(PossibilityAssignment::new([(("x".to_string(), "t".to_string()), 1.5)]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"op":"implies","args":[{"var":"b1","vals":["1"]},{"op":"or","args":[{"var":"a2"},{"var":"a3"}]}]}"#;
        let f: Formula = serde_json::from_str(text).unwrap();
        assert_eq!(
            f,
            Formula::implies(
                Formula::leaf("b1", &["1"]),
                Formula::Or(vec![Formula::placeholder("a2"), Formula::placeholder("a3")])
            )
        );
        assert_eq!(serde_json::to_string(&f).unwrap(), text);
        assert_eq!(f.variables(), vec!["b1", "a2", "a3"]);
    }

    #[test]
    fn malformed_json_is_rejected() {
        for text in [
            r#"{"op":"not","args":[]}"#,
            r#"{"op":"xor","args":[{"var":"a"}]}"#,
            r#"{"op":"implies","args":[{"var":"a"}]}"#,
            r#"{"var":"a","vals":[]}"#,
            r#"{"nope":1}"#,
        ] {
            assert!(serde_json::from_str::<Formula>(text).is_err(), "{text}");
        }
    }

    #[test]
    fn binding_fills_placeholders() {
        let f = Formula::implies(Formula::placeholder("a"), Formula::leaf("b", &["1"]));
        let binding: BTreeMap<String, Vec<String>> = [
            ("a".into(), vec!["1".into()]),
            ("b".into(), vec!["2".into(), "3".into()]),
        ]
        .into();
        let bound = f.bind(&binding);
        assert_eq!(
            bound,
            Formula::implies(Formula::leaf("a", &["1"]), Formula::leaf("b", &["1"]))
        );
        assert!(bound.is_bound());
        assert!(!f.is_bound());
    }
}
