//! Knowledge-based inference: typed event variables, implication rules,
//! and the evidence-combination pipeline evaluated under four logics.

pub mod input;
pub mod kb;
pub mod pipeline;

use std::collections::BTreeMap;

use rand::Rng;

pub use input::{parse_measure, parse_possibility, wants_exact};
pub use kb::{
    build_space, Grounding, KnowledgeBase, Observation, Rule, VariableDecl, VariableKind,
    DEFAULT_MAX_ATOMS,
};
pub use pipeline::{relevant_rules, Aldp, Engine, Grades, Grounded, SemanticInput};

use crate::algebra::Event;
use crate::conditional::ConditionalObject;
use crate::error::InferenceError;
use crate::report::{check_detail, CheckResult, Report, Sweep, Tuples};
use crate::scalar::Scalar;
use crate::semantics::{Formula, PossibilityAssignment, ProbabilityMeasure};
use crate::Exact;

/// Possibility grades shipped with the bundled example.
pub const BUNDLED_POSSIBILITY: &str = include_str!("../../data/possibility.json");
/// Factor measure shipped with the bundled example.
pub const BUNDLED_MEASURE: &str = include_str!("../../data/measure_factors.json");

/// Query variable of the bundled example.
pub const EXAMPLE_QUERY: &str = "theta1";
/// Seeded measures per check in [`diagnosis_example_check`].
pub const EXAMPLE_MEASURES: usize = 20;

/// `η = a1[x1]·(a2[x2] ∨ a3[x3])` for one assignment, from primitive events.
fn eta(g: &Grounding, w: &BTreeMap<String, String>) -> Result<Event, InferenceError> {
    Ok(g.primitive("a1", &w["a1"])?
        & &(g.primitive("a2", &w["a2"])? | g.primitive("a3", &w["a3"])?))
}

/// `η₀ = (∨ a1[x1])·((∨ a2[x2]) ∨ (∨ a3[x3]))`, joins over whole domains.
fn eta0(g: &Grounding) -> Result<Event, InferenceError> {
    let join = |var: &str| g.leaf(var, g.domain(var)?);
    Ok(join("a1")? & (join("a2")? | join("a3")?))
}

/// `None` when the check held; otherwise the witness, with the error if
/// the check could not run.
fn verdict(
    outcome: Result<bool, InferenceError>,
    witness: impl FnOnce() -> String,
) -> Option<String> {
    match outcome {
        Ok(true) => None,
        Ok(false) => Some(witness()),
        Err(e) => Some(format!("{}: error: {e}", witness())),
    }
}

/// Runs the evidence-combination pipeline on the bundled diagnosis example
/// and compares every stage with an independent computation.
pub fn diagnosis_example_check(seed: u64) -> Result<Report, InferenceError> {
    let engine = Engine::new(
        KnowledgeBase::bundled(),
        Observation::bundled(),
        DEFAULT_MAX_ATOMS,
    )?;
    let g = engine.grounding();
    let y = engine.data().clone();
    let atoms = g.space().atom_count();
    let query_values = g.domain(EXAMPLE_QUERY)?.to_vec();
    let mut report = Report::new(format!("diagnosis example, {atoms} atoms"));

    let ids: Vec<&str> = engine
        .relevant_rules()
        .iter()
        .map(|r| r.id.as_str())
        .collect();
    report.push(CheckResult::single(
        "rules connected to the observation are r1, r2, r3, r4",
        ids == ["r1", "r2", "r3", "r4"],
        || format!("{ids:?}"),
    ));

    let mut cases = Vec::new();
    for t in &query_values {
        for w in engine.assignments(EXAMPLE_QUERY, t)? {
            cases.push((t.clone(), w));
        }
    }
    report.push(check_detail(
        "conjunction form (classical and probability) equals η·θ1[t]·y with η = a1·(a2 ∨ a3)",
        Tuples::exhaustive(cases.iter()),
        |(t, w)| {
            let run = || -> Result<bool, InferenceError> {
                let expected = eta(g, w)? & g.primitive(EXAMPLE_QUERY, t)? & &y;
                Ok(engine.conjoin_f(Aldp::Pl, w)?.as_event() == Some(&expected)
                    && engine.conjoin_f(Aldp::Cl, w)?.as_event() == Some(&expected))
            };
            verdict(run(), || format!("{w:?}"))
        },
    ));
    report.push(check_detail(
        "conditional conjunction form has consequent η·θ1[t]·y·b2[z2] = η·θ1[t]·y·(antecedent)",
        Tuples::exhaustive(cases.iter()),
        |(t, w)| {
            let run = || -> Result<bool, InferenceError> {
                let c = engine.conjoin_f(Aldp::Cpl, w)?;
                let c = c
                    .as_conditional()
                    .ok_or(InferenceError::SemanticsMismatch("not conditional".into()))?;
                let base = eta(g, w)? & g.primitive(EXAMPLE_QUERY, t)? & &y;
                Ok(c.consequent() == &(&base & g.primitive("b2", &w["b2"])?)
                    && c.consequent() == &(&base & c.antecedent()))
            };
            verdict(run(), || format!("{w:?}"))
        },
    ));

    let integrated: Vec<(String, Grounded, Grounded, Grounded)> = query_values
        .iter()
        .map(|t| {
            Ok((
                t.clone(),
                engine.integrate_out(Aldp::Cl, EXAMPLE_QUERY, t)?,
                engine.integrate_out(Aldp::Pl, EXAMPLE_QUERY, t)?,
                engine.integrate_out(Aldp::Cpl, EXAMPLE_QUERY, t)?,
            ))
        })
        .collect::<Result<_, InferenceError>>()?;
    let eta0 = eta0(g)?;
    report.push(check_detail(
        "integrated-out form (classical and probability) equals η₀·θ1[t]·y, set equality",
        Tuples::exhaustive(integrated.iter()),
        |(t, cl, pl, _)| {
            let expected = g.primitive(EXAMPLE_QUERY, t).ok().map(|th| &eta0 & th & &y);
            (cl.as_event() != expected.as_ref() || pl.as_event() != expected.as_ref())
                .then(|| t.to_string())
        },
    ));
    report.push(check_detail(
        "conditional integrated-out numerator equals the probability-logic event",
        Tuples::exhaustive(integrated.iter()),
        |(t, _, pl, cpl)| {
            let numerator = cpl.as_conditional().map(ConditionalObject::consequent);
            (numerator != pl.as_event()).then(|| t.to_string())
        },
    ));
    let tau0 = g.leaf("b2", g.domain("b2")?)?;
    report.push(check_detail(
        "conditional integrated-out antecedent contains η₀·θ1[t]·y·τ₀, τ₀ the join of b2 values",
        Tuples::exhaustive(integrated.iter()),
        |(t, _, _, cpl)| {
            let antecedent = cpl.as_conditional()?.antecedent();
            let floor = g
                .primitive(EXAMPLE_QUERY, t)
                .ok()
                .map(|th| &eta0 & th & &y & &tau0)?;
            (!floor.leq(antecedent)).then(|| t.to_string())
        },
    ));
    report.push(check_detail(
        "conditional integrated-out antecedent equals (η₀·θ1[t]·y) ∨ τ₀",
        Tuples::exhaustive(integrated.iter()),
        |(t, _, _, cpl)| {
            let antecedent = cpl.as_conditional()?.antecedent();
            let reading = g
                .primitive(EXAMPLE_QUERY, t)
                .ok()
                .map(|th| (&eta0 & th & &y) | &tau0)?;
            (&reading != antecedent).then(|| t.to_string())
        },
    ));
    report.push(check_detail(
        "n-ary disjunction over assignments agrees with folded binary disjunction",
        Tuples::exhaustive(query_values.iter()),
        |t| {
            let run = || -> Result<bool, InferenceError> {
                let terms: Vec<ConditionalObject> = engine
                    .assignments(EXAMPLE_QUERY, t)?
                    .iter()
                    .map(|w| {
                        Ok(engine
                            .conjoin_f(Aldp::Cpl, w)?
                            .as_conditional()
                            .cloned()
                            .expect("conditional"))
                    })
                    .collect::<Result<_, InferenceError>>()?;
                let folded = terms[1..].iter().fold(terms[0].clone(), |acc, c| acc.or(c));
                Ok(ConditionalObject::or_n(&terms)? == folded)
            };
            verdict(run(), || t.to_string())
        },
    ));

    let mut rng = Sweep::new(seed, 0).rng();
    let measures: Vec<ProbabilityMeasure<f64>> = (0..EXAMPLE_MEASURES)
        .map(|_| ProbabilityMeasure::random(atoms, &mut rng))
        .collect();
    report.push(grade_check(&engine, &integrated, &measures, "f64"));
    let exact: Vec<ProbabilityMeasure<Exact>> = (0..2)
        .map(|_| ProbabilityMeasure::random(atoms, &mut rng))
        .collect();
    report.push(grade_check(&engine, &integrated, &exact, "exact"));

    let sample_atoms: Vec<usize> = (0..atoms).step_by(7).collect();
    report.push(check_detail(
        "classical grade at an atom equals the probability grade under its point mass",
        Tuples {
            iter: sample_atoms.iter().copied(),
            exhaustive: false,
        },
        |&atom| {
            let run = || -> Result<bool, InferenceError> {
                let cl =
                    engine.evaluate::<f64>(Aldp::Cl, EXAMPLE_QUERY, &SemanticInput::Atom(atom))?;
                let p = ProbabilityMeasure::point_mass(atoms, atom)?;
                let pl =
                    engine.evaluate::<f64>(Aldp::Pl, EXAMPLE_QUERY, &SemanticInput::Measure(p))?;
                Ok(cl == pl)
            };
            verdict(run(), || {
                g.space().label(atom).unwrap_or_default().to_string()
            })
        },
    ));
    report.push(check_detail(
        "fuzzy grade under the crisp grades of an atom equals the classical grade there",
        Tuples {
            iter: sample_atoms.iter().copied(),
            exhaustive: false,
        },
        |&atom| {
            let run = || -> Result<bool, InferenceError> {
                let crisp = crisp_grades(g, atom)?;
                let fl = engine.evaluate::<f64>(
                    Aldp::Fl,
                    EXAMPLE_QUERY,
                    &SemanticInput::Possibility(crisp),
                )?;
                let cl =
                    engine.evaluate::<f64>(Aldp::Cl, EXAMPLE_QUERY, &SemanticInput::Atom(atom))?;
                Ok(fl == cl)
            };
            verdict(run(), || {
                g.space().label(atom).unwrap_or_default().to_string()
            })
        },
    ));
    report.push(evidence_monotonicity()?);
    report.push(order_independence(&engine)?);
    report.push(grounding_homomorphism(g, seed));

    let poss = parse_possibility::<Exact>(BUNDLED_POSSIBILITY, g)?;
    for (t, grade) in engine.evaluate(Aldp::Fl, EXAMPLE_QUERY, &SemanticInput::Possibility(poss))? {
        report.push(CheckResult::note(
            format!("fuzzy grade for θ1 = {t} under the bundled grades"),
            grade.map_or_else(|e| e.to_string(), |v| format!("{v}")),
        ));
    }
    for (t, _, _, cpl) in &integrated {
        if let Some(c) = cpl.as_conditional() {
            report.push(CheckResult::note(
                format!("conditional integrated-out antecedent for θ1 = {t}"),
                format!(
                    "{} of {atoms} atoms, complement {}",
                    c.antecedent().len(),
                    describe_complement(g, c.antecedent())
                ),
            ));
        }
    }
    Ok(report)
}

/// Lists the atoms outside `e` compactly when there are few of them.
fn describe_complement(g: &Grounding, e: &Event) -> String {
    let outside = !e;
    if outside.len() > 12 {
        return format!("{} atoms", outside.len());
    }
    g.space().render(&outside)
}

/// Probability grades match `p` of the independently computed event, and
/// conditional grades match `p(consequent)/p(antecedent)`.
fn grade_check<S: Scalar>(
    engine: &Engine,
    integrated: &[(String, Grounded, Grounded, Grounded)],
    measures: &[ProbabilityMeasure<S>],
    label: &str,
) -> CheckResult {
    check_detail(
        format!(
            "grades ({label}): probability equals p(η₀·θ1[t]·y); conditional equals p(consequent)/p(antecedent)"
        ),
        Tuples {
            iter: measures.iter().enumerate(),
            exhaustive: false,
        },
        |(k, p)| {
            let run = || -> Result<bool, InferenceError> {
                let input = SemanticInput::Measure((*p).clone());
                let pl = engine.evaluate(Aldp::Pl, EXAMPLE_QUERY, &input)?;
                let cpl = engine.evaluate(Aldp::Cpl, EXAMPLE_QUERY, &input)?;
                let g = engine.grounding();
                let eta0 = eta0(g)?;
                for (i, (t, _, _, cond)) in integrated.iter().enumerate() {
                    let event = &eta0 & g.primitive(EXAMPLE_QUERY, t)? & engine.data();
                    let expected = p.pl_eval(&event)?;
                    let c = cond.as_conditional().expect("conditional");
                    let ratio = p.pl_eval(c.consequent())? / p.pl_eval(c.antecedent())?;
                    let pl_ok = pl[i].1.as_ref().is_ok_and(|v| v.approx_eq(&expected));
                    let cpl_ok = cpl[i].1.as_ref().is_ok_and(|v| v.approx_eq(&ratio));
                    if !(pl_ok && cpl_ok && pl[i].0 == **t && cpl[i].0 == **t) {
                        return Ok(false);
                    }
                }
                Ok(true)
            };
            verdict(run(), || format!("measure #{k}"))
        },
    )
}

/// Grade 1 for the values an atom takes and 0 for all others.
fn crisp_grades(g: &Grounding, atom: usize) -> Result<PossibilityAssignment<f64>, InferenceError> {
    let mut grades = Vec::new();
    for var in g.variables() {
        let at = g.value_at(atom, var)?;
        for value in g.domain(var)? {
            grades.push((
                (var.clone(), value.clone()),
                if value == at { 1.0 } else { 0.0 },
            ));
        }
    }
    Ok(PossibilityAssignment::new(grades)?)
}

fn nonempty_subsets(domain: &[String]) -> Vec<Vec<String>> {
    (1u32..1 << domain.len())
        .map(|mask| {
            domain
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, v)| v.clone())
                .collect()
        })
        .collect()
}

/// Enlarging the observed value sets only enlarges the antecedent of the
/// conditional result, so a defined grade stays defined under every
/// measure.
fn evidence_monotonicity() -> Result<CheckResult, InferenceError> {
    let kb = KnowledgeBase::bundled();
    let b1 = kb
        .variable("b1")
        .map(|v| v.domain.clone())
        .unwrap_or_default();
    let b2 = kb
        .variable("b2")
        .map(|v| v.domain.clone())
        .unwrap_or_default();
    let mut observations = Vec::new();
    for s1 in nonempty_subsets(&b1) {
        observations.push(BTreeMap::from([("b1".to_string(), s1.clone())]));
        for s2 in nonempty_subsets(&b2) {
            observations.push(BTreeMap::from([
                ("b1".to_string(), s1.clone()),
                ("b2".to_string(), s2),
            ]));
        }
    }
    let mut antecedents = Vec::new();
    for observe in &observations {
        let engine = Engine::new(
            kb.clone(),
            Observation {
                observe: observe.clone(),
            },
            DEFAULT_MAX_ATOMS,
        )?;
        let mut per_value = Vec::new();
        for t in engine.grounding().domain(EXAMPLE_QUERY)?.to_vec() {
            let c = engine.integrate_out(Aldp::Cpl, EXAMPLE_QUERY, &t)?;
            per_value.push(
                c.as_conditional()
                    .expect("conditional")
                    .antecedent()
                    .clone(),
            );
        }
        antecedents.push(per_value);
    }
    let nested = |small: &BTreeMap<String, Vec<String>>, large: &BTreeMap<String, Vec<String>>| {
        small.keys().eq(large.keys())
            && small
                .iter()
                .all(|(var, values)| values.iter().all(|v| large[var].contains(v)))
    };
    let pairs: Vec<(usize, usize)> = (0..observations.len())
        .flat_map(|i| (0..observations.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && nested(&observations[i], &observations[j]))
        .collect();
    Ok(check_detail(
        "larger observed value sets give larger conditional antecedents (defined stays defined)",
        Tuples::exhaustive(pairs.iter().copied()),
        |&(i, j)| {
            let grows = antecedents[i]
                .iter()
                .zip(&antecedents[j])
                .all(|(s, l)| s.leq(l));
            (!grows).then(|| format!("{:?} ⊆ {:?}", observations[i], observations[j]))
        },
    ))
}

/// Reversing the rule order changes no integrated-out result.
fn order_independence(engine: &Engine) -> Result<CheckResult, InferenceError> {
    let mut kb = engine.kb().clone();
    kb.rules.reverse();
    let reversed = Engine::new(kb, engine.observation().clone(), DEFAULT_MAX_ATOMS)?;
    let values = engine.grounding().domain(EXAMPLE_QUERY)?.to_vec();
    let cases: Vec<(Aldp, String)> = [Aldp::Pl, Aldp::Cpl]
        .into_iter()
        .flat_map(|aldp| values.iter().map(move |t| (aldp, t.clone())))
        .collect();
    Ok(check_detail(
        "reversing the rule order leaves every integrated-out result unchanged",
        Tuples::exhaustive(cases.iter()),
        |(aldp, t)| {
            let a = engine.integrate_out(*aldp, EXAMPLE_QUERY, t).ok();
            let b = reversed.integrate_out(*aldp, EXAMPLE_QUERY, t).ok();
            (a.is_none() || a != b).then(|| format!("{aldp} {t}"))
        },
    ))
}

fn random_formula(g: &Grounding, depth: usize, rng: &mut impl Rng) -> Formula {
    let vars = g.variables();
    if depth == 0 || rng.gen_bool(0.3) {
        let var = &vars[rng.gen_range(0..vars.len())];
        let domain = g.domain(var).expect("declared");
        let vals: Vec<String> = domain
            .iter()
            .filter(|_| rng.gen_bool(0.5))
            .cloned()
            .collect();
        let vals = if vals.is_empty() {
            vec![domain[0].clone()]
        } else {
            vals
        };
        return Formula::Leaf {
            var: var.clone(),
            vals: Some(vals),
        };
    }
    let op = rng.gen_range(0..4);
    let mut sub = || random_formula(g, depth - 1, rng);
    match op {
        0 => Formula::And(vec![sub(), sub()]),
        1 => Formula::Or(vec![sub(), sub()]),
        2 => Formula::negation(sub()),
        _ => Formula::implies(sub(), sub()),
    }
}

/// Grounding commutes with the connectives on random formulas.
fn grounding_homomorphism(g: &Grounding, seed: u64) -> CheckResult {
    let mut rng = Sweep::new(seed ^ 0x9e37, 0).rng();
    let pairs: Vec<(Formula, Formula)> = (0..200)
        .map(|_| {
            (
                random_formula(g, 3, &mut rng),
                random_formula(g, 3, &mut rng),
            )
        })
        .collect();
    check_detail(
        "grounding commutes with ∨, ·, ′ and ⇒ on 200 random formula pairs",
        Tuples {
            iter: pairs.iter(),
            exhaustive: false,
        },
        |(f, h)| {
            let run = || -> Result<bool, InferenceError> {
                let (ef, eh) = (g.ground(f)?, g.ground(h)?);
                Ok(
                    g.ground(&Formula::Or(vec![f.clone(), h.clone()]))? == &ef | &eh
                        && g.ground(&Formula::And(vec![f.clone(), h.clone()]))? == &ef & &eh
                        && g.ground(&Formula::negation(f.clone()))? == !&ef
                        && g.ground(&Formula::implies(f.clone(), h.clone()))? == ef.implies(&eh),
                )
            };
            verdict(run(), || format!("{f} ; {h}"))
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagnosis_example_passes() {
        let report = diagnosis_example_check(0).unwrap();
        assert!(report.passed(), "{report}");
    }
}
