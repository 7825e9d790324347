//! The four evaluators: classical truth at an atom, fuzzy grades over
//! formulas, probability of events, and conditional probability of
//! conditional objects. The suites here check each evaluator against the
//! algebra it is meant to respect.

pub mod classical;
pub mod formula;
pub mod measure;

use rand::Rng;

pub use classical::cl_eval;
pub use formula::{Formula, PossibilityAssignment};
pub use measure::{mf_independent_sample, IndependenceSample, LewisGap, ProbabilityMeasure};

use crate::algebra::{AtomSpace, Event};
use crate::conditional::ConditionalObject;
use crate::report::{check_all, check_detail, CheckResult, Report, Sweep, Tuples};
use crate::scalar::Scalar;

/// Number of seeded `(p, a, b)` draws in the probability identity checks.
pub const PROBABILITY_TRIALS: usize = 1000;
/// Number of seeded measures in the monotonicity check.
pub const MONOTONICITY_MEASURES: usize = 100;
/// Measures sampled per pair in the independence checks.
pub const INDEPENDENCE_MEASURES: usize = 100;

/// Classical evaluation is a homomorphism onto `{0, 1}` and agrees with
/// probability under a point mass.
pub fn classical_check(space: &AtomSpace, sweep: &Sweep) -> Report {
    let mut report = Report::new(format!(
        "classical evaluation, {} atoms",
        space.atom_count()
    ));
    let n = space.atom_count();
    let cases = || {
        let pairs = sweep.events::<2>(space);
        Tuples {
            exhaustive: pairs.exhaustive,
            iter: pairs
                .iter
                .flat_map(move |pair| (0..n).map(move |i| (i, pair.clone()))),
        }
    };
    report.push(check_all(
        "‖0‖ = 0, ‖1‖ = 1",
        Tuples::exhaustive(0..n),
        |&i| cl_eval(i, &space.empty()) == 0 && cl_eval(i, &space.full()) == 1,
    ));
    report.push(check_all(
        "‖a∨b‖ = MAX, ‖a·b‖ = MIN, ‖a′‖ = 1−‖a‖, ‖a+b‖ = ‖a′·b ∨ a·b′‖",
        cases(),
        |(i, [a, b])| {
            let (x, y) = (cl_eval(*i, a), cl_eval(*i, b));
            cl_eval(*i, &(a | b)) == x.max(y)
                && cl_eval(*i, &(a & b)) == x.min(y)
                && cl_eval(*i, &!a) == 1 - x
                && cl_eval(*i, &(a ^ b)) == cl_eval(*i, &((&!a & b) | (a & &!b)))
        },
    ));
    report.push(check_all(
        "‖b⇒a‖ = MAX(1−‖b‖, ‖a‖)",
        cases(),
        |(i, [a, b])| cl_eval(*i, &b.implies(a)) == (1 - cl_eval(*i, b)).max(cl_eval(*i, a)),
    ));
    report.push(check_all(
        "classical grade equals probability under the point mass at the atom",
        cases(),
        |(i, [a, _])| {
            ProbabilityMeasure::<f64>::point_mass(n, *i)
                .and_then(|p| Ok(p.pl_eval(a)?))
                .is_ok_and(|v| v == f64::from(cl_eval(*i, a)))
        },
    ));
    report
}

fn nonempty_event(width: usize, rng: &mut impl Rng) -> Event {
    loop {
        let e = Event::random(width, rng);
        if !e.is_empty() {
            return e;
        }
    }
}

/// Seeded draws of a strictly positive measure with `K` random events, the
/// last of which is nonempty (it serves as an antecedent).
fn draws<S: Scalar, const K: usize>(
    space: &AtomSpace,
    sweep: &Sweep,
    salt: u64,
) -> Tuples<std::vec::IntoIter<(ProbabilityMeasure<S>, [Event; K])>> {
    let width = space.atom_count();
    let mut rng = Sweep::new(sweep.seed ^ salt, 0).rng();
    let items: Vec<_> = (0..PROBABILITY_TRIALS)
        .map(|_| {
            let p = ProbabilityMeasure::<S>::random(width, &mut rng);
            let events: [Event; K] = std::array::from_fn(|k| {
                if k + 1 == K {
                    nonempty_event(width, &mut rng)
                } else {
                    Event::random(width, &mut rng)
                }
            });
            (p, events)
        })
        .collect();
    Tuples {
        iter: items.into_iter(),
        exhaustive: false,
    }
}

/// Probability and conditional probability identities, in scalar type `S`
/// (compared exactly for exact scalars, else to [`Scalar::tolerance`]).
pub fn probability_check<S: Scalar>(space: &AtomSpace, sweep: &Sweep, label: &str) -> Report {
    let mut report = Report::new(format!(
        "probability evaluation ({label}), {} atoms",
        space.atom_count()
    ));
    let eq = |x: &S, y: &S| x.approx_eq(y);
    let p_of = |p: &ProbabilityMeasure<S>, e: &Event| p.pl_eval(e).expect("shared space");
    let cp = |p: &ProbabilityMeasure<S>, a: &Event, b: &Event| {
        p.cpl_eval(&ConditionalObject::new(a, b).expect("shared space"))
    };

    report.push(check_detail(
        "p(b⇒a) = p(a|b) + p(b′)·p(a′|b)",
        draws::<S, 2>(space, sweep, 1),
        |(p, [a, b])| {
            let lhs = p_of(p, &b.implies(a));
            let rhs = cp(p, a, b).and_then(|c| Ok(c + p_of(p, &!b) * cp(p, &!a, b)?));
            match rhs {
                Ok(rhs) if eq(&lhs, &rhs) => None,
                Ok(rhs) => Some(format!("a={a:?} b={b:?}: {lhs} vs {rhs}")),
                Err(e) => Some(format!("a={a:?} b={b:?}: {e}")),
            }
        },
    ));
    report.push(check_all(
        "p(a∨b) + p(a·b) = p(a) + p(b), p(a′) = 1 − p(a), p(b⇒a) = p(b′) + p(a·b)",
        draws::<S, 2>(space, sweep, 2),
        |(p, [a, b])| {
            eq(
                &(p_of(p, &(a | b)) + p_of(p, &(a & b))),
                &(p_of(p, a) + p_of(p, b)),
            ) && eq(&p_of(p, &!a), &(S::one() - p_of(p, a)))
                && eq(&p_of(p, &b.implies(a)), &(p_of(p, &!b) + p_of(p, &(a & b))))
        },
    ));
    report.push(check_all(
        "inclusion–exclusion over three events equals p of the join",
        draws::<S, 3>(space, sweep, 3),
        |(p, events)| {
            let join = Event::join_all(events.iter()).expect("shared space");
            p.inclusion_exclusion(events)
                .is_ok_and(|v| eq(&v, &p_of(p, &join)))
        },
    ));
    report.push(check_detail(
        "same antecedent: p((a|b) op (c|b)) = p(a op c|b) for ∨, ·, +; p((a|b)′) = 1 − p(a|b) = p(a′|b); p(a|b) = p(a·b|b)",
        draws::<S, 3>(space, sweep, 4),
        |(p, [a, c, b])| {
            let ab = ConditionalObject::new(a, b).expect("shared space");
            let cb = ConditionalObject::new(c, b).expect("shared space");
            let run = || -> Result<bool, crate::error::SemanticsError> {
                let pa = p.cpl_eval(&ab)?;
                Ok(eq(&p.cpl_eval(&ab.or(&cb))?, &cp(p, &(a | c), b)?)
                    && eq(&p.cpl_eval(&ab.and(&cb))?, &cp(p, &(a & c), b)?)
                    && eq(&p.cpl_eval(&ab.sum(&cb))?, &cp(p, &(a ^ c), b)?)
                    && eq(&p.cpl_eval(&ab.complement())?, &(S::one() - pa.clone()))
                    && eq(&p.cpl_eval(&ab.complement())?, &cp(p, &!a, b)?)
                    && eq(&pa, &cp(p, &(a & b), b)?))
            };
            match run() {
                Ok(true) => None,
                Ok(false) => Some(format!("a={a:?} c={c:?} b={b:?}")),
                Err(e) => Some(format!("a={a:?} c={c:?} b={b:?}: {e}")),
            }
        },
    ));
    report.push(monotonicity(space, sweep, &eq));
    report.push(constructed_gap::<S>());
    report
}

/// `A ≤ C` implies `p(A) ≤ p(C)` over every comparable pair, for a fixed
/// number of seeded measures. Pairs with an undefined side are skipped.
fn monotonicity<S: Scalar>(
    space: &AtomSpace,
    sweep: &Sweep,
    eq: &impl Fn(&S, &S) -> bool,
) -> CheckResult {
    let mut rng = Sweep::new(sweep.seed ^ 5, 0).rng();
    let measures: Vec<ProbabilityMeasure<S>> = (0..MONOTONICITY_MEASURES)
        .map(|_| ProbabilityMeasure::random(space.atom_count(), &mut rng))
        .collect();
    let comparable: Vec<[ConditionalObject; 2]> = {
        let pairs = sweep.conditionals::<2>(space);
        pairs.iter.filter(|[a, c]| a.leq(c)).collect()
    };
    let exhaustive = sweep.conditionals::<2>(space).exhaustive;
    let cases = Tuples {
        exhaustive,
        iter: measures
            .iter()
            .flat_map(|p| comparable.iter().map(move |pair| (p, pair))),
    };
    check_detail(
        format!(
            "A ≤ C implies p(A) ≤ p(C), every comparable pair × {MONOTONICITY_MEASURES} measures"
        ),
        cases,
        |(p, [a, c])| match (p.cpl_eval(a), p.cpl_eval(c)) {
            (Ok(x), Ok(y)) if x <= y || eq(&x, &y) => None,
            (Ok(x), Ok(y)) => Some(format!("{a:?} ≤ {c:?} but {x} > {y}")),
            _ => None,
        },
    )
}

/// On ten equally likely atoms with `b` one atom and `a = 0`, the
/// implication is nine times as likely as not while `p(a|b) = 0`.
fn constructed_gap<S: Scalar>() -> CheckResult {
    let name = "uniform 10 atoms, b one atom, a = 0: p(b⇒a) − p(a|b) ≥ 0.9";
    let run = || -> Result<LewisGap<S>, crate::error::SemanticsError> {
        let space = AtomSpace::new(10)?;
        let p = ProbabilityMeasure::<S>::uniform(10)?;
        p.lewis_gap(&space.empty(), &space.atom(0)?)
    };
    match run() {
        Ok(gap) => {
            let bound = S::ratio(9, 10) - S::tolerance();
            CheckResult::single(name, gap.gap >= bound, || format!("gap {}", gap.gap))
        }
        Err(e) => CheckResult::single(name, false, || e.to_string()),
    }
}

/// Grades `0, 1/10, …, 1` for three primitive events `x`, `y`, `z`.
fn grade_grid<S: Scalar>() -> impl Iterator<Item = PossibilityAssignment<S>> {
    (0..11u64).flat_map(|i| {
        (0..11u64).flat_map(move |j| {
            (0..11u64).map(move |k| {
                PossibilityAssignment::new([
                    (("x".to_string(), "t".to_string()), S::ratio(i, 10)),
                    (("y".to_string(), "t".to_string()), S::ratio(j, 10)),
                    (("z".to_string(), "t".to_string()), S::ratio(k, 10)),
                ])
                .expect("grid grades lie in [0, 1]")
            })
        })
    })
}

/// Value-level laws of fuzzy evaluation over a grid of grades.
pub fn fuzzy_check<S: Scalar>(label: &str) -> Report {
    let mut report = Report::new(format!("fuzzy evaluation ({label})"));
    let (x, y, z) = (leaf("x"), leaf("y"), leaf("z"));
    let same = |p: &PossibilityAssignment<S>, f: &Formula, g: &Formula| matches!((p.fl_eval(f), p.fl_eval(g)), (Ok(u), Ok(v)) if u.approx_eq(&v));
    let grid = || Tuples::exhaustive(grade_grid::<S>());
    let or = |a: &Formula, b: &Formula| Formula::Or(vec![a.clone(), b.clone()]);
    let and = |a: &Formula, b: &Formula| Formula::And(vec![a.clone(), b.clone()]);
    let not = |a: &Formula| Formula::negation(a.clone());
    let imp = |b: &Formula, a: &Formula| Formula::implies(b.clone(), a.clone());

    report.push(check_all("x∨x = x, x·x = x", grid(), |p| {
        same(p, &or(&x, &x), &x) && same(p, &and(&x, &x), &x)
    }));
    report.push(check_all(
        "(x∨y)′ = x′·y′, (x·y)′ = x′∨y′",
        grid(),
        |p| {
            same(p, &not(&or(&x, &y)), &and(&not(&x), &not(&y)))
                && same(p, &not(&and(&x, &y)), &or(&not(&x), &not(&y)))
        },
    ));
    report.push(check_all("x∨(x·y) = x, x·(x∨y) = x", grid(), |p| {
        same(p, &or(&x, &and(&x, &y)), &x) && same(p, &and(&x, &or(&x, &y)), &x)
    }));
    report.push(check_all(
        "x·(y∨z) = x·y ∨ x·z, x″ = x",
        grid(),
        |p| {
            same(p, &and(&x, &or(&y, &z)), &or(&and(&x, &y), &and(&x, &z)))
                && same(p, &not(&not(&x)), &x)
        },
    ));
    report.push(check_all(
        "‖y⇒x‖ = MAX(1−‖y‖, ‖x‖), (y⇒x)′ = x′·y",
        grid(),
        |p| {
            same(p, &imp(&y, &x), &or(&not(&y), &x))
                && same(p, &not(&imp(&y, &x)), &and(&not(&x), &y))
        },
    ));
    report.push(check_all(
        "chaining: (z ⇒ (x·y ∨ y·y′)) = (z⇒y)·(y·z⇒x)",
        grid(),
        |p| {
            let lhs = imp(&z, &or(&and(&x, &y), &and(&y, &not(&y))));
            let rhs = and(&imp(&z, &y), &imp(&and(&y, &z), &x));
            same(p, &lhs, &rhs)
        },
    ));
    report.push(crate::algebra::rejected_form(check_all(
        "candidate: (y⇒x) = (y⇒x·y) at the value level",
        grid(),
        |p| same(p, &imp(&y, &x), &imp(&y, &and(&x, &y))),
    )));
    let middle = or(&x, &not(&x));
    let broken =
        grade_grid::<S>().find(|p| p.fl_eval(&middle).is_ok_and(|v| !v.approx_eq(&S::one())));
    report.push(CheckResult::single(
        "excluded middle fails: ‖x∨x′‖ < 1 for some grade",
        broken.is_some(),
        || "x∨x′ evaluated to 1 everywhere".into(),
    ));
    report
}

fn leaf(var: &str) -> Formula {
    Formula::leaf(var, &["t"])
}

/// Measure-free independence by sampling: `(a|b)` with `b`, and the
/// factors of a chain, are independent under every sampled measure; some
/// generic pair is not.
pub fn independence_check(space: &AtomSpace, sweep: &Sweep) -> Report {
    let mut report = Report::new(format!(
        "measure-free independence, {} atoms",
        space.atom_count()
    ));
    let seed = sweep.seed;
    let independent = |a: &ConditionalObject, b: &ConditionalObject| {
        mf_independent_sample(a, b, INDEPENDENCE_MEASURES, seed).map_or_else(
            |e| Some(e.to_string()),
            |s| (!s.independent).then(|| format!("{a:?}, {b:?}: violation {}", s.max_violation)),
        )
    };
    report.push(check_detail(
        "(a|b) and b are independent under every sampled measure",
        sweep.events::<2>(space).filter(|[_, b]| !b.is_empty()),
        |[a, b]| {
            independent(
                &ConditionalObject::new(a, b).expect("shared space"),
                &ConditionalObject::embed(b),
            )
        },
    ));
    report.push(check_detail(
        "chain factors (a₁|a₂), (a₂|a₃) for a₁ ≤ a₂ ≤ a₃ are independent under every sampled measure",
        sweep
            .events::<3>(space)
            .filter(|[a1, a2, a3]| a1.leq(a2) && a2.leq(a3) && !a2.is_empty()),
        |[a1, a2, a3]| {
            independent(
                &ConditionalObject::new(a1, a2).expect("shared space"),
                &ConditionalObject::new(a2, a3).expect("shared space"),
            )
        },
    ));
    if space.atom_count() < 2 {
        report.push(CheckResult::note(
            "dependent pairs",
            "none: on one atom every measure is a point mass",
        ));
        return report;
    }
    let dependent = sweep.conditionals::<2>(space).iter.find(|[a, b]| {
        mf_independent_sample(a, b, INDEPENDENCE_MEASURES, seed)
            .is_ok_and(|s| s.undefined == 0 && !s.independent)
    });
    report.push(CheckResult::single(
        "some pair of conditionals is not measure-free independent",
        dependent.is_some(),
        || "every pair looked independent".into(),
    ));
    if let Some([a, b]) = dependent {
        report.push(CheckResult::note("dependent pair", format!("{a}, {b}")));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn suites_pass_on_two_atoms() {
        let space = AtomSpace::new(2).unwrap();
        let sweep = Sweep::default();
        for report in [
            classical_check(&space, &sweep),
            probability_check::<f64>(&space, &sweep, "f64"),
            probability_check::<BigRational>(&space, &sweep, "exact"),
            independence_check(&space, &sweep),
        ] {
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn fuzzy_suite_flags_the_rejected_form() {
        let report = fuzzy_check::<f64>("f64");
        assert!(report.passed(), "{report}");
        assert_eq!(report.notes().count(), 1);
    }
}
