//! Iterated conditionals `((a|b)|(c|d))`, taken literally as the set of all
//! `(x|y)` with `(x|y)·(c|d) = (a|b)·(c|d)`, and the reduction `ū` that maps
//! such a set back to a single conditional by uniting the member cosets.
//!
//! Member sets come from a full scan of the `3ⁿ` canonical conditionals, so
//! everything here is limited to [`MAX_ITERATED_ATOMS`] atoms.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;

use crate::algebra::{AtomSpace, Event};
use crate::conditional::ConditionalObject;
use crate::coset::{expand, recognize, Coset};
use crate::error::AlgebraError;
use crate::report::{check_detail, fallible, CheckResult, Report, Sweep, Tuples};

/// Largest space whose iterated conditionals are computed by scanning.
pub const MAX_ITERATED_ATOMS: usize = 4;

/// Pair counts up to this bound are swept exhaustively by the binary
/// homomorphism checks; larger ones are sampled.
const PAIR_SWEEP_CAP: usize = 1 << 16;

/// `((a|b)|(c|d))` with its numerator normalized to `(a|b)·(c|d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IteratedConditional {
    numerator: ConditionalObject,
    denominator: ConditionalObject,
    beta: Event,
    members: BTreeSet<ConditionalObject>,
}

impl IteratedConditional {
    /// Builds `((a|b)|(c|d))` by scanning every canonical conditional.
    pub fn new(
        numerator: &ConditionalObject,
        denominator: &ConditionalObject,
    ) -> Result<Self, AlgebraError> {
        let numerator = numerator.try_and(denominator)?;
        let width = numerator.width();
        if width > MAX_ITERATED_ATOMS {
            return Err(AlgebraError::TooLarge {
                atoms: width,
                limit: MAX_ITERATED_ATOMS,
            });
        }
        let space = AtomSpace::new(width)?;
        let members = ConditionalObject::enumerate(&space)
            .filter(|x| x.and(denominator) == numerator)
            .collect();
        let beta = beta(&numerator, denominator);
        Ok(IteratedConditional {
            numerator,
            denominator: denominator.clone(),
            beta,
            members,
        })
    }

    /// The normalized numerator `(a|b)`, which satisfies `(a|b) ≤ (c|d)`.
    pub fn numerator(&self) -> &ConditionalObject {
        &self.numerator
    }

    pub fn denominator(&self) -> &ConditionalObject {
        &self.denominator
    }

    /// `β = b′·d′ ∨ c′·d`.
    pub fn beta(&self) -> &Event {
        &self.beta
    }

    pub fn members(&self) -> &BTreeSet<ConditionalObject> {
        &self.members
    }

    /// The triple `(a, b, β)` that determines the member set.
    pub fn triple(&self) -> (&Event, &Event, &Event) {
        (
            self.numerator.consequent(),
            self.numerator.antecedent(),
            &self.beta,
        )
    }

    /// `ū` by its definition: the union of the member cosets, recognized as
    /// a single conditional.
    pub fn reduce_literal(&self) -> Result<ConditionalObject, AlgebraError> {
        reduce_set(&self.members)
    }

    /// `ū` in closed form: `(a | b·(c′·d)′)`.
    pub fn reduce_closed(&self) -> ConditionalObject {
        let (c, d) = (self.denominator.consequent(), self.denominator.antecedent());
        let refuted = &!c & d;
        let b = self.numerator.antecedent();
        ConditionalObject::new(self.numerator.consequent(), &(b & &!&refuted))
            .expect("numerator and denominator share a space")
    }

    /// `ū` with antecedent `α = b·(c·d ∨ a′·d′)`.
    pub fn reduce_alpha(&self) -> ConditionalObject {
        let (a, b) = (self.numerator.consequent(), self.numerator.antecedent());
        let (c, d) = (self.denominator.consequent(), self.denominator.antecedent());
        let alpha = b & &((c & d) | (&!a & &!d));
        ConditionalObject::new(a, &alpha).expect("numerator and denominator share a space")
    }

    /// `ū`, computed literally and required to agree with the closed form.
    pub fn reduce_u(&self) -> Result<ConditionalObject, AlgebraError> {
        let literal = self.reduce_literal()?;
        let closed = self.reduce_closed();
        if literal == closed {
            Ok(literal)
        } else {
            Err(AlgebraError::ReductionMismatch {
                literal: literal.to_string(),
                closed: closed.to_string(),
            })
        }
    }
}

/// `β = b′·d′ ∨ c′·d` for a normalized numerator `(a|b)` over `(c|d)`.
fn beta(numerator: &ConditionalObject, denominator: &ConditionalObject) -> Event {
    let b = numerator.antecedent();
    let (c, d) = (denominator.consequent(), denominator.antecedent());
    (&!b & &!d) | (&!c & d)
}

/// Equality of iterated conditionals through their `(a, b, β)` triples.
pub fn iter_equal(x: &IteratedConditional, y: &IteratedConditional) -> bool {
    x.triple() == y.triple()
}

/// `ū` of an arbitrary set of conditionals: unite the cosets and recognize
/// the union. Fails when the union is not a coset.
pub fn reduce_set(set: &BTreeSet<ConditionalObject>) -> Result<ConditionalObject, AlgebraError> {
    let mut members = set.iter();
    let first = members.next().ok_or(AlgebraError::NoOperands)?;
    let mut union: Coset = expand(first)?;
    for member in members {
        union = union.union(&expand(member)?);
    }
    recognize(&union).ok_or(AlgebraError::NotACoset)
}

/// `{P op Q : P ∈ left, Q ∈ right}`.
pub fn class_op(
    op: impl Fn(&ConditionalObject, &ConditionalObject) -> ConditionalObject,
    left: &BTreeSet<ConditionalObject>,
    right: &BTreeSet<ConditionalObject>,
) -> BTreeSet<ConditionalObject> {
    left.iter()
        .flat_map(|p| right.iter().map(|q| op(p, q)).collect::<Vec<_>>())
        .collect()
}

fn check_space(space: &AtomSpace) -> Result<(), AlgebraError> {
    if space.atom_count() > MAX_ITERATED_ATOMS {
        Err(AlgebraError::TooLarge {
            atoms: space.atom_count(),
            limit: MAX_ITERATED_ATOMS,
        })
    } else {
        Ok(())
    }
}

/// Defining property, the `ū` closed forms and special cases, and the
/// criterion for equality of iterated conditionals.
pub fn higher_order_check(space: &AtomSpace, sweep: &Sweep) -> Result<Report, AlgebraError> {
    check_space(space)?;
    let mut report = Report::new(format!(
        "iterated conditionals, {} atoms",
        space.atom_count()
    ));
    let all: Vec<(ConditionalObject, ConditionalObject, IteratedConditional)> = sweep
        .conditionals::<2>(space)
        .iter
        .map(|[a, c]| IteratedConditional::new(&a, &c).map(|it| (a, c, it)))
        .collect::<Result<_, _>>()?;
    let every = || Tuples::exhaustive(all.iter());

    report.push(check_detail(
        "members X satisfy X·(c|d) = (a|b)·(c|d) and include the normalized numerator",
        every(),
        |(a, c, it)| {
            let target = a.and(c);
            let normalized = it.numerator().leq(c) && *it.numerator() == target;
            let defining = it.members().iter().all(|x| x.and(c) == target);
            let contains = it.members().contains(it.numerator());
            (!(normalized && defining && contains)).then(|| format!("({a:?}|{c:?})"))
        },
    ));
    report.push(check_detail(
        "ū((a|b)|(c|d)) as a literal union equals (a | b·(c′·d)′)",
        every(),
        |(a, c, it)| {
            fallible(it.reduce_literal().map(|lit| {
                let closed = it.reduce_closed();
                (lit != closed).then(|| format!("({a:?}|{c:?}): union {lit:?}, closed {closed:?}"))
            }))
        },
    ));
    report.push(check_detail(
        "ū((a|b)|(c|d)) as a literal union equals (a | b·(c·d ∨ a′·d′))",
        every(),
        |(a, c, it)| {
            fallible(it.reduce_literal().map(|lit| {
                let alpha = it.reduce_alpha();
                (lit != alpha).then(|| format!("({a:?}|{c:?}): union {lit:?}, alpha {alpha:?}"))
            }))
        },
    ));
    report.push(check_detail(
        "(c|d)·ū((a|b)|(c|d)) = (a|b)",
        every(),
        |(a, c, it)| {
            fallible(
                it.reduce_literal()
                    .map(|u| (c.and(&u) != *it.numerator()).then(|| format!("({a:?}|{c:?})"))),
            )
        },
    ));

    let one = ConditionalObject::embed(&space.full());
    report.push(check_detail(
        "((a|b)|1) = {(a|b)} and ū(a|b) = (a|b)",
        sweep.conditionals::<1>(space),
        |[a]| {
            fallible(IteratedConditional::new(a, &one).and_then(|it| {
                let single = it.members().len() == 1 && it.members().contains(a);
                Ok((!single || it.reduce_literal()? != *a).then(|| format!("{a:?}")))
            }))
        },
    ));
    report.push(check_detail(
        "ū((a|b)|(c|b)) = ū((a|b)|c) = (a|b·c)",
        sweep.events::<3>(space),
        |[a, b, c]| {
            fallible((|| {
                let ab = ConditionalObject::new(a, b)?;
                let over_cb = IteratedConditional::new(&ab, &ConditionalObject::new(c, b)?)?;
                let over_c = IteratedConditional::new(&ab, &ConditionalObject::embed(c))?;
                let want = ConditionalObject::new(a, &(b & c))?;
                let ok = over_cb.reduce_literal()? == want && over_c.reduce_literal()? == want;
                Ok::<_, AlgebraError>((!ok).then(|| format!("a={a:?} b={b:?} c={c:?}")))
            })())
        },
    ));
    report.push(check_detail(
        "ū(a|(c|d)) = (a|(c′·d)′) for a ≤ c·d",
        Tuples::exhaustive(
            sweep
                .events::<1>(space)
                .iter
                .flat_map(|[a]| ConditionalObject::enumerate(space).map(move |cd| (a.clone(), cd)))
                .filter(|(a, cd)| a.leq(cd.consequent())),
        ),
        |(a, cd)| {
            fallible((|| {
                let it = IteratedConditional::new(&ConditionalObject::embed(a), cd)?;
                let refuted = &!cd.consequent() & cd.antecedent();
                let want = ConditionalObject::new(a, &!&refuted)?;
                Ok::<_, AlgebraError>(
                    (it.reduce_literal()? != want).then(|| format!("a={a:?} (c|d)={cd:?}")),
                )
            })())
        },
    ));
    report.push(triple_criterion(&all));
    Ok(report)
}

/// Equal `(a, b, β)` triples exactly when the member sets are equal, over
/// every pair of the given iterated conditionals. Grouping by triple makes
/// the all-pairs comparison linear.
fn triple_criterion(
    all: &[(ConditionalObject, ConditionalObject, IteratedConditional)],
) -> CheckResult {
    let name = "(a, b, β) equality ⇔ member-set equality";
    let mut by_triple: BTreeMap<(Event, Event, Event), &IteratedConditional> = BTreeMap::new();
    let mut by_members: BTreeMap<&BTreeSet<ConditionalObject>, &IteratedConditional> =
        BTreeMap::new();
    let cases = (all.len() as u64).pow(2);
    let fail = |witness: String| CheckResult {
        name: name.into(),
        cases,
        exhaustive: true,
        outcome: crate::report::Outcome::Fail { witness },
    };
    for (_, _, it) in all {
        let (a, b, beta) = it.triple();
        let key = (a.clone(), b.clone(), beta.clone());
        if let Some(seen) = by_triple.get(&key) {
            if seen.members() != it.members() {
                return fail(format!(
                    "same triple, different members: {:?} over {:?} vs {:?} over {:?}",
                    seen.numerator(),
                    seen.denominator(),
                    it.numerator(),
                    it.denominator()
                ));
            }
        } else {
            by_triple.insert(key, it);
        }
        if let Some(seen) = by_members.get(it.members()) {
            if !iter_equal(seen, it) {
                return fail(format!(
                    "same members, different triples: {:?} over {:?} vs {:?} over {:?}",
                    seen.numerator(),
                    seen.denominator(),
                    it.numerator(),
                    it.denominator()
                ));
            }
        } else {
            by_members.insert(it.members(), it);
        }
    }
    CheckResult {
        name: name.into(),
        cases,
        exhaustive: true,
        outcome: crate::report::Outcome::Pass,
    }
}

/// `ū` as a homomorphism under natural class extension of `∨`, `·`, `′` to
/// iterated conditionals, and the bijective restrictions of `ū`.
pub fn u_homomorphism_check(space: &AtomSpace, sweep: &Sweep) -> Result<Report, AlgebraError> {
    check_space(space)?;
    let mut report = Report::new(format!("class reduction ū, {} atoms", space.atom_count()));

    let mut distinct: BTreeMap<BTreeSet<ConditionalObject>, ConditionalObject> = BTreeMap::new();
    for [a, c] in sweep.conditionals::<2>(space).iter {
        let it = IteratedConditional::new(&a, &c)?;
        let u = it.reduce_literal()?;
        distinct.entry(it.members).or_insert(u);
    }
    let distinct: Vec<(BTreeSet<ConditionalObject>, ConditionalObject)> =
        distinct.into_iter().collect();

    report.push(check_detail(
        "ū(X′) = ū(X)′",
        Tuples::exhaustive(distinct.iter()),
        |(x, u)| {
            let image: BTreeSet<_> = x.iter().map(ConditionalObject::complement).collect();
            fallible(
                reduce_set(&image).map(|got| (got != u.complement()).then(|| format!("X={x:?}"))),
            )
        },
    ));

    let pairs = distinct_pairs(distinct.len(), sweep);
    type BinaryOp = fn(&ConditionalObject, &ConditionalObject) -> ConditionalObject;
    let ops: [(&str, BinaryOp); 2] = [
        ("ū(X ∨ Y) = ū(X) ∨ ū(Y)", ConditionalObject::or),
        ("ū(X·Y) = ū(X)·ū(Y)", ConditionalObject::and),
    ];
    for (name, op) in ops {
        let sweep_pairs = Tuples {
            iter: pairs.iter.clone().into_iter(),
            exhaustive: pairs.exhaustive,
        };
        report.push(check_detail(name, sweep_pairs, |&(i, j)| {
            let (x, ux) = &distinct[i];
            let (y, uy) = &distinct[j];
            fallible(
                reduce_set(&class_op(op, x, y))
                    .map(|got| (got != op(ux, uy)).then(|| format!("X={x:?} Y={y:?}"))),
            )
        }));
    }

    report.push(restriction_check(
        "ū restricted to {(a|b)|c} is a bijection onto {(a|b·c)}",
        space,
        |events| {
            let mut groups = Vec::new();
            for c in events {
                let domain = ConditionalObject::enumerate(space)
                    .map(|ab| (ab, ConditionalObject::embed(c)))
                    .collect::<Vec<_>>();
                let image =
                    product_image(events, events, |a, b| ConditionalObject::new(a, &(b & c)));
                groups.push((format!("c={c:?}"), domain, image));
            }
            groups
        },
    ));
    report.push(restriction_check(
        "ū restricted to {(a|b)|(c|b)} is a bijection onto {(a|b·c)}",
        space,
        |events| {
            let mut groups = Vec::new();
            for b in events {
                let mut domain = Vec::new();
                for a in events {
                    for c in events {
                        domain.push((
                            ConditionalObject::new(a, b).expect("shared space"),
                            ConditionalObject::new(c, b).expect("shared space"),
                        ));
                    }
                }
                let image =
                    product_image(events, events, |a, c| ConditionalObject::new(a, &(b & c)));
                groups.push((format!("b={b:?}"), domain, image));
            }
            groups
        },
    ));
    report.push(restriction_check(
        "ū restricted to {(a|b)|(c|d) : (a|b) ≤ (c|d)} is a bijection onto {(a|b·(c′·d)′)}",
        space,
        |_| {
            let mut groups = Vec::new();
            for cd in ConditionalObject::enumerate(space) {
                let below: Vec<ConditionalObject> = ConditionalObject::enumerate(space)
                    .filter(|ab| ab.leq(&cd))
                    .collect();
                let keep = !&(&!cd.consequent() & cd.antecedent());
                let image = below
                    .iter()
                    .map(|ab| ConditionalObject::new(ab.consequent(), &(ab.antecedent() & &keep)))
                    .collect::<Result<BTreeSet<_>, _>>();
                let domain = below.into_iter().map(|ab| (ab, cd.clone())).collect();
                groups.push((format!("(c|d)={cd:?}"), domain, image));
            }
            groups
        },
    ));
    Ok(report)
}

/// Index pairs into a list of `n` items: all of them when there are at
/// most [`PAIR_SWEEP_CAP`], else `samples` seeded draws.
fn distinct_pairs(n: usize, sweep: &Sweep) -> Tuples<Vec<(usize, usize)>> {
    if n * n <= PAIR_SWEEP_CAP {
        Tuples {
            iter: (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect(),
            exhaustive: true,
        }
    } else {
        let mut rng = sweep.rng();
        Tuples {
            iter: (0..sweep.samples)
                .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
                .collect(),
            exhaustive: false,
        }
    }
}

fn product_image(
    left: &[Event],
    right: &[Event],
    f: impl Fn(&Event, &Event) -> Result<ConditionalObject, AlgebraError>,
) -> Result<BTreeSet<ConditionalObject>, AlgebraError> {
    let mut image = BTreeSet::new();
    for x in left {
        for y in right {
            image.insert(f(x, y)?);
        }
    }
    Ok(image)
}

type RestrictionGroup = (
    String,
    Vec<(ConditionalObject, ConditionalObject)>,
    Result<BTreeSet<ConditionalObject>, AlgebraError>,
);

/// For each group, `ū` must send distinct iterated conditionals of the
/// domain to distinct conditionals and cover the expected image exactly.
fn restriction_check(
    name: &str,
    space: &AtomSpace,
    groups: impl FnOnce(&[Event]) -> Vec<RestrictionGroup>,
) -> CheckResult {
    let events: Vec<Event> = match space.events() {
        Ok(events) => events.collect(),
        Err(e) => return CheckResult::single(name, false, || format!("error: {e}")),
    };
    let groups = groups(&events);
    check_detail(
        name,
        Tuples::exhaustive(groups.iter()),
        |(label, domain, image)| {
            fallible((|| {
                let image = image.clone()?;
                let mut reduced: BTreeMap<BTreeSet<ConditionalObject>, ConditionalObject> =
                    BTreeMap::new();
                for (ab, cd) in domain {
                    let it = IteratedConditional::new(ab, cd)?;
                    if !reduced.contains_key(it.members()) {
                        let u = it.reduce_literal()?;
                        reduced.insert(it.members, u);
                    }
                }
                let got: BTreeSet<ConditionalObject> = reduced.values().cloned().collect();
                let injective = got.len() == reduced.len();
                Ok::<_, AlgebraError>((!injective || got != image).then(|| {
                    format!(
                        "{label}: {} classes, {} distinct images, {} expected",
                        reduced.len(),
                        got.len(),
                        image.len()
                    )
                }))
            })())
        },
    )
}

/// Whether some pair with equal `(a, b)` but different `β` exists, with
/// the witness pair of denominators.
pub fn beta_witness(
    space: &AtomSpace,
) -> Result<Option<(IteratedConditional, IteratedConditional)>, AlgebraError> {
    check_space(space)?;
    let mut by_ab: BTreeMap<ConditionalObject, IteratedConditional> = BTreeMap::new();
    for a in ConditionalObject::enumerate(space) {
        for c in ConditionalObject::enumerate(space) {
            let it = IteratedConditional::new(&a, &c)?;
            match by_ab.get(it.numerator()) {
                Some(seen) if seen.beta() != it.beta() => {
                    return Ok(Some((seen.clone(), it)));
                }
                Some(_) => {}
                None => {
                    by_ab.insert(it.numerator().clone(), it);
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space3() -> AtomSpace {
        AtomSpace::with_labels(["1", "2", "3"]).unwrap()
    }

    fn co(space: &AtomSpace, a: &[&str], b: &[&str]) -> ConditionalObject {
        ConditionalObject::new(
            &space.event_from_labels(a.iter().copied()).unwrap(),
            &space.event_from_labels(b.iter().copied()).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn worked_example_member_set() {
        let s = space3();
        let it =
            IteratedConditional::new(&co(&s, &["1"], &["1", "2"]), &co(&s, &["2"], &["2", "3"]))
                .unwrap();
        assert_eq!(*it.numerator(), co(&s, &[], &["2", "3"]));
        let want: BTreeSet<_> = [
            co(&s, &["1", "3"], &["1", "2", "3"]),
            co(&s, &["1"], &["1", "2", "3"]),
            co(&s, &["1"], &["1", "2"]),
            co(&s, &["3"], &["2", "3"]),
            co(&s, &[], &["2", "3"]),
            co(&s, &[], &["2"]),
        ]
        .into_iter()
        .collect();
        assert_eq!(*it.members(), want);
    }

    #[test]
    fn conditioning_on_unity_is_a_singleton() {
        let s = space3();
        let a = co(&s, &["1"], &["1", "2"]);
        let it = IteratedConditional::new(&a, &ConditionalObject::embed(&s.full())).unwrap();
        assert_eq!(it.members().len(), 1);
        assert_eq!(it.reduce_u().unwrap(), a);
    }

    #[test]
    fn reduction_of_the_worked_example_normalizes_first() {
        // Normalizing replaces ({1}|{1,2}) by the product with ({2}|{2,3}),
        // which is (∅|{2,3}); the reduction then drops atom 3.
        let s = space3();
        let it =
            IteratedConditional::new(&co(&s, &["1"], &["1", "2"]), &co(&s, &["2"], &["2", "3"]))
                .unwrap();
        assert_eq!(it.reduce_u().unwrap(), co(&s, &[], &["2"]));
        assert_eq!(it.reduce_alpha(), co(&s, &[], &["2"]));
    }

    #[test]
    fn already_normalized_reduction() {
        // (a|b) = ({1}|{1,2}) lies below (c|d) = ({1,2}|{1,2}), so no
        // normalization happens and ū = (a | b·(c′·d)′) = ({1}|{1,2}).
        let s = space3();
        let a = co(&s, &["1"], &["1", "2"]);
        let c = co(&s, &["1", "2"], &["1", "2"]);
        let it = IteratedConditional::new(&a, &c).unwrap();
        assert_eq!(*it.numerator(), a);
        assert_eq!(it.reduce_u().unwrap(), a);
    }

    #[test]
    fn equal_numerators_with_different_beta_differ() {
        let s = space3();
        let (x, y) = beta_witness(&s)
            .unwrap()
            .expect("a witness exists on three atoms");
        assert_eq!(x.numerator(), y.numerator());
        assert!(!iter_equal(&x, &y));
        assert_ne!(x.members(), y.members());
    }

    #[test]
    fn refuses_large_spaces() {
        let s = AtomSpace::new(5).unwrap();
        let one = ConditionalObject::embed(&s.full());
        assert!(matches!(
            IteratedConditional::new(&one, &one),
            Err(AlgebraError::TooLarge { .. })
        ));
    }

    #[test]
    fn suites_pass_on_two_atoms() {
        let s = AtomSpace::new(2).unwrap();
        let sweep = Sweep::default();
        let report = higher_order_check(&s, &sweep).unwrap();
        assert!(report.passed(), "{report}");
        let report = u_homomorphism_check(&s, &sweep).unwrap();
        assert!(report.passed(), "{report}");
        assert!(report.checks.iter().all(|c| c.exhaustive));
    }
}
