//! Literal cosets: the ground truth the compact calculus is checked against.
//!
//! A [`Coset`] is an explicit set of events. [`expand`] turns `(a|b)` into
//! `{x·b′ + a·b : x ∈ Ω}`, the `classwise` functions apply an event operation
//! across all members, and [`recognize`] maps a set of events back to the
//! conditional whose coset it is, if any.

use std::collections::BTreeSet;

use crate::algebra::{AtomSpace, Event};
use crate::conditional::ConditionalObject;
use crate::error::AlgebraError;
use crate::report::{check_all, check_detail, fallible, Report, Sweep, Tuples};

/// Default bound on the atom count for literal expansion (`2ⁿ` members).
pub const DEFAULT_EXPANSION_LIMIT: usize = 12;

/// An explicit, nonempty set of events.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coset {
    width: usize,
    elements: BTreeSet<Event>,
}

impl Coset {
    pub fn from_events<I: IntoIterator<Item = Event>>(
        width: usize,
        events: I,
    ) -> Result<Self, AlgebraError> {
        let elements: BTreeSet<Event> = events.into_iter().collect();
        if let Some(bad) = elements.iter().find(|e| e.width() != width) {
            return Err(AlgebraError::SpaceMismatch {
                left: width,
                right: bad.width(),
            });
        }
        Ok(Coset { width, elements })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn elements(&self) -> &BTreeSet<Event> {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, e: &Event) -> bool {
        self.elements.contains(e)
    }

    /// The least member under `≤`, if one member lies below all others.
    pub fn minimum(&self) -> Option<&Event> {
        self.elements
            .iter()
            .find(|m| self.elements.iter().all(|x| m.leq(x)))
    }

    /// The greatest member under `≤`, if one member lies above all others.
    pub fn maximum(&self) -> Option<&Event> {
        self.elements
            .iter()
            .find(|m| self.elements.iter().all(|x| x.leq(m)))
    }

    pub fn is_subset(&self, other: &Coset) -> bool {
        self.elements.is_subset(&other.elements)
    }

    pub fn intersection(&self, other: &Coset) -> Coset {
        Coset {
            width: self.width,
            elements: self
                .elements
                .intersection(&other.elements)
                .cloned()
                .collect(),
        }
    }

    pub fn union(&self, other: &Coset) -> Coset {
        Coset {
            width: self.width,
            elements: self.elements.union(&other.elements).cloned().collect(),
        }
    }
}

/// `(a|b)` as the literal set `{x·b′ + a·b : x ∈ Ω}` under the default bound.
pub fn expand(cond: &ConditionalObject) -> Result<Coset, AlgebraError> {
    expand_bounded(cond, DEFAULT_EXPANSION_LIMIT)
}

/// `(a|b)` as a literal set. Refuses spaces of more than `limit` atoms.
pub fn expand_bounded(cond: &ConditionalObject, limit: usize) -> Result<Coset, AlgebraError> {
    let width = cond.width();
    if width > limit {
        return Err(AlgebraError::TooLarge {
            atoms: width,
            limit,
        });
    }
    let free = !cond.antecedent();
    let space = AtomSpace::new(width)?;
    let elements = space
        .events()?
        .map(|x| &(&x & &free) ^ cond.consequent())
        .collect();
    Ok(Coset { width, elements })
}

/// `{op(x, y) : x ∈ left, y ∈ right}`.
pub fn classwise(
    op: impl Fn(&Event, &Event) -> Event,
    left: &Coset,
    right: &Coset,
) -> Result<Coset, AlgebraError> {
    if left.width != right.width {
        return Err(AlgebraError::SpaceMismatch {
            left: left.width,
            right: right.width,
        });
    }
    let elements = left
        .elements
        .iter()
        .flat_map(|x| right.elements.iter().map(|y| op(x, y)).collect::<Vec<_>>())
        .collect();
    Ok(Coset {
        width: left.width,
        elements,
    })
}

/// `{op(x) : x ∈ set}`.
pub fn classwise_unary(op: impl Fn(&Event) -> Event, set: &Coset) -> Coset {
    Coset {
        width: set.width,
        elements: set.elements.iter().map(op).collect(),
    }
}

/// Recovers `(a·b|b)` from its literal coset.
///
/// Members of a coset of `Ω·b′` differ exactly on `b′`, so the candidate
/// `b′` is the join of all symmetric differences with one fixed member. The
/// candidate is then verified by size and membership.
pub fn recognize(set: &Coset) -> Option<ConditionalObject> {
    let base = set.elements.iter().next()?;
    let free = set
        .elements
        .iter()
        .fold(Event::empty(set.width), |acc, x| acc | (x ^ base));
    let antecedent = !&free;
    let candidate = ConditionalObject::new(base, &antecedent).ok()?;
    let expected_size = 1u128.checked_shl(free.len() as u32)?;
    let sized = set.elements.len() as u128 == expected_size;
    (sized && set.elements.iter().all(|x| candidate.contains(x))).then_some(candidate)
}

/// Literal intersection of two cosets together with the closed-form
/// prediction: nonempty iff `(a+c)·b·d = 0`, and then a coset with
/// antecedent `b ∨ d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassIntersection {
    pub literal: Coset,
    pub predicted_nonempty: bool,
    /// The literal intersection recognized as a conditional, when nonempty.
    pub recognized: Option<ConditionalObject>,
}

impl ClassIntersection {
    /// True when the literal result matches the prediction in emptiness and,
    /// if nonempty, in being a coset with antecedent `b ∨ d`.
    pub fn agrees(&self, left: &ConditionalObject, right: &ConditionalObject) -> bool {
        if self.literal.is_empty() {
            return !self.predicted_nonempty;
        }
        let join = left.antecedent() | right.antecedent();
        self.predicted_nonempty
            && self
                .recognized
                .as_ref()
                .is_some_and(|r| *r.antecedent() == join)
    }
}

pub fn class_intersect(
    left: &ConditionalObject,
    right: &ConditionalObject,
) -> Result<ClassIntersection, AlgebraError> {
    let literal = expand(left)?.intersection(&expand(right)?);
    let both = left.antecedent().try_meet(right.antecedent())?;
    let predicted_nonempty = ((left.consequent() ^ right.consequent()) & &both).is_empty();
    let recognized = recognize(&literal);
    Ok(ClassIntersection {
        literal,
        predicted_nonempty,
        recognized,
    })
}

/// `(a|b) ⊆ (c|d)` by the closed-form criterion `d ≤ b` and `a ∈ (c|d)`.
pub fn subset_criterion(left: &ConditionalObject, right: &ConditionalObject) -> bool {
    right.antecedent().leq(left.antecedent()) && right.contains(left.consequent())
}

/// Compares every compact operation against its classwise counterpart on
/// expanded cosets.
pub fn oracle_equivalence_check(space: &AtomSpace, sweep: &Sweep) -> Report {
    let mut report = Report::new(format!(
        "compact calculus vs literal cosets, {} atoms",
        space.atom_count()
    ));
    let unary = |name: &str,
                 compact: fn(&ConditionalObject) -> ConditionalObject,
                 op: fn(&Event) -> Event| {
        check_detail(name, sweep.conditionals::<1>(space), move |[a]| {
            fallible((|| {
                let lit = classwise_unary(op, &expand(a)?);
                let exp = expand(&compact(a))?;
                Ok::<_, AlgebraError>((lit != exp).then(|| {
                    format!(
                        "{a:?}: literal {:?} vs compact {:?}",
                        lit.elements, exp.elements
                    )
                }))
            })())
        })
    };
    report.push(unary(
        "(a|b)′ classwise",
        |a| a.complement(),
        |x| x.complement(),
    ));

    type Binary = fn(&ConditionalObject, &ConditionalObject) -> ConditionalObject;
    type EventBinary = fn(&Event, &Event) -> Event;
    let cases: [(&str, Binary, EventBinary); 3] = [
        ("(a|b)+(c|d) classwise", |a, c| a.sum(c), |x, y| x ^ y),
        ("(a|b)∨(c|d) classwise", |a, c| a.or(c), |x, y| x | y),
        ("(a|b)·(c|d) classwise", |a, c| a.and(c), |x, y| x & y),
    ];
    for (name, compact, op) in cases {
        report.push(check_detail(
            name,
            sweep.conditionals::<2>(space),
            |[a, c]| {
                fallible((|| {
                    let lit = classwise(op, &expand(a)?, &expand(c)?)?;
                    let exp = expand(&compact(a, c))?;
                    Ok::<_, AlgebraError>((lit != exp).then(|| {
                        format!(
                            "{a:?}, {c:?}: literal {:?} vs compact {:?}",
                            lit.elements, exp.elements
                        )
                    }))
                })())
            },
        ));
    }

    report.push(check_all(
        "min/max of (a|b) = (a·b, b⇒a)",
        sweep.conditionals::<1>(space),
        |[a]| {
            let Ok(set) = expand(a) else { return false };
            let (lo, hi) = a.bounds();
            set.minimum() == Some(&lo) && set.maximum() == Some(&hi)
        },
    ));
    report.push(check_all(
        "|(a|b)| = 2^(n−|b|), recognize∘expand = id",
        sweep.conditionals::<1>(space),
        |[a]| {
            let Ok(set) = expand(a) else { return false };
            set.len() == 1 << (a.width() - a.antecedent().len())
                && recognize(&set).as_ref() == Some(a)
        },
    ));
    report.push(check_all(
        "expand is injective",
        sweep.conditionals::<2>(space),
        |[a, c]| (a == c) == (expand(a).ok() == expand(c).ok()),
    ));
    report
}

/// Literal class intersection and inclusion against their closed-form
/// criteria, over all 4-tuples `(a, b, c, d)`.
pub fn intersection_check(space: &AtomSpace, sweep: &Sweep) -> Report {
    let mut report = Report::new(format!(
        "coset intersection and inclusion, {} atoms",
        space.atom_count()
    ));
    let quads = || -> Tuples<_> {
        sweep.events::<4>(space).map(|[a, b, c, d]| {
            (
                ConditionalObject::new(&a, &b).expect("same space"),
                ConditionalObject::new(&c, &d).expect("same space"),
            )
        })
    };
    report.push(check_detail(
        "(a|b)∩(c|d) empty iff (a+c)·b·d ≠ 0, else antecedent b∨d",
        quads(),
        |(l, r)| {
            fallible(class_intersect(l, r).map(|inter| {
                (!inter.agrees(l, r))
                    .then(|| format!("{l:?} ∩ {r:?} = {:?}", inter.literal.elements))
            }))
        },
    ));
    report.push(check_all(
        "(a|b) ⊆ (c|d) iff d ≤ b and a ∈ (c|d)",
        quads(),
        |(l, r)| match (expand(l), expand(r)) {
            (Ok(x), Ok(y)) => x.is_subset(&y) == subset_criterion(l, r),
            _ => false,
        },
    ));
    report
}

/// Checks that the coset family behaves as the characterization demands:
/// same-antecedent operations act as the quotient map `x ↦ (x|b)`, every
/// coset is exactly the class forced by `(x|b) = (x·b|b)`, and for each `b`
/// the cosets partition `Ω`.
pub fn characterization_check(space: &AtomSpace) -> Result<Report, AlgebraError> {
    let mut report = Report::new(format!(
        "coset characterization, {} atoms",
        space.atom_count()
    ));
    let events: Vec<Event> = space.events()?.collect();
    let triples = || {
        let events = events.clone();
        Tuples::exhaustive(events.clone().into_iter().flat_map(move |a| {
            let events = events.clone();
            events.clone().into_iter().flat_map(move |c| {
                let a = a.clone();
                events
                    .clone()
                    .into_iter()
                    .map(move |b| (a.clone(), c.clone(), b))
            })
        }))
    };
    let homomorphism = |name: &str, ev: fn(&Event, &Event) -> Event| {
        check_detail(name, triples(), move |(a, c, b)| {
            fallible((|| {
                let x = expand(&ConditionalObject::new(a, b)?)?;
                let y = expand(&ConditionalObject::new(c, b)?)?;
                let lit = classwise(ev, &x, &y)?;
                let want = expand(&ConditionalObject::new(&ev(a, c), b)?)?;
                Ok::<_, AlgebraError>((lit != want).then(|| format!("a={a:?} c={c:?} b={b:?}")))
            })())
        })
    };
    report.push(homomorphism("(a|b)+(c|b) = (a+c|b) literally", |x, y| {
        x ^ y
    }));
    report.push(homomorphism(
        "(a|b)∨(c|b) = (a∨c|b) literally",
        |x, y| x | y,
    ));
    report.push(homomorphism("(a|b)·(c|b) = (a·c|b) literally", |x, y| {
        x & y
    }));

    let pairs = || {
        let events = events.clone();
        Tuples::exhaustive(
            events
                .clone()
                .into_iter()
                .flat_map(move |a| events.clone().into_iter().map(move |b| (a.clone(), b))),
        )
    };
    report.push(check_all(
        "(a|b)′ = (a′|b) literally",
        pairs(),
        |(a, b)| {
            let (Ok(x), Ok(y)) = (
                ConditionalObject::new(a, b).and_then(|c| expand(&c)),
                ConditionalObject::new(&!a, b).and_then(|c| expand(&c)),
            ) else {
                return false;
            };
            classwise_unary(Event::complement, &x) == y
        },
    ));
    report.push(check_all(
        "(a|b) = (a·b|b) literally",
        pairs(),
        |(a, b)| {
            let x = ConditionalObject::new(a, b).and_then(|c| expand(&c));
            let y = ConditionalObject::new(&(a & b), b).and_then(|c| expand(&c));
            x.is_ok() && x == y
        },
    ));
    // The smallest class containing a that is closed under identifying x
    // with any y agreeing with it on b.
    report.push(check_all(
        "(a|b) is the least class closed under x·b = y·b",
        pairs(),
        |(a, b)| {
            let mut class: BTreeSet<Event> = BTreeSet::from([a.clone()]);
            loop {
                let grown: BTreeSet<Event> = events
                    .iter()
                    .filter(|y| class.iter().any(|x| (x & b) == (*y & b)))
                    .cloned()
                    .collect();
                if grown == class {
                    break;
                }
                class = grown;
            }
            ConditionalObject::new(a, b)
                .and_then(|c| expand(&c))
                .is_ok_and(|set| set.elements == class)
        },
    ));
    report.push(check_all(
        "cosets of one antecedent partition Ω",
        Tuples::exhaustive(events.clone().into_iter()),
        |b| {
            let mut seen: BTreeSet<Event> = BTreeSet::new();
            let mut total = 0usize;
            for a in events.iter().filter(|a| a.leq(b)) {
                let Ok(set) = expand(&ConditionalObject::new(a, b).expect("same space")) else {
                    return false;
                };
                total += set.len();
                seen.extend(set.elements.iter().cloned());
            }
            total == events.len() && seen.len() == events.len()
        },
    ));
    report.push(check_all(
        "distinct canonical pairs give distinct cosets",
        Sweep::default().conditionals::<2>(space),
        |[x, y]| (x == y) == (expand(x).ok() == expand(y).ok()),
    ));
    Ok(report)
}
