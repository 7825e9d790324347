//! Finite Boolean algebras over an indexed atom set.
//!
//! An [`Event`] is a subset of the atoms of an [`AtomSpace`], stored as a
//! fixed-width bit vector. Viewed as a ring, `^` (symmetric difference) is
//! the sum and `&` is the product; viewed as a lattice, `|` is the join and
//! `!` the complement.
//!
//! The operator impls panic when the operands come from spaces of different
//! widths; the `try_*` methods report [`AlgebraError::SpaceMismatch`]
//! instead.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Not};

use rand::Rng;
use smallvec::SmallVec;

use crate::error::AlgebraError;
use crate::report::{check_all, CheckResult, Outcome, Report, Sweep};

const WORD: usize = 64;

/// Largest space whose events can be enumerated one by one.
pub const MAX_ENUMERABLE_ATOMS: usize = 24;

/// The atoms of a finite Boolean algebra, indexed `0..atom_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomSpace {
    labels: Vec<String>,
    by_label: HashMap<String, usize>,
}

impl AtomSpace {
    /// A space of `atom_count` atoms labelled `"0"`, `"1"`, ...
    pub fn new(atom_count: usize) -> Result<Self, AlgebraError> {
        Self::with_labels((0..atom_count).map(|i| i.to_string()))
    }

    pub fn with_labels<I, S>(labels: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(AlgebraError::EmptySpace);
        }
        let mut by_label = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if by_label.insert(label.clone(), i).is_some() {
                return Err(AlgebraError::DuplicateLabel(label.clone()));
            }
        }
        Ok(AtomSpace { labels, by_label })
    }

    pub fn atom_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> Option<&str> {
        self.labels.get(index).map(String::as_str)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.by_label.get(label).copied()
    }

    pub fn empty(&self) -> Event {
        Event::empty(self.atom_count())
    }

    pub fn full(&self) -> Event {
        Event::full(self.atom_count())
    }

    pub fn atom(&self, index: usize) -> Result<Event, AlgebraError> {
        Event::from_indices(self.atom_count(), [index])
    }

    pub fn event<I: IntoIterator<Item = usize>>(&self, indices: I) -> Result<Event, AlgebraError> {
        Event::from_indices(self.atom_count(), indices)
    }

    pub fn event_from_labels<'a, I>(&self, labels: I) -> Result<Event, AlgebraError>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let indices = labels
            .into_iter()
            .map(|l| {
                self.index_of(l)
                    .ok_or_else(|| AlgebraError::UnknownLabel(l.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.event(indices)
    }

    /// Every event of the space in ascending canonical order.
    pub fn events(&self) -> Result<impl Iterator<Item = Event>, AlgebraError> {
        let width = self.atom_count();
        if width > MAX_ENUMERABLE_ATOMS {
            return Err(AlgebraError::TooLarge {
                atoms: width,
                limit: MAX_ENUMERABLE_ATOMS,
            });
        }
        Ok((0..1u64 << width).map(move |mask| Event::from_mask(width, mask)))
    }

    /// Renders an event with atom labels, e.g. `{1,3}`.
    pub fn render(&self, event: &Event) -> String {
        let parts: Vec<&str> = event
            .indices()
            .map(|i| self.label(i).unwrap_or("?"))
            .collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// A subset of the atoms of a finite Boolean algebra.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Event {
    width: usize,
    words: SmallVec<[u64; 1]>,
}

fn words_for(width: usize) -> usize {
    width.div_ceil(WORD).max(1)
}

impl Event {
    /// The bottom element 0.
    pub fn empty(width: usize) -> Self {
        Event {
            width,
            words: SmallVec::from_elem(0, words_for(width)),
        }
    }

    /// The top element 1.
    pub fn full(width: usize) -> Self {
        let mut e = Event {
            width,
            words: SmallVec::from_elem(!0, words_for(width)),
        };
        e.trim();
        e
    }

    /// Builds an event from the low `width` bits of `mask`. `width` must be
    /// at most 64.
    pub fn from_mask(width: usize, mask: u64) -> Self {
        assert!(width <= WORD, "from_mask supports at most 64 atoms");
        let mut e = Event {
            width,
            words: SmallVec::from_elem(mask, 1),
        };
        e.trim();
        e
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(
        width: usize,
        indices: I,
    ) -> Result<Self, AlgebraError> {
        let mut e = Event::empty(width);
        for i in indices {
            if i >= width {
                return Err(AlgebraError::AtomOutOfRange {
                    index: i,
                    atoms: width,
                });
            }
            e.words[i / WORD] |= 1 << (i % WORD);
        }
        Ok(e)
    }

    /// A uniformly random event.
    pub fn random(width: usize, rng: &mut impl Rng) -> Self {
        let mut e = Event::empty(width);
        for w in e.words.iter_mut() {
            *w = rng.gen();
        }
        e.trim();
        e
    }

    fn trim(&mut self) {
        let rem = self.width % WORD;
        if rem != 0 {
            let last = self.words.len() - 1;
            self.words[last] &= (1u64 << rem) - 1;
        }
        if self.width == 0 {
            self.words[0] = 0;
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// The bit pattern of an event of at most 64 atoms.
    pub fn mask(&self) -> u64 {
        debug_assert!(self.width <= WORD);
        self.words[0]
    }

    pub fn contains(&self, atom: usize) -> bool {
        atom < self.width && self.words[atom / WORD] >> (atom % WORD) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.width
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let tz = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * WORD + tz)
            })
        })
    }

    fn zip_with(&self, other: &Event, f: impl Fn(u64, u64) -> u64) -> Result<Event, AlgebraError> {
        if self.width != other.width {
            return Err(AlgebraError::SpaceMismatch {
                left: self.width,
                right: other.width,
            });
        }
        let mut out = Event {
            width: self.width,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&x, &y)| f(x, y))
                .collect(),
        };
        out.trim();
        Ok(out)
    }

    fn expect_same(result: Result<Event, AlgebraError>) -> Event {
        result.unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn try_meet(&self, other: &Event) -> Result<Event, AlgebraError> {
        self.zip_with(other, |x, y| x & y)
    }

    pub fn try_join(&self, other: &Event) -> Result<Event, AlgebraError> {
        self.zip_with(other, |x, y| x | y)
    }

    pub fn try_symdiff(&self, other: &Event) -> Result<Event, AlgebraError> {
        self.zip_with(other, |x, y| x ^ y)
    }

    /// Material implication `self ⇒ consequent`, i.e. `self′ ∨ consequent`.
    pub fn try_implies(&self, consequent: &Event) -> Result<Event, AlgebraError> {
        self.zip_with(consequent, |b, a| !b | a)
    }

    /// `self ≤ other`, i.e. `self = self·other`.
    pub fn try_leq(&self, other: &Event) -> Result<bool, AlgebraError> {
        Ok(self.zip_with(other, |x, y| x & !y)?.is_empty())
    }

    pub fn meet(&self, other: &Event) -> Event {
        Self::expect_same(self.try_meet(other))
    }

    pub fn join(&self, other: &Event) -> Event {
        Self::expect_same(self.try_join(other))
    }

    pub fn symdiff(&self, other: &Event) -> Event {
        Self::expect_same(self.try_symdiff(other))
    }

    pub fn complement(&self) -> Event {
        let mut out = Event {
            width: self.width,
            words: self.words.iter().map(|w| !w).collect(),
        };
        out.trim();
        out
    }

    pub fn implies(&self, consequent: &Event) -> Event {
        Self::expect_same(self.try_implies(consequent))
    }

    pub fn leq(&self, other: &Event) -> bool {
        self.try_leq(other).unwrap_or_else(|e| panic!("{e}"))
    }

    /// Meet of a nonempty list.
    pub fn meet_all<'a, I: IntoIterator<Item = &'a Event>>(
        events: I,
    ) -> Result<Event, AlgebraError> {
        Self::fold_all(events, Event::try_meet)
    }

    /// Join of a nonempty list.
    pub fn join_all<'a, I: IntoIterator<Item = &'a Event>>(
        events: I,
    ) -> Result<Event, AlgebraError> {
        Self::fold_all(events, Event::try_join)
    }

    /// Ring sum of a nonempty list.
    pub fn sum_all<'a, I: IntoIterator<Item = &'a Event>>(
        events: I,
    ) -> Result<Event, AlgebraError> {
        Self::fold_all(events, Event::try_symdiff)
    }

    fn fold_all<'a, I: IntoIterator<Item = &'a Event>>(
        events: I,
        op: fn(&Event, &Event) -> Result<Event, AlgebraError>,
    ) -> Result<Event, AlgebraError> {
        let mut iter = events.into_iter();
        let first = iter.next().ok_or(AlgebraError::NoOperands)?.clone();
        iter.try_fold(first, |acc, e| op(&acc, e))
    }
}

impl Ord for Event {
    /// Orders by width, then numerically by the bit pattern read as an
    /// unsigned integer.
    fn cmp(&self, other: &Self) -> Ordering {
        self.width
            .cmp(&other.width)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for Event {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, i) in self.indices().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! event_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl $trait<&Event> for &Event {
            type Output = Event;
            fn $method(self, rhs: &Event) -> Event {
                self.$inner(rhs)
            }
        }
        impl $trait<Event> for Event {
            type Output = Event;
            fn $method(self, rhs: Event) -> Event {
                self.$inner(&rhs)
            }
        }
        impl $trait<&Event> for Event {
            type Output = Event;
            fn $method(self, rhs: &Event) -> Event {
                self.$inner(rhs)
            }
        }
        impl $trait<Event> for &Event {
            type Output = Event;
            fn $method(self, rhs: Event) -> Event {
                self.$inner(&rhs)
            }
        }
    };
}

event_binop!(BitAnd, bitand, meet);
event_binop!(BitOr, bitor, join);
event_binop!(BitXor, bitxor, symdiff);

impl Not for &Event {
    type Output = Event;
    fn not(self) -> Event {
        self.complement()
    }
}

impl Not for Event {
    type Output = Event;
    fn not(self) -> Event {
        self.complement()
    }
}

/// Ring and lattice laws of the event algebra.
pub fn algebra_law_check(space: &AtomSpace, sweep: &Sweep) -> Report {
    let mut report = Report::new(format!(
        "boolean algebra laws, {} atoms",
        space.atom_count()
    ));
    let zero = space.empty();
    let one = space.full();
    let pairs = || sweep.events::<2>(space);
    let triples = || sweep.events::<3>(space);

    report.push(check_all("a+(b+c) = (a+b)+c", triples(), |[a, b, c]| {
        a ^ (b ^ c) == (a ^ b) ^ c
    }));
    report.push(check_all("a+b = b+a", pairs(), |[a, b]| a ^ b == b ^ a));
    report.push(check_all(
        "a+0 = a, a+a = 0",
        sweep.events::<1>(space),
        |[a]| (a ^ &zero) == *a && a.symdiff(a) == zero,
    ));
    report.push(check_all("a·(b+c) = a·b + a·c", triples(), |[a, b, c]| {
        a & (b ^ c) == (a & b) ^ (a & c)
    }));
    report.push(check_all(
        "a·a = a, a·1 = a",
        sweep.events::<1>(space),
        |[a]| a.meet(a) == *a && (a & &one) == *a,
    ));
    report.push(check_all(
        "a∨(a·b) = a, a·(a∨b) = a",
        pairs(),
        |[a, b]| (a | (a & b)) == *a && (a & (a | b)) == *a,
    ));
    report.push(check_all(
        "a·(b∨c) = a·b ∨ a·c, a∨(b·c) = (a∨b)·(a∨c)",
        triples(),
        |[a, b, c]| (a & (b | c)) == ((a & b) | (a & c)) && (a | (b & c)) == ((a | b) & (a | c)),
    ));
    report.push(check_all(
        "(a∨b)′ = a′·b′, (a·b)′ = a′∨b′",
        pairs(),
        |[a, b]| !(a | b) == (!a & !b) && !(a & b) == (!a | !b),
    ));
    report.push(check_all(
        "a″ = a, a′ = 1+a",
        sweep.events::<1>(space),
        |[a]| !!a == *a && !a == (&one ^ a),
    ));
    report.push(check_all("a∨b = a+b+a·b", pairs(), |[a, b]| {
        (a | b) == (a ^ b) ^ (a & b)
    }));
    report.push(check_all("(b⇒a) = b′∨a atomwise", pairs(), |[b, a]| {
        let imp = b.implies(a);
        (0..space.atom_count()).all(|i| imp.contains(i) == (!b.contains(i) || a.contains(i)))
    }));
    report
}

/// The implication calculus of the classical event algebra, checked over
/// all event tuples (or seeded samples on large spaces).
///
/// Where a candidate form of an identity does not hold, the corrected form
/// is checked and the candidate is reported as a note.
pub fn implication_identities_check(space: &AtomSpace, sweep: &Sweep) -> Report {
    let mut report = Report::new(format!(
        "implication calculus, {} atoms",
        space.atom_count()
    ));
    let one = space.full();

    report.push(check_all(
        "(b⇒a) = (b⇒a·b)",
        sweep.events::<2>(space),
        |[a, b]| b.implies(a) == b.implies(&(a & b)),
    ));
    report.push(check_all("(1⇒a) = a", sweep.events::<1>(space), |[a]| {
        one.implies(a) == *a
    }));
    report.push(check_all(
        "chaining: (c⇒a·b) = (c⇒b)·(b·c⇒a)",
        sweep.events::<3>(space),
        |[a, b, c]| c.implies(&(a & b)) == c.implies(b) & (b & c).implies(a),
    ));
    report.push(check_all(
        "(b⇒a)′ = a′·b",
        sweep.events::<2>(space),
        |[a, b]| !b.implies(a) == (!a & b),
    ));
    let separated = sweep
        .events::<2>(space)
        .iter
        .any(|[a, b]| !b.implies(&a) != b.implies(&!&a));
    report.push(CheckResult::single(
        "(b⇒a)′ ≠ (b⇒a′) for some a, b",
        separated,
        || "no separating pair".into(),
    ));

    for m in [2usize, 3] {
        report.push(multi_implication(space, sweep, m));
    }
    for m in [2usize, 3, 4] {
        for check in same_antecedent_sum(space, sweep, m) {
            report.push(check);
        }
    }
    report.push(rejected_form(check_all(
        "candidate: ∨(bᵢ⇒aᵢ) = (∨bᵢ ⇒ ∨aᵢ), m=2",
        sweep.events::<4>(space),
        |[a1, b1, a2, b2]| (b1.implies(a1) | b2.implies(a2)) == (b1 | b2).implies(&(a1 | a2)),
    )));
    report.push(rejected_form(check_all(
        "candidate: ∧(bᵢ⇒aᵢ) = (∨aᵢ′bᵢ ∨ ∨bᵢ ⇒ ∨aᵢ), m=2",
        sweep.events::<4>(space),
        |[a1, b1, a2, b2]| {
            let lhs = b1.implies(a1) & b2.implies(a2);
            let ante = (!a1 & b1) | (!a2 & b2) | b1 | b2;
            lhs == ante.implies(&(a1 | a2))
        },
    )));
    report
}

fn multi_implication(space: &AtomSpace, sweep: &Sweep, m: usize) -> CheckResult {
    let name = format!(
        "m={m}: ∨(bᵢ⇒aᵢ) = (∧bᵢ ⇒ ∨aᵢ), ∧(bᵢ⇒aᵢ) = (∨aᵢ′bᵢ ∨ ∧bᵢ ⇒ ∧aᵢ), same-b homomorphisms"
    );
    let check = |pairs: &[(Event, Event)]| {
        let imps: Vec<Event> = pairs.iter().map(|(a, b)| b.implies(a)).collect();
        let a_s: Vec<&Event> = pairs.iter().map(|(a, _)| a).collect();
        let b_s: Vec<&Event> = pairs.iter().map(|(_, b)| b).collect();
        let join_imps = Event::join_all(&imps).unwrap();
        let meet_imps = Event::meet_all(&imps).unwrap();
        let join_a = Event::join_all(a_s.iter().copied()).unwrap();
        let meet_a = Event::meet_all(a_s.iter().copied()).unwrap();
        let meet_b = Event::meet_all(b_s.iter().copied()).unwrap();
        let exceptions =
            Event::join_all(&pairs.iter().map(|(a, b)| !a & b).collect::<Vec<_>>()).unwrap();
        let disj_ok = join_imps == meet_b.implies(&join_a);
        let conj_ok = meet_imps == (&exceptions | &meet_b).implies(&meet_a);
        // Same antecedent: pair every aᵢ with b₁.
        let b = &pairs[0].1;
        let same: Vec<Event> = a_s.iter().map(|a| b.implies(a)).collect();
        let hom_ok = Event::join_all(&same).unwrap() == b.implies(&join_a)
            && Event::meet_all(&same).unwrap() == b.implies(&meet_a);
        disj_ok && conj_ok && hom_ok
    };
    match m {
        2 => check_all(name, sweep.events::<4>(space), |[a1, b1, a2, b2]| {
            check(&[(a1.clone(), b1.clone()), (a2.clone(), b2.clone())])
        }),
        _ => check_all(name, sweep.events::<6>(space), |[a1, b1, a2, b2, a3, b3]| {
            check(&[
                (a1.clone(), b1.clone()),
                (a2.clone(), b2.clone()),
                (a3.clone(), b3.clone()),
            ])
        }),
    }
}

/// Turns the failure of a candidate form into a note.
pub(crate) fn rejected_form(result: CheckResult) -> CheckResult {
    match result.outcome {
        Outcome::Fail { witness } => CheckResult {
            outcome: Outcome::Note {
                detail: format!("candidate form does not hold, witness {witness}"),
            },
            ..result
        },
        _ => result,
    }
}

/// Ring sum of `m` implications sharing the antecedent `b`. Atomwise, the
/// sum is `m mod 2` outside `b` and `a₁+…+aₘ` inside it, so it equals
/// `(b ⇒ a₁+…+aₘ)` for odd `m` and `b·(a₁+…+aₘ)` for even `m`.
fn same_antecedent_sum(space: &AtomSpace, sweep: &Sweep, m: usize) -> Vec<CheckResult> {
    let parity = if m % 2 == 1 { "odd" } else { "even" };
    let eval = |b: &Event, a_s: &[&Event]| {
        let imps: Vec<Event> = a_s.iter().map(|a| b.implies(a)).collect();
        let lhs = Event::sum_all(&imps).unwrap();
        let sum_a = Event::sum_all(a_s.iter().copied()).unwrap();
        (lhs, sum_a)
    };
    let run = |name: String, pick: &dyn Fn(&Event, &Event, &Event) -> bool| -> CheckResult {
        match m {
            2 => check_all(name, sweep.events::<3>(space), |[b, a1, a2]| {
                let (lhs, sum_a) = eval(b, &[a1, a2]);
                pick(&lhs, &sum_a, b)
            }),
            3 => check_all(name, sweep.events::<4>(space), |[b, a1, a2, a3]| {
                let (lhs, sum_a) = eval(b, &[a1, a2, a3]);
                pick(&lhs, &sum_a, b)
            }),
            _ => check_all(name, sweep.events::<5>(space), |[b, a1, a2, a3, a4]| {
                let (lhs, sum_a) = eval(b, &[a1, a2, a3, a4]);
                pick(&lhs, &sum_a, b)
            }),
        }
    };

    let mut out = Vec::new();
    if m % 2 == 1 {
        out.push(run(
            format!("m={m} ({parity}): Σ(b⇒aᵢ) = (b ⇒ Σaᵢ)"),
            &|lhs, sum_a, b| *lhs == b.implies(sum_a),
        ));
    } else {
        out.push(run(
            format!("m={m} ({parity}): Σ(b⇒aᵢ) = b·Σaᵢ"),
            &|lhs, sum_a, b| *lhs == (b & sum_a),
        ));
        let candidate = run(
            format!("m={m} ({parity}): candidate Σ(b⇒aᵢ) = Σaᵢ"),
            &|lhs, sum_a, _| lhs == sum_a,
        );
        out.push(rejected_form(candidate));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space3() -> AtomSpace {
        AtomSpace::with_labels(["1", "2", "3"]).unwrap()
    }

    fn ev(space: &AtomSpace, labels: &[&str]) -> Event {
        space.event_from_labels(labels.iter().copied()).unwrap()
    }

    #[test]
    fn set_operations() {
        let s = space3();
        assert_eq!(ev(&s, &["1", "2"]) & ev(&s, &["2", "3"]), ev(&s, &["2"]));
        assert_eq!(
            ev(&s, &["1", "2"]) ^ ev(&s, &["2", "3"]),
            ev(&s, &["1", "3"])
        );
        assert_eq!(!ev(&s, &["1"]), ev(&s, &["2", "3"]));
        assert_eq!(ev(&s, &["1"]) | ev(&s, &["3"]), ev(&s, &["1", "3"]));
    }

    #[test]
    fn material_implication() {
        let s = space3();
        let b = ev(&s, &["1", "2"]);
        let a = ev(&s, &["1"]);
        assert_eq!(b.implies(&a), ev(&s, &["1", "3"]));
        assert_eq!(s.full().implies(&a), a);
        assert_eq!(s.empty().implies(&a), s.full());
    }

    #[test]
    fn ordering() {
        let s = space3();
        assert!(ev(&s, &["1"]).leq(&ev(&s, &["1", "2"])));
        assert!(!ev(&s, &["1", "3"]).leq(&ev(&s, &["1", "2"])));
        for x in s.events().unwrap() {
            assert!(s.empty().leq(&x));
        }
    }

    #[test]
    fn mismatched_spaces_are_rejected() {
        let a = Event::full(3);
        let b = Event::full(4);
        assert_eq!(
            a.try_meet(&b),
            Err(AlgebraError::SpaceMismatch { left: 3, right: 4 })
        );
        assert!(a.try_leq(&b).is_err());
        assert!(a.try_implies(&b).is_err());
    }

    #[test]
    #[should_panic(expected = "different atom spaces")]
    fn operators_panic_on_mismatch() {
        let _ = Event::full(3) & Event::full(5);
    }

    #[test]
    fn space_construction_errors() {
        assert_eq!(AtomSpace::new(0), Err(AlgebraError::EmptySpace));
        assert_eq!(
            AtomSpace::with_labels(["x", "x"]),
            Err(AlgebraError::DuplicateLabel("x".into()))
        );
        assert!(space3().event([5]).is_err());
        assert!(space3().event_from_labels(["9"]).is_err());
    }

    #[test]
    fn wide_events_span_words() {
        let e = Event::from_indices(130, [0, 64, 129]).unwrap();
        assert_eq!(e.len(), 3);
        assert_eq!(e.indices().collect::<Vec<_>>(), vec![0, 64, 129]);
        let c = !&e;
        assert_eq!(c.len(), 127);
        assert!((&e | &c).is_full());
        assert!(Event::full(130).is_full());
    }

    #[test]
    fn canonical_order_is_numeric() {
        let s = space3();
        let all: Vec<Event> = s.events().unwrap().collect();
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        assert_eq!(all.len(), 8);
    }

    #[test]
    fn laws_hold_exhaustively() {
        for n in 1..=4 {
            let s = AtomSpace::new(n).unwrap();
            let report = algebra_law_check(&s, &Sweep::default());
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn implication_identities_hold_on_three_atoms() {
        let report = implication_identities_check(&space3(), &Sweep::default());
        assert!(report.passed(), "{report}");
        assert!(report.checks.iter().all(|c| c.exhaustive));
    }

    #[test]
    fn complement_of_implication_on_two_atoms() {
        let s = AtomSpace::new(2).unwrap();
        for a in s.events().unwrap() {
            for b in s.events().unwrap() {
                assert_eq!(!b.implies(&a), !&a & &b);
            }
        }
    }

    #[test]
    fn candidate_even_sum_form_is_flagged() {
        let report = implication_identities_check(&space3(), &Sweep::default());
        let note = report.find("m=2 (even): candidate Σ(b⇒aᵢ) = Σaᵢ").unwrap();
        assert!(matches!(note.outcome, Outcome::Note { .. }));
        assert!(report
            .find("m=3 (odd): Σ(b⇒aᵢ) = (b ⇒ Σaᵢ)")
            .unwrap()
            .passed());
    }
}
