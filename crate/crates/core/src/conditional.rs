//! Conditional objects `(a|b)`: the principal-ideal cosets `Ω·b′ + a·b` of a
//! finite Boolean algebra, stored canonically as the pair `(a·b, b)`.
//!
//! The operations here are the compact closed forms. [`crate::coset`] holds
//! the literal set representation they are checked against.

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Not};

use rand::Rng;

use crate::algebra::{AtomSpace, Event};
use crate::error::AlgebraError;

/// A conditional object `(a|b)` with `consequent = a·b` and `antecedent = b`.
///
/// Two conditionals are equal iff their canonical pairs are equal. `(a|0)`
/// is allowed and is the coset of the whole algebra.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConditionalObject {
    antecedent: Event,
    consequent: Event,
}

impl ConditionalObject {
    /// `(a|b)`, canonicalized to `(a·b|b)`.
    pub fn new(a: &Event, b: &Event) -> Result<Self, AlgebraError> {
        Ok(ConditionalObject {
            consequent: a.try_meet(b)?,
            antecedent: b.clone(),
        })
    }

    /// The embedding `a ↦ (a|1)` of the event algebra.
    pub fn embed(a: &Event) -> Self {
        ConditionalObject {
            consequent: a.clone(),
            antecedent: Event::full(a.width()),
        }
    }

    /// Canonical constructor for callers that already hold `a·b`.
    fn canonical(consequent: Event, antecedent: Event) -> Self {
        let consequent = &consequent & &antecedent;
        ConditionalObject {
            antecedent,
            consequent,
        }
    }

    /// Every canonical conditional of `space`: all pairs `c ≤ b`, `3ⁿ` in
    /// total, ordered by antecedent then consequent.
    pub fn enumerate(space: &AtomSpace) -> impl Iterator<Item = ConditionalObject> {
        let width = space.atom_count();
        assert!(
            width <= 20,
            "enumeration of conditionals is bounded to 20 atoms"
        );
        (0..1u64 << width).flat_map(move |b| {
            // Submasks of b in increasing order.
            let mut sub = 0u64;
            let mut done = false;
            std::iter::from_fn(move || {
                if done {
                    return None;
                }
                let item = ConditionalObject {
                    antecedent: Event::from_mask(width, b),
                    consequent: Event::from_mask(width, sub),
                };
                if sub == b {
                    done = true;
                } else {
                    sub = (sub.wrapping_sub(b)) & b;
                }
                Some(item)
            })
        })
    }

    /// A random canonical conditional: each atom independently lands in
    /// `a·b`, `a′·b` or `b′` with equal probability.
    pub fn random(width: usize, rng: &mut impl Rng) -> Self {
        let mut ante = Vec::new();
        let mut cons = Vec::new();
        for i in 0..width {
            match rng.gen_range(0..3u8) {
                0 => {
                    ante.push(i);
                    cons.push(i);
                }
                1 => ante.push(i),
                _ => {}
            }
        }
        ConditionalObject {
            antecedent: Event::from_indices(width, ante).expect("indices in range"),
            consequent: Event::from_indices(width, cons).expect("indices in range"),
        }
    }

    pub fn width(&self) -> usize {
        self.antecedent.width()
    }

    /// `b` in `(a|b)`.
    pub fn antecedent(&self) -> &Event {
        &self.antecedent
    }

    /// `a·b` in `(a|b)`.
    pub fn consequent(&self) -> &Event {
        &self.consequent
    }

    /// True when this is an embedded event `(a|1)`.
    pub fn is_event(&self) -> bool {
        self.antecedent.is_full()
    }

    /// The embedded event, if this is one.
    pub fn as_event(&self) -> Option<&Event> {
        self.is_event().then_some(&self.consequent)
    }

    /// `(a|b)′ = (a′·b|b)`.
    pub fn complement(&self) -> Self {
        ConditionalObject {
            consequent: &!&self.consequent & &self.antecedent,
            antecedent: self.antecedent.clone(),
        }
    }

    fn check_width(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.width() == other.width() {
            Ok(())
        } else {
            Err(AlgebraError::SpaceMismatch {
                left: self.width(),
                right: other.width(),
            })
        }
    }

    /// `(a|b) + (c|d) = (a+c | b·d)`.
    pub fn try_sum(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_width(other)?;
        let antecedent = &self.antecedent & &other.antecedent;
        Ok(Self::canonical(
            &self.consequent ^ &other.consequent,
            antecedent,
        ))
    }

    /// `(a|b) ∨ (c|d) = (a·b ∨ c·d | a·b ∨ c·d ∨ b·d)`.
    pub fn try_or(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_width(other)?;
        let either = &self.consequent | &other.consequent;
        let antecedent = &either | (&self.antecedent & &other.antecedent);
        Ok(Self::canonical(either, antecedent))
    }

    /// `(a|b)·(c|d) = (a·c | a′·b ∨ c′·d ∨ b·d)`.
    pub fn try_and(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_width(other)?;
        let antecedent = self.refuted() | other.refuted() | (&self.antecedent & &other.antecedent);
        Ok(Self::canonical(
            &self.consequent & &other.consequent,
            antecedent,
        ))
    }

    /// `a′·b`: where the conditional is settled false.
    fn refuted(&self) -> Event {
        &!&self.consequent & &self.antecedent
    }

    pub fn sum(&self, other: &Self) -> Self {
        self.try_sum(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn or(&self, other: &Self) -> Self {
        self.try_or(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn and(&self, other: &Self) -> Self {
        self.try_and(other).unwrap_or_else(|e| panic!("{e}"))
    }

    fn same_width(items: &[ConditionalObject]) -> Result<&ConditionalObject, AlgebraError> {
        let first = items.first().ok_or(AlgebraError::NoOperands)?;
        for item in &items[1..] {
            first.check_width(item)?;
        }
        Ok(first)
    }

    /// `(a₁|b₁) + … + (aₙ|bₙ) = (a₁+…+aₙ | b₁⋯bₙ)`, computed directly
    /// rather than by folding.
    pub fn sum_n(items: &[ConditionalObject]) -> Result<Self, AlgebraError> {
        Self::same_width(items)?;
        let antecedent = Event::meet_all(items.iter().map(|c| &c.antecedent))?;
        let total = Event::sum_all(items.iter().map(|c| &c.consequent))?;
        Ok(Self::canonical(total, antecedent))
    }

    /// `(a₁|b₁) ∨ … ∨ (aₙ|bₙ) = (∨aᵢbᵢ | ∨aᵢbᵢ ∨ b₁⋯bₙ)`.
    pub fn or_n(items: &[ConditionalObject]) -> Result<Self, AlgebraError> {
        Self::same_width(items)?;
        let any = Event::join_all(items.iter().map(|c| &c.consequent))?;
        let all_settled = Event::meet_all(items.iter().map(|c| &c.antecedent))?;
        Ok(Self::canonical(any.clone(), any | all_settled))
    }

    /// `(a₁|b₁) ⋯ (aₙ|bₙ) = (a₁⋯aₙ | ∨aᵢ′bᵢ ∨ b₁⋯bₙ)`.
    pub fn and_n(items: &[ConditionalObject]) -> Result<Self, AlgebraError> {
        Self::same_width(items)?;
        let all = Event::meet_all(items.iter().map(|c| &c.consequent))?;
        let refuted: Vec<Event> = items.iter().map(Self::refuted).collect();
        let all_settled = Event::meet_all(items.iter().map(|c| &c.antecedent))?;
        let antecedent = Event::join_all(&refuted)? | all_settled;
        Ok(Self::canonical(all, antecedent))
    }

    /// `(a|b) ≤ (c|d)` iff `a·b ≤ c·d` and `c′·d ≤ a′·b`.
    pub fn try_leq(&self, other: &Self) -> Result<bool, AlgebraError> {
        self.check_width(other)?;
        Ok(self.consequent.leq(&other.consequent) && other.refuted().leq(&self.refuted()))
    }

    pub fn leq(&self, other: &Self) -> bool {
        self.try_leq(other).unwrap_or_else(|e| panic!("{e}"))
    }

    /// The ordering by its definition: `A ≤ C` iff `A = A·C`.
    pub fn leq_by_meet(&self, other: &Self) -> bool {
        *self == self.and(other)
    }

    /// The smallest and largest members of the coset: `(a·b, b ⇒ a)`.
    pub fn bounds(&self) -> (Event, Event) {
        (
            self.consequent.clone(),
            self.antecedent.implies(&self.consequent),
        )
    }

    /// Membership `x ∈ (a|b)`, i.e. `x·b = a·b`.
    pub fn contains(&self, x: &Event) -> bool {
        x & &self.antecedent == self.consequent
    }

    /// Renders with atom labels, e.g. `({1}|{1,2})`.
    pub fn render(&self, space: &AtomSpace) -> String {
        format!(
            "({}|{})",
            space.render(&self.consequent),
            space.render(&self.antecedent)
        )
    }
}

/// Product of a chain of conditionals. For `A = (a|b·c)`, `B = (b|c)` this
/// is `(a·b|c)`; for `a₁ ≤ … ≤ aₘ` the product of `(aᵢ|aᵢ₊₁)` is `(a₁|aₘ)`.
pub fn chain(links: &[ConditionalObject]) -> Result<ConditionalObject, AlgebraError> {
    ConditionalObject::and_n(links)
}

/// Splits `b` over a partition `a₁, …, aₘ` of unity into the components
/// `(b|aⱼ)`, checking that `Σ (b|aⱼ)·aⱼ = b` and `(aⱼ|b)·b = (b|aⱼ)·aⱼ = aⱼ·b`.
pub fn bayes_decompose(
    b: &Event,
    partition: &[Event],
) -> Result<Vec<ConditionalObject>, AlgebraError> {
    let first = partition.first().ok_or(AlgebraError::NoOperands)?;
    let width = first.width();
    let mut covered = Event::empty(width);
    for (j, part) in partition.iter().enumerate() {
        if !covered.try_meet(part)?.is_empty() {
            return Err(AlgebraError::NotAPartition(format!(
                "block {j} overlaps an earlier block"
            )));
        }
        covered = covered | part;
    }
    if !covered.is_full() {
        return Err(AlgebraError::NotAPartition(format!(
            "blocks miss atoms {}",
            !&covered
        )));
    }
    // b must live in the partition's space.
    b.try_meet(first)?;

    let components: Vec<ConditionalObject> = partition
        .iter()
        .map(|a| ConditionalObject::new(b, a))
        .collect::<Result<_, _>>()?;

    let weighted: Vec<ConditionalObject> = components
        .iter()
        .zip(partition)
        .map(|(c, a)| c.and(&ConditionalObject::embed(a)))
        .collect();
    for ((w, a), j) in weighted.iter().zip(partition).zip(0..) {
        let forward = ConditionalObject::new(a, b)?.and(&ConditionalObject::embed(b));
        let expected = ConditionalObject::embed(&(a & b));
        if *w != expected || forward != expected {
            return Err(AlgebraError::NotAPartition(format!(
                "component {j} does not reduce to aⱼ·b"
            )));
        }
    }
    let total = ConditionalObject::sum_n(&weighted)?;
    if total != ConditionalObject::embed(b) {
        return Err(AlgebraError::NotAPartition(
            "components do not reassemble b".into(),
        ));
    }
    Ok(components)
}

impl fmt::Display for ConditionalObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.consequent, self.antecedent)
    }
}

impl fmt::Debug for ConditionalObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Event> for ConditionalObject {
    fn from(a: Event) -> Self {
        ConditionalObject::embed(&a)
    }
}

macro_rules! cond_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl $trait<&ConditionalObject> for &ConditionalObject {
            type Output = ConditionalObject;
            fn $method(self, rhs: &ConditionalObject) -> ConditionalObject {
                self.$inner(rhs)
            }
        }
        impl $trait<ConditionalObject> for ConditionalObject {
            type Output = ConditionalObject;
            fn $method(self, rhs: ConditionalObject) -> ConditionalObject {
                self.$inner(&rhs)
            }
        }
    };
}

cond_binop!(BitAnd, bitand, and);
cond_binop!(BitOr, bitor, or);
cond_binop!(BitXor, bitxor, sum);

impl Not for &ConditionalObject {
    type Output = ConditionalObject;
    fn not(self) -> ConditionalObject {
        self.complement()
    }
}

impl Not for ConditionalObject {
    type Output = ConditionalObject;
    fn not(self) -> ConditionalObject {
        self.complement()
    }
}
