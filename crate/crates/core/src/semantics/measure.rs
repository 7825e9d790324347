//! Probability measures on a finite atom space, and the probability and
//! conditional probability evaluators built on them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::Event;
use crate::conditional::ConditionalObject;
use crate::error::{AlgebraError, SemanticsError};
use crate::scalar::Scalar;

/// Atom weights, nonnegative and summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityMeasure<S> {
    weights: Vec<S>,
}

impl<S: Scalar> ProbabilityMeasure<S> {
    /// Validates that weights are nonnegative and sum to one within
    /// [`Scalar::tolerance`] (exactly, for exact scalars).
    pub fn new(weights: Vec<S>) -> Result<Self, SemanticsError> {
        if weights.is_empty() {
            return Err(SemanticsError::InvalidMeasure("no atoms".into()));
        }
        if let Some(i) = weights.iter().position(|w| w.is_negative()) {
            return Err(SemanticsError::InvalidMeasure(format!(
                "atom {i} has negative weight {}",
                weights[i]
            )));
        }
        let total = weights.iter().cloned().fold(S::zero(), |acc, w| acc + w);
        if !total.approx_eq(&S::one()) {
            return Err(SemanticsError::InvalidMeasure(format!(
                "weights sum to {total}, not 1"
            )));
        }
        Ok(ProbabilityMeasure { weights })
    }

    pub fn uniform(atoms: usize) -> Result<Self, SemanticsError> {
        Self::new(vec![S::ratio(1, atoms.max(1) as u64); atoms])
    }

    /// All mass on one atom: the probability evaluator then agrees with
    /// classical evaluation at that atom.
    pub fn point_mass(atoms: usize, atom: usize) -> Result<Self, SemanticsError> {
        if atom >= atoms {
            return Err(AlgebraError::AtomOutOfRange { index: atom, atoms }.into());
        }
        let mut weights = vec![S::zero(); atoms];
        weights[atom] = S::one();
        Self::new(weights)
    }

    /// Strictly positive random weights: integers in `1..=1000`, normalized.
    pub fn random(atoms: usize, rng: &mut impl Rng) -> Self {
        let raw: Vec<u64> = (0..atoms).map(|_| rng.gen_range(1..=1000)).collect();
        let total: u64 = raw.iter().sum();
        let weights = raw.into_iter().map(|w| S::ratio(w, total)).collect();
        ProbabilityMeasure { weights }
    }

    pub fn atom_count(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[S] {
        &self.weights
    }

    fn check_width(&self, width: usize) -> Result<(), AlgebraError> {
        if width == self.weights.len() {
            Ok(())
        } else {
            Err(AlgebraError::SpaceMismatch {
                left: self.weights.len(),
                right: width,
            })
        }
    }

    /// `p(e)`: the total weight of the atoms of `e`.
    pub fn pl_eval(&self, e: &Event) -> Result<S, AlgebraError> {
        self.check_width(e.width())?;
        Ok(e.indices()
            .fold(S::zero(), |acc, i| acc + self.weights[i].clone()))
    }

    /// `p(e₁ ∨ … ∨ eₘ)` by inclusion and exclusion over the meets of every
    /// nonempty subfamily.
    pub fn inclusion_exclusion(&self, events: &[Event]) -> Result<S, AlgebraError> {
        let m = events.len();
        if m > 20 {
            return Err(AlgebraError::TooLarge {
                atoms: m,
                limit: 20,
            });
        }
        let mut total = S::zero();
        for subset in 1u32..(1 << m) {
            let chosen = events
                .iter()
                .enumerate()
                .filter(|(i, _)| subset >> i & 1 == 1)
                .map(|(_, e)| e);
            let term = self.pl_eval(&Event::meet_all(chosen)?)?;
            if subset.count_ones() % 2 == 1 {
                total = total + term;
            } else {
                total = total - term;
            }
        }
        Ok(total)
    }

    /// `p(a|b) = p(a·b)/p(b)`; undefined when `p(b) = 0`.
    pub fn cpl_eval(&self, cond: &ConditionalObject) -> Result<S, SemanticsError> {
        let denominator = self.pl_eval(cond.antecedent())?;
        if denominator.is_zero() {
            return Err(SemanticsError::UndefinedConditional);
        }
        Ok(self.pl_eval(cond.consequent())? / denominator)
    }

    /// Compares `p(b⇒a)` with `p(a|b)`, checking
    /// `p(b⇒a) = p(a|b) + p(b′)·p(a′|b)` and `p(b⇒a) ≥ p(a|b)`.
    pub fn lewis_gap(&self, a: &Event, b: &Event) -> Result<LewisGap<S>, SemanticsError> {
        let p_implies = self.pl_eval(&b.try_implies(a)?)?;
        let p_cond = self.cpl_eval(&ConditionalObject::new(a, b)?)?;
        let p_refuted = self.cpl_eval(&ConditionalObject::new(&!a, b)?)?;
        let rhs = p_cond.clone() + self.pl_eval(&!b)? * p_refuted;
        if !p_implies.approx_eq(&rhs) {
            return Err(SemanticsError::IdentityViolated(format!(
                "p(b⇒a) = {p_implies} but p(a|b) + p(b′)·p(a′|b) = {rhs}"
            )));
        }
        if p_implies.clone() + S::tolerance() < p_cond {
            return Err(SemanticsError::IdentityViolated(format!(
                "p(b⇒a) = {p_implies} is below p(a|b) = {p_cond}"
            )));
        }
        let gap = p_implies.clone() - p_cond.clone();
        Ok(LewisGap {
            p_implies,
            p_cond,
            gap,
        })
    }
}

/// `p(b⇒a)`, `p(a|b)` and their difference.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LewisGap<S> {
    pub p_implies: S,
    pub p_cond: S,
    pub gap: S,
}

/// Outcome of sampling `p(A·B) = p(A)·p(B)` over random measures.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndependenceSample {
    pub measures: usize,
    pub undefined: usize,
    pub max_violation: f64,
    /// Whether every defined sample stayed within [`INDEPENDENCE_THRESHOLD`].
    pub independent: bool,
}

pub const INDEPENDENCE_THRESHOLD: f64 = 1e-9;

/// Tests `p(A·B) = p(A)·p(B)` over `n_measures` seeded random measures with
/// strictly positive weights. Measures leaving any of the three conditionals
/// undefined are counted and skipped.
pub fn mf_independent_sample(
    a: &ConditionalObject,
    b: &ConditionalObject,
    n_measures: usize,
    seed: u64,
) -> Result<IndependenceSample, AlgebraError> {
    let product = a.try_and(b)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut undefined = 0;
    let mut max_violation = 0.0f64;
    for _ in 0..n_measures {
        let p = ProbabilityMeasure::<f64>::random(a.width(), &mut rng);
        match (p.cpl_eval(&product), p.cpl_eval(a), p.cpl_eval(b)) {
            (Ok(pab), Ok(pa), Ok(pb)) => max_violation = max_violation.max((pab - pa * pb).abs()),
            _ => undefined += 1,
        }
    }
    Ok(IndependenceSample {
        measures: n_measures,
        undefined,
        max_violation,
        independent: undefined < n_measures && max_violation <= INDEPENDENCE_THRESHOLD,
    })
}
