//! Pass/fail reports for the identity and oracle suites, and the tuple
//! sweeps that drive them.
//!
//! A sweep is exhaustive when the tuple count fits under [`EXHAUSTIVE_CAP`],
//! otherwise it draws `samples` tuples from a ChaCha stream seeded by the
//! caller. Either way the order of cases is fixed, so reports are
//! reproducible byte for byte.

use std::fmt::{self, Debug};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{AtomSpace, Event};
use crate::conditional::ConditionalObject;

/// Largest tuple count enumerated exhaustively.
pub const EXHAUSTIVE_CAP: u128 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail {
        witness: String,
    },
    /// An informational finding: a candidate form that does not hold, or an
    /// empirically determined form. Never counts as a failure.
    Note {
        detail: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub cases: u64,
    pub exhaustive: bool,
    #[serde(flatten)]
    pub outcome: Outcome,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        !matches!(self.outcome, Outcome::Fail { .. })
    }

    pub fn note(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            cases: 0,
            exhaustive: true,
            outcome: Outcome::Note {
                detail: detail.into(),
            },
        }
    }

    pub fn single(name: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) -> Self {
        CheckResult {
            name: name.into(),
            cases: 1,
            exhaustive: true,
            outcome: if ok {
                Outcome::Pass
            } else {
                Outcome::Fail { witness: witness() }
            },
        }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mode = if self.exhaustive {
            "exhaustive"
        } else {
            "sampled"
        };
        match &self.outcome {
            Outcome::Pass => write!(f, "PASS  {} ({} cases, {})", self.name, self.cases, mode),
            Outcome::Fail { witness } => write!(
                f,
                "FAIL  {} ({} cases, {}) witness: {}",
                self.name, self.cases, mode, witness
            ),
            Outcome::Note { detail } => write!(f, "NOTE  {}: {}", self.name, detail),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: CheckResult) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn notes(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks
            .iter()
            .filter(|c| matches!(c.outcome, Outcome::Note { .. }))
    }

    pub fn find(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {}", self.title)?;
        for check in &self.checks {
            writeln!(f, "{check}")?;
        }
        Ok(())
    }
}

/// Runs `pred` over every item, stopping at the first failure.
pub fn check_all<T, I, F>(name: impl Into<String>, sweep: Tuples<I>, mut pred: F) -> CheckResult
where
    T: Debug,
    I: Iterator<Item = T>,
    F: FnMut(&T) -> bool,
{
    check_detail(name, sweep, |item| {
        if pred(item) {
            None
        } else {
            Some(format!("{item:?}"))
        }
    })
}

/// Like [`check_all`], but the predicate produces its own witness text.
pub fn check_detail<T, I, F>(name: impl Into<String>, sweep: Tuples<I>, mut fails: F) -> CheckResult
where
    I: Iterator<Item = T>,
    F: FnMut(&T) -> Option<String>,
{
    let mut cases = 0u64;
    let exhaustive = sweep.exhaustive;
    for item in sweep.iter {
        cases += 1;
        if let Some(witness) = fails(&item) {
            return CheckResult {
                name: name.into(),
                cases,
                exhaustive,
                outcome: Outcome::Fail { witness },
            };
        }
    }
    CheckResult {
        name: name.into(),
        cases,
        exhaustive,
        outcome: Outcome::Pass,
    }
}

/// Adapts a fallible witness-producing predicate: an error is a failure.
pub fn fallible<E: std::fmt::Display>(result: Result<Option<String>, E>) -> Option<String> {
    result.unwrap_or_else(|e| Some(format!("error: {e}")))
}

/// An iterator of test tuples tagged with how it was produced.
pub struct Tuples<I> {
    pub iter: I,
    pub exhaustive: bool,
}

impl<I: Iterator> Tuples<I> {
    pub fn exhaustive(iter: I) -> Self {
        Tuples {
            iter,
            exhaustive: true,
        }
    }

    pub fn map<U, F: FnMut(I::Item) -> U>(self, f: F) -> Tuples<std::iter::Map<I, F>> {
        Tuples {
            iter: self.iter.map(f),
            exhaustive: self.exhaustive,
        }
    }

    pub fn filter<F: FnMut(&I::Item) -> bool>(self, f: F) -> Tuples<std::iter::Filter<I, F>> {
        Tuples {
            iter: self.iter.filter(f),
            exhaustive: self.exhaustive,
        }
    }
}

/// Decides between exhaustive enumeration and seeded sampling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sweep {
    pub seed: u64,
    pub samples: u64,
}

impl Default for Sweep {
    fn default() -> Self {
        Sweep {
            seed: 0,
            samples: 10_000,
        }
    }
}

impl Sweep {
    pub fn new(seed: u64, samples: u64) -> Self {
        Sweep { seed, samples }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    /// All `K`-tuples of events of `space`, or `samples` random ones.
    pub fn events<const K: usize>(
        &self,
        space: &AtomSpace,
    ) -> Tuples<Box<dyn Iterator<Item = [Event; K]>>> {
        let width = space.atom_count();
        let per_slot = 1u128.checked_shl(width as u32).unwrap_or(u128::MAX);
        let iter: Box<dyn Iterator<Item = [Event; K]>> = match per_slot.checked_pow(K as u32) {
            Some(total) if total <= EXHAUSTIVE_CAP => {
                let per_slot = per_slot as u64;
                Box::new((0..total as u64).map(move |mut code| {
                    std::array::from_fn(|_| {
                        let mask = code % per_slot;
                        code /= per_slot;
                        Event::from_mask(width, mask)
                    })
                }))
            }
            _ => {
                let mut rng = self.rng();
                Box::new(
                    (0..self.samples)
                        .map(move |_| std::array::from_fn(|_| Event::random(width, &mut rng))),
                )
            }
        };
        let exhaustive = per_slot
            .checked_pow(K as u32)
            .is_some_and(|t| t <= EXHAUSTIVE_CAP);
        Tuples { iter, exhaustive }
    }

    /// All `K`-tuples of canonical conditional objects of `space`, or
    /// `samples` random ones.
    pub fn conditionals<const K: usize>(
        &self,
        space: &AtomSpace,
    ) -> Tuples<Box<dyn Iterator<Item = [ConditionalObject; K]>>> {
        let width = space.atom_count();
        let per_slot = 3u128.checked_pow(width as u32).unwrap_or(u128::MAX);
        let total = per_slot.checked_pow(K as u32);
        let exhaustive = total.is_some_and(|t| t <= EXHAUSTIVE_CAP);
        let iter: Box<dyn Iterator<Item = [ConditionalObject; K]>> =
            if exhaustive {
                let all: Vec<ConditionalObject> = ConditionalObject::enumerate(space).collect();
                let per_slot = all.len() as u64;
                Box::new((0..total.unwrap() as u64).map(move |mut code| {
                    std::array::from_fn(|_| {
                        let item = all[(code % per_slot) as usize].clone();
                        code /= per_slot;
                        item
                    })
                }))
            } else {
                let mut rng = self.rng();
                Box::new((0..self.samples).map(move |_| {
                    std::array::from_fn(|_| ConditionalObject::random(width, &mut rng))
                }))
            };
        Tuples { iter, exhaustive }
    }
}
