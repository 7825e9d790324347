//! Suite groupings run by the command-line front end and the acceptance
//! tests.

use crate::algebra::{algebra_law_check, implication_identities_check, AtomSpace};
use crate::calculus::{comparison_check, identity_check, law_check, order_check};
use crate::coset::{characterization_check, intersection_check, oracle_equivalence_check};
use crate::error::AlgebraError;
use crate::higher_order::{higher_order_check, u_homomorphism_check};
use crate::report::{Report, Sweep};
use crate::semantics::{classical_check, fuzzy_check, independence_check, probability_check};
use crate::Exact;

/// Boolean algebra laws, implication identities and the conditional
/// calculus.
pub fn algebra_suites(space: &AtomSpace, sweep: &Sweep) -> Vec<Report> {
    vec![
        algebra_law_check(space, sweep),
        implication_identities_check(space, sweep),
        law_check(space, sweep),
        order_check(space, sweep),
        identity_check(space, sweep),
        comparison_check(space, sweep),
    ]
}

/// The coset oracle against the compact formulas.
pub fn oracle_suites(space: &AtomSpace, sweep: &Sweep) -> Result<Vec<Report>, AlgebraError> {
    Ok(vec![
        oracle_equivalence_check(space, sweep),
        intersection_check(space, sweep),
        characterization_check(space)?,
    ])
}

/// The four evaluators and measure-free independence.
pub fn semantics_suites(space: &AtomSpace, sweep: &Sweep) -> Vec<Report> {
    vec![
        classical_check(space, sweep),
        probability_check::<f64>(space, sweep, "f64"),
        probability_check::<Exact>(space, sweep, "exact"),
        fuzzy_check::<f64>("f64"),
        independence_check(space, sweep),
    ]
}

/// Iterated conditionals and the reduction operator.
pub fn higher_order_suites(space: &AtomSpace, sweep: &Sweep) -> Result<Vec<Report>, AlgebraError> {
    Ok(vec![
        higher_order_check(space, sweep)?,
        u_homomorphism_check(space, sweep)?,
    ])
}
