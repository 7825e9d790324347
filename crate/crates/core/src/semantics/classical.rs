//! Classical two-valued evaluation: an event is true at an atom iff it
//! contains that atom.

use crate::algebra::Event;

/// `‖e‖` at `atom`: 1 iff `atom ∈ e`.
pub fn cl_eval(atom: usize, e: &Event) -> u8 {
    u8::from(e.contains(atom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AtomSpace;

    #[test]
    fn membership_examples() {
        let s = AtomSpace::with_labels(["1", "2", "3"]).unwrap();
        let e = s.event_from_labels(["1", "2"]).unwrap();
        assert_eq!(cl_eval(0, &e), 1);
        assert_eq!(cl_eval(2, &e), 0);
        assert_eq!(cl_eval(2, &!&e), 1 - cl_eval(2, &e));
    }
}
